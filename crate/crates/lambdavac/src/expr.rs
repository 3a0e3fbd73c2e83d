//! Immutable symbolic expression trees.
//!
//! An [`Expr`] is an immutable, reference-counted tree over named real
//! variables with six node kinds: exact constants, symbols, sums, products,
//! powers with constant rational exponents, and sine/cosine. Subtraction
//! and division are not node kinds; they are encoded as `(-1)`-scaled
//! products and `-1` powers, which keeps the differentiation and
//! simplification rule sets small.
//!
//! Construction goes through smart constructors that fold constants,
//! flatten nested sums/products, drop `0`/`1` identities, and sort
//! children into a canonical order, so structurally equal trees are
//! produced for trivially equal inputs.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::number::Number;

/// Node kinds of an expression tree.
#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExprKind {
    /// Exact numeric constant.
    Const(Number),
    /// Named real variable.
    Symbol(String),
    /// Sum of two or more terms.
    Sum(Vec<Expr>),
    /// Product of two or more factors.
    Product(Vec<Expr>),
    /// Base raised to a constant rational (or float) exponent.
    Pow(Expr, Number),
    Sin(Expr),
    Cos(Expr),
}

/// An immutable symbolic expression. Cheap to clone and safe to share
/// across threads.
#[derive(Clone, Debug, Eq, Hash)]
pub struct Expr(Arc<ExprKind>);

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}

/// Supplemental differentiation rules for symbols that denote functions
/// of other variables rather than independent variables.
///
/// Used by [`Expr::diff_with`]. Returning `None` for a symbol means it
/// does not depend on the differentiation variable.
pub trait SymbolDerivatives {
    /// The derivative of `symbol` with respect to `var`, or `None`.
    fn derivative(&self, symbol: &str, var: &str) -> Option<Expr>;
}

/// No extra rules: every symbol is an independent variable.
impl SymbolDerivatives for () {
    fn derivative(&self, _symbol: &str, _var: &str) -> Option<Expr> {
        None
    }
}

/// A map from symbol names to numeric values, used for evaluation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Binding {
    map: BTreeMap<String, f64>,
}

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style insertion: `Binding::new().set("x", 1.0).set("t", 0.0)`.
    pub fn set(mut self, symbol: &str, value: f64) -> Self {
        self.map.insert(symbol.to_owned(), value);
        self
    }

    pub fn get(&self, symbol: &str) -> Option<f64> {
        self.map.get(symbol).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.map.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl<'a> FromIterator<(&'a str, f64)> for Binding {
    fn from_iter<T: IntoIterator<Item = (&'a str, f64)>>(iter: T) -> Self {
        Binding {
            map: iter
                .into_iter()
                .map(|(k, v)| (k.to_owned(), v))
                .collect(),
        }
    }
}

/// Errors raised by numeric evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    /// A free symbol had no value in the binding.
    #[error("unbound symbol `{symbol}`")]
    Unbound { symbol: String },
    /// Evaluation left the real domain (pole, negative fractional power,
    /// or floating-point overflow) at the reported subexpression.
    #[error("domain error evaluating `{subexpression}`")]
    Domain { subexpression: String },
}

/// Truncated display used in error messages, so a pathological
/// subexpression cannot flood a report.
fn short_desc(e: &Expr) -> String {
    let s = e.to_string();
    if s.len() > 120 {
        format!("{}...", &s[..117])
    } else {
        s
    }
}

impl Expr {
    fn new(kind: ExprKind) -> Self {
        Expr(Arc::new(kind))
    }

    /// The node kind, for pattern matching.
    pub fn kind(&self) -> &ExprKind {
        &self.0
    }

    /// A numeric constant.
    pub fn num(n: Number) -> Self {
        Expr::new(ExprKind::Const(n))
    }

    /// The integer `n`.
    pub fn int(n: i64) -> Self {
        Expr::num(Number::int(n))
    }

    /// The exact fraction `num/den`.
    pub fn rational(num: i64, den: i64) -> Self {
        Expr::num(Number::rational(num, den))
    }

    /// A floating-point constant.
    pub fn float(v: f64) -> Self {
        Expr::num(Number::float(v))
    }

    /// A named variable.
    pub fn symbol(name: &str) -> Self {
        Expr::new(ExprKind::Symbol(name.to_owned()))
    }

    /// The constant value, if this node is a constant.
    pub fn as_const(&self) -> Option<Number> {
        match self.kind() {
            ExprKind::Const(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const().is_some_and(|n| n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_const().is_some_and(|n| n.is_one())
    }

    /// Sum of `terms`: flattens nested sums, folds constants, drops zeros,
    /// and sorts the children. An empty input yields `0`.
    pub fn sum(terms: Vec<Expr>) -> Self {
        let mut acc = Number::int(0);
        let mut children: Vec<Expr> = Vec::with_capacity(terms.len());
        let mut stack: Vec<Expr> = terms;
        stack.reverse();
        while let Some(t) = stack.pop() {
            match t.kind() {
                ExprKind::Const(n) => acc = acc.add(n),
                ExprKind::Sum(inner) => stack.extend(inner.iter().rev().cloned()),
                _ => children.push(t),
            }
        }
        if !acc.is_zero() || children.is_empty() {
            children.push(Expr::num(acc));
        }
        if children.len() == 1 {
            return children.pop().unwrap();
        }
        children.sort();
        Expr::new(ExprKind::Sum(children))
    }

    /// Product of `factors`: flattens nested products, folds constants
    /// (a zero factor collapses the whole product), drops ones, and sorts
    /// the children. An empty input yields `1`.
    pub fn product(factors: Vec<Expr>) -> Self {
        let mut acc = Number::int(1);
        let mut children: Vec<Expr> = Vec::with_capacity(factors.len());
        let mut stack: Vec<Expr> = factors;
        stack.reverse();
        while let Some(f) = stack.pop() {
            match f.kind() {
                ExprKind::Const(n) => {
                    if n.is_zero() {
                        return Expr::int(0);
                    }
                    acc = acc.mul(n);
                }
                ExprKind::Product(inner) => stack.extend(inner.iter().rev().cloned()),
                _ => children.push(f),
            }
        }
        if acc.is_zero() {
            return Expr::int(0);
        }
        if !acc.is_one() || children.is_empty() {
            children.push(Expr::num(acc));
        }
        if children.len() == 1 {
            return children.pop().unwrap();
        }
        children.sort();
        Expr::new(ExprKind::Product(children))
    }

    /// `base` raised to the constant `exponent`.
    ///
    /// Folds constant bases when the result is exactly representable,
    /// collapses `(b^e)^k` for integer `k`, and distributes integer
    /// exponents over products. `pow(_, 0)` is `1` by convention.
    pub fn pow(base: Expr, exponent: Number) -> Self {
        if exponent.is_zero() {
            return Expr::int(1);
        }
        if exponent.is_one() {
            return base;
        }
        if let Some(c) = base.as_const() {
            if let Some(folded) = c.pow(&exponent) {
                return Expr::num(folded);
            }
            // Unrepresentable cases (0^negative, negative^fraction) stay
            // symbolic and surface as domain errors at evaluation time.
            return Expr::new(ExprKind::Pow(base, exponent));
        }
        if let Some(k) = exponent.as_integer() {
            match base.kind() {
                // (b^e)^k = b^(e*k) is unconditionally valid for integer k.
                ExprKind::Pow(inner, e) => {
                    return Expr::pow(inner.clone(), e.mul(&Number::int(k)));
                }
                // (u*v)^k = u^k * v^k for integer k.
                ExprKind::Product(fs) => {
                    return Expr::product(
                        fs.iter().map(|f| Expr::pow(f.clone(), exponent)).collect(),
                    );
                }
                _ => {}
            }
        } else if let ExprKind::Product(fs) = base.kind() {
            // For fractional exponents only a positive constant factor can
            // be split out safely: (c*u)^e = c^e * u^e for c > 0.
            if let Some(c) = fs[0].as_const() {
                if !c.is_negative() && !c.is_zero() {
                    if let Some(cf) = c.pow(&exponent) {
                        let rest = Expr::product(fs[1..].to_vec());
                        return Expr::product(vec![Expr::num(cf), Expr::pow(rest, exponent)]);
                    }
                }
            }
        }
        Expr::new(ExprKind::Pow(base, exponent))
    }

    /// If `e` is a negated form (a negative constant, or a product with a
    /// negative constant coefficient), return its negation.
    fn strip_negation(e: &Expr) -> Option<Expr> {
        match e.kind() {
            ExprKind::Const(n) if n.is_negative() => Some(Expr::num(n.neg())),
            ExprKind::Product(fs) => match fs[0].kind() {
                ExprKind::Const(n) if n.is_negative() => {
                    let mut children = vec![Expr::num(n.neg())];
                    children.extend(fs[1..].iter().cloned());
                    Some(Expr::product(children))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// `sin(arg)`, with `sin(0) = 0`, constant folding, and the parity
    /// normalization `sin(-u) = -sin(u)`.
    pub fn sin(arg: Expr) -> Self {
        if let Some(c) = arg.as_const() {
            if c.is_zero() {
                return Expr::int(0);
            }
            return Expr::float(c.as_f64().sin());
        }
        if let Some(pos) = Self::strip_negation(&arg) {
            return -Expr::sin(pos);
        }
        Expr::new(ExprKind::Sin(arg))
    }

    /// `cos(arg)`, with `cos(0) = 1`, constant folding, and the parity
    /// normalization `cos(-u) = cos(u)`.
    pub fn cos(arg: Expr) -> Self {
        if let Some(c) = arg.as_const() {
            if c.is_zero() {
                return Expr::int(1);
            }
            return Expr::float(c.as_f64().cos());
        }
        if let Some(pos) = Self::strip_negation(&arg) {
            return Expr::cos(pos);
        }
        Expr::new(ExprKind::Cos(arg))
    }

    /// The set of free symbols, sorted.
    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self.kind() {
            ExprKind::Const(_) => {}
            ExprKind::Symbol(s) => {
                out.insert(s.clone());
            }
            ExprKind::Sum(cs) | ExprKind::Product(cs) => {
                for c in cs {
                    c.collect_symbols(out);
                }
            }
            ExprKind::Pow(b, _) => b.collect_symbols(out),
            ExprKind::Sin(a) | ExprKind::Cos(a) => a.collect_symbols(out),
        }
    }

    /// Evaluate at `binding`, failing on unbound symbols and on points
    /// outside the real domain (poles, negative fractional powers,
    /// floating-point overflow).
    pub fn eval(&self, binding: &Binding) -> Result<f64, EvalError> {
        self.eval_tracked(binding).map(|(v, _)| v)
    }

    /// Evaluate and also report the largest absolute value reached by any
    /// intermediate subterm. The probabilistic zero test scales its
    /// tolerance by this magnitude so cancellation near poles does not
    /// produce false "nonzero" verdicts.
    pub fn eval_tracked(&self, binding: &Binding) -> Result<(f64, f64), EvalError> {
        let (v, max) = self.eval_inner(binding)?;
        Ok((v, max))
    }

    fn eval_inner(&self, binding: &Binding) -> Result<(f64, f64), EvalError> {
        let (value, child_max) = match self.kind() {
            ExprKind::Const(n) => (n.as_f64(), 0.0),
            ExprKind::Symbol(s) => match binding.get(s) {
                Some(v) => (v, 0.0),
                None => {
                    return Err(EvalError::Unbound { symbol: s.clone() });
                }
            },
            ExprKind::Sum(cs) => {
                let mut acc = 0.0;
                let mut max = 0.0f64;
                for c in cs {
                    let (v, m) = c.eval_inner(binding)?;
                    acc += v;
                    max = max.max(m);
                }
                (acc, max)
            }
            ExprKind::Product(cs) => {
                let mut acc = 1.0;
                let mut max = 0.0f64;
                for c in cs {
                    let (v, m) = c.eval_inner(binding)?;
                    acc *= v;
                    max = max.max(m);
                }
                (acc, max)
            }
            ExprKind::Pow(b, e) => {
                let (bv, m) = b.eval_inner(binding)?;
                let v = if let Some(k) = e.as_integer() {
                    if bv == 0.0 && k < 0 {
                        return Err(EvalError::Domain {
                            subexpression: short_desc(self),
                        });
                    }
                    bv.powi(k.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
                } else {
                    if bv < 0.0 || (bv == 0.0 && e.is_negative()) {
                        return Err(EvalError::Domain {
                            subexpression: short_desc(self),
                        });
                    }
                    bv.powf(e.as_f64())
                };
                (v, m)
            }
            ExprKind::Sin(a) => {
                let (av, m) = a.eval_inner(binding)?;
                (av.sin(), m)
            }
            ExprKind::Cos(a) => {
                let (av, m) = a.eval_inner(binding)?;
                (av.cos(), m)
            }
        };
        if !value.is_finite() {
            return Err(EvalError::Domain {
                subexpression: short_desc(self),
            });
        }
        Ok((value, child_max.max(value.abs())))
    }

    /// Exact partial derivative with respect to the symbol `v`.
    pub fn diff(&self, v: &str) -> Expr {
        self.diff_with(v, &())
    }

    /// Exact partial derivative with extra symbol rules.
    ///
    /// `rules` supplies derivatives for symbols that stand for functions
    /// of the coordinates (for example, treating `a_x` as ∂a/∂x with
    /// ∂(a_x)/∂t = `a_tx`). Symbols without a rule are independent
    /// variables, as in [`Expr::diff`].
    pub fn diff_with(&self, v: &str, rules: &dyn SymbolDerivatives) -> Expr {
        match self.kind() {
            ExprKind::Const(_) => Expr::int(0),
            ExprKind::Symbol(s) => {
                if s == v {
                    Expr::int(1)
                } else {
                    rules.derivative(s, v).unwrap_or_else(|| Expr::int(0))
                }
            }
            ExprKind::Sum(cs) => {
                Expr::sum(cs.iter().map(|c| c.diff_with(v, rules)).collect())
            }
            ExprKind::Product(cs) => {
                // Product rule: sum over each factor differentiated once.
                let mut terms = Vec::with_capacity(cs.len());
                for (i, ci) in cs.iter().enumerate() {
                    let mut factors = vec![ci.diff_with(v, rules)];
                    for (j, cj) in cs.iter().enumerate() {
                        if i != j {
                            factors.push(cj.clone());
                        }
                    }
                    terms.push(Expr::product(factors));
                }
                Expr::sum(terms)
            }
            ExprKind::Pow(b, e) => {
                // d(u^c) = c * u^(c-1) * u'
                let decremented = e.add(&Number::int(-1));
                Expr::product(vec![
                    Expr::num(*e),
                    Expr::pow(b.clone(), decremented),
                    b.diff_with(v, rules),
                ])
            }
            ExprKind::Sin(a) => {
                Expr::product(vec![Expr::cos(a.clone()), a.diff_with(v, rules)])
            }
            ExprKind::Cos(a) => Expr::product(vec![
                Expr::int(-1),
                Expr::sin(a.clone()),
                a.diff_with(v, rules),
            ]),
        }
    }

    /// Replace every occurrence of the symbol `v` by `replacement`.
    pub fn substitute(&self, v: &str, replacement: &Expr) -> Expr {
        self.substitute_many(&[(v, replacement.clone())])
    }

    /// Simultaneously replace several symbols. Simultaneity matters when a
    /// replacement expression mentions one of the substituted names (as in
    /// coordinate changes that permute names).
    pub fn substitute_many(&self, subs: &[(&str, Expr)]) -> Expr {
        match self.kind() {
            ExprKind::Const(_) => self.clone(),
            ExprKind::Symbol(s) => {
                for (name, r) in subs {
                    if s == name {
                        return r.clone();
                    }
                }
                self.clone()
            }
            ExprKind::Sum(cs) => {
                Expr::sum(cs.iter().map(|c| c.substitute_many(subs)).collect())
            }
            ExprKind::Product(cs) => {
                Expr::product(cs.iter().map(|c| c.substitute_many(subs)).collect())
            }
            ExprKind::Pow(b, e) => Expr::pow(b.substitute_many(subs), *e),
            ExprKind::Sin(a) => Expr::sin(a.substitute_many(subs)),
            ExprKind::Cos(a) => Expr::cos(a.substitute_many(subs)),
        }
    }
}

// ---------------------------------------------------------------------------
// Operator overloading. Subtraction and division build the canonical
// encodings: a - b = a + (-1)*b and a / b = a * b^(-1).
// ---------------------------------------------------------------------------

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, rhs])
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum(vec![self, -rhs])
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product(vec![self, rhs])
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::product(vec![self, Expr::pow(rhs, Number::int(-1))])
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::product(vec![Expr::int(-1), self])
    }
}

macro_rules! forward_ref_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $trait::$method(self.clone(), rhs.clone())
            }
        }
        impl $trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $trait::$method(self, rhs.clone())
            }
        }
        impl $trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $trait::$method(self.clone(), rhs)
            }
        }
    };
}

forward_ref_binop!(Add, add);
forward_ref_binop!(Sub, sub);
forward_ref_binop!(Mul, mul);
forward_ref_binop!(Div, div);

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -self.clone()
    }
}

// ---------------------------------------------------------------------------
// Display: a canonical serialization that the parser round-trips.
// ---------------------------------------------------------------------------

#[derive(PartialEq, PartialOrd)]
enum Prec {
    Sum,
    Product,
    Pow,
    Atom,
}

fn precedence(e: &Expr) -> Prec {
    match e.kind() {
        ExprKind::Sum(_) => Prec::Sum,
        ExprKind::Product(_) => Prec::Product,
        ExprKind::Pow(..) => Prec::Pow,
        ExprKind::Const(n) => {
            if n.is_negative() {
                Prec::Sum // needs parens anywhere a sign could bind
            } else {
                match n {
                    // A bare fraction binds looser than ^.
                    Number::Rational(_, d) if *d != 1 => Prec::Product,
                    Number::Float(_) => Prec::Product,
                    _ => Prec::Atom,
                }
            }
        }
        _ => Prec::Atom,
    }
}

fn write_with_parens(f: &mut fmt::Formatter<'_>, e: &Expr, min: Prec) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            ExprKind::Const(n) => write!(f, "{n}"),
            ExprKind::Symbol(s) => write!(f, "{s}"),
            ExprKind::Sum(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i == 0 {
                        write_with_parens(f, c, Prec::Sum)?;
                    } else if let Some(pos) = Expr::strip_negation(c) {
                        write!(f, " - ")?;
                        write_with_parens(f, &pos, Prec::Product)?;
                    } else {
                        write!(f, " + ")?;
                        write_with_parens(f, c, Prec::Product)?;
                    }
                }
                Ok(())
            }
            ExprKind::Product(cs) => {
                let mut rest: &[Expr] = cs;
                if let Some(c) = cs[0].as_const() {
                    if c == Number::int(-1) {
                        write!(f, "-")?;
                        rest = &cs[1..];
                    } else if c.is_negative() {
                        write!(f, "-")?;
                        write_with_parens(f, &Expr::num(c.neg()), Prec::Product)?;
                        write!(f, "*")?;
                        rest = &cs[1..];
                    }
                }
                for (i, c) in rest.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write_with_parens(f, c, Prec::Product)?;
                }
                Ok(())
            }
            ExprKind::Pow(b, e) => {
                write_with_parens(f, b, Prec::Atom)?;
                write!(f, "^")?;
                let simple_exponent = matches!(e, Number::Rational(n, 1) if *n >= 0);
                if simple_exponent {
                    write!(f, "{e}")
                } else {
                    write!(f, "({e})")
                }
            }
            ExprKind::Sin(a) => write!(f, "sin({a})"),
            ExprKind::Cos(a) => write!(f, "cos({a})"),
        }
    }
}
