//! The solution-generating construction and its catalog.
//!
//! For any free function `a(t, x)`, the metric
//!
//! ```text
//! ds² = b dt² + 2 a_x dt dx − a²(dy² + dz²),   b = 2 a_t + Λa²/3 + m/a
//! ```
//!
//! solves the vacuum field equations with cosmological constant `Λ`,
//! `R_{μν} = Λ g_{μν}`. This module derives `b`, assembles the metric,
//! maintains the named catalog of generator functions, and performs chart
//! (coordinate) transformations, including the two-step chart that
//! exhibits the `m = 0` subfamily as conformally flat.
//!
//! # Jet evaluation
//!
//! Curvature objects of an ansatz solution are computed with `a` and its
//! partial derivatives held as atomic symbols (`a`, `a_t`, `a_x`,
//! `a_tx`, ...) — a jet of the free function — and the concrete
//! derivatives substituted afterwards. Working in jet variables lets the
//! simplifier cancel every removable `a_x` pole term by term, so scalars
//! like the Kretschmann invariant stay evaluable at points where the
//! chart degenerates (`a_x = 0`) even though the coordinate inverse
//! metric blows up there.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::{
    compute_curvature_with, einstein_residual_with, CurvatureBundle, Tensor2,
};
use crate::expr::{Binding, Expr, SymbolDerivatives};
use crate::metric::{MetricError, MetricTensor};
use crate::number::Number;
use crate::parse::{SolutionMode, SolutionSpec};
use crate::simplify::simplify;
use crate::zerotest::{Verdict, ZeroTest};

/// Error raised while building solutions or transforming charts.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnsatzError {
    /// The requested catalog name does not exist.
    #[error("unknown builtin solution '{0}'")]
    UnknownBuiltin(String),
    /// A parameter violated a catalog or family constraint.
    #[error("constraint violation for '{name}': {message}")]
    Constraint {
        /// Solution or transform name.
        name: String,
        /// What was violated.
        message: String,
    },
    /// A chart transform failed its sampled invertibility or composition
    /// checks.
    #[error("chart transform '{name}' is not invertible on its domain: {message}")]
    NotInvertible {
        /// Transform name.
        name: String,
        /// Which check failed.
        message: String,
    },
    /// An underlying metric operation failed.
    #[error(transparent)]
    Metric(#[from] MetricError),
}

// ---------------------------------------------------------------------------
// Jet differentiation
// ---------------------------------------------------------------------------

/// Differentiation rules treating `a` and its partials as jet symbols.
///
/// `a_t`, `a_x`, `a_tt`, `a_tx`, ... name the partial derivatives of the
/// free function; the multi-index is kept sorted (`t` before `x`) so
/// mixed partials are automatically identified.
struct JetRules {
    c0: String,
    c1: String,
}

/// The sorted derivative word of a jet symbol, if it is one.
fn jet_word(symbol: &str) -> Option<String> {
    if symbol == "a" {
        return Some(String::new());
    }
    let w = symbol.strip_prefix("a_")?;
    if !w.is_empty() && w.chars().all(|c| c == 't' || c == 'x') {
        Some(w.to_string())
    } else {
        None
    }
}

impl SymbolDerivatives for JetRules {
    fn derivative(&self, symbol: &str, var: &str) -> Option<Expr> {
        let letter = if var == self.c0 {
            't'
        } else if var == self.c1 {
            'x'
        } else {
            return None;
        };
        let word = jet_word(symbol)?;
        let mut chars: Vec<char> = word.chars().collect();
        chars.push(letter);
        chars.sort_unstable();
        let extended: String = chars.into_iter().collect();
        Some(Expr::symbol(&format!("a_{extended}")))
    }
}

/// Concrete value of the jet symbol with derivative word `word`.
fn concrete_jet(a: &Expr, word: &str, c0: &str, c1: &str) -> Expr {
    let mut cur = a.clone();
    for ch in word.chars() {
        cur = if ch == 't' { cur.diff(c0) } else { cur.diff(c1) };
    }
    cur
}

/// Substitute concrete derivatives of `a` for every jet symbol in `e`.
fn substitute_jets(e: &Expr, a: &Expr, c0: &str, c1: &str) -> Expr {
    let mut pairs: Vec<(String, Expr)> = Vec::new();
    for sym in e.free_symbols() {
        if let Some(word) = jet_word(&sym) {
            pairs.push((sym.clone(), concrete_jet(a, &word, c0, c1)));
        }
    }
    if pairs.is_empty() {
        return e.clone();
    }
    let borrowed: Vec<(&str, Expr)> = pairs
        .iter()
        .map(|(s, v)| (s.as_str(), v.clone()))
        .collect();
    simplify(&e.substitute_many(&borrowed))
}

// ---------------------------------------------------------------------------
// Solution construction
// ---------------------------------------------------------------------------

/// Derive `b = 2 a_t + Λa²/3 + m/a` (coordinates `t`, `x`).
pub fn derive_b(a: &Expr, lambda: Number, m: Number) -> Expr {
    derive_b_in(a, lambda, m, "t")
}

/// [`derive_b`] with a custom name for the first coordinate.
pub fn derive_b_in(a: &Expr, lambda: Number, m: Number, c0: &str) -> Expr {
    let a2 = a.clone() * a.clone();
    let b = Expr::int(2) * a.diff(c0)
        + Expr::num(lambda) * Expr::rational(1, 3) * a2
        + Expr::num(m) * Expr::pow(a.clone(), Number::int(-1));
    simplify(&b)
}

/// The closed-form `R₂₂` of the ansatz metric,
/// `(2a·a_{tx} + 2a_x·a_t − b_x·a − a_x·b) / a_x` (coordinates `t`, `x`).
///
/// Degenerate when `a_x` is identically zero.
pub fn closed_form_r22(a: &Expr, b: &Expr) -> Expr {
    let a_t = a.diff("t");
    let a_x = a.diff("x");
    let a_tx = a_t.diff("x");
    let b_x = b.diff("x");
    let numerator = Expr::int(2) * a.clone() * a_tx + Expr::int(2) * a_x.clone() * a_t
        - b_x * a.clone()
        - a_x.clone() * b.clone();
    simplify(&(numerator * Expr::pow(a_x, Number::int(-1))))
}

/// A fully derived solution of the family.
#[derive(Debug, Clone)]
pub struct AnsatzSolution {
    /// Catalog name, when built from the catalog.
    pub name: Option<String>,
    /// The free function `a(t, x)` with parameters substituted.
    pub a: Expr,
    /// Cosmological constant.
    pub lambda: Number,
    /// Mass parameter (`≥ 0`).
    pub m: Number,
    /// Derived `b = 2a_t + Λa²/3 + m/a`.
    pub b: Expr,
    /// The assembled metric: `g₀₀ = b`, `g₀₁ = a_x`, `g₂₂ = g₃₃ = −a²`.
    pub metric: MetricTensor,
    /// Non-fatal notes (for example `m = 0`, or non-integer `m`).
    pub warnings: Vec<String>,
}

impl AnsatzSolution {
    /// Build a solution from a free function.
    ///
    /// `coords` names the four coordinates (`a` may depend on the first
    /// two). `m` must be nonnegative; `m = 0` and non-integer `m` produce
    /// warnings, matching the family's stated parameter range.
    pub fn new(
        name: Option<String>,
        a: Expr,
        lambda: Number,
        m: Number,
        coords: [String; 4],
    ) -> Result<Self, AnsatzError> {
        let label = name.clone().unwrap_or_else(|| "ansatz".to_string());
        if m.is_negative() {
            return Err(AnsatzError::Constraint {
                name: label,
                message: format!("m must be nonnegative, found {m}"),
            });
        }
        // Jet symbols are reserved for the internal derivative expansion.
        for sym in a
            .free_symbols()
            .into_iter()
            .chain(coords.iter().cloned())
        {
            if jet_word(&sym).is_some() {
                return Err(AnsatzError::Constraint {
                    name: label,
                    message: format!(
                        "symbol '{sym}' collides with reserved jet symbols (a, a_t, a_x, ...)"
                    ),
                });
            }
        }
        let mut warnings = Vec::new();
        if m.is_zero() {
            warnings.push(
                "m = 0: the solution lies in the conformally flat subfamily".to_string(),
            );
        } else if m.as_integer().is_none() || m.is_negative() {
            warnings.push(format!(
                "m = {m} is not a positive integer; the family is stated for integral m \
                 but the construction holds for any m >= 0"
            ));
        }

        let c0 = coords[0].clone();
        let c1 = coords[1].clone();
        let b = derive_b_in(&a, lambda, m, &c0);
        let a_x = simplify(&a.diff(&c1));
        let minus_a2 = simplify(&-(a.clone() * a.clone()));
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        upper[0][0] = b.clone();
        upper[0][1] = a_x;
        upper[2][2] = minus_a2.clone();
        upper[3][3] = minus_a2;
        let mut params = BTreeMap::new();
        params.insert("Lambda".to_string(), lambda);
        params.insert("m".to_string(), m);
        let metric = MetricTensor::from_upper(coords, upper).with_params(params);

        Ok(AnsatzSolution {
            name,
            a,
            lambda,
            m,
            b,
            metric,
            warnings,
        })
    }

    fn jet_metric(&self) -> MetricTensor {
        let a = Expr::symbol("a");
        let b_jet = Expr::int(2) * Expr::symbol("a_t")
            + Expr::num(self.lambda) * Expr::rational(1, 3) * a.clone() * a.clone()
            + Expr::num(self.m) * Expr::pow(a.clone(), Number::int(-1));
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        upper[0][0] = simplify(&b_jet);
        upper[0][1] = Expr::symbol("a_x");
        upper[2][2] = -(a.clone() * a.clone());
        upper[3][3] = -(a.clone() * a);
        MetricTensor::from_upper(self.metric.coords().clone(), upper)
    }

    fn jet_rules(&self) -> JetRules {
        JetRules {
            c0: self.metric.coords()[0].clone(),
            c1: self.metric.coords()[1].clone(),
        }
    }

    /// The full curvature bundle, computed through the jet expansion and
    /// substituted back to concrete coordinates.
    pub fn curvature_bundle(&self) -> CurvatureBundle {
        let jet_metric = self.jet_metric();
        let rules = self.jet_rules();
        let bundle = compute_curvature_with(&jet_metric, &rules)
            .expect("ansatz jet metric is nondegenerate by construction");
        let c0 = &self.metric.coords()[0];
        let c1 = &self.metric.coords()[1];
        let sub = |e: &Expr| substitute_jets(e, &self.a, c0, c1);
        CurvatureBundle {
            inverse: map2(&bundle.inverse, sub),
            christoffel: std::array::from_fn(|r| {
                std::array::from_fn(|m| std::array::from_fn(|n| sub(&bundle.christoffel[r][m][n])))
            }),
            riemann: map4(&bundle.riemann, sub),
            ricci: map2(&bundle.ricci, sub),
            scalar: sub(&bundle.scalar),
            kretschmann: sub(&bundle.kretschmann),
            weyl: map4(&bundle.weyl, sub),
        }
    }

    /// The vacuum residual `R_{μν} − Λ g_{μν}` through the jet path.
    pub fn einstein_residual(&self) -> Tensor2 {
        let jet_metric = self.jet_metric();
        let rules = self.jet_rules();
        let residual = einstein_residual_with(
            &jet_metric,
            &Expr::num(self.lambda),
            &rules,
        )
        .expect("ansatz jet metric is nondegenerate by construction");
        let c0 = &self.metric.coords()[0];
        let c1 = &self.metric.coords()[1];
        map2(&residual, |e| substitute_jets(e, &self.a, c0, c1))
    }
}

fn map2(t: &Tensor2, f: impl Fn(&Expr) -> Expr) -> Tensor2 {
    std::array::from_fn(|i| std::array::from_fn(|j| f(&t[i][j])))
}

fn map4(
    t: &[[[[Expr; 4]; 4]; 4]; 4],
    f: impl Fn(&Expr) -> Expr,
) -> [[[[Expr; 4]; 4]; 4]; 4] {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            std::array::from_fn(|m| std::array::from_fn(|n| f(&t[a][b][m][n])))
        })
    })
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Metadata for one catalog entry.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// CLI-facing name.
    pub name: &'static str,
    /// The generator function, as text.
    pub generator: &'static str,
    /// One-line description.
    pub description: &'static str,
    /// Default Λ when none is given.
    pub default_lambda: Number,
    /// Default m when none is given.
    pub default_m: Number,
    /// Human-readable parameter constraint, if any.
    pub constraint: Option<&'static str>,
}

/// The built-in solutions, in catalog order.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "space_periodic",
            generator: "a = 2 + cos(x)",
            description: "static profile, periodic in x; everywhere regular",
            default_lambda: Number::int(1),
            default_m: Number::int(1),
            constraint: None,
        },
        CatalogEntry {
            name: "regular_periodic",
            generator: "a = (2 + cos(x)) * (2 + sin(Lambda*t/6))",
            description: "periodic in t and x; everywhere regular",
            default_lambda: Number::int(1),
            default_m: Number::int(1),
            constraint: None,
        },
        CatalogEntry {
            name: "singular_periodic",
            generator: "a = cos(x) * sin(Lambda*t/6)",
            description: "periodic with curvature singularities on the zero set of a",
            default_lambda: Number::int(1),
            default_m: Number::int(1),
            constraint: Some("requires Lambda != 0"),
        },
        CatalogEntry {
            name: "conformal_flat",
            generator: "a = x",
            description: "m = 0 representative; conformally flat via a two-step chart",
            default_lambda: Number::int(1),
            default_m: Number::int(0),
            constraint: Some("requires m = 0"),
        },
        CatalogEntry {
            name: "lambda_zero",
            generator: "a = 2 + cos(x)",
            description: "vacuum solution without cosmological constant",
            default_lambda: Number::int(0),
            default_m: Number::int(1),
            constraint: Some("requires Lambda = 0"),
        },
    ]
}

fn default_coords() -> [String; 4] {
    ["t".into(), "x".into(), "y".into(), "z".into()]
}

/// Build a catalog solution by name.
///
/// ```
/// use lambdavac::ansatz::builtin;
/// use lambdavac::Number;
///
/// let sol = builtin("space_periodic", Number::int(1), Number::int(1)).unwrap();
/// assert_eq!(sol.a.to_string(), "2 + cos(x)");
/// ```
pub fn builtin(name: &str, lambda: Number, m: Number) -> Result<AnsatzSolution, AnsatzError> {
    let t = Expr::symbol("t");
    let x = Expr::symbol("x");
    let lam_t_6 = Expr::num(lambda) * Expr::rational(1, 6) * t;
    let a = match name {
        "space_periodic" => Expr::int(2) + Expr::cos(x),
        "regular_periodic" => {
            (Expr::int(2) + Expr::cos(x)) * (Expr::int(2) + Expr::sin(lam_t_6))
        }
        "singular_periodic" => {
            if lambda.is_zero() {
                return Err(AnsatzError::Constraint {
                    name: name.to_string(),
                    message: "requires Lambda != 0 (a would vanish identically)".to_string(),
                });
            }
            Expr::cos(x) * Expr::sin(lam_t_6)
        }
        "conformal_flat" => {
            if !m.is_zero() {
                return Err(AnsatzError::Constraint {
                    name: name.to_string(),
                    message: format!("requires m = 0, found m = {m}"),
                });
            }
            x
        }
        "lambda_zero" => {
            if !lambda.is_zero() {
                return Err(AnsatzError::Constraint {
                    name: name.to_string(),
                    message: format!("requires Lambda = 0, found Lambda = {lambda}"),
                });
            }
            Expr::int(2) + Expr::cos(x)
        }
        other => return Err(AnsatzError::UnknownBuiltin(other.to_string())),
    };
    AnsatzSolution::new(Some(name.to_string()), a, lambda, m, default_coords())
}

/// A solution loaded from a parsed `.metric` file.
#[derive(Debug, Clone)]
pub enum LoadedSolution {
    /// Ansatz mode: a fully derived solution.
    Ansatz(AnsatzSolution),
    /// Explicit mode: the raw metric with parameters substituted.
    Explicit(MetricTensor),
}

/// Instantiate a parsed [`SolutionSpec`], optionally overriding `Λ`/`m`.
pub fn load_spec(
    spec: &SolutionSpec,
    lambda_override: Option<Number>,
    m_override: Option<Number>,
) -> Result<LoadedSolution, AnsatzError> {
    let mut params = spec.params.clone();
    if let Some(l) = lambda_override {
        params.insert("Lambda".to_string(), l);
    }
    if let Some(m) = m_override {
        params.insert("m".to_string(), m);
    }
    let substitutions: Vec<(String, Expr)> = params
        .iter()
        .map(|(k, v)| (k.clone(), Expr::num(*v)))
        .collect();
    let subs_borrowed: Vec<(&str, Expr)> = substitutions
        .iter()
        .map(|(k, v)| (k.as_str(), v.clone()))
        .collect();

    match &spec.mode {
        SolutionMode::Ansatz { a } => {
            let lambda = params.get("Lambda").copied().ok_or_else(|| {
                AnsatzError::Constraint {
                    name: "file".to_string(),
                    message: "ansatz mode requires Lambda".to_string(),
                }
            })?;
            let m = params.get("m").copied().ok_or_else(|| AnsatzError::Constraint {
                name: "file".to_string(),
                message: "ansatz mode requires m".to_string(),
            })?;
            let a = simplify(&a.substitute_many(&subs_borrowed));
            let mut sol =
                AnsatzSolution::new(None, a, lambda, m, spec.coords.clone())?;
            sol.warnings.extend(spec.warnings.iter().cloned());
            Ok(LoadedSolution::Ansatz(sol))
        }
        SolutionMode::Explicit { components } => {
            let mut upper: [[Expr; 4]; 4] =
                std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
            for (i, row) in components.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if i <= j {
                        upper[i][j] = simplify(&c.substitute_many(&subs_borrowed));
                    }
                }
            }
            let metric = MetricTensor::from_upper(spec.coords.clone(), upper)
                .with_params(params);
            Ok(LoadedSolution::Explicit(metric))
        }
    }
}

// ---------------------------------------------------------------------------
// Chart transforms
// ---------------------------------------------------------------------------

/// A coordinate transform: each target coordinate as an expression in
/// the source coordinates, with a sampled-invertibility domain box over
/// the source coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartTransform {
    /// Label used in error messages.
    pub name: String,
    /// Source (input) coordinate names.
    pub source_coords: [String; 4],
    /// Target (output) coordinate names.
    pub target_coords: [String; 4],
    /// `target_i` as an expression in the source coordinates.
    pub exprs: [Expr; 4],
    /// Sampling box per source coordinate.
    pub domain: Vec<(String, (f64, f64))>,
}

impl ChartTransform {
    /// Build a transform, verifying a nonzero Jacobian determinant at 64
    /// seeded points of the declared domain.
    pub fn new(
        name: &str,
        source_coords: [String; 4],
        target_coords: [String; 4],
        exprs: [Expr; 4],
        domain: Vec<(String, (f64, f64))>,
    ) -> Result<Self, AnsatzError> {
        let t = ChartTransform {
            name: name.to_string(),
            source_coords,
            target_coords,
            exprs,
            domain,
        };
        t.check_jacobian()?;
        Ok(t)
    }

    fn sample_point(&self, rng: &mut ChaCha8Rng) -> Binding {
        let mut binding = Binding::new();
        for c in &self.source_coords {
            let (lo, hi) = self
                .domain
                .iter()
                .find(|(n, _)| n == c)
                .map(|(_, r)| *r)
                .unwrap_or((-2.0, 2.0));
            let v = if lo < hi { rng.gen_range(lo..hi) } else { lo };
            binding = binding.set(c, v);
        }
        binding
    }

    fn check_jacobian(&self) -> Result<(), AnsatzError> {
        let mut jac: Vec<Vec<Expr>> = Vec::with_capacity(4);
        for e in &self.exprs {
            jac.push(self.source_coords.iter().map(|c| e.diff(c)).collect());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut checked = 0usize;
        let mut attempts = 0usize;
        while checked < 64 && attempts < 640 {
            attempts += 1;
            let binding = self.sample_point(&mut rng);
            let mut m = nalgebra::Matrix4::<f64>::zeros();
            let mut ok = true;
            'fill: for (i, row) in jac.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    match e.eval(&binding) {
                        Ok(v) if v.is_finite() => m[(i, j)] = v,
                        _ => {
                            ok = false;
                            break 'fill;
                        }
                    }
                }
            }
            if !ok {
                continue;
            }
            let det = m.determinant();
            if !det.is_finite() || det.abs() < 1e-10 {
                return Err(AnsatzError::NotInvertible {
                    name: self.name.clone(),
                    message: format!(
                        "Jacobian determinant {det:e} at a sampled domain point"
                    ),
                });
            }
            checked += 1;
        }
        if checked < 64 {
            return Err(AnsatzError::NotInvertible {
                name: self.name.clone(),
                message: "too few evaluable domain points for the Jacobian check".to_string(),
            });
        }
        Ok(())
    }

    /// Compose: apply `self` first, then `next` (which must consume
    /// `self`'s target coordinates). The result maps source coordinates
    /// of `self` directly to target coordinates of `next`.
    pub fn compose(&self, next: &ChartTransform) -> Result<ChartTransform, AnsatzError> {
        if next.source_coords != self.target_coords {
            return Err(AnsatzError::NotInvertible {
                name: format!("{} . {}", next.name, self.name),
                message: "coordinate names do not chain".to_string(),
            });
        }
        let pairs: Vec<(&str, Expr)> = next
            .source_coords
            .iter()
            .zip(self.exprs.iter())
            .map(|(n, e)| (n.as_str(), e.clone()))
            .collect();
        let exprs: [Expr; 4] =
            std::array::from_fn(|i| simplify(&next.exprs[i].substitute_many(&pairs)));
        ChartTransform::new(
            &format!("{} . {}", next.name, self.name),
            self.source_coords.clone(),
            next.target_coords.clone(),
            exprs,
            self.domain.clone(),
        )
    }
}

/// Pull a metric back through a chart transform.
///
/// `forward` maps old (source) coordinates to new (target) ones;
/// `inverse` maps new to old. The two must name coordinates
/// consistently, and their composition must be the identity on the
/// inverse's declared domain (verified by the probabilistic zero test).
/// The result is
/// `g'_{ab} = (∂x^μ/∂x'^a)(∂x^ν/∂x'^b) g_{μν}` with the old coordinates
/// substituted out.
pub fn pullback_metric(
    g: &MetricTensor,
    forward: &ChartTransform,
    inverse: &ChartTransform,
) -> Result<MetricTensor, AnsatzError> {
    if forward.source_coords != *g.coords() {
        return Err(AnsatzError::NotInvertible {
            name: forward.name.clone(),
            message: "transform source coordinates do not match the metric".to_string(),
        });
    }
    if inverse.source_coords != forward.target_coords
        || inverse.target_coords != forward.source_coords
    {
        return Err(AnsatzError::NotInvertible {
            name: forward.name.clone(),
            message: "inverse transform coordinates do not mirror the forward ones"
                .to_string(),
        });
    }

    // Composition check: forward(inverse(new)) == new on the inverse's
    // domain.
    let old_to_inverse: Vec<(&str, Expr)> = inverse
        .target_coords
        .iter()
        .zip(inverse.exprs.iter())
        .map(|(n, e)| (n.as_str(), e.clone()))
        .collect();
    for (i, fwd) in forward.exprs.iter().enumerate() {
        let composed = fwd.substitute_many(&old_to_inverse);
        let identity = composed - Expr::symbol(&forward.target_coords[i]);
        let mut zt = ZeroTest::new().samples(16);
        for (name, (lo, hi)) in &inverse.domain {
            zt = zt.range(name, *lo, *hi);
        }
        if !matches!(zt.test(&identity), Verdict::Zero) {
            return Err(AnsatzError::NotInvertible {
                name: forward.name.clone(),
                message: format!(
                    "composition is not the identity in coordinate '{}'",
                    forward.target_coords[i]
                ),
            });
        }
    }

    // g'_{ab} = (∂old^μ/∂new^a)(∂old^ν/∂new^b) g_{μν}(old(new))
    let jacobian: Vec<Vec<Expr>> = inverse
        .exprs
        .iter()
        .map(|e| {
            inverse
                .source_coords
                .iter()
                .map(|c| simplify(&e.diff(c)))
                .collect()
        })
        .collect();
    let mut upper: [[Expr; 4]; 4] =
        std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
    for a in 0..4 {
        for bb in a..4 {
            let mut terms = Vec::new();
            for mu in 0..4 {
                for nu in 0..4 {
                    let g_old = g.component(mu, nu);
                    if g_old.is_zero() {
                        continue;
                    }
                    let g_new = g_old.substitute_many(&old_to_inverse);
                    terms.push(jacobian[mu][a].clone() * jacobian[nu][bb].clone() * g_new);
                }
            }
            upper[a][bb] = simplify(&Expr::sum(terms));
        }
    }
    Ok(MetricTensor::from_upper(inverse.source_coords.clone(), upper)
        .with_params(g.params().clone()))
}

/// The two-step chart exhibiting the `m = 0`, `a = x` solution as
/// conformally flat: first `(t, x) → (eta, xi)` with `eta = t`,
/// `xi = Λt/3 − 2/x`, then null-like coordinates
/// `ttilde = (xi + eta)/2`, `xtilde = (xi − eta)/2`.
///
/// Returns `((forward1, inverse1), (forward2, inverse2))`, with domains
/// pinned to boxes where both steps are invertible for moderate `Λ`
/// (`x < 0` on the first chart).
pub fn conformal_chart(lambda: Number) -> Result<
    (
        (ChartTransform, ChartTransform),
        (ChartTransform, ChartTransform),
    ),
    AnsatzError,
> {
    let lam = Expr::num(lambda);
    let t = Expr::symbol("t");
    let x = Expr::symbol("x");
    let eta = Expr::symbol("eta");
    let xi = Expr::symbol("xi");
    let ttilde = Expr::symbol("ttilde");
    let xtilde = Expr::symbol("xtilde");

    let old = default_coords();
    let mid: [String; 4] = ["eta".into(), "xi".into(), "y".into(), "z".into()];
    let new: [String; 4] = ["ttilde".into(), "xtilde".into(), "y".into(), "z".into()];

    // eta = t, xi = Λt/3 − 2/x
    let forward1 = ChartTransform::new(
        "null-potential",
        old.clone(),
        mid.clone(),
        [
            t.clone(),
            lam.clone() * Expr::rational(1, 3) * t.clone()
                - Expr::int(2) * Expr::pow(x.clone(), Number::int(-1)),
            Expr::symbol("y"),
            Expr::symbol("z"),
        ],
        vec![
            ("t".to_string(), (-1.0, 1.0)),
            ("x".to_string(), (-1.0, -0.5)),
        ],
    )?;
    // t = eta, x = 6/(Λ·eta − 3·xi)
    let inverse1 = ChartTransform::new(
        "null-potential-inverse",
        mid.clone(),
        old,
        [
            eta.clone(),
            Expr::int(6)
                * Expr::pow(
                    lam.clone() * eta.clone() - Expr::int(3) * xi.clone(),
                    Number::int(-1),
                ),
            Expr::symbol("y"),
            Expr::symbol("z"),
        ],
        vec![
            ("eta".to_string(), (-0.9, 0.9)),
            ("xi".to_string(), (2.1, 3.9)),
        ],
    )?;
    // ttilde = (xi + eta)/2, xtilde = (xi − eta)/2
    let forward2 = ChartTransform::new(
        "null-average",
        mid.clone(),
        new.clone(),
        [
            Expr::rational(1, 2) * (xi.clone() + eta.clone()),
            Expr::rational(1, 2) * (xi - eta),
            Expr::symbol("y"),
            Expr::symbol("z"),
        ],
        vec![
            ("eta".to_string(), (-0.9, 0.9)),
            ("xi".to_string(), (2.1, 3.9)),
        ],
    )?;
    // eta = ttilde − xtilde, xi = ttilde + xtilde
    let inverse2 = ChartTransform::new(
        "null-average-inverse",
        new,
        mid,
        [
            ttilde.clone() - xtilde.clone(),
            ttilde + xtilde,
            Expr::symbol("y"),
            Expr::symbol("z"),
        ],
        vec![
            ("ttilde".to_string(), (1.0, 2.0)),
            ("xtilde".to_string(), (1.0, 2.0)),
        ],
    )?;
    Ok(((forward1, inverse1), (forward2, inverse2)))
}

/// The conformal factor of the pulled-back `m = 0`, `a = x` metric in the
/// final chart: `a = 6/((Λ−3)·ttilde − (Λ+3)·xtilde)`.
pub fn conformal_factor(lambda: Number) -> Expr {
    let lam = Expr::num(lambda);
    let denom = (lam.clone() - Expr::int(3)) * Expr::symbol("ttilde")
        - (lam + Expr::int(3)) * Expr::symbol("xtilde");
    Expr::int(6) * Expr::pow(denom, Number::int(-1))
}
