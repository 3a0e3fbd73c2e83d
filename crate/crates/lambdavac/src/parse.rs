//! Parsers for the expression grammar and the `.metric` solution format.
//!
//! The expression grammar covers numbers (integers, decimals, exact
//! rationals via `/`, scientific notation), identifiers, the operators
//! `+ - * / ^` with the usual precedence (`^` tightest and
//! right-associative), unary minus, `sin(·)`, `cos(·)`, `pi`, and
//! parentheses. Exponents must fold to numeric constants: the expression
//! core only represents constant powers.
//!
//! The `.metric` format is line-oriented: an optional `coords` line, any
//! number of `param NAME = value` lines, and either a single `a = expr`
//! line (ansatz mode) or the ten upper-triangle `g i j = expr` lines
//! (explicit mode). `#` starts a comment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::expr::Expr;
use crate::number::{make_rational, Number};

/// Error raised by [`parse_expression`] or [`parse_solution_file`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    /// A syntax error inside an expression, with the byte offset of the
    /// offending token in the original input.
    #[error("syntax error at byte {offset}: {message}")]
    Syntax {
        /// Byte offset of the unexpected token.
        offset: usize,
        /// Human-readable description.
        message: String,
    },
    /// A structural error in a `.metric` file, with its 1-based line.
    #[error("line {line}: {message}")]
    File {
        /// 1-based line number in the file.
        line: usize,
        /// Human-readable description.
        message: String,
    },
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// Parse a single expression.
///
/// ```
/// use lambdavac::parse::parse_expression;
/// use lambdavac::Binding;
///
/// let e = parse_expression("(2 + cos(x)) * (2 + sin(Lambda*t/6))").unwrap();
/// let b = Binding::new().set("x", 0.0).set("t", 0.0).set("Lambda", 1.0);
/// assert_eq!(e.eval(&b), Ok(6.0));
/// ```
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = ExprParser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.pos >= p.src.len() {
        return Err(ParseError::Syntax {
            offset: p.pos,
            message: "empty input".to_string(),
        });
    }
    let e = p.parse_sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(ParseError::Syntax {
            offset: p.pos,
            message: format!("unexpected trailing input starting with '{}'", p.peek_char()),
        });
    }
    Ok(e)
}

/// Serialize an expression to the canonical text form accepted by
/// [`parse_expression`]. Equivalent to the `Display` implementation.
pub fn serialize_expression(e: &Expr) -> String {
    e.to_string()
}

/// Parse a numeric constant (an expression that folds to a number, such
/// as `1/2`, `-3`, or `2.5e-1`).
pub fn parse_number(text: &str) -> Result<Number, ParseError> {
    let e = parse_expression(text)?;
    e.as_const().ok_or_else(|| ParseError::Syntax {
        offset: 0,
        message: format!("expected a numeric constant, found '{e}'"),
    })
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.peek().map(|b| b as char).unwrap_or(' ')
    }

    fn parse_sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = acc + rhs;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    acc = acc - rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.parse_unary()?;
                    acc = acc * rhs;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.parse_unary()?;
                    acc = acc / rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.parse_unary()?;
            return Ok(-inner);
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr, ParseError> {
        let base = self.parse_atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let exp_offset = self.pos;
        // Right-associative: the exponent is itself a power. A leading
        // minus is accepted for convenience (`x^-2`).
        let exp_expr = if self.peek() == Some(b'-') {
            self.pos += 1;
            -self.parse_power()?
        } else {
            self.parse_power()?
        };
        let exp = exp_expr.as_const().ok_or_else(|| ParseError::Syntax {
            offset: exp_offset,
            message: format!("exponent must be a numeric constant, found '{exp_expr}'"),
        })?;
        Ok(Expr::pow(base, exp))
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(ParseError::Syntax {
                offset: start,
                message: "unexpected end of input".to_string(),
            }),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(ParseError::Syntax {
                        offset: self.pos,
                        message: "expected ')'".to_string(),
                    })
                }
            }
            Some(c) if c.is_ascii_digit() => self.parse_numeric(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.parse_identifier();
                self.skip_ws();
                if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let arg = self.parse_sum()?;
                    self.skip_ws();
                    if self.peek() != Some(b')') {
                        return Err(ParseError::Syntax {
                            offset: self.pos,
                            message: "expected ')'".to_string(),
                        });
                    }
                    self.pos += 1;
                    match name.as_str() {
                        "sin" => Ok(Expr::sin(arg)),
                        "cos" => Ok(Expr::cos(arg)),
                        _ => Err(ParseError::Syntax {
                            offset: start,
                            message: format!("unknown function '{name}'"),
                        }),
                    }
                } else if name == "pi" {
                    Ok(Expr::float(std::f64::consts::PI))
                } else {
                    Ok(Expr::symbol(&name))
                }
            }
            Some(c) => Err(ParseError::Syntax {
                offset: start,
                message: format!("unexpected character '{}'", c as char),
            }),
        }
    }

    fn parse_identifier(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    /// Integers and decimals become exact rationals; scientific notation
    /// becomes a float. This matches the serializer, which prints floats
    /// in scientific notation so that float-ness survives a round trip.
    fn parse_numeric(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let mut fractional = 0usize;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            fractional = self.pos - frac_start;
            if fractional == 0 {
                return Err(ParseError::Syntax {
                    offset: self.pos,
                    message: "expected digits after decimal point".to_string(),
                });
            }
        }
        let mut scientific = false;
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            // Only a well-formed exponent suffix belongs to the number;
            // otherwise the 'e' starts an identifier (e.g. `2e` is an
            // error but `2*e1` is a product with symbol `e1`).
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            let digits_start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos > digits_start {
                scientific = true;
            } else {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        if scientific {
            let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                offset: start,
                message: format!("invalid number '{text}'"),
            })?;
            return Ok(Expr::float(v));
        }
        // Exact path: digits (with an optional decimal point) scale to an
        // integer numerator over a power of ten.
        let digits: String = text.chars().filter(|c| *c != '.').collect();
        match digits.parse::<i128>() {
            Ok(n) => {
                let den = 10i128.checked_pow(fractional as u32);
                match den {
                    Some(d) => Ok(Expr::num(make_rational(n, d))),
                    None => Ok(Expr::float(text.parse::<f64>().unwrap_or(f64::NAN))),
                }
            }
            Err(_) => {
                let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("invalid number '{text}'"),
                })?;
                Ok(Expr::float(v))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Solution files
// ---------------------------------------------------------------------------

/// How a `.metric` file defines its metric.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionMode {
    /// A single free function `a(t, x)`; the metric is assembled from the
    /// ansatz by the solution builder.
    Ansatz {
        /// The free function, possibly referencing declared parameters.
        a: Expr,
    },
    /// All ten independent components given directly.
    Explicit {
        /// Full symmetric 4×4 component array.
        components: [[Expr; 4]; 4],
    },
}

/// A parsed and validated `.metric` file.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSpec {
    /// Coordinate names, index 0 first. Defaults to `t x y z`.
    pub coords: [String; 4],
    /// Ansatz or explicit component definition.
    pub mode: SolutionMode,
    /// Declared parameters (`Lambda` and `m` are required in ansatz
    /// mode; extra parameters are substituted numerically at build time).
    pub params: BTreeMap<String, Number>,
    /// Non-fatal validation notes (for example, `m = 0`).
    pub warnings: Vec<String>,
}

impl SolutionSpec {
    /// The declared cosmological constant, if any.
    pub fn lambda(&self) -> Option<Number> {
        self.params.get("Lambda").copied()
    }

    /// The declared mass parameter, if any.
    pub fn m_param(&self) -> Option<Number> {
        self.params.get("m").copied()
    }

    /// True when the file used the ansatz form.
    pub fn is_ansatz(&self) -> bool {
        matches!(self.mode, SolutionMode::Ansatz { .. })
    }
}

impl fmt::Display for SolutionSpec {
    /// Canonical `.metric` serialization; re-parses to an equal spec.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "coords {} {} {} {}",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )?;
        for (name, value) in &self.params {
            writeln!(f, "param {name} = {value}")?;
        }
        match &self.mode {
            SolutionMode::Ansatz { a } => writeln!(f, "a = {a}")?,
            SolutionMode::Explicit { components } => {
                for i in 0..4 {
                    for j in i..4 {
                        writeln!(f, "g {i} {j} = {}", components[i][j])?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::File {
        line,
        message: message.into(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse a `.metric` solution file.
///
/// ```
/// use lambdavac::parse::parse_solution_file;
///
/// let spec = parse_solution_file(
///     "param Lambda = 1\nparam m = 1\na = (2 + cos(x)) * (2 + sin(Lambda*t/6))\n",
/// )
/// .unwrap();
/// assert!(spec.is_ansatz());
/// assert_eq!(spec.coords[0], "t");
/// ```
pub fn parse_solution_file(text: &str) -> Result<SolutionSpec, ParseError> {
    let mut coords: Option<[String; 4]> = None;
    let mut params: BTreeMap<String, Number> = BTreeMap::new();
    let mut ansatz: Option<Expr> = None;
    let mut components: BTreeMap<(usize, usize), Expr> = BTreeMap::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }

        let (head, rest) = match line.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (line, ""),
        };

        match head {
            "coords" => {
                if coords.is_some() {
                    return Err(err(line_no, "duplicate coords line"));
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.len() != 4 {
                    return Err(err(
                        line_no,
                        format!("coords requires exactly 4 names, found {}", names.len()),
                    ));
                }
                for n in &names {
                    if !is_identifier(n) {
                        return Err(err(line_no, format!("invalid coordinate name '{n}'")));
                    }
                }
                let set: BTreeSet<&str> = names.iter().copied().collect();
                if set.len() != 4 {
                    return Err(err(line_no, "coordinate names must be distinct"));
                }
                coords = Some([
                    names[0].to_string(),
                    names[1].to_string(),
                    names[2].to_string(),
                    names[3].to_string(),
                ]);
            }
            "param" => {
                let (name, value_text) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line_no, "param requires 'param NAME = value'"))?;
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(err(line_no, format!("invalid parameter name '{name}'")));
                }
                let value = parse_number(value_text.trim())
                    .map_err(|e| err(line_no, format!("in parameter value: {e}")))?;
                if params.insert(name.to_string(), value).is_some() {
                    return Err(err(line_no, format!("duplicate parameter '{name}'")));
                }
            }
            "a" => {
                let value_text = rest
                    .strip_prefix('=')
                    .ok_or_else(|| err(line_no, "expected 'a = expression'"))?;
                if ansatz.is_some() {
                    return Err(err(line_no, "duplicate 'a =' line"));
                }
                let e = parse_expression(value_text.trim())
                    .map_err(|e| err(line_no, format!("in expression: {e}")))?;
                ansatz = Some(e);
            }
            "g" => {
                let mut parts = rest.splitn(3, char::is_whitespace);
                let i: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(line_no, "expected 'g I J = expression'"))?;
                let j: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(line_no, "expected 'g I J = expression'"))?;
                let tail = parts.next().unwrap_or("").trim();
                let value_text = tail
                    .strip_prefix('=')
                    .ok_or_else(|| err(line_no, "expected 'g I J = expression'"))?;
                if i > 3 || j > 3 {
                    return Err(err(line_no, "component indices must be in 0..=3"));
                }
                if i > j {
                    return Err(err(
                        line_no,
                        "give only upper-triangle components (i <= j); symmetry is implied",
                    ));
                }
                let e = parse_expression(value_text.trim())
                    .map_err(|e| err(line_no, format!("in expression: {e}")))?;
                if components.insert((i, j), e).is_some() {
                    return Err(err(line_no, format!("duplicate component g {i} {j}")));
                }
            }
            other => {
                return Err(err(
                    line_no,
                    format!(
                        "unrecognized directive '{other}' (expected coords, param, a, or g)"
                    ),
                ));
            }
        }
    }

    let coords = coords.unwrap_or_else(|| {
        ["t".to_string(), "x".to_string(), "y".to_string(), "z".to_string()]
    });
    let mut warnings = Vec::new();

    let mode = match (ansatz, components.is_empty()) {
        (Some(_), false) => {
            return Err(err(0, "file defines both 'a' and explicit 'g' components"));
        }
        (None, true) => {
            return Err(err(0, "file defines neither 'a' nor explicit 'g' components"));
        }
        (Some(a), true) => {
            if !params.contains_key("Lambda") {
                return Err(err(0, "ansatz mode requires 'param Lambda = ...'"));
            }
            let m = params
                .get("m")
                .ok_or_else(|| err(0, "ansatz mode requires 'param m = ...'"))?;
            if m.is_negative() {
                return Err(err(0, format!("parameter m must be nonnegative, found {m}")));
            }
            if m.is_zero() {
                warnings.push(
                    "m = 0: the solution degenerates to the conformally flat subfamily"
                        .to_string(),
                );
            }
            let mut allowed: BTreeSet<String> = params.keys().cloned().collect();
            allowed.insert(coords[0].clone());
            allowed.insert(coords[1].clone());
            for sym in a.free_symbols() {
                if sym == coords[2] || sym == coords[3] {
                    return Err(err(
                        0,
                        format!(
                            "a may depend only on {} and {}, but references '{sym}'",
                            coords[0], coords[1]
                        ),
                    ));
                }
                if !allowed.contains(&sym) {
                    return Err(err(0, format!("unknown symbol '{sym}' in a")));
                }
            }
            SolutionMode::Ansatz { a }
        }
        (None, false) => {
            if components.len() != 10 {
                return Err(err(
                    0,
                    format!(
                        "explicit mode requires all 10 upper-triangle components, found {}",
                        components.len()
                    ),
                ));
            }
            let allowed: BTreeSet<String> = params
                .keys()
                .cloned()
                .chain(coords.iter().cloned())
                .collect();
            for ((i, j), e) in &components {
                for sym in e.free_symbols() {
                    if !allowed.contains(&sym) {
                        return Err(err(
                            0,
                            format!("unknown symbol '{sym}' in component g {i} {j}"),
                        ));
                    }
                }
            }
            let zero = Expr::int(0);
            let mut array: [[Expr; 4]; 4] = std::array::from_fn(|_| {
                std::array::from_fn(|_| zero.clone())
            });
            for ((i, j), e) in components {
                array[i][j] = e.clone();
                array[j][i] = e;
            }
            SolutionMode::Explicit { components: array }
        }
    };

    Ok(SolutionSpec {
        coords,
        mode,
        params,
        warnings,
    })
}
