//! Exact numeric constants.
//!
//! Every constant in an expression tree is a [`Number`]: an exact rational
//! held as a reduced `i64/i64` pair, or an `f64` once a value leaves the
//! exactly-representable range. Rational arithmetic runs through `i128`
//! intermediates and falls back to floating point instead of overflowing,
//! so coefficients like `Λ/3`, `1/6`, or `1/18` survive differentiation
//! and collection without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// An exact rational (`num/den`, reduced, `den > 0`) or a double.
#[derive(Clone, Copy, Debug)]
pub enum Number {
    /// Reduced fraction with positive denominator.
    Rational(i64, i64),
    /// Floating-point fallback for values outside exact range.
    Float(f64),
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.abs()
}

/// Reduce `num/den` to canonical form, falling back to `Float` when the
/// reduced parts do not fit in `i64`.
pub(crate) fn make_rational(num: i128, den: i128) -> Number {
    debug_assert!(den != 0, "rational with zero denominator");
    let sign = if (num < 0) != (den < 0) { -1 } else { 1 };
    let (num, den) = (num.abs(), den.abs());
    let g = gcd(num, den);
    let (num, den) = if g == 0 { (0, 1) } else { (num / g, den / g) };
    let num = sign as i128 * num;
    match (i64::try_from(num), i64::try_from(den)) {
        (Ok(n), Ok(d)) => Number::Rational(n, d),
        _ => Number::Float(num as f64 / den as f64),
    }
}

impl Number {
    /// The integer `n` as an exact constant.
    pub fn int(n: i64) -> Self {
        Number::Rational(n, 1)
    }

    /// The exact fraction `num/den`. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        make_rational(num as i128, den as i128)
    }

    /// A floating-point constant.
    pub fn float(v: f64) -> Self {
        Number::Float(v)
    }

    /// Numeric value as `f64`.
    pub fn as_f64(&self) -> f64 {
        match *self {
            Number::Rational(n, d) => n as f64 / d as f64,
            Number::Float(v) => v,
        }
    }

    /// The value as an exact `i64`, when it is an integer rational.
    pub fn as_integer(&self) -> Option<i64> {
        match *self {
            Number::Rational(n, 1) => Some(n),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self, Number::Rational(0, _)) || matches!(*self, Number::Float(v) if v == 0.0)
    }

    pub fn is_one(&self) -> bool {
        matches!(*self, Number::Rational(1, 1)) || matches!(*self, Number::Float(v) if v == 1.0)
    }

    pub fn is_negative(&self) -> bool {
        match *self {
            Number::Rational(n, _) => n < 0,
            Number::Float(v) => v < 0.0,
        }
    }

    pub fn add(&self, other: &Number) -> Number {
        match (*self, *other) {
            (Number::Rational(a, b), Number::Rational(c, d)) => {
                let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
                make_rational(a * d + c * b, b * d)
            }
            _ => Number::Float(self.as_f64() + other.as_f64()),
        }
    }

    pub fn mul(&self, other: &Number) -> Number {
        match (*self, *other) {
            (Number::Rational(a, b), Number::Rational(c, d)) => {
                make_rational(a as i128 * c as i128, b as i128 * d as i128)
            }
            _ => Number::Float(self.as_f64() * other.as_f64()),
        }
    }

    pub fn neg(&self) -> Number {
        match *self {
            Number::Rational(n, d) => make_rational(-(n as i128), d as i128),
            Number::Float(v) => Number::Float(-v),
        }
    }

    /// Reciprocal. `None` for exact zero.
    pub fn recip(&self) -> Option<Number> {
        match *self {
            Number::Rational(0, _) => None,
            Number::Rational(n, d) => Some(make_rational(d as i128, n as i128)),
            Number::Float(v) if v == 0.0 => None,
            Number::Float(v) => Some(Number::Float(1.0 / v)),
        }
    }

    /// Integer power, exact for rationals. `None` for `0^negative`.
    pub fn powi(&self, e: i64) -> Option<Number> {
        if e == 0 {
            return Some(Number::int(1));
        }
        if self.is_zero() && e < 0 {
            return None;
        }
        match *self {
            Number::Rational(n, d) => {
                let (base_n, base_d) = if e < 0 {
                    (d as i128, n as i128)
                } else {
                    (n as i128, d as i128)
                };
                let mut num: i128 = 1;
                let mut den: i128 = 1;
                for _ in 0..e.unsigned_abs() {
                    match (num.checked_mul(base_n), den.checked_mul(base_d)) {
                        (Some(a), Some(b)) => {
                            num = a;
                            den = b;
                        }
                        _ => {
                            let clamped = e.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
                            return Some(Number::Float(self.as_f64().powi(clamped)));
                        }
                    }
                }
                Some(make_rational(num, den))
            }
            Number::Float(v) => Some(Number::Float(v.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32))),
        }
    }

    /// Raise to a `Number` power, exact when the exponent is an integer.
    /// `None` when the result is not a real number (`0^neg`, `neg^fraction`).
    pub fn pow(&self, e: &Number) -> Option<Number> {
        if let Some(k) = e.as_integer() {
            return self.powi(k);
        }
        let b = self.as_f64();
        let p = b.powf(e.as_f64());
        if p.is_finite() {
            Some(Number::Float(p))
        } else {
            None
        }
    }
}

impl PartialEq for Number {
    fn eq(&self, other: &Self) -> bool {
        match (*self, *other) {
            (Number::Rational(a, b), Number::Rational(c, d)) => a == c && b == d,
            (Number::Float(a), Number::Float(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl Eq for Number {}

impl Hash for Number {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match *self {
            Number::Rational(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Number::Float(v) => {
                1u8.hash(state);
                v.to_bits().hash(state);
            }
        }
    }
}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Number {
    /// Total order: by numeric value, with rationals before floats on
    /// exact ties so sorting stays deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Number::Rational(a, b), Number::Rational(c, d)) => {
                (a as i128 * d as i128).cmp(&(c as i128 * b as i128))
            }
            _ => self
                .as_f64()
                .total_cmp(&other.as_f64())
                .then_with(|| match (self, other) {
                    (Number::Rational(..), Number::Float(_)) => Ordering::Less,
                    (Number::Float(_), Number::Rational(..)) => Ordering::Greater,
                    _ => Ordering::Equal,
                }),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Number::Rational(n, 1) => write!(f, "{n}"),
            Number::Rational(n, d) => write!(f, "{n}/{d}"),
            // Scientific notation marks the constant as floating point so
            // parsing a printed expression recovers the same constant kind.
            Number::Float(v) => write!(f, "{v:e}"),
        }
    }
}
