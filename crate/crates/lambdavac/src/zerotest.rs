//! Probabilistic verification that an expression is identically zero.
//!
//! Symbolic cancellations in curvature components routinely outrun any
//! rule-based simplifier, so identities are settled numerically instead: an
//! expression is accepted as zero when it evaluates to (nearly) zero at
//! many independently sampled points. The tolerance scales with the
//! largest intermediate magnitude seen during evaluation, which keeps the
//! test honest for expressions whose terms individually reach `1e9` before
//! cancelling.
//!
//! Sampling is deterministic: a seeded [ChaCha](rand_chacha) stream drives
//! every draw, and variables are bound in sorted order, so a given seed
//! always examines the same points.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Binding, Expr};

/// Outcome of a [`ZeroTest`] run.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Every sampled point evaluated within tolerance of zero.
    Zero,
    /// At least one sampled point evaluated away from zero.
    NonZero {
        /// The variable assignment that produced the nonzero value.
        witness: Binding,
        /// The value of the expression at the witness point.
        value: f64,
    },
    /// Too few points could be evaluated (for example, every sample hit a
    /// domain error); no claim is made either way.
    Inconclusive,
}

impl Verdict {
    /// True when the verdict is [`Verdict::Zero`].
    pub fn is_zero(&self) -> bool {
        matches!(self, Verdict::Zero)
    }
}

/// Configurable sampler that tests whether an expression vanishes
/// identically on a box domain.
///
/// ```
/// use lambdavac::zerotest::ZeroTest;
/// use lambdavac::Expr;
/// use lambdavac::Number;
///
/// let x = Expr::symbol("x");
/// let identity = Expr::pow(Expr::sin(x.clone()), Number::int(2))
///     + Expr::pow(Expr::cos(x.clone()), Number::int(2))
///     - Expr::int(1);
/// assert!(ZeroTest::new().test(&identity).is_zero());
/// assert!(!ZeroTest::new().test(&x).is_zero());
/// ```
#[derive(Debug, Clone)]
pub struct ZeroTest {
    seed: u64,
    samples: usize,
    tolerance: f64,
    default_range: (f64, f64),
    ranges: BTreeMap<String, (f64, f64)>,
}

impl Default for ZeroTest {
    fn default() -> Self {
        Self::new()
    }
}

impl ZeroTest {
    /// A tester with the standard configuration: seed 42, 32 samples,
    /// tolerance `1e-9`, and every variable drawn from `[-2, 2]`.
    pub fn new() -> Self {
        ZeroTest {
            seed: 42,
            samples: 32,
            tolerance: 1e-9,
            default_range: (-2.0, 2.0),
            ranges: BTreeMap::new(),
        }
    }

    /// Use a different random seed.
    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Require this many successfully evaluated sample points.
    pub fn samples(mut self, samples: usize) -> Self {
        self.samples = samples.max(1);
        self
    }

    /// Accept values up to `tol * (1 + max_intermediate_magnitude)`.
    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    /// Draw every variable without an explicit override from `[lo, hi)`.
    pub fn default_range(mut self, lo: f64, hi: f64) -> Self {
        self.default_range = (lo, hi);
        self
    }

    /// Draw the named variable from `[lo, hi)` instead of the default
    /// range. Useful when an expression is only defined on part of the
    /// default box (a chart domain, say).
    pub fn range(mut self, var: &str, lo: f64, hi: f64) -> Self {
        self.ranges.insert(var.to_string(), (lo, hi));
        self
    }

    /// Test whether `e` is identically zero on the configured domain.
    ///
    /// Points where evaluation fails (unbound symbols cannot occur; domain
    /// errors such as a sampled pole can) are skipped and do not count
    /// toward the required sample count. If the attempt budget (ten times
    /// the sample count) is exhausted before enough points evaluate, the
    /// verdict is [`Verdict::Inconclusive`].
    pub fn test(&self, e: &Expr) -> Verdict {
        let vars: Vec<String> = e.free_symbols().into_iter().collect();
        if vars.is_empty() {
            return match e.eval_tracked(&Binding::new()) {
                Ok((v, mag)) => {
                    if v.abs() <= self.tolerance * (1.0 + mag.abs()) {
                        Verdict::Zero
                    } else {
                        Verdict::NonZero {
                            witness: Binding::new(),
                            value: v,
                        }
                    }
                }
                Err(_) => Verdict::Inconclusive,
            };
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut successes = 0usize;
        let attempts_cap = self.samples.saturating_mul(10);
        for _ in 0..attempts_cap {
            let mut binding = Binding::new();
            for var in &vars {
                let (lo, hi) = self
                    .ranges
                    .get(var)
                    .copied()
                    .unwrap_or(self.default_range);
                let v = if lo < hi { rng.gen_range(lo..hi) } else { lo };
                binding = binding.set(var, v);
            }
            match e.eval_tracked(&binding) {
                Ok((v, mag)) => {
                    if v.abs() > self.tolerance * (1.0 + mag.abs()) {
                        return Verdict::NonZero { witness: binding, value: v };
                    }
                    successes += 1;
                    if successes >= self.samples {
                        return Verdict::Zero;
                    }
                }
                Err(_) => continue,
            }
        }
        Verdict::Inconclusive
    }

    /// Test whether two expressions agree everywhere on the domain.
    pub fn test_equal(&self, a: &Expr, b: &Expr) -> Verdict {
        self.test(&(a - b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::Number;

    #[test]
    fn detects_structural_zero() {
        let x = Expr::symbol("x");
        let e = &x - &x;
        assert_eq!(ZeroTest::new().test(&e), Verdict::Zero);
    }

    #[test]
    fn detects_hidden_identity() {
        // sin²(x) + cos²(x) - 1, left unsimplified
        let x = Expr::symbol("x");
        let e = Expr::pow(Expr::sin(x.clone()), Number::int(2))
            + Expr::pow(Expr::cos(x), Number::int(2))
            - Expr::int(1);
        assert_eq!(ZeroTest::new().test(&e), Verdict::Zero);
    }

    #[test]
    fn rejects_nonzero_with_witness() {
        let x = Expr::symbol("x");
        let e = &x * &x + Expr::int(1); // always >= 1
        match ZeroTest::new().test(&e) {
            Verdict::NonZero { witness, value } => {
                assert!(value >= 1.0);
                assert!(witness.get("x").is_some());
            }
            other => panic!("expected NonZero, got {other:?}"),
        }
    }

    #[test]
    fn same_seed_same_witness() {
        let x = Expr::symbol("x");
        let e = &x + Expr::int(10); // nonzero on [-2, 2]
        let w1 = ZeroTest::new().seed(7).test(&e);
        let w2 = ZeroTest::new().seed(7).test(&e);
        assert_eq!(w1, w2);
    }

    #[test]
    fn domain_errors_are_skipped() {
        // x^(1/2) - x^(1/2): defined only for x >= 0; still verifiable on
        // a positive range.
        let x = Expr::symbol("x");
        let r = Expr::pow(x.clone(), Number::rational(1, 2));
        let e = &r - &r;
        let verdict = ZeroTest::new().range("x", 0.5, 2.0).test(&e);
        assert_eq!(verdict, Verdict::Zero);
    }

    #[test]
    fn all_domain_errors_is_inconclusive() {
        // sqrt(x) on a strictly negative range never evaluates.
        let x = Expr::symbol("x");
        let e = Expr::pow(x, Number::rational(1, 2));
        let verdict = ZeroTest::new().range("x", -2.0, -0.5).test(&e);
        assert_eq!(verdict, Verdict::Inconclusive);
    }

    #[test]
    fn tolerance_scales_with_intermediate_magnitude() {
        // (x + 1e12) - 1e12 - x is exactly zero but intermediates reach
        // 1e12, where f64 spacing alone exceeds a naive 1e-9 cutoff.
        let x = Expr::symbol("x");
        let big = Expr::float(1e12);
        let e = (&x + &big) - &big - &x;
        assert_eq!(ZeroTest::new().test(&e), Verdict::Zero);
    }

    #[test]
    fn constant_expressions() {
        assert_eq!(ZeroTest::new().test(&Expr::int(0)), Verdict::Zero);
        assert!(matches!(
            ZeroTest::new().test(&Expr::int(3)),
            Verdict::NonZero { .. }
        ));
    }
}
