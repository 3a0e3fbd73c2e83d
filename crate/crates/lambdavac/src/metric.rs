//! Symbolic 4×4 Lorentzian metrics and induced lower-dimensional slices.

use std::collections::BTreeMap;

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Binding, EvalError, Expr};
use crate::number::Number;
use crate::simplify::simplify;
use crate::zerotest::{Verdict, ZeroTest};

/// Error raised while building or analyzing a metric.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    /// The supplied component array was not symmetric.
    #[error("metric components are not symmetric at ({i},{j})")]
    Asymmetric {
        /// Row of the offending pair.
        i: usize,
        /// Column of the offending pair.
        j: usize,
    },
    /// The symbolic determinant is the zero expression.
    #[error("metric determinant is identically zero")]
    Singular,
    /// A sampled nondegenerate point had eigenvalue signs other than
    /// `(+,-,-,-)`.
    #[error("metric signature is not (+,-,-,-) at {binding:?}; eigenvalues {eigenvalues:?}")]
    Signature {
        /// The sample point.
        binding: Binding,
        /// Eigenvalues of the evaluated component matrix.
        eigenvalues: [f64; 4],
    },
}

/// Summary of a sampled signature check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureReport {
    /// Points where the signature was verified.
    pub checked: usize,
    /// Points skipped because the metric was numerically degenerate
    /// (`|det g| < 1e-8`) or hit a domain error.
    pub skipped_degenerate: usize,
}

/// A symmetric 4×4 metric with named coordinates.
///
/// ```
/// use lambdavac::metric::MetricTensor;
///
/// let g = MetricTensor::minkowski();
/// assert_eq!(g.coords()[0], "t");
/// let inv = g.inverse().unwrap();
/// assert_eq!(inv[0][0], g.component(0, 0).clone());
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    coords: [String; 4],
    components: [[Expr; 4]; 4],
    params: BTreeMap<String, Number>,
}

impl MetricTensor {
    /// Build from a full component array, verifying structural symmetry.
    pub fn from_components(
        coords: [String; 4],
        components: [[Expr; 4]; 4],
    ) -> Result<Self, MetricError> {
        for i in 0..4 {
            for j in (i + 1)..4 {
                if components[i][j] != components[j][i] {
                    return Err(MetricError::Asymmetric { i, j });
                }
            }
        }
        Ok(MetricTensor {
            coords,
            components,
            params: BTreeMap::new(),
        })
    }

    /// Build from the upper triangle (entries with `i <= j`); the lower
    /// triangle of the input array is ignored and filled by symmetry.
    pub fn from_upper(coords: [String; 4], upper: [[Expr; 4]; 4]) -> Self {
        let mut components: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        for i in 0..4 {
            for j in i..4 {
                components[i][j] = upper[i][j].clone();
                components[j][i] = upper[i][j].clone();
            }
        }
        MetricTensor {
            coords,
            components,
            params: BTreeMap::new(),
        }
    }

    /// The flat metric `diag(1, -1, -1, -1)` in coordinates `t x y z`.
    pub fn minkowski() -> Self {
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        upper[0][0] = Expr::int(1);
        for i in 1..4 {
            upper[i][i] = Expr::int(-1);
        }
        MetricTensor::from_upper(
            ["t".into(), "x".into(), "y".into(), "z".into()],
            upper,
        )
    }

    /// Attach parameter values (reported alongside grids and bundles).
    pub fn with_params(mut self, params: BTreeMap<String, Number>) -> Self {
        self.params = params;
        self
    }

    /// Coordinate names, index 0 first.
    pub fn coords(&self) -> &[String; 4] {
        &self.coords
    }

    /// Component `g_{ij}`.
    pub fn component(&self, i: usize, j: usize) -> &Expr {
        &self.components[i][j]
    }

    /// The full symmetric component array.
    pub fn components(&self) -> &[[Expr; 4]; 4] {
        &self.components
    }

    /// Parameter values attached to this metric.
    pub fn params(&self) -> &BTreeMap<String, Number> {
        &self.params
    }

    /// Symbolic determinant (cofactor expansion, simplified).
    pub fn determinant(&self) -> Expr {
        simplify(&det4(&self.components))
    }

    /// Symbolic inverse via the adjugate.
    ///
    /// Fails with [`MetricError::Singular`] when the determinant passes
    /// the probabilistic zero test.
    pub fn inverse(&self) -> Result<[[Expr; 4]; 4], MetricError> {
        let det = self.determinant();
        if ZeroTest::new().test(&det) == Verdict::Zero {
            return Err(MetricError::Singular);
        }
        let det_inv = Expr::pow(det, Number::int(-1));
        let mut inv: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        for i in 0..4 {
            for j in i..4 {
                let cof = cofactor(&self.components, i, j);
                let entry = simplify(&(cof * det_inv.clone()));
                inv[i][j] = entry.clone();
                inv[j][i] = entry;
            }
        }
        Ok(inv)
    }

    /// Evaluate the component matrix at a point.
    pub fn eval_matrix(&self, binding: &Binding) -> Result<Matrix4<f64>, EvalError> {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = self.components[i][j].eval(binding)?;
            }
        }
        Ok(m)
    }

    /// Verify the `(+,-,-,-)` signature at seeded random points.
    ///
    /// Points are drawn from `[-2, 2]` per coordinate. Numerically
    /// degenerate points (`|det g| < 1e-8`) and domain errors are skipped
    /// and counted; a point with any other eigenvalue sign pattern fails.
    pub fn check_signature(
        &self,
        seed: u64,
        samples: usize,
    ) -> Result<SignatureReport, MetricError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0usize;
        let mut skipped = 0usize;
        let attempts = samples.saturating_mul(20);
        for _ in 0..attempts {
            if checked >= samples {
                break;
            }
            let mut binding = Binding::new();
            for c in &self.coords {
                binding = binding.set(c, rng.gen_range(-2.0..2.0));
            }
            let m = match self.eval_matrix(&binding) {
                Ok(m) => m,
                Err(_) => {
                    skipped += 1;
                    continue;
                }
            };
            let det = m.determinant();
            if !det.is_finite() || det.abs() < 1e-8 {
                skipped += 1;
                continue;
            }
            let eigen = nalgebra::SymmetricEigen::new(m);
            let mut eigenvalues = [0.0f64; 4];
            for (k, v) in eigen.eigenvalues.iter().enumerate() {
                eigenvalues[k] = *v;
            }
            let pos = eigenvalues.iter().filter(|v| **v > 0.0).count();
            let neg = eigenvalues.iter().filter(|v| **v < 0.0).count();
            if pos != 1 || neg != 3 {
                return Err(MetricError::Signature {
                    binding,
                    eigenvalues,
                });
            }
            checked += 1;
        }
        Ok(SignatureReport {
            checked,
            skipped_degenerate: skipped,
        })
    }
}

fn det2(m: [[&Expr; 2]; 2]) -> Expr {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn det3(m: [[&Expr; 3]; 3]) -> Expr {
    let mut terms = Vec::new();
    for c in 0..3 {
        let minor: [[&Expr; 2]; 2] = std::array::from_fn(|i| {
            let mut cols = (0..3).filter(|k| *k != c);
            let c0 = cols.next().unwrap();
            let c1 = cols.next().unwrap();
            [m[i + 1][c0], m[i + 1][c1]]
        });
        let sign = if c % 2 == 0 { 1 } else { -1 };
        terms.push(Expr::int(sign) * m[0][c] * det2(minor));
    }
    Expr::sum(terms)
}

fn det4(m: &[[Expr; 4]; 4]) -> Expr {
    let mut terms = Vec::new();
    for c in 0..4 {
        let minor: [[&Expr; 3]; 3] = std::array::from_fn(|i| {
            let mut cols = (0..4).filter(|k| *k != c);
            let c0 = cols.next().unwrap();
            let c1 = cols.next().unwrap();
            let c2 = cols.next().unwrap();
            [&m[i + 1][c0], &m[i + 1][c1], &m[i + 1][c2]]
        });
        let sign = if c % 2 == 0 { 1 } else { -1 };
        terms.push(Expr::int(sign) * &m[0][c] * det3(minor));
    }
    Expr::sum(terms)
}

/// Signed cofactor `C_{ij}` (equal to `C_{ji}` for symmetric input).
fn cofactor(m: &[[Expr; 4]; 4], i: usize, j: usize) -> Expr {
    let rows: Vec<usize> = (0..4).filter(|r| *r != i).collect();
    let cols: Vec<usize> = (0..4).filter(|c| *c != j).collect();
    let minor: [[&Expr; 3]; 3] =
        std::array::from_fn(|r| std::array::from_fn(|c| &m[rows[r]][cols[c]]));
    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
    Expr::int(sign) * det3(minor)
}

/// A lower-dimensional metric induced on a slice of constant
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceMetric {
    coords: Vec<String>,
    components: Vec<Vec<Expr>>,
}

impl SliceMetric {
    /// Remaining (non-fixed) coordinate names.
    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    /// Slice dimension.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Component `g_{ij}` in the reduced index order.
    pub fn component(&self, i: usize, j: usize) -> &Expr {
        &self.components[i][j]
    }

    /// A human-readable line element, e.g. `ds^2 = (-1*(2 + cos(x))^2)*dy^2 + ...`.
    pub fn line_element(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let g = &self.components[i][j];
                if g.is_zero() {
                    continue;
                }
                let factor = if i == j { 1 } else { 2 };
                let diff_part = if i == j {
                    format!("d{}^2", self.coords[i])
                } else {
                    format!("d{} d{}", self.coords[i], self.coords[j])
                };
                let coeff = if factor == 1 {
                    format!("({g})")
                } else {
                    format!("(2*({g}))")
                };
                parts.push(format!("{coeff}*{diff_part}"));
            }
        }
        if parts.is_empty() {
            "ds^2 = 0".to_string()
        } else {
            format!("ds^2 = {}", parts.join(" + "))
        }
    }
}

/// Induce the metric on a slice of constant coordinates.
///
/// Each `(name, value)` pair fixes one coordinate: the value is
/// substituted into the remaining components and the fixed row/column is
/// deleted. Fixing all four coordinates (or an unknown name) is an error,
/// reported as [`MetricError::Singular`]—the induced object would not be
/// a metric.
pub fn induced_slice(
    metric: &MetricTensor,
    fixed: &[(String, Expr)],
) -> Result<SliceMetric, MetricError> {
    let fixed_names: Vec<&String> = fixed.iter().map(|(n, _)| n).collect();
    for name in &fixed_names {
        if !metric.coords.contains(name) {
            return Err(MetricError::Singular);
        }
    }
    let keep: Vec<usize> = (0..4)
        .filter(|i| !fixed_names.contains(&&metric.coords[*i]))
        .collect();
    if keep.is_empty() || keep.len() == 4 {
        return Err(MetricError::Singular);
    }
    let substitutions: Vec<(&str, Expr)> = fixed
        .iter()
        .map(|(n, v)| (n.as_str(), v.clone()))
        .collect();
    let coords: Vec<String> = keep.iter().map(|i| metric.coords[*i].clone()).collect();
    let components: Vec<Vec<Expr>> = keep
        .iter()
        .map(|i| {
            keep.iter()
                .map(|j| {
                    simplify(
                        &metric.components[*i][*j].substitute_many(&substitutions),
                    )
                })
                .collect()
        })
        .collect();
    Ok(SliceMetric { coords, components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Expr {
        Expr::symbol(s)
    }

    #[test]
    fn minkowski_is_self_inverse() {
        let g = MetricTensor::minkowski();
        let inv = g.inverse().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(inv[i][j], *g.component(i, j));
            }
        }
        assert_eq!(g.determinant(), Expr::int(-1));
    }

    #[test]
    fn asymmetric_components_rejected() {
        let mut comps: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        comps[0][1] = Expr::int(1);
        let coords = ["t".into(), "x".into(), "y".into(), "z".into()];
        assert_eq!(
            MetricTensor::from_components(coords, comps),
            Err(MetricError::Asymmetric { i: 0, j: 1 })
        );
    }

    #[test]
    fn ansatz_block_inverse() {
        // g = [[b, p, 0, 0], [p, 0, 0, 0], [0, 0, -a^2, 0], [0, 0, 0, -a^2]]
        // with atomic symbols: inverse block [[0, 1/p], [1/p, -b/p^2]].
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        upper[0][0] = sym("b");
        upper[0][1] = sym("p");
        upper[2][2] = -(sym("a") * sym("a"));
        upper[3][3] = -(sym("a") * sym("a"));
        let g = MetricTensor::from_upper(
            ["t".into(), "x".into(), "y".into(), "z".into()],
            upper,
        );
        let inv = g.inverse().unwrap();
        assert_eq!(inv[0][0], Expr::int(0));
        assert_eq!(inv[0][1], Expr::pow(sym("p"), Number::int(-1)));
        let want_11 = -sym("b") * Expr::pow(sym("p"), Number::int(-2));
        assert_eq!(inv[1][1], simplify(&want_11));
        let want_22 = -Expr::pow(sym("a"), Number::int(-2));
        assert_eq!(inv[2][2], simplify(&want_22));
        // delta contraction spot check
        let mut acc = Expr::int(0);
        for r in 0..4 {
            acc = acc + inv[0][r].clone() * g.component(r, 0).clone();
        }
        assert!(ZeroTest::new().test(&(acc - Expr::int(1))).is_zero());
    }

    #[test]
    fn singular_metric_detected() {
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        upper[0][0] = Expr::int(1);
        upper[1][1] = Expr::int(-1);
        upper[2][2] = Expr::int(-1);
        // g_33 = 0: degenerate
        let g = MetricTensor::from_upper(
            ["t".into(), "x".into(), "y".into(), "z".into()],
            upper,
        );
        assert_eq!(g.inverse(), Err(MetricError::Singular));
    }

    #[test]
    fn signature_check_accepts_lorentzian() {
        let g = MetricTensor::minkowski();
        let report = g.check_signature(42, 16).unwrap();
        assert_eq!(report.checked, 16);
        assert_eq!(report.skipped_degenerate, 0);
    }

    #[test]
    fn signature_check_rejects_euclidean() {
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        for i in 0..4 {
            upper[i][i] = Expr::int(1);
        }
        let g = MetricTensor::from_upper(
            ["t".into(), "x".into(), "y".into(), "z".into()],
            upper,
        );
        assert!(matches!(
            g.check_signature(42, 4),
            Err(MetricError::Signature { .. })
        ));
    }

    #[test]
    fn slice_drops_fixed_coordinates() {
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        upper[0][0] = sym("b");
        upper[0][1] = sym("p");
        let a2 = Expr::pow(Expr::int(2) + Expr::cos(sym("x")), Number::int(2));
        upper[2][2] = -a2.clone();
        upper[3][3] = -a2;
        let g = MetricTensor::from_upper(
            ["t".into(), "x".into(), "y".into(), "z".into()],
            upper,
        );
        let slice = induced_slice(&g, &[("t".to_string(), Expr::int(0))]).unwrap();
        assert_eq!(slice.dim(), 3);
        assert_eq!(slice.coords(), ["x", "y", "z"]);
        // fixing everything is an error
        let all: Vec<(String, Expr)> = ["t", "x", "y", "z"]
            .iter()
            .map(|c| (c.to_string(), Expr::int(0)))
            .collect();
        assert!(induced_slice(&g, &all).is_err());
    }

    #[test]
    fn line_element_rendering() {
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        upper[0][0] = Expr::int(1);
        upper[1][1] = Expr::int(-1);
        upper[2][2] = Expr::int(-1);
        upper[3][3] = Expr::int(-1);
        let g = MetricTensor::from_upper(
            ["t".into(), "x".into(), "y".into(), "z".into()],
            upper,
        );
        let slice = induced_slice(&g, &[("t".to_string(), Expr::int(0))]).unwrap();
        assert_eq!(
            slice.line_element(),
            "ds^2 = (-1)*dx^2 + (-1)*dy^2 + (-1)*dz^2"
        );
    }
}
