//! Curvature objects of a symbolic metric: Christoffel symbols, Riemann,
//! Ricci, scalar curvature, Kretschmann invariant, and the Weyl tensor.
//!
//! Conventions (fixed once, reported by the CLI): with `∂_μ = ∂/∂x^μ`,
//!
//! ```text
//! Γ^ρ_{μν} = ½ g^{ρσ} (∂_μ g_{σν} + ∂_ν g_{σμ} − ∂_σ g_{μν})
//! R^ρ_{σμν} = ∂_μ Γ^ρ_{νσ} − ∂_ν Γ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ}
//! R_{μν} = R^ρ_{μρν},   R = g^{μν} R_{μν},   R_{αβμν} = g_{αρ} R^ρ_{βμν}
//! ```
//!
//! The Kretschmann invariant is built by raising all four Riemann indices
//! one at a time (simplifying after each stage to control expression
//! swell) and contracting against the covariant tensor. The Weyl tensor
//! uses the standard four-dimensional decomposition
//!
//! ```text
//! C_{αβμν} = R_{αβμν} + ½(R_{αν}g_{βμ} − R_{αμ}g_{βν} + R_{βμ}g_{αν} − R_{βν}g_{αμ})
//!            + (R/6)(g_{αμ}g_{βν} − g_{αν}g_{βμ})
//! ```
//!
//! All tensor computations accept supplemental [`SymbolDerivatives`]
//! rules, which the solution builder uses to differentiate through
//! symbols that stand for a free function and its partials.

use rayon::prelude::*;

use crate::expr::{Expr, SymbolDerivatives};
use crate::metric::{MetricError, MetricTensor};
use crate::simplify::simplify;

/// A rank-4 component array indexed `[α][β][μ][ν]`.
pub type Tensor4 = [[[[Expr; 4]; 4]; 4]; 4];

/// A rank-2 component array.
pub type Tensor2 = [[Expr; 4]; 4];

/// Every curvature object of one metric.
#[derive(Debug, Clone)]
pub struct CurvatureBundle {
    /// Inverse metric `g^{μν}`.
    pub inverse: Tensor2,
    /// Christoffel symbols `Γ^ρ_{μν}`, indexed `[ρ][μ][ν]`.
    pub christoffel: [[[Expr; 4]; 4]; 4],
    /// Fully covariant Riemann tensor `R_{αβμν}`.
    pub riemann: Tensor4,
    /// Ricci tensor `R_{μν}`.
    pub ricci: Tensor2,
    /// Scalar curvature `R`.
    pub scalar: Expr,
    /// Kretschmann invariant `K = R^{αβμν} R_{αβμν}`.
    pub kretschmann: Expr,
    /// Weyl conformal tensor `C_{αβμν}`.
    pub weyl: Tensor4,
}

fn zero2() -> Tensor2 {
    std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)))
}

fn zero4() -> Tensor4 {
    std::array::from_fn(|_| std::array::from_fn(|_| zero2()))
}

fn par_tensor4<F>(f: F) -> Tensor4
where
    F: Fn(usize, usize, usize, usize) -> Expr + Sync,
{
    let flat: Vec<Expr> = (0..256usize)
        .into_par_iter()
        .map(|idx| {
            let a = idx >> 6;
            let b = (idx >> 4) & 3;
            let m = (idx >> 2) & 3;
            let n = idx & 3;
            f(a, b, m, n)
        })
        .collect();
    let mut it = flat.into_iter();
    std::array::from_fn(|_| {
        std::array::from_fn(|_| {
            std::array::from_fn(|_| std::array::from_fn(|_| it.next().expect("256 entries")))
        })
    })
}

/// Everything up to the Ricci scalar; the cheap part of the bundle.
struct Stages {
    inverse: Tensor2,
    christoffel: [[[Expr; 4]; 4]; 4],
    riemann: Tensor4,
    ricci: Tensor2,
    scalar: Expr,
}

fn compute_stages(
    metric: &MetricTensor,
    rules: &(dyn SymbolDerivatives + Sync),
) -> Result<Stages, MetricError> {
    let coords = metric.coords();
    let g = metric.components();
    let inverse = metric.inverse()?;

    // ∂_σ g_{μν}
    let mut dg: [[[Expr; 4]; 4]; 4] = std::array::from_fn(|_| zero2());
    for (s, coord) in coords.iter().enumerate() {
        for m in 0..4 {
            for n in m..4 {
                let d = simplify(&g[m][n].diff_with(coord, rules));
                dg[s][m][n] = d.clone();
                dg[s][n][m] = d;
            }
        }
    }

    // Γ^ρ_{μν}, symmetric in (μ, ν)
    let mut christoffel: [[[Expr; 4]; 4]; 4] = std::array::from_fn(|_| zero2());
    let gamma_entries: Vec<((usize, usize, usize), Expr)> = {
        let mut indices = Vec::new();
        for r in 0..4 {
            for m in 0..4 {
                for n in m..4 {
                    indices.push((r, m, n));
                }
            }
        }
        indices
            .into_par_iter()
            .map(|(r, m, n)| {
                let mut terms = Vec::new();
                for s in 0..4 {
                    let bracket = dg[m][s][n].clone() + dg[n][s][m].clone()
                        - dg[s][m][n].clone();
                    terms.push(inverse[r][s].clone() * bracket);
                }
                let val = simplify(&(Expr::rational(1, 2) * Expr::sum(terms)));
                ((r, m, n), val)
            })
            .collect()
    };
    for ((r, m, n), val) in gamma_entries {
        christoffel[r][m][n] = val.clone();
        christoffel[r][n][m] = val;
    }

    // R^ρ_{σμν}, antisymmetric in (μ, ν): compute μ < ν, mirror the rest.
    let up_entries: Vec<((usize, usize, usize, usize), Expr)> = {
        let mut indices = Vec::new();
        for r in 0..4 {
            for s in 0..4 {
                for m in 0..4 {
                    for n in (m + 1)..4 {
                        indices.push((r, s, m, n));
                    }
                }
            }
        }
        indices
            .into_par_iter()
            .map(|(r, s, m, n)| {
                let d1 = christoffel[r][n][s].diff_with(&coords[m], rules);
                let d2 = christoffel[r][m][s].diff_with(&coords[n], rules);
                let mut terms = vec![d1, -d2];
                for l in 0..4 {
                    terms.push(christoffel[r][m][l].clone() * christoffel[l][n][s].clone());
                    terms.push(
                        Expr::int(-1)
                            * christoffel[r][n][l].clone()
                            * christoffel[l][m][s].clone(),
                    );
                }
                ((r, s, m, n), simplify(&Expr::sum(terms)))
            })
            .collect()
    };
    let mut riemann_up: Tensor4 = zero4();
    for ((r, s, m, n), val) in up_entries {
        riemann_up[r][s][m][n] = val.clone();
        riemann_up[r][s][n][m] = simplify(&-val);
    }

    // R_{αβμν} = g_{αρ} R^ρ_{βμν}
    let riemann = par_tensor4(|a, b, m, n| {
        let mut terms = Vec::new();
        for r in 0..4 {
            terms.push(g[a][r].clone() * riemann_up[r][b][m][n].clone());
        }
        simplify(&Expr::sum(terms))
    });

    // R_{μν} = R^ρ_{μρν}
    let mut ricci = zero2();
    for m in 0..4 {
        for n in 0..4 {
            let mut terms = Vec::new();
            for r in 0..4 {
                terms.push(riemann_up[r][m][r][n].clone());
            }
            ricci[m][n] = simplify(&Expr::sum(terms));
        }
    }

    // R = g^{μν} R_{μν}
    let mut terms = Vec::new();
    for m in 0..4 {
        for n in 0..4 {
            terms.push(inverse[m][n].clone() * ricci[m][n].clone());
        }
    }
    let scalar = simplify(&Expr::sum(terms));

    Ok(Stages {
        inverse,
        christoffel,
        riemann,
        ricci,
        scalar,
    })
}

/// Raise one index of a rank-4 tensor at position `slot` (0..4).
fn raise_index(t: &Tensor4, inverse: &Tensor2, slot: usize) -> Tensor4 {
    par_tensor4(|a, b, m, n| {
        let idx = [a, b, m, n];
        let mut terms = Vec::new();
        for r in 0..4 {
            let mut src = idx;
            src[slot] = r;
            terms.push(inverse[idx[slot]][r].clone() * t[src[0]][src[1]][src[2]][src[3]].clone());
        }
        simplify(&Expr::sum(terms))
    })
}

/// Compute every curvature object of `metric`.
///
/// Fails with [`MetricError::Singular`] when the metric determinant is
/// identically zero.
pub fn compute_curvature(metric: &MetricTensor) -> Result<CurvatureBundle, MetricError> {
    compute_curvature_with(metric, &())
}

/// [`compute_curvature`] with supplemental differentiation rules.
pub fn compute_curvature_with(
    metric: &MetricTensor,
    rules: &(dyn SymbolDerivatives + Sync),
) -> Result<CurvatureBundle, MetricError> {
    let st = compute_stages(metric, rules)?;
    let g = metric.components();

    // Kretschmann: raise all four indices one at a time, then contract.
    let mut raised = st.riemann.clone();
    for slot in 0..4 {
        raised = raise_index(&raised, &st.inverse, slot);
    }
    let mut k_terms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let down = &st.riemann[a][b][m][n];
                    let up = &raised[a][b][m][n];
                    if down.is_zero() || up.is_zero() {
                        continue;
                    }
                    k_terms.push(simplify(&(up.clone() * down.clone())));
                }
            }
        }
    }
    let kretschmann = simplify(&Expr::sum(k_terms));

    // Weyl decomposition.
    let ricci = &st.ricci;
    let scalar = &st.scalar;
    let riemann = &st.riemann;
    let weyl = par_tensor4(|a, b, m, n| {
        let half = Expr::rational(1, 2);
        let sixth = Expr::rational(1, 6);
        let ricci_part = half
            * (ricci[a][n].clone() * g[b][m].clone() - ricci[a][m].clone() * g[b][n].clone()
                + ricci[b][m].clone() * g[a][n].clone()
                - ricci[b][n].clone() * g[a][m].clone());
        let scalar_part = sixth
            * scalar.clone()
            * (g[a][m].clone() * g[b][n].clone() - g[a][n].clone() * g[b][m].clone());
        simplify(&(riemann[a][b][m][n].clone() + ricci_part + scalar_part))
    });

    Ok(CurvatureBundle {
        inverse: st.inverse,
        christoffel: st.christoffel,
        riemann: st.riemann,
        ricci: st.ricci,
        scalar: st.scalar,
        kretschmann,
        weyl,
    })
}

/// The vacuum residual `R_{μν} − Λ g_{μν}`, simplified componentwise.
///
/// Only the objects up to the Ricci tensor are computed, so this is much
/// cheaper than a full [`compute_curvature`] when only verification is
/// needed.
pub fn einstein_residual(
    metric: &MetricTensor,
    lambda: &Expr,
) -> Result<Tensor2, MetricError> {
    einstein_residual_with(metric, lambda, &())
}

/// [`einstein_residual`] with supplemental differentiation rules.
pub fn einstein_residual_with(
    metric: &MetricTensor,
    lambda: &Expr,
    rules: &(dyn SymbolDerivatives + Sync),
) -> Result<Tensor2, MetricError> {
    let st = compute_stages(metric, rules)?;
    let g = metric.components();
    let mut residual = zero2();
    for m in 0..4 {
        for n in 0..4 {
            residual[m][n] =
                simplify(&(st.ricci[m][n].clone() - lambda.clone() * g[m][n].clone()));
        }
    }
    Ok(residual)
}

/// The Ricci tensor and scalar curvature only.
pub fn ricci_and_scalar(
    metric: &MetricTensor,
) -> Result<(Tensor2, Expr), MetricError> {
    let st = compute_stages(metric, &())?;
    Ok((st.ricci, st.scalar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zerotest::ZeroTest;

    fn coords() -> [String; 4] {
        ["t".into(), "x".into(), "y".into(), "z".into()]
    }

    fn sym(s: &str) -> Expr {
        Expr::symbol(s)
    }

    /// A curved but simple diagonal test metric.
    fn bumpy_metric() -> MetricTensor {
        let mut upper: [[Expr; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Expr::int(0)));
        upper[0][0] = Expr::int(1);
        upper[1][1] = -(Expr::int(2) + Expr::sin(sym("t")));
        upper[2][2] = -(Expr::int(3) + Expr::cos(sym("x")));
        upper[3][3] = -(Expr::int(2) + Expr::cos(sym("y")));
        MetricTensor::from_upper(coords(), upper)
    }

    /// The bumpy-metric bundle is shared across tests; computing it is
    /// the dominant cost here.
    fn bumpy_bundle() -> &'static CurvatureBundle {
        static BUNDLE: std::sync::OnceLock<CurvatureBundle> = std::sync::OnceLock::new();
        BUNDLE.get_or_init(|| compute_curvature(&bumpy_metric()).unwrap())
    }

    #[test]
    fn minkowski_is_flat() {
        let bundle = compute_curvature(&MetricTensor::minkowski()).unwrap();
        for r in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    assert!(bundle.christoffel[r][m][n].is_zero());
                    for a in 0..4 {
                        assert!(bundle.riemann[r][m][n][a].is_zero());
                        assert!(bundle.weyl[r][m][n][a].is_zero());
                    }
                }
            }
        }
        assert!(bundle.scalar.is_zero());
        assert!(bundle.kretschmann.is_zero());
    }

    #[test]
    fn riemann_symmetries_hold_for_generic_metric() {
        let bundle = bumpy_bundle();
        let zt = ZeroTest::new().samples(8);
        let r = &bundle.riemann;
        for a in 0..4 {
            for b in 0..4 {
                for m in 0..4 {
                    for n in 0..4 {
                        // antisymmetry in both pairs
                        let s1 = r[a][b][m][n].clone() + r[b][a][m][n].clone();
                        let s2 = r[a][b][m][n].clone() + r[a][b][n][m].clone();
                        // pair exchange
                        let s3 = r[a][b][m][n].clone() - r[m][n][a][b].clone();
                        // first Bianchi
                        let s4 = r[a][b][m][n].clone()
                            + r[a][m][n][b].clone()
                            + r[a][n][b][m].clone();
                        for s in [s1, s2, s3, s4] {
                            assert!(zt.test(&s).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ricci_is_symmetric_and_weyl_traceless() {
        let bundle = bumpy_bundle();
        let zt = ZeroTest::new().samples(8);
        for m in 0..4 {
            for n in 0..4 {
                let d = bundle.ricci[m][n].clone() - bundle.ricci[n][m].clone();
                assert!(zt.test(&d).is_zero());
            }
        }
        // g^{αμ} C_{αβμν} = 0
        for b in 0..4 {
            for n in 0..4 {
                let mut terms = Vec::new();
                for a in 0..4 {
                    for m in 0..4 {
                        terms.push(
                            bundle.inverse[a][m].clone() * bundle.weyl[a][b][m][n].clone(),
                        );
                    }
                }
                assert!(zt.test(&Expr::sum(terms)).is_zero());
            }
        }
    }

    #[test]
    fn inverse_contracts_to_identity() {
        let g = bumpy_metric();
        let bundle = bumpy_bundle();
        let zt = ZeroTest::new().samples(8);
        for m in 0..4 {
            for n in 0..4 {
                let mut acc = Vec::new();
                for r in 0..4 {
                    acc.push(bundle.inverse[m][r].clone() * g.component(r, n).clone());
                }
                let delta = if m == n { Expr::int(1) } else { Expr::int(0) };
                assert!(zt.test(&(Expr::sum(acc) - delta)).is_zero());
            }
        }
    }

    #[test]
    fn minkowski_einstein_residual() {
        let g = MetricTensor::minkowski();
        let zero = einstein_residual(&g, &Expr::int(0)).unwrap();
        for m in 0..4 {
            for n in 0..4 {
                assert!(zero[m][n].is_zero());
            }
        }
        let with_lambda = einstein_residual(&g, &Expr::int(1)).unwrap();
        assert_eq!(with_lambda[0][0], Expr::int(-1));
    }

    #[test]
    fn scalar_and_kretschmann_evaluate_finite() {
        let bundle = bumpy_bundle();
        let b = crate::expr::Binding::new()
            .set("t", 0.3)
            .set("x", 0.2)
            .set("y", 0.1)
            .set("z", 0.0);
        assert!(bundle.scalar.eval(&b).unwrap().is_finite());
        assert!(bundle.kretschmann.eval(&b).unwrap().is_finite());
    }
}
