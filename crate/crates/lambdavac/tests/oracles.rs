//! Frozen numeric oracles.
//!
//! Every constant in this file was computed independently of the library
//! (directly from the published closed forms, in double precision) and
//! then frozen. The tests check that the symbolic pipeline — ansatz
//! assembly, curvature, Newman–Penrose contraction, and the grid
//! helpers — reproduces each value through a completely different code
//! path. Tolerances are a few ulps wide (`1e-12` relative) because the
//! two sides accumulate rounding differently.

use approx::assert_relative_eq;
use lambdavac::ansatz::{builtin, conformal_factor};
use lambdavac::grid::null_slope_expr;
use lambdavac::np::{canonical_tetrad, weyl_scalars};
use lambdavac::{Binding, Expr, Number};

fn eval(e: &Expr, binding: &Binding) -> f64 {
    e.eval(binding).expect("oracle point must be evaluable")
}

fn one_one(name: &str) -> lambdavac::ansatz::AnsatzSolution {
    builtin(name, Number::int(1), Number::int(1)).expect("catalog entry")
}

#[test]
fn riemann_components_match_independent_values() {
    let sol = one_one("space_periodic");
    let bundle = sol.curvature_bundle();
    let at = Binding::new().set("t", 0.0).set("x", 0.9);

    let cases = [
        ((0, 1, 0, 1), -0.23858875839078153),
        ((0, 2, 0, 2), -5.612619688847411),
        ((0, 2, 1, 2), 1.6451618015325378),
        ((0, 3, 0, 3), -5.612619688847411),
        ((0, 3, 1, 3), 1.6451618015325378),
        ((2, 3, 2, 3), 18.366914476452585),
    ];
    for ((a, b, m, n), want) in cases {
        let got = eval(&bundle.riemann[a][b][m][n], &at);
        assert_relative_eq!(got, want, max_relative = 1e-12);
    }
}

#[test]
fn curvature_invariants_match_independent_values() {
    let sol = one_one("space_periodic");
    let bundle = sol.curvature_bundle();

    let at = Binding::new().set("t", 0.0).set("x", 0.9);
    assert_relative_eq!(eval(&bundle.scalar, &at), 4.0, max_relative = 1e-12);
    assert_relative_eq!(
        eval(&bundle.kretschmann, &at),
        2.703630139497416,
        max_relative = 1e-12
    );

    let origin = Binding::new().set("t", 0.0).set("x", 0.0);
    assert_relative_eq!(
        eval(&bundle.kretschmann, &origin),
        2.683127572016461,
        max_relative = 1e-12
    );
}

#[test]
fn weyl_scalar_matches_independent_values() {
    let sol = one_one("space_periodic");
    let bundle = sol.curvature_bundle();
    let tetrad = canonical_tetrad(&sol.metric).expect("canonical tetrad");
    let scalars = weyl_scalars(&bundle, &tetrad);

    let at = Binding::new().set("t", 0.0).set("x", 0.9);
    assert_relative_eq!(
        eval(&scalars.psi2.re, &at),
        -0.10186105194829365,
        max_relative = 1e-12
    );

    let origin = Binding::new().set("t", 0.0).set("x", 0.0);
    assert_relative_eq!(
        eval(&scalars.psi2.re, &origin),
        -17.0 / 162.0,
        max_relative = 1e-12
    );
}

#[test]
fn metric_fields_match_independent_values() {
    let sol = one_one("space_periodic");
    let at = Binding::new().set("t", 0.0).set("x", 0.9);

    let g00 = sol.metric.component(0, 0).clone();
    assert_relative_eq!(eval(&g00, &at), 2.6723912697727785, max_relative = 1e-12);

    let det = lambdavac::simplify::simplify(&sol.metric.determinant());
    assert_relative_eq!(eval(&det, &at), -28.98400601103204, max_relative = 1e-12);

    let slope = null_slope_expr(&sol.metric);
    assert_relative_eq!(eval(&slope, &at), 0.5862366925739031, max_relative = 1e-12);

    let half_pi = Binding::new()
        .set("t", 0.0)
        .set("x", std::f64::consts::FRAC_PI_2);
    assert_relative_eq!(
        eval(&slope, &half_pi),
        1.0909090909090908,
        max_relative = 1e-12
    );
}

#[test]
fn symbolic_partials_match_independent_values() {
    let sol = one_one("regular_periodic");
    let at = Binding::new().set("t", 1.0).set("x", 0.7);

    let a_t = sol.a.diff("t");
    let a_x = sol.a.diff("x");
    assert_relative_eq!(eval(&a_t, &at), 0.45442173488837195, max_relative = 1e-12);
    assert_relative_eq!(eval(&a_x, &at), -1.3953085974008108, max_relative = 1e-12);

    let bundle = sol.curvature_bundle();
    assert_relative_eq!(
        eval(&bundle.kretschmann, &at),
        2.6669268823126604,
        max_relative = 1e-12
    );
}

#[test]
fn degenerate_chart_point_matches_independent_values() {
    // At (t, x) = (3π, 0) the generator of `singular_periodic` has
    // a_x = 0, so the coordinate chart degenerates while every
    // invariant stays finite.
    let sol = one_one("singular_periodic");
    let bundle = sol.curvature_bundle();
    let at = Binding::new()
        .set("t", 3.0 * std::f64::consts::PI)
        .set("x", 0.0);

    assert_relative_eq!(
        eval(&bundle.kretschmann, &at),
        14.666666666666666,
        max_relative = 1e-12
    );
    let g00 = sol.metric.component(0, 0).clone();
    assert_relative_eq!(eval(&g00, &at), 1.3333333333333333, max_relative = 1e-12);

    // Null slope just off the chart-degenerate line, from the closed form.
    let slope = null_slope_expr(&sol.metric);
    let off = Binding::new().set("t", 19.0).set("x", 1.0);
    assert_relative_eq!(
        eval(&slope, &off),
        0.0005701709533280383,
        max_relative = 1e-12
    );
}

#[test]
fn conformal_factor_matches_independent_values() {
    let a = conformal_factor(Number::int(1));
    let at = Binding::new().set("ttilde", 1.5).set("xtilde", 1.25);
    assert_relative_eq!(eval(&a, &at), -0.75, max_relative = 1e-12);
}
