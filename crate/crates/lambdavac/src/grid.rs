//! Numeric grid analyses over the `(t, x)`-plane.
//!
//! The family's interesting behavior — sign changes of `g₀₀`, null-cone
//! projections, and singular loci — lives in the first two coordinates.
//! This module samples symbolic fields on a regular lattice: sign maps
//! of `g₀₀`, null-curve slope fields, and a threshold scan separating
//! physical singularities (Kretschmann divergence) from mere chart
//! degeneracies (`det g → 0` with bounded Kretschmann).
//!
//! Grids bind only the first two coordinates; a field depending on the
//! remaining coordinates evaluates as undefined. Per-point evaluation
//! errors never abort an analysis — they become undefined entries.

use rayon::prelude::*;

use crate::expr::{Binding, Expr};
use crate::metric::MetricTensor;
use crate::number::Number;
use crate::simplify::simplify;

/// Magnitudes of `g₀₀` at or below this count as an exact sign change.
pub const SIGN_EPSILON: f64 = 1e-12;

/// Sample magnitudes above this (the reciprocal of [`SIGN_EPSILON`]) are
/// treated as pole hits in sign and slope maps.
///
/// Floating-point evaluation cannot land exactly on a symbolic pole —
/// `cos(π/2)` rounds to `6e-17`, not zero — so a sample taken within
/// one rounding error of a pole comes back astronomically large yet
/// finite. Classifying such samples as undefined makes the numeric maps
/// agree with the symbolic domain.
pub const POLE_MAGNITUDE: f64 = 1e12;

/// Error raised while building or parsing a grid.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridError {
    /// A coordinate range was empty or reversed.
    #[error("empty {0}-range: lower bound must be strictly below upper bound")]
    EmptyRange(&'static str),
    /// A point count was below two.
    #[error("grid counts must be at least 2, found {0}")]
    Count(usize),
    /// A grid description string did not parse.
    #[error("invalid grid '{input}': {message}")]
    Parse {
        /// The offending input.
        input: String,
        /// What went wrong.
        message: String,
    },
}

/// A regular lattice over `[t₀,t₁] × [x₀,x₁]` including both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    /// Range of the first coordinate.
    pub t_range: (f64, f64),
    /// Range of the second coordinate.
    pub x_range: (f64, f64),
    /// Number of lattice points along the first coordinate (`≥ 2`).
    pub nt: usize,
    /// Number of lattice points along the second coordinate (`≥ 2`).
    pub nx: usize,
}

impl Grid2D {
    /// Build a validated grid.
    pub fn new(
        t_range: (f64, f64),
        x_range: (f64, f64),
        nt: usize,
        nx: usize,
    ) -> Result<Self, GridError> {
        if !(t_range.0 < t_range.1) || !t_range.0.is_finite() || !t_range.1.is_finite() {
            return Err(GridError::EmptyRange("t"));
        }
        if !(x_range.0 < x_range.1) || !x_range.0.is_finite() || !x_range.1.is_finite() {
            return Err(GridError::EmptyRange("x"));
        }
        if nt < 2 {
            return Err(GridError::Count(nt));
        }
        if nx < 2 {
            return Err(GridError::Count(nx));
        }
        Ok(Grid2D {
            t_range,
            x_range,
            nt,
            nx,
        })
    }

    /// The `i`-th lattice value of the first coordinate.
    pub fn t_at(&self, i: usize) -> f64 {
        let (lo, hi) = self.t_range;
        lo + (hi - lo) * (i as f64) / ((self.nt - 1) as f64)
    }

    /// The `j`-th lattice value of the second coordinate.
    pub fn x_at(&self, j: usize) -> f64 {
        let (lo, hi) = self.x_range;
        lo + (hi - lo) * (j as f64) / ((self.nx - 1) as f64)
    }

    /// Total number of lattice points.
    pub fn len(&self) -> usize {
        self.nt * self.nx
    }

    /// A grid always has at least four points.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major index (first coordinate outermost).
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.nx + j
    }
}

impl std::str::FromStr for Grid2D {
    type Err = GridError;

    /// Parse `"t0:t1:nt,x0:x1:nx"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |message: &str| GridError::Parse {
            input: s.to_string(),
            message: message.to_string(),
        };
        let (t_part, x_part) = s
            .split_once(',')
            .ok_or_else(|| err("expected two comma-separated axis descriptions"))?;
        let parse_axis = |axis: &str| -> Result<((f64, f64), usize), GridError> {
            let fields: Vec<&str> = axis.split(':').collect();
            if fields.len() != 3 {
                return Err(err("each axis must be lo:hi:count"));
            }
            let lo: f64 = fields[0]
                .trim()
                .parse()
                .map_err(|_| err("invalid lower bound"))?;
            let hi: f64 = fields[1]
                .trim()
                .parse()
                .map_err(|_| err("invalid upper bound"))?;
            let n: usize = fields[2]
                .trim()
                .parse()
                .map_err(|_| err("invalid point count"))?;
            Ok(((lo, hi), n))
        };
        let (t_range, nt) = parse_axis(t_part)?;
        let (x_range, nx) = parse_axis(x_part)?;
        Grid2D::new(t_range, x_range, nt, nx)
    }
}

/// The sign classification of a sampled value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// Strictly positive.
    Plus,
    /// Strictly negative.
    Minus,
    /// Within [`SIGN_EPSILON`] of zero.
    Zero,
    /// Evaluation failed at this point.
    Undefined,
}

impl Sign {
    /// Numeric encoding: `+1`, `−1`, `0`, or NaN.
    pub fn as_f64(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
            Sign::Zero => 0.0,
            Sign::Undefined => f64::NAN,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Zero => "0",
            Sign::Undefined => "undefined",
        };
        f.write_str(s)
    }
}

/// Identification of a grid report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportMeta {
    /// Solution label (catalog name or file stem).
    pub solution: String,
    /// Cosmological constant, when known.
    pub lambda: Option<Number>,
    /// Mass parameter, when known.
    pub m: Option<Number>,
    /// Name of the sampled field.
    pub field: String,
}

impl ReportMeta {
    fn from_metric(metric: &MetricTensor, solution: &str, field: &str) -> Self {
        ReportMeta {
            solution: solution.to_string(),
            lambda: metric.params().get("Lambda").copied(),
            m: metric.params().get("m").copied(),
            field: field.to_string(),
        }
    }
}

/// The per-point data of a grid report.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    /// Scalar samples; `None` marks undefined points.
    Real(Vec<Option<f64>>),
    /// Sign classification per point.
    Sign(Vec<Sign>),
    /// Slope `dt/dx` of the nontrivial null branch per point (the other
    /// branch is always `dt = 0`); `None` marks undefined points.
    Slope(Vec<Option<f64>>),
}

impl Payload {
    /// Number of entries.
    pub fn len(&self) -> usize {
        match self {
            Payload::Real(v) => v.len(),
            Payload::Sign(v) => v.len(),
            Payload::Slope(v) => v.len(),
        }
    }

    /// Whether there are no entries.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Numeric view of one entry (signs encode as `±1`/`0`, undefined as
    /// NaN).
    pub fn value_at(&self, idx: usize) -> f64 {
        match self {
            Payload::Real(v) | Payload::Slope(v) => v[idx].unwrap_or(f64::NAN),
            Payload::Sign(v) => v[idx].as_f64(),
        }
    }
}

/// A sampled field over a grid, assembled in row-major order with the
/// first coordinate outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    /// The lattice.
    pub grid: Grid2D,
    /// Identification.
    pub meta: ReportMeta,
    /// Per-point data, `grid.len()` entries.
    pub payload: Payload,
}

/// Evaluate `expr` on the lattice, binding the two grid coordinates.
/// Rows run in parallel; assembly order is deterministic.
pub fn eval_grid(expr: &Expr, grid: &Grid2D, c0: &str, c1: &str) -> Vec<Option<f64>> {
    (0..grid.nt)
        .into_par_iter()
        .flat_map_iter(|i| {
            let t = grid.t_at(i);
            (0..grid.nx).map(move |j| {
                let binding = Binding::new().set(c0, t).set(c1, grid.x_at(j));
                match expr.eval(&binding) {
                    Ok(v) if v.is_finite() => Some(v),
                    _ => None,
                }
            })
        })
        .collect()
}

/// Map the sign of `g₀₀` over a grid.
///
/// Values within [`SIGN_EPSILON`] of zero classify as [`Sign::Zero`];
/// evaluation failures and pole hits (magnitude above
/// [`POLE_MAGNITUDE`]) as [`Sign::Undefined`].
pub fn g00_sign_map(metric: &MetricTensor, grid: &Grid2D, solution: &str) -> GridReport {
    let coords = metric.coords();
    let values = eval_grid(metric.component(0, 0), grid, &coords[0], &coords[1]);
    let signs = values
        .into_iter()
        .map(|v| match v {
            None => Sign::Undefined,
            Some(v) if v.abs() > POLE_MAGNITUDE => Sign::Undefined,
            Some(v) if v.abs() <= SIGN_EPSILON => Sign::Zero,
            Some(v) if v > 0.0 => Sign::Plus,
            Some(_) => Sign::Minus,
        })
        .collect();
    GridReport {
        grid: *grid,
        meta: ReportMeta::from_metric(metric, solution, "sign(g00)"),
        payload: Payload::Sign(signs),
    }
}

/// The slope `dt/dx = −2g₀₁/g₀₀` of the nontrivial null branch, as a
/// symbolic expression.
///
/// The null condition `g₀₀ dt² + 2g₀₁ dt dx = 0` in the `(t,x)`-plane
/// factors into the branch `dt = 0` and this slope.
pub fn null_slope_expr(metric: &MetricTensor) -> Expr {
    simplify(
        &(Expr::int(-2)
            * metric.component(0, 1).clone()
            * Expr::pow(metric.component(0, 0).clone(), Number::int(-1))),
    )
}

/// Sample the nontrivial null-branch slope over a grid.
///
/// Points where `|g₀₀| ≤` [`SIGN_EPSILON`] (degenerate cone), where
/// `|g₀₀|` exceeds [`POLE_MAGNITUDE`] (pole hit), or where evaluation
/// fails are undefined.
pub fn null_slope_field(metric: &MetricTensor, grid: &Grid2D, solution: &str) -> GridReport {
    let coords = metric.coords();
    let slope = null_slope_expr(metric);
    let g00_vals = eval_grid(metric.component(0, 0), grid, &coords[0], &coords[1]);
    let slope_vals = eval_grid(&slope, grid, &coords[0], &coords[1]);
    let values = g00_vals
        .into_iter()
        .zip(slope_vals)
        .map(|(g00, s)| match (g00, s) {
            (Some(g), Some(s)) if g.abs() > SIGN_EPSILON && g.abs() <= POLE_MAGNITUDE => {
                Some(s)
            }
            _ => None,
        })
        .collect();
    GridReport {
        grid: *grid,
        meta: ReportMeta::from_metric(metric, solution, "dt/dx"),
        payload: Payload::Slope(values),
    }
}

/// Kind of detected singular locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusKind {
    /// Kretschmann scalar diverges: a genuine curvature singularity.
    Physical,
    /// `det g` vanishes while the Kretschmann scalar stays bounded: a
    /// coordinate (chart) degeneracy.
    Chart,
}

impl std::fmt::Display for LocusKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LocusKind::Physical => "physical",
            LocusKind::Chart => "chart",
        })
    }
}

/// One detected locus on the lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Locus {
    /// Physical or chart.
    pub kind: LocusKind,
    /// Lattice index along the first coordinate.
    pub ti: usize,
    /// Lattice index along the second coordinate.
    pub xi: usize,
    /// First coordinate value.
    pub t: f64,
    /// Second coordinate value.
    pub x: f64,
    /// `|K|` at the locus: the local peak for physical loci; for chart
    /// loci the bounded sample, possibly from the nearest defined
    /// neighbor.
    pub kretschmann: Option<f64>,
    /// `|det g|` at the locus, when defined.
    pub det: Option<f64>,
}

/// Result of a singularity scan.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularLoci {
    /// Identification.
    pub meta: ReportMeta,
    /// The lattice scanned.
    pub grid: Grid2D,
    /// Kretschmann threshold used.
    pub k_threshold: f64,
    /// Determinant threshold used.
    pub det_threshold: f64,
    /// Detected loci: physical first, then chart, each in row-major
    /// order.
    pub loci: Vec<Locus>,
}

impl SingularLoci {
    /// The physical loci.
    pub fn physical(&self) -> impl Iterator<Item = &Locus> {
        self.loci
            .iter()
            .filter(|l| l.kind == LocusKind::Physical)
    }

    /// The chart loci.
    pub fn chart(&self) -> impl Iterator<Item = &Locus> {
        self.loci.iter().filter(|l| l.kind == LocusKind::Chart)
    }
}

fn neighbors(i: usize, j: usize, nt: usize, nx: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(8);
    for di in -1i64..=1 {
        for dj in -1i64..=1 {
            if di == 0 && dj == 0 {
                continue;
            }
            let ni = i as i64 + di;
            let nj = j as i64 + dj;
            if ni >= 0 && nj >= 0 && (ni as usize) < nt && (nj as usize) < nx {
                out.push((ni as usize, nj as usize));
            }
        }
    }
    out
}

/// Scan a grid for singular loci.
///
/// Physical loci are interior lattice points where `|K|` exceeds
/// `k_threshold` and is an 8-neighbor local maximum (undefined
/// neighbors compare as smaller). Chart loci are points where
/// `|det g| < det_threshold` while `|K| ≤ k_threshold` there — or, if
/// `K` is undefined at the point itself, at the smallest defined
/// 8-neighbor sample; points with no defined Kretschmann sample nearby
/// are not reported.
pub fn singularity_scan(
    metric: &MetricTensor,
    kretschmann: &Expr,
    grid: &Grid2D,
    k_threshold: f64,
    det_threshold: f64,
    solution: &str,
) -> SingularLoci {
    let coords = metric.coords();
    let det_expr = simplify(&metric.determinant());
    let k_vals = eval_grid(kretschmann, grid, &coords[0], &coords[1]);
    let det_vals = eval_grid(&det_expr, grid, &coords[0], &coords[1]);

    let mut physical = Vec::new();
    let mut chart = Vec::new();
    for i in 0..grid.nt {
        for j in 0..grid.nx {
            let idx = grid.index(i, j);
            let k_here = k_vals[idx];
            let det_here = det_vals[idx];

            // Physical: interior 8-neighbor local maximum above threshold.
            let interior = i > 0 && i + 1 < grid.nt && j > 0 && j + 1 < grid.nx;
            if interior {
                if let Some(k) = k_here {
                    if k.abs() > k_threshold {
                        let is_peak = neighbors(i, j, grid.nt, grid.nx).into_iter().all(
                            |(ni, nj)| match k_vals[grid.index(ni, nj)] {
                                Some(kn) => kn.abs() < k.abs(),
                                None => true,
                            },
                        );
                        if is_peak {
                            physical.push(Locus {
                                kind: LocusKind::Physical,
                                ti: i,
                                xi: j,
                                t: grid.t_at(i),
                                x: grid.x_at(j),
                                kretschmann: Some(k.abs()),
                                det: det_here.map(f64::abs),
                            });
                            continue;
                        }
                    }
                }
            }

            // Chart: tiny determinant with bounded curvature.
            if let Some(d) = det_here {
                if d.abs() < det_threshold {
                    let k_sample = match k_here {
                        Some(k) => Some(k.abs()),
                        None => neighbors(i, j, grid.nt, grid.nx)
                            .into_iter()
                            .filter_map(|(ni, nj)| k_vals[grid.index(ni, nj)])
                            .map(f64::abs)
                            .min_by(f64::total_cmp),
                    };
                    if let Some(k) = k_sample {
                        if k <= k_threshold {
                            chart.push(Locus {
                                kind: LocusKind::Chart,
                                ti: i,
                                xi: j,
                                t: grid.t_at(i),
                                x: grid.x_at(j),
                                kretschmann: Some(k),
                                det: Some(d.abs()),
                            });
                        }
                    }
                }
            }
        }
    }

    let mut loci = physical;
    loci.extend(chart);
    SingularLoci {
        meta: ReportMeta::from_metric(metric, solution, "singularities"),
        grid: *grid,
        k_threshold,
        det_threshold,
        loci,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::builtin;
    use crate::zerotest::ZeroTest;
    use std::f64::consts::PI;

    fn num(n: i64) -> Number {
        Number::int(n)
    }

    #[test]
    fn grid_parsing_and_lattice() {
        let g: Grid2D = "0:1:3,0:2:5".parse().unwrap();
        assert_eq!((g.nt, g.nx), (3, 5));
        assert!((g.t_at(2) - 1.0).abs() < 1e-15);
        assert!((g.x_at(4) - 2.0).abs() < 1e-15);
        assert_eq!(g.len(), 15);
        assert_eq!(g.index(1, 2), 7);

        assert!(matches!(
            "0:1:1,0:2:5".parse::<Grid2D>(),
            Err(GridError::Count(1))
        ));
        assert!(matches!(
            "1:0:3,0:2:5".parse::<Grid2D>(),
            Err(GridError::EmptyRange("t"))
        ));
        assert!(matches!(
            "junk".parse::<Grid2D>(),
            Err(GridError::Parse { .. })
        ));
        assert!(matches!(
            "0:1:3,0:2".parse::<Grid2D>(),
            Err(GridError::Parse { .. })
        ));
    }

    #[test]
    fn sign_map_for_singular_solution() {
        let sol = builtin("singular_periodic", num(1), num(1)).unwrap();
        // Lattice containing (3π, 0) and (3π, π/2).
        let grid = Grid2D::new((3.0 * PI - 0.1, 3.0 * PI + 0.1), (0.0, PI), 3, 3).unwrap();
        let report = g00_sign_map(&sol.metric, &grid, "singular_periodic");
        let Payload::Sign(signs) = &report.payload else {
            panic!("expected sign payload")
        };
        // (3π, 0): g00 = 4/3 > 0
        assert_eq!(signs[grid.index(1, 0)], Sign::Plus);
        // (3π, π/2): pole of m/a (a = 0)
        assert_eq!(signs[grid.index(1, 1)], Sign::Undefined);
        assert_eq!(report.payload.len(), grid.len());
    }

    #[test]
    fn sign_rule_for_m_at_least_half_lambda() {
        // For m ≥ Λ/2 the numerator of g₀₀ is positive, so
        // sign(g₀₀) = sign(cos x · sin(Λt/6)) wherever defined.
        let sol = builtin("singular_periodic", num(1), num(1)).unwrap();
        let grid = Grid2D::new((0.5, 12.0), (-1.5, 1.5), 20, 20).unwrap();
        let report = g00_sign_map(&sol.metric, &grid, "singular_periodic");
        let Payload::Sign(signs) = &report.payload else {
            panic!("expected sign payload")
        };
        for i in 0..grid.nt {
            for j in 0..grid.nx {
                let (t, x) = (grid.t_at(i), grid.x_at(j));
                let denom = x.cos() * (t / 6.0).sin();
                match signs[grid.index(i, j)] {
                    Sign::Plus => assert!(denom > 0.0, "at ({t},{x})"),
                    Sign::Minus => assert!(denom < 0.0, "at ({t},{x})"),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn space_periodic_g00_positive_everywhere() {
        let sol = builtin("space_periodic", num(1), num(1)).unwrap();
        let grid = Grid2D::new((0.0, 10.0), (-7.0, 7.0), 12, 12).unwrap();
        let report = g00_sign_map(&sol.metric, &grid, "space_periodic");
        let Payload::Sign(signs) = &report.payload else {
            panic!("expected sign payload")
        };
        assert!(signs.iter().all(|s| *s == Sign::Plus));
    }

    #[test]
    fn slope_identity_space_periodic() {
        let sol = builtin("space_periodic", num(1), num(1)).unwrap();
        let slope = null_slope_expr(&sol.metric);
        // 6 sin x (2+cos x) / (Λ(2+cos x)³ + 3m)
        let x = Expr::symbol("x");
        let a = Expr::int(2) + Expr::cos(x.clone());
        let closed = Expr::int(6)
            * Expr::sin(x)
            * a.clone()
            * Expr::pow(
                Expr::pow(a, Number::int(3)) + Expr::int(3),
                Number::int(-1),
            );
        assert!(ZeroTest::new().test_equal(&slope, &closed).is_zero());
        // spot: x = π/2 gives 12/11
        let b = Binding::new().set("t", 0.0).set("x", PI / 2.0);
        let v = slope.eval(&b).unwrap();
        assert!((v - 12.0 / 11.0).abs() < 1e-12);
    }

    #[test]
    fn slope_identity_regular_periodic() {
        let sol = builtin("regular_periodic", num(1), num(1)).unwrap();
        let slope = null_slope_expr(&sol.metric);
        // 6(2+cos x)(2+sin(t/6))² sin x /
        //   (Λ(2+cos x)²(2+sin(t/6))cos(t/6) + Λ(2+cos x)³(2+sin(t/6))³ + 3m)
        let x = Expr::symbol("x");
        let u = Expr::rational(1, 6) * Expr::symbol("t");
        let p = Expr::int(2) + Expr::cos(x.clone());
        let q = Expr::int(2) + Expr::sin(u.clone());
        let denom = Expr::pow(p.clone(), Number::int(2)) * q.clone() * Expr::cos(u)
            + Expr::pow(p.clone(), Number::int(3)) * Expr::pow(q.clone(), Number::int(3))
            + Expr::int(3);
        let closed = Expr::int(6)
            * p
            * Expr::pow(q, Number::int(2))
            * Expr::sin(x)
            * Expr::pow(denom, Number::int(-1));
        assert!(ZeroTest::new().test_equal(&slope, &closed).is_zero());
    }

    #[test]
    fn slope_identity_singular_periodic() {
        let sol = builtin("singular_periodic", num(1), num(1)).unwrap();
        let slope = null_slope_expr(&sol.metric);
        // 6 cos x sin x sin²(t/6) /
        //   (Λ(cos²x sin(t/6)cos(t/6) + cos³x sin³(t/6) + 3m/Λ))
        let x = Expr::symbol("x");
        let u = Expr::rational(1, 6) * Expr::symbol("t");
        let denom = Expr::pow(Expr::cos(x.clone()), Number::int(2))
            * Expr::sin(u.clone())
            * Expr::cos(u.clone())
            + Expr::pow(Expr::cos(x.clone()), Number::int(3))
                * Expr::pow(Expr::sin(u.clone()), Number::int(3))
            + Expr::int(3);
        let closed = Expr::int(6)
            * Expr::cos(x.clone())
            * Expr::sin(x)
            * Expr::pow(Expr::sin(u), Number::int(2))
            * Expr::pow(denom, Number::int(-1));
        assert!(ZeroTest::new().test_equal(&slope, &closed).is_zero());
    }

    #[test]
    fn degenerate_cone_is_undefined() {
        let sol = builtin("singular_periodic", num(1), num(1)).unwrap();
        let grid = Grid2D::new((3.0 * PI - 0.1, 3.0 * PI + 0.1), (0.0, PI), 3, 3).unwrap();
        let report = null_slope_field(&sol.metric, &grid, "singular_periodic");
        let Payload::Slope(vals) = &report.payload else {
            panic!("expected slope payload")
        };
        // (3π, π/2): a = 0 pole → undefined
        assert!(vals[grid.index(1, 1)].is_none());
        // (3π, 0): defined
        assert!(vals[grid.index(1, 0)].is_some());
    }

    #[test]
    fn scan_finds_physical_peaks_near_the_zero_set() {
        let sol = builtin("singular_periodic", num(1), num(1)).unwrap();
        let bundle = sol.curvature_bundle();
        let grid = Grid2D::new((16.0, 22.0), (-2.0, 2.0), 60, 60).unwrap();
        let loci = singularity_scan(
            &sol.metric,
            &bundle.kretschmann,
            &grid,
            1e6,
            1e-8,
            "singular_periodic",
        );
        let physical: Vec<_> = loci.physical().collect();
        assert!(!physical.is_empty());
        // a = cos x · sin(t/6) vanishes on t = 6π and x = ±π/2 here.
        for l in &physical {
            let near_t = (l.t - 6.0 * PI).abs() < 0.15;
            let near_x = (l.x.abs() - PI / 2.0).abs() < 0.15;
            assert!(
                near_t || near_x,
                "locus at ({}, {}) far from the zero set",
                l.t,
                l.x
            );
            assert!(l.kretschmann.unwrap() > 1e6);
        }
    }

    #[test]
    fn scan_reports_chart_loci_for_space_periodic() {
        let sol = builtin("space_periodic", num(1), num(1)).unwrap();
        let bundle = sol.curvature_bundle();
        // Lattice containing x = 0 where a_x = 0 exactly.
        let grid = Grid2D::new((0.0, 1.0), (-2.0, 2.0), 3, 41).unwrap();
        let loci = singularity_scan(
            &sol.metric,
            &bundle.kretschmann,
            &grid,
            1e6,
            1e-8,
            "space_periodic",
        );
        assert_eq!(loci.physical().count(), 0);
        let chart: Vec<_> = loci.chart().collect();
        assert!(!chart.is_empty());
        for l in &chart {
            assert!(l.x.abs() < 1e-12, "chart locus away from x = 0: {}", l.x);
            assert!(l.kretschmann.unwrap() <= 1e6);
            assert!(l.det.unwrap() < 1e-8);
        }
    }

    #[test]
    fn minkowski_scan_is_empty() {
        let g = MetricTensor::minkowski();
        let grid = Grid2D::new((0.0, 1.0), (0.0, 1.0), 4, 4).unwrap();
        let loci = singularity_scan(&g, &Expr::int(0), &grid, 1e6, 1e-8, "minkowski");
        assert!(loci.loci.is_empty());
    }

    #[test]
    fn fields_are_periodic() {
        // space_periodic: x-period 2π.
        let sol = builtin("space_periodic", num(1), num(1)).unwrap();
        let grid = Grid2D::new((1.0, 2.0), (0.0, 4.0 * PI), 2, 9).unwrap();
        let report = null_slope_field(&sol.metric, &grid, "space_periodic");
        let Payload::Slope(vals) = &report.payload else {
            panic!("expected slope payload")
        };
        for i in 0..grid.nt {
            for j in 0..4 {
                let (a, b) = (vals[grid.index(i, j)], vals[grid.index(i, j + 4)]);
                assert!((a.unwrap() - b.unwrap()).abs() < 1e-12);
            }
        }
        // regular_periodic: (t, x)-periods (12π, 2π) for Λ = 1.
        let sol = builtin("regular_periodic", num(1), num(1)).unwrap();
        let grid = Grid2D::new((0.0, 24.0 * PI), (0.0, 4.0 * PI), 3, 9).unwrap();
        let report = g00_sign_map(&sol.metric, &grid, "regular_periodic");
        let Payload::Sign(signs) = &report.payload else {
            panic!("expected sign payload")
        };
        for j in 0..grid.nx {
            assert_eq!(signs[grid.index(0, j)], signs[grid.index(1, j)]);
        }
        for i in 0..grid.nt {
            for j in 0..4 {
                assert_eq!(signs[grid.index(i, j)], signs[grid.index(i, j + 4)]);
            }
        }
    }
}
