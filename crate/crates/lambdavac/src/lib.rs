//! Symbolic tensor calculus for a family of exact Λ-vacuum spacetimes.
//!
//! One free function `a(t, x)` generates every solution handled by this
//! crate: with `b = 2aₜ + Λa²/3 + m/a`, the metric
//!
//! ```text
//! ds² = b dt² + 2aₓ dt dx − a²(dy² + dz²)
//! ```
//!
//! satisfies the vacuum Einstein field equations `R_{μν} = Λg_{μν}` for
//! any `a` and any mass parameter `m ≥ 0`. The crate provides
//!
//! * an exact expression core ([`expr`], [`number`], [`simplify`],
//!   [`parse`], [`zerotest`]) with symbolic differentiation and a seeded
//!   probabilistic zero test,
//! * metric assembly and curvature ([`metric`], [`curvature`]):
//!   Christoffel symbols, Riemann/Ricci/Weyl tensors, scalar curvature,
//!   and the Kretschmann invariant,
//! * Newman–Penrose Weyl scalars against a canonical null tetrad
//!   ([`np`]),
//! * the solution family itself ([`ansatz`]): a catalog of generators,
//!   jet-based curvature that stays finite at chart-degenerate points,
//!   and coordinate-chart pullbacks,
//! * and numeric grid analyses ([`grid`]): `g₀₀` sign maps, null-curve
//!   slopes, and a singularity scan that separates curvature blowups
//!   from coordinate artifacts.
//!
//! # Example
//!
//! ```
//! use lambdavac::ansatz::builtin;
//! use lambdavac::zerotest::ZeroTest;
//! use lambdavac::Number;
//!
//! // a = 2 + cos x with Λ = m = 1: an everywhere-regular,
//! // space-periodic vacuum spacetime.
//! let sol = builtin("space_periodic", Number::int(1), Number::int(1)).unwrap();
//!
//! // The field equations hold: every residual component vanishes.
//! let residual = sol.einstein_residual();
//! let zt = ZeroTest::new();
//! for i in 0..4 {
//!     for j in i..4 {
//!         assert!(zt.test(&residual[i][j]).is_zero());
//!     }
//! }
//! ```
//!
//! The accompanying guide in `book/` walks through each module; its
//! code samples compile and run as documentation tests of this crate.

pub mod ansatz;
pub mod curvature;
pub mod expr;
pub mod grid;
pub mod metric;
pub mod np;
pub mod number;
pub mod parse;
pub mod simplify;
pub mod zerotest;

pub use expr::{Binding, EvalError, Expr, ExprKind};
pub use number::Number;

/// The guide's chapters, compiled as documentation tests so the book
/// can never drift from the library.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    pub mod expressions {}
    #[doc = include_str!("../../../book/src/metric-language.md")]
    pub mod metric_language {}
    #[doc = include_str!("../../../book/src/curvature.md")]
    pub mod curvature {}
    #[doc = include_str!("../../../book/src/newman-penrose.md")]
    pub mod newman_penrose {}
    #[doc = include_str!("../../../book/src/solution-family.md")]
    pub mod solution_family {}
    #[doc = include_str!("../../../book/src/grid-analyses.md")]
    pub mod grid_analyses {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
