//! Best-effort rule-based simplification.
//!
//! [`simplify`] rewrites an expression into an expanded, collected normal
//! form: products distribute over sums, powers of a common base merge by
//! adding exponents, structurally identical terms collect by summing their
//! exact coefficients, and `c·sin²(u)·Q + c·cos²(u)·Q` pairs reduce to
//! `c·Q`. The result is evaluation-equivalent to the input; it is *not* a
//! canonical form, and symbolic identity claims are settled by the
//! probabilistic zero test, not by comparing simplified trees.
//!
//! Merging exponents inside a single product is what cancels removable
//! pole factors (such as `a_x² · a_x⁻²`) term by term, which keeps
//! curvature scalars evaluable at chart-degenerate points where the raw
//! contraction would hit `0⁻²`.

use std::collections::BTreeMap;

use crate::expr::{Expr, ExprKind};
use crate::number::Number;

/// Expansion is skipped for any product whose distributed form would
/// exceed this many terms; the product is left factored instead.
const EXPANSION_TERM_BUDGET: usize = 20_000;

/// Largest integer exponent for which a power of a sum is expanded by
/// repeated multiplication.
const POW_EXPANSION_LIMIT: i64 = 8;

/// Simplify `e`. Idempotent up to a bounded number of stabilization
/// passes; always evaluation-equivalent to the input.
pub fn simplify(e: &Expr) -> Expr {
    let mut cur = simp(e);
    for _ in 0..2 {
        let next = simp(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

fn simp(e: &Expr) -> Expr {
    match e.kind() {
        ExprKind::Const(_) | ExprKind::Symbol(_) => e.clone(),
        ExprKind::Sin(a) => Expr::sin(simp(a)),
        ExprKind::Cos(a) => Expr::cos(simp(a)),
        ExprKind::Pow(b, ex) => Expr::pow(simp(b), *ex),
        ExprKind::Product(fs) => {
            let children: Vec<Expr> = fs.iter().map(simp).collect();
            simplify_product(children)
        }
        ExprKind::Sum(ts) => {
            let children: Vec<Expr> = ts.iter().map(simp).collect();
            collect_sum(children)
        }
    }
}

/// Split a factor into `(base, exponent)`.
fn split_power(f: &Expr) -> (Expr, Number) {
    match f.kind() {
        ExprKind::Pow(b, e) => (b.clone(), *e),
        _ => (f.clone(), Number::int(1)),
    }
}

/// Split a term into `(coefficient, monomial)`, where the monomial is the
/// product of the non-constant factors (or `1` for a pure constant).
fn split_coefficient(t: &Expr) -> (Number, Expr) {
    match t.kind() {
        ExprKind::Const(n) => (*n, Expr::int(1)),
        ExprKind::Product(fs) => match fs[0].kind() {
            ExprKind::Const(n) => (*n, Expr::product(fs[1..].to_vec())),
            _ => (Number::int(1), t.clone()),
        },
        _ => (Number::int(1), t.clone()),
    }
}

/// Merge the powers of equal bases across a factor list, then distribute
/// the result over any sum factors (within the expansion budget).
fn simplify_product(factors: Vec<Expr>) -> Expr {
    // Phase 1: merge exponents per structural base. This must happen
    // before any distribution so that `S * S^(-1)` cancels even when `S`
    // is a sum.
    let mut coeff = Number::int(1);
    let mut powers: BTreeMap<Expr, Number> = BTreeMap::new();
    let mut stack = factors;
    stack.reverse();
    while let Some(f) = stack.pop() {
        match f.kind() {
            ExprKind::Const(n) => {
                if n.is_zero() {
                    return Expr::int(0);
                }
                coeff = coeff.mul(n);
            }
            ExprKind::Product(inner) => stack.extend(inner.iter().rev().cloned()),
            _ => {
                let (base, exp) = split_power(&f);
                let entry = powers.entry(base).or_insert_with(|| Number::int(0));
                *entry = entry.add(&exp);
            }
        }
    }

    let mut merged: Vec<Expr> = Vec::with_capacity(powers.len() + 1);
    for (base, exp) in powers {
        if exp.is_zero() {
            continue;
        }
        merged.push(Expr::pow(base, exp));
    }
    if !coeff.is_one() || merged.is_empty() {
        merged.push(Expr::num(coeff));
    }

    // Phase 2: expand. Sum factors (including small positive integer
    // powers of sums) distribute; everything else multiplies through.
    let mut expansion_size: usize = 1;
    let mut distributable = true;
    for f in &merged {
        let weight = match f.kind() {
            ExprKind::Sum(ts) => ts.len(),
            ExprKind::Pow(b, e) => match (b.kind(), e.as_integer()) {
                (ExprKind::Sum(ts), Some(k)) if (2..=POW_EXPANSION_LIMIT).contains(&k) => {
                    ts.len().checked_pow(k as u32).unwrap_or(usize::MAX)
                }
                _ => 1,
            },
            _ => 1,
        };
        expansion_size = expansion_size.saturating_mul(weight);
        if expansion_size > EXPANSION_TERM_BUDGET {
            distributable = false;
            break;
        }
    }
    if !distributable || expansion_size == 1 {
        return Expr::product(merged);
    }

    let mut terms: Vec<Vec<Expr>> = vec![Vec::new()];
    for f in &merged {
        let summands: Option<(&[Expr], usize)> = match f.kind() {
            ExprKind::Sum(ts) => Some((ts, 1)),
            ExprKind::Pow(b, e) => match (b.kind(), e.as_integer()) {
                (ExprKind::Sum(ts), Some(k)) if (2..=POW_EXPANSION_LIMIT).contains(&k) => {
                    Some((ts, k as usize))
                }
                _ => None,
            },
            _ => None,
        };
        match summands {
            Some((ts, copies)) => {
                for _ in 0..copies {
                    let mut next = Vec::with_capacity(terms.len() * ts.len());
                    for term in &terms {
                        for s in ts {
                            let mut t = term.clone();
                            t.push(s.clone());
                            next.push(t);
                        }
                    }
                    terms = next;
                }
            }
            None => {
                for term in &mut terms {
                    term.push(f.clone());
                }
            }
        }
    }

    let built: Vec<Expr> = terms
        .into_iter()
        .map(|fs| simplify_product_no_expand(fs))
        .collect();
    collect_sum(built)
}

/// Exponent merging only — used for the per-term cleanup after a
/// distribution, where no sum factors remain at the top level.
fn simplify_product_no_expand(factors: Vec<Expr>) -> Expr {
    let mut coeff = Number::int(1);
    let mut powers: BTreeMap<Expr, Number> = BTreeMap::new();
    let mut stack = factors;
    stack.reverse();
    while let Some(f) = stack.pop() {
        match f.kind() {
            ExprKind::Const(n) => {
                if n.is_zero() {
                    return Expr::int(0);
                }
                coeff = coeff.mul(n);
            }
            ExprKind::Product(inner) => stack.extend(inner.iter().rev().cloned()),
            _ => {
                let (base, exp) = split_power(&f);
                let entry = powers.entry(base).or_insert_with(|| Number::int(0));
                *entry = entry.add(&exp);
            }
        }
    }
    let mut out: Vec<Expr> = Vec::with_capacity(powers.len() + 1);
    for (base, exp) in powers {
        if exp.is_zero() {
            continue;
        }
        out.push(Expr::pow(base, exp));
    }
    out.push(Expr::num(coeff));
    Expr::product(out)
}

/// Collect structurally identical monomials by summing their exact
/// coefficients, then apply the Pythagorean pair reduction.
fn collect_sum(terms: Vec<Expr>) -> Expr {
    let mut constant = Number::int(0);
    let mut monomials: BTreeMap<Expr, Number> = BTreeMap::new();
    let mut stack = terms;
    stack.reverse();
    while let Some(t) = stack.pop() {
        match t.kind() {
            ExprKind::Sum(inner) => stack.extend(inner.iter().rev().cloned()),
            ExprKind::Const(n) => constant = constant.add(n),
            _ => {
                let (c, m) = split_coefficient(&t);
                if m.is_one() {
                    constant = constant.add(&c);
                } else {
                    let entry = monomials.entry(m).or_insert_with(|| Number::int(0));
                    *entry = entry.add(&c);
                }
            }
        }
    }
    monomials.retain(|_, c| !c.is_zero());

    reduce_trig_pairs(&mut monomials, &mut constant);

    let mut out: Vec<Expr> = Vec::with_capacity(monomials.len() + 1);
    for (m, c) in monomials {
        if c.is_one() {
            out.push(m);
        } else {
            out.push(Expr::product(vec![Expr::num(c), m]));
        }
    }
    if !constant.is_zero() || out.is_empty() {
        out.push(Expr::num(constant));
    }
    Expr::sum(out)
}

/// Replace `c·sin²(u)·Q + c·cos²(u)·Q` with `c·Q` wherever both partners
/// are present with the same coefficient.
fn reduce_trig_pairs(monomials: &mut BTreeMap<Expr, Number>, constant: &mut Number) {
    loop {
        let mut found: Option<(Expr, Expr, Option<Expr>, Number)> = None;
        'search: for (m, c) in monomials.iter() {
            let factors: Vec<Expr> = match m.kind() {
                ExprKind::Product(fs) => fs.clone(),
                _ => vec![m.clone()],
            };
            for (i, f) in factors.iter().enumerate() {
                let ExprKind::Pow(base, e) = f.kind() else {
                    continue;
                };
                if e.as_integer() != Some(2) {
                    continue;
                }
                let ExprKind::Sin(u) = base.kind() else {
                    continue;
                };
                let cos_sq = Expr::pow(Expr::cos(u.clone()), Number::int(2));
                let mut partner_factors = factors.clone();
                partner_factors[i] = cos_sq;
                let partner = Expr::product(partner_factors);
                if let Some(pc) = monomials.get(&partner) {
                    if pc == c {
                        let mut residual = factors.clone();
                        residual.remove(i);
                        let q = if residual.is_empty() {
                            None
                        } else {
                            Some(Expr::product(residual))
                        };
                        found = Some((m.clone(), partner, q, *c));
                        break 'search;
                    }
                }
            }
        }
        let Some((m, partner, q, c)) = found else {
            return;
        };
        monomials.remove(&m);
        monomials.remove(&partner);
        let (qc, qm) = split_coefficient(&q.unwrap_or_else(|| Expr::int(1)));
        let total = c.mul(&qc);
        if qm.is_one() {
            *constant = constant.add(&total);
        } else {
            let entry = monomials.entry(qm.clone()).or_insert_with(|| Number::int(0));
            *entry = entry.add(&total);
            if entry.is_zero() {
                monomials.remove(&qm);
            }
        }
    }
}
