//! Intersections of two balls of radius `m` at distance `r` on the
//! `(q+1)`-regular tree. A point `z` gets coordinates `(a, b)`: `a` is the
//! distance from `x` to the projection `p` of `z` on the geodesic `[x, y]`
//! and `b = d(p, z)`.

use crate::{BoundsError, Result};
use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive, Zero};
use qe_polytope::{Inequality, LatticePolytope};
use serde::Serialize;

fn check(m: i64, r: i64) -> Result<()> {
    if m < 0 || r < 0 {
        return Err(BoundsError::InvalidParam(format!("need m, r >= 0, got m={m}, r={r}")));
    }
    if r > 2 * m {
        return Err(BoundsError::Disjoint { m, r });
    }
    Ok(())
}

/// `{(a, b) : a + b <= m, (r - a) + b <= m, 0 <= a <= r, b >= 0}`.
pub fn tree_triple_polytope(m: i64, r: i64) -> LatticePolytope {
    let ineqs = vec![
        Inequality::int(&[-1, 0], 0),
        Inequality::int(&[0, -1], 0),
        Inequality::int(&[1, 0], r),
        Inequality::int(&[1, 1], m),
        Inequality::int(&[-1, 1], m - r),
    ];
    LatticePolytope::new(2, ineqs).expect("well formed")
}

/// `q^b`.
pub fn tree_count_bound(q: u32, _a: i64, b: i64) -> BigInt {
    Pow::pow(&BigInt::from(q), b as u32)
}

/// Exact number of `z` with coordinates `(a, b)` relative to a pair at distance `r`.
pub fn tree_point_count(q: u32, r: i64, a: i64, b: i64) -> BigInt {
    if b == 0 {
        return BigInt::from(1);
    }
    let qb = BigInt::from(q);
    let tail: BigInt = Pow::pow(&qb, (b - 1) as u32);
    let first = if r == 0 {
        // every one of the q + 1 edges at p leaves the (degenerate) geodesic
        q as i64 + 1
    } else if a == 0 || a == r {
        q as i64
    } else {
        q as i64 - 1
    };
    tail * first
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeCountRow {
    pub a: i64,
    pub b: i64,
    pub exact: u64,
    pub bound: u64,
}

/// Per-coordinate counts over the lattice points of the tree polytope.
pub fn tree_count_table(q: u32, m: i64, r: i64) -> Result<Vec<TreeCountRow>> {
    check(m, r)?;
    let mut out = Vec::new();
    for a in 0..=r {
        for b in 0..=(m - a).min(m - r + a) {
            out.push(TreeCountRow {
                a,
                b,
                exact: tree_point_count(q, r, a, b).to_u64().expect("small"),
                bound: tree_count_bound(q, a, b).to_u64().expect("small"),
            });
        }
    }
    Ok(out)
}

/// `card(B_m(x) ∩ B_m(y))` for `d(x, y) = r`, summed over coordinates.
pub fn tree_em_r_exact(q: u32, m: i64, r: i64) -> Result<BigInt> {
    check(m, r)?;
    let mut total = BigInt::zero();
    for a in 0..=r {
        for b in 0..=(m - a).min(m - r + a) {
            total += tree_point_count(q, r, a, b);
        }
    }
    Ok(total)
}

/// `(1 + q^{-1}) / (1 - q^{-1})^2 q^{m - r/2}`.
pub fn tree_em_r_bound(q: u32, m: i64, r: i64) -> Result<f64> {
    check(m, r)?;
    let qf = q as f64;
    let t = 1.0 / qf;
    Ok((1.0 + t) / ((1.0 - t) * (1.0 - t)) * qf.powf(m as f64 - r as f64 / 2.0))
}
