//! The homogeneous cone of coordinates attaining the dominating value, and the
//! analogous cone for balls shaped by `H` instead of `P`.

use crate::triples::{triple_inequalities, BetaFunctional};
use crate::{Direction, Result};
use qe_polytope::{extreme_rays, Q};
use serde::Serialize;

/// Coordinates `(m, r, s, a_1, a_2, k, b_1, b_2)`.
pub type Point8 = [i64; 8];

pub const U1: Point8 = [1, 2, 2, 2, 0, 0, 0, 0];
pub const U2: Point8 = [1, 0, 0, 0, 0, 0, 2, 0];

/// Rows `a` of the homogeneous system `a . x <= 0` in coordinates `(m, r, s, ...)`.
fn homogenize(rows: &[([i64; 5], i64)], cuts: impl Fn(i64, i64, i64) -> Vec<([i64; 5], i64)>) -> Vec<Point8> {
    // the right-hand sides are linear in (m, r, s); read their coefficients off unit vectors
    let units = [cuts(1, 0, 0), cuts(0, 1, 0), cuts(0, 0, 1)];
    rows.iter()
        .enumerate()
        .map(|(i, (a, _))| {
            let mut row = [0i64; 8];
            for (j, u) in units.iter().enumerate() {
                row[j] = -u[i].1;
            }
            row[3..].copy_from_slice(a);
            row
        })
        .collect()
}

/// Nonnegativity of `(m, r, s)` and `d(x, y) in c H_m`.
fn common_rows(c: i64) -> Vec<Point8> {
    let mut rows: Vec<Point8> = (0..3)
        .map(|i| {
            let mut r = [0i64; 8];
            r[i] = -1;
            r
        })
        .collect();
    rows.push([-6 * c, 1, 2, 0, 0, 0, 0, 0]);
    rows.push([-6 * c, 2, 1, 0, 0, 0, 0, 0]);
    rows
}

/// The system for `P`-shaped balls together with the reversed dominating inequality.
pub fn dominating_system(alpha: Direction) -> Vec<Point8> {
    let base = triple_inequalities(alpha, 0, 0, 0);
    let mut rows = common_rows(1);
    rows.extend(homogenize(&base, |m, r, s| triple_inequalities(alpha, m, r, s)));
    // k + 2 b_1 + 2 b_2 >= 4m - r - s
    rows.push([4, -1, -1, 0, 0, -1, -2, -2]);
    rows
}

fn holds(rows: &[Point8], x: &Point8) -> bool {
    rows.iter().all(|a| a.iter().zip(x).map(|(u, v)| u * v).sum::<i64>() <= 0)
}

fn to_q(rows: &[Point8]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect()
}

/// Nonnegative coefficients `(c_1, c_2)`, doubled, with `x = c_1 u_1 + c_2 u_2`.
fn decompose(x: &Point8) -> Option<(i64, i64)> {
    let (c1, c2) = (x[1], x[6]);
    let ok = c1 >= 0 && c2 >= 0 && (0..8).all(|i| 2 * x[i] == c1 * U1[i] + c2 * U2[i]);
    ok.then_some((c1, c2))
}

/// Integer points of the system with `m + r + s <= total`.
fn integer_points(rows: &[Point8], total: i64, k_max: impl Fn(i64, i64, i64) -> i64) -> Vec<Point8> {
    let mut out = Vec::new();
    for m in 0..=total {
        for r in 0..=total - m {
            for s in 0..=total - m - r {
                let km = k_max(m, r, s);
                for a1 in 0..=r {
                    for a2 in 0..=s {
                        for k in 0..=km {
                            for b1 in 0..=6 * m {
                                for b2 in 0..=6 * m {
                                    let x = [m, r, s, a1, a2, k, b1, b2];
                                    if holds(rows, &x) {
                                        out.push(x);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DominatingReport {
    pub alpha: Direction,
    pub rays: Vec<Vec<i64>>,
    pub expected: Vec<Vec<i64>>,
    pub rays_match: bool,
    pub total: i64,
    pub points_checked: usize,
    /// Integer solutions that are not nonnegative combinations of `u_1, u_2`.
    pub failures: Vec<Point8>,
}

impl DominatingReport {
    pub fn pass(&self) -> bool {
        self.rays_match && self.failures.is_empty()
    }
}

/// Extreme rays of the dominating cone and the brute-force check of its
/// integer points with `m + r + s <= 6`.
pub fn dominating_cone_check(alpha: Direction) -> Result<DominatingReport> {
    dominating_cone_check_upto(alpha, 6)
}

pub fn dominating_cone_check_upto(alpha: Direction, total: i64) -> Result<DominatingReport> {
    let rows = dominating_system(alpha);
    let rays = extreme_rays(&to_q(&rows), 8)?;
    let mut expected = vec![U1.to_vec(), U2.to_vec()];
    expected.sort();
    let pts = integer_points(&rows, total, |_, r, s| r.max(s));
    let failures = pts.iter().filter(|x| decompose(x).is_none()).copied().collect();
    Ok(DominatingReport {
        alpha,
        rays_match: rays == expected,
        rays,
        expected,
        total,
        points_checked: pts.len(),
        failures,
    })
}

/// Lattice points of `P_alpha(m, r, s)` attaining `(beta, .) = 2m - r/2 - s/2`.
pub fn equality_points(alpha: Direction, m: i64, r: i64, s: i64) -> Vec<[i64; 5]> {
    let rows = triple_inequalities(alpha, m, r, s);
    let cap = BetaFunctional::doubled_cap(m, r, s);
    box_points(r, s, m, &rows)
        .into_iter()
        .filter(|x| BetaFunctional.doubled(x) == cap)
        .collect()
}

fn box_points(r: i64, s: i64, m: i64, rows: &[([i64; 5], i64)]) -> Vec<[i64; 5]> {
    let mut out = Vec::new();
    for a1 in 0..=r {
        for a2 in 0..=s {
            for k in 0..=r.max(s) {
                for b1 in 0..=6 * m {
                    for b2 in 0..=6 * m {
                        let x = [a1, a2, k, b1, b2];
                        if rows.iter().all(|(a, b)| a.iter().zip(&x).map(|(u, v)| u * v).sum::<i64>() <= *b) {
                            out.push(x);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The reference ray matrix of the `H`-shaped cone for `alpha = (1, 0)`.
pub const H_BALL_RAYS: [Point8; 5] = [
    [1, 0, 0, 0, 0, 0, 2, 2],
    [1, 2, 2, 0, 2, 0, 2, 0],
    [1, 2, 2, 2, 0, 0, 0, 2],
    [1, 6, 0, 2, 0, 2, 0, 0],
    [1, 4, 4, 2, 2, 0, 0, 0],
];

/// Inequalities `a . (a_1, a_2, k, b_1, b_2) <= b` when both balls are `H`-shaped, `alpha = (1, 0)`.
fn h_ball_inequalities(m: i64, r: i64, s: i64) -> Vec<([i64; 5], i64)> {
    vec![
        ([1, 0, 0, 0, 0], r),
        ([0, 1, 0, 0, 0], s),
        ([-1, 0, 0, 0, 0], 0),
        ([0, -1, 0, 0, 0], 0),
        ([0, 0, -1, 0, 0], 0),
        ([0, 0, 0, -1, 0], 0),
        ([0, 0, 0, 0, -1], 0),
        ([1, 0, 1, 0, 0], r),
        // d(x, z) = (a_1 + b_1, a_2 + k + b_2) in H_m
        ([1, 2, 2, 1, 2], 6 * m),
        ([2, 1, 1, 2, 1], 6 * m),
        // d(y, z) = (s - a_2 + k + b_1, r - a_1 - k + b_2) in H_m
        ([-2, -1, -1, 1, 2], 6 * m - s - 2 * r),
        ([-1, -2, 1, 2, 1], 6 * m - 2 * s - r),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct BmRow {
    pub m: i64,
    pub j: i64,
    /// Number of lattice points with `(beta, .) = 4m - r/2 - s/2` at `r = s = 2j`.
    pub maximizers: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HBallReport {
    pub rays: Vec<Vec<i64>>,
    pub reference: Vec<Vec<i64>>,
    pub rays_match: bool,
    /// Whether every ray attains the reversed inequality with equality.
    pub rays_tight: bool,
    pub rows: Vec<BmRow>,
}

/// The cone for `H`-shaped balls with the reversed inequality
/// `k/2 + b_1 + b_2 >= 4m - r/2 - s/2`, and the number of maximizing coordinates
/// at `r = s = 2j`, which grows with `j` instead of staying at one.
pub fn h_ball_report(m_max: i64) -> Result<HBallReport> {
    let base = h_ball_inequalities(0, 0, 0);
    // two H-shaped balls of radius m meet only if d(x, y) lies in 2 H_m
    let mut rows = common_rows(2);
    rows.extend(homogenize(&base, h_ball_inequalities));
    let reversed = [8, -1, -1, 0, 0, -1, -2, -2];
    rows.push(reversed);
    let rays = extreme_rays(&to_q(&rows), 8)?;
    let mut reference: Vec<Vec<i64>> = H_BALL_RAYS.iter().map(|r| r.to_vec()).collect();
    reference.sort();
    let rays_tight = rays
        .iter()
        .all(|r| r.iter().zip(&reversed).map(|(a, b)| a * b).sum::<i64>() == 0);
    let mut table = Vec::new();
    for m in 1..=m_max {
        for j in 0..=2 * m {
            let r = 2 * j;
            let ineqs = h_ball_inequalities(m, r, r);
            let cap = 8 * m - 2 * r;
            let n = box_points(r, r, m, &ineqs)
                .into_iter()
                .filter(|x| BetaFunctional.doubled(x) == cap)
                .count();
            table.push(BmRow { m, j, maximizers: n });
        }
    }
    Ok(HBallReport { rays_match: rays == reference, rays, reference, rays_tight, rows: table })
}
