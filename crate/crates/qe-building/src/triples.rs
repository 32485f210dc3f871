//! Parallelograms, additive and primitive triples, confluence points and
//! the coordinates of a triple relative to its branch line.

use crate::ball::{check_resources, sphere};
use crate::{combinatorial_distance, weyl_distance, BuildingError, BuildingVertex, Result};
use qe_weyl::WeylVector;
use serde::Serialize;
use std::collections::BTreeSet;

/// Vertices lying on some shortest edge path from `x` to `y`.
pub fn geodesic_interval(x: &BuildingVertex, y: &BuildingVertex) -> Result<Vec<BuildingVertex>> {
    let total = combinatorial_distance(x, y);
    check_resources(x.p, total)?;
    let mut all = vec![x.clone()];
    let mut layer = vec![x.clone()];
    for i in 1..=total {
        let mut next = BTreeSet::new();
        for u in &layer {
            for (w, _) in u.neighbors() {
                if combinatorial_distance(&w, y) == total - i {
                    next.insert(w);
                }
            }
        }
        layer = next.into_iter().collect();
        all.extend(layer.iter().cloned());
    }
    all.sort();
    Ok(all)
}

pub fn is_additive_triple(x: &BuildingVertex, y: &BuildingVertex, z: &BuildingVertex) -> bool {
    weyl_distance(x, z).add(&weyl_distance(z, y)) == weyl_distance(x, y)
}

/// `para(x, y)`: all `z` with `d(x, z) + d(z, y) = d(x, y)`, sorted.
pub fn para(x: &BuildingVertex, y: &BuildingVertex) -> Result<Vec<BuildingVertex>> {
    Ok(geodesic_interval(x, y)?.into_iter().filter(|z| is_additive_triple(x, y, z)).collect())
}

fn intersect(a: &[BuildingVertex], b: &[BuildingVertex]) -> Vec<BuildingVertex> {
    let sb: BTreeSet<&BuildingVertex> = b.iter().collect();
    a.iter().filter(|v| sb.contains(v)).cloned().collect()
}

/// `(x, y; z)` is primitive when `para(x, z)` and `para(y, z)` meet only in `z`.
pub fn is_primitive_triple(x: &BuildingVertex, y: &BuildingVertex, z: &BuildingVertex) -> Result<bool> {
    let d = intersect(&para(x, z)?, &para(y, z)?);
    Ok(d.len() == 1)
}

/// Points of `para(x, z) ∩ para(y, z)` closest to `x` (equivalently to `y`), sorted.
pub fn confluence_points(x: &BuildingVertex, y: &BuildingVertex, z: &BuildingVertex) -> Result<Vec<BuildingVertex>> {
    let d = intersect(&para(x, z)?, &para(y, z)?);
    let best = d.iter().map(|w| combinatorial_distance(x, w)).min().expect("z lies in both");
    Ok(d.into_iter().filter(|w| combinatorial_distance(x, w) == best).collect())
}

/// Direction of the branch line relative to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    /// `(1, 0)`.
    First,
    /// `(0, 1)`.
    Second,
}

impl Direction {
    pub fn vector(&self) -> WeylVector {
        match self {
            Direction::First => WeylVector::new(1, 0),
            Direction::Second => WeylVector::new(0, 1),
        }
    }
}

/// `(r, s; a_1, a_2, k, alpha; b_1, b_2)`: `(r, s) = d(x, y)`, `(a_1, a_2) = d(x, w)`
/// for the end `w` of the branch line nearest `x`, `k` its length, `alpha`
/// its direction (`First` when `k = 0`) and `(b_1, b_2) = d(p, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TripleCoords {
    pub r: i64,
    pub s: i64,
    pub a1: i64,
    pub a2: i64,
    pub k: i64,
    pub alpha: Direction,
    pub b1: i64,
    pub b2: i64,
}

impl TripleCoords {
    /// Twice `d(x, c)` for the midpoint `c` of the branch line.
    pub fn doubled_midpoint(&self) -> [i64; 2] {
        let a = self.alpha.vector();
        [2 * self.a1 + self.k * a.r, 2 * self.a2 + self.k * a.s]
    }

    /// Predicted `(d(x, p), d(y, p))` from the midpoint identities, computed in
    /// doubled coordinates and halved at the end.
    pub fn predicted_apex(&self) -> (WeylVector, WeylVector) {
        let k = self.k;
        let c = self.doubled_midpoint();
        // 2 d(y, c) = dual of 2 d(c, y) = dual of 2 (r, s) - 2 d(x, c)
        let cy = [2 * self.r - c[0], 2 * self.s - c[1]];
        let yc = [cy[1], cy[0]];
        let (xp, yp) = match self.alpha {
            Direction::First => ([c[0] - k, c[1] + 2 * k], [yc[0] + 2 * k, yc[1] - k]),
            Direction::Second => ([c[0] + 2 * k, c[1] - k], [yc[0] - k, yc[1] + 2 * k]),
        };
        debug_assert!(xp.iter().chain(yp.iter()).all(|v| v % 2 == 0));
        (WeylVector::new(xp[0] / 2, xp[1] / 2), WeylVector::new(yp[0] / 2, yp[1] / 2))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    /// Lexicographically least confluence point.
    pub confluence: BuildingVertex,
    pub coords: TripleCoords,
    /// Ends `w, w'` of the branch line, `w` nearest `x`.
    pub branch: (BuildingVertex, BuildingVertex),
}

/// Reads off `(a, k, alpha)` from `d(x, y)`, `d(x, p)`, `d(y, p)`.
fn branch_data(xy: WeylVector, xp: WeylVector, yp: WeylVector) -> Option<(i64, i64, i64, Direction)> {
    let k = xp.r + xp.s + yp.r + yp.s - xy.r - xy.s;
    if k < 0 {
        return None;
    }
    let cands = [
        (Direction::First, xp.r, xp.s - k),
        (Direction::Second, xp.r - k, xp.s),
    ];
    for (alpha, a1, a2) in cands {
        if a1 < 0 || a2 < 0 {
            continue;
        }
        let c = TripleCoords { r: xy.r, s: xy.s, a1, a2, k, alpha, b1: 0, b2: 0 };
        if c.predicted_apex() == (xp, yp) {
            return Some((a1, a2, k, alpha));
        }
    }
    None
}

/// Confluence point and coordinates of `(x, y; z)`. The branch line is located
/// inside `para(x, y)` as a straight segment `w w'` of length `k` spanning an
/// equilateral triangle with `p`.
pub fn classify_triple(x: &BuildingVertex, y: &BuildingVertex, z: &BuildingVertex) -> Result<Classification> {
    let p = confluence_points(x, y, z)?.into_iter().next().unwrap();
    let xy = weyl_distance(x, y);
    let xp = weyl_distance(x, &p);
    let yp = weyl_distance(y, &p);
    let pz = weyl_distance(&p, z);
    let fail = |why: &str| BuildingError::Classification(why.to_string());
    let (a1, a2, k, alpha) = branch_data(xy, xp, yp).ok_or_else(|| fail("no branch direction fits"))?;
    let coords = TripleCoords { r: xy.r, s: xy.s, a1, a2, k, alpha, b1: pz.r, b2: pz.s };
    let pxy = para(x, y)?;
    let along = alpha.vector().scale(k);
    // the apex sees w and w' along the two other sides of the triangle
    let (wp, wpp) = match alpha {
        Direction::First => (WeylVector::new(0, k), WeylVector::new(k, 0)),
        Direction::Second => (WeylVector::new(k, 0), WeylVector::new(0, k)),
    };
    for w in pxy.iter().filter(|w| weyl_distance(x, w) == WeylVector::new(a1, a2)) {
        if weyl_distance(w, &p) != wp {
            continue;
        }
        for w2 in pxy.iter().filter(|v| weyl_distance(w, v) == along) {
            if weyl_distance(w2, &p) == wpp && weyl_distance(x, w2) == WeylVector::new(a1, a2).add(&along) {
                return Ok(Classification { confluence: p, coords, branch: (w.clone(), w2.clone()) });
            }
        }
    }
    Err(fail("branch line not found in para(x, y)"))
}

/// Number of vertices `c` forming an equilateral triangle with the straight
/// segment from `a` to `b`, i.e. `d(a, b) = d(b, c) = d(c, a)` (a segment of
/// type `(0, k)` is read from `b`).
pub fn triangle_count(a: &BuildingVertex, b: &BuildingVertex) -> Result<usize> {
    let d = weyl_distance(a, b);
    let (a, b, k) = match (d.r, d.s) {
        (k, 0) if k > 0 => (a, b, k),
        (0, k) if k > 0 => (b, a, k),
        _ => return Err(BuildingError::Classification("not a straight segment".into())),
    };
    let ty = WeylVector::new(k, 0);
    Ok(sphere(a, WeylVector::new(0, k))?.iter().filter(|c| weyl_distance(b, c) == ty).count())
}
