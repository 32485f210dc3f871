//! Tangent cones at vertices, signed simplicial decompositions and their
//! exponential sums.

use crate::error::{PolytopeError, Result};
use crate::linalg::{self, Q};
use crate::polytope::LatticePolytope;
use crate::rays;
use crate::weight::{Value, Weight};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// Upper limit on the lattice box scanned for parallelepiped points.
pub const PP_BOX_LIMIT: u128 = 10_000_000;

/// A simplicial cone `apex + cone(rays)` with its half-open parallelepiped points.
#[derive(Clone, Debug)]
pub struct SimplicialPiece {
    pub sign: i32,
    /// Indices into the parent cone's ray list.
    pub rays: Vec<usize>,
    /// Lattice points of `apex + [0,1) rays` (absolute, working coordinates).
    pub pp: Vec<Vec<i64>>,
}

/// A pointed affine cone together with an inclusion-exclusion decomposition
/// into closed simplicial cones.
#[derive(Clone, Debug)]
pub struct VertexCone {
    /// Apex in working coordinates.
    pub apex: Vec<Q>,
    /// Primitive extreme rays, sorted.
    pub rays: Vec<Vec<i64>>,
    pub pieces: Vec<SimplicialPiece>,
    /// Linear dimension of the cone.
    pub cone_dim: usize,
    /// The apex, when it is a lattice point.
    pub apex_int: Option<Vec<i64>>,
}

fn integral(apex: &[Q]) -> Option<Vec<i64>> {
    apex.iter()
        .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
        .collect()
}

fn rays_q(rays: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<Q>> {
    idx.iter()
        .map(|&i| rays[i].iter().map(|&x| linalg::q(x)).collect())
        .collect()
}

fn row_dot(a: &[Q], r: &[i64]) -> Q {
    linalg::dot_int(a, r)
}

/// Pulling triangulation of the face spanned by `set`, valid when `rows` cut out the cone.
fn triangulate(set: &[usize], rays: &[Vec<i64>], rows: &[Vec<Q>]) -> Vec<Vec<usize>> {
    let d = linalg::rank(&rays_q(rays, set));
    if set.len() == d {
        return vec![set.to_vec()];
    }
    let r0 = set[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in rows {
        let tight: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&i| row_dot(a, &rays[i]).is_zero())
            .collect();
        if tight.contains(&r0) || tight.is_empty() {
            continue;
        }
        if linalg::rank(&rays_q(rays, &tight)) == d - 1 {
            facets.insert(tight);
        }
    }
    let mut out = Vec::new();
    for f in facets {
        for mut simplex in triangulate(&f, rays, rows) {
            simplex.push(r0);
            simplex.sort();
            out.push(simplex);
        }
    }
    out
}

/// Lattice points of `apex + sum [0,1) r_i` for linearly independent integer rays.
pub fn parallelepiped_points(apex: &[Q], rays: &[&[i64]]) -> Result<Vec<Vec<i64>>> {
    let d = apex.len();
    let k = rays.len();
    if k == 0 {
        return Ok(if apex.iter().all(|x| x.is_integer()) {
            vec![apex.iter().map(|x| x.to_integer().to_i64().unwrap()).collect()]
        } else {
            Vec::new()
        });
    }
    // coordinate rows of the d x k ray matrix
    let coord_rows: Vec<Vec<Q>> = (0..d)
        .map(|j| rays.iter().map(|r| linalg::q(r[j])).collect())
        .collect();
    let piv = linalg::independent_rows(&coord_rows);
    if piv.len() < k {
        return Err(PolytopeError::NotPointed);
    }
    let sub: Vec<Vec<Q>> = piv.iter().map(|&j| coord_rows[j].clone()).collect();
    let inv = linalg::inverse(&sub).expect("independent");
    let den = inv
        .iter()
        .flatten()
        .chain(apex.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let dq = Q::from_integer(den.clone());
    let to128 = |x: &Q| -> Result<i128> { x.to_integer().to_i128().ok_or(PolytopeError::Overflow) };
    let n: Vec<Vec<i128>> = inv
        .iter()
        .map(|row| row.iter().map(|x| to128(&(x * &dq))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let w: Vec<i128> = apex.iter().map(|x| to128(&(x * &dq))).collect::<Result<_>>()?;
    let dd = den.to_i128().ok_or(PolytopeError::Overflow)?;
    let d2 = dd.checked_mul(dd).ok_or(PolytopeError::Overflow)?;

    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    let mut volume: u128 = 1;
    for j in 0..d {
        let mut a = apex[j].clone();
        let mut b = apex[j].clone();
        for r in rays {
            let x = linalg::q(r[j]);
            if x.is_negative() {
                a += x;
            } else {
                b += x;
            }
        }
        lo[j] = a.ceil().to_integer().to_i64().ok_or(PolytopeError::Overflow)?;
        hi[j] = b.floor().to_integer().to_i64().ok_or(PolytopeError::Overflow)?;
        if hi[j] < lo[j] {
            return Ok(Vec::new());
        }
        volume = volume.saturating_mul((hi[j] - lo[j] + 1) as u128);
    }
    if volume > PP_BOX_LIMIT {
        return Err(PolytopeError::TooLarge(volume));
    }
    let non_piv: Vec<usize> = (0..d).filter(|j| !piv.contains(j)).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let y: Vec<i128> = piv.iter().map(|&j| x[j] as i128 * dd - w[j]).collect();
        let num: Vec<i128> = n
            .iter()
            .map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum())
            .collect();
        if num.iter().all(|&v| v >= 0 && v < d2)
            && non_piv.iter().all(|&j| {
                let lhs = dd * (x[j] as i128 * dd - w[j]);
                let rhs: i128 = rays.iter().zip(&num).map(|(r, &v)| r[j] as i128 * v).sum();
                lhs == rhs
            })
        {
            out.push(x.clone());
        }
        let mut j = 0;
        loop {
            if j == d {
                out.sort();
                return Ok(out);
            }
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j];
            j += 1;
        }
    }
}

impl VertexCone {
    /// The cone `apex + {x : a x <= 0 for a in rows}` (working coordinates).
    pub fn from_constraints(apex: Vec<Q>, rows: &[Vec<Q>]) -> Result<Self> {
        let d = apex.len();
        let rays = rays::extreme_rays(rows, d)?;
        let all: Vec<usize> = (0..rays.len()).collect();
        let cone_dim = linalg::rank(&rays_q(&rays, &all));
        let simplices = if rays.is_empty() { vec![Vec::new()] } else { triangulate(&all, &rays, rows) };

        // closed faces of the triangulation, with Euler-characteristic signs
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in &simplices {
            for mask in 0u32..(1u32 << s.len()) {
                let f: Vec<usize> = (0..s.len()).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect();
                faces.insert(f);
            }
        }
        let active: Vec<&Vec<Q>> = rows
            .iter()
            .filter(|a| rays.iter().any(|r| !row_dot(a, r).is_zero()))
            .collect();
        let mut pieces = Vec::new();
        for f in faces {
            let on_boundary = active
                .iter()
                .any(|a| f.iter().all(|&i| row_dot(a, &rays[i]).is_zero()));
            if on_boundary {
                continue;
            }
            let sign = if (cone_dim - f.len()).is_multiple_of(2) { 1 } else { -1 };
            let rr: Vec<&[i64]> = f.iter().map(|&i| rays[i].as_slice()).collect();
            let pp = parallelepiped_points(&apex, &rr)?;
            pieces.push(SimplicialPiece { sign, rays: f, pp });
        }
        let apex_int = integral(&apex);
        Ok(VertexCone { apex, rays, pieces, cone_dim, apex_int })
    }

    /// A simplicial cone with explicitly given independent generators.
    pub fn from_rays(apex: Vec<Q>, rays: Vec<Vec<i64>>) -> Result<Self> {
        let all: Vec<usize> = (0..rays.len()).collect();
        let cone_dim = linalg::rank(&rays_q(&rays, &all));
        if cone_dim != rays.len() {
            return Err(PolytopeError::NotPointed);
        }
        let rr: Vec<&[i64]> = rays.iter().map(|r| r.as_slice()).collect();
        let pp = parallelepiped_points(&apex, &rr)?;
        Ok(VertexCone {
            apex_int: integral(&apex),
            apex,
            pieces: vec![SimplicialPiece { sign: 1, rays: all, pp }],
            rays,
            cone_dim,
        })
    }

    /// `sum over lattice points gamma of the cone of q^{(alpha, gamma)}`, as the
    /// meromorphic continuation `sum_PP q^(alpha,p) / prod (1 - q^(alpha,r))`.
    pub fn sigma<W: Weight>(&self, w: &W) -> Result<W::V> {
        self.sigma_shifted(w, &[])
    }

    /// As [`sigma`](Self::sigma) with all lattice points translated by `offset`
    /// (an empty slice means no translation).
    pub fn sigma_shifted<W: Weight>(&self, w: &W, offset: &[i64]) -> Result<W::V> {
        let ray_vals: Vec<W::V> = self.rays.iter().map(|r| w.ray(r)).collect();
        for (r, v) in self.rays.iter().zip(&ray_vals) {
            if w.is_pole(v) {
                return Err(PolytopeError::Pole(r.clone()));
            }
        }
        let mut total = W::V::zero();
        let mut buf = vec![0i64; self.apex.len()];
        for piece in &self.pieces {
            let mut num = W::V::zero();
            for p in &piece.pp {
                let x: &[i64] = if offset.is_empty() {
                    p
                } else {
                    for (b, (a, o)) in buf.iter_mut().zip(p.iter().zip(offset)) {
                        *b = a + o;
                    }
                    &buf
                };
                num = num + w.point(x);
            }
            let den = piece
                .rays
                .iter()
                .fold(W::V::one(), |acc, &i| acc * (W::V::one() - ray_vals[i].clone()));
            let term = num / den;
            total = if piece.sign > 0 { total + term } else { total - term };
        }
        Ok(total)
    }

    /// Signed values of the individual simplicial pieces (their sum is `sigma`).
    pub fn piece_values<W: Weight>(&self, w: &W) -> Result<Vec<W::V>> {
        let ray_vals: Vec<W::V> = self.rays.iter().map(|r| w.ray(r)).collect();
        for (r, v) in self.rays.iter().zip(&ray_vals) {
            if w.is_pole(v) {
                return Err(PolytopeError::Pole(r.clone()));
            }
        }
        Ok(self
            .pieces
            .iter()
            .map(|piece| {
                let num = piece.pp.iter().fold(W::V::zero(), |acc, p| acc + w.point(p));
                let den = piece
                    .rays
                    .iter()
                    .fold(W::V::one(), |acc, &i| acc * (W::V::one() - ray_vals[i].clone()));
                let t = num / den;
                if piece.sign > 0 {
                    t
                } else {
                    W::V::zero() - t
                }
            })
            .collect())
    }

    /// Whether `(beta, r) <= 0` (or `< 0` if `strict`) for every ray.
    pub fn polar_contains(&self, beta: &[Q], strict: bool) -> bool {
        self.rays.iter().all(|r| {
            let v = row_dot(beta, r);
            if strict {
                v.is_negative()
            } else {
                !v.is_positive()
            }
        })
    }
}

/// The tangent cone of `poly` at vertex `v` (given in original coordinates).
pub fn cone_at(poly: &LatticePolytope, v: &[Q]) -> Result<VertexCone> {
    if v.len() != poly.dim() {
        return Err(PolytopeError::Dimension { expected: poly.dim(), got: v.len() });
    }
    if !poly.contains(v) {
        return Err(PolytopeError::NotAVertex);
    }
    let rows: Vec<Vec<Q>> = poly
        .inequalities()
        .iter()
        .filter(|i| i.is_tight(v))
        .map(|i| i.a.clone())
        .collect();
    if linalg::rank(&rows) < poly.dim() {
        return Err(PolytopeError::NotAVertex);
    }
    let l = linalg::q(poly.lattice_denominator());
    let apex: Vec<Q> = v.iter().map(|x| x * &l).collect();
    VertexCone::from_constraints(apex, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::weight::RationalExp;

    #[test]
    fn pp_of_det2_cone() {
        let pts = parallelepiped_points(&[q(0), q(0)], &[&[0, -1], &[2, -1]]).unwrap();
        assert_eq!(pts, vec![vec![0, 0], vec![1, -1]]);
    }

    #[test]
    fn lower_dimensional_pp() {
        // ray (2,2) in the plane: only the apex
        let pts = parallelepiped_points(&[q(0), q(0)], &[&[1, 1]]).unwrap();
        assert_eq!(pts, vec![vec![0, 0]]);
    }

    #[test]
    fn square_pyramid_cone_counts() {
        let rows = vec![
            vec![q(1), q(0), q(-1)],
            vec![q(-1), q(0), q(-1)],
            vec![q(0), q(1), q(-1)],
            vec![q(0), q(-1), q(-1)],
        ];
        let c = VertexCone::from_constraints(vec![q(0), q(0), q(0)], &rows).unwrap();
        assert_eq!(c.rays.len(), 4);
        // with weight 2^{-z}, sum over the cone = sum_h (2h+1)^2 2^{-h}
        let w = RationalExp::new(Q::new(1.into(), 2.into()), vec![0, 0, 1]);
        let s = c.sigma(&w).unwrap();
        let expect: f64 = (0..200).map(|h| ((2 * h + 1) as f64).powi(2) * 0.5f64.powi(h)).sum();
        assert!((s.to_f64().unwrap() - expect).abs() < 1e-9);
    }
}
