//! Exponential sums over lattice polytopes: Brion's vertex-cone formula, its
//! perturbative degenerate version, and direct summation.

use crate::cone::{cone_at, VertexCone};
use crate::error::{PolytopeError, Result};
use crate::linalg::Q;
use crate::polytope::LatticePolytope;
use crate::weight::{ComplexExp, Value, Weight};
use num_complex::Complex64;

/// Box size limit for [`brute_sum`].
pub const BRUTE_BOX_LIMIT: u128 = 100_000_000;

/// A polytope with its vertex cones precomputed.
#[derive(Clone, Debug)]
pub struct CompiledPolytope {
    pub poly: LatticePolytope,
    /// Vertices in original coordinates.
    pub vertices: Vec<Vec<Q>>,
    pub cones: Vec<VertexCone>,
}

impl CompiledPolytope {
    pub fn new(poly: &LatticePolytope) -> Result<Self> {
        let vertices = poly.vertices()?;
        let cones = vertices
            .iter()
            .map(|v| cone_at(poly, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(CompiledPolytope { poly: poly.clone(), vertices, cones })
    }

    /// All edge directions (extreme rays of the vertex cones).
    pub fn edge_directions(&self) -> Vec<Vec<i64>> {
        let mut e: Vec<Vec<i64>> = self.cones.iter().flat_map(|c| c.rays.iter().cloned()).collect();
        e.sort();
        e.dedup();
        e
    }

    fn check_edges<W: Weight>(&self, w: &W) -> Result<()> {
        for r in self.edge_directions() {
            if w.is_pole(&w.ray(&r)) {
                return Err(PolytopeError::Degenerate(r));
            }
        }
        Ok(())
    }

    /// Brion's formula for the compiled polytope.
    pub fn brion<W: Weight>(&self, w: &W) -> Result<W::V> {
        let w = w.scaled(self.poly.lattice_denominator())?;
        self.check_edges(&w)?;
        let mut total = W::V::zero();
        for c in &self.cones {
            total = total + c.sigma(&w)?;
        }
        Ok(total)
    }

    /// Brion's formula for the dilate `m Q`, reusing the cones of `Q`.
    /// Requires the working vertices of `Q` to be integral (`NonIntegralVertex` otherwise).
    pub fn brion_dilate<W: Weight>(&self, m: i64, w: &W) -> Result<W::V> {
        let w = w.scaled(self.poly.lattice_denominator())?;
        self.check_edges(&w)?;
        let mut total = W::V::zero();
        for c in &self.cones {
            let apex = c.apex_int.as_ref().ok_or(PolytopeError::NonIntegralVertex)?;
            let off: Vec<i64> = apex
                .iter()
                .map(|v| v.checked_mul(m - 1).ok_or(PolytopeError::Overflow))
                .collect::<Result<_>>()?;
            total = total + c.sigma_shifted(&w, &off)?;
        }
        Ok(total)
    }

    /// A perturbation direction with `|(tau, e)| >= 0.1 |tau| |e|` for every edge `e`
    /// when one exists among a fixed deterministic candidate list, normalized so
    /// that `min |(tau, e)|` over edge directions is 1 (working coordinates).
    pub fn default_tau(&self) -> Vec<f64> {
        let d = self.poly.dim();
        let edges = self.edge_directions();
        let score = |t: &[f64]| -> f64 {
            let nt = t.iter().map(|x| x * x).sum::<f64>().sqrt();
            edges
                .iter()
                .map(|e| {
                    let ne = e.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
                    let dp: f64 = t.iter().zip(e).map(|(a, &b)| a * b as f64).sum();
                    dp.abs() / (nt * ne)
                })
                .fold(f64::INFINITY, f64::min)
        };
        let mut best: (f64, Vec<f64>) = (-1.0, vec![1.0; d]);
        for c in 0..256 {
            let t: Vec<f64> = (0..d)
                .map(|i| (((i + 1) * (c + 1)) as f64 * 0.754_877_666_246_692_7 + 0.5 * i as f64).fract() * 2.0 - 1.0)
                .collect();
            let s = score(&t);
            if s > best.0 {
                best = (s, t);
            }
            if s >= 0.1 {
                break;
            }
        }
        let mut t = best.1;
        // unit scale at the nearest pole: min over edges of |(tau, e)| = 1
        let m = edges
            .iter()
            .map(|e| t.iter().zip(e).map(|(a, &b)| a * b as f64).sum::<f64>().abs())
            .fold(f64::INFINITY, f64::min);
        if m.is_finite() && m > 0.0 {
            for x in t.iter_mut() {
                *x /= m;
            }
        }
        t
    }

    /// Limit of the Brion sum at `alpha + eps tau` as `eps -> 0`.
    pub fn degenerate(&self, w: &ComplexExp, tau: Option<&[f64]>, sched: Schedule) -> Result<Degenerate> {
        if self.edge_directions().is_empty() {
            return Ok(Degenerate { value: self.brion(w)?, residual: 0.0, evaluations: 1 });
        }
        let tau_own;
        let tau = match tau {
            Some(t) => t,
            None => {
                tau_own = self.default_tau();
                &tau_own
            }
        };
        // tau is given in working coordinates; move it to original coordinates
        let l = self.poly.lattice_denominator() as f64;
        // value and sum of absolute piece values (for the rounding-noise estimate)
        let eval = |eps: f64| -> Result<(Complex64, f64)> {
            let mut p = w.clone();
            for (a, t) in p.alpha.iter_mut().zip(tau) {
                *a += Complex64::new(eps * t * l / w.ln_q, 0.0);
            }
            let p = p.scaled(self.poly.lattice_denominator())?;
            self.check_edges(&p)?;
            let mut v = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for c in &self.cones {
                for t in c.piece_values(&p)? {
                    v += t;
                    mag += t.norm();
                }
            }
            Ok((v, mag))
        };
        let mut table: Vec<Vec<Complex64>> = Vec::new();
        let mut noise: Vec<f64> = Vec::new();
        let mut best: Option<(f64, Complex64)> = None;
        for k in 0..=sched.steps {
            let eps = sched.eps0 / f64::powi(2.0, k as i32);
            let (fp, mp) = eval(eps)?;
            let (fm, mm) = eval(-eps)?;
            let f = (fp + fm) * 0.5;
            noise.push(2.0 * f64::EPSILON * mp.max(mm));
            let mut row = vec![f];
            for j in 1..=k {
                let prev = &table[k - 1];
                let r = row[j - 1] + (row[j - 1] - prev[j - 1]) / (f64::powi(4.0, j as i32) - 1.0);
                row.push(r);
            }
            for j in 1..=k {
                let step = (row[j] - row[j - 1]).norm();
                let rounding = noise[k - j..=k].iter().cloned().fold(0.0, f64::max) * 1.5;
                let scale = row[j].norm().max(1.0);
                let est = (step + rounding) / scale;
                if best.is_none_or(|(b, _)| est < b) {
                    best = Some((est, row[j]));
                }
            }
            table.push(row);
        }
        let (residual, value) = best.expect("at least two steps");
        if residual > sched.tolerance {
            return Err(PolytopeError::NonConvergent(residual));
        }
        Ok(Degenerate { value, residual, evaluations: 2 * (sched.steps + 1) })
    }
}

/// Perturbation schedule `eps_k = eps0 / 2^k`, `k = 0..=steps`.
#[derive(Clone, Copy, Debug)]
pub struct Schedule {
    pub eps0: f64,
    pub steps: usize,
    pub tolerance: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { eps0: 1e-2, steps: 20, tolerance: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Degenerate {
    pub value: Complex64,
    /// Relative size of the last accepted extrapolation correction.
    pub residual: f64,
    pub evaluations: usize,
}

/// `sum_v sigma(Cone_Q(v); alpha)`; fails with `Degenerate` if an edge direction
/// is a pole of the weight.
pub fn brion_sum<W: Weight>(poly: &LatticePolytope, w: &W) -> Result<W::V> {
    CompiledPolytope::new(poly)?.brion(w)
}

/// Limit of the perturbed Brion sum; `tau` in working lattice coordinates.
pub fn degenerate_brion(
    poly: &LatticePolytope,
    w: &ComplexExp,
    tau: Option<&[f64]>,
    sched: Schedule,
) -> Result<Complex64> {
    Ok(CompiledPolytope::new(poly)?.degenerate(w, tau, sched)?.value)
}

/// Visits every lattice point of `poly` (working coordinates), in parallel over
/// slabs of the first coordinate, and sums the per-slab results.
fn for_lattice_points<R, F, G>(poly: &LatticePolytope, f: F, zero: G) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(&mut R, &[i64]) + Sync + Send,
    G: Fn() -> R + Sync + Send,
{
    let bx = match poly.working_box() {
        Ok(b) => b,
        Err(PolytopeError::Empty) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let d = poly.dim();
    if d == 0 {
        let mut r = zero();
        f(&mut r, &[]);
        return Ok(vec![r]);
    }
    let vol = bx
        .iter()
        .map(|(a, b)| (b - a + 1).max(0) as u128)
        .fold(1u128, |x, y| x.saturating_mul(y));
    if vol > BRUTE_BOX_LIMIT {
        return Err(PolytopeError::TooLarge(vol));
    }
    let sys = poly.int_system();
    let (lo0, hi0) = bx[0];
    let n = (hi0 - lo0 + 1).max(0) as usize;
    Ok(qe_par::map_range(n, |i| {
        let mut acc = zero();
        let mut x: Vec<i64> = bx.iter().map(|b| b.0).collect();
        x[0] = lo0 + i as i64;
        if bx.iter().any(|(a, b)| a > b) {
            return acc;
        }
        loop {
            if sys.contains(&x) {
                f(&mut acc, &x);
            }
            let mut j = 1;
            loop {
                if j == d {
                    return acc;
                }
                if x[j] < bx[j].1 {
                    x[j] += 1;
                    break;
                }
                x[j] = bx[j].0;
                j += 1;
            }
        }
    }))
}

/// Direct summation of the weight over all lattice points.
pub fn brute_sum<W: Weight>(poly: &LatticePolytope, w: &W) -> Result<W::V> {
    let w = w.scaled(poly.lattice_denominator())?;
    let parts = for_lattice_points(poly, |acc: &mut W::V, x| *acc = acc.clone() + w.point(x), W::V::zero)?;
    Ok(parts.into_iter().fold(W::V::zero(), |a, b| a + b))
}

/// Number of lattice points.
pub fn lattice_count(poly: &LatticePolytope) -> Result<u64> {
    let parts = for_lattice_points(poly, |acc: &mut u64, _| *acc += 1, || 0u64)?;
    Ok(parts.into_iter().sum())
}

/// All lattice points in original coordinates, sorted.
pub fn lattice_points(poly: &LatticePolytope) -> Result<Vec<Vec<Q>>> {
    let l = crate::linalg::q(poly.lattice_denominator());
    let parts = for_lattice_points(
        poly,
        |acc: &mut Vec<Vec<Q>>, x| acc.push(x.iter().map(|&v| crate::linalg::q(v) / &l).collect()),
        Vec::new,
    )?;
    let mut pts: Vec<Vec<Q>> = parts.into_iter().flatten().collect();
    pts.sort();
    Ok(pts)
}
