//! `sum_{lambda in H_M} (q^2)^{theta (delta, lambda - 2 |lambda|_H p^dag)}`, directly
//! and split along the diagonal into two halves with linear exponents.

use crate::{BoundsError, Result};
use qe_polytope::{brute_sum, CompiledPolytope, ComplexExp, Schedule};
use qe_weyl::NamedPolytope2D;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FinalSumParams {
    pub q: u32,
    pub theta: f64,
    pub m: i64,
}

impl FinalSumParams {
    pub fn new(q: u32, theta: f64, m: i64) -> Result<Self> {
        if q < 2 {
            return Err(BoundsError::InvalidParam(format!("q must be at least 2, got {q}")));
        }
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(BoundsError::InvalidParam(format!("theta must lie in (0, 1], got {theta}")));
        }
        if m < 1 {
            return Err(BoundsError::InvalidParam(format!("M must be at least 1, got {m}")));
        }
        Ok(FinalSumParams { q, theta, m })
    }
}

/// `beta_{r<=s} = (1/3, -1/3)`: on `r <= s` the exponent equals `theta (lambda, beta_{r<=s})`.
pub const BETA_LE: [f64; 2] = [1.0 / 3.0, -1.0 / 3.0];
/// `beta_{r>=s} = (-1/3, 1/3)`.
pub const BETA_GE: [f64; 2] = [-1.0 / 3.0, 1.0 / 3.0];

/// `3 (delta, lambda - 2 |lambda|_H p^dag) = 3(r + s) - 2 max(2r + s, r + 2s)`.
fn tripled_exponent(r: i64, s: i64) -> i64 {
    3 * (r + s) - 2 * (2 * r + s).max(r + 2 * s)
}

/// Direct summation over the lattice points of `H_M`.
pub fn final_sum(q: u32, theta: f64, m: i64) -> Result<f64> {
    let p = FinalSumParams::new(q, theta, m)?;
    let l = 2.0 * (q as f64).ln() * p.theta / 3.0;
    let rows = qe_par::map_range(3 * m as usize + 1, |r| {
        let r = r as i64;
        let mut acc = 0.0;
        let mut s = 0;
        while (2 * r + s).max(r + 2 * s) <= 6 * m {
            acc += (l * tripled_exponent(r, s) as f64).exp();
            s += 1;
        }
        acc
    });
    Ok(rows.iter().sum())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SplitSum {
    pub le_brion: f64,
    pub ge_brion: f64,
    pub le_brute: f64,
    pub ge_brute: f64,
    /// The `2M + 1` diagonal points, each contributing `1`.
    pub overlap: f64,
    /// Largest residual of the degenerate evaluations.
    pub residual: f64,
}

impl SplitSum {
    pub fn brion_total(&self) -> f64 {
        self.le_brion + self.ge_brion - self.overlap
    }

    pub fn brute_total(&self) -> f64 {
        self.le_brute + self.ge_brute - self.overlap
    }
}

fn half_weight(q: u32, theta: f64, beta: [f64; 2]) -> ComplexExp {
    // (q^2)^{theta (lambda, beta)} = q^{(2 theta beta, lambda)}
    ComplexExp::real(q as f64, &[2.0 * theta * beta[0], 2.0 * theta * beta[1]])
}

/// The two halves `H_M ∩ {r <= s}` and `H_M ∩ {r >= s}` with their linear
/// exponents, each by the degenerate Brion formula (the diagonal edge is
/// orthogonal to `beta`) and by direct summation.
pub fn final_sum_split(q: u32, theta: f64, m: i64) -> Result<SplitSum> {
    let p = FinalSumParams::new(q, theta, m)?;
    let mut out = [(0.0, 0.0, 0.0); 2];
    for (i, (poly, beta)) in [(NamedPolytope2D::HrLEs, BETA_LE), (NamedPolytope2D::HrGEs, BETA_GE)]
        .into_iter()
        .enumerate()
    {
        let lp = poly.dilate(p.m);
        let w = half_weight(p.q, p.theta, beta);
        let d = CompiledPolytope::new(&lp)?.degenerate(&w, None, Schedule::default())?;
        let b = brute_sum(&lp, &w)?;
        out[i] = (d.value.re, b.re, d.residual);
    }
    Ok(SplitSum {
        le_brion: out[0].0,
        ge_brion: out[1].0,
        le_brute: out[0].1,
        ge_brute: out[1].1,
        overlap: (2 * p.m + 1) as f64,
        residual: out[0].2.max(out[1].2),
    })
}

/// `final_sum(q, theta, M) / M` for each `M`.
pub fn normalized_final_sums(q: u32, theta: f64, ms: &[i64]) -> Result<Vec<f64>> {
    ms.iter().map(|&m| Ok(final_sum(q, theta, m)? / m as f64)).collect()
}
