//! The `(q+1)`-regular tree: ball sizes, c-function, `h_m`, `kappa`, the
//! spectral average and its floor over the whole tempered circle.

use crate::{HeckeError, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// `z = q^s`; tempered when `s` is purely imaginary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeSpectralParam {
    pub q: u32,
    pub s: Complex64,
}

impl TreeSpectralParam {
    pub fn new(q: u32, s: Complex64) -> Self {
        TreeSpectralParam { q, s }
    }

    /// `s = i theta`.
    pub fn from_theta(q: u32, theta: f64) -> Self {
        Self::new(q, Complex64::new(0.0, theta))
    }

    pub fn from_z(q: u32, z: Complex64) -> Result<Self> {
        if (z.norm() - 1.0).abs() > 1e-12 {
            return Err(HeckeError::InvalidParam("tree parameter must have modulus 1".into()));
        }
        Ok(Self::from_theta(q, z.arg() / (q as f64).ln()))
    }

    pub fn ln_q(&self) -> f64 {
        (self.q as f64).ln()
    }

    pub fn z(&self) -> Complex64 {
        (self.s * self.ln_q()).exp()
    }

    pub fn neg(&self) -> Self {
        Self::new(self.q, -self.s)
    }
}

/// `card(E_m) = 1 + (q+1)(q^m - 1)/(q - 1)`, the ball of radius `m`.
pub fn tree_card_em(q: u32, m: u32) -> BigInt {
    let qb = BigInt::from(q);
    let qm = num_traits::Pow::pow(&qb, m);
    BigInt::from(1) + (&qb + 1u32) * (qm - 1u32) / (&qb - 1u32)
}

/// `card(E_m) q^{-m}`.
pub fn tree_card_scaled(q: u32, m: u32) -> f64 {
    let qf = q as f64;
    let t = 1.0 / qf;
    t.powi(m as i32) + (qf + 1.0) * (1.0 - t.powi(m as i32)) / (qf - 1.0)
}

/// `c(s) = (z - q^{-1} z^{-1}) / (z - z^{-1})`.
pub fn tree_c(s: &TreeSpectralParam) -> Result<Complex64> {
    let z = s.z();
    let d = z - 1.0 / z;
    if d.norm() <= 1e-9 {
        return Err(HeckeError::Xi1Singular);
    }
    Ok((z - 1.0 / (z * s.q as f64)) / d)
}

/// `kappa(s) = c(s) / (q^{s + 1/2} - 1)`.
pub fn tree_kappa(s: &TreeSpectralParam) -> Result<Complex64> {
    let w = ((s.s + 0.5) * s.ln_q()).exp();
    Ok(tree_c(s)? / (w - 1.0))
}

/// Closed form `h_m = kappa(s)(w^{m+1} - 1) + kappa(-s)(w'^{m+1} - 1) - q^{-1}` with
/// `w = q^{1/2 + s}`, `w' = q^{1/2 - s}`; the last term is the `1/(1+q^{-1})`
/// correction of the `d = 0` summand. Singular at `z = +-1`.
pub fn tree_h_m(s: &TreeSpectralParam, m: u32) -> Result<Complex64> {
    let lq = s.ln_q();
    let w = ((s.s + 0.5) * lq).exp();
    let wn = ((-s.s + 0.5) * lq).exp();
    let e = (m + 1) as i32;
    Ok(tree_kappa(s)? * (w.powi(e) - 1.0) + tree_kappa(&s.neg())? * (wn.powi(e) - 1.0)
        - 1.0 / s.q as f64)
}

/// `h_m q^{-m/2}` for `m = 0..=m_max` from the three-term recurrence
/// `g_{d+1} = g_1 g_d - q g_{d-1}`, `g_2 = g_1^2 - (q+1)`, `g_1 = q^{1/2}(z + 1/z)`.
/// Valid on the whole circle, including `z = +-1`.
pub fn tree_h_scaled(s: &TreeSpectralParam, m_max: u32) -> Vec<Complex64> {
    let q = s.q as f64;
    let z = s.z();
    // normalized g_d q^{-d/2}
    let g1 = z + 1.0 / z;
    let mut out = Vec::with_capacity(m_max as usize + 1);
    let mut h = Complex64::new(1.0, 0.0);
    out.push(h);
    let rq = q.sqrt().recip();
    let (mut prev, mut cur) = (Complex64::new(1.0, 0.0), g1);
    for d in 1..=m_max {
        if d == 2 {
            let g2 = g1 * g1 - (q + 1.0) / q;
            prev = cur;
            cur = g2;
        } else if d > 2 {
            let next = g1 * cur - prev;
            prev = cur;
            cur = next;
        }
        h = h * rq + cur;
        out.push(h);
    }
    out
}

/// `tree_h_scaled` unscaled, for moderate `m`.
pub fn tree_h_m_recurrence(s: &TreeSpectralParam, m: u32) -> Complex64 {
    tree_h_scaled(s, m)[m as usize] * (s.q as f64).powf(m as f64 / 2.0)
}

/// Running `(1/M) sum_{m=1}^M |h_m|^2 / card(E_m)` for `M = 1..=m_max`.
pub fn tree_spectral_averages(s: &TreeSpectralParam, m_max: u32) -> Vec<f64> {
    let h = tree_h_scaled(s, m_max);
    let mut acc = 0.0;
    (1..=m_max)
        .map(|m| {
            acc += h[m as usize].norm_sqr() / tree_card_scaled(s.q, m);
            acc / m as f64
        })
        .collect()
}

pub fn tree_spectral_average(s: &TreeSpectralParam, m: u32) -> f64 {
    *tree_spectral_averages(s, m.max(1)).last().unwrap()
}

/// Limit of `(1/M^2) sum_{m=1}^M h_m(t/M) q^{-m/2}` as `M -> oo` in the normalization
/// `(1 - q^{-1})/(q^{1/2} - 1) ((q^t - 1) + (q^{-t} - 1)) / (2 ln(q)^2 t^2)`.
pub fn tree_rescaled_limit(q: u32, t: Complex64) -> Complex64 {
    let qf = q as f64;
    let lq = qf.ln();
    let pre = (1.0 - 1.0 / qf) / (qf.sqrt() - 1.0);
    if t.norm() < 1e-6 {
        return Complex64::new(pre / 2.0, 0.0);
    }
    let a = (t * lq).exp() - 1.0 + (-t * lq).exp() - 1.0;
    pre * a / (2.0 * lq * lq * t * t)
}

/// Ratio between the ball-normalized sum and the limit's normalization:
/// `q^{m/2} / sqrt(card(E_m)) -> sqrt((q-1)/(q+1))`, and the limit carries `q^{-1/2}`.
pub fn tree_rescale_constant(q: u32) -> f64 {
    let qf = q as f64;
    (qf * (qf - 1.0) / (qf + 1.0)).sqrt()
}

/// `(1/M^2) sum_{m=1}^M h_m(s)/sqrt(card(E_m))` at `s = t/M` (`t` purely
/// imaginary away from zero) or `s = i pi / ln q + t/M`.
pub fn tree_rescaled_direct(q: u32, t: Complex64, m: u32, antipodal: bool) -> Complex64 {
    let base = if antipodal { Complex64::new(0.0, PI / (q as f64).ln()) } else { Complex64::new(0.0, 0.0) };
    let s = TreeSpectralParam::new(q, base + t / m as f64);
    let h = tree_h_scaled(&s, m);
    let sum: Complex64 = (1..=m).map(|k| h[k as usize] / tree_card_scaled(q, k).sqrt()).sum();
    sum / (m as f64 * m as f64)
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeFloorEntry {
    pub m: u32,
    /// Minimum of the spectral average over the circle grid and the rescaled points.
    pub min_average: f64,
    pub argmin_theta: f64,
    /// Minimum of average / M^2 at the rescaled points `s = i tau / M` and `i pi/ln q + i tau/M`.
    pub min_scaled_near_real: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeFloorReport {
    pub q: u32,
    pub grid_n: usize,
    pub entries: Vec<TreeFloorEntry>,
}

/// Floor of the tree spectral average over a midpoint grid of the circle
/// together with `z = +-1` and the rescaled points `tau in [-3, 3]`.
pub fn tree_spectral_floor(q: u32, m_list: &[u32], grid_n: usize) -> TreeFloorReport {
    let p = 2.0 * PI / (q as f64).ln();
    let m_max = m_list.iter().copied().max().unwrap_or(1);
    let mut thetas: Vec<f64> = (0..grid_n).map(|i| (i as f64 + 0.5) * p / grid_n as f64).collect();
    thetas.push(0.0);
    thetas.push(p / 2.0);
    let rows: Vec<Vec<f64>> =
        qe_par::map(&thetas, |&th| tree_spectral_averages(&TreeSpectralParam::from_theta(q, th), m_max));
    let taus: Vec<f64> = (-12..=12).map(|k| k as f64 * 0.25).collect();
    let entries = qe_par::map(m_list, |&m| {
        let (mut best, mut arg) = (f64::INFINITY, 0.0);
        for (k, row) in rows.iter().enumerate() {
            if row[m as usize - 1] < best {
                best = row[m as usize - 1];
                arg = thetas[k];
            }
        }
        let mut scaled = f64::INFINITY;
        for &tau in &taus {
            for base in [0.0, p / 2.0] {
                let th = base + tau / m as f64;
                let v = tree_spectral_average(&TreeSpectralParam::from_theta(q, th), m);
                if v < best {
                    best = v;
                    arg = th;
                }
                scaled = scaled.min(v / (m as f64 * m as f64));
            }
        }
        TreeFloorEntry { m, min_average: best, argmin_theta: arg, min_scaled_near_real: scaled }
    });
    TreeFloorReport { q, grid_n, entries }
}
