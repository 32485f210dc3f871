//! Tempered torus, the exceptional locus, the spectral average
//! `(1/M) sum_{m=1}^M |h_m(s)|^2 / card(E_m)` and its floor over a grid.

use crate::nu::card_em_scaled;
use crate::rank2::h_m_brion;
use crate::{HeckeError, Result, SpectralParam};
use serde::Serialize;
use std::f64::consts::PI;

/// Period `2 pi / ln q` of each torus coordinate `theta_j` (`s_j = i theta_j`).
pub fn torus_period(q: u32) -> f64 {
    2.0 * PI / (q as f64).ln()
}

fn circ(x: f64, p: f64) -> f64 {
    let r = x.rem_euclid(p);
    r.min(p - r)
}

/// Max-metric torus distance from `(theta_1, theta_2)` to the lines
/// `theta_i - theta_j = offset` (mod period), for the three pairs `i < j`.
fn lines_distance(q: u32, a: f64, b: f64, offset: f64) -> f64 {
    let p = torus_period(q);
    let d12 = circ(a - b - offset, p) / 2.0;
    let d13 = circ(2.0 * a + b - offset, p) / 3.0;
    let d23 = circ(a + 2.0 * b - offset, p) / 3.0;
    d12.min(d13).min(d23)
}

/// Distance to `Xi_1`, the parameters with some `z_i = z_j`.
pub fn xi1_distance(q: u32, theta1: f64, theta2: f64) -> f64 {
    lines_distance(q, theta1, theta2, 0.0)
}

/// Distance to `Xi_1 u Xi_2`; `Xi_2` adds the lines `z_i = -z_j`.
pub fn xi_distance(q: u32, theta1: f64, theta2: f64) -> f64 {
    let half = torus_period(q) / 2.0;
    xi1_distance(q, theta1, theta2).min(lines_distance(q, theta1, theta2, half))
}

/// Running averages `(1/M) sum_{m=1}^M |h_m|^2/card(E_m)` for every `M` in
/// `1..=m_max`, computed with `h_m q^{-2m}` and `card(E_m) q^{-4m}`.
pub fn spectral_averages(s: &SpectralParam, cards: &[f64]) -> Result<Vec<f64>> {
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(cards.len().saturating_sub(1));
    for (m, c) in cards.iter().enumerate().skip(1) {
        let h = h_m_brion(s, m as i64, true)?;
        acc += h.norm_sqr() / c;
        out.push(acc / m as f64);
    }
    Ok(out)
}

/// `card(E_m) q^{-4m}` for `m = 0..=m_max`.
pub fn scaled_cards(q: u32, m_max: i64) -> Vec<f64> {
    qe_par::map_range(m_max as usize + 1, |m| card_em_scaled(q, m as i64))
}

pub fn spectral_average(s: &SpectralParam, m: i64) -> Result<f64> {
    if m < 1 {
        return Err(HeckeError::InvalidParam("M must be at least 1".into()));
    }
    let cards = scaled_cards(s.q, m);
    Ok(*spectral_averages(s, &cards)?.last().unwrap())
}

#[derive(Clone, Debug, Serialize)]
pub struct FloorEntry {
    pub m: i64,
    pub min_average: f64,
    /// `(theta_1, theta_2)` of the minimizing grid point.
    pub argmin: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct FloorReport {
    pub schema: &'static str,
    pub q: u32,
    pub margin: f64,
    pub grid_n: usize,
    pub points: usize,
    pub entries: Vec<FloorEntry>,
    /// Smallest `M` in the list from which the minima stay within a factor 10 of each other.
    pub m0: i64,
}

impl FloorReport {
    pub fn min_ratio(&self) -> f64 {
        let v: Vec<f64> = self.entries.iter().map(|e| e.min_average).collect();
        let mx = v.iter().cloned().fold(f64::MIN, f64::max);
        let mn = v.iter().cloned().fold(f64::MAX, f64::min);
        mx / mn
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("q,M,grid_n,margin,min_average,argmin_s\n");
        for e in &self.entries {
            s.push_str(&format!(
                "{},{},{},{},{:.12e},\"({:.12e};{:.12e})\"\n",
                self.q, e.m, self.grid_n, self.margin, e.min_average, e.argmin[0], e.argmin[1]
            ));
        }
        s
    }
}

/// Midpoint grid points `(theta_1, theta_2)` of the torus at distance at least
/// `margin` from `Xi_1 u Xi_2`, in row-major grid order.
pub fn theta_grid(q: u32, margin: f64, grid_n: usize) -> Vec<[f64; 2]> {
    let p = torus_period(q);
    let mut out = Vec::new();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let a = (i as f64 + 0.5) * p / grid_n as f64;
            let b = (j as f64 + 0.5) * p / grid_n as f64;
            if xi_distance(q, a, b) >= margin {
                out.push([a, b]);
            }
        }
    }
    out
}

pub fn spectral_floor(q: u32, margin: f64, m_list: &[i64], grid_n: usize) -> Result<FloorReport> {
    let pts = theta_grid(q, margin, grid_n);
    if pts.is_empty() {
        return Err(HeckeError::EmptyTheta);
    }
    if m_list.iter().any(|&m| m < 1) {
        return Err(HeckeError::InvalidParam("M must be at least 1".into()));
    }
    let m_max = m_list.iter().copied().max().unwrap_or(1);
    let cards = scaled_cards(q, m_max);
    let rows: Vec<Result<Vec<f64>>> = qe_par::map(&pts, |p| {
        spectral_averages(&SpectralParam::from_torus(q, p[0], p[1]), &cards)
    });
    let rows: Vec<Vec<f64>> = rows.into_iter().collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for &m in m_list {
        let (mut best, mut arg) = (f64::INFINITY, [0.0; 2]);
        for (k, row) in rows.iter().enumerate() {
            let v = row[m as usize - 1];
            if v < best {
                best = v;
                arg = pts[k];
            }
        }
        entries.push(FloorEntry { m, min_average: best, argmin: arg });
    }
    let mut m0 = entries.first().map(|e| e.m).unwrap_or(1);
    for k in 0..entries.len() {
        let tail = &entries[k..];
        let mx = tail.iter().map(|e| e.min_average).fold(f64::MIN, f64::max);
        let mn = tail.iter().map(|e| e.min_average).fold(f64::MAX, f64::min);
        if mn > 0.0 && mx / mn <= 10.0 {
            m0 = entries[k].m;
            break;
        }
    }
    Ok(FloorReport {
        schema: "hecke-spectral/1",
        q,
        margin,
        grid_n,
        points: pts.len(),
        entries,
        m0,
    })
}
