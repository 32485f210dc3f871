//! Exact enumerations: neighbour transition census, `|E_m ∩ varpi^lambda E_m|`
//! and ball growth.

use crate::ball::{bfs_layers, polytopal_ball};
use crate::{weyl_distance, BuildingVertex, Color, Result};
use qe_weyl::{in_pm, WeylVector};
use serde::Serialize;
use std::collections::BTreeMap;

/// Histogram of `d(x, z)` over the neighbours `z` of `y` of colour `color`.
pub fn transition_census(x: &BuildingVertex, y: &BuildingVertex, color: Color) -> BTreeMap<WeylVector, usize> {
    let mut h = BTreeMap::new();
    for z in y.neighbors_of_color(color) {
        *h.entry(weyl_distance(x, &z)).or_insert(0) += 1;
    }
    h
}

/// `card(E_m ∩ varpi^lambda E_m)` by intersecting the two polytopal balls.
pub fn em_lambda_card(q: u32, m: i64, lambda: WeylVector) -> Result<usize> {
    let o = BuildingVertex::standard(q)?;
    let y = BuildingVertex::diagonal(q, lambda.partition())?;
    let e = polytopal_ball(&o, m)?;
    Ok(qe_par::map(&e.vertices, |z| in_pm(&weyl_distance(&y, z), m)).into_iter().filter(|&b| b).count())
}

#[derive(Clone, Debug, Serialize)]
pub struct BallGrowth {
    pub p: u32,
    pub radii: Vec<i64>,
    pub sizes: Vec<usize>,
    /// `min_R |B_R| / q^{2R}`.
    pub c1: f64,
    /// `max_R |B_R| / (R^ell q^{2R})`.
    pub c2: f64,
    /// Least-squares slope of `ln(|B_R| / q^{2R})` against `ln R`.
    pub ell: f64,
}

impl BallGrowth {
    pub fn fit(p: u32, radii: Vec<i64>, sizes: Vec<usize>) -> Self {
        let q2 = (p * p) as f64;
        let ratio: Vec<f64> = radii.iter().zip(&sizes).map(|(&r, &n)| n as f64 / q2.powi(r as i32)).collect();
        let xs: Vec<f64> = radii.iter().map(|&r| (r as f64).ln()).collect();
        let ys: Vec<f64> = ratio.iter().map(|v| v.ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let ell = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        let c1 = ratio.iter().cloned().fold(f64::INFINITY, f64::min);
        let c2 = radii
            .iter()
            .zip(&ratio)
            .map(|(&r, v)| v / (r as f64).powf(ell))
            .fold(0.0, f64::max);
        BallGrowth { p, radii, sizes, c1, c2, ell }
    }

    /// Whether `c1 q^{2R} <= |B_R| <= c2 R^ell q^{2R}` holds at every radius.
    pub fn sandwich_holds(&self) -> bool {
        let q2 = (self.p * self.p) as f64;
        self.radii.iter().zip(&self.sizes).all(|(&r, &n)| {
            let base = q2.powi(r as i32);
            let n = n as f64;
            self.c1 * base <= n * (1.0 + 1e-12) && n <= self.c2 * (r as f64).powf(self.ell) * base * (1.0 + 1e-12)
        })
    }
}

/// `|ball(o, R)|` by BFS for each `R` in `radii`, with the fitted constants.
pub fn ball_growth(p: u32, radii: &[i64]) -> Result<BallGrowth> {
    let o = BuildingVertex::standard(p)?;
    let rmax = radii.iter().copied().max().unwrap_or(0);
    let layers = bfs_layers(&o, rmax)?;
    let mut cum = Vec::with_capacity(layers.len());
    let mut acc = 0;
    for l in &layers {
        acc += l.len();
        cum.push(acc);
    }
    let sizes = radii.iter().map(|&r| cum[r as usize]).collect();
    Ok(BallGrowth::fit(p, radii.to_vec(), sizes))
}
