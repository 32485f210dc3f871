//! Plancherel density on the tempered torus and its total mass.

use crate::rank2::c_function;
use crate::spectral::{torus_period, xi1_distance};
use crate::{Result, SpectralParam};
use serde::Serialize;

/// Global factor applied to the density. The raw density already integrates
/// to one against the probability Haar measure on the torus, so it is 1; the
/// measured mass is reported alongside so the factor can be audited.
pub const CALIBRATION: f64 = 1.0;

/// `Q(t) = (1 + t)(1 + t + t^2)`.
pub fn q_factor(t: f64) -> f64 {
    (1.0 + t) * (1.0 + t + t * t)
}

/// `CALIBRATION * Q(q^{-1}) / 3! / |c(s)|^2`.
pub fn plancherel_density(s: &SpectralParam) -> Result<f64> {
    let c = c_function(s.q, s.z())?;
    Ok(CALIBRATION * q_factor(1.0 / s.q as f64) / 6.0 / c.norm_sqr())
}

#[derive(Clone, Debug, Serialize)]
pub struct MassReport {
    pub q: u32,
    pub grid_n: usize,
    pub mass: f64,
    pub skipped: usize,
    pub calibration: f64,
    /// `1 / mass` of the uncalibrated density, i.e. the factor that would make it exact on this grid.
    pub measured_calibration: f64,
}

/// Midpoint-rule integral of the density against probability Haar measure on
/// the torus; grid points within `1e-6` of `Xi_1` are dropped.
pub fn plancherel_mass(q: u32, grid_n: usize) -> Result<MassReport> {
    let p = torus_period(q);
    let h = p / grid_n as f64;
    let rows: Vec<Result<(f64, usize)>> = qe_par::map_range(grid_n, |i| {
        let a = (i as f64 + 0.5) * h;
        let (mut acc, mut skip) = (0.0, 0);
        for j in 0..grid_n {
            let b = (j as f64 + 0.5) * h;
            if xi1_distance(q, a, b) <= 1e-6 {
                skip += 1;
                continue;
            }
            acc += plancherel_density(&SpectralParam::from_torus(q, a, b))?;
        }
        Ok((acc, skip))
    });
    let (mut total, mut skipped) = (0.0, 0);
    for r in rows {
        let (a, s) = r?;
        total += a;
        skipped += s;
    }
    let mass = total / (grid_n * grid_n) as f64;
    Ok(MassReport {
        q,
        grid_n,
        mass,
        skipped,
        calibration: CALIBRATION,
        measured_calibration: CALIBRATION / mass,
    })
}
