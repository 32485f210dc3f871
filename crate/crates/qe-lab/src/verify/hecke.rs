//! Ball volumes, the spectral floor, the Plancherel mass, the kappa identity
//! and the Hecke eigen-equation on the building.

use crate::report::{fmt12, Check, Outcome};
use anyhow::Result;
use num_complex::Complex64;
use qe_building::{ball, polytopal_ball, weyl_distance, BuildingVertex};
use qe_hecke::nu::card_em_scaled;
use qe_hecke::plancherel::plancherel_mass;
use qe_hecke::rank2::vertex_value_with;
use qe_hecke::spectral::{spectral_floor, torus_period, xi1_distance};
use qe_hecke::{card_em_brion, card_em_direct, g_lambda, kappa, kappa_identity_rhs, Orientation, SpectralParam};
use qe_weyl::WeylVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::hash_map::Entry;
use std::collections::HashMap;

/// `card(E_m)` by the direct sum, by Brion's formula and, when requested, by
/// enumerating the building.
pub fn card_em(q: u32, m: i64, building: bool) -> Result<Outcome> {
    let direct = card_em_direct(q, m);
    let brion = card_em_brion(q, m);
    let mut checks = vec![Check::new("direct_equals_brion", direct == brion, format!("direct {direct}, brion {brion}"))];
    let mut enumerated = None;
    if building {
        let n = polytopal_ball(&BuildingVertex::standard(q)?, m)?.len();
        checks.push(Check::new("building_equals_direct", direct == n.into(), format!("building {n}")));
        enumerated = Some(n);
    }
    let csv = format!(
        "q,m,direct,brion,building,pass\n{q},{m},{direct},{brion},{},{}\n",
        enumerated.map(|n| n.to_string()).unwrap_or_default(),
        checks.iter().all(|c| c.pass)
    );
    let res = serde_json::json!({
        "q": q, "m": m, "direct": direct.to_string(), "brion": brion.to_string(), "building": enumerated
    });
    Ok(Outcome::new(res, checks).with_csv(csv))
}

/// Slope of `ln card(E_m)` over `m in [lo, hi]` against `2 ln(q^2)`.
pub fn card_log_slope(q: u32, lo: i64, hi: i64) -> Result<Outcome> {
    let ln = |m: i64| card_em_scaled(q, m).ln() + 4.0 * m as f64 * (q as f64).ln();
    let slope = (ln(hi) - ln(lo)) / (hi - lo) as f64;
    let want = 2.0 * ((q * q) as f64).ln();
    let err = ((slope - want) / want).abs();
    let checks = vec![Check::new("log_slope_rel_1e-3", err <= 1e-3, format!("slope {}, want {}", fmt12(slope), fmt12(want)))];
    Ok(Outcome::new(serde_json::json!({ "q": q, "lo": lo, "hi": hi, "slope": slope, "expected": want }), checks))
}

pub fn spectral_floor_check(q: u32, margin: f64, grid_n: usize, ms: &[i64]) -> Result<Outcome> {
    let rep = spectral_floor(q, margin, ms, grid_n)?;
    let positive = rep.entries.iter().all(|e| e.min_average > 0.0);
    let ratio = rep.min_ratio();
    let checks = vec![
        Check::new(
            "minima_positive",
            positive,
            format!("minima {:?}", rep.entries.iter().map(|e| fmt12(e.min_average)).collect::<Vec<_>>()),
        ),
        Check::new("max_over_min_at_most_10", ratio <= 10.0, format!("ratio {}", fmt12(ratio))),
    ];
    let csv = rep.to_csv();
    Ok(Outcome::new(&rep, checks).with_csv(csv))
}

pub fn plancherel_check(q: u32, grid_n: usize) -> Result<Outcome> {
    let rep = plancherel_mass(q, grid_n)?;
    let err = (rep.mass - 1.0).abs();
    let checks = vec![Check::new(
        "mass_within_2e-2",
        err <= 2e-2,
        format!("mass {}, calibration {}", fmt12(rep.mass), fmt12(rep.calibration)),
    )];
    Ok(Outcome::new(&rep, checks))
}

fn random_tempered(rng: &mut ChaCha8Rng, q: u32, margin: f64) -> SpectralParam {
    let p = torus_period(q);
    loop {
        let a = rng.gen::<f64>() * p;
        let b = rng.gen::<f64>() * p;
        if xi1_distance(q, a, b) >= margin {
            return SpectralParam::from_torus(q, a, b);
        }
    }
}

/// `kappa(s) + kappa((23).s)` against its closed form at random tempered points.
pub fn kappa_check(qs: &[u32], n: usize, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for &q in qs {
        for _ in 0..n {
            let s = random_tempered(&mut rng, q, 0.05);
            let lhs = kappa(&s)? + kappa(&s.permute(&[0, 2, 1]))?;
            let rhs = kappa_identity_rhs(&s);
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
        }
    }
    let checks = vec![Check::new("kappa_identity_1e-9", worst <= 1e-9, format!("max error {}", fmt12(worst)))];
    Ok(Outcome::new(serde_json::json!({ "q": qs, "samples": n, "max_error": worst }), checks))
}

/// Largest relative residual of `sum_{d(v, w) = mu^vee} phi(w) = g_mu(s) phi(v)`
/// over the vertices `v` of a ball, for both generators `mu`.
pub fn eigen_residual(o: Orientation, s: &SpectralParam, verts: &[BuildingVertex], origin: &BuildingVertex) -> Result<f64> {
    let mut cache: HashMap<WeylVector, Complex64> = HashMap::new();
    let mut worst: f64 = 0.0;
    // mu = (1, 0) has mu^vee = (0, 1), reached by colour-2 edges, and vice versa
    for (mu, color) in [(WeylVector::new(1, 0), 2u8), (WeylVector::new(0, 1), 1u8)] {
        let g = g_lambda(s, &mu)?;
        for v in verts {
            let mut lhs = Complex64::new(0.0, 0.0);
            for w in v.neighbors_of_color(color) {
                let d = weyl_distance(origin, &w);
                if let Entry::Vacant(e) = cache.entry(d) {
                    e.insert(vertex_value_with(o, s, &d)?);
                }
                lhs += cache[&d];
            }
            let d = weyl_distance(origin, v);
            if let Entry::Vacant(e) = cache.entry(d) {
                e.insert(vertex_value_with(o, s, &d)?);
            }
            let rhs = g * cache[&d];
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1e-3));
        }
    }
    Ok(worst)
}

#[derive(Serialize)]
struct EigenRow {
    orientation: String,
    worst_residual: f64,
}

pub fn eigen_check(q: u32, radius: i64, samples: usize, margin: f64, seed: u64) -> Result<Outcome> {
    let o = BuildingVertex::standard(q)?;
    let b = ball(&o, radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ss: Vec<SpectralParam> = (0..samples).map(|_| random_tempered(&mut rng, q, margin)).collect();
    let mut rows = Vec::new();
    for or in Orientation::ALL {
        let mut worst: f64 = 0.0;
        for s in &ss {
            worst = worst.max(eigen_residual(or, s, &b.vertices, &o)?);
        }
        rows.push(EigenRow { orientation: format!("{or:?}"), worst_residual: worst });
    }
    let conv = format!("{:?}", qe_hecke::VERTEX_CONVENTION);
    let got = rows.iter().find(|r| r.orientation == conv).map(|r| r.worst_residual).unwrap_or(f64::INFINITY);
    let checks = vec![Check::new(
        "eigen_equation_1e-8",
        got <= 1e-8,
        format!("convention {conv}, residual {}, ball of {} vertices", fmt12(got), b.len()),
    )];
    Ok(Outcome::new(rows, checks))
}
