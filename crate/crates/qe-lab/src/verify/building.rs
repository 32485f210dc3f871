//! Balls, spheres, classified triples and ball growth in the building.

use super::hm_points;
use crate::report::{fmt12, Check, Outcome};
use anyhow::Result;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use qe_bounds::triples::{coords_in_polytope, BetaFunctional};
use qe_bounds::{count_bound, injection_bound, TripleCoords};
use qe_building::{
    ball, ball_growth, classify_triple, polytopal_ball, sphere, weyl_distance, BallGrowth, BuildingVertex,
};
use qe_hecke::n_lambda;
use qe_weyl::{in_pm, WeylVector};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Serialize)]
struct BallSummary {
    p: u32,
    radius: i64,
    size: usize,
    layers: Vec<usize>,
}

/// The combinatorial ball around the standard vertex; `vertices` adds one
/// JSON line per vertex.
pub fn ball_report(p: u32, radius: i64, vertices: bool) -> Result<Outcome> {
    let o = BuildingVertex::standard(p)?;
    let b = ball(&o, radius)?;
    let mut layers = vec![0usize; radius as usize + 1];
    for (_, d) in b.iter() {
        layers[(d.r + d.s) as usize] += 1;
    }
    let want: Vec<usize> = (0..=radius)
        .map(|k| (0..=k).map(|a| n_lambda(p, &WeylVector::new(a, k - a)).to_usize().expect("small")).sum())
        .collect();
    let checks = vec![Check::new("layers_match_volumes", layers == want, format!("layers {layers:?}"))];
    let summary = BallSummary { p, radius, size: b.len(), layers };
    let mut out = Outcome::new(&summary, checks);
    if vertices {
        out.csv = Some(b.to_json_lines());
        out.results = serde_json::json!({
            "summary": summary,
            "vertices": b.to_json_lines().lines().map(|l| serde_json::from_str::<serde_json::Value>(l).expect("json")).collect::<Vec<_>>(),
        });
    }
    Ok(out)
}

#[derive(Serialize)]
struct SphereRow {
    partition: [i64; 3],
    enumerated: usize,
    formula: String,
}

/// Sphere sizes in the ball of radius `l1_max` against `N_lambda`.
pub fn verify_sphere(p: u32, l1_max: i64) -> Result<Outcome> {
    let o = BuildingVertex::standard(p)?;
    let b = ball(&o, l1_max)?;
    let mut hist: BTreeMap<WeylVector, usize> = BTreeMap::new();
    for (_, d) in b.iter() {
        *hist.entry(*d).or_insert(0) += 1;
    }
    let mut rows = Vec::new();
    for k in 0..=l1_max {
        for s in 0..=k {
            let l = WeylVector::new(k - s, s);
            rows.push(SphereRow {
                partition: l.partition(),
                enumerated: hist.get(&l).copied().unwrap_or(0),
                formula: n_lambda(p, &l).to_string(),
            });
        }
    }
    let bad: Vec<_> = rows.iter().filter(|r| r.enumerated.to_string() != r.formula).map(|r| r.partition).collect();
    let checks = vec![Check::new(
        "sphere_sizes_equal_n_lambda",
        bad.is_empty(),
        format!("{} shapes, mismatches {:?}", rows.len(), bad),
    )];
    let mut csv = String::from("p,lambda,enumerated,n_lambda,pass\n");
    for r in &rows {
        csv.push_str(&format!(
            "{p},\"({},{},{})\",{},{},{}\n",
            r.partition[0],
            r.partition[1],
            r.partition[2],
            r.enumerated,
            r.formula,
            r.enumerated.to_string() == r.formula
        ));
    }
    Ok(Outcome::new(rows, checks).with_csv(csv))
}

#[derive(Serialize)]
struct TripleSummary {
    p: u32,
    m: i64,
    triples: usize,
    outside_polytope: usize,
    above_cap: usize,
    /// Number of triples per branch length `k`.
    by_k: BTreeMap<i64, usize>,
    census_cells: usize,
    worst_census_over_count_bound: f64,
    worst_census_over_injection_bound: f64,
}

/// Classifies every `(o, y; z)` with `y` a representative of each shape in `H_m`
/// and `z in E_m ∩ y E_m`, and compares the number of `z` per coordinate
/// vector with the counting bound.
pub fn verify_triples(p: u32, m: i64) -> Result<Outcome> {
    let o = BuildingVertex::standard(p)?;
    let e = polytopal_ball(&o, m)?;
    let mut coords: Vec<TripleCoords> = Vec::new();
    let mut census: BTreeMap<TripleCoords, usize> = BTreeMap::new();
    for lam in hm_points(m) {
        let y = sphere(&o, lam)?.remove(0);
        let zs: Vec<BuildingVertex> = e.vertices.iter().filter(|z| in_pm(&weyl_distance(&y, z), m)).cloned().collect();
        for c in qe_par::map(&zs, |z| classify_triple(&o, &y, z).map(|c| c.coords)) {
            let c = c?;
            *census.entry(c).or_insert(0) += 1;
            coords.push(c);
        }
    }
    let outside = coords.iter().filter(|c| !coords_in_polytope(c, m)).count();
    let above = coords
        .iter()
        .filter(|c| c.k + 2 * c.b1 + 2 * c.b2 > BetaFunctional::doubled_cap(m, c.r, c.s))
        .count();
    let mut by_k = BTreeMap::new();
    for c in &coords {
        *by_k.entry(c.k).or_insert(0) += 1;
    }
    let ratio = |n: usize, b: BigRational| n as f64 / b.to_f64().expect("finite");
    let worst_count = census.iter().map(|(c, n)| ratio(*n, count_bound(p, c))).fold(0.0, f64::max);
    let worst_inj = census.iter().map(|(c, n)| ratio(*n, injection_bound(p, c))).fold(0.0, f64::max);
    let summary = TripleSummary {
        p,
        m,
        triples: coords.len(),
        outside_polytope: outside,
        above_cap: above,
        by_k,
        census_cells: census.len(),
        worst_census_over_count_bound: worst_count,
        worst_census_over_injection_bound: worst_inj,
    };
    let checks = vec![
        Check::new("coordinates_in_polytope", outside == 0, format!("{outside} of {} outside", coords.len())),
        Check::new("dominating_inequality", above == 0, format!("{above} of {} above the cap", coords.len())),
        Check::new(
            "census_within_count_bound",
            worst_count <= 1.0,
            format!("max census / (2/nu_3 (q^2)^(beta)) = {}", fmt12(worst_count)),
        ),
        Check::new(
            "census_within_injection_bound",
            worst_inj <= 1.0,
            format!("max census / (T(k) N_b) = {}", fmt12(worst_inj)),
        ),
    ];
    Ok(Outcome::new(summary, checks))
}

/// Fitted `(C_1, C_2, l)` over `radii` and the prediction of the last radius from the others.
pub fn ball_growth_check(p: u32, radii: &[i64]) -> Result<Outcome> {
    let g = ball_growth(p, radii)?;
    let n = radii.len();
    let head = BallGrowth::fit(p, g.radii[..n - 1].to_vec(), g.sizes[..n - 1].to_vec());
    let r = radii[n - 1];
    let base = ((p * p) as f64).powi(r as i32);
    let last = g.sizes[n - 1] as f64;
    let lower = head.c1 * base;
    let upper = head.c2 * (r as f64).powf(head.ell) * base;
    let checks = vec![
        Check::new(
            "sandwich_holds",
            g.sandwich_holds(),
            format!("C1 {}, C2 {}, l {}", fmt12(g.c1), fmt12(g.c2), fmt12(g.ell)),
        ),
        Check::new(
            "head_fit_predicts_last_radius",
            lower <= last && last <= 1.25 * upper,
            format!("R={r}: {} <= {last} <= 1.25 * {}", fmt12(lower), fmt12(upper)),
        ),
    ];
    Ok(Outcome::new(serde_json::json!({ "fit": g, "head_fit": head }), checks))
}
