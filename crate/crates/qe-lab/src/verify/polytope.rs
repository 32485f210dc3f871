//! Brion's formula against direct summation.

use crate::report::{fmt12, Check, Outcome};
use anyhow::{bail, Result};
use num_complex::Complex64;
use num_rational::BigRational;
use qe_polytope::{
    brion_sum, brute_sum, degenerate_brion, rectangle, ComplexExp, LatticePolytope, PolytopeError, RationalExp,
    Schedule,
};
use qe_weyl::NamedPolytope2D;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const BRION_SET: [NamedPolytope2D; 5] = [
    NamedPolytope2D::P,
    NamedPolytope2D::Pstar,
    NamedPolytope2D::H,
    NamedPolytope2D::E12,
    NamedPolytope2D::E13,
];

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[derive(Serialize)]
struct BrionRow {
    polytope: String,
    m: i64,
    exact_trials: usize,
    exact_agree: usize,
    float_trials: usize,
    max_rel_error: f64,
}

/// Draws integer exponents until Brion's formula is defined, returning both sums.
fn exact_trial(p: &LatticePolytope, rng: &mut ChaCha8Rng) -> Result<(BigRational, BigRational)> {
    for _ in 0..1000 {
        let a: Vec<i64> = (0..p.dim()).map(|_| rng.gen_range(-3..=3)).collect();
        let w = RationalExp::int(2, a);
        match brion_sum(p, &w) {
            Ok(v) => return Ok((v, brute_sum(p, &w)?)),
            Err(PolytopeError::Degenerate(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    bail!("no non-degenerate integer exponent found")
}

/// Rational exponents `a/7, b/5` with `|a|, |b| <= 6`.
fn float_trial(p: &LatticePolytope, rng: &mut ChaCha8Rng) -> Result<f64> {
    for _ in 0..1000 {
        let a: Vec<f64> = (0..p.dim())
            .enumerate()
            .map(|(i, _)| rng.gen_range(-6..=6) as f64 / [7.0, 5.0, 3.0][i % 3])
            .collect();
        let w = ComplexExp::real(2.0, &a);
        match brion_sum(p, &w) {
            Ok(v) => return Ok(rel(v, brute_sum(p, &w)?)),
            Err(PolytopeError::Degenerate(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    bail!("no non-degenerate rational exponent found")
}

fn brion_rows(name: &str, polys: &[(i64, LatticePolytope)], trials: usize, seed: u64) -> Result<Vec<BrionRow>> {
    let mut out = Vec::new();
    for (m, p) in polys {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((*m as u64) << 8) ^ name.len() as u64);
        let mut agree = 0;
        let mut worst: f64 = 0.0;
        for _ in 0..trials {
            let (a, b) = exact_trial(p, &mut rng)?;
            agree += (a == b) as usize;
            worst = worst.max(float_trial(p, &mut rng)?);
        }
        out.push(BrionRow {
            polytope: name.to_string(),
            m: *m,
            exact_trials: trials,
            exact_agree: agree,
            float_trials: trials,
            max_rel_error: worst,
        });
    }
    Ok(out)
}

fn brion_outcome(rows: Vec<BrionRow>) -> Outcome {
    let exact_ok = rows.iter().all(|r| r.exact_agree == r.exact_trials);
    let worst = rows.iter().map(|r| r.max_rel_error).fold(0.0, f64::max);
    let checks = vec![
        Check::new(
            "brion_exact_equals_brute",
            exact_ok,
            format!(
                "{} of {} exact trials agree",
                rows.iter().map(|r| r.exact_agree).sum::<usize>(),
                rows.iter().map(|r| r.exact_trials).sum::<usize>()
            ),
        ),
        Check::new("brion_float_rel_1e-9", worst <= 1e-9, format!("max relative error {}", fmt12(worst))),
    ];
    let mut csv = String::from("polytope,m,exact_trials,exact_agree,max_rel_error,pass\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.polytope,
            r.m,
            r.exact_trials,
            r.exact_agree,
            fmt12(r.max_rel_error),
            r.exact_agree == r.exact_trials && r.max_rel_error <= 1e-9
        ));
    }
    Outcome::new(rows, checks).with_csv(csv)
}

/// The named polygons dilated by `0..=m_max`, `trials` random exponents each.
pub fn verify_brion(names: &[NamedPolytope2D], m_max: i64, trials: usize, seed: u64) -> Result<Outcome> {
    let mut rows = Vec::new();
    for n in names {
        let polys: Vec<(i64, LatticePolytope)> = (0..=m_max).map(|m| (m, n.dilate(m))).collect();
        rows.extend(brion_rows(n.name(), &polys, trials, seed)?);
    }
    Ok(brion_outcome(rows))
}

/// A polytope read from its JSON form.
pub fn verify_brion_json(p: &LatticePolytope, trials: usize, seed: u64) -> Result<Outcome> {
    let mut o = brion_outcome(brion_rows("input", &[(1, p.clone())], trials, seed)?);
    o.results = serde_json::json!({ "polytope": p.to_json(), "rows": o.results });
    Ok(o)
}

#[derive(Serialize)]
struct DegenerateSummary {
    family: String,
    cases: usize,
    max_rel_error: f64,
}

/// Rectangles `[0, m] x [0, n]` with exponents orthogonal to a side, and `M H`
/// with exponents orthogonal to one of its edges.
pub fn verify_degenerate(rect_max: i64, h_max: i64) -> Result<Outcome> {
    let rect_alphas = [[0.0, 1.0], [0.0, 0.0], [0.5, 0.0], [0.0, -0.7]];
    let mut rect = Vec::new();
    for m in 0..=rect_max {
        for n in 0..=rect_max {
            rect.push((m, n));
        }
    }
    let rect_err = qe_par::map(&rect, |&(m, n)| -> std::result::Result<f64, PolytopeError> {
        let r = rectangle(&[m, n]);
        let mut worst: f64 = 0.0;
        for a in rect_alphas {
            let w = ComplexExp::real(2.0, &a);
            worst = worst.max(rel(degenerate_brion(&r, &w, None, Schedule::default())?, brute_sum(&r, &w)?));
        }
        Ok(worst)
    });
    let rect_worst = rect_err.into_iter().collect::<std::result::Result<Vec<_>, _>>()?.into_iter().fold(0.0, f64::max);
    // q^{-|lambda|_H} on the halves where |lambda|_H = (r + 2s)/6 resp. (2r + s)/6
    let h_alphas = [[-1.0 / 6.0, -2.0 / 6.0], [-2.0 / 6.0, -1.0 / 6.0], [0.0, 0.0]];
    let ms: Vec<i64> = (1..=h_max).collect();
    let h_err = qe_par::map(&ms, |&m| -> std::result::Result<f64, PolytopeError> {
        let p = NamedPolytope2D::H.dilate(m);
        let mut worst: f64 = 0.0;
        for a in h_alphas {
            let w = ComplexExp::real(2.0, &a);
            worst = worst.max(rel(degenerate_brion(&p, &w, None, Schedule::default())?, brute_sum(&p, &w)?));
        }
        Ok(worst)
    });
    let h_worst = h_err.into_iter().collect::<std::result::Result<Vec<_>, _>>()?.into_iter().fold(0.0, f64::max);
    let rows = vec![
        DegenerateSummary { family: "rectangle".into(), cases: rect.len() * rect_alphas.len(), max_rel_error: rect_worst },
        DegenerateSummary { family: "H".into(), cases: ms.len() * h_alphas.len(), max_rel_error: h_worst },
    ];
    let checks = vec![
        Check::new("rectangle_rel_1e-7", rect_worst <= 1e-7, format!("max relative error {}", fmt12(rect_worst))),
        Check::new("hexagon_rel_1e-7", h_worst <= 1e-7, format!("max relative error {}", fmt12(h_worst))),
    ];
    let mut csv = String::from("family,cases,max_rel_error,pass\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{},{}\n", r.family, r.cases, fmt12(r.max_rel_error), r.max_rel_error <= 1e-7));
    }
    Ok(Outcome::new(rows, checks).with_csv(csv))
}
