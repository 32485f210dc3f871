//! The tree spectral floor and the tree intersection bound.

use crate::report::{fmt12, Check, Outcome};
use anyhow::Result;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use qe_bounds::{tree_count_table, tree_em_r_bound, tree_em_r_exact};
use qe_hecke::tree::{tree_rescale_constant, tree_rescaled_direct, tree_rescaled_limit, tree_spectral_floor};
use serde::Serialize;

#[derive(Serialize)]
struct RescaledRow {
    tau: f64,
    direct: f64,
    limit: f64,
    rel_error: f64,
}

pub fn tree_floor_check(q: u32, ms: &[u32], grid_n: usize, rescale_m: u32) -> Result<Outcome> {
    let rep = tree_spectral_floor(q, ms, grid_n);
    let k = tree_rescale_constant(q);
    let taus: Vec<f64> = (-12..=12).filter(|&i| i != 0).map(|i| i as f64 * 0.25).collect();
    let rows = qe_par::map(&taus, |&tau| {
        let t = Complex64::new(0.0, tau);
        let want = tree_rescaled_limit(q, t) * k;
        let got = tree_rescaled_direct(q, t, rescale_m, false);
        RescaledRow { tau, direct: got.re, limit: want.re, rel_error: (got - want).norm() / want.norm() }
    });
    let floor = rep.entries.iter().map(|e| e.min_average).fold(f64::INFINITY, f64::min);
    let worst = rows.iter().map(|r| r.rel_error).fold(0.0, f64::max);
    let checks = vec![
        Check::new("uniform_positive_floor", floor > 0.0, format!("floor {}", fmt12(floor))),
        Check::new(
            "rescaled_limit_within_5pct",
            worst <= 0.05,
            format!("M={rescale_m}, |t| <= 3, max relative error {}", fmt12(worst)),
        ),
    ];
    let mut csv = String::from("q,M,grid_n,min_average,argmin_theta,min_scaled_near_real\n");
    for e in &rep.entries {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            q,
            e.m,
            grid_n,
            fmt12(e.min_average),
            fmt12(e.argmin_theta),
            fmt12(e.min_scaled_near_real)
        ));
    }
    Ok(Outcome::new(serde_json::json!({ "floor": rep, "rescaled": rows }), checks).with_csv(csv))
}

#[derive(Serialize)]
struct TreeRow {
    q: u32,
    m: i64,
    r: i64,
    exact: String,
    bound: f64,
    ratio: f64,
    pass: bool,
}

/// `tree_em_r_exact <= 4 (1 + q^{-1})/(1 - q^{-1})^2 q^{m - r/2}` for `m <= m_max`, or a
/// single `(m, r)` with its count table.
pub fn tree_em_r(q: u32, m_max: i64, r: Option<i64>) -> Result<Outcome> {
    let mut cells = Vec::new();
    match r {
        Some(r) => cells.push((m_max, r)),
        None => {
            for m in 0..=m_max {
                for r in 0..=2 * m {
                    cells.push((m, r));
                }
            }
        }
    }
    let mut rows = Vec::new();
    for (m, r) in cells {
        let e = tree_em_r_exact(q, m, r)?;
        let b = tree_em_r_bound(q, m, r)?;
        let ef = e.to_f64().unwrap_or(f64::INFINITY);
        rows.push(TreeRow { q, m, r, exact: e.to_string(), bound: b, ratio: ef / b, pass: ef <= 4.0 * b });
    }
    let worst = rows.iter().map(|x| x.ratio).fold(0.0, f64::max);
    let checks = vec![Check::new(
        "exact_within_four_times_bound",
        rows.iter().all(|x| x.pass),
        format!("max exact / bound {}", fmt12(worst)),
    )];
    let mut csv = String::from("q,m,r,exact,bound,ratio,pass\n");
    for x in &rows {
        csv.push_str(&format!("{},{},{},{},{},{},{}\n", x.q, x.m, x.r, x.exact, fmt12(x.bound), fmt12(x.ratio), x.pass));
    }
    let table = match r {
        Some(r) => Some(tree_count_table(q, m_max, r)?),
        None => None,
    };
    Ok(Outcome::new(serde_json::json!({ "rows": rows, "table": table }), checks).with_csv(csv))
}
