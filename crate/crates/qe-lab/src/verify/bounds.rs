//! The dominating cone, the bound on `card(E_m^lambda)` and the final sum.

use super::hm_points;
use crate::report::{fmt12, Check, Outcome};
use anyhow::Result;
use qe_bounds::cone::dominating_cone_check_upto;
use qe_bounds::upper::{upper_csv, UpperRow};
use qe_bounds::{h_ball_report, em_lambda_upper, final_sum, final_sum_split, DIRECTIONS};
use qe_building::em_lambda_card;
use qe_weyl::WeylVector;
use serde::Serialize;

pub fn verify_dominating(total: i64) -> Result<Outcome> {
    let mut reports = Vec::new();
    let mut checks = Vec::new();
    for alpha in DIRECTIONS {
        let r = dominating_cone_check_upto(alpha, total)?;
        checks.push(Check::new(
            format!("rays_{alpha:?}"),
            r.rays_match,
            format!("extreme rays {:?}", r.rays),
        ));
        checks.push(Check::new(
            format!("integer_points_{alpha:?}"),
            r.failures.is_empty(),
            format!("{} points with m+r+s <= {total}, {} not in the span", r.points_checked, r.failures.len()),
        ));
        reports.push(r);
    }
    let bm = h_ball_report(2)?;
    Ok(Outcome::new(serde_json::json!({ "dominating": reports, "h_shaped_variant": bm }), checks))
}

/// The building count against both bounds for every `lambda in H_m`,
/// `m <= m_max`, or for a single `lambda`.
pub fn em_lambda(q: u32, m_max: i64, lambda: Option<WeylVector>) -> Result<Outcome> {
    let mut cells: Vec<(i64, WeylVector)> = Vec::new();
    match lambda {
        Some(l) => cells.push((m_max, l)),
        None => {
            for m in 1..=m_max {
                cells.extend(hm_points(m).into_iter().map(|l| (m, l)));
            }
        }
    }
    let rows = qe_par::map(&cells, |&(m, l)| -> Result<UpperRow> {
        let exact = em_lambda_card(q, m, l)? as u64;
        let b = em_lambda_upper(q, m, l)?;
        Ok(UpperRow::new(q, m, l, exact, &b))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.pass).map(|r| (r.m, r.r, r.s, r.exact, fmt12(r.bound))).collect();
    let bad_inj: Vec<_> = rows.iter().filter(|r| !r.pass_injection).map(|r| (r.m, r.r, r.s)).collect();
    let c = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let checks = vec![
        Check::new("exact_within_polytope_route", bad.is_empty(), format!("violations (m, r, s, exact, bound) {bad:?}")),
        Check::new("exact_within_injection_route", bad_inj.is_empty(), format!("violations {bad_inj:?}")),
        Check::new("polytope_route_over_envelope", c.is_finite(), format!("fitted C = {}", fmt12(c))),
    ];
    let csv = upper_csv(&rows);
    Ok(Outcome::new(serde_json::json!({ "rows": rows, "fitted_c": c }), checks).with_csv(csv))
}

#[derive(Serialize)]
struct FinalRow {
    q: u32,
    theta: f64,
    m: i64,
    direct: f64,
    normalized: f64,
    split_brion: Option<f64>,
    split_brute: Option<f64>,
    rel_error: Option<f64>,
}

/// `final_sum / M` over `ms` and the split path for `M <= split_max`.
pub fn final_sum_check(qs: &[u32], thetas: &[f64], ms: &[i64], split_max: i64) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut worst_split: f64 = 0.0;
    for &q in qs {
        for &theta in thetas {
            let mut norm = Vec::new();
            for &m in ms {
                let d = final_sum(q, theta, m)?;
                let (sb, sr, e) = if m <= split_max {
                    let sp = final_sum_split(q, theta, m)?;
                    let e = (sp.brion_total() - d).abs() / d;
                    worst_split = worst_split.max(e);
                    (Some(sp.brion_total()), Some(sp.brute_total()), Some(e))
                } else {
                    (None, None, None)
                };
                norm.push(d / m as f64);
                rows.push(FinalRow { q, theta, m, direct: d, normalized: d / m as f64, split_brion: sb, split_brute: sr, rel_error: e });
            }
            let (lo, hi) = norm.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
            let var = hi / lo - 1.0;
            let tag = format!("q{q}_theta{theta}");
            checks.push(Check::new(format!("variation_at_most_20pct_{tag}"), var <= 0.2, format!("variation {}", fmt12(var))));
            if norm.len() >= 2 {
                let up = norm[norm.len() - 1] > norm[0];
                checks.push(Check::new(
                    format!("no_upward_trend_{tag}"),
                    !up,
                    format!("normalized sums {:?}", norm.iter().map(|x| fmt12(*x)).collect::<Vec<_>>()),
                ));
            }
        }
    }
    checks.push(Check::new("split_equals_direct_1e-9", worst_split <= 1e-9, format!("max relative error {}", fmt12(worst_split))));
    let mut csv = String::from("q,theta,M,direct,normalized,split_brion,split_brute,rel_error\n");
    let opt = |x: Option<f64>| x.map(fmt12).unwrap_or_default();
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.q,
            r.theta,
            r.m,
            fmt12(r.direct),
            fmt12(r.normalized),
            opt(r.split_brion),
            opt(r.split_brute),
            opt(r.rel_error)
        ));
    }
    Ok(Outcome::new(rows, checks).with_csv(csv))
}
