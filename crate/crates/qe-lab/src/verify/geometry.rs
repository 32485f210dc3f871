//! The hexagon law for intersections of polytopal balls.

use super::hm_points;
use crate::report::{Check, Outcome};
use anyhow::Result;
use qe_building::em_lambda_card;
use qe_weyl::{apartment_ball_intersection, in_hm, WeylVector};
use serde::Serialize;

#[derive(Serialize)]
struct HexRow {
    m: i64,
    r: i64,
    s: i64,
    card: usize,
    in_hm: bool,
}

/// `card(E_m ∩ varpi^lambda E_m) > 0` against `lambda in H_m` over `H_{m+1}` in the
/// building, and the apartment polygon predicate against `H_m` for `r + s <= rs_max`,
/// `m <= apartment_m`.
pub fn verify_hexagon(q: u32, m: i64, apartment_m: i64, rs_max: i64) -> Result<Outcome> {
    let shapes = hm_points(m + 1);
    let cards = qe_par::map(&shapes, |l| em_lambda_card(q, m, *l));
    let mut rows = Vec::new();
    for (l, c) in shapes.iter().zip(cards) {
        rows.push(HexRow { m, r: l.r, s: l.s, card: c?, in_hm: in_hm(l, m) });
    }
    let bad: Vec<_> = rows.iter().filter(|r| (r.card > 0) != r.in_hm).map(|r| (r.r, r.s)).collect();
    let mut apt_bad = Vec::new();
    let mut apt_cases = 0;
    for mm in 0..=apartment_m {
        for r in 0..=rs_max {
            for s in 0..=rs_max - r {
                let v = WeylVector::new(r, s);
                apt_cases += 1;
                if apartment_ball_intersection(&v, mm) != in_hm(&v, mm) {
                    apt_bad.push((mm, r, s));
                }
            }
        }
    }
    let checks = vec![
        Check::new(
            "building_predicate_equals_hm",
            bad.is_empty(),
            format!("{} shapes in H_{}, mismatches {:?}", rows.len(), m + 1, bad),
        ),
        Check::new(
            "apartment_predicate_equals_hm",
            apt_bad.is_empty(),
            format!("{apt_cases} cases, mismatches {:?}", apt_bad),
        ),
    ];
    let mut csv = String::from("q,m,r,s,card,in_hm,pass\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{},{},{},{},{}\n", q, r.m, r.r, r.s, r.card, r.in_hm, (r.card > 0) == r.in_hm));
    }
    Ok(Outcome::new(serde_json::json!({ "q": q, "rows": rows, "apartment_cases": apt_cases }), checks).with_csv(csv))
}
