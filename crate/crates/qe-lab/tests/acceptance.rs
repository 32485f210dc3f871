//! Acceptance criteria 1 to 15. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

use anyhow::Result;
use qe_lab::report::{Check, Outcome};
use qe_lab::verify::{bounds, building, geometry, hecke, polytope, tree};
use std::time::{Duration, Instant};

const SEED: u64 = 20_240_601;

type Criterion = fn() -> Result<Vec<Check>>;

fn merge(parts: Vec<Outcome>) -> Vec<Check> {
    parts.into_iter().flat_map(|o| o.checks).collect()
}

fn timed(name: &str, limit: Duration, start: Instant, mut checks: Vec<Check>) -> Vec<Check> {
    let t = start.elapsed();
    checks.push(Check::new(name, t < limit, format!("{:.1} s (limit {} s)", t.as_secs_f64(), limit.as_secs())));
    checks
}

fn c1() -> Result<Vec<Check>> {
    let t = Instant::now();
    let o = polytope::verify_brion(&polytope::BRION_SET, 8, 20, SEED)?;
    Ok(timed("runtime_under_10s", Duration::from_secs(10), t, o.checks))
}

fn c2() -> Result<Vec<Check>> {
    Ok(polytope::verify_degenerate(10, 50)?.checks)
}

fn c3() -> Result<Vec<Check>> {
    Ok(merge(vec![building::verify_sphere(2, 4)?, building::verify_sphere(3, 4)?]))
}

fn c4() -> Result<Vec<Check>> {
    let mut parts = Vec::new();
    for q in [2, 3] {
        for m in 0..=8 {
            parts.push(hecke::card_em(q, m, q == 2 && m <= 3)?);
        }
        parts.push(hecke::card_log_slope(q, 4, 12)?);
    }
    let mut checks = merge(parts);
    let o = hecke::card_em(2, 1, true)?;
    let v = o.results["direct"].as_str() == Some("43") && o.results["building"].as_u64() == Some(43);
    checks.push(Check::new("q2_m1_is_43", v, o.results.to_string()));
    Ok(checks)
}

fn c5() -> Result<Vec<Check>> {
    let mut parts = Vec::new();
    for m in 0..=2 {
        parts.push(geometry::verify_hexagon(2, m, 5, 30)?);
    }
    Ok(merge(parts))
}

fn c6() -> Result<Vec<Check>> {
    Ok(hecke::eigen_check(2, 4, 10, 0.1, SEED)?.checks)
}

fn c7() -> Result<Vec<Check>> {
    Ok(hecke::kappa_check(&[2, 3, 4], 50, SEED)?.checks)
}

fn c8() -> Result<Vec<Check>> {
    let t = Instant::now();
    let o = hecke::spectral_floor_check(2, 0.15, 64, &[25, 50, 100, 200])?;
    Ok(timed("runtime_under_2min", Duration::from_secs(120), t, o.checks))
}

fn c9() -> Result<Vec<Check>> {
    Ok(tree::tree_floor_check(2, &[25, 50, 100, 200, 400], 64, 400)?.checks)
}

fn c10() -> Result<Vec<Check>> {
    Ok(bounds::verify_dominating(6)?.checks)
}

fn c11() -> Result<Vec<Check>> {
    Ok(bounds::em_lambda(2, 3, None)?.checks)
}

fn c12() -> Result<Vec<Check>> {
    Ok(bounds::final_sum_check(&[2, 3], &[0.1, 0.25], &[50, 100, 200, 400], 400)?.checks)
}

fn c13() -> Result<Vec<Check>> {
    Ok(merge(vec![tree::tree_em_r(2, 8, None)?, tree::tree_em_r(3, 8, None)?]))
}

fn c14() -> Result<Vec<Check>> {
    Ok(merge(vec![hecke::plancherel_check(2, 256)?, hecke::plancherel_check(3, 256)?]))
}

fn c15() -> Result<Vec<Check>> {
    Ok(building::ball_growth_check(2, &[2, 3, 4, 5, 6])?.checks)
}

fn main() {
    let criteria: [(&str, Criterion); 15] = [
        ("Brion exactness", c1),
        ("degenerate Brion", c2),
        ("sphere volumes", c3),
        ("card(E_m)", c4),
        ("hexagon law", c5),
        ("spherical eigen-equation", c6),
        ("kappa identity", c7),
        ("rank 2 spectral floor", c8),
        ("tree spectral floor", c9),
        ("dominating cone", c10),
        ("geometric bound", c11),
        ("final sum", c12),
        ("tree geometric bound", c13),
        ("Plancherel mass", c14),
        ("ball growth", c15),
    ];
    let mut failed = Vec::new();
    for (i, (title, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let t = Instant::now();
        let (pass, lines) = match f() {
            Ok(checks) => {
                let lines: Vec<String> = checks
                    .iter()
                    .map(|c| format!("    [{}] {}: {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail))
                    .collect();
                (checks.iter().all(|c| c.pass), lines)
            }
            Err(e) => (false, vec![format!("    error: {e:#}")]),
        };
        println!(
            "criterion {n}: {} ({title}, {:.1} s)",
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
        for l in lines {
            println!("{l}");
        }
        if !pass {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 15 criteria PASS");
    } else {
        println!("acceptance: FAIL on criteria {failed:?}");
        std::process::exit(1);
    }
}
