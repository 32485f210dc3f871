use qe_bounds::final_sum::{normalized_final_sums, BETA_GE, BETA_LE};
use qe_bounds::{final_sum, final_sum_split, BoundsError};

#[test]
fn split_matches_direct() {
    let mut worst: f64 = 0.0;
    for q in [2u32, 3] {
        for theta in [0.1, 0.25, 0.5] {
            for m in [1i64, 2, 5, 10, 25, 50, 100, 200] {
                let d = final_sum(q, theta, m).unwrap();
                let sp = final_sum_split(q, theta, m).unwrap();
                let e_brion = (sp.brion_total() - d).abs() / d;
                let e_brute = (sp.brute_total() - d).abs() / d;
                worst = worst.max(e_brion);
                assert!(e_brute < 1e-12, "brute q={q} theta={theta} M={m}: {e_brute:e}");
                assert!(e_brion < 1e-9, "brion q={q} theta={theta} M={m}: {e_brion:e} (residual {:e})", sp.residual);
            }
        }
    }
    println!("worst relative split error {worst:e}");
}

#[test]
fn beta_on_the_hexagon_vertex() {
    // (0, 3) on r <= s, (3, 0) on r >= s
    assert!((BETA_LE[0] * 0.0 + BETA_LE[1] * 3.0 + 1.0).abs() < 1e-15);
    assert!((BETA_GE[0] * 3.0 + BETA_GE[1] * 0.0 + 1.0).abs() < 1e-15);
}

#[test]
fn small_sums_by_hand() {
    // H_1 has 11 points; exponents 3(r+s) - 2 max(2r+s, r+2s) over them
    let q = 2.0f64;
    let theta = 0.25;
    let mut want = 0.0;
    for (r, s) in [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2), (0, 3)] {
        let e = 3 * (r + s) - 2 * (2 * r + s).max(r + 2 * s);
        want += (q * q).powf(theta * e as f64 / 3.0);
    }
    assert!((final_sum(2, theta, 1).unwrap() - want).abs() < 1e-12);
}

#[test]
fn corner_terms_are_one() {
    // with theta tiny every term tends to 1, so the sum tends to the point count
    let n = final_sum(2, 1e-12, 3).unwrap();
    let pts = (0..=9i64).map(|r| (0..=18i64).filter(|s| (2 * r + s).max(r + 2 * s) <= 18).count()).sum::<usize>();
    assert!((n - pts as f64).abs() < 1e-6);
}

#[test]
fn rejects_bad_parameters() {
    assert!(matches!(final_sum(2, 0.0, 5), Err(BoundsError::InvalidParam(_))));
    assert!(matches!(final_sum(2, 0.5, 0), Err(BoundsError::InvalidParam(_))));
    assert!(matches!(final_sum_split(1, 0.5, 3), Err(BoundsError::InvalidParam(_))));
}

#[test]
fn normalized_sum_variation() {
    let ms = [50, 100, 200, 400];
    for q in [2u32, 3] {
        for theta in [0.1, 0.25] {
            let v = normalized_final_sums(q, theta, &ms).unwrap();
            let (lo, hi) = v.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
            println!("q={q} theta={theta}: {v:?}");
            assert!(hi / lo - 1.0 <= 0.2, "q={q} theta={theta}: {v:?}");
        }
    }
}

#[test]
fn normalized_sum_has_no_upward_trend() {
    let ms = [50, 100, 200, 400];
    for q in [2u32, 3] {
        for theta in [0.1, 0.25] {
            let v = normalized_final_sums(q, theta, &ms).unwrap();
            assert!(v[3] <= v[0], "q={q} theta={theta}: {v:?}");
        }
    }
}

#[test]
fn normalized_sum_increments_contract() {
    let ms = [50, 100, 200, 400];
    for q in [2u32, 3] {
        for theta in [0.1, 0.25] {
            let v = normalized_final_sums(q, theta, &ms).unwrap();
            let d: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
            for w in d.windows(2) {
                assert!(w[1].abs() <= 0.6 * w[0].abs(), "q={q} theta={theta}: {v:?}");
            }
        }
    }
}
