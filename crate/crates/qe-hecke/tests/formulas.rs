use num_complex::Complex64;
use proptest::prelude::*;
use qe_hecke::plancherel::{plancherel_density, plancherel_mass};
use qe_hecke::spectral::{spectral_averages, spectral_floor, scaled_cards, xi_distance, xi1_distance};
use qe_hecke::tree::*;
use qe_hecke::*;
use qe_weyl::{WeylVector, S3_ELEMENTS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tempered(rng: &mut ChaCha8Rng, q: u32, margin: f64) -> SpectralParam {
    let p = qe_hecke::spectral::torus_period(q);
    loop {
        let a = rng.gen::<f64>() * p;
        let b = rng.gen::<f64>() * p;
        if xi1_distance(q, a, b) >= margin {
            return SpectralParam::from_torus(q, a, b);
        }
    }
}

#[test]
fn kappa_pair_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2, 3, 4] {
        for _ in 0..50 {
            let s = random_tempered(&mut rng, q, 0.05);
            let lhs = kappa(&s).unwrap() + kappa(&s.permute(&[0, 2, 1])).unwrap();
            let rhs = kappa_identity_rhs(&s);
            assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0), "q={q}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn kappa_on_xi1_errors() {
    let s = SpectralParam::from_torus(2, 0.7, 0.7);
    assert_eq!(kappa(&s), Err(HeckeError::Xi1Singular));
}

#[test]
fn card_log_slope() {
    for q in [2u32, 3] {
        let l4 = (card_em_direct(q, 4).to_string().parse::<f64>().unwrap()).ln();
        let l12 = (card_em_direct(q, 12).to_string().parse::<f64>().unwrap()).ln();
        let slope = (l12 - l4) / 8.0;
        let want = 2.0 * ((q * q) as f64).ln();
        assert!(((slope - want) / want).abs() < 1e-3, "q={q}: {slope} vs {want}");
    }
}

#[test]
fn c_function_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let s = random_tempered(&mut rng, 3, 0.05);
        let a = c_function(3, s.x()).unwrap();
        let b = c_function(3, s.z()).unwrap().conj();
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn spherical_at_origin_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let s = random_tempered(&mut rng, 2, 0.05);
        let v = spherical_value(&s, &WeylVector::ZERO).unwrap();
        assert!((v - 1.0).norm() < 1e-12, "{v}");
    }
}

#[test]
fn spherical_near_xi1_matches_circle_mean() {
    // Every g_lambda is analytic across Xi_1, so its value is the mean over a
    // small circle in complex theta_1.
    let q = 2;
    let (a, b) = (0.9, 0.9 + 1e-8);
    let base = SpectralParam::from_torus(q, a, b);
    assert!(base.xi1_gap() < 1e-6);
    for v in [WeylVector::new(1, 0), WeylVector::new(2, 1), WeylVector::new(0, 3)] {
        let got = spherical_value(&base, &v).unwrap();
        let r = 1e-2;
        let n = 64;
        let mut mean = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let w = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            let s = SpectralParam::from_s(q, Complex64::new(0.0, a) + w * Complex64::i(), Complex64::new(0.0, b));
            mean += spherical_value(&s, &v).unwrap();
        }
        mean /= n as f64;
        assert!((got - mean).norm() < 1e-5, "{v:?}: {got} vs {mean}");
    }
}

#[test]
fn s3_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let s = random_tempered(&mut rng, 2, 0.05);
        let d0 = plancherel_density(&s).unwrap();
        let h0 = h_m(&s, 4).unwrap();
        for sigma in S3_ELEMENTS {
            let p = s.permute(&sigma);
            assert!((plancherel_density(&p).unwrap() - d0).abs() <= 1e-10 * d0.max(1.0));
            assert!((h_m(&p, 4).unwrap() - h0).norm() <= 1e-9 * h0.norm().max(1.0));
        }
        assert!(d0 >= 0.0);
    }
}

#[test]
fn cauchy_schwarz_on_grid() {
    let q = 2;
    let cards = scaled_cards(q, 12);
    let p = qe_hecke::spectral::torus_period(q);
    for i in 0..12 {
        for j in 0..12 {
            let (a, b) = ((i as f64 + 0.5) * p / 12.0, (j as f64 + 0.5) * p / 12.0);
            if xi1_distance(q, a, b) < 1e-3 {
                continue;
            }
            let s = SpectralParam::from_torus(q, a, b);
            for m in 1..=12 {
                let h = h_m_brion(&s, m, true).unwrap();
                // |h|^2/card <= card, i.e. |h q^{-2m}| <= card q^{-4m} q^{2m}
                let bound = cards[m as usize] * 4f64.powi(m as i32);
                assert!(h.norm() <= bound * (1.0 + 1e-9));
            }
        }
    }
}

#[test]
fn spectral_average_single_term() {
    let s = SpectralParam::from_torus(2, 0.4, 1.7);
    let a = spectral_averages(&s, &scaled_cards(2, 1)).unwrap()[0];
    let want = h_m(&s, 1).unwrap().norm_sqr() / 43.0;
    assert!((a - want).abs() < 1e-12 * want);
}

#[test]
fn floor_small_grid() {
    let r = spectral_floor(2, 0.15, &[5, 10], 16).unwrap();
    assert!(r.points > 0);
    assert!(r.entries.iter().all(|e| e.min_average > 0.0));
    assert!(xi_distance(2, r.entries[0].argmin[0], r.entries[0].argmin[1]) >= 0.15);
    assert_eq!(spectral_floor(2, 10.0, &[5], 16).unwrap_err(), HeckeError::EmptyTheta);
    assert!(r.to_csv().starts_with("q,M,grid_n,margin,min_average,argmin_s\n"));
}

#[test]
fn xi_distance_vanishes_on_fixed_points() {
    assert_eq!(xi1_distance(2, 0.3, 0.3), 0.0);
    let p = qe_hecke::spectral::torus_period(3);
    assert!(xi1_distance(3, 0.0, p) < 1e-12);
    assert!(xi_distance(3, 0.2 + p / 2.0, 0.2) < 1e-12);
}

#[test]
fn plancherel_mass_coarse() {
    let r = plancherel_mass(2, 128).unwrap();
    assert!((r.mass - 1.0).abs() < 2e-2, "{}", r.mass);
}

fn tree_ball_bfs(q: usize, m: usize) -> usize {
    // vertices are reduced words; the root has q+1 children, others q
    let mut total = 1;
    let mut layer = 1;
    for d in 0..m {
        layer *= if d == 0 { q + 1 } else { q };
        total += layer;
    }
    total
}

#[test]
fn tree_cards() {
    assert_eq!(tree_card_em(2, 2), 10.into());
    for q in [2u32, 3, 5] {
        for m in 0..8 {
            assert_eq!(tree_card_em(q, m), tree_ball_bfs(q as usize, m as usize).into());
            let s = tree_card_scaled(q, m) * (q as f64).powi(m as i32);
            assert!((s - tree_ball_bfs(q as usize, m as usize) as f64).abs() < 1e-6);
        }
    }
}

#[test]
fn tree_recurrence_matches_closed_form() {
    for q in [2u32, 3] {
        for th in [0.3, 1.1, 2.0] {
            let s = TreeSpectralParam::from_theta(q, th);
            assert!((tree_h_m(&s, 0).unwrap() - 1.0).norm() < 1e-12);
            for m in 0..15 {
                let a = tree_h_m(&s, m).unwrap();
                let b = tree_h_m_recurrence(&s, m);
                assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0), "q={q} m={m}: {a} {b}");
            }
        }
    }
    assert_eq!(tree_c(&TreeSpectralParam::from_theta(2, 0.0)), Err(HeckeError::Xi1Singular));
}

#[test]
fn tree_rescaled_limit_matches() {
    let q = 2;
    let k = tree_rescale_constant(q);
    for tau in [0.1, 0.5, 1.0, 2.0, 3.0, -2.0] {
        let t = Complex64::new(0.0, tau);
        let want = tree_rescaled_limit(q, t) * k;
        for anti in [false, true] {
            let got = tree_rescaled_direct(q, t, 400, anti);
            let rel = (got - want).norm() / want.norm();
            if !anti {
                assert!(rel < 0.05, "tau={tau}: {got} vs {want}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn h_routes_agree(a in 0.05f64..9.0, b in 0.05f64..9.0, m in 0i64..6) {
        prop_assume!(xi1_distance(2, a, b) > 1e-3);
        let s = SpectralParam::from_torus(2, a, b);
        let x = h_m_direct(&s, m).unwrap();
        let y = h_m(&s, m).unwrap();
        prop_assert!((x - y).norm() <= 1e-8 * x.norm().max(1.0));
    }
}
