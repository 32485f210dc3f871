use num_complex::Complex64;
use proptest::prelude::*;
use qe_polytope::linalg::q;
use qe_polytope::*;
use qe_weyl::*;

#[test]
fn hexagon_law_matches_h_membership() {
    for m in 0..=5 {
        for r in 0..=30 {
            for s in 0..=30 - r {
                let v = WeylVector::new(r, s);
                assert_eq!(apartment_ball_intersection(&v, m), in_hm(&v, m), "{v:?} m={m}");
            }
        }
    }
}

#[test]
fn norms_on_dilated_special_vertices() {
    for m in 0..=20 {
        assert_eq!(P_DAGGER.scale(m).norm_p().unwrap(), q(m));
        assert_eq!(H_DAGGER.scale(m).norm_h().unwrap(), q(m));
    }
}

#[test]
fn duality_is_an_involution() {
    for r in 0..=50 {
        for s in 0..=50 - r {
            let v = WeylVector::new(r, s);
            assert_eq!(v.dual().unwrap().dual().unwrap(), v);
        }
    }
}

#[test]
fn named_vertices_and_cones() {
    let p = NamedPolytope2D::P.polytope();
    assert_eq!(p.vertices().unwrap(), vec![vec![q(0), q(0)], vec![q(0), q(1)], vec![q(2), q(0)]]);
    let h = NamedPolytope2D::H.polytope();
    assert_eq!(
        h.vertices().unwrap(),
        vec![vec![q(0), q(0)], vec![q(0), q(3)], vec![q(2), q(2)], vec![q(3), q(0)]]
    );
    let c = cone_at(&p, &[q(2), q(0)]).unwrap();
    assert_eq!(c.rays, vec![vec![-2, 1], vec![-1, 0]]);
    assert!(c.polar_contains(&RhoVector::delta().cone_functional(), true));
    // the maximizing vertex of delta
    let best = |poly: &LatticePolytope| {
        poly.vertices()
            .unwrap()
            .into_iter()
            .max_by_key(|v| &v[0] + &v[1])
            .unwrap()
    };
    assert_eq!(best(&p), vec![q(2), q(0)]);
    assert_eq!(best(&h), vec![q(2), q(2)]);
    let e13 = NamedPolytope2D::E13.polytope().vertices().unwrap();
    assert_eq!(e13, vec![vec![q(0), q(0)], vec![q(2), q(0)]]);
    let e12 = NamedPolytope2D::E12.polytope().vertices().unwrap();
    assert_eq!(e12, vec![vec![q(0), q(0)], vec![q(0), q(1)]]);
}

#[test]
fn lattice_counts_and_plain_sums() {
    assert_eq!(lattice_count(&NamedPolytope2D::P.dilate(1)).unwrap(), 4);
    assert_eq!(lattice_count(&NamedPolytope2D::P.dilate(2)).unwrap(), 9);
    assert_eq!(lattice_count(&NamedPolytope2D::H.dilate(1)).unwrap(), 11);
    let w = RationalExp::int(2, vec![2, 2]);
    let p2 = NamedPolytope2D::P.dilate(2);
    assert_eq!(brion_sum(&p2, &w).unwrap(), q(441));
    assert_eq!(brute_sum(&p2, &w).unwrap(), q(441));
}

#[test]
fn pair_delta_well_defined_mod_diagonal() {
    for a in -5..5 {
        for b in -5..5 {
            for c in -5..5 {
                let v = WeylVector::from_partition([a, b, c]);
                let w = WeylVector::from_partition([a + 1, b + 1, c + 1]);
                assert_eq!(v.pair_delta(), w.pair_delta());
                assert_eq!(v.pair_delta(), a - c);
            }
        }
    }
}

#[test]
fn json_export_is_stable() {
    for p in NamedPolytope2D::ALL {
        let s = p.dilate(3).to_json_string();
        assert_eq!(LatticePolytope::from_json_str(&s).unwrap().to_json_string(), s);
    }
}

proptest! {
    #[test]
    fn coordinate_roundtrips(r in -40i64..40, s in -40i64..40) {
        let v = WeylVector::new(r, s);
        prop_assert_eq!(WeylVector::from_frak(&v.frak()).unwrap(), v);
        prop_assert_eq!(WeylVector::from_partition(v.partition()), v);
        let f = v.frak();
        prop_assert_eq!(&f[0] + &f[1] + &f[2], q(0));
        let p = v.partition();
        prop_assert_eq!(p[0] >= p[1] && p[1] >= 0, v.is_dominant());
    }

    #[test]
    fn dominant_representative_maximizes_delta(r in 0i64..30, s in 0i64..30) {
        let v = WeylVector::new(r, s);
        for sigma in S3_ELEMENTS {
            prop_assert!(dominance_gap(&v, &sigma) >= 0);
        }
    }

    #[test]
    fn named_brion_equals_brute(which in 0usize..7, m in 0i64..=8, a in -60i64..60, b in -60i64..60) {
        let poly = NamedPolytope2D::ALL[which].dilate(m);
        let w = ComplexExp::new(3.0, vec![Complex64::new(a as f64 / 17.0, 0.3), Complex64::new(b as f64 / 19.0, -0.2)]);
        match brion_sum(&poly, &w) {
            Ok(x) => {
                let y = brute_sum(&poly, &w).unwrap();
                prop_assert!((x - y).norm() <= 1e-9 * y.norm());
            }
            Err(PolytopeError::Degenerate(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
