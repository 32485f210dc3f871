use num_rational::BigRational;
use qe_bounds::upper::{upper_csv, UpperRow};
use qe_bounds::em_lambda_upper;
use qe_building::em_lambda_card;
use qe_weyl::{in_hm, WeylVector};
use std::sync::OnceLock;

fn shapes(m: i64) -> Vec<WeylVector> {
    let mut v = Vec::new();
    for r in 0..=3 * m {
        for s in 0..=3 * m {
            let l = WeylVector::new(r, s);
            if in_hm(&l, m) {
                v.push(l);
            }
        }
    }
    v
}

#[test]
fn envelope_examples() {
    let b = em_lambda_upper(2, 2, WeylVector::new(2, 2)).unwrap();
    assert_eq!(b.envelope, BigRational::from_integer(16.into()));
    let b = em_lambda_upper(2, 3, WeylVector::ZERO).unwrap();
    assert_eq!(b.envelope, BigRational::from_integer(4096.into()));
    // lambda = 0 envelope against card(E_m) = 43, 841
    for (m, card) in [(1, 43), (2, 841)] {
        let b = em_lambda_upper(2, m, WeylVector::ZERO).unwrap();
        println!("m={m}: card(E_m)={card}, envelope={}, polytope route={:.6}", b.envelope, b.polytope_f64());
        assert_eq!(qe_hecke::card_em_direct(2, m), card.into());
    }
}

#[test]
fn outside_hm_has_no_intersection() {
    let lam = WeylVector::new(4, 0);
    assert!(!in_hm(&lam, 1));
    assert_eq!(em_lambda_card(2, 1, lam).unwrap(), 0);
}

fn grid() -> &'static [UpperRow] {
    static ROWS: OnceLock<Vec<UpperRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let mut rows = Vec::new();
        for m in 1..=2 {
            for lam in shapes(m) {
                let exact = em_lambda_card(2, m, lam).unwrap() as u64;
                let b = em_lambda_upper(2, m, lam).unwrap();
                rows.push(UpperRow::new(2, m, lam, exact, &b));
            }
        }
        rows
    })
}

#[test]
fn building_count_within_polytope_route() {
    let rows = grid();
    print!("{}", upper_csv(rows));
    let bad: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn building_count_within_injection_route() {
    let bad: Vec<_> = grid().iter().filter(|r| !r.pass_injection).collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn polytope_route_over_envelope_is_bounded() {
    let c = grid().iter().map(|r| r.ratio).fold(0.0, f64::max);
    println!("fitted C = {c:.6}");
    assert!(c.is_finite() && c < 10.0);
}
