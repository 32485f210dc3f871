//! ν-factors and sphere volumes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use qe_weyl::WeylVector;

type Q = BigRational;

/// `nu_m(t) = prod_{i=1}^m (1 - t^i)/(1 - t) = prod_{i=1}^m (1 + t + ... + t^{i-1})`.
pub fn nu_m(m: usize, t: &Q) -> Q {
    let mut out = Q::one();
    for i in 1..=m {
        let mut s = Q::one();
        let mut p = Q::one();
        for _ in 1..i {
            p = &p * t;
            s += &p;
        }
        out *= s;
    }
    out
}

/// `nu_lambda(t) = prod over distinct part values of nu_{multiplicity}(t)`.
pub fn nu_lambda(lambda: [i64; 3], t: &Q) -> Q {
    let mut parts = lambda.to_vec();
    parts.sort();
    let mut out = Q::one();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        out *= nu_m(j - i, t);
        i = j;
    }
    out
}

pub fn nu_lambda_f64(v: &WeylVector, t: f64) -> f64 {
    match (v.r > 0, v.s > 0) {
        (true, true) => 1.0,
        (false, false) => (1.0 + t) * (1.0 + t + t * t),
        _ => 1.0 + t,
    }
}

/// `N_lambda = q^{2 (delta, lambda)} nu_3(q^{-1}) / nu_lambda(q^{-1})`, the
/// number of vertices at Weyl distance `lambda` from a fixed vertex.
pub fn n_lambda(q: u32, v: &WeylVector) -> BigInt {
    let t = Q::new(BigInt::one(), BigInt::from(q));
    let qq = Q::from_integer(BigInt::from(q));
    let e = 2 * v.pair_delta();
    let val: Q = Pow::pow(&qq, e as i32) * nu_m(3, &t) / nu_lambda(v.partition(), &t);
    debug_assert!(val.is_integer());
    val.to_integer()
}

/// `card(E_m)` as the direct sum of `N_lambda` over the lattice points of `P_m`.
pub fn card_em_direct(q: u32, m: i64) -> BigInt {
    let mut total = BigInt::from(0);
    for s in 0..=m {
        for r in 0..=2 * (m - s) {
            total += n_lambda(q, &WeylVector::new(r, s));
        }
    }
    total
}

/// `card(E_m) / q^{4m}` in floating point.
pub fn card_em_scaled(q: u32, m: i64) -> f64 {
    let c = Q::from_integer(card_em_direct(q, m));
    let d: Q = Pow::pow(&Q::from_integer(BigInt::from(q)), (4 * m) as i32);
    (c / d).to_f64().unwrap()
}
