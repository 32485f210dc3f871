//! The polytope-route bound on `card(E_m ∩ varpi^lambda E_m)` and its envelope.

use crate::triples::{injection_bound, triple_polytope, BetaFunctional};
use crate::{BoundsError, Result, TripleCoords, DIRECTIONS};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use qe_hecke::nu_m;
use qe_polytope::{brute_sum, lattice_points, RationalExp};
use qe_weyl::WeylVector;
use serde::Serialize;

type Q = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub struct EmLambdaUpper {
    /// `sum_alpha sum_{x in P_alpha(m, r, s)} 2/nu_3(q^{-1}) (q^2)^{(beta, x)}`.
    pub polytope_route: Q,
    /// `(q^2)^{2m - r/2 - s/2}`.
    pub envelope: Q,
    /// `sum_alpha sum_x T(k) N_{(b_1, b_2)}`, the per-coordinate bound without
    /// rounding `T(k)` and `N_b` to a power of `q^2`.
    pub injection_route: Q,
}

impl EmLambdaUpper {
    pub fn polytope_f64(&self) -> f64 {
        self.polytope_route.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn envelope_f64(&self) -> f64 {
        self.envelope.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `polytope_route / envelope`.
    pub fn ratio(&self) -> f64 {
        (&self.polytope_route / &self.envelope).to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Both bounds as exact rationals. `(q^2)^{(beta, x)} = q^{(2 beta, x)}` has an
/// integral exponent, so the sum is taken over `Z^5` with base `q`.
pub fn em_lambda_upper(q: u32, m: i64, lambda: WeylVector) -> Result<EmLambdaUpper> {
    if !lambda.is_dominant() || m < 0 {
        return Err(BoundsError::InvalidParam(format!("need m >= 0 and dominant lambda, got m={m}, {lambda:?}")));
    }
    let (r, s) = (lambda.r, lambda.s);
    let w = RationalExp::int(q as i64, BetaFunctional::DOUBLED.to_vec());
    let mut sum = Q::from_integer(0.into());
    let mut injection = Q::from_integer(0.into());
    for alpha in DIRECTIONS {
        let poly = triple_polytope(alpha, m, r, s);
        sum += brute_sum(&poly, &w)?;
        for x in lattice_points(&poly)? {
            let x: Vec<i64> = x.iter().map(|v| v.to_integer().to_i64().expect("integral")).collect();
            let c = TripleCoords { r, s, a1: x[0], a2: x[1], k: x[2], alpha, b1: x[3], b2: x[4] };
            injection += injection_bound(q, &c);
        }
    }
    let qq = Q::from_integer(BigInt::from(q));
    let pref = Q::from_integer(2.into()) / nu_m(3, &(Q::one() / &qq));
    let e = i32::try_from(BetaFunctional::doubled_cap(m, r, s)).expect("exponent in range");
    Ok(EmLambdaUpper { polytope_route: pref * sum, envelope: Pow::pow(&qq, e), injection_route: injection })
}

/// One grid cell of the comparison with the building count.
#[derive(Clone, Debug, Serialize)]
pub struct UpperRow {
    pub q: u32,
    pub m: i64,
    pub r: i64,
    pub s: i64,
    pub exact: u64,
    pub bound: f64,
    pub envelope: f64,
    pub ratio: f64,
    pub pass: bool,
    pub injection: f64,
    pub pass_injection: bool,
}

impl UpperRow {
    pub fn new(q: u32, m: i64, lambda: WeylVector, exact: u64, b: &EmLambdaUpper) -> Self {
        let e = Q::from_integer(exact.into());
        let pass = e <= b.polytope_route;
        let pass_injection = e <= b.injection_route;
        UpperRow {
            q,
            m,
            r: lambda.r,
            s: lambda.s,
            exact,
            bound: b.polytope_f64(),
            envelope: b.envelope_f64(),
            ratio: b.ratio(),
            pass,
            injection: b.injection_route.to_f64().unwrap_or(f64::INFINITY),
            pass_injection,
        }
    }
}

pub fn upper_csv(rows: &[UpperRow]) -> String {
    let mut out = String::from("q,m,r,s,exact,bound,envelope,ratio,pass,injection_bound,pass_injection\n");
    for x in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:.11e},{:.11e},{:.11e},{},{:.11e},{}\n",
            x.q, x.m, x.r, x.s, x.exact, x.bound, x.envelope, x.ratio, x.pass, x.injection, x.pass_injection
        ));
    }
    out
}
