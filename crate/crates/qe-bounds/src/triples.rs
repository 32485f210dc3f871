//! The polytope `P_alpha(m, r, s)` of admissible coordinates `(a_1, a_2, k, b_1, b_2)`,
//! the functional `beta` and the per-coordinate counting bound.

use crate::Direction;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use qe_building::TripleCoords;
use qe_hecke::{n_lambda, nu_m};
use qe_weyl::WeylVector;
use qe_polytope::{Inequality, LatticePolytope};

type Q = BigRational;

/// `(beta, (a_1, a_2, k, b_1, b_2)) = k/2 + b_1 + b_2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BetaFunctional;

impl BetaFunctional {
    /// Twice the coefficients, so that they are integral.
    pub const DOUBLED: [i64; 5] = [0, 0, 1, 2, 2];

    pub fn coefficients(&self) -> [Q; 5] {
        Self::DOUBLED.map(|c| Q::new(c.into(), 2.into()))
    }

    pub fn doubled(&self, x: &[i64; 5]) -> i64 {
        Self::DOUBLED.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn value(&self, x: &[i64; 5]) -> Q {
        Q::new(self.doubled(x).into(), 2.into())
    }

    /// Twice the dominating value `2m - r/2 - s/2`.
    pub fn doubled_cap(m: i64, r: i64, s: i64) -> i64 {
        4 * m - r - s
    }
}

/// Integer inequalities `a . (a_1, a_2, k, b_1, b_2) <= b` of `P_alpha(m, r, s)`.
pub fn triple_inequalities(alpha: Direction, m: i64, r: i64, s: i64) -> Vec<([i64; 5], i64)> {
    let mut v = vec![
        ([1, 0, 0, 0, 0], r),
        ([0, 1, 0, 0, 0], s),
        ([-1, 0, 0, 0, 0], 0),
        ([0, -1, 0, 0, 0], 0),
        ([0, 0, -1, 0, 0], 0),
        ([0, 0, 0, -1, 0], 0),
        ([0, 0, 0, 0, -1], 0),
    ];
    match alpha {
        Direction::First => {
            // d(x, z) = (a_1 + b_1, a_2 + k + b_2) in P_m
            v.push(([1, 2, 2, 1, 2], 2 * m));
            // d(y, z) = (s - a_2 + k + b_1, r - a_1 - k + b_2) in P_m
            v.push(([-2, -1, -1, 1, 2], 2 * m - s - 2 * r));
            v.push(([1, 0, 1, 0, 0], r));
        }
        Direction::Second => {
            v.push(([1, 2, 1, 1, 2], 2 * m));
            v.push(([-2, -1, 1, 1, 2], 2 * m - s - 2 * r));
            v.push(([0, 1, 1, 0, 0], s));
        }
    }
    v
}

/// `P_alpha(m, r, s)` in coordinates `(a_1, a_2, k, b_1, b_2)`.
pub fn triple_polytope(alpha: Direction, m: i64, r: i64, s: i64) -> LatticePolytope {
    let ineqs = triple_inequalities(alpha, m, r, s)
        .iter()
        .map(|(a, b)| Inequality::int(a, *b))
        .collect();
    LatticePolytope::new(5, ineqs).expect("well formed")
}

/// Whether the coordinates of a triple lie in `P_alpha(m, r, s)` for their own `alpha`.
pub fn coords_in_polytope(c: &TripleCoords, m: i64) -> bool {
    let x = [c.a1, c.a2, c.k, c.b1, c.b2];
    triple_inequalities(c.alpha, m, c.r, c.s)
        .iter()
        .all(|(a, b)| a.iter().zip(&x).map(|(u, v)| u * v).sum::<i64>() <= *b)
}

fn nu3(q: u32) -> Q {
    nu_m(3, &Q::new(BigInt::one(), BigInt::from(q)))
}

fn q_pow(q: u32, e: i64) -> Q {
    let base = Q::from_integer(BigInt::from(q));
    Pow::pow(&base, i32::try_from(e).expect("exponent in range"))
}

/// `2 / nu_3(q^{-1}) * (q^2)^{k/2 + b_1 + b_2}`.
pub fn count_bound(q: u32, c: &TripleCoords) -> Q {
    Q::from_integer(2.into()) / nu3(q) * q_pow(q, c.k + 2 * c.b1 + 2 * c.b2)
}

/// `T(k) * N_{(b_1, b_2)}` with `T(k)` the number of equilateral triangles on
/// a segment of length `k`: the size of the set the triples inject into.
pub fn injection_bound(q: u32, c: &TripleCoords) -> Q {
    let qi = q as i64;
    let triangles = if c.k == 0 { 1 } else { (qi + 1) * qi.pow(c.k as u32 - 1) };
    let n = Q::from_integer(n_lambda(q, &WeylVector::new(c.b1, c.b2)));
    Q::from_integer(triangles.into()) * n
}
