//! Geometry of the standard apartment of type Ã₂.
//!
//! Points of the coweight lattice are stored in *cone coordinates* `(r, s)`,
//! meaning `r (1,0,0) + s (1,1,0)` modulo `(1,1,1)`. The partition form of a
//! dominant vector is `(r + s, s, 0)`; the 𝔞-form is its projection to the
//! plane of coordinate sum zero.

mod apartment;
mod polytopes;

pub use apartment::{apartment_ball_intersection, s3_act, s3_orbit, S3, S3_ELEMENTS};
pub use polytopes::NamedPolytope2D;

use num_traits::{Signed, Zero};
use qe_polytope::linalg::{q, qf};
use qe_polytope::Q;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("({0}, {1}) is outside the dominant chamber")]
    NotDominant(i64, i64),
    #[error("coordinates {0:?} do not describe a coweight")]
    NotInLattice(Vec<String>),
}

pub type Result<T> = std::result::Result<T, WeylError>;

/// A point of the coweight lattice in cone coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeylVector {
    pub r: i64,
    pub s: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordSystem {
    Cone,
    Partition,
    Frak,
}

/// `p^dagger`, the vertex of `P` maximizing `(delta, .)`.
pub const P_DAGGER: WeylVector = WeylVector { r: 2, s: 0 };
/// `h^dagger`, the vertex of `H` maximizing `(delta, .)`.
pub const H_DAGGER: WeylVector = WeylVector { r: 2, s: 2 };

impl WeylVector {
    pub const ZERO: WeylVector = WeylVector { r: 0, s: 0 };

    pub const fn new(r: i64, s: i64) -> Self {
        WeylVector { r, s }
    }

    pub fn is_dominant(&self) -> bool {
        self.r >= 0 && self.s >= 0
    }

    fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(WeylError::NotDominant(self.r, self.s))
        }
    }

    /// `(r + s, s, 0)`; only a genuine partition when dominant.
    pub fn partition(&self) -> [i64; 3] {
        [self.r + self.s, self.s, 0]
    }

    /// Projection of the partition vector to the sum-zero plane.
    pub fn frak(&self) -> [Q; 3] {
        let p = self.partition();
        let mean = qf(p[0] + p[1] + p[2], 3);
        [q(p[0]) - &mean, q(p[1]) - &mean, q(p[2]) - &mean]
    }

    pub fn convert(&self, target: CoordSystem) -> Vec<Q> {
        match target {
            CoordSystem::Cone => vec![q(self.r), q(self.s)],
            CoordSystem::Partition => self.partition().iter().map(|&x| q(x)).collect(),
            CoordSystem::Frak => self.frak().to_vec(),
        }
    }

    /// Any integer 3-vector, read modulo `(1,1,1)`.
    pub fn from_partition(l: [i64; 3]) -> Self {
        WeylVector { r: l[0] - l[1], s: l[1] - l[2] }
    }

    /// Inverse of [`frak`](Self::frak); fails off the lattice.
    pub fn from_frak(x: &[Q; 3]) -> Result<Self> {
        let r = &x[0] - &x[1];
        let s = &x[1] - &x[2];
        let sum = &x[0] + &x[1] + &x[2];
        if !r.is_integer() || !s.is_integer() || !sum.is_zero() {
            return Err(WeylError::NotInLattice(x.iter().map(|v| v.to_string()).collect()));
        }
        let to = |v: Q| v.to_integer().try_into().expect("coordinate fits i64");
        Ok(WeylVector { r: to(r), s: to(s) })
    }

    /// `(delta, v) = lambda_1 - lambda_3 = r + s`.
    pub fn pair_delta(&self) -> i64 {
        self.r + self.s
    }

    /// `lambda -> lambda^vee`, i.e. `(r, s) -> (s, r)`.
    pub fn dual(&self) -> Result<Self> {
        self.require_dominant()?;
        Ok(WeylVector { r: self.s, s: self.r })
    }

    /// `|v|_P = (r + 2s)/2`.
    pub fn norm_p(&self) -> Result<Q> {
        self.require_dominant()?;
        Ok(qf(self.r + 2 * self.s, 2))
    }

    /// `|v|_H = max(2r + s, r + 2s)/6`.
    pub fn norm_h(&self) -> Result<Q> {
        self.require_dominant()?;
        Ok(qf((2 * self.r + self.s).max(self.r + 2 * self.s), 6))
    }

    /// `|v|_P` rounded up.
    pub fn norm_p_ceil(&self) -> Result<i64> {
        Ok(ceil(&self.norm_p()?))
    }

    /// `|v|_H` rounded up.
    pub fn norm_h_ceil(&self) -> Result<i64> {
        Ok(ceil(&self.norm_h()?))
    }

    /// All `(r', s')` with `0 <= r' <= r`, `0 <= s' <= s`.
    pub fn para_lattice(&self) -> Result<Vec<WeylVector>> {
        self.require_dominant()?;
        Ok((0..=self.r)
            .flat_map(|a| (0..=self.s).map(move |b| WeylVector::new(a, b)))
            .collect())
    }

    /// The partial order `self <= other` coordinatewise in cone coordinates.
    pub fn preceq(&self, other: &WeylVector) -> bool {
        self.r <= other.r && self.s <= other.s
    }

    pub fn add(&self, o: &WeylVector) -> WeylVector {
        WeylVector::new(self.r + o.r, self.s + o.s)
    }

    pub fn scale(&self, m: i64) -> WeylVector {
        WeylVector::new(m * self.r, m * self.s)
    }
}

fn ceil(x: &Q) -> i64 {
    x.ceil().to_integer().try_into().expect("fits")
}

/// `lambda in H_m`: `2r + s <= 6m` and `r + 2s <= 6m`.
pub fn in_hm(v: &WeylVector, m: i64) -> bool {
    v.is_dominant() && 2 * v.r + v.s <= 6 * m && v.r + 2 * v.s <= 6 * m
}

/// `lambda in P_m`: `r + 2s <= 2m`.
pub fn in_pm(v: &WeylVector, m: i64) -> bool {
    v.is_dominant() && v.r + 2 * v.s <= 2 * m
}

/// The fixed functional `delta = (1, 0, -1)` and friends, as 𝔞-vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoVector(pub [Q; 3]);

impl RhoVector {
    pub fn delta() -> Self {
        RhoVector([q(1), q(0), q(-1)])
    }

    pub fn of(v: &WeylVector) -> Self {
        RhoVector(v.frak())
    }

    /// Exact pairing with a lattice point (via the 𝔞-form).
    pub fn pair(&self, v: &WeylVector) -> Q {
        let f = v.frak();
        self.0.iter().zip(f.iter()).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    /// The functional as cone-coordinate coefficients `(x_1, x_1 + x_2)`.
    pub fn cone_functional(&self) -> [Q; 2] {
        [self.0[0].clone(), &self.0[0] + &self.0[1]]
    }
}

/// `(delta, sigma.v) <= (delta, v)` holds for dominant `v`; exposed for tests.
pub fn dominance_gap(v: &WeylVector, sigma: &S3) -> i64 {
    v.pair_delta() - s3_act(sigma, v).pair_delta()
}

/// Sign helper used by downstream crates.
pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(WeylVector::new(0, 0).frak(), [q(0), q(0), q(0)]);
        assert_eq!(P_DAGGER.frak(), [qf(4, 3), qf(-2, 3), qf(-2, 3)]);
        assert_eq!(H_DAGGER.partition(), [4, 2, 0]);
        assert_eq!(P_DAGGER.pair_delta(), 2);
        assert_eq!(RhoVector::delta().pair(&P_DAGGER), q(2));
        assert_eq!(RhoVector::delta().pair(&H_DAGGER), q(4));
        assert_eq!(WeylVector::from_partition([1, 0, 0]).dual().unwrap().partition(), [1, 1, 0]);
        assert_eq!(WeylVector::new(3, 1).dual().unwrap(), WeylVector::new(1, 3));
        assert_eq!(WeylVector::new(2, 0).norm_p().unwrap(), q(1));
        let v = WeylVector::new(1, 1);
        assert_eq!(v.norm_p().unwrap(), qf(3, 2));
        assert_eq!(v.norm_p_ceil().unwrap(), 2);
        assert_eq!(v.norm_h().unwrap(), qf(1, 2));
        assert!(in_hm(&WeylVector::new(0, 0), 0));
        assert!(in_hm(&H_DAGGER, 1));
        assert!(!in_hm(&WeylVector::new(3, 1), 1));
        assert_eq!(WeylVector::new(1, 1).para_lattice().unwrap().len(), 4);
        assert_eq!(
            WeylVector::new(2, 0).para_lattice().unwrap(),
            vec![WeylVector::new(0, 0), WeylVector::new(1, 0), WeylVector::new(2, 0)]
        );
        assert!(WeylVector::new(-1, 0).dual().is_err());
        assert_eq!(RhoVector::delta().cone_functional(), [q(1), q(1)]);
    }
}
