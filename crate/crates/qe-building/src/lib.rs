//! The Bruhat–Tits building of `PGL(3, Q_p)` for small primes `p`.
//!
//! Vertices are homothety classes of `Z_p`-lattices in `Q_p^3`, stored as the
//! column Hermite normal form of the representative contained in `Z_p^3` but
//! not in `p Z_p^3`. Every lattice of this kind contains `p^N Z_p^3`, so all
//! arithmetic is exact over the integers.

pub mod ball;
pub mod counts;
pub mod lattice;
pub mod triples;

use lattice::{canonical_hnf, is_prime, relative_position, Mat};
use qe_weyl::WeylVector;
use serde::Serialize;
use thiserror::Error;

pub use ball::{ball, polytopal_ball, sphere, Ball};
pub use counts::{ball_growth, em_lambda_card, transition_census, BallGrowth};
pub use triples::{
    classify_triple, confluence_points, geodesic_interval, is_additive_triple, is_primitive_triple, para,
    triangle_count, Classification, Direction, TripleCoords,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildingError {
    #[error("not a lattice: the matrix is singular")]
    NotALattice,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("vertices belong to buildings over different primes")]
    PrimeMismatch,
    #[error("triple classification failed: {0}")]
    Classification(String),
}

pub type Result<T> = std::result::Result<T, BuildingError>;

/// Edge colour: `1` when `d(v, w) = (1,0,0)` and `2` when `d(v, w) = (1,1,0)`.
pub type Color = u8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BuildingVertex {
    pub p: u32,
    pub hnf: Mat,
}

impl BuildingVertex {
    /// The class of `Z_p^3`.
    pub fn standard(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(BuildingError::NotPrime(p));
        }
        Ok(BuildingVertex { p, hnf: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] })
    }

    /// Canonical vertex of the lattice spanned by the columns of `m`.
    pub fn canonicalize(m: &Mat, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(BuildingError::NotPrime(p));
        }
        let m = m.map(|r| r.map(|x| x as i128));
        Ok(BuildingVertex { p, hnf: canonical_hnf(p, &m)? })
    }

    /// `varpi^lambda` applied to the standard vertex, `lambda` a partition.
    pub fn diagonal(p: u32, lambda: [i64; 3]) -> Result<Self> {
        if lambda.iter().any(|&x| !(0..40).contains(&x)) {
            return Err(BuildingError::ResourceLimit("diagonal exponents must lie in 0..40".into()));
        }
        let d = lambda.map(|e| (p as i64).pow(e as u32));
        Self::canonicalize(&[[d[0], 0, 0], [0, d[1], 0], [0, 0, d[2]]], p)
    }

    /// All `2(p^2+p+1)` neighbours: the preimages of the proper nonzero
    /// subspaces of `L/pL`, with their colours.
    pub fn neighbors(&self) -> Vec<(BuildingVertex, Color)> {
        let p = self.p as i128;
        let b = self.hnf.map(|r| r.map(|x| x as i128));
        let col = |v: [i128; 3]| -> [i128; 3] {
            let mut out = [0i128; 3];
            for i in 0..3 {
                out[i] = (0..3).map(|k| b[i][k] * v[k]).sum();
            }
            out
        };
        let n = lattice::val(p, lattice::det(&self.hnf)).unwrap() + 1;
        let mut base: Vec<[i128; 3]> = (0..3)
            .map(|j| {
                let mut e = [0i128; 3];
                e[j] = p;
                col(e)
            })
            .collect();
        let nb = base.len();
        let mut out = Vec::with_capacity(2 * (self.p * self.p + self.p + 1) as usize);
        for phi in projective_points(self.p) {
            // line spanned by phi: colour 2 (index p^2); plane ker(phi): colour 1
            base.truncate(nb);
            base.push(col(phi));
            out.push((self.finish(&base, n), 2));
            base.truncate(nb);
            for v in kernel_basis(self.p, phi) {
                base.push(col(v));
            }
            out.push((self.finish(&base, n), 1));
        }
        out
    }

    fn finish(&self, gens: &[[i128; 3]], n: u32) -> BuildingVertex {
        let p = self.p as i128;
        let mut h = lattice::hnf_mod(p, n, gens);
        while h.iter().flatten().all(|&x| x % p == 0) {
            for x in h.iter_mut().flatten() {
                *x /= p;
            }
        }
        BuildingVertex { p: self.p, hnf: h.map(|r| r.map(|x| x as i64)) }
    }

    pub fn neighbors_of_color(&self, c: Color) -> Vec<BuildingVertex> {
        self.neighbors().into_iter().filter(|(_, k)| *k == c).map(|(v, _)| v).collect()
    }

    /// `log_p [Z_p^3 : L]` of the canonical representative.
    pub fn index_exponent(&self) -> u32 {
        lattice::val(self.p as i128, lattice::det(&self.hnf)).unwrap()
    }
}

/// Normalized representatives `(1,a,b), (0,1,a), (0,0,1)` of `P^2(F_p)`.
pub fn projective_points(p: u32) -> Vec<[i128; 3]> {
    let p = p as i128;
    let mut v = Vec::new();
    for a in 0..p {
        for b in 0..p {
            v.push([1, a, b]);
        }
    }
    for a in 0..p {
        v.push([0, 1, a]);
    }
    v.push([0, 0, 1]);
    v
}

/// Basis of `{x in F_p^3 : phi . x = 0}` for a normalized `phi`.
fn kernel_basis(p: u32, phi: [i128; 3]) -> [[i128; 3]; 2] {
    let p = p as i128;
    let neg = |x: i128| (-x).rem_euclid(p);
    if phi[0] == 1 {
        [[neg(phi[1]), 1, 0], [neg(phi[2]), 0, 1]]
    } else if phi[1] == 1 {
        [[1, 0, 0], [0, neg(phi[2]), 1]]
    } else {
        [[1, 0, 0], [0, 1, 0]]
    }
}

/// Weyl-chamber-valued distance `d(x, y)` in partition coordinates `(l_1, l_2, 0)`.
pub fn weyl_distance_partition(x: &BuildingVertex, y: &BuildingVertex) -> Result<[i64; 3]> {
    if x.p != y.p {
        return Err(BuildingError::PrimeMismatch);
    }
    Ok(relative_position(x.p, &x.hnf, &y.hnf))
}

/// `d(x, y)` in cone coordinates.
pub fn weyl_distance(x: &BuildingVertex, y: &BuildingVertex) -> WeylVector {
    WeylVector::from_partition(relative_position(x.p, &x.hnf, &y.hnf))
}

/// Combinatorial (gallery) distance `r + s`.
pub fn combinatorial_distance(x: &BuildingVertex, y: &BuildingVertex) -> i64 {
    let d = weyl_distance(x, y);
    d.r + d.s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert_eq!(BuildingVertex::canonicalize(&id, 2).unwrap().hnf, id);
        let pid = [[3, 0, 0], [0, 3, 0], [0, 0, 3]];
        assert_eq!(BuildingVertex::canonicalize(&pid, 3).unwrap().hnf, id);
        let d = [[4, 0, 0], [0, 2, 0], [0, 0, 1]];
        assert_eq!(BuildingVertex::canonicalize(&d, 2).unwrap().hnf, d);
        let sing = [[1, 2, 0], [2, 4, 0], [0, 0, 1]];
        assert_eq!(BuildingVertex::canonicalize(&sing, 2), Err(BuildingError::NotALattice));
        assert_eq!(BuildingVertex::standard(4), Err(BuildingError::NotPrime(4)));
    }

    #[test]
    fn distance_examples() {
        let o = BuildingVertex::standard(2).unwrap();
        let v = BuildingVertex::diagonal(2, [1, 0, 0]).unwrap();
        assert_eq!(weyl_distance_partition(&o, &o).unwrap(), [0, 0, 0]);
        assert_eq!(weyl_distance_partition(&o, &v).unwrap(), [1, 0, 0]);
        assert_eq!(weyl_distance(&v, &o), WeylVector::new(0, 1));
    }

    #[test]
    fn neighbor_counts() {
        for (p, n) in [(2, 14), (3, 26), (5, 62)] {
            let o = BuildingVertex::standard(p).unwrap();
            let nb = o.neighbors();
            assert_eq!(nb.len(), n);
            let mut set: Vec<_> = nb.iter().map(|(v, _)| v.clone()).collect();
            set.sort();
            set.dedup();
            assert_eq!(set.len(), n);
            for (v, c) in &nb {
                let want = if *c == 1 { WeylVector::new(1, 0) } else { WeylVector::new(0, 1) };
                assert_eq!(weyl_distance(&o, v), want);
            }
        }
    }
}
