//! Verifications shared by the CLI and the acceptance suite. Each returns an
//! [`Outcome`](crate::report::Outcome) with results and named checks.

pub mod bounds;
pub mod building;
pub mod geometry;
pub mod hecke;
pub mod polytope;
pub mod tree;

use qe_weyl::{in_hm, WeylVector};

/// Lattice points of `H_m` in cone coordinates, sorted.
pub fn hm_points(m: i64) -> Vec<WeylVector> {
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
