//! Extreme rays of pointed polyhedral cones `{x : A x <= 0}` by the
//! double description method, in exact integer arithmetic.

use crate::error::{PolytopeError, Result};
use crate::linalg::{self, Q};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_q(rows: &[&Vec<BigInt>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect()
}

/// Extreme rays of `{x : a x <= 0 for a in rows}` as primitive integer vectors,
/// sorted lexicographically. The zero cone yields an empty list.
pub fn extreme_rays_big(rows: &[Vec<Q>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    for r in rows {
        if r.len() != dim {
            return Err(PolytopeError::Dimension { expected: dim, got: r.len() });
        }
    }
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| linalg::clear_denominators(r, &Q::zero()).0)
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let qrows: Vec<Vec<Q>> = to_q(&int_rows.iter().collect::<Vec<_>>());
    let basis = linalg::independent_rows(&qrows);
    if basis.len() < dim {
        return Err(PolytopeError::NotPointed);
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    // Initial simplicial cone: rays are the columns of -A_I^{-1}.
    let a_i: Vec<Vec<Q>> = basis.iter().map(|&i| qrows[i].clone()).collect();
    let inv = linalg::inverse(&a_i).expect("independent rows");
    let mut rays: Vec<Vec<BigInt>> = (0..dim)
        .map(|j| {
            let col: Vec<Q> = (0..dim).map(|i| -inv[i][j].clone()).collect();
            linalg::primitive(&col)
        })
        .collect();
    let mut processed: Vec<usize> = basis.clone();

    for (idx, a) in int_rows.iter().enumerate() {
        if basis.contains(&idx) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            processed.push(idx);
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Vec<BigInt>> = (0..rays.len())
            .filter(|&i| !vals[i].is_positive())
            .map(|i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &n in &neg {
                let tight: Vec<&Vec<BigInt>> = processed
                    .iter()
                    .map(|&k| &int_rows[k])
                    .filter(|row| idot(row, &rays[p]).is_zero() && idot(row, &rays[n]).is_zero())
                    .collect();
                if tight.len() + 2 < dim || linalg::rank(&to_q(&tight)) != dim - 2 {
                    continue;
                }
                let comb: Vec<BigInt> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(x, y)| &vals[p] * x - &vals[n] * y)
                    .collect();
                next.push(linalg::primitive_int(&comb));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(idx);
    }
    rays.retain(|r| r.iter().any(|x| !x.is_zero()));
    rays.sort();
    rays.dedup();
    Ok(rays)
}

/// As [`extreme_rays_big`] but with machine-integer output.
pub fn extreme_rays(rows: &[Vec<Q>], dim: usize) -> Result<Vec<Vec<i64>>> {
    extreme_rays_big(rows, dim)?
        .iter()
        .map(|r| linalg::to_i64(r).ok_or(PolytopeError::Overflow))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn orthant() {
        let rows = vec![vec![q(-1), q(0)], vec![q(0), q(-1)]];
        assert_eq!(extreme_rays(&rows, 2).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn half_space_not_pointed() {
        let rows = vec![vec![q(1), q(0)]];
        assert_eq!(extreme_rays(&rows, 2), Err(PolytopeError::NotPointed));
    }

    #[test]
    fn zero_cone() {
        let rows = vec![vec![q(1)], vec![q(-1)]];
        assert!(extreme_rays(&rows, 1).unwrap().is_empty());
    }

    #[test]
    fn square_pyramid() {
        // cone over the square [-1,1]^2 at height 1
        let rows = vec![
            vec![q(1), q(0), q(-1)],
            vec![q(-1), q(0), q(-1)],
            vec![q(0), q(1), q(-1)],
            vec![q(0), q(-1), q(-1)],
        ];
        let r = extreme_rays(&rows, 3).unwrap();
        assert_eq!(
            r,
            vec![vec![-1, -1, 1], vec![-1, 1, 1], vec![1, -1, 1], vec![1, 1, 1]]
        );
    }
}
