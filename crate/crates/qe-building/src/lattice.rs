//! Integer Hermite normal form of `Z_p`-lattices and elementary divisors.

use crate::{BuildingError, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Mat = [[i64; 3]; 3];

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `v_p(n)`, with `None` for `n = 0`.
pub fn val(p: i128, mut n: i128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

fn val_big(p: &BigInt, n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    Some(v)
}

pub fn det(m: &Mat) -> i128 {
    let a = |i: usize, j: usize| m[i][j] as i128;
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

/// Column HNF of the lattice spanned by `gens`, which must contain `p^n Z^3`.
///
/// The result is upper triangular with diagonal entries `p^{e_i}` and each
/// entry above the diagonal reduced into `[0, p^{e_i})` of its row.
#[allow(clippy::needless_range_loop)]
pub fn hnf_mod(p: i128, n: u32, gens: &[[i128; 3]]) -> [[i128; 3]; 3] {
    // reducing modulo p^{n+1} keeps the span and never collapses the n = 0 case
    let big = p.pow(n + 1);
    let mut cols: Vec<[i128; 3]> = gens.iter().map(|c| c.map(|x| x.rem_euclid(big))).collect();
    let mut piv = [[0i128; 3]; 3];
    for i in (0..3).rev() {
        for c in cols.iter_mut() {
            for x in c.iter_mut() {
                *x = x.rem_euclid(big);
            }
        }
        let mut e = [0i128; 3];
        e[i] = big;
        cols.push(e);
        loop {
            for c in cols.iter_mut() {
                for x in c[..i].iter_mut() {
                    *x = x.rem_euclid(big);
                }
            }
            // row i is already reduced, so only the rows above need their generators back
            for r in 0..i {
                let mut e = [0i128; 3];
                e[r] = big;
                cols.push(e);
            }
            cols.retain(|c| c.iter().any(|&x| x != 0));
            cols.sort();
            cols.dedup();
            let mut nz: Vec<usize> = (0..cols.len()).filter(|&k| cols[k][i] != 0).collect();
            nz.sort_by_key(|&k| cols[k][i]);
            if nz.len() == 1 {
                break;
            }
            let g = cols[nz[0]];
            for &k in &nz[1..] {
                let f = cols[k][i] / g[i];
                for r in 0..3 {
                    cols[k][r] -= f * g[r];
                }
            }
        }
        let k0 = (0..cols.len()).find(|&k| cols[k][i] != 0).expect("p^n e_i keeps row i nonzero");
        let pc = cols.swap_remove(k0);
        for r in 0..3 {
            piv[r][i] = pc[r];
        }
    }
    // reduce above the diagonal
    for j in 1..3 {
        for i in (0..j).rev() {
            let f = piv[i][j].div_euclid(piv[i][i]);
            for r in 0..=i {
                piv[r][j] -= f * piv[r][i];
            }
        }
    }
    piv
}

/// Canonical representative of the homothety class of the lattice spanned
/// by the columns of `m`: the HNF of the multiple contained in `Z_p^3` but
/// not in `p Z_p^3`.
pub fn canonical_hnf(p: u32, m: &[[i128; 3]; 3]) -> Result<Mat> {
    let pp = p as i128;
    let d = {
        let a = |i: usize, j: usize| BigInt::from(m[i][j]);
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    };
    let n = val_big(&BigInt::from(pp), &d).ok_or(BuildingError::NotALattice)?;
    let gens: Vec<[i128; 3]> = (0..3).map(|j| [m[0][j], m[1][j], m[2][j]]).collect();
    let mut h = hnf_mod(pp, n, &gens);
    while h.iter().flatten().all(|&x| x % pp == 0) {
        for x in h.iter_mut().flatten() {
            *x /= pp;
        }
    }
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = i64::try_from(h[i][j]).map_err(|_| BuildingError::ResourceLimit("entry overflow".into()))?;
        }
    }
    Ok(out)
}

#[allow(clippy::needless_range_loop)]
fn adj(m: &Mat) -> [[i128; 3]; 3] {
    let a = |i: usize, j: usize| m[i][j] as i128;
    let mut out = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
            out[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    out
}

/// Valuations of the elementary divisors `e_1 <= e_2 <= e_3` of an integer
/// matrix, from the determinantal divisors.
fn elementary_valuations(p: i128, n: &[[i128; 3]; 3]) -> [u32; 3] {
    let small = n.iter().flatten().all(|x| x.abs() < (1i128 << 40));
    let (d1, d2, d3) = if small {
        let d1 = n.iter().flatten().filter_map(|&x| val(p, x)).min().unwrap();
        let mut d2 = u32::MAX;
        for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
            for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
                let m = n[r0][c0] * n[r1][c1] - n[r0][c1] * n[r1][c0];
                if let Some(v) = val(p, m) {
                    d2 = d2.min(v);
                }
            }
        }
        let dt = n[0][0] * (n[1][1] * n[2][2] - n[1][2] * n[2][1])
            - n[0][1] * (n[1][0] * n[2][2] - n[1][2] * n[2][0])
            + n[0][2] * (n[1][0] * n[2][1] - n[1][1] * n[2][0]);
        (d1, d2, val(p, dt).unwrap())
    } else {
        let b = |i: usize, j: usize| BigInt::from(n[i][j]);
        let pb = BigInt::from(p);
        let d1 = n.iter().flatten().filter_map(|&x| val(p, x)).min().unwrap();
        let mut d2 = u32::MAX;
        for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
            for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
                let m = b(r0, c0) * b(r1, c1) - b(r0, c1) * b(r1, c0);
                if let Some(v) = val_big(&pb, &m) {
                    d2 = d2.min(v);
                }
            }
        }
        let dt = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
            + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
        let dt = if dt.is_negative() { -dt } else { dt };
        (d1, d2, val_big(&pb, &dt).unwrap())
    };
    [d1, d2 - d1, d3 - d2]
}

/// Partition `(l_1 >= l_2 >= l_3 = 0)` of the relative position of the
/// lattices spanned by `x` and `y`: the sorted elementary divisor
/// valuations of `x^{-1} y`, shifted so the smallest is zero.
pub fn relative_position(p: u32, x: &Mat, y: &Mat) -> [i64; 3] {
    let pp = p as i128;
    let a = adj(x);
    let mut n = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            n[i][j] = (0..3).map(|k| a[i][k] * y[k][j] as i128).sum();
        }
    }
    let e = elementary_valuations(pp, &n);
    // e is ascending; the homothety shift cancels
    [(e[2] - e[0]) as i64, (e[1] - e[0]) as i64, 0]
}
