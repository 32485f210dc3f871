//! Rational polytopes given by inequalities `a . x <= b`.

use crate::error::{PolytopeError, Result};
use crate::linalg::{self, Q};
use crate::rays;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Inequality {
    pub a: Vec<Q>,
    pub b: Q,
}

impl Inequality {
    pub fn new(a: Vec<Q>, b: Q) -> Self {
        Inequality { a, b }
    }

    /// Builds `a . x <= b` from small integers.
    pub fn int(a: &[i64], b: i64) -> Self {
        Inequality { a: a.iter().map(|&x| linalg::q(x)).collect(), b: linalg::q(b) }
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        linalg::dot(&self.a, x) <= self.b
    }

    pub fn is_tight(&self, x: &[Q]) -> bool {
        linalg::dot(&self.a, x) == self.b
    }
}

/// A polytope `{x : a_i . x <= b_i}` whose lattice points are taken in
/// `(1/L) Z^d` with `L = lattice_denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    ineqs: Vec<Inequality>,
    denom: i64,
}

/// Integer form of the working system `A x' <= L b` used for fast membership tests.
#[derive(Clone, Debug)]
pub(crate) struct IntSystem {
    pub rows: Vec<(Vec<i128>, i128)>,
}

impl IntSystem {
    pub fn contains(&self, x: &[i64]) -> bool {
        self.rows.iter().all(|(a, b)| {
            let s: i128 = a.iter().zip(x).map(|(ai, &xi)| ai * xi as i128).sum();
            s <= *b
        })
    }
}

impl LatticePolytope {
    pub fn new(dim: usize, ineqs: Vec<Inequality>) -> Result<Self> {
        Self::with_denominator(dim, ineqs, 1)
    }

    pub fn with_denominator(dim: usize, ineqs: Vec<Inequality>, denom: i64) -> Result<Self> {
        if let Some(bad) = ineqs.iter().find(|i| i.a.len() != dim) {
            return Err(PolytopeError::Dimension { expected: dim, got: bad.a.len() });
        }
        if denom < 1 {
            return Err(PolytopeError::Parse("lattice denominator must be positive".into()));
        }
        Ok(LatticePolytope { dim, ineqs, denom })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.ineqs
    }

    pub fn lattice_denominator(&self) -> i64 {
        self.denom
    }

    /// The `m`-th dilate `m Q`.
    pub fn dilate(&self, m: i64) -> Self {
        let f = linalg::q(m);
        LatticePolytope {
            dim: self.dim,
            ineqs: self
                .ineqs
                .iter()
                .map(|i| Inequality::new(i.a.clone(), &i.b * &f))
                .collect(),
            denom: self.denom,
        }
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.ineqs.iter().all(|i| i.holds(x))
    }

    /// Inequalities in working coordinates `x' = L x`, where lattice points are `Z^d`.
    pub(crate) fn working_ineqs(&self) -> Vec<Inequality> {
        let l = linalg::q(self.denom);
        self.ineqs
            .iter()
            .map(|i| Inequality::new(i.a.clone(), &i.b * &l))
            .collect()
    }

    pub(crate) fn int_system(&self) -> IntSystem {
        let rows = self
            .working_ineqs()
            .iter()
            .map(|i| {
                let (a, b) = linalg::clear_denominators(&i.a, &i.b);
                (
                    a.iter().map(|x| x.to_i128().expect("coefficient fits i128")).collect(),
                    b.to_i128().expect("cutoff fits i128"),
                )
            })
            .collect();
        IntSystem { rows }
    }

    /// Checks boundedness via the recession cone `{A x <= 0}`.
    pub fn check_bounded(&self) -> Result<()> {
        let rows: Vec<Vec<Q>> = self.ineqs.iter().map(|i| i.a.clone()).collect();
        if self.dim == 0 {
            return Ok(());
        }
        match rays::extreme_rays_big(&rows, self.dim) {
            Err(PolytopeError::NotPointed) => Err(PolytopeError::Unbounded),
            Err(e) => Err(e),
            Ok(r) if !r.is_empty() => Err(PolytopeError::Unbounded),
            Ok(_) => Ok(()),
        }
    }

    /// Exact vertex set in the original coordinates, sorted lexicographically.
    pub fn vertices(&self) -> Result<Vec<Vec<Q>>> {
        self.check_bounded()?;
        let n = self.ineqs.len();
        let d = self.dim;
        let mut out: Vec<Vec<Q>> = Vec::new();
        if d == 0 {
            return if self.ineqs.iter().all(|i| !i.b.is_negative()) {
                Ok(vec![Vec::new()])
            } else {
                Err(PolytopeError::Empty)
            };
        }
        let mut idx: Vec<usize> = (0..d).collect();
        if n < d {
            return Err(PolytopeError::Unbounded);
        }
        loop {
            let a: Vec<Vec<Q>> = idx.iter().map(|&i| self.ineqs[i].a.clone()).collect();
            let b: Vec<Q> = idx.iter().map(|&i| self.ineqs[i].b.clone()).collect();
            if let Some(x) = linalg::solve(&a, &b) {
                if self.contains(&x) {
                    out.push(x);
                }
            }
            // next combination
            let mut k = d;
            loop {
                if k == 0 {
                    out.sort();
                    out.dedup();
                    return if out.is_empty() { Err(PolytopeError::Empty) } else { Ok(out) };
                }
                k -= 1;
                if idx[k] < n - d + k {
                    idx[k] += 1;
                    for j in k + 1..d {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Vertices in working coordinates `L x`.
    pub(crate) fn working_vertices(&self) -> Result<Vec<Vec<Q>>> {
        let l = linalg::q(self.denom);
        Ok(self
            .vertices()?
            .into_iter()
            .map(|v| v.into_iter().map(|x| x * &l).collect())
            .collect())
    }

    /// Least common multiple of the vertex denominators.
    pub fn vertex_denominator(&self) -> Result<i64> {
        let l = self
            .vertices()?
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        l.to_i64().ok_or(PolytopeError::Overflow)
    }

    /// The same polytope with `L` set to the lcm of its vertex denominators.
    pub fn with_auto_denominator(&self) -> Result<Self> {
        let l = self.vertex_denominator()?;
        Self::with_denominator(self.dim, self.ineqs.clone(), l)
    }

    /// Integer bounding box of the working lattice points, per coordinate inclusive.
    pub(crate) fn working_box(&self) -> Result<Vec<(i64, i64)>> {
        let vs = self.working_vertices()?;
        (0..self.dim)
            .map(|j| {
                let lo = vs.iter().map(|v| v[j].clone()).min().unwrap();
                let hi = vs.iter().map(|v| v[j].clone()).max().unwrap();
                let lo = lo.ceil().to_integer().to_i64().ok_or(PolytopeError::Overflow)?;
                let hi = hi.floor().to_integer().to_i64().ok_or(PolytopeError::Overflow)?;
                Ok((lo, hi))
            })
            .collect()
    }

    pub fn to_json(&self) -> PolytopeJson {
        let mut ineqs = self.ineqs.clone();
        ineqs.sort();
        PolytopeJson {
            dim: self.dim,
            ineqs: ineqs
                .iter()
                .map(|i| IneqJson {
                    a: i.a.iter().map(|x| x.to_string()).collect(),
                    b: i.b.to_string(),
                })
                .collect(),
            lattice_denominator: self.denom,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PolytopeJson = serde_json::from_str(s).map_err(|e| PolytopeError::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn from_json(j: &PolytopeJson) -> Result<Self> {
        let parse = |s: &str| s.trim().parse::<Q>().map_err(|e| PolytopeError::Parse(format!("{s}: {e}")));
        let ineqs = j
            .ineqs
            .iter()
            .map(|i| {
                Ok(Inequality::new(
                    i.a.iter().map(|x| parse(x)).collect::<Result<Vec<_>>>()?,
                    parse(&i.b)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_denominator(j.dim, ineqs, j.lattice_denominator)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IneqJson {
    pub a: Vec<String>,
    pub b: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolytopeJson {
    pub dim: usize,
    pub ineqs: Vec<IneqJson>,
    pub lattice_denominator: i64,
}

/// Axis-aligned box `prod [0, n_i]`.
pub fn rectangle(sides: &[i64]) -> LatticePolytope {
    let d = sides.len();
    let mut ineqs = Vec::new();
    for (j, &n) in sides.iter().enumerate() {
        let mut e = vec![0; d];
        e[j] = 1;
        ineqs.push(Inequality::int(&e, n));
        e[j] = -1;
        ineqs.push(Inequality::int(&e, 0));
    }
    LatticePolytope::new(d, ineqs).expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};

    #[test]
    fn square_vertices_and_json_roundtrip() {
        let sq = rectangle(&[2, 3]);
        let v = sq.vertices().unwrap();
        assert_eq!(v.len(), 4);
        let s = sq.to_json_string();
        let back = LatticePolytope::from_json_str(&s).unwrap();
        assert_eq!(back.to_json_string(), s);
    }

    #[test]
    fn zero_dilate_is_a_point() {
        let v = rectangle(&[1, 1]).dilate(0).vertices().unwrap();
        assert_eq!(v, vec![vec![q(0), q(0)]]);
    }

    #[test]
    fn unbounded_and_empty() {
        let half = LatticePolytope::new(2, vec![Inequality::int(&[1, 0], 1)]).unwrap();
        assert_eq!(half.vertices(), Err(PolytopeError::Unbounded));
        let quad = LatticePolytope::new(
            2,
            vec![Inequality::int(&[-1, 0], 0), Inequality::int(&[0, -1], 0)],
        )
        .unwrap();
        assert_eq!(quad.vertices(), Err(PolytopeError::Unbounded));
        let empty = LatticePolytope::new(
            1,
            vec![Inequality::int(&[1], -1), Inequality::int(&[-1], 0)],
        )
        .unwrap();
        assert_eq!(empty.vertices(), Err(PolytopeError::Empty));
    }

    #[test]
    fn auto_denominator() {
        // 2x <= 1, x >= 0
        let p = LatticePolytope::new(1, vec![Inequality::int(&[2], 1), Inequality::int(&[-1], 0)]).unwrap();
        assert_eq!(p.vertex_denominator().unwrap(), 2);
        assert_eq!(p.vertices().unwrap(), vec![vec![q(0)], vec![qf(1, 2)]]);
    }
}
