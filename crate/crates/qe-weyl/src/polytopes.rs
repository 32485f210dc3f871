//! The named polygons `P`, `P*`, `H`, the edges of `P` and the two halves of `H`,
//! all in cone coordinates.

use qe_polytope::{Inequality, LatticePolytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedPolytope2D {
    P,
    Pstar,
    H,
    /// Segment from `(0,0)` to `(0,1)`.
    E12,
    /// Segment from `(0,0)` to `(2,0)`.
    E13,
    /// The part of `H` with `r <= s`.
    HrLEs,
    /// The part of `H` with `r >= s`.
    HrGEs,
}

impl NamedPolytope2D {
    pub const ALL: [NamedPolytope2D; 7] = [
        NamedPolytope2D::P,
        NamedPolytope2D::Pstar,
        NamedPolytope2D::H,
        NamedPolytope2D::E12,
        NamedPolytope2D::E13,
        NamedPolytope2D::HrLEs,
        NamedPolytope2D::HrGEs,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedPolytope2D::P => "P",
            NamedPolytope2D::Pstar => "Pstar",
            NamedPolytope2D::H => "H",
            NamedPolytope2D::E12 => "e12",
            NamedPolytope2D::E13 => "e13",
            NamedPolytope2D::HrLEs => "HrLEs",
            NamedPolytope2D::HrGEs => "HrGEs",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.name().eq_ignore_ascii_case(s))
    }

    /// Integer inequalities `(a, b)` meaning `a . (r, s) <= b`.
    pub fn int_inequalities(&self) -> Vec<([i64; 2], i64)> {
        let nonneg = [([-1, 0], 0), ([0, -1], 0)];
        let mut v: Vec<([i64; 2], i64)> = Vec::new();
        match self {
            NamedPolytope2D::P => {
                v.extend(nonneg);
                v.push(([1, 2], 2));
            }
            NamedPolytope2D::Pstar => {
                v.extend(nonneg);
                v.push(([2, 1], 2));
            }
            NamedPolytope2D::H => {
                v.extend(nonneg);
                v.push(([2, 1], 6));
                v.push(([1, 2], 6));
            }
            NamedPolytope2D::E12 => {
                v.extend(nonneg);
                v.push(([1, 0], 0));
                v.push(([0, 1], 1));
            }
            NamedPolytope2D::E13 => {
                v.extend(nonneg);
                v.push(([0, 1], 0));
                v.push(([1, 0], 2));
            }
            NamedPolytope2D::HrLEs => {
                v.push(([-1, 0], 0));
                v.push(([1, -1], 0));
                v.push(([1, 2], 6));
            }
            NamedPolytope2D::HrGEs => {
                v.push(([0, -1], 0));
                v.push(([-1, 1], 0));
                v.push(([2, 1], 6));
            }
        }
        v
    }

    pub fn polytope(&self) -> LatticePolytope {
        let ineqs = self
            .int_inequalities()
            .iter()
            .map(|(a, b)| Inequality::int(a, *b))
            .collect();
        LatticePolytope::new(2, ineqs).expect("well formed")
    }

    /// The dilate `m Q`.
    pub fn dilate(&self, m: i64) -> LatticePolytope {
        self.polytope().dilate(m)
    }

    pub fn contains(&self, r: i64, s: i64, m: i64) -> bool {
        self.int_inequalities()
            .iter()
            .all(|(a, b)| a[0] * r + a[1] * s <= b * m)
    }
}
