//! Exponential weights `gamma -> q^{(alpha, gamma)}` over different fields.

use crate::error::{PolytopeError, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Sub};

/// Field in which a weight takes values.
pub trait Value:
    Clone
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
}

impl Value for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
}

impl Value for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
}

/// An exponent functional together with its evaluation rule.
///
/// `point` evaluates a lattice point (and may apply a global rescaling),
/// `ray` evaluates a cone generator and is never rescaled.
pub trait Weight: Sync + Sized {
    type V: Value;
    fn dim(&self) -> usize;
    fn point(&self, x: &[i64]) -> Self::V;
    fn ray(&self, r: &[i64]) -> Self::V;
    /// True when `1 - v` must be treated as zero.
    fn is_pole(&self, v: &Self::V) -> bool;
    /// The same functional read on the lattice `(1/l) Z^d`, i.e. divided by `l`.
    fn scaled(&self, l: i64) -> Result<Self>;
}

/// `q^{(alpha, x)}` for complex `alpha`, evaluated as `exp(ln q * (alpha, x) - shift)`.
#[derive(Clone, Debug)]
pub struct ComplexExp {
    pub ln_q: f64,
    pub alpha: Vec<Complex64>,
    /// Subtracted from the exponent of every lattice point (not rays).
    pub shift: f64,
}

impl ComplexExp {
    pub fn new(q: f64, alpha: Vec<Complex64>) -> Self {
        ComplexExp { ln_q: q.ln(), alpha, shift: 0.0 }
    }

    pub fn real(q: f64, alpha: &[f64]) -> Self {
        Self::new(q, alpha.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }

    fn exponent(&self, x: &[i64]) -> Complex64 {
        self.alpha
            .iter()
            .zip(x)
            .fold(Complex64::new(0.0, 0.0), |acc, (a, &xi)| acc + a * xi as f64)
            * self.ln_q
    }
}

impl Weight for ComplexExp {
    type V = Complex64;
    fn dim(&self) -> usize {
        self.alpha.len()
    }
    fn point(&self, x: &[i64]) -> Complex64 {
        (self.exponent(x) - self.shift).exp()
    }
    fn ray(&self, r: &[i64]) -> Complex64 {
        self.exponent(r).exp()
    }
    fn is_pole(&self, v: &Complex64) -> bool {
        (Complex64::new(1.0, 0.0) - v).norm() <= 1e-12 * v.norm().max(1.0)
    }
    fn scaled(&self, l: i64) -> Result<Self> {
        Ok(ComplexExp {
            ln_q: self.ln_q,
            alpha: self.alpha.iter().map(|a| a / l as f64).collect(),
            shift: self.shift,
        })
    }
}

/// `q^{(alpha, x)}` with rational `q` and integer `alpha`, evaluated exactly.
#[derive(Clone, Debug)]
pub struct RationalExp {
    pub q: BigRational,
    pub alpha: Vec<i64>,
}

impl RationalExp {
    pub fn new(q: BigRational, alpha: Vec<i64>) -> Self {
        RationalExp { q, alpha }
    }

    pub fn int(q: i64, alpha: Vec<i64>) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(q)), alpha)
    }

    fn power(&self, x: &[i64]) -> BigRational {
        let e: i64 = self.alpha.iter().zip(x).map(|(a, b)| a * b).sum();
        let e = i32::try_from(e).expect("exponent in range");
        num_traits::pow::Pow::pow(&self.q, e)
    }
}

impl Weight for RationalExp {
    type V = BigRational;
    fn dim(&self) -> usize {
        self.alpha.len()
    }
    fn point(&self, x: &[i64]) -> BigRational {
        self.power(x)
    }
    fn ray(&self, r: &[i64]) -> BigRational {
        self.power(r)
    }
    fn is_pole(&self, v: &BigRational) -> bool {
        v.is_one()
    }
    fn scaled(&self, l: i64) -> Result<Self> {
        if self.alpha.iter().any(|a| a % l != 0) {
            return Err(PolytopeError::NonIntegralExponent);
        }
        Ok(RationalExp {
            q: self.q.clone(),
            alpha: self.alpha.iter().map(|a| a / l).collect(),
        })
    }
}
