//! Explicit spherical Hecke algebra formulas: ν-factors, sphere volumes,
//! the Harish-Chandra c-function, spherical functions, polytopal ball
//! eigenvalues `h_m(s)`, the spectral average and its floor, the Plancherel
//! density, and the analogous formulas on the regular tree.

pub mod nu;
pub mod plancherel;
pub mod rank2;
pub mod spectral;
pub mod tree;

use num_complex::Complex64;
use qe_polytope::PolytopeError;
use thiserror::Error;

pub use nu::{card_em_direct, n_lambda, nu_lambda, nu_m};
pub use rank2::{
    c_function, card_em_brion, g_lambda, h_m, h_m_brion, h_m_direct, kappa, kappa_identity_rhs,
    spherical_value, vertex_value, Orientation, VERTEX_CONVENTION,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeckeError {
    #[error("spectral parameter lies on the S3-fixed locus")]
    Xi1Singular,
    #[error("perturbative evaluation near the S3-fixed locus failed (residual {0:e})")]
    NearSingular(f64),
    #[error("margin excludes every grid point")]
    EmptyTheta,
    #[error("invalid spectral parameter: {0}")]
    InvalidParam(String),
    #[error("weight outside the dominant chamber")]
    NotDominant,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

pub type Result<T> = std::result::Result<T, HeckeError>;

/// Satake parameter `s = (s_1, s_2, s_3)` with `s_1 + s_2 + s_3 = 0`; the
/// Satake parameters proper are `z_j = q^{s_j}`. Tempered parameters have
/// purely imaginary `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParam {
    pub q: u32,
    pub s: [Complex64; 3],
}

impl SpectralParam {
    /// The tempered point `s = (i theta_1, i theta_2, -i (theta_1 + theta_2))`.
    pub fn from_torus(q: u32, theta1: f64, theta2: f64) -> Self {
        SpectralParam {
            q,
            s: [
                Complex64::new(0.0, theta1),
                Complex64::new(0.0, theta2),
                Complex64::new(0.0, -(theta1 + theta2)),
            ],
        }
    }

    /// Arbitrary complex parameter (first two entries; the third is fixed by sum zero).
    pub fn from_s(q: u32, s1: Complex64, s2: Complex64) -> Self {
        SpectralParam { q, s: [s1, s2, -(s1 + s2)] }
    }

    /// From unit Satake parameters with product one.
    pub fn from_z(q: u32, z: [Complex64; 3]) -> Result<Self> {
        if z.iter().any(|w| (w.norm() - 1.0).abs() > 1e-12) {
            return Err(HeckeError::InvalidParam("Satake parameters must have modulus 1".into()));
        }
        if (z[0] * z[1] * z[2] - 1.0).norm() > 1e-12 {
            return Err(HeckeError::InvalidParam("product of Satake parameters must be 1".into()));
        }
        let lq = (q as f64).ln();
        Ok(Self::from_torus(q, z[0].arg() / lq, z[1].arg() / lq))
    }

    pub fn ln_q(&self) -> f64 {
        (self.q as f64).ln()
    }

    /// `z_j = q^{s_j}`.
    pub fn z(&self) -> [Complex64; 3] {
        let l = self.ln_q();
        self.s.map(|x| (x * l).exp())
    }

    /// `x_j = q^{-s_j}`.
    pub fn x(&self) -> [Complex64; 3] {
        let l = self.ln_q();
        self.s.map(|x| (-x * l).exp())
    }

    /// `(sigma.s)_i = s_{sigma(i)}`.
    pub fn permute(&self, sigma: &[usize; 3]) -> Self {
        SpectralParam { q: self.q, s: [self.s[sigma[0]], self.s[sigma[1]], self.s[sigma[2]]] }
    }

    pub fn neg(&self) -> Self {
        SpectralParam { q: self.q, s: self.s.map(|x| -x) }
    }

    /// Shift `(s_1, s_2, s_3) + (d, 0, -d)`.
    pub fn nudge(&self, d: Complex64) -> Self {
        SpectralParam { q: self.q, s: [self.s[0] + d, self.s[1], self.s[2] - d] }
    }

    /// `min_{i<j} |z_i - z_j|`.
    pub fn xi1_gap(&self) -> f64 {
        let z = self.z();
        let mut g = f64::INFINITY;
        for i in 0..3 {
            for j in i + 1..3 {
                g = g.min((z[i] - z[j]).norm());
            }
        }
        g
    }

    /// Canonical representative of the S3-orbit: entries sorted by argument of `z`.
    pub fn canonical(&self) -> Self {
        let mut idx = [0usize, 1, 2];
        let z = self.z();
        idx.sort_by(|&a, &b| z[a].arg().partial_cmp(&z[b].arg()).unwrap());
        self.permute(&idx)
    }
}

pub(crate) const S3: [[usize; 3]; 6] = qe_weyl::S3_ELEMENTS;
