//! Exact lattice-polytope machinery: vertex enumeration, vertex cones with
//! primitive generators and signed simplicial decompositions, exponential sums
//! by Brion's formula (including a perturbative degenerate variant), extreme
//! rays of cones and a brute-force summation oracle.
//!
//! Lattice points live in `(1/L) Z^d`; internally everything is computed in
//! *working coordinates* `L x` where the lattice is `Z^d`.

pub mod brion;
pub mod cone;
pub mod error;
pub mod linalg;
pub mod polytope;
pub mod rays;
pub mod weight;

pub use brion::{
    brion_sum, brute_sum, degenerate_brion, lattice_count, lattice_points, CompiledPolytope, Degenerate,
    Schedule,
};
pub use cone::{cone_at, parallelepiped_points, VertexCone};
pub use error::{PolytopeError, Result};
pub use linalg::Q;
pub use polytope::{rectangle, Inequality, LatticePolytope, PolytopeJson};
pub use rays::{extreme_rays, extreme_rays_big};
pub use weight::{ComplexExp, RationalExp, Value, Weight};
