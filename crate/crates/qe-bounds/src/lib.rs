//! Geometric upper bounds: the polytopes parametrizing coordinates of triples,
//! the per-coordinate counting bound, the dominating-vertex cone, the bound on
//! `card(E_m ∩ varpi^lambda E_m)`, the final sum over `H_M` and the analogous
//! statements on the regular tree.

pub mod cone;
pub mod final_sum;
pub mod tree;
pub mod triples;
pub mod upper;

use qe_polytope::PolytopeError;
use thiserror::Error;

pub use cone::{h_ball_report, dominating_cone_check, HBallReport, DominatingReport};
pub use final_sum::{final_sum, final_sum_split, FinalSumParams, SplitSum};
pub use qe_building::{Direction, TripleCoords};
pub use tree::{tree_count_bound, tree_count_table, tree_em_r_bound, tree_em_r_exact, tree_triple_polytope};
pub use triples::{count_bound, injection_bound, triple_polytope, BetaFunctional};
pub use upper::{em_lambda_upper, EmLambdaUpper};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("balls of radius {m} at distance {r} are disjoint")]
    Disjoint { m: i64, r: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

pub type Result<T> = std::result::Result<T, BoundsError>;

/// Both branch directions.
pub const DIRECTIONS: [Direction; 2] = [Direction::First, Direction::Second];
