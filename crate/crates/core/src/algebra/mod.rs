//! Exact linear algebra over `Z_d` and exact linear programming.

pub mod echelon;
pub mod lp;
pub mod ring;
pub mod snf;
pub mod solve;
pub mod zmod;

use thiserror::Error;

pub use echelon::{howell_form, CosetMinimum, HowellForm, SearchLimits};
pub use lp::{certify_optimality, lp_maximize, Constraint, ConstraintKind, LinearProgram, LpSolution};
pub use ring::{EuclideanRing, IntegerRing, ResidueRing};
pub use snf::{smith_normal_form, SmithForm};
pub use solve::{solve_mod_d, AffineSolutionSet};
pub use zmod::ZdMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{what}: limit {limit} exceeded")]
    CapExceeded { what: &'static str, limit: u64 },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("linear program is infeasible")]
    Infeasible,
}
