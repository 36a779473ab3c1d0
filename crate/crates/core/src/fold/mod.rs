//! Fold-line solvers.
//!
//! [`single`] covers the seven single-crease alignment problems; the eighth
//! single-fold operation (folding along an existing crease) needs no solver.
//! [`two_fold`] implements the two-simultaneous-fold operation that places
//! `P` onto `m` with one crease and `Q` onto `n`, `ℓ` onto the first crease
//! with the other.

use thiserror::Error;

use crate::geom::GeomError;
use crate::poly::PolyError;

pub mod single;
pub mod two_fold;

pub use single::{solve_single_fold, SingleFoldProblem};
pub use two_fold::{
    delta_line, eliminate_to_quintic, gamma_line_from_s, gamma_line_from_t, s_from_t,
    solve_two_fold, TwoFoldConfig, TwoFoldSolution,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FoldError {
    #[error("degenerate fold problem: {0}")]
    DegenerateProblem(&'static str),
    #[error("parameter value {0} is singular for this fold")]
    DegenerateParameter(f64),
    #[error("configuration is outside the supported family: {0}")]
    UnsupportedConfiguration(&'static str),
    #[error("the two-fold equation has no real solutions")]
    NoRealSolutions,
    #[error("solution t = {t} misses alignment `{check}` by {residual:e}")]
    ResidualExceeded {
        t: f64,
        check: &'static str,
        residual: f64,
    },
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Polynomial(#[from] PolyError),
}
