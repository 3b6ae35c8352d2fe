//! Signature-based Gröbner basis computation over small prime fields.
//!
//! Two engines share one labeled-monomial state: [`step`] lifts and
//! mutually reduces one entry at a time, [`matrix`] batches lifts by degree
//! and reduces them with one-sided Macaulay-matrix elimination. [`oracle`]
//! is an independent Buchberger implementation used for verification.

pub mod algebra;
pub mod generate;
pub mod io;
pub mod labeled;
pub mod matrix;
pub mod oracle;
pub mod report;
mod par;
pub mod step;

use std::time::{Duration, Instant};

use thiserror::Error;

pub use algebra::{AlgebraError, Coeff, Monomial, Polynomial, PrimeField, Ring, Signature, Term};
pub use labeled::{BasisState, Criteria, Criterion, LabeledMonomial, Stats};
pub use matrix::{run_matrix_engine, MatrixConfig, MatrixOutput};
pub use step::{run_step_engine, Selection, StepConfig, StepOutput};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("input system is empty")]
    EmptyInput,
    #[error("computation exceeded its time budget")]
    Timeout,
    #[error("precondition violated: {0}")]
    Logic(&'static str),
}

/// Cooperative time budget, polled at loop boundaries.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn after(budget: Duration) -> Self {
        Deadline(Some(Instant::now() + budget))
    }

    pub fn check(&self) -> Result<(), EngineError> {
        match self.0 {
            Some(t) if Instant::now() >= t => Err(EngineError::Timeout),
            _ => Ok(()),
        }
    }
}

/// True when the crate was built with the rayon backend.
pub const PARALLEL_ENABLED: bool = cfg!(feature = "parallel");
