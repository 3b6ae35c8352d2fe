//! The batch engine: lift every unlifted entry of the minimal degree at
//! once, close the batch under reducers, eliminate, and fold the new leads
//! back into the basis.

pub mod dense;
mod engine;

pub use dense::{Elimination, MacaulayMatrix};
pub use engine::{
    append_fn, collect_todo, dedupe_by_signature, eliminate_fn, lift_fn, run_matrix_engine, update_fn, Eliminated,
    MatrixConfig, MatrixOutput, MatrixStats, Row,
};
