//! The stats JSON emitted by `solve --stats` and `bench`.

use serde::Serialize;

use crate::algebra::Ring;
use crate::labeled::Stats;
use crate::matrix::{MatrixOutput, MatrixStats};
use crate::oracle::VerifyReport;
use crate::step::StepOutput;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct StatsReport {
    pub schema: u32,
    pub engine: &'static str,
    pub field: u32,
    pub nvars: usize,
    pub boolean: bool,
    /// Nonzero inputs with distinct leads after preprocessing.
    pub ngens: usize,
    pub basis_size: usize,
    pub syzygy_count: u64,
    pub counters: Stats,
    /// One record per elimination; empty for the step engine.
    pub matrices: Vec<MatrixStats>,
    pub runtime_ms: f64,
    pub verification: Option<VerifyReport>,
}

impl StatsReport {
    fn base(engine: &'static str, ring: &Ring, ngens: usize, basis_size: usize, counters: &Stats, runtime_ms: f64) -> Self {
        StatsReport {
            schema: SCHEMA_VERSION,
            engine,
            field: ring.field().modulus(),
            nvars: ring.nvars(),
            boolean: ring.is_boolean(),
            ngens,
            basis_size,
            syzygy_count: counters.syzygies_found,
            counters: counters.clone(),
            matrices: Vec::new(),
            runtime_ms,
            verification: None,
        }
    }

    pub fn from_step(ring: &Ring, out: &StepOutput, runtime_ms: f64) -> Self {
        Self::base("step", ring, out.inputs.len(), out.basis.len(), &out.stats, runtime_ms)
    }

    pub fn from_matrix(ring: &Ring, out: &MatrixOutput, runtime_ms: f64) -> Self {
        let mut r = Self::base("matrix", ring, out.inputs.len(), out.basis.len(), &out.stats, runtime_ms);
        r.matrices = out.matrices.clone();
        r
    }
}
