//! `bench`: seeded boolean square systems, one row per (n, seed).

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, ValueEnum};
use serde::Serialize;

use mogvw::generate::gen_random_square;
use mogvw::oracle::{verify_gb, OracleConfig};
use mogvw::{run_matrix_engine, run_step_engine, Deadline, EngineError, MatrixConfig, Stats, StepConfig};

use crate::{Engine, Failure};

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    /// Seeds per size: first-seed, first-seed + 1, ...
    #[arg(long)]
    seeds: u64,
    #[arg(long, default_value_t = 1)]
    first_seed: u64,
    /// Per-case budget in milliseconds; slower cases are marked timed-out.
    #[arg(long, value_name = "MS")]
    timeout: Option<u64>,
    #[arg(long, value_enum, default_value_t = Engine::Matrix)]
    engine: Engine,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Skip the oracle check of each result.
    #[arg(long)]
    no_verify: bool,
    /// Cases run concurrently (rayon pool); each engine then runs sequentially.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    TimedOut,
    VerifyFailed,
    Error,
}

#[derive(Clone, Debug, Serialize)]
struct Row {
    n: usize,
    seed: u64,
    engine: &'static str,
    status: Status,
    runtime_ms: Option<f64>,
    basis_size: Option<usize>,
    loops: Option<u64>,
    matrices: Option<usize>,
    max_rows: Option<usize>,
    max_cols: Option<usize>,
    zero_rows: Option<usize>,
    syzygies: Option<u64>,
    rejected_lcm: Option<u64>,
    rejected_syzygy: Option<u64>,
    rejected_principal: Option<u64>,
    rejected_rewritten: Option<u64>,
    verified: Option<bool>,
}

impl Row {
    fn empty(n: usize, seed: u64, engine: Engine, status: Status) -> Self {
        Row {
            n,
            seed,
            engine: engine.name(),
            status,
            runtime_ms: None,
            basis_size: None,
            loops: None,
            matrices: None,
            max_rows: None,
            max_cols: None,
            zero_rows: None,
            syzygies: None,
            rejected_lcm: None,
            rejected_syzygy: None,
            rejected_principal: None,
            rejected_rewritten: None,
            verified: None,
        }
    }

    fn counters(&mut self, s: &Stats) {
        self.loops = Some(s.loops);
        self.syzygies = Some(s.syzygies_found);
        self.rejected_lcm = Some(s.rejected_lcm);
        self.rejected_syzygy = Some(s.rejected_syzygy);
        self.rejected_principal = Some(s.rejected_principal);
        self.rejected_rewritten = Some(s.rejected_rewritten);
    }
}

fn run_case(n: usize, seed: u64, a: &BenchArgs, parallel: bool) -> Row {
    let sys = gen_random_square(n, seed);
    let deadline = a.timeout.map_or(Deadline::none(), |ms| Deadline::after(Duration::from_millis(ms)));
    let t0 = Instant::now();
    let res = match a.engine {
        Engine::Step => run_step_engine(&sys.ring, &sys.polys, &StepConfig { deadline, ..Default::default() }).map(|out| {
            let mut row = Row::empty(n, seed, a.engine, Status::Ok);
            row.counters(&out.stats);
            (row, out.basis)
        }),
        Engine::Matrix => {
            let cfg = MatrixConfig {
                deadline,
                parallel,
                ..Default::default()
            };
            run_matrix_engine(&sys.ring, &sys.polys, &cfg).map(|out| {
                let mut row = Row::empty(n, seed, a.engine, Status::Ok);
                row.counters(&out.stats);
                row.matrices = Some(out.matrices.len());
                row.max_rows = out.matrices.iter().map(|m| m.rows).max();
                row.max_cols = out.matrices.iter().map(|m| m.cols).max();
                row.zero_rows = Some(out.matrices.iter().map(|m| m.zero_rows).sum());
                (row, out.basis)
            })
        }
    };
    let ms = (t0.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    match res {
        Ok((mut row, basis)) => {
            row.runtime_ms = Some(ms);
            row.basis_size = Some(basis.len());
            if !a.no_verify {
                let ok = verify_gb(&sys.ring, &basis, &sys.polys, OracleConfig::default()).passed();
                row.verified = Some(ok);
                if !ok {
                    row.status = Status::VerifyFailed;
                }
            }
            row
        }
        Err(EngineError::Timeout) => {
            log::warn!("n={n} seed={seed}: timed out");
            let mut row = Row::empty(n, seed, a.engine, Status::TimedOut);
            row.runtime_ms = Some(ms);
            row
        }
        Err(e) => {
            log::error!("n={n} seed={seed}: {e}");
            Row::empty(n, seed, a.engine, Status::Error)
        }
    }
}

#[cfg(feature = "parallel")]
fn run_all(cases: &[(usize, u64)], a: &BenchArgs) -> anyhow::Result<Vec<Row>> {
    use rayon::prelude::*;
    if a.jobs <= 1 {
        return Ok(cases.iter().map(|&(n, s)| run_case(n, s, a, true)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build()?;
    Ok(pool.install(|| cases.par_iter().map(|&(n, s)| run_case(n, s, a, false)).collect()))
}

#[cfg(not(feature = "parallel"))]
fn run_all(cases: &[(usize, u64)], a: &BenchArgs) -> anyhow::Result<Vec<Row>> {
    if a.jobs > 1 {
        log::warn!("built without the parallel feature; --jobs ignored");
    }
    Ok(cases.iter().map(|&(n, s)| run_case(n, s, a, false)).collect())
}

pub fn run(a: &BenchArgs) -> Result<(), Failure> {
    if a.from == 0 || a.from > a.to {
        return Err(anyhow!("need 1 <= --from <= --to").into());
    }
    if a.seeds == 0 {
        return Err(anyhow!("--seeds must be at least 1").into());
    }
    let cases: Vec<(usize, u64)> = (a.from..=a.to)
        .flat_map(|n| (a.first_seed..a.first_seed + a.seeds).map(move |s| (n, s)))
        .collect();
    let rows = run_all(&cases, a)?;

    let out: Box<dyn Write> = match &a.output {
        Some(p) => Box::new(File::create(p).with_context(|| format!("cannot write {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r).map_err(anyhow::Error::from)?;
            }
            w.flush().map_err(anyhow::Error::from)?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &rows).map_err(anyhow::Error::from)?;
            writeln!(out).map_err(anyhow::Error::from)?;
        }
    }
    if rows.iter().any(|r| r.status == Status::VerifyFailed) {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}
