use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use mogvw::generate::{gen_random_square, with_field_equations};
use mogvw::io::{format_polys, parse_polys, parse_system, serialize_system, System};
use mogvw::oracle::{verify_gb, OracleConfig, VerifyReport};
use mogvw::report::StatsReport;
use mogvw::{run_matrix_engine, run_step_engine, Criteria, Criterion, MatrixConfig, StepConfig};

mod bench;

#[derive(Parser)]
#[command(name = "mogvw", version, about = "Signature-based Groebner bases over small prime fields")]
struct Cli {
    /// More log output (-v info, -vv debug). RUST_LOG overrides.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Groebner basis of a system file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Matrix)]
        engine: Engine,
        /// Check the result against the Buchberger oracle.
        #[arg(long)]
        verify: bool,
        /// Write run statistics as JSON.
        #[arg(long, value_name = "OUT.json")]
        stats: Option<PathBuf>,
        #[arg(long = "disable-criterion", value_enum, value_name = "NAME")]
        disable: Vec<CriterionArg>,
        /// Run the elimination without rayon.
        #[arg(long)]
        sequential: bool,
    },
    /// Write a seeded random n x n quadratic system over GF(2).
    Gen {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        seed: u64,
        /// Declare the boolean quotient ring in the header.
        #[arg(long)]
        boolean: bool,
        /// Append x^2 - x for every variable (ordinary ring only).
        #[arg(long, conflicts_with = "boolean")]
        field_equations: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the engines on seeded boolean square systems.
    Bench(bench::BenchArgs),
    /// Check a candidate basis against a system.
    Verify {
        system: PathBuf,
        gb_file: PathBuf,
        /// Print the itemized report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Step,
    Matrix,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Step => "step",
            Engine::Matrix => "matrix",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CriterionArg {
    Lcm,
    Syzygy,
    Rewritten,
    Principal,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Lcm => Criterion::Lcm,
            CriterionArg::Syzygy => Criterion::Syzygy,
            CriterionArg::Rewritten => Criterion::Rewritten,
            CriterionArg::Principal => Criterion::Principal,
        }
    }
}

/// Exit code 1 is reserved for verification failures; everything else
/// that goes wrong is a usage or input problem.
pub enum Failure {
    Usage(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_system(path: &Path) -> anyhow::Result<System> {
    parse_system(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn print_report(r: &VerifyReport) {
    let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
    eprintln!("s-pairs reduce to zero: {}", mark(r.s_pairs));
    eprintln!("inputs reduce to zero:  {}", mark(r.inputs_reduce));
    eprintln!("candidate in ideal:     {}", mark(r.candidate_in_ideal));
    eprintln!("leads match oracle:     {}", mark(r.leads_match));
    if let Some(ok) = r.oracle_paths_agree {
        eprintln!("oracle paths agree:     {}", mark(ok));
    }
    for f in &r.failures {
        eprintln!("  {f}");
    }
}

fn solve(
    file: &Path,
    engine: Engine,
    verify: bool,
    stats: Option<&Path>,
    disable: &[CriterionArg],
    sequential: bool,
) -> Result<(), Failure> {
    let sys = load_system(file)?;
    let mut criteria = Criteria::all();
    for &c in disable {
        criteria.set(c.into(), false);
    }
    let t0 = Instant::now();
    let (basis, mut report) = match engine {
        Engine::Step => {
            let cfg = StepConfig {
                criteria,
                ..Default::default()
            };
            let out = run_step_engine(&sys.ring, &sys.polys, &cfg).map_err(anyhow::Error::from)?;
            let ms = t0.elapsed().as_secs_f64() * 1e3;
            let r = StatsReport::from_step(&sys.ring, &out, ms);
            (out.basis, r)
        }
        Engine::Matrix => {
            let cfg = MatrixConfig {
                criteria,
                parallel: !sequential,
                ..Default::default()
            };
            let out = run_matrix_engine(&sys.ring, &sys.polys, &cfg).map_err(anyhow::Error::from)?;
            let ms = t0.elapsed().as_secs_f64() * 1e3;
            let r = StatsReport::from_matrix(&sys.ring, &out, ms);
            (out.basis, r)
        }
    };
    log::info!("{} engine: {} polynomials in {:.1} ms", engine.name(), basis.len(), report.runtime_ms);
    if basis.is_empty() {
        eprintln!("note: every input reduces to zero; the ideal is {{0}}");
    }
    print!("{}", format_polys(&sys.ring, &basis));

    let mut ok = true;
    if verify {
        let v = verify_gb(&sys.ring, &basis, &sys.polys, OracleConfig::default());
        ok = v.passed();
        if !ok {
            print_report(&v);
        } else {
            log::info!("verification passed");
        }
        report.verification = Some(v);
    }
    if let Some(path) = stats {
        let json = serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?;
        fs::write(path, json + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn gen(vars: usize, seed: u64, boolean: bool, field_equations: bool, output: Option<&Path>) -> Result<(), Failure> {
    if vars == 0 {
        return Err(anyhow!("--vars must be at least 1").into());
    }
    let mut sys = gen_random_square(vars, seed);
    if !boolean {
        sys = if field_equations {
            with_field_equations(&sys)
        } else {
            let ring = sys.ring.ordinary();
            System { ring, polys: sys.polys }
        };
    }
    let text = serialize_system(&sys.ring, &sys.polys);
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verify(system: &Path, gb_file: &Path, json: bool) -> Result<(), Failure> {
    let sys = load_system(system)?;
    let gb = parse_polys(&sys.ring, &read(gb_file)?).map_err(|e| anyhow!("{}: {e}", gb_file.display()))?;
    let r = verify_gb(&sys.ring, &gb, &sys.polys, OracleConfig::default());
    if json {
        println!("{}", serde_json::to_string_pretty(&r).map_err(anyhow::Error::from)?);
    } else {
        print_report(&r);
    }
    if r.passed() {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let res = match &cli.cmd {
        Command::Solve {
            file,
            engine,
            verify,
            stats,
            disable,
            sequential,
        } => solve(file, *engine, *verify, stats.as_deref(), disable, *sequential),
        Command::Gen {
            vars,
            seed,
            boolean,
            field_equations,
            output,
        } => gen(*vars, *seed, *boolean, *field_equations, output.as_deref()),
        Command::Bench(args) => bench::run(args),
        Command::Verify { system, gb_file, json } => verify(system, gb_file, *json),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
