//! `fermat` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification verdict fails, 2 on
//! usage or configuration errors (including brute-force budget refusals).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fermat_core::curve;
use fermat_core::gf::{prime_powers_up_to, FieldCtx, PrimePower, TowerCtx};
use fermat_core::points::PointSet;
use fermat_core::report::{count_report, Method, Object};
use fermat_core::scan::{check_budget, ScanOptions, DEFAULT_BUDGET};
use fermat_core::surface;
use fermat_core::verify::{all_pass, full_report, remark_counterexample, remark_search};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest q considered when `bench` looks for an in-budget brute-force comparison.
const BENCH_COMPARE_MAX_Q: u64 = 64;

#[derive(Debug, Parser)]
#[command(name = "fermat", version, about = "Rational points on degree-(q-1) Fermat curves and surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream the points as JSON lines
    Enumerate(ObjectArgs),
    /// Compare the closed-form count with the enumerations
    Count(ObjectArgs),
    /// Run every check for all prime powers up to --q-max
    Verify(VerifyArgs),
    /// Time parametric enumeration against the brute-force scan
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectArg {
    Curve,
    Surface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Parametric,
    Brute,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Maximum number of projective representatives a brute-force scan may visit
    #[arg(long, env = "FERMAT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads for brute-force scans
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ObjectArgs {
    #[arg(long)]
    pub q: u64,
    /// Extension degree i of GF(q^i)
    #[arg(long, default_value_t = 1)]
    pub ext: u32,
    #[arg(long, value_enum, default_value_t = ObjectArg::Curve)]
    pub object: ObjectArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Parametric)]
    pub method: MethodArg,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 9)]
    pub q_max: u64,
    /// With --ext 4, search GF(q^4) for curve points with a non-cube product
    #[arg(long)]
    pub ext: Option<u32>,
    /// Base field size for the --ext 4 search
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 3)]
    pub ext: u32,
    #[arg(long, value_enum, default_value_t = ObjectArg::Curve)]
    pub object: ObjectArg,
    /// q for the parametric-vs-brute comparison; defaults to the largest in budget
    #[arg(long)]
    pub q: Option<u64>,
    /// q for the parametric-only timing
    #[arg(long, default_value_t = 101)]
    pub large_q: u64,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<fermat_core::Error> for Failure {
    fn from(e: fermat_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<i32, Failure>;

impl ScanArgs {
    fn options(&self) -> Result<ScanOptions, Failure> {
        if self.budget == 0 {
            return Err(Failure::Usage("--budget must be positive".into()));
        }
        Ok(ScanOptions {
            budget: self.budget,
            workers: self.workers.max(1),
        })
    }

    fn sink<'a>(&self, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, Failure> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(stdout)),
        })
    }
}

fn object_of(arg: ObjectArg) -> Object {
    match arg {
        ObjectArg::Curve => Object::Curve,
        ObjectArg::Surface => Object::Surface,
    }
}

fn validated_tower(q: u64, ext: u32, object: ObjectArg) -> Result<TowerCtx, Failure> {
    match object {
        ObjectArg::Surface if ext != 2 => {
            return Err(Failure::Usage("surface requires --ext 2".into()))
        }
        ObjectArg::Curve if !(1..=3).contains(&ext) => {
            return Err(Failure::Usage(
                "curve requires --ext 1, 2 or 3 (--ext 4 is only available under verify)".into(),
            ))
        }
        _ => {}
    }
    Ok(TowerCtx::new(PrimePower::new(q)?, ext)?)
}

fn write_points<const N: usize>(
    out: &mut dyn Write,
    f: &FieldCtx,
    points: &PointSet<N>,
) -> Result<(), Failure> {
    for p in points {
        serde_json::to_writer(&mut *out, &p.record(f))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn enumerate(args: &ObjectArgs, stdout: &mut dyn Write) -> Outcome {
    let t = validated_tower(args.q, args.ext, args.object)?;
    let opts = args.scan.options()?;
    let mut out = args.scan.sink(stdout)?;
    let f = t.top();
    match (args.object, args.method) {
        (ObjectArg::Curve, MethodArg::Parametric) => {
            write_points(&mut out, f, &curve::enumerate_parametric(&t)?)?
        }
        (ObjectArg::Curve, MethodArg::Brute) => {
            write_points(&mut out, f, &curve::enumerate_brute(&t, opts)?)?
        }
        (ObjectArg::Surface, MethodArg::Parametric) => {
            write_points(&mut out, f, &surface::enumerate_surface(&t)?)?
        }
        (ObjectArg::Surface, MethodArg::Brute) => {
            write_points(&mut out, f, &surface::enumerate_surface_brute(&t, opts)?)?
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn count(args: &ObjectArgs, stdout: &mut dyn Write) -> Outcome {
    let t = validated_tower(args.q, args.ext, args.object)?;
    let opts = args.scan.options()?;
    let method = match args.method {
        MethodArg::Parametric => Method::Parametric,
        MethodArg::Brute => Method::Brute,
    };
    let report = count_report(&t, object_of(args.object), method, opts)?;
    let mut out = args.scan.sink(stdout)?;
    serde_json::to_writer(&mut out, &report)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Outcome {
    let opts = args.scan.options()?;
    match args.ext {
        None => {
            let reports = full_report(args.q_max, opts)?;
            let mut out = args.scan.sink(stdout)?;
            for r in &reports {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
            Ok(if all_pass(&reports) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Some(4) => {
            let search = remark_search(PrimePower::new(args.q)?, opts)?;
            let mut out = args.scan.sink(stdout)?;
            serde_json::to_writer(&mut out, &search)?;
            out.write_all(b"\n")?;
            if args.q == 2 {
                serde_json::to_writer(&mut out, &remark_counterexample()?)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
            Ok(EXIT_OK)
        }
        Some(other) => Err(Failure::Usage(format!(
            "verify accepts only --ext 4 (got {other}); the full report covers ext 1..3"
        ))),
    }
}

#[derive(Debug, Serialize)]
struct BenchComparison {
    q: u64,
    representatives: u128,
    points: u64,
    parametric_us: u128,
    brute_us: u128,
    matches: bool,
}

#[derive(Debug, Serialize)]
struct BenchLarge {
    q: u64,
    points: u64,
    formula: u128,
    formula_match: bool,
    parametric_us: u128,
    brute: String,
}

#[derive(Debug, Serialize)]
struct BenchReport {
    object: Object,
    ext: u32,
    budget: u64,
    comparison: Option<BenchComparison>,
    large: BenchLarge,
}

fn coordinate_count(object: ObjectArg) -> usize {
    match object {
        ObjectArg::Curve => 3,
        ObjectArg::Surface => 4,
    }
}

fn timed_count(t: &TowerCtx, object: ObjectArg, brute: Option<ScanOptions>) -> Result<(u64, u128, Option<u64>, bool), Failure> {
    let start = Instant::now();
    let par = match object {
        ObjectArg::Curve => curve::enumerate_parametric(t)?.len(),
        ObjectArg::Surface => surface::enumerate_surface(t)?.len(),
    } as u64;
    let par_us = start.elapsed().as_micros();
    let Some(opts) = brute else {
        return Ok((par, par_us, None, true));
    };
    let start = Instant::now();
    let matches = match object {
        ObjectArg::Curve => curve::enumerate_brute(t, opts)?.same_points(&curve::enumerate_parametric(t)?),
        ObjectArg::Surface => surface::enumerate_surface_brute(t, opts)?
            .same_points(&surface::enumerate_surface(t)?),
    };
    let brute_us = start.elapsed().as_micros();
    Ok((par, par_us, Some(brute_us as u64), matches))
}

fn bench(args: &BenchArgs, stdout: &mut dyn Write) -> Outcome {
    let opts = args.scan.options()?;
    let n = coordinate_count(args.object);
    validated_tower(2, args.ext, args.object)?;
    let compare_q = match args.q {
        Some(q) => Some(q),
        None => prime_powers_up_to(BENCH_COMPARE_MAX_Q)
            .into_iter()
            .map(|pp| pp.q())
            .filter(|&q| {
                q.checked_pow(args.ext)
                    .is_some_and(|order| check_budget(order, n, opts.budget).is_ok())
            })
            .max(),
    };
    let comparison = match compare_q {
        Some(q) => {
            let t = validated_tower(q, args.ext, args.object)?;
            let reps = check_budget(t.top().order(), n, opts.budget)?;
            // brute timing includes a parametric rerun for the set comparison
            let (points, parametric_us, brute_us, matches) = timed_count(&t, args.object, Some(opts))?;
            Some(BenchComparison {
                q,
                representatives: reps,
                points,
                parametric_us,
                brute_us: brute_us.unwrap_or_default() as u128,
                matches,
            })
        }
        None => None,
    };

    let t = validated_tower(args.large_q, args.ext, args.object)?;
    let (points, parametric_us, _, _) = timed_count(&t, args.object, None)?;
    let formula = match args.object {
        ObjectArg::Curve => curve::count_formula(t.prime_power(), t.degree())?,
        ObjectArg::Surface => surface::surface_count_formula(t.prime_power()),
    };
    let brute = match check_budget(t.top().order(), n, opts.budget) {
        Ok(reps) => format!("within budget ({reps} representatives), not timed"),
        Err(e) => format!("refused: {e}"),
    };
    let report = BenchReport {
        object: object_of(args.object),
        ext: args.ext,
        budget: opts.budget,
        comparison,
        large: BenchLarge {
            q: args.large_q,
            points,
            formula: formula.value,
            formula_match: points as u128 == formula.value,
            parametric_us,
            brute,
        },
    };
    let mut out = args.scan.sink(stdout)?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(EXIT_OK)
}

/// Runs a parsed command, writing results to `stdout` and diagnostics to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match &cli.command {
        Command::Enumerate(a) => enumerate(a, stdout),
        Command::Count(a) => count(a, stdout),
        Command::Verify(a) => verify(a, stdout),
        Command::Bench(a) => bench(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            }
        }
    }
}
