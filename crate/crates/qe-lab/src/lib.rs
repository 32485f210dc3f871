//! Batch verification harness. Every subcommand runs a set of named checks and
//! writes a `qe-lab/1` JSON report (or a CSV table) echoing its configuration.
//!
//! Exit codes: 0 when every check passes, 2 when a check fails, 1 on usage or
//! resource errors. `QE_LAB_THREADS` sets the worker count.

pub mod report;
pub mod verify;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qe_polytope::LatticePolytope;
use qe_weyl::{NamedPolytope2D, WeylVector};
use report::Outcome;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Serialize, Debug)]
#[command(name = "qe-lab", version, about = "Verification harness for the PGL(3) building computations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Serialize, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Brion's formula against direct summation.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Polytopal ball intersections in the apartment and the building.
    #[command(subcommand)]
    Geometry(GeometryCmd),
    /// Ball volumes, spectral floor and Plancherel mass.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Explicit enumeration of the building.
    #[command(subcommand)]
    Building(BuildingCmd),
    /// Upper bounds on intersections of polytopal balls.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// The regular tree analogues.
    #[command(subcommand)]
    Tree(TreeCmd),
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum PolytopeCmd {
    VerifyBrion(VerifyBrionArgs),
    VerifyDegenerate(VerifyDegenerateArgs),
}

#[derive(Args, Serialize, Debug)]
pub struct VerifyBrionArgs {
    /// Named polygons (P, Pstar, H, e12, e13, HrLEs, HrGEs); defaults to P, Pstar, H, e12, e13.
    #[arg(long, value_delimiter = ',')]
    pub polytope: Vec<String>,
    /// Polytope JSON file, used instead of the named polygons.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Largest dilation.
    #[arg(long, default_value_t = 8)]
    pub m: i64,
    /// Random exponents per case.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Serialize, Debug)]
pub struct VerifyDegenerateArgs {
    /// Rectangles `[0, m] x [0, n]` for `m, n <= rect_max`.
    #[arg(long, default_value_t = 10)]
    pub rect_max: i64,
    /// Dilations `M H` for `M <= h_max`.
    #[arg(long = "m", default_value_t = 50)]
    pub h_max: i64,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum GeometryCmd {
    VerifyHexagon(VerifyHexagonArgs),
}

#[derive(Args, Serialize, Debug)]
pub struct VerifyHexagonArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Ball size checked in the building.
    #[arg(long, default_value_t = 1)]
    pub m: i64,
    /// Largest ball size for the apartment predicate.
    #[arg(long, default_value_t = 5)]
    pub apartment_m: i64,
    /// Largest `r + s` for the apartment predicate.
    #[arg(long, default_value_t = 30)]
    pub rs_max: i64,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum HeckeCmd {
    CardEm(CardEmArgs),
    SpectralFloor(SpectralFloorArgs),
    PlancherelMass(PlancherelArgs),
}

#[derive(Args, Serialize, Debug)]
pub struct CardEmArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 1)]
    pub m: i64,
    /// Also enumerate the ball in the building.
    #[arg(long)]
    pub building: bool,
}

#[derive(Args, Serialize, Debug)]
pub struct SpectralFloorArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Torus distance kept from the exceptional locus.
    #[arg(long, default_value_t = 0.15)]
    pub margin: f64,
    #[arg(long, default_value_t = 64)]
    pub grid_n: usize,
    /// Values of M.
    #[arg(long = "m", value_delimiter = ',', default_values_t = [25, 50, 100, 200])]
    pub ms: Vec<i64>,
}

#[derive(Args, Serialize, Debug)]
pub struct PlancherelArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 256)]
    pub grid_n: usize,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum BuildingCmd {
    Ball(BallArgs),
    VerifySphere(SphereArgs),
    VerifyTriples(TriplesArgs),
}

#[derive(Args, Serialize, Debug)]
pub struct BallArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 2)]
    pub radius: i64,
    /// Emit the vertices (JSON lines in CSV mode).
    #[arg(long)]
    pub vertices: bool,
}

#[derive(Args, Serialize, Debug)]
pub struct SphereArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Largest `lambda_1`.
    #[arg(long, default_value_t = 4)]
    pub l1_max: i64,
}

#[derive(Args, Serialize, Debug)]
pub struct TriplesArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub m: i64,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsCmd {
    VerifyDominating(DominatingArgs),
    EmLambda(EmLambdaArgs),
    FinalSum(FinalSumArgs),
}

#[derive(Args, Serialize, Debug)]
pub struct DominatingArgs {
    /// Integer points with `m + r + s <= total` are checked.
    #[arg(long, default_value_t = 6)]
    pub total: i64,
}

#[derive(Args, Serialize, Debug)]
pub struct EmLambdaArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Largest `m`, or the `m` of a single `lambda`.
    #[arg(long, default_value_t = 2)]
    pub m: i64,
    /// A single shape `r,s` in cone coordinates.
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Args, Serialize, Debug)]
pub struct FinalSumArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
    pub q: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.25])]
    pub theta: Vec<f64>,
    /// Values of M.
    #[arg(long = "m", value_delimiter = ',', default_values_t = [50, 100, 200, 400])]
    pub ms: Vec<i64>,
    /// Compare with the split path for `M <= split_max`.
    #[arg(long, default_value_t = 400)]
    pub split_max: i64,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum TreeCmd {
    SpectralFloor(TreeFloorArgs),
    EmR(TreeEmArgs),
}

#[derive(Args, Serialize, Debug)]
pub struct TreeFloorArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long = "m", value_delimiter = ',', default_values_t = [25, 50, 100, 200, 400])]
    pub ms: Vec<u32>,
    #[arg(long, default_value_t = 64)]
    pub grid_n: usize,
    /// M used for the rescaled limit.
    #[arg(long, default_value_t = 400)]
    pub rescale_m: u32,
}

#[derive(Args, Serialize, Debug)]
pub struct TreeEmArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Largest `m`, or the `m` of a single `r`.
    #[arg(long, default_value_t = 8)]
    pub m: i64,
    #[arg(long)]
    pub r: Option<i64>,
}

fn parse_lambda(s: &str) -> Result<WeylVector> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    ensure!(parts.len() == 2, "lambda must be `r,s`, got {s:?}");
    let r: i64 = parts[0].parse().context("lambda r")?;
    let s: i64 = parts[1].parse().context("lambda s")?;
    ensure!(r >= 0 && s >= 0, "lambda must be dominant");
    Ok(WeylVector::new(r, s))
}

fn guard_building(p: u32, what: &str, value: i64, max: i64) -> Result<()> {
    ensure!(p == 2 || p == 3, "building enumeration needs p in {{2, 3}}, got {p}");
    let max = if p == 2 { max } else { max - 1 };
    ensure!((0..=max).contains(&value), "{what} must be in [0, {max}] for p = {p}");
    Ok(())
}

fn guard_q(q: u32) -> Result<()> {
    ensure!((2..=64).contains(&q), "q must be in [2, 64], got {q}");
    Ok(())
}

/// Runs a parsed command.
pub fn execute(cmd: &Command) -> Result<Outcome> {
    use verify::*;
    match cmd {
        Command::Polytope(PolytopeCmd::VerifyBrion(a)) => {
            ensure!((0..=40).contains(&a.m) && a.trials <= 1000, "m must be in [0, 40] and trials <= 1000");
            if let Some(path) = &a.input {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let p = LatticePolytope::from_json_str(&text)?;
                return polytope::verify_brion_json(&p, a.trials, a.seed);
            }
            let names = if a.polytope.is_empty() {
                polytope::BRION_SET.to_vec()
            } else {
                a.polytope
                    .iter()
                    .map(|n| NamedPolytope2D::from_name(n).with_context(|| format!("unknown polytope {n:?}")))
                    .collect::<Result<Vec<_>>>()?
            };
            polytope::verify_brion(&names, a.m, a.trials, a.seed)
        }
        Command::Polytope(PolytopeCmd::VerifyDegenerate(a)) => {
            ensure!((0..=40).contains(&a.rect_max) && (0..=200).contains(&a.h_max), "rect_max <= 40, m <= 200");
            polytope::verify_degenerate(a.rect_max, a.h_max)
        }
        Command::Geometry(GeometryCmd::VerifyHexagon(a)) => {
            guard_building(a.q, "m", a.m, 2)?;
            ensure!((0..=20).contains(&a.apartment_m) && (0..=200).contains(&a.rs_max), "apartment_m <= 20, rs_max <= 200");
            geometry::verify_hexagon(a.q, a.m, a.apartment_m, a.rs_max)
        }
        Command::Hecke(HeckeCmd::CardEm(a)) => {
            guard_q(a.q)?;
            ensure!((0..=60).contains(&a.m), "m must be in [0, 60]");
            if a.building {
                guard_building(a.q, "m", a.m, 3)?;
            }
            hecke::card_em(a.q, a.m, a.building)
        }
        Command::Hecke(HeckeCmd::SpectralFloor(a)) => {
            guard_q(a.q)?;
            ensure!(a.margin > 0.0 && a.margin < 0.5, "margin must be in (0, 0.5)");
            ensure!((1..=1024).contains(&a.grid_n), "grid_n must be in [1, 1024]");
            ensure!(!a.ms.is_empty() && a.ms.iter().all(|&m| (1..=2000).contains(&m)), "M must be in [1, 2000]");
            hecke::spectral_floor_check(a.q, a.margin, a.grid_n, &a.ms)
        }
        Command::Hecke(HeckeCmd::PlancherelMass(a)) => {
            guard_q(a.q)?;
            ensure!((4..=4096).contains(&a.grid_n), "grid_n must be in [4, 4096]");
            hecke::plancherel_check(a.q, a.grid_n)
        }
        Command::Building(BuildingCmd::Ball(a)) => {
            guard_building(a.p, "radius", a.radius, 6)?;
            building::ball_report(a.p, a.radius, a.vertices)
        }
        Command::Building(BuildingCmd::VerifySphere(a)) => {
            guard_building(a.p, "l1_max", a.l1_max, 4)?;
            building::verify_sphere(a.p, a.l1_max)
        }
        Command::Building(BuildingCmd::VerifyTriples(a)) => {
            guard_building(a.p, "m", a.m, 2)?;
            building::verify_triples(a.p, a.m)
        }
        Command::Bounds(BoundsCmd::VerifyDominating(a)) => {
            ensure!((0..=12).contains(&a.total), "total must be in [0, 12]");
            bounds::verify_dominating(a.total)
        }
        Command::Bounds(BoundsCmd::EmLambda(a)) => {
            let lambda = a.lambda.as_deref().map(parse_lambda).transpose()?;
            guard_building(a.q, "m", a.m, 3)?;
            ensure!(a.m >= 1, "m must be at least 1");
            bounds::em_lambda(a.q, a.m, lambda)
        }
        Command::Bounds(BoundsCmd::FinalSum(a)) => {
            ensure!(!a.q.is_empty() && a.q.iter().all(|&q| (2..=64).contains(&q)), "q must be in [2, 64]");
            ensure!(!a.theta.is_empty() && a.theta.iter().all(|&t| t > 0.0 && t <= 1.0), "theta must be in (0, 1]");
            ensure!(!a.ms.is_empty() && a.ms.iter().all(|&m| (1..=2000).contains(&m)), "M must be in [1, 2000]");
            bounds::final_sum_check(&a.q, &a.theta, &a.ms, a.split_max)
        }
        Command::Tree(TreeCmd::SpectralFloor(a)) => {
            guard_q(a.q)?;
            ensure!((1..=4096).contains(&a.grid_n), "grid_n must be in [1, 4096]");
            ensure!(!a.ms.is_empty() && a.ms.iter().all(|&m| (1..=5000).contains(&m)), "M must be in [1, 5000]");
            ensure!((1..=5000).contains(&a.rescale_m), "rescale_m must be in [1, 5000]");
            tree::tree_floor_check(a.q, &a.ms, a.grid_n, a.rescale_m)
        }
        Command::Tree(TreeCmd::EmR(a)) => {
            guard_q(a.q)?;
            ensure!((0..=40).contains(&a.m), "m must be in [0, 40]");
            if let Some(r) = a.r {
                if r < 0 || r > 2 * a.m {
                    bail!("r must be in [0, 2m]");
                }
            }
            tree::tree_em_r(a.q, a.m, a.r)
        }
    }
}

/// Renders the report for `cli` in its chosen format.
pub fn render(cli: &Cli, outcome: &Outcome) -> String {
    match cli.format {
        Format::Json => {
            let config = serde_json::to_value(&cli.command).expect("serializable");
            report::to_json(&config, outcome)
        }
        Format::Csv => report::to_csv(outcome),
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("QE_LAB_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("QE_LAB_THREADS={v:?}"))?;
        ensure!(n >= 1, "QE_LAB_THREADS must be at least 1");
        qe_par::set_threads(n).map_err(anyhow::Error::msg)?;
    }
    Ok(())
}

fn run_parsed(cli: &Cli) -> Result<bool> {
    configure_threads()?;
    let outcome = execute(&cli.command)?;
    let text = render(cli, &outcome);
    match &cli.output {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    let failed = outcome.failed();
    if !failed.is_empty() {
        let record = serde_json::json!({ "schema": report::SCHEMA, "failed": failed });
        eprintln!("{record}");
    }
    Ok(failed.is_empty())
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<S: AsRef<str>>(args: &[S]) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(|a| a.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(&cli) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
