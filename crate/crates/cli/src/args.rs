use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spinor_forge::algebra::Mode;

/// Dirac bilinears, Lounesto classes, class-preserving symmetries and spinor-space flows.
#[derive(Debug, Parser)]
#[command(name = "spinor-forge", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Arithmetic: `exact` (Gaussian rationals) or `float` (binary64).
    #[arg(long, global = true, env = "SPINOR_FORGE_MODE", default_value = "exact")]
    pub mode: Mode,
    /// Tolerance; the default depends on the subcommand.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample or point count; the default depends on the subcommand.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lounesto class of one spinor or a list of spinors.
    Classify(SpinorInput),
    /// Bilinear covariants of one spinor or a list of spinors.
    Bilinears(SpinorInput),
    /// Fierz identity residuals of a spinor or of a bilinear aggregate.
    Fpk(FpkArgs),
    /// Tests whether a candidate maps each class into itself.
    SymmetryCheck(SymmetryCheckArgs),
    /// Composes candidates left to right and checks multiplicativity of the rescaling map.
    SymmetryCompose(MatrixList),
    /// Inverts a candidate and checks reciprocity of the rescaling map.
    SymmetryInvert(SingleMatrix),
    /// Closure, inverses and associativity of the set generated by the given matrices.
    GroupCheck(GroupCheckArgs),
    /// Exact spinors of a given class.
    Sample(SampleArgs),
    /// Plane-wave flow on spinor space and its density.
    Evolve(EvolveArgs),
    /// Exotic flow with `θ = κt + k⃗·x⃗ + θ₀` and its density.
    ExoticEvolve(ExoticArgs),
}

#[derive(Debug, Args)]
pub struct SpinorInput {
    /// Inline JSON, `@path` to a JSON file, or `random`.
    #[arg(long)]
    pub spinor: String,
}

#[derive(Debug, Args)]
pub struct FpkArgs {
    /// Inline JSON, `@path`, or `random`.
    #[arg(long, conflicts_with = "aggregate", required_unless_present = "aggregate")]
    pub spinor: Option<String>,
    /// Bilinear aggregate as emitted by `bilinears`, inline or `@path`.
    #[arg(long)]
    pub aggregate: Option<String>,
}

#[derive(Debug, Args)]
pub struct CandidateArg {
    /// Matrix name (`identity`, `gamma0`..`gamma3`, `gamma5`, optional `-`), inline JSON or `@path`.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    /// Treat the candidate as `ψ ↦ Mψ*`.
    #[arg(long)]
    pub antilinear: bool,
}

#[derive(Debug, Args)]
pub struct SymmetryCheckArgs {
    #[command(flatten)]
    pub candidate: CandidateArg,
    /// Class to test (1-6); all classes when absent.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub class: Option<u8>,
}

#[derive(Debug, Args)]
pub struct SingleMatrix {
    #[command(flatten)]
    pub candidate: CandidateArg,
}

#[derive(Debug, Args)]
pub struct MatrixList {
    /// Repeat for each factor; candidate objects may set `"antilinear": true`.
    #[arg(long = "matrix", required = true, num_args = 1, allow_hyphen_values = true)]
    pub matrices: Vec<String>,
}

#[derive(Debug, Args)]
pub struct GroupCheckArgs {
    #[command(flatten)]
    pub generators: MatrixList,
    #[arg(long, default_value_t = spinor_forge::symmetry::DEFAULT_WORD_LENGTH)]
    pub max_word_length: usize,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub class: u8,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    /// Four-momentum `E,px,py,pz`.
    #[arg(long, default_value = "1,0,0,1", value_parser = parse_vec4, allow_hyphen_values = true)]
    pub p: [f64; 4],
    #[arg(long, default_value_t = 0.0)]
    pub mass: f64,
    #[arg(long, value_enum, default_value_t = SpinArg::Up)]
    pub spin: SpinArg,
    /// Negative-energy branch `v(p)e^{+ip·x}`.
    #[arg(long)]
    pub antiparticle: bool,
    /// Avatar map: `identity`, `random` (seeded), inline JSON or `@path`.
    #[arg(long, default_value = "identity")]
    pub phi: String,
    /// Spatial point whose field value seeds the trajectory.
    #[arg(long, default_value = "0,0,0", value_parser = parse_vec3, allow_hyphen_values = true)]
    pub x: [f64; 3],
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t1: f64,
    #[arg(long, default_value_t = spinor_forge::dynamics::DEFAULT_DT)]
    pub dt: f64,
    /// Per-step error budget of the integrator.
    #[arg(long, default_value_t = spinor_forge::dynamics::DEFAULT_BUDGET)]
    pub budget: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho0: f64,
    /// Where to write the JSON summary when `--format csv` is used (stderr otherwise).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Writes an SVG line chart of ρ against t.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpinArg {
    Up,
    Down,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub wave: WaveArgs,
}

#[derive(Debug, Args)]
pub struct ExoticArgs {
    #[command(flatten)]
    pub wave: WaveArgs,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub kappa: f64,
    /// Spatial gradient `kx,ky,kz` of θ.
    #[arg(long, default_value = "0,0,0", value_parser = parse_vec3, allow_hyphen_values = true)]
    pub k: [f64; 3],
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta0: f64,
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

fn parse_vec4(s: &str) -> Result<[f64; 4], String> {
    parse_list(s)
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    parse_list(s)
}
