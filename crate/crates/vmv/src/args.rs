//! Command-line grammar. Every subcommand's argument struct is also
//! serialized verbatim into the run manifest.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::config::parse_budget;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "vmv",
    version,
    about = "Exact Vinogradov mean values, congruence class counts, exponent tables and Weyl sums",
    after_help = "Exit codes: 0 success, 1 invalid input, 2 budget exceeded.\nDefaults for the global flags are read from vmv.toml (see --config)."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default, PartialEq)]
pub struct GlobalArgs {
    /// Work budget in estimated enumeration steps, e.g. 500000000 or 5e8
    #[arg(long, global = true, value_name = "STEPS", value_parser = parse_budget)]
    pub budget: Option<u128>,
    /// Worker threads; results do not depend on this
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Seed for randomized subcommands
    #[arg(long, global = true, value_name = "SEED")]
    pub seed: Option<u64>,
    /// Artifact format; csv is only available for tables and ladders
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory for the artifact and run.manifest.json [default: vmv-out]
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    /// Configuration file [default: $VMV_CONFIG, then ./vmv.toml]
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyArg {
    Auto,
    Direct,
    Symmetry,
    Convolution,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum LiftArg {
    Full,
    Reduced,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SearchArg {
    Exhaustive,
    Symmetry,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaArg {
    FullLift,
    FullLiftBase,
    ReducedLift,
    ReducedLiftBase,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    OptimalRange,
    NearOptimal,
    QuasiDiagonal,
    QuasiDiagonalUniform,
    Holder,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum LedgerModeArg {
    QuasiDiagonal,
    NearOptimal,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionedArg {
    /// s plain variables ≡ η (mod p^b) plus one conditioned block per side
    I,
    /// one level-a block and s level-b blocks per side
    K,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// Singular series of the Waring problem at n
    Waring,
    /// Singular series of the mean value J_{s,k}
    MeanValue,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Exact J_{s,k}(X): solutions of x_1^j+…+x_s^j = y_1^j+…+y_s^j (1 ≤ j ≤ k) in [1,X]
    CountJ(CountJArgs),
    /// J_{s,k}(X) with residue constraints and conditioned blocks, or the I/K maxima
    CountRestricted(CountRestrictedArgs),
    /// Exact count of diagonal solutions (y a permutation of x)
    Diagonal(DiagonalArgs),
    /// J_{s,k}(X) along a list of X with the fitted log-log slope
    Ladder(LadderArgs),
    /// Class counts of the auxiliary congruence systems, maximized or for one target
    CongruenceB(CongruenceBArgs),
    /// Check the class-count bounds on a grid of (p, k, r, a, b)
    VerifyLemma(VerifyLemmaArgs),
    /// Count nonsingular solutions of a polynomial system modulo a prime power
    Hensel(HenselArgs),
    /// Integer certificate eliminating the low powers in the shifted-power identity
    Lemma32(Lemma32Args),
    /// Exponent calculators: envelope for λ*_{s,k}, Δ_{t,k}, ν_{r,k} and related constants
    Exponent(ExponentArgs),
    /// Upper bounds for Γ̃(k) with the closed-form table check
    GtildeTable(KRangeArgs),
    /// Upper bounds for Γ̃⁺(k)
    GtildePlus(KRangeArgs),
    /// Upper bounds for Tarry's problem W(k, 2)
    Tarry(KRangeArgs),
    /// Evaluate the Weyl sum f_k(α; X) with exact phase reduction
    WeylEval(WeylEvalArgs),
    /// Major/minor arc classification of α
    MinorArc(MinorArcArgs),
    /// Exact min over 1 ≤ n ≤ N of the distance from α_1 n + … + α_k n^k to the nearest integer
    FracMin(FracMinArgs),
    /// Exact number of representations as a sum of s positive k-th powers
    WaringCount(WaringCountArgs),
    /// Truncated singular series
    SingularSeries(SingularSeriesArgs),
    /// Truncated singular series and singular integral of the mean value asymptotic
    Constants(ConstantsArgs),
    /// Replay the iteration recurrences with exact rational checks
    Ledger(LedgerArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CountJ(_) => "count-j",
            Command::CountRestricted(_) => "count-restricted",
            Command::Diagonal(_) => "diagonal",
            Command::Ladder(_) => "ladder",
            Command::CongruenceB(_) => "congruence-b",
            Command::VerifyLemma(_) => "verify-lemma",
            Command::Hensel(_) => "hensel",
            Command::Lemma32(_) => "lemma32",
            Command::Exponent(_) => "exponent",
            Command::GtildeTable(_) => "gtilde-table",
            Command::GtildePlus(_) => "gtilde-plus",
            Command::Tarry(_) => "tarry",
            Command::WeylEval(_) => "weyl-eval",
            Command::MinorArc(_) => "minor-arc",
            Command::FracMin(_) => "frac-min",
            Command::WaringCount(_) => "waring-count",
            Command::SingularSeries(_) => "singular-series",
            Command::Constants(_) => "constants",
            Command::Ledger(_) => "ledger",
        }
    }
}

pub const SUBCOMMANDS: [&str; 19] = [
    "count-j",
    "count-restricted",
    "diagonal",
    "ladder",
    "congruence-b",
    "verify-lemma",
    "hensel",
    "lemma32",
    "exponent",
    "gtilde-table",
    "gtilde-plus",
    "tarry",
    "weyl-eval",
    "minor-arc",
    "frac-min",
    "waring-count",
    "singular-series",
    "constants",
    "ledger",
];

#[derive(Args, Debug, Clone, Serialize)]
pub struct CountJArgs {
    /// Degree k ≥ 1
    #[arg(long)]
    pub k: u32,
    /// Number of variable pairs s ≥ 1
    #[arg(long)]
    pub s: u32,
    /// Range bound X ≥ 1
    #[arg(long)]
    pub x: u64,
    /// Enumeration strategy [default: from config, else auto]
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CountRestrictedArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub x: u64,
    /// Plain variable pairs (I mode: plain variables; K mode: level-b blocks)
    #[arg(long, default_value_t = 0)]
    pub s: u32,
    /// Residue constraint P:C:XI, or '*' for none. Give one (applied to
    /// every variable), s (same on both sides) or 2s (x_1..x_s then y_1..y_s)
    #[arg(long = "constraint", value_name = "P:C:XI")]
    pub constraints: Vec<String>,
    /// Conditioned block P:C:XI:SIGNS on both sides, SIGNS like "+-+"
    #[arg(long = "block", value_name = "P:C:XI:SIGNS")]
    pub blocks: Vec<String>,
    /// Maximize a conditioned mean value over ξ, η and signs instead
    #[arg(long, value_enum, conflicts_with_all = ["constraints", "blocks"], requires_all = ["p", "a", "b", "r"])]
    pub max: Option<ConditionedArg>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    /// Block arity
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DiagonalArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub x: u64,
    /// Also count J_{s,k}(X) and report whether the two agree
    #[arg(long)]
    pub compare: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LadderArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub s: u32,
    /// Strictly ascending X values, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub x: Vec<u64>,
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CongruenceBArgs {
    /// Prime p
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub k: u32,
    /// Tuple length r in [1, k-1]
    #[arg(long)]
    pub r: usize,
    /// Lower level a ≥ 0
    #[arg(long)]
    pub a: u32,
    /// Upper level b > a
    #[arg(long)]
    pub b: u32,
    /// Classes counted mod p^{kb} (full) or p^{(k-r+1)b} (reduced)
    #[arg(long, value_enum, default_value = "full")]
    pub mode: LiftArg,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub search: SearchArg,
    /// Target m_1..m_k for a single instance; needs --eta, --sigma and (a ≥ 1) --xi
    #[arg(long, value_delimiter = ',', requires_all = ["eta", "sigma"])]
    pub m: Option<Vec<u64>>,
    #[arg(long)]
    pub xi: Option<u64>,
    #[arg(long)]
    pub eta: Option<u64>,
    /// Sign pattern like "+-"
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyLemmaArgs {
    /// Restrict to one bound [default: every applicable bound]
    #[arg(long, value_enum)]
    pub lemma: Option<LemmaArg>,
    /// Primes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    /// Restrict to one tuple length [default: every r in [1, k-1]]
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub a: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub b: Vec<u32>,
    #[arg(long, value_enum, default_value = "symmetry")]
    pub search: SearchArg,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct HenselArgs {
    /// Prime ϖ
    #[arg(long)]
    pub prime: u64,
    /// Exponent l ≥ 1 of the modulus ϖ^l
    #[arg(long, default_value_t = 1)]
    pub level: u32,
    /// One polynomial per equation, e.g. "x^2 - 2" or "x*y - 1"; 1 to 3 of them
    #[arg(long = "poly", required = true, allow_hyphen_values = true)]
    pub polys: Vec<String>,
    /// Variable names [default: x; x,y; x,y,z]
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Lemma32Args {
    #[arg(long)]
    pub alpha: u32,
    #[arg(long)]
    pub beta: u32,
    /// Largest β accepted
    #[arg(long, default_value_t = vmv_core::congruence::DEFAULT_MAX_BETA)]
    pub max_beta: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExponentArgs {
    #[arg(long)]
    pub k: u64,
    /// Build the envelope of bounds for λ*_{s,k} at this s
    #[arg(long)]
    pub s: Option<u64>,
    /// Restrict the envelope to these families [default: all]
    #[arg(long = "family", value_enum, value_delimiter = ',')]
    pub families: Vec<FamilyArg>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct KRangeArgs {
    /// Single k (same as --k-min K --k-max K)
    #[arg(long, conflicts_with_all = ["k_min", "k_max"])]
    pub k: Option<u64>,
    #[arg(long, requires = "k_max")]
    pub k_min: Option<u64>,
    #[arg(long, requires = "k_min")]
    pub k_max: Option<u64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WeylEvalArgs {
    /// Coefficients α_1,…,α_k as integers or fractions n/d
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    /// Treat a single --alpha as the coefficient of x^K (the sum g_K)
    #[arg(long, value_name = "K")]
    pub monomial: Option<usize>,
    #[arg(long)]
    pub x: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MinorArcArgs {
    /// α as an integer or fraction n/d
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub x: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FracMinArgs {
    /// Coefficients α_1,…,α_k as integers or fractions n/d
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    #[arg(long)]
    pub n: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WaringCountArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: u64,
    /// Report R_{s,k}(m) for every 0 ≤ m ≤ n
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SingularSeriesArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: u32,
    /// Target n (Waring series only)
    #[arg(long)]
    pub n: Option<u64>,
    /// Truncation point Q
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum, default_value = "waring")]
    pub kind: SeriesKind,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub k: usize,
    /// Series truncation Q
    #[arg(long, default_value_t = 20)]
    pub q: u64,
    /// Half-width B of the integration box [-B, B]^k
    #[arg(long, default_value_t = 4.0)]
    pub b: f64,
    /// Midpoint cells per unit length
    #[arg(long, default_value_t = 8)]
    pub grid: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LedgerArgs {
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub r: u64,
    #[arg(long, value_enum, default_value = "quasi-diagonal")]
    pub mode: LedgerModeArg,
    /// Iteration count N
    #[arg(long, default_value_t = 6)]
    pub steps: usize,
    /// Explicit h_0..h_{N-1}; default all zero unless --random
    #[arg(long, value_delimiter = ',', conflicts_with = "random")]
    pub h: Option<Vec<String>>,
    /// Explicit h_{-1} (0 or 1), used with --h
    #[arg(long, default_value_t = 0, requires = "h")]
    pub h_minus1: u8,
    /// Draw every h uniformly from its admissible range (uses --seed)
    #[arg(long)]
    pub random: bool,
    /// With --random: replay this many consecutive seeds and summarize
    #[arg(long, default_value_t = 1, requires = "random")]
    pub runs: u64,
}
