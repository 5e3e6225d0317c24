use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "brauer",
    version,
    about = "Formal Brauer groups of K3 families: heights, unit roots, slope decompositions"
)]
pub struct Cli {
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// p-adic precision N.
    #[arg(long = "N", visible_alias = "precision", global = true)]
    pub precision: Option<u32>,
    /// Degree cutoff D for group laws.
    #[arg(long = "D", visible_alias = "cutoff", global = true)]
    pub cutoff: Option<usize>,
    #[arg(long, global = true)]
    pub s_max: Option<u32>,
    #[arg(long, global = true)]
    pub mu_max: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Results-cache directory (the BRAUER_CACHE_DIR variable takes precedence).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub p: u64,
    /// Comma-separated residues c_1,...,c_k (default: all 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Option<Vec<u64>>,
    #[arg(long)]
    pub lambda: Option<u64>,
    /// Lift parameters to Teichmüller representatives instead of integers.
    #[arg(long)]
    pub teichmuller: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PolyArgs {
    /// Comma-separated integer coefficients, constant term first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CongruenceKind {
    /// Unit root against its hypergeometric closed form.
    Identity,
    /// x-polynomials against the limit series.
    Series,
    /// Supersingular divisibility of the logarithm.
    Divisibility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    Lambda,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountKindArg {
    Hypersurface,
    DoubleCover,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// List the family catalog.
    Families,
    /// Logarithm coefficients a(0..count) with an oracle cross-check.
    LogCoeffs {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 16)]
        count: u64,
    },
    /// Truncated formal group law and its axiom checks.
    GroupLaw {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Height classification of one family member.
    Height {
        #[command(flatten)]
        family: FamilyArgs,
        /// Use the x-normalized logarithm of a quasi-diagonal family at this x.
        #[arg(long)]
        x: Option<u64>,
    },
    /// V1 and V2 of a quasi-diagonal family over F_p.
    VPolys {
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: u64,
    },
    /// Unit root from coefficient ratios with congruence witnesses.
    UnitRoot {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Jacobi quartic unit root against Γ_p(1/4)^4 / Γ_p(1/2)^2.
    GammaCheck {
        #[arg(long)]
        p: u64,
    },
    /// p-adic limit identities and divisibility statements.
    CongruenceCheck {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = CongruenceKind::Identity)]
        kind: CongruenceKind,
    },
    /// Newton polygon of an integer polynomial.
    Newton {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        a: u32,
    },
    /// Slope decomposition and functional equation.
    SlopeFactor {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        a: u32,
    },
    /// Largest r with R = Q^r, with an irreducibility verdict for Q.
    PowerStructure {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Admissible exponents r; the whole table when tau and h are omitted.
    RTable {
        #[arg(long)]
        tau: Option<u64>,
        #[arg(long)]
        h: Option<u64>,
        #[arg(long, default_value_t = 20)]
        tau_max: u64,
    },
    /// Exhaustive point count over GF(q).
    PointCount {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Option<Vec<i64>>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
        /// Explicit form `coef:e1,e2,..;coef:e1,e2,..`.
        #[arg(long)]
        form: Option<String>,
        #[arg(long, value_enum, default_value_t = CountKindArg::Hypersurface)]
        kind: CountKindArg,
        #[arg(long)]
        q: u64,
    },
    /// Jacobi sum of two characters of order dividing d.
    JacobiSum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        k1: u64,
        #[arg(long)]
        k2: u64,
    },
    /// Height of every member over F_p (by λ, or by x for quasi-diagonal families).
    HeightScan {
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',')]
        c: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value_t = ScanMode::Lambda)]
        mode: ScanMode,
        /// Classify only this many values, drawn with the seed.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// gcd(V1, V2) for every applicable prime below p_max.
    Q49Scan {
        #[arg(long, default_value_t = 150)]
        p_max: u64,
        #[arg(long)]
        family: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Families => "families",
            Command::LogCoeffs { .. } => "log-coeffs",
            Command::GroupLaw { .. } => "group-law",
            Command::Height { .. } => "height",
            Command::VPolys { .. } => "v-polys",
            Command::UnitRoot { .. } => "unit-root",
            Command::GammaCheck { .. } => "gamma-check",
            Command::CongruenceCheck { .. } => "congruence-check",
            Command::Newton { .. } => "newton",
            Command::SlopeFactor { .. } => "slope-factor",
            Command::PowerStructure { .. } => "power-structure",
            Command::RTable { .. } => "r-table",
            Command::PointCount { .. } => "point-count",
            Command::JacobiSum { .. } => "jacobi-sum",
            Command::HeightScan { .. } => "height-scan",
            Command::Q49Scan { .. } => "q49-scan",
        }
    }
}
