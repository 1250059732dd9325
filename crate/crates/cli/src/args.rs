use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use roth_core::config::{ConfigKind, Policy};

#[derive(Debug, Parser)]
#[command(
    name = "roth",
    version,
    about = "Roth-type configurations in finite groups",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for parallel library operations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Facts about a group and its subgroups.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Search a set for one configuration.
    Find(FindArgs),
    /// Count the configurations in a set.
    Count(CountArgs),
    /// Triangle census of the removal-lemma encoding.
    Census(CensusArgs),
    /// Largest configuration-free set.
    Extremal(ExtremalArgs),
    /// Fraction of random sets containing a configuration, per density.
    Experiment(ExperimentArgs),
    /// Check a witness, or run the invariant suite on an instance.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// Order, exponent, center, Sylow and abelian subgroup sizes.
    Info(GroupSource),
    /// Every subgroup, in enumeration order.
    Subgroups(GroupSource),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GroupSource {
    /// Named group: cyclic:n, elemab:p:k, dihedral:n, quaternion8,
    /// symmetric:n, product:A:B.
    #[arg(long)]
    pub group: Option<String>,
    /// Cayley table file.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Instance {
    #[command(flatten)]
    pub source: GroupSource,
    /// Subgroup: whole, trivial, auto, sylow:p, gens:a,b,... or elements:a,b,...
    #[arg(long = "H", default_value = "whole")]
    pub subgroup: String,
    #[command(flatten)]
    pub policy: PolicyFlags,
}

#[derive(Debug, Clone, Args)]
pub struct SetArgs {
    /// full, empty, random:<density>:<seed> or file:<path>.
    #[arg(long, default_value = "full")]
    pub subset: String,
    /// Grid dimension for corners.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PolicyFlags {
    /// Accept the identity as the parameter d.
    #[arg(long)]
    pub allow_identity: bool,
    /// Accept e = a.
    #[arg(long)]
    pub allow_equal_rows: bool,
    /// Accept repeated points in progressions and xz = y².
    #[arg(long)]
    pub allow_repeated_points: bool,
    /// Reject parameters of order two.
    #[arg(long)]
    pub exclude_involutions: bool,
}

impl PolicyFlags {
    pub fn policy(&self) -> Policy {
        Policy {
            nontrivial_parameter: !self.allow_identity,
            distinct_rows: !self.allow_equal_rows,
            exclude_involutions: self.exclude_involutions,
            distinct_points: !self.allow_repeated_points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Elso,
    Harmadik,
    Quadruple,
    Corollary,
    Ap3,
    Corner,
    Ksv,
}

impl From<Kind> for ConfigKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Elso => ConfigKind::Elso,
            Kind::Harmadik => ConfigKind::Harmadik,
            Kind::Quadruple => ConfigKind::Quadruple,
            Kind::Corollary => ConfigKind::Corollary,
            Kind::Ap3 => ConfigKind::Ap3,
            Kind::Corner => ConfigKind::Corner,
            Kind::Ksv => ConfigKind::Ksv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Graph,
    Pipeline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Pigeonhole,
    AllCosetPairs,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BlocksArg {
    Pigeonhole,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Heuristic,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = Method::Brute)]
    pub method: Method,
    /// Coset pairs searched by the elso graph finder.
    #[arg(long, value_enum, default_value_t = ScopeArg::Pigeonhole)]
    pub scope: ScopeArg,
    /// Grid blocks searched by the corner hypergraph finder.
    #[arg(long, value_enum, default_value_t = BlocksArg::Pigeonhole)]
    pub blocks: BlocksArg,
    /// Exit with status 1 when nothing is found.
    #[arg(long)]
    pub require: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[command(flatten)]
    pub set: SetArgs,
    /// elso, harmadik, ap3, ksv or corner.
    #[arg(long, value_enum)]
    pub kind: Kind,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[command(flatten)]
    pub set: SetArgs,
    /// elso (triangle graph) or corner (clique hypergraph).
    #[arg(long, value_enum, default_value_t = Kind::Elso)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = ScopeArg::AllCosetPairs)]
    pub scope: ScopeArg,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Search-tree node cap for exact mode.
    #[arg(long, default_value_t = 100_000_000)]
    pub node_cap: u64,
    /// Wall-clock cap in seconds for exact mode.
    #[arg(long, default_value_t = 60.0)]
    pub time_cap: f64,
    /// Restarts for heuristic mode.
    #[arg(long, default_value_t = 64)]
    pub iterations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Comma-separated densities in (0, 1].
    #[arg(long, value_delimiter = ',', required = true)]
    pub densities: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[command(flatten)]
    pub set: SetArgs,
    /// Witness JSON: a `find` report or a bare witness.
    #[arg(long)]
    pub witness: Option<PathBuf>,
}
