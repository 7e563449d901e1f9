use std::collections::BTreeSet;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wordstat::query::{Engine, Family};
use wordstat::verify::Suite;
use wordstat::{BlockPartition, Letter, QTracking};

#[derive(Parser, Debug)]
#[command(
    name = "wordstat",
    version,
    about = "Count words by refined descent, rise and level statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of words with one statistic value
    Count {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Full distribution of a statistic
    Table {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Coefficients of a generating function
    Series(SeriesArgs),
    /// Run a cross-engine verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value_t = EngineArg::ClosedForm)]
    pub engine: EngineArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineArg {
    ClosedForm,
    Oracle,
    Transfer,
    Series,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::ClosedForm => Engine::ClosedForm,
            EngineArg::Oracle => Engine::Oracle,
            EngineArg::Transfer => Engine::Transfer,
            EngineArg::Series => Engine::Series,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum FamilyCmd {
    /// Levels whose first letter is in [t]
    LevelsThreshold {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
        /// Number of levels (count only)
        #[arg(long)]
        s: Option<u32>,
        #[command(flatten)]
        common: EngineArgs,
    },
    /// Levels per block, blocks being consecutive runs of the given sizes
    LevelsBlocks {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u32>,
        #[arg(long)]
        n: u32,
        /// Levels per block (count only)
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<u32>>,
        #[command(flatten)]
        common: EngineArgs,
    },
    /// Descents whose first letter is in [t]
    DesLe {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: Option<u32>,
        #[command(flatten)]
        common: EngineArgs,
    },
    /// Descents whose first letter exceeds t
    DesGt {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: Option<u32>,
        #[command(flatten)]
        common: EngineArgs,
    },
    /// Descents whose first letter is congruent to r mod s
    DesMod {
        /// Modulus
        #[arg(long)]
        s: u32,
        #[arg(long)]
        alphabet: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        /// Number of descents (count only)
        #[arg(long)]
        p: Option<u32>,
        #[command(flatten)]
        common: EngineArgs,
    },
    /// Descents with top in X and bottom in Y over rearrangements of a multiset
    HallRemmel {
        /// Multiplicity of each letter 1..m
        #[arg(long, value_delimiter = ',', required = true)]
        rho: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        x: Vec<Letter>,
        #[arg(long, value_delimiter = ',')]
        y: Vec<Letter>,
        #[arg(long)]
        s: Option<u32>,
        #[command(flatten)]
        common: EngineArgs,
    },
}

/// A family command resolved into the library's terms.
pub struct FamilyQuery {
    pub family: Family,
    pub n: u32,
    pub value: Option<Vec<u32>>,
    pub engine: Engine,
    pub format: Format,
    pub params: Vec<(&'static str, String)>,
}

fn list(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl FamilyCmd {
    pub fn resolve(self) -> FamilyQuery {
        let (family, n, value, common, mut params) = match self {
            FamilyCmd::LevelsThreshold { k, t, n, s, common } => (
                Family::LevelsThreshold { k, t },
                n,
                s.map(|s| vec![s]),
                common,
                vec![("k", k.to_string()), ("t", t.to_string())],
            ),
            FamilyCmd::LevelsBlocks {
                sizes,
                n,
                targets,
                common,
            } => {
                let p = vec![("sizes", list(&sizes))];
                (Family::LevelsBlocks { sizes }, n, targets, common, p)
            }
            FamilyCmd::DesLe { k, t, n, s, common } => (
                Family::DesLe { k, t },
                n,
                s.map(|s| vec![s]),
                common,
                vec![("k", k.to_string()), ("t", t.to_string())],
            ),
            FamilyCmd::DesGt { k, t, n, s, common } => (
                Family::DesGt { k, t },
                n,
                s.map(|s| vec![s]),
                common,
                vec![("k", k.to_string()), ("t", t.to_string())],
            ),
            FamilyCmd::DesMod {
                s,
                alphabet,
                r,
                n,
                p,
                common,
            } => (
                Family::DesMod { s, alphabet, r },
                n,
                p.map(|p| vec![p]),
                common,
                vec![
                    ("s", s.to_string()),
                    ("alphabet", alphabet.to_string()),
                    ("r", r.to_string()),
                ],
            ),
            FamilyCmd::HallRemmel {
                rho,
                x,
                y,
                s,
                common,
            } => {
                let n = rho.iter().sum();
                let p = vec![("rho", list(&rho)), ("x", list(&x)), ("y", list(&y))];
                let x: BTreeSet<Letter> = x.into_iter().collect();
                let y: BTreeSet<Letter> = y.into_iter().collect();
                (
                    Family::HallRemmel { rho, x, y },
                    n,
                    s.map(|s| vec![s]),
                    common,
                    p,
                )
            }
        };
        params.push(("n", n.to_string()));
        if let Some(v) = &value {
            params.push(("value", list(v)));
        }
        FamilyQuery {
            family,
            n,
            value,
            engine: common.engine.into(),
            format: common.format,
            params,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum QArg {
    None,
    Common,
    PerBlock,
}

impl From<QArg> for QTracking {
    fn from(q: QArg) -> QTracking {
        match q {
            QArg::None => QTracking::Untracked,
            QArg::Common => QTracking::Common,
            QArg::PerBlock => QTracking::PerBlock,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[arg(long, value_enum, default_value_t = GfArg::A)]
    pub gf: GfArg,
    #[arg(long)]
    pub k: u32,
    /// threshold:<t>, mod:<s> or blocks:<b1,...,bk>
    #[arg(long, default_value = "threshold:0")]
    pub partition: String,
    /// Markers to keep, e.g. x2,z1; "all" keeps every x, y and z
    #[arg(long, value_delimiter = ',')]
    pub track: Vec<String>,
    #[arg(long, value_enum, default_value_t = QArg::Common)]
    pub q: QArg,
    /// Truncation order N; coefficients 0..=N are printed
    #[arg(long)]
    pub order: usize,
}

pub fn parse_partition(k: u32, spec: &str) -> Result<BlockPartition, String> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| {
        format!("partition '{spec}' must look like threshold:<t>, mod:<s> or blocks:<labels>")
    })?;
    let num = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| format!("cannot parse '{s}' in partition '{spec}'"))
    };
    let p = match kind {
        "threshold" => BlockPartition::threshold(k, num(arg)?),
        "mod" => BlockPartition::mod_residue(k, num(arg)?),
        "blocks" => {
            let labels = arg.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
            if labels.len() != k as usize {
                return Err(format!(
                    "blocks: needs one label per letter, got {} for k = {k}",
                    labels.len()
                ));
            }
            BlockPartition::from_blocks(&labels)
        }
        _ => return Err(format!("unknown partition kind '{kind}'")),
    };
    p.map_err(|e| e.to_string())
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteArg {
    OracleVsTransfer,
    FormulasVsOracle,
    SeriesVsOracle,
    Identities,
    HallRemmel,
    Duality,
    BkVsAk,
    Errata,
    All,
}

impl SuiteArg {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::OracleVsTransfer => vec![Suite::OracleVsTransfer],
            SuiteArg::FormulasVsOracle => vec![Suite::FormulasVsOracle],
            SuiteArg::SeriesVsOracle => vec![Suite::SeriesVsOracle],
            SuiteArg::Identities => vec![Suite::Identities],
            SuiteArg::HallRemmel => vec![Suite::HallRemmel],
            SuiteArg::Duality => vec![Suite::Duality],
            SuiteArg::BkVsAk => vec![Suite::BkVsAk],
            SuiteArg::Errata => vec![Suite::Errata],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 4)]
    pub k_max: u32,
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
    /// Corrupt the side under test by one; the suite must then fail
    #[arg(long)]
    pub inject_fault: bool,
}
