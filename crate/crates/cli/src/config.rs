//! Command line arguments and the validated run configuration.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use maxsub::Family;

pub const DEFAULT_ELEMENT_CAP: usize = 300_000;
pub const DEFAULT_SUBGROUP_BUDGET: usize = maxsub::maximal::groups::DEFAULT_SUBGROUP_BUDGET;
pub const DEFAULT_ORACLE_CAP: usize = maxsub::oracle::EXHAUSTIVE_CAP;

#[derive(Parser, Debug)]
#[command(name = "maxsub", version, about = "Maximal subsemigroups of transformation and diagram monoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Largest monoid that may be built.
    #[arg(long, env = "MAXSUB_ELEMENT_CAP", default_value_t = DEFAULT_ELEMENT_CAP, global = true)]
    pub max_elements: usize,
    /// Subgroup count bound for the subgroup searches of the classifier.
    #[arg(long, env = "MAXSUB_SUBGROUP_BUDGET", default_value_t = DEFAULT_SUBGROUP_BUDGET, global = true)]
    pub subgroup_budget: usize,
    /// Largest monoid handed to the exhaustive oracle.
    #[arg(long, env = "MAXSUB_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP, global = true)]
    pub oracle_cap: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, units and J-classes of a monoid.
    Info {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        degree: usize,
    },
    /// List and verify the maximal subsemigroups of a monoid.
    Maximal {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Mode::Theorem)]
        mode: Mode,
    },
    /// Sweep the count table over a range of degrees.
    Table1 {
        /// Degree range such as `2..8` (inclusive) or a single degree.
        #[arg(long)]
        degrees: DegreeRange,
        /// Comma separated families; defaults to every family of the table.
        #[arg(long, value_delimiter = ',')]
        families: Vec<Family>,
        /// Compare counts only, without building the monoids.
        #[arg(long)]
        skip_verify: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Descriptors from the closed-form constructions.
    Theorem,
    /// Descriptors found by the structural classifier.
    Classify,
    /// Sets found by brute-force search.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRange(pub RangeInclusive<usize>);

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad degree {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let d = num(s)?;
                (d, d)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("degree range {s:?} is empty or starts at 0"));
        }
        Ok(DegreeRange(lo..=hi))
    }
}

#[derive(Clone, Debug)]
pub enum Task {
    Info { family: Family, degree: usize },
    Maximal { family: Family, degree: usize, mode: Mode },
    Table { degrees: RangeInclusive<usize>, families: Vec<Family>, verify: bool },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub task: Task,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub max_elements: usize,
    pub subgroup_budget: usize,
    pub oracle_cap: usize,
    pub threads: Option<usize>,
}

/// The families of the count table, in table order.
pub fn table_families() -> Vec<Family> {
    [
        "POI", "PO", "POD", "PODI", "O", "OD", "OP", "OR", "POP", "POR", "POPI", "PORI", "PT", "T", "I", "J", "M",
        "AJ", "P", "PB", "B", "Istar", "F", "PP",
    ]
    .iter()
    .map(|s| s.parse().expect("table family"))
    .collect()
}

impl TryFrom<Cli> for RunConfig {
    type Error = String;

    fn try_from(cli: Cli) -> Result<Self, String> {
        let c = cli.common;
        let task = match cli.command {
            Command::Info { family, degree } => Task::Info { family, degree },
            Command::Maximal { family, degree, mode } => Task::Maximal { family, degree, mode },
            Command::Table1 {
                degrees,
                families,
                skip_verify,
            } => Task::Table {
                degrees: degrees.0,
                families: if families.is_empty() { table_families() } else { families },
                verify: !skip_verify,
            },
        };
        if let Task::Info { degree: 0, .. } | Task::Maximal { degree: 0, .. } = task {
            return Err("degree must be at least 1".into());
        }
        for (name, v) in [
            ("--max-elements", c.max_elements),
            ("--subgroup-budget", c.subgroup_budget),
            ("--oracle-cap", c.oracle_cap),
        ] {
            if v == 0 {
                return Err(format!("{name} must be positive"));
            }
        }
        if c.oracle_cap > DEFAULT_ORACLE_CAP {
            return Err(format!("--oracle-cap is at most {DEFAULT_ORACLE_CAP}"));
        }
        if c.threads == Some(0) {
            return Err("--threads must be positive".into());
        }
        Ok(RunConfig {
            task,
            format: c.format,
            output: c.output,
            max_elements: c.max_elements,
            subgroup_budget: c.subgroup_budget,
            oracle_cap: c.oracle_cap,
            threads: c.threads,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!("2..8".parse(), Ok(DegreeRange(2..=8)));
        assert_eq!("2..=8".parse(), Ok(DegreeRange(2..=8)));
        assert_eq!("5".parse(), Ok(DegreeRange(5..=5)));
        assert!("0..3".parse::<DegreeRange>().is_err());
        assert!("4..3".parse::<DegreeRange>().is_err());
        assert!("a..3".parse::<DegreeRange>().is_err());
    }

    #[test]
    fn table_has_every_family_but_the_symmetric_group() {
        let fams = table_families();
        assert_eq!(fams.len(), Family::all().count() - 1);
        assert!(!fams.contains(&"S".parse().unwrap()));
    }

    #[test]
    fn zero_caps_are_rejected() {
        let cli = Cli::parse_from(["maxsub", "info", "--family", "J", "--degree", "3", "--max-elements", "0"]);
        assert!(RunConfig::try_from(cli).is_err());
        let cli = Cli::parse_from(["maxsub", "info", "--family", "J", "--degree", "0"]);
        assert!(RunConfig::try_from(cli).is_err());
    }
}
