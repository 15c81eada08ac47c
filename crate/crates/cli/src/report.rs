//! Report types shared by the commands and the renderers.

use serde::Serialize;

use maxsub::maximal::{Count, Descriptor, Kind};
use maxsub::oracle::Verdict;

use crate::config::Mode;

/// Overall outcome, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Capacity,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Verified => 0,
            Status::Capacity => 2,
            Status::Mismatch => 3,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Info(InfoReport),
    Maximal(MaximalReport),
    Table(TableReport),
}

impl Report {
    pub fn status(&self) -> Status {
        match self {
            Report::Info(_) => Status::Verified,
            Report::Maximal(r) => r.status,
            Report::Table(r) => r.status,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Units {
    pub order: usize,
    /// `trivial`, `cyclic`, `dihedral` or `other`.
    pub structure: &'static str,
}

#[derive(Debug, Serialize)]
pub struct JSummary {
    pub id: u32,
    pub rank: usize,
    pub size: usize,
    pub l_classes: usize,
    pub r_classes: usize,
    pub h_size: usize,
    pub regular: bool,
    pub idempotents: usize,
}

#[derive(Debug, Serialize)]
pub struct InfoReport {
    pub command: &'static str,
    pub family: String,
    pub degree: usize,
    pub order: usize,
    pub units: Units,
    /// Distinct J-class ranks, largest first.
    pub ranks: Vec<usize>,
    pub j_classes: Vec<JSummary>,
    pub idempotents: usize,
    pub regular: bool,
    pub regular_star: bool,
    pub semilattice: bool,
}

#[derive(Debug, Serialize)]
pub struct CountContext {
    pub formula: &'static str,
    pub count: Count,
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub index: usize,
    pub kind: Option<Kind>,
    /// Rank of the J-class holding the complement.
    pub j_rank: Option<usize>,
    pub size: Option<usize>,
    pub complement_size: Option<usize>,
    /// Listed when short enough.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<Descriptor>,
    pub verdict: Option<Verdict>,
}

/// Set-level comparison against a second route.
#[derive(Debug, Serialize)]
pub struct Agreement {
    /// `formula` or `theorem`.
    pub reference: &'static str,
    /// `None` when the reference is unavailable within budget.
    pub agree: Option<bool>,
    pub expected: Option<usize>,
    pub found: usize,
    pub missing: usize,
    pub extra: usize,
}

#[derive(Debug, Serialize)]
pub struct MaximalReport {
    pub command: &'static str,
    pub family: String,
    pub degree: usize,
    pub mode: Mode,
    pub order: Option<usize>,
    pub count_context: CountContext,
    pub entries: Vec<Entry>,
    pub agreement: Option<Agreement>,
    pub status: Status,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Verified,
    /// Counts agree; the monoid was not built.
    Counted,
    Mismatch,
    Capacity,
    /// The closed form needs `s_n` beyond budget.
    Symbolic,
    OutOfRange,
    Error,
}

impl RowStatus {
    pub fn severity(self) -> Status {
        match self {
            RowStatus::Verified | RowStatus::Counted | RowStatus::OutOfRange => Status::Verified,
            RowStatus::Capacity | RowStatus::Symbolic => Status::Capacity,
            RowStatus::Mismatch | RowStatus::Error => Status::Mismatch,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub family: String,
    pub n: usize,
    pub formula: &'static str,
    pub formula_count: Count,
    pub constructed: Option<usize>,
    pub verified: bool,
    pub status: RowStatus,
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub command: &'static str,
    pub degrees: [usize; 2],
    pub rows: Vec<Row>,
    pub status: Status,
}
