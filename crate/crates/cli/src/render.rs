//! Text, JSON and CSV renderings of a report.

use std::fmt::Write as _;
use std::io::{self, Write};

use maxsub::oracle::Verdict;

use crate::config::Format;
use crate::report::*;

/// Column order of `table1 --format csv`.
pub const TABLE_COLUMNS: [&str; 8] =
    ["family", "n", "formula", "formula_count", "constructed", "verified", "status", "note"];
/// Column order of `maximal --format csv`.
pub const MAXIMAL_COLUMNS: [&str; 7] = ["index", "kind", "j_rank", "size", "complement_size", "verdict", "descriptor"];
/// Column order of `info --format csv`.
pub const INFO_COLUMNS: [&str; 8] = ["id", "rank", "size", "l_classes", "r_classes", "h_size", "regular", "idempotents"];

pub fn render(report: &Report, format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => csv_bytes(report),
        Format::Text => Ok(text(report).into_bytes()),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

fn verdict_text(v: &Option<Verdict>) -> String {
    match v {
        None => "unverified".into(),
        Some(Verdict::Maximal) => "maximal".into(),
        Some(Verdict::NotProper) => "not proper".into(),
        Some(Verdict::NotClosed { a, b, product }) => format!("not closed ({a}*{b}={product})"),
        Some(Verdict::NotMaximal { witness }) => format!("not maximal (witness {witness})"),
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::Capacity => "capacity skips present",
        Status::Mismatch => "verification mismatch",
    }
}

fn row_status_text(s: RowStatus) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

fn csv_bytes(report: &Report) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match report {
        Report::Info(r) => {
            w.write_record(INFO_COLUMNS)?;
            for c in &r.j_classes {
                w.write_record([
                    c.id.to_string(),
                    c.rank.to_string(),
                    c.size.to_string(),
                    c.l_classes.to_string(),
                    c.r_classes.to_string(),
                    c.h_size.to_string(),
                    c.regular.to_string(),
                    c.idempotents.to_string(),
                ])?;
            }
        }
        Report::Maximal(r) => {
            w.write_record(MAXIMAL_COLUMNS)?;
            for e in &r.entries {
                let descriptor = match &e.descriptor {
                    Some(d) => serde_json::to_string(&d.payload)?,
                    None => String::new(),
                };
                w.write_record([
                    e.index.to_string(),
                    opt(&e.kind),
                    opt(&e.j_rank),
                    opt(&e.size),
                    opt(&e.complement_size),
                    verdict_text(&e.verdict),
                    descriptor,
                ])?;
            }
        }
        Report::Table(r) => {
            w.write_record(TABLE_COLUMNS)?;
            for row in &r.rows {
                w.write_record([
                    row.family.clone(),
                    row.n.to_string(),
                    row.formula.to_string(),
                    row.formula_count.to_string(),
                    opt(&row.constructed),
                    row.verified.to_string(),
                    row_status_text(row.status),
                    opt(&row.note),
                ])?;
            }
        }
    }
    w.into_inner().map_err(|e| e.into_error())
}

fn text(report: &Report) -> String {
    let mut s = String::new();
    match report {
        Report::Info(r) => info_text(&mut s, r),
        Report::Maximal(r) => maximal_text(&mut s, r),
        Report::Table(r) => table_text(&mut s, r),
    }
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info_text(s: &mut String, r: &InfoReport) {
    let _ = writeln!(s, "{}{}: order {}", r.family, r.degree, r.order);
    if r.semilattice {
        let _ = writeln!(s, "semilattice");
    }
    let _ = writeln!(s, "units: order {} ({})", r.units.order, r.units.structure);
    let ranks: Vec<String> = r.ranks.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "ranks: {}", ranks.join(", "));
    let _ = writeln!(
        s,
        "idempotents: {}, regular: {}, regular *: {}",
        r.idempotents,
        yes(r.regular),
        yes(r.regular_star)
    );
    let _ = writeln!(s, "{:>4} {:>5} {:>8} {:>6} {:>6} {:>5} {:>8} {:>11}", "J", "rank", "size", "L", "R", "H", "regular", "idempotents");
    for c in &r.j_classes {
        let _ = writeln!(
            s,
            "{:>4} {:>5} {:>8} {:>6} {:>6} {:>5} {:>8} {:>11}",
            c.id,
            c.rank,
            c.size,
            c.l_classes,
            c.r_classes,
            c.h_size,
            yes(c.regular),
            c.idempotents
        );
    }
}

fn maximal_text(s: &mut String, r: &MaximalReport) {
    let mode = serde_json::to_value(r.mode).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
    let _ = writeln!(
        s,
        "{}{} ({mode}): {} maximal subsemigroups; formula {} = {}",
        r.family,
        r.degree,
        r.entries.len(),
        r.count_context.formula,
        r.count_context.count
    );
    if let Some(order) = r.order {
        let _ = writeln!(s, "order {order}");
    }
    for e in &r.entries {
        let _ = write!(
            s,
            "{:>4}  {:<3} rank {:<3} removes {:<7} {}",
            e.index,
            opt(&e.kind),
            opt(&e.j_rank),
            opt(&e.complement_size),
            verdict_text(&e.verdict)
        );
        if let Some(d) = &e.descriptor {
            let _ = write!(s, "  {}", serde_json::to_string(&d.payload).unwrap_or_default());
        } else if let Some(c) = &e.complement {
            let _ = write!(s, "  [{}]", c.join(", "));
        }
        s.push('\n');
    }
    if let Some(a) = &r.agreement {
        let agree = match a.agree {
            Some(b) => yes(b),
            None => "unknown",
        };
        let _ = writeln!(s, "agrees with {}: {agree}", a.reference);
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = writeln!(s, "status: {}", status_text(r.status));
}

fn table_text(s: &mut String, r: &TableReport) {
    let _ = writeln!(s, "{:<6} {:>3} {:>12} {:>12} {:>9}  {:<12} formula", "family", "n", "formula", "constructed", "verified", "status");
    for row in &r.rows {
        let _ = write!(
            s,
            "{:<6} {:>3} {:>12} {:>12} {:>9}  {:<12} {}",
            row.family,
            row.n,
            row.formula_count.to_string(),
            opt(&row.constructed),
            yes(row.verified),
            row_status_text(row.status),
            row.formula
        );
        if let Some(note) = &row.note {
            let _ = write!(s, "  ({note})");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "status: {}", status_text(r.status));
}

pub fn write(bytes: &[u8], path: Option<&std::path::Path>) -> io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}
