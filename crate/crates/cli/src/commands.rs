//! The three commands. Each returns a report; rendering happens elsewhere.

use rayon::prelude::*;

use maxsub::maximal::descriptor::{infer_kind, sorted_members};
use maxsub::maximal::groups::{GroupTable, Shape};
use maxsub::maximal::{classify_all, count_formula, formula_text, theorem_registry, ClassifyOptions, Count, Descriptor};
use maxsub::monoid::{Budget, ElementSet, FiniteMonoid};
use maxsub::oracle::{exhaustive_maximal, jclass_restricted_maximal, verify_maximal, JCLASS_CAP};
use maxsub::{Error, Family, Result};

use crate::config::{Mode, RunConfig, Task};
use crate::report::*;

/// Complements up to this size are listed element by element.
const COMPLEMENT_LIST_CAP: usize = 24;
/// Unit groups up to this order get a structure label.
const UNIT_SHAPE_CAP: usize = 1000;

pub fn run(cfg: &RunConfig) -> Result<Report> {
    match &cfg.task {
        Task::Info { family, degree } => info(*family, *degree, cfg).map(Report::Info),
        Task::Maximal { family, degree, mode } => maximal(*family, *degree, *mode, cfg).map(Report::Maximal),
        Task::Table {
            degrees,
            families,
            verify,
        } => Ok(Report::Table(table(degrees.clone(), families, *verify, cfg))),
    }
}

fn budget(cfg: &RunConfig) -> Budget {
    Budget {
        max_elements: cfg.max_elements,
        ..Budget::default()
    }
}

fn options(cfg: &RunConfig) -> ClassifyOptions {
    ClassifyOptions {
        subgroup_budget: cfg.subgroup_budget,
        ..ClassifyOptions::default()
    }
}

pub fn info(family: Family, n: usize, cfg: &RunConfig) -> Result<InfoReport> {
    let m = FiniteMonoid::enumerate(family, n, &budget(cfg))?;
    let g = m.greens();
    let units = g.units();
    let structure = if units.len() > UNIT_SHAPE_CAP {
        "other"
    } else {
        match GroupTable::from_monoid(&m, units)?.shape() {
            Shape::Trivial => "trivial",
            Shape::Cyclic { .. } => "cyclic",
            Shape::Dihedral { .. } => "dihedral",
            Shape::Other => "other",
        }
    };
    let mut ranks: Vec<usize> = g.j_classes.iter().map(|c| c.rank).collect();
    ranks.sort_unstable_by(|a, b| b.cmp(a));
    ranks.dedup();
    let idempotents = (0..m.len() as u32).filter(|&i| m.is_idempotent(i)).count();
    let semilattice = idempotents == m.len()
        && (0..m.len() as u32).all(|a| (0..a).all(|b| m.mul(a, b) == m.mul(b, a)));
    Ok(InfoReport {
        command: "info",
        family: family.to_string(),
        degree: n,
        order: m.len(),
        units: Units {
            order: units.len(),
            structure,
        },
        ranks,
        j_classes: g
            .j_classes
            .iter()
            .map(|c| JSummary {
                id: c.id,
                rank: c.rank,
                size: c.elements.len(),
                l_classes: c.l_classes.len(),
                r_classes: c.r_classes.len(),
                h_size: c.h_size,
                regular: c.regular,
                idempotents: c.idempotents.len(),
            })
            .collect(),
        idempotents,
        regular: g.j_classes.iter().all(|c| c.regular),
        regular_star: m.is_regular_star(),
        semilattice,
    })
}

fn entry(m: &FiniteMonoid, index: usize, kept: &ElementSet, descriptor: Option<&Descriptor>) -> Entry {
    let complement: Vec<u32> = (0..m.len() as u32).filter(|&i| !kept.contains(i as usize)).collect();
    Entry {
        index,
        kind: descriptor.map(|d| d.kind).or_else(|| infer_kind(m, kept)),
        j_rank: descriptor
            .map(|d| d.j_rank)
            .or_else(|| complement.first().map(|&c| m.element(c).rank())),
        size: Some(m.len() - complement.len()),
        complement_size: Some(complement.len()),
        complement: (complement.len() <= COMPLEMENT_LIST_CAP)
            .then(|| complement.iter().map(|&c| m.element(c).to_string()).collect()),
        descriptor: descriptor.cloned(),
        verdict: Some(verify_maximal(m, kept)),
    }
}

/// Entries for a list of sets, verified in parallel.
fn entries(m: &FiniteMonoid, sets: &[ElementSet], descriptors: Option<&[Descriptor]>) -> Vec<Entry> {
    sets.par_iter()
        .enumerate()
        .map(|(i, s)| entry(m, i, s, descriptors.map(|d| &d[i])))
        .collect()
}

fn materialize(m: &FiniteMonoid, ds: &[Descriptor]) -> Result<Vec<ElementSet>> {
    ds.iter().map(|d| d.materialize(m)).collect()
}

fn set_lists(sets: &[ElementSet]) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = sets.iter().map(sorted_members).collect();
    v.sort();
    v
}

fn compare_sets(found: &[ElementSet], reference: &[ElementSet]) -> Agreement {
    let (f, r) = (set_lists(found), set_lists(reference));
    let missing = r.iter().filter(|s| f.binary_search(s).is_err()).count();
    let extra = f.iter().filter(|s| r.binary_search(s).is_err()).count();
    Agreement {
        reference: "theorem",
        agree: Some(missing == 0 && extra == 0 && f.len() == r.len()),
        expected: Some(r.len()),
        found: f.len(),
        missing,
        extra,
    }
}

fn compare_count(count: &Count, found: usize) -> Agreement {
    let expected = count.value().map(|v| v as usize);
    Agreement {
        reference: "formula",
        agree: expected.map(|e| e == found),
        expected,
        found,
        missing: expected.map_or(0, |e| e.saturating_sub(found)),
        extra: expected.map_or(0, |e| found.saturating_sub(e)),
    }
}

fn distinct(sets: &[ElementSet]) -> bool {
    let mut v = set_lists(sets);
    v.dedup();
    v.len() == sets.len()
}

pub fn maximal(family: Family, n: usize, mode: Mode, cfg: &RunConfig) -> Result<MaximalReport> {
    let count = count_formula(family, n);
    let monoid = FiniteMonoid::enumerate(family, n, &budget(cfg));
    let mut notes = Vec::new();
    let mut status = Status::Verified;
    let (order, entries, agreement) = match mode {
        Mode::Theorem => {
            let ds = theorem_registry(family, n)?;
            let agreement = compare_count(&count, ds.len());
            let entries = match monoid {
                Ok(m) => {
                    let sets = materialize(&m, &ds)?;
                    if !distinct(&sets) {
                        notes.push("two descriptors give the same set".into());
                        status = Status::Mismatch;
                    }
                    (Some(m.len()), entries(&m, &sets, Some(&ds)))
                }
                Err(e @ Error::Capacity { .. }) => {
                    notes.push(format!("not verified: {e}"));
                    status = Status::Capacity;
                    let bare = ds
                        .into_iter()
                        .enumerate()
                        .map(|(index, d)| Entry {
                            index,
                            kind: Some(d.kind),
                            j_rank: Some(d.j_rank),
                            size: None,
                            complement_size: None,
                            complement: None,
                            descriptor: Some(d),
                            verdict: None,
                        })
                        .collect();
                    (None, bare)
                }
                Err(e) => return Err(e),
            };
            (entries.0, entries.1, agreement)
        }
        Mode::Classify | Mode::Oracle => {
            let m = monoid?;
            let (found, ds) = if mode == Mode::Classify {
                let ds = classify_all(&m, &options(cfg))?;
                (materialize(&m, &ds)?, Some(ds))
            } else {
                (oracle_sets(&m, family, n, cfg)?, None)
            };
            if !distinct(&found) {
                notes.push("two results give the same set".into());
                status = Status::Mismatch;
            }
            let agreement = match theorem_registry(family, n).and_then(|r| materialize(&m, &r)) {
                Ok(reference) => compare_sets(&found, &reference),
                Err(e @ Error::Capacity { .. }) => {
                    notes.push(format!("no theorem reference: {e}"));
                    status = status.max(Status::Capacity);
                    Agreement {
                        reference: "theorem",
                        agree: None,
                        expected: None,
                        found: found.len(),
                        missing: 0,
                        extra: 0,
                    }
                }
                Err(e) => return Err(e),
            };
            (Some(m.len()), entries(&m, &found, ds.as_deref()), agreement)
        }
    };
    match agreement.agree {
        Some(true) => {}
        Some(false) => {
            notes.push(format!("{} disagrees: expected {:?}, found {}", agreement.reference, agreement.expected, agreement.found));
            status = Status::Mismatch;
        }
        None => status = status.max(Status::Capacity),
    }
    if entries.iter().any(|e| e.verdict.as_ref().is_some_and(|v| !v.is_maximal())) {
        notes.push("a listed set is not a maximal subsemigroup".into());
        status = Status::Mismatch;
    }
    Ok(MaximalReport {
        command: "maximal",
        family: family.to_string(),
        degree: n,
        mode,
        order,
        count_context: CountContext {
            formula: formula_text(family),
            count,
        },
        entries,
        agreement: Some(agreement),
        status,
        notes,
    })
}

fn oracle_sets(m: &FiniteMonoid, family: Family, n: usize, cfg: &RunConfig) -> Result<Vec<ElementSet>> {
    if m.len() <= cfg.oracle_cap {
        return exhaustive_maximal(m);
    }
    let widest = m.greens().j_classes.iter().map(|c| c.elements.len()).max().unwrap_or(0);
    if widest > JCLASS_CAP {
        return Err(Error::Capacity {
            what: format!("{family}{n} has {} elements and a J-class of {widest}", m.len()),
            bound: JCLASS_CAP,
        });
    }
    jclass_restricted_maximal(m)
}

pub fn table(degrees: std::ops::RangeInclusive<usize>, families: &[Family], verify: bool, cfg: &RunConfig) -> TableReport {
    let cells: Vec<(Family, usize)> = families
        .iter()
        .flat_map(|&f| degrees.clone().map(move |n| (f, n)))
        .collect();
    let rows: Vec<Row> = cells.par_iter().map(|&(f, n)| cell(f, n, verify, cfg)).collect();
    let status = rows.iter().map(|r| r.status.severity()).max().unwrap_or(Status::Verified);
    TableReport {
        command: "table1",
        degrees: [*degrees.start(), *degrees.end()],
        rows,
        status,
    }
}

fn cell(f: Family, n: usize, verify: bool, cfg: &RunConfig) -> Row {
    let count = count_formula(f, n);
    let mut row = Row {
        family: f.to_string(),
        n,
        formula: formula_text(f),
        formula_count: count.clone(),
        constructed: None,
        verified: false,
        status: RowStatus::Verified,
        note: match &count {
            Count::Exception { statement, .. } => Some(statement.to_string()),
            _ => None,
        },
    };
    let fail = |mut row: Row, status: RowStatus, note: String| {
        row.status = status;
        row.note = Some(match row.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        row
    };
    if count == Count::OutOfRange {
        row.status = RowStatus::OutOfRange;
        return row;
    }
    let ds = match theorem_registry(f, n) {
        Ok(ds) => ds,
        Err(e @ Error::Capacity { .. }) => return fail(row, RowStatus::Capacity, e.to_string()),
        Err(e) => return fail(row, RowStatus::Error, e.to_string()),
    };
    row.constructed = Some(ds.len());
    match count.value() {
        None => return fail(row, RowStatus::Symbolic, "closed form needs s_n beyond the subgroup budget".into()),
        Some(v) if v as usize != ds.len() => {
            return fail(row, RowStatus::Mismatch, format!("{} constructed, {v} by formula", ds.len()))
        }
        Some(_) => {}
    }
    if !verify {
        row.status = RowStatus::Counted;
        return row;
    }
    let m = match FiniteMonoid::enumerate(f, n, &budget(cfg)) {
        Ok(m) => m,
        Err(e @ Error::Capacity { .. }) => return fail(row, RowStatus::Capacity, e.to_string()),
        Err(e) => return fail(row, RowStatus::Error, e.to_string()),
    };
    let sets = match materialize(&m, &ds) {
        Ok(s) => s,
        Err(e) => return fail(row, RowStatus::Error, e.to_string()),
    };
    if let Some(i) = sets.iter().position(|s| !verify_maximal(&m, s).is_maximal()) {
        return fail(row, RowStatus::Mismatch, format!("descriptor {i} is not maximal"));
    }
    if !distinct(&sets) {
        return fail(row, RowStatus::Mismatch, "descriptors are not distinct".into());
    }
    row.verified = true;
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Format;

    fn cfg() -> RunConfig {
        RunConfig {
            task: Task::Info {
                family: "J".parse().unwrap(),
                degree: 1,
            },
            format: Format::Json,
            output: None,
            max_elements: 10_000,
            subgroup_budget: crate::config::DEFAULT_SUBGROUP_BUDGET,
            oracle_cap: crate::config::DEFAULT_ORACLE_CAP,
            threads: None,
        }
    }

    fn fam(s: &str) -> Family {
        s.parse().unwrap()
    }

    #[test]
    fn info_examples() {
        let j = info(fam("J"), 4, &cfg()).unwrap();
        assert_eq!((j.order, j.units.order, j.ranks.clone()), (14, 1, vec![4, 2, 0]));
        let b = info(fam("B"), 3, &cfg()).unwrap();
        assert_eq!((b.order, b.units.order), (15, 6));
        let pt = info(fam("PT"), 1, &cfg()).unwrap();
        assert!(pt.order == 2 && pt.semilattice);
    }

    #[test]
    fn modes_agree_on_small_hosts() {
        for (f, n, want) in [("POI", 3, 7), ("I", 2, 2), ("AJ", 3, 2)] {
            for mode in [Mode::Theorem, Mode::Classify, Mode::Oracle] {
                let r = maximal(fam(f), n, mode, &cfg()).unwrap();
                assert_eq!(r.entries.len(), want, "{f}{n} {mode:?}");
                assert_eq!(r.status, Status::Verified, "{f}{n} {mode:?}: {:?}", r.notes);
            }
        }
    }

    #[test]
    fn capacity_is_reported_not_fatal() {
        let mut c = cfg();
        c.max_elements = 10;
        let r = maximal(fam("POI"), 4, Mode::Theorem, &c).unwrap();
        assert_eq!(r.status, Status::Capacity);
        assert!(r.entries.iter().all(|e| e.verdict.is_none()));
        let row = cell(fam("POI"), 4, true, &c);
        assert_eq!(row.status, RowStatus::Capacity);
    }

    #[test]
    fn table_rows_in_order() {
        let t = table(2..=4, &[fam("M"), fam("J")], true, &cfg());
        let keys: Vec<(String, usize)> = t.rows.iter().map(|r| (r.family.clone(), r.n)).collect();
        assert_eq!(keys[0], ("M".to_string(), 2));
        assert_eq!(keys[5], ("J".to_string(), 4));
        let m4 = &t.rows[2];
        assert_eq!((m4.constructed, m4.verified), (Some(21), true));
    }
}
