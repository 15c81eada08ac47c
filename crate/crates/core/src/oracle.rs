//! Independent checks of maximality: direct verification of a candidate set,
//! exhaustive search over all subsets of a tiny monoid, and a search restricted
//! to complements inside a single J-class.

use fixedbitset::FixedBitSet;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{ElementSet, FiniteMonoid, Local};

/// Largest monoid searched subset by subset.
pub const EXHAUSTIVE_CAP: usize = 20;
/// Largest J-class searched subset by subset.
pub const JCLASS_CAP: usize = 22;

/// Whether `x` is closed under the product, by checking every pair.
pub fn is_subsemigroup(m: &FiniteMonoid, x: &ElementSet) -> bool {
    let members: Vec<u32> = x.ones().map(|i| i as u32).collect();
    members
        .par_iter()
        .all(|&a| members.iter().all(|&b| x.contains(m.mul(a, b) as usize)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NotProper,
    NotClosed { a: u32, b: u32, product: u32 },
    /// Adding `witness` does not generate the monoid.
    NotMaximal { witness: u32 },
    Maximal,
}

impl Verdict {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Verdict::Maximal)
    }
}

/// Decides whether `x` is a maximal subsemigroup of `m`.
///
/// Any product landing in the complement has both factors in the up-set of the
/// J-classes the complement meets, so closedness and generation are checked there.
/// An excluded element whose closure with `x` reaches another excluded element
/// is settled by that element, so only sink components of the reachability graph
/// on the complement are tested.
pub fn verify_maximal(m: &FiniteMonoid, x: &ElementSet) -> Verdict {
    let g = m.greens();
    let complement: Vec<u32> = (0..m.len() as u32).filter(|&i| !x.contains(i as usize)).collect();
    if complement.is_empty() {
        return Verdict::NotProper;
    }
    let mut tops: Vec<u32> = complement.iter().map(|&c| g.j_of[c as usize]).collect();
    tops.sort_unstable();
    tops.dedup();
    let local = Local::above(m, tops.iter().copied());
    let kept: Vec<u32> = (0..local.len() as u32)
        .filter(|&a| x.contains(local.global(a) as usize))
        .collect();
    let mut in_kept = FixedBitSet::with_capacity(local.len());
    kept.iter().for_each(|&a| in_kept.insert(a as usize));

    let violation = kept.par_iter().find_map_any(|&a| {
        kept.iter().find_map(|&b| {
            let p = local.mul(a, b)?;
            (!in_kept.contains(p as usize)).then(|| (local.global(a), local.global(b), local.global(p)))
        })
    });
    if let Some((a, b, product)) = violation {
        return Verdict::NotClosed { a, b, product };
    }

    // Generators of the kept part, taken from the top of the J-order down.
    let mut order = kept.clone();
    order.sort_by_key(|&a| {
        let j = g.j_of[local.global(a) as usize];
        (g.top_down().iter().position(|&t| t == j), a)
    });
    let mut base = local.closure();
    for &a in &order {
        base.add(a);
    }
    let gens: Vec<u32> = base.generators().to_vec();

    let excluded: Vec<u32> = (0..local.len() as u32).filter(|&a| !in_kept.contains(a as usize)).collect();
    let mut slot = vec![usize::MAX; local.len()];
    for (k, &c) in excluded.iter().enumerate() {
        slot[c as usize] = k;
    }
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(excluded.len(), 0);
    let nodes: Vec<_> = excluded.iter().map(|_| graph.add_node(())).collect();
    for (k, &c) in excluded.iter().enumerate() {
        let targets = gens
            .iter()
            .flat_map(|&y| [local.mul(c, y), local.mul(y, c)])
            .chain([local.mul(c, c)])
            .flatten();
        for t in targets {
            let s = slot[t as usize];
            if s != usize::MAX && s != k {
                graph.update_edge(nodes[k], nodes[s], ());
            }
        }
    }
    let sccs = petgraph::algo::kosaraju_scc(&graph);
    let mut component = vec![0usize; excluded.len()];
    for (i, comp) in sccs.iter().enumerate() {
        for n in comp {
            component[n.index()] = i;
        }
    }
    let sinks: Vec<u32> = sccs
        .iter()
        .enumerate()
        .filter(|(i, comp)| {
            comp.iter()
                .all(|&n| graph.neighbors(n).all(|t| component[t.index()] == *i))
        })
        .map(|(_, comp)| excluded[comp.iter().map(|n| n.index()).min().unwrap()])
        .collect();
    let failure = sinks.par_iter().find_map_first(|&c| {
        let mut cl = base.clone();
        cl.add(c);
        (!cl.is_everything()).then(|| local.global(c))
    });
    match failure {
        Some(witness) => Verdict::NotMaximal { witness },
        None => Verdict::Maximal,
    }
}

fn mask_to_set(m: &FiniteMonoid, mask: u32) -> ElementSet {
    m.set_from((0..m.len() as u32).filter(|&i| mask >> i & 1 == 1))
}

/// Keeps the inclusion-maximal masks from a list of proper closed masks.
fn inclusion_maximal(mut masks: Vec<u32>) -> Vec<u32> {
    masks.sort_unstable_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
    let mut out: Vec<u32> = Vec::new();
    for s in masks {
        if !out.iter().any(|&t| s & t == s) {
            out.push(s);
        }
    }
    out
}

/// Every maximal subsemigroup of a monoid with at most [`EXHAUSTIVE_CAP`] elements,
/// by testing each subset for closure.
pub fn exhaustive_maximal(m: &FiniteMonoid) -> Result<Vec<ElementSet>> {
    let k = m.len();
    if k > EXHAUSTIVE_CAP {
        return Err(Error::Capacity {
            what: format!("exhaustive search over {k} elements"),
            bound: EXHAUSTIVE_CAP,
        });
    }
    let table: Vec<Vec<u32>> = (0..k as u32)
        .map(|a| (0..k as u32).map(|b| m.mul(a, b)).collect())
        .collect();
    let full: u32 = (1u32 << k) - 1;
    let closed = |s: u32| {
        let mut rest = s;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut bs = s;
            while bs != 0 {
                let b = bs.trailing_zeros() as usize;
                bs &= bs - 1;
                if s >> table[a][b] & 1 == 0 {
                    return false;
                }
            }
        }
        true
    };
    let masks: Vec<u32> = (0..full).into_par_iter().filter(|&s| closed(s)).collect();
    let mut out: Vec<ElementSet> = inclusion_maximal(masks).into_iter().map(|s| mask_to_set(m, s)).collect();
    out.sort_by_key(crate::maximal::descriptor::sorted_members);
    Ok(out)
}

/// Lookup tables answering "the union of `row[a]` over `a` in a mask" for masks of up to 22 bits.
struct SplitUnion {
    low: Vec<u32>,
    high: Vec<u32>,
    shift: usize,
}

impl SplitUnion {
    fn new(rows: &[u32]) -> Self {
        let k = rows.len();
        let shift = k / 2;
        let build = |offset: usize, width: usize| {
            let mut t = vec![0u32; 1 << width];
            for s in 1..1usize << width {
                let a = s.trailing_zeros() as usize;
                t[s] = t[s & (s - 1)] | rows[offset + a];
            }
            t
        };
        SplitUnion {
            low: build(0, shift),
            high: build(shift, k - shift),
            shift,
        }
    }

    fn union(&self, mask: u32) -> u32 {
        self.low[(mask & ((1 << self.shift) - 1)) as usize] | self.high[(mask >> self.shift) as usize]
    }
}

/// Every maximal subsemigroup whose complement lies in a single J-class, for
/// monoids whose J-classes have at most [`JCLASS_CAP`] elements.
pub fn jclass_restricted_maximal(m: &FiniteMonoid) -> Result<Vec<ElementSet>> {
    let g = m.greens();
    if let Some(big) = g.j_classes.iter().find(|c| c.elements.len() > JCLASS_CAP) {
        return Err(Error::Capacity {
            what: format!("J-class {} of size {}", big.id, big.elements.len()),
            bound: JCLASS_CAP,
        });
    }
    let mut out = Vec::new();
    for (j, class) in g.j_classes.iter().enumerate() {
        let members = &class.elements;
        let k = members.len();
        let local = Local::above(m, [j as u32]);
        let bit = |x: u32| members.iter().position(|&y| y == x).map_or(0, |p| 1u32 << p);
        let outside: Vec<u32> = (0..local.len() as u32)
            .filter(|&a| g.j_of[local.global(a) as usize] != j as u32)
            .collect();
        let locals: Vec<u32> = members.iter().map(|&x| local.local(x).unwrap()).collect();
        // Products of two elements above J that land in J can never be removed.
        let forced = outside
            .par_iter()
            .map(|&a| outside.iter().filter_map(|&b| local.mul(a, b)).map(|p| bit(local.global(p))).fold(0, |x, y| x | y))
            .reduce(|| 0, |x, y| x | y);
        // Products of a kept element of J with an element above J.
        let mixed: Vec<u32> = locals
            .iter()
            .map(|&a| {
                outside
                    .iter()
                    .flat_map(|&b| [local.mul(a, b), local.mul(b, a)])
                    .flatten()
                    .map(|p| bit(local.global(p)))
                    .fold(0, |x, y| x | y)
            })
            .collect();
        let inner: Vec<Vec<u32>> = locals
            .iter()
            .map(|&a| {
                locals
                    .iter()
                    .map(|&b| local.mul(a, b).map_or(0, |p| bit(local.global(p))))
                    .collect()
            })
            .collect();
        let mixed_union = SplitUnion::new(&mixed);
        // For each a, the union over b in a mask of the product a * b inside J.
        let row_unions: Vec<SplitUnion> = inner.iter().map(|row| SplitUnion::new(row)).collect();
        let full: u32 = ((1u64 << k) - 1) as u32;
        let valid: Vec<u32> = (1..=full)
            .into_par_iter()
            .filter(|&x| {
                if x & forced != 0 {
                    return false;
                }
                let kept = full & !x;
                if mixed_union.union(kept) & x != 0 {
                    return false;
                }
                let mut rest = kept;
                while rest != 0 {
                    let a = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if row_unions[a].union(kept) & x != 0 {
                        return false;
                    }
                }
                true
            })
            .collect();
        let mut minimal: Vec<u32> = Vec::new();
        let mut sorted = valid;
        sorted.sort_unstable_by_key(|&x| (x.count_ones(), x));
        for x in sorted {
            if !minimal.iter().any(|&y| x & y == y) {
                minimal.push(x);
            }
        }
        for x in minimal {
            let mut set = m.full_set();
            for (p, &e) in members.iter().enumerate() {
                if x >> p & 1 == 1 {
                    set.set(e as usize, false);
                }
            }
            out.push(set);
        }
    }
    out.sort_by_key(crate::maximal::descriptor::sorted_members);
    Ok(out)
}

/// A comparison of two lists of maximal subsemigroups.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub host: String,
    pub oracle_sets: Vec<Vec<u32>>,
    pub engine_sets: Vec<Vec<u32>>,
    pub agreement: bool,
    pub oracle_only: Vec<Vec<u32>>,
    pub engine_only: Vec<Vec<u32>>,
}

impl OracleReport {
    pub fn compare(host: impl Into<String>, oracle: &[ElementSet], engine: &[ElementSet]) -> Self {
        let lists = |v: &[ElementSet]| {
            let mut out: Vec<Vec<u32>> = v.iter().map(crate::maximal::descriptor::sorted_members).collect();
            out.sort();
            out
        };
        let (oracle_sets, engine_sets) = (lists(oracle), lists(engine));
        let oracle_only: Vec<Vec<u32>> = oracle_sets.iter().filter(|s| !engine_sets.contains(s)).cloned().collect();
        let engine_only: Vec<Vec<u32>> = engine_sets.iter().filter(|s| !oracle_sets.contains(s)).cloned().collect();
        OracleReport {
            host: host.into(),
            agreement: oracle_only.is_empty() && engine_only.is_empty() && oracle_sets.len() == engine_sets.len(),
            oracle_sets,
            engine_sets,
            oracle_only,
            engine_only,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Family;
    use crate::monoid::Budget;
    use crate::partition::DiagramKind;
    use crate::transform::TransformKind;

    fn host(f: Family, n: usize) -> FiniteMonoid {
        FiniteMonoid::enumerate(f, n, &Budget::default()).unwrap()
    }

    #[test]
    fn empty_set_is_a_subsemigroup() {
        let m = host(Family::Transform(TransformKind::PO), 3);
        assert!(is_subsemigroup(&m, &m.empty_set()));
        let mut x = m.full_set();
        x.set(m.identity().unwrap() as usize, false);
        assert!(is_subsemigroup(&m, &x));
    }

    #[test]
    fn small_exhaustive_counts() {
        let cases = [
            (Family::Transform(TransformKind::I), 2, 2),
            (Family::Transform(TransformKind::PT), 1, 2),
            (Family::Transform(TransformKind::T), 2, 2),
            (Family::Diagram(DiagramKind::J), 3, 5),
        ];
        for (f, n, want) in cases {
            let m = host(f, n);
            assert_eq!(exhaustive_maximal(&m).unwrap().len(), want, "{f} {n}");
        }
    }

    #[test]
    fn restricted_agrees_with_exhaustive_at_degree_two() {
        for f in Family::all() {
            let m = host(f, 2);
            if m.len() > EXHAUSTIVE_CAP {
                continue;
            }
            let a = exhaustive_maximal(&m).unwrap();
            let b = jclass_restricted_maximal(&m).unwrap();
            assert_eq!(a, b, "{f}");
            for s in &a {
                assert!(verify_maximal(&m, s).is_maximal(), "{f}");
            }
        }
    }

    #[test]
    fn verdicts() {
        let m = host(Family::Transform(TransformKind::POI), 3);
        assert_eq!(verify_maximal(&m, &m.full_set()), Verdict::NotProper);
        let g = m.greens();
        let j = g.covered_classes()[0];
        let l = g.j_class(j).l_classes[0];
        let mut x = m.full_set();
        for &e in &g.l_classes[l as usize] {
            x.set(e as usize, false);
        }
        assert!(matches!(verify_maximal(&m, &x), Verdict::NotMaximal { .. }));
        let mut y = m.full_set();
        let e = g.j_class(j).elements[0];
        y.set(m.mul(e, e) as usize, false);
        let v = verify_maximal(&m, &y);
        assert!(!v.is_maximal());
    }
}
