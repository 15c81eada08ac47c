//! Maximal subsemigroups arising from the group of units and from J-classes
//! covered by it, computed from the monoid rather than from a closed form.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;

use super::delta::DeltaGraph;
use super::descriptor::{infer_kind, Descriptor, Kind, Payload, Pred};
use super::groups::{GroupTable, DEFAULT_SUBGROUP_BUDGET};
use crate::element::{Element, Family};
use crate::error::{Error, Result};
use crate::monoid::{ElementSet, FiniteMonoid, Local};
use crate::oracle::verify_maximal;
use crate::partition::DiagramKind;

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub subgroup_budget: usize,
    /// Node budget of the exact search for intersecting subsemigroups; `None` disables it.
    pub search_nodes: Option<usize>,
    /// Combinations of part representatives tried by the part lemma.
    pub part_combinations: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            subgroup_budget: DEFAULT_SUBGROUP_BUDGET,
            search_nodes: Some(200_000),
            part_combinations: 100_000,
        }
    }
}

fn host_family(m: &FiniteMonoid) -> Result<Family> {
    m.family()
        .ok_or_else(|| Error::Unsupported("classification needs a named family".into()))
}

fn elements_of(m: &FiniteMonoid, ids: impl IntoIterator<Item = u32>) -> Vec<Element> {
    ids.into_iter().map(|i| *m.element(i)).collect()
}

/// Maximal subsemigroups that omit part of the group of units.
pub fn classify_units(m: &FiniteMonoid, opts: &ClassifyOptions) -> Result<Vec<Descriptor>> {
    let family = host_family(m)?;
    let g = m.greens();
    let units = g.units();
    let top = g.unit_class().ok_or_else(|| Error::Unsupported("no identity".into()))?;
    let rank = g.j_class(top).rank;
    let d = |kind, payload| Descriptor::new(family, m.degree(), rank, kind, payload).in_class(top);
    if units.len() == 1 {
        return Ok(vec![d(Kind::M1, Payload::UnitSubgroup { generators: Vec::new(), order: 0 })]);
    }
    let group = GroupTable::from_monoid(m, units)?;
    let mut out = Vec::new();
    for h in group.maximal_subgroups(opts.subgroup_budget)? {
        let mut gens = group.generators_of(&h);
        if gens.is_empty() {
            gens.push(group.identity());
        }
        out.push(d(
            Kind::M5,
            Payload::UnitSubgroup {
                generators: gens.iter().map(|&x| *group.element(x).unwrap()).collect(),
                order: h.count_ones(..),
            },
        ));
    }
    Ok(out)
}

/// Maximal subsemigroups arising from a regular J-class covered by the units.
pub fn classify_covered(m: &FiniteMonoid, j: u32, opts: &ClassifyOptions) -> Result<Vec<Descriptor>> {
    let family = host_family(m)?;
    let g = m.greens();
    let delta = DeltaGraph::build(m, j)?;
    let class = g.j_class(j);
    let d = |kind, payload| Descriptor::new(family, m.degree(), class.rank, kind, payload).in_class(j);
    let flat = |orbits: &[Vec<u32>], pick: &mut dyn Iterator<Item = usize>| -> Vec<u32> {
        let mut v: Vec<u32> = pick.flat_map(|o| orbits[o].iter().copied()).collect();
        v.sort_unstable();
        v
    };
    let mut out = Vec::new();
    let l_count = delta.l_count();
    for set in delta.rectangles()? {
        let l = flat(&delta.l_vertices, &mut (0..l_count).filter(|v| set >> v & 1 == 1));
        let r = flat(&delta.r_vertices, &mut (0..delta.r_count()).filter(|v| set >> (l_count + v) & 1 == 1));
        out.push(d(Kind::M2, Payload::Classes { l, r }));
    }
    for v in delta.removable_l()? {
        out.push(d(Kind::M3, Payload::RemoveClasses { l: delta.l_vertices[v].clone(), r: Vec::new() }));
    }
    for v in delta.removable_r()? {
        out.push(d(Kind::M4, Payload::RemoveClasses { l: Vec::new(), r: delta.r_vertices[v].clone() }));
    }
    out.extend(intersecting(m, j, opts)?);
    if out.is_empty() {
        out.push(d(Kind::M1, Payload::Whole));
    }
    Ok(out)
}

/// Whether the lemma rules out subsemigroups meeting every H-class of `j`:
/// trivial H-classes, or `J` inside the subsemigroup generated by the units and the idempotents.
pub fn intersecting_absent(m: &FiniteMonoid, j: u32) -> bool {
    let g = m.greens();
    let class = g.j_class(j);
    if class.h_size == 1 {
        return true;
    }
    let local = Local::above(m, [j]);
    let mut c = local.closure();
    for &x in g.units().iter().chain(&class.idempotents) {
        c.add(local.local(x).unwrap());
    }
    class.elements.iter().all(|&x| c.contains(local.local(x).unwrap()))
}

fn intersecting(m: &FiniteMonoid, j: u32, opts: &ClassifyOptions) -> Result<Vec<Descriptor>> {
    if intersecting_absent(m, j) {
        return Ok(Vec::new());
    }
    match regular_star_intersect(m, j, None, opts) {
        Ok(v) => Ok(v),
        Err(Error::Unsupported(reason)) => match opts.search_nodes {
            Some(nodes) => intersecting_search(m, j, nodes, opts),
            None => Err(Error::Incomplete(format!(
                "J-class {j}: intersecting subsemigroups undecided ({reason}) and the exact search is disabled"
            ))),
        },
        Err(e) => Err(e),
    }
}

/// Projections of `j`, least first.
pub fn projections(m: &FiniteMonoid, j: u32) -> Vec<u32> {
    let mut v: Vec<u32> = m
        .greens()
        .j_class(j)
        .idempotents
        .iter()
        .copied()
        .filter(|&e| m.star(e) == Some(e))
        .collect();
    v.sort_by_key(|&e| *m.element(e));
    v
}

/// Intersecting maximal subsemigroups of a regular *-monoid whose units act
/// transitively on the L- or R-classes of `j` and whose idempotents in `j` are
/// all projections: `<S \ J, U>` for each maximal subgroup `U` of the H-class of
/// a projection `e` that contains `e Stab(H_e)`.
pub fn regular_star_intersect(
    m: &FiniteMonoid,
    j: u32,
    projection: Option<u32>,
    opts: &ClassifyOptions,
) -> Result<Vec<Descriptor>> {
    let family = host_family(m)?;
    let g = m.greens();
    g.check_covered(j)?;
    let class = g.j_class(j);
    if !m.is_regular_star() {
        return Err(Error::Unsupported("not a regular *-monoid".into()));
    }
    let (l_orbits, r_orbits) = g.unit_orbits(m, j);
    if l_orbits.len() != 1 && r_orbits.len() != 1 {
        return Err(Error::Unsupported("units are not transitive on L- or R-classes".into()));
    }
    if class.idempotents.iter().any(|&e| m.star(e) != Some(e)) {
        return Err(Error::Unsupported("an idempotent is not a projection".into()));
    }
    let e = match projection {
        Some(e) if class.idempotents.contains(&e) => e,
        Some(e) => return Err(Error::NotMember(m.element(e).to_string())),
        None => *projections(m, j)
            .first()
            .ok_or_else(|| Error::Unsupported("no projection".into()))?,
    };
    let h_e = &g.h_classes[g.h_of[e as usize] as usize];
    let stab: Vec<u32> = g
        .units()
        .iter()
        .map(|&u| m.mul(e, u))
        .filter(|&x| g.h_of[x as usize] == g.h_of[e as usize])
        .collect();
    let group = GroupTable::from_monoid(m, h_e)?;
    let pos = |x: u32| h_e.iter().position(|&y| y == x).unwrap();
    let mut out = Vec::new();
    for u in group.maximal_subgroups(opts.subgroup_budget)? {
        if stab.iter().all(|&x| u.contains(pos(x))) {
            let mut gens = group.generators_of(&u);
            if gens.is_empty() {
                gens.push(group.identity());
            }
            let generators = gens.iter().map(|&x| *group.element(x).unwrap()).collect();
            out.push(Descriptor::new(family, m.degree(), class.rank, Kind::M5, Payload::Generated { generators }).in_class(j));
        }
    }
    Ok(out)
}

/// Exact search for intersecting maximal subsemigroups. Such a subsemigroup
/// contains every idempotent of `j` and meets each H-class of `j` in the same
/// number of elements, the order of a maximal subgroup of a group H-class;
/// the search grows closures one H-class at a time under that bound.
pub fn intersecting_search(m: &FiniteMonoid, j: u32, nodes: usize, opts: &ClassifyOptions) -> Result<Vec<Descriptor>> {
    let family = host_family(m)?;
    let g = m.greens();
    let class = g.j_class(j);
    let e = *class
        .idempotents
        .first()
        .ok_or(Error::NotRegular(j as usize))?;
    let h_e = &g.h_classes[g.h_of[e as usize] as usize];
    let group = GroupTable::from_monoid(m, h_e)?;
    let mut orders: Vec<usize> = group
        .maximal_subgroups(opts.subgroup_budget)?
        .iter()
        .map(|u| u.count_ones(..))
        .collect();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    orders.dedup();

    let local = Local::above(m, [j]);
    let mut h_ids: Vec<u32> = class.elements.iter().map(|&x| g.h_of[x as usize]).collect();
    h_ids.sort_unstable();
    h_ids.dedup();
    let h_members: Vec<Vec<u32>> = h_ids
        .iter()
        .map(|&h| g.h_classes[h as usize].iter().map(|&x| local.local(x).unwrap()).collect())
        .collect();
    let mut base = local.closure();
    for a in 0..local.len() as u32 {
        if g.j_of[local.global(a) as usize] != j {
            base.add(a);
        }
    }
    for &x in &class.idempotents {
        base.add(local.local(x).unwrap());
    }

    let mut leaves: Vec<FixedBitSet> = Vec::new();
    let mut visited: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut spent = 0usize;
    for &q in &orders {
        let mut stack = vec![base.clone()];
        while let Some(c) = stack.pop() {
            if !visited.insert(c.members().clone()) {
                continue;
            }
            spent += 1;
            if spent > nodes {
                return Err(Error::Incomplete(format!(
                    "J-class {j}: the search for intersecting subsemigroups exceeded {nodes} nodes"
                )));
            }
            let counts: Vec<usize> = h_members.iter().map(|h| h.iter().filter(|&&a| c.contains(a)).count()).collect();
            if counts.iter().any(|&k| k > q) {
                continue;
            }
            let Some((low, _)) = counts.iter().enumerate().filter(|(_, &k)| k < q).min_by_key(|(_, &k)| k) else {
                leaves.push(c.members().clone());
                continue;
            };
            for &a in &h_members[low] {
                if !c.contains(a) {
                    let mut next = c.clone();
                    next.add(a);
                    stack.push(next);
                }
            }
        }
    }

    let mut out = Vec::new();
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    for leaf in leaves {
        let kept = global_set(m, &local, &leaf);
        if verify_maximal(m, &kept).is_maximal() {
            let retained: Vec<u32> = class.elements.iter().copied().filter(|&x| kept.contains(x as usize)).collect();
            if seen.insert(retained.clone()) {
                out.push(
                    Descriptor::new(
                        family,
                        m.degree(),
                        class.rank,
                        Kind::M5,
                        Payload::Retain { elements: elements_of(m, retained) },
                    )
                    .in_class(j),
                );
            }
        }
    }
    Ok(out)
}

fn global_set(m: &FiniteMonoid, local: &Local, members: &FixedBitSet) -> ElementSet {
    let mut kept = m.full_set();
    for a in 0..local.len() {
        if !members.contains(a) {
            kept.set(local.global(a as u32) as usize, false);
        }
    }
    kept
}

/// Maximal subsemigroups `S \ X_i` from a partition-like family of parts of `j`,
/// after checking that a subset `A` of `j` generates `S` together with `S \ J`
/// exactly when `A` meets every part.
pub fn lemma_xi(m: &FiniteMonoid, j: u32, parts: &[Vec<u32>], opts: &ClassifyOptions) -> Result<Vec<Descriptor>> {
    let family = host_family(m)?;
    let g = m.greens();
    let class = g.j_class(j);
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() || p.iter().any(|&x| g.j_of[x as usize] != j) {
            return Err(Error::PartsRejected {
                reason: format!("part {i} is empty or leaves the J-class"),
                counterexample: Vec::new(),
            });
        }
        if parts[..i].contains(p) {
            return Err(Error::PartsRejected { reason: format!("part {i} repeats an earlier part"), counterexample: Vec::new() });
        }
    }
    let local = Local::above(m, [j]);
    let mut base = local.closure();
    for a in 0..local.len() as u32 {
        if g.j_of[local.global(a) as usize] != j {
            base.add(a);
        }
    }
    let generates = |a: &[u32]| {
        let mut c = base.clone();
        for &x in a {
            c.add(local.local(x).unwrap());
        }
        c.is_everything()
    };
    // Missing a part must prevent generation; by monotonicity the largest such A settles it.
    for (i, p) in parts.iter().enumerate() {
        let a: Vec<u32> = class.elements.iter().copied().filter(|x| !p.contains(x)).collect();
        if generates(&a) {
            return Err(Error::PartsRejected {
                reason: format!("the complement of part {i} generates"),
                counterexample: a.iter().map(|&x| x as usize).collect(),
            });
        }
    }
    // Meeting every part must force generation; it suffices to try one element per part
    // from those whose closure with S \ J is minimal.
    let reps: Vec<Vec<u32>> = parts
        .iter()
        .map(|p| {
            let closures: Vec<(u32, FixedBitSet)> = p
                .iter()
                .map(|&x| {
                    let mut c = base.clone();
                    c.add(local.local(x).unwrap());
                    (x, c.members().clone())
                })
                .collect();
            let mut reps: Vec<(u32, &FixedBitSet)> = Vec::new();
            for (x, c) in &closures {
                let dominated = closures.iter().any(|(_, d)| d != c && d.is_subset(c));
                if !dominated && !reps.iter().any(|(_, r)| *r == c) {
                    reps.push((*x, c));
                }
            }
            reps.into_iter().map(|(x, _)| x).collect()
        })
        .collect();
    let combos = reps.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.len()));
    match combos {
        Some(c) if c <= opts.part_combinations => {}
        _ => {
            return Err(Error::Incomplete(format!(
                "part lemma on J-class {j}: more than {} combinations of representatives",
                opts.part_combinations
            )))
        }
    }
    let mut pick = vec![0usize; reps.len()];
    loop {
        let a: Vec<u32> = pick.iter().zip(&reps).map(|(&k, r)| r[k]).collect();
        if !generates(&a) {
            return Err(Error::PartsRejected {
                reason: "a set meeting every part does not generate".into(),
                counterexample: a.iter().map(|&x| x as usize).collect(),
            });
        }
        let Some(slot) = (0..pick.len()).find(|&s| pick[s] + 1 < reps[s].len()) else { break };
        pick[slot] += 1;
        pick[..slot].iter_mut().for_each(|k| *k = 0);
    }
    parts
        .iter()
        .map(|p| {
            let mut kept = m.full_set();
            p.iter().for_each(|&x| kept.set(x as usize, false));
            let kind = infer_kind(m, &kept).expect("a part lies in one J-class");
            Ok(Descriptor::new(family, m.degree(), class.rank, kind, Payload::RemoveSet { elements: elements_of(m, p.iter().copied()) })
                .in_class(j))
        })
        .collect()
}

/// The parts used for the lower J-classes of the families that need them.
pub fn predicate_parts(m: &FiniteMonoid) -> Vec<(u32, Vec<Pred>)> {
    let n = m.degree();
    let g = m.greens();
    let at_rank = |r: usize| (0..g.j_classes.len() as u32).find(|&j| g.j_class(j).rank == r);
    match m.family() {
        Some(Family::Diagram(DiagramKind::PB)) if n >= 2 => at_rank(n - 2)
            .map(|j| vec![(j, vec![Pred::KerNontrivial, Pred::CokerNontrivial])])
            .unwrap_or_default(),
        Some(Family::Diagram(DiagramKind::M)) if n >= 2 => at_rank(n - 2)
            .map(|j| {
                let preds = (1..n)
                    .map(|i| Pred::TopBlock(i, i + 1))
                    .chain((1..n).map(|i| Pred::BottomBlock(i, i + 1)))
                    .collect();
                vec![(j, preds)]
            })
            .unwrap_or_default(),
        _ => Vec::new(),
    }
}

/// Elements of `j` satisfying each predicate.
pub fn parts_from(m: &FiniteMonoid, j: u32, preds: &[Pred]) -> Vec<Vec<u32>> {
    let class = &m.greens().j_class(j).elements;
    preds
        .iter()
        .map(|p| class.iter().copied().filter(|&x| p.holds(m.element(x))).collect())
        .collect()
}

/// Units, every covered J-class, and the lower J-classes handled by the part lemma.
pub fn classify_all(m: &FiniteMonoid, opts: &ClassifyOptions) -> Result<Vec<Descriptor>> {
    let g = m.greens();
    let mut out = classify_units(m, opts)?;
    for j in g.covered_classes() {
        out.extend(classify_covered(m, j, opts)?);
    }
    for (j, preds) in predicate_parts(m) {
        out.extend(lemma_xi(m, j, &parts_from(m, j, &preds), opts)?);
    }
    Ok(out)
}
