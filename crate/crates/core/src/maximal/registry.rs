//! Maximal subsemigroups of each family, constructed from their closed-form descriptions.

use super::delta::DeltaGraph;
use super::descriptor::{Descriptor, Kind, Payload, Pred};
use super::groups::{primes_dividing, symmetric_maximal_generators, DEFAULT_SUBGROUP_BUDGET};
use crate::element::{Element, Family};
use crate::error::{Error, Result};
use crate::partition::{DiagramKind, Partition};
use crate::transform::{order_iso, PartialTransformation as Pt, TransformKind};

/// The group of units, as far as the constructions need it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Units {
    Trivial,
    /// `{id, γ}`.
    Reversal,
    /// Generated by the n-cycle.
    Cyclic,
    /// Generated by the n-cycle and `γ`.
    Dihedral,
    Symmetric,
}

/// Degree-1 members with two elements: the identity and a rank-0 idempotent.
fn two_element_at_one(family: Family) -> bool {
    use DiagramKind as D;
    use TransformKind as T;
    match family {
        Family::Transform(k) => !matches!(k, T::T | T::S | T::O | T::OD | T::OP | T::OR),
        Family::Diagram(k) => matches!(k, D::P | D::PB | D::M | D::PP),
    }
}

struct Ctx {
    family: Family,
    degree: usize,
    diagram: bool,
}

impl Ctx {
    fn new(family: Family, degree: usize) -> Self {
        Ctx {
            family,
            degree,
            diagram: matches!(family, Family::Diagram(_)),
        }
    }

    fn lift(&self, t: Pt) -> Element {
        if self.diagram {
            Partition::embed_partial_perm(&t).expect("a permutation is injective").into()
        } else {
            t.into()
        }
    }

    fn d(&self, j_rank: usize, kind: Kind, payload: Payload) -> Descriptor {
        Descriptor::new(self.family, self.degree, j_rank, kind, payload)
    }

    fn remove(&self, j_rank: usize, kind: Kind, pred: Pred) -> Descriptor {
        self.d(j_rank, kind, Payload::Remove { pred })
    }

    fn units(&self, units: Units) -> Result<Vec<Descriptor>> {
        let n = self.degree;
        let id = Pt::identity(n);
        let c = Pt::cycle(n);
        let g = Pt::gamma(n);
        let pow = |x: &Pt, k: usize| (0..k).fold(Pt::identity(n), |acc, _| acc.mul(x));
        let subgroups: Vec<(Vec<Pt>, usize)> = match units {
            _ if n == 1 => Vec::new(),
            Units::Trivial => Vec::new(),
            Units::Reversal => vec![(vec![id], 1)],
            Units::Cyclic => primes_dividing(n).into_iter().map(|p| (vec![pow(&c, p)], n / p)).collect(),
            Units::Dihedral if n == 2 => vec![(vec![id], 1)],
            Units::Dihedral => std::iter::once((vec![c], n))
                .chain(primes_dividing(n).into_iter().flat_map(|p| {
                    (0..p).map(move |i| (vec![pow(&c, p), g.mul(&pow(&c, i))], 2 * n / p))
                }))
                .collect(),
            Units::Symmetric => {
                let fact: usize = (1..=n).product();
                symmetric_maximal_generators(n, DEFAULT_SUBGROUP_BUDGET)?
                    .into_iter()
                    .map(|gens| {
                        let mut ts: Vec<Pt> = gens.iter().map(|v| super::groups::permutation_as_transform(v)).collect();
                        if ts.is_empty() {
                            ts.push(Pt::identity(n));
                        }
                        let order = span_order(&ts);
                        debug_assert!(fact % order == 0);
                        (ts, order)
                    })
                    .collect()
            }
        };
        if subgroups.is_empty() {
            return Ok(vec![self.d(
                n,
                Kind::M1,
                Payload::UnitSubgroup {
                    generators: Vec::new(),
                    order: 0,
                },
            )]);
        }
        Ok(subgroups
            .into_iter()
            .map(|(gens, order)| {
                self.d(
                    n,
                    Kind::M5,
                    Payload::UnitSubgroup {
                        generators: gens.into_iter().map(|t| self.lift(t)).collect(),
                        order,
                    },
                )
            })
            .collect())
    }
}

fn span_order(gens: &[Pt]) -> usize {
    let mut span: Vec<Pt> = gens.to_vec();
    let mut k = 0;
    while k < span.len() {
        for y in gens {
            let p = span[k].mul(y);
            if !span.contains(&p) {
                span.push(p);
            }
        }
        k += 1;
    }
    span.len()
}

/// Nonempty proper subsets of `1..=k`, as membership vectors indexed from 1.
fn proper_subsets(k: usize) -> impl Iterator<Item = Vec<bool>> {
    (1..(1u64 << k) - 1).map(move |mask| (0..=k).map(|i| i >= 1 && mask >> (i - 1) & 1 == 1).collect())
}

fn semilattice(ctx: &Ctx) -> Vec<Descriptor> {
    vec![
        ctx.d(1, Kind::M1, Payload::UnitSubgroup { generators: Vec::new(), order: 0 }),
        ctx.d(0, Kind::M1, Payload::Whole),
    ]
}

fn relabel(v: Vec<Descriptor>, family: Family) -> Vec<Descriptor> {
    v.into_iter().map(|d| Descriptor { family, ..d }).collect()
}

/// The maximal subsemigroups of the family at degree `n`, from the closed-form descriptions.
pub fn theorem_registry(family: Family, n: usize) -> Result<Vec<Descriptor>> {
    if n == 0 {
        return Err(Error::BadDegree(0, 1));
    }
    let ctx = Ctx::new(family, n);
    if n == 1 {
        return Ok(if two_element_at_one(family) { semilattice(&ctx) } else { ctx.units(Units::Trivial)? });
    }
    match family {
        Family::Transform(k) => transform_registry(&ctx, k),
        Family::Diagram(k) => diagram_registry(&ctx, k),
    }
}

fn transform_registry(ctx: &Ctx, k: TransformKind) -> Result<Vec<Descriptor>> {
    use Kind::*;
    use Pred::*;
    use TransformKind as T;
    let n = ctx.degree;
    let r = n - 1;
    let delegate = |to: TransformKind| theorem_registry(Family::Transform(to), n).map(|v| relabel(v, ctx.family));
    let mut out = Vec::new();
    match k {
        T::S => out.extend(ctx.units(Units::Symmetric)?),
        T::PT => {
            out.extend(ctx.units(Units::Symmetric)?);
            out.push(ctx.remove(r, M4, Total));
            out.push(ctx.remove(r, M4, PartialPerm));
        }
        T::T | T::I => {
            out.extend(ctx.units(Units::Symmetric)?);
            out.push(ctx.d(r, M1, Payload::Whole));
        }
        T::PO => {
            out.extend(ctx.units(Units::Trivial)?);
            for a in proper_subsets(n) {
                let l = (1..=n).filter(|&i| a[i]).map(ImageMisses).collect();
                let mut rr: Vec<Pred> = (1..=n).filter(|&i| !a[i]).map(DomainMisses).collect();
                rr.extend((1..n).filter(|&i| !a[i] && !a[i + 1]).map(|i| KernelPair(i, i + 1)));
                out.push(ctx.d(r, M2, Payload::Keep { l, r: rr }));
            }
            out.extend((1..=n).map(|i| ctx.remove(r, M4, DomainMisses(i))));
            out.extend((1..n).map(|i| ctx.remove(r, M4, KernelPair(i, i + 1))));
        }
        T::POD => {
            out.extend(ctx.units(Units::Reversal)?);
            let h = n.div_ceil(2);
            for a in proper_subsets(h) {
                let l = (1..=h).filter(|&i| a[i]).flat_map(|i| [ImageMisses(i), ImageMisses(n - i + 1)]).collect();
                let mut rr: Vec<Pred> =
                    (1..=h).filter(|&i| !a[i]).flat_map(|i| [DomainMisses(i), DomainMisses(n - i + 1)]).collect();
                rr.extend(
                    (1..=n / 2)
                        .filter(|&i| !a[i] && (i + 1 > h || !a[i + 1]))
                        .flat_map(|i| [KernelPair(i, i + 1), KernelPair(n - i, n - i + 1)]),
                );
                out.push(ctx.d(r, M2, Payload::Keep { l, r: rr }));
            }
            out.extend((1..=h).map(|i| ctx.remove(r, M4, Any(vec![DomainMisses(i), DomainMisses(n - i + 1)]))));
            out.extend(
                (1..=n / 2)
                    .map(|i| ctx.remove(r, M4, Any(vec![KernelPair(i, i + 1), KernelPair(n - i, n - i + 1)]))),
            );
        }
        T::O => {
            out.extend(ctx.units(Units::Trivial)?);
            let vertex = |v: usize| {
                if v % 2 == 1 {
                    (true, ImageMisses(v.div_ceil(2)))
                } else {
                    (false, KernelPair(v / 2, v / 2 + 1))
                }
            };
            out.extend(path_rectangles(ctx, 2 * n - 1, r, vertex)?);
            out.extend((1..=n).map(|i| ctx.remove(r, M3, ImageMisses(i))));
            out.extend((2..=n.saturating_sub(2)).map(|i| ctx.remove(r, M4, KernelPair(i, i + 1))));
        }
        T::OD if n == 2 => return delegate(T::T),
        T::OD => {
            out.extend(ctx.units(Units::Reversal)?);
            let vertex = |v: usize| {
                if v % 2 == 1 {
                    let i = v.div_ceil(2);
                    (true, Any(vec![ImageMisses(i), ImageMisses(n + 1 - i)]))
                } else {
                    let i = v / 2;
                    (false, Any(vec![KernelPair(i, i + 1), KernelPair(n - i, n + 1 - i)]))
                }
            };
            out.extend(path_rectangles(ctx, n, r, vertex)?);
            let (m3, m4) = if n % 2 == 1 {
                (1..=n.div_ceil(2), 2..=(n - 3) / 2)
            } else {
                (1..=n / 2 - 1, 2..=n / 2)
            };
            out.extend(m3.map(|i| ctx.remove(r, M3, Any(vec![ImageMisses(i), ImageMisses(n - i + 1)]))));
            out.extend(m4.map(|i| ctx.remove(r, M4, Any(vec![KernelPair(i, i + 1), KernelPair(n - i, n - i + 1)]))));
        }
        T::POI => {
            out.extend(ctx.units(Units::Trivial)?);
            for a in proper_subsets(n) {
                let l = (1..=n).filter(|&i| a[i]).map(ImageMisses).collect();
                let rr = (1..=n).filter(|&i| !a[i]).map(DomainMisses).collect();
                out.push(ctx.d(r, M2, Payload::Keep { l, r: rr }));
            }
        }
        T::PODI if n == 2 => return delegate(T::I),
        T::PODI => {
            out.extend(ctx.units(Units::Reversal)?);
            if n % 2 == 0 {
                for mask in 0..1u64 << (n / 2 - 1) {
                    let in_a = |i: usize| i >= 2 && mask >> (i - 2) & 1 == 1;
                    out.push(ctx.d(r, M5, Payload::Retain { elements: reflection_mixed(n, in_a) }));
                }
            }
            let h = n.div_ceil(2);
            for a in proper_subsets(h) {
                let l = (1..=h).filter(|&i| a[i]).flat_map(|i| [ImageMisses(i), ImageMisses(n - i + 1)]).collect();
                let rr = (1..=h).filter(|&i| !a[i]).flat_map(|i| [DomainMisses(i), DomainMisses(n - i + 1)]).collect();
                out.push(ctx.d(r, M2, Payload::Keep { l, r: rr }));
            }
        }
        T::POP | T::POR => {
            out.extend(ctx.units(if k == T::POP { Units::Cyclic } else { Units::Dihedral })?);
            out.push(ctx.remove(r, M4, Total));
            out.push(ctx.remove(r, M4, PartialPerm));
        }
        T::OP | T::OR => {
            out.extend(ctx.units(if k == T::OP { Units::Cyclic } else { Units::Dihedral })?);
            out.push(ctx.d(r, M1, Payload::Whole));
        }
        T::POPI if n == 2 => return delegate(T::I),
        T::POPI => {
            out.extend(ctx.units(Units::Cyclic)?);
            let z = Pt::zeta(n);
            for p in primes_dividing(n - 1) {
                let zp = (1..p).fold(z, |acc, _| acc.mul(&z));
                out.push(ctx.d(r, M5, Payload::Generated { generators: vec![zp.into()] }));
            }
        }
        T::PORI if n <= 3 => return delegate(T::I),
        T::PORI => {
            out.extend(ctx.units(Units::Dihedral)?);
            let z = Pt::zeta(n);
            for p in primes_dividing(n - 1) {
                let zp = (1..p).fold(z, |acc, _| acc.mul(&z));
                out.push(ctx.d(r, M5, Payload::Generated { generators: vec![zp.into(), Pt::tau(n).into()] }));
            }
        }
    }
    Ok(out)
}

/// Rectangles from maximal independent sets of a path whose vertices alternate
/// between L-vertices (`true`) and R-vertices, keeping those that use both sides.
fn path_rectangles(
    ctx: &Ctx,
    order: usize,
    j_rank: usize,
    vertex: impl Fn(usize) -> (bool, Pred),
) -> Result<Vec<Descriptor>> {
    let g = super::delta::Graph::path(order)?;
    Ok(g.maximal_independent_sets()
        .into_iter()
        .filter_map(|set| {
            let (mut l, mut r) = (Vec::new(), Vec::new());
            for v in (1..=order).filter(|v| set >> (v - 1) & 1 == 1) {
                match vertex(v) {
                    (true, p) => l.push(p),
                    (false, p) => r.push(p),
                }
            }
            (!l.is_empty() && !r.is_empty()).then(|| ctx.d(j_rank, Kind::M2, Payload::Keep { l, r }))
        })
        .collect())
}

/// Partial bijections of rank n - 1 in the dihedral inverse monoid of even degree,
/// one per H-class, mixing order-preserving and order-reversing maps according to `in_a`.
fn reflection_mixed(n: usize, in_a: impl Fn(usize) -> bool) -> Vec<Element> {
    let g = Pt::gamma(n);
    let alpha = |i: usize, j: usize| order_iso(n, i, j);
    let beta = |i: usize, j: usize| order_iso(n, i, n + 1 - j).mul(&g);
    let mut out = Vec::with_capacity(n * n);
    for i in 1..=n / 2 {
        for j in 1..=n / 2 {
            let (i2, j2) = (n + 1 - i, n + 1 - j);
            let block = if in_a(i) == in_a(j) {
                [alpha(i, j), beta(i, j2), beta(i2, j), alpha(i2, j2)]
            } else {
                [beta(i, j), alpha(i, j2), alpha(i2, j), beta(i2, j2)]
            };
            out.extend(block.into_iter().map(Element::from));
        }
    }
    out
}

fn diagram_registry(ctx: &Ctx, k: DiagramKind) -> Result<Vec<Descriptor>> {
    use DiagramKind as D;
    use Kind::*;
    use Pred::*;
    let n = ctx.degree;
    let mut out = Vec::new();
    match k {
        D::P => {
            out.extend(ctx.units(Units::Symmetric)?);
            out.push(ctx.remove(n - 1, M4, KerTrivial));
            out.push(ctx.remove(n - 1, M4, DomFull));
            out.push(ctx.remove(n - 1, M3, CokerTrivial));
            out.push(ctx.remove(n - 1, M3, CodomFull));
        }
        D::PB => {
            out.extend(ctx.units(Units::Symmetric)?);
            out.push(ctx.d(n - 1, M1, Payload::Whole));
            out.push(ctx.remove(n - 2, M4, KerNontrivial));
            out.push(ctx.remove(n - 2, M3, CokerNontrivial));
        }
        D::B => {
            out.extend(ctx.units(Units::Symmetric)?);
            out.push(ctx.d(n - 2, M1, Payload::Whole));
        }
        D::F => {
            out.extend(ctx.units(Units::Symmetric)?);
            out.push(ctx.d(n - 1, M1, Payload::Whole));
        }
        D::Istar if n == 2 => {
            return theorem_registry(Family::Diagram(D::F), n).map(|v| relabel(v, ctx.family));
        }
        D::Istar => {
            out.extend(ctx.units(Units::Symmetric)?);
            out.push(ctx.remove(n - 1, M5, NonUniform));
        }
        D::J => out.extend(jones(ctx, n, false)?),
        D::PP => out.extend(jones(ctx, 2 * n, true)?),
        D::AJ => {
            out.extend(ctx.units(Units::Cyclic)?);
            out.push(ctx.d(n - 2, M1, Payload::Whole));
        }
        D::M => {
            out.extend(ctx.units(Units::Trivial)?);
            for a in proper_subsets(n) {
                let rr = (1..=n).filter(|&i| a[i]).map(TopSingleton).collect();
                let l = (1..=n).filter(|&i| !a[i]).map(BottomSingleton).collect();
                out.push(ctx.d(n - 1, M2, Payload::Keep { l, r: rr }));
            }
            out.extend((1..n).map(|i| ctx.remove(n - 2, M4, TopBlock(i, i + 1))));
            out.extend((1..n).map(|i| ctx.remove(n - 2, M3, BottomBlock(i, i + 1))));
        }
    }
    Ok(out)
}

/// The Jones monoid of degree `m`, or a family folded onto it.
fn jones(ctx: &Ctx, m: usize, folded: bool) -> Result<Vec<Descriptor>> {
    use Kind::*;
    use Pred::*;
    let fold = |d: Descriptor| Descriptor { folded, ..d };
    let unit = fold(ctx.d(m, M1, Payload::UnitSubgroup { generators: Vec::new(), order: 0 }));
    if m == 2 {
        return Ok(vec![unit, fold(ctx.d(0, M1, Payload::Whole))]);
    }
    let r = m - 2;
    let delta = DeltaGraph::jones(m);
    let l_count = delta.l_count();
    let mut out = vec![unit];
    for set in delta.rectangles()? {
        let l = (0..l_count).filter(|v| set >> v & 1 == 1).map(|v| BottomBlock(v + 1, v + 2)).collect();
        let rr = (0..delta.r_count())
            .filter(|v| set >> (l_count + v) & 1 == 1)
            .map(|v| TopBlock(v + 1, v + 2))
            .collect();
        out.push(fold(ctx.d(r, M2, Payload::Keep { l, r: rr })));
    }
    out.extend((1..m).map(|i| fold(ctx.remove(r, M3, BottomBlock(i, i + 1)))));
    out.extend((1..m).map(|i| fold(ctx.remove(r, M4, TopBlock(i, i + 1)))));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximal::formula::count_formula;

    #[test]
    fn registry_sizes_match_formula() {
        for family in Family::all() {
            for n in 1..=6 {
                let Some(want) = count_formula(family, n).value() else { continue };
                if family == Family::Transform(TransformKind::OR) && n == 2 {
                    continue;
                }
                let got = theorem_registry(family, n).unwrap().len() as u64;
                assert_eq!(got, want, "{family} degree {n}");
            }
        }
    }

    #[test]
    fn small_registries_are_maximal_and_distinct() {
        use crate::monoid::{Budget, FiniteMonoid};
        use crate::oracle::verify_maximal;
        for family in Family::all() {
            let top = if matches!(family, Family::Diagram(_)) { 3 } else { 4 };
            for n in 1..=top {
                let m = FiniteMonoid::enumerate(family, n, &Budget::default()).unwrap();
                let mut sets = Vec::new();
                for d in theorem_registry(family, n).unwrap() {
                    let kept = d.materialize(&m).unwrap();
                    let v = verify_maximal(&m, &kept);
                    assert!(v.is_maximal(), "{family} {n} {d:?}: {v:?}");
                    sets.push(crate::maximal::descriptor::sorted_members(&kept));
                }
                let k = sets.len();
                sets.sort();
                sets.dedup();
                assert_eq!(sets.len(), k, "{family} {n} duplicates");
            }
        }
    }

    #[test]
    fn reflection_mixed_is_one_per_h_class() {
        let xs = reflection_mixed(6, |i| i == 2);
        assert_eq!(xs.len(), 36);
        let mut keys: Vec<_> = xs
            .iter()
            .map(|x| {
                let t = x.as_transform().unwrap();
                (t.dom(), t.im())
            })
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 36);
    }
}
