//! Symbolic descriptions of maximal subsemigroups and their materialization.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::element::{Element, Family};
use crate::error::{Error, Result};
use crate::monoid::{ElementSet, FiniteMonoid, Local};
use crate::partition::{fold, Partition};

/// The five shapes of `M ∩ J` for the J-class `J` containing the complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    /// `M ∩ J` is empty.
    M1,
    /// A union of L-classes and R-classes.
    M2,
    /// A union of L-classes.
    M3,
    /// A union of R-classes.
    M4,
    /// Meets every H-class.
    M5,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A predicate on elements of a fixed rank, used to name Green's classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pred {
    ImageMisses(usize),
    DomainMisses(usize),
    /// `i` and `j` both in the domain with the same image.
    KernelPair(usize, usize),
    Total,
    PartialPerm,
    KerTrivial,
    KerNontrivial,
    CokerTrivial,
    CokerNontrivial,
    DomFull,
    CodomFull,
    TopBlock(usize, usize),
    BottomBlock(usize, usize),
    TopSingleton(usize),
    BottomSingleton(usize),
    NonUniform,
    Any(Vec<Pred>),
}

impl Pred {
    pub fn holds(&self, x: &Element) -> bool {
        match (self, x) {
            (Pred::Any(ps), _) => ps.iter().any(|p| p.holds(x)),
            (Pred::ImageMisses(i), Element::Transform(t)) => !t.im().contains(*i),
            (Pred::DomainMisses(i), Element::Transform(t)) => !t.dom().contains(*i),
            (Pred::KernelPair(i, j), Element::Transform(t)) => {
                t.image(*i).is_some() && t.image(*i) == t.image(*j)
            }
            (Pred::Total, Element::Transform(t)) => t.is_total(),
            (Pred::PartialPerm, Element::Transform(t)) => t.is_partial_perm(),
            (Pred::KerTrivial, Element::Partition(p)) => p.ker().is_trivial(),
            (Pred::KerNontrivial, Element::Partition(p)) => !p.ker().is_trivial(),
            (Pred::CokerTrivial, Element::Partition(p)) => p.coker().is_trivial(),
            (Pred::CokerNontrivial, Element::Partition(p)) => !p.coker().is_trivial(),
            (Pred::DomFull, Element::Partition(p)) => p.dom().len() == p.degree(),
            (Pred::CodomFull, Element::Partition(p)) => p.codom().len() == p.degree(),
            (Pred::TopBlock(i, j), Element::Partition(p)) => p.has_block(&[*i as i32, *j as i32]),
            (Pred::BottomBlock(i, j), Element::Partition(p)) => p.has_block(&[-(*i as i32), -(*j as i32)]),
            (Pred::TopSingleton(i), Element::Partition(p)) => p.has_block(&[*i as i32]),
            (Pred::BottomSingleton(i), Element::Partition(p)) => p.has_block(&[-(*i as i32)]),
            (Pred::NonUniform, Element::Partition(p)) => p.blocks().iter().any(|b| {
                let top = b.iter().filter(|&&q| q > 0).count();
                top != b.len() - top
            }),
            _ => false,
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pred::ImageMisses(i) => write!(f, "L{i}"),
            Pred::DomainMisses(i) => write!(f, "R{i}"),
            Pred::KernelPair(i, j) => write!(f, "R{{{i},{j}}}"),
            Pred::Total => f.write_str("total"),
            Pred::PartialPerm => f.write_str("partial-perm"),
            Pred::KerTrivial => f.write_str("ker-trivial"),
            Pred::KerNontrivial => f.write_str("ker-nontrivial"),
            Pred::CokerTrivial => f.write_str("coker-trivial"),
            Pred::CokerNontrivial => f.write_str("coker-nontrivial"),
            Pred::DomFull => f.write_str("dom-full"),
            Pred::CodomFull => f.write_str("codom-full"),
            Pred::TopBlock(i, j) => write!(f, "block{{{i},{j}}}"),
            Pred::BottomBlock(i, j) => write!(f, "block{{{i}',{j}'}}"),
            Pred::TopSingleton(i) => write!(f, "block{{{i}}}"),
            Pred::BottomSingleton(i) => write!(f, "block{{{i}'}}"),
            Pred::NonUniform => f.write_str("non-uniform"),
            Pred::Any(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join("|"))
            }
        }
    }
}

impl Serialize for Pred {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn elements_as_strings<S: Serializer>(v: &[Element], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// What a maximal subsemigroup keeps or removes, relative to its J-class.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Payload {
    /// Remove the whole J-class.
    Whole,
    /// Keep the elements of the J-class satisfying one of the L- or R-predicates.
    Keep { l: Vec<Pred>, r: Vec<Pred> },
    /// Remove the elements of the J-class satisfying the predicate.
    Remove { pred: Pred },
    /// Keep `(S \ G) ∪ U` for the subgroup `U` of the units generated by these elements.
    UnitSubgroup {
        #[serde(serialize_with = "elements_as_strings")]
        generators: Vec<Element>,
        order: usize,
    },
    /// Keep the subsemigroup generated by `S \ J` and these elements.
    Generated {
        #[serde(serialize_with = "elements_as_strings")]
        generators: Vec<Element>,
    },
    /// Keep `S \ J` and these elements of `J`.
    Retain {
        #[serde(serialize_with = "elements_as_strings")]
        elements: Vec<Element>,
    },
    /// Keep the listed L- and R-classes, by Green's class id in the host.
    Classes { l: Vec<u32>, r: Vec<u32> },
    /// Remove the listed L- and R-classes, by Green's class id in the host.
    RemoveClasses { l: Vec<u32>, r: Vec<u32> },
    /// Remove exactly these elements.
    RemoveSet {
        #[serde(serialize_with = "elements_as_strings")]
        elements: Vec<Element>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Descriptor {
    pub family: Family,
    pub degree: usize,
    /// Rank of the J-class that contains the complement.
    pub j_rank: usize,
    /// The J-class by id in the host, when the rank alone does not pin it down.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_class: Option<u32>,
    pub kind: Kind,
    pub payload: Payload,
    /// Predicates and elements refer to the Jones image of a planar partition.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub folded: bool,
}

impl Descriptor {
    pub fn new(family: Family, degree: usize, j_rank: usize, kind: Kind, payload: Payload) -> Self {
        Descriptor {
            family,
            degree,
            j_rank,
            j_class: None,
            kind,
            payload,
            folded: false,
        }
    }

    pub fn in_class(mut self, j: u32) -> Self {
        self.j_class = Some(j);
        self
    }

    /// The kept set inside `m`.
    pub fn materialize(&self, m: &FiniteMonoid) -> Result<ElementSet> {
        if let Some(f) = m.family() {
            if f != self.family || m.degree() != self.degree {
                return Err(Error::KindMismatch);
            }
        }
        let view = |x: &Element| -> Element {
            if self.folded {
                let p: &Partition = x.as_partition().expect("planar partition");
                fold::planar_to_jones(p).expect("planar partition").into()
            } else {
                *x
            }
        };
        let unfold = |x: &Element| -> Result<Element> {
            if self.folded {
                let p = x.as_partition().ok_or(Error::KindMismatch)?;
                Ok(fold::jones_to_planar(p)?.into())
            } else {
                Ok(*x)
            }
        };
        let g = m.greens();
        let in_j = |i: u32| match self.j_class {
            Some(j) => g.j_of[i as usize] == j,
            None => view(m.element(i)).rank() == self.j_rank,
        };
        let mut kept = m.full_set();
        match &self.payload {
            Payload::Whole => {
                for i in 0..m.len() as u32 {
                    if in_j(i) {
                        kept.set(i as usize, false);
                    }
                }
            }
            Payload::Keep { l, r } => {
                for i in 0..m.len() as u32 {
                    if in_j(i) {
                        let x = view(m.element(i));
                        let keep = l.iter().chain(r).any(|p| p.holds(&x));
                        kept.set(i as usize, keep);
                    }
                }
            }
            Payload::Remove { pred } => {
                for i in 0..m.len() as u32 {
                    if in_j(i) && pred.holds(&view(m.element(i))) {
                        kept.set(i as usize, false);
                    }
                }
            }
            Payload::UnitSubgroup { generators, .. } => {
                for &u in g.units() {
                    kept.set(u as usize, false);
                }
                if !generators.is_empty() {
                    let gens = generators.iter().map(&unfold).collect::<Result<Vec<_>>>()?;
                    let ids = gens
                        .iter()
                        .map(|x| m.index_of(x).ok_or_else(|| Error::NotMember(x.to_string())))
                        .collect::<Result<Vec<u32>>>()?;
                    let mut span = ids.clone();
                    let mut k = 0;
                    while k < span.len() {
                        for &y in &ids {
                            let p = m.mul(span[k], y);
                            if !span.contains(&p) {
                                span.push(p);
                            }
                        }
                        k += 1;
                    }
                    for u in span {
                        kept.insert(u as usize);
                    }
                }
            }
            Payload::Generated { generators } => {
                let jclasses: Vec<u32> = (0..m.len() as u32)
                    .filter(|&i| in_j(i))
                    .map(|i| g.j_of[i as usize])
                    .collect();
                let local = Local::above(m, jclasses.iter().copied());
                let mut c = local.closure();
                for a in 0..local.len() as u32 {
                    if !in_j(local.global(a)) {
                        c.add(a);
                    }
                }
                for x in generators {
                    let x = unfold(x)?;
                    let i = m.index_of(&x).ok_or_else(|| Error::NotMember(x.to_string()))?;
                    c.add(local.local(i).ok_or_else(|| Error::NotMember(x.to_string()))?);
                }
                for i in 0..m.len() as u32 {
                    if in_j(i) {
                        let inside = local.local(i).is_some_and(|a| c.contains(a));
                        kept.set(i as usize, inside);
                    }
                }
            }
            Payload::Retain { elements } => {
                for i in 0..m.len() as u32 {
                    if in_j(i) {
                        kept.set(i as usize, false);
                    }
                }
                for x in elements {
                    let x = unfold(x)?;
                    let i = m.index_of(&x).ok_or_else(|| Error::NotMember(x.to_string()))?;
                    kept.insert(i as usize);
                }
            }
            Payload::Classes { l, r } => {
                for i in 0..m.len() as u32 {
                    if in_j(i) {
                        let keep = l.contains(&g.l_of[i as usize]) || r.contains(&g.r_of[i as usize]);
                        kept.set(i as usize, keep);
                    }
                }
            }
            Payload::RemoveClasses { l, r } => {
                for i in 0..m.len() as u32 {
                    if l.contains(&g.l_of[i as usize]) || r.contains(&g.r_of[i as usize]) {
                        kept.set(i as usize, false);
                    }
                }
            }
            Payload::RemoveSet { elements } => {
                for x in elements {
                    let x = unfold(x)?;
                    let i = m.index_of(&x).ok_or_else(|| Error::NotMember(x.to_string()))?;
                    kept.set(i as usize, false);
                }
            }
        }
        Ok(kept)
    }
}

/// Reads off the type of a maximal subsemigroup from its complement.
pub fn infer_kind(m: &FiniteMonoid, kept: &ElementSet) -> Option<Kind> {
    let g = m.greens();
    let removed: Vec<u32> = (0..m.len() as u32).filter(|&i| !kept.contains(i as usize)).collect();
    let j = g.j_of[*removed.first()? as usize];
    if removed.iter().any(|&i| g.j_of[i as usize] != j) {
        return None;
    }
    let class = g.j_class(j);
    if removed.len() == class.elements.len() {
        return Some(Kind::M1);
    }
    let union_of = |classes: &[Vec<u32>], of: &[u32]| {
        class.elements.iter().all(|&x| {
            let c = &classes[of[x as usize] as usize];
            c.iter().all(|&y| kept.contains(y as usize)) || c.iter().all(|&y| !kept.contains(y as usize))
        })
    };
    let meets_every_h = class
        .elements
        .iter()
        .all(|&x| g.h_classes[g.h_of[x as usize] as usize].iter().any(|&y| kept.contains(y as usize)));
    Some(if meets_every_h {
        Kind::M5
    } else if union_of(&g.l_classes, &g.l_of) {
        Kind::M3
    } else if union_of(&g.r_classes, &g.r_of) {
        Kind::M4
    } else {
        Kind::M2
    })
}

pub fn sorted_members(set: &ElementSet) -> Vec<u32> {
    set.ones().map(|i| i as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Budget;
    use crate::transform::{PartialTransformation, TransformKind};

    #[test]
    fn predicates_on_transformations() {
        let t: Element = PartialTransformation::new(&[Some(1), Some(1), None]).unwrap().into();
        assert!(Pred::ImageMisses(2).holds(&t));
        assert!(Pred::DomainMisses(3).holds(&t));
        assert!(Pred::KernelPair(1, 2).holds(&t));
        assert!(!Pred::KernelPair(2, 3).holds(&t));
        assert!(!Pred::Total.holds(&t) && !Pred::PartialPerm.holds(&t));
        assert!(Pred::Any(vec![Pred::Total, Pred::ImageMisses(3)]).holds(&t));
    }

    #[test]
    fn predicates_on_partitions() {
        let p: Element = "{1,2},{3,3'},{1'},{2'}".parse::<Partition>().unwrap().into();
        assert!(Pred::TopBlock(1, 2).holds(&p));
        assert!(Pred::BottomSingleton(1).holds(&p));
        assert!(Pred::KerNontrivial.holds(&p));
        assert!(Pred::NonUniform.holds(&p));
        assert!(!Pred::CodomFull.holds(&p));
    }

    #[test]
    fn materialize_whole_and_units() {
        let f = Family::Transform(TransformKind::T);
        let m = FiniteMonoid::enumerate(f, 3, &Budget::default()).unwrap();
        let d = Descriptor::new(f, 3, 2, Kind::M1, Payload::Whole);
        let kept = d.materialize(&m).unwrap();
        assert_eq!(kept.count_ones(..), 27 - 18);
        assert_eq!(infer_kind(&m, &kept), Some(Kind::M1));
        let u = Descriptor::new(
            f,
            3,
            3,
            Kind::M5,
            Payload::UnitSubgroup {
                generators: vec![PartialTransformation::cycle(3).into()],
                order: 3,
            },
        );
        let kept = u.materialize(&m).unwrap();
        assert_eq!(kept.count_ones(..), 27 - 3);
        assert_eq!(infer_kind(&m, &kept), Some(Kind::M5));
    }

    #[test]
    fn json_shape() {
        let d = Descriptor::new(
            Family::Transform(TransformKind::PO),
            3,
            2,
            Kind::M4,
            Payload::Remove { pred: Pred::KernelPair(1, 2) },
        );
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"kind\":\"M4\""));
        assert!(s.contains("\"shape\":\"remove\""));
        assert!(s.contains("R{1,2}"));
    }
}
