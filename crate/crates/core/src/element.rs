use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{self, DiagramKind, Partition};
use crate::transform::{self, PartialTransformation, TransformKind};

/// Any of the monoid families: a transformation family or a diagram family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Family {
    Transform(TransformKind),
    Diagram(DiagramKind),
}

impl Family {
    pub fn all() -> impl Iterator<Item = Family> {
        TransformKind::ALL
            .into_iter()
            .map(Family::Transform)
            .chain(DiagramKind::ALL.into_iter().map(Family::Diagram))
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Transform(k) => k.name(),
            Family::Diagram(k) => k.name(),
        }
    }

    pub fn contains(self, x: &Element) -> bool {
        match (self, x) {
            (Family::Transform(k), Element::Transform(t)) => k.contains(t),
            (Family::Diagram(k), Element::Partition(p)) => k.contains(p),
            _ => false,
        }
    }

    /// Whether the family is closed under the involution (inverse for partial
    /// permutations, the star for partitions).
    pub fn is_regular_star(self) -> bool {
        use TransformKind::*;
        match self {
            Family::Transform(k) => matches!(k, I | S | POI | PODI | POPI | PORI),
            Family::Diagram(_) => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<TransformKind>()
            .map(Family::Transform)
            .or_else(|_| s.parse::<DiagramKind>().map(Family::Diagram))
            .map_err(|_| Error::Parse(format!("unknown family {s}")))
    }
}

/// A monoid element of either kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Transform(PartialTransformation),
    Partition(Partition),
}

impl Element {
    #[inline]
    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Transform(a), Element::Transform(b)) => Element::Transform(a.mul(b)),
            (Element::Partition(a), Element::Partition(b)) => Element::Partition(a.mul(b)),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Transform(a), Element::Transform(b)) => a.compose(b).map(Element::Transform),
            (Element::Partition(a), Element::Partition(b)) => a.compose(b).map(Element::Partition),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Element::Transform(t) => t.degree(),
            Element::Partition(p) => p.degree(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Element::Transform(t) => t.rank(),
            Element::Partition(p) => p.rank(),
        }
    }

    pub fn identity_like(&self) -> Element {
        match self {
            Element::Transform(t) => Element::Transform(PartialTransformation::identity(t.degree())),
            Element::Partition(p) => Element::Partition(Partition::identity(p.degree())),
        }
    }

    /// The involution: inverse of a partial permutation, or the partition star.
    pub fn star(&self) -> Option<Element> {
        match self {
            Element::Transform(t) => t.inverse().map(Element::Transform),
            Element::Partition(p) => Some(Element::Partition(p.star())),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn as_transform(&self) -> Option<&PartialTransformation> {
        match self {
            Element::Transform(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_partition(&self) -> Option<&Partition> {
        match self {
            Element::Partition(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Transform(t) => write!(f, "{t}"),
            Element::Partition(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<PartialTransformation> for Element {
    fn from(t: PartialTransformation) -> Self {
        Element::Transform(t)
    }
}

impl From<Partition> for Element {
    fn from(p: Partition) -> Self {
        Element::Partition(p)
    }
}

/// All elements of the family of degree `n`, sorted.
pub fn enumerate(family: Family, n: usize, cap: usize) -> Result<Vec<Element>> {
    Ok(match family {
        Family::Transform(k) => transform::enumerate(k, n, cap)?.into_iter().map(Element::from).collect(),
        Family::Diagram(k) => partition::enumerate(k, n, cap)?.into_iter().map(Element::from).collect(),
    })
}

pub fn standard_generators(family: Family, n: usize) -> Vec<Element> {
    match family {
        Family::Transform(k) => transform::standard_generators(k, n).into_iter().map(Element::from).collect(),
        Family::Diagram(k) => partition::standard_generators(k, n).into_iter().map(Element::from).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        let all: Vec<Family> = Family::all().collect();
        assert_eq!(all.len(), 25);
        for f in all {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("XYZ".parse::<Family>().is_err());
    }

    #[test]
    fn mixed_kinds_are_rejected() {
        let a = Element::from(PartialTransformation::identity(2));
        let b = Element::from(Partition::identity(2));
        assert_eq!(a.try_mul(&b), Err(Error::KindMismatch));
        assert!(!Family::Transform(TransformKind::PT).contains(&b));
    }
}
