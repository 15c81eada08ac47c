use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{PartialTransformation, TransformFlags, MAX_DEGREE, UNDEF};
use crate::error::{Error, Result};

/// The sixteen monoids of partial transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TransformKind {
    PT,
    T,
    I,
    S,
    PO,
    POD,
    POP,
    POR,
    O,
    OD,
    OP,
    OR,
    POI,
    PODI,
    POPI,
    PORI,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Any,
    Order,
    OrderOrReverse,
    Orientation,
    OrientationOrReverse,
}

impl TransformKind {
    pub const ALL: [TransformKind; 16] = [
        Self::PT,
        Self::T,
        Self::I,
        Self::S,
        Self::PO,
        Self::POD,
        Self::POP,
        Self::POR,
        Self::O,
        Self::OD,
        Self::OP,
        Self::OR,
        Self::POI,
        Self::PODI,
        Self::POPI,
        Self::PORI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::PT => "PT",
            Self::T => "T",
            Self::I => "I",
            Self::S => "S",
            Self::PO => "PO",
            Self::POD => "POD",
            Self::POP => "POP",
            Self::POR => "POR",
            Self::O => "O",
            Self::OD => "OD",
            Self::OP => "OP",
            Self::OR => "OR",
            Self::POI => "POI",
            Self::PODI => "PODI",
            Self::POPI => "POPI",
            Self::PORI => "PORI",
        }
    }

    fn shape(self) -> Shape {
        use TransformKind::*;
        match self {
            PT | T | I | S => Shape::Any,
            PO | O | POI => Shape::Order,
            POD | OD | PODI => Shape::OrderOrReverse,
            POP | OP | POPI => Shape::Orientation,
            POR | OR | PORI => Shape::OrientationOrReverse,
        }
    }

    fn needs_total(self) -> bool {
        use TransformKind::*;
        matches!(self, T | S | O | OD | OP | OR)
    }

    fn needs_injective(self) -> bool {
        use TransformKind::*;
        matches!(self, I | S | POI | PODI | POPI | PORI)
    }

    pub fn contains(self, t: &PartialTransformation) -> bool {
        let f = t.flags();
        if self.needs_total() && !f.contains(TransformFlags::TOTAL) {
            return false;
        }
        if self.needs_injective() && !f.contains(TransformFlags::PARTIAL_PERM) {
            return false;
        }
        match self.shape() {
            Shape::Any => true,
            Shape::Order => f.contains(TransformFlags::ORDER_PRESERVING),
            Shape::OrderOrReverse => {
                f.intersects(TransformFlags::ORDER_PRESERVING | TransformFlags::ORDER_REVERSING)
            }
            Shape::Orientation => f.contains(TransformFlags::ORIENTATION_PRESERVING),
            Shape::OrientationOrReverse => f.intersects(
                TransformFlags::ORIENTATION_PRESERVING | TransformFlags::ORIENTATION_REVERSING,
            ),
        }
    }

    /// Membership with a degree check.
    pub fn member(self, t: &PartialTransformation, degree: usize) -> Result<bool> {
        if t.degree() != degree {
            return Err(Error::DegreeMismatch(t.degree(), degree));
        }
        Ok(self.contains(t))
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown transformation family {s}")))
    }
}

struct Search {
    n: usize,
    kind: TransformKind,
    cap: usize,
    raw: [u8; MAX_DEGREE],
    out: Vec<PartialTransformation>,
}

impl Search {
    /// Necessary conditions on a prefix of the image sequence.
    fn prefix_ok(&self, vals: &[u8]) -> bool {
        let k = vals.len();
        if k < 2 {
            return true;
        }
        let (a, b) = (vals[k - 2], vals[k - 1]);
        let inc = vals.windows(2).all(|w| w[0] <= w[1]);
        let dec = vals.windows(2).all(|w| w[0] >= w[1]);
        let desc = vals.windows(2).filter(|w| w[0] > w[1]).count();
        let asc = vals.windows(2).filter(|w| w[0] < w[1]).count();
        match self.kind.shape() {
            Shape::Any => true,
            Shape::Order => a <= b,
            Shape::OrderOrReverse => inc || dec,
            Shape::Orientation => desc <= 1,
            Shape::OrientationOrReverse => desc <= 1 || asc <= 1,
        }
    }

    fn run(&mut self, i: usize, used: u32, vals: &mut Vec<u8>) -> Result<()> {
        if i == self.n {
            let t = PartialTransformation::from_raw(&self.raw[..self.n]);
            if self.kind.contains(&t) {
                if self.out.len() >= self.cap {
                    return Err(Error::Capacity {
                        what: format!("{}_{}", self.kind, self.n),
                        bound: self.cap,
                    });
                }
                self.out.push(t);
            }
            return Ok(());
        }
        for v in 0..self.n as u8 {
            if self.kind.needs_injective() && used >> v & 1 == 1 {
                continue;
            }
            vals.push(v);
            if self.prefix_ok(vals) {
                self.raw[i] = v;
                self.run(i + 1, used | 1 << v, vals)?;
            }
            vals.pop();
        }
        if !self.kind.needs_total() {
            self.raw[i] = UNDEF;
            self.run(i + 1, used, vals)?;
        }
        Ok(())
    }
}

/// All members of the family of degree `n`, sorted; fails once more than `cap` are found.
pub fn enumerate(kind: TransformKind, n: usize, cap: usize) -> Result<Vec<PartialTransformation>> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::BadDegree(n, MAX_DEGREE));
    }
    let mut s = Search {
        n,
        kind,
        cap,
        raw: [UNDEF; MAX_DEGREE],
        out: Vec::new(),
    };
    s.run(0, 0, &mut Vec::with_capacity(n))?;
    s.out.sort_unstable();
    Ok(s.out)
}

/// The order-preserving bijection `{1..n} \ {i} -> {1..n} \ {j}`.
pub fn order_iso(n: usize, i: usize, j: usize) -> PartialTransformation {
    let targets: Vec<usize> = (1..=n).filter(|&p| p != j).collect();
    PartialTransformation::from_fn(n, |p| match p.cmp(&i) {
        std::cmp::Ordering::Less => Some(targets[p - 1]),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some(targets[p - 2]),
    })
    .expect("valid degree")
}

/// A generating set for the family, including the identity.
pub fn standard_generators(kind: TransformKind, n: usize) -> Vec<PartialTransformation> {
    use TransformKind::*;
    let id = PartialTransformation::identity(n);
    let mut gens = vec![id];
    let idempotents = (1..n).flat_map(|i| {
        [
            PartialTransformation::collapse(n, i, i + 1),
            PartialTransformation::collapse(n, i + 1, i),
        ]
    });
    let partial_ids = (1..=n).map(|i| PartialTransformation::partial_identity(n, i));
    let isos = (1..=n).flat_map(|i| (1..=n).map(move |j| order_iso(n, i, j)));
    match kind {
        PT | T | I | S => {
            gens.push(PartialTransformation::cycle(n));
            gens.push(PartialTransformation::transposition(n));
            if matches!(kind, PT | T) && n >= 2 {
                gens.push(PartialTransformation::collapse(n, 1, 2));
            }
            if matches!(kind, PT | I) {
                gens.push(PartialTransformation::partial_identity(n, n));
            }
        }
        O | OD | OP | OR => gens.extend(idempotents),
        PO | POD | POP | POR => {
            gens.extend(idempotents);
            gens.extend(partial_ids);
        }
        POI | PODI | POPI | PORI => {
            gens.extend(partial_ids);
            gens.extend(isos);
        }
    }
    if matches!(kind, OD | OR | POD | POR | PODI | PORI) {
        gens.push(PartialTransformation::gamma(n));
    }
    if matches!(kind, OP | OR | POP | POR | POPI | PORI) {
        gens.push(PartialTransformation::cycle(n));
    }
    if matches!(kind, POPI | PORI) && n >= 2 {
        gens.push(PartialTransformation::zeta(n));
    }
    if kind == PORI && n >= 2 {
        gens.push(PartialTransformation::tau(n));
    }
    gens.sort_unstable();
    gens.dedup();
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use TransformKind::*;

    fn filter_all(kind: TransformKind, n: usize) -> Vec<PartialTransformation> {
        let mut v: Vec<_> = enumerate(PT, n, usize::MAX)
            .unwrap()
            .into_iter()
            .filter(|t| kind.contains(t))
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn pruned_search_equals_filter() {
        for n in 1..=5 {
            for kind in TransformKind::ALL {
                assert_eq!(enumerate(kind, n, usize::MAX).unwrap(), filter_all(kind, n), "{kind} {n}");
            }
        }
    }

    #[test]
    fn small_orders() {
        assert_eq!(enumerate(PT, 2, usize::MAX).unwrap().len(), 9);
        assert_eq!(enumerate(I, 2, usize::MAX).unwrap().len(), 7);
        assert_eq!(enumerate(T, 2, usize::MAX).unwrap().len(), 4);
        assert_eq!(enumerate(S, 4, usize::MAX).unwrap().len(), 24);
        assert_eq!(enumerate(O, 4, usize::MAX).unwrap().len(), 35);
        assert_eq!(enumerate(POI, 5, usize::MAX).unwrap().len(), 252);
    }

    #[test]
    fn capacity_error() {
        let err = enumerate(PT, 3, 10).unwrap_err();
        assert!(matches!(err, Error::Capacity { bound: 10, .. }));
    }

    #[test]
    fn membership_examples() {
        let g = PartialTransformation::gamma(4);
        assert!(PODI.contains(&g));
        assert!(!POI.contains(&g));
        let id = PartialTransformation::identity(5);
        assert!(TransformKind::ALL.iter().all(|k| k.contains(&id)));
        let c = PartialTransformation::cycle(3);
        assert!(OP.contains(&c) && !O.contains(&c));
        assert!(POI.member(&id, 4).is_err());
    }

    #[test]
    fn containment_lattice() {
        let chains: &[&[TransformKind]] = &[
            &[POI, PODI, PORI, I],
            &[O, OD, OR, T],
            &[PO, POD, POR, PT],
            &[POI, POPI, PORI],
            &[O, OP, OR],
            &[PO, POP, POR],
            &[O, PO],
            &[OD, POD],
            &[OP, POP],
            &[OR, POR],
            &[POI, PO],
            &[PODI, POD],
            &[POPI, POP],
            &[PORI, POR],
            &[S, T],
            &[S, I],
            &[T, PT],
            &[I, PT],
        ];
        for n in 1..=4 {
            let all = enumerate(PT, n, usize::MAX).unwrap();
            for chain in chains {
                for w in chain.windows(2) {
                    for t in &all {
                        if w[0].contains(t) {
                            assert!(w[1].contains(t), "{} not in {} for {t:?}", w[0], w[1]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn order_iso_is_the_unique_order_preserving_bijection() {
        let t = order_iso(4, 2, 4);
        assert_eq!(t.images(), vec![Some(1), None, Some(2), Some(3)]);
        assert!(POI.contains(&t));
    }
}
