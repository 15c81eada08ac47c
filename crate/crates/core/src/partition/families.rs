use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{rho_powers, Partition, PartitionFlags, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::transform::families::order_iso;

/// Upper bound on raw candidates visited by a filtering enumeration.
const SEARCH_LIMIT: u128 = 50_000_000;

/// The diagram monoids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagramKind {
    P,
    PB,
    B,
    Istar,
    F,
    PP,
    M,
    J,
    AJ,
}

impl DiagramKind {
    pub const ALL: [DiagramKind; 9] = [
        Self::P,
        Self::PB,
        Self::B,
        Self::Istar,
        Self::F,
        Self::PP,
        Self::M,
        Self::J,
        Self::AJ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::P => "P",
            Self::PB => "PB",
            Self::B => "B",
            Self::Istar => "Istar",
            Self::F => "F",
            Self::PP => "PP",
            Self::M => "M",
            Self::J => "J",
            Self::AJ => "AJ",
        }
    }

    pub fn contains(self, x: &Partition) -> bool {
        let f = x.block_flags();
        match self {
            Self::P => true,
            Self::PB => f.contains(PartitionFlags::BLOCKS_LE2),
            Self::B => f.contains(PartitionFlags::BLOCKS_EQ2),
            Self::Istar => f.contains(PartitionFlags::BLOCK_BIJECTION),
            Self::F => f.contains(PartitionFlags::UNIFORM),
            Self::PP => x.is_planar(),
            Self::M => f.contains(PartitionFlags::BLOCKS_LE2) && x.is_planar(),
            Self::J => f.contains(PartitionFlags::BLOCKS_EQ2) && x.is_planar(),
            Self::AJ => f.contains(PartitionFlags::BLOCKS_EQ2) && x.is_annular(),
        }
    }

    pub fn member(self, x: &Partition, degree: usize) -> Result<bool> {
        if x.degree() != degree {
            return Err(Error::DegreeMismatch(x.degree(), degree));
        }
        Ok(self.contains(x))
    }
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DiagramKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "I*" {
            return Ok(Self::Istar);
        }
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown diagram family {s}")))
    }
}

fn bell(m: usize) -> u128 {
    // Bell triangle.
    let mut row = vec![1u128];
    for _ in 1..=m {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    row[0]
}

fn involutions(m: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128);
    for k in 2..=m {
        let c = b + (k as u128 - 1) * a;
        a = b;
        b = c;
    }
    if m == 0 {
        1
    } else {
        b
    }
}

fn guard(kind: DiagramKind, n: usize, space: u128) -> Result<()> {
    if space > SEARCH_LIMIT {
        return Err(Error::Capacity {
            what: format!("search space for {kind}_{n} ({space} candidates)"),
            bound: SEARCH_LIMIT as usize,
        });
    }
    Ok(())
}

struct Collector {
    kind: DiagramKind,
    n: usize,
    cap: usize,
    out: Vec<Partition>,
}

impl Collector {
    fn offer(&mut self, raw: &[u8]) -> Result<()> {
        let x = Partition::from_labels(self.n, raw);
        if self.kind.contains(&x) {
            if self.out.len() >= self.cap {
                return Err(Error::Capacity {
                    what: format!("{}_{}", self.kind, self.n),
                    bound: self.cap,
                });
            }
            self.out.push(x);
        }
        Ok(())
    }
}

/// Restricted growth strings over the 2n points.
fn set_partitions(c: &mut Collector, raw: &mut [u8], p: usize, blocks: u8) -> Result<()> {
    if p == raw.len() {
        return c.offer(raw);
    }
    for b in 0..=blocks {
        raw[p] = b;
        set_partitions(c, raw, p + 1, blocks.max(b + 1))?;
    }
    Ok(())
}

/// Matchings on the 2n points; singletons allowed when `partial`.
fn matchings(c: &mut Collector, raw: &mut [u8], partial: bool, next: u8) -> Result<()> {
    let Some(p) = raw.iter().position(|&l| l == u8::MAX) else {
        return c.offer(raw);
    };
    raw[p] = next;
    if partial {
        matchings(c, raw, partial, next + 1)?;
    }
    for q in p + 1..raw.len() {
        if raw[q] == u8::MAX {
            raw[q] = next;
            matchings(c, raw, partial, next + 1)?;
            raw[q] = u8::MAX;
        }
    }
    raw[p] = u8::MAX;
    Ok(())
}

/// Non-crossing matchings of `0..len` as lists of pairs; singletons are `(i, i)`.
fn noncrossing(len: usize, partial: bool, memo: &mut FxHashMap<usize, Vec<Vec<(u8, u8)>>>) -> Vec<Vec<(u8, u8)>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if let Some(v) = memo.get(&len) {
        return v.clone();
    }
    let shift = |m: &[(u8, u8)], by: usize| -> Vec<(u8, u8)> {
        m.iter().map(|&(a, b)| (a + by as u8, b + by as u8)).collect()
    };
    let mut out = Vec::new();
    if partial {
        for rest in noncrossing(len - 1, partial, memo) {
            let mut m = vec![(0, 0)];
            m.extend(shift(&rest, 1));
            out.push(m);
        }
    }
    for k in 1..len {
        if !partial && k % 2 == 0 {
            continue;
        }
        let inner = noncrossing(k - 1, partial, memo);
        let outer = noncrossing(len - k - 1, partial, memo);
        for i in &inner {
            for o in &outer {
                let mut m = vec![(0, k as u8)];
                m.extend(shift(i, 1));
                m.extend(shift(o, k + 1));
                out.push(m);
            }
        }
    }
    memo.insert(len, out.clone());
    out
}

/// Storage index of the point at position `q` of the planar order `n' < .. < 1' < 1 < .. < n`.
fn planar_position(n: usize, q: usize) -> usize {
    if q < n {
        n + (n - 1 - q)
    } else {
        q - n
    }
}

fn planar_matchings(c: &mut Collector, partial: bool) -> Result<()> {
    let n = c.n;
    let mut memo = FxHashMap::default();
    for m in noncrossing(2 * n, partial, &mut memo) {
        let mut raw = vec![0u8; 2 * n];
        for (label, &(a, b)) in m.iter().enumerate() {
            raw[planar_position(n, a as usize)] = label as u8;
            raw[planar_position(n, b as usize)] = label as u8;
        }
        c.offer(&raw)?;
    }
    Ok(())
}

/// All members of the family of degree `n`, sorted; fails once more than `cap` are found.
pub fn enumerate(kind: DiagramKind, n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::BadDegree(n, MAX_DEGREE));
    }
    let mut c = Collector {
        kind,
        n,
        cap,
        out: Vec::new(),
    };
    match kind {
        DiagramKind::P | DiagramKind::PP | DiagramKind::Istar | DiagramKind::F => {
            guard(kind, n, bell(2 * n))?;
            set_partitions(&mut c, &mut vec![0; 2 * n], 0, 0)?;
        }
        DiagramKind::PB | DiagramKind::B => {
            guard(kind, n, involutions(2 * n))?;
            matchings(&mut c, &mut vec![u8::MAX; 2 * n], kind == DiagramKind::PB, 0)?;
        }
        DiagramKind::M => planar_matchings(&mut c, true)?,
        DiagramKind::J => planar_matchings(&mut c, false)?,
        DiagramKind::AJ => {
            let jones = enumerate(DiagramKind::J, n, usize::MAX)?;
            let powers = rho_powers(n);
            let powers = &powers;
            let mut all: Vec<Partition> = jones
                .iter()
                .flat_map(|b| powers.iter().flat_map(move |r| powers.iter().map(move |s| r.mul(b).mul(s))))
                .collect();
            all.sort_unstable();
            all.dedup();
            if all.len() > cap {
                return Err(Error::Capacity {
                    what: format!("AJ_{n}"),
                    bound: cap,
                });
            }
            return Ok(all);
        }
    }
    c.out.sort_unstable();
    c.out.dedup();
    Ok(c.out)
}

/// A generating set for the family, including the identity.
pub fn standard_generators(kind: DiagramKind, n: usize) -> Vec<Partition> {
    use DiagramKind::*;
    let mut gens = vec![Partition::identity(n)];
    let units = [Partition::rho(n), Partition::transposition(n)];
    match kind {
        P => {
            gens.extend(units);
            gens.push(Partition::pi(n, 1));
            if n >= 2 {
                gens.push(Partition::tau(n, 1));
            }
        }
        PB => {
            gens.extend(units);
            gens.push(Partition::pi(n, 1));
            if n >= 2 {
                gens.push(Partition::jones(n, 1));
            }
        }
        B => {
            gens.extend(units);
            if n >= 2 {
                gens.push(Partition::jones(n, 1));
            }
        }
        Istar | F => {
            gens.extend(units);
            if n >= 2 {
                gens.push(Partition::tau(n, 1));
            }
            if kind == Istar && n >= 3 {
                gens.push(Partition::eta(n));
            }
        }
        PP => {
            gens.extend((1..=n).map(|i| Partition::pi(n, i)));
            gens.extend((1..n).map(|i| Partition::tau(n, i)));
        }
        M => {
            for i in 1..=n {
                for j in 1..=n {
                    gens.push(Partition::embed_partial_perm(&order_iso(n, i, j)).expect("injective"));
                }
            }
            gens.extend((1..n).map(|i| Partition::jones(n, i)));
        }
        J => gens.extend((1..n).map(|i| Partition::jones(n, i))),
        AJ => {
            gens.push(Partition::rho(n));
            if n >= 2 {
                gens.push(Partition::jones(n, 1));
            }
        }
    }
    gens.sort_unstable();
    gens.dedup();
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use DiagramKind::*;

    fn filter_all(kind: DiagramKind, n: usize) -> Vec<Partition> {
        enumerate(P, n, usize::MAX)
            .unwrap()
            .into_iter()
            .filter(|x| kind.contains(x))
            .collect()
    }

    #[test]
    fn specialised_enumerations_equal_the_filter() {
        for n in 1..=4 {
            for kind in DiagramKind::ALL {
                if kind == AJ && n == 4 {
                    continue;
                }
                assert_eq!(enumerate(kind, n, usize::MAX).unwrap(), filter_all(kind, n), "{kind} {n}");
            }
        }
    }

    #[test]
    fn annular_generation_equals_the_annular_filter() {
        for n in 1..=4 {
            let filtered: Vec<_> = enumerate(B, n, usize::MAX)
                .unwrap()
                .into_iter()
                .filter(|x| x.is_annular())
                .collect();
            assert_eq!(enumerate(AJ, n, usize::MAX).unwrap(), filtered);
        }
    }

    #[test]
    fn orders() {
        let order = |k, n| enumerate(k, n, usize::MAX).unwrap().len();
        assert_eq!(order(P, 3), 203);
        assert_eq!(order(J, 3), 5);
        assert_eq!(order(B, 3), 15);
        assert_eq!(order(J, 4), 14);
        assert_eq!(order(M, 3), 51);
        assert_eq!(order(PB, 2), 10);
        assert_eq!(order(PP, 3), 132);
        assert_eq!(filter_all(J, 3).len(), 5);
    }

    #[test]
    fn counting_helpers() {
        assert_eq!((0..6).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52]);
        assert_eq!((0..6).map(involutions).collect::<Vec<_>>(), vec![1, 1, 2, 4, 10, 26]);
    }

    #[test]
    fn search_guard() {
        assert!(matches!(enumerate(P, 9, usize::MAX), Err(Error::Capacity { .. })));
    }

    #[test]
    fn containments() {
        for x in enumerate(J, 4, usize::MAX).unwrap() {
            for k in [AJ, B, M, PB, PP, P] {
                assert!(k.contains(&x), "{x} not in {k}");
            }
        }
        let r = Partition::rho(4);
        assert!(AJ.contains(&r) && !J.contains(&r));
        assert!(J.member(&r, 3).is_err());
    }

    #[test]
    fn closed_under_product_and_star() {
        for n in 1..=3 {
            for kind in DiagramKind::ALL {
                let all = enumerate(kind, n, usize::MAX).unwrap();
                for x in &all {
                    assert!(kind.contains(&x.star()), "{kind} star {x}");
                    for y in &all {
                        assert!(kind.contains(&x.mul(y)), "{kind}: {x} * {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn names_parse() {
        for k in DiagramKind::ALL {
            assert_eq!(k.name().parse::<DiagramKind>().unwrap(), k);
        }
        assert_eq!("I*".parse::<DiagramKind>().unwrap(), Istar);
    }
}
