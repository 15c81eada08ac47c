//! Finite groups given by multiplication tables, and their maximal subgroups.

use std::collections::BTreeSet;
use std::sync::{Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monoid::{Budget, FiniteMonoid};
use crate::partition::Partition;
use crate::transform::PartialTransformation;

/// Largest group searched exhaustively for subgroups.
pub const DEFAULT_SUBGROUP_BUDGET: usize = 720;

pub type Subgroup = FixedBitSet;

#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    table: Vec<u32>,
    identity: u32,
    elements: Option<Vec<Element>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Trivial,
    Cyclic { generator: u32 },
    Dihedral { rotation: u32, reflection: u32 },
    Other,
}

pub fn primes_dividing(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

impl GroupTable {
    /// The cyclic group of order `n`, element `i` standing for `a^i`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
            .collect();
        GroupTable {
            order: n,
            table,
            identity: 0,
            elements: None,
        }
    }

    /// The dihedral group of order `2n`; index `i + n s` stands for `r^i s^s`.
    pub fn dihedral(n: usize) -> Self {
        let idx = |i: usize, s: usize| (i % n + n * s) as u32;
        let mut table = Vec::with_capacity(4 * n * n);
        for x in 0..2 * n {
            let (i, s) = (x % n, x / n);
            for y in 0..2 * n {
                let (j, t) = (y % n, y / n);
                let rot = if s == 0 { i + j } else { i + n - j };
                table.push(idx(rot, (s + t) % 2));
            }
        }
        GroupTable {
            order: 2 * n,
            table,
            identity: 0,
            elements: None,
        }
    }

    /// The symmetric group of degree `n` acting on points.
    pub fn symmetric(n: usize) -> Result<Self> {
        let gens: Vec<Element> = if n == 1 {
            vec![PartialTransformation::identity(1).into()]
        } else {
            vec![
                PartialTransformation::cycle(n).into(),
                PartialTransformation::transposition(n).into(),
            ]
        };
        let m = FiniteMonoid::closure(&gens, &Budget::default())?;
        let all: Vec<u32> = (0..m.len() as u32).collect();
        Self::from_monoid(&m, &all)
    }

    /// The group formed by `members` inside a monoid.
    pub fn from_monoid(m: &FiniteMonoid, members: &[u32]) -> Result<Self> {
        let pos: FxHashMap<u32, u32> = members.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                let p = m.mul(a, b);
                table.push(
                    *pos.get(&p)
                        .ok_or_else(|| Error::NotMember(format!("{} is not closed", m.element(a))))?,
                );
            }
        }
        let identity = (0..k as u32)
            .find(|&e| (0..k).all(|x| table[e as usize * k + x] == x as u32))
            .ok_or_else(|| Error::NotMember("no identity in the group".into()))?;
        let g = GroupTable {
            order: k,
            table,
            identity,
            elements: Some(members.iter().map(|&x| *m.element(x)).collect()),
        };
        if (0..k as u32).any(|x| (0..k as u32).all(|y| g.mul(x, y) != identity)) {
            return Err(Error::NotMember("an element has no inverse".into()));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn element(&self, a: u32) -> Option<&Element> {
        self.elements.as_ref().map(|e| &e[a as usize])
    }

    pub fn power(&self, a: u32, k: usize) -> u32 {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn inverse(&self, a: u32) -> u32 {
        (0..self.order as u32).find(|&b| self.mul(a, b) == self.identity).unwrap()
    }

    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut set = FixedBitSet::with_capacity(self.order);
        set.insert(self.identity as usize);
        let mut queue = vec![self.identity];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y as usize) {
                    queue.push(y);
                }
            }
            k += 1;
        }
        set
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn shape(&self) -> Shape {
        let n = self.order;
        if n == 1 {
            return Shape::Trivial;
        }
        let elems = 0..n as u32;
        if let Some(g) = elems.clone().find(|&a| self.element_order(a) == n) {
            return Shape::Cyclic { generator: g };
        }
        if n >= 6 && n % 2 == 0 {
            let half = n / 2;
            for r in elems.clone().filter(|&a| self.element_order(a) == half) {
                let rot = self.closure(&[r]);
                let outside: Vec<u32> = elems.clone().filter(|x| !rot.contains(*x as usize)).collect();
                let s = outside[0];
                let dihedral = outside.iter().all(|&x| self.mul(x, x) == self.identity)
                    && self.mul(self.mul(s, r), s) == self.inverse(r);
                if dihedral {
                    return Shape::Dihedral {
                        rotation: r,
                        reflection: s,
                    };
                }
            }
        }
        Shape::Other
    }

    /// Closed-form maximal subgroups for cyclic and dihedral groups.
    pub fn closed_form_maximal(&self) -> Option<Vec<Subgroup>> {
        match self.shape() {
            Shape::Trivial => Some(Vec::new()),
            Shape::Cyclic { generator } => Some(
                primes_dividing(self.order)
                    .into_iter()
                    .map(|p| self.closure(&[self.power(generator, p)]))
                    .collect(),
            ),
            Shape::Dihedral { rotation, reflection } => {
                let n = self.order / 2;
                let mut out = vec![self.closure(&[rotation])];
                for p in primes_dividing(n) {
                    for i in 0..p {
                        let refl = self.mul(reflection, self.power(rotation, i));
                        out.push(self.closure(&[self.power(rotation, p), refl]));
                    }
                }
                Some(out)
            }
            Shape::Other => None,
        }
    }

    fn cyclic_subgroups(&self) -> Vec<(Subgroup, u32)> {
        let mut seen = FxHashSet::default();
        let mut out = Vec::new();
        for a in 0..self.order as u32 {
            let c = self.closure(&[a]);
            if seen.insert(c.clone()) {
                out.push((c, a));
            }
        }
        out
    }

    /// Every subgroup, found by joining cyclic subgroups until nothing new appears.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let cyclic = self.cyclic_subgroups();
        let mut seen: FxHashSet<Subgroup> = cyclic.iter().map(|(c, _)| c.clone()).collect();
        let mut frontier: Vec<(Subgroup, Vec<u32>)> = cyclic.iter().map(|(c, a)| (c.clone(), vec![*a])).collect();
        let mut all: Vec<Subgroup> = frontier.iter().map(|(c, _)| c.clone()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (h, gens) in &frontier {
                for (c, a) in &cyclic {
                    if c.is_subset(h) {
                        continue;
                    }
                    let mut g2 = gens.clone();
                    g2.push(*a);
                    let joined = self.closure(&g2);
                    if seen.insert(joined.clone()) {
                        all.push(joined.clone());
                        next.push((joined, g2));
                    }
                }
            }
            frontier = next;
        }
        all
    }

    fn maximal_among(&self, candidates: impl IntoIterator<Item = Subgroup>) -> Vec<Subgroup> {
        let mut proper: Vec<Subgroup> = candidates
            .into_iter()
            .filter(|h| h.count_ones(..) < self.order)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        proper.sort_by_key(|h| std::cmp::Reverse(h.count_ones(..)));
        let mut out: Vec<Subgroup> = Vec::new();
        for h in proper {
            if !out.iter().any(|m| h.is_subset(m)) {
                out.push(h);
            }
        }
        out.sort();
        out
    }

    /// Maximal subgroups from the full subgroup lattice.
    pub fn maximal_by_lattice(&self) -> Vec<Subgroup> {
        self.maximal_among(self.all_subgroups())
    }

    /// Maximal subgroups among the subgroups generated by at most two elements.
    /// Exact whenever every maximal subgroup is 2-generated.
    pub fn maximal_by_pairs(&self) -> Vec<Subgroup> {
        let mut seen: FxHashSet<Subgroup> = FxHashSet::default();
        for a in 0..self.order as u32 {
            for b in a..self.order as u32 {
                seen.insert(self.closure(&[a, b]));
            }
        }
        self.maximal_among(seen)
    }

    /// Maximal subgroups: closed forms for cyclic and dihedral groups, otherwise lattice search.
    pub fn maximal_subgroups(&self, budget: usize) -> Result<Vec<Subgroup>> {
        if let Some(mut v) = self.closed_form_maximal() {
            v.sort();
            return Ok(v);
        }
        if self.order > budget {
            return Err(Error::Capacity {
                what: "subgroup search".into(),
                bound: budget,
            });
        }
        Ok(self.maximal_by_lattice())
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generators_of(&self, h: &Subgroup) -> Vec<u32> {
        let mut members: Vec<u32> = h.ones().map(|x| x as u32).collect();
        members.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = self.closure(&[]);
        for x in members {
            if !span.contains(x as usize) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }
}

/// Permutations generating each maximal subgroup of the symmetric group, as image lists.
pub type PermutationGenerators = Vec<Vec<Vec<usize>>>;

fn symmetric_cache() -> &'static Mutex<FxHashMap<usize, PermutationGenerators>> {
    static CACHE: OnceLock<Mutex<FxHashMap<usize, PermutationGenerators>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(FxHashMap::default()))
}

/// Generators of every maximal subgroup of the symmetric group of degree `n`.
pub fn symmetric_maximal_generators(n: usize, budget: usize) -> Result<PermutationGenerators> {
    if let Some(v) = symmetric_cache().lock().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let fact: usize = (1..=n).product();
    if fact > budget {
        return Err(Error::Capacity {
            what: format!("subgroup search in S_{n}"),
            bound: budget,
        });
    }
    let g = GroupTable::symmetric(n)?;
    let maxes = g.maximal_subgroups(budget)?;
    let gens: PermutationGenerators = maxes
        .iter()
        .map(|h| {
            g.generators_of(h)
                .into_iter()
                .map(|x| {
                    let t = *g.element(x).unwrap().as_transform().unwrap();
                    (1..=n).map(|i| t.image(i).unwrap()).collect()
                })
                .collect()
        })
        .collect();
    symmetric_cache().lock().unwrap().insert(n, gens.clone());
    Ok(gens)
}

/// The number of maximal subgroups of the symmetric group of degree `n`.
pub fn s_n(n: usize, budget: usize) -> Result<usize> {
    symmetric_maximal_generators(n, budget).map(|v| v.len())
}

pub fn permutation_as_transform(images: &[usize]) -> PartialTransformation {
    PartialTransformation::from_fn(images.len(), |i| Some(images[i - 1])).expect("valid permutation")
}

pub fn permutation_as_partition(images: &[usize]) -> Partition {
    let t = permutation_as_transform(images);
    Partition::embed_partial_perm(&t).expect("a permutation is injective")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(primes_dividing(1), Vec::<usize>::new());
        assert_eq!(primes_dividing(12), vec![2, 3]);
        assert_eq!(primes_dividing(30), vec![2, 3, 5]);
        assert_eq!(primes_dividing(49), vec![7]);
    }

    #[test]
    fn cyclic_of_order_12() {
        let g = GroupTable::cyclic(12);
        assert!(matches!(g.shape(), Shape::Cyclic { .. }));
        let m = g.maximal_subgroups(720).unwrap();
        assert_eq!(m.len(), 2);
        let orders: BTreeSet<usize> = m.iter().map(|h| h.count_ones(..)).collect();
        assert_eq!(orders, BTreeSet::from([4, 6]));
        assert_eq!(g.maximal_by_lattice(), m);
    }

    #[test]
    fn dihedral_of_order_12() {
        let g = GroupTable::dihedral(6);
        assert!(matches!(g.shape(), Shape::Dihedral { .. }));
        let m = g.maximal_subgroups(720).unwrap();
        assert_eq!(m.len(), 6);
        assert_eq!(g.maximal_by_lattice(), m);
        assert_eq!(g.maximal_by_pairs(), m);
    }

    #[test]
    fn symmetric_counts() {
        assert_eq!(s_n(2, 720).unwrap(), 1);
        assert_eq!(s_n(3, 720).unwrap(), 4);
        assert_eq!(s_n(4, 720).unwrap(), 8);
        let s4 = GroupTable::symmetric(4).unwrap();
        assert_eq!(s4.maximal_by_pairs(), s4.maximal_by_lattice());
        assert!(matches!(s_n(7, 720), Err(Error::Capacity { .. })));
    }

    #[test]
    fn subgroup_count_of_s4() {
        assert_eq!(GroupTable::symmetric(4).unwrap().all_subgroups().len(), 30);
    }

    #[test]
    fn generators_regenerate() {
        let g = GroupTable::symmetric(4).unwrap();
        for h in g.maximal_by_lattice() {
            assert_eq!(g.closure(&g.generators_of(&h)), h);
        }
    }

    #[test]
    fn monoid_subset_must_be_a_group() {
        let m = FiniteMonoid::enumerate(
            crate::element::Family::Transform(crate::transform::TransformKind::T),
            2,
            &Budget::default(),
        )
        .unwrap();
        let all: Vec<u32> = (0..m.len() as u32).collect();
        assert!(GroupTable::from_monoid(&m, &all).is_err());
    }
}
