//! Closures restricted to an upward-closed union of J-classes.
//!
//! If a product lies in an up-set U then so do all its factors and every
//! prefix of the factorisation, so a closure computed inside U with
//! products outside U discarded equals the true closure intersected with U.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::FiniteMonoid;

const NONE: u32 = u32::MAX;

/// An up-set of a monoid, with local indices `0..len`.
pub struct Local<'a> {
    monoid: &'a FiniteMonoid,
    members: Vec<u32>,
    pos: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl<'a> Local<'a> {
    /// The up-set generated by the J-classes in `tops`.
    pub fn above(monoid: &'a FiniteMonoid, tops: impl IntoIterator<Item = u32>) -> Self {
        let g = monoid.greens();
        let mut classes = FixedBitSet::with_capacity(g.j_classes.len());
        for j in tops {
            classes.union_with(g.up_set(j));
        }
        let mut members: Vec<u32> = classes
            .ones()
            .flat_map(|j| g.j_classes[j].elements.iter().copied())
            .collect();
        members.sort_unstable();
        Self::new(monoid, members)
    }

    /// `members` must be upward closed in the J-order.
    pub fn new(monoid: &'a FiniteMonoid, members: Vec<u32>) -> Self {
        let mut pos = vec![NONE; monoid.len()];
        for (i, &x) in members.iter().enumerate() {
            pos[x as usize] = i as u32;
        }
        let mut local = Local {
            monoid,
            members,
            pos,
            table: None,
        };
        let k = local.members.len();
        if k.saturating_mul(k) <= 1 << 24 {
            let table: Vec<u32> = (0..k)
                .into_par_iter()
                .flat_map_iter(|a| {
                    let l = &local;
                    (0..k).map(move |b| l.compute(a as u32, b as u32))
                })
                .collect();
            local.table = Some(table);
        }
        local
    }

    fn compute(&self, a: u32, b: u32) -> u32 {
        let p = self
            .monoid
            .mul(self.members[a as usize], self.members[b as usize]);
        self.pos[p as usize]
    }

    pub fn monoid(&self) -> &'a FiniteMonoid {
        self.monoid
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn global(&self, a: u32) -> u32 {
        self.members[a as usize]
    }

    pub fn local(&self, x: u32) -> Option<u32> {
        match self.pos[x as usize] {
            NONE => None,
            p => Some(p),
        }
    }

    /// Local index of the product, if it stays inside the up-set.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> Option<u32> {
        let p = match &self.table {
            Some(t) => t[a as usize * self.members.len() + b as usize],
            None => self.compute(a, b),
        };
        (p != NONE).then_some(p)
    }

    pub fn closure(&self) -> Closure<'_, 'a> {
        Closure {
            local: self,
            member: FixedBitSet::with_capacity(self.len()),
            elements: Vec::new(),
            gens: Vec::new(),
        }
    }
}

/// The subsemigroup generated by a growing set, inside an up-set.
#[derive(Clone)]
pub struct Closure<'l, 'a> {
    local: &'l Local<'a>,
    member: FixedBitSet,
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl Closure<'_, '_> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.member.contains(a as usize)
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.member
    }

    pub fn is_everything(&self) -> bool {
        self.elements.len() == self.local.len()
    }

    fn push(&mut self, a: u32) {
        if !self.member.put(a as usize) {
            self.elements.push(a);
        }
    }

    /// Adds a generator; returns whether the closure grew.
    pub fn add(&mut self, g: u32) -> bool {
        if self.contains(g) {
            return false;
        }
        let old = self.elements.len();
        self.gens.push(g);
        self.push(g);
        for i in 0..old {
            if let Some(p) = self.local.mul(self.elements[i], g) {
                self.push(p);
            }
        }
        let mut k = old;
        while k < self.elements.len() {
            let x = self.elements[k];
            for j in 0..self.gens.len() {
                if let Some(p) = self.local.mul(x, self.gens[j]) {
                    self.push(p);
                }
            }
            k += 1;
        }
        true
    }

    /// Adds generators until `limit` elements are reached; returns false if stopped early.
    pub fn add_bounded(&mut self, g: u32, limit: usize) -> bool {
        if self.contains(g) {
            return true;
        }
        let old = self.elements.len();
        self.gens.push(g);
        self.push(g);
        for i in 0..old {
            if let Some(p) = self.local.mul(self.elements[i], g) {
                self.push(p);
                if self.elements.len() > limit {
                    return false;
                }
            }
        }
        let mut k = old;
        while k < self.elements.len() {
            let x = self.elements[k];
            for j in 0..self.gens.len() {
                if let Some(p) = self.local.mul(x, self.gens[j]) {
                    self.push(p);
                    if self.elements.len() > limit {
                        return false;
                    }
                }
            }
            k += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Family;
    use crate::monoid::Budget;
    use crate::transform::TransformKind;

    #[test]
    fn local_closure_matches_global_closure() {
        let m = FiniteMonoid::enumerate(Family::Transform(TransformKind::PO), 3, &Budget::default()).unwrap();
        let g = m.greens();
        let covered = g.covered_classes();
        let local = Local::above(&m, covered.iter().copied());
        assert_eq!(local.len(), g.units().len() + covered.iter().map(|&j| g.j_class(j).elements.len()).sum::<usize>());
        for pick in 0..local.len() as u32 {
            let mut c = local.closure();
            c.add(pick);
            let mut brute = vec![local.global(pick)];
            let mut k = 0;
            while k < brute.len() {
                let p = m.mul(brute[k], local.global(pick));
                if !brute.contains(&p) {
                    brute.push(p);
                }
                k += 1;
            }
            let mut inside: Vec<u32> = brute.into_iter().filter_map(|x| local.local(x)).collect();
            inside.sort_unstable();
            let mut got = c.elements().to_vec();
            got.sort_unstable();
            assert_eq!(got, inside);
        }
    }

    #[test]
    fn whole_up_set_from_generators() {
        let m = FiniteMonoid::enumerate(Family::Transform(TransformKind::T), 3, &Budget::default()).unwrap();
        let g = m.greens();
        let j = g.covered_classes()[0];
        let local = Local::above(&m, [j]);
        let mut c = local.closure();
        for x in 0..local.len() as u32 {
            c.add(x);
        }
        assert!(c.is_everything());
    }
}
