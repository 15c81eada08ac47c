//! Indexed finite monoids with fast multiplication.

pub mod export;
pub mod greens;
pub mod local;

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::element::{self, Element, Family};
use crate::error::{Error, Result};

pub use greens::{Greens, JClass};
pub use local::{Closure, Local};

/// A set of element indices.
pub type ElementSet = FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest monoid that may be built.
    pub max_elements: usize,
    /// A Cayley table is stored only when |S|² is at most this.
    pub max_table_entries: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_elements: 200_000,
            max_table_entries: 1 << 24,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Family(Family, usize),
    Generated,
}

pub struct FiniteMonoid {
    origin: Origin,
    elements: Vec<Element>,
    index: FxHashMap<Element, u32>,
    table: Option<Vec<u32>>,
    identity: Option<u32>,
    generators: Vec<u32>,
    right_gen: OnceLock<Vec<Vec<u32>>>,
    left_gen: OnceLock<Vec<Vec<u32>>>,
    greens: OnceLock<Greens>,
}

impl FiniteMonoid {
    fn assemble(origin: Origin, elements: Vec<Element>, gens: &[Element], budget: &Budget) -> Result<Self> {
        let index: FxHashMap<Element, u32> =
            elements.iter().enumerate().map(|(i, x)| (*x, i as u32)).collect();
        let mut generators = gens
            .iter()
            .map(|g| index.get(g).copied().ok_or_else(|| Error::NotMember(g.to_string())))
            .collect::<Result<Vec<u32>>>()?;
        generators.sort_unstable();
        generators.dedup();
        let identity = elements.first().and_then(|x| index.get(&x.identity_like()).copied());
        let mut m = FiniteMonoid {
            origin,
            elements,
            index,
            table: None,
            identity,
            generators,
            right_gen: OnceLock::new(),
            left_gen: OnceLock::new(),
            greens: OnceLock::new(),
        };
        let len = m.elements.len();
        if len.saturating_mul(len) <= budget.max_table_entries {
            let table: Vec<u32> = (0..len)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let m = &m;
                    (0..len).map(move |j| m.lookup_product(i as u32, j as u32))
                })
                .collect();
            m.table = Some(table);
        }
        Ok(m)
    }

    /// The whole family of degree `n`, with its standard generators.
    pub fn enumerate(family: Family, n: usize, budget: &Budget) -> Result<Self> {
        let elements = element::enumerate(family, n, budget.max_elements)?;
        let gens = element::standard_generators(family, n);
        Self::assemble(Origin::Family(family, n), elements, &gens, budget)
    }

    /// The semigroup generated by `gens`.
    pub fn closure(gens: &[Element], budget: &Budget) -> Result<Self> {
        let first = gens
            .first()
            .ok_or_else(|| Error::Unsupported("empty generating set".into()))?;
        if gens.iter().any(|g| g.degree() != first.degree()) {
            let bad = gens.iter().find(|g| g.degree() != first.degree()).unwrap();
            return Err(Error::DegreeMismatch(first.degree(), bad.degree()));
        }
        let mut seen: FxHashMap<Element, ()> = FxHashMap::default();
        let mut elements: Vec<Element> = Vec::new();
        for g in gens {
            if seen.insert(*g, ()).is_none() {
                elements.push(*g);
            }
        }
        let mut k = 0;
        while k < elements.len() {
            let x = elements[k];
            for g in gens {
                let y = x.try_mul(g)?;
                if seen.insert(y, ()).is_none() {
                    if elements.len() >= budget.max_elements {
                        return Err(Error::Capacity {
                            what: "closure".into(),
                            bound: budget.max_elements,
                        });
                    }
                    elements.push(y);
                }
            }
            k += 1;
        }
        elements.sort_unstable();
        Self::assemble(Origin::Generated, elements, gens, budget)
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn family(&self) -> Option<Family> {
        match self.origin {
            Origin::Family(f, _) => Some(f),
            Origin::Generated => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Element {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, x: &Element) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn identity(&self) -> Option<u32> {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn table(&self) -> Option<&[u32]> {
        self.table.as_deref()
    }

    fn lookup_product(&self, i: u32, j: u32) -> u32 {
        let p = self.elements[i as usize].mul(&self.elements[j as usize]);
        *self
            .index
            .get(&p)
            .unwrap_or_else(|| panic!("product {p} escapes the monoid"))
    }

    /// Index of the product of the elements at `i` and `j`.
    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        match &self.table {
            Some(t) => t[i as usize * self.elements.len() + j as usize],
            None => self.lookup_product(i, j),
        }
    }

    /// `right()[g][x]` is the index of `x * generators[g]`.
    pub fn right(&self) -> &[Vec<u32>] {
        self.right_gen.get_or_init(|| {
            self.generators
                .iter()
                .map(|&g| (0..self.len() as u32).into_par_iter().map(|x| self.mul(x, g)).collect())
                .collect()
        })
    }

    /// `left()[g][x]` is the index of `generators[g] * x`.
    pub fn left(&self) -> &[Vec<u32>] {
        self.left_gen.get_or_init(|| {
            self.generators
                .iter()
                .map(|&g| (0..self.len() as u32).into_par_iter().map(|x| self.mul(g, x)).collect())
                .collect()
        })
    }

    pub fn greens(&self) -> &Greens {
        self.greens.get_or_init(|| Greens::compute(self))
    }

    pub fn is_idempotent(&self, i: u32) -> bool {
        self.mul(i, i) == i
    }

    /// Index of the involution image of element `i`, if the monoid is closed under it.
    pub fn star(&self, i: u32) -> Option<u32> {
        self.element(i).star().and_then(|s| self.index_of(&s))
    }

    /// Whether every element has its involution image in the monoid.
    pub fn is_regular_star(&self) -> bool {
        (0..self.len() as u32).all(|i| self.star(i).is_some())
    }

    pub fn full_set(&self) -> ElementSet {
        let mut s = ElementSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::with_capacity(self.len())
    }

    pub fn set_from(&self, items: impl IntoIterator<Item = u32>) -> ElementSet {
        let mut s = self.empty_set();
        for i in items {
            s.insert(i as usize);
        }
        s
    }
}
