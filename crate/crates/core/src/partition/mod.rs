//! Partitions of `{1..n} ∪ {1'..n'}` for n ≤ 16.
//!
//! Point index `p < n` is the top point `p + 1`; `p >= n` is the bottom point
//! `(p - n + 1)'`. Block labels are assigned in order of first appearance over
//! `1, .., n, 1', .., n'`.

mod families;
pub mod fold;

use std::fmt;
use std::str::FromStr;

use bitflags::bitflags;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::transform::PartialTransformation;

pub use families::{enumerate, standard_generators, DiagramKind};

pub const MAX_DEGREE: usize = 16;
const SLOTS: usize = 2 * MAX_DEGREE;

bitflags! {
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
    pub struct PartitionFlags: u8 {
        const PLANAR = 1;
        const ANNULAR = 1 << 1;
        const BLOCKS_LE2 = 1 << 2;
        const BLOCKS_EQ2 = 1 << 3;
        const BLOCK_BIJECTION = 1 << 4;
        const UNIFORM = 1 << 5;
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    degree: u8,
    blocks: [u8; SLOTS],
}

fn canonical_labels(raw: &[u8]) -> [u8; SLOTS] {
    let mut map = [u8::MAX; 3 * MAX_DEGREE];
    let mut next = 0u8;
    let mut out = [0u8; SLOTS];
    for (p, &r) in raw.iter().enumerate() {
        let m = &mut map[r as usize];
        if *m == u8::MAX {
            *m = next;
            next += 1;
        }
        out[p] = *m;
    }
    out
}

struct Dsu {
    parent: [u8; 3 * MAX_DEGREE],
}

impl Dsu {
    fn new(size: usize) -> Self {
        let mut parent = [0u8; 3 * MAX_DEGREE];
        for (i, p) in parent.iter_mut().enumerate().take(size) {
            *p = i as u8;
        }
        Dsu { parent }
    }

    fn find(&mut self, mut x: u8) -> u8 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u8, b: u8) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

impl Partition {
    /// Builds from a raw labelling of the 2n points; labels need not be canonical.
    pub(crate) fn from_labels(n: usize, raw: &[u8]) -> Self {
        debug_assert_eq!(raw.len(), 2 * n);
        Partition {
            degree: n as u8,
            blocks: canonical_labels(raw),
        }
    }

    fn check_degree(n: usize) -> Result<()> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::BadDegree(n, MAX_DEGREE));
        }
        Ok(())
    }

    /// Builds from blocks given as signed points: `i` is the top point i, `-i` is `i'`.
    pub fn from_blocks(n: usize, blocks: &[Vec<i32>]) -> Result<Self> {
        Self::check_degree(n)?;
        let mut raw = [u8::MAX; SLOTS];
        for (b, block) in blocks.iter().enumerate() {
            for &p in block {
                let idx = match p {
                    p if p > 0 && p as usize <= n => p as usize - 1,
                    p if p < 0 && (-p) as usize <= n => n + (-p) as usize - 1,
                    _ => {
                        return Err(Error::PointOutOfRange {
                            point: p.unsigned_abs() as usize,
                            degree: n,
                        })
                    }
                };
                if raw[idx] != u8::MAX {
                    return Err(Error::Parse(format!("point {p} appears twice")));
                }
                raw[idx] = b as u8;
            }
        }
        if raw[..2 * n].contains(&u8::MAX) {
            return Err(Error::Parse("blocks do not cover every point".into()));
        }
        Ok(Self::from_labels(n, &raw[..2 * n]))
    }

    pub fn identity(n: usize) -> Self {
        let raw: Vec<u8> = (0..2 * n).map(|p| (p % n) as u8).collect();
        Self::from_labels(n, &raw)
    }

    /// The permutation `sigma` as the partition with blocks `{i, (i sigma)'}`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let images: Vec<Option<usize>> = perm.iter().map(|&p| Some(p)).collect();
        Self::embed_partial_perm(&PartialTransformation::new(&images)?)
    }

    /// Blocks `{i, (i t)'}` for i in dom(t), and singletons elsewhere.
    pub fn embed_partial_perm(t: &PartialTransformation) -> Result<Self> {
        let n = t.degree();
        Self::check_degree(n)?;
        if !t.is_partial_perm() {
            let (i, j) = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .find(|&(i, j)| t.image(i).is_some() && t.image(i) == t.image(j))
                .expect("non-injective map has a collision");
            return Err(Error::NotInjective(i, j));
        }
        let mut raw = [0u8; SLOTS];
        let mut next = n as u8;
        for (i, slot) in raw.iter_mut().enumerate().take(n) {
            *slot = i as u8;
        }
        for q in 0..n {
            raw[n + q] = u8::MAX;
        }
        for i in 1..=n {
            if let Some(j) = t.image(i) {
                raw[n + j - 1] = (i - 1) as u8;
            }
        }
        for q in 0..n {
            if raw[n + q] == u8::MAX {
                raw[n + q] = next;
                next += 1;
            }
        }
        Ok(Self::from_labels(n, &raw[..2 * n]))
    }

    /// Blocks `{i, (i+1)'}` for i < n and `{n, 1'}`.
    pub fn rho(n: usize) -> Self {
        Self::embed_partial_perm(&PartialTransformation::cycle(n)).expect("valid degree")
    }

    /// The transposition `(1 2)`.
    pub fn transposition(n: usize) -> Self {
        Self::embed_partial_perm(&PartialTransformation::transposition(n)).expect("valid degree")
    }

    /// Singletons `{i}` and `{i'}`, all other points fixed.
    pub fn pi(n: usize, i: usize) -> Self {
        Self::embed_partial_perm(&PartialTransformation::partial_identity(n, i)).expect("valid degree")
    }

    /// The block `{i, i+1, i', (i+1)'}`, all other points fixed.
    pub fn tau(n: usize, i: usize) -> Self {
        let mut raw: Vec<u8> = (0..2 * n).map(|p| (p % n) as u8).collect();
        raw[i] = (i - 1) as u8;
        raw[n + i] = (i - 1) as u8;
        Self::from_labels(n, &raw)
    }

    /// Blocks `{i, i+1}` and `{i', (i+1)'}`, all other points fixed.
    pub fn jones(n: usize, i: usize) -> Self {
        let mut raw: Vec<u8> = (0..2 * n).map(|p| (p % n) as u8).collect();
        raw[i] = (i - 1) as u8;
        raw[n + i - 1] = n as u8;
        raw[n + i] = n as u8;
        Self::from_labels(n, &raw)
    }

    /// Blocks `{1, 2, 1'}`, `{3, 2', 3'}`, all other points fixed. Needs n ≥ 3.
    pub fn eta(n: usize) -> Self {
        let mut raw: Vec<u8> = (0..2 * n).map(|p| (p % n) as u8).collect();
        raw[1] = 0;
        raw[n + 1] = 2;
        Self::from_labels(n, &raw)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    fn label(&self, p: usize) -> u8 {
        self.blocks[p]
    }

    pub fn block_count(&self) -> usize {
        self.blocks[..2 * self.degree()].iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks as signed points, ordered by label.
    pub fn blocks(&self) -> Vec<Vec<i32>> {
        let n = self.degree();
        let mut out = vec![Vec::new(); self.block_count()];
        for p in 0..2 * n {
            let signed = if p < n { p as i32 + 1 } else { -((p - n) as i32 + 1) };
            out[self.label(p) as usize].push(signed);
        }
        out
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Product via union-find on three layers: the top of `self`, a shared
    /// middle layer, and the bottom of `other`.
    #[inline]
    pub(crate) fn mul(&self, other: &Self) -> Self {
        let n = self.degree();
        let mut dsu = Dsu::new(3 * n);
        let mut first = [u8::MAX; SLOTS];
        for p in 0..2 * n {
            let l = self.label(p) as usize;
            if first[l] == u8::MAX {
                first[l] = p as u8;
            } else {
                dsu.union(first[l], p as u8);
            }
        }
        let mut first = [u8::MAX; SLOTS];
        for q in 0..2 * n {
            let l = other.label(q) as usize;
            let node = (n + q) as u8;
            if first[l] == u8::MAX {
                first[l] = node;
            } else {
                dsu.union(first[l], node);
            }
        }
        let mut raw = [0u8; SLOTS];
        for p in 0..n {
            raw[p] = dsu.find(p as u8);
            raw[n + p] = dsu.find((2 * n + p) as u8);
        }
        Self::from_labels(n, &raw[..2 * n])
    }

    /// Swaps `i` and `i'` in every block.
    pub fn star(&self) -> Self {
        let n = self.degree();
        let mut raw = [0u8; SLOTS];
        for p in 0..n {
            raw[p] = self.label(n + p);
            raw[n + p] = self.label(p);
        }
        Self::from_labels(n, &raw[..2 * n])
    }

    fn half_masks(&self) -> ([u32; SLOTS], [u32; SLOTS]) {
        let n = self.degree();
        let (mut top, mut bottom) = ([0u32; SLOTS], [0u32; SLOTS]);
        for p in 0..n {
            top[self.label(p) as usize] |= 1 << p;
            bottom[self.label(n + p) as usize] |= 1 << p;
        }
        (top, bottom)
    }

    pub fn rank(&self) -> usize {
        let (top, bottom) = self.half_masks();
        (0..self.block_count()).filter(|&b| top[b] != 0 && bottom[b] != 0).count()
    }

    /// Top points lying in transverse blocks.
    pub fn dom(&self) -> PointSet {
        let (top, bottom) = self.half_masks();
        let bits = (0..self.block_count())
            .filter(|&b| bottom[b] != 0)
            .fold(0, |acc, b| acc | top[b]);
        PointSet::from_bits(bits)
    }

    pub fn codom(&self) -> PointSet {
        self.star().dom()
    }

    /// The restriction to the top points, as canonical labels.
    pub fn ker(&self) -> Kernel {
        let n = self.degree();
        Kernel {
            degree: self.degree,
            labels: canonical_labels(&self.blocks[..n]),
        }
    }

    pub fn coker(&self) -> Kernel {
        let n = self.degree();
        Kernel {
            degree: self.degree,
            labels: canonical_labels(&self.blocks[n..2 * n]),
        }
    }

    /// Whether `{points}` (signed) is exactly a block.
    pub fn has_block(&self, points: &[i32]) -> bool {
        self.blocks().iter().any(|b| {
            let mut b = b.clone();
            let mut p = points.to_vec();
            b.sort_unstable();
            p.sort_unstable();
            b == p
        })
    }

    /// Whether no two blocks cross when the points are read in the order
    /// `n' < .. < 1' < 1 < .. < n`.
    pub fn is_planar(&self) -> bool {
        let n = self.degree();
        let mut remaining = [0u8; SLOTS];
        for p in 0..2 * n {
            remaining[self.label(p) as usize] += 1;
        }
        let mut open = [false; SLOTS];
        let mut stack = [0u8; SLOTS];
        let mut top = 0;
        let order = (0..n).rev().map(|q| n + q).chain(0..n);
        for p in order {
            let b = self.label(p);
            if open[b as usize] {
                if stack[top - 1] != b {
                    return false;
                }
            } else {
                open[b as usize] = true;
                stack[top] = b;
                top += 1;
            }
            remaining[b as usize] -= 1;
            if remaining[b as usize] == 0 {
                top -= 1;
            }
        }
        true
    }

    /// Whether `rho^k * self * rho^l` is planar for some k, l.
    pub fn is_annular(&self) -> bool {
        let n = self.degree();
        let powers = rho_powers(n);
        powers
            .iter()
            .any(|r| powers.iter().any(|s| r.mul(self).mul(s).is_planar()))
    }

    pub fn flags(&self) -> PartitionFlags {
        let mut f = self.block_flags();
        if self.is_planar() {
            f |= PartitionFlags::PLANAR | PartitionFlags::ANNULAR;
        } else if self.is_annular() {
            f |= PartitionFlags::ANNULAR;
        }
        f
    }

    /// The flags decided by block shapes alone.
    pub(crate) fn block_flags(&self) -> PartitionFlags {
        let mut f = PartitionFlags::empty();
        let (top, bottom) = self.half_masks();
        let count = self.block_count();
        let sizes = (0..count).map(|b| top[b].count_ones() + bottom[b].count_ones());
        if sizes.clone().all(|s| s <= 2) {
            f |= PartitionFlags::BLOCKS_LE2;
        }
        if sizes.clone().all(|s| s == 2) {
            f |= PartitionFlags::BLOCKS_EQ2;
        }
        if (0..count).all(|b| top[b] != 0 && bottom[b] != 0) {
            f |= PartitionFlags::BLOCK_BIJECTION;
            if (0..count).all(|b| top[b].count_ones() == bottom[b].count_ones()) {
                f |= PartitionFlags::UNIFORM;
            }
        }
        f
    }
}

pub(crate) fn rho_powers(n: usize) -> Vec<Partition> {
    let rho = Partition::rho(n);
    let mut out = vec![Partition::identity(n)];
    for k in 1..n {
        out.push(out[k - 1].mul(&rho));
    }
    out
}

/// An equivalence on one row of points, as canonical labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Kernel {
    degree: u8,
    labels: [u8; SLOTS],
}

impl Kernel {
    pub fn class_of(&self, i: usize) -> u8 {
        self.labels[i - 1]
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.labels[i - 1] == self.labels[j - 1]
    }

    pub fn is_trivial(&self) -> bool {
        let n = self.degree as usize;
        (0..n).all(|i| self.labels[i] as usize == i)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (m, &p) in block.iter().enumerate() {
                if m > 0 {
                    write!(f, ",")?;
                }
                if p > 0 {
                    write!(f, "{p}")?;
                } else {
                    write!(f, "{}'", -p)?;
                }
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses block notation such as `{1,2'},{2,1'}`; the degree is the largest point.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| Error::Parse(format!("expected '{{' at {rest}")))?;
            let end = body
                .find('}')
                .ok_or_else(|| Error::Parse("unclosed block".into()))?;
            let block = body[..end]
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let (num, primed) = match t.strip_suffix('\'') {
                        Some(num) => (num, true),
                        None => (t, false),
                    };
                    let v: i32 = num
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad point {t}")))?;
                    Ok(if primed { -v } else { v })
                })
                .collect::<Result<Vec<i32>>>()?;
            blocks.push(block);
            rest = body[end + 1..].trim_start().trim_start_matches(',').trim_start();
        }
        let n = blocks.iter().flatten().map(|p| p.unsigned_abs() as usize).max().unwrap_or(0);
        Self::from_blocks(n, &blocks)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<i32>>::deserialize(d)?;
        let n = blocks.iter().flatten().map(|p| p.unsigned_abs() as usize).max().unwrap_or(0);
        Self::from_blocks(n, &blocks).map_err(serde::de::Error::custom)
    }
}
