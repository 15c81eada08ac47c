//! Partial transformations of degree at most 15.
//!
//! Maps act on the right and compose left to right: `a.compose(&b)` is "first
//! `a`, then `b`". Points are 1-based in the public API.

pub(crate) mod families;

use std::fmt;
use std::str::FromStr;

use bitflags::bitflags;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::points::PointSet;

pub use families::{enumerate, order_iso, standard_generators, TransformKind};

pub const MAX_DEGREE: usize = 15;
const UNDEF: u8 = 0xF;

bitflags! {
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
    pub struct TransformFlags: u8 {
        const ORDER_PRESERVING = 1;
        const ORDER_REVERSING = 1 << 1;
        const ORIENTATION_PRESERVING = 1 << 2;
        const ORIENTATION_REVERSING = 1 << 3;
        const PARTIAL_PERM = 1 << 4;
        const TOTAL = 1 << 5;
    }
}

/// A partial map on `{1..n}`.
///
/// Images are packed four bits per point with point 1 in the most significant
/// nibble, so the derived ordering is lexicographic on the image sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialTransformation {
    degree: u8,
    packed: u64,
    flags: TransformFlags,
}

#[inline]
fn shift(i: usize) -> u32 {
    60 - 4 * i as u32
}

impl PartialTransformation {
    /// Builds from 0-based images, `UNDEF` marking undefined points. Caller checks ranges.
    fn from_raw(images: &[u8]) -> Self {
        let mut packed = 0u64;
        for (i, &v) in images.iter().enumerate() {
            packed |= (v as u64) << shift(i);
        }
        Self::from_packed(images.len() as u8, packed)
    }

    fn from_packed(degree: u8, packed: u64) -> Self {
        let mut t = PartialTransformation {
            degree,
            packed,
            flags: TransformFlags::empty(),
        };
        t.flags = t.compute_flags();
        t
    }

    /// Builds from 1-based images, `None` for undefined points.
    pub fn new(images: &[Option<usize>]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::BadDegree(n, MAX_DEGREE));
        }
        let mut raw = [UNDEF; MAX_DEGREE];
        for (i, img) in images.iter().enumerate() {
            if let Some(p) = *img {
                if p == 0 || p > n {
                    return Err(Error::PointOutOfRange { point: p, degree: n });
                }
                raw[i] = (p - 1) as u8;
            }
        }
        Ok(Self::from_raw(&raw[..n]))
    }

    /// Builds from a 1-based rule `i -> f(i)`.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        let images: Vec<_> = (1..=n).map(f).collect();
        Self::new(&images)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, Some).expect("valid degree")
    }

    /// The reversal `i -> n - i + 1`.
    pub fn gamma(n: usize) -> Self {
        Self::from_fn(n, |i| Some(n - i + 1)).expect("valid degree")
    }

    /// The n-cycle `i -> i + 1 (mod n)`.
    pub fn cycle(n: usize) -> Self {
        Self::from_fn(n, |i| Some(i % n + 1)).expect("valid degree")
    }

    /// The transposition `(1 2)`; the identity when n = 1.
    pub fn transposition(n: usize) -> Self {
        Self::from_fn(n, |i| match (n, i) {
            (1, _) => Some(1),
            (_, 1) => Some(2),
            (_, 2) => Some(1),
            _ => Some(i),
        })
        .expect("valid degree")
    }

    /// `i -> i + 1` for i ≤ n - 2, `n - 1 -> 1`, n undefined.
    pub fn zeta(n: usize) -> Self {
        Self::from_fn(n, |i| {
            if i == n {
                None
            } else if i == n - 1 {
                Some(1)
            } else {
                Some(i + 1)
            }
        })
        .expect("valid degree")
    }

    /// `i -> n - i` for i < n, n undefined.
    pub fn tau(n: usize) -> Self {
        Self::from_fn(n, |i| if i == n { None } else { Some(n - i) }).expect("valid degree")
    }

    /// The identity restricted to `{1..n} \ {missing}`.
    pub fn partial_identity(n: usize, missing: usize) -> Self {
        Self::from_fn(n, |i| if i == missing { None } else { Some(i) }).expect("valid degree")
    }

    /// The idempotent sending `from` to `to` and fixing everything else.
    pub fn collapse(n: usize, from: usize, to: usize) -> Self {
        Self::from_fn(n, |i| Some(if i == from { to } else { i })).expect("valid degree")
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    fn raw(&self, i: usize) -> u8 {
        ((self.packed >> shift(i)) & 0xF) as u8
    }

    /// Image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> Option<usize> {
        match self.raw(i - 1) {
            UNDEF => None,
            v => Some(v as usize + 1),
        }
    }

    pub fn images(&self) -> Vec<Option<usize>> {
        (1..=self.degree()).map(|i| self.image(i)).collect()
    }

    /// First `self`, then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    #[inline]
    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree, other.degree);
        let mut packed = 0u64;
        for i in 0..self.degree() {
            let a = self.raw(i);
            let c = if a == UNDEF { UNDEF } else { other.raw(a as usize) };
            packed |= (c as u64) << shift(i);
        }
        Self::from_packed(self.degree, packed)
    }

    pub fn dom(&self) -> PointSet {
        (0..self.degree())
            .filter(|&i| self.raw(i) != UNDEF)
            .map(|i| i + 1)
            .collect()
    }

    pub fn im(&self) -> PointSet {
        (0..self.degree())
            .filter_map(|i| match self.raw(i) {
                UNDEF => None,
                v => Some(v as usize + 1),
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.im().len()
    }

    pub fn kernel(&self) -> Kernel {
        let mut labels = [Kernel::OUTSIDE; MAX_DEGREE];
        let mut first_of = [u8::MAX; MAX_DEGREE];
        let mut next = 0u8;
        for i in 0..self.degree() {
            let v = self.raw(i);
            if v == UNDEF {
                continue;
            }
            if first_of[v as usize] == u8::MAX {
                first_of[v as usize] = next;
                next += 1;
            }
            labels[i] = first_of[v as usize];
        }
        Kernel {
            degree: self.degree,
            labels,
        }
    }

    pub fn flags(&self) -> TransformFlags {
        self.flags
    }

    pub fn is_partial_perm(&self) -> bool {
        self.flags.contains(TransformFlags::PARTIAL_PERM)
    }

    pub fn is_total(&self) -> bool {
        self.flags.contains(TransformFlags::TOTAL)
    }

    /// Inverse of a partial permutation.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_partial_perm() {
            return None;
        }
        let mut raw = [UNDEF; MAX_DEGREE];
        for i in 0..self.degree() {
            let v = self.raw(i);
            if v != UNDEF {
                raw[v as usize] = i as u8;
            }
        }
        Some(Self::from_raw(&raw[..self.degree()]))
    }

    fn compute_flags(&self) -> TransformFlags {
        let n = self.degree();
        let mut vals = [0u8; MAX_DEGREE];
        let mut k = 0;
        let mut seen = 0u32;
        let mut injective = true;
        for i in 0..n {
            let v = self.raw(i);
            if v == UNDEF {
                continue;
            }
            if seen >> v & 1 == 1 {
                injective = false;
            }
            seen |= 1 << v;
            vals[k] = v;
            k += 1;
        }
        let v = &vals[..k];
        let mut flags = TransformFlags::empty();
        if k == n {
            flags |= TransformFlags::TOTAL;
        }
        if injective {
            flags |= TransformFlags::PARTIAL_PERM;
        }
        if v.windows(2).all(|w| w[0] <= w[1]) {
            flags |= TransformFlags::ORDER_PRESERVING;
        }
        if v.windows(2).all(|w| w[0] >= w[1]) {
            flags |= TransformFlags::ORDER_REVERSING;
        }
        // Cyclic descents and ascents of the image sequence.
        let (mut desc, mut asc) = (0, 0);
        for i in 0..k {
            let (a, b) = (v[i], v[(i + 1) % k]);
            desc += (a > b) as usize;
            asc += (a < b) as usize;
        }
        if desc <= 1 {
            flags |= TransformFlags::ORIENTATION_PRESERVING;
        }
        if asc <= 1 {
            flags |= TransformFlags::ORIENTATION_REVERSING;
        }
        flags
    }
}

/// The kernel of a partial transformation: a labelling of its domain, points with
/// equal images sharing a label. Labels are assigned in order of first appearance.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Kernel {
    degree: u8,
    labels: [u8; MAX_DEGREE],
}

impl Kernel {
    const OUTSIDE: u8 = u8::MAX;

    /// Label of point `i`, or `u8::MAX` outside the domain.
    pub fn class_of(&self, i: usize) -> u8 {
        self.labels[i - 1]
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.labels[i - 1], self.labels[j - 1]);
        a != Self::OUTSIDE && a == b
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.degree as usize {
            let l = self.labels[i];
            if l == Self::OUTSIDE {
                continue;
            }
            if out.len() <= l as usize {
                out.resize(l as usize + 1, Vec::new());
            }
            out[l as usize].push(i + 1);
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.classes().iter().all(|c| c.len() == 1)
    }
}

impl fmt::Debug for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, img) in self.images().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match img {
                Some(p) => write!(f, "{p}")?,
                None => write!(f, "-")?,
            }
        }
        write!(f, "]")
    }
}

/// Two-row form on one line: `1 2 3 / 2 - 1`.
impl fmt::Display for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let w = n.to_string().len();
        let top: Vec<String> = (1..=n).map(|i| format!("{i:>w$}")).collect();
        let bottom: Vec<String> = self
            .images()
            .iter()
            .map(|img| match img {
                Some(p) => format!("{p:>w$}"),
                None => format!("{:>w$}", "-"),
            })
            .collect();
        write!(f, "{} / {}", top.join(" "), bottom.join(" "))
    }
}

/// Accepts the two-row form with rows separated by `/` or a newline.
impl FromStr for PartialTransformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s
            .split(['/', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .collect();
        let [top, bottom] = rows[..] else {
            return Err(Error::Parse(format!("expected two rows, got {}", rows.len())));
        };
        let top: Vec<&str> = top.split_whitespace().collect();
        let bottom: Vec<&str> = bottom.split_whitespace().collect();
        if top.len() != bottom.len() {
            return Err(Error::Parse("rows have different lengths".into()));
        }
        for (k, t) in top.iter().enumerate() {
            if t.parse::<usize>().ok() != Some(k + 1) {
                return Err(Error::Parse(format!("top row must read 1..n, found {t}")));
            }
        }
        let images = bottom
            .iter()
            .map(|b| match *b {
                "-" => Ok(None),
                b => b
                    .parse::<usize>()
                    .map(Some)
                    .map_err(|_| Error::Parse(format!("bad image {b}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&images)
    }
}

impl Serialize for PartialTransformation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialTransformation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<Option<usize>>::deserialize(d)?;
        Self::new(&images).map_err(serde::de::Error::custom)
    }
}
