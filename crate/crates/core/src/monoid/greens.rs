//! Green's relations from the generator Cayley graphs.

use fixedbitset::FixedBitSet;
use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::FiniteMonoid;
use crate::element::Element;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct JClass {
    pub id: u32,
    pub elements: Vec<u32>,
    pub l_classes: Vec<u32>,
    pub r_classes: Vec<u32>,
    /// Common rank of the elements.
    pub rank: usize,
    pub regular: bool,
    pub h_size: usize,
    pub idempotents: Vec<u32>,
    /// H-classes (by id) that are groups.
    pub group_h: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Greens {
    pub l_of: Vec<u32>,
    pub r_of: Vec<u32>,
    pub h_of: Vec<u32>,
    pub j_of: Vec<u32>,
    pub l_classes: Vec<Vec<u32>>,
    pub r_classes: Vec<Vec<u32>>,
    pub h_classes: Vec<Vec<u32>>,
    pub j_classes: Vec<JClass>,
    h_lr: Vec<(u32, u32)>,
    h_index: FxHashMap<(u32, u32), u32>,
    /// `up[j]` holds every J-class at or above `j`.
    up: Vec<FixedBitSet>,
    /// J-class ids ordered from the top down.
    topo: Vec<u32>,
    unit_class: Option<u32>,
}

/// Labels classes of an SCC decomposition by the position of their least member.
fn scc_labels(len: usize, edges: impl Iterator<Item = (u32, u32)>) -> (Vec<u32>, Vec<Vec<u32>>) {
    let mut g: DiGraph<(), (), u32> = DiGraph::with_capacity(len, 0);
    for _ in 0..len {
        g.add_node(());
    }
    g.extend_with_edges(edges);
    let mut comps: Vec<Vec<u32>> = kosaraju_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<u32> = c.into_iter().map(|n| n.index() as u32).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    let mut label = vec![0u32; len];
    for (i, c) in comps.iter().enumerate() {
        for &x in c {
            label[x as usize] = i as u32;
        }
    }
    (label, comps)
}

/// Relabels by first appearance, so two partitions of the same set compare equal.
pub fn canonical(labels: &[u32]) -> Vec<u32> {
    let mut map: FxHashMap<u32, u32> = FxHashMap::default();
    labels
        .iter()
        .map(|l| {
            let next = map.len() as u32;
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

impl Greens {
    pub(crate) fn compute(m: &FiniteMonoid) -> Greens {
        let len = m.len();
        let right = m.right();
        let left = m.left();
        let right_edges = || {
            right
                .iter()
                .flat_map(|col| col.iter().enumerate().map(|(x, &y)| (x as u32, y)))
        };
        let left_edges = || {
            left.iter()
                .flat_map(|col| col.iter().enumerate().map(|(x, &y)| (x as u32, y)))
        };
        let (r_of, r_classes) = scc_labels(len, right_edges());
        let (l_of, l_classes) = scc_labels(len, left_edges());
        let (j_of, j_members) = scc_labels(len, right_edges().chain(left_edges()));

        let mut h_index: FxHashMap<(u32, u32), u32> = FxHashMap::default();
        let mut h_lr = Vec::new();
        let mut h_classes: Vec<Vec<u32>> = Vec::new();
        let mut h_of = vec![0u32; len];
        for x in 0..len {
            let key = (l_of[x], r_of[x]);
            let id = *h_index.entry(key).or_insert_with(|| {
                h_lr.push(key);
                h_classes.push(Vec::new());
                (h_lr.len() - 1) as u32
            });
            h_classes[id as usize].push(x as u32);
            h_of[x] = id;
        }

        let jn = j_members.len();
        let mut below: Vec<Vec<u32>> = vec![Vec::new(); jn];
        for (x, y) in right_edges().chain(left_edges()) {
            let (a, b) = (j_of[x as usize], j_of[y as usize]);
            if a != b {
                below[a as usize].push(b);
            }
        }
        let mut indeg = vec![0usize; jn];
        for b in below.iter_mut() {
            b.sort_unstable();
            b.dedup();
            for &c in b.iter() {
                indeg[c as usize] += 1;
            }
        }
        let mut topo: Vec<u32> = (0..jn as u32).filter(|&j| indeg[j as usize] == 0).collect();
        let mut k = 0;
        while k < topo.len() {
            let a = topo[k] as usize;
            for &c in &below[a] {
                indeg[c as usize] -= 1;
                if indeg[c as usize] == 0 {
                    topo.push(c);
                }
            }
            k += 1;
        }
        debug_assert_eq!(topo.len(), jn);
        let mut up: Vec<FixedBitSet> = (0..jn)
            .map(|j| {
                let mut s = FixedBitSet::with_capacity(jn);
                s.insert(j);
                s
            })
            .collect();
        for &a in &topo {
            let ua = up[a as usize].clone();
            for &c in &below[a as usize] {
                up[c as usize].union_with(&ua);
            }
        }

        let j_classes: Vec<JClass> = j_members
            .into_iter()
            .enumerate()
            .map(|(id, elements)| {
                let mut ls: Vec<u32> = elements.iter().map(|&x| l_of[x as usize]).collect();
                let mut rs: Vec<u32> = elements.iter().map(|&x| r_of[x as usize]).collect();
                ls.sort_unstable();
                ls.dedup();
                rs.sort_unstable();
                rs.dedup();
                let idempotents: Vec<u32> = elements.iter().copied().filter(|&x| m.is_idempotent(x)).collect();
                let mut group_h: Vec<u32> = idempotents.iter().map(|&e| h_of[e as usize]).collect();
                group_h.sort_unstable();
                let h_size = h_classes[h_of[elements[0] as usize] as usize].len();
                JClass {
                    id: id as u32,
                    rank: m.element(elements[0]).rank(),
                    regular: !idempotents.is_empty(),
                    h_size,
                    l_classes: ls,
                    r_classes: rs,
                    idempotents,
                    group_h,
                    elements,
                }
            })
            .collect();
        let unit_class = m.identity().map(|e| j_of[e as usize]);
        Greens {
            l_of,
            r_of,
            h_of,
            j_of,
            l_classes,
            r_classes,
            h_classes,
            j_classes,
            h_lr,
            h_index,
            up,
            topo,
            unit_class,
        }
    }

    pub fn j_class(&self, j: u32) -> &JClass {
        &self.j_classes[j as usize]
    }

    pub fn h_lr(&self, h: u32) -> (u32, u32) {
        self.h_lr[h as usize]
    }

    pub fn h_class_at(&self, l: u32, r: u32) -> Option<u32> {
        self.h_index.get(&(l, r)).copied()
    }

    /// Whether J-class `a` is at or above J-class `b`.
    pub fn is_above(&self, a: u32, b: u32) -> bool {
        self.up[b as usize].contains(a as usize)
    }

    /// J-classes at or above `j`.
    pub fn up_set(&self, j: u32) -> &FixedBitSet {
        &self.up[j as usize]
    }

    /// J-class ids, top first.
    pub fn top_down(&self) -> &[u32] {
        &self.topo
    }

    pub fn unit_class(&self) -> Option<u32> {
        self.unit_class
    }

    pub fn units(&self) -> &[u32] {
        match self.unit_class {
            Some(u) => &self.j_classes[u as usize].elements,
            None => &[],
        }
    }

    /// Rejects `j` unless it is directly below the group of units only.
    pub fn check_covered(&self, j: u32) -> Result<()> {
        let above: Vec<u32> = self.up[j as usize]
            .ones()
            .map(|a| a as u32)
            .filter(|&a| a != j)
            .collect();
        match self.unit_class {
            Some(u) if u != j && above == [u] => Ok(()),
            _ => Err(Error::NotCovered { jclass: j as usize, above: above.len() }),
        }
    }

    /// J-classes that are not the units and only have the units above.
    pub fn covered_classes(&self) -> Vec<u32> {
        (0..self.j_classes.len() as u32)
            .filter(|&j| self.check_covered(j).is_ok())
            .collect()
    }

    /// Orbits of the unit group on the L-classes and R-classes of `j`,
    /// through right and left multiplication respectively.
    pub fn unit_orbits(&self, m: &FiniteMonoid, j: u32) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
        let unit_gens: Vec<usize> = m
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| self.unit_class == Some(self.j_of[**g as usize]))
            .map(|(k, _)| k)
            .collect();
        let class = &self.j_classes[j as usize];
        let orbit = |classes: &[u32], of: &[u32], reps: &[Vec<u32>], table: &[Vec<u32>]| {
            let pos: FxHashMap<u32, usize> = classes.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            let mut parent: Vec<usize> = (0..classes.len()).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            for (i, &c) in classes.iter().enumerate() {
                let x = reps[c as usize][0];
                for &g in &unit_gens {
                    let y = table[g][x as usize];
                    let k = pos[&of[y as usize]];
                    let (a, b) = (find(&mut parent, i), find(&mut parent, k));
                    parent[a] = b;
                }
            }
            let mut groups: FxHashMap<usize, Vec<u32>> = FxHashMap::default();
            for (i, &c) in classes.iter().enumerate() {
                let r = find(&mut parent, i);
                groups.entry(r).or_default().push(c);
            }
            let mut out: Vec<Vec<u32>> = groups.into_values().collect();
            out.sort_unstable();
            out
        };
        let l = orbit(&class.l_classes, &self.l_of, &self.l_classes, m.right());
        let r = orbit(&class.r_classes, &self.r_of, &self.r_classes, m.left());
        (l, r)
    }
}

/// Which relation an attribute route describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    L,
    R,
    J,
}

/// Green's classes read off element attributes (image, domain and kernel,
/// rank). In the uniform block bijections the J-classes are finer than rank:
/// they are determined by the multiset of block sizes.
pub fn attribute_labels(m: &FiniteMonoid, rel: Relation) -> Vec<u32> {
    let uniform = m.family() == Some(crate::element::Family::Diagram(crate::partition::DiagramKind::F));
    let mut keys: FxHashMap<Vec<u64>, u32> = FxHashMap::default();
    m.elements()
        .iter()
        .map(|x| {
            let key: Vec<u64> = match (x, rel) {
                (Element::Partition(p), Relation::J) if uniform => {
                    let mut sizes: Vec<u64> = p.blocks().iter().map(|b| b.len() as u64).collect();
                    sizes.sort_unstable();
                    sizes
                }
                (_, Relation::J) => vec![x.rank() as u64],
                (Element::Transform(t), Relation::L) => vec![t.im().bits() as u64],
                (Element::Transform(t), Relation::R) => {
                    let ker = t.kernel();
                    let mut v = vec![t.dom().bits() as u64];
                    v.extend((1..=t.degree()).map(|i| ker.class_of(i) as u64));
                    v
                }
                (Element::Partition(p), Relation::L) => {
                    let ker = p.coker();
                    let mut v = vec![p.codom().bits() as u64];
                    v.extend((1..=p.degree()).map(|i| ker.class_of(i) as u64));
                    v
                }
                (Element::Partition(p), Relation::R) => {
                    let ker = p.ker();
                    let mut v = vec![p.dom().bits() as u64];
                    v.extend((1..=p.degree()).map(|i| ker.class_of(i) as u64));
                    v
                }
            };
            let next = keys.len() as u32;
            *keys.entry(key).or_insert(next)
        })
        .collect()
}

/// Compares the generic Green's structure with the attribute route.
pub fn attributes_agree(m: &FiniteMonoid, rel: Relation) -> bool {
    let g = m.greens();
    let generic = match rel {
        Relation::L => &g.l_of,
        Relation::R => &g.r_of,
        Relation::J => &g.j_of,
    };
    canonical(generic) == canonical(&attribute_labels(m, rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Family;
    use crate::monoid::Budget;
    use crate::partition::DiagramKind;
    use crate::transform::{PartialTransformation, TransformKind};

    fn monoid(f: Family, n: usize) -> FiniteMonoid {
        FiniteMonoid::enumerate(f, n, &Budget::default()).unwrap()
    }

    #[test]
    fn attribute_route_agrees_on_full_families() {
        use TransformKind::*;
        for k in [PT, T, I, O, PO, POI, OD, POD, PODI, OP, POP, POPI, OR, POR, PORI] {
            for n in 1..=4 {
                let m = monoid(Family::Transform(k), n);
                for rel in [Relation::L, Relation::R, Relation::J] {
                    assert!(attributes_agree(&m, rel), "{k} {n} {rel:?}");
                }
            }
        }
        for k in [DiagramKind::P, DiagramKind::PB, DiagramKind::B, DiagramKind::M, DiagramKind::J, DiagramKind::PP] {
            for n in 1..=3 {
                let m = monoid(Family::Diagram(k), n);
                for rel in [Relation::L, Relation::R, Relation::J] {
                    assert!(attributes_agree(&m, rel), "{k} {n} {rel:?}");
                }
            }
        }
    }

    #[test]
    fn j_classes_of_full_transformation_monoid() {
        let m = monoid(Family::Transform(TransformKind::T), 4);
        let g = m.greens();
        assert_eq!(g.j_classes.len(), 4);
        assert_eq!(g.units().len(), 24);
        let covered = g.covered_classes();
        assert_eq!(covered.len(), 1);
        let j = g.j_class(covered[0]);
        assert_eq!(j.rank, 3);
        assert_eq!(j.l_classes.len(), 4);
        assert_eq!(j.r_classes.len(), 6);
        assert_eq!(j.h_size, 6);
        assert!(j.regular);
    }

    #[test]
    fn h_classes_have_uniform_size_inside_a_j_class() {
        for f in Family::all() {
            for n in 1..=3 {
                let m = monoid(f, n);
                let g = m.greens();
                for j in &g.j_classes {
                    for &x in &j.elements {
                        assert_eq!(g.h_classes[g.h_of[x as usize] as usize].len(), j.h_size);
                    }
                    assert_eq!(j.elements.len(), j.l_classes.len() * j.r_classes.len() * j.h_size);
                }
            }
        }
    }

    #[test]
    fn order_is_consistent_with_products() {
        let m = monoid(Family::Transform(TransformKind::PO), 3);
        let g = m.greens();
        for x in 0..m.len() as u32 {
            for y in 0..m.len() as u32 {
                let p = m.mul(x, y);
                assert!(g.is_above(g.j_of[x as usize], g.j_of[p as usize]));
                assert!(g.is_above(g.j_of[y as usize], g.j_of[p as usize]));
            }
        }
    }

    #[test]
    fn unit_orbits_of_symmetric_action() {
        // In PT_3 a unit acting on the left moves the domain of an element by its inverse.
        let m = monoid(Family::Transform(TransformKind::PT), 3);
        let g = m.greens();
        let sigma = PartialTransformation::cycle(3);
        for x in m.elements() {
            let t = *x.as_transform().unwrap();
            let lhs = sigma.mul(&t).dom();
            let inv = sigma.inverse().unwrap();
            let rhs: crate::points::PointSet = t.dom().iter().map(|p| inv.image(p).unwrap()).collect();
            assert_eq!(lhs, rhs);
        }
        for &j in &g.covered_classes() {
            let (l, r) = g.unit_orbits(&m, j);
            assert!(!l.is_empty() && !r.is_empty());
        }
        let o = monoid(Family::Transform(TransformKind::O), 4);
        let og = o.greens();
        let j = og.covered_classes()[0];
        let (l, r) = og.unit_orbits(&o, j);
        assert_eq!(l.len(), og.j_class(j).l_classes.len());
        assert_eq!(r.len(), og.j_class(j).r_classes.len());
    }
}
