//! The bipartite graph of unit orbits on the L- and R-classes of a J-class,
//! and maximal independent sets of small graphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

/// A simple graph on at most 128 vertices, as adjacency masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<u128>,
}

impl Graph {
    pub fn new(order: usize) -> Result<Self> {
        if order > 128 {
            return Err(Error::Capacity {
                what: "graph vertices".into(),
                bound: 128,
            });
        }
        Ok(Graph { adj: vec![0; order] })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].count_ones() as usize
    }

    pub fn neighbours(&self, a: usize) -> u128 {
        self.adj[a]
    }

    /// The path on vertices `0..order`.
    pub fn path(order: usize) -> Result<Self> {
        let mut g = Self::new(order)?;
        for v in 1..order {
            g.add_edge(v - 1, v);
        }
        Ok(g)
    }

    pub fn is_independent(&self, set: u128) -> bool {
        (0..self.order()).all(|v| set >> v & 1 == 0 || self.adj[v] & set == 0)
    }

    pub fn is_maximal_independent(&self, set: u128) -> bool {
        self.is_independent(set)
            && (0..self.order()).all(|v| set >> v & 1 == 1 || self.adj[v] & set != 0)
    }

    /// All maximal independent sets, in increasing numeric order of their masks.
    pub fn maximal_independent_sets(&self) -> Vec<u128> {
        let n = self.order();
        // last[v]: highest-numbered neighbour of v, so an excluded v can be
        // abandoned once the search passes it without a chosen neighbour.
        let last: Vec<Option<usize>> = self
            .adj
            .iter()
            .map(|&m| (m != 0).then(|| 127 - m.leading_zeros() as usize))
            .collect();
        let mut out = Vec::new();
        self.branch(0, 0, &last, n, &mut out);
        out.sort_unstable();
        out
    }

    fn branch(&self, v: usize, chosen: u128, last: &[Option<usize>], n: usize, out: &mut Vec<u128>) {
        // Every excluded vertex whose neighbourhood is already decided must be dominated.
        for w in 0..v {
            if chosen >> w & 1 == 0 && self.adj[w] & chosen == 0 {
                match last[w] {
                    None => return,
                    Some(l) if l < v => return,
                    _ => {}
                }
            }
        }
        if v == n {
            out.push(chosen);
            return;
        }
        if self.adj[v] & chosen == 0 {
            self.branch(v + 1, chosen | 1 << v, last, n, out);
        }
        self.branch(v + 1, chosen, last, n, out);
    }
}

/// The orbit graph of a J-class covered by the group of units.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaGraph {
    pub jclass: u32,
    /// Each L-vertex lists the L-class ids of its orbit.
    pub l_vertices: Vec<Vec<u32>>,
    /// Each R-vertex lists the R-class ids of its orbit.
    pub r_vertices: Vec<Vec<u32>>,
    /// Pairs (L-vertex, R-vertex).
    pub edges: Vec<(usize, usize)>,
}

impl DeltaGraph {
    pub fn build(m: &FiniteMonoid, j: u32) -> Result<Self> {
        let g = m.greens();
        g.check_covered(j)?;
        let class = g.j_class(j);
        if !class.regular {
            return Err(Error::NotRegular(j as usize));
        }
        let (l_vertices, r_vertices) = g.unit_orbits(m, j);
        let vertex_of = |orbits: &[Vec<u32>], c: u32| orbits.iter().position(|o| o.contains(&c)).unwrap();
        let mut edges: Vec<(usize, usize)> = class
            .group_h
            .iter()
            .map(|&h| {
                let (l, r) = g.h_lr(h);
                (vertex_of(&l_vertices, l), vertex_of(&r_vertices, r))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Ok(DeltaGraph {
            jclass: j,
            l_vertices,
            r_vertices,
            edges,
        })
    }

    /// Built from orbit counts and an edge rule, without a host monoid.
    pub fn abstract_graph(l: usize, r: usize, edge: impl Fn(usize, usize) -> bool) -> Self {
        let edges = (0..l)
            .flat_map(|a| (0..r).map(move |b| (a, b)))
            .filter(|&(a, b)| edge(a, b))
            .collect();
        DeltaGraph {
            jclass: 0,
            l_vertices: (0..l as u32).map(|i| vec![i]).collect(),
            r_vertices: (0..r as u32).map(|i| vec![i]).collect(),
            edges,
        }
    }

    /// The graph for the Jones monoid of degree `n`: `L_i ~ R_j` iff `|i - j| <= 1`.
    pub fn jones(n: usize) -> Self {
        Self::abstract_graph(n - 1, n - 1, |a, b| a.abs_diff(b) <= 1)
    }

    pub fn l_count(&self) -> usize {
        self.l_vertices.len()
    }

    pub fn r_count(&self) -> usize {
        self.r_vertices.len()
    }

    /// L-vertices are `0..l`, R-vertices follow.
    pub fn graph(&self) -> Result<Graph> {
        let l = self.l_count();
        let mut g = Graph::new(l + self.r_count())?;
        for &(a, b) in &self.edges {
            g.add_edge(a, l + b);
        }
        Ok(g)
    }

    pub fn l_mask(&self) -> u128 {
        (1u128 << self.l_count()) - 1
    }

    pub fn r_mask(&self) -> u128 {
        ((1u128 << self.r_count()) - 1) << self.l_count()
    }

    /// Maximal independent sets other than the two bicomponents.
    pub fn rectangles(&self) -> Result<Vec<u128>> {
        let (l, r) = (self.l_mask(), self.r_mask());
        Ok(self
            .graph()?
            .maximal_independent_sets()
            .into_iter()
            .filter(|&s| s != l && s != r)
            .collect())
    }

    /// L-vertices not adjacent to any R-vertex of degree 1.
    pub fn removable_l(&self) -> Result<Vec<usize>> {
        let g = self.graph()?;
        let l = self.l_count();
        Ok((0..l)
            .filter(|&a| (0..self.r_count()).all(|b| !g.adjacent(a, l + b) || g.degree(l + b) >= 2))
            .filter(|_| l >= 2)
            .collect())
    }

    /// R-vertices not adjacent to any L-vertex of degree 1.
    pub fn removable_r(&self) -> Result<Vec<usize>> {
        let g = self.graph()?;
        let l = self.l_count();
        Ok((0..self.r_count())
            .filter(|&b| (0..l).all(|a| !g.adjacent(a, l + b) || g.degree(a) >= 2))
            .filter(|_| self.r_count() >= 2)
            .collect())
    }
}

/// Terms `A_1..A_k` of `A_1 = 1, A_2 = A_3 = 2, A_k = A_{k-2} + A_{k-3}`.
pub fn padovan(k: usize) -> u64 {
    let mut a = vec![0u64, 1, 2, 2];
    while a.len() <= k {
        let m = a.len();
        a.push(a[m - 2] + a[m - 3]);
    }
    a[k]
}

/// `F_1 = F_2 = 1`, `F_k = F_{k-1} + F_{k-2}`.
pub fn fibonacci(k: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Family;
    use crate::monoid::Budget;
    use crate::transform::TransformKind;

    #[test]
    fn path_of_order_five() {
        let g = Graph::path(5).unwrap();
        let sets = g.maximal_independent_sets();
        let as_lists: Vec<Vec<usize>> = sets
            .iter()
            .map(|s| (0..5).filter(|v| s >> v & 1 == 1).map(|v| v + 1).collect())
            .collect();
        let mut expected = vec![vec![1, 3, 5], vec![1, 4], vec![2, 4], vec![2, 5]];
        expected.sort();
        let mut got = as_lists.clone();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=10 {
            let g = Graph::path(n).unwrap();
            let brute: Vec<u128> = (0..1u128 << n).filter(|&s| g.is_maximal_independent(s)).collect();
            assert_eq!(g.maximal_independent_sets(), brute);
        }
        let d = DeltaGraph::jones(5).graph().unwrap();
        let brute: Vec<u128> = (0..1u128 << 8).filter(|&s| d.is_maximal_independent(s)).collect();
        assert_eq!(d.maximal_independent_sets(), brute);
    }

    #[test]
    fn complete_bipartite_has_only_bicomponents() {
        let d = DeltaGraph::abstract_graph(3, 4, |_, _| true);
        assert!(d.rectangles().unwrap().is_empty());
        assert_eq!(d.graph().unwrap().maximal_independent_sets().len(), 2);
    }

    #[test]
    fn sequences() {
        assert_eq!((1..=8).map(padovan).collect::<Vec<_>>(), vec![1, 2, 2, 3, 4, 5, 7, 9]);
        assert_eq!((1..=8).map(fibonacci).collect::<Vec<_>>(), vec![1, 1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn jones_graph_counts() {
        for (n, want) in [(4, 4), (5, 6), (6, 10)] {
            assert_eq!(DeltaGraph::jones(n).graph().unwrap().maximal_independent_sets().len(), want);
        }
    }

    #[test]
    fn delta_of_partial_transformations() {
        let m = FiniteMonoid::enumerate(Family::Transform(TransformKind::PT), 3, &Budget::default()).unwrap();
        let j = m.greens().covered_classes()[0];
        let d = DeltaGraph::build(&m, j).unwrap();
        assert_eq!((d.l_count(), d.r_count(), d.edges.len()), (1, 2, 2));
    }

    #[test]
    fn delta_of_order_preserving_is_a_path() {
        for n in 2..=5 {
            let m = FiniteMonoid::enumerate(Family::Transform(TransformKind::O), n, &Budget::default()).unwrap();
            let j = m.greens().covered_classes()[0];
            let g = DeltaGraph::build(&m, j).unwrap().graph().unwrap();
            assert_eq!(g.order(), 2 * n - 1);
            let degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
            assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 2);
            assert!(degrees.iter().all(|&d| d <= 2));
            assert_eq!(degrees.iter().sum::<usize>(), 2 * (2 * n - 2));
        }
    }

    #[test]
    fn uncovered_class_is_refused() {
        let m = FiniteMonoid::enumerate(Family::Transform(TransformKind::T), 3, &Budget::default()).unwrap();
        let g = m.greens();
        let low = (0..g.j_classes.len() as u32).find(|&j| g.j_class(j).rank == 1).unwrap();
        assert!(matches!(DeltaGraph::build(&m, low), Err(Error::NotCovered { .. })));
    }
}
