//! Immutable vertex-weighted simple graphs on dense indices.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

pub type Weight = u64;

/// Simple undirected graph with nonnegative integer vertex weights.
///
/// Vertices are `0..n`. Adjacency is stored as one neighbour bitset per
/// vertex and is symmetric and irreflexive by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    adj: Vec<VertexSet>,
    weights: Vec<Weight>,
}

/// Checked sum of weights.
pub fn checked_weight_sum<I: IntoIterator<Item = Weight>>(it: I) -> Result<Weight> {
    it.into_iter()
        .try_fold(0u64, |acc, w| acc.checked_add(w))
        .ok_or(Error::WeightOverflow)
}

impl WeightedGraph {
    /// Builds a graph from per-vertex weights and an edge list.
    /// Repeated edges are merged.
    pub fn from_edges(weights: Vec<Weight>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = weights.len();
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(WeightedGraph { adj, weights })
    }

    /// Unit-weight graph.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(vec![1; n], edges)
    }

    pub fn empty(n: usize) -> Self {
        WeightedGraph {
            adj: vec![VertexSet::new(n); n],
            weights: vec![1; n],
        }
    }

    /// Same graph with a new weight vector.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != self.n() {
            return Err(Error::WeightCount {
                got: weights.len(),
                expected: self.n(),
            });
        }
        Ok(WeightedGraph {
            adj: self.adj.clone(),
            weights,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn weight(&self, v: usize) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.last() {
            Some(v) if v >= self.n() => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            }),
            _ => Ok(()),
        }
    }

    pub fn set_weight(&self, s: &VertexSet) -> Result<Weight> {
        checked_weight_sum(s.iter().map(|v| self.weights[v]))
    }

    /// Union of the neighbourhoods of `s`, excluding `s` itself.
    pub fn neighbourhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.empty_set();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(s);
        out
    }

    /// `s` together with its neighbourhood.
    pub fn closed_neighbourhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// Whether `G[s]` is connected. The empty set is not.
    pub fn is_connected_set(&self, s: &VertexSet) -> bool {
        let Some(start) = s.first() else {
            return false;
        };
        self.reach_within(start, s).len() == s.len()
    }

    /// Vertices reachable from `start` inside `G[within]`.
    pub fn reach_within(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(self.n(), start);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = self.empty_set();
            for v in &frontier {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(within);
            next.difference_with(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen
    }

    /// `s` dominates `t` if every vertex of `t` is in `s` or has a neighbour in `s`.
    pub fn dominates(&self, s: &VertexSet, t: &VertexSet) -> bool {
        t.is_subset(&self.closed_neighbourhood(s))
    }

    /// Whether `x` and `y` are disjoint with no edge between them.
    pub fn is_anticomplete(&self, x: &VertexSet, y: &VertexSet) -> bool {
        x.is_disjoint(y) && x.iter().all(|v| self.adj[v].is_disjoint(y))
    }

    /// Connected components in ascending order of their minimum vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertex_set())
    }

    /// Connected components of `G[within]` in ascending order of minimum vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut rest = within.clone();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reach_within(v, within);
            rest.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// `G[s]` with vertices renumbered in ascending order; also returns the
    /// map from new indices to old ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(WeightedGraph, Vec<usize>)> {
        self.check_set(s)?;
        let map = s.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let m = map.len();
        let adj = map
            .iter()
            .map(|&old| VertexSet::from_iter_sized(m, self.adj[old].iter().filter(|&u| s.contains(u)).map(|u| index[u])))
            .collect();
        let weights = map.iter().map(|&old| self.weights[old]).collect();
        Ok((WeightedGraph { adj, weights }, map))
    }

    /// `G/uv`: `u` and `v` are removed and a new vertex `w` adjacent to
    /// `(N(u) ∪ N(v)) \ {u, v}` is appended last. Remaining vertices keep
    /// their relative order. The new vertex has weight 0.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<WeightedGraph> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut keep = self.vertex_set();
        keep.remove(u);
        keep.remove(v);
        let old: Vec<usize> = keep.to_vec();
        let w = old.len();
        let mut index = vec![usize::MAX; n];
        for (new, &o) in old.iter().enumerate() {
            index[o] = new;
        }
        index[u] = w;
        index[v] = w;
        let mut edges = Vec::new();
        for (a, b) in self.edges() {
            let (x, y) = (index[a], index[b]);
            if x != y {
                edges.push((x, y));
            }
        }
        let mut weights: Vec<Weight> = old.iter().map(|&o| self.weights[o]).collect();
        weights.push(0);
        WeightedGraph::from_edges(weights, &edges)
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &WeightedGraph) -> WeightedGraph {
        let n = self.n();
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(a, b)| (a + n, b + n)));
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        WeightedGraph::from_edges(weights, &edges).expect("valid by construction")
    }

    /// Adds one vertex adjacent to `nbrs`.
    pub fn add_vertex(&self, weight: Weight, nbrs: &[usize]) -> Result<WeightedGraph> {
        let n = self.n();
        let mut edges = self.edges();
        edges.extend(nbrs.iter().map(|&u| (u, n)));
        let mut weights = self.weights.clone();
        weights.push(weight);
        WeightedGraph::from_edges(weights, &edges)
    }
}

/// Small named graphs used throughout the tests and examples.
pub mod named {
    use super::WeightedGraph;

    pub fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedGraph::unweighted(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> WeightedGraph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        WeightedGraph::unweighted(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        WeightedGraph::unweighted(n, &edges).unwrap()
    }

    /// `K_{1,leaves}` with the centre at index 0.
    pub fn star(leaves: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        WeightedGraph::unweighted(leaves + 1, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_iter_sized(n, v.iter().copied())
    }

    #[test]
    fn induced_subgraph_examples() {
        let (p3, map) = cycle(5).induced_subgraph(&set(5, &[0, 1, 2])).unwrap();
        assert_eq!(p3, path(3));
        assert_eq!(map, vec![0, 1, 2]);

        let (e, map) = cycle(5).induced_subgraph(&set(5, &[])).unwrap();
        assert_eq!(e.n(), 0);
        assert!(map.is_empty());

        let (k2, _) = complete(4).induced_subgraph(&set(4, &[0, 2])).unwrap();
        assert_eq!(k2, complete(2));
    }

    #[test]
    fn induced_subgraph_rejects_out_of_range() {
        let s = set(10, &[0, 9]);
        assert!(matches!(
            path(3).induced_subgraph(&s),
            Err(Error::VertexOutOfRange { vertex: 9, .. })
        ));
    }

    #[test]
    fn induced_subgraph_of_everything_is_identity() {
        let g = cycle(6).with_weights(vec![3, 1, 4, 1, 5, 9]).unwrap();
        let (h, map) = g.induced_subgraph(&g.vertex_set()).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn contraction_examples() {
        let g = path(3).contract_edge(0, 1).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(1), 0);

        let g = complete(3).contract_edge(1, 2).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);

        let g = cycle(4).contract_edge(0, 1).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!((0..3).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn contraction_requires_an_edge() {
        assert!(matches!(path(3).contract_edge(0, 2), Err(Error::NotAnEdge(0, 2))));
    }

    #[test]
    fn anticomplete_examples() {
        let c5 = cycle(5);
        assert!(c5.is_anticomplete(&set(5, &[0]), &set(5, &[2, 3])));
        assert!(!c5.is_anticomplete(&set(5, &[0]), &set(5, &[1])));
        assert!(c5.is_anticomplete(&set(5, &[]), &c5.vertex_set()));
        assert!(!c5.is_anticomplete(&set(5, &[2]), &set(5, &[2])));
    }

    #[test]
    fn components_examples() {
        let g = path(5).disjoint_union(&path(1));
        let comps = g.connected_components();
        assert_eq!(comps.iter().map(VertexSet::len).collect::<Vec<_>>(), vec![5, 1]);
        assert!(WeightedGraph::empty(0).connected_components().is_empty());
        assert_eq!(complete(4).connected_components().len(), 1);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(WeightedGraph::unweighted(2, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(WeightedGraph::unweighted(2, &[(0, 2)]).is_err());
        let g = WeightedGraph::unweighted(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn weight_overflow_is_an_error() {
        let g = WeightedGraph::from_edges(vec![u64::MAX, 1], &[]).unwrap();
        assert!(matches!(g.set_weight(&g.vertex_set()), Err(Error::WeightOverflow)));
    }
}
