use std::fmt;

use super::size_bound;
use crate::bitset::VertexSet;
use crate::graph::WeightedGraph;

/// No connected dominating set fits within the size bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundExceeded {
    pub bound: usize,
}

impl fmt::Display for BoundExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no connected dominating set with at most {} vertices", self.bound)
    }
}

impl std::error::Error for BoundExceeded {}

/// Smallest connected dominating set of `c` with at most
/// `size_bound(k, r)` vertices; among equal sizes the lexicographically
/// first. The empty graph is dominated by the empty set.
pub fn find_small_connected_dominating_set(c: &WeightedGraph, k: usize, r: usize) -> Result<VertexSet, BoundExceeded> {
    let n = c.n();
    if n == 0 {
        return Ok(VertexSet::new(0));
    }
    let bound = size_bound(k, r);
    let all = c.vertex_set();
    let mut pick = Vec::new();
    for size in 1..=bound.min(n) {
        if let Some(s) = combos(c, &all, 0, size, &mut pick) {
            return Ok(s);
        }
    }
    Err(BoundExceeded { bound })
}

fn combos(c: &WeightedGraph, all: &VertexSet, from: usize, size: usize, pick: &mut Vec<usize>) -> Option<VertexSet> {
    if pick.len() == size {
        let s = VertexSet::from_iter_sized(c.n(), pick.iter().copied());
        return (c.is_connected_set(&s) && c.closed_neighbourhood(&s) == *all).then_some(s);
    }
    for v in from..c.n() {
        pick.push(v);
        let found = combos(c, all, v + 1, size, pick);
        pick.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
