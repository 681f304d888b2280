//! Detection of induced `P5 + rK1`.
//!
//! Induced P5s are enumerated by an ordered depth-first search: a partial
//! path `p0 .. pj` is extended by a neighbour of `pj` that is adjacent to
//! no earlier path vertex. For each complete path the non-neighbourhood is
//! searched for an independent set of `r` vertices.

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::graph::WeightedGraph;

/// The linear forest `P5 + rK1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForbiddenPattern {
    pub r: usize,
}

impl ForbiddenPattern {
    pub const PATH_LEN: usize = 5;

    pub fn order(&self) -> usize {
        Self::PATH_LEN + self.r
    }
}

/// An induced copy of `P5 + rK1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub path: [usize; 5],
    pub isolated: Vec<usize>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "path {:?}", self.path)?;
        if !self.isolated.is_empty() {
            write!(f, " + isolated {:?}", self.isolated)?;
        }
        Ok(())
    }
}

impl Witness {
    /// Re-checks the witness edge by edge against `g`.
    pub fn verify(&self, g: &WeightedGraph, r: usize) -> bool {
        let n = g.n();
        let mut all: Vec<usize> = self.path.to_vec();
        all.extend_from_slice(&self.isolated);
        if self.isolated.len() != r || all.iter().any(|&v| v >= n) {
            return false;
        }
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != all.len() {
            return false;
        }
        for (i, &a) in all.iter().enumerate() {
            for (j, &b) in all.iter().enumerate().skip(i + 1) {
                let expected = j < 5 && j == i + 1;
                if g.has_edge(a, b) != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Calls `visit` on every induced P5 as an ordered path with `p0 < p4`,
/// in ascending lexicographic order of the path.
pub fn for_each_induced_p5(
    g: &WeightedGraph,
    mut visit: impl FnMut(&[usize; 5]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = g.n();
    let mut path = [0usize; 5];
    for start in 0..n {
        path[0] = start;
        // `blocked` holds the path so far plus neighbours of all but the last vertex.
        let blocked = VertexSet::singleton(n, start);
        extend(g, &mut path, 1, &blocked, &mut visit)?;
    }
    ControlFlow::Continue(())
}

fn extend(
    g: &WeightedGraph,
    path: &mut [usize; 5],
    len: usize,
    blocked: &VertexSet,
    visit: &mut impl FnMut(&[usize; 5]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if len == 5 {
        if path[0] < path[4] {
            visit(path)?;
        }
        return ControlFlow::Continue(());
    }
    let last = path[len - 1];
    let candidates = g.neighbours(last).difference(blocked);
    // every candidate is a neighbour of `last`, hence already blocked below
    let next_blocked = blocked.union(g.neighbours(last));
    for x in &candidates {
        path[len] = x;
        extend(g, path, len + 1, &next_blocked, visit)?;
    }
    ControlFlow::Continue(())
}

/// Some induced P5, searching in ascending vertex order.
pub fn find_induced_p5(g: &WeightedGraph) -> Option<Witness> {
    let mut found = None;
    let _ = for_each_induced_p5(g, |p| {
        found = Some(Witness {
            path: *p,
            isolated: Vec::new(),
        });
        ControlFlow::Break(())
    });
    found
}

/// `None` iff `g` is `(P5 + rK1)`-free; otherwise a witness.
pub fn check_free(g: &WeightedGraph, r: usize) -> Option<Witness> {
    let mut found = None;
    let _ = for_each_induced_p5(g, |p| {
        let mut around = g.empty_set();
        for &v in p {
            around.insert(v);
            around.union_with(g.neighbours(v));
        }
        let rest = g.vertex_set().difference(&around);
        if rest.len() < r {
            return ControlFlow::Continue(());
        }
        let mut chosen = Vec::with_capacity(r);
        if independent_subset(g, &rest, r, &mut chosen) {
            found = Some(Witness {
                path: *p,
                isolated: chosen,
            });
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// Greedy-first backtracking search for `need` pairwise non-adjacent
/// vertices in `pool`; the smallest available vertex is tried first.
fn independent_subset(g: &WeightedGraph, pool: &VertexSet, need: usize, chosen: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    if pool.len() < need {
        return false;
    }
    for v in pool {
        // only vertices after v, so each set is visited once
        let rest = VertexSet::from_iter_sized(
            g.n(),
            pool.iter().filter(|&u| u > v && !g.has_edge(u, v)),
        );
        chosen.push(v);
        if independent_subset(g, &rest, need - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn p5_examples() {
        let w = find_induced_p5(&path(5)).unwrap();
        assert_eq!(w.path, [0, 1, 2, 3, 4]);
        assert!(w.verify(&path(5), 0));
        assert!(find_induced_p5(&cycle(5)).is_none());
        let w = find_induced_p5(&path(6)).unwrap();
        assert!(w.verify(&path(6), 0));
        assert_eq!(w.path, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn free_examples() {
        let g = path(5).disjoint_union(&path(1));
        let w = check_free(&g, 1).unwrap();
        assert!(w.verify(&g, 1));
        assert_eq!(w.isolated, vec![5]);

        assert!(check_free(&cycle(5).disjoint_union(&path(1)), 1).is_none());

        let apex = path(5).add_vertex(1, &[0, 1, 2, 3, 4]).unwrap();
        assert!(check_free(&apex, 1).is_none());
        assert!(check_free(&apex, 0).is_some());
    }

    #[test]
    fn witness_verify_rejects_tampering() {
        let g = path(5).disjoint_union(&path(2));
        let good = check_free(&g, 1).unwrap();
        assert!(good.verify(&g, 1));
        let mut bad = good.clone();
        bad.path.swap(0, 1);
        assert!(!bad.verify(&g, 1));
        let bad = Witness {
            path: good.path,
            isolated: vec![5, 6],
        };
        assert!(!bad.verify(&g, 2));
    }
}
