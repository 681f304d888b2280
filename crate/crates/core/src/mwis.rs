//! Maximum-weight independent sets in `(P5 + rK1)`-free graphs and the
//! blob graph used to assemble solutions from candidate components.
//!
//! `mwis_p5rk1` reduces to a maximum-weight independent set routine for
//! P5-free graphs: every independent set of size at most `r` is a
//! candidate, and every independent `r`-set `T` is completed by an optimum
//! of the P5-free graph `G - (T ∪ N(T))`. That inner routine is pluggable
//! through [`P5Subsolver`]; the default is an exact branch and bound, not a
//! polynomial-time algorithm.

use std::cmp::Ordering;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};
use crate::hfree::check_free;

/// Maximum-weight independent set solver for `G[within]`, where the caller
/// guarantees `G[within]` is P5-free.
pub trait P5Subsolver: Sync {
    fn solve(&self, g: &WeightedGraph, within: &VertexSet) -> Result<VertexSet>;
}

/// Exact branch and bound with a greedy clique-cover bound.
///
/// Branches on a vertex of maximum degree inside the candidate set and
/// takes isolated candidates for free. The result is deterministic:
/// ties keep the first optimum found.
#[derive(Clone, Copy, Debug, Default)]
pub struct BranchAndBoundMwis;

impl P5Subsolver for BranchAndBoundMwis {
    fn solve(&self, g: &WeightedGraph, within: &VertexSet) -> Result<VertexSet> {
        // u128 accumulators: no overflow for any realistic vertex count
        let mut best = (0u128, g.empty_set());
        let mut found = false;
        bb_expand(g, within.clone(), g.empty_set(), 0, &mut best, &mut found);
        if best.0 > Weight::MAX as u128 {
            return Err(Error::WeightOverflow);
        }
        Ok(best.1)
    }
}

fn clique_cover_bound(g: &WeightedGraph, cand: &VertexSet) -> u128 {
    // Greedy partition into cliques; an independent set takes at most one
    // vertex per clique, so the sum of clique maxima bounds it.
    let mut rest = cand.clone();
    let mut bound = 0u128;
    while let Some(v) = rest.first() {
        rest.remove(v);
        let mut common = g.neighbours(v).intersection(&rest);
        let mut top = g.weight(v);
        while let Some(u) = common.first() {
            rest.remove(u);
            common.remove(u);
            common.intersect_with(g.neighbours(u));
            top = top.max(g.weight(u));
        }
        bound += top as u128;
    }
    bound
}

fn bb_expand(
    g: &WeightedGraph,
    mut cand: VertexSet,
    mut cur: VertexSet,
    mut cur_w: u128,
    best: &mut (u128, VertexSet),
    found: &mut bool,
) {
    // absorb candidates with no candidate neighbours
    let mut pick = None;
    let mut pick_deg = 0;
    for v in cand.clone().iter() {
        let d = g.neighbours(v).intersection(&cand).len();
        if d == 0 {
            cand.remove(v);
            cur.insert(v);
            cur_w += g.weight(v) as u128;
        } else if d > pick_deg {
            pick = Some(v);
            pick_deg = d;
        }
    }
    let Some(v) = pick else {
        if !*found || cur_w > best.0 {
            *best = (cur_w, cur);
            *found = true;
        }
        return;
    };
    if *found && cur_w + clique_cover_bound(g, &cand) <= best.0 {
        return;
    }
    let mut with_v = cand.difference(g.neighbours(v));
    with_v.remove(v);
    let mut cur_v = cur.clone();
    cur_v.insert(v);
    bb_expand(g, with_v, cur_v, cur_w + g.weight(v) as u128, best, found);
    cand.remove(v);
    bb_expand(g, cand, cur, cur_w, best, found);
}

/// Whether to re-check `(P5 + rK1)`-freeness before running `mwis_p5rk1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreenessCheck {
    /// Check in debug builds only.
    Debug,
    Always,
    Skip,
}

/// Maximum-weight independent set of a `(P5 + rK1)`-free graph.
pub fn mwis_p5rk1(g: &WeightedGraph, r: usize, subsolver: &dyn P5Subsolver) -> Result<VertexSet> {
    mwis_p5rk1_within(g, &g.vertex_set(), r, subsolver, FreenessCheck::Debug)
}

/// [`mwis_p5rk1`] on `G[within]`. The returned set is the heaviest member of
/// the candidate family, ties broken by the lexicographically smallest set.
pub fn mwis_p5rk1_within(
    g: &WeightedGraph,
    within: &VertexSet,
    r: usize,
    subsolver: &dyn P5Subsolver,
    check: FreenessCheck,
) -> Result<VertexSet> {
    let run_check = match check {
        FreenessCheck::Always => true,
        FreenessCheck::Debug => cfg!(debug_assertions),
        FreenessCheck::Skip => false,
    };
    if run_check {
        let (h, map) = g.induced_subgraph(within)?;
        if let Some(mut w) = check_free(&h, r) {
            for v in w.path.iter_mut().chain(w.isolated.iter_mut()) {
                *v = map[*v];
            }
            return Err(Error::NotFree { r, witness: w });
        }
    }

    let mut best: Option<(Weight, VertexSet)> = None;
    let mut offer = |set: VertexSet| -> Result<()> {
        let w = g.set_weight(&set)?;
        let better = match &best {
            None => true,
            Some((bw, bs)) => w > *bw || (w == *bw && set.lex_cmp(bs) == Ordering::Less),
        };
        if better {
            best = Some((w, set));
        }
        Ok(())
    };

    // Independent sets of size 1..=r in lexicographic order; those of size
    // exactly r are completed by the subsolver. For r = 0 the only such set
    // is the empty one.
    let mut t = g.empty_set();
    small_independent_sets(g, r, &mut t, within.clone(), &mut |t| {
        if t.len() == r {
            let rest = within.difference(&g.closed_neighbourhood(t));
            let plus = subsolver.solve(g, &rest)?;
            offer(t.union(&plus))
        } else {
            offer(t.clone())
        }
    })?;
    Ok(best.map(|(_, s)| s).unwrap_or_else(|| g.empty_set()))
}

/// Visits every nonempty independent set of size at most `r` inside
/// `within` (and the empty set when `r = 0`) in lexicographic order.
fn small_independent_sets(
    g: &WeightedGraph,
    r: usize,
    t: &mut VertexSet,
    allowed: VertexSet,
    visit: &mut dyn FnMut(&VertexSet) -> Result<()>,
) -> Result<()> {
    if t.len() == r {
        return visit(t);
    }
    if !t.is_empty() {
        visit(t)?;
    }
    for v in allowed.iter() {
        let mut next = allowed.difference(g.neighbours(v));
        for u in allowed.iter().take_while(|&u| u <= v) {
            next.remove(u);
        }
        t.insert(v);
        small_independent_sets(g, r, t, next, visit)?;
        t.remove(v);
    }
    Ok(())
}

/// Auxiliary graph with one vertex per candidate connected subgraph;
/// two candidates are adjacent when they intersect or an edge joins them.
#[derive(Clone, Debug)]
pub struct BlobGraph {
    pub graph: WeightedGraph,
    /// `origin[b]` is the vertex set of the candidate behind blob `b`.
    pub origin: Vec<VertexSet>,
}

/// Builds the blob graph of `candidates`; each must induce a connected
/// subgraph of `g`. Blob weights are the base weights of their candidates.
pub fn build_blob_graph(g: &WeightedGraph, candidates: &[VertexSet]) -> Result<BlobGraph> {
    let mut reach = Vec::with_capacity(candidates.len());
    let mut weights = Vec::with_capacity(candidates.len());
    for (index, c) in candidates.iter().enumerate() {
        g.check_set(c)?;
        if !g.is_connected_set(c) {
            return Err(Error::DisconnectedCandidate { index });
        }
        reach.push(g.closed_neighbourhood(c));
        weights.push(g.set_weight(c)?);
    }
    let mut edges = Vec::new();
    for a in 0..candidates.len() {
        for b in a + 1..candidates.len() {
            if reach[a].intersects(&candidates[b]) {
                edges.push((a, b));
            }
        }
    }
    Ok(BlobGraph {
        graph: WeightedGraph::from_edges(weights, &edges)?,
        origin: candidates.to_vec(),
    })
}

impl BlobGraph {
    /// Union of the candidates behind the blobs in `chosen`.
    pub fn pull_back(&self, chosen: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(0);
        for b in chosen {
            out.union_with(&self.origin[b]);
        }
        out
    }
}
