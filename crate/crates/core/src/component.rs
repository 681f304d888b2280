//! Turning one canvas into one connected candidate component.
//!
//! The lists of `N(S)` are cut down canvas-wise: vertices the canvas
//! fixes to a colour keep only that colour, every other vertex loses the
//! colours its surroundings rule out. What remains of each part `X_i`,
//! minus the neighbours of the `B` sets, is solved recursively; because
//! `f(v_i)` is forbidden throughout `X_i`, these subproblems use fewer
//! colours than the caller.

use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::canvas::{derive, Canvas, CanvasDerived};
use crate::colour::{Colour, ColourSet, ColouredSolution, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::oracles::{oracle_wmkcis, OracleConfig};

/// Solves the list-colouring subproblem on `G[within]`.
pub trait SubproblemSolver: Sync {
    /// A maximum-weight `lists`-colourable induced subgraph of `G[within]`,
    /// in `g`'s vertex numbering.
    fn solve_within(&self, g: &WeightedGraph, within: &VertexSet, lists: &ListAssignment) -> Result<ColouredSolution>;
}

/// Exhaustive subproblem solver, for tests on small parts.
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleSubsolver(pub OracleConfig);

impl SubproblemSolver for OracleSubsolver {
    fn solve_within(&self, g: &WeightedGraph, within: &VertexSet, lists: &ListAssignment) -> Result<ColouredSolution> {
        let (h, map) = g.induced_subgraph(within)?;
        let sol = oracle_wmkcis(&h, &lists.restrict(&map), self.0)?;
        Ok(sol.lift(&map, g.n()))
    }
}

/// Lists after pruning, with the forbidden sets that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedLists {
    pub lists: ListAssignment,
    /// `F(v)` for `v ∈ N(S)`; empty elsewhere.
    pub forbidden: Vec<ColourSet>,
}

struct Reach {
    /// `N(A_c)`.
    a: Vec<VertexSet>,
    /// `N(A_c ∪ B_c ∪ ⋃Z_{·,c} ∪ ⋃Y_{·,c,·})`.
    guessed: Vec<VertexSet>,
}

/// Forbidden colours `F(v)` for every `v ∈ N(S)` and the resulting lists.
pub fn prune_lists(
    g: &WeightedGraph,
    q: &Canvas,
    d: &CanvasDerived,
    lists: &ListAssignment,
    r: usize,
) -> PrunedLists {
    let n = g.n();
    let t = q.t();
    let palette = ColourSet::first_k(q.k());
    let free_m = d.m.difference(&d.w);
    let reach = Reach {
        a: q.colours().map(|c| g.neighbourhood(q.a(c))).collect(),
        guessed: q
            .colours()
            .map(|c| g.neighbourhood(&q.pinned(c).union(q.b(c))))
            .collect(),
    };
    let z_reach: Vec<VertexSet> = (0..t)
        .flat_map(|j| q.colours().map(move |c| (j, c)))
        .map(|(j, c)| g.neighbourhood(q.z(j, c)))
        .collect();

    let mut out = lists.clone();
    let mut forbidden = vec![ColourSet::EMPTY; n];
    for (i, xi) in d.x.iter().enumerate() {
        for v in xi {
            let mut pins = ColourSet::EMPTY;
            for c in q.colours() {
                let mut here = q.a(c).contains(v);
                here |= (i + 1..t).any(|j| q.y(i, c, j).contains(v));
                here |= (0..t).any(|j| q.z(j, c).contains(v));
                if here {
                    pins = pins.with(c);
                }
            }
            let f = if !pins.is_empty() {
                // a doubly pinned vertex can take no colour at all
                pins.iter().fold(ColourSet::EMPTY, |acc, c| acc.union(palette.without(c)))
            } else {
                let mut f = ColourSet::EMPTY;
                for (&s, &fc) in q.s.iter().zip(&q.f) {
                    if g.has_edge(v, s) {
                        f = f.with(fc);
                    }
                }
                let nv = g.neighbours(v);
                let towards_m = nv.intersection(&free_m);
                for c in q.colours() {
                    let ci = c as usize - 1;
                    if !towards_m.is_subset(&reach.a[ci]) {
                        f = f.with(c);
                    }
                    if reach.guessed[ci].contains(v) {
                        f = f.with(c);
                    }
                    if q.z(i, c).len() < r {
                        f = f.with(c);
                    }
                    for j in i + 1..t {
                        if q.z(j, c).len() != r {
                            continue;
                        }
                        let zr = &z_reach[j * q.k() + ci];
                        let mine = nv.intersection(&d.x[j]).difference(zr);
                        let covered = g.neighbourhood(q.y(i, c, j)).intersection(&d.x[j]).difference(zr);
                        if !mine.is_subset(&covered) {
                            f = f.with(c);
                            break;
                        }
                    }
                }
                f
            };
            forbidden[v] = f;
            out.set(v, lists.get(v).difference(f));
        }
    }
    PrunedLists { lists: out, forbidden }
}

/// The candidate component of `q`: `S` coloured by `f`, plus an optimum of
/// each pruned part `X_i \ N(⋃B)`.
pub fn generate_component(
    g: &WeightedGraph,
    q: &Canvas,
    lists: &ListAssignment,
    r: usize,
    sub: &dyn SubproblemSolver,
) -> Result<ColouredSolution> {
    generate_component_with(g, q, &derive(q, g, r), lists, r, sub)
}

/// [`generate_component`] with the derived sets already at hand.
pub fn generate_component_with(
    g: &WeightedGraph,
    q: &Canvas,
    d: &CanvasDerived,
    lists: &ListAssignment,
    r: usize,
    sub: &dyn SubproblemSolver,
) -> Result<ColouredSolution> {
    for (i, (&v, &c)) in q.s.iter().zip(&q.f).enumerate() {
        if !lists.get(v).contains(c) || q.s[..i].iter().zip(&q.f).any(|(&u, &e)| e == c && g.has_edge(u, v)) {
            return Err(Error::InvalidCanvas(format!("f is not a proper list colouring at {v}")));
        }
    }
    let pruned = prune_lists(g, q, d, lists, r);
    let b_reach = g.neighbourhood(&q.all_b());
    let mut colouring: BTreeMap<usize, Colour> = q.s.iter().copied().zip(q.f.iter().copied()).collect();
    for xi in &d.x {
        let part = xi.difference(&b_reach);
        let part = pruned.lists.colourable_vertices(&part);
        if part.is_empty() {
            continue;
        }
        let u = sub.solve_within(g, &part, &pruned.lists)?;
        colouring.extend(u.colouring);
    }
    ColouredSolution::from_colouring(g, colouring)
}

/// Whether the induced subgraph on `c` is associated with `q`, decided from
/// the definition by searching for a suitable colouring.
pub fn is_associated(
    g: &WeightedGraph,
    c: &VertexSet,
    q: &Canvas,
    d: &CanvasDerived,
    lists: &ListAssignment,
    r: usize,
) -> bool {
    let n = g.n();
    let s = q.s_set(n);
    if !s.is_subset(c) || !c.is_subset(&g.closed_neighbourhood(&s)) {
        return false;
    }
    let outside: Vec<usize> = c.difference(&s).to_vec();
    let all_b = q.all_b();
    if outside.iter().any(|&v| g.neighbours(v).intersects(&all_b)) {
        return false;
    }

    let colours: Vec<Colour> = q.colours().collect();
    let mut allowed: Vec<ColourSet> = Vec::with_capacity(outside.len());
    for &v in &outside {
        let i = d.part_of(v).expect("dominated vertex lies in some part");
        let mut pinned_to = Vec::new();
        for &col in &colours {
            let in_y = (0..q.t()).any(|a| (a + 1..q.t()).any(|l| q.y(a, col, l).contains(v)));
            let in_z = (0..q.t()).any(|j| q.z(j, col).contains(v));
            if q.a(col).contains(v) || in_y || in_z {
                pinned_to.push(col);
            }
        }
        let list = lists.get(v);
        let ok = if !pinned_to.is_empty() {
            if pinned_to.len() > 1 {
                ColourSet::EMPTY
            } else {
                list.intersection(ColourSet::single(pinned_to[0]))
            }
        } else {
            let mut bad = ColourSet::EMPTY;
            for (j, &sj) in q.s.iter().enumerate() {
                if g.has_edge(v, sj) {
                    bad = bad.with(q.f[j]);
                }
            }
            let m_side = g.neighbours(v).intersection(&d.m).difference(&d.w);
            for &col in &colours {
                if !m_side.iter().all(|u| g.neighbours(u).intersects(q.a(col))) {
                    bad = bad.with(col);
                }
                let mut gathered = q.a(col).union(q.b(col));
                for l in 0..q.t() {
                    gathered.union_with(q.z(l, col));
                    for j in l + 1..q.t() {
                        gathered.union_with(q.y(l, col, j));
                    }
                }
                if !gathered.contains(v) && g.neighbours(v).intersects(&gathered) {
                    bad = bad.with(col);
                }
                if q.z(i, col).len() < r {
                    bad = bad.with(col);
                }
                let blocked_by_y = (i + 1..q.t()).any(|j| {
                    if q.z(j, col).len() != r {
                        return false;
                    }
                    let zn = g.neighbourhood(q.z(j, col));
                    let yn = g.neighbourhood(q.y(i, col, j));
                    g.neighbours(v)
                        .intersection(&d.x[j])
                        .iter()
                        .any(|u| !zn.contains(u) && !yn.contains(u))
                });
                if blocked_by_y {
                    bad = bad.with(col);
                }
            }
            list.difference(bad)
        };
        allowed.push(ok);
    }

    // colour `outside` in order, against f on S and earlier choices
    let mut chosen: BTreeMap<usize, Colour> = q.s.iter().copied().zip(q.f.iter().copied()).collect();
    fn search(
        g: &WeightedGraph,
        at: usize,
        outside: &[usize],
        allowed: &[ColourSet],
        chosen: &mut BTreeMap<usize, Colour>,
    ) -> bool {
        let Some(&v) = outside.get(at) else {
            return true;
        };
        for col in allowed[at].iter() {
            if g.neighbours(v).iter().any(|u| chosen.get(&u) == Some(&col)) {
                continue;
            }
            chosen.insert(v, col);
            if search(g, at + 1, outside, allowed, chosen) {
                return true;
            }
            chosen.remove(&v);
        }
        false
    }
    if !q.s.iter().zip(&q.f).all(|(&v, &col)| lists.get(v).contains(col)) {
        return false;
    }
    for (a, &u) in q.s.iter().enumerate() {
        for (b, &v) in q.s.iter().enumerate().skip(a + 1) {
            if q.f[a] == q.f[b] && g.has_edge(u, v) {
                return false;
            }
        }
    }
    search(g, 0, &outside, &allowed, &mut chosen)
}
