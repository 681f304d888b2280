//! Canvases: an ordered small connected set `S`, a list colouring `f` of
//! `G[S]`, and guessed colour-class fragments `A`, `B`, `Y`, `Z` around it.
//!
//! Colours are indexed `1..=lists.k()` throughout. The separate `k` passed
//! to [`size_bound`], [`validate`] and the enumerator is the colour budget
//! that bounds `|S|` and `|A_c|`; inside the solver's recursion it is the
//! number of colours still in use.

mod domination;
mod enumerate;
mod validate;

pub use domination::{find_small_connected_dominating_set, BoundExceeded};
pub use enumerate::{enumerate_canvases, CanvasEnumerator, CanvasStream, EnumerationOptions};
pub use validate::{validate, Condition, Violation};

use crate::bitset::VertexSet;
use crate::colour::Colour;
use crate::graph::WeightedGraph;

/// Largest `|S|` a canvas may have: `(k+2)(r-1)+5`, floored at `max(k, 3)`
/// so that small `r` (P5-free inputs) stays meaningful.
pub fn size_bound(k: usize, r: usize) -> usize {
    let general = (k as i64 + 2) * (r as i64 - 1) + 5;
    general.max(k.max(3) as i64) as usize
}

/// One canvas. Family vectors are indexed by colour `c` at `c - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Canvas {
    /// `v_1 .. v_t`.
    pub s: Vec<usize>,
    /// `f(v_i)` at index `i`.
    pub f: Vec<Colour>,
    k: usize,
    a: Vec<VertexSet>,
    b: Vec<VertexSet>,
    /// `Z_{i,c}` at `i * k + (c - 1)`.
    z: Vec<VertexSet>,
    /// `Y_{i,c,l}` at `(i * t + l) * k + (c - 1)`; only `i < l` may be nonempty.
    y: Vec<VertexSet>,
}

impl Canvas {
    /// Canvas on `s` with colouring `f`, colour indices `1..=k`, and every
    /// family empty.
    pub fn new(s: Vec<usize>, f: Vec<Colour>, k: usize) -> Canvas {
        let t = s.len();
        Canvas {
            s,
            f,
            k,
            a: vec![VertexSet::default(); k],
            b: vec![VertexSet::default(); k],
            z: vec![VertexSet::default(); t * k],
            y: vec![VertexSet::default(); t * t * k],
        }
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.s.len()
    }

    /// Number of colour indices.
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colours(&self) -> impl Iterator<Item = Colour> {
        1..=self.k as Colour
    }

    #[inline]
    pub fn a(&self, c: Colour) -> &VertexSet {
        &self.a[c as usize - 1]
    }

    #[inline]
    pub fn b(&self, c: Colour) -> &VertexSet {
        &self.b[c as usize - 1]
    }

    /// `Z_{i,c}`, with `i` zero-based.
    #[inline]
    pub fn z(&self, i: usize, c: Colour) -> &VertexSet {
        &self.z[i * self.k + c as usize - 1]
    }

    /// `Y_{i,c,l}`, with `i` and `l` zero-based.
    #[inline]
    pub fn y(&self, i: usize, c: Colour, l: usize) -> &VertexSet {
        &self.y[(i * self.t() + l) * self.k + c as usize - 1]
    }

    pub fn a_mut(&mut self, c: Colour) -> &mut VertexSet {
        &mut self.a[c as usize - 1]
    }

    pub fn b_mut(&mut self, c: Colour) -> &mut VertexSet {
        &mut self.b[c as usize - 1]
    }

    pub fn z_mut(&mut self, i: usize, c: Colour) -> &mut VertexSet {
        let k = self.k;
        &mut self.z[i * k + c as usize - 1]
    }

    pub fn y_mut(&mut self, i: usize, c: Colour, l: usize) -> &mut VertexSet {
        let (t, k) = (self.t(), self.k);
        &mut self.y[(i * t + l) * k + c as usize - 1]
    }

    pub fn s_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_sized(n, self.s.iter().copied())
    }

    /// `{v_i : f(v_i) = c}`.
    pub fn s_coloured(&self, n: usize, c: Colour) -> VertexSet {
        VertexSet::from_iter_sized(
            n,
            self.s.iter().zip(&self.f).filter(|&(_, &fc)| fc == c).map(|(&v, _)| v),
        )
    }

    pub fn all_b(&self) -> VertexSet {
        self.b.iter().fold(VertexSet::default(), |acc, s| acc.union(s))
    }

    /// `A_c ∪ ⋃ Y_{·,c,·} ∪ ⋃ Z_{·,c}`: every vertex the canvas pins to `c`.
    pub fn pinned(&self, c: Colour) -> VertexSet {
        let mut out = self.a(c).clone();
        for i in 0..self.t() {
            out.union_with(self.z(i, c));
            for l in i + 1..self.t() {
                out.union_with(self.y(i, c, l));
            }
        }
        out
    }

    /// Whether every `Y_{i,c,l}` with `|Z_{l,c}| < r` is empty.
    pub fn y_only_where_z_full(&self, r: usize) -> bool {
        (0..self.t()).all(|i| {
            (i + 1..self.t()).all(|l| self.colours().all(|c| self.z(l, c).len() >= r || self.y(i, c, l).is_empty()))
        })
    }

    pub(crate) fn y_raw(&self) -> &[VertexSet] {
        &self.y
    }
}

/// Sets determined by a canvas and the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanvasDerived {
    /// `X_1 .. X_t`, a partition of `N(S)` by first neighbour in `S`.
    pub x: Vec<VertexSet>,
    /// `V(G) \ (S ∪ N(S))`.
    pub m: VertexSet,
    /// Vertices of `M` adjacent to every `B_c` of size exactly `r`.
    pub w: VertexSet,
}

impl CanvasDerived {
    /// Index `i` of the part `X_i` containing `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.x.iter().position(|x| x.contains(v))
    }

    pub fn neighbourhood_of_s(&self) -> VertexSet {
        self.x.iter().fold(VertexSet::default(), |acc, x| acc.union(x))
    }
}

/// `X_i = N(v_i) \ (S ∪ X_1 ∪ .. ∪ X_{i-1})`.
pub(crate) fn parts(g: &WeightedGraph, s: &[usize]) -> (Vec<VertexSet>, VertexSet) {
    let s_set = VertexSet::from_iter_sized(g.n(), s.iter().copied());
    let mut seen = s_set.clone();
    let mut x = Vec::with_capacity(s.len());
    for &v in s {
        let xi = g.neighbours(v).difference(&seen);
        seen.union_with(&xi);
        x.push(xi);
    }
    (x, seen)
}

pub(crate) fn w_set(g: &WeightedGraph, m: &VertexSet, b: &[VertexSet], r: usize) -> VertexSet {
    let full: Vec<&VertexSet> = b.iter().filter(|bc| bc.len() == r).collect();
    let mut w = m.clone();
    for v in m {
        if !full.iter().all(|bc| g.neighbours(v).intersects(bc)) {
            w.remove(v);
        }
    }
    w
}

/// Computes `X_i`, `M` and `W` for `q`.
pub fn derive(q: &Canvas, g: &WeightedGraph, r: usize) -> CanvasDerived {
    let (x, closed) = parts(g, &q.s);
    let m = g.vertex_set().difference(&closed);
    let w = w_set(g, &m, &q.b, r);
    CanvasDerived { x, m, w }
}
