use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use super::{parts, size_bound, w_set, Canvas, CanvasDerived};
use crate::bitset::VertexSet;
use crate::colour::{Colour, ListAssignment};
use crate::graph::WeightedGraph;

/// Switches that trade completeness of the stream for speed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Leave `Y_{i,c,l}` empty unless `|Z_{l,c}| = r`.
    pub y_only_where_z_full: bool,
    /// Only `A_c` whose members each have a private neighbour in `M \ W`,
    /// and `Y_{i,c,l}` whose members each have a private neighbour in
    /// `X_l \ N(Z_{l,c})`.
    pub private_neighbours: bool,
    /// One ordering (ascending) per underlying set of `S`. Experimental.
    pub canonical_orderings: bool,
}

impl EnumerationOptions {
    /// Complete stream: every valid canvas.
    pub fn complete() -> Self {
        Self::default()
    }

    /// The restricted stream the solver sweeps.
    pub fn reduced() -> Self {
        EnumerationOptions {
            y_only_where_z_full: true,
            private_neighbours: true,
            canonical_orderings: false,
        }
    }
}

/// Whether every member of `set` has a neighbour in `target` that no other
/// member of `set` is adjacent to.
pub(crate) fn has_private_neighbours(g: &WeightedGraph, set: &VertexSet, target: &VertexSet) -> bool {
    set.iter().all(|a| {
        let mut own = g.neighbours(a).intersection(target);
        for b in set.iter().filter(|&b| b != a) {
            own.difference_with(g.neighbours(b));
        }
        !own.is_empty()
    })
}

/// Lazily enumerates canvases of `g` under `lists`.
///
/// Order: `S` by size then lexicographically as a sequence, then `f`
/// lexicographically, then `A_1..A_k`, `B_1..B_k`, `Z_{i,c}` by `(i, c)`
/// and `Y_{i,c,l}` by `(i, c, l)`, each family in lexicographic order.
#[derive(Clone, Copy)]
pub struct CanvasEnumerator<'a> {
    g: &'a WeightedGraph,
    lists: &'a ListAssignment,
    k: usize,
    r: usize,
    opts: EnumerationOptions,
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    A(Colour),
    B(Colour),
    Z(usize, Colour),
    Y(usize, Colour, usize),
}

impl<'a> CanvasEnumerator<'a> {
    pub fn new(g: &'a WeightedGraph, lists: &'a ListAssignment, k: usize, r: usize) -> Self {
        CanvasEnumerator {
            g,
            lists,
            k,
            r,
            opts: EnumerationOptions::default(),
        }
    }

    pub fn with_options(mut self, opts: EnumerationOptions) -> Self {
        self.opts = opts;
        self
    }

    /// All ordered vertex sequences that can serve as `S`, in stream order.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        let g = self.g;
        let usable = self.lists.colourable_vertices(&g.vertex_set());
        let bound = size_bound(self.k, self.r).min(usable.len());
        let mut sets: Vec<VertexSet> = Vec::new();
        let mut frontier: Vec<VertexSet> = usable.iter().map(|v| VertexSet::singleton(g.n(), v)).collect();
        let mut seen: HashSet<VertexSet> = frontier.iter().cloned().collect();
        for _ in 1..=bound {
            sets.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for s in &frontier {
                for v in &g.neighbourhood(s).intersection(&usable) {
                    let mut grown = s.clone();
                    grown.insert(v);
                    if seen.insert(grown.clone()) {
                        next.push(grown);
                    }
                }
            }
            frontier = next;
        }
        let mut out = Vec::new();
        for s in sets {
            let mut seq = s.to_vec();
            if self.opts.canonical_orderings {
                out.push(seq);
                continue;
            }
            loop {
                out.push(seq.clone());
                if !next_permutation(&mut seq) {
                    break;
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Visits every canvas on the ordered set `s` together with its derived
    /// sets. The canvas reference is only valid during the call.
    pub fn for_each_on(
        &self,
        s: &[usize],
        visit: &mut dyn FnMut(&Canvas, &CanvasDerived) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let g = self.g;
        let n = g.n();
        let kk = self.lists.k();
        let s_set = VertexSet::from_iter_sized(n, s.iter().copied());
        if s.is_empty() || s_set.len() != s.len() || s.len() > size_bound(self.k, self.r) || !g.is_connected_set(&s_set)
        {
            return ControlFlow::Continue(());
        }
        let (x, closed) = parts(g, s);
        let n_s = closed.difference(&s_set);
        let m = g.vertex_set().difference(&closed);
        let by_colour: Vec<VertexSet> = (1..=kk as Colour)
            .map(|c| {
                VertexSet::from_iter_sized(n, (0..n).filter(|&v| self.lists.get(v).contains(c)))
            })
            .collect();

        let t = s.len();
        let mut slots = Vec::new();
        slots.extend((1..=kk as Colour).map(Slot::A));
        slots.extend((1..=kk as Colour).map(Slot::B));
        for i in 0..t {
            slots.extend((1..=kk as Colour).map(|c| Slot::Z(i, c)));
        }
        for i in 0..t {
            for c in 1..=kk as Colour {
                slots.extend((i + 1..t).map(|l| Slot::Y(i, c, l)));
            }
        }

        let mut f = vec![0 as Colour; t];
        let mut state = Fill {
            g,
            r: self.r,
            a_cap: 2 * self.k,
            opts: self.opts,
            slots: &slots,
            by_colour: &by_colour,
            n_s: &n_s,
            derived: CanvasDerived {
                x,
                m,
                w: VertexSet::new(n),
            },
            q: Canvas::new(s.to_vec(), vec![0; t], kk),
            class: Vec::new(),
            b_reach: VertexSet::new(n),
            taken_a: VertexSet::new(n),
        };
        self.colourings(s, 0, &mut f, &mut |f| {
            state.q.f.copy_from_slice(f);
            state.class = (1..=kk as Colour)
                .map(|c| {
                    VertexSet::from_iter_sized(n, s.iter().zip(f).filter(|&(_, &fc)| fc == c).map(|(&v, _)| v))
                })
                .collect();
            state.fill(0, visit)
        })
    }

    fn colourings(
        &self,
        s: &[usize],
        i: usize,
        f: &mut [Colour],
        visit: &mut dyn FnMut(&[Colour]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == s.len() {
            return visit(f);
        }
        for c in self.lists.get(s[i]).iter() {
            if (0..i).any(|j| f[j] == c && self.g.has_edge(s[i], s[j])) {
                continue;
            }
            f[i] = c;
            self.colourings(s, i + 1, f, visit)?;
        }
        ControlFlow::Continue(())
    }

    /// Visits every canvas in stream order.
    pub fn for_each(&self, visit: &mut dyn FnMut(&Canvas, &CanvasDerived) -> ControlFlow<()>) -> ControlFlow<()> {
        for s in self.supports() {
            self.for_each_on(&s, visit)?;
        }
        ControlFlow::Continue(())
    }

    pub fn count(&self) -> u64 {
        let mut n = 0u64;
        let _ = self.for_each(&mut |_, _| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    pub fn count_on(&self, s: &[usize]) -> u64 {
        let mut n = 0u64;
        let _ = self.for_each_on(s, &mut |_, _| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    /// Owned stream; buffers the canvases of one `S` at a time.
    pub fn stream(&self) -> CanvasStream<'a> {
        CanvasStream {
            inner: *self,
            supports: self.supports().into(),
            buffer: VecDeque::new(),
        }
    }
}

/// Every valid canvas of `g` (complete mode), as a lazy stream.
pub fn enumerate_canvases<'a>(g: &'a WeightedGraph, lists: &'a ListAssignment, k: usize, r: usize) -> CanvasStream<'a> {
    CanvasEnumerator::new(g, lists, k, r).stream()
}

pub struct CanvasStream<'a> {
    inner: CanvasEnumerator<'a>,
    supports: VecDeque<Vec<usize>>,
    buffer: VecDeque<Canvas>,
}

impl Iterator for CanvasStream<'_> {
    type Item = Canvas;

    fn next(&mut self) -> Option<Canvas> {
        while self.buffer.is_empty() {
            let s = self.supports.pop_front()?;
            let buffer = &mut self.buffer;
            let _ = self.inner.for_each_on(&s, &mut |q, _| {
                buffer.push_back(q.clone());
                ControlFlow::Continue(())
            });
        }
        self.buffer.pop_front()
    }
}

struct Fill<'e> {
    g: &'e WeightedGraph,
    r: usize,
    a_cap: usize,
    opts: EnumerationOptions,
    slots: &'e [Slot],
    by_colour: &'e [VertexSet],
    n_s: &'e VertexSet,
    derived: CanvasDerived,
    q: Canvas,
    /// Per colour: `S_c ∪ A_c ∪ Z_{·,c} ∪ Y_{·,c,·}` chosen so far.
    class: Vec<VertexSet>,
    /// `N(⋃ B)`.
    b_reach: VertexSet,
    /// `⋃ A`.
    taken_a: VertexSet,
}

impl Fill<'_> {
    fn fill(&mut self, at: usize, visit: &mut dyn FnMut(&Canvas, &CanvasDerived) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(&slot) = self.slots.get(at) else {
            return visit(&self.q, &self.derived);
        };
        let g = self.g;
        let (pool, cap) = match slot {
            Slot::A(c) => {
                let ci = c as usize - 1;
                let pool = self
                    .n_s
                    .intersection(&self.by_colour[ci])
                    .difference(&g.neighbourhood(&self.class[ci]))
                    .difference(&self.taken_a);
                (pool, self.a_cap)
            }
            Slot::B(c) => {
                let ci = c as usize - 1;
                let mut pool = self
                    .derived
                    .m
                    .intersection(&self.by_colour[ci])
                    .difference(&g.neighbourhood(&self.taken_a));
                for e in 1..c {
                    pool.difference_with(self.q.b(e));
                }
                (pool, self.r)
            }
            Slot::Z(i, c) => {
                let ci = c as usize - 1;
                let mut pool = self.derived.x[i]
                    .intersection(&self.by_colour[ci])
                    .difference(&self.b_reach)
                    .difference(&g.neighbourhood(&self.class[ci]));
                for e in self.q.colours().filter(|&e| e != c) {
                    pool.difference_with(self.q.a(e));
                }
                for e in 1..c {
                    pool.difference_with(self.q.z(i, e));
                }
                (pool, self.r)
            }
            Slot::Y(i, c, l) => {
                let ci = c as usize - 1;
                if self.opts.y_only_where_z_full && self.q.z(l, c).len() < self.r {
                    return self.fill(at + 1, visit);
                }
                let mut pool = self.derived.x[i]
                    .intersection(&self.by_colour[ci])
                    .difference(&self.b_reach)
                    .difference(&g.neighbourhood(&self.class[ci]));
                for e in self.q.colours().filter(|&e| e != c) {
                    pool.difference_with(self.q.a(e));
                    pool.difference_with(self.q.z(i, e));
                }
                for e in 1..c {
                    pool.difference_with(self.q.y(i, e, l));
                }
                if self.q.z(i, c).len() < self.r {
                    pool.intersect_with(self.q.z(i, c));
                }
                (pool, 2)
            }
        };
        let mut chosen = VertexSet::new(g.n());
        self.subsets(slot, at, &pool, cap, &mut chosen, visit)
    }

    /// Independent subsets of `pool` with at most `cap` members, in
    /// lexicographic order starting with the empty set.
    fn subsets(
        &mut self,
        slot: Slot,
        at: usize,
        pool: &VertexSet,
        cap: usize,
        chosen: &mut VertexSet,
        visit: &mut dyn FnMut(&Canvas, &CanvasDerived) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.opts.private_neighbours && !chosen.is_empty() {
            // privacy only erodes as the set grows, so the subtree dies too
            let target = match slot {
                Slot::A(_) => self.derived.m.clone(),
                Slot::Y(_, c, l) => self.derived.x[l].difference(&self.g.neighbourhood(self.q.z(l, c))),
                _ => self.g.vertex_set(),
            };
            if matches!(slot, Slot::A(_) | Slot::Y(..)) && !has_private_neighbours(self.g, chosen, &target) {
                return ControlFlow::Continue(());
            }
        }
        self.place(slot, at, chosen, visit)?;
        if chosen.len() == cap {
            return ControlFlow::Continue(());
        }
        let after = chosen.last();
        for v in pool.iter().filter(|&v| after.is_none_or(|a| v > a)) {
            if self.g.neighbours(v).intersects(chosen) {
                continue;
            }
            chosen.insert(v);
            self.subsets(slot, at, pool, cap, chosen, visit)?;
            chosen.remove(v);
        }
        ControlFlow::Continue(())
    }

    /// Installs `chosen` in `slot`, checks conditions that only close once
    /// the slot is filled, and recurses into the next slot.
    fn place(
        &mut self,
        slot: Slot,
        at: usize,
        chosen: &VertexSet,
        visit: &mut dyn FnMut(&Canvas, &CanvasDerived) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let g = self.g;
        match slot {
            Slot::A(c) => {
                let ci = c as usize - 1;
                let (old_class, old_taken) = (self.class[ci].clone(), self.taken_a.clone());
                *self.q.a_mut(c) = chosen.clone();
                self.class[ci].union_with(chosen);
                self.taken_a.union_with(chosen);
                let flow = self.fill(at + 1, visit);
                self.class[ci] = old_class;
                self.taken_a = old_taken;
                self.q.a_mut(c).clear();
                flow
            }
            Slot::B(c) => {
                let old_reach = self.b_reach.clone();
                *self.q.b_mut(c) = chosen.clone();
                self.b_reach.union_with(&g.neighbourhood(chosen));
                let last = c as usize == self.q.k();
                if last {
                    self.derived.w = w_set(g, &self.derived.m, &self.all_b_vec(), self.r);
                    if self.opts.private_neighbours {
                        let target = self.derived.m.difference(&self.derived.w);
                        if !self.q.colours().all(|e| has_private_neighbours(g, self.q.a(e), &target)) {
                            self.b_reach = old_reach;
                            self.q.b_mut(c).clear();
                            return ControlFlow::Continue(());
                        }
                    }
                }
                let flow = self.fill(at + 1, visit);
                self.b_reach = old_reach;
                self.q.b_mut(c).clear();
                flow
            }
            Slot::Z(i, c) => {
                let ci = c as usize - 1;
                if chosen.len() < self.r && !self.q.a(c).intersection(&self.derived.x[i]).is_subset(chosen) {
                    return ControlFlow::Continue(());
                }
                let old_class = self.class[ci].clone();
                *self.q.z_mut(i, c) = chosen.clone();
                self.class[ci].union_with(chosen);
                let flow = self.fill(at + 1, visit);
                self.class[ci] = old_class;
                self.q.z_mut(i, c).clear();
                flow
            }
            Slot::Y(i, c, l) => {
                let ci = c as usize - 1;
                let old_class = self.class[ci].clone();
                *self.q.y_mut(i, c, l) = chosen.clone();
                self.class[ci].union_with(chosen);
                let flow = self.fill(at + 1, visit);
                self.class[ci] = old_class;
                self.q.y_mut(i, c, l).clear();
                flow
            }
        }
    }

    fn all_b_vec(&self) -> Vec<VertexSet> {
        self.q.colours().map(|c| self.q.b(c).clone()).collect()
    }
}

/// Rearranges `seq` into the next permutation in lexicographic order;
/// false once `seq` is the last.
fn next_permutation(seq: &mut [usize]) -> bool {
    let Some(i) = seq.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = seq.iter().rposition(|&x| x > seq[i]).expect("pivot has a successor");
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}
