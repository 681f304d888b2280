//! Shared test support: graph corpora, random instances, naive references.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wmkcis::bitset::VertexSet;
use wmkcis::canvas::{size_bound, validate, Canvas};
use wmkcis::colour::{Colour, ListAssignment};
use wmkcis::graph::{Weight, WeightedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Adjacency as one bitmask per vertex.
type Masks = Vec<u16>;

fn masks_of(g: &WeightedGraph) -> Masks {
    (0..g.n())
        .map(|v| g.neighbours(v).iter().fold(0u16, |m, u| m | (1 << u)))
        .collect()
}

fn graph_of(adj: &Masks) -> WeightedGraph {
    let n = adj.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] & (1 << v) != 0 {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::unweighted(n, &edges).unwrap()
}

/// Canonical code: least upper-triangle bit string over relabellings that
/// list vertices by ascending degree.
fn canonical(adj: &Masks) -> u64 {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| adj[v].count_ones());
    let deg: Vec<u32> = order.iter().map(|&v| adj[v].count_ones()).collect();
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || deg[i] != deg[start] {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    permute_blocks(adj, &mut order, &blocks, 0, &mut best);
    best
}

fn permute_blocks(adj: &Masks, order: &mut Vec<usize>, blocks: &[(usize, usize)], b: usize, best: &mut u64) {
    if b == blocks.len() {
        let n = order.len();
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[order[i]] & (1 << order[j]) != 0 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        *best = (*best).min(code);
        return;
    }
    let (lo, hi) = blocks[b];
    heap_permute(adj, order, blocks, b, lo, hi - lo, best);
}

#[allow(clippy::too_many_arguments)]
fn heap_permute(
    adj: &Masks,
    order: &mut Vec<usize>,
    blocks: &[(usize, usize)],
    b: usize,
    lo: usize,
    size: usize,
    best: &mut u64,
) {
    if size <= 1 {
        permute_blocks(adj, order, blocks, b + 1, best);
        return;
    }
    for i in 0..size {
        heap_permute(adj, order, blocks, b, lo, size - 1, best);
        if size.is_multiple_of(2) {
            order.swap(lo + i, lo + size - 1);
        } else {
            order.swap(lo, lo + size - 1);
        }
    }
}

fn is_connected(adj: &Masks) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut seen = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let mut next = 0u16;
        for v in 0..n {
            if frontier & (1 << v) != 0 {
                next |= adj[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

/// All connected graphs on `n` vertices up to isomorphism, `n ≤ 8`.
pub fn connected_graphs(n: usize) -> Vec<WeightedGraph> {
    connected_masks(n).iter().map(graph_of).collect()
}

fn connected_masks(n: usize) -> Vec<Masks> {
    assert!((1..=8).contains(&n));
    if n == 1 {
        return vec![vec![0]];
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for base in connected_masks(n - 1) {
        for nb in 1u16..(1 << (n - 1)) {
            let mut adj = base.clone();
            for (v, m) in adj.iter_mut().enumerate() {
                if nb & (1 << v) != 0 {
                    *m |= 1 << (n - 1);
                }
            }
            adj.push(nb);
            if seen.insert(canonical(&adj)) {
                out.push(adj);
            }
        }
    }
    out
}

/// All graphs on `n` vertices up to isomorphism (connected or not), `n ≤ 6`.
pub fn all_graphs(n: usize) -> Vec<WeightedGraph> {
    assert!(n <= 6);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for bits in 0u32..(1 << pairs.len()) {
        let mut adj = vec![0u16; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if bits & (1 << i) != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        if seen.insert(canonical(&adj)) {
            out.push(adj);
        }
    }
    out.iter().map(graph_of).collect()
}

pub fn is_connected_graph(g: &WeightedGraph) -> bool {
    is_connected(&masks_of(g))
}

pub fn random_weights(rng: &mut impl Rng, n: usize, max: Weight) -> Vec<Weight> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::unweighted(n, &edges).unwrap()
}

/// Independent `(P5 + rK1)` test over all `(5 + r)`-subsets and all their
/// vertex orders along the path.
pub fn naive_contains_p5rk1(g: &WeightedGraph, r: usize) -> bool {
    let n = g.n();
    let need = 5 + r;
    if n < need {
        return false;
    }
    let mut pick = Vec::new();
    subsets_of_size(n, need, 0, &mut pick, &mut |s| {
        // path on any 5 of them, the rest isolated from everything
        let mut five = Vec::new();
        subsets_of_size(s.len(), 5, 0, &mut five, &mut |idx| {
            let p: Vec<usize> = idx.iter().map(|&i| s[i]).collect();
            let rest: Vec<usize> = s.iter().copied().filter(|v| !p.contains(v)).collect();
            let rest_ok = rest.iter().all(|&a| s.iter().all(|&b| a == b || !g.has_edge(a, b)));
            rest_ok && is_induced_p5(g, &p)
        })
    })
}

fn is_induced_p5(g: &WeightedGraph, p: &[usize]) -> bool {
    let edges = p
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| p[i + 1..].iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| g.has_edge(a, b))
        .count();
    if edges != 4 {
        return false;
    }
    let deg: Vec<usize> = p.iter().map(|&a| p.iter().filter(|&&b| g.has_edge(a, b)).count()).collect();
    let leaves = deg.iter().filter(|&&d| d == 1).count();
    let sub = VertexSet::from_iter_sized(g.n(), p.iter().copied());
    leaves == 2 && deg.iter().all(|d| (1..=2).contains(d)) && g.is_connected_set(&sub)
}

/// Calls `f` on every `size`-subset of `0..n` (as ascending indices);
/// stops and returns true as soon as `f` does.
pub fn subsets_of_size(n: usize, size: usize, from: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if pick.len() == size {
        return f(pick);
    }
    for v in from..n {
        pick.push(v);
        let hit = subsets_of_size(n, size, v + 1, pick, f);
        pick.pop();
        if hit {
            return true;
        }
    }
    false
}

/// Independent subsets of `pool` with at most `cap` members, empty first.
fn independent_subsets(g: &WeightedGraph, pool: &[usize], cap: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    fn go(g: &WeightedGraph, pool: &[usize], cap: usize, at: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        out.push(VertexSet::from_iter_sized(g.n(), cur.iter().copied()));
        if cur.len() == cap {
            return;
        }
        for i in at..pool.len() {
            if cur.iter().any(|&u| g.has_edge(u, pool[i])) {
                continue;
            }
            cur.push(pool[i]);
            go(g, pool, cap, i + 1, cur, out);
            cur.pop();
        }
    }
    go(g, pool, cap, 0, &mut Vec::new(), &mut out);
    out
}

/// The location, size, independence and list conditions on every family,
/// then the full validator: every tuple is built and checked.
pub fn naive_canvases(
    g: &WeightedGraph,
    lists: &ListAssignment,
    k: usize,
    r: usize,
    keep: &dyn Fn(&Canvas) -> bool,
    visit: &mut dyn FnMut(&Canvas),
) {
    let n = g.n();
    let kk = lists.k();
    let bound = size_bound(k, r).min(n);
    let mut seqs: Vec<Vec<usize>> = Vec::new();
    fn seq(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                seq(n, max, cur, out);
                cur.pop();
            }
        }
    }
    seq(n, bound, &mut Vec::new(), &mut seqs);
    for s in seqs {
        let t = s.len();
        let s_set = VertexSet::from_iter_sized(n, s.iter().copied());
        let mut x = Vec::new();
        let mut seen = s_set.clone();
        for &v in &s {
            let xi = g.neighbours(v).difference(&seen);
            seen.union_with(&xi);
            x.push(xi);
        }
        let n_s = seen.difference(&s_set);
        let m = g.vertex_set().difference(&seen);
        let with = |set: &VertexSet, c: Colour| -> Vec<usize> { set.iter().filter(|&v| lists.get(v).contains(c)).collect() };
        // every family slot with its options
        let mut slots: Vec<(Slot, Vec<VertexSet>)> = Vec::new();
        for c in 1..=kk as Colour {
            slots.push((Slot::A(c), independent_subsets(g, &with(&n_s, c), 2 * k)));
        }
        for c in 1..=kk as Colour {
            slots.push((Slot::B(c), independent_subsets(g, &with(&m, c), r)));
        }
        for i in 0..t {
            for c in 1..=kk as Colour {
                slots.push((Slot::Z(i, c), independent_subsets(g, &with(&x[i], c), r)));
            }
        }
        for i in 0..t {
            for l in i + 1..t {
                for c in 1..=kk as Colour {
                    slots.push((Slot::Y(i, c, l), independent_subsets(g, &with(&x[i], c), 2)));
                }
            }
        }
        let mut fs: Vec<Vec<Colour>> = vec![Vec::new()];
        for &v in &s {
            fs = fs
                .into_iter()
                .flat_map(|f| {
                    lists.get(v).iter().map(move |c| {
                        let mut f = f.clone();
                        f.push(c);
                        f
                    })
                })
                .collect();
        }
        for f in fs {
            let mut q = Canvas::new(s.clone(), f, kk);
            product(g, lists, k, r, &slots, 0, &mut q, keep, visit);
        }
    }
}

#[derive(Clone, Copy)]
enum Slot {
    A(Colour),
    B(Colour),
    Z(usize, Colour),
    Y(usize, Colour, usize),
}

#[allow(clippy::too_many_arguments)]
fn product(
    g: &WeightedGraph,
    lists: &ListAssignment,
    k: usize,
    r: usize,
    slots: &[(Slot, Vec<VertexSet>)],
    at: usize,
    q: &mut Canvas,
    keep: &dyn Fn(&Canvas) -> bool,
    visit: &mut dyn FnMut(&Canvas),
) {
    let Some((slot, options)) = slots.get(at) else {
        if validate(q, g, lists, k, r).is_ok() && keep(q) {
            visit(q);
        }
        return;
    };
    for o in options {
        let target = match *slot {
            Slot::A(c) => q.a_mut(c),
            Slot::B(c) => q.b_mut(c),
            Slot::Z(i, c) => q.z_mut(i, c),
            Slot::Y(i, c, l) => q.y_mut(i, c, l),
        };
        *target = o.clone();
        if !o.is_empty() && !partial_ok(g, q) {
            continue;
        }
        product(g, lists, k, r, slots, at + 1, q, keep, visit);
    }
    let target = match *slot {
        Slot::A(c) => q.a_mut(c),
        Slot::B(c) => q.b_mut(c),
        Slot::Z(i, c) => q.z_mut(i, c),
        Slot::Y(i, c, l) => q.y_mut(i, c, l),
    };
    target.clear();
}

/// Conditions that only get harder as families grow: colour classes stay
/// independent, `B` stays away from every pinned vertex, and the required
/// family pairs stay disjoint. A partial tuple failing one cannot be saved.
fn partial_ok(g: &WeightedGraph, q: &Canvas) -> bool {
    let n = g.n();
    let t = q.t();
    let colours: Vec<Colour> = q.colours().collect();
    let ys = |i: usize, c: Colour| {
        let mut out = VertexSet::new(n);
        for l in i + 1..t {
            out.union_with(q.y(i, c, l));
        }
        out
    };
    let mut all_b = VertexSet::new(n);
    let mut pinned = VertexSet::new(n);
    for &c in &colours {
        let mut class = q.a(c).clone();
        for i in 0..t {
            class.union_with(q.z(i, c));
            class.union_with(&ys(i, c));
        }
        pinned.union_with(&class);
        all_b.union_with(q.b(c));
        for (j, &v) in q.s.iter().enumerate() {
            if q.f[j] == c {
                class.insert(v);
            }
        }
        if !g.is_independent(&class) {
            return false;
        }
        for &e in colours.iter().filter(|&&e| e != c) {
            if q.a(c).intersects(q.a(e)) || q.b(c).intersects(q.b(e)) {
                return false;
            }
            for i in 0..t {
                let ye = ys(i, e);
                if q.z(i, c).intersects(q.z(i, e)) || q.a(c).intersects(q.z(i, e)) || q.a(c).intersects(&ye) || q.z(i, c).intersects(&ye) {
                    return false;
                }
                if (i + 1..t).any(|l| q.y(i, c, l).intersects(q.y(i, e, l))) {
                    return false;
                }
            }
        }
    }
    all_b.iter().all(|b| !g.neighbours(b).intersects(&pinned))
}

pub fn naive_canvas_set(g: &WeightedGraph, lists: &ListAssignment, k: usize, r: usize) -> BTreeSet<Canvas> {
    let mut out = BTreeSet::new();
    naive_canvases(g, lists, k, r, &|_| true, &mut |q| {
        out.insert(q.clone());
    });
    out
}

/// Filter for the solver's reduced enumeration, written out from the
/// definitions: `Y_{i,c,l}` only beside a full `Z_{l,c}`, and every member
/// of an `A_c` or `Y_{i,c,l}` with a neighbour of its own in `M \ W` or
/// `X_l \ N(Z_{l,c})` respectively.
pub fn reduced_keep(g: &WeightedGraph, r: usize) -> impl Fn(&Canvas) -> bool + '_ {
    move |q: &Canvas| {
        let n = g.n();
        let t = q.t();
        let s = q.s_set(n);
        let mut x = Vec::new();
        let mut seen = s.clone();
        for &v in &q.s {
            let xi = g.neighbours(v).difference(&seen);
            seen.union_with(&xi);
            x.push(xi);
        }
        let m = g.vertex_set().difference(&seen);
        let full: Vec<Colour> = q.colours().filter(|&c| r > 0 && q.b(c).len() == r).collect();
        let w: Vec<usize> = if r == 0 {
            Vec::new()
        } else {
            m.iter().filter(|&v| full.iter().all(|&c| g.neighbours(v).intersects(q.b(c)))).collect()
        };
        let m_minus_w: Vec<usize> = m.iter().filter(|v| !w.contains(v)).collect();
        let own = |set: &VertexSet, target: &[usize]| {
            set.iter().all(|a| {
                target
                    .iter()
                    .any(|&u| g.has_edge(a, u) && set.iter().all(|b| b == a || !g.has_edge(b, u)))
            })
        };
        for c in q.colours() {
            if !own(q.a(c), &m_minus_w) {
                return false;
            }
            for i in 0..t {
                for l in i + 1..t {
                    let y = q.y(i, c, l);
                    if y.is_empty() {
                        continue;
                    }
                    if q.z(l, c).len() != r {
                        return false;
                    }
                    let target: Vec<usize> = x[l]
                        .iter()
                        .filter(|&u| q.z(l, c).iter().all(|z| !g.has_edge(z, u)))
                        .collect();
                    if !own(y, &target) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Random lists inside `[k]`, each nonempty with probability about 0.9.
pub fn random_lists(rng: &mut impl Rng, n: usize, k: usize) -> ListAssignment {
    let lists = (0..n)
        .map(|_| {
            let mut l = wmkcis::colour::ColourSet::EMPTY;
            for c in 1..=k as Colour {
                if rng.gen_bool(0.6) {
                    l = l.with(c);
                }
            }
            l
        })
        .collect();
    ListAssignment::new(k, lists).unwrap()
}
