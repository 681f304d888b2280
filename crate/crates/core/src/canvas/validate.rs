use std::fmt;

use super::{derive, size_bound, Canvas};
use crate::bitset::VertexSet;
use crate::colour::{Colour, ListAssignment};
use crate::graph::WeightedGraph;

/// The defining conditions of a canvas, in checking order. `Shape` covers
/// malformed tuples (wrong family dimensions, out-of-range vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Shape,
    SetS,
    ColF,
    SetsA,
    SetsB,
    SetsY,
    SetsZ,
    SmallZ,
    Disjoint,
    Colour,
    Comps,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::Shape => "(Shape)",
            Condition::SetS => "(Set S)",
            Condition::ColF => "(Col. f)",
            Condition::SetsA => "(Sets A)",
            Condition::SetsB => "(Sets B)",
            Condition::SetsY => "(Sets Y)",
            Condition::SetsZ => "(Sets Z)",
            Condition::SmallZ => "(Small Z)",
            Condition::Disjoint => "(Disjoint)",
            Condition::Colour => "(Colour)",
            Condition::Comps => "(Comps)",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The first condition a tuple fails, with a short explanation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.condition, self.detail)
    }
}

fn fail(condition: Condition, detail: impl Into<String>) -> Result<(), Violation> {
    Err(Violation {
        condition,
        detail: detail.into(),
    })
}

fn all_listed(set: &VertexSet, lists: &ListAssignment, c: Colour) -> bool {
    set.iter().all(|v| lists.get(v).contains(c))
}

/// Checks every canvas condition for `q` with colour budget `k` and
/// parameter `r`, returning the first that fails.
pub fn validate(q: &Canvas, g: &WeightedGraph, lists: &ListAssignment, k: usize, r: usize) -> Result<(), Violation> {
    let n = g.n();
    let t = q.t();
    let kk = q.k();
    if kk != lists.k() || lists.len() != n {
        return fail(Condition::Shape, "colour range or list count differs from the instance");
    }
    if q.f.len() != t {
        return fail(Condition::Shape, "f must give one colour per vertex of S");
    }
    let every_family = q
        .a
        .iter()
        .chain(&q.b)
        .chain(&q.z)
        .chain(q.y_raw());
    for set in every_family {
        if set.last().is_some_and(|v| v >= n) {
            return fail(Condition::Shape, "family member out of range");
        }
    }
    for i in 0..t {
        for l in 0..=i {
            for c in q.colours() {
                if !q.y(i, c, l).is_empty() {
                    return fail(Condition::Shape, format!("Y_{{{},{c},{}}} must have i < l", i + 1, l + 1));
                }
            }
        }
    }

    // (Set S)
    if t == 0 {
        return fail(Condition::SetS, "S is empty");
    }
    if t > size_bound(k, r) {
        return fail(Condition::SetS, format!("|S| = {t} exceeds {}", size_bound(k, r)));
    }
    if let Some(&v) = q.s.iter().find(|&&v| v >= n) {
        return fail(Condition::SetS, format!("vertex {v} out of range"));
    }
    let s_set = q.s_set(n);
    if s_set.len() != t {
        return fail(Condition::SetS, "S repeats a vertex");
    }
    if !g.is_connected_set(&s_set) {
        return fail(Condition::SetS, "G[S] is disconnected");
    }

    // (Col. f)
    for (i, (&v, &c)) in q.s.iter().zip(&q.f).enumerate() {
        if c == 0 || c as usize > kk || !lists.get(v).contains(c) {
            return fail(Condition::ColF, format!("f(v_{}) = {c} is not in L({v})", i + 1));
        }
        for (&u, &d) in q.s.iter().zip(&q.f).take(i) {
            if d == c && g.has_edge(u, v) {
                return fail(Condition::ColF, format!("edge {u}-{v} is monochromatic"));
            }
        }
    }

    let d = derive(q, g, r);
    let n_s = d.neighbourhood_of_s();

    // (Sets A)
    for c in q.colours() {
        let a = q.a(c);
        if !a.is_subset(&n_s) {
            return fail(Condition::SetsA, format!("A_{c} leaves N(S)"));
        }
        if a.len() > 2 * k {
            return fail(Condition::SetsA, format!("|A_{c}| = {} exceeds {}", a.len(), 2 * k));
        }
        if !g.is_independent(a) {
            return fail(Condition::SetsA, format!("A_{c} is not independent"));
        }
        if !all_listed(a, lists, c) {
            return fail(Condition::SetsA, format!("A_{c} has a vertex without {c} in its list"));
        }
    }

    // (Sets B)
    for c in q.colours() {
        let b = q.b(c);
        if !b.is_subset(&d.m) {
            return fail(Condition::SetsB, format!("B_{c} leaves M"));
        }
        if b.len() > r {
            return fail(Condition::SetsB, format!("|B_{c}| = {} exceeds {r}", b.len()));
        }
        if !g.is_independent(b) {
            return fail(Condition::SetsB, format!("B_{c} is not independent"));
        }
        if !all_listed(b, lists, c) {
            return fail(Condition::SetsB, format!("B_{c} has a vertex without {c} in its list"));
        }
    }

    // (Sets Y)
    for i in 0..t {
        for l in i + 1..t {
            for c in q.colours() {
                let y = q.y(i, c, l);
                let name = format!("Y_{{{},{c},{}}}", i + 1, l + 1);
                if !y.is_subset(&d.x[i]) {
                    return fail(Condition::SetsY, format!("{name} leaves X_{}", i + 1));
                }
                if y.len() > 2 {
                    return fail(Condition::SetsY, format!("|{name}| exceeds 2"));
                }
                if !g.is_independent(y) {
                    return fail(Condition::SetsY, format!("{name} is not independent"));
                }
                if !all_listed(y, lists, c) {
                    return fail(Condition::SetsY, format!("{name} has a vertex without {c} in its list"));
                }
            }
        }
    }

    // (Sets Z)
    for i in 0..t {
        for c in q.colours() {
            let z = q.z(i, c);
            let name = format!("Z_{{{},{c}}}", i + 1);
            if !z.is_subset(&d.x[i]) {
                return fail(Condition::SetsZ, format!("{name} leaves X_{}", i + 1));
            }
            if z.len() > r {
                return fail(Condition::SetsZ, format!("|{name}| exceeds {r}"));
            }
            if !g.is_independent(z) {
                return fail(Condition::SetsZ, format!("{name} is not independent"));
            }
            if !all_listed(z, lists, c) {
                return fail(Condition::SetsZ, format!("{name} has a vertex without {c} in its list"));
            }
        }
    }

    // (Small Z)
    for i in 0..t {
        for c in q.colours() {
            let z = q.z(i, c);
            if z.len() >= r {
                continue;
            }
            let mut pinned_here = q.a(c).intersection(&d.x[i]);
            for l in i + 1..t {
                pinned_here.union_with(q.y(i, c, l));
            }
            if !pinned_here.is_subset(z) {
                return fail(
                    Condition::SmallZ,
                    format!("|Z_{{{},{c}}}| < r but it misses part of A_{c} or Y", i + 1),
                );
            }
        }
    }

    // (Disjoint)
    let colours: Vec<Colour> = q.colours().collect();
    for (ci, &c) in colours.iter().enumerate() {
        for &e in &colours[ci + 1..] {
            if q.a(c).intersects(q.a(e)) {
                return fail(Condition::Disjoint, format!("A_{c} meets A_{e}"));
            }
            if q.b(c).intersects(q.b(e)) {
                return fail(Condition::Disjoint, format!("B_{c} meets B_{e}"));
            }
            for i in 0..t {
                if q.z(i, c).intersects(q.z(i, e)) {
                    return fail(Condition::Disjoint, format!("Z_{{{},{c}}} meets Z_{{{},{e}}}", i + 1, i + 1));
                }
                for l in i + 1..t {
                    if q.y(i, c, l).intersects(q.y(i, e, l)) {
                        return fail(Condition::Disjoint, format!("Y sets for colours {c} and {e} meet"));
                    }
                }
            }
        }
    }
    for &c in &colours {
        for &e in colours.iter().filter(|&&e| e != c) {
            for i in 0..t {
                if q.a(c).intersects(q.z(i, e)) {
                    return fail(Condition::Disjoint, format!("A_{c} meets Z_{{{},{e}}}", i + 1));
                }
                for l in i + 1..t {
                    if q.a(c).intersects(q.y(i, e, l)) {
                        return fail(Condition::Disjoint, format!("A_{c} meets a Y set of colour {e}"));
                    }
                    if q.z(i, c).intersects(q.y(i, e, l)) {
                        return fail(Condition::Disjoint, format!("Z_{{{},{c}}} meets a Y set of colour {e}", i + 1));
                    }
                }
            }
        }
    }

    // (Colour)
    for &c in &colours {
        let class = q.s_coloured(n, c).union(&q.pinned(c));
        if !g.is_independent(&class) {
            return fail(Condition::Colour, format!("colour class {c} is not independent"));
        }
    }

    // (Comps)
    let all_b = q.all_b();
    let mut rest = VertexSet::new(n);
    for &c in &colours {
        rest.union_with(&q.pinned(c));
    }
    if !g.is_anticomplete(&all_b, &rest) {
        return fail(Condition::Comps, "some B vertex touches an A, Y or Z vertex");
    }
    Ok(())
}
