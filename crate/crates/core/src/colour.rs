//! Colour lists and coloured solutions.

use std::collections::BTreeMap;
use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};

pub type Colour = u8;

/// Largest supported colour index.
pub const MAX_COLOURS: usize = 31;

/// A set of colours from `1..=31`, one bit per colour.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourSet(u32);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    /// `{1, .., k}`.
    pub fn first_k(k: usize) -> ColourSet {
        assert!(k <= MAX_COLOURS);
        ColourSet(((1u64 << (k + 1)) - 2) as u32)
    }

    pub fn single(c: Colour) -> ColourSet {
        ColourSet(1 << c)
    }

    pub fn from_colours<I: IntoIterator<Item = Colour>>(it: I) -> ColourSet {
        it.into_iter().fold(ColourSet::EMPTY, |s, c| s.with(c))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, c: Colour) -> bool {
        self.0 & (1 << c) != 0
    }

    #[inline]
    pub fn with(self, c: Colour) -> ColourSet {
        ColourSet(self.0 | (1 << c))
    }

    #[inline]
    pub fn without(self, c: Colour) -> ColourSet {
        ColourSet(self.0 & !(1 << c))
    }

    #[inline]
    pub fn union(self, o: ColourSet) -> ColourSet {
        ColourSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: ColourSet) -> ColourSet {
        ColourSet(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: ColourSet) -> ColourSet {
        ColourSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn max(self) -> Option<Colour> {
        (self.0 != 0).then(|| (31 - self.0.leading_zeros()) as Colour)
    }

    /// Colours in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Colour> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let c = bits.trailing_zeros() as Colour;
                bits &= bits - 1;
                c
            })
        })
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Per-vertex colour lists `L(v) ⊆ [k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    k: usize,
    lists: Vec<ColourSet>,
}

impl ListAssignment {
    /// Every vertex gets `[k]`.
    pub fn full(n: usize, k: usize) -> ListAssignment {
        assert!((1..=MAX_COLOURS).contains(&k), "k must lie in 1..={MAX_COLOURS}");
        ListAssignment {
            k,
            lists: vec![ColourSet::first_k(k); n],
        }
    }

    pub fn new(k: usize, lists: Vec<ColourSet>) -> Result<ListAssignment> {
        if !(1..=MAX_COLOURS).contains(&k) {
            return Err(Error::ColourOutOfRange { colour: k, k: MAX_COLOURS });
        }
        let allowed = ColourSet::first_k(k);
        for l in &lists {
            if let Some(c) = l.difference(allowed).iter().next() {
                return Err(Error::ColourOutOfRange { colour: c as usize, k });
            }
        }
        Ok(ListAssignment { k, lists })
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> ColourSet {
        self.lists[v]
    }

    pub fn set(&mut self, v: usize, l: ColourSet) {
        debug_assert!(l.difference(ColourSet::first_k(self.k)).is_empty());
        self.lists[v] = l;
    }

    pub fn as_slice(&self) -> &[ColourSet] {
        &self.lists
    }

    /// Union of the lists of the vertices in `within`.
    pub fn palette(&self, within: &VertexSet) -> ColourSet {
        within
            .iter()
            .fold(ColourSet::EMPTY, |acc, v| acc.union(self.lists[v]))
    }

    /// Vertices of `within` whose list is nonempty.
    pub fn colourable_vertices(&self, within: &VertexSet) -> VertexSet {
        let mut out = within.clone();
        for v in within {
            if self.lists[v].is_empty() {
                out.remove(v);
            }
        }
        out
    }

    /// Lists of the vertices of `map`, in that order (for induced subgraphs).
    pub fn restrict(&self, map: &[usize]) -> ListAssignment {
        ListAssignment {
            k: self.k,
            lists: map.iter().map(|&v| self.lists[v]).collect(),
        }
    }
}

/// An induced subgraph together with a colouring of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredSolution {
    pub vertices: VertexSet,
    pub colouring: BTreeMap<usize, Colour>,
    pub total_weight: Weight,
}

impl ColouredSolution {
    pub fn empty(n: usize) -> ColouredSolution {
        ColouredSolution {
            vertices: VertexSet::new(n),
            colouring: BTreeMap::new(),
            total_weight: 0,
        }
    }

    /// Builds a solution from a colouring, computing vertex set and weight.
    pub fn from_colouring(g: &WeightedGraph, colouring: BTreeMap<usize, Colour>) -> Result<ColouredSolution> {
        let vertices = VertexSet::from_iter_sized(g.n(), colouring.keys().copied());
        g.check_set(&vertices)?;
        let total_weight = g.set_weight(&vertices)?;
        Ok(ColouredSolution {
            vertices,
            colouring,
            total_weight,
        })
    }

    /// Renames vertices through `map` (local index -> index in a larger graph).
    pub fn lift(&self, map: &[usize], n: usize) -> ColouredSolution {
        ColouredSolution {
            vertices: VertexSet::from_iter_sized(n, self.vertices.iter().map(|v| map[v])),
            colouring: self.colouring.iter().map(|(&v, &c)| (map[v], c)).collect(),
            total_weight: self.total_weight,
        }
    }

    /// Independent re-check: the colouring covers exactly `vertices`, is
    /// proper on the induced subgraph, respects the lists, and the weight
    /// is the checked sum.
    pub fn verify(&self, g: &WeightedGraph, lists: &ListAssignment) -> std::result::Result<(), String> {
        if self.colouring.len() != self.vertices.len()
            || !self.colouring.keys().all(|&v| self.vertices.contains(v))
        {
            return Err("colouring domain differs from vertex set".into());
        }
        for (&v, &c) in &self.colouring {
            if v >= g.n() {
                return Err(format!("vertex {v} out of range"));
            }
            if !lists.get(v).contains(c) {
                return Err(format!("vertex {v} coloured {c} outside its list"));
            }
            for u in g.neighbours(v).iter().filter(|&u| u > v) {
                if self.colouring.get(&u) == Some(&c) {
                    return Err(format!("edge {v}-{u} is monochromatic"));
                }
            }
        }
        match g.set_weight(&self.vertices) {
            Ok(w) if w == self.total_weight => Ok(()),
            Ok(w) => Err(format!("stated weight {} but vertices weigh {w}", self.total_weight)),
            Err(e) => Err(e.to_string()),
        }
    }
}
