//! Exponential-time reference solvers.
//!
//! These work on plain `u64` vertex masks and share no code with the
//! canvas pipeline, so they can serve as ground truth for it. Every
//! entry point refuses graphs larger than the configured cap.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::colour::{Colour, ColouredSolution, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};

pub const DEFAULT_ORACLE_CAP: usize = 16;

/// Tuning knobs for the oracles.
#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Largest vertex count accepted. Must stay below 64.
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: DEFAULT_ORACLE_CAP,
        }
    }
}

impl OracleConfig {
    fn admit(&self, g: &WeightedGraph) -> Result<()> {
        if g.n() > self.cap || g.n() >= 64 {
            return Err(Error::OracleCap {
                n: g.n(),
                cap: self.cap.min(63),
            });
        }
        Ok(())
    }
}

fn masks(g: &WeightedGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbours(v).iter().fold(0u64, |m, u| m | (1 << u)))
        .collect()
}

fn mask_weight(g: &WeightedGraph, mut m: u64) -> Result<Weight> {
    let mut total: Weight = 0;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        total = total.checked_add(g.weight(v)).ok_or(Error::WeightOverflow)?;
    }
    Ok(total)
}

/// Lexicographic order of the ascending member sequences of two masks.
pub(crate) fn lex_cmp_masks(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let p = (a ^ b).trailing_zeros();
    let above = if p == 63 { 0 } else { !0u64 << (p + 1) };
    if a & (1 << p) != 0 {
        // a continues with p; b continues with something larger, or stops
        if b & above == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & above == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn mask_to_set(n: usize, mut m: u64) -> VertexSet {
    let mut s = VertexSet::new(n);
    while m != 0 {
        s.insert(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    s
}

/// Backtracking list colouring of the vertices in `subset`, ascending
/// vertex order, colours tried in ascending order.
fn colour_mask(adj: &[u64], lists: &ListAssignment, subset: u64) -> Option<Vec<(usize, Colour)>> {
    let order: Vec<usize> = (0..adj.len()).filter(|&v| subset & (1 << v) != 0).collect();
    let mut colour = vec![0 as Colour; adj.len()];
    fn go(i: usize, order: &[usize], adj: &[u64], lists: &ListAssignment, colour: &mut [Colour]) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        for c in lists.get(v).iter() {
            let clash = order[..i]
                .iter()
                .any(|&u| adj[v] & (1 << u) != 0 && colour[u] == c);
            if !clash {
                colour[v] = c;
                if go(i + 1, order, adj, lists, colour) {
                    return true;
                }
            }
        }
        colour[v] = 0;
        false
    }
    go(0, &order, adj, lists, &mut colour).then(|| order.iter().map(|&v| (v, colour[v])).collect())
}

/// A proper list colouring of all of `g`, if one exists.
pub fn oracle_l_colourable(g: &WeightedGraph, lists: &ListAssignment) -> Option<BTreeMap<usize, Colour>> {
    oracle_l_colourable_on(g, &g.vertex_set(), lists)
}

/// A proper list colouring of `G[subset]`, if one exists. No size cap:
/// backtracking is only exponential in the worst case.
pub fn oracle_l_colourable_on(
    g: &WeightedGraph,
    subset: &VertexSet,
    lists: &ListAssignment,
) -> Option<BTreeMap<usize, Colour>> {
    let order = subset.to_vec();
    let mut colour: BTreeMap<usize, Colour> = BTreeMap::new();
    fn go(
        i: usize,
        order: &[usize],
        g: &WeightedGraph,
        lists: &ListAssignment,
        colour: &mut BTreeMap<usize, Colour>,
    ) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        for c in lists.get(v).iter() {
            let clash = g.neighbours(v).iter().any(|u| colour.get(&u) == Some(&c));
            if !clash {
                colour.insert(v, c);
                if go(i + 1, order, g, lists, colour) {
                    return true;
                }
                colour.remove(&v);
            }
        }
        false
    }
    go(0, &order, g, lists, &mut colour).then_some(colour)
}

/// Maximum-weight `L`-colourable induced subgraph by exhaustive subset
/// scan in decreasing weight order; ties go to the lexicographically
/// smallest vertex set.
pub fn oracle_wmkcis(g: &WeightedGraph, lists: &ListAssignment, cfg: OracleConfig) -> Result<ColouredSolution> {
    cfg.admit(g)?;
    let n = g.n();
    let adj = masks(g);
    let mut subsets: Vec<(Weight, u64)> = Vec::with_capacity(1 << n);
    for m in 0..(1u64 << n) {
        subsets.push((mask_weight(g, m)?, m));
    }
    subsets.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| lex_cmp_masks(a.1, b.1)));
    for (w, m) in subsets {
        if let Some(col) = colour_mask(&adj, lists, m) {
            return Ok(ColouredSolution {
                vertices: mask_to_set(n, m),
                colouring: col.into_iter().collect(),
                total_weight: w,
            });
        }
    }
    unreachable!("the empty set is always colourable")
}

/// Maximum-weight independent set by branch and bound on a vertex of
/// highest remaining degree. Ties go to the lexicographically smallest set.
pub fn oracle_mwis(g: &WeightedGraph, cfg: OracleConfig) -> Result<VertexSet> {
    cfg.admit(g)?;
    let adj = masks(g);
    let weights: Vec<Weight> = g.weights().to_vec();
    // Capped at 63 vertices, so the weight total cannot overflow u128.
    struct Search<'a> {
        adj: &'a [u64],
        weights: &'a [Weight],
        best: Option<(u128, u64)>,
    }
    impl Search<'_> {
        fn run(&mut self, cand: u64, cur: u64, cur_w: u128) {
            if cand == 0 {
                let better = match self.best {
                    None => true,
                    Some((bw, bm)) => cur_w > bw || (cur_w == bw && lex_cmp_masks(cur, bm) == Ordering::Less),
                };
                if better {
                    self.best = Some((cur_w, cur));
                }
                return;
            }
            let mut rest = cand;
            let mut bound = cur_w;
            let mut pick = 0usize;
            let mut pick_deg = 0u32;
            let mut first = true;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                bound += self.weights[v] as u128;
                let d = (self.adj[v] & cand).count_ones();
                if first || d > pick_deg {
                    pick = v;
                    pick_deg = d;
                    first = false;
                }
            }
            if let Some((bw, _)) = self.best {
                if bound < bw {
                    return;
                }
            }
            let bit = 1u64 << pick;
            self.run(cand & !bit & !self.adj[pick], cur | bit, cur_w + self.weights[pick] as u128);
            self.run(cand & !bit, cur, cur_w);
        }
    }
    let mut s = Search {
        adj: &adj,
        weights: &weights,
        best: None,
    };
    s.run((1u64 << g.n()) - 1, 0, 0);
    let (w, m) = s.best.expect("search visits at least one leaf");
    if w > Weight::MAX as u128 {
        return Err(Error::WeightOverflow);
    }
    Ok(mask_to_set(g.n(), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::ColourSet;
    use crate::graph::named::*;
    use proptest::prelude::*;

    fn lists(spec: &[&[Colour]], k: usize) -> ListAssignment {
        ListAssignment::new(k, spec.iter().map(|l| ColourSet::from_colours(l.iter().copied())).collect()).unwrap()
    }

    #[test]
    fn wmkcis_examples() {
        let cfg = OracleConfig::default();
        let c5 = cycle(5);
        assert_eq!(oracle_wmkcis(&c5, &ListAssignment::full(5, 2), cfg).unwrap().total_weight, 4);
        let k4 = complete(4);
        assert_eq!(oracle_wmkcis(&k4, &ListAssignment::full(4, 2), cfg).unwrap().total_weight, 2);
        let p5 = path(5).with_weights(vec![1, 5, 1, 5, 1]).unwrap();
        let sol = oracle_wmkcis(&p5, &ListAssignment::full(5, 1), cfg).unwrap();
        assert_eq!(sol.total_weight, 10);
        assert_eq!(sol.vertices.to_vec(), vec![1, 3]);
    }

    #[test]
    fn wmkcis_output_verifies() {
        let g = cycle(7).with_weights(vec![4, 1, 3, 3, 0, 2, 6]).unwrap();
        let l = ListAssignment::full(7, 2);
        let sol = oracle_wmkcis(&g, &l, OracleConfig::default()).unwrap();
        sol.verify(&g, &l).unwrap();
        assert!(oracle_l_colourable_on(&g, &sol.vertices, &l).is_some());
    }

    #[test]
    fn mwis_examples() {
        let cfg = OracleConfig::default();
        let c5 = cycle(5);
        assert_eq!(c5.set_weight(&oracle_mwis(&c5, cfg).unwrap()).unwrap(), 2);
        let star = star(4).with_weights(vec![10, 1, 1, 1, 1]).unwrap();
        assert_eq!(oracle_mwis(&star, cfg).unwrap().to_vec(), vec![0]);
        assert!(oracle_mwis(&WeightedGraph::empty(0), cfg).unwrap().is_empty());
    }

    #[test]
    fn colourability_examples() {
        let k3 = complete(3);
        assert!(oracle_l_colourable(&k3, &lists(&[&[1, 2], &[1, 2], &[1, 2]], 2)).is_none());
        let p3 = path(3);
        let col = oracle_l_colourable(&p3, &lists(&[&[1], &[2], &[1]], 2)).unwrap();
        assert_eq!(col.into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 1)]);
        assert!(oracle_l_colourable(&complete(2), &lists(&[&[1], &[1]], 1)).is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let g = path(17);
        assert!(matches!(
            oracle_mwis(&g, OracleConfig::default()),
            Err(Error::OracleCap { n: 17, .. })
        ));
        assert!(oracle_wmkcis(&g, &ListAssignment::full(17, 1), OracleConfig::default()).is_err());
        assert!(oracle_mwis(&g, OracleConfig { cap: 20 }).is_ok());
    }

    proptest! {
        #[test]
        fn mask_order_matches_vertex_set_order(a in any::<u64>(), b in any::<u64>()) {
            let sa = mask_to_set(64, a);
            let sb = mask_to_set(64, b);
            prop_assert_eq!(lex_cmp_masks(a, b), sa.lex_cmp(&sb));
        }
    }
}
