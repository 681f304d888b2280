//! The full solver: recursion on the number of colours in use.
//!
//! A subproblem whose lists use at most one colour is a maximum-weight
//! independent set problem. Otherwise each connected piece is swept with
//! canvases, every canvas yields one candidate component, and an
//! independent set of the blob graph over the candidates picks the pieces
//! of the answer.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::bitset::VertexSet;
use crate::canvas::{CanvasEnumerator, EnumerationOptions};
use crate::colour::{ColourSet, ColouredSolution, ListAssignment};
use crate::component::{generate_component_with, SubproblemSolver};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::hfree::check_free;
use crate::mwis::{build_blob_graph, mwis_p5rk1_within, BranchAndBoundMwis, FreenessCheck};
use crate::oracles::DEFAULT_ORACLE_CAP;

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub k: usize,
    pub r: usize,
    /// Reject inputs that contain an induced `P5 + rK1`.
    pub validate_input: bool,
    /// Sweep one ordering per set `S` only. Experimental: not known to
    /// preserve optimality.
    pub canonical_orderings: bool,
    /// Size cap handed to the oracles by callers that compare against them.
    pub oracle_cap: usize,
    /// Worker threads; 1 runs everything on the calling thread.
    pub parallelism: usize,
    /// Cache subproblem answers by vertex set and lists.
    pub memoize: bool,
}

impl SolverConfig {
    pub fn new(k: usize, r: usize) -> SolverConfig {
        SolverConfig {
            k,
            r,
            validate_input: true,
            canonical_orderings: false,
            oracle_cap: DEFAULT_ORACLE_CAP,
            parallelism: 1,
            memoize: false,
        }
    }
}

/// Deduplicated candidate components, sorted by vertex set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidatePool {
    pub components: Vec<ColouredSolution>,
}

impl CandidatePool {
    /// Keeps one colouring per vertex set, the smallest in map order, so
    /// the pool does not depend on the order candidates arrive in.
    pub fn from_candidates<I: IntoIterator<Item = ColouredSolution>>(it: I) -> CandidatePool {
        let mut by_set: BTreeMap<VertexSet, ColouredSolution> = BTreeMap::new();
        for c in it {
            merge_candidate(&mut by_set, c);
        }
        CandidatePool {
            components: by_set.into_values().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

fn merge_candidate(by_set: &mut BTreeMap<VertexSet, ColouredSolution>, c: ColouredSolution) {
    match by_set.get_mut(&c.vertices) {
        Some(old) if old.colouring <= c.colouring => {}
        Some(old) => *old = c,
        None => {
            by_set.insert(c.vertices.clone(), c);
        }
    }
}

/// Picks pairwise anticomplete pool members of maximum total weight.
pub fn assemble_from_pool(g: &WeightedGraph, pool: &CandidatePool, r: usize) -> Result<ColouredSolution> {
    let sets: Vec<VertexSet> = pool.components.iter().map(|c| c.vertices.clone()).collect();
    let blob = build_blob_graph(g, &sets)?;
    let chosen = mwis_p5rk1_within(&blob.graph, &blob.graph.vertex_set(), r, &BranchAndBoundMwis, FreenessCheck::Skip)?;
    let mut colouring = BTreeMap::new();
    for b in &chosen {
        colouring.extend(pool.components[b].colouring.iter().map(|(&v, &c)| (v, c)));
    }
    ColouredSolution::from_colouring(g, colouring)
}

/// Counters from one run. Only the top level is counted, so the numbers
/// do not depend on memoisation or scheduling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub canvases: u64,
    pub pool_size: u64,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub solution: ColouredSolution,
    pub stats: SolveStats,
}

/// Called with each connected piece the solver sweeps and its pool.
pub type PoolObserver<'a> = dyn Fn(&WeightedGraph, &CandidatePool) + Sync + 'a;

type MemoKey = (VertexSet, Vec<ColourSet>);

pub struct Solver<'o> {
    cfg: SolverConfig,
    memo: Mutex<HashMap<MemoKey, ColouredSolution>>,
    canvases: AtomicU64,
    pool_size: AtomicU64,
    observer: Option<&'o PoolObserver<'o>>,
}

/// Maximum-weight `lists`-colourable induced subgraph of `g`.
pub fn solve(g: &WeightedGraph, lists: &ListAssignment, cfg: SolverConfig) -> Result<Solution> {
    Solver::new(cfg).run(g, lists)
}

impl<'o> Solver<'o> {
    pub fn new(cfg: SolverConfig) -> Solver<'o> {
        Solver {
            cfg,
            memo: Mutex::new(HashMap::new()),
            canvases: AtomicU64::new(0),
            pool_size: AtomicU64::new(0),
            observer: None,
        }
    }

    /// Registers a callback that sees every candidate pool, nested ones
    /// included, together with the graph it was built on.
    pub fn with_pool_observer(mut self, f: &'o PoolObserver<'o>) -> Self {
        self.observer = Some(f);
        self
    }

    pub fn run(&self, g: &WeightedGraph, lists: &ListAssignment) -> Result<Solution> {
        let cfg = &self.cfg;
        if lists.len() != g.n() {
            return Err(Error::Input(format!("{} lists for {} vertices", lists.len(), g.n())));
        }
        if lists.k() != cfg.k {
            return Err(Error::Input(format!("lists use k = {} but the solver has k = {}", lists.k(), cfg.k)));
        }
        if cfg.validate_input {
            if let Some(w) = check_free(g, cfg.r) {
                return Err(Error::NotFree { r: cfg.r, witness: w });
            }
        }
        let identity: Vec<usize> = (0..g.n()).collect();
        let solution = if cfg.parallelism > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.parallelism)
                .build()
                .map_err(|e| Error::Input(e.to_string()))?;
            pool.install(|| self.solve_set(g, &identity, &g.vertex_set(), lists, true))?
        } else {
            self.solve_set(g, &identity, &g.vertex_set(), lists, true)?
        };
        Ok(Solution {
            solution,
            stats: SolveStats {
                canvases: self.canvases.load(Ordering::Relaxed),
                pool_size: self.pool_size.load(Ordering::Relaxed),
            },
        })
    }

    /// Solves `G[within]`. `origin` maps `g`'s vertices to the input graph.
    fn solve_set(
        &self,
        g: &WeightedGraph,
        origin: &[usize],
        within: &VertexSet,
        lists: &ListAssignment,
        top: bool,
    ) -> Result<ColouredSolution> {
        let usable = lists.colourable_vertices(within);
        let mut colouring = BTreeMap::new();
        for comp in g.components_within(&usable) {
            let palette = lists.palette(&comp);
            let part = if palette.len() <= 1 {
                let c = palette.iter().next().expect("usable vertices have a colour");
                let chosen = mwis_p5rk1_within(g, &comp, self.cfg.r, &BranchAndBoundMwis, FreenessCheck::Skip)?;
                chosen.iter().map(|v| (v, c)).collect()
            } else {
                self.solve_connected(g, origin, &comp, lists, palette, top)?.colouring
            };
            colouring.extend(part);
        }
        ColouredSolution::from_colouring(g, colouring)
    }

    fn solve_connected(
        &self,
        g: &WeightedGraph,
        origin: &[usize],
        comp: &VertexSet,
        lists: &ListAssignment,
        palette: ColourSet,
        top: bool,
    ) -> Result<ColouredSolution> {
        let key = (self.cfg.memoize && !top).then(|| {
            let ids = VertexSet::from_iter_sized(0, comp.iter().map(|v| origin[v]));
            (ids, comp.iter().map(|v| lists.get(v)).collect::<Vec<_>>())
        });
        if let Some(key) = &key {
            if let Some(hit) = self.memo.lock().expect("memo lock").get(key) {
                let map: Vec<usize> = comp.to_vec();
                return Ok(hit.lift(&map, g.n()));
            }
        }

        let (h, map) = g.induced_subgraph(comp)?;
        let h_lists = lists.restrict(&map);
        let h_origin: Vec<usize> = map.iter().map(|&v| origin[v]).collect();
        let opts = EnumerationOptions {
            canonical_orderings: self.cfg.canonical_orderings,
            ..EnumerationOptions::reduced()
        };
        let enumerator = CanvasEnumerator::new(&h, &h_lists, palette.len(), self.cfg.r).with_options(opts);
        let supports = enumerator.supports();
        let nested = Nested {
            solver: self,
            origin: &h_origin,
        };
        let sweep = |s: &Vec<usize>| -> Result<(BTreeMap<VertexSet, ColouredSolution>, u64)> {
            let mut found = BTreeMap::new();
            let mut count = 0u64;
            let mut err = None;
            let _ = enumerator.for_each_on(s, &mut |q, d| {
                count += 1;
                match generate_component_with(&h, q, d, &h_lists, self.cfg.r, &nested) {
                    Ok(c) => {
                        merge_candidate(&mut found, c);
                        ControlFlow::Continue(())
                    }
                    Err(e) => {
                        err = Some(e);
                        ControlFlow::Break(())
                    }
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok((found, count)),
            }
        };
        let merge = |mut a: (BTreeMap<VertexSet, ColouredSolution>, u64), b: (BTreeMap<VertexSet, ColouredSolution>, u64)| {
            for c in b.0.into_values() {
                merge_candidate(&mut a.0, c);
            }
            (a.0, a.1 + b.1)
        };
        let (found, count) = if self.cfg.parallelism > 1 {
            supports
                .par_iter()
                .map(sweep)
                .try_reduce(|| (BTreeMap::new(), 0), |a, b| Ok(merge(a, b)))?
        } else {
            let mut acc = (BTreeMap::new(), 0);
            for s in &supports {
                acc = merge(acc, sweep(s)?);
            }
            acc
        };
        let pool = CandidatePool {
            components: found.into_values().collect(),
        };
        if top {
            self.canvases.fetch_add(count, Ordering::Relaxed);
            self.pool_size.fetch_add(pool.len() as u64, Ordering::Relaxed);
        }
        if let Some(obs) = self.observer {
            obs(&h, &pool);
        }
        let best = assemble_from_pool(&h, &pool, self.cfg.r)?;
        if let Some(key) = key {
            self.memo.lock().expect("memo lock").insert(key, best.clone());
        }
        Ok(best.lift(&map, g.n()))
    }
}

struct Nested<'s, 'o> {
    solver: &'s Solver<'o>,
    origin: &'s [usize],
}

impl SubproblemSolver for Nested<'_, '_> {
    fn solve_within(&self, g: &WeightedGraph, within: &VertexSet, lists: &ListAssignment) -> Result<ColouredSolution> {
        self.solver.solve_set(g, self.origin, within, lists, false)
    }
}

/// The solver as a [`SubproblemSolver`], for driving single canvases.
pub struct SolverSubsolver<'o>(pub Solver<'o>);

impl SubproblemSolver for SolverSubsolver<'_> {
    fn solve_within(&self, g: &WeightedGraph, within: &VertexSet, lists: &ListAssignment) -> Result<ColouredSolution> {
        let identity: Vec<usize> = (0..g.n()).collect();
        self.0.solve_set(g, &identity, within, lists, false)
    }
}
