//! Instance files, generators and result records.
//!
//! Edge-list format, one item per line:
//!
//! ```text
//! # comment
//! a          vertex declaration
//! a b        edge
//! w a 5      weight of a (default 1)
//! l a 1,3    list of a ("-" for the empty list)
//! ```
//!
//! Vertices are numbered in order of first appearance. The DIMACS-like
//! format has `p edge N M`, `e U V` (1-indexed), optional `n V W` weight
//! lines and `l V c1,c2` list lines, and `c` comments.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::colour::{Colour, ColourSet, ColouredSolution, ListAssignment, MAX_COLOURS};
use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};
use crate::hfree::check_free;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Auto,
    Edges,
    Dimacs,
}

/// A parsed instance. `lists[v]` is `None` when the file gives no list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: WeightedGraph,
    pub names: Vec<String>,
    pub lists: Vec<Option<ColourSet>>,
}

impl Instance {
    pub fn unnamed(graph: WeightedGraph) -> Instance {
        let n = graph.n();
        Instance {
            graph,
            names: (0..n).map(|v| v.to_string()).collect(),
            lists: vec![None; n],
        }
    }

    pub fn has_lists(&self) -> bool {
        self.lists.iter().any(Option::is_some)
    }

    /// Lists for a `k`-colour run: file lists where given, `[k]` elsewhere.
    pub fn list_assignment(&self, k: usize, use_file_lists: bool) -> Result<ListAssignment> {
        if !(1..=MAX_COLOURS).contains(&k) {
            return Err(Error::Input(format!("k must lie in 1..={MAX_COLOURS}")));
        }
        let full = ColourSet::first_k(k);
        let lists = self
            .lists
            .iter()
            .map(|l| match l {
                Some(l) if use_file_lists => *l,
                _ => full,
            })
            .collect();
        ListAssignment::new(k, lists)
    }
}

/// Parsed instance plus non-fatal remarks (duplicate edges and the like).
#[derive(Clone, Debug)]
pub struct Parsed {
    pub instance: Instance,
    pub warnings: Vec<String>,
}

pub fn parse_instance(path: &Path, format: Format) -> Result<Parsed> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_str(&text, format)
}

pub fn parse_str(text: &str, format: Format) -> Result<Parsed> {
    let format = match format {
        Format::Auto => detect(text),
        f => f,
    };
    match format {
        Format::Dimacs => parse_dimacs(text),
        _ => parse_edges(text),
    }
}

fn detect(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c ") && *l != "c");
    match first {
        Some(l) if l.starts_with("p ") => Format::Dimacs,
        _ => Format::Edges,
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_colours(line: usize, spec: &str) -> Result<ColourSet> {
    if spec == "-" {
        return Ok(ColourSet::EMPTY);
    }
    let mut set = ColourSet::EMPTY;
    for part in spec.split(',').filter(|p| !p.is_empty()) {
        let c: usize = part
            .parse()
            .map_err(|_| parse_err(line, format!("bad colour {part:?}")))?;
        if !(1..=MAX_COLOURS).contains(&c) {
            return Err(parse_err(line, format!("colour {c} outside 1..={MAX_COLOURS}")));
        }
        set = set.with(c as Colour);
    }
    Ok(set)
}

fn parse_weight(line: usize, spec: &str) -> Result<Weight> {
    spec.parse()
        .map_err(|_| parse_err(line, format!("weight {spec:?} is not a nonnegative integer")))
}

#[derive(Default)]
struct Builder {
    index: HashMap<String, usize>,
    names: Vec<String>,
    weights: Vec<Weight>,
    lists: Vec<Option<ColourSet>>,
    edges: BTreeSet<(usize, usize)>,
    warnings: Vec<String>,
}

impl Builder {
    fn vertex(&mut self, name: &str) -> usize {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.names.len();
        self.index.insert(name.to_string(), v);
        self.names.push(name.to_string());
        self.weights.push(1);
        self.lists.push(None);
        v
    }

    fn edge(&mut self, line: usize, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(parse_err(line, format!("self-loop at {}", self.names[a])));
        }
        let e = (a.min(b), a.max(b));
        if !self.edges.insert(e) {
            self.warnings.push(format!(
                "line {line}: duplicate edge {} {} ignored",
                self.names[e.0], self.names[e.1]
            ));
        }
        Ok(())
    }

    fn finish(self) -> Result<Parsed> {
        let edges: Vec<(usize, usize)> = self.edges.into_iter().collect();
        let graph = WeightedGraph::from_edges(self.weights, &edges)?;
        Ok(Parsed {
            instance: Instance {
                graph,
                names: self.names,
                lists: self.lists,
            },
            warnings: self.warnings,
        })
    }
}

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn parse_edges(text: &str) -> Result<Parsed> {
    let mut b = Builder::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [a] => {
                b.vertex(a);
            }
            [u, v] => {
                let (u, v) = (b.vertex(u), b.vertex(v));
                b.edge(line, u, v)?;
            }
            ["w", name, w] => {
                let w = parse_weight(line, w)?;
                let v = b.vertex(name);
                b.weights[v] = w;
            }
            ["l", name, spec] => {
                let l = parse_colours(line, spec)?;
                let v = b.vertex(name);
                b.lists[v] = Some(l);
            }
            _ => return Err(parse_err(line, format!("cannot read {:?}", raw.trim()))),
        }
    }
    b.finish()
}

fn parse_dimacs(text: &str) -> Result<Parsed> {
    let mut b = Builder::default();
    let mut declared: Option<(usize, usize)> = None;
    let vertex = |b: &mut Builder, line: usize, tok: &str, n: usize| -> Result<usize> {
        let v: usize = tok
            .parse()
            .map_err(|_| parse_err(line, format!("bad vertex {tok:?}")))?;
        if v == 0 || v > n {
            return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
        }
        Ok(b.index[&v.to_string()])
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["c", ..] => {}
            [t, ..] if t.starts_with('#') => {}
            ["p", _kind, n, m] => {
                if declared.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                let n: usize = n.parse().map_err(|_| parse_err(line, "bad vertex count"))?;
                let m: usize = m.parse().map_err(|_| parse_err(line, "bad edge count"))?;
                for v in 1..=n {
                    b.vertex(&v.to_string());
                }
                declared = Some((n, m));
            }
            [kind, rest @ ..] => {
                let (n, _) = declared.ok_or_else(|| parse_err(line, "data before the problem line"))?;
                match (*kind, rest) {
                    ("e", [u, v]) => {
                        let u = vertex(&mut b, line, u, n)?;
                        let v = vertex(&mut b, line, v, n)?;
                        b.edge(line, u, v)?;
                    }
                    ("n", [v, w]) => {
                        let v = vertex(&mut b, line, v, n)?;
                        b.weights[v] = parse_weight(line, w)?;
                    }
                    ("l", [v, spec]) => {
                        let v = vertex(&mut b, line, v, n)?;
                        b.lists[v] = Some(parse_colours(line, spec)?);
                    }
                    _ => return Err(parse_err(line, format!("cannot read {:?}", raw.trim()))),
                }
            }
        }
    }
    let Some((_, m)) = declared else {
        return Err(parse_err(1, "missing problem line"));
    };
    if m != b.edges.len() {
        b.warnings
            .push(format!("problem line declares {m} edges, found {}", b.edges.len()));
    }
    b.finish()
}

/// Edge-list text that parses back to the same instance.
pub fn serialize(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    for name in &inst.names {
        let _ = writeln!(out, "{name}");
    }
    for (v, name) in inst.names.iter().enumerate() {
        if g.weight(v) != 1 {
            let _ = writeln!(out, "w {name} {}", g.weight(v));
        }
    }
    for (v, name) in inst.names.iter().enumerate() {
        if let Some(l) = inst.lists[v] {
            let spec = if l.is_empty() {
                "-".to_string()
            } else {
                l.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            };
            let _ = writeln!(out, "l {name} {spec}");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", inst.names[u], inst.names[v]);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Split,
    Cograph,
    #[value(name = "p5rk1-rejection")]
    P5rk1Rejection,
}

#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub n: usize,
    /// Edge probability for the split and rejection families.
    pub p: f64,
    /// Pattern parameter for the rejection family.
    pub r: usize,
    /// Uniform weights in `0..=max_weight`; unit weights when `None`.
    pub max_weight: Option<Weight>,
    pub retries: usize,
}

impl GenParams {
    pub fn new(n: usize) -> GenParams {
        GenParams {
            n,
            p: 0.5,
            r: 0,
            max_weight: None,
            retries: 10_000,
        }
    }
}

fn cotree(rng: &mut ChaCha8Rng, vertices: &[usize], edges: &mut Vec<(usize, usize)>) {
    if vertices.len() <= 1 {
        return;
    }
    let cut = rng.gen_range(1..vertices.len());
    let (left, right) = vertices.split_at(cut);
    cotree(rng, left, edges);
    cotree(rng, right, edges);
    if rng.gen_bool(0.5) {
        for &a in left {
            for &b in right {
                edges.push((a, b));
            }
        }
    }
}

/// A reproducible random instance from `family`. Split graphs and
/// cographs are P5-free; the rejection family retries `G(n, p)` until it
/// is `(P5 + rK1)`-free.
pub fn generate_instance(family: Family, params: GenParams, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let (graph, r) = match family {
        Family::Split => {
            let clique = rng.gen_range(0..=n);
            let (a, b) = order.split_at(clique);
            let mut edges = Vec::new();
            for (i, &u) in a.iter().enumerate() {
                edges.extend(a[i + 1..].iter().map(|&v| (u, v)));
                for &v in b {
                    if rng.gen_bool(params.p) {
                        edges.push((u, v));
                    }
                }
            }
            (WeightedGraph::unweighted(n, &edges)?, 0)
        }
        Family::Cograph => {
            let mut edges = Vec::new();
            cotree(&mut rng, &order, &mut edges);
            (WeightedGraph::unweighted(n, &edges)?, 0)
        }
        Family::P5rk1Rejection => {
            let mut found = None;
            for _ in 0..params.retries {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(params.p) {
                            edges.push((u, v));
                        }
                    }
                }
                let g = WeightedGraph::unweighted(n, &edges)?;
                if check_free(&g, params.r).is_none() {
                    found = Some(g);
                    break;
                }
            }
            let g = found.ok_or(Error::RetryBudget { tries: params.retries })?;
            (g, params.r)
        }
    };
    if let Some(w) = check_free(&graph, r) {
        return Err(Error::NotFree { r, witness: w });
    }
    let weights = match params.max_weight {
        Some(max) => (0..n).map(|_| rng.gen_range(0..=max)).collect(),
        None => vec![1; n],
    };
    Ok(Instance::unnamed(graph.with_weights(weights)?))
}

/// Names compare as numbers when both are numeric, else as strings.
pub fn name_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecordStats {
    pub canvases: u64,
    pub pool_size: u64,
    pub wall_ms: u64,
}

/// Machine-readable outcome of a solve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultRecord {
    pub schema: u32,
    pub weight: Weight,
    pub vertices: Vec<String>,
    #[serde(serialize_with = "ordered_map")]
    pub colouring: Vec<(String, Colour)>,
    pub stats: RecordStats,
    pub verified: bool,
}

fn ordered_map<S: Serializer>(pairs: &[(String, Colour)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(pairs.len()))?;
    for (k, v) in pairs {
        m.serialize_entry(k, v)?;
    }
    m.end()
}

impl ResultRecord {
    /// Builds the record, re-checking the solution against `g` and `lists`.
    pub fn new(inst: &Instance, lists: &ListAssignment, sol: &ColouredSolution, stats: RecordStats) -> ResultRecord {
        let verified = sol.verify(&inst.graph, lists).is_ok();
        let mut vertices: Vec<String> = sol.vertices.iter().map(|v| inst.names[v].clone()).collect();
        vertices.sort_by(|a, b| name_cmp(a, b));
        let by_name: BTreeMap<&str, Colour> = sol
            .colouring
            .iter()
            .map(|(&v, &c)| (inst.names[v].as_str(), c))
            .collect();
        let colouring = vertices.iter().map(|n| (n.clone(), by_name[n.as_str()])).collect();
        ResultRecord {
            schema: 1,
            weight: sol.total_weight,
            vertices,
            colouring,
            stats,
            verified,
        }
    }

    /// The record with wall time zeroed, for run-to-run comparison.
    pub fn without_timing(&self) -> ResultRecord {
        let mut r = self.clone();
        r.stats.wall_ms = 0;
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Instance {
        parse_str(text, Format::Auto).unwrap().instance
    }

    #[test]
    fn edge_list_path() {
        let inst = parse("0 1\n1 2\n");
        assert_eq!(inst.graph.n(), 3);
        assert_eq!(inst.graph.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn dimacs_edge() {
        let inst = parse("c tiny\np edge 2 1\ne 1 2\n");
        assert_eq!(inst.graph.n(), 2);
        assert!(inst.graph.has_edge(0, 1));
    }

    #[test]
    fn declared_vertex_with_weight() {
        let inst = parse("a\nw a 5\n");
        assert_eq!(inst.graph.n(), 1);
        assert_eq!(inst.graph.weight(0), 5);
    }

    #[test]
    fn duplicates_warn_and_loops_fail() {
        let p = parse_str("a b\nb a\n", Format::Edges).unwrap();
        assert_eq!(p.instance.graph.edge_count(), 1);
        assert_eq!(p.warnings.len(), 1);
        let e = parse_str("a a\n", Format::Edges).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn malformed_lines_report_their_number() {
        let e = parse_str("a b\nw a x\n", Format::Edges).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_str("a b c d\n", Format::Edges).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_str("p edge 2 1\ne 1 3\n", Format::Dimacs).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn lists_round_trip() {
        let inst = parse("a b # edge\nl a 1,2\nl b -\nw b 0\nc\n");
        assert_eq!(inst.lists[0], Some(ColourSet::from_colours([1, 2])));
        assert_eq!(inst.lists[1], Some(ColourSet::EMPTY));
        assert_eq!(inst.lists[2], None);
        let again = parse(&serialize(&inst));
        assert_eq!(again, inst);
    }

    #[test]
    fn file_lists_only_when_asked() {
        let inst = parse("a b\nl a 2\n");
        assert_eq!(inst.list_assignment(2, true).unwrap().get(0), ColourSet::single(2));
        assert_eq!(inst.list_assignment(2, false).unwrap().get(0), ColourSet::first_k(2));
        assert!(inst.list_assignment(1, true).is_err());
    }

    #[test]
    fn generators_are_free_and_reproducible() {
        let split = generate_instance(Family::Split, GenParams::new(6), 1).unwrap();
        assert!(check_free(&split.graph, 0).is_none());
        let co = generate_instance(Family::Cograph, GenParams::new(6), 1).unwrap();
        assert!(check_free(&co.graph, 0).is_none());
        let params = GenParams { r: 1, ..GenParams::new(8) };
        let rej = generate_instance(Family::P5rk1Rejection, params, 7).unwrap();
        assert!(check_free(&rej.graph, 1).is_none());
        let again = generate_instance(Family::P5rk1Rejection, params, 7).unwrap();
        assert_eq!(serialize(&rej), serialize(&again));
    }

    #[test]
    fn names_sort_numerically() {
        let mut v = vec!["10", "9", "b", "a", "2"];
        v.sort_by(|a, b| name_cmp(a, b));
        assert_eq!(v, vec!["2", "9", "10", "a", "b"]);
    }

    #[test]
    fn record_json_shape() {
        let inst = parse("1 2\n2 10\n");
        let g = &inst.graph;
        let sol = ColouredSolution::from_colouring(g, [(0, 1), (2, 1), (1, 2)].into_iter().collect()).unwrap();
        let lists = ListAssignment::full(3, 2);
        let rec = ResultRecord::new(&inst, &lists, &sol, RecordStats::default());
        assert!(rec.verified);
        assert_eq!(
            rec.to_json(),
            r#"{"schema":1,"weight":3,"vertices":["1","2","10"],"colouring":{"1":1,"2":2,"10":1},"stats":{"canvases":0,"pool_size":0,"wall_ms":0},"verified":true}"#
        );
    }
}
