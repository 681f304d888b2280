//! The `wmkcis` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::canvas::CanvasEnumerator;
use crate::colour::ListAssignment;
use crate::error::Error;
use crate::graph::Weight;
use crate::hfree::{check_free, Witness};
use crate::io::{generate_instance, parse_instance, serialize, Family, Format, GenParams, Instance, RecordStats, ResultRecord};
use crate::mwis::{mwis_p5rk1_within, BranchAndBoundMwis, FreenessCheck};
use crate::oracles::{oracle_wmkcis, OracleConfig};
use crate::solver::{Solver, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "wmkcis", about = "Maximum-weight k-colourable induced subgraphs of (P5 + rK1)-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Instance file
    file: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance exactly
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// Use the lists given in the file (vertices without one get [k])
        #[arg(long)]
        lists: bool,
        /// Trust that the input is (P5 + rK1)-free
        #[arg(long)]
        no_validate: bool,
        /// Cache subproblem results (default)
        #[arg(long, overrides_with = "no_memo")]
        memo: bool,
        #[arg(long)]
        no_memo: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Look for an induced P5 + rK1
    CheckFree {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Maximum-weight independent set
    Mwis {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        no_validate: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Exhaustive solve for small instances
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lists: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Count valid canvases
    Canvases {
        #[arg(long, required = true)]
        count: bool,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        lists: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Print a random instance in edge-list format
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        max_weight: Option<Weight>,
    },
}

struct Failure {
    code: i32,
    body: Value,
    summary: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::NotFree { .. } => EXIT_INFEASIBLE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            body: json!({ "schema": 1, "error": e.to_string() }),
            summary: format!("error: {e}"),
        }
    }
}

struct Success {
    stdout: String,
    summary: String,
}

fn load(input: &Input, err: &mut dyn Write) -> Result<Instance, Failure> {
    let parsed = parse_instance(&input.file, input.format)?;
    for w in &parsed.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(parsed.instance)
}

fn witness_json(inst: &Instance, w: &Witness) -> Value {
    let name = |v: &usize| inst.names[*v].clone();
    json!({
        "path": w.path.iter().map(name).collect::<Vec<_>>(),
        "isolated": w.isolated.iter().map(name).collect::<Vec<_>>(),
    })
}

fn require_free(inst: &Instance, r: usize) -> Result<(), Failure> {
    match check_free(&inst.graph, r) {
        None => Ok(()),
        Some(w) => Err(Failure {
            code: EXIT_INFEASIBLE,
            body: json!({
                "schema": 1,
                "error": format!("input contains an induced P5 + {r}K1"),
                "witness": witness_json(inst, &w),
            }),
            summary: format!("not (P5 + {r}K1)-free: {w}"),
        }),
    }
}

fn lists_for(inst: &Instance, k: usize, file_lists: bool, err: &mut dyn Write) -> Result<ListAssignment, Failure> {
    if !file_lists && inst.has_lists() {
        let _ = writeln!(err, "note: file lists ignored without --lists");
    }
    Ok(inst.list_assignment(k, file_lists)?)
}

fn record_output(rec: &ResultRecord, what: &str) -> Success {
    Success {
        stdout: rec.to_json(),
        summary: format!(
            "{what}: weight {} on {} vertices, {} canvases, pool {}, {} ms{}",
            rec.weight,
            rec.vertices.len(),
            rec.stats.canvases,
            rec.stats.pool_size,
            rec.stats.wall_ms,
            if rec.verified { "" } else { ", VERIFICATION FAILED" }
        ),
    }
}

fn execute(cmd: Command, err: &mut dyn Write) -> Result<Success, Failure> {
    match cmd {
        Command::Solve {
            k,
            r,
            lists,
            no_validate,
            memo: _,
            no_memo,
            jobs,
            input,
        } => {
            let inst = load(&input, err)?;
            let la = lists_for(&inst, k, lists, err)?;
            let mut cfg = SolverConfig::new(k, r);
            cfg.validate_input = false;
            cfg.memoize = !no_memo;
            cfg.parallelism = jobs.max(1);
            if !no_validate {
                require_free(&inst, r)?;
            }
            let start = Instant::now();
            let sol = Solver::new(cfg).run(&inst.graph, &la)?;
            let stats = RecordStats {
                canvases: sol.stats.canvases,
                pool_size: sol.stats.pool_size,
                wall_ms: start.elapsed().as_millis() as u64,
            };
            let rec = ResultRecord::new(&inst, &la, &sol.solution, stats);
            if !rec.verified {
                return Err(Failure {
                    code: EXIT_INFEASIBLE,
                    body: json!({ "schema": 1, "error": "solution failed verification", "record": rec }),
                    summary: "solution failed verification".into(),
                });
            }
            Ok(record_output(&rec, "solve"))
        }
        Command::CheckFree { r, input } => {
            let inst = load(&input, err)?;
            require_free(&inst, r)?;
            Ok(Success {
                stdout: json!({ "schema": 1, "free": true, "r": r }).to_string(),
                summary: format!("(P5 + {r}K1)-free"),
            })
        }
        Command::Mwis { r, no_validate, input } => {
            let inst = load(&input, err)?;
            if !no_validate {
                require_free(&inst, r)?;
            }
            let g = &inst.graph;
            let set = mwis_p5rk1_within(g, &g.vertex_set(), r, &BranchAndBoundMwis, FreenessCheck::Skip)?;
            let weight = g.set_weight(&set)?;
            let mut names: Vec<String> = set.iter().map(|v| inst.names[v].clone()).collect();
            names.sort_by(|a, b| crate::io::name_cmp(a, b));
            Ok(Success {
                stdout: json!({ "schema": 1, "weight": weight, "vertices": names }).to_string(),
                summary: format!("mwis: weight {weight} on {} vertices", names.len()),
            })
        }
        Command::Oracle { k, lists, input } => {
            let inst = load(&input, err)?;
            let la = lists_for(&inst, k, lists, err)?;
            let start = Instant::now();
            let sol = oracle_wmkcis(&inst.graph, &la, OracleConfig::default())?;
            let stats = RecordStats {
                wall_ms: start.elapsed().as_millis() as u64,
                ..RecordStats::default()
            };
            Ok(record_output(&ResultRecord::new(&inst, &la, &sol, stats), "oracle"))
        }
        Command::Canvases {
            count: _,
            k,
            r,
            lists,
            input,
        } => {
            let inst = load(&input, err)?;
            let la = lists_for(&inst, k, lists, err)?;
            let count = CanvasEnumerator::new(&inst.graph, &la, k, r).count();
            Ok(Success {
                stdout: json!({ "schema": 1, "count": count }).to_string(),
                summary: format!("{count} canvases"),
            })
        }
        Command::Generate {
            family,
            n,
            seed,
            r,
            p,
            max_weight,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Input(format!("p = {p} is not a probability")).into());
            }
            let params = GenParams {
                p,
                r,
                max_weight,
                ..GenParams::new(n)
            };
            let inst = generate_instance(family, params, seed)?;
            let text = serialize(&inst);
            Ok(Success {
                stdout: text.trim_end().to_string(),
                summary: format!("{} vertices, {} edges", inst.graph.n(), inst.graph.edge_count()),
            })
        }
    }
}

/// Runs the command line; returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli.command, err) {
        Ok(s) => {
            let _ = writeln!(out, "{}", s.stdout);
            let _ = writeln!(err, "{}", s.summary);
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(out, "{}", f.body);
            let _ = writeln!(err, "{}", f.summary);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str], file: Option<&str>) -> (i32, String) {
        let dir = std::env::temp_dir().join(format!("wmkcis-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut argv: Vec<String> = std::iter::once("wmkcis").chain(args.iter().copied()).map(String::from).collect();
        if let Some(text) = file {
            static NEXT: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);
            let id = NEXT.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            let path = dir.join(format!("in{id}.txt"));
            std::fs::write(&path, text).unwrap();
            argv.push(path.display().to_string());
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    const C5: &str = "0 1\n1 2\n2 3\n3 4\n4 0\n";
    const P6: &str = "0 1\n1 2\n2 3\n3 4\n4 5\n";

    #[test]
    fn solve_c5() {
        let (code, out) = run(&["solve", "--k", "2", "--r", "1"], Some(C5));
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["weight"], 4);
        assert_eq!(v["verified"], true);
        assert_eq!(v["schema"], 1);
    }

    #[test]
    fn check_free_p6_has_witness() {
        let (code, out) = run(&["check-free", "--r", "0"], Some(P6));
        assert_eq!(code, EXIT_INFEASIBLE);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["witness"]["path"].as_array().unwrap().len(), 5);
        assert!(v["error"].is_string());
    }

    #[test]
    fn oracle_c5() {
        let (code, out) = run(&["oracle", "--k", "2"], Some(C5));
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["weight"], 4);
    }

    #[test]
    fn mwis_and_canvases() {
        let (code, out) = run(&["mwis", "--r", "1"], Some(C5));
        assert_eq!(code, EXIT_OK);
        assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["weight"], 2);
        let (code, out) = run(&["canvases", "--count", "--k", "1", "--r", "0"], Some("a\n"));
        assert_eq!(code, EXIT_OK);
        assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["count"], 1);
    }

    #[test]
    fn input_errors_exit_one() {
        let (code, out) = run(&["solve", "--k", "2", "--r", "1"], Some("a a\n"));
        assert_eq!(code, EXIT_INPUT);
        assert!(serde_json::from_str::<Value>(&out).unwrap()["error"].as_str().unwrap().contains("line 1"));
        let (code, _) = run(&["solve", "--k", "2", "--r", "1", "/nonexistent/file"], None);
        assert_eq!(code, EXIT_INPUT);
        let (code, _) = run(&["solve", "--r", "1"], Some(C5));
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn solve_rejects_non_free_input() {
        let (code, _) = run(&["solve", "--k", "1", "--r", "0"], Some(P6));
        assert_eq!(code, EXIT_INFEASIBLE);
    }

    #[test]
    fn generate_is_reproducible() {
        let a = run(&["generate", "--family", "split", "--n", "6", "--seed", "1"], None);
        let b = run(&["generate", "--family", "split", "--n", "6", "--seed", "1"], None);
        assert_eq!(a.0, EXIT_OK);
        assert_eq!(a, b);
        let inst = crate::io::parse_str(&a.1, Format::Edges).unwrap().instance;
        assert_eq!(inst.graph.n(), 6);
    }
}
