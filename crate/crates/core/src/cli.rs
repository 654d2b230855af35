//! Command-line front end. `run` never exits the process so tests can drive
//! it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::baseline::{approx_isolating, brute_force, verify};
use crate::gen::generate;
use crate::io::{parse_instance, parse_solution, write_instance, write_solution, InstanceFile};
use crate::reduce::Mode;
use crate::solver::{minimize, solve, BranchStats, Partition, SolveOptions};

pub const EXIT_FEASIBLE: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mtcut", version, about = "Exact solver for weighted multiterminal cut")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    Fpt,
    Oracle,
    Approx,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance file.
    Solve {
        file: PathBuf,
        /// Budget; overrides the file header.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Alg::Fpt)]
        alg: Alg,
        /// Use the (1 - 1/p) h exit threshold.
        #[arg(long)]
        p_mode: bool,
        /// Append search statistics as comment lines.
        #[arg(long)]
        stats: bool,
        /// Write one line per search node to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        wmax: u64,
        #[arg(long)]
        seed: u64,
        /// Budget to put in the header.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Re-score a solution file against an instance.
    Check { file: PathBuf, solution: PathBuf },
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_FEASIBLE };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn read_instance(path: &PathBuf, err: &mut dyn Write) -> Result<InstanceFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    for w in &parsed.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(parsed.instance)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io_err = |e: std::io::Error| e.to_string();
    match command {
        Command::Gen { n, m, p, wmax, seed, k } => {
            let graph = generate(n, m, p, wmax, seed).map_err(|e| e.to_string())?;
            out.write_all(write_instance(&InstanceFile { graph, k }).as_bytes()).map_err(io_err)?;
            Ok(EXIT_FEASIBLE)
        }
        Command::Check { file, solution } => {
            let inst = read_instance(&file, err)?;
            let text = std::fs::read_to_string(&solution).map_err(|e| format!("{}: {e}", solution.display()))?;
            let sol = parse_solution(&text).map_err(|e| format!("{}: {e}", solution.display()))?;
            let Some(claimed) = sol.size else {
                writeln!(out, "c solution claims infeasibility; nothing to verify").map_err(io_err)?;
                return Ok(EXIT_INFEASIBLE);
            };
            let g = &inst.graph;
            let p = g.num_terminals();
            if let Some((v, part)) = sol.assignment.iter().find(|(_, &q)| q >= p) {
                writeln!(out, "c INVALID vertex {} assigned to part {} of {p}", v.0 + 1, part + 1).map_err(io_err)?;
                return Ok(EXIT_INFEASIBLE);
            }
            match verify(g, &sol.assignment, claimed) {
                Ok(true) => {
                    writeln!(out, "c VALID size {claimed}").map_err(io_err)?;
                    Ok(EXIT_FEASIBLE)
                }
                Ok(false) => {
                    let separated = g.terminals().iter().enumerate().all(|(i, t)| sol.assignment[t] == i);
                    if separated {
                        let actual = Partition::scored(g, sol.assignment).size;
                        writeln!(out, "c MISMATCH claimed {claimed} actual {actual}").map_err(io_err)?;
                    } else {
                        writeln!(out, "c INVALID terminals are not in their own parts").map_err(io_err)?;
                    }
                    Ok(EXIT_INFEASIBLE)
                }
                Err(e) => {
                    writeln!(out, "c INVALID {e}").map_err(io_err)?;
                    Ok(EXIT_INFEASIBLE)
                }
            }
        }
        Command::Solve { file, k, alg, p_mode, stats, trace } => {
            let inst = read_instance(&file, err)?;
            let g = &inst.graph;
            let k = k.or(inst.k);
            let mode = if p_mode { Mode::PTerminal } else { Mode::General };
            let (partition, branch_stats) = match alg {
                Alg::Fpt => {
                    let opts = SolveOptions { mode, trace: trace.is_some() };
                    let res = match k {
                        Some(k) => solve(g, k, opts),
                        None => minimize(g, opts),
                    }
                    .map_err(|e| e.to_string())?;
                    (res.partition().cloned(), Some(res.stats))
                }
                Alg::Oracle => {
                    let best = brute_force(g).map_err(|e| e.to_string())?;
                    (k.is_none_or(|k| best.size <= k).then_some(best), None)
                }
                Alg::Approx => {
                    let approx = approx_isolating(g).map_err(|e| e.to_string())?;
                    (k.is_none_or(|k| approx.size <= k).then_some(approx), None)
                }
            };
            let mut text = write_solution(partition.as_ref());
            if stats {
                text.push_str(&format_stats(branch_stats.as_ref()));
            }
            out.write_all(text.as_bytes()).map_err(io_err)?;
            if let (Some(path), Some(s)) = (trace, branch_stats.as_ref()) {
                std::fs::write(&path, format_trace(s)).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(if partition.is_some() { EXIT_FEASIBLE } else { EXIT_INFEASIBLE })
        }
    }
}

fn format_stats(stats: Option<&BranchStats>) -> String {
    let mut s = String::new();
    let Some(stats) = stats else {
        s.push_str("c nodes 0\nc leaves 0\n");
        return s;
    };
    writeln!(s, "c nodes {}", stats.nodes).unwrap();
    writeln!(s, "c leaves {}", stats.leaves).unwrap();
    writeln!(s, "c m0 {}", stats.root_measure()).unwrap();
    for (case, count) in &stats.case_counts {
        writeln!(s, "c case {case} {count}").unwrap();
    }
    s
}

/// `node parent case vertex k h m`, with `-` for absent fields and 1-based
/// vertex ids.
pub fn format_trace(stats: &BranchStats) -> String {
    let mut s = String::new();
    for r in &stats.trace {
        let parent = r.parent.map_or("-".to_string(), |p| p.to_string());
        let vertex = r.vertex.map_or("-".to_string(), |v| (v.0 + 1).to_string());
        writeln!(s, "{} {parent} {} {vertex} {} {} {}", r.node, r.case, r.k, r.h, r.m).unwrap();
    }
    s
}
