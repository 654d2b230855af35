//! Preprocessing: base cases, contraction of isolating cuts and unit-distance
//! extensions, disposal of low-degree vertices and the trivial exits.
//!
//! The graph rules run in a loop until none of them changes the graph. Each
//! rule preserves the optimum, so the loop does too.

use std::collections::BTreeMap;

use crate::graph::{Vertex, VertexSet, WeightedGraph, WorkGraph};
use crate::isolation::max_vol_min_iso_cut;
use crate::mincut::{max_vol_min_cut, Cut};

/// Exit rule used by [`trivial_exits`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Stop branching once `k >= h`.
    #[default]
    General,
    /// Stop branching once `k >= (1 - 1/p) h`.
    PTerminal,
}

/// Maps each vertex of a working graph to the terminal whose part it joins.
pub type LeafAssignment = BTreeMap<Vertex, Vertex>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceOutcome {
    Solved { work: WorkGraph, assignment: LeafAssignment, size: u64 },
    Infeasible,
    Reduced { work: WorkGraph, h: u64, k: u64 },
}

/// Crossing weight of a leaf assignment on `g`.
pub fn assignment_size(g: &WeightedGraph, assignment: &LeafAssignment) -> u64 {
    g.edges().filter(|(u, v, _)| assignment[u] != assignment[v]).map(|(_, _, w)| w).sum()
}

/// Instances with at most two terminals are solved outright.
pub fn base_cases(work: &WorkGraph, k: i64) -> Option<ReduceOutcome> {
    let g = &work.graph;
    let terms = g.terminals();
    assert!(!terms.is_empty(), "instances carry at least one terminal");
    if k < 0 {
        return Some(ReduceOutcome::Infeasible);
    }
    let assignment: LeafAssignment = match terms.len() {
        1 => g.vertices().map(|v| (v, terms[0])).collect(),
        2 => {
            let cut = max_vol_min_cut(g, &VertexSet::from([terms[0]]), &VertexSet::from([terms[1]]))
                .expect("terminals are distinct graph vertices");
            if cut.size > k as u64 {
                return Some(ReduceOutcome::Infeasible);
            }
            g.vertices()
                .map(|v| (v, if cut.side.contains(&v) { terms[0] } else { terms[1] }))
                .collect()
        }
        _ => return None,
    };
    let size = assignment_size(g, &assignment);
    Some(ReduceOutcome::Solved { work: work.clone(), assignment, size })
}

/// Contracts each terminal's max-vol min-iso-cut into it, in terminal order.
/// Returns whether the graph changed.
pub fn merge_iso_cuts(work: &mut WorkGraph) -> bool {
    if work.graph.num_terminals() < 2 {
        return false;
    }
    let mut changed = false;
    for i in 0..work.graph.num_terminals() {
        let t = work.graph.terminals()[i];
        let cut = max_vol_min_iso_cut(&work.graph, i).expect("at least two terminals");
        if cut.side.len() > 1 {
            work.merge(&cut.side, t).expect("an isolating cut holds exactly one terminal");
            changed = true;
        }
    }
    changed
}

/// First `(v, X_i(v))` with `ext_i(v) = 1` and `|X_i(v)| > 1`.
fn find_unit_extension(g: &WeightedGraph) -> Option<(Vertex, VertexSet)> {
    let terms = g.terminals().to_vec();
    for (i, &t) in terms.iter().enumerate() {
        let base = max_vol_min_iso_cut(g, i).expect("at least two terminals");
        let sinks: VertexSet = terms.iter().copied().filter(|&s| s != t).collect();
        for v in g.vertices().filter(|v| !g.is_terminal(*v) && !base.side.contains(v)) {
            let Cut { side, size } =
                max_vol_min_cut(g, &VertexSet::from([t, v]), &sinks).expect("valid source and sink sets");
            if size == base.size + 1 && side.len() > base.side.len() + 1 {
                return Some((v, side.difference(&base.side).copied().collect()));
            }
        }
    }
    None
}

/// Contracts every unit-distance extension into its defining vertex until
/// all such extensions are singletons.
pub fn merge_unit_extensions(work: &mut WorkGraph) -> bool {
    if work.graph.num_terminals() < 2 {
        return false;
    }
    let mut changed = false;
    while let Some((v, x_set)) = find_unit_extension(&work.graph) {
        work.merge(&x_set, v).expect("extensions contain no terminal");
        changed = true;
    }
    changed
}

/// The vertex a non-terminal of degree at most two is merged into.
fn low_degree_target(g: &WeightedGraph, v: Vertex) -> Option<Vertex> {
    let nbrs: Vec<(Vertex, u64)> = g.neighbors(v).collect();
    match nbrs.as_slice() {
        [] => Some(g.terminals()[0]),
        [(u, _)] => Some(*u),
        // neighbors come in id order, so ties go to the lower id
        [(a, wa), (b, wb)] => Some(if wb > wa { *b } else { *a }),
        _ => None,
    }
}

/// Merges non-terminals with at most two neighbors into their heavier
/// neighbor. Isolated non-terminals join the first terminal.
pub fn dispose_low_degree(work: &mut WorkGraph) -> bool {
    let mut changed = false;
    loop {
        let g = &work.graph;
        let found = g
            .vertices()
            .filter(|v| !g.is_terminal(*v))
            .find_map(|v| low_degree_target(g, v).map(|u| (v, u)));
        let Some((v, u)) = found else { break };
        work.merge(&VertexSet::from([v, u]), u).expect("at most one terminal in a pair");
        changed = true;
    }
    changed
}

/// Stops when `h` proves infeasibility or when the cheap solution, every
/// terminal alone except the one with the largest isolating cut, already
/// fits the budget. `h` must equal the sum of `d(t_i)`.
pub fn trivial_exits(work: &WorkGraph, h: u64, k: i64, mode: Mode) -> Option<ReduceOutcome> {
    if k < 0 || 2 * (k as u64) < h {
        return Some(ReduceOutcome::Infeasible);
    }
    let k = k as u64;
    let p = work.graph.num_terminals() as u64;
    let done = match mode {
        Mode::General => k >= h,
        Mode::PTerminal => k * p >= (p - 1) * h,
    };
    if !done {
        return None;
    }
    let g = &work.graph;
    let sink = active_terminal(g);
    let assignment: LeafAssignment =
        g.vertices().map(|v| (v, if g.is_terminal(v) { v } else { sink })).collect();
    let size = assignment_size(g, &assignment);
    debug_assert!(size <= k);
    Some(ReduceOutcome::Solved { work: work.clone(), assignment, size })
}

/// Terminal of largest `d(t_i)`, ties to the lowest index.
pub fn active_terminal(g: &WeightedGraph) -> Vertex {
    let mut best = g.terminals()[0];
    for &t in g.terminals() {
        if g.weighted_degree(t) > g.weighted_degree(best) {
            best = t;
        }
    }
    best
}

fn sum_terminal_degrees(g: &WeightedGraph) -> u64 {
    g.terminals().iter().map(|&t| g.weighted_degree(t)).sum()
}

/// Runs the graph rules to a fixpoint. `exit` is consulted after every
/// isolating-cut pass with the current `h`.
fn run_rules(
    work: &mut WorkGraph,
    mut exit: impl FnMut(&WorkGraph, u64) -> Option<ReduceOutcome>,
) -> Result<u64, ReduceOutcome> {
    loop {
        let mut changed = merge_iso_cuts(work);
        let h = sum_terminal_degrees(&work.graph);
        if let Some(out) = exit(work, h) {
            return Err(out);
        }
        changed |= merge_unit_extensions(work);
        changed |= dispose_low_degree(work);
        if !changed {
            return Ok(h);
        }
    }
}

/// Applies every graph rule until nothing changes, ignoring the budget.
/// Requires at least two terminals for the cut-based rules to apply.
pub fn reduce_graph(work: &mut WorkGraph) -> u64 {
    run_rules(work, |_, _| None).unwrap_or_else(|_| unreachable!())
}

/// Full preprocessing of an instance with budget `k`.
pub fn preprocess(mut work: WorkGraph, k: i64, mode: Mode) -> ReduceOutcome {
    if let Some(out) = base_cases(&work, k) {
        return out;
    }
    match run_rules(&mut work, |w, h| trivial_exits(w, h, k, mode)) {
        Err(out) => out,
        Ok(h) => {
            debug_assert_eq!(check_reduced(&work.graph), Ok(()));
            ReduceOutcome::Reduced { work, h, k: k as u64 }
        }
    }
}

/// Checks the structural guarantees of a fully reduced graph and describes
/// the first violation found.
pub fn check_reduced(g: &WeightedGraph) -> Result<(), String> {
    for (i, &t) in g.terminals().iter().enumerate() {
        let cut = max_vol_min_iso_cut(g, i).map_err(|e| e.to_string())?;
        if cut.side.len() != 1 {
            return Err(format!("terminal {t} has max-vol min-iso-cut {:?}", cut.side));
        }
        if cut.size != g.weighted_degree(t) {
            return Err(format!("terminal {t}: cut size {} != degree", cut.size));
        }
    }
    for v in g.vertices().filter(|v| !g.is_terminal(*v)) {
        if g.degree(v) < 3 {
            return Err(format!("non-terminal {v} has degree {}", g.degree(v)));
        }
        for (i, &t) in g.terminals().iter().enumerate() {
            let ext = crate::isolation::extension(g, i, v).map_err(|e| e.to_string())?;
            if ext.dist == 0 {
                return Err(format!("non-terminal {v} has distance 0 to {t}"));
            }
            if ext.dist == 1 && (ext.x_set.len() != 1 || g.weight(v, t).is_none()) {
                return Err(format!("unit extension of {v} from {t} is {:?}", ext.x_set));
            }
        }
    }
    Ok(())
}
