//! The bounded search tree for multiterminal cut.
//!
//! Each search node runs the full preprocessing, charges terminal-terminal
//! edges against the budget, and then either eliminates an isolated active
//! terminal or branches on one of its neighbors. The measure `m = 2k - h`
//! must drop by a case-specific amount in every child; those drops are
//! asserted and recorded in [`BranchStats`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{MergeLog, Vertex, VertexSet, WeightedGraph, WorkGraph};
use crate::isolation::{distance, iso_size_sum};
use crate::reduce::{active_terminal, preprocess, LeafAssignment, Mode, ReduceOutcome};

/// A multiterminal cut of the input graph. Parts are indexed by terminal
/// position, starting at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub assignment: BTreeMap<Vertex, usize>,
    pub size: u64,
}

impl Partition {
    /// Builds a partition from per-vertex parts and scores it on `g`.
    pub fn scored(g: &WeightedGraph, assignment: BTreeMap<Vertex, usize>) -> Self {
        let size = g
            .edges()
            .filter(|(u, v, _)| assignment[u] != assignment[v])
            .map(|(_, _, w)| w)
            .sum();
        Partition { assignment, size }
    }

    pub fn part(&self, v: Vertex) -> Option<usize> {
        self.assignment.get(&v).copied()
    }
}

/// How a search node was reached from its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    Root,
    /// Step 2: the active terminal had no neighbors left and was dropped.
    Eliminate,
    Step3,
    Case1,
    Case2a,
    Case2b1,
    Case2b2,
    Case2c,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::Root => "root",
            Case::Eliminate => "elim",
            Case::Step3 => "step3",
            Case::Case1 => "1",
            Case::Case2a => "2a",
            Case::Case2b1 => "2b.1",
            Case::Case2b2 => "2b.2",
            Case::Case2c => "2c",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The branching rule that applies to a chosen neighbor `v` of the active
/// terminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branching {
    /// `ext_p(v) = 1` and every neighbor of `v` is a terminal.
    Step3,
    /// `v` is balanced between `t_p` and `other`, with `u` its only
    /// non-terminal neighbor.
    TwoA { u: Vertex, other: Vertex },
    /// `v` has three unit edges, two of them to non-terminals `u1 < u2`.
    TwoB { u1: Vertex, u2: Vertex },
    TwoC { ext: u64 },
}

impl Branching {
    pub fn case(self) -> Case {
        match self {
            Branching::Step3 => Case::Step3,
            Branching::TwoA { .. } => Case::Case2a,
            Branching::TwoB { .. } => Case::Case2b1,
            Branching::TwoC { .. } => Case::Case2c,
        }
    }
}

/// One search node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub node: usize,
    pub parent: Option<usize>,
    pub case: Case,
    /// Branch vertex at the parent, or the eliminated terminal.
    pub vertex: Option<Vertex>,
    /// Budget, `h` and measure on entry, before preprocessing.
    pub k: i64,
    pub h: u64,
    pub m: i64,
    /// Measure drop from the parent's branching point.
    pub drop: Option<i64>,
    /// Smallest drop the case guarantees.
    pub min_drop: Option<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BranchStats {
    pub nodes: usize,
    pub leaves: usize,
    pub case_counts: BTreeMap<Case, usize>,
    pub measure_trace: Vec<(Case, i64)>,
    /// Filled only when tracing is requested.
    pub trace: Vec<TraceRecord>,
    pub root_k: u64,
    /// `h` at the root after preprocessing (or on entry if preprocessing
    /// finished the instance).
    pub root_h: u64,
}

impl BranchStats {
    /// `min(k0, 2 k0 - h0)`, never below zero.
    pub fn root_measure(&self) -> i64 {
        let k = self.root_k as i64;
        (2 * k - self.root_h as i64).min(k).max(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Partition),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub stats: BranchStats,
}

impl SolveResult {
    pub fn partition(&self) -> Option<&Partition> {
        match &self.outcome {
            Outcome::Feasible(p) => Some(p),
            Outcome::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.partition().is_some()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: Mode,
    pub trace: bool,
}

/// Solves the decision problem: a multiterminal cut of size at most `k` on
/// `g`, or a proof that none exists.
pub fn solve(g: &WeightedGraph, k: u64, opts: SolveOptions) -> Result<SolveResult> {
    if g.num_terminals() == 0 {
        return Err(Error::NoTerminals);
    }
    let mut search = Search { original: g, opts, stats: BranchStats::default() };
    search.stats.root_k = k;
    let h = iso_size_sum(g);
    search.stats.root_h = h;
    let root = Node { work: WorkGraph::new(g.clone()), k: k as i64, retired: Vec::new() };
    let entry = Entry { parent: None, case: Case::Root, vertex: None, h, drop: None, min_drop: None };
    let found = search.visit(root, entry);
    let outcome = match found {
        Some(p) => {
            assert!(p.size <= k, "solution of size {} exceeds budget {k}", p.size);
            Outcome::Feasible(p)
        }
        None => Outcome::Infeasible,
    };
    Ok(SolveResult { outcome, stats: search.stats })
}

/// Finds the optimum by searching `k` between `ceil(h/2)` and `h`. The
/// returned stats belong to the last feasible solve.
pub fn minimize(g: &WeightedGraph, opts: SolveOptions) -> Result<SolveResult> {
    if g.num_terminals() == 0 {
        return Err(Error::NoTerminals);
    }
    let h = iso_size_sum(g);
    let (mut lo, mut hi) = (h.div_ceil(2), h);
    let mut best = solve(g, hi, opts)?;
    assert!(best.is_feasible(), "the isolating-cut solution always fits k = h");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let res = solve(g, mid, opts)?;
        if res.is_feasible() {
            hi = mid;
            best = res;
        } else {
            lo = mid + 1;
        }
    }
    Ok(best)
}

/// Maps every input vertex to the part of the vertex that absorbed it.
/// `leaf` covers the surviving vertices; retired terminals keep their own
/// parts.
pub fn reconstruct(
    original: &WeightedGraph,
    log: &MergeLog,
    leaf: &LeafAssignment,
    retired: &[Vertex],
) -> Partition {
    let parents = log.parents();
    let assignment = original
        .vertices()
        .map(|v| {
            let rep = MergeLog::representative(&parents, v);
            let terminal = if retired.contains(&rep) {
                rep
            } else {
                *leaf.get(&rep).unwrap_or_else(|| panic!("vertex {v} has no representative in the leaf"))
            };
            let part = original.terminal_index(terminal).expect("leaf parts are terminals");
            (v, part)
        })
        .collect();
    Partition::scored(original, assignment)
}

/// Neighbor of `active` to branch on: unit-distance neighbors first, then
/// the lowest id. `None` when `active` is isolated.
pub fn select_branch_vertex(g: &WeightedGraph, active: Vertex) -> Option<Vertex> {
    let i = g.terminal_index(active)?;
    let nbrs: Vec<Vertex> = g.neighbors(active).map(|(u, _)| u).filter(|u| !g.is_terminal(*u)).collect();
    nbrs.iter()
        .copied()
        .find(|&u| distance(g, i, u).ok() == Some(1))
        .or_else(|| nbrs.first().copied())
}

/// Decides which branching rule applies to `v`, a non-terminal neighbor of
/// the active terminal.
pub fn classify_case(g: &WeightedGraph, active: Vertex, v: Vertex) -> Result<Branching> {
    let i = g.terminal_index(active).ok_or(Error::UnknownVertex(active))?;
    let ext = distance(g, i, v)?;
    let nbrs: Vec<(Vertex, u64)> = g.neighbors(v).collect();
    let free: Vec<Vertex> = nbrs.iter().map(|&(u, _)| u).filter(|u| !g.is_terminal(*u)).collect();
    if ext == 1 && free.is_empty() {
        return Ok(Branching::Step3);
    }
    let w_active = g.weight(v, active).ok_or(Error::MissingEdge(v, active))?;
    if ext == 1 && free.len() == 1 {
        let balanced = g
            .terminals()
            .iter()
            .copied()
            .find(|&t| t != active && g.weight(v, t) == Some(w_active));
        if let Some(other) = balanced {
            return Ok(Branching::TwoA { u: free[0], other });
        }
    }
    if nbrs.len() == 3 && nbrs.iter().all(|&(_, w)| w == 1) && free.len() == 2 {
        return Ok(Branching::TwoB { u1: free[0], u2: free[1] });
    }
    Ok(Branching::TwoC { ext })
}

struct Node {
    work: WorkGraph,
    k: i64,
    retired: Vec<Vertex>,
}

struct Entry {
    parent: Option<usize>,
    case: Case,
    vertex: Option<Vertex>,
    h: u64,
    drop: Option<i64>,
    min_drop: Option<i64>,
}

struct Child {
    node: Node,
    case: Case,
    h: u64,
    drop: i64,
    min_drop: i64,
}

struct Search<'a> {
    original: &'a WeightedGraph,
    opts: SolveOptions,
    stats: BranchStats,
}

fn measure(k: i64, h: u64) -> i64 {
    2 * k - h as i64
}

impl Search<'_> {
    fn visit(&mut self, node: Node, entry: Entry) -> Option<Partition> {
        let id = self.stats.nodes;
        self.stats.nodes += 1;
        if entry.case != Case::Root {
            *self.stats.case_counts.entry(entry.case).or_default() += 1;
            self.stats.measure_trace.push((entry.case, entry.drop.unwrap()));
        }
        if self.opts.trace {
            self.stats.trace.push(TraceRecord {
                node: id,
                parent: entry.parent,
                case: entry.case,
                vertex: entry.vertex,
                k: node.k,
                h: entry.h,
                m: measure(node.k, entry.h),
                drop: entry.drop,
                min_drop: entry.min_drop,
            });
        }

        let Node { work, k, retired } = node;
        let (mut work, mut h, mut k) = match preprocess(work, k, self.opts.mode) {
            ReduceOutcome::Solved { work, assignment, .. } => {
                self.stats.leaves += 1;
                return Some(reconstruct(self.original, &work.log, &assignment, &retired));
            }
            ReduceOutcome::Infeasible => {
                self.stats.leaves += 1;
                return None;
            }
            ReduceOutcome::Reduced { work, h, k } => (work, h, k as i64),
        };
        if entry.parent.is_none() {
            self.stats.root_h = h;
        }

        // Edges between terminals cross in every solution.
        let terms = work.graph.terminals().to_vec();
        for (a, &s) in terms.iter().enumerate() {
            for &t in &terms[a + 1..] {
                if work.graph.weight(s, t).is_some() {
                    let w = work.delete_edge(s, t).expect("edge present") as i64;
                    k -= w;
                    h -= 2 * w as u64;
                }
            }
        }
        if k < 0 {
            self.stats.leaves += 1;
            return None;
        }
        let m = measure(k, h);

        let (children, vertex) = self.children(&work, k, m, &retired);
        for child in children {
            let entry = Entry {
                parent: Some(id),
                case: child.case,
                vertex: Some(vertex),
                h: child.h,
                drop: Some(child.drop),
                min_drop: Some(child.min_drop),
            };
            if let Some(p) = self.visit(child.node, entry) {
                return Some(p);
            }
        }
        None
    }

    /// Children of a reduced node, in exploration order, with their measure
    /// drops already checked. Also returns the vertex the node acts on.
    fn children(&self, work: &WorkGraph, k: i64, m: i64, retired: &[Vertex]) -> (Vec<Child>, Vertex) {
        let g = &work.graph;
        let active = active_terminal(g);
        let make = |work: WorkGraph, k: i64, case: Case, min_drop: i64, retired: Vec<Vertex>| {
            let h_child = iso_size_sum(&work.graph);
            let drop = m - measure(k, h_child);
            assert!(
                drop >= min_drop,
                "case {case} dropped the measure by {drop}, expected at least {min_drop}"
            );
            Child { node: Node { work, k, retired }, case, h: h_child, drop, min_drop }
        };

        let Some(v) = select_branch_vertex(g, active) else {
            let mut next = work.clone();
            next.remove_vertex(active).expect("active terminal is isolated");
            let mut retired = retired.to_vec();
            retired.push(active);
            return (vec![make(next, k, Case::Eliminate, 0, retired)], active);
        };
        let branching = classify_case(g, active, v).expect("v neighbors the active terminal");
        let merged = |extra: &[Vertex]| {
            let mut next = work.clone();
            let mut set: VertexSet = extra.iter().copied().collect();
            set.extend([active, v]);
            next.merge(&set, active).expect("only the active terminal is merged");
            next
        };
        let retired = retired.to_vec();

        if branching == Branching::Step3 {
            return (vec![make(merged(&[]), k, Case::Step3, 1, retired)], v);
        }

        let mut cut_edge = work.clone();
        let w = cut_edge.delete_edge(active, v).expect("v neighbors the active terminal") as i64;
        let case1 = make(cut_edge, k - w, Case::Case1, 1, retired.clone());

        let mut out = vec![];
        let second: Vec<Child> = match branching {
            Branching::Step3 => unreachable!(),
            Branching::TwoA { u, .. } => {
                let triple = BTreeSet::from([active, v, u]);
                assert!(g.cut_weight(&triple) >= g.weighted_degree(active) + 2);
                vec![make(merged(&[u]), k, Case::Case2a, 2, retired)]
            }
            Branching::TwoB { u1, u2 } => {
                let mut b1 = work.clone();
                b1.delete_edge(u1, v).expect("u1 neighbors v");
                b1.merge(&VertexSet::from([active, v, u2]), active).expect("one terminal");
                vec![
                    make(b1, k - 1, Case::Case2b1, 3, retired.clone()),
                    make(merged(&[u1]), k, Case::Case2b2, 2, retired),
                ]
            }
            Branching::TwoC { ext } => {
                let c = make(merged(&[]), k, Case::Case2c, ext as i64, retired);
                if ext == 1 {
                    assert!(
                        case1.drop >= 2,
                        "case 2c dropped by 1 but case 1 only by {}",
                        case1.drop
                    );
                }
                vec![c]
            }
        };
        out.push(case1);
        out.extend(second);
        (out, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{example_path, v};

    fn k3() -> WeightedGraph {
        WeightedGraph::from_edges(3, vec![v(0), v(1), v(2)], [(0, 1), (1, 2), (0, 2)].map(|(a, b)| (v(a), v(b), 1))).unwrap()
    }

    #[test]
    fn worked_example() {
        let g = example_path();
        let res = solve(&g, 2, SolveOptions::default()).unwrap();
        let p = res.partition().unwrap();
        assert_eq!(p.size, 2);
        assert_eq!(p.part(v(1)), Some(2));
        assert_eq!(p.part(v(2)), Some(2));
        assert!(!solve(&g, 1, SolveOptions::default()).unwrap().is_feasible());
    }

    #[test]
    fn triangle_of_terminals() {
        let res = solve(&k3(), 3, SolveOptions::default()).unwrap();
        assert_eq!(res.partition().unwrap().size, 3);
        assert!(!solve(&k3(), 2, SolveOptions::default()).unwrap().is_feasible());
    }

    #[test]
    fn no_terminals_is_an_error() {
        let g = WeightedGraph::new(3, vec![]).unwrap();
        assert_eq!(solve(&g, 1, SolveOptions::default()), Err(Error::NoTerminals));
    }

    #[test]
    fn minimize_finds_optimum() {
        assert_eq!(minimize(&example_path(), SolveOptions::default()).unwrap().partition().unwrap().size, 2);
        assert_eq!(minimize(&k3(), SolveOptions::default()).unwrap().partition().unwrap().size, 3);
    }

    #[test]
    fn classify_step3_gadget() {
        // v=3 adjacent to t_p=0, t_a=1, t_b=2 with unit weights
        let g = WeightedGraph::from_edges(4, vec![v(0), v(1), v(2)], [(0, 3, 1), (1, 3, 1), (2, 3, 1)].map(|(a, b, w)| (v(a), v(b), w))).unwrap();
        assert_eq!(distance(&g, 0, v(3)).unwrap(), 1);
        assert_eq!(classify_case(&g, v(0), v(3)).unwrap(), Branching::Step3);
    }

    #[test]
    fn classify_2a_gadget() {
        // v=3 adjacent to t_p=0 (2), t_j=1 (2), u=4 (1); u ties to t3=2
        let g = WeightedGraph::from_edges(
            5,
            vec![v(0), v(1), v(2)],
            [(0, 3, 2), (1, 3, 2), (3, 4, 1), (4, 2, 5)].map(|(a, b, w)| (v(a), v(b), w)),
        )
        .unwrap();
        assert_eq!(distance(&g, 0, v(3)).unwrap(), 1);
        assert_eq!(classify_case(&g, v(0), v(3)).unwrap(), Branching::TwoA { u: v(4), other: v(1) });
    }

    #[test]
    fn classify_2b_gadget() {
        let g = WeightedGraph::from_edges(
            6,
            vec![v(0), v(1), v(2)],
            [(0, 3, 1), (3, 4, 1), (3, 5, 1), (4, 1, 3), (5, 2, 3)].map(|(a, b, w)| (v(a), v(b), w)),
        )
        .unwrap();
        assert_eq!(classify_case(&g, v(0), v(3)).unwrap(), Branching::TwoB { u1: v(4), u2: v(5) });
    }

    #[test]
    fn select_prefers_unit_distance() {
        assert_eq!(select_branch_vertex(&k3(), v(0)), None);
        // t_p=0 has neighbors 3 (heavy, far) and 4 (unit distance)
        let g = WeightedGraph::from_edges(
            5,
            vec![v(0), v(1), v(2)],
            [(0, 3, 1), (3, 1, 3), (3, 2, 3), (0, 4, 1), (4, 1, 1), (4, 2, 1)].map(|(a, b, w)| (v(a), v(b), w)),
        )
        .unwrap();
        assert!(distance(&g, 0, v(3)).unwrap() > 1);
        assert_eq!(distance(&g, 0, v(4)).unwrap(), 1);
        assert_eq!(select_branch_vertex(&g, v(0)), Some(v(4)));
    }

    #[test]
    fn reconstruct_follows_chains() {
        let g = example_path();
        let mut work = WorkGraph::new(g.clone());
        work.merge(&VertexSet::from([v(1), v(2)]), v(2)).unwrap();
        work.merge(&VertexSet::from([v(2), v(4)]), v(4)).unwrap();
        let leaf: LeafAssignment = work.graph.vertices().map(|x| (x, x)).collect();
        let p = reconstruct(&g, &work.log, &leaf, &[]);
        assert_eq!(p.part(v(1)), Some(2));
        assert_eq!(p.size, 2);

        let identity = reconstruct(&g, &MergeLog::default(), &g.vertices().map(|x| (x, v(0))).collect(), &[]);
        assert!(identity.assignment.values().all(|&part| part == 0));
    }

    #[test]
    fn traces_record_every_node() {
        let g = example_path();
        let res = solve(&g, 2, SolveOptions { trace: true, ..Default::default() }).unwrap();
        assert_eq!(res.stats.trace.len(), res.stats.nodes);
        assert_eq!(res.stats.trace[0].case, Case::Root);
    }
}
