#![allow(dead_code)]

use mtcut::gen::generate;
use mtcut::{Vertex, VertexSet, WeightedGraph};
use proptest::prelude::*;

/// Random instance with `n` vertices, `p` terminals and roughly `density`
/// percent of all pairs as edges.
pub fn instance(n: usize, p: usize, density: usize, wmax: u64, seed: u64) -> WeightedGraph {
    let pairs = n * (n - 1) / 2;
    let m = (pairs * density / 100).clamp(p.div_ceil(2).max(n - 1), pairs);
    generate(n, m, p, wmax, seed).expect("parameters are in range")
}

/// Small instances the exhaustive oracle handles quickly.
pub fn small_instances(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (5..=max_n, 3..=4usize, 20..=80usize, 1..=4u64, any::<u64>())
        .prop_map(|(n, p, density, wmax, seed)| instance(n, p, density, wmax, seed))
}

pub fn v(i: u32) -> Vertex {
    Vertex(i)
}

pub fn set(ids: &[u32]) -> VertexSet {
    ids.iter().map(|&i| Vertex(i)).collect()
}

/// Path t1 - a - b - t2 with t3 attached to both a and b, unit weights.
/// Ids: t1=0, a=1, b=2, t2=3, t3=4.
pub fn example_path() -> WeightedGraph {
    WeightedGraph::from_edges(
        5,
        vec![v(0), v(3), v(4)],
        [(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)].map(|(a, b)| (v(a), v(b), 1)),
    )
    .unwrap()
}

/// Vertex subsets of `g` encoded by the bits of `mask`.
pub fn subset(g: &WeightedGraph, mask: u64) -> VertexSet {
    g.vertices().filter(|x| mask >> x.0 & 1 == 1).collect()
}

fn drop_terminal_edges(g: &mut WeightedGraph) {
    let terms = g.terminals().to_vec();
    for (i, &s) in terms.iter().enumerate() {
        for &t in &terms[i + 1..] {
            if g.weight(s, t).is_some() {
                g.delete_edge(s, t).unwrap();
            }
        }
    }
}

/// Runs the reduction rules, then alternates removing terminal-terminal
/// edges and contracting isolating cuts until every terminal is its own
/// max-vol min-iso-cut and no two terminals are adjacent.
pub fn edge_removal_premise(g: &WeightedGraph) -> WeightedGraph {
    let mut work = mtcut::WorkGraph::new(g.clone());
    mtcut::reduce::reduce_graph(&mut work);
    loop {
        drop_terminal_edges(&mut work.graph);
        if !mtcut::reduce::merge_iso_cuts(&mut work) {
            return work.graph;
        }
    }
}

/// Deletes each edge of `g` in turn and checks how the minimum isolating
/// cut sizes move: at most two terminals drop, each by at most the edge
/// weight, and a full-weight drop only at an endpoint of the edge.
pub fn check_edge_removal(g: &WeightedGraph) -> Result<usize, String> {
    use mtcut::isolation::max_vol_min_iso_cut;
    let p = g.num_terminals();
    let before: Vec<u64> = (0..p).map(|i| max_vol_min_iso_cut(g, i).unwrap().size).collect();
    for i in 0..p {
        let side = max_vol_min_iso_cut(g, i).unwrap().side;
        if side.len() != 1 {
            return Err(format!("premise fails: terminal {i} has side {side:?}"));
        }
    }
    let mut checked = 0;
    for (a, b, w) in g.edges().collect::<Vec<_>>() {
        let mut h = g.clone();
        h.delete_edge(a, b).unwrap();
        let mut dropped = 0;
        for (i, &old) in before.iter().enumerate() {
            let after = max_vol_min_iso_cut(&h, i).unwrap().size;
            if after > old {
                return Err(format!("deleting {a}-{b} raised terminal {i}"));
            }
            let d = old - after;
            if d == 0 {
                continue;
            }
            dropped += 1;
            if d > w {
                return Err(format!("deleting {a}-{b} (w={w}) dropped terminal {i} by {d}"));
            }
            let t = g.terminals()[i];
            if d == w && t != a && t != b {
                return Err(format!("full drop of {w} at terminal {i} away from edge {a}-{b}"));
            }
        }
        if dropped > 2 {
            return Err(format!("deleting {a}-{b} dropped {dropped} terminals"));
        }
        checked += 1;
    }
    Ok(checked)
}
