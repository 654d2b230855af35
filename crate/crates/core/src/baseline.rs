//! Reference algorithms: exhaustive search, the isolating-cut approximation,
//! and an independent partition checker.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::isolation::max_vol_min_iso_cut;
use crate::solver::Partition;

/// Upper bound on `p^(n-p)` accepted by [`brute_force`].
pub const BRUTE_FORCE_LIMIT: u64 = 2_000_000;

/// Tries every assignment of non-terminals to parts and returns the
/// lexicographically first optimal one.
pub fn brute_force(g: &WeightedGraph) -> Result<Partition> {
    let p = g.num_terminals();
    if p == 0 {
        return Err(Error::NoTerminals);
    }
    let free: Vec<Vertex> = g.vertices().filter(|v| !g.is_terminal(*v)).collect();
    let space = (p as u64).checked_pow(free.len() as u32).filter(|&s| s <= BRUTE_FORCE_LIMIT);
    if space.is_none() {
        return Err(Error::Refused(format!("{p}^{} assignments", free.len())));
    }

    let mut pos = BTreeMap::new();
    for (i, &t) in g.terminals().iter().enumerate() {
        pos.insert(t, i);
    }
    let slot: BTreeMap<Vertex, usize> = free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(Vertex, Vertex, u64)> = g.edges().collect();
    let part_of = |parts: &[usize], v: Vertex| -> usize {
        match slot.get(&v) {
            Some(&i) => parts[i],
            None => pos[&v],
        }
    };

    let mut parts = vec![0usize; free.len()];
    let mut best: Option<(u64, Vec<usize>)> = None;
    loop {
        let size: u64 = edges
            .iter()
            .filter(|&&(u, v, _)| part_of(&parts, u) != part_of(&parts, v))
            .map(|&(_, _, w)| w)
            .sum();
        if best.as_ref().is_none_or(|(b, _)| size < *b) {
            best = Some((size, parts.clone()));
        }
        // odometer, last position fastest, so assignments come in lex order
        let mut i = parts.len();
        loop {
            if i == 0 {
                let (size, parts) = best.unwrap();
                let assignment = g.vertices().map(|v| (v, part_of(&parts, v))).collect();
                return Ok(Partition { assignment, size });
            }
            i -= 1;
            parts[i] += 1;
            if parts[i] < p {
                break;
            }
            parts[i] = 0;
        }
    }
}

/// The classical `2 - 2/p` approximation: every terminal keeps its max-vol
/// min-iso-cut except the one with the largest cut, which takes the rest.
/// Vertices claimed by several cuts go to the lowest terminal index.
pub fn approx_isolating(g: &WeightedGraph) -> Result<Partition> {
    let p = g.num_terminals();
    if p < 2 {
        return Err(Error::TooFewTerminals("the isolating-cut approximation"));
    }
    let cuts = (0..p).map(|i| max_vol_min_iso_cut(g, i)).collect::<Result<Vec<_>>>()?;
    let mut largest = 0;
    for (i, c) in cuts.iter().enumerate() {
        if c.size > cuts[largest].size {
            largest = i;
        }
    }
    let assignment = g
        .vertices()
        .map(|v| {
            let part = (0..p).find(|&i| i != largest && cuts[i].side.contains(&v)).unwrap_or(largest);
            (v, part)
        })
        .collect();
    Ok(Partition::scored(g, assignment))
}

/// Checks that `assignment` separates the terminals and that its crossing
/// weight equals `claimed`. Scores by a plain edge scan.
pub fn verify(g: &WeightedGraph, assignment: &BTreeMap<Vertex, usize>, claimed: u64) -> Result<bool> {
    for v in g.vertices() {
        if !assignment.contains_key(&v) {
            return Err(Error::Unassigned(v));
        }
    }
    for (i, t) in g.terminals().iter().enumerate() {
        if assignment[t] != i {
            return Ok(false);
        }
    }
    if assignment.values().any(|&part| part >= g.num_terminals()) {
        return Ok(false);
    }
    let mut crossing = 0u64;
    for (u, v, w) in g.edges() {
        if assignment[&u] != assignment[&v] {
            crossing += w;
        }
    }
    Ok(crossing == claimed)
}

/// `(1/2) * sum_i d(V_i)`, the other way to score a partition.
pub fn half_boundary_sum(g: &WeightedGraph, assignment: &BTreeMap<Vertex, usize>) -> u64 {
    let twice: u64 = (0..g.num_terminals())
        .map(|i| {
            let part = assignment.iter().filter(|(_, &q)| q == i).map(|(&v, _)| v).collect();
            g.cut_size(&part).expect("assignment covers graph vertices")
        })
        .sum();
    twice / 2
}
