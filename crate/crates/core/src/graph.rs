//! Contractible, integer-weighted undirected graphs with an ordered terminal
//! list, plus the merge log used to map solutions back to the input graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Largest edge weight accepted on input. Sums of such weights over any
/// realistic instance stay far below `u64::MAX`.
pub const MAX_WEIGHT: u64 = 1 << 32;

/// Stable vertex identifier. Contraction keeps the representative's id and
/// retires the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Vertex {
    fn from(i: usize) -> Self {
        Vertex(i as u32)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexSet = BTreeSet<Vertex>;

/// A simple undirected graph with positive integer weights.
///
/// Parallel edges are summed and self-loops dropped, both at construction and
/// whenever vertices are merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: BTreeMap<Vertex, BTreeMap<Vertex, u64>>,
    terminals: Vec<Vertex>,
}

impl WeightedGraph {
    /// Graph on vertices `0..n` without edges.
    pub fn new(n: usize, terminals: Vec<Vertex>) -> Result<Self> {
        let adj = (0..n).map(|i| (Vertex::from(i), BTreeMap::new())).collect();
        let mut g = WeightedGraph { adj, terminals: Vec::new() };
        for t in terminals {
            if !g.contains(t) {
                return Err(Error::UnknownVertex(t));
            }
            if g.terminals.contains(&t) {
                return Err(Error::DuplicateTerminal(t));
            }
            g.terminals.push(t);
        }
        Ok(g)
    }

    pub fn from_edges(
        n: usize,
        terminals: Vec<Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex, u64)>,
    ) -> Result<Self> {
        let mut g = Self::new(n, terminals)?;
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Adds weight `w` between `u` and `v`, summing with any existing edge.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, w: u64) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if w == 0 {
            return Err(Error::ZeroWeight(u, v));
        }
        if w > MAX_WEIGHT {
            return Err(Error::WeightTooLarge(w));
        }
        *self.adj.get_mut(&u).unwrap().entry(v).or_insert(0) += w;
        *self.adj.get_mut(&v).unwrap().entry(u).or_insert(0) += w;
        Ok(())
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn check_all<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> Result<()> {
        set.into_iter().try_for_each(|&v| self.check(v))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(BTreeMap::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, u64)> + '_ {
        self.adj.iter().flat_map(|(&u, nbrs)| {
            nbrs.iter()
                .filter(move |(&v, _)| u < v)
                .map(move |(&v, &w)| (u, v, w))
        })
    }

    /// Neighbors of `v` with edge weights, in id order. Empty if `v` is unknown.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.adj.get(&v).into_iter().flat_map(|m| m.iter().map(|(&u, &w)| (u, w)))
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<u64> {
        self.adj.get(&u)?.get(&v).copied()
    }

    /// Number of distinct neighbors.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeMap::len)
    }

    /// Total weight of incident edges, i.e. `d({v})`.
    pub fn weighted_degree(&self, v: Vertex) -> u64 {
        self.adj.get(&v).map_or(0, |m| m.values().sum())
    }

    pub fn terminals(&self) -> &[Vertex] {
        &self.terminals
    }

    pub fn num_terminals(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_terminal(&self, v: Vertex) -> bool {
        self.terminals.contains(&v)
    }

    pub fn terminal_index(&self, v: Vertex) -> Option<usize> {
        self.terminals.iter().position(|&t| t == v)
    }

    /// `w(X, V - X)`.
    pub fn cut_size(&self, side: &VertexSet) -> Result<u64> {
        self.check_all(side)?;
        Ok(self.cut_weight(side))
    }

    /// Like [`cut_size`](Self::cut_size) but ignores unknown vertices.
    pub(crate) fn cut_weight(&self, side: &VertexSet) -> u64 {
        side.iter()
            .flat_map(|v| self.neighbors(*v))
            .filter(|(u, _)| !side.contains(u))
            .map(|(_, w)| w)
            .sum()
    }

    /// `w(X, Y)` for disjoint `X` and `Y`.
    pub fn weight_between(&self, xs: &VertexSet, ys: &VertexSet) -> u64 {
        xs.iter()
            .flat_map(|v| self.neighbors(*v))
            .filter(|(u, _)| ys.contains(u))
            .map(|(_, w)| w)
            .sum()
    }

    /// Whether the subgraph induced by `set` is connected. The empty set and
    /// singletons count as connected.
    pub fn induced_connected(&self, set: &VertexSet) -> Result<bool> {
        self.check_all(set)?;
        let Some(&start) = set.iter().next() else {
            return Ok(true);
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (u, _) in self.neighbors(v) {
                if set.contains(&u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        Ok(seen.len() == set.len())
    }

    /// Replaces `set` by the single vertex `rep`; edges to outside vertices
    /// are summed and internal edges disappear. A terminal in `set` must be
    /// the representative.
    pub fn merge(&mut self, set: &VertexSet, rep: Vertex) -> Result<()> {
        if set.is_empty() {
            return Err(Error::EmptyMerge);
        }
        self.check_all(set)?;
        if !set.contains(&rep) {
            return Err(Error::RepNotInSet(rep));
        }
        let mut terms = set.iter().filter(|v| self.is_terminal(**v));
        if let Some(&t) = terms.next() {
            if let Some(&t2) = terms.next() {
                return Err(Error::TwoTerminals(t, t2));
            }
            if t != rep {
                return Err(Error::RepNotTerminal { terminal: t, rep });
            }
        }

        let mut outside: BTreeMap<Vertex, u64> = BTreeMap::new();
        for v in set {
            for (u, w) in self.adj.remove(v).unwrap() {
                if !set.contains(&u) {
                    *outside.entry(u).or_insert(0) += w;
                    self.adj.get_mut(&u).unwrap().remove(v);
                }
            }
        }
        for (&u, &w) in &outside {
            self.adj.get_mut(&u).unwrap().insert(rep, w);
        }
        self.adj.insert(rep, outside);
        Ok(())
    }

    /// Removes the edge `uv` entirely and returns its weight.
    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<u64> {
        let w = self
            .adj
            .get_mut(&u)
            .and_then(|m| m.remove(&v))
            .ok_or(Error::MissingEdge(u, v))?;
        self.adj.get_mut(&v).unwrap().remove(&u);
        Ok(w)
    }

    /// Removes an isolated vertex, dropping it from the terminal list if
    /// present.
    pub fn remove_vertex(&mut self, v: Vertex) -> Result<()> {
        self.check(v)?;
        if self.degree(v) > 0 {
            return Err(Error::NotIsolated(v));
        }
        self.adj.remove(&v);
        self.terminals.retain(|&t| t != v);
        Ok(())
    }
}

/// One step of the reduction history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogRecord {
    Contract { absorbed: Vec<Vertex>, rep: Vertex },
    DeleteEdge { u: Vertex, v: Vertex, weight: u64 },
    RemoveVertex(Vertex),
}

/// Replayable history of the contractions and deletions applied to an input
/// graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeLog {
    records: Vec<LogRecord>,
}

impl MergeLog {
    pub fn records(&self) -> &[LogRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Re-applies every record to a copy of `original`.
    pub fn replay(&self, original: &WeightedGraph) -> Result<WeightedGraph> {
        let mut g = original.clone();
        for rec in &self.records {
            match rec {
                LogRecord::Contract { absorbed, rep } => {
                    let mut set: VertexSet = absorbed.iter().copied().collect();
                    set.insert(*rep);
                    g.merge(&set, *rep)?;
                }
                LogRecord::DeleteEdge { u, v, .. } => {
                    g.delete_edge(*u, *v)?;
                }
                LogRecord::RemoveVertex(v) => g.remove_vertex(*v)?,
            }
        }
        Ok(g)
    }

    /// Maps every absorbed vertex to the representative that absorbed it.
    pub fn parents(&self) -> BTreeMap<Vertex, Vertex> {
        let mut parent = BTreeMap::new();
        for rec in &self.records {
            if let LogRecord::Contract { absorbed, rep } = rec {
                for &a in absorbed {
                    parent.insert(a, *rep);
                }
            }
        }
        parent
    }

    /// Follows contraction records from `v` to the vertex that currently
    /// stands for it.
    pub fn representative(parents: &BTreeMap<Vertex, Vertex>, mut v: Vertex) -> Vertex {
        let mut steps = 0;
        while let Some(&p) = parents.get(&v) {
            v = p;
            steps += 1;
            assert!(steps <= parents.len(), "cyclic representative chain");
        }
        v
    }
}

/// A working graph together with the log of how it was derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkGraph {
    pub graph: WeightedGraph,
    pub log: MergeLog,
}

impl WorkGraph {
    pub fn new(graph: WeightedGraph) -> Self {
        WorkGraph { graph, log: MergeLog::default() }
    }

    pub fn merge(&mut self, set: &VertexSet, rep: Vertex) -> Result<()> {
        self.graph.merge(set, rep)?;
        let absorbed: Vec<Vertex> = set.iter().copied().filter(|&v| v != rep).collect();
        if !absorbed.is_empty() {
            self.log.records.push(LogRecord::Contract { absorbed, rep });
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<u64> {
        let weight = self.graph.delete_edge(u, v)?;
        self.log.records.push(LogRecord::DeleteEdge { u, v, weight });
        Ok(weight)
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> Result<()> {
        self.graph.remove_vertex(v)?;
        self.log.records.push(LogRecord::RemoveVertex(v));
        Ok(())
    }
}
