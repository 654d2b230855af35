//! Exact integer max-flow and maximum-volume minimum (S,T)-cuts.
//!
//! The source set and the sink set are each collapsed into a single node
//! before the flow is computed, so every capacity stays finite. Flow uses
//! shortest augmenting paths (Edmonds–Karp).

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet, WeightedGraph};

/// A cut `X` of a graph together with `d(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub side: VertexSet,
    pub size: u64,
}

/// Vertex count above which [`enumerate_min_cuts`] refuses to run.
pub const ENUMERATION_LIMIT: usize = 20;

const SOURCE: usize = 0;
const SINK: usize = 1;

struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<u64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); nodes], to: Vec::new(), residual: Vec::new() }
    }

    // Undirected edge: both directions start with capacity `w`; arc `e ^ 1`
    // is the reverse of `e`.
    fn add_undirected(&mut self, a: usize, b: usize, w: u64) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.residual.push(w);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.residual.push(w);
    }

    fn max_flow(&mut self) -> u64 {
        let n = self.head.len();
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            seen[SOURCE] = true;
            let mut queue = VecDeque::from([SOURCE]);
            while let Some(x) = queue.pop_front() {
                if x == SINK {
                    break;
                }
                for &e in &self.head[x] {
                    let y = self.to[e];
                    if !seen[y] && self.residual[e] > 0 {
                        seen[y] = true;
                        via[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[SINK] {
                return total;
            }
            let mut bottleneck = u64::MAX;
            let mut y = SINK;
            while y != SOURCE {
                let e = via[y];
                bottleneck = bottleneck.min(self.residual[e]);
                y = self.to[e ^ 1];
            }
            let mut y = SINK;
            while y != SOURCE {
                let e = via[y];
                self.residual[e] -= bottleneck;
                self.residual[e ^ 1] += bottleneck;
                y = self.to[e ^ 1];
            }
            total += bottleneck;
        }
    }

    /// Nodes from which the sink is reachable along arcs with residual
    /// capacity.
    fn reaches_sink(&self) -> Vec<bool> {
        let mut reach = vec![false; self.head.len()];
        reach[SINK] = true;
        let mut stack = vec![SINK];
        while let Some(x) = stack.pop() {
            for &e in &self.head[x] {
                // arc e: x -> to[e]; its reverse e^1 runs to[e] -> x
                let y = self.to[e];
                if !reach[y] && self.residual[e ^ 1] > 0 {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        reach
    }
}

fn validate(g: &WeightedGraph, sources: &VertexSet, sinks: &VertexSet) -> Result<()> {
    if sources.is_empty() || sinks.is_empty() {
        return Err(Error::EmptyTerminalSet);
    }
    for &v in sources.iter().chain(sinks) {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if let Some(&v) = sources.intersection(sinks).next() {
        return Err(Error::Overlap(v));
    }
    Ok(())
}

/// Builds the collapsed network and runs max-flow on it. Returns the network,
/// the flow value, and the node index of every vertex.
fn solve_network(
    g: &WeightedGraph,
    sources: &VertexSet,
    sinks: &VertexSet,
) -> (FlowNetwork, u64, BTreeMap<Vertex, usize>) {
    let mut node = BTreeMap::new();
    let mut next = 2;
    for v in g.vertices() {
        let id = if sources.contains(&v) {
            SOURCE
        } else if sinks.contains(&v) {
            SINK
        } else {
            next += 1;
            next - 1
        };
        node.insert(v, id);
    }
    let mut net = FlowNetwork::new(next);
    for (u, v, w) in g.edges() {
        let (a, b) = (node[&u], node[&v]);
        if a != b {
            net.add_undirected(a, b, w);
        }
    }
    let flow = net.max_flow();
    (net, flow, node)
}

/// Size of a minimum (S,T)-cut.
pub fn max_flow(g: &WeightedGraph, sources: &VertexSet, sinks: &VertexSet) -> Result<u64> {
    validate(g, sources, sinks)?;
    Ok(solve_network(g, sources, sinks).1)
}

/// The minimum (S,T)-cut that contains every other minimum (S,T)-cut: all
/// vertices that cannot reach `T` in the residual network of a maximum flow.
pub fn max_vol_min_cut(g: &WeightedGraph, sources: &VertexSet, sinks: &VertexSet) -> Result<Cut> {
    validate(g, sources, sinks)?;
    let (net, flow, node) = solve_network(g, sources, sinks);
    let reach = net.reaches_sink();
    let side: VertexSet = node.iter().filter(|(_, &x)| !reach[x]).map(|(&v, _)| v).collect();
    debug_assert_eq!(g.cut_weight(&side), flow);
    Ok(Cut { side, size: flow })
}

/// Every minimum (S,T)-cut, by exhaustive enumeration of the free vertices.
/// Sides come out ordered by the bitmask over free vertices in id order.
pub fn enumerate_min_cuts(g: &WeightedGraph, sources: &VertexSet, sinks: &VertexSet) -> Result<Vec<Cut>> {
    validate(g, sources, sinks)?;
    if g.num_vertices() > ENUMERATION_LIMIT {
        return Err(Error::Refused(format!(
            "{} vertices exceeds the enumeration limit of {ENUMERATION_LIMIT}",
            g.num_vertices()
        )));
    }
    let free: Vec<Vertex> = g.vertices().filter(|v| !sources.contains(v) && !sinks.contains(v)).collect();
    let mut best = u64::MAX;
    let mut cuts = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let mut side = sources.clone();
        side.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        let size = g.cut_weight(&side);
        if size < best {
            best = size;
            cuts.clear();
        }
        if size == best {
            cuts.push(Cut { side, size });
        }
    }
    Ok(cuts)
}
