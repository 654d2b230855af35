//! Isolating cuts, extensions and distances of non-terminals from terminals.

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet, WeightedGraph};
use crate::mincut::{max_vol_min_cut, Cut};

/// How far a non-terminal `v` sits from terminal `t_i`: the vertices that
/// join `t_i`'s maximum isolating cut once `v` is forced onto its side, and
/// the resulting growth in cut size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub x_set: VertexSet,
    pub dist: u64,
    /// Max-vol min-iso-cut for `t_i`.
    pub base: Cut,
    /// Max-vol min-cut for `(t_i + v, T - t_i)`.
    pub extended: Cut,
}

fn others(g: &WeightedGraph, i: usize) -> VertexSet {
    g.terminals().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &t)| t).collect()
}

/// Max-vol minimum isolating cut for the `i`-th terminal.
pub fn max_vol_min_iso_cut(g: &WeightedGraph, i: usize) -> Result<Cut> {
    if g.num_terminals() < 2 {
        return Err(Error::TooFewTerminals("an isolating cut"));
    }
    let t = g.terminals()[i];
    max_vol_min_cut(g, &VertexSet::from([t]), &others(g, i))
}

pub fn extension(g: &WeightedGraph, i: usize, v: Vertex) -> Result<Extension> {
    if !g.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    if g.is_terminal(v) {
        return Err(Error::IsTerminal(v));
    }
    let base = max_vol_min_iso_cut(g, i)?;
    let t = g.terminals()[i];
    let extended = max_vol_min_cut(g, &VertexSet::from([t, v]), &others(g, i))?;
    let dist = extended
        .size
        .checked_sub(base.size)
        .expect("adding a source vertex cannot shrink the minimum cut");
    debug_assert!(base.side.is_subset(&extended.side));
    let x_set = extended.side.difference(&base.side).copied().collect();
    Ok(Extension { x_set, dist, base, extended })
}

/// Only the distance `ext_i(v)`.
pub fn distance(g: &WeightedGraph, i: usize, v: Vertex) -> Result<u64> {
    extension(g, i, v).map(|e| e.dist)
}

/// `h`: the sum of minimum isolating cut sizes over all terminals. Zero when
/// there are fewer than two terminals.
pub fn iso_size_sum(g: &WeightedGraph) -> u64 {
    if g.num_terminals() < 2 {
        return 0;
    }
    (0..g.num_terminals())
        .map(|i| max_vol_min_iso_cut(g, i).expect("terminal indices are valid").size)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{example_path, set, v};

    #[test]
    fn iso_cut_examples() {
        let g = example_path();
        assert_eq!(max_vol_min_iso_cut(&g, 2).unwrap(), Cut { side: set(&[1, 2, 4]), size: 2 });
        assert_eq!(max_vol_min_iso_cut(&g, 0).unwrap(), Cut { side: set(&[0]), size: 1 });

        // vertex 3 lies in no terminal's component and joins every max-vol side
        let g = WeightedGraph::from_edges(4, vec![v(0), v(1)], [(v(1), v(2), 1)]).unwrap();
        assert_eq!(max_vol_min_iso_cut(&g, 0).unwrap(), Cut { side: set(&[0, 3]), size: 0 });

        let g = WeightedGraph::new(2, vec![v(0)]).unwrap();
        assert!(matches!(max_vol_min_iso_cut(&g, 0), Err(Error::TooFewTerminals(_))));
    }

    #[test]
    fn isolated_terminal_keeps_only_itself() {
        let g = WeightedGraph::from_edges(3, vec![v(0), v(1), v(2)], [(v(1), v(2), 1)]).unwrap();
        assert_eq!(max_vol_min_iso_cut(&g, 0).unwrap(), Cut { side: set(&[0]), size: 0 });
    }

    #[test]
    fn extension_examples() {
        let g = example_path();
        let e = extension(&g, 2, v(1)).unwrap();
        assert!(e.x_set.is_empty());
        assert_eq!(e.dist, 0);

        let e = extension(&g, 0, v(1)).unwrap();
        assert_eq!(e.x_set, set(&[1]));
        assert_eq!(e.dist, 1);
        assert_eq!(e.extended.side, set(&[0, 1]));

        assert_eq!(extension(&g, 0, v(3)), Err(Error::IsTerminal(v(3))));
    }

    #[test]
    fn pendant_on_terminal_has_distance_zero() {
        // 3 hangs off t1 with weight 4
        let g = WeightedGraph::from_edges(
            4,
            vec![v(0), v(1), v(2)],
            [(v(0), v(3), 4), (v(0), v(1), 1), (v(1), v(2), 1)],
        )
        .unwrap();
        assert_eq!(distance(&g, 0, v(3)).unwrap(), 0);
    }

    #[test]
    fn iso_size_sum_examples() {
        assert_eq!(iso_size_sum(&example_path()), 4);
        assert_eq!(iso_size_sum(&WeightedGraph::new(4, vec![v(0), v(1), v(2)]).unwrap()), 0);
        let k3 = WeightedGraph::from_edges(3, vec![v(0), v(1), v(2)], [(0, 1), (1, 2), (0, 2)].map(|(a, b)| (v(a), v(b), 1))).unwrap();
        assert_eq!(iso_size_sum(&k3), 6);
    }
}
