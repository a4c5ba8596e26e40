//! Graph families for sweeps, deduplicated up to isomorphism and produced in a
//! fixed order.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::graph::{Graph, Vertex, MAX_VERTICES};
use crate::iso::{canonical_form, CanonicalForm};

/// `P_2, ..., P_max_n`.
pub fn paths(max_n: usize) -> Vec<Graph> {
    (2..=max_n).map(Graph::path).collect()
}

/// `C_3, ..., C_max_n`.
pub fn cycles(max_n: usize) -> Vec<Graph> {
    (3..=max_n).map(Graph::cycle).collect()
}

fn push_new(out: &mut Vec<Graph>, seen: &mut HashSet<CanonicalForm>, batch: Vec<(CanonicalForm, Graph)>) {
    for (form, g) in batch {
        if seen.insert(form) {
            out.push(g);
        }
    }
}

/// One representative per isomorphism class of connected graphs with
/// `1..=max_edges` edges, ordered by edge count.
pub fn all_connected(max_edges: usize) -> Vec<Graph> {
    if max_edges == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::complete(2)];
    let mut out = level.clone();
    for _ in 1..max_edges {
        // every connected graph loses a leaf edge or a non-bridge and stays connected
        let candidates: Vec<Graph> = level
            .iter()
            .flat_map(|g| {
                let mut next = Vec::new();
                for u in g.vertices() {
                    for v in u + 1..=g.n() as Vertex {
                        if !g.has_edge(u, v) {
                            let mut e = g.edges().to_vec();
                            e.push((u, v));
                            next.push(Graph::new(g.n(), &e).unwrap());
                        }
                    }
                }
                if g.n() < MAX_VERTICES {
                    for u in g.vertices() {
                        let mut e = g.edges().to_vec();
                        e.push((u, g.n() as Vertex + 1));
                        next.push(Graph::new(g.n() + 1, &e).unwrap());
                    }
                }
                next
            })
            .collect();
        let forms: Vec<(CanonicalForm, Graph)> = candidates
            .into_par_iter()
            .map(|h| {
                let f = canonical_form(&h);
                let rep = f.to_graph();
                (f, rep)
            })
            .collect();
        let mut seen = HashSet::new();
        let mut next_level = Vec::new();
        push_new(&mut next_level, &mut seen, forms);
        out.extend(next_level.iter().cloned());
        level = next_level;
    }
    out
}

/// One representative per isomorphism class of graphs on exactly `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_VERTICES);
    let mut level = vec![Graph::edgeless(0)];
    for k in 0..n {
        let candidates: Vec<Graph> = level
            .iter()
            .flat_map(|g| {
                (0..1u64 << k).map(move |nbrs| {
                    let mut e = g.edges().to_vec();
                    e.extend((0..k).filter(|i| nbrs >> i & 1 == 1).map(|i| (i as Vertex + 1, k as Vertex + 1)));
                    Graph::new(k + 1, &e).unwrap()
                })
            })
            .collect();
        let forms: Vec<(CanonicalForm, Graph)> = candidates
            .into_par_iter()
            .map(|h| {
                let f = canonical_form(&h);
                let rep = f.to_graph();
                (f, rep)
            })
            .collect();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        push_new(&mut next, &mut seen, forms);
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_counts_by_edges() {
        let all = all_connected(6);
        let mut by_m = [0usize; 7];
        for g in &all {
            assert_eq!(g.component_count(), 1);
            assert!(g.isolated_vertices().next().is_none());
            by_m[g.m()] += 1;
        }
        assert_eq!(by_m, [0, 1, 1, 3, 5, 12, 30]);
    }

    #[test]
    fn graph_counts_by_order() {
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(all_connected(5), all_connected(5));
        assert_eq!(paths(4).len(), 3);
        assert_eq!(cycles(6).iter().map(|g| g.n()).collect::<Vec<_>>(), vec![3, 4, 5, 6]);
    }
}
