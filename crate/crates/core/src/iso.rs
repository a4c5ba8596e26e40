//! Canonical labeling of small graphs by partition refinement and
//! individualization, with twin pruning at branch points.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, Vertex};

/// Default size guard for isomorphism tests.
pub const DEFAULT_ISO_CAP: usize = 16;

/// Canonical certificate: two (optionally vertex-colored) graphs are
/// isomorphic, by a color-preserving bijection, iff their forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    colors: Vec<u32>,
    rows: Vec<u64>,
}

impl CanonicalForm {
    /// The canonical representative as a graph.
    pub fn to_graph(&self) -> Graph {
        Graph::from_masks(self.rows.clone())
    }
}

type Partition = Vec<Vec<usize>>;

fn refine(adj: &[u64], mut p: Partition) -> Partition {
    loop {
        let cell_masks: Vec<u64> =
            p.iter().map(|c| c.iter().fold(0u64, |m, &v| m | (1u64 << v))).collect();
        let mut next: Partition = Vec::with_capacity(p.len());
        let mut changed = false;
        for cell in &p {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (cell_masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|k| k.1).collect());
                    start = i;
                }
            }
            changed |= keyed.first().map(|k| &k.0) != keyed.last().map(|k| &k.0);
        }
        if !changed {
            return next;
        }
        p = next;
    }
}

fn leaf_rows(adj: &[u64], p: &Partition) -> Vec<u64> {
    let mut pos = vec![0usize; adj.len()];
    for (i, cell) in p.iter().enumerate() {
        pos[cell[0]] = i;
    }
    let mut rows = vec![0u64; adj.len()];
    for (v, &row) in adj.iter().enumerate() {
        let mut r = 0u64;
        let mut m = row;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            r |= 1u64 << pos[w];
        }
        rows[pos[v]] = r;
    }
    rows
}

fn search(adj: &[u64], p: Partition, best: &mut Option<Vec<u64>>) {
    let Some(ci) = p.iter().position(|c| c.len() > 1) else {
        let rows = leaf_rows(adj, &p);
        if best.as_ref().is_none_or(|b| rows < *b) {
            *best = Some(rows);
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &p[ci] {
        // a twin of a tried vertex yields the same leaves via a transposition
        if tried.iter().any(|&u| adj[u] & !(1u64 << v) == adj[v] & !(1u64 << u)) {
            continue;
        }
        tried.push(v);
        let mut q = p.clone();
        let rest: Vec<usize> = q[ci].iter().copied().filter(|&w| w != v).collect();
        q[ci] = vec![v];
        q.insert(ci + 1, rest);
        search(adj, refine(adj, q), best);
    }
}

/// Canonical form of `g` where `colors[v - 1]` must be preserved exactly.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> CanonicalForm {
    assert_eq!(colors.len(), g.n());
    let adj = g.masks().to_vec();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| colors[v]);
    let mut p: Partition = Vec::new();
    for v in order {
        match p.last_mut() {
            Some(cell) if colors[cell[0]] == colors[v] => cell.push(v),
            _ => p.push(vec![v]),
        }
    }
    let mut sorted_colors = colors.to_vec();
    sorted_colors.sort_unstable();
    let mut best = None;
    if g.n() == 0 {
        best = Some(Vec::new());
    } else {
        search(&adj, refine(&adj, p), &mut best);
    }
    CanonicalForm { colors: sorted_colors, rows: best.expect("search reaches a leaf") }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_form_colored(g, &vec![0; g.n()])
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    are_isomorphic_with_cap(g, h, DEFAULT_ISO_CAP)
}

pub fn are_isomorphic_with_cap(g: &Graph, h: &Graph, cap: usize) -> Result<bool> {
    let n = g.n().max(h.n());
    if n > cap {
        return Err(Error::CapExceeded { cap: "iso", limit: cap as u64, actual: n as u64 });
    }
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(false);
    }
    let degs = |x: &Graph| {
        let mut d: Vec<usize> = x.vertices().map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degs(g) != degs(h) {
        return Ok(false);
    }
    Ok(canonical_form(g) == canonical_form(h))
}

/// Brute-force isomorphism over all bijections; test oracle only.
#[doc(hidden)]
pub fn isomorphic_brute_force(g: &Graph, h: &Graph) -> bool {
    fn rec(g: &Graph, h: &Graph, map: &mut Vec<Vertex>, used: u64) -> bool {
        let k = map.len();
        if k == g.n() {
            return true;
        }
        let v = k as Vertex + 1;
        for w in 1..=h.n() as Vertex {
            if used & bit(w) != 0 {
                continue;
            }
            let ok = (1..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u as usize - 1], w));
            if ok {
                map.push(w);
                if rec(g, h, map, used | bit(w)) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    g.n() == h.n() && g.m() == h.m() && rec(g, h, &mut Vec::new(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Labeling;

    #[test]
    fn basic() {
        let p3 = Graph::path(3);
        let q = Graph::new(3, &[(1, 3), (2, 3)]).unwrap();
        assert!(are_isomorphic(&p3, &q).unwrap());
        let other = Graph::new(5, &[(1, 2), (3, 4)]).unwrap();
        assert!(!are_isomorphic(&p3, &other).unwrap());
        let two_triangles = Graph::new(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert!(!are_isomorphic(&Graph::cycle(6), &two_triangles).unwrap());
        assert!(are_isomorphic(&Graph::edgeless(0), &Graph::edgeless(0)).unwrap());
    }

    #[test]
    fn cap() {
        let g = Graph::path(17);
        assert!(matches!(are_isomorphic(&g, &g), Err(Error::CapExceeded { .. })));
        assert!(are_isomorphic_with_cap(&g, &g, 20).unwrap());
    }

    #[test]
    fn colored_forms_respect_colors() {
        let p3 = Graph::path(3);
        let a = canonical_form_colored(&p3, &[1, 2, 1]);
        let b = canonical_form_colored(&p3, &[1, 1, 2]);
        assert_ne!(a, b);
        let q = Graph::new(3, &[(1, 2), (1, 3)]).unwrap();
        assert_eq!(a, canonical_form_colored(&q, &[2, 1, 1]));
    }

    #[test]
    fn agrees_with_brute_force_and_relabeling() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.1..0.9);
            let rand_graph = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut e = Vec::new();
                for u in 1..=n as u32 {
                    for v in u + 1..=n as u32 {
                        if rng.gen_bool(p) {
                            e.push((u, v));
                        }
                    }
                }
                Graph::new(n, &e).unwrap()
            };
            let g = rand_graph(&mut rng);
            let h = rand_graph(&mut rng);
            assert_eq!(are_isomorphic(&g, &h).unwrap(), isomorphic_brute_force(&g, &h));
            let mut perm: Vec<u32> = (1..=n as u32).collect();
            perm.shuffle(&mut rng);
            let g2 = g.relabel(&Labeling::new(perm).unwrap()).unwrap();
            assert_eq!(canonical_form(&g), canonical_form(&g2));
            assert!(are_isomorphic(&canonical_form(&g).to_graph(), &g).unwrap());
        }
    }

    #[test]
    fn vertex_transitive_graphs_are_fast() {
        let g = Graph::edgeless(16);
        assert!(are_isomorphic(&g, &g).unwrap());
        let k = Graph::complete(12);
        assert!(are_isomorphic(&k, &k).unwrap());
    }
}
