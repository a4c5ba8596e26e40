//! Recognizers for the graph classes on which regularity and projective
//! dimension are known to be combinatorial.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::covers::{bight, for_each_maximal_independent_set, min_vertex_cover};
use crate::graph::{bit, full_mask, mask_vertices, Graph, Vertex};

/// Default size cap for the vertex decomposability recursion.
pub const DEFAULT_VD_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFlags {
    pub bipartite: bool,
    pub forest: bool,
    pub chordal: bool,
    pub weakly_chordal: bool,
    pub c5_free: bool,
    /// `None` when the graph is larger than the configured cap.
    pub vertex_decomposable: Option<bool>,
    pub unmixed: bool,
    pub very_well_covered: bool,
}

pub fn classify(g: &Graph) -> ClassFlags {
    classify_with_cap(g, DEFAULT_VD_CAP)
}

pub fn classify_with_cap(g: &Graph, vd_cap: usize) -> ClassFlags {
    let unmixed = is_unmixed(g);
    ClassFlags {
        bipartite: is_bipartite(g),
        forest: is_forest(g),
        chordal: is_chordal(g),
        weakly_chordal: is_weakly_chordal(g),
        c5_free: is_c5_free(g),
        vertex_decomposable: (g.n() <= vd_cap).then(|| is_vertex_decomposable(g)),
        unmixed,
        very_well_covered: unmixed
            && g.isolated_vertices().next().is_none()
            && g.n().is_multiple_of(2)
            && bight(g) == g.n() / 2,
    }
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for s in g.vertices() {
        if color[s as usize - 1].is_some() {
            continue;
        }
        color[s as usize - 1] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = color[u as usize - 1].expect("colored");
            for w in g.neighbors(u) {
                match color[w as usize - 1] {
                    None => {
                        color[w as usize - 1] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) if cw == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn is_forest(g: &Graph) -> bool {
    g.m() + g.component_count() == g.n()
}

/// Elimination ordering from maximum cardinality search (reversed visit
/// order). It is a perfect elimination ordering iff the graph is chordal.
pub fn mcs_elimination_order(g: &Graph) -> Vec<Vertex> {
    let mut weight = vec![0usize; g.n()];
    let mut numbered = 0u64;
    let mut visit = Vec::with_capacity(g.n());
    for _ in 0..g.n() {
        let v = g
            .vertices()
            .filter(|&v| numbered & bit(v) == 0)
            .max_by_key(|&v| (weight[v as usize - 1], std::cmp::Reverse(v)))
            .expect("unnumbered vertex");
        numbered |= bit(v);
        visit.push(v);
        for w in g.neighbors(v) {
            weight[w as usize - 1] += 1;
        }
    }
    visit.reverse();
    visit
}

pub fn is_perfect_elimination_order(g: &Graph, order: &[Vertex]) -> bool {
    let mut later = full_mask(g.n());
    for &v in order {
        later &= !bit(v);
        let nb = g.neighbor_mask(v) & later;
        for w in mask_vertices(nb) {
            if nb & !bit(w) & !g.neighbor_mask(w) != 0 {
                return false;
            }
        }
    }
    true
}

pub fn is_chordal(g: &Graph) -> bool {
    is_perfect_elimination_order(g, &mcs_elimination_order(g))
}

/// Does `g` have an induced cycle whose length lies in `min_len..=max_len`?
pub fn has_induced_cycle(g: &Graph, min_len: usize, max_len: usize) -> bool {
    // path[0] is the least vertex of the cycle
    fn extend(g: &Graph, path: &mut Vec<Vertex>, inner: u64, min_len: usize, max_len: usize) -> bool {
        let s = path[0];
        let last = *path.last().expect("nonempty");
        for w in g.neighbors(last) {
            if w <= s || path.contains(&w) {
                continue;
            }
            // no chords to interior vertices other than `last`
            if g.neighbor_mask(w) & inner & !bit(last) != 0 {
                continue;
            }
            let len = path.len() + 1;
            if path.len() >= 2 && g.has_edge(w, s) {
                if len >= 3 && len >= min_len && len <= max_len {
                    return true;
                }
                continue;
            }
            if len >= max_len {
                continue;
            }
            let add = if path.len() >= 2 { bit(last) } else { 0 };
            path.push(w);
            if extend(g, path, inner | add, min_len, max_len) {
                return true;
            }
            path.pop();
        }
        false
    }
    g.vertices().any(|s| extend(g, &mut vec![s], 0, min_len, max_len))
}

pub fn is_weakly_chordal(g: &Graph) -> bool {
    !has_induced_cycle(g, 5, usize::MAX) && !has_induced_cycle(&g.complement(), 5, usize::MAX)
}

pub fn is_c5_free(g: &Graph) -> bool {
    !has_induced_cycle(g, 5, 5)
}

pub fn is_unmixed(g: &Graph) -> bool {
    min_vertex_cover(g) == bight(g)
}

/// Vertex decomposability of the independence complex, by the recursive
/// definition with shedding vertices. Exponential; guard with a cap.
pub fn is_vertex_decomposable(g: &Graph) -> bool {
    fn vd(adj: &[u64], mask: u64, memo: &mut HashMap<u64, bool>) -> bool {
        if mask_vertices(mask).all(|v| adj[v as usize - 1] & mask == 0) {
            return true;
        }
        if let Some(&r) = memo.get(&mask) {
            return r;
        }
        let mut result = false;
        for v in mask_vertices(mask) {
            let nbrs = adj[v as usize - 1] & mask;
            if nbrs == 0 {
                continue;
            }
            let link = mask & !nbrs & !bit(v);
            if !is_shedding(adj, nbrs, link) {
                continue;
            }
            if vd(adj, mask & !bit(v), memo) && vd(adj, link, memo) {
                result = true;
                break;
            }
        }
        memo.insert(mask, result);
        result
    }
    // no maximal independent set of the link stays maximal after deleting v
    fn is_shedding(adj: &[u64], nbrs: u64, link: u64) -> bool {
        let mut ok = true;
        for_each_maximal_independent_set(adj, link, &mut |s| {
            if ok && !mask_vertices(nbrs).any(|w| adj[w as usize - 1] & s == 0) {
                ok = false;
            }
        });
        ok
    }
    vd(g.masks(), full_mask(g.n()), &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles() {
        let c4 = classify(&Graph::cycle(4));
        assert!(c4.bipartite && !c4.chordal && c4.weakly_chordal && !c4.forest);
        let c5 = classify(&Graph::cycle(5));
        assert!(!c5.c5_free && !c5.weakly_chordal && !c5.bipartite);
        // the complement of C6 contains no hole but C6 itself does
        assert!(!is_weakly_chordal(&Graph::cycle(6)));
        assert!(is_c5_free(&Graph::cycle(6)));
    }

    #[test]
    fn p4_is_vertex_decomposable_forest() {
        let f = classify(&Graph::path(4));
        assert!(f.forest && f.chordal && f.weakly_chordal);
        assert_eq!(f.vertex_decomposable, Some(true));
    }

    #[test]
    fn vertex_decomposability_known_values() {
        // Chordal graphs and C3, C5 are vertex decomposable; C4 and Cn, n >= 6 are not.
        assert!(is_vertex_decomposable(&Graph::cycle(3)));
        assert!(is_vertex_decomposable(&Graph::cycle(5)));
        assert!(!is_vertex_decomposable(&Graph::cycle(4)));
        assert!(!is_vertex_decomposable(&Graph::cycle(6)));
        assert!(!is_vertex_decomposable(&Graph::cycle(7)));
        assert!(is_vertex_decomposable(&Graph::complete(4)));
        assert!(is_vertex_decomposable(&Graph::edgeless(3)));
        let two_k2 = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(is_vertex_decomposable(&two_k2));
    }

    #[test]
    fn vd_cap_reports_not_computed() {
        let f = classify_with_cap(&Graph::path(5), 4);
        assert_eq!(f.vertex_decomposable, None);
    }

    #[test]
    fn chordal_examples() {
        assert!(is_chordal(&Graph::complete(5)));
        assert!(is_chordal(&Graph::edgeless(3)));
        let diamond = Graph::new(4, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(is_chordal(&diamond));
        assert!(!is_chordal(&Graph::cycle(5)));
    }

    #[test]
    fn covered_classes() {
        // C4: minimal covers {1,3},{2,4}
        let c4 = classify(&Graph::cycle(4));
        assert!(c4.unmixed && c4.very_well_covered);
        let p3 = classify(&Graph::path(3));
        assert!(!p3.unmixed && !p3.very_well_covered);
        let k2 = classify(&Graph::complete(2));
        assert!(k2.very_well_covered);
        // a triangle is unmixed but not very well-covered
        let k3 = classify(&Graph::complete(3));
        assert!(k3.unmixed && !k3.very_well_covered);
    }

    #[test]
    fn induced_cycles_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let n = rng.gen_range(3..=8);
            let mut e = Vec::new();
            for u in 1..=n as u32 {
                for v in u + 1..=n as u32 {
                    if rng.gen_bool(0.4) {
                        e.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &e).unwrap();
            // oracle: some vertex subset induces a 2-regular connected graph
            let brute = |lo: usize| {
                (1u64..1 << n).any(|m| {
                    let k = m.count_ones() as usize;
                    k >= lo
                        && mask_vertices(m).all(|v| (g.neighbor_mask(v) & m).count_ones() == 2)
                        && g.induced_by_mask(m).component_count() == 1
                })
            };
            assert_eq!(has_induced_cycle(&g, 5, usize::MAX), brute(5), "{g:?}");
            assert_eq!(is_chordal(&g), !brute(4), "{g:?}");
        }
    }
}
