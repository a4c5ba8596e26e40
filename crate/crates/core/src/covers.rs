//! Vertex covers, independent sets and induced matchings, all exact.

use crate::graph::{bit, full_mask, mask_vertices, Graph};

/// Size of a maximum independent set inside `mask`.
fn max_independent(adj: &[u64], mask: u64) -> usize {
    if mask == 0 {
        return 0;
    }
    // vertex of least degree in the induced subgraph
    let (v, deg) = mask_vertices(mask)
        .map(|v| (v, (adj[v as usize - 1] & mask).count_ones()))
        .min_by_key(|&(_, d)| d)
        .expect("nonempty mask");
    let closed = (adj[v as usize - 1] | bit(v)) & mask;
    let take = 1 + max_independent(adj, mask & !closed);
    if deg <= 1 {
        return take;
    }
    // some maximum independent set contains v or one of its neighbors
    let mut best = take;
    for w in mask_vertices(adj[v as usize - 1] & mask) {
        let closed_w = (adj[w as usize - 1] | bit(w)) & mask;
        best = best.max(1 + max_independent(adj, mask & !closed_w));
    }
    best
}

/// Independence number of `g`.
pub fn independence_number(g: &Graph) -> usize {
    max_independent(g.masks(), full_mask(g.n()))
}

/// Minimum size of a vertex cover (the `μ` in `dim S/I(G) = n − μ`).
pub fn min_vertex_cover(g: &Graph) -> usize {
    g.n() - independence_number(g)
}

/// Calls `f` on every maximal independent set of the subgraph induced on
/// `mask`. Bron–Kerbosch with pivoting on the complement.
pub(crate) fn for_each_maximal_independent_set(
    adj: &[u64],
    mask: u64,
    f: &mut impl FnMut(u64),
) {
    fn rec(adj: &[u64], set: u64, cand: u64, excl: u64, f: &mut impl FnMut(u64)) {
        if cand == 0 {
            if excl == 0 {
                f(set);
            }
            return;
        }
        // pivot: vertex of cand|excl with most non-neighbors in cand.
        // Branch only on candidates adjacent to the pivot (or the pivot itself).
        let pivot = mask_vertices(cand | excl)
            .max_by_key(|&u| (cand & !adj[u as usize - 1] & !bit(u)).count_ones())
            .expect("nonempty");
        let branch = cand & (adj[pivot as usize - 1] | bit(pivot));
        let (mut cand, mut excl) = (cand, excl);
        for v in mask_vertices(branch) {
            let closed = adj[v as usize - 1] | bit(v);
            rec(adj, set | bit(v), cand & !closed, excl & !closed, f);
            cand &= !bit(v);
            excl |= bit(v);
        }
    }
    rec(adj, 0, mask, 0, f);
}

/// All maximal independent sets of `g` as bitmasks.
pub fn maximal_independent_sets(g: &Graph) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_maximal_independent_set(g.masks(), full_mask(g.n()), &mut |s| out.push(s));
    out.sort_unstable();
    out
}

/// All inclusion-minimal vertex covers of `g` as bitmasks. These are exactly
/// the complements of the maximal independent sets.
pub fn minimal_vertex_covers(g: &Graph) -> Vec<u64> {
    let full = full_mask(g.n());
    let mut out: Vec<u64> = maximal_independent_sets(g).into_iter().map(|s| full & !s).collect();
    out.sort_unstable();
    out
}

/// Big height of `I(G)`: the largest size of a minimal vertex cover.
pub fn bight(g: &Graph) -> usize {
    let mut least = usize::MAX;
    for_each_maximal_independent_set(g.masks(), full_mask(g.n()), &mut |s| {
        least = least.min(s.count_ones() as usize)
    });
    g.n() - least
}

/// Induced matching number `ν(G)`.
pub fn induced_matching_number(g: &Graph) -> usize {
    fn rec(g: &Graph, idx: usize, blocked: u64, count: usize, best: &mut usize) {
        let edges = g.edges();
        if count + (edges.len() - idx) <= *best {
            return;
        }
        if idx == edges.len() {
            *best = count;
            return;
        }
        let (u, v) = edges[idx];
        if blocked & (bit(u) | bit(v)) == 0 {
            let closed = g.neighbor_mask(u) | g.neighbor_mask(v) | bit(u) | bit(v);
            rec(g, idx + 1, blocked | closed, count + 1, best);
        }
        rec(g, idx + 1, blocked, count, best);
    }
    let mut best = 0;
    rec(g, 0, 0, 0, &mut best);
    best
}

pub fn is_vertex_cover(g: &Graph, mask: u64) -> bool {
    g.edges().iter().all(|&(u, v)| mask & (bit(u) | bit(v)) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle over all subsets.
    fn brute(g: &Graph) -> (usize, usize) {
        let n = g.n();
        let covers: Vec<u64> = (0..1u64 << n).filter(|&m| is_vertex_cover(g, m)).collect();
        let tau = covers.iter().map(|m| m.count_ones()).min().unwrap() as usize;
        let minimal = covers
            .iter()
            .filter(|&&c| mask_vertices(c).all(|v| !is_vertex_cover(g, c & !bit(v))));
        let bight = minimal.map(|m| m.count_ones()).max().unwrap() as usize;
        (tau, bight)
    }

    #[test]
    fn small_values() {
        assert_eq!(min_vertex_cover(&Graph::edgeless(4)), 0);
        assert_eq!(min_vertex_cover(&Graph::complete(2)), 1);
        assert_eq!(min_vertex_cover(&Graph::cycle(5)), 3);
        assert_eq!(brute(&Graph::cycle(5)).0, 3);
        assert_eq!(bight(&Graph::complete(2)), 1);
        assert_eq!(bight(&Graph::star(5)), 5);
        assert_eq!(bight(&Graph::path(4)), 2);
        assert_eq!(brute(&Graph::path(4)).1, 2);
        assert_eq!(bight(&Graph::edgeless(3)), 0);
    }

    #[test]
    fn minimal_covers_of_p4() {
        // {2,3}, {1,3}, {2,4}
        let covers = minimal_vertex_covers(&Graph::path(4));
        assert_eq!(covers, vec![0b0101, 0b0110, 0b1010]);
    }

    #[test]
    fn induced_matching() {
        assert_eq!(induced_matching_number(&Graph::complete(2)), 1);
        assert_eq!(induced_matching_number(&Graph::path(3)), 1);
        let two_k2 = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(induced_matching_number(&two_k2), 2);
        assert_eq!(induced_matching_number(&Graph::path(5)), 2);
        assert_eq!(induced_matching_number(&Graph::cycle(6)), 2);
        assert_eq!(induced_matching_number(&Graph::edgeless(2)), 0);
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=9);
            let mut e = Vec::new();
            for u in 1..=n as u32 {
                for v in u + 1..=n as u32 {
                    if rng.gen_bool(0.35) {
                        e.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &e).unwrap();
            let (tau, b) = brute(&g);
            assert_eq!(min_vertex_cover(&g), tau, "{g:?}");
            assert_eq!(bight(&g), b, "{g:?}");
            assert!(tau <= b && b <= n);
        }
    }
}
