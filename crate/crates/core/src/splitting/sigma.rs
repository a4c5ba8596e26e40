//! The stretching operator on graphs, the σ-stable graph `G*`, and the
//! labeling invariant `C(G)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Labeling, Vertex, MAX_VERTICES};
use crate::iso::are_isomorphic_with_cap;

use super::map::SplittingMap;

pub const DEFAULT_CG_CAP: usize = 8;

fn require_no_isolated(g: &Graph) -> Result<()> {
    match g.isolated_vertices().next() {
        Some(v) => Err(Error::IsolatedVertex(v)),
        None => Ok(()),
    }
}

/// The edges `{i, j + t}` for every edge `{i, j}`, `i < j`, in the original
/// numbering of the stretched ring.
pub fn stretched_edges(g: &Graph, t: u32) -> Vec<(u32, u32)> {
    g.edges().iter().map(|&(i, j)| (i, j + t)).collect()
}

/// Renumbers the used labels of `edges` as `1..=k` in increasing order.
fn compact(edges: &[(u32, u32)]) -> Result<(Graph, Vec<u32>)> {
    let mut labels: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() > MAX_VERTICES {
        return Err(crate::error::ParseError::TooManyVertices { n: labels.len(), max: MAX_VERTICES }.into());
    }
    let pos = |x: u32| labels.binary_search(&x).unwrap() as Vertex + 1;
    let e: Vec<_> = edges.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
    Ok((Graph::new(labels.len(), &e)?, labels))
}

/// `G^{σ^t}` as a plain graph on its used vertices, renumbered contiguously.
pub fn stretched_graph(g: &Graph, t: u32) -> Result<Graph> {
    if t == 0 {
        return Err(Error::NonPositive("t"));
    }
    Ok(compact(&stretched_edges(g, t))?.0)
}

/// `G^{σ^t}` with the map sending `x_i ↦ i` and `x_{j+t} ↦ j`. Fails when a
/// stretched label is the lower end of one edge and the upper end of another.
pub fn sigma_graph(g: &Graph, t: u32) -> Result<SplittingMap> {
    if t == 0 {
        return Err(Error::NonPositive("t"));
    }
    require_no_isolated(g)?;
    let raw = stretched_edges(g, t);
    let (source, labels) = compact(&raw)?;
    let mut alpha = vec![0 as Vertex; labels.len()];
    let pos = |x: u32| labels.binary_search(&x).unwrap();
    for &(i, _) in g.edges() {
        alpha[pos(i)] = i;
    }
    for &(_, j) in g.edges() {
        let p = pos(j + t);
        if alpha[p] != 0 && alpha[p] != j {
            return Err(Error::StretchCollision { t, vertex: j + t, lower: alpha[p], upper: j });
        }
        alpha[p] = j;
    }
    SplittingMap::new(g.clone(), source, alpha)
}

/// `G*` and the least `t0` with `G^{σ^t} ≅ G*` for all `t ≥ t0`.
///
/// For `t ≥ n` no lower label can equal a shifted upper label, so two
/// stretched edges meet exactly when they share a lower or an upper end and
/// the isomorphism type is constant from there on.
pub fn sigma_stable(g: &Graph) -> Result<(SplittingMap, u32)> {
    require_no_isolated(g)?;
    let n = (g.n() as u32).max(1);
    let stable = stretched_graph(g, n)?;
    let mut t0 = n;
    while t0 > 1 {
        let h = stretched_graph(g, t0 - 1)?;
        if !are_isomorphic_with_cap(&h, &stable, MAX_VERTICES)? {
            break;
        }
        t0 -= 1;
    }
    // a collision merges two labels, so it cannot occur at an isomorphic t
    let map = sigma_graph(g, t0).map_err(|e| Error::Invariant(format!("stable map at t0={t0}: {e}")))?;
    Ok((map, t0))
}

/// Number of components of `G*` for `G` relabeled by `labeling`.
pub fn gamma(g: &Graph, labeling: &Labeling) -> Result<usize> {
    require_no_isolated(g)?;
    let h = g.relabel(labeling)?;
    Ok(stretched_graph(&h, (h.n() as u32).max(1))?.component_count())
}

/// `C(G)` with one witness labeling (the first in lexicographic order) per value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CgSet {
    pub values: BTreeMap<usize, Labeling>,
}

impl CgSet {
    pub fn contains(&self, k: usize) -> bool {
        self.values.contains_key(&k)
    }

    pub fn set(&self) -> Vec<usize> {
        self.values.keys().copied().collect()
    }
}

pub fn cg_set(g: &Graph) -> Result<CgSet> {
    cg_set_with_cap(g, DEFAULT_CG_CAP)
}

pub fn cg_set_with_cap(g: &Graph, cap: usize) -> Result<CgSet> {
    require_no_isolated(g)?;
    if g.n() > cap {
        return Err(Error::CapExceeded { cap: "cg", limit: cap as u64, actual: g.n() as u64 });
    }
    let mut perm: Vec<Vertex> = g.vertices().collect();
    let mut values = BTreeMap::new();
    loop {
        let l = Labeling::new(perm.clone())?;
        values.entry(gamma(g, &l)?).or_insert(l);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(CgSet { values })
}

fn next_permutation(p: &mut [Vertex]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else { return false };
    let j = p.iter().rposition(|&x| x > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::monomial::{edge_ideal, stretch_ideal};
    use crate::splitting::map::{specialness, verify_splitting};
    use rand::{Rng, SeedableRng};

    #[test]
    fn path_three() {
        let s = sigma_graph(&Graph::path(3), 1).unwrap();
        assert_eq!(s.source, Graph::new(4, &[(1, 3), (2, 4)]).unwrap());
        assert_eq!(s.alpha, vec![1, 2, 2, 3]);
        assert_eq!(s.source.component_count(), 2);
        let (st, t0) = sigma_stable(&Graph::path(3)).unwrap();
        assert_eq!((st.source.component_count(), t0), (2, 1));
    }

    #[test]
    fn k2_is_stable_at_once() {
        let (s, t0) = sigma_stable(&Graph::complete(2)).unwrap();
        assert_eq!(t0, 1);
        assert_eq!(s.source, Graph::complete(2));
    }

    #[test]
    fn four_cycle_labelings() {
        let standard = Graph::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let (s, _) = sigma_stable(&standard).unwrap();
        let expected = Graph::new(6, &[(1, 4), (2, 5), (3, 6), (1, 6)]).unwrap();
        assert!(are_isomorphic(&s.source, &expected).unwrap());
        assert_eq!(s.source.component_count(), 2);
        let other = Graph::new(4, &[(2, 3), (2, 4), (1, 4), (1, 3)]).unwrap();
        let (s, _) = sigma_stable(&other).unwrap();
        assert!(are_isomorphic(&s.source, &Graph::cycle(4)).unwrap());
        // at t = 1 the standard labeling collides and yields a triangle
        assert!(matches!(sigma_graph(&standard, 1), Err(Error::StretchCollision { .. })));
        assert_eq!(stretched_graph(&standard, 1).unwrap().m(), 4);
    }

    #[test]
    fn gamma_examples() {
        let p3 = Graph::path(3);
        assert_eq!(gamma(&p3, &Labeling::identity(3)).unwrap(), 2);
        assert_eq!(gamma(&p3, &Labeling::new(vec![1, 3, 2]).unwrap()).unwrap(), 1);
        assert_eq!(gamma(&Graph::complete(2), &Labeling::new(vec![2, 1]).unwrap()).unwrap(), 1);
        assert!(matches!(gamma(&Graph::edgeless(2), &Labeling::identity(2)), Err(Error::IsolatedVertex(1))));
    }

    #[test]
    fn cg_of_small_graphs() {
        for n in 3..=6 {
            assert_eq!(cg_set(&Graph::path(n)).unwrap().set(), (1..n).collect::<Vec<_>>());
        }
        assert!(cg_set(&Graph::cycle(4)).unwrap().contains(1));
        assert!(cg_set(&Graph::cycle(6)).unwrap().contains(1));
        assert!(matches!(
            cg_set_with_cap(&Graph::path(5), 4),
            Err(Error::CapExceeded { cap: "cg", .. })
        ));
    }

    #[test]
    fn odd_cycles_can_stretch_to_a_tree() {
        // 1-2-4-3-5-1 stretches to the path 2' 1 5' 3 4' 2
        let c5 = Graph::new(5, &[(1, 2), (2, 4), (4, 3), (3, 5), (5, 1)]).unwrap();
        let (s, _) = sigma_stable(&c5).unwrap();
        assert!(are_isomorphic(&s.source, &Graph::path(6)).unwrap());
        assert!(cg_set(&Graph::cycle(5)).unwrap().contains(1));
        assert_eq!(cg_set(&Graph::cycle(3)).unwrap().set(), vec![1]);
    }

    #[test]
    fn permutations_are_complete() {
        let mut p = vec![1, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![4, 3, 2, 1]);
    }

    fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
        loop {
            let mut e = Vec::new();
            for u in 1..=n as u32 {
                for v in u + 1..=n as u32 {
                    if rng.gen_bool(0.4) {
                        e.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &e).unwrap();
            if g.isolated_vertices().next().is_none() {
                return g;
            }
        }
    }

    #[test]
    fn stretched_ideal_matches_stretched_graph() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let n = rng.gen_range(2..=7);
            let g = random_graph(&mut rng, n);
            for t in 1..=4 {
                let ideal = stretch_ideal(&edge_ideal(&g), t).unwrap();
                let direct: Vec<_> = stretched_edges(&g, t);
                let mut from_ideal: Vec<(u32, u32)> =
                    ideal.gens().iter().map(|m| (m.indices()[0], m.indices()[1])).collect();
                let mut d = direct.clone();
                d.sort_unstable();
                from_ideal.sort_unstable();
                assert_eq!(d, from_ideal);
            }
        }
    }

    #[test]
    fn stability_certificate_beyond_n() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..30 {
            let n = rng.gen_range(2..=8);
            let g = random_graph(&mut rng, n);
            let stable = stretched_graph(&g, n as u32).unwrap();
            for t in n as u32..=2 * n as u32 + 2 {
                let h = stretched_graph(&g, t).unwrap();
                assert!(are_isomorphic_with_cap(&h, &stable, 64).unwrap());
            }
            let (s, t0) = sigma_stable(&g).unwrap();
            assert!(verify_splitting(&s).is_valid());
            assert!(specialness(&s).is_ok());
            assert!(t0 >= 1 && t0 <= n as u32);
            assert!(are_isomorphic_with_cap(&s.source, &stable, 64).unwrap());
            assert_eq!(gamma(&g, &Labeling::identity(n)).unwrap(), s.source.component_count());
        }
    }
}
