//! Simplicial complexes on `1..=n` with faces as bitmasks, and their reduced
//! homology over a field.

use std::collections::HashMap;

use crate::field::FieldSpec;
use crate::graph::{full_mask, mask_vertices, Graph, MAX_VERTICES};
use crate::linalg::SparseMatrix;
use crate::monomial::MonomialIdeal;

/// A downward closed family of subsets of `1..=n`, stored by its facets.
/// No facets means the void complex; the single facet `0` is `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u64>,
}

fn maximal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|s| std::cmp::Reverse(s.count_ones()));
    let mut out: Vec<u64> = Vec::new();
    for s in sets {
        if !out.iter().any(|&f| s & !f == 0) {
            out.push(s);
        }
    }
    out.sort_unstable();
    out
}

impl SimplicialComplex {
    pub fn from_facets(n: usize, facets: impl IntoIterator<Item = u64>) -> Self {
        assert!(n <= MAX_VERTICES);
        let full = full_mask(n);
        let facets: Vec<u64> = facets.into_iter().collect();
        assert!(facets.iter().all(|f| f & !full == 0), "facet outside vertex set");
        SimplicialComplex { n, facets: maximal(facets) }
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// The full simplex on `mask`.
    pub fn simplex(n: usize, mask: u64) -> Self {
        SimplicialComplex::from_facets(n, [mask])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    /// Dimension, `-1` for `{∅}`; `None` for the void complex.
    pub fn dimension(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.count_ones() as i32 - 1).max()
    }

    /// Every face, sorted by size then value.
    pub fn faces(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for &f in &self.facets {
            // all submasks of f
            let mut s = f;
            loop {
                if seen.insert(s) {
                    out.push(s);
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        out.sort_unstable_by_key(|&s| (s.count_ones(), s));
        out
    }

    /// The induced subcomplex on the vertex set `w`.
    pub fn restrict(&self, w: u64) -> SimplicialComplex {
        if self.is_void() {
            return self.clone();
        }
        SimplicialComplex { n: self.n, facets: maximal(self.facets.iter().map(|f| f & w).collect()) }
    }
}

/// The complex of independent sets of `g`; its Stanley–Reisner ideal is `I(G)`.
pub fn independence_complex(g: &Graph) -> SimplicialComplex {
    SimplicialComplex::from_facets(g.n(), crate::covers::maximal_independent_sets(g))
}

/// Stanley–Reisner complex of a squarefree monomial ideal: the sets that
/// contain the support of no generator.
pub(crate) fn stanley_reisner_faces(ideal: &MonomialIdeal) -> Vec<u64> {
    let n = ideal.ambient_n();
    let minimal_nonfaces: Vec<u64> = ideal.gens().iter().map(|g| g.support_mask()).collect();
    let mut faces = vec![0u64];
    if minimal_nonfaces.contains(&0) {
        // the unit ideal: void complex
        return Vec::new();
    }
    // grow faces by adding larger vertices only
    let mut k = 0;
    while k < faces.len() {
        let f = faces[k];
        let start = if f == 0 { 0 } else { 64 - f.leading_zeros() as usize };
        for v in start..n {
            let g = f | (1u64 << v);
            if !minimal_nonfaces.iter().any(|&s| s & !g == 0) {
                faces.push(g);
            }
        }
        k += 1;
    }
    faces.sort_unstable_by_key(|&s| (s.count_ones(), s));
    faces
}

pub fn stanley_reisner_complex(ideal: &MonomialIdeal) -> SimplicialComplex {
    let faces = stanley_reisner_faces(ideal);
    SimplicialComplex::from_facets(ideal.ambient_n(), faces)
}

/// Dimensions of `H̃_k(Δ; K)` for `k = -1, 0, ..., dim Δ`; empty for the
/// void complex.
pub fn reduced_homology_dims(complex: &SimplicialComplex, field: FieldSpec) -> Vec<usize> {
    reduced_homology_of_faces(&complex.faces(), field)
}

/// Same as [`reduced_homology_dims`] but from an explicit downward closed face list.
pub(crate) fn reduced_homology_of_faces(faces: &[u64], field: FieldSpec) -> Vec<usize> {
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    // by_size[s] = faces with s vertices (dimension s - 1)
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<HashMap<u64, usize>> = by_size
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // rank[s] = rank of the boundary from size-s faces to size-(s-1) faces
    let mut rank = vec![0usize; top + 2];
    for s in 1..=top {
        let mut m = SparseMatrix::new(by_size[s - 1].len());
        for &f in &by_size[s] {
            let row = mask_vertices(f)
                .enumerate()
                .map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    (index[s - 1][&(f & !(1u64 << (v - 1)))], sign)
                })
                .collect();
            m.push_row(row);
        }
        rank[s] = m.rank(field);
    }
    (0..=top).map(|s| by_size[s].len() - rank[s] - rank[s + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_boundary_is_a_circle() {
        let c = SimplicialComplex::from_facets(3, [0b011, 0b110, 0b101]);
        for f in [FieldSpec::GF2, FieldSpec::Rationals] {
            assert_eq!(reduced_homology_dims(&c, f), vec![0, 0, 1]);
        }
    }

    #[test]
    fn simplex_is_acyclic() {
        for k in 1..6 {
            let c = SimplicialComplex::simplex(k, full_mask(k));
            assert!(reduced_homology_dims(&c, FieldSpec::Rationals).iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn two_points_and_edge_cases() {
        let c = SimplicialComplex::from_facets(2, [0b01, 0b10]);
        assert_eq!(reduced_homology_dims(&c, FieldSpec::GF2), vec![0, 1]);
        assert_eq!(reduced_homology_dims(&SimplicialComplex::from_facets(3, [0]), FieldSpec::GF2), vec![1]);
        assert!(reduced_homology_dims(&SimplicialComplex::void(3), FieldSpec::GF2).is_empty());
    }

    #[test]
    fn projective_plane_torsion() {
        // 6-vertex RP^2: H̃_1 = Z/2, so dims differ between GF(2) and Q
        let tris: [[u32; 3]; 10] = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
        ];
        let facets = tris.iter().map(|t| t.iter().fold(0u64, |m, &v| m | 1 << (v - 1)));
        let c = SimplicialComplex::from_facets(6, facets);
        assert_eq!(reduced_homology_dims(&c, FieldSpec::Rationals), vec![0, 0, 0, 0]);
        assert_eq!(reduced_homology_dims(&c, FieldSpec::GF2), vec![0, 0, 1, 1]);
    }

    #[test]
    fn independence_complexes() {
        let k2 = independence_complex(&Graph::complete(2));
        assert_eq!(k2.faces(), vec![0, 0b01, 0b10]);
        let e3 = independence_complex(&Graph::edgeless(3));
        assert_eq!(e3.facets(), &[0b111]);
        let c4 = independence_complex(&Graph::cycle(4));
        assert_eq!(c4.facets(), &[0b0101, 0b1010]);
    }

    #[test]
    fn faces_are_exactly_independent_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let n = rng.gen_range(1..=10);
            let mut e = Vec::new();
            for u in 1..=n as u32 {
                for v in u + 1..=n as u32 {
                    if rng.gen_bool(0.3) {
                        e.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &e).unwrap();
            let c = independence_complex(&g);
            let sr = stanley_reisner_complex(&crate::monomial::edge_ideal(&g));
            assert_eq!(c, sr);
            for s in 0..1u64 << n {
                let independent = g.edges().iter().all(|&(u, v)| s >> (u - 1) & 1 == 0 || s >> (v - 1) & 1 == 0);
                assert_eq!(c.contains(s), independent);
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..80 {
            let n = rng.gen_range(1..=8);
            let facets: Vec<u64> = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(0..1u64 << n)).collect();
            let c = SimplicialComplex::from_facets(n, facets);
            let faces = c.faces();
            let f_alt: i64 = faces.iter().map(|f| if f.count_ones() % 2 == 1 { 1 } else { -1 }).sum();
            for field in [FieldSpec::GF2, FieldSpec::Rationals] {
                let h = reduced_homology_dims(&c, field);
                let h_alt: i64 = h.iter().enumerate().map(|(k, &d)| if k % 2 == 1 { d as i64 } else { -(d as i64) }).sum();
                assert_eq!(f_alt, h_alt);
            }
        }
    }
}
