//! Finite simple graphs on the vertex labels `1..=n`.
//!
//! Isolated vertices are part of the graph: the ambient polynomial ring of the
//! edge ideal has one variable per vertex, so depth and dimension see them.
//! Internally adjacency is kept as one `u64` bitmask per vertex, with bit
//! `v - 1` standing for label `v`, which caps graphs at [`MAX_VERTICES`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

pub const MAX_VERTICES: usize = 64;

/// Vertex label, 1-based.
pub type Vertex = u32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Sorted lexicographically, each pair with `u < v`.
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<u64>,
}

/// A bijection of `1..=n`; `perm[v - 1]` is the new label of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    perm: Vec<Vertex>,
}

impl Labeling {
    pub fn new(perm: Vec<Vertex>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            let i = p as usize;
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::BadLabeling(n));
            }
            seen[i - 1] = true;
        }
        Ok(Labeling { perm })
    }

    pub fn identity(n: usize) -> Self {
        Labeling { perm: (1..=n as Vertex).collect() }
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.perm[v as usize - 1]
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.perm
    }
}

#[inline]
pub(crate) fn bit(v: Vertex) -> u64 {
    1u64 << (v - 1)
}

/// Iterate the labels whose bits are set in `mask`.
pub(crate) fn mask_vertices(mut mask: u64) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros();
            mask &= mask - 1;
            Some(i + 1)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    /// Build a graph from 1-based edge pairs. Rejects loops, duplicates and
    /// endpoints outside `1..=n`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, ParseError> {
        Self::build(n, edges.iter().copied().enumerate().map(|(i, e)| (i + 1, e)))
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, (Vertex, Vertex))>,
    ) -> Result<Self, ParseError> {
        if n > MAX_VERTICES {
            return Err(ParseError::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::new();
        for (line, (a, b)) in edges {
            for x in [a, b] {
                if x == 0 || x as usize > n {
                    return Err(ParseError::EndpointOutOfRange { line, vertex: x as i64, n });
                }
            }
            if a == b {
                return Err(ParseError::Loop { line, v: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adj[u as usize - 1] & bit(v) != 0 {
                return Err(ParseError::DuplicateEdge { line, u, v });
            }
            adj[u as usize - 1] |= bit(v);
            adj[v as usize - 1] |= bit(u);
            list.push((u, v));
        }
        list.sort_unstable();
        Ok(Graph { n, edges: list, adj })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph::new(n, &[]).expect("edgeless graph within vertex cap")
    }

    /// Graph from adjacency masks; `adj` must be symmetric and loop free.
    pub(crate) fn from_masks(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for u in 1..=n as Vertex {
            for v in mask_vertices(adj[u as usize - 1] & !full_mask(u as usize)) {
                edges.push((u, v));
            }
        }
        Graph { n, edges, adj }
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n as Vertex).map(|i| (i, i + 1)).collect();
        Graph::new(n, &e).expect("path within vertex cap")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut e: Vec<_> = (1..n as Vertex).map(|i| (i, i + 1)).collect();
        e.push((1, n as Vertex));
        Graph::new(n, &e).expect("cycle within vertex cap")
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 1..=n as Vertex {
            for v in u + 1..=n as Vertex {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).expect("complete graph within vertex cap")
    }

    /// The star with center 1 and leaves `2..=m+1`.
    pub fn star(m: usize) -> Self {
        let e: Vec<_> = (2..=m as Vertex + 1).map(|v| (1, v)).collect();
        Graph::new(m + 1, &e).expect("star within vertex cap")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n as Vertex
    }

    /// Neighborhood of `v` as a bitmask (bit `w - 1` for neighbor `w`).
    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v as usize - 1]
    }

    pub(crate) fn masks(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> {
        mask_vertices(self.neighbor_mask(v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbor_mask(v).count_ones() as usize
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.neighbor_mask(u) & bit(v) != 0
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v >= 1 && v as usize <= self.n
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(|&v| self.adj[v as usize - 1] == 0)
    }

    /// Maximal connected vertex sets, each sorted, ordered by least element.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        self.component_masks().into_iter().map(|m| mask_vertices(m).collect()).collect()
    }

    pub(crate) fn component_masks(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen & bit(v) != 0 {
                continue;
            }
            let mut comp = bit(v);
            let mut frontier = bit(v);
            while frontier != 0 {
                let mut next = 0;
                for w in mask_vertices(frontier) {
                    next |= self.adj[w as usize - 1];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_masks().len()
    }

    /// Subgraph induced on the vertices of `mask`, relabelled `1..` in
    /// increasing order of the original labels.
    pub(crate) fn induced_by_mask(&self, mask: u64) -> Graph {
        let keep: Vec<Vertex> = mask_vertices(mask).collect();
        let mut new_label = vec![0 as Vertex; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            new_label[v as usize] = i as Vertex + 1;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                mask_vertices(self.adj[v as usize - 1] & mask)
                    .fold(0u64, |acc, w| acc | bit(new_label[w as usize]))
            })
            .collect();
        Graph::from_masks(adj)
    }

    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<Graph> {
        let mut mask = 0;
        for &v in vertices {
            if !self.contains_vertex(v) {
                return Err(Error::NoSuchVertex(v));
            }
            mask |= bit(v);
        }
        Ok(self.induced_by_mask(mask))
    }

    pub fn complement(&self) -> Graph {
        let full = full_mask(self.n);
        let adj = self
            .vertices()
            .map(|v| !self.adj[v as usize - 1] & full & !bit(v))
            .collect();
        Graph::from_masks(adj)
    }

    /// The same graph with vertex `v` renamed `labeling.apply(v)`.
    pub fn relabel(&self, labeling: &Labeling) -> Result<Graph> {
        if labeling.as_slice().len() != self.n {
            return Err(Error::BadLabeling(self.n));
        }
        let e: Vec<_> =
            self.edges.iter().map(|&(u, v)| (labeling.apply(u), labeling.apply(v))).collect();
        Ok(Graph::new(self.n, &e)?)
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n as Vertex;
        let mut e = self.edges.clone();
        e.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Ok(Graph::new(self.n + other.n, &e)?)
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Parse the edge-list text format: a header line `n m` followed by `m`
    /// lines `u v`. Blank lines and lines starting with `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| ParseError::Malformed {
            line: 1,
            detail: "missing header `n m`".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        if n < 0 || m < 0 {
            return Err(ParseError::Malformed { line: hline, detail: "negative count".into() });
        }
        let (n, m) = (n as usize, m as usize);
        if n > MAX_VERTICES {
            return Err(ParseError::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut edges = Vec::with_capacity(m);
        for (line, body) in lines {
            let [u, v] = parse_pair(line, body)?;
            for x in [u, v] {
                if x < 1 || x as usize > n {
                    return Err(ParseError::EndpointOutOfRange { line, vertex: x, n });
                }
            }
            edges.push((line, (u as Vertex, v as Vertex)));
        }
        if edges.len() != m {
            return Err(ParseError::EdgeCountMismatch { declared: m, found: edges.len() });
        }
        Graph::build(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))
    }

    /// Vertex sets as a canonical sorted set, used for bookkeeping in tests.
    pub fn edge_set(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.edges.iter().copied().collect()
    }
}

fn parse_pair(line: usize, body: &str) -> Result<[i64; 2], ParseError> {
    let toks: Vec<&str> = body.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(ParseError::Malformed {
            line,
            detail: format!("expected two integers, found {:?}", body),
        });
    }
    let mut out = [0i64; 2];
    for (slot, t) in out.iter_mut().zip(&toks) {
        *slot = t.parse().map_err(|_| ParseError::Malformed {
            line,
            detail: format!("{t:?} is not an integer"),
        })?;
    }
    Ok(out)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} E={{", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        let e: Vec<_> = doc.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::new(doc.n, &e).map_err(serde::de::Error::custom)
    }
}
