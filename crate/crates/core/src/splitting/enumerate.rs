//! Exhaustive generation of the splittings of a graph.
//!
//! A splitting without superfluous isolated vertices is the same thing as a
//! choice, at each vertex `v`, of a set partition of the edge-ends at `v`.
//! Block `b` at `v` becomes the source vertex `(v, b)`; source vertices are
//! numbered in lexicographic `(v, b)` order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, MAX_VERTICES};
use crate::iso::{canonical_form_colored, CanonicalForm};

use super::map::{specialness, SplittingMap};

pub const DEFAULT_SPLIT_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialFilter {
    #[default]
    All,
    /// Condition (1) holds.
    Special1,
    /// Condition (2) holds.
    Special2,
    /// Either condition holds.
    Special,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub filter: SpecialFilter,
    /// Drop a splitting when some `(φ, ψ)` with `ψ ∈ Aut(G)` and
    /// `α₂ ∘ φ = ψ ∘ α₁` maps an earlier one onto it.
    pub dedupe: bool,
    pub max_source_vertices: Option<usize>,
    /// Extra isolated source vertices, all mapped to target vertex 1.
    pub pad_isolated: usize,
    /// Refuse when the number of raw partition choices exceeds this.
    pub cap: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            filter: SpecialFilter::All,
            dedupe: false,
            max_source_vertices: None,
            pad_isolated: 0,
            cap: DEFAULT_SPLIT_CAP,
        }
    }
}

/// Bell numbers, saturating at `u64::MAX`.
pub fn bell(k: usize) -> u64 {
    // Bell triangle
    let mut row: Vec<u128> = vec![1];
    for _ in 0..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let y = next.last().unwrap().saturating_add(x);
            next.push(y);
        }
        row = next;
    }
    row[0].min(u64::MAX as u128) as u64
}

/// Number of raw partition choices, the product of `Bell(deg v)`.
pub fn raw_splitting_count(g: &Graph) -> u64 {
    g.vertices().fold(1u64, |acc, v| acc.saturating_mul(bell(g.degree(v))))
}

/// All restricted growth strings of length `d`, in lexicographic order.
fn set_partitions(d: usize) -> Vec<Vec<u8>> {
    fn rec(d: usize, cur: &mut Vec<u8>, max: u8, out: &mut Vec<Vec<u8>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { max + 1 };
        for b in 0..=top {
            cur.push(b);
            rec(d, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, &mut Vec::with_capacity(d), 0, &mut out);
    out
}

/// Lazy stream of splittings in a fixed mixed-radix order over the
/// per-vertex partitions (the last vertex varies fastest).
pub struct Splittings<'a> {
    g: &'a Graph,
    opts: EnumerateOptions,
    parts: Vec<Vec<Vec<u8>>>,
    /// For edge `k = (u, v)`: positions of `k` among the edges at `u` and at `v`.
    end_pos: Vec<(usize, usize)>,
    counter: Vec<usize>,
    done: bool,
    seen: HashSet<CanonicalForm>,
}

pub fn enumerate_splittings<'a>(g: &'a Graph, opts: &EnumerateOptions) -> Result<Splittings<'a>> {
    let raw = raw_splitting_count(g);
    if raw > opts.cap {
        return Err(Error::CapExceeded { cap: "splittings", limit: opts.cap, actual: raw });
    }
    if opts.pad_isolated > 0 && g.n() == 0 {
        return Err(Error::NoSuchVertex(1));
    }
    let glued = 2 * g.m() + g.n() + opts.pad_isolated + g.isolated_vertices().count();
    if opts.dedupe && glued > MAX_VERTICES {
        return Err(Error::CapExceeded { cap: "dedupe", limit: MAX_VERTICES as u64, actual: glued as u64 });
    }
    let mut seen_at = vec![0usize; g.n()];
    let end_pos = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let pu = seen_at[u as usize - 1];
            let pv = seen_at[v as usize - 1];
            seen_at[u as usize - 1] += 1;
            seen_at[v as usize - 1] += 1;
            (pu, pv)
        })
        .collect();
    let parts = g.vertices().map(|v| set_partitions(g.degree(v))).collect();
    Ok(Splittings {
        g,
        opts: opts.clone(),
        parts,
        end_pos,
        counter: vec![0; g.n()],
        done: false,
        seen: HashSet::new(),
    })
}

impl Splittings<'_> {
    fn current(&self) -> SplittingMap {
        let g = self.g;
        let mut base = Vec::with_capacity(g.n());
        let mut alpha = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            let rgs = &p[self.counter[i]];
            let blocks = rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(1);
            base.push(alpha.len() as Vertex);
            alpha.extend(std::iter::repeat_n(i as Vertex + 1, blocks));
        }
        let edges: Vec<(Vertex, Vertex)> = g
            .edges()
            .iter()
            .zip(&self.end_pos)
            .map(|(&(u, v), &(pu, pv))| {
                let (iu, iv) = (u as usize - 1, v as usize - 1);
                let bu = self.parts[iu][self.counter[iu]][pu] as Vertex;
                let bv = self.parts[iv][self.counter[iv]][pv] as Vertex;
                (base[iu] + bu + 1, base[iv] + bv + 1)
            })
            .collect();
        alpha.extend(std::iter::repeat_n(1, self.opts.pad_isolated));
        let source = Graph::new(alpha.len(), &edges).expect("splitting source is simple");
        SplittingMap { target: g.clone(), source, alpha }
    }

    fn advance(&mut self) {
        for i in (0..self.counter.len()).rev() {
            self.counter[i] += 1;
            if self.counter[i] < self.parts[i].len() {
                return;
            }
            self.counter[i] = 0;
        }
        self.done = true;
    }

    fn accept(&mut self, s: &SplittingMap) -> bool {
        if let Some(cap) = self.opts.max_source_vertices {
            if s.source.n() > cap {
                return false;
            }
        }
        if self.opts.filter != SpecialFilter::All {
            let sp = specialness(s).expect("enumerated splittings are valid");
            let keep = match self.opts.filter {
                SpecialFilter::All => true,
                SpecialFilter::Special1 => sp.condition1,
                SpecialFilter::Special2 => sp.condition2,
                SpecialFilter::Special => sp.is_special(),
            };
            if !keep {
                return false;
            }
        }
        if self.opts.dedupe {
            return self.seen.insert(glued_form(s));
        }
        true
    }
}

/// Canonical form of `G' ⊔ G` plus the edges `v - α(v)`, with the two sides
/// colored apart, so isomorphisms are pairs `(φ, ψ)` commuting with `α`.
fn glued_form(s: &SplittingMap) -> CanonicalForm {
    let k = s.source.n() as Vertex;
    let mut e: Vec<(Vertex, Vertex)> = s.source.edges().to_vec();
    e.extend(s.target.edges().iter().map(|&(u, v)| (u + k, v + k)));
    e.extend(s.source.vertices().map(|v| (v, s.image(v) + k)));
    let h = Graph::new(s.source.n() + s.target.n(), &e).expect("glued graph is simple");
    let colors: Vec<u32> = h.vertices().map(|v| u32::from(v > k)).collect();
    canonical_form_colored(&h, &colors)
}

impl Iterator for Splittings<'_> {
    type Item = SplittingMap;

    fn next(&mut self) -> Option<SplittingMap> {
        while !self.done {
            let s = self.current();
            self.advance();
            if self.accept(&s) {
                return Some(s);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::map::verify_splitting;

    fn all(g: &Graph) -> Vec<SplittingMap> {
        enumerate_splittings(g, &EnumerateOptions::default()).unwrap().collect()
    }

    #[test]
    fn bell_numbers() {
        let b: Vec<u64> = (0..8).map(bell).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203, 877]);
        assert_eq!(bell(200), u64::MAX);
        for d in 0..7 {
            assert_eq!(set_partitions(d).len() as u64, bell(d));
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(all(&Graph::complete(2)).len(), 1);
        let p3 = all(&Graph::path(3));
        assert_eq!(p3.len(), 2);
        assert_eq!(p3[0].source, Graph::path(3));
        assert_eq!(p3[1].source, Graph::new(4, &[(1, 2), (3, 4)]).unwrap());
        assert_eq!(p3[1].alpha, vec![1, 2, 2, 3]);
        assert_eq!(all(&Graph::cycle(3)).len(), 8);
        assert_eq!(all(&Graph::edgeless(3)).len(), 1);
    }

    #[test]
    fn every_output_is_valid_and_counts_match() {
        for g in [Graph::star(4), Graph::cycle(5), Graph::complete(4), Graph::path(6)] {
            let v = all(&g);
            assert_eq!(v.len() as u64, raw_splitting_count(&g));
            assert!(v.iter().all(|s| verify_splitting(s).is_valid()));
            let distinct: HashSet<_> = v.iter().map(|s| (s.source.clone(), s.alpha.clone())).collect();
            assert_eq!(distinct.len(), v.len());
        }
    }

    #[test]
    fn dedupe_and_filters() {
        let g = Graph::star(3);
        let opts = EnumerateOptions { dedupe: true, ..Default::default() };
        // partitions of 3 leaves up to symmetry: shapes 3, 2+1, 1+1+1
        assert_eq!(enumerate_splittings(&g, &opts).unwrap().count(), 3);
        // over P_4 the reflection identifies the two one-sided splittings
        assert_eq!(enumerate_splittings(&Graph::path(4), &opts).unwrap().count(), 3);
        let opts = EnumerateOptions { filter: SpecialFilter::Special2, ..Default::default() };
        assert_eq!(enumerate_splittings(&g, &opts).unwrap().count(), 5);
        let opts = EnumerateOptions { max_source_vertices: Some(5), ..Default::default() };
        assert_eq!(enumerate_splittings(&g, &opts).unwrap().count(), 4);
    }

    #[test]
    fn padding_and_cap() {
        let opts = EnumerateOptions { pad_isolated: 2, ..Default::default() };
        let v: Vec<_> = enumerate_splittings(&Graph::path(3), &opts).unwrap().collect();
        assert_eq!(v[0].source.n(), 5);
        assert_eq!(&v[0].alpha[3..], &[1, 1]);
        assert!(v.iter().all(|s| verify_splitting(s).is_valid()));
        let opts = EnumerateOptions { cap: 10, ..Default::default() };
        assert!(matches!(
            enumerate_splittings(&Graph::star(5), &opts),
            Err(Error::CapExceeded { cap: "splittings", limit: 10, actual: 52 })
        ));
    }

    #[test]
    fn component_counts_cover_one_to_m() {
        let g = Graph::new(5, &[(1, 2), (2, 3), (3, 4), (4, 1), (4, 5), (2, 5)]).unwrap();
        let comps: HashSet<usize> = all(&g).iter().map(|s| s.source.component_count()).collect();
        assert_eq!(comps, (1..=6).collect());
    }
}
