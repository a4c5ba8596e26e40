//! Graded Betti numbers of monomial ideals.
//!
//! Two independent routes are implemented:
//!
//! * [`graded_betti_hochster`] sums reduced homology of the induced
//!   subcomplexes `Δ_W` of the Stanley–Reisner complex over all vertex sets
//!   `W` (squarefree ideals only);
//! * [`graded_betti_koszul`] computes, for every multidegree `b` of the lcm
//!   lattice, the reduced homology of the upper Koszul simplicial complex
//!   `K^b(I) = { F squarefree : x^{b - F} ∈ I }` (any monomial ideal).
//!
//! Tables are indexed by homological degree `i` and total internal degree `j`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{reduced_homology_of_faces, stanley_reisner_faces};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graph::Graph;
use crate::iso::{canonical_form, CanonicalForm};
use crate::monomial::{edge_ideal, Monomial, MonomialIdeal};

/// Default cap on the number of ring variables for Betti computations.
pub const DEFAULT_BETTI_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Betti numbers of the ideal `I`: `β_{0,j}` counts minimal generators.
    OfIdeal,
    /// Betti numbers of `S/I`: `β_{0,0} = 1`.
    OfQuotient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    convention: Convention,
    field: FieldSpec,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(
        convention: Convention,
        field: FieldSpec,
        entries: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *map.entry(k).or_insert(0) += v;
            }
        }
        BettiTable { convention, field, entries: map }
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Nonzero entries keyed by `(i, j)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Entry in the diagram layout: column `i`, row `j - i`.
    pub fn diagram_entry(&self, i: usize, row: usize) -> u64 {
        self.get(i, i + row)
    }

    pub fn to_ideal(&self) -> BettiTable {
        match self.convention {
            Convention::OfIdeal => self.clone(),
            Convention::OfQuotient => BettiTable {
                convention: Convention::OfIdeal,
                field: self.field,
                entries: self
                    .entries
                    .iter()
                    .filter(|(&(i, _), _)| i > 0)
                    .map(|(&(i, j), &v)| ((i - 1, j), v))
                    .collect(),
            },
        }
    }

    pub fn to_quotient(&self) -> BettiTable {
        match self.convention {
            Convention::OfQuotient => self.clone(),
            Convention::OfIdeal => {
                let mut entries: BTreeMap<_, _> =
                    self.entries.iter().map(|(&(i, j), &v)| ((i + 1, j), v)).collect();
                entries.insert((0, 0), 1);
                BettiTable { convention: Convention::OfQuotient, field: self.field, entries }
            }
        }
    }

    /// Largest homological degree with a nonzero entry.
    pub fn projdim(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    /// Largest `j - i` over nonzero entries.
    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    /// Total Betti numbers `β_i = Σ_j β_{i,j}` for `i = 0..=projdim`.
    pub fn totals(&self) -> Vec<u64> {
        let len = self.projdim().map_or(0, |p| p + 1);
        let mut out = vec![0; len];
        for (&(i, _), &v) in &self.entries {
            out[i] += v;
        }
        out
    }

    /// Betti table of the tensor product of two quotients in disjoint variables.
    pub fn tensor(&self, other: &BettiTable) -> BettiTable {
        let (a, b) = (self.to_quotient(), other.to_quotient());
        let mut entries = BTreeMap::new();
        for (&(i1, j1), &v1) in &a.entries {
            for (&(i2, j2), &v2) in &b.entries {
                *entries.entry((i1 + i2, j1 + j2)).or_insert(0) += v1 * v2;
            }
        }
        BettiTable { convention: Convention::OfQuotient, field: self.field, entries }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    /// Rows `j - i`, columns `i`, with a `total:` line on top.
    pub fn render_diagram(&self) -> String {
        let cols = self.projdim().map_or(0, |p| p + 1);
        let rows = self.regularity().map_or(0, |r| r + 1);
        let low = self.entries.keys().map(|&(i, j)| j - i).min().unwrap_or(0);
        let totals = self.totals();
        let width = self.entries.values().chain(&totals).map(|v| v.to_string().len()).max().unwrap_or(1).max(1);
        let mut s = String::new();
        let _ = write!(s, "{:>7}", "");
        for i in 0..cols {
            let _ = write!(s, " {:>width$}", i);
        }
        s.push('\n');
        let _ = write!(s, "{:>7}", "total:");
        for t in &totals {
            let _ = write!(s, " {:>width$}", t);
        }
        s.push('\n');
        for r in low..rows {
            let _ = write!(s, "{:>6}:", r);
            for i in 0..cols {
                let v = self.diagram_entry(i, r);
                if v == 0 {
                    let _ = write!(s, " {:>width$}", ".");
                } else {
                    let _ = write!(s, " {:>width$}", v);
                }
            }
            s.push('\n');
        }
        s
    }

    /// One `beta_{i,j} = v` line per nonzero entry, by total degree.
    pub fn render_entries(&self) -> String {
        let mut s = String::new();
        for (&(i, j), &v) in &self.entries {
            let _ = writeln!(s, "beta_{{{i},{j}}} = {v}");
        }
        s
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            convention: Convention,
            field: FieldSpec,
            entries: Vec<[u64; 3]>,
        }
        Doc {
            convention: self.convention,
            field: self.field,
            entries: self.entries.iter().map(|(&(i, j), &v)| [i as u64, j as u64, v]).collect(),
        }
        .serialize(s)
    }
}

/// `β_{i,j}(S/I)` via Hochster's formula. Requires squarefree generators.
pub fn graded_betti_hochster(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    graded_betti_hochster_capped(ideal, field, DEFAULT_BETTI_CAP)
}

pub fn graded_betti_hochster_capped(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    cap: usize,
) -> Result<BettiTable> {
    if let Some(g) = ideal.gens().iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(g.to_string()));
    }
    let n = ideal.ambient_n();
    if n > cap {
        return Err(Error::CapExceeded { cap: "betti-n", limit: cap as u64, actual: n as u64 });
    }
    let faces = stanley_reisner_faces(ideal);
    let supports: Vec<u64> = ideal.gens().iter().map(Monomial::support_mask).collect();

    let contribution = |w: u64| -> Vec<((usize, usize), u64)> {
        // a vertex of W lying in no minimal nonface inside W is a cone point
        let covered = supports.iter().filter(|&&s| s & !w == 0).fold(0u64, |m, &s| m | s);
        if w != 0 && w & !covered != 0 {
            return Vec::new();
        }
        let sub: Vec<u64> = faces.iter().copied().filter(|&f| f & !w == 0).collect();
        let j = w.count_ones() as usize;
        reduced_homology_of_faces(&sub, field)
            .into_iter()
            .enumerate()
            // index k holds H̃_{k-1}; it contributes to i = j - k
            .filter(|&(k, d)| d > 0 && k <= j)
            .map(|(k, d)| ((j - k, j), d as u64))
            .collect()
    };
    let subsets = 0u64..(1u64 << n);
    let parts: Vec<((usize, usize), u64)> = if n >= 10 {
        subsets.into_par_iter().flat_map_iter(contribution).collect()
    } else {
        subsets.flat_map(contribution).collect()
    };
    Ok(BettiTable::new(Convention::OfQuotient, field, parts))
}

/// Elements of the lcm lattice of the generators (without the bottom `1`).
fn lcm_lattice(gens: &[Monomial]) -> BTreeSet<Monomial> {
    let mut lattice: BTreeSet<Monomial> = BTreeSet::new();
    for g in gens {
        let joins: Vec<Monomial> = lattice.iter().map(|l| l.lcm(g)).collect();
        lattice.extend(joins);
        lattice.insert(g.clone());
    }
    lattice
}

/// `β_{i,j}(S/I)` from upper Koszul simplicial complexes over the lcm lattice.
pub fn graded_betti_koszul(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    if ideal.ambient_n() > 64 {
        return Err(Error::CapExceeded { cap: "koszul-n", limit: 64, actual: ideal.ambient_n() as u64 });
    }
    let mut entries = vec![((0usize, 0usize), 1u64)];
    for b in lcm_lattice(ideal.gens()) {
        let support: Vec<u32> = b.exponents().iter().map(|p| p.0).collect();
        let k = support.len();
        let mut faces = Vec::new();
        for f in 0u64..(1u64 << k) {
            let reduced = Monomial::new(
                b.exponents()
                    .iter()
                    .enumerate()
                    .map(|(pos, &(i, e))| (i, e - ((f >> pos) & 1) as u32)),
            );
            if ideal.contains(&reduced) {
                faces.push(f);
            }
        }
        let j = b.degree() as usize;
        for (idx, d) in reduced_homology_of_faces(&faces, field).into_iter().enumerate() {
            // β_{idx, b}(I) = dim H̃_{idx-1}(K^b); shift once more for S/I
            if d > 0 {
                entries.push(((idx + 1, j), d as u64));
            }
        }
    }
    Ok(BettiTable::new(Convention::OfQuotient, field, entries))
}

/// Memo of Betti tables of connected graphs keyed by canonical form.
#[derive(Debug, Default)]
pub struct BettiCache {
    tables: Mutex<HashMap<(CanonicalForm, FieldSpec), BettiTable>>,
}

impl BettiCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.tables.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `β_{i,j}(S/I(G))` as the tensor product of the tables of the connected
/// components of `G`. Components are computed with Hochster's formula and
/// memoized in `cache` when one is given.
pub fn graph_betti(
    g: &Graph,
    field: FieldSpec,
    cap: usize,
    cache: Option<&BettiCache>,
) -> Result<BettiTable> {
    if g.n() > cap {
        return Err(Error::CapExceeded { cap: "betti-n", limit: cap as u64, actual: g.n() as u64 });
    }
    let mut table = BettiTable::new(Convention::OfQuotient, field, [((0, 0), 1)]);
    for comp in g.component_masks() {
        if comp.count_ones() == 1 {
            continue;
        }
        let h = g.induced_by_mask(comp);
        let part = match cache {
            None => graded_betti_hochster_capped(&edge_ideal(&h), field, cap)?,
            Some(c) => {
                let key = (canonical_form(&h), field);
                let hit = c.tables.lock().expect("cache lock").get(&key).cloned();
                match hit {
                    Some(t) => t,
                    None => {
                        let t = graded_betti_hochster_capped(&edge_ideal(&key.0.to_graph()), field, cap)?;
                        c.tables.lock().expect("cache lock").insert(key, t.clone());
                        t
                    }
                }
            }
        };
        table = table.tensor(&part);
    }
    Ok(table)
}
