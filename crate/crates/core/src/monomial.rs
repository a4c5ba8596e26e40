//! Monomials, monomial ideals given by minimal generators, edge ideals, the
//! stretching operator and the colon ideal `I(G) : (x - y)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::graph::{bit, Graph, Vertex};

/// A monomial `x_{i1}^{a1} ... x_{ik}^{ak}` stored as sorted `(index, exponent)`
/// pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new(), degree: 0 }
    }

    /// Builds from `(index, exponent)` pairs; repeated indices add up and zero
    /// exponents are dropped. Indices are 1-based.
    pub fn new(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut exps: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(exps.len());
        for (i, e) in exps {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => merged.push((i, e)),
            }
        }
        let degree = merged.iter().map(|p| p.1).sum();
        Monomial { exps: merged, degree }
    }

    pub fn var(i: u32) -> Self {
        Monomial::new([(i, 1)])
    }

    /// Product of the variables in `indices`, repetitions allowed.
    pub fn from_indices(indices: &[u32]) -> Self {
        Monomial::new(indices.iter().map(|&i| (i, 1)))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn exponent(&self, i: u32) -> u32 {
        self.exps.binary_search_by_key(&i, |p| p.0).map_or(0, |k| self.exps[k].1)
    }

    /// Indices with multiplicity, ascending: `x1^2 x4` gives `[1, 1, 4]`.
    pub fn indices(&self) -> Vec<u32> {
        self.exps.iter().flat_map(|&(i, e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    pub fn max_index(&self) -> u32 {
        self.exps.last().map_or(0, |p| p.0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|p| p.1 == 1)
    }

    /// Support as a bitmask (bit `i - 1` for `x_i`); indices must be at most 64.
    pub fn support_mask(&self) -> u64 {
        self.exps.iter().fold(0, |m, &(i, _)| m | bit(i))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(i, e)| other.exponent(i) >= e)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = self.exps.clone();
        for &(i, e) in &other.exps {
            match out.binary_search_by_key(&i, |p| p.0) {
                Ok(k) => out[k].1 = out[k].1.max(e),
                Err(k) => out.insert(k, (i, e)),
            }
        }
        Monomial::new(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().chain(&other.exps).copied())
    }

    /// The `t`-fold stretch: with sorted indices `i1 <= ... <= id`, returns
    /// `x_{i1} x_{i2+t} x_{i3+2t} ... x_{id+(d-1)t}`.
    pub fn stretch(&self, t: u32) -> Monomial {
        let idx = self.indices();
        Monomial::from_indices(
            &idx.iter().enumerate().map(|(k, &i)| i + k as u32 * t).collect::<Vec<_>>(),
        )
    }
}

impl Ord for Monomial {
    /// Degree first, then the ascending index sequences lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, &(i, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Monomial {
    type Err = ParseError;

    /// Accepts `x1^2*x4^3*x7`, the juxtaposed `x1x2`, and `1`.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        let err = |detail: &str| ParseError::Monomial { text: text.into(), detail: detail.into() };
        let s = text.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut pairs = Vec::new();
        let number = |pos: &mut usize| -> Option<u32> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            s[start..*pos].parse().ok()
        };
        while pos < bytes.len() {
            match bytes[pos] {
                b' ' | b'*' => pos += 1,
                b'x' => {
                    pos += 1;
                    let i = number(&mut pos).ok_or_else(|| err("expected variable index"))?;
                    if i == 0 {
                        return Err(err("variable indices start at 1"));
                    }
                    let mut e = 1;
                    if pos < bytes.len() && bytes[pos] == b'^' {
                        pos += 1;
                        e = number(&mut pos).ok_or_else(|| err("expected exponent"))?;
                    }
                    pairs.push((i, e));
                }
                _ => return Err(err("unexpected character")),
            }
        }
        if pairs.is_empty() {
            return Err(err("empty monomial"));
        }
        Ok(Monomial::new(pairs))
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Removes every monomial divisible by another one; the result is sorted and
/// duplicate free.
pub fn minimal_generators(gens: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    all.sort();
    all.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(all.len());
    // degree-ascending order: a divisor is always seen before its multiples
    for m in all {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// A monomial ideal in `K[x_1, ..., x_n]` held by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    #[serde(rename = "n")]
    ambient_n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(ambient_n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens = minimal_generators(gens);
        if let Some(g) = gens.iter().find(|g| g.max_index() as usize > ambient_n) {
            return Err(Error::VariableOutOfRange { ambient: ambient_n, index: g.max_index() });
        }
        Ok(MonomialIdeal { ambient_n, gens })
    }

    pub fn zero(ambient_n: usize) -> Self {
        MonomialIdeal { ambient_n, gens: Vec::new() }
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ideal serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            n: usize,
            gens: Vec<Monomial>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        MonomialIdeal::new(doc.n, doc.gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Parses `(x1*x2, x2x3)`; parentheses optional. The ambient ring is the
/// least one containing every variable used.
impl FromStr for MonomialIdeal {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let t = text.trim();
        let t = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        let gens = t
            .split(',')
            .map(str::trim)
            .filter(|m| !m.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Monomial>, _>>()?;
        Ok(minimalize(gens))
    }
}

/// The smallest ideal containing `gens`, in as many variables as the largest
/// index used.
pub fn minimalize(gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
    let gens = minimal_generators(gens);
    let n = gens.iter().map(|g| g.max_index() as usize).max().unwrap_or(0);
    MonomialIdeal { ambient_n: n, gens }
}

/// `I(G) = (x_u x_v : {u, v} in E(G))` in `n(G)` variables.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    MonomialIdeal {
        ambient_n: g.n(),
        gens: minimal_generators(g.edges().iter().map(|&(u, v)| Monomial::from_indices(&[u, v]))),
    }
}

/// The ideal generated by the `t`-fold stretches of the generators, in the
/// least polynomial ring with at least the original variables that contains them.
pub fn stretch_ideal(ideal: &MonomialIdeal, t: u32) -> Result<MonomialIdeal> {
    if t == 0 {
        return Err(Error::NonPositive("t"));
    }
    let gens = minimal_generators(ideal.gens.iter().map(|g| g.stretch(t)));
    let top = gens.iter().map(|g| g.max_index() as usize).max().unwrap_or(0);
    Ok(MonomialIdeal { ambient_n: ideal.ambient_n.max(top), gens })
}

/// `I(G) : (x - y) = I(G) + (z w : z in N(x), w in N(y))`, valid when the
/// closed neighborhoods of `x` and `y` are disjoint.
pub fn colon_by_linear_difference(g: &Graph, x: Vertex, y: Vertex) -> Result<MonomialIdeal> {
    for v in [x, y] {
        if !g.contains_vertex(v) {
            return Err(Error::NoSuchVertex(v));
        }
    }
    let closed = |v: Vertex| g.neighbor_mask(v) | bit(v);
    let common = closed(x) & closed(y);
    if common != 0 {
        let witness = common.trailing_zeros() + 1;
        return Err(Error::NeighborhoodsIntersect { x, y, witness });
    }
    let base = edge_ideal(g);
    let extra = g
        .neighbors(x)
        .flat_map(|z| g.neighbors(y).map(move |w| Monomial::from_indices(&[z, w])));
    Ok(MonomialIdeal {
        ambient_n: g.n(),
        gens: minimal_generators(base.gens.into_iter().chain(extra)),
    })
}
