use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::graph::{Graph, Vertex};

/// A graph `G'` (the source) with a vertex map `α : V(G') → V(G)` onto the
/// target `G`. It is a splitting when `α` is surjective, sends edges to edges
/// and induces a bijection `E(G') → E(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplittingMap {
    pub target: Graph,
    pub source: Graph,
    /// `alpha[v - 1]` is the image of source vertex `v`.
    pub alpha: Vec<Vertex>,
}

/// Outcome of [`verify_splitting`]; the first violated condition with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SplitDiagnostics {
    Valid,
    AlphaLength { expected: usize, found: usize },
    AlphaOutOfRange { vertex: Vertex, image: Vertex },
    NotSurjective { missing: Vertex },
    EdgeNotMapped { edge: (Vertex, Vertex), image: (Vertex, Vertex) },
    EdgeMapNotInjective { first: (Vertex, Vertex), second: (Vertex, Vertex), image: (Vertex, Vertex) },
    EdgeMapNotSurjective { missing: (Vertex, Vertex) },
}

impl SplitDiagnostics {
    pub fn is_valid(&self) -> bool {
        matches!(self, SplitDiagnostics::Valid)
    }
}

impl fmt::Display for SplitDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SplitDiagnostics::*;
        match self {
            Valid => write!(f, "valid splitting"),
            AlphaLength { expected, found } => {
                write!(f, "alpha has {found} entries, source has {expected} vertices")
            }
            AlphaOutOfRange { vertex, image } => {
                write!(f, "alpha({vertex}) = {image} is not a target vertex")
            }
            NotSurjective { missing } => write!(f, "target vertex {missing} has no preimage"),
            EdgeNotMapped { edge, image } => {
                write!(f, "source edge {edge:?} maps to {image:?}, not an edge of the target")
            }
            EdgeMapNotInjective { first, second, image } => {
                write!(f, "edge map not injective: {first:?} and {second:?} both map to {image:?}")
            }
            EdgeMapNotSurjective { missing } => write!(f, "target edge {missing:?} is not hit"),
        }
    }
}

fn ordered(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn verify_splitting(s: &SplittingMap) -> SplitDiagnostics {
    use SplitDiagnostics::*;
    let (src, tgt) = (&s.source, &s.target);
    if s.alpha.len() != src.n() {
        return AlphaLength { expected: src.n(), found: s.alpha.len() };
    }
    let mut hit = vec![false; tgt.n()];
    for (i, &a) in s.alpha.iter().enumerate() {
        if !tgt.contains_vertex(a) {
            return AlphaOutOfRange { vertex: i as Vertex + 1, image: a };
        }
        hit[a as usize - 1] = true;
    }
    if let Some(p) = hit.iter().position(|h| !h) {
        return NotSurjective { missing: p as Vertex + 1 };
    }
    let mut preimage: HashMap<(Vertex, Vertex), (Vertex, Vertex)> = HashMap::new();
    for &(u, v) in src.edges() {
        let image = ordered(s.alpha[u as usize - 1], s.alpha[v as usize - 1]);
        if image.0 == image.1 || !tgt.has_edge(image.0, image.1) {
            return EdgeNotMapped { edge: (u, v), image };
        }
        if let Some(&first) = preimage.get(&image) {
            return EdgeMapNotInjective { first, second: (u, v), image };
        }
        preimage.insert(image, (u, v));
    }
    if let Some(&missing) = tgt.edges().iter().find(|e| !preimage.contains_key(e)) {
        return EdgeMapNotSurjective { missing };
    }
    Valid
}

impl SplittingMap {
    /// Builds and verifies.
    pub fn new(target: Graph, source: Graph, alpha: Vec<Vertex>) -> Result<Self> {
        let s = SplittingMap { target, source, alpha };
        s.ensure_valid()?;
        Ok(s)
    }

    /// The identity splitting of `g`.
    pub fn identity(g: &Graph) -> Self {
        SplittingMap { target: g.clone(), source: g.clone(), alpha: g.vertices().collect() }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match verify_splitting(self) {
            SplitDiagnostics::Valid => Ok(()),
            d => Err(Error::InvalidSplitting(d.to_string())),
        }
    }

    pub fn image(&self, v: Vertex) -> Vertex {
        self.alpha[v as usize - 1]
    }

    /// Source vertices grouped by image, only fibers with two or more members.
    pub fn nontrivial_fibers(&self) -> Vec<Vec<Vertex>> {
        let mut fibers: Vec<Vec<Vertex>> = vec![Vec::new(); self.target.n()];
        for v in self.source.vertices() {
            fibers[self.image(v) as usize - 1].push(v);
        }
        fibers.into_iter().filter(|f| f.len() > 1).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("splitting serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: SplittingMap =
            serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        Ok(s)
    }
}

/// Which of the two special conditions a splitting map satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Specialness {
    /// Distinct vertices of a fiber have completely adjacent neighborhoods.
    pub condition1: bool,
    /// Distinct vertices of a fiber lie in distinct components of `G'`.
    pub condition2: bool,
}

impl Specialness {
    pub fn is_special(&self) -> bool {
        self.condition1 || self.condition2
    }
}

pub fn specialness(s: &SplittingMap) -> Result<Specialness> {
    s.ensure_valid()?;
    let g = &s.source;
    let mut component = vec![0usize; g.n()];
    for (c, verts) in g.connected_components().iter().enumerate() {
        for &v in verts {
            component[v as usize - 1] = c;
        }
    }
    let mut condition1 = true;
    let mut condition2 = true;
    for fiber in s.nontrivial_fibers() {
        for (k, &v) in fiber.iter().enumerate() {
            for &w in &fiber[k + 1..] {
                if component[v as usize - 1] == component[w as usize - 1] {
                    condition2 = false;
                }
                if condition1 {
                    condition1 = g.neighbors(v).all(|a| g.neighbors(w).all(|b| g.has_edge(a, b)));
                }
            }
        }
    }
    Ok(Specialness { condition1, condition2 })
}
