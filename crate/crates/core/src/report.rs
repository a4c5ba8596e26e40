use serde::{Deserialize, Serialize};

use crate::betti::{graph_betti, BettiCache, BettiTable, DEFAULT_BETTI_CAP};
use crate::covers::{bight, induced_matching_number, min_vertex_cover};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graph::Graph;

/// Homological and combinatorial invariants of `S/I(G)` and `I(G)`.
///
/// For the zero ideal `pd_ideal` is `-1`, so `pd_quotient = pd_ideal + 1`
/// holds throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: usize,
    pub pd_quotient: i64,
    pub pd_ideal: i64,
    pub reg_ideal: i64,
    pub reg_quotient: i64,
    pub depth: i64,
    pub dim: i64,
    pub bight: i64,
    pub nu: i64,
    pub field: FieldSpec,
}

impl InvariantReport {
    /// Checks the internal relations between the fields.
    pub fn check(&self) -> Result<()> {
        let n = self.n as i64;
        let ok = self.pd_quotient == self.pd_ideal + 1
            && self.reg_ideal == self.reg_quotient + 1
            && self.depth + self.pd_quotient == n
            && self.depth <= self.dim
            && self.dim <= n;
        if ok {
            Ok(())
        } else {
            Err(Error::Invariant(format!("inconsistent report {self:?}")))
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions<'a> {
    pub betti_cap: usize,
    pub cache: Option<&'a BettiCache>,
}

impl Default for EngineOptions<'_> {
    fn default() -> Self {
        EngineOptions { betti_cap: DEFAULT_BETTI_CAP, cache: None }
    }
}

pub fn invariants(g: &Graph, field: FieldSpec) -> Result<InvariantReport> {
    Ok(invariants_with_table(g, field, EngineOptions::default())?.0)
}

/// The report together with the quotient Betti table it was read from.
pub fn invariants_with_table(
    g: &Graph,
    field: FieldSpec,
    opts: EngineOptions<'_>,
) -> Result<(InvariantReport, BettiTable)> {
    let table = graph_betti(g, field, opts.betti_cap, opts.cache)?;
    let pd_quotient = table.projdim().unwrap_or(0) as i64;
    let reg_quotient = table.regularity().unwrap_or(0) as i64;
    let n = g.n() as i64;
    let report = InvariantReport {
        n: g.n(),
        pd_quotient,
        pd_ideal: pd_quotient - 1,
        reg_ideal: reg_quotient + 1,
        reg_quotient,
        depth: n - pd_quotient,
        dim: n - min_vertex_cover(g) as i64,
        bight: bight(g) as i64,
        nu: induced_matching_number(g) as i64,
        field,
    };
    report.check()?;
    Ok((report, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_is_a_hypersurface() {
        let r = invariants(&Graph::complete(2), FieldSpec::GF2).unwrap();
        assert_eq!((r.pd_quotient, r.depth, r.dim, r.reg_ideal), (1, 1, 1, 2));
    }

    #[test]
    fn zero_ideal_convention() {
        let r = invariants(&Graph::edgeless(3), FieldSpec::Rationals).unwrap();
        assert_eq!((r.pd_quotient, r.pd_ideal, r.reg_quotient, r.depth, r.dim), (0, -1, 0, 3, 3));
    }

    #[test]
    fn depth_example_pair() {
        let mut e: Vec<(u32, u32)> = (2..=7).map(|v| (1, v)).collect();
        e.extend([(7, 8), (7, 9)]);
        let g = Graph::new(9, &e).unwrap();
        let split = Graph::star(5).disjoint_union(&Graph::star(3)).unwrap();
        for f in [FieldSpec::GF2, FieldSpec::Rationals] {
            assert_eq!(invariants(&g, f).unwrap().depth, 3);
            assert_eq!(invariants(&split, f).unwrap().depth, 2);
        }
    }

    #[test]
    fn path_six() {
        assert_eq!(invariants(&Graph::path(6), FieldSpec::GF2).unwrap().pd_quotient, 4);
    }
}
