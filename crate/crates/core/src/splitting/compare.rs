use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::report::{invariants_with_table, EngineOptions, InvariantReport};

use super::map::{specialness, Specialness, SplittingMap};

/// The five comparison inequalities between `G` and a splitting `G'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Inequality {
    /// `pd I(G) ≤ pd I(G')`
    #[serde(rename = "i")]
    Pd,
    /// `reg I(G) ≤ reg I(G')`
    #[serde(rename = "ii")]
    Reg,
    /// `β_i I(G) ≤ β_i I(G')` for all `i`
    #[serde(rename = "iii")]
    Betti,
    /// `dim S/I(G) ≤ dim S'/I(G')`
    #[serde(rename = "iv")]
    Dim,
    /// `depth S/I(G) ≤ depth S'/I(G')`
    #[serde(rename = "v")]
    Depth,
}

impl Inequality {
    pub const ALL: [Inequality; 5] =
        [Inequality::Pd, Inequality::Reg, Inequality::Betti, Inequality::Dim, Inequality::Depth];

    pub fn tag(self) -> &'static str {
        match self {
            Inequality::Pd => "i",
            Inequality::Reg => "ii",
            Inequality::Betti => "iii",
            Inequality::Dim => "iv",
            Inequality::Depth => "v",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Inequality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "i" | "pd" => Inequality::Pd,
            "ii" | "reg" => Inequality::Reg,
            "iii" | "betti" => Inequality::Betti,
            "iv" | "dim" => Inequality::Dim,
            "v" | "depth" => Inequality::Depth,
            other => return Err(Error::Parse(crate::error::ParseError::Malformed {
                line: 0,
                detail: format!("unknown inequality {other:?}"),
            })),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub pd_ok: bool,
    pub reg_ok: bool,
    pub betti_ok: bool,
    pub dim_ok: bool,
    pub depth_ok: bool,
}

impl Verdicts {
    pub fn holds(&self, q: Inequality) -> bool {
        match q {
            Inequality::Pd => self.pd_ok,
            Inequality::Reg => self.reg_ok,
            Inequality::Betti => self.betti_ok,
            Inequality::Dim => self.dim_ok,
            Inequality::Depth => self.depth_ok,
        }
    }

    pub fn violated(&self) -> Vec<Inequality> {
        Inequality::ALL.into_iter().filter(|&q| !self.holds(q)).collect()
    }
}

/// Source minus target for each numeric invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deltas {
    pub pd_ideal: i64,
    pub reg_ideal: i64,
    pub dim: i64,
    pub depth: i64,
    pub bight: i64,
    pub nu: i64,
}

/// Invariants of `G'` (source) and `G` (target) side by side. Verdicts and
/// deltas are always derived from the stored reports.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct ComparisonRecord {
    pub source_report: InvariantReport,
    pub target_report: InvariantReport,
    /// Total Betti numbers of `I(G')`, index `i` is `β_i`.
    pub betti_totals_source: Vec<u64>,
    pub betti_totals_target: Vec<u64>,
    pub specialness: Specialness,
}

impl ComparisonRecord {
    pub fn verdicts(&self) -> Verdicts {
        let (s, t) = (&self.source_report, &self.target_report);
        let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        let len = self.betti_totals_source.len().max(self.betti_totals_target.len());
        Verdicts {
            pd_ok: t.pd_ideal <= s.pd_ideal,
            reg_ok: t.reg_ideal <= s.reg_ideal,
            betti_ok: (0..len).all(|i| at(&self.betti_totals_target, i) <= at(&self.betti_totals_source, i)),
            dim_ok: t.dim <= s.dim,
            depth_ok: t.depth <= s.depth,
        }
    }

    pub fn deltas(&self) -> Deltas {
        let (s, t) = (&self.source_report, &self.target_report);
        Deltas {
            pd_ideal: s.pd_ideal - t.pd_ideal,
            reg_ideal: s.reg_ideal - t.reg_ideal,
            dim: s.dim - t.dim,
            depth: s.depth - t.depth,
            bight: s.bight - t.bight,
            nu: s.nu - t.nu,
        }
    }
}

impl Serialize for ComparisonRecord {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("ComparisonRecord", 7)?;
        st.serialize_field("source_report", &self.source_report)?;
        st.serialize_field("target_report", &self.target_report)?;
        st.serialize_field("betti_totals_source", &self.betti_totals_source)?;
        st.serialize_field("betti_totals_target", &self.betti_totals_target)?;
        st.serialize_field("specialness", &self.specialness)?;
        st.serialize_field("verdicts", &self.verdicts())?;
        st.serialize_field("deltas", &self.deltas())?;
        st.end()
    }
}

pub fn compare(s: &SplittingMap, field: FieldSpec) -> Result<ComparisonRecord> {
    compare_with(s, field, EngineOptions::default())
}

pub fn compare_with(s: &SplittingMap, field: FieldSpec, opts: EngineOptions<'_>) -> Result<ComparisonRecord> {
    let specialness = specialness(s)?;
    let (source_report, st) = invariants_with_table(&s.source, field, opts)?;
    let (target_report, tt) = invariants_with_table(&s.target, field, opts)?;
    Ok(ComparisonRecord {
        source_report,
        target_report,
        betti_totals_source: st.to_ideal().totals(),
        betti_totals_target: tt.to_ideal().totals(),
        specialness,
    })
}
