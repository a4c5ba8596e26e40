use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::betti::DEFAULT_BETTI_CAP;
use crate::error::{Error, ParseError, Result};
use crate::field::FieldSpec;
use crate::splitting::enumerate::DEFAULT_SPLIT_CAP;
use crate::splitting::sigma::DEFAULT_CG_CAP;
use crate::splitting::Inequality;

pub const DEFAULT_EDGE_CAP: usize = 7;

fn bad(line: usize, detail: impl Into<String>) -> Error {
    Error::Parse(ParseError::Malformed { line, detail: detail.into() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    File(PathBuf),
    Paths(usize),
    Cycles(usize),
    AllConnected(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::File(p) => write!(f, "file:{}", p.display()),
            Family::Paths(n) => write!(f, "paths:{n}"),
            Family::Cycles(n) => write!(f, "cycles:{n}"),
            Family::AllConnected(m) => write!(f, "all_connected:{m}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s.trim().split_once(':').ok_or_else(|| bad(0, format!("family {s:?} needs kind:arg")))?;
        let num = || arg.trim().parse::<usize>().map_err(|_| bad(0, format!("family size {arg:?}")));
        Ok(match kind.trim() {
            "file" => Family::File(PathBuf::from(arg.trim())),
            "paths" => Family::Paths(num()?),
            "cycles" => Family::Cycles(num()?),
            "all_connected" => Family::AllConnected(num()?),
            other => return Err(bad(0, format!("unknown family {other:?}"))),
        })
    }
}

/// Which splittings of each graph a sweep compares against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitFilter {
    #[default]
    All,
    Special1,
    Special2,
    /// Condition (1) or (2).
    Special,
    /// Only the σ-stable graph with its canonical map.
    Sigma,
}

impl fmt::Display for SplitFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitFilter::All => "all",
            SplitFilter::Special1 => "special1",
            SplitFilter::Special2 => "special2",
            SplitFilter::Special => "special",
            SplitFilter::Sigma => "sigma",
        })
    }
}

impl FromStr for SplitFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "all" => SplitFilter::All,
            "special1" => SplitFilter::Special1,
            "special2" => SplitFilter::Special2,
            "special" | "special1+special2" => SplitFilter::Special,
            "sigma" | "sigma_stable" => SplitFilter::Sigma,
            other => return Err(bad(0, format!("unknown filter {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    #[default]
    Csv,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "json" | "jsonl" => Format::Json,
            "csv" => Format::Csv,
            "text" => Format::Text,
            other => return Err(bad(0, format!("unknown format {other:?}"))),
        })
    }
}

/// Size guards; exceeding one is a refusal naming the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Vertices of any graph whose Betti table is computed.
    pub betti_n: usize,
    /// Edges of a graph whose splittings are enumerated.
    pub edges: usize,
    /// Vertices of a graph whose `C(G)` is computed.
    pub cg_n: usize,
    /// Raw partition choices per graph.
    pub splittings: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { betti_n: DEFAULT_BETTI_CAP, edges: DEFAULT_EDGE_CAP, cg_n: DEFAULT_CG_CAP, splittings: DEFAULT_SPLIT_CAP }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub format: Format,
    pub path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub family: Family,
    pub field: FieldSpec,
    pub filter: SplitFilter,
    /// Inequalities whose failure produces a witness.
    pub inequalities: Vec<Inequality>,
    pub caps: Caps,
    pub output: OutputSpec,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            family: Family::AllConnected(5),
            field: FieldSpec::GF2,
            filter: SplitFilter::All,
            inequalities: Inequality::ALL.to_vec(),
            caps: Caps::default(),
            output: OutputSpec::default(),
        }
    }
}

fn parse_inequalities(s: &str) -> Result<Vec<Inequality>> {
    let mut v: Vec<Inequality> =
        s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

fn positive<T: FromStr + PartialOrd + Default>(key: &str, value: &str, line: usize) -> Result<T> {
    match value.parse::<T>() {
        Ok(x) if x > T::default() => Ok(x),
        _ => Err(bad(line, format!("{key} must be a positive integer, got {value:?}"))),
    }
}

impl SweepConfig {
    /// Parses a flat `key = value` document; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (k, v) = l.split_once('=').ok_or_else(|| bad(line, format!("expected key=value, got {l:?}")))?;
            cfg.set(k.trim(), v.trim(), line)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let at = |e: Error| match e {
            Error::Parse(ParseError::Malformed { detail, .. }) => bad(line, detail),
            e => e,
        };
        match key {
            "family" => self.family = value.parse().map_err(at)?,
            "field" => self.field = value.parse().map_err(|e: ParseError| at(e.into()))?,
            "filter" => self.filter = value.parse().map_err(at)?,
            "inequalities" => self.inequalities = parse_inequalities(value).map_err(at)?,
            "cap_n" => self.caps.betti_n = positive(key, value, line)?,
            "cap_edges" => self.caps.edges = positive(key, value, line)?,
            "cap_cg" => self.caps.cg_n = positive(key, value, line)?,
            "cap_splittings" => self.caps.splittings = positive(key, value, line)?,
            "format" => self.output.format = value.parse().map_err(at)?,
            "out" => self.output.path = Some(PathBuf::from(value)),
            other => return Err(bad(line, format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let empty = match &self.family {
            Family::File(p) => p.as_os_str().is_empty(),
            Family::Paths(n) => *n < 2,
            Family::Cycles(n) => *n < 3,
            Family::AllConnected(m) => *m == 0,
        };
        if empty {
            return Err(bad(0, format!("family {} is empty", self.family)));
        }
        if self.inequalities.is_empty() {
            return Err(bad(0, "no inequalities selected"));
        }
        let c = &self.caps;
        if c.betti_n == 0 || c.edges == 0 || c.cg_n == 0 || c.splittings == 0 {
            return Err(Error::NonPositive("cap"));
        }
        Ok(())
    }

    /// The settings that determine results, one `key = value` per line in a
    /// fixed order. The output path is excluded.
    pub fn canonical_text(&self) -> String {
        let ineq: Vec<&str> = self.inequalities.iter().map(|q| q.tag()).collect();
        format!(
            "family = {}\nfield = {}\nfilter = {}\ninequalities = {}\ncap_n = {}\ncap_edges = {}\ncap_cg = {}\ncap_splittings = {}\nformat = {}\n",
            self.family,
            self.field,
            self.filter,
            ineq.join(","),
            self.caps.betti_n,
            self.caps.edges,
            self.caps.cg_n,
            self.caps.splittings,
            self.output.format,
        )
    }

    /// SHA-256 of [`canonical_text`](Self::canonical_text), lowercase hex.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_roundtrip() {
        let text = "# sweep\nfamily = paths:7\nfield = q\nfilter = special2\ninequalities = v, i\ncap_edges = 6\nformat = json\nout = /tmp/x\n";
        let c = SweepConfig::parse(text).unwrap();
        assert_eq!(c.family, Family::Paths(7));
        assert_eq!(c.field, FieldSpec::Rationals);
        assert_eq!(c.filter, SplitFilter::Special2);
        assert_eq!(c.inequalities, vec![Inequality::Pd, Inequality::Depth]);
        assert_eq!(c.caps.edges, 6);
        assert_eq!(c.output.path, Some(PathBuf::from("/tmp/x")));
        let again = SweepConfig::parse(&c.canonical_text()).unwrap();
        assert_eq!(again.hash(), c.hash());
        assert_eq!(c.hash().len(), 64);
    }

    #[test]
    fn hash_ignores_output_path_only() {
        let a = SweepConfig::default();
        let mut b = a.clone();
        b.output.path = Some("elsewhere".into());
        assert_eq!(a.hash(), b.hash());
        b.field = FieldSpec::Rationals;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn rejects_bad_documents() {
        for text in [
            "family = paths:1",
            "family = trees:4",
            "cap_n = 0",
            "cap_edges = -3",
            "colour = red",
            "no equals sign",
            "inequalities = vi",
            "inequalities = ",
            "field = gfp:4",
        ] {
            assert!(SweepConfig::parse(text).is_err(), "{text}");
        }
        match SweepConfig::parse("\n\nbogus = 1") {
            Err(Error::Parse(ParseError::Malformed { line, .. })) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
