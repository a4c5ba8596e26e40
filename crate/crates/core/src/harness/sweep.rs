use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::betti::BettiCache;
use crate::error::{Error, ParseError, Result};
use crate::families;
use crate::field::FieldSpec;
use crate::graph::Graph;
use crate::report::EngineOptions;
use crate::splitting::{
    compare_with, enumerate_splittings, sigma_stable, ComparisonRecord, EnumerateOptions, Inequality,
    SpecialFilter, SplittingMap,
};

use super::config::{Caps, Family, SplitFilter, SweepConfig};

/// Reads one graph, as JSON when the text starts with `{` and as an edge
/// list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        Ok(Graph::from_json(text)?)
    } else {
        Ok(Graph::parse_edge_list(text)?)
    }
}

/// A `.jsonl` file holds one graph JSON per line; any other file one graph.
pub fn load_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "jsonl") {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| Ok(Graph::from_json(l)?))
            .collect()
    } else {
        Ok(vec![parse_graph(&text)?])
    }
}

pub fn family_graphs(family: &Family) -> Result<Vec<Graph>> {
    Ok(match family {
        Family::File(p) => load_graphs(p)?,
        Family::Paths(n) => families::paths(*n),
        Family::Cycles(n) => families::cycles(*n),
        Family::AllConnected(m) => families::all_connected(*m),
    })
}

/// One comparison in a sweep; ids are positions in the deterministic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub graph_id: usize,
    pub split_id: usize,
    pub splitting: SplittingMap,
    pub record: ComparisonRecord,
}

/// A failed comparison with everything needed to recompute it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub graph_id: usize,
    pub split_id: usize,
    pub field: FieldSpec,
    pub splitting: SplittingMap,
    pub record: ComparisonRecord,
    pub violated: Vec<Inequality>,
}

impl Witness {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()).into())
    }
}

/// Recomputes a witness; true when record and violations match exactly.
pub fn replay(w: &Witness, betti_cap: usize) -> Result<bool> {
    let opts = EngineOptions { betti_cap, cache: None };
    let record = compare_with(&w.splitting, w.field, opts)?;
    let violated: Vec<Inequality> =
        record.verdicts().violated().into_iter().filter(|q| w.violated.contains(q)).collect();
    Ok(record == w.record && violated == w.violated)
}

/// Pass and fail counts for one inequality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub graphs: usize,
    pub comparisons: usize,
    pub witnesses: usize,
    pub tallies: BTreeMap<Inequality, Tally>,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub rows: Vec<Row>,
    pub witnesses: Vec<Witness>,
    pub summary: Summary,
}

/// The splittings of `g` selected by `filter`, in enumeration order.
pub fn select_splittings(g: &Graph, filter: SplitFilter, caps: &Caps) -> Result<Vec<SplittingMap>> {
    if g.m() > caps.edges {
        return Err(Error::CapExceeded { cap: "edges", limit: caps.edges as u64, actual: g.m() as u64 });
    }
    let special = match filter {
        SplitFilter::Sigma => return Ok(vec![sigma_stable(g)?.0]),
        SplitFilter::All => SpecialFilter::All,
        SplitFilter::Special1 => SpecialFilter::Special1,
        SplitFilter::Special2 => SpecialFilter::Special2,
        SplitFilter::Special => SpecialFilter::Special,
    };
    let opts = EnumerateOptions { filter: special, cap: caps.splittings, ..Default::default() };
    Ok(enumerate_splittings(g, &opts)?.collect())
}

/// Compares every selected splitting of every graph. Work runs on the rayon
/// pool; results come back in enumeration order.
pub fn run(graphs: &[Graph], cfg: &SweepConfig) -> Result<SweepResult> {
    let cache = BettiCache::new();
    let opts = EngineOptions { betti_cap: cfg.caps.betti_n, cache: Some(&cache) };
    let per_graph: Vec<Vec<Row>> = graphs
        .par_iter()
        .enumerate()
        .map(|(graph_id, g)| {
            let splits = select_splittings(g, cfg.filter, &cfg.caps)?;
            splits
                .into_par_iter()
                .enumerate()
                .map(|(split_id, s)| {
                    let record = compare_with(&s, cfg.field, opts)?;
                    Ok(Row { graph_id, split_id, splitting: s, record })
                })
                .collect::<Result<Vec<Row>>>()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Row> = per_graph.into_iter().flatten().collect();
    let mut res = finish(rows, cfg);
    res.summary.graphs = graphs.len();
    Ok(res)
}

/// Runs a single explicit splitting through the same accounting as a sweep.
pub fn run_one(s: &SplittingMap, cfg: &SweepConfig) -> Result<SweepResult> {
    s.ensure_valid()?;
    let opts = EngineOptions { betti_cap: cfg.caps.betti_n, cache: None };
    let record = compare_with(s, cfg.field, opts)?;
    let rows = vec![Row { graph_id: 0, split_id: 0, splitting: s.clone(), record }];
    let mut res = finish(rows, cfg);
    res.summary.graphs = 1;
    Ok(res)
}

fn finish(rows: Vec<Row>, cfg: &SweepConfig) -> SweepResult {
    let mut summary = Summary { comparisons: rows.len(), ..Default::default() };
    let mut witnesses = Vec::new();
    for &q in &cfg.inequalities {
        summary.tallies.insert(q, Tally::default());
    }
    for row in &rows {
        let v = row.record.verdicts();
        let violated: Vec<Inequality> = cfg.inequalities.iter().copied().filter(|&q| !v.holds(q)).collect();
        for &q in &cfg.inequalities {
            let t = summary.tallies.get_mut(&q).expect("tally per inequality");
            if v.holds(q) {
                t.pass += 1;
            } else {
                t.fail += 1;
            }
        }
        if !violated.is_empty() {
            witnesses.push(Witness {
                graph_id: row.graph_id,
                split_id: row.split_id,
                field: cfg.field,
                splitting: row.splitting.clone(),
                record: row.record.clone(),
                violated,
            });
        }
    }
    summary.witnesses = witnesses.len();
    SweepResult { rows, witnesses, summary }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(filter: SplitFilter) -> SweepConfig {
        SweepConfig { filter, ..Default::default() }
    }

    #[test]
    fn path_three_has_no_witnesses() {
        let r = run(&[Graph::path(3)], &cfg(SplitFilter::All)).unwrap();
        assert_eq!(r.summary.comparisons, 2);
        assert!(r.witnesses.is_empty());
        assert_eq!(r.summary.tallies[&Inequality::Dim], Tally { pass: 2, fail: 0 });
    }

    #[test]
    fn sigma_filter_gives_one_row() {
        let r = run(&[Graph::cycle(4), Graph::path(4)], &cfg(SplitFilter::Sigma)).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.rows[0].splitting.source.component_count(), 2);
    }

    #[test]
    fn edge_cap_refuses() {
        let mut c = cfg(SplitFilter::All);
        c.caps.edges = 3;
        assert!(matches!(run(&[Graph::cycle(4)], &c), Err(Error::CapExceeded { cap: "edges", .. })));
    }

    #[test]
    fn witnesses_replay() {
        let mut e: Vec<(u32, u32)> = (2..=7).map(|v| (1, v)).collect();
        e.extend([(7, 8), (7, 9)]);
        let g = Graph::new(9, &e).unwrap();
        let mut c = cfg(SplitFilter::Special2);
        c.caps.edges = 8;
        let r = run(&[g], &c).unwrap();
        assert!(!r.witnesses.is_empty());
        for w in r.witnesses.iter().take(5) {
            assert!(w.violated.contains(&Inequality::Depth));
            let back = Witness::from_json(&w.to_json()).unwrap();
            assert!(replay(&back, 16).unwrap());
        }
        let mut forged = r.witnesses[0].clone();
        forged.record.source_report.depth += 1;
        assert!(!replay(&forged, 16).unwrap());
    }

    #[test]
    fn parse_graph_detects_format() {
        assert_eq!(parse_graph("3 2\n1 2\n2 3\n").unwrap(), Graph::path(3));
        assert_eq!(parse_graph(r#"{"n":3,"edges":[[1,2],[2,3]]}"#).unwrap(), Graph::path(3));
    }
}
