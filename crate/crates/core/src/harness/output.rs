//! Serialization of sweep results. Every writer is a pure function of the
//! rows, so identical runs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::splitting::Inequality;

use super::config::{Format, SweepConfig};
use super::sweep::{Row, Summary, SweepResult, Witness};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CSV_HEADER: &str = "graph_id,split_id,m,n_target,n_source,special1,special2,\
pd_ok,reg_ok,betti_ok,dim_ok,depth_ok,d_pd,d_reg,d_dim,d_depth,d_bight,d_nu";

pub fn csv_row(r: &Row) -> String {
    let v = r.record.verdicts();
    let d = r.record.deltas();
    let sp = r.record.specialness;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.graph_id,
        r.split_id,
        r.splitting.target.m(),
        r.splitting.target.n(),
        r.splitting.source.n(),
        sp.condition1,
        sp.condition2,
        v.pd_ok,
        v.reg_ok,
        v.betti_ok,
        v.dim_ok,
        v.depth_ok,
        d.pd_ideal,
        d.reg_ideal,
        d.dim,
        d.depth,
        d.bight,
        d.nu
    )
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

pub fn render_jsonl<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for it in items {
        out.push_str(&serde_json::to_string(it).expect("serializable"));
        out.push('\n');
    }
    out
}

fn flags(r: &Row) -> String {
    let sp = r.record.specialness;
    match (sp.condition1, sp.condition2) {
        (true, true) => "special1,special2".into(),
        (true, false) => "special1".into(),
        (false, true) => "special2".into(),
        (false, false) => "-".into(),
    }
}

pub fn render_summary(s: &Summary) -> String {
    let mut out = format!("graphs {}  comparisons {}  witnesses {}\n", s.graphs, s.comparisons, s.witnesses);
    for (q, t) in &s.tallies {
        let _ = writeln!(out, "  ({:<3}) {:<5} pass {:>7}  fail {:>7}", q.tag(), name(*q), t.pass, t.fail);
    }
    out
}

fn name(q: Inequality) -> &'static str {
    match q {
        Inequality::Pd => "pd",
        Inequality::Reg => "reg",
        Inequality::Betti => "betti",
        Inequality::Dim => "dim",
        Inequality::Depth => "depth",
    }
}

pub fn render_text(res: &SweepResult) -> String {
    let mut out = render_summary(&res.summary);
    for w in &res.witnesses {
        let tags: Vec<&str> = w.violated.iter().map(|q| q.tag()).collect();
        let (s, t) = (&w.record.source_report, &w.record.target_report);
        let _ = writeln!(
            out,
            "witness graph {} split {}: violates {}  target {}  source {}  pd {}->{} reg {}->{} dim {}->{} depth {}->{}",
            w.graph_id,
            w.split_id,
            tags.join(","),
            w.splitting.target.to_json(),
            w.splitting.source.to_json(),
            t.pd_ideal,
            s.pd_ideal,
            t.reg_ideal,
            s.reg_ideal,
            t.dim,
            s.dim,
            t.depth,
            s.depth
        );
    }
    out
}

/// Records in the configured format.
pub fn render_records(rows: &[Row], format: Format) -> String {
    match format {
        Format::Csv => render_csv(rows),
        Format::Json => render_jsonl(rows),
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                let v = r.record.verdicts();
                let bad: Vec<&str> = v.violated().iter().map(|q| q.tag()).collect();
                let _ = writeln!(
                    out,
                    "graph {} split {}: n' = {} components {} {} violated [{}]",
                    r.graph_id,
                    r.split_id,
                    r.splitting.source.n(),
                    r.splitting.source.component_count(),
                    flags(r),
                    bad.join(",")
                );
            }
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileEntry {
    pub name: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub config_hash: String,
    pub config: String,
    pub engine_version: String,
    pub field: String,
    pub summary: Summary,
    pub files: Vec<FileEntry>,
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<FileEntry> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(FileEntry { name: name.into(), sha256: hex::encode(Sha256::digest(body.as_bytes())), bytes: body.len() })
}

/// Writes records, witnesses and `manifest.json` into `dir`.
pub fn persist(dir: &Path, cfg: &SweepConfig, res: &SweepResult) -> Result<Manifest> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let records = match cfg.output.format {
        Format::Csv => ("records.csv", render_csv(&res.rows)),
        Format::Json => ("records.jsonl", render_jsonl(&res.rows)),
        Format::Text => ("records.txt", render_records(&res.rows, Format::Text)),
    };
    let files = vec![
        write_file(dir, records.0, &records.1)?,
        write_file(dir, "witnesses.jsonl", &render_jsonl::<Witness>(&res.witnesses))?,
    ];
    let manifest = Manifest {
        config_hash: cfg.hash(),
        config: cfg.canonical_text(),
        engine_version: ENGINE_VERSION.into(),
        field: cfg.field.to_string(),
        summary: res.summary.clone(),
        files,
    };
    let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write_file(dir, "manifest.json", &body)?;
    Ok(manifest)
}
