//! Text formats: CSV and PHYLIP matrices, tab-separated edge lists.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matroid::{GraphicMatroid, Matroid};
use crate::phylo::{DissimilarityMap, PartialDissimilarity};
use crate::rational::{display, parse_rational, Rational};
use crate::weights::WeightVector;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn value(line: usize, text: &str) -> Result<Rational> {
    parse_rational(text.trim()).map_err(|e| parse_err(line, e))
}

fn finish(taxa: Vec<String>, rows: Vec<Vec<Rational>>) -> Result<DissimilarityMap> {
    DissimilarityMap::new(taxa, rows).map_err(|e| match e {
        Error::Input(msg) => parse_err(0, msg),
        other => other,
    })
}

/// CSV matrix: the header row names the taxa after one ignored corner cell,
/// and each following row starts with a taxon name.
pub fn parse_csv(text: &str) -> Result<DissimilarityMap> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| parse_err(e.position().map_or(0, |p| p.line() as usize), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        records.push((line, rec));
    }
    let Some((_, header)) = records.first() else {
        return Err(parse_err(1, "empty input"));
    };
    let taxa: Vec<String> = header.iter().skip(1).map(|s| s.trim().to_string()).collect();
    let n = taxa.len();
    if records.len() != n + 1 {
        return Err(parse_err(records.len(), format!("expected {n} matrix rows, found {}", records.len() - 1)));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, (line, rec)) in records[1..].iter().enumerate() {
        if rec.len() != n + 1 {
            return Err(parse_err(*line, format!("expected {} fields, found {}", n + 1, rec.len())));
        }
        if rec[0].trim() != taxa[i] {
            return Err(parse_err(*line, format!("row {:?} does not match column {:?}", rec[0].trim(), taxa[i])));
        }
        rows.push(rec.iter().skip(1).map(|f| value(*line, f)).collect::<Result<Vec<_>>>()?);
    }
    finish(taxa, rows)
}

/// Square PHYLIP matrix: a taxon count, then one row per taxon. A row's last
/// `n` fields are its values and everything before them is the name, so
/// names may contain spaces.
pub fn parse_phylip(text: &str) -> Result<DissimilarityMap> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (first, head) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = head
        .split_whitespace()
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(first, "expected the taxon count"))?;
    let mut taxa = Vec::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, text) = lines.next().ok_or_else(|| parse_err(first, format!("expected {n} rows")))?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() < n + 1 {
            return Err(parse_err(line, format!("expected a name and {n} values")));
        }
        let split = fields.len() - n;
        taxa.push(fields[..split].join(" "));
        rows.push(fields[split..].iter().map(|f| value(line, f)).collect::<Result<Vec<_>>>()?);
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected trailing content"));
    }
    finish(taxa, rows)
}

/// Tab-separated `u v weight` lines; blank lines and `#` comments are
/// skipped.
pub fn parse_edge_list(text: &str) -> Result<PartialDissimilarity> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(b'\t')
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| parse_err(e.position().map_or(0, |p| p.line() as usize), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        if rec.len() != 3 {
            return Err(parse_err(line, format!("expected 3 tab-separated fields, found {}", rec.len())));
        }
        let (u, v) = (rec[0].trim().to_string(), rec[1].trim().to_string());
        if u == v {
            return Err(parse_err(line, "self-loops are not allowed"));
        }
        edges.push((u, v));
        weights.push(value(line, &rec[2])?);
    }
    if edges.is_empty() {
        return Err(parse_err(1, "no edges"));
    }
    let graph = GraphicMatroid::from_named_edges(&edges)?;
    PartialDissimilarity::new(graph, WeightVector::new(weights))
}

/// CSV matrix in the format read by [`parse_csv`].
pub fn write_csv(delta: &DissimilarityMap, decimal: Option<usize>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    let header: Vec<String> = std::iter::once(String::new()).chain(delta.taxa().iter().cloned()).collect();
    w.write_record(&header).expect("in-memory write");
    for (name, row) in delta.taxa().iter().zip(delta.rows()) {
        let rec: Vec<String> = std::iter::once(name.clone()).chain(row.iter().map(|r| display(r, decimal))).collect();
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 input")
}

/// Edge list in the format read by [`parse_edge_list`].
pub fn write_edge_list(graph: &GraphicMatroid, w: &WeightVector, decimal: Option<usize>) -> String {
    let mut out = String::new();
    for e in 0..graph.size() {
        let (u, v) = graph.endpoints(e);
        let _ = writeln!(out, "{}\t{}\t{}", graph.vertices()[u], graph.vertices()[v], display(&w[e], decimal));
    }
    out
}
