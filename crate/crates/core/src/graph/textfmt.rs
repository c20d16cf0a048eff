//! Plain-text graph serialization.
//!
//! Layout (whitespace-separated):
//! ```text
//! fedgraph-graph v1
//! <num_nodes> <num_edges> <feature_dim> <has_time: 0|1>
//! <num_nodes> node lines:  <label: illicit|licit|unknown> [<time_step>] <f_0> ... <f_{d-1}>
//! <num_edges> edge lines:  <src> <dst>
//! ```

use super::{Label, TransactionGraph};
use crate::{Error, Result};
use ndarray::Array2;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

const HEADER: &str = "fedgraph-graph v1";

pub fn save_graph_text(graph: &TransactionGraph, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{HEADER}")?;
    let has_time = graph.time_steps().is_some();
    writeln!(
        w,
        "{} {} {} {}",
        graph.num_nodes(),
        graph.num_edges(),
        graph.feature_dim(),
        if has_time { 1 } else { 0 }
    )?;
    let mut line = String::new();
    for v in 0..graph.num_nodes() {
        line.clear();
        let label = match graph.label(v) {
            Label::Illicit => "illicit",
            Label::Licit => "licit",
            Label::Unknown => "unknown",
        };
        line.push_str(label);
        if let Some(steps) = graph.time_steps() {
            let _ = write!(line, " {}", steps[v]);
        }
        for x in graph.features().row(v).iter() {
            // {:e} round-trips f32 exactly enough via Rust's shortest repr
            let _ = write!(line, " {x}");
        }
        writeln!(w, "{line}")?;
    }
    for (u, v) in graph.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn load_graph_text(path: &Path) -> Result<TransactionGraph> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let mut next_line = || -> Result<(usize, String)> {
        loop {
            match lines.next() {
                Some((no, Ok(l))) => {
                    if !l.trim().is_empty() {
                        return Ok((no, l));
                    }
                }
                Some((no, Err(e))) => return Err(Error::parse(no, e.to_string())),
                None => return Err(Error::parse(0, "unexpected end of file")),
            }
        }
    };

    let (no, header) = next_line()?;
    if header.trim() != HEADER {
        return Err(Error::parse(no, format!("bad header {header:?}")));
    }
    let (no, dims) = next_line()?;
    let parts: Vec<&str> = dims.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(Error::parse(no, "expected: num_nodes num_edges dim has_time"));
    }
    let parse_usize = |s: &str, no: usize| -> Result<usize> {
        s.parse().map_err(|_| Error::parse(no, format!("bad count {s:?}")))
    };
    let n = parse_usize(parts[0], no)?;
    let m = parse_usize(parts[1], no)?;
    let d = parse_usize(parts[2], no)?;
    let has_time = parts[3] == "1";

    let mut features = Array2::<f32>::zeros((n, d));
    let mut labels = Vec::with_capacity(n);
    let mut steps = if has_time { Some(Vec::with_capacity(n)) } else { None };
    for v in 0..n {
        let (no, line) = next_line()?;
        let mut fields = line.split_whitespace();
        let label = match fields.next() {
            Some("illicit") => Label::Illicit,
            Some("licit") => Label::Licit,
            Some("unknown") => Label::Unknown,
            other => return Err(Error::parse(no, format!("bad label {other:?}"))),
        };
        labels.push(label);
        if let Some(steps) = steps.as_mut() {
            let t = fields
                .next()
                .ok_or_else(|| Error::parse(no, "missing time step"))?;
            steps.push(
                t.parse()
                    .map_err(|_| Error::parse(no, format!("bad time step {t:?}")))?,
            );
        }
        for j in 0..d {
            let f = fields
                .next()
                .ok_or_else(|| Error::parse(no, format!("missing feature {j}")))?;
            features[[v, j]] = f
                .parse()
                .map_err(|_| Error::parse(no, format!("bad feature {f:?}")))?;
        }
        if fields.next().is_some() {
            return Err(Error::parse(no, "trailing fields on node line"));
        }
    }
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (no, line) = next_line()?;
        let mut fields = line.split_whitespace();
        let u = parse_usize(fields.next().unwrap_or(""), no)?;
        let v = parse_usize(
            fields.next().ok_or_else(|| Error::parse(no, "missing dst"))?,
            no,
        )?;
        edges.push((u, v));
    }
    TransactionGraph::from_edges(n, &edges, features, labels, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_synthetic, SyntheticSpec};

    #[test]
    fn round_trip_preserves_graph() {
        let sg = generate_synthetic(&SyntheticSpec {
            num_communities: 2,
            nodes_per_community: 20,
            ..Default::default()
        })
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        save_graph_text(&sg.graph, &path).unwrap();
        let loaded = load_graph_text(&path).unwrap();
        assert_eq!(loaded.num_nodes(), sg.graph.num_nodes());
        assert_eq!(loaded.num_edges(), sg.graph.num_edges());
        assert_eq!(loaded.labels(), sg.graph.labels());
        assert_eq!(loaded.features(), sg.graph.features());
        let a: Vec<_> = loaded.edges().collect();
        let b: Vec<_> = sg.graph.edges().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn truncated_file_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        std::fs::write(&path, "fedgraph-graph v1\n2 1 1 0\nlicit 0.5\n").unwrap();
        assert!(load_graph_text(&path).is_err());
    }
}
