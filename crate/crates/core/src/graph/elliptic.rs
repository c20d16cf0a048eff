//! Loader for the public Elliptic dataset layout.
//!
//! Three CSV files: `elliptic_txs_features.csv` (txId, time step, feature
//! columns), `elliptic_txs_classes.csv` (txId, class in {1, 2, unknown}),
//! `elliptic_txs_edgelist.csv` (txId1, txId2). Header rows are auto-detected
//! by a non-numeric first field. The txId and time-step columns are dropped
//! from the learned feature matrix; time steps are kept separately for
//! temporal splits.

use super::{Label, TransactionGraph};
use crate::{Error, Result};
use ndarray::Array2;
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

/// Standard file names of the public distribution under one directory.
#[derive(Debug, Clone)]
pub struct EllipticPaths {
    pub features: PathBuf,
    pub classes: PathBuf,
    pub edgelist: PathBuf,
}

impl EllipticPaths {
    pub fn in_dir(dir: &Path) -> Self {
        EllipticPaths {
            features: dir.join("elliptic_txs_features.csv"),
            classes: dir.join("elliptic_txs_classes.csv"),
            edgelist: dir.join("elliptic_txs_edgelist.csv"),
        }
    }

    pub fn all_exist(&self) -> bool {
        self.features.is_file() && self.classes.is_file() && self.edgelist.is_file()
    }
}

fn open_lines(path: &Path) -> Result<impl Iterator<Item = (usize, std::io::Result<String>)>> {
    let file = File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    Ok(BufReader::new(file)
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l)))
}

fn is_header(first_field: &str) -> bool {
    first_field.trim().parse::<f64>().is_err()
}

pub fn load_elliptic(paths: &EllipticPaths) -> Result<TransactionGraph> {
    // Pass 1: features file fixes node order and width.
    let mut tx_index: HashMap<u64, usize> = HashMap::new();
    let mut raw_features: Vec<f32> = Vec::new();
    let mut time_steps: Vec<u32> = Vec::new();
    let mut width: Option<usize> = None;

    for (line_no, line) in open_lines(&paths.features)? {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let first = fields.next().unwrap_or("");
        if line_no == 1 && is_header(first) {
            continue;
        }
        let tx_id: u64 = first
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad txId {first:?} in features file")))?;
        let time: f64 = fields
            .next()
            .ok_or_else(|| Error::parse(line_no, "missing time-step column"))?
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, "bad time-step value"))?;
        let node = tx_index.len();
        if tx_index.insert(tx_id, node).is_some() {
            return Err(Error::parse(line_no, format!("duplicate txId {tx_id}")));
        }
        time_steps.push(time as u32);
        let before = raw_features.len();
        for field in fields {
            let x: f32 = field.trim().parse().map_err(|_| {
                Error::parse(line_no, format!("bad feature value {:?}", field.trim()))
            })?;
            raw_features.push(x);
        }
        let row_width = raw_features.len() - before;
        match width {
            None => width = Some(row_width),
            Some(w) if w != row_width => {
                return Err(Error::parse(
                    line_no,
                    format!("row has {row_width} feature columns, expected {w}"),
                ))
            }
            _ => {}
        }
    }
    let num_nodes = tx_index.len();
    let width = width.unwrap_or(0);
    if num_nodes == 0 {
        return Err(Error::invalid("features file contains no rows"));
    }

    // Pass 2: classes.
    let mut labels = vec![Label::Unknown; num_nodes];
    for (line_no, line) in open_lines(&paths.classes)? {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let first = fields.next().unwrap_or("");
        if line_no == 1 && is_header(first) {
            continue;
        }
        let tx_id: u64 = first
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad txId {first:?} in classes file")))?;
        let class = fields
            .next()
            .ok_or_else(|| Error::parse(line_no, "missing class column"))?
            .trim();
        let node = *tx_index.get(&tx_id).ok_or_else(|| {
            Error::Integrity(format!(
                "classes line {line_no}: txId {tx_id} absent from features file"
            ))
        })?;
        labels[node] = match class {
            "1" => Label::Illicit,
            "2" => Label::Licit,
            "unknown" => Label::Unknown,
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unrecognized class {other:?}"),
                ))
            }
        };
    }

    // Pass 3: edge list.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (line_no, line) in open_lines(&paths.edgelist)? {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let first = fields.next().unwrap_or("");
        if line_no == 1 && is_header(first) {
            continue;
        }
        let src: u64 = first
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad txId {first:?} in edgelist")))?;
        let dst: u64 = fields
            .next()
            .ok_or_else(|| Error::parse(line_no, "missing second txId"))?
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, "bad txId in edgelist"))?;
        let u = *tx_index.get(&src).ok_or_else(|| {
            Error::Integrity(format!(
                "edgelist line {line_no}: txId {src} absent from features file"
            ))
        })?;
        let v = *tx_index.get(&dst).ok_or_else(|| {
            Error::Integrity(format!(
                "edgelist line {line_no}: txId {dst} absent from features file"
            ))
        })?;
        edges.push((u, v));
    }

    let features = Array2::from_shape_vec((num_nodes, width), raw_features)
        .map_err(|e| Error::Shape(e.to_string()))?;
    TransactionGraph::from_edges(num_nodes, &edges, features, labels, Some(time_steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_file(dir: &Path, name: &str, content: &str) -> PathBuf {
        let path = dir.join(name);
        let mut f = File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        path
    }

    /// Five-node fixture. The expected counts below are derived from the
    /// literal text by `manifest_counts`, which only counts lines and matches
    /// class strings, independent of the loader.
    const FEATURES: &str = "\
10,1,0.5,1.0\n\
11,1,-0.5,0.0\n\
12,2,0.25,2.0\n\
13,2,1.5,-1.0\n\
14,3,0.0,0.125\n";
    const CLASSES: &str = "\
txId,class\n\
10,1\n\
11,2\n\
12,unknown\n\
13,2\n\
14,1\n";
    const EDGES: &str = "\
txId1,txId2\n\
10,11\n\
11,12\n\
12,13\n\
13,14\n\
10,14\n\
14,10\n";

    fn manifest_counts(
        features: &str,
        classes: &str,
        edges: &str,
    ) -> (usize, usize, usize, usize, usize) {
        let nodes = features.lines().filter(|l| !l.trim().is_empty()).count();
        let data_rows = |text: &str| {
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .filter(|l| {
                    l.split(',')
                        .next()
                        .map(|f| f.parse::<f64>().is_ok())
                        .unwrap_or(false)
                })
                .count()
        };
        let edge_count = data_rows(edges);
        let illicit = classes
            .lines()
            .filter(|l| l.split(',').nth(1).map(str::trim) == Some("1"))
            .count();
        let licit = classes
            .lines()
            .filter(|l| l.split(',').nth(1).map(str::trim) == Some("2"))
            .count();
        let unknown = nodes - illicit - licit;
        (nodes, edge_count, illicit, licit, unknown)
    }

    fn fixture(dir: &Path) -> EllipticPaths {
        EllipticPaths {
            features: write_file(dir, "elliptic_txs_features.csv", FEATURES),
            classes: write_file(dir, "elliptic_txs_classes.csv", CLASSES),
            edgelist: write_file(dir, "elliptic_txs_edgelist.csv", EDGES),
        }
    }

    #[test]
    fn fixture_counts_match_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let paths = fixture(dir.path());
        let g = load_elliptic(&paths).unwrap();
        let (nodes, edges, illicit, licit, unknown) = manifest_counts(FEATURES, CLASSES, EDGES);
        assert_eq!(g.num_nodes(), nodes);
        assert_eq!(g.num_edges(), edges);
        let counts = g.count_labels();
        assert_eq!(counts.illicit, illicit);
        assert_eq!(counts.licit, licit);
        assert_eq!(counts.unknown, unknown);
        // txId and time step are dropped from the learned features
        assert_eq!(g.feature_dim(), 2);
        assert_eq!(g.time_steps().unwrap(), &[1, 1, 2, 2, 3]);
        assert_eq!(g.features()[[0, 0]], 0.5);
    }

    #[test]
    fn single_node_empty_edgelist() {
        let dir = tempfile::tempdir().unwrap();
        let paths = EllipticPaths {
            features: write_file(dir.path(), "f.csv", "42,1,0.0\n"),
            classes: write_file(dir.path(), "c.csv", "42,unknown\n"),
            edgelist: write_file(dir.path(), "e.csv", ""),
        };
        let g = load_elliptic(&paths).unwrap();
        assert_eq!(g.num_nodes(), 1);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn malformed_row_reports_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let paths = EllipticPaths {
            features: write_file(dir.path(), "f.csv", "42,1,0.0\n43,1,oops\n"),
            classes: write_file(dir.path(), "c.csv", ""),
            edgelist: write_file(dir.path(), "e.csv", ""),
        };
        match load_elliptic(&paths) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn edge_to_unknown_tx_is_integrity_error() {
        let dir = tempfile::tempdir().unwrap();
        let paths = EllipticPaths {
            features: write_file(dir.path(), "f.csv", "42,1,0.0\n"),
            classes: write_file(dir.path(), "c.csv", "42,1\n"),
            edgelist: write_file(dir.path(), "e.csv", "42,99\n"),
        };
        match load_elliptic(&paths) {
            Err(Error::Integrity(msg)) => assert!(msg.contains("99")),
            other => panic!("expected integrity error, got {other:?}"),
        }
    }
}
