//! Graph data model and dataset ingestion.
//!
//! A [`TransactionGraph`] is a directed graph in compressed sparse row form
//! (with both out- and in-neighbor access), per-node feature vectors, a
//! tri-state label per node, and optional time steps. Graphs are immutable
//! after construction and safe to share across threads.

mod elliptic;
mod knn;
mod split;
mod synthetic;
mod textfmt;

pub use elliptic::{load_elliptic, EllipticPaths};
pub use knn::build_knn_graph;
pub use split::{make_split, NodeMask, Role, SplitRule};
pub use synthetic::{generate_synthetic, SyntheticGraph, SyntheticSpec};
pub use textfmt::{load_graph_text, save_graph_text};

use crate::{Error, Result};
use ndarray::Array2;

/// Tri-state node label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Illicit,
    Licit,
    Unknown,
}

impl Label {
    pub fn is_known(self) -> bool {
        !matches!(self, Label::Unknown)
    }

    /// Class index for the classifier head: 0 = licit, 1 = illicit.
    pub fn class_index(self) -> Option<usize> {
        match self {
            Label::Licit => Some(0),
            Label::Illicit => Some(1),
            Label::Unknown => None,
        }
    }
}

/// Compressed sparse row adjacency. Preserves edge multiplicity; neighbor
/// lists are sorted ascending within each row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    /// Build from `(src, dst)` pairs; `select` picks which endpoint indexes
    /// the rows (out-CSR keys on src, in-CSR keys on dst).
    fn from_pairs(num_nodes: usize, edges: &[(usize, usize)], rows_on_src: bool) -> Csr {
        let mut degrees = vec![0usize; num_nodes];
        for &(u, v) in edges {
            degrees[if rows_on_src { u } else { v }] += 1;
        }
        let mut offsets = Vec::with_capacity(num_nodes + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &degrees {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets[..num_nodes].to_vec();
        let mut targets = vec![0usize; edges.len()];
        for &(u, v) in edges {
            let (row, col) = if rows_on_src { (u, v) } else { (v, u) };
            targets[cursor[row]] = col;
            cursor[row] += 1;
        }
        for row in 0..num_nodes {
            targets[offsets[row]..offsets[row + 1]].sort_unstable();
        }
        Csr { offsets, targets }
    }

    pub fn num_rows(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_entries(&self) -> usize {
        self.targets.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }
}

/// Directed transaction graph with node features and labels.
#[derive(Debug, Clone)]
pub struct TransactionGraph {
    num_nodes: usize,
    out_csr: Csr,
    in_csr: Csr,
    features: Array2<f32>,
    labels: Vec<Label>,
    time_steps: Option<Vec<u32>>,
}

impl TransactionGraph {
    /// Validates endpoints and shape invariants, then builds both CSRs.
    pub fn from_edges(
        num_nodes: usize,
        edges: &[(usize, usize)],
        features: Array2<f32>,
        labels: Vec<Label>,
        time_steps: Option<Vec<u32>>,
    ) -> Result<Self> {
        if features.nrows() != num_nodes {
            return Err(Error::Shape(format!(
                "feature matrix has {} rows for {} nodes",
                features.nrows(),
                num_nodes
            )));
        }
        if labels.len() != num_nodes {
            return Err(Error::Shape(format!(
                "{} labels for {} nodes",
                labels.len(),
                num_nodes
            )));
        }
        if let Some(ts) = &time_steps {
            if ts.len() != num_nodes {
                return Err(Error::Shape(format!(
                    "{} time steps for {} nodes",
                    ts.len(),
                    num_nodes
                )));
            }
        }
        for &(u, v) in edges {
            if u >= num_nodes || v >= num_nodes {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) references a node >= {num_nodes}"
                )));
            }
        }
        Ok(TransactionGraph {
            num_nodes,
            out_csr: Csr::from_pairs(num_nodes, edges, true),
            in_csr: Csr::from_pairs(num_nodes, edges, false),
            features,
            labels,
            time_steps,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.out_csr.num_entries()
    }

    pub fn feature_dim(&self) -> usize {
        self.features.ncols()
    }

    pub fn features(&self) -> &Array2<f32> {
        &self.features
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> Label {
        self.labels[node]
    }

    pub fn time_steps(&self) -> Option<&[u32]> {
        self.time_steps.as_deref()
    }

    pub fn out_neighbors(&self, node: usize) -> &[usize] {
        self.out_csr.neighbors(node)
    }

    pub fn in_neighbors(&self, node: usize) -> &[usize] {
        self.in_csr.neighbors(node)
    }

    pub fn out_csr(&self) -> &Csr {
        &self.out_csr
    }

    pub fn in_csr(&self) -> &Csr {
        &self.in_csr
    }

    /// Directed edge list reconstructed from the out-CSR. Equal as a multiset
    /// to the edges the graph was built from.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_nodes)
            .flat_map(move |u| self.out_csr.neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Deduplicated undirected neighbor lists (union of in- and out-neighbors,
    /// self-loops removed). This is the aggregation structure GraphSAGE uses.
    pub fn undirected_neighbors(&self) -> Csr {
        let mut offsets = Vec::with_capacity(self.num_nodes + 1);
        let mut targets = Vec::with_capacity(self.out_csr.num_entries() * 2);
        offsets.push(0);
        let mut merged: Vec<usize> = Vec::new();
        for v in 0..self.num_nodes {
            merged.clear();
            merged.extend_from_slice(self.out_csr.neighbors(v));
            merged.extend_from_slice(self.in_csr.neighbors(v));
            merged.sort_unstable();
            merged.dedup();
            merged.retain(|&u| u != v);
            targets.extend_from_slice(&merged);
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    pub fn count_labels(&self) -> LabelCounts {
        let mut counts = LabelCounts::default();
        for l in &self.labels {
            match l {
                Label::Illicit => counts.illicit += 1,
                Label::Licit => counts.licit += 1,
                Label::Unknown => counts.unknown += 1,
            }
        }
        counts
    }
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct LabelCounts {
    pub illicit: usize,
    pub licit: usize,
    pub unknown: usize,
}

/// Z-score each feature column using statistics of the given (training) rows.
/// Columns that are constant on the training rows are centered only.
pub fn zscore_normalize(features: &Array2<f32>, train_rows: &[usize]) -> Array2<f32> {
    let d = features.ncols();
    let n_train = train_rows.len().max(1) as f64;
    let mut mean = vec![0f64; d];
    let mut var = vec![0f64; d];
    for &r in train_rows {
        let row = features.row(r);
        for (j, &x) in row.iter().enumerate() {
            mean[j] += x as f64;
        }
    }
    for m in &mut mean {
        *m /= n_train;
    }
    for &r in train_rows {
        let row = features.row(r);
        for (j, &x) in row.iter().enumerate() {
            let c = x as f64 - mean[j];
            var[j] += c * c;
        }
    }
    let std: Vec<f64> = var
        .iter()
        .map(|v| {
            let s = (v / n_train).sqrt();
            if s > 1e-12 {
                s
            } else {
                1.0
            }
        })
        .collect();
    let mut out = features.clone();
    for mut row in out.rows_mut() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = ((*x as f64 - mean[j]) / std[j]) as f32;
        }
    }
    out
}
