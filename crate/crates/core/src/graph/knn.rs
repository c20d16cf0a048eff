//! k-nearest-neighbor graph construction for feature-only datasets.

use super::{Label, TransactionGraph};
use crate::{Error, Result};
use ndarray::Array2;
use rayon::prelude::*;

/// Build a directed graph where every node has exactly `k` out-edges to its
/// `k` nearest neighbors under euclidean distance (self excluded). Distance
/// ties break by ascending node id, so duplicate rows are deterministic.
///
/// `labels` may be empty (all nodes unknown) or one label per row.
pub fn build_knn_graph(
    features: Array2<f32>,
    k: usize,
    labels: Vec<Label>,
) -> Result<TransactionGraph> {
    let n = features.nrows();
    if k == 0 {
        return Err(Error::invalid("k must be >= 1"));
    }
    if k >= n {
        return Err(Error::invalid(format!("k = {k} must be < num_nodes = {n}")));
    }
    let labels = if labels.is_empty() {
        vec![Label::Unknown; n]
    } else if labels.len() == n {
        labels
    } else {
        return Err(Error::Shape(format!(
            "{} labels for {} feature rows",
            labels.len(),
            n
        )));
    };

    // Squared distances via the Gram identity in f64 to keep block results
    // identical across row order: d2(u,v) = |u|^2 + |v|^2 - 2 u.v
    let x64 = features.mapv(|v| v as f64);
    let norms: Vec<f64> = (0..n).map(|i| x64.row(i).dot(&x64.row(i))).collect();

    const BLOCK: usize = 256;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * k);
    let block_results: Vec<Vec<(usize, usize)>> = (0..n)
        .step_by(BLOCK)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|start| {
            let end = (start + BLOCK).min(n);
            let gram = x64.slice(ndarray::s![start..end, ..]).dot(&x64.t());
            let mut local = Vec::with_capacity((end - start) * k);
            let mut dist: Vec<(f64, usize)> = Vec::with_capacity(n - 1);
            for u in start..end {
                dist.clear();
                let grow = gram.row(u - start);
                for v in 0..n {
                    if v == u {
                        continue;
                    }
                    let d2 = (norms[u] + norms[v] - 2.0 * grow[v]).max(0.0);
                    dist.push((d2, v));
                }
                let key = |a: &(f64, usize)| (a.0, a.1);
                dist.select_nth_unstable_by(k - 1, |a, b| key(a).partial_cmp(&key(b)).unwrap());
                let head = &mut dist[..k];
                head.sort_unstable_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
                for &(_, v) in head.iter() {
                    local.push((u, v));
                }
            }
            local
        })
        .collect();
    for block in block_results {
        edges.extend(block);
    }

    TransactionGraph::from_edges(n, &edges, features, labels, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn collinear_points_pick_nearer_endpoint() {
        let f = arr2(&[[0.0f32], [1.0], [3.0]]);
        let g = build_knn_graph(f, 1, vec![]).unwrap();
        // middle point (id 1) is nearer to 0 (dist 1) than to 2 (dist 2)
        assert_eq!(g.out_neighbors(1), &[0]);
        assert_eq!(g.out_neighbors(0), &[1]);
        assert_eq!(g.out_neighbors(2), &[1]);
    }

    #[test]
    fn matches_exhaustive_distance_sort_oracle() {
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        let n = 50;
        let d = 4;
        let k = 5;
        let f = Array2::from_shape_fn((n, d), |_| rng.random_range(-1.0f32..1.0));
        let g = build_knn_graph(f.clone(), k, vec![]).unwrap();
        for u in 0..n {
            // brute force: all pair distances, full sort
            let mut all: Vec<(f64, usize)> = (0..n)
                .filter(|&v| v != u)
                .map(|v| {
                    let mut d2 = 0f64;
                    for j in 0..d {
                        let c = f[[u, j]] as f64 - f[[v, j]] as f64;
                        d2 += c * c;
                    }
                    (d2, v)
                })
                .collect();
            all.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let expected: Vec<usize> = all[..k].iter().map(|&(_, v)| v).collect();
            let mut got = g.out_neighbors(u).to_vec();
            let mut exp_sorted = expected.clone();
            got.sort_unstable();
            exp_sorted.sort_unstable();
            assert_eq!(got, exp_sorted, "node {u}");
        }
    }

    #[test]
    fn out_degree_is_exactly_k() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let f = Array2::from_shape_fn((37, 3), |_| rng.random_range(-1.0f32..1.0));
        let g = build_knn_graph(f, 4, vec![]).unwrap();
        for u in 0..37 {
            assert_eq!(g.out_neighbors(u).len(), 4);
        }
        assert_eq!(g.num_edges(), 37 * 4);
    }

    #[test]
    fn duplicate_rows_tie_break_by_id() {
        let f = arr2(&[[1.0f32], [1.0], [1.0], [5.0]]);
        let g = build_knn_graph(f, 2, vec![]).unwrap();
        // node 3's two nearest are the duplicates; tie broken by id -> 0, 1
        assert_eq!(g.out_neighbors(3), &[0, 1]);
        assert_eq!(g.out_neighbors(2), &[0, 1]);
    }

    #[test]
    fn k_out_of_range_rejected() {
        let f = arr2(&[[0.0f32], [1.0]]);
        assert!(build_knn_graph(f.clone(), 2, vec![]).is_err());
        assert!(build_knn_graph(f, 0, vec![]).is_err());
    }
}
