//! Stochastic-block-model test graphs with planted communities and labels.

use super::{Label, TransactionGraph};
use crate::{Error, Result};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone)]
pub struct SyntheticSpec {
    pub num_communities: usize,
    pub nodes_per_community: usize,
    pub p_intra: f64,
    pub p_inter: f64,
    pub feature_dim: usize,
    pub illicit_fraction: f64,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            num_communities: 3,
            nodes_per_community: 100,
            p_intra: 0.1,
            p_inter: 0.005,
            feature_dim: 8,
            illicit_fraction: 0.1,
            seed: 42,
        }
    }
}

/// A generated graph plus its planted ground truth.
#[derive(Debug, Clone)]
pub struct SyntheticGraph {
    pub graph: TransactionGraph,
    /// Planted community of each node.
    pub communities: Vec<usize>,
}

/// Directed stochastic block model. Illicit labels are planted inside a
/// designated prefix of communities and shift the first half of the feature
/// vector, so classes are learnable from features alone. Deterministic per
/// seed.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<SyntheticGraph> {
    if spec.num_communities == 0 || spec.nodes_per_community == 0 {
        return Err(Error::invalid("empty community layout"));
    }
    if !(0.0..=1.0).contains(&spec.p_intra) || !(0.0..=1.0).contains(&spec.p_inter) {
        return Err(Error::invalid("edge probabilities must be in [0, 1]"));
    }
    if spec.p_inter >= spec.p_intra && spec.p_inter > 0.0 {
        return Err(Error::invalid("require p_inter < p_intra"));
    }
    if !(0.0..=1.0).contains(&spec.illicit_fraction) {
        return Err(Error::invalid("illicit_fraction must be in [0, 1]"));
    }
    let c = spec.num_communities;
    let m = spec.nodes_per_community;
    let n = c * m;
    let communities: Vec<usize> = (0..n).map(|v| v / m).collect();
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);

    // Edges: one Bernoulli(p) block per ordered community pair, sampled by
    // geometric index skipping so sparse blocks cost O(edges), not O(pairs).
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for ca in 0..c {
        for cb in 0..c {
            let p = if ca == cb { spec.p_intra } else { spec.p_inter };
            if p <= 0.0 {
                continue;
            }
            let block = (m * m) as u64;
            let mut idx = 0u64;
            // skip-sample indices into the m*m block
            loop {
                let u: f64 = rng.random::<f64>();
                let skip = if p >= 1.0 {
                    0
                } else {
                    ((1.0 - u).ln() / (1.0 - p).ln()).floor() as u64
                };
                idx = idx.saturating_add(skip);
                if idx >= block {
                    break;
                }
                let src = ca * m + (idx / m as u64) as usize;
                let dst = cb * m + (idx % m as u64) as usize;
                if src != dst {
                    edges.push((src, dst));
                }
                idx += 1;
            }
        }
    }

    // Labels: plant `target` illicit nodes in a prefix of communities sized
    // so designated communities stay at most half illicit.
    let target = (spec.illicit_fraction * n as f64).round() as usize;
    let mut labels = vec![Label::Licit; n];
    if target > 0 {
        let designated = ((2 * target + m - 1) / m).clamp(1, c);
        let capacity = designated * m;
        let take = target.min(capacity);
        let mut pool: Vec<usize> = (0..capacity).collect();
        for i in 0..take {
            let j = rng.random_range(i..pool.len());
            pool.swap(i, j);
        }
        for &v in &pool[..take] {
            labels[v] = Label::Illicit;
        }
    }

    // Features: standard normal, a small community offset on one coordinate,
    // and a class shift on the first half of the dimensions.
    let d = spec.feature_dim;
    let normal = StandardNormal;
    let mut features = Array2::<f32>::zeros((n, d));
    for v in 0..n {
        for j in 0..d {
            let noise: f64 = normal.sample(&mut rng);
            let mut x = noise;
            if j == communities[v] % d {
                x += 0.75;
            }
            if labels[v] == Label::Illicit && j < d.div_ceil(2) {
                x += 2.0;
            }
            features[[v, j]] = x as f32;
        }
    }

    let graph = TransactionGraph::from_edges(n, &edges, features, labels, None)?;
    Ok(SyntheticGraph { graph, communities })
}
