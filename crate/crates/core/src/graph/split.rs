//! Train/test masking. Unknown-label nodes are always excluded.

use super::{Label, TransactionGraph};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Train,
    Test,
    Excluded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SplitRule {
    /// Train on time steps `<= last_train_step`, test on later steps.
    Temporal { last_train_step: u32 },
    /// Seeded shuffle of labeled nodes, first `train_fraction` to train.
    Random { train_fraction: f64, seed: u64 },
}

impl SplitRule {
    /// The temporal split standard for Elliptic: train steps 1-34, test 35-49.
    pub fn elliptic_default() -> Self {
        SplitRule::Temporal {
            last_train_step: 34,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SplitRule::Temporal { last_train_step } => {
                format!("temporal-split(last_train_step={last_train_step})")
            }
            SplitRule::Random {
                train_fraction,
                seed,
            } => format!("random-split(train_fraction={train_fraction},seed={seed})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NodeMask {
    roles: Vec<Role>,
    derivation: String,
}

impl NodeMask {
    pub fn role(&self, node: usize) -> Role {
        self.roles[node]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn derivation(&self) -> &str {
        &self.derivation
    }

    pub fn train_nodes(&self) -> Vec<usize> {
        self.nodes_with(Role::Train)
    }

    pub fn test_nodes(&self) -> Vec<usize> {
        self.nodes_with(Role::Test)
    }

    fn nodes_with(&self, role: Role) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == role)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn make_split(graph: &TransactionGraph, rule: &SplitRule) -> Result<NodeMask> {
    let labeled: Vec<usize> = (0..graph.num_nodes())
        .filter(|&v| graph.label(v).is_known())
        .collect();
    if labeled.is_empty() {
        return Err(Error::invalid("graph has no labeled nodes to split"));
    }
    let mut roles = vec![Role::Excluded; graph.num_nodes()];
    match rule {
        SplitRule::Temporal { last_train_step } => {
            let steps = graph
                .time_steps()
                .ok_or_else(|| Error::invalid("temporal split requires time steps"))?;
            for &v in &labeled {
                roles[v] = if steps[v] <= *last_train_step {
                    Role::Train
                } else {
                    Role::Test
                };
            }
        }
        SplitRule::Random {
            train_fraction,
            seed,
        } => {
            if !(0.0..=1.0).contains(train_fraction) {
                return Err(Error::invalid("train_fraction must be in [0, 1]"));
            }
            let mut order = labeled.clone();
            let mut rng = ChaCha20Rng::seed_from_u64(*seed);
            for i in (1..order.len()).rev() {
                let j = rng.random_range(0..=i);
                order.swap(i, j);
            }
            let cut = (train_fraction * order.len() as f64).round() as usize;
            for (i, &v) in order.iter().enumerate() {
                roles[v] = if i < cut { Role::Train } else { Role::Test };
            }
        }
    }
    Ok(NodeMask {
        roles,
        derivation: rule.describe(),
    })
}
