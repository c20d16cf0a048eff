//! Federated graph learning over partitioned transaction graphs.
//!
//! The crate simulates a federation of institutions ("silos"), each holding a
//! private subgraph of a global transaction network. Silos jointly train a
//! GraphSAGE node classifier by exchanging model parameters (FedAvg) and
//! encrypted boundary-node embeddings through an aggregation server that can
//! route but never read them. The embedding tunnel is a hybrid
//! ML-KEM-512 + AES-256-GCM construction.
//!
//! Module map:
//! - [`graph`]: graph data model, dataset ingestion, splits
//! - [`partition`]: Louvain and edge-cut silo partitioning, boundary sets
//! - [`gnn`]: from-scratch GraphSAGE forward/backward, losses, Adam
//! - [`crypto`]: KEM-DEM envelope encryption and overhead accounting
//! - [`protocol`]: the federated round loop, baselines, metrics
//! - [`audit`]: embedding-inversion and membership-inference attacks

pub mod audit;
pub mod crypto;
pub mod error;
pub mod gnn;
pub mod graph;
pub mod partition;
pub mod protocol;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
