//! Exact k-matching counts and Hosoya indices for graphs assembled by
//! repeated amalgamation over two-vertex sets.
//!
//! A graph is described as a [`Chain`]: a small base graph with a
//! distinguished pair, followed by blocks that each glue new material onto
//! the current pair. [`Chain::evaluate`] pushes the base k-matching vector
//! through one [`TransferMatrix`] per block; [`oracle`] provides the
//! independent direct computation used to check it.
//!
//! All counting code is generic over the coefficient type ([`Count`]); the
//! aliases below fix it to arbitrary-precision unsigned integers.
//!
//! ```
//! use matchflow::{BigUint, Fixture};
//!
//! let chain = Fixture::Sporadic912.chain();
//! let z: BigUint = chain.hosoya().unwrap();
//! assert_eq!(z, BigUint::from(912u32));
//! ```

pub mod chain;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod scalar;
pub mod series;
pub mod transfer;

pub use chain::{Block, Chain, ChainFile, Diagnostic, DiagnosticKind, Severity, Strictness};
pub use error::{Error, Result};
pub use generators::{BasicKind, ChainSpec, Fixture};
pub use graph::{Graph, GraphFragment, NeighborPartition};
pub use num_bigint::BigUint;
pub use scalar::Count;
pub use series::CoeffSeries;
pub use transfer::{AttachProfile, KVector, OutCase, Pair, TransferMatrix};

/// Coefficient series over arbitrary-precision integers.
pub type Series = CoeffSeries<BigUint>;
/// k-matching vector over arbitrary-precision integers.
pub type MatchVector = KVector<BigUint>;
/// Transfer matrix over arbitrary-precision integers.
pub type Transfer = TransferMatrix<BigUint>;
