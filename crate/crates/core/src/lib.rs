//! Multidimensional integer partitions as Young-diagram point measures, and
//! exact discrete optimal transport between a partition and its
//! σ-symmetric partition.
//!
//! ```
//! use partition_transport::{partitions::MultiPartition, transport::{wasserstein, CostKind}};
//!
//! let p = MultiPartition::from_parts(&[4, 2]).unwrap();
//! let q = p.symmetrize(&"2 1".parse().unwrap()).unwrap();
//! assert_eq!(q.to_string(), "(2,2,1,1)");
//! let w = wasserstein(&p, &q, CostKind::SquaredEuclidean).unwrap();
//! assert_eq!((*w.numer(), *w.denom()), (7, 3));
//! ```

pub mod error;
pub mod measures;
pub mod partitions;
pub mod rational;
pub mod theorems;
pub mod transport;

pub use error::{Error, Result};
