//! Symmetry analysis of finite simple connected graphs: distance levels and
//! intersection numbers, permutation groups, automorphism search, stabilizer
//! orbit designs and checks for cubic and tetravalent graphs.

pub mod autsearch;
pub mod combinatorics;
pub mod corpus;
pub mod design;
pub mod error;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod oracle;
pub mod perm;
pub mod report;

pub use error::{Error, Result};
pub use graph::Graph;
pub use perm::{GeneratedGroup, OrbitPartition, Permutation};
