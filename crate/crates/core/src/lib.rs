//! Finite homomorphism dualities for relational structures.
//!
//! Structures, homomorphism search and cores, sums/products/exponentials,
//! tree duals and finite duality sets, maximal antichains in the
//! homomorphism order, and finite Heyting-lattice utilities.

#![cfg_attr(not(test), no_std)]
// index loops read better over the adjacency and order matrices
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

extern crate alloc;

pub mod algebra;
pub mod canon;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod heyting;
pub mod hom;
pub mod order;
pub mod structure;
pub mod trees;

pub use error::{Error, Result};
pub use structure::{Signature, Structure, Tuple, VertexPartition};
