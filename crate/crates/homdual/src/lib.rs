//! File formats, duality directories, and the command-line front end for
//! `homdual-core`.

pub mod cli;
pub mod dimacs;
pub mod error;
pub mod lattice_io;
pub mod manifest;
pub mod text;

pub use error::{Error, Result};
pub use text::{parse_structure, parse_structures, serialize_structure, Named};
