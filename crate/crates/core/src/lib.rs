//! Explicit hypergraphs of large chromatic number, their realization by
//! points and axis-parallel rectangles, and their translation into
//! arithmetic progressions with prescribed differences.

pub mod arithmetic;
pub mod construction;
pub mod error;
pub mod geometry;
pub mod hypergraph;
pub mod selftest;

pub use error::{Error, Result};
