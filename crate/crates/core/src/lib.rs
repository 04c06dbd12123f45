//! Exact convex orders on positive roots, Kostant partitions, and
//! representations of Dynkin quivers over exact fields, together with
//! brute-force checks relating the combinatorial orders to orbit closures,
//! point counts of flag fibers, and reflection functors.

pub mod cli;
pub mod convex_order;
pub mod error;
pub mod field;
pub mod flag_fibers;
pub mod kostant;
pub mod linalg;
pub mod orders_geometry;
pub mod pbw_braid;
pub mod quiver_rep;
pub mod quiver_words;
pub mod root_system;

pub use error::{Error, Result};
