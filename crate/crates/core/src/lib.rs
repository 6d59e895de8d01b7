//! Exact computation of the fan of semistable torsion classes attached to a
//! finite-dimensional module over a bound quiver algebra.
//!
//! The pipeline is: enumerate the submodules of a module `M`
//! ([`sublattice`]), take the convex hull of their dimension vectors
//! ([`polyhedra`]), and form the normal fan of that polytope. Every cone of
//! the fan is decorated with the torsion data of `M` at stability vectors in
//! its relative interior ([`stability`], [`mtf`]). The [`oracle`] module
//! re-derives everything from definitions at sampled stability vectors.

pub mod error;
pub mod field;
pub mod input;
pub mod mtf;
pub mod oracle;
pub mod output;
pub mod polyhedra;
pub mod presets;
pub mod quiver;
pub mod report;
pub mod stability;
pub mod sublattice;
pub mod svg;

pub use error::{Error, Result};
pub use quiver::{BoundQuiverAlgebra, DimVector, Module, Submodule};
