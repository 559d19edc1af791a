//! Exact counting and Ehrhart analysis of magic edge-labelings of graphs.
//!
//! A labeling of the edges of `G` by nonnegative integers is *magic* when
//! every vertex sees the same label sum, its *index*. This crate counts magic
//! labelings by maximum label (the lattice points of the dilates `k P_G`) and
//! by index (`k Q_G`), enumerates the vertices of both polytopes in exact
//! rational arithmetic, fits and analyzes the resulting Ehrhart
//! quasipolynomials, and checks the structure of the associated semigroups.
//!
//! Modules:
//!
//! - [`graph`]: graphs, the `G_n` and `G_{n,p}` families, matchings and the
//!   structural predicates behind small-quasiperiod certificates.
//! - [`labeling`]: labelings, magic checks, enumeration and counting.
//! - [`geometry`]: exact linear algebra and vertex enumeration of `P_G`/`Q_G`.
//! - [`quasipoly`]: quasipolynomials, finite differences, fitting and minimum
//!   quasiperiods.
//! - [`semigroup`]: completely fundamental elements, decompositions and
//!   certificates.
//! - [`io`]: JSON formats.
//! - [`verify`]: named checks reproducing the reference results.

pub mod budget;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod labeling;
pub mod quasipoly;
pub mod semigroup;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use geometry::{PolytopeKind, Rational, RationalPoint};
pub use graph::Graph;
pub use labeling::Labeling;
pub use quasipoly::Quasipolynomial;
pub use semigroup::SemigroupElement;
