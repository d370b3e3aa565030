//! Toolkit for line transversals of planar convex-body families.
//!
//! The crate decides transversal hypotheses — `T(r)`, tight triples and their
//! colorful variants — and searches for piercing-line certificates: three
//! lines for six colored families in which every cross-colored triple is
//! tight, two lines for four families in which every cross-colored quadruple
//! has a line transversal. The search runs over a simplex parameterization of
//! unit-circle chord configurations and every certificate is re-verified
//! independently of the optimizer that produced it.
//!
//! Start with the runnable examples (`cargo run --example three_lines`) or
//! the `pierce` binary for the file-based command line interface.

pub mod geom;
pub mod io;
pub mod kkm;
pub mod solver;
pub mod transversal;
