//! Origami construction engine for the regular hendecagon.
//!
//! The crate is organised bottom-up:
//!
//! * [`geom`]: points, lines, reflections and incidence checks, in exact
//!   rational or `f64` arithmetic.
//! * [`poly`]: univariate polynomials and rational functions over the
//!   rationals, with Sturm-certified real root isolation.
//! * [`cyclotomic`]: the polynomial satisfied by `2cos(2πk/n)` and the
//!   single-fold constructibility classifier for regular polygons.
//! * [`fold`]: the seven single-fold alignment solvers and the
//!   two-simultaneous-fold operation that solves the hendecagon quintic.
//! * [`construction`]: a declarative fold-script engine and the built-in
//!   hendecagon folding sequence.
//! * [`script`]: the versioned text format for fold scripts and two-fold
//!   configurations.

pub mod construction;
pub mod cyclotomic;
pub mod fold;
pub mod geom;
pub mod poly;
pub mod script;

pub use num_rational::BigRational as Rational;
