//! quasilab: a computational laboratory for aperiodic order.
//!
//! The crate bundles exact and high-precision tooling for the standard
//! objects of the field: Sturmian words and their pattern complexity,
//! Pisot substitutions and their tile lengths, one-dimensional
//! quasiperiodic Schrodinger operators and their band spectra, circle
//! and torus gap structure, cut-and-project point sets, pinwheel and
//! Penrose triangle tilings with exact coordinates, diffraction sums,
//! and discrepancy growth probes.
//!
//! Every capability is demonstrated by a runnable example under
//! `examples/` and exposed through the thin `quasilab` command-line
//! binary; see the README for the tour.

pub mod app;
pub mod cutproject;
pub mod diffraction;
pub mod discrepancy;
pub mod error;
pub mod gaps;
pub mod graph_spectrum;
pub mod io;
pub mod numerics;
pub mod patches;
pub mod schrodinger;
pub mod substitution;
pub mod tilings;
pub mod words;

pub use error::{Error, Result};
