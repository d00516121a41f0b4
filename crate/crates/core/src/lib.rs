//! Exact invariant bookkeeping for smooth Fano 4-folds obtained from `P^4`
//! by towers of point blow-ups, surface blow-ups and exceptional-line flips.
//!
//! Every number in this crate is an exact integer or rational. The layers are:
//!
//! - [`chow`]: divisor classes and the quartic intersection form on `P^4`
//!   blown up at points, plus anticanonical degrees of curves.
//! - [`surfaces`]: intersection lattices of the blown-up surfaces and the
//!   numbers the surface blow-up formulas consume.
//! - [`invariants`]: the 4-fold invariant record and its transforms.
//! - [`families`]: the concrete constructions, their tables and certificates.
//! - [`threefolds`]: degree bounds for the 3-fold bases.
//! - [`config`] and [`cli`]: the tower file format and the command line.

pub mod chow;
pub mod cli;
pub mod config;
pub mod families;
pub mod invariants;
pub mod surfaces;
pub mod tables;
pub mod threefolds;

/// Exact rational number used throughout the crate.
pub type Rational = num_rational::Rational64;

pub use chow::{Basis, DivisorClass, RingModel};
pub use invariants::FourfoldRecord;
pub use surfaces::{SurfaceData, SurfaceModel};
