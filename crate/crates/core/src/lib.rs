//! Exact counts of morphisms `P¹ → X` of fixed multidegree for smooth projective
//! split toric varieties, their classes as polynomials in `L`, degree zeta
//! functions, Möbius functions and Euler-product constants, each cross-checked
//! against brute-force enumeration over small prime fields.
//!
//! The `cox3` module carries out the same programme for the blow-up of `P²`
//! at three collinear points, whose Cox ring is a quadric hypersurface.

pub mod census;
pub mod cox3;
pub mod error;
pub mod fq;
pub mod lattice;
pub mod lpoly;
pub mod moebius;
pub mod motivic;
pub mod numtheory;
pub mod toric;

pub use error::{Error, Result};
pub use lpoly::{LPoly, RatFuncL, TailSeries, VirtualDim};

/// Hard cap on brute-force tuple visits.
pub const SEARCH_BUDGET: u128 = 100_000_000;
