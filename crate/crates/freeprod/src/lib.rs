//! Free product density model of random group quotients.
//!
//! The crate covers normal-form arithmetic in free products of factor groups,
//! exact counting and sampling of cyclically reduced relators, abstract
//! diagrams with their cancellation functionals, finite model complexes,
//! hypergraphs with wallspaces, and the dual cube complex of a finite
//! wallspace.

pub mod complex;
pub mod diagram;
pub mod factor;
pub mod sampler;
pub mod scalar;
pub mod walls;

pub use num_bigint::BigUint;
pub use num_rational::Ratio;
pub use scalar::Scalar;

/// Exact rational scalar used for densities and thresholds.
pub type Exact = Ratio<i64>;
/// Floating scalar for fast sweeps.
pub type Real = f64;
