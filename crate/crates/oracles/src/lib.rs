//! Brute-force reference implementations.
//!
//! Each oracle recomputes a quantity by direct enumeration, sharing as little
//! code with the library as practical. They are slow and meant for small
//! inputs in tests.

pub mod complexes;
pub mod diagrams;
pub mod walls;
pub mod words;
