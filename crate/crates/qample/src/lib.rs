//! Exact-arithmetic lab for partial positivity of line bundles.
//!
//! The library computes line-bundle cohomology on smooth complete toric
//! varieties (plus a closed-form backend for the full flag variety of rank
//! 3), and layers a hierarchy of positivity decisions on top: ampleness
//! certificates for the partially positive range, nefness in codimension,
//! bigness, pseudoeffectivity, Koszul section-ring certification, and a
//! small characteristic-p Tor laboratory.  Everything is exact: machine
//! integers with checked overflow in the hot loops, big rationals or a
//! large prime field elsewhere.  No floating point anywhere.

pub mod error;
pub mod field;
pub mod linalg;
pub mod lattice;
pub mod divisor;
pub mod cohomology;
pub mod ring;
pub mod positivity;
pub mod frobenius;
pub mod geometry;
pub mod svg;
pub mod suite;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
