//! Exact-arithmetic toolkit for integer programs
//! `max cᵗx  s.t.  Ax ≤ b, x ≥ 0, x ∈ ℤⁿ` whose symmetry group acts highly
//! transitively on the coordinates.
//!
//! The pieces are layered bottom-up:
//!
//! - [`rational`] and [`instance`]: exact scalars, the instance model and its text format.
//! - [`layers`]: integer hyperplane layers orthogonal to `c`, centers and neighbor sets.
//! - [`symmetry`]: coordinate permutations, generator-presented groups, symmetry detection.
//! - [`solver`]: fixed-line LP solution, layer sifting and the constructive descent.
//! - [`oracle`]: brute-force enumeration used to cross-check everything above.

pub mod error;
pub mod instance;
pub mod layers;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod solver;
pub mod symmetry;

pub use error::{Error, Result};
pub use instance::{IpInstance, Point};
pub use rational::{parse_rational, Rational};
