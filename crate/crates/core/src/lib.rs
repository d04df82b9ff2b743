//! Exact computations in the representation ring of the unitary groups `U(N)`:
//! signatures, the `φ`/`σ` bases, the second-order operator `D` and the jump-rate
//! operator `A`, the Markov chains on signature lattices with their links,
//! boundary characters, and the Hahn/Jacobi polynomial machinery.

pub mod boundary;
pub mod error;
pub mod markov;
pub mod operators;
pub mod orthopoly;
pub mod params;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod signature;
pub mod suites;

pub use error::{Error, Result};
pub use params::Params;
pub use ring::{Basis, RingElement, Window};
pub use scalar::{Rational, Scalar};
pub use signature::Signature;
