//! Exact discrete calculus on finite sequences of rationals.
//!
//! Sequences are acted on by the shift operators `I` (drop the last term)
//! and `E` (drop the first term), from which the mean `M = (I + E)/2` and
//! the derivative `D = E - I` are built. Everything is computed over
//! arbitrary-precision rationals; no floats are involved anywhere.

pub mod analysis;
pub mod calculus;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod findiff;
pub mod lagrange;
pub mod ops;
pub mod rational;
pub mod seq;
pub mod verifier;

pub use error::{Error, Result};
pub use ops::{Monomial, OperatorExpr, OperatorPoly};
pub use rational::Rational;
pub use seq::FiniteSeq;
