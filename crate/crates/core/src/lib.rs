//! Arithmetic of rational wave numbers: periodic complex sequences that
//! generalize the cyclic groups of the roots of unity.
//!
//! Exact work happens in parameter space ([`MultWave`], [`Rational`]);
//! everything else runs on sampled principal sequences ([`PeriodicSeq`]).

pub mod basis;
pub mod equations;
pub mod error;
pub mod highprec;
pub mod integral;
pub mod multiplicative;
pub mod periodic;
pub mod polar;
pub mod rational;
pub mod sieve;

pub use error::{Error, Result};
pub use multiplicative::MultWave;
pub use periodic::{PeriodicSeq, Precision, Tolerance};
pub use polar::PolarForm;
pub use rational::Rational;
