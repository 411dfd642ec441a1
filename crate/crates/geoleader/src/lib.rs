//! Exact analysis of the geometric-coin leader election protocol.
//!
//! Starting from a group of participants who each toss a theta-coin per
//! round and leave on heads, the crate exposes two Markov-chain views and
//! their boundary theory:
//!
//! * the running maximum and multiplicity chain of the per-participant
//!   geometric exit times, with exact laws for the number of rounds and
//!   winners ([`maxima_chain`]), its Martin kernels, harmonicity checks and
//!   Doob h-transforms ([`maxima_boundary`]);
//! * the participant-count chain under binomial thinning
//!   ([`participants_chain`]), its time reversal, entrance laws and the
//!   logarithmic periodicity of election observables
//!   ([`participants_boundary`]).
//!
//! Everything is deterministic: pure functions everywhere, and simulations
//! take explicit 64-bit seeds.

pub mod error;
pub mod maxima_boundary;
pub mod maxima_chain;
pub mod numerics;
pub mod participants_boundary;
pub mod participants_chain;
pub mod quadrature;
pub mod rng;
pub mod selftest;
pub mod types;

pub use error::{Error, Result};
pub use maxima_boundary::{MaxValueLimit, YBoundaryPoint};
pub use maxima_chain::{ElectionOutcome, MaxState};
pub use participants_boundary::{BackwardChainSpec, NBoundaryPoint};
pub use types::{DiscreteDist, Theta};
