//! Error-budget calculator and Pauli-basis process-matrix simulator for
//! Rydberg-blockade C_Z gates and the Bell-state preparation built on them.
//!
//! The crate is organised bottom-up:
//!
//! - [`process`]: two-qubit density matrices, χ-matrix processes, Uhlmann fidelity.
//! - [`channels`]: constructors for the library of error channels.
//! - [`budget`]: closed-form physical error magnitudes and the assembled budget.
//! - [`quadrature`]: Gauss rules used by the averaging modules.
//! - [`beam`]: thermal position averaging of Rydberg pulses and trap escape.
//! - [`coherence`]: driven-qubit decoherence in a thermal trap.
//! - [`bell`]: the Bell-state pipeline and its observables.
//! - [`config`] and [`cli`]: configuration files and command implementations.

pub mod beam;
pub mod bell;
pub mod budget;
pub mod channels;
pub mod cli;
pub mod coherence;
pub mod config;
pub mod constants;
pub mod error;
pub mod process;
pub mod quadrature;

pub use error::{Error, Result};
