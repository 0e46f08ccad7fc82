//! Numerical engine for two-player quantum games: entangled two-qubit
//! states, the Eisert and Marinatto–Weber quantization schemes, Nash and
//! evolutionary-stability checks, and invasion dynamics.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
extern crate alloc;

pub mod bimatrix;
pub mod eisert;
pub mod equilibrium;
pub mod error;
pub mod grid;
pub mod invasion;
pub mod mw;
pub mod quantum;

pub use bimatrix::{Outcome, PayoffBimatrix};
pub use eisert::{eisert_payoffs, EisertGame, QuantumStrategy, StrategyKind};
pub use equilibrium::{EquilibriumReport, Verdict};
pub use error::{Error, Result};
pub use invasion::{case_study, Case, CaseStudy, ContestTable, InvasionVerdict, PopulationState};
pub use mw::{mw_payoffs, EntangledInitialState, MwGame, Pairing, TacticProfile};
