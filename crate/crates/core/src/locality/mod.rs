//! Locality of the linearized rule, checked on finite windows.
//!
//! `F̃` is local at `A` with neighborhood `N` when every operator localized in
//! `A` is pulled back by conjugation to one localized in `A + N`. For a
//! finite window `W` this is a finite check over the basis operators
//! `|z⟩⟨t|` on `A` ([`verify_locality`]). Its failure is exhibited by a pair
//! of configurations ([`falsify_uniform_locality`]) that also drives a
//! signalling protocol between two distant parties
//! ([`signalling_experiment`]).

mod falsify;
mod operator;
mod search;
mod signal;
mod verify;

pub use falsify::{check_witness, falsify_uniform_locality, Construction, FalsifyReport, MAX_PUMP};
pub use operator::{check_localized, conjugate_local_operator, LocalOperator, NotLocalized, WindowMatrix};
pub use search::{single_sided_witness_search, Side, SingleSided};
pub use signal::{auto_setup, signalling_experiment, SignallingReport};
pub use verify::{default_window, verify_locality, LocalityReport, Verdict, Violation};

use thiserror::Error;

use crate::ca::Region;
use crate::debruijn::DeBruijnError;
use crate::quantum::QuantumError;

/// Default cap on the number of window configurations.
pub const DEFAULT_MAX_WINDOW: usize = 65_536;

/// Window cap, overridable through `QCA_MAX_WINDOW`.
pub fn max_window_dim() -> usize {
    std::env::var("QCA_MAX_WINDOW")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_WINDOW)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LocalityError {
    #[error("window of {cells} cells has more than {cap} configurations")]
    WindowTooLarge { cells: usize, cap: usize },
    #[error("window must contain {required:?}")]
    WindowTooSmall { required: Region },
    #[error("operator matrix does not match its region")]
    BadOperator,
    #[error("rule is reversible: its quantization is uniformly local")]
    RuleReversible,
    #[error("rule is not injective on finite configurations")]
    RuleNotInjective,
    #[error("x and y agree at Bob's cell {0}")]
    BobCellEqual(i64),
    #[error("no witness within {limit} repetitions")]
    SearchExhausted { limit: usize },
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    DeBruijn(#[from] DeBruijnError),
}
