//! Decay of a discrete quantum level into an equidistant quasi-continuum.
//!
//! Implements three independent routes to the transition dynamics of a
//! discrete level |b⟩ coupled with uniform strength g to levels at energies
//! nΔ, n ∈ ℤ (natural units, ħ = 1):
//!
//! * [`first_order`] — the first-order perturbative transition probability:
//!   the generic spectrum sum, its continuum-integral approximation, and the
//!   closed-form piecewise-linear profile W_α(T) whose first interval is
//!   Fermi's golden rule.
//! * [`dyson`] — the exact all-orders survival amplitude S_bb(t), summed in
//!   closed form per Heisenberg-time interval.
//! * [`propagator`] — a brute-force oracle that diagonalizes the truncated
//!   Hamiltonian and propagates the Schrödinger equation exactly.
//!
//! [`analysis`] extracts the physics from computed curves: the kinks/cusps at
//! multiples of the Heisenberg time t_H = 2π/Δ where the golden rule breaks
//! down, decay-rate fits, and order-scaling studies.

pub mod analysis;
pub mod dyson;
pub mod first_order;
pub mod model;
pub mod propagator;

pub use model::{DimensionlessTime, ModelParams};

/// Error type shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid physical parameter (non-finite, wrong sign, ...).
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Input outside an operation's domain (negative time, unsorted grid, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure failed to converge or lost its guarantees.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Analysis preconditions not met (grid too coarse, degenerate window, ...).
    #[error("analysis error: {0}")]
    Analysis(String),
}
