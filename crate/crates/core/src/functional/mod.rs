//! The BCS free-energy functional for translation-invariant states, its
//! Euler–Lagrange system and the normal/superfluid comparison.

pub mod energy;
pub mod grid;
pub mod phase;
pub mod state;

pub use energy::{
    admissible_direction, fd_directional_derivative, free_energy, interaction_convolution,
    second_variation_normal, stationarity_residual, Interaction,
};
pub use grid::{Dimension, MomentumGrid, DEFAULT_NODES};
pub use phase::{phase_decision, phase_decision_with, PhaseDecision, PhaseLabel};
pub use state::{gamma_eigenvalues, normal_state, state_from_gap_solution, BCSState};
