//! Phase-boundary kernels, weak-coupling asymptotics, a one-dimensional gap
//! equation solver, the BCS free-energy functional and Fermi-sphere spectra
//! for spin-imbalanced Fermi gases.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod functional;
pub mod kappa;
pub mod kernel;
pub mod mlimits;
pub mod numerics;
pub mod spectral;
pub mod toy1d;

pub use error::{Error, NumericalFailure, Result};
pub use kernel::{b_of_c, f_val, k_delta, k_tilde, upsilon0, KernelPoint, PhysParams};
