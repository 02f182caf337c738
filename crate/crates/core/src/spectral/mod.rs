//! Fermi-sphere operators for radial potentials and the weak-coupling
//! critical-temperature curves built from them.

pub mod curve;
pub mod potential;
pub mod sphere;

pub use curve::{critical_curve, critical_temperature, curve_from_tc, Curve, CurvePoint};
pub use potential::{vhat_radial, Profile, RadialPotential};
pub use sphere::{
    analyze_sphere, rho_from_parts, rho_lambda, v_mu_spectrum, w_mu_form_constant, Rho,
    SphereSpectrum, DEFAULT_ELL_MAX,
};
