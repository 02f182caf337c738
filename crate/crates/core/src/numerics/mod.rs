//! Quadrature, minimization and root-finding primitives shared by all modules.

pub mod optimize;
pub mod quad;

pub use optimize::{bisect, golden_min, linspace, logspace, scan_then_golden, try_golden_min};
pub use quad::{integrate, integrate_with_breaks, GaussLegendre, QuadOptions, Quadrature};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Logistic Fermi factor `1 / (1 + e^x)`, accurate in both tails.
#[inline]
pub fn fermi(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `ln(1 + e^x)` without overflow.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `(1 - e^{-x}) / x`, with its series near the origin.
#[inline]
pub fn one_minus_exp_over_x(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0
    } else {
        -(-x).exp_m1() / x
    }
}
