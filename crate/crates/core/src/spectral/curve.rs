use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kappa::{kappa, Kind};
use crate::numerics::EULER_GAMMA;

use super::potential::RadialPotential;
use super::sphere::{analyze_sphere, DEFAULT_ELL_MAX};

/// One sample of a weak-coupling phase boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// `δμ / T` along the curve.
    pub t: f64,
    pub kappa: f64,
    pub temperature: f64,
    pub delta_mu: f64,
    pub t_over_tc: f64,
    pub dmu_over_tc: f64,
}

/// A phase boundary `T = T_c e^{−κ(t)}`, `δμ = t T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub kind: Kind,
    /// Balanced critical temperature.
    pub tc: f64,
    pub points: Vec<CurvePoint>,
}

/// `T_c = μ̄ (8/π) e^{γ−2} e^{π/(2√μ̄ ρ)}`.
pub fn critical_temperature(mu_bar: f64, rho: f64) -> Result<f64> {
    if rho >= 0.0 || !rho.is_finite() {
        return Err(Error::param("rho", rho, "must be finite and < 0"));
    }
    if !(mu_bar > 0.0 && mu_bar.is_finite()) {
        return Err(Error::param("mu_bar", mu_bar, "must be finite and > 0"));
    }
    Ok(mu_bar * 8.0 / PI * (EULER_GAMMA - 2.0).exp() * (PI / (2.0 * mu_bar.sqrt() * rho)).exp())
}

/// Builds the curve for a given `T_c` from κ evaluations.
pub fn curve_from_tc(tc: f64, kind: Kind, t_grid: &[f64]) -> Result<Curve> {
    if t_grid.is_empty() {
        return Err(Error::InvalidInput("t grid is empty".into()));
    }
    let mut points = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let k = kappa(kind, t)?.value;
        let ratio = (-k).exp();
        points.push(CurvePoint {
            t,
            kappa: k,
            temperature: tc * ratio,
            delta_mu: t * tc * ratio,
            t_over_tc: ratio,
            dmu_over_tc: t * ratio,
        });
    }
    Ok(Curve { kind, tc, points })
}

/// Weak-coupling boundary of the given kind for a Fourier-attractive radial potential.
pub fn critical_curve(
    potential: &RadialPotential,
    mu_bar: f64,
    lambda: f64,
    kind: Kind,
    t_grid: &[f64],
) -> Result<Curve> {
    if t_grid.is_empty() {
        return Err(Error::InvalidInput("t grid is empty".into()));
    }
    let spec = analyze_sphere(potential, mu_bar, DEFAULT_ELL_MAX, lambda)?;
    let rho = spec.rho.map(|r| r.value).unwrap_or(f64::NAN);
    let tc = critical_temperature(mu_bar, rho)?;
    curve_from_tc(tc, kind, t_grid)
}
