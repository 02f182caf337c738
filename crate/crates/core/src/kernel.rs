//! Pairing kernels `K^Δ`, `K̃`, the reduced kernel `f(x, c)` and its minimizer `b(c)`.

use crate::error::{Error, Result};
use crate::numerics::{fermi, golden_min, linspace};

/// `ln(2 + √3) = cosh⁻¹(2)`: above this value of `δμ/T` the kernel stops being monotone in Δ.
pub const MONOTONE_THRESHOLD: f64 = 1.316_957_896_924_816_6;

/// Thermodynamic point and coupling, in units with ħ = 2m = k_B = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    mu_bar: f64,
    delta_mu: f64,
    temperature: f64,
    coupling: f64,
}

impl PhysParams {
    pub fn new(mu_bar: f64, delta_mu: f64, temperature: f64, coupling: f64) -> Result<Self> {
        if !mu_bar.is_finite() {
            return Err(Error::param("mu_bar", mu_bar, "must be finite"));
        }
        if !(delta_mu.is_finite() && delta_mu >= 0.0) {
            return Err(Error::param(
                "delta_mu",
                delta_mu,
                "must be finite and >= 0",
            ));
        }
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(Error::param("T", temperature, "must be finite and >= 0"));
        }
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(Error::param("coupling", coupling, "must be finite and > 0"));
        }
        Ok(PhysParams {
            mu_bar,
            delta_mu,
            temperature,
            coupling,
        })
    }

    pub fn mu_bar(&self) -> f64 {
        self.mu_bar
    }

    pub fn delta_mu(&self) -> f64 {
        self.delta_mu
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.mu_bar, self.delta_mu, temperature, self.coupling)
    }

    pub fn with_delta_mu(&self, delta_mu: f64) -> Result<Self> {
        Self::new(self.mu_bar, delta_mu, self.temperature, self.coupling)
    }

    pub fn with_coupling(&self, coupling: f64) -> Result<Self> {
        Self::new(self.mu_bar, self.delta_mu, self.temperature, coupling)
    }

    /// The ratio `c = δμ / T`; requires `T > 0`.
    pub fn ratio(&self) -> Result<f64> {
        self.require_positive_temperature()?;
        Ok(self.delta_mu / self.temperature)
    }

    pub(crate) fn require_positive_temperature(&self) -> Result<()> {
        if self.temperature > 0.0 {
            Ok(())
        } else {
            Err(Error::param(
                "T",
                self.temperature,
                "operation requires T > 0",
            ))
        }
    }

    pub(crate) fn require_positive_mu(&self) -> Result<()> {
        if self.mu_bar > 0.0 {
            Ok(())
        } else {
            Err(Error::param(
                "mu_bar",
                self.mu_bar,
                "operation requires mu_bar > 0",
            ))
        }
    }
}

/// A kernel evaluation together with its dispersion arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub t: f64,
    pub e: f64,
    pub value: f64,
}

/// `Υ₀(t) = 1 − [1+e^{(t+δμ)/T}]⁻¹ − [1+e^{(t−δμ)/T}]⁻¹`.
pub fn upsilon0(t: f64, params: &PhysParams) -> Result<f64> {
    let c = params.ratio()?;
    Ok(upsilon_reduced(t / params.temperature(), c))
}

/// Dimensionless `Υ` at `x = t/T`, written as half the sum of two hyperbolic
/// tangents so that it is exactly odd in `x`.
pub fn upsilon_reduced(x: f64, c: f64) -> f64 {
    0.5 * (((x + c) * 0.5).tanh() + ((x - c) * 0.5).tanh())
}

/// `1 − Υ(x)` for `x ≥ 0`, free of cancellation when `Υ` is close to one.
pub fn one_minus_upsilon(x: f64, c: f64) -> f64 {
    fermi(x + c) + fermi(x - c)
}

fn check_reduced_args(x: f64, c: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::param("x", x, "must be finite and >= 0"));
    }
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::param("c", c, "must be finite and >= 0"));
    }
    Ok(())
}

/// `f(x, c) = x / (tanh((x+c)/2) + tanh((x−c)/2))`, with the removable limit
/// `cosh²(c/2)` at `x = 0`.
pub fn f_val(x: f64, c: f64) -> Result<f64> {
    check_reduced_args(x, c)?;
    Ok(f_reduced(x, c))
}

/// Unchecked `f(x, c)` for `x, c ≥ 0`.
///
/// Uses `f = (x/2)(coth x + cosh c / sinh x)`; the second ratio is written as
/// `e^{c−x}(1 + e^{−2c}) / (1 − e^{−2x})` so that neither factor overflows.
#[inline]
pub(crate) fn f_reduced(x: f64, c: f64) -> f64 {
    if x < 1e-6 {
        let x2 = x * x;
        return 0.5 * ((1.0 + x2 / 3.0) + c.cosh() * (1.0 - x2 / 6.0));
    }
    let coth = 1.0 / x.tanh();
    let ratio = (c - x).exp() * (1.0 + (-2.0 * c).exp()) / -(-2.0 * x).exp_m1();
    0.5 * x * (coth + ratio)
}

/// The minimizer `b(c)` of `x ↦ f(x, c)` over `x ≥ 0`.
///
/// Zero whenever `cosh c ≤ 2`. Otherwise a coarse scan on `[0, max(10, 4c)]`
/// brackets the interior minimum and golden-section search refines it to an
/// absolute tolerance of `1e-10`.
pub fn b_of_c(c: f64) -> Result<f64> {
    check_reduced_args(0.0, c)?;
    if c <= MONOTONE_THRESHOLD {
        return Ok(0.0);
    }
    let f0 = f_reduced(0.0, c);
    let x_hi = (4.0 * c).max(10.0);
    let xs = linspace(0.0, x_hi, 401);
    let k = xs
        .iter()
        .enumerate()
        .min_by(|a, b| f_reduced(*a.1, c).total_cmp(&f_reduced(*b.1, c)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let lo = xs[k.saturating_sub(1)];
    let hi = xs[(k + 1).min(xs.len() - 1)];
    let (x, fx) = golden_min(|x| f_reduced(x, c), lo, hi, 1e-10);
    if fx >= f0 * (1.0 - 1e-12) {
        Ok(0.0)
    } else {
        Ok(x)
    }
}

fn zero_temperature_kernel(e: f64, params: &PhysParams) -> Result<f64> {
    if params.delta_mu() == 0.0 {
        Ok(e)
    } else {
        Err(Error::param(
            "T",
            0.0,
            "T = 0 with delta_mu > 0 has no continuous kernel limit",
        ))
    }
}

/// `K^Δ(t) = 2E / [tanh((E+δμ)/2T) + tanh((E−δμ)/2T)] = 2T f(E/T, δμ/T)`.
pub fn k_delta(t: f64, delta: f64, params: &PhysParams) -> Result<f64> {
    Ok(k_delta_point(t, delta, params)?.value)
}

/// [`k_delta`] returning the dispersion arguments alongside the value.
pub fn k_delta_point(t: f64, delta: f64, params: &PhysParams) -> Result<KernelPoint> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::param("Delta", delta, "must be finite and >= 0"));
    }
    if !t.is_finite() {
        return Err(Error::param("t", t, "must be finite"));
    }
    let e = t.hypot(delta);
    let value = if params.temperature() == 0.0 {
        zero_temperature_kernel(e, params)?
    } else {
        let temp = params.temperature();
        2.0 * temp * f_reduced(e / temp, params.delta_mu() / temp)
    };
    Ok(KernelPoint { t, e, value })
}

/// `K̃(t) = inf_{Δ ≥ 0} K^Δ(t)`: the Δ = 0 kernel outside `|t| < T b(c)` and the
/// plateau `2T f(b, c)` inside.
pub fn k_tilde(t: f64, params: &PhysParams) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::param("t", t, "must be finite"));
    }
    if params.temperature() == 0.0 {
        return zero_temperature_kernel(t.abs(), params);
    }
    let temp = params.temperature();
    let c = params.delta_mu() / temp;
    let b = b_of_c(c)?;
    Ok(2.0 * temp * f_reduced((t.abs() / temp).max(b), c))
}

/// `T / K(t)` in reduced form for a kernel whose `x`-argument is `φ`:
/// `1 / (2 f(φ, c))`.
#[inline]
pub(crate) fn inverse_kernel_reduced(phi: f64, c: f64) -> f64 {
    0.5 / f_reduced(phi, c)
}
