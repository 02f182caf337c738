//! The integrals `m`, `m̃`, `m̄` at finite `(T, δμ)` and their low-temperature asymptotics.
//!
//! All three are `m = (1/4πμ̄) ∫ (1/K(p) − 1/p²) d³p` for an even kernel `K(t)`
//! of `t = p² − μ̄`. After `p² = μ̄ + t` the integral splits into
//!
//! * `A = (1/2μ̄)[2√μ̄ ln(1+√2) + ∫_μ̄^∞ r(t) √(μ̄+t)/t dt]`, with `r = t/K − 1`,
//! * `B = (1/2μ̄) ∫_0^μ̄ (t/K) [1/(√(μ̄+t)+√μ̄) − 1/(√(μ̄−t)+√μ̄)] dt`,
//! * `C = −√(2/μ̄)`,
//! * `D = (1/√μ̄) ∫_0^μ̄ dt/K`,
//!
//! where `D` carries the logarithmic growth and the other pieces are regular.

use std::f64::consts::SQRT_2;

use crate::error::{Context, Error, Result};
use crate::kappa::{kappa, Kind};
use crate::kernel::{b_of_c, inverse_kernel_reduced, PhysParams, MONOTONE_THRESHOLD};
use crate::numerics::{
    fermi, integrate_with_breaks, linspace, try_golden_min, QuadOptions, EULER_GAMMA,
};

/// Which kernel an `m`-integral uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MKind {
    /// `K⁰`, the Δ = 0 kernel.
    Plain,
    /// `K̃`, the infimum over Δ.
    Tilde,
    /// `K^y` maximized over a constant gap `y`.
    Bar,
}

impl MKind {
    /// The κ-function governing this kind's asymptotics.
    pub fn kappa_kind(&self) -> Kind {
        match self {
            MKind::Plain => Kind::I,
            MKind::Tilde => Kind::O,
            MKind::Bar => Kind::G,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MResult {
    pub kind: MKind,
    pub value: f64,
    /// Maximizing gap (energy), for [`MKind::Bar`] only.
    pub y_star: Option<f64>,
}

/// Reduced kernel argument `φ(x)` with `x = |t|/T`; the kernel is `2T f(φ, c)`.
#[derive(Debug, Clone, Copy)]
enum Shape {
    Plain,
    Plateau(f64),
    Gapped(f64),
}

impl Shape {
    fn phi(&self, x: f64) -> f64 {
        match *self {
            Shape::Plain => x,
            Shape::Plateau(b) => x.max(b),
            Shape::Gapped(d) => x.hypot(d),
        }
    }

    /// `x/φ(x) − 1`, exact for the gapped case.
    fn ratio_minus_one(&self, x: f64, phi: f64) -> f64 {
        match *self {
            Shape::Plain => 0.0,
            Shape::Plateau(_) => x / phi - 1.0,
            Shape::Gapped(d) => -d * d / (phi * (phi + x)),
        }
    }

    /// Reduced `x` at which `φ` reaches `level`.
    fn x_where_phi(&self, level: f64) -> f64 {
        match *self {
            Shape::Plain | Shape::Plateau(_) => level,
            Shape::Gapped(d) => (level * level - d * d).max(0.0).sqrt(),
        }
    }

    /// `∫_{x0}^{x1} dx / φ(x)` for `φ(x0) ≥` any plateau level.
    fn log_tail(&self, x0: f64, x1: f64) -> f64 {
        match *self {
            Shape::Plain | Shape::Plateau(_) => (x1 / x0).ln(),
            Shape::Gapped(d) if d > 0.0 => (x1 / d).asinh() - (x0 / d).asinh(),
            Shape::Gapped(_) => (x1 / x0).ln(),
        }
    }

    fn features(&self, c: f64) -> Vec<f64> {
        let mut v = vec![c, c + 5.0, (c - 5.0).max(0.0), 1.0];
        match *self {
            Shape::Plain => {}
            Shape::Plateau(b) => v.push(b),
            Shape::Gapped(d) => {
                v.push(d);
                v.push(self.x_where_phi(c));
            }
        }
        v
    }
}

struct Integrand {
    mu: f64,
    temp: f64,
    c: f64,
    shape: Shape,
}

impl Integrand {
    /// `G(x) = T / K`.
    fn g(&self, x: f64) -> f64 {
        inverse_kernel_reduced(self.shape.phi(x), self.c)
    }

    /// `r(x) = x G(x) − 1`, written as `(x/φ − 1) − (x/φ)(1 − Υ(φ))`.
    fn r(&self, x: f64) -> f64 {
        let phi = self.shape.phi(x);
        if phi == 0.0 {
            return -1.0;
        }
        let q = self.shape.ratio_minus_one(x, phi);
        let tail = fermi(phi + self.c) + fermi(phi - self.c);
        q - (1.0 + q) * tail
    }

    fn breaks_in(&self, lo: f64, hi: f64, to_var: impl Fn(f64) -> f64) -> Vec<f64> {
        let mut v = vec![lo];
        for x in self.shape.features(self.c) {
            let s = to_var(x);
            if s > lo && s < hi && s.is_finite() {
                v.push(s);
            }
        }
        v.sort_by(f64::total_cmp);
        v.dedup();
        v.push(hi);
        v
    }

    fn evaluate(&self) -> Result<f64> {
        let (mu, temp) = (self.mu, self.temp);
        let sqrt_mu = mu.sqrt();
        let opts = QuadOptions::with_tol(1e-12, 1e-12);
        let point = || format!("mu_bar = {mu}, T = {temp}, c = {}", self.c);

        // A: t = μ̄/s² over s ∈ (0, 1].
        let a_breaks = self.breaks_in(0.0, 1.0, |x| (mu / (x * temp)).sqrt());
        let a_int = integrate_with_breaks(
            |s: f64| {
                let t = mu / (s * s);
                self.r(t / temp) * 2.0 * sqrt_mu * (1.0 + s * s).sqrt() / (s * s)
            },
            &a_breaks,
            &opts,
        )
        .at("mlimits", point)?
        .value;
        let a = (2.0 * sqrt_mu * SQRT_2.ln_1p() + a_int) / (2.0 * mu);

        // B: direct on [0, μ̄/2], then t = μ̄(1 − v²) to absorb the square root at μ̄.
        let beta = |t: f64, sqrt_mu_minus_t: f64| {
            1.0 / ((mu + t).sqrt() + sqrt_mu) - 1.0 / (sqrt_mu_minus_t + sqrt_mu)
        };
        let b_breaks = self.breaks_in(0.0, 0.5 * mu, |x| x * temp);
        let b_lower = integrate_with_breaks(
            |t: f64| (1.0 + self.r(t / temp)) * beta(t, (mu - t).sqrt()),
            &b_breaks,
            &opts,
        )
        .at("mlimits", point)?
        .value;
        let v_max = SQRT_2.recip();
        let b_upper_breaks = self.breaks_in(0.0, v_max, |x| {
            let w = 1.0 - x * temp / mu;
            if w > 0.0 {
                w.sqrt()
            } else {
                f64::NAN
            }
        });
        let b_upper = integrate_with_breaks(
            |v: f64| {
                let t = mu * (1.0 - v * v);
                (1.0 + self.r(t / temp)) * beta(t, sqrt_mu * v) * 2.0 * mu * v
            },
            &b_upper_breaks,
            &opts,
        )
        .at("mlimits", point)?
        .value;
        let b = (b_lower + b_upper) / (2.0 * mu);

        let c_term = -(2.0 / mu).sqrt();

        // D: numerically up to where the Fermi factors are below e^{-50}, then
        // the remaining ∫ dx/φ in closed form.
        let x_end = mu / temp;
        let x0 = self.shape.x_where_phi(self.c + 50.0).max(match self.shape {
            Shape::Plateau(b) => b,
            _ => 0.0,
        });
        let numeric_end = x0.min(x_end);
        let d_breaks = self.breaks_in(0.0, numeric_end, |x| x);
        let mut d_int = integrate_with_breaks(|x| self.g(x), &d_breaks, &opts)
            .at("mlimits", point)?
            .value;
        if x0 < x_end {
            d_int += self.shape.log_tail(x0, x_end);
        }
        let d = d_int / sqrt_mu;

        let total = a + b + c_term + d;
        if total.is_finite() {
            Ok(total)
        } else {
            Err(Error::Anomaly {
                module: "mlimits",
                point: point(),
                detail: "non-finite integral".into(),
            })
        }
    }
}

fn prepare(params: &PhysParams) -> Result<(f64, f64, f64)> {
    params.require_positive_mu()?;
    let c = params.ratio()?;
    Ok((params.mu_bar(), params.temperature(), c))
}

fn m_with(params: &PhysParams, shape: Shape) -> Result<f64> {
    let (mu, temp, c) = prepare(params)?;
    Integrand { mu, temp, c, shape }.evaluate()
}

/// `m(T, δμ)` with the Δ = 0 kernel.
pub fn m_numeric(params: &PhysParams) -> Result<MResult> {
    Ok(MResult {
        kind: MKind::Plain,
        value: m_with(params, Shape::Plain)?,
        y_star: None,
    })
}

/// `m̃(T, δμ)` with the infimum kernel `K̃`.
pub fn m_tilde_numeric(params: &PhysParams) -> Result<MResult> {
    let (_, _, c) = prepare(params)?;
    let b = b_of_c(c)?;
    let shape = if b == 0.0 {
        Shape::Plain
    } else {
        Shape::Plateau(b)
    };
    Ok(MResult {
        kind: MKind::Tilde,
        value: m_with(params, shape)?,
        y_star: None,
    })
}

/// `I(δμ, T, y)`: the `m`-integral with the constant-gap kernel `K^y`.
pub fn m_gapped(params: &PhysParams, y: f64) -> Result<f64> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::param("y", y, "must be finite and >= 0"));
    }
    let (_, temp, _) = prepare(params)?;
    m_with(params, Shape::Gapped(y / temp))
}

/// `m̄(T, δμ) = max_{y ≥ 0} I(δμ, T, y)`.
///
/// A 40-point scan of `y ∈ [0, 10(δμ + T)]` is refined by golden-section
/// search around the best sample; `y = 0` is part of the scan.
pub fn m_bar_numeric(params: &PhysParams) -> Result<MResult> {
    let (_, temp, c) = prepare(params)?;
    if c <= MONOTONE_THRESHOLD {
        // K^y ≥ K⁰ pointwise here, so y = 0 is the maximizer.
        return Ok(MResult {
            kind: MKind::Bar,
            value: m_with(params, Shape::Plain)?,
            y_star: Some(0.0),
        });
    }
    let d_hi = 10.0 * (c + 1.0);
    let grid = linspace(0.0, d_hi, 40);
    let mut values = Vec::with_capacity(grid.len());
    for &d in &grid {
        values.push(m_with(params, Shape::Gapped(d))?);
    }
    let k = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let (mut d_best, mut best) = (grid[k], values[k]);
    let lo = grid[k.saturating_sub(1)];
    let hi = grid[(k + 1).min(grid.len() - 1)];
    let (d, neg) = try_golden_min(
        |d| m_with(params, Shape::Gapped(d)).map(|v| -v),
        lo,
        hi,
        1e-8,
    )?;
    if -neg > best {
        d_best = d;
        best = -neg;
    }
    Ok(MResult {
        kind: MKind::Bar,
        value: best,
        y_star: Some(d_best * temp),
    })
}

/// Dispatches on `kind`.
pub fn m_kind_numeric(params: &PhysParams, kind: MKind) -> Result<MResult> {
    match kind {
        MKind::Plain => m_numeric(params),
        MKind::Tilde => m_tilde_numeric(params),
        MKind::Bar => m_bar_numeric(params),
    }
}

/// `μ̄^{−1/2}(ln(μ̄/T) + γ − 2 + ln(8/π) − κ(t))`.
pub fn m_asymptotic(temperature: f64, t: f64, mu_bar: f64, kind: Kind) -> Result<f64> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::param("T", temperature, "must be finite and > 0"));
    }
    if !(mu_bar > 0.0 && mu_bar.is_finite()) {
        return Err(Error::param("mu_bar", mu_bar, "must be finite and > 0"));
    }
    let k = kappa(kind, t)?.value;
    Ok(m_asymptotic_from_kappa(temperature, mu_bar, k))
}

/// [`m_asymptotic`] for an already evaluated κ.
pub fn m_asymptotic_from_kappa(temperature: f64, mu_bar: f64, kappa_value: f64) -> f64 {
    ((mu_bar / temperature).ln() + EULER_GAMMA - 2.0 + (8.0 / std::f64::consts::PI).ln()
        - kappa_value)
        / mu_bar.sqrt()
}
