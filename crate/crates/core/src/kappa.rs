//! The universal phase-boundary functions `κ^i`, `κ^o`, `κ^g` and the auxiliary `ζ(t, d)`.
//!
//! Semi-infinite integrals are truncated at `x_max = max(60, d + 60, t + 60)`.
//! Every integrand carries a factor bounded by `e^{-(x - t)}` there, so the
//! truncation error is below `e^{-60} ≈ 1e-26`.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Context, Error, Result};
use crate::kernel::{b_of_c, f_reduced};
use crate::numerics::{
    fermi, integrate, integrate_with_breaks, logspace, one_minus_exp_over_x, try_golden_min,
    QuadOptions,
};

/// Which phase boundary a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Lower bound, from the Δ = 0 kernel.
    I,
    /// Upper bound, from the pointwise infimum kernel `K̃`.
    O,
    /// Refined upper bound, from the best constant gap.
    G,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::I, Kind::G, Kind::O];

    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::I => "i",
            Kind::O => "o",
            Kind::G => "g",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "i" | "I" => Ok(Kind::I),
            "o" | "O" => Ok(Kind::O),
            "g" | "G" => Ok(Kind::G),
            other => Err(Error::InvalidInput(format!(
                "unknown curve kind `{other}` (expected i, o or g)"
            ))),
        }
    }
}

/// A κ evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaValue {
    pub t: f64,
    pub kind: Kind,
    pub value: f64,
    /// The minimizing `d` for kind g (0 when the boundary wins); `None` otherwise.
    pub minimizer_d: Option<f64>,
}

const X_PAD: f64 = 60.0;

fn opts() -> QuadOptions {
    QuadOptions::with_tol(1e-13, 1e-12)
}

fn check_t(name: &'static str, t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, t, "must be finite and >= 0"))
    }
}

/// The two weighted tail integrals shared by `κ^i` and `κ^o`:
/// `∫_lower^∞ (1−e^{−x})/x · [1+e^{x±t}]⁻¹ dx`, returned as `(plus, minus)`.
fn fermi_tails(t: f64, lower: f64, x_max: f64) -> Result<(f64, f64)> {
    let o = opts();
    let point = || format!("t = {t}, lower = {lower}");
    let plus = integrate(|x| one_minus_exp_over_x(x) * fermi(x + t), lower, x_max, &o)
        .at("kappa", point)?
        .value;
    let mut breaks = vec![lower];
    for p in [t - 8.0, t, t + 8.0] {
        if p > lower && p < x_max {
            breaks.push(p);
        }
    }
    breaks.push(x_max);
    let minus = integrate_with_breaks(|x| one_minus_exp_over_x(x) * fermi(x - t), &breaks, &o)
        .at("kappa", point)?
        .value;
    Ok((plus, minus))
}

fn weighted_tails(t: f64, lower: f64, x_max: f64) -> Result<f64> {
    let (plus, minus) = fermi_tails(t, lower, x_max)?;
    Ok(fermi(t) * plus + fermi(-t) * minus)
}

/// `κ^i(t)`.
pub fn kappa_i(t: f64) -> Result<f64> {
    kappa_i_truncated(t, X_PAD.max(t + X_PAD))
}

/// `κ^i` with an explicit truncation point, for convergence checks.
pub fn kappa_i_truncated(t: f64, x_max: f64) -> Result<f64> {
    check_t("t", t)?;
    Ok(weighted_tails(t, 0.0, x_max)? - (FRAC_PI_2).ln())
}

/// `∫₀^b ln(x) e^{−x} dx`, via `x = e^s` which removes the logarithmic endpoint.
pub fn log_exp_integral(b: f64) -> Result<f64> {
    if b <= 0.0 {
        return Ok(0.0);
    }
    let s_hi = b.ln();
    let s_lo = s_hi - 40.0;
    Ok(integrate(
        |s: f64| {
            let x = s.exp();
            s * x * (-x).exp()
        },
        s_lo,
        s_hi,
        &opts(),
    )
    .at("kappa", || format!("log-exp integral up to b = {b}"))?
    .value)
}

/// `κ^o(c)` with `b = b(c)`.
pub fn kappa_o(c: f64) -> Result<f64> {
    kappa_o_truncated(c, X_PAD.max(c + X_PAD))
}

/// `κ^o` with an explicit truncation point, for convergence checks.
pub fn kappa_o_truncated(c: f64, x_max: f64) -> Result<f64> {
    check_t("c", c)?;
    let b = b_of_c(c)?;
    let tails = weighted_tails(c, b, x_max)?;
    if b == 0.0 {
        return Ok(tails - FRAC_PI_2.ln());
    }
    let boundary = -(-b).exp_m1() * b.ln() - log_exp_integral(b)? - b / (2.0 * f_reduced(b, c));
    Ok(tails + boundary - FRAC_PI_2.ln())
}

/// Below this `d` the `d = 0` form of the integrands is used.
pub const ZETA_D_FLOOR: f64 = 1e-8;

/// `ζ(t, d)`; at `d = 0` it coincides with `κ^i(t)`.
pub fn zeta(t: f64, d: f64) -> Result<f64> {
    zeta_truncated(t, d, X_PAD.max(d + X_PAD).max(t + X_PAD))
}

/// `ζ` with an explicit truncation point, for convergence checks.
pub fn zeta_truncated(t: f64, d: f64, x_max: f64) -> Result<f64> {
    check_t("t", t)?;
    check_t("d", d)?;
    if d < ZETA_D_FLOOR {
        // First integral vanishes and the second tends to ln 2.
        return Ok(weighted_tails(t, 0.0, x_max)? + LN_2 - PI.ln());
    }
    let o = opts();
    let point = || format!("t = {t}, d = {d}");

    let first = d * integrate(
        |s: f64| s * (-s).exp() * (-d * (-s).exp()).exp(),
        0.0,
        50.0,
        &o,
    )
    .at("kappa", point)?
    .value;

    // x = d cosh u turns dx / sqrt(x² − d²) into du.
    let u_max = (x_max / d).acosh();
    let mut breaks = vec![0.0];
    for x in [1.0, t] {
        if x > d {
            let u = (x / d).acosh();
            if u < u_max {
                breaks.push(u);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.push(u_max);

    let second = integrate_with_breaks(
        |u: f64| {
            let x = d * u.cosh();
            (-x).exp() * u.tanh().ln_1p() * d * u.sinh()
        },
        &breaks,
        &o,
    )
    .at("kappa", point)?
    .value;

    let plus = integrate_with_breaks(
        |u: f64| {
            let x = d * u.cosh();
            -(-x).exp_m1() * fermi(x + t)
        },
        &breaks,
        &o,
    )
    .at("kappa", point)?
    .value;
    let minus = integrate_with_breaks(
        |u: f64| {
            let x = d * u.cosh();
            -(-x).exp_m1() * fermi(x - t)
        },
        &breaks,
        &o,
    )
    .at("kappa", point)?
    .value;

    Ok(first + second + fermi(t) * plus + fermi(-t) * minus - PI.ln())
}

/// `κ^g(t) = min_{d ≥ 0} ζ(t, d)`.
///
/// A logarithmic `d`-grid from `1e-3` to `max(10^{1.5}, 4t + 10)` locates the
/// best interior point, which golden-section search refines in `ln d`; the
/// result is compared with the boundary value `ζ(t, 0) = κ^i(t)`.
pub fn kappa_g(t: f64) -> Result<KappaValue> {
    check_t("t", t)?;
    let boundary = kappa_i(t)?;
    let lo = 1e-3_f64;
    let mut hi = 10f64.powf(1.5).max(4.0 * t + 10.0);
    let (mut best_ln_d, mut best) = (f64::NAN, f64::INFINITY);
    for _ in 0..8 {
        let decades = (hi / lo).log10();
        let n = ((60.0 * decades / 4.5).ceil() as usize).max(60);
        let grid: Vec<f64> = logspace(lo, hi, n).iter().map(|d| d.ln()).collect();
        let mut values = Vec::with_capacity(n);
        for &s in &grid {
            values.push(zeta(t, s.exp())?);
        }
        let k = values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        if k == n - 1 {
            hi *= 4.0;
            continue;
        }
        let a = grid[k.saturating_sub(1)];
        let b = grid[k + 1];
        let (s, v) = try_golden_min(|s: f64| zeta(t, s.exp()), a, b, 1e-7)?;
        (best_ln_d, best) = if v < values[k] {
            (s, v)
        } else {
            (grid[k], values[k])
        };
        break;
    }
    if !best.is_finite() {
        return Err(Error::Anomaly {
            module: "kappa",
            point: format!("t = {t}"),
            detail: "minimum of zeta over d lies beyond the search range".into(),
        });
    }
    let (value, d) = if boundary <= best {
        (boundary, 0.0)
    } else {
        (best, best_ln_d.exp())
    };
    Ok(KappaValue {
        t,
        kind: Kind::G,
        value,
        minimizer_d: Some(d),
    })
}

/// Dispatches on `kind`.
pub fn kappa(kind: Kind, t: f64) -> Result<KappaValue> {
    match kind {
        Kind::I => Ok(KappaValue {
            t,
            kind,
            value: kappa_i(t)?,
            minimizer_d: None,
        }),
        Kind::O => Ok(KappaValue {
            t,
            kind,
            value: kappa_o(t)?,
            minimizer_d: None,
        }),
        Kind::G => kappa_g(t),
    }
}
