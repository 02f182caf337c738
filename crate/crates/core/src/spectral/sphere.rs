use std::f64::consts::PI;

use crate::error::{Context, Error, Result};
use crate::numerics::quad::legendre_table;
use crate::numerics::{integrate, integrate_with_breaks, GaussLegendre, QuadOptions};

use super::potential::RadialPotential;

/// `ρ(λ)` at a given coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rho {
    pub lambda: f64,
    pub value: f64,
}

/// Legendre-channel spectrum of the Fermi-sphere operator `V_μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSpectrum {
    pub mu_bar: f64,
    pub ell_max: usize,
    /// `e_ℓ` for `ℓ = 0..=ell_max`, each with multiplicity `2ℓ + 1`.
    pub e_ell: Vec<f64>,
    /// `min(0, min_ℓ e_ℓ)`.
    pub e_mu: f64,
    /// Channel attaining the minimum (`None` when every `e_ℓ > 0`).
    pub ground_channel: Option<usize>,
    /// `Σ_ℓ (2ℓ + 1) e_ℓ`.
    pub trace_partial: f64,
    /// `(√μ̄ / 2π²) ∫ V d³x`.
    pub trace_target: f64,
    pub w_form: Option<f64>,
    pub rho: Option<Rho>,
    pub warnings: Vec<String>,
}

impl SphereSpectrum {
    pub fn trace_relative_error(&self) -> f64 {
        ((self.trace_partial - self.trace_target) / self.trace_target).abs()
    }
}

/// Default number of channels kept when searching for `e_μ`.
pub const DEFAULT_ELL_MAX: usize = 60;

fn check_mu(mu_bar: f64) -> Result<()> {
    if mu_bar > 0.0 && mu_bar.is_finite() {
        Ok(())
    } else {
        Err(Error::param("mu_bar", mu_bar, "must be finite and > 0"))
    }
}

/// Channel eigenvalues `e_ℓ = √μ̄ (2π)^{−1/2} ∫_{−1}^{1} V̂(√(2μ̄(1−x))) P_ℓ(x) dx`.
pub fn v_mu_spectrum(
    potential: &RadialPotential,
    mu_bar: f64,
    ell_max: usize,
) -> Result<SphereSpectrum> {
    check_mu(mu_bar)?;
    let range = potential.range();
    let resolution = 4.0 * mu_bar * range * range;
    let n = (2 * ell_max + 128 + resolution.ceil().min(8192.0) as usize).next_power_of_two();
    let gl = GaussLegendre::cached(n);
    let mut e_ell = vec![0.0; ell_max + 1];
    let mut p = vec![0.0; ell_max + 1];
    for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
        let q = (2.0 * mu_bar * (1.0 - x)).sqrt();
        let fw = w * potential.vhat(q);
        legendre_table(x, &mut p);
        for (e, pl) in e_ell.iter_mut().zip(&p) {
            *e += fw * pl;
        }
    }
    let scale = mu_bar.sqrt() / (2.0 * PI).sqrt();
    for e in &mut e_ell {
        *e *= scale;
    }

    let (k_min, &min_val) = e_ell
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::InvalidInput("empty spectrum".into()))?;
    let mut warnings = Vec::new();
    let (e_mu, ground_channel) = if min_val < 0.0 {
        (min_val, Some(k_min))
    } else {
        (0.0, None)
    };
    if ell_max > 0 && ground_channel == Some(ell_max) {
        warnings.push(format!(
            "minimum eigenvalue occurs at the truncation channel l = {ell_max}"
        ));
    }
    let tail = &e_ell[ell_max.saturating_sub(10)..];
    let noise = 1e-13 * e_ell.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
    if tail
        .windows(2)
        .any(|w| w[1].abs() > noise && w[1].abs() > w[0].abs() * (1.0 + 1e-12))
    {
        warnings.push("channel eigenvalues do not decay over the last channels".into());
    }
    let trace_partial = e_ell
        .iter()
        .enumerate()
        .map(|(l, e)| (2 * l + 1) as f64 * e)
        .sum();
    let trace_target = mu_bar.sqrt() / (2.0 * PI * PI) * potential.volume_integral();
    Ok(SphereSpectrum {
        mu_bar,
        ell_max,
        e_ell,
        e_mu,
        ground_channel,
        trace_partial,
        trace_target,
        w_form: None,
        rho: None,
        warnings,
    })
}

/// `φ̂(k)` for the normalized constant function on the Fermi sphere.
fn phi_hat_constant(potential: &RadialPotential, mu_bar: f64, k: f64) -> Result<f64> {
    let kf = mu_bar.sqrt();
    let u = 1.0 / (4.0 * PI * mu_bar).sqrt();
    let diff2 = (k - kf).powi(2);
    let scale = potential.vhat(0.0).abs().max(f64::MIN_POSITIVE);
    let inner = integrate(
        |x: f64| potential.vhat((diff2 + 2.0 * k * kf * (1.0 - x)).sqrt()),
        -1.0,
        1.0,
        &QuadOptions::with_tol(1e-16 * scale, 1e-12),
    )
    .at("spectral", || {
        format!("phi_hat at k = {k}, mu_bar = {mu_bar}")
    })?
    .value;
    Ok((2.0 * PI).powf(-1.5) * u * 2.0 * PI * mu_bar * inner)
}

/// `⟨u|W_μ|u⟩` for the constant `u`,
/// `4π ∫₀^∞ [k²/|k²−μ̄| (φ̂(k)² − φ̂(√μ̄)²) + φ̂(√μ̄)²] dk`.
///
/// The integrand jumps at the Fermi momentum but stays bounded because the
/// spherical average of `|φ̂|²` is Lipschitz there; this is checked by
/// comparing difference quotients at two step sizes before integrating.
pub fn w_mu_form_constant(potential: &RadialPotential, mu_bar: f64) -> Result<f64> {
    check_mu(mu_bar)?;
    let kf = mu_bar.sqrt();
    let phi_f = phi_hat_constant(potential, mu_bar, kf)?;
    let phi_f2 = phi_f * phi_f;
    let point = || format!("W form, mu_bar = {mu_bar}");

    let quotient = |h: f64| -> Result<f64> {
        let phi = phi_hat_constant(potential, mu_bar, kf + h)?;
        Ok((phi * phi - phi_f2) / h)
    };
    let (q3, q4) = (quotient(1e-3)?, quotient(1e-4)?);
    let lip_scale = phi_f2.abs() / kf + q4.abs() + f64::MIN_POSITIVE;
    if (q3 - q4).abs() > 0.05 * lip_scale {
        return Err(Error::Anomaly {
            module: "spectral",
            point: point(),
            detail: format!(
                "near-Fermi difference quotient is not stable ({q3:e} at h=1e-3 vs {q4:e} at h=1e-4)"
            ),
        });
    }

    let integrand = |k: f64| -> f64 {
        match phi_hat_constant(potential, mu_bar, k) {
            Ok(phi) => {
                let k2 = k * k;
                k2 * (phi * phi - phi_f2) / (k2 - mu_bar).abs() + phi_f2
            }
            Err(_) => f64::NAN,
        }
    };
    let opts = QuadOptions::with_tol(1e-13 * phi_f2.abs().max(1e-300), 1e-11);
    let k_mid = 2.0 * kf + 20.0 / potential.range();
    let mut breaks = vec![0.0, kf];
    for k in [kf + 2.0 / potential.range(), kf + 6.0 / potential.range()] {
        if k < k_mid {
            breaks.push(k);
        }
    }
    breaks.push(k_mid);
    let body = integrate_with_breaks(integrand, &breaks, &opts)
        .at("spectral", point)?
        .value;
    // k = k_mid / s on the remaining half-line.
    let tail = integrate(
        |s: f64| {
            let k = k_mid / s;
            let v = match phi_hat_constant(potential, mu_bar, k) {
                Ok(phi) => (k * k * phi * phi - mu_bar * phi_f2) / (k * k - mu_bar),
                Err(_) => f64::NAN,
            };
            v * k_mid / (s * s)
        },
        0.0,
        1.0,
        &opts,
    )
    .at("spectral", point)?
    .value;
    Ok(4.0 * PI * (body + tail))
}

/// `ρ(λ) = λ(π/2√μ̄) e_μ − λ²(π/2μ̄) w`.
pub fn rho_from_parts(e_mu: f64, w_form: f64, mu_bar: f64, lambda: f64) -> Result<f64> {
    check_mu(mu_bar)?;
    if e_mu >= 0.0 {
        return Err(Error::param(
            "e_mu",
            e_mu,
            "rho requires a strictly negative lowest eigenvalue",
        ));
    }
    Ok(lambda * PI / (2.0 * mu_bar.sqrt()) * e_mu - lambda * lambda * PI / (2.0 * mu_bar) * w_form)
}

fn require_attractive(potential: &RadialPotential) -> Result<()> {
    if potential.is_fourier_attractive() {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "potential must satisfy V̂ <= 0 with V̂(0) < 0 so that the ground state on the Fermi sphere is constant".into(),
        ))
    }
}

/// `ρ(λ)` for a Fourier-attractive radial potential.
pub fn rho_lambda(potential: &RadialPotential, mu_bar: f64, lambda: f64) -> Result<f64> {
    Ok(analyze_sphere(potential, mu_bar, DEFAULT_ELL_MAX, lambda)?
        .rho
        .map(|r| r.value)
        .unwrap_or(f64::NAN))
}

/// Spectrum, W form and `ρ(λ)` in one pass.
pub fn analyze_sphere(
    potential: &RadialPotential,
    mu_bar: f64,
    ell_max: usize,
    lambda: f64,
) -> Result<SphereSpectrum> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", lambda, "must be finite and > 0"));
    }
    require_attractive(potential)?;
    let mut spec = v_mu_spectrum(potential, mu_bar, ell_max)?;
    if spec.ground_channel != Some(0) {
        return Err(Error::Anomaly {
            module: "spectral",
            point: format!("mu_bar = {mu_bar}"),
            detail: format!(
                "ground state is not the constant channel (found {:?})",
                spec.ground_channel
            ),
        });
    }
    let w = w_mu_form_constant(potential, mu_bar)?;
    let rho = rho_from_parts(spec.e_mu, w, mu_bar, lambda)?;
    spec.w_form = Some(w);
    spec.rho = Some(Rho { lambda, value: rho });
    Ok(spec)
}
