use std::f64::consts::PI;

use crate::error::{Context, Error, Result};
use crate::numerics::{integrate_with_breaks, GaussLegendre, QuadOptions};

/// Shape of a radial interaction profile.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `V(r) = depth · e^{−r²/width²}`.
    Gaussian { depth: f64, width: f64 },
    /// `V(r) = depth · e^{−r/width}`.
    Exponential { depth: f64, width: f64 },
    /// Piecewise-linear interpolation of samples, constant below the first
    /// radius and zero beyond the last.
    Sampled { r: Vec<f64>, v: Vec<f64> },
}

/// A real, radial interaction potential together with its Fourier transform.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPotential {
    profile: Profile,
}

fn check_builtin(depth: f64, width: f64) -> Result<()> {
    if !depth.is_finite() {
        return Err(Error::param("depth", depth, "must be finite"));
    }
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::param("width", width, "must be finite and > 0"));
    }
    Ok(())
}

impl RadialPotential {
    pub fn gaussian(depth: f64, width: f64) -> Result<Self> {
        check_builtin(depth, width)?;
        Ok(RadialPotential {
            profile: Profile::Gaussian { depth, width },
        })
    }

    pub fn exponential(depth: f64, width: f64) -> Result<Self> {
        check_builtin(depth, width)?;
        Ok(RadialPotential {
            profile: Profile::Exponential { depth, width },
        })
    }

    /// A sampled profile. Radii must be non-negative and strictly increasing,
    /// and the profile must have decayed at the last sample, otherwise the
    /// Fourier integral is not controlled.
    pub fn sampled(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() || r.len() < 2 {
            return Err(Error::InvalidInput(
                "sampled potential needs at least two (r, V) pairs of equal length".into(),
            ));
        }
        if r.iter().chain(&v).any(|x| !x.is_finite()) || r[0] < 0.0 {
            return Err(Error::InvalidInput(
                "sampled potential must be finite with r >= 0".into(),
            ));
        }
        if r.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "sampled radii must be strictly increasing".into(),
            ));
        }
        let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let last = v[v.len() - 1].abs();
        if last > 1e-8 * scale {
            return Err(Error::InvalidInput(format!(
                "sampled potential is not integrable: |V| = {last:e} at the last radius {} has not decayed",
                r[r.len() - 1]
            )));
        }
        Ok(RadialPotential {
            profile: Profile::Sampled { r, v },
        })
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    /// The potential multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let profile = match &self.profile {
            Profile::Gaussian { depth, width } => Profile::Gaussian {
                depth: depth * factor,
                width: *width,
            },
            Profile::Exponential { depth, width } => Profile::Exponential {
                depth: depth * factor,
                width: *width,
            },
            Profile::Sampled { r, v } => Profile::Sampled {
                r: r.clone(),
                v: v.iter().map(|x| x * factor).collect(),
            },
        };
        RadialPotential { profile }
    }

    /// `V(r)`.
    pub fn value(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Gaussian { depth, width } => depth * (-(r / width).powi(2)).exp(),
            Profile::Exponential { depth, width } => depth * (-r / width).exp(),
            Profile::Sampled { r: rs, v } => {
                if r <= rs[0] {
                    return v[0];
                }
                if r >= rs[rs.len() - 1] {
                    return 0.0;
                }
                let i = rs.partition_point(|&x| x <= r) - 1;
                let w = (r - rs[i]) / (rs[i + 1] - rs[i]);
                v[i] + w * (v[i + 1] - v[i])
            }
        }
    }

    /// A length beyond which the profile is negligible.
    pub fn support_end(&self) -> f64 {
        match &self.profile {
            Profile::Gaussian { width, .. } => 7.0 * width,
            Profile::Exponential { width, .. } => 50.0 * width,
            Profile::Sampled { r, .. } => r[r.len() - 1],
        }
    }

    /// The length scale over which the profile varies.
    pub fn range(&self) -> f64 {
        match &self.profile {
            Profile::Gaussian { width, .. } | Profile::Exponential { width, .. } => *width,
            Profile::Sampled { r, .. } => r[r.len() - 1],
        }
    }

    /// `V̂(k) = (2π)^{−3/2} ∫ V(x) e^{−ik·x} dx`, in closed form for the
    /// built-in profiles and exactly per linear segment for sampled ones.
    pub fn vhat(&self, k: f64) -> f64 {
        let k = k.abs();
        match &self.profile {
            Profile::Gaussian { depth, width } => {
                depth * width.powi(3) / (2.0 * 2f64.sqrt()) * (-(k * width).powi(2) / 4.0).exp()
            }
            Profile::Exponential { depth, width } => {
                depth * 2.0 * 2f64.sqrt() / PI.sqrt() * width.powi(3)
                    / (1.0 + (k * width).powi(2)).powi(2)
            }
            Profile::Sampled { r, v } => sampled_vhat(r, v, k),
        }
    }

    /// `∫ V(x) d³x`.
    pub fn volume_integral(&self) -> f64 {
        (2.0 * PI).powf(1.5) * self.vhat(0.0)
    }

    /// True when `V̂ ≤ 0` on a dense momentum grid and `V̂(0) < 0`.
    pub fn is_fourier_attractive(&self) -> bool {
        let v0 = self.vhat(0.0);
        if v0 >= 0.0 {
            return false;
        }
        let k_max = 60.0 / self.range();
        (0..=2000).all(|i| self.vhat(k_max * i as f64 / 2000.0) <= 1e-14 * v0.abs())
    }
}

fn sampled_vhat(r: &[f64], v: &[f64], k: f64) -> f64 {
    let kernel = |x: f64| {
        if k * x < 1e-4 {
            let kx2 = (k * x).powi(2);
            x * x * (1.0 - kx2 / 6.0 + kx2 * kx2 / 120.0)
        } else {
            x * (k * x).sin() / k
        }
    };
    let mut total = 0.0;
    let mut add_segment = |a: f64, b: f64, va: f64, vb: f64| {
        let n = 8 + (k * (b - a)).ceil() as usize;
        let gl = GaussLegendre::cached(n.next_power_of_two());
        total += gl.integrate(
            |x| {
                let w = (x - a) / (b - a);
                (va + w * (vb - va)) * kernel(x)
            },
            a,
            b,
        );
    };
    if r[0] > 0.0 {
        add_segment(0.0, r[0], v[0], v[0]);
    }
    for i in 0..r.len() - 1 {
        add_segment(r[i], r[i + 1], v[i], v[i + 1]);
    }
    (2.0 / PI).sqrt() * total
}

/// `V̂(k)` by adaptive quadrature of `√(2/π) (1/k) ∫₀^∞ r V(r) sin(kr) dr`,
/// with the `k → 0` limit `√(2/π) ∫₀^∞ r² V(r) dr`.
pub fn vhat_radial(potential: &RadialPotential, k: f64) -> Result<f64> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::param("k", k, "must be finite and >= 0"));
    }
    let end = potential.support_end();
    let mut breaks = vec![0.0];
    if let Profile::Sampled { r, .. } = potential.profile() {
        breaks.extend(r.iter().copied().filter(|&x| x > 0.0));
    } else {
        let panels = ((k * end / PI).ceil() as usize).clamp(4, 4000);
        breaks.extend((1..=panels).map(|i| end * i as f64 / panels as f64));
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let q = integrate_with_breaks(
        |x| {
            let s = if k * x < 1e-8 { x } else { (k * x).sin() / k };
            x * potential.value(x) * s
        },
        &breaks,
        &QuadOptions::with_tol(1e-14, 1e-12),
    )
    .at("spectral", || format!("vhat at k = {k}"))?;
    Ok((2.0 / PI).sqrt() * q.value)
}
