use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::{k_delta, PhysParams};
use crate::numerics::GaussLegendre;
use crate::spectral::RadialPotential;

use super::grid::{Dimension, MomentumGrid};
use super::state::{dispersion, BCSState};

/// Pair interaction entering the functional.
#[derive(Debug, Clone, PartialEq)]
pub enum Interaction {
    /// `V(x) = −g δ(x)` on the line.
    Contact1D { g: f64 },
    /// `λ V(|x|)` in three dimensions; the position-space transforms make
    /// this path considerably slower and it is less tested than the contact case.
    Radial {
        potential: RadialPotential,
        lambda: f64,
    },
    /// No interaction.
    Free,
}

impl Interaction {
    fn check(&self, grid: &MomentumGrid) -> Result<()> {
        match (self, grid.dim()) {
            (Interaction::Contact1D { g }, Dimension::One) => {
                if g.is_finite() && *g > 0.0 {
                    Ok(())
                } else {
                    Err(Error::param("g", *g, "must be finite and > 0"))
                }
            }
            (Interaction::Radial { lambda, .. }, Dimension::Three) => {
                if lambda.is_finite() {
                    Ok(())
                } else {
                    Err(Error::param("lambda", *lambda, "must be finite"))
                }
            }
            (Interaction::Free, _) => Ok(()),
            _ => Err(Error::InvalidInput(
                "interaction does not match the grid dimension".into(),
            )),
        }
    }
}

const RADIAL_NODES: usize = 256;

fn radial_nodes(potential: &RadialPotential) -> Vec<(f64, f64)> {
    let end = potential.support_end();
    let gl = GaussLegendre::cached(RADIAL_NODES / 8);
    (0..8)
        .flat_map(|k| {
            let (a, b) = (end * k as f64 / 8.0, end * (k + 1) as f64 / 8.0);
            gl.mapped(a, b).collect::<Vec<_>>()
        })
        .collect()
}

/// `α(r) = √(2/π) ∫ p² α̂(p) sin(pr)/(pr) dp` on the radial quadrature nodes.
fn alpha_position(grid: &MomentumGrid, alpha_hat: &[f64], rs: &[(f64, f64)]) -> Vec<f64> {
    rs.iter()
        .map(|&(r, _)| {
            let s: f64 = grid
                .nodes()
                .iter()
                .zip(grid.weights())
                .zip(alpha_hat)
                .map(|((&p, &w), &a)| {
                    let x = p * r;
                    let sinc = if x < 1e-8 { 1.0 } else { x.sin() / x };
                    w * a * sinc
                })
                .sum();
            s / (2.0 * PI).powf(1.5)
        })
        .collect()
}

/// `(V̂ ∗ α̂)(p_i)`, the kernel of `∫ V α g dx = ∫ (V̂ ∗ α̂) ĝ dp`.
pub fn interaction_convolution(
    alpha_hat: &[f64],
    grid: &MomentumGrid,
    interaction: &Interaction,
) -> Result<Vec<f64>> {
    interaction.check(grid)?;
    Ok(match interaction {
        Interaction::Free => vec![0.0; grid.len()],
        Interaction::Contact1D { g } => vec![-g / (2.0 * PI) * grid.sum(alpha_hat); grid.len()],
        Interaction::Radial { potential, lambda } => {
            let rs = radial_nodes(potential);
            let alpha = alpha_position(grid, alpha_hat, &rs);
            grid.nodes()
                .iter()
                .map(|&p| {
                    let s: f64 = rs
                        .iter()
                        .zip(&alpha)
                        .map(|(&(r, w), &a)| {
                            let x = p * r;
                            let sinc = if x < 1e-8 { 1.0 } else { x.sin() / x };
                            w * 4.0 * PI * r * r * potential.value(r) * a * sinc
                        })
                        .sum();
                    lambda * s / (2.0 * PI).powf(1.5)
                })
                .collect()
        }
    })
}

/// `∫ |α(x)|² V(x) dx` (including the coupling).
fn interaction_energy(
    alpha_hat: &[f64],
    grid: &MomentumGrid,
    interaction: &Interaction,
) -> Result<f64> {
    interaction.check(grid)?;
    Ok(match interaction {
        Interaction::Free => 0.0,
        Interaction::Contact1D { g } => {
            let a0 = grid.sum(alpha_hat) / (2.0 * PI).sqrt();
            -g * a0 * a0
        }
        Interaction::Radial { potential, lambda } => {
            let rs = radial_nodes(potential);
            let alpha = alpha_position(grid, alpha_hat, &rs);
            lambda
                * rs.iter()
                    .zip(&alpha)
                    .map(|(&(r, w), &a)| w * 4.0 * PI * r * r * potential.value(r) * a * a)
                    .sum::<f64>()
        }
    })
}

/// `F_T = ½∫(p²−μ₊)γ₊ + ½∫(p²−μ₋)γ₋ + ∫|α|²V − (T/2) S`.
pub fn free_energy(
    state: &BCSState,
    params: &PhysParams,
    interaction: &Interaction,
) -> Result<f64> {
    let grid = state.grid();
    let (mu, dmu) = (params.mu_bar(), params.delta_mu());
    let kinetic: f64 = grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .zip(state.gamma_plus().iter().zip(state.gamma_minus()))
        .map(|((&p, &w), (&gp, &gm))| {
            let t = dispersion(p, mu);
            0.5 * w * ((t - dmu) * gp + (t + dmu) * gm)
        })
        .sum();
    let pair = interaction_energy(state.alpha_hat(), grid, interaction)?;
    Ok(kinetic + pair - 0.5 * params.temperature() * state.entropy())
}

/// `f_r(w) + f_s(w)` with `f_a(b) = (1/b) ln((a+b)/(a−b))` from the stored eigenvalues.
fn f_sum(e: &[f64; 4], l: &[f64; 4]) -> f64 {
    let [rp, rm, sp, sm] = *e;
    let w = 0.5 * (rp - rm).max(sp - sm);
    let (r, s) = (0.5 * (rp + rm), 0.5 * (sp + sm));
    let small = |a: f64| w < 1e-6 * a;
    let part = |a: f64, log_hi: f64, log_lo: f64| {
        if small(a) {
            let q = w / a;
            2.0 / a * (1.0 + q * q / 3.0 + q.powi(4) / 5.0)
        } else {
            (log_hi - log_lo) / w
        }
    };
    part(r, l[0], l[1]) + part(s, l[2], l[3])
}

/// Largest Euler–Lagrange residual over the grid.
///
/// The three conditions at each node are
/// `(V̂∗α̂) + (T/4) α̂ (f_r + f_s) = 0`,
/// `δμ − (T/2) ln((r²−w²)/(s²−w²)) = 0` and
/// `(p² − μ̄) − (T/4)(1 − γ₊ − γ₋)(f_r + f_s) = 0`;
/// each is divided by the local energy scale `|p² − μ̄| + δμ + T + |V̂∗α̂|`.
pub fn stationarity_residual(
    state: &BCSState,
    params: &PhysParams,
    interaction: &Interaction,
) -> Result<f64> {
    params.require_positive_temperature()?;
    let grid = state.grid();
    let conv = interaction_convolution(state.alpha_hat(), grid, interaction)?;
    let temp = params.temperature();
    let (mu, dmu) = (params.mu_bar(), params.delta_mu());
    let mut worst: f64 = 0.0;
    for i in 0..grid.len() {
        let e = &state.eigenvalues()[i];
        let l = &state.log_eigenvalues()[i];
        if l.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "state touches the boundary of the admissible set at p = {}",
                grid.nodes()[i]
            )));
        }
        let fs = f_sum(e, l);
        let t = dispersion(grid.nodes()[i], mu);
        let d = 1.0 - state.gamma_plus()[i] - state.gamma_minus()[i];
        let a = state.alpha_hat()[i];
        let r1 = conv[i] + 0.25 * temp * a * fs;
        let r2 = dmu - 0.5 * temp * (l[0] + l[1] - l[2] - l[3]);
        let r3 = t - 0.25 * temp * d * fs;
        let scale = t.abs() + dmu + temp + conv[i].abs();
        worst = worst.max(r1.abs().max(r2.abs()).max(r3.abs()) / scale);
    }
    Ok(worst)
}

/// Central difference `(F(x + εd) − F(x − εd)) / 2ε` along `d = (dγ₊, dγ₋, dα̂)`.
pub fn fd_directional_derivative(
    state: &BCSState,
    params: &PhysParams,
    interaction: &Interaction,
    direction: (&[f64], &[f64], &[f64]),
    eps: f64,
) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::param("eps", eps, "must be finite and > 0"));
    }
    let (dp, dm, da) = direction;
    let plus = state.displaced(eps, dp, dm, da)?;
    let minus = state.displaced(-eps, dp, dm, da)?;
    Ok(
        (free_energy(&plus, params, interaction)? - free_energy(&minus, params, interaction)?)
            / (2.0 * eps),
    )
}

/// Scales raw weights `ξ ∈ [−1, 1]` by the smallest eigenvalue of `Γ` at each
/// node, so that `x ± εd` stays admissible for `ε ≤ 1/2`.
pub fn admissible_direction(
    state: &BCSState,
    xi: (&[f64], &[f64], &[f64]),
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let room: Vec<f64> = state
        .eigenvalues()
        .iter()
        .map(|e| {
            let m = 0.25 * e.iter().copied().fold(1.0, f64::min);
            if m < 1e-250 {
                0.0
            } else {
                m
            }
        })
        .collect();
    let scale = |x: &[f64]| {
        x.iter()
            .zip(&room)
            .map(|(a, r)| a.clamp(-1.0, 1.0) * r)
            .collect()
    };
    (scale(xi.0), scale(xi.1), scale(xi.2))
}

/// `2∫K⁰|ĝ|² dp + 2∫|g(x)|² V dx` for a test profile `ĝ` on the grid; a
/// negative value shows the normal state is not a local minimum.
pub fn second_variation_normal(
    test_profile: &[f64],
    grid: &MomentumGrid,
    params: &PhysParams,
    interaction: &Interaction,
) -> Result<f64> {
    params.require_positive_temperature()?;
    if test_profile.len() != grid.len() {
        return Err(Error::InvalidInput(
            "test profile must match the grid length".into(),
        ));
    }
    let mut kinetic = 0.0;
    for ((&p, &w), &g) in grid.nodes().iter().zip(grid.weights()).zip(test_profile) {
        kinetic += w * k_delta(dispersion(p, params.mu_bar()), 0.0, params)? * g * g;
    }
    let pair = interaction_energy(test_profile, grid, interaction)?;
    Ok(2.0 * kinetic + 2.0 * pair)
}
