use crate::error::{Error, Result};
use crate::kernel::PhysParams;
use crate::numerics::{fermi, softplus};

use super::grid::MomentumGrid;

const ADMISSIBLE_SLACK: f64 = 1e-14;

/// Translation-invariant BCS state sampled on a momentum grid.
///
/// Besides `γ±` and `α̂` the state keeps the eigenvalues `r ± w`, `s ± w` of
/// `Γ(p)` at each node. States built from a gap solution store them in closed
/// form, which keeps exponentially small eigenvalues accurate.
#[derive(Debug, Clone, PartialEq)]
pub struct BCSState {
    grid: MomentumGrid,
    gamma_plus: Vec<f64>,
    gamma_minus: Vec<f64>,
    alpha_hat: Vec<f64>,
    eig: Vec<[f64; 4]>,
    log_eig: Vec<[f64; 4]>,
}

/// Eigenvalues `[r + w, r − w, s + w, s − w]` of `Γ` at one node.
pub fn gamma_eigenvalues(gp: f64, gm: f64, a: f64) -> [f64; 4] {
    let r = 0.5 * (1.0 + gp - gm);
    let s = 0.5 * (1.0 - gp + gm);
    let w = 0.5 * (1.0 - gp - gm).hypot(2.0 * a);
    let (rp, sp) = (r + w, s + w);
    let rm = if rp > 0.0 {
        (gp * (1.0 - gm) - a * a) / rp
    } else {
        0.0
    };
    let sm = if sp > 0.0 {
        (gm * (1.0 - gp) - a * a) / sp
    } else {
        0.0
    };
    [rp, rm, sp, sm]
}

impl BCSState {
    /// Validates `0 ≤ Γ ≤ 1` at every node.
    pub fn new(
        grid: MomentumGrid,
        gamma_plus: Vec<f64>,
        gamma_minus: Vec<f64>,
        alpha_hat: Vec<f64>,
    ) -> Result<Self> {
        let n = grid.len();
        if gamma_plus.len() != n || gamma_minus.len() != n || alpha_hat.len() != n {
            return Err(Error::InvalidInput(format!(
                "state arrays must match the grid length {n}"
            )));
        }
        let eig: Vec<[f64; 4]> = (0..n)
            .map(|i| gamma_eigenvalues(gamma_plus[i], gamma_minus[i], alpha_hat[i]))
            .collect();
        let log_eig = eig.iter().map(|e| e.map(|x| x.max(0.0).ln())).collect();
        Self::checked(grid, gamma_plus, gamma_minus, alpha_hat, eig, log_eig)
    }

    fn checked(
        grid: MomentumGrid,
        gamma_plus: Vec<f64>,
        gamma_minus: Vec<f64>,
        alpha_hat: Vec<f64>,
        mut eig: Vec<[f64; 4]>,
        log_eig: Vec<[f64; 4]>,
    ) -> Result<Self> {
        for i in 0..grid.len() {
            let (gp, gm, a) = (gamma_plus[i], gamma_minus[i], alpha_hat[i]);
            let bad = |x: f64| {
                !x.is_finite() || !(-ADMISSIBLE_SLACK..=1.0 + ADMISSIBLE_SLACK).contains(&x)
            };
            if bad(gp) || bad(gm) || !a.is_finite() || eig[i].iter().any(|&e| bad(e)) {
                return Err(Error::InvalidInput(format!(
                    "inadmissible state at p = {}: gamma+ = {gp}, gamma- = {gm}, alpha = {a}",
                    grid.nodes()[i]
                )));
            }
            for e in &mut eig[i] {
                *e = e.clamp(0.0, 1.0);
            }
        }
        Ok(BCSState {
            grid,
            gamma_plus,
            gamma_minus,
            alpha_hat,
            eig,
            log_eig,
        })
    }

    pub fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    pub fn gamma_plus(&self) -> &[f64] {
        &self.gamma_plus
    }

    pub fn gamma_minus(&self) -> &[f64] {
        &self.gamma_minus
    }

    pub fn alpha_hat(&self) -> &[f64] {
        &self.alpha_hat
    }

    /// `[r + w, r − w, s + w, s − w]` per node.
    pub fn eigenvalues(&self) -> &[[f64; 4]] {
        &self.eig
    }

    /// Natural logarithms of [`eigenvalues`](Self::eigenvalues); `−∞` marks a
    /// node on the boundary of the admissible set.
    pub fn log_eigenvalues(&self) -> &[[f64; 4]] {
        &self.log_eig
    }

    /// Entropy density `−Tr Γ ln Γ` at each node.
    pub fn entropy_density(&self) -> Vec<f64> {
        self.eig
            .iter()
            .zip(&self.log_eig)
            .map(|(e, l)| {
                -e.iter()
                    .zip(l)
                    .map(|(&x, &lx)| {
                        if x > 0.0 && lx.is_finite() {
                            x * lx
                        } else {
                            0.0
                        }
                    })
                    .sum::<f64>()
            })
            .collect()
    }

    /// `S = −∫ Tr Γ ln Γ dp`.
    pub fn entropy(&self) -> f64 {
        self.grid.sum(&self.entropy_density())
    }

    /// The state displaced by `eps` along `(dγ₊, dγ₋, dα̂)`. Nodes the
    /// direction leaves untouched keep their stored eigenvalues.
    pub fn displaced(
        &self,
        eps: f64,
        d_plus: &[f64],
        d_minus: &[f64],
        d_alpha: &[f64],
    ) -> Result<Self> {
        let n = self.grid.len();
        if d_plus.len() != n || d_minus.len() != n || d_alpha.len() != n {
            return Err(Error::InvalidInput(format!(
                "direction arrays must match the grid length {n}"
            )));
        }
        let mut gp = self.gamma_plus.clone();
        let mut gm = self.gamma_minus.clone();
        let mut al = self.alpha_hat.clone();
        let mut eig = self.eig.clone();
        let mut log_eig = self.log_eig.clone();
        for i in 0..n {
            if d_plus[i] == 0.0 && d_minus[i] == 0.0 && d_alpha[i] == 0.0 {
                continue;
            }
            gp[i] += eps * d_plus[i];
            gm[i] += eps * d_minus[i];
            al[i] += eps * d_alpha[i];
            eig[i] = gamma_eigenvalues(gp[i], gm[i], al[i]);
            log_eig[i] = eig[i].map(|x| x.max(0.0).ln());
        }
        Self::checked(self.grid.clone(), gp, gm, al, eig, log_eig)
    }
}

/// `γ±⁰(p) = [e^{(p² − μ̄ ∓ δμ)/T} + 1]^{−1}`, `α̂ = 0`.
pub fn normal_state(params: &PhysParams, grid: &MomentumGrid) -> Result<BCSState> {
    params.require_positive_temperature()?;
    state_with_gap(0.0, params, grid)
}

/// Reconstructs the state belonging to a constant gap `Δ`.
///
/// With `E = √((p²−μ̄)² + Δ²)`, `a = (E+δμ)/T` and `b = (E−δμ)/T` the
/// stationarity relations give `r + w = 1 − n(a)`, `s − w = n(a)`,
/// `s + w = 1 − n(b)`, `r − w = n(b)` with `n` the Fermi function, hence
/// `w = Υ(E)/2` and `α̂ = Δw/E`; `γ₊ + γ₋` then follows from the relation
/// between `p² − μ̄` and `1 − γ₊ − γ₋`.
pub fn state_from_gap_solution(
    delta: f64,
    params: &PhysParams,
    grid: &MomentumGrid,
) -> Result<BCSState> {
    params.require_positive_temperature()?;
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::param("Delta", delta, "must be finite and >= 0"));
    }
    state_with_gap(delta, params, grid)
}

/// `p² − μ̄`, factored near the Fermi momentum.
pub(crate) fn dispersion(p: f64, mu: f64) -> f64 {
    if mu > 0.0 {
        let kf = mu.sqrt();
        (p - kf) * (p + kf)
    } else {
        p * p - mu
    }
}

fn state_with_gap(delta: f64, params: &PhysParams, grid: &MomentumGrid) -> Result<BCSState> {
    let temp = params.temperature();
    let dmu = params.delta_mu();
    let mu = params.mu_bar();
    let n = grid.len();
    let (mut gp, mut gm, mut al) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    let mut eig = Vec::with_capacity(n);
    let mut log_eig = Vec::with_capacity(n);
    for &p in grid.nodes() {
        let t = dispersion(p, mu);
        let e = t.hypot(delta);
        let na = fermi((e + dmu) / temp);
        let nb = fermi((e - dmu) / temp);
        let w = 0.5 * ((1.0 - na) - nb);
        // 1 − cos θ with cos θ = t/E, free of cancellation on either side.
        let (one_minus_cos, cos) = if e == 0.0 {
            (1.0, 0.0)
        } else if t >= 0.0 {
            (delta * delta / (e * (e + t)), t / e)
        } else {
            (1.0 - t / e, t / e)
        };
        let sum = one_minus_cos + (na + nb) * cos;
        gp.push(0.5 * (sum + (nb - na)));
        gm.push(0.5 * (sum - (nb - na)));
        al.push(if e == 0.0 { 0.0 } else { delta * w / e });
        eig.push([1.0 - na, nb, 1.0 - nb, na]);
        let (xa, xb) = ((e + dmu) / temp, (e - dmu) / temp);
        log_eig.push([-softplus(-xa), -softplus(xb), -softplus(-xb), -softplus(xa)]);
    }
    BCSState::checked(grid.clone(), gp, gm, al, eig, log_eig)
}
