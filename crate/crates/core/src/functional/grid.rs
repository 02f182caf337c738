use crate::error::{Error, Result};
use crate::kernel::PhysParams;
use crate::numerics::GaussLegendre;

/// Measure the momentum grid integrates against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// `∫_ℝ dp` of an even function, folded onto `p ≥ 0`.
    One,
    /// `∫_{ℝ³} d³p` of a radial function, weight `4πp²`.
    Three,
}

/// Default node count of [`MomentumGrid::for_params`].
pub const DEFAULT_NODES: usize = 2000;

/// Increasing momentum magnitudes with quadrature weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    dim: Dimension,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl MomentumGrid {
    /// Wraps explicit nodes and weights (weights include the measure).
    pub fn from_parts(dim: Dimension, nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidInput(
                "grid needs equally many nodes and weights".into(),
            ));
        }
        if nodes.iter().chain(&weights).any(|x| !x.is_finite())
            || nodes[0] < 0.0
            || weights.iter().any(|&w| w < 0.0)
        {
            return Err(Error::InvalidInput(
                "grid nodes must be finite and >= 0 with finite non-negative weights".into(),
            ));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "grid nodes must be strictly increasing".into(),
            ));
        }
        Ok(MomentumGrid {
            dim,
            nodes,
            weights,
        })
    }

    /// Gauss–Legendre panels clustered at the Fermi momentum.
    ///
    /// Panel edges sit at `p² − μ̄ = ±T·2^k` and `±δμ`, the finite part ends at
    /// `p_max² = μ̄ + 200T` and `[p_max, ∞)` is covered through `p = p_max/s`.
    pub fn for_params(params: &PhysParams, dim: Dimension, target_nodes: usize) -> Result<Self> {
        params.require_positive_temperature()?;
        if target_nodes < 64 {
            return Err(Error::InvalidInput("grid needs at least 64 nodes".into()));
        }
        let mu = params.mu_bar();
        let temp = params.temperature();
        let t_max = 200.0 * temp;
        let p_max = (mu + t_max).max(4.0 * temp).sqrt();
        let mut ts = vec![0.0, params.delta_mu(), -params.delta_mu()];
        let mut scale = temp * 2f64.powi(-20);
        while scale < t_max.max(mu.abs()) {
            ts.push(scale);
            ts.push(-scale);
            scale *= 2.0;
        }
        let mut edges = vec![0.0, p_max];
        for t in ts {
            let p2 = mu + t;
            if p2 > 0.0 && p2 < p_max * p_max {
                edges.push(p2.sqrt());
            }
        }
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1e-300));
        // Tail panels in s on [2^{-j-1}, 2^{-j}] and a last one down to 0.
        let tail_edges: Vec<f64> = (0..=12).map(|j| 2f64.powi(-j)).chain([0.0]).collect();
        let panels = edges.len() - 1 + tail_edges.len() - 1;
        let per_panel = (target_nodes / panels).max(8);
        let gl = GaussLegendre::cached(per_panel);

        let mut nodes = Vec::with_capacity(panels * per_panel);
        let mut weights = Vec::with_capacity(panels * per_panel);
        for w in edges.windows(2) {
            for (x, wt) in gl.mapped(w[0], w[1]) {
                nodes.push(x);
                weights.push(wt);
            }
        }
        let mut tail: Vec<(f64, f64)> = Vec::new();
        for w in tail_edges.windows(2) {
            for (s, wt) in gl.mapped(w[1], w[0]) {
                tail.push((p_max / s, wt * p_max / (s * s)));
            }
        }
        tail.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (p, wt) in tail {
            nodes.push(p);
            weights.push(wt);
        }
        for (p, wt) in nodes.iter().zip(weights.iter_mut()) {
            *wt *= match dim {
                Dimension::One => 2.0,
                Dimension::Three => 4.0 * std::f64::consts::PI * p * p,
            };
        }
        Self::from_parts(dim, nodes, weights)
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(p_i)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&p, &w)| w * f(p))
            .sum()
    }

    /// `Σ w_i v_i`.
    pub fn sum(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }
}
