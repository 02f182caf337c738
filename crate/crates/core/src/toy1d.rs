//! One-dimensional contact-interaction model: the gap integral, its roots in
//! Δ and the phase boundaries in the `(δμ, T)` plane.

use rayon::prelude::*;

use crate::error::{Context, Error, NumericalFailure, Result};
use crate::kappa::Kind;
use crate::kernel::{b_of_c, inverse_kernel_reduced, PhysParams, MONOTONE_THRESHOLD};
use crate::numerics::{
    bisect, integrate, integrate_with_breaks, logspace, try_golden_min, QuadOptions,
};

/// Roots closer than this multiple of `μ̄` are one (tangent) root.
pub const ROOT_MERGE_TOL: f64 = 1e-6;
/// Relative accuracy every returned root is certified to.
pub const ROOT_CERT_TOL: f64 = 1e-8;

const DEFAULT_QUAD_TOL: f64 = 1e-12;
const SCAN_POINTS: usize = 400;
const SCAN_RANGE: (f64, f64) = (1e-8, 1e4);
const T_SCAN_POINTS: usize = 80;
const T_SCAN_RANGE: (f64, f64) = (1e-4, 4.0);

#[derive(Debug, Clone, Copy)]
enum Shape {
    Gapped(f64),
    Tilde(f64),
}

/// Tolerances of the 1-D solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Toy1dOptions {
    /// Relative tolerance of the momentum quadrature.
    pub quad_rel_tol: f64,
    /// Relative residual every root must satisfy.
    pub root_rel_tol: f64,
}

impl Default for Toy1dOptions {
    fn default() -> Self {
        Toy1dOptions {
            quad_rel_tol: 1e-12,
            root_rel_tol: ROOT_CERT_TOL,
        }
    }
}

impl Toy1dOptions {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("quad_rel_tol", self.quad_rel_tol),
            ("root_rel_tol", self.root_rel_tol),
        ] {
            if !(v > 0.0 && v <= 1e-2) {
                return Err(Error::param(name, v, "must lie in (0, 1e-2]"));
            }
        }
        Ok(())
    }
}

/// `(1/π) ∫₀^∞ dp T/K(p)` divided by `T` for the given kernel shape.
fn integral(shape: Shape, params: &PhysParams, rel_tol: f64) -> Result<f64, NumericalFailure> {
    let opts = QuadOptions::with_tol(1e-300, rel_tol);
    let mu = params.mu_bar();
    let temp = params.temperature();
    let dmu = params.delta_mu();
    let c = dmu / temp;
    let delta = match shape {
        Shape::Gapped(d) => d,
        Shape::Tilde(_) => 0.0,
    };
    let inv_k = |t: f64| -> f64 {
        match shape {
            Shape::Gapped(d) => {
                let e = t.hypot(d);
                inverse_kernel_reduced(e / temp, c) / temp
            }
            Shape::Tilde(b) => inverse_kernel_reduced((t.abs() / temp).max(b), c) / temp,
        }
    };
    let scale = temp.max(delta).max(dmu);
    let p_max = (mu + 60.0 * scale).sqrt();
    let mut breaks = vec![0.0, p_max];
    let mut ts = vec![0.0, dmu, -dmu, delta, -delta];
    for m in [1.0, 4.0, 16.0] {
        ts.push(m * temp);
        ts.push(-m * temp);
    }
    if let Shape::Tilde(b) = shape {
        ts.push(b * temp);
        ts.push(-b * temp);
    }
    for t in ts {
        let p2 = mu + t;
        if p2 > 0.0 {
            let p = p2.sqrt();
            if p < p_max {
                breaks.push(p);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let body = integrate_with_breaks(|p| inv_k(p * p - mu), &breaks, &opts)?.value;
    // p = P/s on [P, ∞); T/K is evaluated through the exact kernel with the
    // s² factor absorbed so that the s → 0 end stays finite.
    let tail = integrate(
        |s| {
            let p = p_max / s;
            p_max / (s * s) * inv_k(p * p - mu)
        },
        0.0,
        1.0,
        &opts,
    )?
    .value;
    Ok((body + tail) / std::f64::consts::PI)
}

fn require_positive(params: &PhysParams) -> Result<()> {
    if params.mu_bar() <= 0.0 {
        return Err(Error::param("mu_bar", params.mu_bar(), "must be > 0"));
    }
    if params.temperature() <= 0.0 {
        return Err(Error::param("T", params.temperature(), "must be > 0"));
    }
    Ok(())
}

fn point(params: &PhysParams) -> String {
    format!(
        "mu_bar = {}, delta_mu = {}, T = {}",
        params.mu_bar(),
        params.delta_mu(),
        params.temperature()
    )
}

/// `(1/2π) ∫_ℝ dp / K^Δ(p)` with the dispersion `p² − μ̄`.
pub fn gap_integral_1d(delta: f64, params: &PhysParams) -> Result<f64> {
    require_positive(params)?;
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::param("Delta", delta, "must be finite and >= 0"));
    }
    integral(Shape::Gapped(delta), params, DEFAULT_QUAD_TOL)
        .at("toy1d", || format!("Delta = {delta}, {}", point(params)))
}

/// `(1/2π) ∫_ℝ dp / K̃(p)`, the upper envelope `≥ sup_Δ` of the gap integral.
pub fn gap_integral_1d_tilde(params: &PhysParams) -> Result<f64> {
    require_positive(params)?;
    let b = b_of_c(params.delta_mu() / params.temperature())?;
    integral(Shape::Tilde(b), params, DEFAULT_QUAD_TOL)
        .at("toy1d", || format!("K-tilde, {}", point(params)))
}

/// Maximum of the gap integral over `Δ ≥ 0` and its maximizer.
pub fn gap_integral_1d_max(params: &PhysParams) -> Result<(f64, f64)> {
    require_positive(params)?;
    let j0 = gap_integral_1d(0.0, params)?;
    let c = params.delta_mu() / params.temperature();
    if c <= MONOTONE_THRESHOLD {
        return Ok((0.0, j0));
    }
    let temp = params.temperature();
    let hi = 4.0 * (params.delta_mu() + temp);
    let grid = logspace(1e-3 * temp, hi, 60);
    let mut best = (0.0, j0);
    let mut best_index = None;
    for (i, &d) in grid.iter().enumerate() {
        let v = gap_integral_1d(d, params)?;
        if v > best.1 {
            best = (d, v);
            best_index = Some(i);
        }
    }
    let Some(k) = best_index else {
        return Ok(best);
    };
    let lo = grid[k.saturating_sub(1)].ln();
    let up = grid[(k + 1).min(grid.len() - 1)].ln();
    let (x, neg) = try_golden_min(
        |x: f64| gap_integral_1d(x.exp(), params).map(|v| -v),
        lo,
        up,
        1e-9,
    )?;
    if -neg > best.1 {
        best = (x.exp(), -neg);
    }
    Ok(best)
}

/// All positive solutions of the 1-D gap equation at one `(δμ, T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSolutionSet {
    pub params: PhysParams,
    /// Strictly increasing.
    pub roots: Vec<f64>,
}

impl GapSolutionSet {
    pub fn count(&self) -> usize {
        self.roots.len()
    }
}

/// Finds every `Δ > 0` with `gap_integral_1d(Δ) = 1/g`.
///
/// Scans `Δ/μ̄` over `10^[−8, 4]` and bisects each sign change. More than two
/// roots is reported as an anomaly.
pub fn solve_gap_1d(params: &PhysParams) -> Result<GapSolutionSet> {
    solve_gap_1d_with(params, &Toy1dOptions::default())
}

/// [`solve_gap_1d`] with explicit tolerances.
pub fn solve_gap_1d_with(params: &PhysParams, opts: &Toy1dOptions) -> Result<GapSolutionSet> {
    opts.validate()?;
    require_positive(params)?;
    let mu = params.mu_bar();
    let target = 1.0 / params.coupling();
    let h = |d: f64| integral(Shape::Gapped(d), params, opts.quad_rel_tol).map(|v| v - target);
    let grid = logspace(SCAN_RANGE.0, SCAN_RANGE.1, SCAN_POINTS);
    let mut values = Vec::with_capacity(grid.len());
    for &x in &grid {
        values.push(h(x * mu).at("toy1d", || format!("Delta = {}, {}", x * mu, point(params)))?);
    }
    let mut roots: Vec<f64> = Vec::new();
    for i in 0..grid.len() - 1 {
        let (a, b) = (grid[i] * mu, grid[i + 1] * mu);
        let root = if values[i] == 0.0 {
            a
        } else if values[i].signum() != values[i + 1].signum() && values[i + 1] != 0.0 {
            bisect(h, a, b, 0.0, 1e-14).at("toy1d", || point(params))?
        } else {
            continue;
        };
        if roots
            .last()
            .map_or(true, |&r| root - r > ROOT_MERGE_TOL * mu)
        {
            roots.push(root);
        }
    }
    if let Some(&last) = values.last() {
        if last == 0.0 {
            roots.push(grid[grid.len() - 1] * mu);
        }
    }
    for &r in &roots {
        let residual = h(r).at("toy1d", || point(params))?;
        if residual.abs() > opts.root_rel_tol * target {
            return Err(Error::Anomaly {
                module: "toy1d",
                point: point(params),
                detail: format!("root Delta = {r:e} fails certification (residual {residual:e})"),
            });
        }
    }
    if roots.len() > 2 {
        return Err(Error::Anomaly {
            module: "toy1d",
            point: point(params),
            detail: format!(
                "{} gap-equation solutions found (at most two expected)",
                roots.len()
            ),
        });
    }
    Ok(GapSolutionSet {
        params: *params,
        roots,
    })
}

/// One `δμ` sample of a 1-D phase boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve1dPoint {
    pub delta_mu: f64,
    /// Largest root in `T`; `None` when the scan found no bracket.
    pub temperature: Option<f64>,
    /// Further roots in `T`, in decreasing order.
    pub extra_roots: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve1d {
    pub kind: Kind,
    pub coupling: f64,
    pub mu_bar: f64,
    pub points: Vec<Curve1dPoint>,
}

impl Curve1d {
    /// `δμ` values at which the curve terminated.
    pub fn terminated(&self) -> Vec<f64> {
        self.points
            .iter()
            .filter(|p| p.temperature.is_none())
            .map(|p| p.delta_mu)
            .collect()
    }

    /// Boundary temperature at a `δμ` on the grid.
    pub fn temperature_at(&self, delta_mu: f64) -> Option<f64> {
        self.points
            .iter()
            .find(|p| p.delta_mu == delta_mu)
            .and_then(|p| p.temperature)
    }
}

/// The value whose crossing with `1/g` defines a curve of the given kind:
/// `Δ = 0` for `i`, `max_Δ` for `g`, the `K̃` envelope for `o`.
pub fn boundary_integral(kind: Kind, params: &PhysParams) -> Result<f64> {
    match kind {
        Kind::I => gap_integral_1d(0.0, params),
        Kind::G => Ok(gap_integral_1d_max(params)?.1),
        Kind::O => gap_integral_1d_tilde(params),
    }
}

fn curve_point(kind: Kind, coupling: f64, mu_bar: f64, delta_mu: f64) -> Result<Curve1dPoint> {
    let target = 1.0 / coupling;
    let base = PhysParams::new(mu_bar, delta_mu, mu_bar, coupling)?;
    let h = |temp: f64| -> Result<f64> {
        boundary_integral(kind, &base.with_temperature(temp)?).map(|v| v - target)
    };
    let ts = logspace(
        T_SCAN_RANGE.0 * mu_bar,
        T_SCAN_RANGE.1 * mu_bar,
        T_SCAN_POINTS,
    );
    let values = ts.iter().map(|&t| h(t)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    for i in (0..ts.len() - 1).rev() {
        if values[i].signum() == values[i + 1].signum() {
            continue;
        }
        let mut err = None;
        let r = bisect(
            |t| match h(t) {
                Ok(v) => Ok(v),
                Err(e) => {
                    err = Some(e);
                    Err(NumericalFailure::Other("gap integral failed".into()))
                }
            },
            ts[i],
            ts[i + 1],
            0.0,
            1e-12,
        );
        if let Some(e) = err {
            return Err(e);
        }
        roots.push(r.at("toy1d", || format!("curve {kind}, delta_mu = {delta_mu}"))?);
    }
    let mut it = roots.into_iter();
    Ok(Curve1dPoint {
        delta_mu,
        temperature: it.next(),
        extra_roots: it.collect(),
    })
}

/// Phase boundary in `T` for each `δμ` on the grid.
///
/// Kind `i` solves `(1/2π)∫dp/K⁰ = 1/g`, kind `g` solves
/// `max_Δ (1/2π)∫dp/K^Δ = 1/g` and kind `o` uses `K̃`. The temperature scan
/// covers `[10⁻⁴, 4]·μ̄`; the largest root is the curve point.
pub fn curve_1d(coupling: f64, mu_bar: f64, delta_grid: &[f64], kind: Kind) -> Result<Curve1d> {
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(Error::param("g", coupling, "must be finite and > 0"));
    }
    if !(mu_bar > 0.0 && mu_bar.is_finite()) {
        return Err(Error::param("mu_bar", mu_bar, "must be finite and > 0"));
    }
    let points = delta_grid
        .par_iter()
        .map(|&dmu| curve_point(kind, coupling, mu_bar, dmu))
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve1d {
        kind,
        coupling,
        mu_bar,
        points,
    })
}
