use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::PhysParams;
use crate::toy1d::{solve_gap_1d_with, Toy1dOptions};

use super::energy::{free_energy, Interaction};
use super::grid::{Dimension, MomentumGrid, DEFAULT_NODES};
use super::state::{normal_state, state_from_gap_solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseLabel {
    Superfluid,
    Normal,
    /// Gap-equation solutions exist but none lowers the free energy.
    NormalMetastable,
}

impl PhaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            PhaseLabel::Superfluid => "superfluid",
            PhaseLabel::Normal => "normal",
            PhaseLabel::NormalMetastable => "normal-with-metastable-solutions",
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhaseLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "superfluid" => Ok(PhaseLabel::Superfluid),
            "normal" => Ok(PhaseLabel::Normal),
            "normal-with-metastable-solutions" => Ok(PhaseLabel::NormalMetastable),
            other => Err(Error::InvalidInput(format!(
                "unknown phase label `{other}`"
            ))),
        }
    }
}

/// Outcome of the free-energy comparison at one `(δμ, T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDecision {
    pub label: PhaseLabel,
    pub f_normal: f64,
    /// Lowest free energy among the gap-equation solutions.
    pub f_best: Option<f64>,
    /// Gap values of the solutions, increasing.
    pub roots: Vec<f64>,
    /// Free energy of each solution, in the order of `roots`.
    pub f_solutions: Vec<f64>,
}

/// Normal vs. superfluid for the 1-D contact model by comparing `F_T` of
/// every gap-equation solution with the normal state.
pub fn phase_decision(params: &PhysParams, interaction: &Interaction) -> Result<PhaseDecision> {
    phase_decision_with(params, interaction, &Toy1dOptions::default())
}

/// [`phase_decision`] with explicit solver tolerances.
pub fn phase_decision_with(
    params: &PhysParams,
    interaction: &Interaction,
    opts: &Toy1dOptions,
) -> Result<PhaseDecision> {
    let Interaction::Contact1D { g } = interaction else {
        return Err(Error::InvalidInput(
            "phase decision is implemented for the one-dimensional contact interaction".into(),
        ));
    };
    params.require_positive_temperature()?;
    let params = params.with_coupling(*g)?;
    let grid = MomentumGrid::for_params(&params, Dimension::One, DEFAULT_NODES)?;
    let f_normal = free_energy(&normal_state(&params, &grid)?, &params, interaction)?;
    let solutions = solve_gap_1d_with(&params, opts)?;
    let mut f_solutions = Vec::with_capacity(solutions.count());
    for &delta in &solutions.roots {
        let state = state_from_gap_solution(delta, &params, &grid)?;
        f_solutions.push(free_energy(&state, &params, interaction)?);
    }
    let f_best = f_solutions.iter().copied().reduce(f64::min);
    let margin = 1e-12 * f_normal.abs().max(params.temperature());
    let label = match f_best {
        None => PhaseLabel::Normal,
        Some(f) if f < f_normal - margin => PhaseLabel::Superfluid,
        Some(_) => PhaseLabel::NormalMetastable,
    };
    Ok(PhaseDecision {
        label,
        f_normal,
        f_best,
        roots: solutions.roots,
        f_solutions,
    })
}
