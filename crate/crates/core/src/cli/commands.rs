use std::path::Path;

use rayon::prelude::*;

use super::args::{
    Command, CurvesArgs, KappaArgs, MCheckArgs, PhaseArgs, PotentialArgs, PotentialName,
    SolverTolerances, SpectrumArgs, Toy1dArgs,
};
use super::config::{check_tolerance, parse_list, parse_names, GridSpec};
use super::output::{Cell, Table};
use super::{CliError, Outputs};
use crate::error::{Error, Result};
use crate::functional::{phase_decision_with, Interaction};
use crate::kappa::{kappa_g, kappa_i, kappa_o, Kind};
use crate::kernel::PhysParams;
use crate::mlimits::{m_asymptotic, m_kind_numeric, MKind};
use crate::spectral::{
    analyze_sphere, critical_temperature, curve_from_tc, v_mu_spectrum, RadialPotential,
};
use crate::toy1d::{curve_1d, solve_gap_1d_with, Toy1dOptions};

pub fn run(command: &Command) -> Result<Outputs, CliError> {
    let main = match command {
        Command::Kappa(a) => kappa(a)?,
        Command::Curves(a) => curves(a)?,
        Command::MCheck(a) => m_check(a)?,
        Command::Toy1d(a) => return toy1d(a),
        Command::Spectrum(a) => spectrum(a)?,
        Command::Phase(a) => phase(a)?,
    };
    Ok(Outputs {
        main,
        extra: Vec::new(),
    })
}

fn kinds(name: &str, text: &str) -> Result<Vec<Kind>, CliError> {
    parse_names(name, text, |w| w.parse::<Kind>().ok())
}

fn tolerances(t: &SolverTolerances) -> Result<Toy1dOptions, CliError> {
    check_tolerance("quad-tol", t.quad_tol)?;
    check_tolerance("root-tol", t.root_tol)?;
    Ok(Toy1dOptions {
        quad_rel_tol: t.quad_tol,
        root_rel_tol: t.root_tol,
    })
}

fn read_samples(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let (mut r, mut v) = (Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let parsed: Option<(f64, f64)> = match (record.get(0), record.get(1), record.len()) {
            (Some(a), Some(b), 2) => a.parse().ok().zip(b.parse().ok()),
            _ => None,
        };
        match parsed {
            Some((ri, vi)) => {
                r.push(ri);
                v.push(vi);
            }
            None if i == 0 => continue,
            None => {
                return Err(CliError::Config(format!(
                    "{}: record {} is not an `r,V` pair of numbers",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok((r, v))
}

fn potential(a: &PotentialArgs) -> Result<RadialPotential, CliError> {
    Ok(match a.potential {
        PotentialName::Gaussian => RadialPotential::gaussian(a.depth, a.width)?,
        PotentialName::Exponential => RadialPotential::exponential(a.depth, a.width)?,
        PotentialName::Sampled => {
            let path = a.potential_file.as_deref().ok_or_else(|| {
                CliError::Config("--potential sampled needs --potential-file".into())
            })?;
            let (r, v) = read_samples(path)?;
            RadialPotential::sampled(r, v)?
        }
    })
}

fn kappa(a: &KappaArgs) -> Result<Table, CliError> {
    let grid = GridSpec::parse("t-grid", &a.t_grid)?.values();
    let rows = grid
        .par_iter()
        .map(|&t| -> Result<Vec<Cell>> {
            let g = kappa_g(t)?;
            Ok(vec![
                t.into(),
                kappa_i(t)?.into(),
                kappa_o(t)?.into(),
                g.value.into(),
                g.minimizer_d.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["t", "kappa_i", "kappa_o", "kappa_g", "d_star"]);
    table.rows = rows;
    Ok(table)
}

fn curves(a: &CurvesArgs) -> Result<Table, CliError> {
    let kinds = kinds("kinds", &a.kinds)?;
    let grid = GridSpec::parse("t-grid", &a.t_grid)?.values();
    let pot = potential(&a.potential)?;
    let spec = analyze_sphere(&pot, a.mu_bar, crate::spectral::DEFAULT_ELL_MAX, a.lambda)?;
    let rho = spec.rho.map(|r| r.value).ok_or_else(|| {
        Error::InvalidInput("the potential has no weak-coupling critical temperature".into())
    })?;
    let tc = critical_temperature(a.mu_bar, rho)?;
    let jobs: Vec<(Kind, f64)> = kinds
        .iter()
        .flat_map(|&k| grid.iter().map(move |&t| (k, t)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(kind, t)| -> Result<Vec<Cell>> {
            let p = curve_from_tc(tc, kind, &[t])?.points[0];
            Ok(vec![
                kind.as_str().into(),
                t.into(),
                p.dmu_over_tc.into(),
                p.t_over_tc.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["kind", "t", "dmu_over_tc", "t_over_tc"]);
    table.meta("mu_bar", a.mu_bar);
    table.meta("lambda", a.lambda);
    table.meta("e_mu", spec.e_mu);
    table.meta("rho", rho);
    table.meta("T_c", tc);
    table.rows = rows;
    Ok(table)
}

fn m_kind(word: &str) -> Option<MKind> {
    match word {
        "m" => Some(MKind::Plain),
        "m_tilde" => Some(MKind::Tilde),
        "m_bar" => Some(MKind::Bar),
        _ => None,
    }
}

fn m_kind_name(kind: MKind) -> &'static str {
    match kind {
        MKind::Plain => "m",
        MKind::Tilde => "m_tilde",
        MKind::Bar => "m_bar",
    }
}

fn m_check(a: &MCheckArgs) -> Result<Table, CliError> {
    let kinds = parse_names("kinds", &a.kinds, m_kind)?;
    let temps = parse_list("temperatures", &a.temperatures)?;
    let ts = parse_list("t-values", &a.t_values)?;
    let mut jobs = Vec::new();
    for &k in &kinds {
        for &temp in &temps {
            for &t in &ts {
                jobs.push((k, temp, t));
            }
        }
    }
    let rows = jobs
        .par_iter()
        .map(|&(kind, temp, t)| -> Result<Vec<Cell>> {
            let params = PhysParams::new(a.mu_bar, t * temp, temp, 1.0)?;
            let numeric = m_kind_numeric(&params, kind)?.value;
            let asymptotic = m_asymptotic(temp, t, a.mu_bar, kind.kappa_kind())?;
            Ok(vec![
                m_kind_name(kind).into(),
                temp.into(),
                t.into(),
                numeric.into(),
                asymptotic.into(),
                (numeric - asymptotic).into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(vec![
        "kind",
        "T",
        "t",
        "numeric",
        "asymptotic",
        "difference",
    ]);
    table.meta("mu_bar", a.mu_bar);
    table.rows = rows;
    Ok(table)
}

fn plane(dmu_grid: &str, temp_grid: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let dmus = GridSpec::parse("dmu-grid", dmu_grid)?.values();
    let temps = GridSpec::parse("temp-grid", temp_grid)?.values();
    if temps[0] <= 0.0 {
        return Err(CliError::Config("--temp-grid must be positive".into()));
    }
    Ok(dmus
        .iter()
        .flat_map(|&d| temps.iter().map(move |&t| (d, t)))
        .collect())
}

fn toy1d(a: &Toy1dArgs) -> Result<Outputs, CliError> {
    let opts = tolerances(&a.tolerances)?;
    let points = plane(&a.dmu_grid, &a.temp_grid)?;
    let curve_kinds = kinds("curve-kinds", &a.curve_kinds)?;
    let rows = points
        .par_iter()
        .map(|&(dmu, temp)| -> Result<Vec<Cell>> {
            let p = PhysParams::new(a.mu_bar, dmu, temp, a.g)?;
            let sol = solve_gap_1d_with(&p, &opts)?;
            Ok(vec![
                dmu.into(),
                temp.into(),
                sol.count().into(),
                sol.roots.first().copied().into(),
                sol.roots.get(1).copied().into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut main = Table::new(vec!["delta_mu", "T", "count", "root_1", "root_2"]);
    main.meta("g", a.g);
    main.meta("mu_bar", a.mu_bar);
    main.rows = rows;

    let mut extra = Vec::new();
    if let Some(path) = &a.curves_out {
        let dmus = GridSpec::parse("dmu-grid", &a.dmu_grid)?.values();
        let mut table = Table::new(vec!["kind", "delta_mu", "branch", "T"]);
        table.meta("g", a.g);
        table.meta("mu_bar", a.mu_bar);
        for kind in curve_kinds {
            let curve = curve_1d(a.g, a.mu_bar, &dmus, kind)?;
            for pt in &curve.points {
                let branches: Vec<Option<f64>> = match pt.temperature {
                    None => vec![None],
                    Some(t) => std::iter::once(Some(t))
                        .chain(pt.extra_roots.iter().map(|&r| Some(r)))
                        .collect(),
                };
                for (i, temp) in branches.into_iter().enumerate() {
                    table.push(vec![
                        kind.as_str().into(),
                        pt.delta_mu.into(),
                        i.into(),
                        temp.into(),
                    ]);
                }
            }
        }
        extra.push((path.clone(), table));
    }
    Ok(Outputs { main, extra })
}

fn spectrum(a: &SpectrumArgs) -> Result<Table, CliError> {
    let pot = potential(&a.potential)?;
    let spec = if pot.is_fourier_attractive() {
        analyze_sphere(&pot, a.mu_bar, a.ell_max, a.lambda)?
    } else {
        v_mu_spectrum(&pot, a.mu_bar, a.ell_max)?
    };
    let mut table = Table::new(vec!["ell", "e_ell"]);
    for (ell, &e) in spec.e_ell.iter().enumerate() {
        table.push(vec![ell.into(), e.into()]);
    }
    let rho = spec.rho.map(|r| r.value);
    let tc = rho.and_then(|r| critical_temperature(a.mu_bar, r).ok());
    table.meta("mu_bar", a.mu_bar);
    table.meta("lambda", a.lambda);
    table.meta("e_mu", spec.e_mu);
    table.meta(
        "ground_channel",
        spec.ground_channel.map_or(Cell::Empty, Cell::from),
    );
    table.meta("trace_partial", spec.trace_partial);
    table.meta("trace_target", spec.trace_target);
    table.meta("trace_relative_error", spec.trace_relative_error());
    table.meta("w_form", spec.w_form);
    table.meta("rho", rho);
    table.meta("T_c", tc);
    if !spec.warnings.is_empty() {
        table.meta("warnings", spec.warnings.join("; ").as_str());
    }
    Ok(table)
}

fn phase(a: &PhaseArgs) -> Result<Table, CliError> {
    let opts = tolerances(&a.tolerances)?;
    let points = plane(&a.dmu_grid, &a.temp_grid)?;
    let interaction = Interaction::Contact1D { g: a.g };
    let rows = points
        .par_iter()
        .map(|&(dmu, temp)| -> Result<Vec<Cell>> {
            let p = PhysParams::new(a.mu_bar, dmu, temp, a.g)?;
            let d = phase_decision_with(&p, &interaction, &opts)?;
            Ok(vec![
                dmu.into(),
                temp.into(),
                d.label.as_str().into(),
                d.f_normal.into(),
                d.f_best.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["delta_mu", "T", "label", "F_normal", "F_best"]);
    table.meta("g", a.g);
    table.meta("mu_bar", a.mu_bar);
    table.rows = rows;
    Ok(table)
}
