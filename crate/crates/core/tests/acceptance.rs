//! Acceptance suite: one PASS/FAIL line per criterion with its wall time.
//!
//! The process exits with status 0 after printing the report, so that the
//! remaining test targets still run; set `POLARFERMI_ACCEPTANCE_STRICT=1` to
//! turn any FAIL into a non-zero exit status.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use polarfermi::functional::{
    admissible_direction, fd_directional_derivative, phase_decision, state_from_gap_solution,
    stationarity_residual, Dimension, Interaction, MomentumGrid, PhaseLabel, DEFAULT_NODES,
};
use polarfermi::kappa::{kappa_g, kappa_i, kappa_o, zeta, Kind};
use polarfermi::kernel::MONOTONE_THRESHOLD;
use polarfermi::mlimits::{m_asymptotic, m_kind_numeric, MKind};
use polarfermi::numerics::{linspace, EULER_GAMMA};
use polarfermi::spectral::{analyze_sphere, critical_curve, v_mu_spectrum, RadialPotential};
use polarfermi::toy1d::{curve_1d, solve_gap_1d, Curve1d};
use polarfermi::PhysParams;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(bool, String), String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    check: Box<dyn Fn(&mut Shared) -> Outcome>,
}

/// One-dimensional boundaries shared by the counting and phase criteria.
#[derive(Default)]
struct Shared {
    curves: Option<(Curve1d, Curve1d, Curve1d)>,
}

const G: f64 = 1.0;
const MU: f64 = 1.0;

fn dmu_grid() -> Vec<f64> {
    linspace(0.0, 0.4, 20)
}

fn temp_grid() -> Vec<f64> {
    linspace(0.005, 0.25, 20)
}

impl Shared {
    fn curves(&mut self) -> Result<&(Curve1d, Curve1d, Curve1d), String> {
        if self.curves.is_none() {
            let grid = dmu_grid();
            let make = |k| curve_1d(G, MU, &grid, k).map_err(|e| e.to_string());
            self.curves = Some((make(Kind::I)?, make(Kind::G)?, make(Kind::O)?));
        }
        Ok(self.curves.as_ref().unwrap())
    }
}

fn roots(curve: &Curve1d, dmu: f64) -> Vec<f64> {
    let p = curve.points.iter().find(|p| p.delta_mu == dmu).unwrap();
    p.temperature
        .into_iter()
        .chain(p.extra_roots.iter().copied())
        .collect()
}

fn above(roots: &[f64], temp: f64) -> usize {
    roots.iter().filter(|&&r| r > temp).count()
}

fn near(roots: &[f64], temp: f64) -> bool {
    roots.iter().any(|&r| (r - temp).abs() < 5e-3 * r)
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn kappa_i_zero(_: &mut Shared) -> Outcome {
    let v = kappa_i(0.0).map_err(err)?;
    Ok((v.abs() < 1e-8, format!("kappa_i(0) = {v:e}")))
}

fn large_t_law(_: &mut Shared) -> Outcome {
    let law = |t: f64| t.ln() + EULER_GAMMA - (PI / 2.0).ln();
    let mut errs = Vec::new();
    for t in [10.0, 30.0, 100.0] {
        errs.push((kappa_i(t).map_err(err)? - law(t)).abs());
    }
    let pass = errs[2] < 0.05 && errs[1] < errs[0] && errs[2] < errs[1];
    Ok((
        pass,
        format!(
            "|error| at t = 10, 30, 100: {:.3e}, {:.3e}, {:.3e}",
            errs[0], errs[1], errs[2]
        ),
    ))
}

fn kappa_o_regimes(_: &mut Shared) -> Outcome {
    let mut worst: f64 = 0.0;
    for c in [0.5, 1.0, 1.3] {
        worst = worst.max((kappa_o(c).map_err(err)? - kappa_i(c).map_err(err)?).abs());
    }
    let (o, i) = (kappa_o(2.5).map_err(err)?, kappa_i(2.5).map_err(err)?);
    Ok((
        worst < 1e-8 && o < i,
        format!("max |kappa_o - kappa_i| for c <= 1.3: {worst:.1e}; at c = 2.5: {o:.6} < {i:.6}"),
    ))
}

fn zeta_and_kappa_g(_: &mut Shared) -> Outcome {
    let mut worst: f64 = 0.0;
    for t in [0.0, 1.0, 2.0] {
        worst = worst.max((zeta(t, 0.0).map_err(err)? - kappa_i(t).map_err(err)?).abs());
    }
    let eq = (kappa_g(1.8).map_err(err)?.value - kappa_i(1.8).map_err(err)?).abs();
    let (g, i) = (kappa_g(2.5).map_err(err)?.value, kappa_i(2.5).map_err(err)?);
    Ok((
        worst < 1e-8 && eq < 1e-6 && g < i,
        format!("max |zeta(t,0) - kappa_i|: {worst:.1e}; |kappa_g - kappa_i| at 1.8: {eq:.1e}; at 2.5: {g:.6} < {i:.6}"),
    ))
}

fn m_convergence(_: &mut Shared) -> Outcome {
    let temps = [1e-2, 1e-3, 1e-4];
    let kinds = [MKind::Plain, MKind::Bar, MKind::Tilde];
    let mut pass = true;
    let mut worst_final: f64 = 0.0;
    let mut notes = Vec::new();
    for t in [0.0, 1.0, 2.5, 3.0] {
        let mut errors = [[0.0; 3]; 3];
        for (ti, &temp) in temps.iter().enumerate() {
            let params = PhysParams::new(MU, t * temp, temp, 1.0).map_err(err)?;
            let mut values = [0.0; 3];
            for (ki, &kind) in kinds.iter().enumerate() {
                let m = m_kind_numeric(&params, kind).map_err(err)?.value;
                let asym = m_asymptotic(temp, t, MU, kind.kappa_kind()).map_err(err)?;
                values[ki] = m;
                errors[ki][ti] = (MU.sqrt() * m - asym).abs();
            }
            let slack = 1e-12 * values[2].abs().max(1.0);
            if !(values[0] <= values[1] + slack && values[1] <= values[2] + slack) {
                pass = false;
                notes.push(format!(
                    "ordering violated at t = {t}, T = {temp}: {values:?}"
                ));
            }
        }
        for (ki, e) in errors.iter().enumerate() {
            worst_final = worst_final.max(e[2]);
            if !(e[1] < e[0] && e[2] < e[1] && e[2] < 0.02) {
                pass = false;
                notes.push(format!(
                    "{:?} at t = {t}: errors {:.3e}, {:.3e}, {:.3e}",
                    kinds[ki], e[0], e[1], e[2]
                ));
            }
        }
    }
    let mut detail = format!("max error at T = 1e-4: {worst_final:.3e}; ordering m <= m_bar <= m_tilde checked at 12 points");
    if !notes.is_empty() {
        detail.push_str("; ");
        detail.push_str(&notes.join("; "));
    }
    Ok((pass, detail))
}

fn intercepts(_: &mut Shared) -> Outcome {
    let pot = RadialPotential::gaussian(-1.0, 1.0).map_err(err)?;
    let curve = critical_curve(&pot, MU, 1.0, Kind::I, &[0.0, 100.0]).map_err(err)?;
    let target = PI / 2.0 * (-EULER_GAMMA).exp();
    let at0 = curve.points[0].t_over_tc;
    let x = curve.points[1].dmu_over_tc;
    let rel = (x - target).abs() / target;
    Ok((
        at0 == 1.0 && rel < 0.05,
        format!("T/T_c at t = 0: {at0}; dmu/T_c at t = 100: {x:.5} (target {target:.5}, rel. dev. {rel:.2e})"),
    ))
}

fn ordering(_: &mut Shared) -> Outcome {
    let mut violations = 0;
    let ts = linspace(0.0, 5.0, 101);
    for &t in &ts {
        let (ki, kg, ko) = (
            kappa_i(t).map_err(err)?,
            kappa_g(t).map_err(err)?.value,
            kappa_o(t).map_err(err)?,
        );
        let slack = 1e-10 * ki.abs().max(1.0);
        // T = T_c e^{−κ}, so T^i <= T^g <= T^o is κ^i >= κ^g >= κ^o.
        if !(kg <= ki + slack && ko <= kg + slack) {
            violations += 1;
        }
    }
    Ok((
        violations == 0,
        format!("{} t-values in [0, 5], {violations} violations", ts.len()),
    ))
}

fn sphere(_: &mut Shared) -> Outcome {
    let pot = RadialPotential::gaussian(-1.0, 1.0).map_err(err)?;
    let spec = analyze_sphere(&pot, MU, 40, 1.0).map_err(err)?;
    let trace = spec.trace_relative_error();
    let legendre = v_mu_spectrum(&pot, MU, 20).map_err(err)?;
    let nys = common::nystrom_eigenvalues(&pot, MU);
    let mut worst: f64 = 0.0;
    let mut offset = 0;
    for ell in 0..=8 {
        for ev in &nys[offset..offset + 2 * ell + 1] {
            worst = worst.max((ev - legendre.e_ell[ell]).abs());
        }
        offset += 2 * ell + 1;
    }
    Ok((
        trace < 0.01 && worst < 1e-6,
        format!("trace rel. error at ell_max = 40: {trace:.2e}; max |e_l - oracle| for l <= 8: {worst:.1e}"),
    ))
}

fn counting(shared: &mut Shared) -> Outcome {
    let (ci, cg, _) = shared.curves()?;
    let (mut below, mut between, mut outside, mut skipped) = (0, 0, 0, 0);
    let mut mismatches = Vec::new();
    let mut max_count = 0;
    for &dmu in &dmu_grid() {
        let (ri, rg) = (roots(ci, dmu), roots(cg, dmu));
        for &temp in &temp_grid() {
            let params = PhysParams::new(MU, dmu, temp, G).map_err(err)?;
            let count = solve_gap_1d(&params)
                .map_err(|e| format!("solver at dmu = {dmu}, T = {temp}: {e}"))?
                .count();
            max_count = max_count.max(count);
            if near(&ri, temp) || near(&rg, temp) {
                skipped += 1;
                continue;
            }
            let expected = if above(&ri, temp) % 2 == 1 {
                below += 1;
                1
            } else if above(&rg, temp) % 2 == 1 {
                if dmu / temp <= MONOTONE_THRESHOLD {
                    skipped += 1;
                    continue;
                }
                between += 1;
                2
            } else {
                outside += 1;
                0
            };
            if count != expected {
                mismatches.push(format!("({dmu:.4}, {temp:.4}): {count} != {expected}"));
            }
        }
    }
    let mut detail = format!(
        "below T^i: {below}, between: {between}, above T^o: {outside}, skipped: {skipped}; max count {max_count}; {} mismatches",
        mismatches.len()
    );
    if !mismatches.is_empty() {
        detail.push_str(&format!(" [{}]", mismatches.join(", ")));
    }
    Ok((
        mismatches.is_empty() && max_count <= 2 && between > 0,
        detail,
    ))
}

fn euler_lagrange(_: &mut Shared) -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let contact = Interaction::Contact1D { g: G };
    let (mut states, mut worst_res, mut worst_fd): (usize, f64, f64) = (0, 0.0, 0.0);
    for (dmu, temp) in [
        (0.0, 0.05),
        (0.05, 0.15),
        (0.12, 0.06),
        (0.2, 0.04),
        (0.2, 0.1),
        (0.28, 0.02),
    ] {
        let params = PhysParams::new(MU, dmu, temp, G).map_err(err)?;
        let grid = MomentumGrid::for_params(&params, Dimension::One, DEFAULT_NODES).map_err(err)?;
        for &delta in &solve_gap_1d(&params).map_err(err)?.roots {
            let state = state_from_gap_solution(delta, &params, &grid).map_err(err)?;
            states += 1;
            worst_res =
                worst_res.max(stationarity_residual(&state, &params, &contact).map_err(err)?);
            let n = grid.len();
            for _ in 0..20 {
                let mut xi = || {
                    (0..n)
                        .map(|_| rng.gen_range(-1.0..1.0))
                        .collect::<Vec<f64>>()
                };
                let (a, b, c) = (xi(), xi(), xi());
                let (a, b, c) = admissible_direction(&state, (&a, &b, &c));
                let d = fd_directional_derivative(&state, &params, &contact, (&a, &b, &c), 1e-4)
                    .map_err(err)?;
                worst_fd = worst_fd.max(d.abs());
            }
        }
    }
    Ok((
        worst_res < 1e-6 && worst_fd < 1e-5 && states > 0,
        format!("{states} states: max residual {worst_res:.1e}, max |dF| over 20 directions each {worst_fd:.1e}"),
    ))
}

fn phase(shared: &mut Shared) -> Outcome {
    let (ci, cg, co) = shared.curves()?;
    let contact = Interaction::Contact1D { g: G };
    let decide = |dmu: f64, temp: f64| -> Result<PhaseLabel, String> {
        let p = PhysParams::new(MU, dmu, temp, G).map_err(err)?;
        Ok(phase_decision(&p, &contact).map_err(err)?.label)
    };
    let (mut sf_ok, mut sf_n, mut n_ok, mut n_n) = (0, 0, 0, 0);
    let (mut meta_two, mut two_n) = (0, 0);
    for (a, &dmu) in dmu_grid().iter().enumerate() {
        let (ri, rg) = (roots(ci, dmu), roots(cg, dmu));
        for (b, &temp) in temp_grid().iter().enumerate() {
            if near(&ri, temp) || near(&rg, temp) {
                continue;
            }
            let odd_i = above(&ri, temp) % 2 == 1;
            let odd_g = above(&rg, temp) % 2 == 1;
            if !odd_i && odd_g && dmu / temp > 2.0 {
                two_n += 1;
                meta_two += usize::from(decide(dmu, temp)? == PhaseLabel::NormalMetastable);
                continue;
            }
            if (a + b) % 2 == 1 {
                continue;
            }
            if odd_i {
                sf_n += 1;
                sf_ok += usize::from(decide(dmu, temp)? == PhaseLabel::Superfluid);
            } else if !odd_g {
                n_n += 1;
                n_ok += usize::from(decide(dmu, temp)? == PhaseLabel::Normal);
            }
        }
    }
    // Between the max-gap curve (g) and the envelope curve (o).
    let (mut gap_n, mut gap_meta) = (0, 0);
    for &dmu in &dmu_grid() {
        let Some(t_o) = co.temperature_at(dmu) else {
            continue;
        };
        let t_g = cg.temperature_at(dmu).unwrap_or(0.0);
        if t_o <= t_g * 1.01 {
            continue;
        }
        let temp = 0.5 * (t_g + t_o);
        if dmu / temp <= 2.0 {
            continue;
        }
        gap_n += 1;
        gap_meta += usize::from(decide(dmu, temp)? == PhaseLabel::NormalMetastable);
    }
    println!(
        "INFO  two-solution region (normal state stable, below the max-gap curve) at dmu/T > 2: \
         {meta_two} of {two_n} grid points are normal-with-metastable-solutions"
    );
    let pass = sf_n > 0 && sf_ok == sf_n && n_n > 0 && n_ok == n_n && gap_meta > 0;
    Ok((
        pass,
        format!(
            "superfluid below T^i: {sf_ok}/{sf_n}; normal above T^o: {n_ok}/{n_n}; \
             metastable between g- and o-curves at dmu/T > 2: {gap_meta}/{gap_n}"
        ),
    ))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        Criterion {
            name: "kappa_i(0) = 0",
            budget: Duration::from_secs(1),
            check: Box::new(kappa_i_zero),
        },
        Criterion {
            name: "kappa_i large-t law",
            budget: Duration::from_secs(5),
            check: Box::new(large_t_law),
        },
        Criterion {
            name: "kappa_o regimes",
            budget: Duration::from_secs(5),
            check: Box::new(kappa_o_regimes),
        },
        Criterion {
            name: "zeta(t,0) and kappa_g",
            budget: Duration::from_secs(30),
            check: Box::new(zeta_and_kappa_g),
        },
        Criterion {
            name: "m-convergence and ordering",
            budget: Duration::from_secs(120),
            check: Box::new(m_convergence),
        },
        Criterion {
            name: "phase-diagram intercepts",
            budget: Duration::from_secs(10),
            check: Box::new(intercepts),
        },
        Criterion {
            name: "curve ordering",
            budget: Duration::from_secs(60),
            check: Box::new(ordering),
        },
        Criterion {
            name: "Fermi-sphere trace and oracle",
            budget: Duration::from_secs(60),
            check: Box::new(sphere),
        },
        Criterion {
            name: "1-D solution counting",
            budget: Duration::from_secs(120),
            check: Box::new(counting),
        },
        Criterion {
            name: "Euler-Lagrange certification",
            budget: Duration::from_secs(60),
            check: Box::new(euler_lagrange),
        },
        Criterion {
            name: "phase decision",
            budget: Duration::from_secs(120),
            check: Box::new(phase),
        },
    ];
    let mut shared = Shared::default();
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (c.check)(&mut shared)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, d)) => (ok, d),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = elapsed <= c.budget;
        let pass = ok && in_time;
        failed += usize::from(!pass);
        let timing = if in_time { "" } else { " over budget" };
        println!(
            "{} [{:>2}] {}: {} ({:.2} s of {} s{timing})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            c.name,
            detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    let strict = std::env::var("POLARFERMI_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && failed > 0 {
        std::process::exit(1);
    }
}
