//! C ABI for `polarfermi`.
//!
//! Every function returns a [`PfStatus`] and writes results through out
//! pointers. Objects are handed out as opaque handles that the caller
//! releases with the matching `*_free` function. After a non-OK status the
//! message of the failure is available from [`pf_last_error_message`] on the
//! same thread. Panics never cross the boundary; they are reported as
//! [`PfStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polarfermi::functional::{phase_decision, Interaction, PhaseLabel};
use polarfermi::kappa::{kappa, Kind};
use polarfermi::mlimits::{m_kind_numeric, MKind};
use polarfermi::spectral::{analyze_sphere, critical_temperature, RadialPotential, SphereSpectrum};
use polarfermi::toy1d::{solve_gap_1d, GapSolutionSet};
use polarfermi::{k_delta, k_tilde, Error, PhysParams};

/// Result code of every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfStatus {
    Ok = 0,
    InvalidArgument = 1,
    NumericalFailure = 2,
    NullPointer = 3,
    Panic = 4,
}

/// Curve kind `i` (Δ = 0 kernel).
pub const PF_KIND_I: i32 = 0;
/// Curve kind `g` (best constant gap).
pub const PF_KIND_G: i32 = 1;
/// Curve kind `o` (infimum kernel).
pub const PF_KIND_O: i32 = 2;

/// `m` with the Δ = 0 kernel.
pub const PF_M_PLAIN: i32 = 0;
/// `m̄`, maximized over a constant gap.
pub const PF_M_BAR: i32 = 1;
/// `m̃`, with the infimum kernel.
pub const PF_M_TILDE: i32 = 2;

/// Phase labels written by [`pf_phase_decision`].
pub const PF_PHASE_SUPERFLUID: i32 = 0;
pub const PF_PHASE_NORMAL: i32 = 1;
pub const PF_PHASE_NORMAL_METASTABLE: i32 = 2;

/// Physical parameters `(μ̄, δμ, T, g)`.
pub struct PfParams(PhysParams);

/// A radial interaction potential.
pub struct PfPotential(RadialPotential);

/// Spectrum of the potential on the Fermi sphere.
pub struct PfSpectrum(SphereSpectrum);

/// Solutions of the one-dimensional gap equation.
pub struct PfGapSolutions(GapSolutionSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(PfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_numerical() {
            PfStatus::NumericalFailure
        } else {
            PfStatus::InvalidArgument
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(PfStatus::NullPointer, format!("`{name}` is a null pointer"))
}

fn invalid(msg: String) -> Failure {
    Failure(PfStatus::InvalidArgument, msg)
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            PfStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, name: &str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(h: *const T, name: &str) -> Result<&'a T, Failure> {
    h.as_ref().ok_or_else(|| null(name))
}

fn kind_from(kind: i32) -> Result<Kind, Failure> {
    match kind {
        PF_KIND_I => Ok(Kind::I),
        PF_KIND_G => Ok(Kind::G),
        PF_KIND_O => Ok(Kind::O),
        k => Err(invalid(format!("unknown curve kind {k}"))),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len` bytes) and returns the full length including the NUL,
/// or 0 when there is no message. A null `buf` only queries the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pf_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Creates a parameter set; `T = 0` is allowed where the callee permits it.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_params_new(
    mu_bar: f64,
    delta_mu: f64,
    temperature: f64,
    coupling: f64,
    out: *mut *mut PfParams,
) -> PfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = PhysParams::new(mu_bar, delta_mu, temperature, coupling)?;
        write(out, "out", Box::into_raw(Box::new(PfParams(p))))
    })
}

/// # Safety
/// `params` must be null or a handle from [`pf_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pf_params_free(params: *mut PfParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// `κ(t)` of the given kind; `out_d` (may be null) receives the minimizing
/// gap for kind g and 0 otherwise.
///
/// # Safety
/// Out pointers must be null (where allowed) or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_kappa(
    kind: i32,
    t: f64,
    out_value: *mut f64,
    out_d: *mut f64,
) -> PfStatus {
    guard(|| {
        if out_value.is_null() {
            return Err(null("out_value"));
        }
        let v = kappa(kind_from(kind)?, t)?;
        write(out_value, "out_value", v.value)?;
        if !out_d.is_null() {
            write(out_d, "out_d", v.minimizer_d.unwrap_or(0.0))?;
        }
        Ok(())
    })
}

/// `K^Δ(t)` for the given parameters.
///
/// # Safety
/// `params` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_k_delta(
    t: f64,
    delta: f64,
    params: *const PfParams,
    out: *mut f64,
) -> PfStatus {
    guard(|| {
        let p = handle(params, "params")?;
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, "out", k_delta(t, delta, &p.0)?)
    })
}

/// `K̃(t) = inf_Δ K^Δ(t)`.
///
/// # Safety
/// `params` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_k_tilde(t: f64, params: *const PfParams, out: *mut f64) -> PfStatus {
    guard(|| {
        let p = handle(params, "params")?;
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, "out", k_tilde(t, &p.0)?)
    })
}

/// The `m`-integral of the given kind (`PF_M_*`).
///
/// # Safety
/// `params` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_m_integral(
    params: *const PfParams,
    kind: i32,
    out: *mut f64,
) -> PfStatus {
    guard(|| {
        let p = handle(params, "params")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let kind = match kind {
            PF_M_PLAIN => MKind::Plain,
            PF_M_BAR => MKind::Bar,
            PF_M_TILDE => MKind::Tilde,
            k => return Err(invalid(format!("unknown m kind {k}"))),
        };
        write(out, "out", m_kind_numeric(&p.0, kind)?.value)
    })
}

fn new_potential(
    out: *mut *mut PfPotential,
    make: impl FnOnce() -> polarfermi::Result<RadialPotential>,
) -> PfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let pot = make()?;
        // SAFETY: checked non-null above; the caller guarantees validity.
        unsafe { write(out, "out", Box::into_raw(Box::new(PfPotential(pot)))) }
    })
}

/// `V(r) = depth · e^{−r²/width²}`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_potential_gaussian(
    depth: f64,
    width: f64,
    out: *mut *mut PfPotential,
) -> PfStatus {
    new_potential(out, || RadialPotential::gaussian(depth, width))
}

/// `V(r) = depth · e^{−r/width}`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_potential_exponential(
    depth: f64,
    width: f64,
    out: *mut *mut PfPotential,
) -> PfStatus {
    new_potential(out, || RadialPotential::exponential(depth, width))
}

/// Piecewise-linear potential through `n` samples `(r[i], v[i])`.
///
/// # Safety
/// `r` and `v` must point to `n` readable values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_potential_sampled(
    r: *const f64,
    v: *const f64,
    n: usize,
    out: *mut *mut PfPotential,
) -> PfStatus {
    if r.is_null() || v.is_null() {
        return guard(|| Err(null(if r.is_null() { "r" } else { "v" })));
    }
    let r = std::slice::from_raw_parts(r, n).to_vec();
    let v = std::slice::from_raw_parts(v, n).to_vec();
    new_potential(out, || RadialPotential::sampled(r, v))
}

/// # Safety
/// `pot` must be null or a live potential handle.
#[no_mangle]
pub unsafe extern "C" fn pf_potential_free(pot: *mut PfPotential) {
    if !pot.is_null() {
        drop(Box::from_raw(pot));
    }
}

/// Channel eigenvalues `e_0 … e_{ell_max}`, `e_μ`, the W form and `ρ(λ)` of
/// a Fourier-attractive potential.
///
/// # Safety
/// `pot` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_sphere_analyze(
    pot: *const PfPotential,
    mu_bar: f64,
    ell_max: usize,
    lambda: f64,
    out: *mut *mut PfSpectrum,
) -> PfStatus {
    guard(|| {
        let pot = handle(pot, "pot")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = analyze_sphere(&pot.0, mu_bar, ell_max, lambda)?;
        write(out, "out", Box::into_raw(Box::new(PfSpectrum(spec))))
    })
}

/// Number of channels, `ell_max + 1`; 0 for a null handle.
///
/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_spectrum_len(spec: *const PfSpectrum) -> usize {
    spec.as_ref().map_or(0, |s| s.0.e_ell.len())
}

/// Copies up to `len` channel eigenvalues into `buf`.
///
/// # Safety
/// `spec` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn pf_spectrum_values(
    spec: *const PfSpectrum,
    buf: *mut f64,
    len: usize,
) -> PfStatus {
    guard(|| {
        let s = handle(spec, "spec")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let n = len.min(s.0.e_ell.len());
        ptr::copy_nonoverlapping(s.0.e_ell.as_ptr(), buf, n);
        Ok(())
    })
}

/// `e_μ`, `ρ(λ)` and the critical temperature `T_c` of an analyzed spectrum.
/// Any out pointer may be null.
///
/// # Safety
/// `spec` must be a live handle; non-null out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_spectrum_summary(
    spec: *const PfSpectrum,
    out_e_mu: *mut f64,
    out_rho: *mut f64,
    out_tc: *mut f64,
) -> PfStatus {
    guard(|| {
        let s = handle(spec, "spec")?;
        let rho =
            s.0.rho
                .map(|r| r.value)
                .ok_or_else(|| invalid("spectrum has no rho".into()))?;
        if !out_e_mu.is_null() {
            write(out_e_mu, "out_e_mu", s.0.e_mu)?;
        }
        if !out_rho.is_null() {
            write(out_rho, "out_rho", rho)?;
        }
        if !out_tc.is_null() {
            write(out_tc, "out_tc", critical_temperature(s.0.mu_bar, rho)?)?;
        }
        Ok(())
    })
}

/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_spectrum_free(spec: *mut PfSpectrum) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// All solutions `Δ > 0` of the one-dimensional gap equation with the
/// coupling stored in `params`.
///
/// # Safety
/// `params` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_solve_gap_1d(
    params: *const PfParams,
    out: *mut *mut PfGapSolutions,
) -> PfStatus {
    guard(|| {
        let p = handle(params, "params")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let sol = solve_gap_1d(&p.0)?;
        write(out, "out", Box::into_raw(Box::new(PfGapSolutions(sol))))
    })
}

/// Number of solutions; 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_gap_solutions_count(sol: *const PfGapSolutions) -> usize {
    sol.as_ref().map_or(0, |s| s.0.count())
}

/// The `index`-th solution in increasing order.
///
/// # Safety
/// `sol` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_gap_solutions_root(
    sol: *const PfGapSolutions,
    index: usize,
    out: *mut f64,
) -> PfStatus {
    guard(|| {
        let s = handle(sol, "sol")?;
        let root = *s.0.roots.get(index).ok_or_else(|| {
            invalid(format!(
                "index {index} out of range ({} roots)",
                s.0.count()
            ))
        })?;
        write(out, "out", root)
    })
}

/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pf_gap_solutions_free(sol: *mut PfGapSolutions) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Normal vs. superfluid for the 1-D contact model with coupling `g` from
/// `params`. `out_f_best` receives NaN when the gap equation has no solution.
///
/// # Safety
/// `params` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pf_phase_decision(
    params: *const PfParams,
    out_label: *mut i32,
    out_f_normal: *mut f64,
    out_f_best: *mut f64,
) -> PfStatus {
    guard(|| {
        let p = handle(params, "params")?;
        if out_label.is_null() || out_f_normal.is_null() || out_f_best.is_null() {
            return Err(null("out"));
        }
        let d = phase_decision(&p.0, &Interaction::Contact1D { g: p.0.coupling() })?;
        let label = match d.label {
            PhaseLabel::Superfluid => PF_PHASE_SUPERFLUID,
            PhaseLabel::Normal => PF_PHASE_NORMAL,
            PhaseLabel::NormalMetastable => PF_PHASE_NORMAL_METASTABLE,
        };
        write(out_label, "out_label", label)?;
        write(out_f_normal, "out_f_normal", d.f_normal)?;
        write(out_f_best, "out_f_best", d.f_best.unwrap_or(f64::NAN))
    })
}
