//! One-dimensional minimization and bracketed root finding.

use crate::error::NumericalFailure;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Returns `(x, f(x))` for the best point seen, including the endpoints.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut best = (lo, f(lo));
    let fb = f(hi);
    if fb < best.1 {
        best = (hi, fb);
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}

/// Fallible variant of [`golden_min`]; the first error aborts the search.
pub fn try_golden_min<E, F: FnMut(f64) -> Result<f64, E>>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64), E> {
    let mut err = None;
    let best = golden_min(
        |x| {
            if err.is_some() {
                return f64::INFINITY;
            }
            match f(x) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    f64::INFINITY
                }
            }
        },
        a,
        b,
        tol,
    );
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// Coarse scan of `xs` followed by golden refinement between the neighbours
/// of the best sample. Returns `(x, f(x))`.
pub fn scan_then_golden<E, F: FnMut(f64) -> Result<f64, E>>(
    mut f: F,
    xs: &[f64],
    tol: f64,
) -> Result<(f64, f64), E> {
    assert!(!xs.is_empty(), "scan grid must not be empty");
    let mut values = Vec::with_capacity(xs.len());
    for &x in xs {
        values.push(f(x)?);
    }
    let k = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let lo = xs[k.saturating_sub(1)];
    let hi = xs[(k + 1).min(xs.len() - 1)];
    let refined = try_golden_min(&mut f, lo, hi, tol)?;
    if refined.1 < values[k] {
        Ok(refined)
    } else {
        Ok((xs[k], values[k]))
    }
}

/// Bisection for a sign change of `f` on `[a, b]`.
///
/// Stops when the bracket is narrower than `xtol` (absolute) or `rtol`
/// relative to the bracket magnitude; returns the endpoint with the smaller
/// residual.
pub fn bisect<F: FnMut(f64) -> Result<f64, NumericalFailure>>(
    mut f: F,
    a: f64,
    b: f64,
    xtol: f64,
    rtol: f64,
) -> Result<f64, NumericalFailure> {
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(NumericalFailure::NoBracket { lo, hi });
    }
    for _ in 0..300 {
        if (hi - lo).abs() <= xtol.max(rtol * lo.abs().max(hi.abs())) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    Ok(if flo.abs() <= fhi.abs() { lo } else { hi })
}

/// `n` points from `lo` to `hi` inclusive, linearly spaced.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// `n` points from `lo` to `hi` inclusive, logarithmically spaced (both > 0).
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let mut v: Vec<f64> = linspace(a, b, n).into_iter().map(f64::exp).collect();
    if let Some(first) = v.first_mut() {
        *first = lo;
    }
    if n > 1 {
        if let Some(last) = v.last_mut() {
            *last = hi;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, fx) = golden_min(|x| (x - 1.3).powi(2) + 2.0, 0.0, 5.0, 1e-10);
        assert!((x - 1.3).abs() < 1e-6);
        assert!((fx - 2.0).abs() < 1e-15);
    }

    #[test]
    fn golden_reports_boundary_minimum() {
        let (x, _) = golden_min(|x| x, 0.0, 1.0, 1e-9);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn bisection_converges() {
        let r = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-15, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn bisection_rejects_missing_bracket() {
        assert!(bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12, 1e-12).is_err());
    }

    #[test]
    fn spaces_hit_endpoints() {
        let l = logspace(1e-3, 10.0, 5);
        assert_eq!(l[0], 1e-3);
        assert_eq!(l[4], 10.0);
        assert!((l[1] - 1e-2).abs() < 1e-15);
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }
}
