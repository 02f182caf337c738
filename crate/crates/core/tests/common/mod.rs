use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use polarfermi::spectral::RadialPotential;

#[allow(dead_code)]
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    // Golub-Welsch via the symmetric Jacobi matrix.
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = k as f64 / ((4 * k * k - 1) as f64).sqrt();
        j[(k, k - 1)] = b;
        j[(k - 1, k)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

#[allow(dead_code)]
pub fn nystrom_eigenvalues(pot: &RadialPotential, mu_bar: f64) -> Vec<f64> {
    let (ct, wt) = gauss_legendre(20);
    let nphi = 40;
    let mut pts = Vec::new();
    let mut wts = Vec::new();
    for (c, w) in ct.iter().zip(&wt) {
        let s = (1.0 - c * c).sqrt();
        for j in 0..nphi {
            let phi = 2.0 * PI * j as f64 / nphi as f64;
            pts.push([s * phi.cos(), s * phi.sin(), *c]);
            wts.push(w * 2.0 * PI / nphi as f64);
        }
    }
    let n = pts.len();
    let pref = mu_bar.sqrt() / (2.0 * PI).powf(1.5);
    let a = DMatrix::from_fn(n, n, |i, j| {
        let dot: f64 = (0..3).map(|k| pts[i][k] * pts[j][k]).sum();
        let q = (2.0 * mu_bar * (1.0 - dot).max(0.0)).sqrt();
        pref * pot.vhat(q) * (wts[i] * wts[j]).sqrt()
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
