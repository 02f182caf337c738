use std::f64::consts::PI;

mod common;

use common::{gauss_legendre, nystrom_eigenvalues};
use polarfermi::spectral::{v_mu_spectrum, w_mu_form_constant, RadialPotential};

#[test]
fn channel_eigenvalues_match_nystrom_discretization() {
    let pot = RadialPotential::gaussian(-1.0, 2.0).unwrap();
    let spec = v_mu_spectrum(&pot, 1.0, 20).unwrap();
    let nys = nystrom_eigenvalues(&pot, 1.0);
    let mut offset = 0;
    for ell in 0..=8 {
        let block = &nys[offset..offset + 2 * ell + 1];
        for ev in block {
            assert!(
                (ev - spec.e_ell[ell]).abs() < 1e-6,
                "l = {ell}: nystrom {ev:e} vs channel {:e}",
                spec.e_ell[ell]
            );
        }
        offset += 2 * ell + 1;
    }
}

#[test]
fn w_form_matches_closed_form_gaussian_oracle() {
    let (depth, a, mu_bar): (f64, f64, f64) = (-1.0, 1.0, 1.0);
    let pot = RadialPotential::gaussian(depth, a).unwrap();
    let kf = mu_bar.sqrt();
    let c0 = depth * a * a * a / (2.0 * 2f64.sqrt());
    let u = 1.0 / (4.0 * PI * mu_bar).sqrt();
    let phi = |k: f64| -> f64 {
        let beta = a * a * k * kf / 2.0;
        let ang = if beta < 1e-12 {
            2.0
        } else {
            -(-2.0 * beta).exp_m1() / beta
        };
        (2.0 * PI).powf(-1.5)
            * u
            * 2.0
            * PI
            * mu_bar
            * c0
            * (-(a * a) * (k - kf).powi(2) / 4.0).exp()
            * ang
    };
    let pf2 = phi(kf).powi(2);
    let f = |k: f64| k * k * (phi(k).powi(2) - pf2) / (k * k - mu_bar).abs() + pf2;
    let (x, w) = gauss_legendre(60);
    let panel = |lo: f64, hi: f64, g: &dyn Fn(f64) -> f64| -> f64 {
        let m = 0.5 * (hi - lo);
        x.iter()
            .zip(&w)
            .map(|(xi, wi)| wi * m * g(lo + m * (xi + 1.0)))
            .sum()
    };
    let kmax = 2.0 * kf + 20.0 / a;
    let mut body = 0.0;
    let edges: Vec<f64> = (0..=40)
        .map(|i| kf + (kmax - kf) * i as f64 / 40.0)
        .collect();
    for i in 0..8 {
        body += panel(kf * i as f64 / 8.0, kf * (i + 1) as f64 / 8.0, &f);
    }
    for e in edges.windows(2) {
        body += panel(e[0], e[1], &f);
    }
    let tail = panel(0.0, 1.0, &|s: f64| {
        if s == 0.0 {
            return 0.0;
        }
        let k = kmax / s;
        (k * k * phi(k).powi(2) - mu_bar * pf2) / (k * k - mu_bar) * kmax / (s * s)
    });
    let oracle = 4.0 * PI * (body + tail);
    let got = w_mu_form_constant(&pot, mu_bar).unwrap();
    assert!(
        (got - oracle).abs() < 1e-8 * oracle.abs(),
        "got {got:e}, oracle {oracle:e}"
    );
}
