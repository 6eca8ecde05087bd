//! Runge-Kutta integration of the driven wire: convergence order, relaxation
//! and the steady state.

use num_complex::Complex64;
use qwire::time_domain::{self, integrate, integrate_with_amplitude, IntegratorConfig};
use qwire::wire::{self, WireParams};
use qwire::Error;

fn final_state(p: &WireParams, drive: f64, dt: f64, t_max: f64) -> Vec<Complex64> {
    let cfg = IntegratorConfig::new(dt, t_max, 0.5 * t_max).unwrap();
    integrate(p, drive, &cfg).unwrap().u.pop().unwrap()
}

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Successive-difference ratios under two step halvings.
fn halving_ratio(p: &WireParams, drive: f64, dt: f64, t_max: f64) -> f64 {
    let u1 = final_state(p, drive, dt, t_max);
    let u2 = final_state(p, drive, dt / 2.0, t_max);
    let u4 = final_state(p, drive, dt / 4.0, t_max);
    dist(&u1, &u2) / dist(&u2, &u4)
}

#[test]
fn fourth_order_under_step_halving() {
    for &(n, detune) in &[(1, 0.7), (2, 0.0), (3, 1.3), (5, 0.4)] {
        let p = WireParams::new(n, 0.0, 1.0, 0.5).unwrap();
        let rate = f64::max(1.0, detune);
        let ratio = halving_ratio(&p, detune, 0.1 / rate, 8.0);
        assert!((12.0..=20.0).contains(&ratio), "n={n}: ratio {ratio}");
    }
}

#[test]
fn amplitudes_are_linear_in_the_drive() {
    let p = WireParams::new(3, 0.2, 0.9, 0.6).unwrap();
    let cfg = IntegratorConfig::new(0.02, 6.0, 1.0).unwrap();
    let a = integrate_with_amplitude(&p, 0.5, 1.0, &cfg).unwrap();
    let b = integrate_with_amplitude(&p, 0.5, -2.5, &cfg).unwrap();
    for (ra, rb) in a.u.iter().zip(&b.u) {
        for (x, y) in ra.iter().zip(rb) {
            assert!((x * -2.5 - y).norm() <= 1e-13 * (1.0 + y.norm()));
        }
    }
}

#[test]
fn single_site_relaxes_at_full_broadening() {
    // both corner broadenings land on one site: |U - U_inf| = |U_inf| e^{-gamma t}
    let g = 0.5;
    let p = WireParams::new(1, 0.0, 1.0, g).unwrap();
    let cfg = IntegratorConfig::for_drive(&p, 0.0);
    let traj = integrate(&p, 0.0, &cfg).unwrap();
    let target = time_domain::rotated_steady_state(&p, 0.0, p.v_lead()).unwrap()[0];
    for (k, &t) in traj.times.iter().enumerate().step_by(97) {
        let dev = (traj.rotated(k)[0] - target).norm();
        let envelope = target.norm() * (-g * t).exp();
        assert!((dev - envelope).abs() <= 1e-9, "t = {t}");
    }
}

#[test]
fn two_sites_relax_no_slower_than_half_broadening() {
    let g = 0.5;
    let p = WireParams::new(2, 0.0, 1.0, g).unwrap();
    let cfg = IntegratorConfig::for_drive(&p, 0.3);
    let traj = integrate(&p, 0.3, &cfg).unwrap();
    let target = time_domain::rotated_steady_state(&p, 0.3, p.v_lead()).unwrap();
    let scale = 2.0 * target.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for (k, &t) in traj.times.iter().enumerate().step_by(53) {
        let dev = dist(&traj.rotated(k), &target);
        assert!(dev <= 2.0 * scale * (-0.5 * g * t).exp() + 1e-9, "t = {t}: {dev}");
    }
}

#[test]
fn steady_state_satisfies_the_linear_system() {
    // the rotated limit solves the frequency-domain equations exactly
    for n in 1..=6 {
        let p = WireParams::new(n, 0.1, 0.8, 0.7).unwrap();
        let drive = 0.45;
        let c = time_domain::rotated_steady_state(&p, drive, 1.0).unwrap();
        let w = p.eps0() - drive;
        for i in 0..n {
            let mut rhs = Complex64::new(0.0, -p.v())
                * (if i > 0 { c[i - 1] } else { Complex64::new(0.0, 0.0) }
                    + if i + 1 < n { c[i + 1] } else { Complex64::new(0.0, 0.0) });
            if i == 0 {
                rhs += Complex64::new(0.0, -1.0) - 0.5 * p.gamma() * c[0];
            }
            if i == n - 1 {
                rhs -= 0.5 * p.gamma() * c[n - 1];
            }
            let lhs = Complex64::new(0.0, w) * c[i];
            assert!((lhs - rhs).norm() <= 1e-12, "n={n} i={i}");
        }
        // moduli follow the formal solution
        let col = wire::first_inverse_column(&p, drive).unwrap();
        for (z, q) in c.iter().zip(&col) {
            assert!((z.norm() - q.norm()).abs() <= 1e-14);
        }
    }
}

#[test]
fn resolution_guard_is_enforced() {
    let p = WireParams::new(2, 0.0, 2.0, 1.0).unwrap();
    let cfg = IntegratorConfig::new(0.06, 10.0, 1.0).unwrap();
    assert!(matches!(integrate(&p, 0.0, &cfg), Err(Error::Config(_))));
    let cfg = IntegratorConfig::new(0.05, 10.0, 1.0).unwrap();
    assert!(integrate(&p, 0.0, &cfg).is_ok());
}
