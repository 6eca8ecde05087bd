//! Time integration of the evolution-operator amplitudes `U_{i,k}(t)`.
//!
//! For a lead state of energy `eps_k`, with `w = eps0 - eps_k`,
//!
//! ```text
//! dU_i/dt = -i v (U_{i+1} + U_{i-1})
//!           - delta_{i,1} (i V_L e^{i w t} + gamma U_1 / 2)
//!           - delta_{i,N} gamma U_N / 2
//! ```
//!
//! with `U_0 = U_{N+1} = 0` and `U(0) = 0`. After the transient the amplitudes
//! rotate as `e^{i w t} c_i` with `|c_i| = V_L |(C_N^-1)_{i,1}|`; substituting
//! that ansatz gives `c_i = (-1)^i V_L conj((C_N^-1)_{i,1})`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::wire::{first_inverse_column, WireParams};

/// Largest allowed `dt * max(|eps0 - eps_k|, gamma, |v|)`.
pub const RESOLUTION_GUARD: f64 = 0.1;

/// Fixed-step classical Runge-Kutta (4th order) settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    /// Trailing time span averaged by [`steady_state_compare`].
    pub convergence_window: f64,
    /// Keep every `sample_stride`-th step (the final step is always kept).
    pub sample_stride: usize,
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_max: f64, convergence_window: f64) -> Result<Self> {
        let cfg = Self {
            dt,
            t_max,
            convergence_window,
            sample_stride: 1,
        };
        cfg.validate_shape()?;
        Ok(cfg)
    }

    /// Horizon `40/gamma`, a step at a quarter of the resolution guard, and a
    /// trailing window of `5/gamma`.
    pub fn for_drive(p: &WireParams, drive_energy: f64) -> Self {
        let rate = max_rate(p, drive_energy);
        let t_max = 40.0 / p.gamma();
        Self {
            dt: 0.25 * RESOLUTION_GUARD / rate,
            t_max,
            convergence_window: (5.0 / p.gamma()).min(0.5 * t_max),
            sample_stride: 1,
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.sample_stride = stride.max(1);
        self
    }

    fn validate_shape(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::Config(format!("t_max must be positive, got {}", self.t_max)));
        }
        if !(self.convergence_window > 0.0 && self.convergence_window <= self.t_max) {
            return Err(Error::Config(format!(
                "convergence window must lie in (0, t_max], got {}",
                self.convergence_window
            )));
        }
        if self.sample_stride == 0 {
            return Err(Error::Config("sample stride must be at least 1".into()));
        }
        Ok(())
    }

    pub fn validate(&self, p: &WireParams, drive_energy: f64) -> Result<()> {
        self.validate_shape()?;
        let resolution = self.dt * max_rate(p, drive_energy);
        if resolution > RESOLUTION_GUARD {
            return Err(Error::Config(format!(
                "dt * max(|eps0 - eps_k|, gamma, |v|) = {resolution} exceeds {RESOLUTION_GUARD}"
            )));
        }
        Ok(())
    }
}

fn max_rate(p: &WireParams, drive_energy: f64) -> f64 {
    (p.eps0() - drive_energy).abs().max(p.gamma()).max(p.v().abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvolutionTrajectory {
    pub params: WireParams,
    pub drive_energy: f64,
    pub drive_amplitude: f64,
    pub convergence_window: f64,
    pub times: Vec<f64>,
    /// `u[k][i]` is `U_{i+1}(times[k])`.
    pub u: Vec<Vec<Complex64>>,
}

impl EvolutionTrajectory {
    /// Drive frequency `eps0 - eps_k` in the rotating factor.
    pub fn drive_frequency(&self) -> f64 {
        self.params.eps0() - self.drive_energy
    }

    /// `e^{-i w t} U(t)` at sample `k`.
    pub fn rotated(&self, k: usize) -> Vec<Complex64> {
        let phase = Complex64::from_polar(1.0, -self.drive_frequency() * self.times[k]);
        self.u[k].iter().map(|z| z * phase).collect()
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory has at least the initial sample")
    }
}

/// Integrate with the lead coupling `V_L` of `p` as the drive amplitude.
pub fn integrate(p: &WireParams, drive_energy: f64, cfg: &IntegratorConfig) -> Result<EvolutionTrajectory> {
    integrate_with_amplitude(p, drive_energy, p.v_lead(), cfg)
}

/// Same as [`integrate`] with an explicit drive amplitude. The equations are
/// linear in it; the broadening `gamma` stays that of `p`.
pub fn integrate_with_amplitude(
    p: &WireParams,
    drive_energy: f64,
    amplitude: f64,
    cfg: &IntegratorConfig,
) -> Result<EvolutionTrajectory> {
    cfg.validate(p, drive_energy)?;
    if !drive_energy.is_finite() || !amplitude.is_finite() {
        return Err(Error::InvalidParameter("drive energy and amplitude must be finite".into()));
    }
    let n = p.n();
    let steps = (cfg.t_max / cfg.dt - 1e-9).ceil().max(1.0) as usize;
    let h = cfg.t_max / steps as f64;
    let bound = 2.0 * n as f64 * amplitude.abs() / p.gamma();

    let rhs = Rhs {
        v: p.v(),
        half_gamma: 0.5 * p.gamma(),
        omega: p.eps0() - drive_energy,
        amplitude,
    };
    let zero = Complex64::new(0.0, 0.0);
    let mut state = vec![zero; n];
    let mut ks = [vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n]];
    let mut scratch = vec![zero; n];

    let mut times = vec![0.0];
    let mut u = vec![state.clone()];
    for step in 1..=steps {
        let t = (step - 1) as f64 * h;
        rk4_step(&rhs, t, h, &mut state, &mut ks, &mut scratch);
        let t_new = step as f64 * h;
        for z in &state {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::BlowUp {
                    time: t_new,
                    reason: "non-finite amplitude".into(),
                });
            }
            if z.norm() > bound {
                return Err(Error::BlowUp {
                    time: t_new,
                    reason: format!("|U| = {} exceeds 2 N V_L / gamma = {bound}", z.norm()),
                });
            }
        }
        if step % cfg.sample_stride == 0 || step == steps {
            times.push(t_new);
            u.push(state.clone());
        }
    }
    Ok(EvolutionTrajectory {
        params: *p,
        drive_energy,
        drive_amplitude: amplitude,
        convergence_window: cfg.convergence_window,
        times,
        u,
    })
}

struct Rhs {
    v: f64,
    half_gamma: f64,
    omega: f64,
    amplitude: f64,
}

impl Rhs {
    fn eval(&self, t: f64, u: &[Complex64], out: &mut [Complex64]) {
        let n = u.len();
        let minus_iv = Complex64::new(0.0, -self.v);
        for i in 0..n {
            let mut nb = Complex64::new(0.0, 0.0);
            if i > 0 {
                nb += u[i - 1];
            }
            if i + 1 < n {
                nb += u[i + 1];
            }
            out[i] = minus_iv * nb;
        }
        let drive = Complex64::new(0.0, -self.amplitude) * Complex64::from_polar(1.0, self.omega * t);
        out[0] += drive - self.half_gamma * u[0];
        out[n - 1] -= self.half_gamma * u[n - 1];
    }
}

fn rk4_step(
    rhs: &Rhs,
    t: f64,
    h: f64,
    state: &mut [Complex64],
    ks: &mut [Vec<Complex64>; 4],
    scratch: &mut [Complex64],
) {
    let n = state.len();
    let [k1, k2, k3, k4] = ks;
    rhs.eval(t, state, k1);
    for i in 0..n {
        scratch[i] = state[i] + 0.5 * h * k1[i];
    }
    rhs.eval(t + 0.5 * h, scratch, k2);
    for i in 0..n {
        scratch[i] = state[i] + 0.5 * h * k2[i];
    }
    rhs.eval(t + 0.5 * h, scratch, k3);
    for i in 0..n {
        scratch[i] = state[i] + h * k3[i];
    }
    rhs.eval(t + h, scratch, k4);
    for i in 0..n {
        state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

/// `V_L (C_N^-1)_{i,1}`, the closed-form steady amplitudes up to convention.
pub fn formal_solution(p: &WireParams, drive_energy: f64, amplitude: f64) -> Result<Vec<Complex64>> {
    Ok(first_inverse_column(p, drive_energy)?
        .into_iter()
        .map(|z| z * amplitude)
        .collect())
}

/// Limit of `e^{-i w t} U_i(t)`: `(-1)^i conj` of the formal solution.
pub fn rotated_steady_state(p: &WireParams, drive_energy: f64, amplitude: f64) -> Result<Vec<Complex64>> {
    Ok(formal_solution(p, drive_energy, amplitude)?
        .into_iter()
        .enumerate()
        .map(|(j, z)| if j % 2 == 0 { -z.conj() } else { z.conj() })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SteadyStateReport {
    pub window: (f64, f64),
    pub samples: usize,
    /// `| <|U_i|> - V_L |(C^-1)_{i,1}| |` over the window.
    pub modulus_deviation: Vec<f64>,
    /// `| <e^{-iwt} U_i> - (-1)^i V_L conj((C^-1)_{i,1}) |` over the window.
    pub complex_deviation: Vec<f64>,
    /// Angle between the averaged rotated amplitude and its prediction, in radians.
    pub phase_deviation: Vec<f64>,
    pub max_modulus_deviation: f64,
    pub max_complex_deviation: f64,
    /// Larger of the two maxima above.
    pub max_deviation: f64,
}

pub fn steady_state_compare(traj: &EvolutionTrajectory, p: &WireParams) -> Result<SteadyStateReport> {
    let t_end = traj.final_time();
    let needed = 10.0 / p.gamma();
    if t_end < needed * (1.0 - 1e-12) {
        return Err(Error::Precondition(format!(
            "trajectory ends at t = {t_end}, before 10/gamma = {needed}"
        )));
    }
    let predicted = formal_solution(p, traj.drive_energy, traj.drive_amplitude)?;
    let rotated_pred = rotated_steady_state(p, traj.drive_energy, traj.drive_amplitude)?;
    let t_start = t_end - traj.convergence_window;
    let idx: Vec<usize> = (0..traj.times.len()).filter(|&k| traj.times[k] >= t_start).collect();
    let n = p.n();
    let count = idx.len() as f64;
    let mut mean_abs = vec![0.0; n];
    let mut mean_rot = vec![Complex64::new(0.0, 0.0); n];
    for &k in &idx {
        for (i, z) in traj.rotated(k).into_iter().enumerate() {
            mean_abs[i] += traj.u[k][i].norm() / count;
            mean_rot[i] += z / count;
        }
    }
    let modulus_deviation: Vec<f64> = (0..n).map(|i| (mean_abs[i] - predicted[i].norm()).abs()).collect();
    let complex_deviation: Vec<f64> = (0..n).map(|i| (mean_rot[i] - rotated_pred[i]).norm()).collect();
    let phase_deviation: Vec<f64> = (0..n)
        .map(|i| {
            if rotated_pred[i].norm() == 0.0 || mean_rot[i].norm() == 0.0 {
                0.0
            } else {
                (mean_rot[i] / rotated_pred[i]).arg().abs()
            }
        })
        .collect();
    let max = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    let max_modulus_deviation = max(&modulus_deviation);
    let max_complex_deviation = max(&complex_deviation);
    Ok(SteadyStateReport {
        window: (t_start, t_end),
        samples: idx.len(),
        modulus_deviation,
        complex_deviation,
        phase_deviation,
        max_modulus_deviation,
        max_complex_deviation,
        max_deviation: max_modulus_deviation.max(max_complex_deviation),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, eps0: f64, v: f64, gamma: f64) -> WireParams {
        WireParams::new(n, eps0, v, gamma).unwrap()
    }

    /// Single site driven on resonance: `dU/dt = -i V_L - gamma U` (both
    /// corner broadenings act on the one site).
    fn single_site_exact(vl: f64, gamma: f64, t: f64) -> Complex64 {
        Complex64::new(0.0, -vl) * (1.0 - (-gamma * t).exp()) / gamma
    }

    #[test]
    fn config_guard() {
        let p = params(3, 0.0, 1.0, 0.5);
        assert!(IntegratorConfig::new(0.0, 1.0, 0.5).is_err());
        assert!(IntegratorConfig::new(0.1, 1.0, 2.0).is_err());
        let cfg = IntegratorConfig::new(0.2, 10.0, 1.0).unwrap();
        assert!(matches!(integrate(&p, 0.0, &cfg), Err(Error::Config(_))));
        // detuning counts toward the guard too
        let cfg = IntegratorConfig::new(0.05, 10.0, 1.0).unwrap();
        assert!(integrate(&p, 0.0, &cfg).is_ok());
        assert!(matches!(integrate(&p, 5.0, &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn single_site_matches_closed_form() {
        let g = 0.8;
        let p = params(1, 0.3, 1.0, g);
        let cfg = IntegratorConfig::new(0.01, 10.0 / g, 1.0).unwrap();
        let traj = integrate(&p, 0.3, &cfg).unwrap();
        for (k, &t) in traj.times.iter().enumerate() {
            let want = single_site_exact(p.v_lead(), g, t);
            assert!((traj.u[k][0] - want).norm() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn undriven_wire_stays_empty() {
        let p = params(4, 0.0, 1.0, 0.5);
        let cfg = IntegratorConfig::for_drive(&p, 0.3);
        let traj = integrate_with_amplitude(&p, 0.3, 0.0, &cfg).unwrap();
        assert!(traj.u.iter().flatten().all(|z| *z == Complex64::new(0.0, 0.0)));
        let r = steady_state_compare(&traj, &p).unwrap();
        assert_eq!(r.max_deviation, 0.0);
    }

    #[test]
    fn sampling_stride_keeps_final_step() {
        let p = params(2, 0.0, 1.0, 1.0);
        let cfg = IntegratorConfig::new(0.01, 1.005, 0.5).unwrap().with_stride(10);
        let traj = integrate(&p, 0.0, &cfg).unwrap();
        assert_eq!(traj.times[0], 0.0);
        assert!((traj.final_time() - 1.005).abs() < 1e-12);
        assert!(traj.times.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn relaxes_to_steady_state() {
        for &(n, detune) in &[(1, 0.0), (2, 0.0), (2, 1.0)] {
            let p = params(n, 0.0, 1.0, 1.0);
            let drive = p.eps0() + detune;
            let cfg = IntegratorConfig::for_drive(&p, drive);
            let traj = integrate(&p, drive, &cfg).unwrap();
            let r = steady_state_compare(&traj, &p).unwrap();
            assert!(r.max_deviation < 1e-6, "n={n} detune={detune}: {r:?}");
            assert!(r.phase_deviation.iter().all(|&d| d < 1e-4));
        }
    }

    #[test]
    fn short_horizon_is_rejected() {
        let p = params(2, 0.0, 1.0, 1.0);
        let cfg = IntegratorConfig::new(0.01, 5.0, 1.0).unwrap();
        let traj = integrate(&p, 0.0, &cfg).unwrap();
        assert!(matches!(steady_state_compare(&traj, &p), Err(Error::Precondition(_))));
    }
}
