//! Transmittance of the wire by two independent closed forms, and the
//! Landauer current built on it.
//!
//! * Green's function: `T = gamma^2 cof^2 / |det C_N|^2`.
//! * Evolution operator: `T = gamma^2 / (2|det C_N|^2) * (cof^2 + C^_{N-1}^2 - C^_{N-2} C^_N)`.
//!
//! The two agree only because `C^_{N-1}^2 - C^_{N-2} C^_N = v^(2N-2) = cof^2`,
//! the continuant identity of [`crate::tridiag`]. Neither route uses that
//! identity; the evolution-operator route evaluates the hat determinants
//! numerically, so comparing the routes is a genuine check.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadConfig};
use crate::wire::{corner_cofactor_wire, det_wire, hat_dets, WireParams};

/// Tolerance used when re-deriving the evolution-operator value from its
/// three averaged terms, relative to the largest term.
const RECOMBINATION_RTOL: f64 = 1e-9;

pub fn transmittance_gf(p: &WireParams, eps: f64) -> f64 {
    let g = p.gamma();
    let cof = corner_cofactor_wire(p);
    g * g * cof * cof / det_wire(p, eps).norm_sqr()
}

/// The three averaged evolution-operator quantities at one energy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EoTerms {
    /// `<|U_1|^2> = 2 pi V_L^2 |C^_{N-1} + i(gamma/2) C^_{N-2}|^2 / |det C_N|^2`
    pub term_u1: f64,
    /// `<|U_N|^2> = 2 pi V_L^2 cof^2 / |det C_N|^2`
    pub term_un: f64,
    /// `-Im (V_L/D) <e^{i(eps-eps0)t} U_1>`
    pub term_im: f64,
}

impl EoTerms {
    /// `gamma/(2D) (<|U_N|^2> - <|U_1|^2>) - Im(...)` term, the transmittance
    /// as assembled directly from the averaged amplitudes.
    pub fn recombine(&self, p: &WireParams) -> f64 {
        p.gamma() / (2.0 * p.bandwidth()) * (self.term_un - self.term_u1) + self.term_im
    }

    /// Magnitude of the largest contribution to [`EoTerms::recombine`].
    pub fn scale(&self, p: &WireParams) -> f64 {
        let k = p.gamma() / (2.0 * p.bandwidth());
        (k * self.term_un)
            .abs()
            .max((k * self.term_u1).abs())
            .max(self.term_im.abs())
    }
}

pub fn eo_terms(p: &WireParams, eps: f64) -> EoTerms {
    let h = hat_dets(p, eps);
    let g = p.gamma();
    let det2 = det_wire(p, eps).norm_sqr();
    let cof = corner_cofactor_wire(p);
    let two_pi_vl2 = 2.0 * PI * p.v_lead() * p.v_lead();
    let half_g = 0.5 * g;
    EoTerms {
        term_u1: two_pi_vl2 * (h.c_hat_n1.powi(2) + (half_g * h.c_hat_n2).powi(2)) / det2,
        term_un: two_pi_vl2 * cof * cof / det2,
        term_im: g * g / (2.0 * det2)
            * (2.0 * h.c_hat_n1.powi(2) - h.c_hat_n2 * h.c_hat_n
                + 0.25 * g * g * h.c_hat_n2.powi(2)),
    }
}

pub fn transmittance_eo(p: &WireParams, eps: f64) -> f64 {
    let h = hat_dets(p, eps);
    let g = p.gamma();
    let det2 = det_wire(p, eps).norm_sqr();
    let cof = corner_cofactor_wire(p);
    let t = g * g / (2.0 * det2) * (cof * cof + h.c_hat_n1.powi(2) - h.c_hat_n2 * h.c_hat_n);
    debug_assert!(
        {
            let terms = eo_terms(p, eps);
            (terms.recombine(p) - t).abs() <= RECOMBINATION_RTOL * terms.scale(p).max(t.abs())
        },
        "averaged evolution-operator terms do not recombine at eps = {eps}"
    );
    t
}

/// Chain eigenvalues `eps0 + 2 v cos(m pi / (N+1))`, ascending.
pub fn chain_levels(p: &WireParams) -> Vec<f64> {
    let n = p.n();
    let mut levels: Vec<f64> = (1..=n)
        .map(|m| p.eps0() + 2.0 * p.v() * (m as f64 * PI / (n as f64 + 1.0)).cos())
        .collect();
    levels.sort_by(f64::total_cmp);
    levels
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Gf,
    Eo,
    Both,
}

impl Method {
    pub fn wants_gf(self) -> bool {
        matches!(self, Method::Gf | Method::Both)
    }
    pub fn wants_eo(self) -> bool {
        matches!(self, Method::Eo | Method::Both)
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gf" => Ok(Method::Gf),
            "eo" => Ok(Method::Eo),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method `{other}` (expected gf, eo or both)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Gf => "gf",
            Method::Eo => "eo",
            Method::Both => "both",
        })
    }
}

/// `points` equally spaced energies from `e_min` to `e_max`, both included.
pub fn uniform_grid(e_min: f64, e_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(e_min.is_finite() && e_max.is_finite()) || e_min >= e_max {
        return Err(Error::InvalidParameter(format!(
            "energy range must satisfy from < to, got [{e_min}, {e_max}]"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 points, got {points}")));
    }
    let step = (e_max - e_min) / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|i| e_min + step * i as f64).collect();
    grid[points - 1] = e_max;
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "grid spacing is below floating-point resolution".into(),
        ));
    }
    Ok(grid)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransmissionSpectrum {
    pub params: WireParams,
    pub method: Method,
    pub energies: Vec<f64>,
    pub t_gf: Option<Vec<f64>>,
    pub t_eo: Option<Vec<f64>>,
}

impl TransmissionSpectrum {
    pub fn abs_diff(&self) -> Option<Vec<f64>> {
        match (&self.t_gf, &self.t_eo) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| (x - y).abs()).collect()),
            _ => None,
        }
    }

    pub fn max_abs_diff(&self) -> Option<f64> {
        self.abs_diff().map(|d| d.into_iter().fold(0.0, f64::max))
    }
}

/// Evaluate the requested routes on a uniform grid. Energies are processed in
/// parallel; output order always follows the grid.
pub fn spectrum(
    p: &WireParams,
    e_min: f64,
    e_max: f64,
    points: usize,
    method: Method,
) -> Result<TransmissionSpectrum> {
    let energies = uniform_grid(e_min, e_max, points)?;
    let t_gf = method
        .wants_gf()
        .then(|| energies.par_iter().map(|&e| transmittance_gf(p, e)).collect());
    let t_eo = method
        .wants_eo()
        .then(|| energies.par_iter().map(|&e| transmittance_eo(p, e)).collect());
    Ok(TransmissionSpectrum {
        params: *p,
        method,
        energies,
        t_gf,
        t_eo,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub energies: Vec<f64>,
    pub t_gf: Vec<f64>,
    pub t_eo: Vec<f64>,
    pub abs_diff: Vec<f64>,
    pub max_abs_diff: f64,
    /// `C^_{N-1}^2 - C^_{N-2} C^_N` at each energy. Generically nonzero, so
    /// the two routes only coincide through the continuant identity.
    pub hat_gap: Vec<f64>,
    pub max_abs_hat_gap: f64,
    /// `|cof^2 - hat_gap| / cof^2` at each energy.
    pub bridge_rel: Vec<f64>,
    pub max_bridge_rel: f64,
}

pub fn equivalence_report(p: &WireParams, grid: &[f64]) -> Result<EquivalenceReport> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("energy grid is empty".into()));
    }
    let cof = corner_cofactor_wire(p);
    let cof2 = cof * cof;
    let rows: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&e| {
            let h = hat_dets(p, e);
            let gap = h.c_hat_n1.powi(2) - h.c_hat_n2 * h.c_hat_n;
            (transmittance_gf(p, e), transmittance_eo(p, e), gap)
        })
        .collect();
    let t_gf: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let t_eo: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let hat_gap: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let abs_diff: Vec<f64> = rows.iter().map(|r| (r.0 - r.1).abs()).collect();
    let bridge_rel: Vec<f64> = hat_gap.iter().map(|g| ((cof2 - g) / cof2).abs()).collect();
    let max = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(EquivalenceReport {
        energies: grid.to_vec(),
        max_abs_diff: max(&abs_diff),
        max_abs_hat_gap: max(&hat_gap),
        max_bridge_rel: max(&bridge_rel),
        t_gf,
        t_eo,
        abs_diff,
        hat_gap,
        bridge_rel,
    })
}

/// Chemical potentials of the two leads and a common temperature (k_B = 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BiasWindow {
    pub mu_left: f64,
    pub mu_right: f64,
    pub temperature: f64,
}

impl BiasWindow {
    pub fn new(mu_left: f64, mu_right: f64, temperature: f64) -> Result<Self> {
        if !(mu_left.is_finite() && mu_right.is_finite()) {
            return Err(Error::InvalidParameter("chemical potentials must be finite".into()));
        }
        if !temperature.is_finite() || temperature < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "temperature must be non-negative, got {temperature}"
            )));
        }
        Ok(Self {
            mu_left,
            mu_right,
            temperature,
        })
    }

    /// Energy range outside which `f_L - f_R` is negligible.
    pub fn support(&self) -> (f64, f64) {
        let lo = self.mu_left.min(self.mu_right);
        let hi = self.mu_left.max(self.mu_right);
        let pad = 40.0 * self.temperature;
        (lo - pad, hi + pad)
    }
}

/// Fermi-Dirac occupation; a step (with value 1/2 at `mu`) at zero temperature.
pub fn fermi(e: f64, mu: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return if e < mu {
            1.0
        } else if e > mu {
            0.0
        } else {
            0.5
        };
    }
    1.0 / (1.0 + ((e - mu) / temperature).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Current {
    /// `int (f_L - f_R) T de` in units with e = hbar = 1.
    pub value: f64,
    pub error_estimate: f64,
    pub window: (f64, f64),
}

pub fn landauer_current(p: &WireParams, bias: &BiasWindow, quad: &QuadConfig) -> Current {
    let window = bias.support();
    if bias.mu_left == bias.mu_right {
        return Current {
            value: 0.0,
            error_estimate: 0.0,
            window,
        };
    }
    // Seed the adaptive scheme with the resonances so narrow peaks cannot be
    // stepped over by the first rule evaluation.
    let mut breaks = vec![window.0, window.1];
    breaks.extend(chain_levels(p).into_iter().filter(|&e| e > window.0 && e < window.1));
    let pieces = 16;
    let step = (window.1 - window.0) / pieces as f64;
    breaks.extend((1..pieces).map(|i| window.0 + step * i as f64));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let (value, error) = if bias.temperature == 0.0 {
        let sign = if bias.mu_left > bias.mu_right { 1.0 } else { -1.0 };
        let (v, e) = integrate_pieces(|e| transmittance_gf(p, e), &breaks, quad);
        (sign * v, e)
    } else {
        let BiasWindow {
            mu_left,
            mu_right,
            temperature,
        } = *bias;
        integrate_pieces(
            |e| (fermi(e, mu_left, temperature) - fermi(e, mu_right, temperature)) * transmittance_gf(p, e),
            &breaks,
            quad,
        )
    };
    Current {
        value,
        error_estimate: error,
        window,
    }
}

fn integrate_pieces<F: Fn(f64) -> f64>(f: F, breaks: &[f64], quad: &QuadConfig) -> (f64, f64) {
    let mut total = 0.0;
    let mut err = 0.0;
    for w in breaks.windows(2) {
        let r = quadrature::integrate(&f, w[0], w[1], quad);
        total += r.value;
        err += r.error;
    }
    (total, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, eps0: f64, v: f64, gamma: f64) -> WireParams {
        WireParams::new(n, eps0, v, gamma).unwrap()
    }

    #[test]
    fn gf_examples() {
        assert!((transmittance_gf(&params(1, 0.3, 1.0, 0.4), 0.3) - 1.0).abs() < 1e-15);
        let v = 0.8;
        assert!((transmittance_gf(&params(2, 0.0, v, 2.0 * v), 0.0) - 1.0).abs() < 1e-14);
        assert!(transmittance_gf(&params(4, 0.0, 1.0, 0.5), 1e4) < 1e-20);
    }

    #[test]
    fn eo_examples() {
        let p = params(1, 0.0, 1.0, 0.7);
        let terms = eo_terms(&p, 0.0);
        assert!((terms.term_im - 1.0).abs() < 1e-14);
        assert!((terms.term_un - terms.term_u1).abs() < 1e-14);
        assert!((transmittance_eo(&p, 0.0) - 1.0).abs() < 1e-14);

        let v = 1.25;
        let p = params(2, 0.0, v, 2.0 * v);
        assert!((transmittance_eo(&p, 0.0) - 1.0).abs() < 1e-14);
        assert!((eo_terms(&p, 0.0).recombine(&p) - 1.0).abs() < 1e-13);

        let tiny = params(3, 0.0, 1.0, 1e-9);
        assert!(transmittance_eo(&tiny, 0.4) < 1e-15);
    }

    #[test]
    fn eo_matches_dense_gf_for_three_sites() {
        let v = 0.9;
        let p = params(3, 0.1, v, v);
        let dense = qwire_oracle::dense_transmittance(3, 0.1, v, v, 0.1);
        assert!((transmittance_eo(&p, 0.1) - dense).abs() < 1e-12);
    }

    #[test]
    fn bandwidth_drops_out() {
        let p = params(4, 0.2, 1.0, 0.6);
        for &d in &[0.01, 1.0, 250.0] {
            let q = p.with_bandwidth(d).unwrap();
            for &e in &[-1.9, -0.3, 0.2, 1.4] {
                let terms = eo_terms(&q, e);
                let t = transmittance_eo(&p, e);
                assert!((terms.recombine(&q) - t).abs() <= 1e-9 * terms.scale(&q));
                assert!((transmittance_eo(&q, e) - t).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn grid_contract() {
        assert_eq!(uniform_grid(-1.0, 2.0, 2).unwrap(), vec![-1.0, 2.0]);
        assert!(uniform_grid(1.0, 1.0, 5).is_err());
        assert!(uniform_grid(0.0, 1.0, 1).is_err());
        let g = uniform_grid(-3.0, 3.0, 7).unwrap();
        assert_eq!(g, vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn spectrum_columns_follow_method() {
        let p = params(3, 0.0, 1.0, 0.5);
        let s = spectrum(&p, -3.0, 3.0, 7, Method::Both).unwrap();
        assert_eq!(s.energies.len(), 7);
        let t = s.t_gf.as_ref().unwrap();
        for i in 0..7 {
            assert!((t[i] - t[6 - i]).abs() <= 1e-12 * t[i].max(1e-300));
        }
        assert!(s.max_abs_diff().unwrap() < 1e-12);
        let gf = spectrum(&p, -3.0, 3.0, 7, Method::Gf).unwrap();
        assert!(gf.t_eo.is_none() && gf.abs_diff().is_none());
        let eo = spectrum(&p, -3.0, 3.0, 7, Method::Eo).unwrap();
        assert!(eo.t_gf.is_none() && eo.t_eo.is_some());
    }

    #[test]
    fn equivalence_report_examples() {
        let p = params(2, 0.0, 0.6, 0.3);
        let r = equivalence_report(&p, &[0.0]).unwrap();
        assert!((r.hat_gap[0] - 0.36).abs() < 1e-15);
        assert!(equivalence_report(&p, &[]).is_err());

        let p = params(5, 0.0, 1.0, 0.5);
        let grid = uniform_grid(-4.0, 4.0, 1001).unwrap();
        let r = equivalence_report(&p, &grid).unwrap();
        assert!(r.max_abs_diff <= 1e-10);
        assert!(r.max_bridge_rel <= 1e-9, "{}", r.max_bridge_rel);
        assert!(r.max_abs_hat_gap > 0.0);
    }

    #[test]
    fn fermi_steps() {
        assert_eq!(fermi(-1.0, 0.0, 0.0), 1.0);
        assert_eq!(fermi(1.0, 0.0, 0.0), 0.0);
        assert_eq!(fermi(0.0, 0.0, 0.0), 0.5);
        assert!((fermi(0.0, 0.0, 0.1) - 0.5).abs() < 1e-15);
        assert_eq!(fermi(1e3, 0.0, 1e-3), 0.0);
        assert!(BiasWindow::new(0.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn current_examples() {
        let g = 0.2;
        let p = params(1, 0.0, 1.0, g);
        let q = QuadConfig::default();
        let zero = landauer_current(&p, &BiasWindow::new(0.3, 0.3, 0.0).unwrap(), &q);
        assert_eq!(zero.value, 0.0);

        let w = 50.0 * g;
        let i = landauer_current(&p, &BiasWindow::new(w, -w, 0.0).unwrap(), &q);
        let exact = qwire_oracle::lorentzian_window_integral(g, w);
        assert!(((i.value - exact) / exact).abs() < 1e-8);
        assert!(i.error_estimate <= 1e-8 * exact);
        let swapped = landauer_current(&p, &BiasWindow::new(-w, w, 0.0).unwrap(), &q);
        assert_eq!(swapped.value, -i.value);

        let hot = landauer_current(&p, &BiasWindow::new(0.5, -0.5, 0.05).unwrap(), &q);
        let hot_swapped = landauer_current(&p, &BiasWindow::new(-0.5, 0.5, 0.05).unwrap(), &q);
        assert_eq!(hot.value, -hot_swapped.value);
        assert!(hot.value > 0.0);
    }
}
