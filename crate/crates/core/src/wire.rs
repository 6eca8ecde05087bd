//! The open-wire matrix `C_N` at a probe energy.
//!
//! `C_N` is symmetric tridiagonal with `eps0 - eps` on the diagonal, `-v` on
//! the off-diagonals, and `i*gamma/2` added at `(1,1)` and `(N,N)`. For a
//! single site the two corners coincide and the diagonal is `eps0 - eps + i*gamma`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tridiag::{self, ArithmeticMode, SymToeplitzTridiag};

/// Relative tolerance for the wide-band relation when both `gamma` and
/// `v_lead` are supplied.
const WIDE_BAND_RTOL: f64 = 1e-9;

/// Physical parameters of the chain and its (identical) leads, with hbar = 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WireParams {
    n: usize,
    eps0: f64,
    v: f64,
    gamma: f64,
    bandwidth: f64,
    v_lead: f64,
}

impl WireParams {
    /// Unit bandwidth; the lead coupling follows from `gamma = 2 pi v_lead^2 / D`.
    pub fn new(n: usize, eps0: f64, v: f64, gamma: f64) -> Result<Self> {
        Self::from_parts(n, eps0, v, gamma, 1.0, None)
    }

    pub fn from_parts(
        n: usize,
        eps0: f64,
        v: f64,
        gamma: f64,
        bandwidth: f64,
        v_lead: Option<f64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("site count must be at least 1".into()));
        }
        for (name, x) in [("eps0", eps0), ("v", v), ("gamma", gamma), ("bandwidth", bandwidth)] {
            if !x.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {x}")));
            }
        }
        if gamma <= 0.0 {
            return Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")));
        }
        if bandwidth <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "bandwidth must be positive, got {bandwidth}"
            )));
        }
        let derived = (gamma * bandwidth / (2.0 * PI)).sqrt();
        let v_lead = match v_lead {
            None => derived,
            Some(vl) => {
                if !vl.is_finite() {
                    return Err(Error::InvalidParameter(format!("v_lead must be finite, got {vl}")));
                }
                let implied = 2.0 * PI * vl * vl / bandwidth;
                if ((implied - gamma) / gamma).abs() > WIDE_BAND_RTOL {
                    return Err(Error::InvalidParameter(format!(
                        "v_lead = {vl} implies gamma = {implied}, inconsistent with gamma = {gamma}"
                    )));
                }
                vl
            }
        };
        Ok(Self {
            n,
            eps0,
            v,
            gamma,
            bandwidth,
            v_lead,
        })
    }

    /// Same wire, different bandwidth; `v_lead` is re-derived so `gamma` is kept.
    pub fn with_bandwidth(&self, bandwidth: f64) -> Result<Self> {
        Self::from_parts(self.n, self.eps0, self.v, self.gamma, bandwidth, None)
    }

    pub fn with_sites(&self, n: usize) -> Result<Self> {
        Self::from_parts(n, self.eps0, self.v, self.gamma, self.bandwidth, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn eps0(&self) -> f64 {
        self.eps0
    }
    pub fn v(&self) -> f64 {
        self.v
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }
    pub fn v_lead(&self) -> f64 {
        self.v_lead
    }

    /// The closed chain's `A_N` at `eps`: diagonal `eps0 - eps`, off-diagonal `-v`.
    pub fn closed_chain(&self, eps: f64) -> SymToeplitzTridiag {
        SymToeplitzTridiag::new(self.eps0 - eps, -self.v, self.n)
            .expect("validated parameters are finite")
    }
}

/// Determinants of the closed chain (`gamma = 0`) at dimensions `N`, `N-1`, `N-2`,
/// with `C^_0 = 1` and `C^_{-1} = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HatDets {
    pub c_hat_n: f64,
    pub c_hat_n1: f64,
    pub c_hat_n2: f64,
}

pub fn hat_dets(p: &WireParams, eps: f64) -> HatDets {
    let seq = tridiag::det_sequence(&p.closed_chain(eps), ArithmeticMode::FloatingDouble)
        .expect("floating mode never fails");
    let n = p.n;
    let at = |k: usize| seq.get(k).to_f64();
    HatDets {
        c_hat_n: at(n),
        c_hat_n1: at(n - 1),
        c_hat_n2: if n >= 2 { at(n - 2) } else { 0.0 },
    }
}

/// `det C_N = C^_N + i*gamma*C^_{N-1} - (gamma^2/4) C^_{N-2}`.
///
/// Expanding along the first and last rows peels off each complex corner in
/// turn; the cross term needs the `N-2` interior block.
pub fn det_wire(p: &WireParams, eps: f64) -> Complex64 {
    let h = hat_dets(p, eps);
    let g = p.gamma;
    Complex64::new(h.c_hat_n - 0.25 * g * g * h.c_hat_n2, g * h.c_hat_n1)
}

/// `cof(C_N)_{N,1} = (-1)^(N+1) (-v)^(N-1) = v^(N-1)`; 1 for a single site.
pub fn corner_cofactor_wire(p: &WireParams) -> f64 {
    p.v.powi(p.n as i32 - 1)
}

/// First column of `C_N^-1`, i.e. the solution of `C_N u = e_1`.
pub fn first_inverse_column(p: &WireParams, eps: f64) -> Result<Vec<Complex64>> {
    let mut rhs = vec![Complex64::new(0.0, 0.0); p.n];
    rhs[0] = Complex64::new(1.0, 0.0);
    WireMatrix::new(*p, eps).to_tridiag().solve(&rhs)
}

/// `C_N` evaluated at one probe energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WireMatrix {
    pub params: WireParams,
    pub energy: f64,
}

impl WireMatrix {
    pub fn new(params: WireParams, energy: f64) -> Self {
        Self { params, energy }
    }

    pub fn to_tridiag(&self) -> ComplexTridiag {
        let p = &self.params;
        let n = p.n;
        let mut diag = vec![Complex64::new(p.eps0 - self.energy, 0.0); n];
        let corner = Complex64::new(0.0, 0.5 * p.gamma);
        diag[0] += corner;
        diag[n - 1] += corner;
        let off = vec![Complex64::new(-p.v, 0.0); n.saturating_sub(1)];
        ComplexTridiag::new(off.clone(), diag, off).expect("band lengths match")
    }

    pub fn det(&self) -> Complex64 {
        det_wire(&self.params, self.energy)
    }

    pub fn hat_dets(&self) -> HatDets {
        hat_dets(&self.params, self.energy)
    }

    pub fn corner_cofactor(&self) -> f64 {
        corner_cofactor_wire(&self.params)
    }

    pub fn first_inverse_column(&self) -> Result<Vec<Complex64>> {
        first_inverse_column(&self.params, self.energy)
    }
}

/// General complex tridiagonal matrix stored by bands.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexTridiag {
    sub: Vec<Complex64>,
    diag: Vec<Complex64>,
    sup: Vec<Complex64>,
}

impl ComplexTridiag {
    pub fn new(sub: Vec<Complex64>, diag: Vec<Complex64>, sup: Vec<Complex64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 || sub.len() != n - 1 || sup.len() != n - 1 {
            return Err(Error::InvalidParameter(format!(
                "band lengths {}/{}/{} do not form a tridiagonal matrix",
                sub.len(),
                n,
                sup.len()
            )));
        }
        Ok(Self { sub, diag, sup })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].norm();
                if i > 0 {
                    s += self.sub[i - 1].norm();
                }
                if i + 1 < n {
                    s += self.sup[i].norm();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// Gaussian elimination with partial (row) pivoting, LAPACK `gtsv` style.
    /// Row swaps create one extra superdiagonal of fill-in.
    pub fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        assert_eq!(rhs.len(), n, "right-hand side length");
        let zero = Complex64::new(0.0, 0.0);
        let mut dl = self.sub.clone();
        let mut d = self.diag.clone();
        let mut du = self.sup.clone();
        let mut fill = vec![zero; n.saturating_sub(2)];
        let mut b = rhs.to_vec();

        for i in 0..n - 1 {
            if d[i].l1_norm() >= dl[i].l1_norm() {
                if d[i] == zero {
                    return Err(Error::Singular { row: i });
                }
                let fact = dl[i] / d[i];
                d[i + 1] -= fact * du[i];
                let bi = b[i];
                b[i + 1] -= fact * bi;
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - fact * tmp;
                if i + 2 < n {
                    fill[i] = du[i + 1];
                    du[i + 1] = -fact * fill[i];
                }
                du[i] = tmp;
                let bi = b[i];
                b[i] = b[i + 1];
                b[i + 1] = bi - fact * b[i + 1];
            }
            dl[i] = zero;
        }
        if d[n - 1] == zero {
            return Err(Error::Singular { row: n - 1 });
        }

        b[n - 1] /= d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - du[i] * b[i + 1] - fill[i] * b[i + 2]) / d[i];
        }
        Ok(b)
    }
}
