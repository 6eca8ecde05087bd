//! Symmetric Toeplitz tridiagonal matrices and their continuants.
//!
//! `A_N` has `alpha` on the diagonal and `beta` on both off-diagonals. Its
//! leading determinants obey the three-term recurrence
//!
//! ```text
//! A_0 = 1,  A_1 = alpha,  A_k = alpha * A_{k-1} - beta^2 * A_{k-2}
//! ```
//!
//! and the corner cofactor squared equals `A_{N-1}^2 - A_{N-2} A_N = beta^(2N-2)`.
//! Both integer-exact and double-precision evaluation are provided.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Magnitude above which a floating sequence is rescaled by `2^-SCALE_STEP`.
/// Chosen so that products of two stored values stay finite.
const SCALE_THRESHOLD: f64 = 1.157_920_892_373_162e77; // 2^256
const SCALE_STEP: i32 = 256;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymToeplitzTridiag {
    alpha: f64,
    beta: f64,
    n: usize,
}

impl SymToeplitzTridiag {
    pub fn new(alpha: f64, beta: f64, n: usize) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha and beta must be finite (got alpha = {alpha}, beta = {beta})"
            )));
        }
        Ok(Self { alpha, beta, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Same diagonal entries, different dimension.
    pub fn with_dim(&self, n: usize) -> Self {
        Self { n, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ArithmeticMode {
    /// Arbitrary-precision integers; inputs must be integral.
    ExactInteger,
    #[default]
    FloatingDouble,
}

impl FromStr for ArithmeticMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" | "exact-integer" => Ok(Self::ExactInteger),
            "float" | "floating" | "floating-double" => Ok(Self::FloatingDouble),
            other => Err(format!("unknown arithmetic mode `{other}` (expected exact or float)")),
        }
    }
}

impl fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ExactInteger => "exact",
            Self::FloatingDouble => "float",
        })
    }
}

/// A value produced in one of the two arithmetic modes.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Int(BigInt),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Int(i) => i.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(i) => i.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }
}

/// Leading determinants `[A_0, ..., A_N]`.
#[derive(Clone, Debug, PartialEq)]
pub enum DetSequence {
    Exact(Vec<BigInt>),
    /// Stored values are `A_k * 2^-scale_exponent`; one exponent is shared by
    /// the whole sequence so neighbouring entries are always at matched scale.
    Float {
        values: Vec<f64>,
        scale_exponent: i32,
    },
}

impl DetSequence {
    pub fn len(&self) -> usize {
        match self {
            DetSequence::Exact(v) => v.len(),
            DetSequence::Float { values, .. } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `A_k` with the shared scale undone.
    pub fn get(&self, k: usize) -> Scalar {
        match self {
            DetSequence::Exact(v) => Scalar::Int(v[k].clone()),
            DetSequence::Float {
                values,
                scale_exponent,
            } => Scalar::Float(ldexp(values[k], *scale_exponent)),
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.get(k).to_f64()).collect()
    }
}

pub fn det_sequence(m: &SymToeplitzTridiag, mode: ArithmeticMode) -> Result<DetSequence> {
    match mode {
        ArithmeticMode::ExactInteger => {
            let alpha = to_bigint(m.alpha, "alpha")?;
            let beta = to_bigint(m.beta, "beta")?;
            Ok(DetSequence::Exact(exact_sequence(&alpha, &beta, m.n)))
        }
        ArithmeticMode::FloatingDouble => {
            let (values, scale_exponent) = float_sequence(m.alpha, m.beta, m.n);
            Ok(DetSequence::Float {
                values,
                scale_exponent,
            })
        }
    }
}

fn exact_sequence(alpha: &BigInt, beta: &BigInt, n: usize) -> Vec<BigInt> {
    let b2 = beta * beta;
    let mut seq = Vec::with_capacity(n + 1);
    seq.push(BigInt::one());
    if n >= 1 {
        seq.push(alpha.clone());
    }
    for k in 2..=n {
        let next = alpha * &seq[k - 1] - &b2 * &seq[k - 2];
        seq.push(next);
    }
    seq
}

fn float_sequence(alpha: f64, beta: f64, n: usize) -> (Vec<f64>, i32) {
    let b2 = beta * beta;
    let mut seq = Vec::with_capacity(n + 1);
    let mut scale = 0;
    seq.push(1.0);
    if n >= 1 {
        seq.push(alpha);
        if alpha.abs() > SCALE_THRESHOLD {
            rescale(&mut seq, &mut scale);
        }
    }
    for k in 2..=n {
        let next = alpha * seq[k - 1] - b2 * seq[k - 2];
        seq.push(next);
        if next.abs() > SCALE_THRESHOLD {
            rescale(&mut seq, &mut scale);
        }
    }
    (seq, scale)
}

fn rescale(seq: &mut [f64], scale: &mut i32) {
    for v in seq.iter_mut() {
        *v = ldexp(*v, -SCALE_STEP);
    }
    *scale += SCALE_STEP;
}

pub fn det(m: &SymToeplitzTridiag, mode: ArithmeticMode) -> Result<Scalar> {
    let seq = det_sequence(m, mode)?;
    Ok(seq.get(m.n))
}

/// `beta^N * U_N(alpha / (2 beta))` with `U_N` the Chebyshev polynomial of
/// the second kind, evaluated by its own recurrence.
pub fn det_chebyshev(m: &SymToeplitzTridiag) -> Result<f64> {
    if m.beta == 0.0 {
        return Err(Error::Domain {
            op: "det_chebyshev",
            reason: "beta = 0 (use det, which gives alpha^N)".into(),
        });
    }
    let x = m.alpha / (2.0 * m.beta);
    let (mut prev, mut cur) = (0.0, 1.0); // U_{-1}, U_0
    for _ in 0..m.n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur * m.beta.powi(m.n as i32))
}

/// Determinant of the minor left after deleting row `N` and column 1.
///
/// That minor is lower triangular with `beta` on its diagonal, so the value is
/// `beta^(N-1)`. The alternating sign `(-1)^(N+1)` of the signed cofactor is
/// not applied; every use squares it.
pub fn corner_cofactor(m: &SymToeplitzTridiag) -> Result<f64> {
    if m.n == 0 {
        return Err(Error::Domain {
            op: "corner_cofactor",
            reason: "the empty matrix has no (N,1) entry".into(),
        });
    }
    Ok(m.beta.powi(m.n as i32 - 1))
}

/// The two sides of `cof(A_N)_{N,1}^2 = A_{N-1}^2 - A_{N-2} A_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityTerms {
    pub n: usize,
    /// `beta^(2N-2)`.
    pub cofactor_sq: Scalar,
    /// `A_{N-1}^2 - A_{N-2} A_N`.
    pub gap: Scalar,
    /// Exact mode: `cofactor_sq - gap`. Floating mode: the same difference
    /// divided by `beta^(2N-2)`, or left absolute when `beta = 0`.
    pub residual: Scalar,
}

pub fn identity_terms(m: &SymToeplitzTridiag, mode: ArithmeticMode) -> Result<IdentityTerms> {
    let n = m.n;
    if n < 2 {
        return Err(Error::Domain {
            op: "identity_residual",
            reason: format!("needs N >= 2, got N = {n}"),
        });
    }
    match det_sequence(m, mode)? {
        DetSequence::Exact(seq) => {
            let beta = to_bigint(m.beta, "beta")?;
            let cof = num_traits::pow(beta, n - 1);
            let cofactor_sq = &cof * &cof;
            let gap = &seq[n - 1] * &seq[n - 1] - &seq[n - 2] * &seq[n];
            let residual = &cofactor_sq - &gap;
            Ok(IdentityTerms {
                n,
                cofactor_sq: Scalar::Int(cofactor_sq),
                gap: Scalar::Int(gap),
                residual: Scalar::Int(residual),
            })
        }
        DetSequence::Float {
            values,
            scale_exponent,
        } => {
            let (a, b, c) = (values[n - 1], values[n - 2], values[n]);
            let gap_scaled = a * a - b * c;
            let gap = ldexp(gap_scaled, 2 * scale_exponent);
            let residual = if m.beta == 0.0 {
                -gap
            } else {
                let (pm, pe) = pow_frexp(m.beta.abs(), 2 * n as u32 - 2);
                let (gm, ge) = frexp(gap_scaled);
                1.0 - ldexp(gm / pm, ge + 2 * scale_exponent - pe)
            };
            let cofactor_sq = if m.beta == 0.0 {
                0.0
            } else {
                let (pm, pe) = pow_frexp(m.beta.abs(), 2 * n as u32 - 2);
                ldexp(pm, pe)
            };
            Ok(IdentityTerms {
                n,
                cofactor_sq: Scalar::Float(cofactor_sq),
                gap: Scalar::Float(gap),
                residual: Scalar::Float(residual),
            })
        }
    }
}

pub fn identity_residual(m: &SymToeplitzTridiag, mode: ArithmeticMode) -> Result<Scalar> {
    identity_terms(m, mode).map(|t| t.residual)
}

fn to_bigint(x: f64, name: &str) -> Result<BigInt> {
    if x.fract() != 0.0 {
        return Err(Error::Mode(format!("{name} = {x} is not an integer")));
    }
    BigInt::from_f64(x).ok_or_else(|| Error::Mode(format!("{name} = {x} is not representable")))
}

/// `x * 2^e` without intermediate overflow for any `e` reachable here.
pub(crate) fn ldexp(mut x: f64, mut e: i32) -> f64 {
    const CHUNK: i32 = 1000;
    while e > CHUNK {
        x *= 2f64.powi(CHUNK);
        e -= CHUNK;
        if !x.is_finite() || x == 0.0 {
            return x;
        }
    }
    while e < -CHUNK {
        x *= 2f64.powi(-CHUNK);
        e += CHUNK;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e)
}

/// Split finite nonzero `x` into `m * 2^e` with `0.5 <= |m| < 1`.
pub(crate) fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, exp - 1022)
}

/// `x^k` as a normalized mantissa/exponent pair, for `x > 0`.
fn pow_frexp(x: f64, k: u32) -> (f64, i32) {
    let (bm, be) = frexp(x);
    let (mut m, mut e) = (1.0f64, 0i32);
    for _ in 0..k {
        let (nm, ne) = frexp(m * bm);
        m = nm;
        e += ne + be;
    }
    (m, e)
}
