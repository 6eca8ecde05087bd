//! Dense reference routines for cross-checking the banded algorithms in `qwire`.
//!
//! Everything here works on explicitly assembled `n x n` matrices with
//! Gaussian elimination and partial pivoting. It is deliberately naive: the
//! point is to share no code path with the recurrences it checks.

use num_complex::Complex64;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    n: usize,
    data: Vec<Complex64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has the wrong length");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(x, 0.0);
            }
        }
        m
    }

    /// Symmetric tridiagonal matrix with constant `diag` and `off` entries.
    pub fn toeplitz_tridiag(n: usize, diag: Complex64, off: Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = diag;
            if i + 1 < n {
                m[(i, i + 1)] = off;
                m[(i + 1, i)] = off;
            }
        }
        m
    }

    /// The open-wire matrix: real diagonal `eps0 - eps`, off-diagonal `-v`,
    /// and `i*gamma/2` added to both corners (stacking when `n == 1`).
    pub fn wire(n: usize, eps0: f64, v: f64, gamma: f64, eps: f64) -> Self {
        let mut m = Self::toeplitz_tridiag(
            n,
            Complex64::new(eps0 - eps, 0.0),
            Complex64::new(-v, 0.0),
        );
        let corner = Complex64::new(0.0, gamma / 2.0);
        m[(0, 0)] += corner;
        m[(n - 1, n - 1)] += corner;
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Determinant by LU with partial pivoting. The empty matrix gives 1.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[r * n + col].norm().total_cmp(&a[s * n + col].norm()))
                .unwrap();
            if a[pivot * n + col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                if f.norm() == 0.0 {
                    continue;
                }
                for j in col..n {
                    let upd = f * a[col * n + j];
                    a[r * n + j] -= upd;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Option<Dense> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[r * n + col].norm().total_cmp(&a[s * n + col].norm()))
                .unwrap();
            if a[pivot * n + col].norm() == 0.0 {
                return None;
            }
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
            let p = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= p;
                inv[col * n + j] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f.norm() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let ua = f * a[col * n + j];
                    let ui = f * inv[col * n + j];
                    a[r * n + j] -= ua;
                    inv[r * n + j] -= ui;
                }
            }
        }
        Some(Dense { n, data: inv })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix with row `row` and column `col` removed.
    pub fn minor(&self, row: usize, col: usize) -> Dense {
        let n = self.n;
        let mut m = Self::zeros(n - 1);
        let mut k = 0;
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                m.data[k] = self[(i, j)];
                k += 1;
            }
        }
        m
    }

    /// Signed cofactor `(-1)^(row+col) * det(minor(row, col))`, zero-based indices.
    pub fn cofactor(&self, row: usize, col: usize) -> Complex64 {
        let sign = if (row + col).is_multiple_of(2) { 1.0 } else { -1.0 };
        self.minor(row, col).det() * sign
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * x[j]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Dense {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Dense {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Real determinant of the symmetric Toeplitz tridiagonal matrix, assembled densely.
pub fn toeplitz_det(alpha: f64, beta: f64, n: usize) -> f64 {
    Dense::toeplitz_tridiag(n, Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0))
        .det()
        .re
}

/// Transmittance `gamma^2 |(C^-1)_{1,N}|^2` from a full dense inverse.
pub fn dense_transmittance(n: usize, eps0: f64, v: f64, gamma: f64, eps: f64) -> f64 {
    let inv = Dense::wire(n, eps0, v, gamma, eps)
        .inverse()
        .expect("open wire matrix is nonsingular");
    gamma * gamma * inv[(0, n - 1)].norm_sqr()
}

/// `int_{c-w}^{c+w} gamma^2 / ((e-c)^2 + gamma^2) de`, the single-level
/// transmittance integrated over a symmetric window.
pub fn lorentzian_window_integral(gamma: f64, half_width: f64) -> f64 {
    2.0 * gamma * (half_width / gamma).atan()
}
