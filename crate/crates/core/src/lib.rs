//! Continuant identities for symmetric Toeplitz tridiagonal matrices and the
//! transmittance of an `N`-site tight-binding wire between two wide-band leads.
//!
//! The crate is organised bottom-up:
//!
//! * [`tridiag`]: determinant sequences (exact and floating), the Chebyshev
//!   form, the corner cofactor, and the identity
//!   `cof(A_N)_{N,1}^2 = A_{N-1}^2 - A_{N-2} A_N`.
//! * [`wire`]: the open-wire matrix `C_N(eps)` with complex corners, its
//!   determinant, cofactor and first inverse column.
//! * [`transport`]: transmittance by the Green's-function and
//!   evolution-operator closed forms, spectra, and the Landauer current.
//! * [`time_domain`]: direct integration of the amplitude equations and the
//!   comparison with their steady state.
//! * [`cli`]: the `qwire` command-line front end.
//!
//! ```
//! use qwire::{transport, WireParams};
//!
//! let p = WireParams::new(5, 0.0, 1.0, 0.5)?;
//! let gf = transport::transmittance_gf(&p, 0.3);
//! let eo = transport::transmittance_eo(&p, 0.3);
//! assert!((gf - eo).abs() < 1e-12);
//! # Ok::<(), qwire::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod quadrature;
pub mod time_domain;
pub mod transport;
pub mod tridiag;
pub mod wire;

pub use error::{Error, Result};
pub use time_domain::{EvolutionTrajectory, IntegratorConfig};
pub use transport::{BiasWindow, Method, TransmissionSpectrum};
pub use tridiag::{ArithmeticMode, DetSequence, Scalar, SymToeplitzTridiag};
pub use wire::{HatDets, WireMatrix, WireParams};
