//! Weighted polynomial approximation on [-1,1] built around an asymmetric
//! generalized translation operator.
//!
//! The crate provides:
//!
//! * [`numerics`] — quadrature rules, Chebyshev machinery, weighted
//!   L_{p,alpha} norms, and the [`FuncRep`](numerics::FuncRep) function
//!   representation shared by every operator;
//! * [`jacobi`] — Jacobi polynomials normalized at x=1, Fourier–Jacobi
//!   analysis against the weight (1-x^2)^2, and the differential operator
//!   D_{x,nu,mu};
//! * [`translation`] — the generalized translation tau_t / tau_y, its kernel,
//!   and r-fold generalized differences;
//! * [`smoothness`] — the generalized modulus of smoothness, the Peetre-type
//!   K-functional, the inverse operators H and H_delta, and kappa(delta);
//! * [`approx`] — best weighted polynomial approximation E_n in L_{p,alpha}
//!   (projection, weighted exchange, IRLS) and Bernstein–Markov probes;
//! * [`verify`] — experiment drivers that turn the operator identities and
//!   two-sided inequalities into ratio tables and a pass/fail report.

pub mod approx;
pub mod error;
pub mod jacobi;
pub mod numerics;
pub mod smoothness;
pub mod translation;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{FuncRep, PExp, Regime, WeightedSpace};
