//! `FuncRep`: the common currency between operators. A function on [-1,1] is
//! either an opaque callable, a Chebyshev series, or a Jacobi series.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jacobi::JacobiSeries;
use crate::numerics::cheb;

/// A Chebyshev series sum c_k T_k(x).
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        ChebSeries { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        cheb::clenshaw(&self.coeffs, x)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// A function on [-1,1].
#[derive(Clone)]
pub enum FuncRep {
    /// Closed-form callable.
    Callable(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// Chebyshev series.
    Cheb(ChebSeries),
    /// Jacobi series in the basis R_n^{(nu,mu)} normalized at x=1.
    Jacobi(JacobiSeries),
}

impl std::fmt::Debug for FuncRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FuncRep::Callable(_) => write!(f, "FuncRep::Callable(..)"),
            FuncRep::Cheb(s) => write!(f, "FuncRep::Cheb(degree {})", s.degree()),
            FuncRep::Jacobi(s) => write!(
                f,
                "FuncRep::Jacobi(nu={}, mu={}, degree {})",
                s.nu,
                s.mu,
                s.degree()
            ),
        }
    }
}

impl FuncRep {
    pub fn from_fn(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        FuncRep::Callable(Arc::new(f))
    }

    pub fn constant(c: f64) -> Self {
        FuncRep::Cheb(ChebSeries::new(vec![c]))
    }

    /// Polynomial from monomial coefficients c_0 + c_1 x + ...
    pub fn from_monomials(mono: &[f64]) -> Self {
        if mono.is_empty() {
            return FuncRep::constant(0.0);
        }
        FuncRep::Cheb(ChebSeries::new(cheb::from_monomials(mono)))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            FuncRep::Callable(f) => f(x),
            FuncRep::Cheb(s) => s.eval(x),
            FuncRep::Jacobi(s) => s.eval(x),
        }
    }

    /// Polynomial degree of a series representation; None for callables.
    pub fn degree(&self) -> Option<usize> {
        match self {
            FuncRep::Callable(_) => None,
            FuncRep::Cheb(s) => Some(s.degree()),
            FuncRep::Jacobi(s) => Some(s.degree()),
        }
    }

    pub fn is_series(&self) -> bool {
        !matches!(self, FuncRep::Callable(_))
    }

    /// Chebyshev interpolant at `degree`+1 extrema points. Exact for series
    /// representations of degree <= `degree`.
    pub fn to_cheb(&self, degree: usize) -> Result<ChebSeries> {
        if let FuncRep::Cheb(s) = self {
            if s.degree() <= degree {
                let mut coeffs = s.coeffs.clone();
                coeffs.resize(degree + 1, 0.0);
                return Ok(ChebSeries::new(coeffs));
            }
        }
        let coeffs = cheb::interpolate_extrema(|x| self.eval(x), degree);
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("interpolation of f on [-1,1]".into()));
        }
        Ok(ChebSeries::new(coeffs))
    }

    /// Chebyshev interpolant at interior (first-kind) points, for functions
    /// that cannot be evaluated at the endpoints.
    pub fn to_cheb_interior(&self, degree: usize) -> Result<ChebSeries> {
        let coeffs = cheb::interpolate_roots(|x| self.eval(x), degree);
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("interpolation of f on (-1,1)".into()));
        }
        Ok(ChebSeries::new(coeffs))
    }

    pub fn scale(&self, c: f64) -> FuncRep {
        match self {
            FuncRep::Callable(f) => {
                let f = f.clone();
                FuncRep::from_fn(move |x| c * f(x))
            }
            FuncRep::Cheb(s) => {
                FuncRep::Cheb(ChebSeries::new(s.coeffs.iter().map(|v| c * v).collect()))
            }
            FuncRep::Jacobi(s) => FuncRep::Jacobi(s.scaled(c)),
        }
    }

    /// Pointwise sum. Exact coefficient arithmetic when both sides are series
    /// in the same basis; otherwise a closure.
    pub fn add(&self, other: &FuncRep) -> FuncRep {
        match (self, other) {
            (FuncRep::Cheb(a), FuncRep::Cheb(b)) => {
                let n = a.coeffs.len().max(b.coeffs.len());
                let mut coeffs = vec![0.0; n];
                for (i, &v) in a.coeffs.iter().enumerate() {
                    coeffs[i] += v;
                }
                for (i, &v) in b.coeffs.iter().enumerate() {
                    coeffs[i] += v;
                }
                FuncRep::Cheb(ChebSeries::new(coeffs))
            }
            (FuncRep::Jacobi(a), FuncRep::Jacobi(b))
                if (a.nu - b.nu).abs() < 1e-14 && (a.mu - b.mu).abs() < 1e-14 =>
            {
                FuncRep::Jacobi(a.plus(b))
            }
            (f, g) => {
                let f = f.clone();
                let g = g.clone();
                FuncRep::from_fn(move |x| f.eval(x) + g.eval(x))
            }
        }
    }

    pub fn sub(&self, other: &FuncRep) -> FuncRep {
        self.add(&other.scale(-1.0))
    }

    pub fn add_constant(&self, c: f64) -> FuncRep {
        self.add(&FuncRep::constant(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn monomial_roundtrip() {
        let f = FuncRep::from_monomials(&[1.0, -0.5, 2.0, 0.0, 0.25]);
        for x in [-1.0_f64, -0.4, 0.0, 0.7, 1.0] {
            let direct = 1.0 - 0.5 * x + 2.0 * x * x + 0.25 * x.powi(4);
            assert_abs_diff_eq!(f.eval(x), direct, epsilon = 1e-13);
        }
    }

    #[test]
    fn series_variants_match_defining_sum_at_spot_points() {
        // Spot-check at 16 points against the direct sum of c_k T_k.
        let coeffs = vec![0.2, -1.0, 0.3, 0.0, 1.5, -0.25];
        let f = FuncRep::Cheb(ChebSeries::new(coeffs.clone()));
        for i in 0..16 {
            let x = -0.95 + 0.125 * i as f64;
            let mut t0 = 1.0;
            let mut t1 = x;
            let mut direct = coeffs[0] * t0 + coeffs[1] * t1;
            for &c in &coeffs[2..] {
                let t2 = 2.0 * x * t1 - t0;
                direct += c * t2;
                t0 = t1;
                t1 = t2;
            }
            assert_abs_diff_eq!(f.eval(x), direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn to_cheb_reproduces_polynomials_exactly() {
        let f = FuncRep::from_fn(|x| 2.0 * x * x * x - x + 0.5);
        let s = f.to_cheb(3).unwrap();
        for x in [-1.0, -0.6, 0.1, 0.9] {
            assert_abs_diff_eq!(s.eval(x), 2.0 * x * x * x - x + 0.5, epsilon = 1e-13);
        }
        // Same result at a higher interpolation degree.
        let s8 = f.to_cheb(8).unwrap();
        for x in [-0.8, 0.2, 0.99] {
            assert_abs_diff_eq!(s8.eval(x), s.eval(x), epsilon = 1e-13);
        }
    }

    #[test]
    fn add_and_scale_are_pointwise() {
        let f = FuncRep::from_monomials(&[0.0, 1.0]);
        let g = FuncRep::from_fn(|x| x.sin());
        let h = f.add(&g).scale(2.0);
        assert_abs_diff_eq!(h.eval(0.3), 2.0 * (0.3 + 0.3_f64.sin()), epsilon = 1e-14);
    }
}
