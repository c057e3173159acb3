//! Jacobi polynomials R_n^{(nu,mu)} normalized by R_n(1) = 1, Fourier–Jacobi
//! analysis and synthesis against the weight (1-x^2)^2, and the second-order
//! differential operator D_{x,nu,mu} applied exactly on coefficients.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::cheb;
use crate::numerics::funcrep::{ChebSeries, FuncRep};
use crate::numerics::quadrature::{gauss_rule, QuadKind};
use statrs::function::gamma::ln_gamma;

/// Value of the classically normalized Jacobi polynomial at x=1:
/// P_n^{(nu,mu)}(1) = binom(n+nu, n).
pub fn value_at_one(n: usize, nu: f64) -> f64 {
    (ln_gamma(n as f64 + nu + 1.0) - ln_gamma(nu + 1.0) - ln_gamma(n as f64 + 1.0)).exp()
}

/// Eigenvalue of D_{x,nu,mu} on R_n: D R_n = -n(n+nu+mu+1) R_n.
pub fn eigenvalue(n: usize, nu: f64, mu: f64) -> f64 {
    let n = n as f64;
    -n * (n + nu + mu + 1.0)
}

/// All values R_0(x), ..., R_nmax(x) by the standard three-term recurrence,
/// dividing by the value at 1.
pub fn eval_r_all(n_max: usize, nu: f64, mu: f64, x: f64) -> Vec<f64> {
    let (a, b) = (nu, mu);
    let mut out = Vec::with_capacity(n_max + 1);
    let mut p_prev = 1.0; // P_0
    let mut norm = 1.0; // P_n(1), updated multiplicatively
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    let mut p_cur = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b); // P_1
    norm *= (1.0 + a) / 1.0;
    out.push(p_cur / norm);
    for n in 2..=n_max {
        let nf = n as f64;
        let c1 = 2.0 * nf * (nf + a + b) * (2.0 * nf + a + b - 2.0);
        let c2 = (2.0 * nf + a + b - 1.0) * (a * a - b * b);
        let c3 = (2.0 * nf + a + b - 2.0) * (2.0 * nf + a + b - 1.0) * (2.0 * nf + a + b);
        let c4 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * (2.0 * nf + a + b);
        let p_next = ((c2 + c3 * x) * p_cur - c4 * p_prev) / c1;
        p_prev = p_cur;
        p_cur = p_next;
        norm *= (nf + a) / nf; // binom(n+a, n) running product
        out.push(p_cur / norm);
    }
    out
}

/// R_n^{(nu,mu)}(x), the degree-n Jacobi polynomial normalized at 1.
pub fn eval_r(n: usize, nu: f64, mu: f64, x: f64) -> f64 {
    eval_r_all(n, nu, mu, x)[n]
}

/// Precomputed data for the basis {R_n^{(nu,mu)}}: squared norms against the
/// weight (1-x)^nu (1+x)^mu, and the quadrature rule used to compute them.
#[derive(Debug, Clone)]
pub struct JacobiBasis {
    pub nu: f64,
    pub mu: f64,
    pub max_degree: usize,
    norm_sq: Vec<f64>,
}

/// Nodes and weights integrating against (1-x)^nu (1+x)^mu exactly on
/// polynomials of the stated order's reach. Integer exponents fold the
/// weight into a Gauss–Legendre rule (cheap at high order); general
/// exponents use the absorbed Gauss–Jacobi rule.
pub(crate) fn weight_rule(nu: f64, mu: f64, order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let integer_params =
        nu >= 0.0 && mu >= 0.0 && nu.fract() == 0.0 && mu.fract() == 0.0 && nu + mu <= 12.0;
    if integer_params {
        let rule = gauss_rule(QuadKind::GaussLegendre, order)?;
        let weights = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| w * (1.0 - x).powi(nu as i32) * (1.0 + x).powi(mu as i32))
            .collect();
        Ok((rule.nodes, weights))
    } else {
        let rule = gauss_rule(QuadKind::GaussJacobi { a: nu, b: mu }, order)?;
        Ok((rule.nodes, rule.weights))
    }
}

impl JacobiBasis {
    pub fn new(nu: f64, mu: f64, max_degree: usize) -> Result<Self> {
        if nu < 0.0 || mu < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "basis parameters must be >= 0, got ({nu}, {mu})"
            )));
        }
        // Integrands R_n^2 w have polynomial degree 2*max_degree (+ the
        // integer weight degree on the folded path): order max_degree + 8
        // keeps every case exact.
        let (nodes, weights) = weight_rule(nu, mu, max_degree + 8)?;
        let mut norm_sq = vec![0.0; max_degree + 1];
        let mut table: Vec<Vec<f64>> = Vec::with_capacity(nodes.len());
        for &x in &nodes {
            table.push(eval_r_all(max_degree, nu, mu, x));
        }
        for (n, out) in norm_sq.iter_mut().enumerate() {
            *out = weights
                .iter()
                .zip(&table)
                .map(|(&w, row)| w * row[n] * row[n])
                .sum();
        }
        Ok(JacobiBasis {
            nu,
            mu,
            max_degree,
            norm_sq,
        })
    }

    pub fn eval(&self, n: usize, x: f64) -> f64 {
        eval_r(n, self.nu, self.mu, x)
    }

    /// Squared norm of R_n against the basis weight.
    pub fn norm_sq(&self, n: usize) -> f64 {
        self.norm_sq[n]
    }

    /// Raw Fourier coefficients a_n = int f R_n (1-x)^nu (1+x)^mu dx for
    /// n = 0..=n_max, by quadrature of the given order.
    pub fn analyze(&self, f: &FuncRep, n_max: usize, order: usize) -> Result<Vec<f64>> {
        let (nodes, weights) = weight_rule(self.nu, self.mu, order)?;
        let mut acc = vec![0.0; n_max + 1];
        for (&x, &w) in nodes.iter().zip(&weights) {
            let fx = f.eval(x);
            if !fx.is_finite() {
                return Err(Error::NonFinite(format!("f at quadrature node x={x}")));
            }
            let r = eval_r_all(n_max, self.nu, self.mu, x);
            for (a, rn) in acc.iter_mut().zip(&r) {
                *a += w * fx * rn;
            }
        }
        Ok(acc)
    }

    /// Raw Fourier coefficients by composite Gauss-Legendre quadrature with
    /// the weight written explicitly, split at the given interior breakpoints.
    /// Used for integrands with interior kinks (e.g. |x|^{3/2}).
    pub fn analyze_piecewise(
        &self,
        f: &FuncRep,
        n_max: usize,
        order_per_piece: usize,
        breakpoints: &[f64],
    ) -> Result<Vec<f64>> {
        let mut edges = vec![-1.0];
        for &b in breakpoints {
            if b <= -1.0 || b >= 1.0 {
                return Err(Error::InvalidArgument(format!(
                    "breakpoint {b} outside (-1,1)"
                )));
            }
            edges.push(b);
        }
        edges.push(1.0);
        let base = gauss_rule(QuadKind::GaussLegendre, order_per_piece)?;
        let mut acc = vec![0.0; n_max + 1];
        for pair in edges.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (&u, &w) in base.nodes.iter().zip(&base.weights) {
                let x = mid + half * u;
                let fx = f.eval(x);
                if !fx.is_finite() {
                    return Err(Error::NonFinite(format!("f at quadrature node x={x}")));
                }
                let weight = (1.0 - x).powf(self.nu) * (1.0 + x).powf(self.mu);
                let r = eval_r_all(n_max, self.nu, self.mu, x);
                for (a, rn) in acc.iter_mut().zip(&r) {
                    *a += half * w * fx * weight * rn;
                }
            }
        }
        Ok(acc)
    }

    /// Series coefficients b_n = a_n / ||R_n||^2 so that f ~ sum b_n R_n.
    pub fn series_from(self: &Arc<Self>, f: &FuncRep, n_max: usize, order: usize) -> Result<JacobiSeries> {
        if n_max > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "series degree {n_max} exceeds basis max_degree {}",
                self.max_degree
            )));
        }
        let a = self.analyze(f, n_max, order)?;
        let coeffs = a
            .iter()
            .enumerate()
            .map(|(n, &v)| v / self.norm_sq[n])
            .collect();
        Ok(JacobiSeries {
            nu: self.nu,
            mu: self.mu,
            coeffs,
            basis: Some(self.clone()),
        })
    }
}

/// A series f = sum b_n R_n^{(nu,mu)}.
#[derive(Clone)]
pub struct JacobiSeries {
    pub nu: f64,
    pub mu: f64,
    pub coeffs: Vec<f64>,
    basis: Option<Arc<JacobiBasis>>,
}

impl std::fmt::Debug for JacobiSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("JacobiSeries")
            .field("nu", &self.nu)
            .field("mu", &self.mu)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl JacobiSeries {
    pub fn new(nu: f64, mu: f64, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        JacobiSeries {
            nu,
            mu,
            coeffs,
            basis: None,
        }
    }

    pub fn with_basis(basis: Arc<JacobiBasis>, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        assert!(coeffs.len() <= basis.max_degree + 1);
        JacobiSeries {
            nu: basis.nu,
            mu: basis.mu,
            coeffs,
            basis: Some(basis),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn basis(&self) -> Option<&Arc<JacobiBasis>> {
        self.basis.as_ref()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let r = eval_r_all(self.degree(), self.nu, self.mu, x);
        self.coeffs.iter().zip(&r).map(|(&b, &rn)| b * rn).sum()
    }

    pub fn scaled(&self, c: f64) -> JacobiSeries {
        JacobiSeries {
            nu: self.nu,
            mu: self.mu,
            coeffs: self.coeffs.iter().map(|&b| c * b).collect(),
            basis: self.basis.clone(),
        }
    }

    pub fn plus(&self, other: &JacobiSeries) -> JacobiSeries {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (i, &v) in self.coeffs.iter().enumerate() {
            coeffs[i] += v;
        }
        for (i, &v) in other.coeffs.iter().enumerate() {
            coeffs[i] += v;
        }
        JacobiSeries {
            nu: self.nu,
            mu: self.mu,
            coeffs,
            basis: self.basis.clone().or_else(|| other.basis.clone()),
        }
    }

    /// Exact conversion to a Chebyshev series (the polynomial is the same).
    pub fn to_cheb(&self) -> ChebSeries {
        ChebSeries::new(cheb::interpolate_extrema(|x| self.eval(x), self.degree()))
    }
}

/// Project onto the Jacobi-(2,2) basis at the given degree. Exact (up to
/// roundoff) for polynomial representations of degree <= `degree`.
pub fn to_jacobi22(f: &FuncRep, degree: usize) -> Result<JacobiSeries> {
    let basis = Arc::new(JacobiBasis::new(2.0, 2.0, degree)?);
    basis.series_from(f, degree, degree + 8)
}

/// Fourier–Jacobi coefficients a_n(f) = int f(x) R_n^{(2,2)}(x) (1-x^2)^2 dx
/// for n = 0..=n_max, with an order-doubling self-check that flags
/// non-smooth integrands.
pub fn fourier_jacobi(f: &FuncRep, n_max: usize) -> Result<Vec<f64>> {
    let basis = JacobiBasis::new(2.0, 2.0, n_max)?;
    let order = (n_max + 8).max(64);
    let coarse = basis.analyze(f, n_max, order)?;
    let fine = basis.analyze(f, n_max, 2 * order)?;
    let discrepancy = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0_f64, f64::max);
    if discrepancy > 1e-8 {
        return Err(Error::QuadratureSelfCheck {
            order,
            order_doubled: 2 * order,
            discrepancy,
        });
    }
    Ok(fine)
}

/// Apply D_{x,nu,mu} = (1-x^2) d^2/dx^2 + (mu - nu - (nu+mu+2) x) d/dx to a
/// series representation, `r` times, exactly on coefficients.
pub fn apply_d(f: &FuncRep, nu: f64, mu: f64, r: usize) -> Result<FuncRep> {
    if r == 0 {
        return Err(Error::InvalidArgument("power r must be >= 1".into()));
    }
    match f {
        FuncRep::Jacobi(s) if (s.nu - nu).abs() < 1e-14 && (s.mu - mu).abs() < 1e-14 => {
            // Diagonal action on the eigenbasis.
            let coeffs = s
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &b)| b * eigenvalue(n, nu, mu).powi(r as i32))
                .collect();
            Ok(FuncRep::Jacobi(JacobiSeries {
                nu,
                mu,
                coeffs,
                basis: s.basis.clone(),
            }))
        }
        FuncRep::Cheb(s) => {
            let mut coeffs = s.coeffs.clone();
            for _ in 0..r {
                coeffs = apply_d_cheb(&coeffs, nu, mu);
            }
            Ok(FuncRep::Cheb(ChebSeries::new(coeffs)))
        }
        FuncRep::Jacobi(s) => {
            // Basis mismatch: go through the (exact) Chebyshev form.
            let mut coeffs = s.to_cheb().coeffs;
            for _ in 0..r {
                coeffs = apply_d_cheb(&coeffs, nu, mu);
            }
            Ok(FuncRep::Cheb(ChebSeries::new(coeffs)))
        }
        FuncRep::Callable(_) => Err(Error::InvalidArgument(
            "apply_d needs a series representation; interpolate the callable first".into(),
        )),
    }
}

fn apply_d_cheb(coeffs: &[f64], nu: f64, mu: f64) -> Vec<f64> {
    let d1 = cheb::derivative(coeffs);
    let d2 = cheb::derivative(&d1);
    // (1-x^2) in the Chebyshev basis: 1/2 T_0 - 1/2 T_2.
    let one_minus_x2 = [0.5, 0.0, -0.5];
    let term1 = cheb::product(&one_minus_x2, &d2);
    let term2: Vec<f64> = d1.iter().map(|&c| (mu - nu) * c).collect();
    let term3: Vec<f64> = cheb::mul_x(&d1)
        .iter()
        .map(|&c| -(nu + mu + 2.0) * c)
        .collect();
    let n = term1.len().max(term2.len()).max(term3.len()).max(coeffs.len());
    let mut out = vec![0.0; n];
    for (i, &v) in term1.iter().enumerate() {
        out[i] += v;
    }
    for (i, &v) in term2.iter().enumerate() {
        out[i] += v;
    }
    for (i, &v) in term3.iter().enumerate() {
        out[i] += v;
    }
    out.truncate(coeffs.len()); // D preserves polynomial degree
    out
}
