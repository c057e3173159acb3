//! Quadrature rules on [-1,1] and on the periodic circle.
//!
//! Gaussian rules are built by the Golub–Welsch algorithm from the monic
//! three-term recurrence coefficients of the orthogonal family; nodes are the
//! eigenvalues of the symmetric tridiagonal Jacobi matrix and weights come
//! from the first components of its eigenvectors.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::ln_gamma;

/// Which weight function the rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadKind {
    /// Weight 1 on [-1,1].
    GaussLegendre,
    /// Weight (1-x)^a (1+x)^b on [-1,1]; requires a,b > -1.
    GaussJacobi { a: f64, b: f64 },
    /// Weight 1/sqrt(1-x^2) on (-1,1).
    GaussChebyshev,
    /// Uniform nodes on [0, 2*pi) with equal weights 2*pi/m; spectrally
    /// accurate for smooth periodic integrands.
    TrapezoidPeriodic,
}

/// Nodes and weights of a fixed quadrature rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: QuadKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    /// Apply the rule to `f`: sum of w_i * f(x_i).
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Apply the rule and fail if the integrand produced a non-finite value.
    pub fn integrate_checked(&self, mut f: impl FnMut(f64) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("integrand at node x={x}")));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

type RuleKey = (u8, u64, u64, usize);

fn rule_cache() -> &'static Mutex<HashMap<RuleKey, (Vec<f64>, Vec<f64>)>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, (Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_key(kind: QuadKind, order: usize) -> RuleKey {
    match kind {
        QuadKind::GaussLegendre => (0, 0, 0, order),
        QuadKind::GaussJacobi { a, b } => (1, a.to_bits(), b.to_bits(), order),
        QuadKind::GaussChebyshev => (2, 0, 0, order),
        QuadKind::TrapezoidPeriodic => (3, 0, 0, order),
    }
}

/// Build a quadrature rule of the given kind and order (number of nodes).
/// Node/weight construction is memoized (Gaussian rules cost an
/// eigendecomposition).
pub fn gauss_rule(kind: QuadKind, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidArgument("quadrature order must be >= 1".into()));
    }
    let key = cache_key(kind, order);
    if let Some((nodes, weights)) = rule_cache().lock().unwrap().get(&key) {
        return Ok(QuadratureRule {
            kind,
            nodes: nodes.clone(),
            weights: weights.clone(),
            order,
        });
    }
    let (nodes, weights) = match kind {
        QuadKind::GaussLegendre => legendre_newton(order)?,
        QuadKind::GaussJacobi { a, b } => {
            if a <= -1.0 || b <= -1.0 {
                return Err(Error::InvalidArgument(format!(
                    "gauss_jacobi exponents must be > -1, got ({a}, {b})"
                )));
            }
            if a == 0.0 && b == 0.0 {
                legendre_newton(order)?
            } else {
                golub_welsch(a, b, order)?
            }
        }
        QuadKind::GaussChebyshev => {
            let m = order as f64;
            let mut nodes: Vec<f64> = (1..=order)
                .map(|i| (std::f64::consts::PI * (2.0 * i as f64 - 1.0) / (2.0 * m)).cos())
                .collect();
            nodes.reverse(); // ascending
            let w = std::f64::consts::PI / m;
            (nodes, vec![w; order])
        }
        QuadKind::TrapezoidPeriodic => {
            let m = order as f64;
            let h = 2.0 * std::f64::consts::PI / m;
            let nodes = (0..order).map(|j| h * j as f64).collect();
            (nodes, vec![h; order])
        }
    };
    rule_cache()
        .lock()
        .unwrap()
        .insert(key, (nodes.clone(), weights.clone()));
    Ok(QuadratureRule {
        kind,
        nodes,
        weights,
        order,
    })
}

/// Integrate with a doubling-based self-check; returns the refined value and
/// the estimated quadrature error |I(2m) - I(m)|.
pub fn integrate_with_check(
    kind: QuadKind,
    order: usize,
    mut f: impl FnMut(f64) -> f64,
) -> Result<(f64, f64)> {
    let coarse = gauss_rule(kind, order)?.integrate_checked(&mut f)?;
    let fine = gauss_rule(kind, 2 * order)?.integrate_checked(&mut f)?;
    Ok((fine, (fine - coarse).abs()))
}

/// First moment of the Jacobi weight: int_{-1}^{1} (1-x)^a (1+x)^b dx.
pub fn jacobi_weight_mass(a: f64, b: f64) -> f64 {
    // 2^(a+b+1) * Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)
    ((a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(a + b + 2.0))
        .exp()
}

/// Gauss–Legendre nodes by Newton iteration on P_n (O(n^2), usable at high
/// orders where the eigenvalue route would be cubic).
fn legendre_newton(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 1 {
        return Ok((vec![0.0], vec![2.0]));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Classic initial guess near the i-th root.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..64 {
            let (p, d) = legendre_value_derivative(n, z);
            let step = p / d;
            z -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_value_derivative(n, z);
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        weights[i] = w;
        nodes[n - 1 - i] = z;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_value_derivative(n, 0.0);
        nodes[m - 1] = 0.0;
        weights[m - 1] = 2.0 / (d * d);
    }
    Ok((nodes, weights))
}

fn legendre_value_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    // P_n' from P_n and P_{n-1}.
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Golub–Welsch for the Jacobi weight (1-x)^a (1+x)^b.
fn golub_welsch(a: f64, b: f64, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mu0 = jacobi_weight_mass(a, b);
    if m == 1 {
        // Single node at the mean of the weight.
        let node = (b - a) / (a + b + 2.0);
        return Ok((vec![node], vec![mu0]));
    }

    // Monic recurrence coefficients: pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1}.
    let alpha = |k: usize| -> f64 {
        if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            let k = k as f64;
            (b * b - a * a) / ((2.0 * k + a + b) * (2.0 * k + a + b + 2.0))
        }
    };
    let beta = |k: usize| -> f64 {
        let k = k as f64;
        if k == 1.0 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
        } else {
            4.0 * k * (k + a) * (k + b) * (k + a + b)
                / ((2.0 * k + a + b).powi(2) * (2.0 * k + a + b + 1.0) * (2.0 * k + a + b - 1.0))
        }
    };

    let mut jac = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        jac[(k, k)] = alpha(k);
        if k + 1 < m {
            let s = beta(k + 1).sqrt();
            jac[(k, k + 1)] = s;
            jac[(k + 1, k)] = s;
        }
    }
    let eig = SymmetricEigen::new(jac);

    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

    for w in pairs.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::SolverFailure(
                "Golub-Welsch produced non-increasing nodes".into(),
            ));
        }
    }
    if pairs.iter().any(|p| !(p.1 > 0.0)) {
        return Err(Error::SolverFailure(
            "Golub-Welsch produced a non-positive weight".into(),
        ));
    }
    Ok(pairs.into_iter().unzip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_order_one_is_midpoint() {
        let rule = gauss_rule(QuadKind::GaussLegendre, 1).unwrap();
        assert_abs_diff_eq!(rule.nodes[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rule.weights[0], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn jacobi22_weight_sum_is_16_over_15() {
        // int (1-x^2)^2 dx = 16/15, computed by hand.
        let rule = gauss_rule(QuadKind::GaussJacobi { a: 2.0, b: 2.0 }, 8).unwrap();
        let total: f64 = rule.weights.iter().sum();
        assert_abs_diff_eq!(total, 16.0 / 15.0, epsilon = 1e-13);
    }

    #[test]
    fn jacobi22_integrates_x_squared() {
        // int x^2 (1-x^2)^2 dx = 16/105 by direct antiderivative.
        for m in [2usize, 5, 16, 64] {
            let rule = gauss_rule(QuadKind::GaussJacobi { a: 2.0, b: 2.0 }, m).unwrap();
            assert_abs_diff_eq!(rule.integrate(|x| x * x), 16.0 / 105.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn chebyshev_rule_integrates_against_its_weight() {
        // int x^2 / sqrt(1-x^2) dx = pi/2
        let rule = gauss_rule(QuadKind::GaussChebyshev, 24).unwrap();
        assert_abs_diff_eq!(
            rule.integrate(|x| x * x),
            std::f64::consts::PI / 2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn trapezoid_periodic_handles_cosine_powers() {
        // int_0^{2pi} cos^2 = pi
        let rule = gauss_rule(QuadKind::TrapezoidPeriodic, 16).unwrap();
        assert_abs_diff_eq!(
            rule.integrate(|t| t.cos().powi(2)),
            std::f64::consts::PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn nodes_increase_and_weights_positive() {
        for kind in [
            QuadKind::GaussLegendre,
            QuadKind::GaussJacobi { a: 2.0, b: 2.0 },
            QuadKind::GaussJacobi { a: 0.0, b: 4.0 },
            QuadKind::GaussJacobi { a: -0.5, b: 1.3 },
            QuadKind::GaussChebyshev,
        ] {
            let rule = gauss_rule(kind, 33).unwrap();
            assert!(rule.weights.iter().all(|&w| w > 0.0), "{kind:?}");
            assert!(
                rule.nodes.windows(2).all(|w| w[1] > w[0]),
                "{kind:?} nodes not increasing"
            );
            assert!(rule.nodes.iter().all(|&x| x > -1.0 && x < 1.0));
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert!(gauss_rule(QuadKind::GaussLegendre, 0).is_err());
    }

    #[test]
    fn bad_jacobi_exponent_rejected() {
        assert!(gauss_rule(QuadKind::GaussJacobi { a: -1.0, b: 0.0 }, 4).is_err());
    }

    #[test]
    fn doubling_check_reports_small_error_for_smooth_integrand() {
        let (val, err) = integrate_with_check(QuadKind::GaussLegendre, 16, |x| x.exp()).unwrap();
        assert_abs_diff_eq!(val, 1.0_f64.exp() - (-1.0_f64).exp(), epsilon = 1e-12);
        assert!(err < 1e-12);
    }
}
