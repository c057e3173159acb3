//! Weighted L_p spaces on [-1,1] with weight (1-x^2)^alpha, their norms, and
//! the per-result admissibility regimes for (p, alpha).

use crate::error::{Error, Result};
use crate::numerics::funcrep::FuncRep;
use crate::numerics::quadrature::{gauss_rule, QuadKind};

/// The exponent p of the space; infinity is a distinguished value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExp {
    Finite(f64),
    Infinity,
}

impl PExp {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "inf" | "Inf" | "INF" | "infinity" | "oo" => Ok(PExp::Infinity),
            s => {
                let v: f64 = s
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("cannot parse p from '{s}'")))?;
                if v.is_finite() && v >= 1.0 {
                    Ok(PExp::Finite(v))
                } else {
                    Err(Error::InvalidArgument(format!("p must be in [1, inf], got {v}")))
                }
            }
        }
    }
}

impl std::fmt::Display for PExp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PExp::Finite(v) => write!(f, "{v}"),
            PExp::Infinity => write!(f, "inf"),
        }
    }
}

/// Which admissibility table a (p, alpha) pair is checked against. Each
/// regime encodes the hypothesis block of one result family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Translation operator bound: p=1: 1/2 < a <= 1; 1<p<inf:
    /// 1-1/(2p) < a < 3/2-1/(2p); p=inf: 1 <= a < 3/2.
    TranslationBound,
    /// Boundedness of the inverse operator H: p=1: -1 < a <= 2; 1<p<inf:
    /// -1/p < a < 3-1/p; p=inf: 0 <= a < 3.
    HBound,
    /// Direct and inverse approximation theorems (same table as
    /// TranslationBound).
    DirectInverse,
    /// Bernstein-Markov inequalities: p<inf: a > -1/p; p=inf: a >= 0.
    BernsteinMarkov,
    /// E_n versus the differential operator: p=1: -1/2 < a <= 2; 1<p<inf:
    /// -1/(2p) < a < 5/2-1/(2p); p=inf: 0 <= a < 5/2.
    ED,
}

/// A weighted space: the pair (p, alpha).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSpace {
    pub p: PExp,
    pub alpha: f64,
}

impl WeightedSpace {
    pub fn new(p: PExp, alpha: f64) -> Self {
        WeightedSpace { p, alpha }
    }

    pub fn finite(p: f64, alpha: f64) -> Self {
        WeightedSpace {
            p: PExp::Finite(p),
            alpha,
        }
    }

    pub fn sup(alpha: f64) -> Self {
        WeightedSpace {
            p: PExp::Infinity,
            alpha,
        }
    }

    /// Check (p, alpha) against the regime table; the error names the
    /// violated bound.
    pub fn validate(&self, regime: Regime) -> Result<()> {
        let a = self.alpha;
        let ok_or = |ok: bool, bound: String| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::RegimeViolation {
                    p: self.p.to_string(),
                    alpha: a,
                    regime,
                    bound,
                })
            }
        };
        match (regime, self.p) {
            (Regime::TranslationBound | Regime::DirectInverse, PExp::Finite(p)) => {
                if (p - 1.0).abs() < 1e-12 {
                    ok_or(a > 0.5 && a <= 1.0, "1/2 < alpha <= 1 at p=1".into())
                } else {
                    let lo = 1.0 - 0.5 / p;
                    let hi = 1.5 - 0.5 / p;
                    ok_or(
                        a > lo && a < hi,
                        format!("1-1/(2p) = {lo} < alpha < {hi} = 3/2-1/(2p)"),
                    )
                }
            }
            (Regime::TranslationBound | Regime::DirectInverse, PExp::Infinity) => {
                ok_or(a >= 1.0 && a < 1.5, "1 <= alpha < 3/2 at p=inf".into())
            }
            (Regime::HBound, PExp::Finite(p)) => {
                if (p - 1.0).abs() < 1e-12 {
                    ok_or(a > -1.0 && a <= 2.0, "-1 < alpha <= 2 at p=1".into())
                } else {
                    let lo = -1.0 / p;
                    let hi = 3.0 - 1.0 / p;
                    ok_or(
                        a > lo && a < hi,
                        format!("-1/p = {lo} < alpha < {hi} = 3-1/p"),
                    )
                }
            }
            (Regime::HBound, PExp::Infinity) => {
                ok_or(a >= 0.0 && a < 3.0, "0 <= alpha < 3 at p=inf".into())
            }
            (Regime::BernsteinMarkov, PExp::Finite(p)) => {
                ok_or(a > -1.0 / p, format!("alpha > -1/p = {}", -1.0 / p))
            }
            (Regime::BernsteinMarkov, PExp::Infinity) => {
                ok_or(a >= 0.0, "alpha >= 0 at p=inf".into())
            }
            (Regime::ED, PExp::Finite(p)) => {
                if (p - 1.0).abs() < 1e-12 {
                    ok_or(a > -0.5 && a <= 2.0, "-1/2 < alpha <= 2 at p=1".into())
                } else {
                    let lo = -0.5 / p;
                    let hi = 2.5 - 0.5 / p;
                    ok_or(
                        a > lo && a < hi,
                        format!("-1/(2p) = {lo} < alpha < {hi} = 5/2-1/(2p)"),
                    )
                }
            }
            (Regime::ED, PExp::Infinity) => {
                ok_or(a >= 0.0 && a < 2.5, "0 <= alpha < 5/2 at p=inf".into())
            }
        }
    }

    /// The weight (1-x^2)^alpha must be integrable in the p-th power for the
    /// norm to exist: p*alpha > -1 (always true inside every regime).
    pub fn validate_norm(&self) -> Result<()> {
        if let PExp::Finite(p) = self.p {
            if p * self.alpha <= -1.0 {
                return Err(Error::InvalidArgument(format!(
                    "p*alpha = {} <= -1: weighted norm undefined",
                    p * self.alpha
                )));
            }
        }
        Ok(())
    }
}

/// Weighted norm ||f (1-x^2)^alpha||_p.
///
/// For finite p the quadrature rule Gauss-Jacobi(p*alpha, p*alpha) absorbs the
/// weight; `resolution` is the rule order. For p = infinity the norm is the
/// max of |f(x)|(1-x^2)^alpha over a `resolution`-point Chebyshev (first-kind,
/// interior) grid.
pub fn weighted_norm(f: &FuncRep, space: &WeightedSpace, resolution: usize) -> Result<f64> {
    space.validate_norm()?;
    if resolution < 32 {
        return Err(Error::InvalidArgument(
            "norm resolution must be >= 32".into(),
        ));
    }
    match space.p {
        PExp::Infinity => {
            let mut best = 0.0_f64;
            let m = resolution as f64;
            for j in 0..resolution {
                let x = (std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * m)).cos();
                let v = f.eval(x);
                if !v.is_finite() {
                    return Err(Error::NonFinite(format!("f at x={x}")));
                }
                let w = (1.0 - x * x).powf(space.alpha);
                best = best.max(v.abs() * w);
            }
            Ok(best)
        }
        PExp::Finite(p) => {
            // Fast path: Parseval for p=2 when the representation is a Jacobi
            // series whose basis weight matches (1-x^2)^(2 alpha).
            if (p - 2.0).abs() < 1e-14 {
                if let FuncRep::Jacobi(series) = f {
                    if (series.nu - 2.0 * space.alpha).abs() < 1e-14
                        && (series.mu - 2.0 * space.alpha).abs() < 1e-14
                    {
                        if let Some(basis) = series.basis() {
                            let sq: f64 = series
                                .coeffs
                                .iter()
                                .enumerate()
                                .map(|(n, &b)| b * b * basis.norm_sq(n))
                                .sum();
                            return Ok(sq.sqrt());
                        }
                    }
                }
            }
            let pa = p * space.alpha;
            let rule = gauss_rule(QuadKind::GaussJacobi { a: pa, b: pa }, resolution)?;
            let v = rule.integrate_checked(|x| f.eval(x).abs().powf(p))?;
            Ok(v.powf(1.0 / p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn norm_of_one_in_l2() {
        let f = FuncRep::constant(1.0);
        let n = weighted_norm(&f, &WeightedSpace::finite(2.0, 0.0), 64).unwrap();
        assert_abs_diff_eq!(n, 2.0_f64.sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn norm_of_one_in_l1_alpha2() {
        let f = FuncRep::constant(1.0);
        let n = weighted_norm(&f, &WeightedSpace::finite(1.0, 2.0), 64).unwrap();
        assert_abs_diff_eq!(n, 16.0 / 15.0, epsilon = 1e-13);
    }

    #[test]
    fn sup_norm_of_one_with_weight() {
        let f = FuncRep::constant(1.0);
        let n = weighted_norm(&f, &WeightedSpace::sup(1.0), 1024).unwrap();
        // max of (1-x^2), attained at x=0; the interior grid contains points
        // arbitrarily close to 0 as resolution grows.
        assert_abs_diff_eq!(n, 1.0, epsilon = 1e-5);
    }

    #[test]
    fn direct_inverse_regime_table() {
        assert!(WeightedSpace::finite(1.0, 0.75)
            .validate(Regime::DirectInverse)
            .is_ok());
        assert!(WeightedSpace::finite(1.0, 1.0)
            .validate(Regime::DirectInverse)
            .is_ok());
        assert!(WeightedSpace::finite(1.0, 0.5)
            .validate(Regime::DirectInverse)
            .is_err());
        assert!(WeightedSpace::finite(2.0, 1.0)
            .validate(Regime::DirectInverse)
            .is_ok());
        assert!(WeightedSpace::finite(2.0, 0.75)
            .validate(Regime::DirectInverse)
            .is_err());
        assert!(WeightedSpace::finite(2.0, 1.25)
            .validate(Regime::DirectInverse)
            .is_err());
        assert!(WeightedSpace::sup(1.0).validate(Regime::DirectInverse).is_ok());
        assert!(WeightedSpace::sup(1.49)
            .validate(Regime::DirectInverse)
            .is_ok());
        assert!(WeightedSpace::sup(1.5)
            .validate(Regime::DirectInverse)
            .is_err());
        assert!(WeightedSpace::sup(0.99)
            .validate(Regime::DirectInverse)
            .is_err());
    }

    #[test]
    fn h_bound_regime_table() {
        assert!(WeightedSpace::finite(1.0, 2.0).validate(Regime::HBound).is_ok());
        assert!(WeightedSpace::finite(1.0, 2.01).validate(Regime::HBound).is_err());
        assert!(WeightedSpace::finite(2.0, 2.4).validate(Regime::HBound).is_ok());
        assert!(WeightedSpace::finite(2.0, 2.5).validate(Regime::HBound).is_err());
        assert!(WeightedSpace::sup(2.99).validate(Regime::HBound).is_ok());
        assert!(WeightedSpace::sup(3.0).validate(Regime::HBound).is_err());
    }

    #[test]
    fn violation_message_names_bound() {
        let err = WeightedSpace::finite(2.0, 2.0)
            .validate(Regime::DirectInverse)
            .unwrap_err();
        let text = err.to_string();
        assert!(text.contains("alpha"), "{text}");
        assert!(text.contains("1.25"), "{text}");
    }
}
