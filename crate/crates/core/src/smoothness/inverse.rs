//! The inverse operators H and H_delta and the normalization kappa(delta).
//!
//! H inverts -D_{x,2,2} up to the mean correction c_1/c_0:
//!
//! ```text
//! H(f, x) = -int_0^x (1-y^2)^{-3} int_y^1 (f(z) - c_1/c_0) (1-z^2)^2 dz dy,
//! ```
//!
//! and H_delta is the kappa-normalized average of translations
//!
//! ```text
//! H_delta(f, x) = (1/kappa) int_0^delta A(v)^{-1} int_0^v tau_u(f, x) A(u) du dv,
//! kappa(delta)  =           int_0^delta A(v)^{-1} int_0^v A(u) du dv,
//! ```
//!
//! with the Sturm–Liouville weight A from [`super::sl_weight`]. On the
//! Jacobi-(2,2) basis both are diagonal: H has multiplier -1/(n(n+5)) (plus
//! recentering), H_delta has multiplier
//! h_n(delta) = (1 - R_n^{(0,4)}(cos delta)) / (n(n+5) kappa(delta)).


use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiSeries};
use crate::numerics::cheb;
use crate::numerics::funcrep::FuncRep;
use crate::numerics::quadrature::{gauss_rule, QuadKind, QuadratureRule};
use crate::smoothness::sl_weight;
use crate::translation::{translate, Shift, TranslationConfig};

/// Which computational route an inverse operator takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HMethod {
    /// The displayed nested integral, by quadrature.
    Integral,
    /// The exact diagonal action on Jacobi-(2,2) coefficients.
    Multiplier,
}

/// c_0 = int (1-z^2)^2 dz.
pub const C0: f64 = 16.0 / 15.0;

/// kappa(delta) with the default quadrature order.
pub fn kappa(delta: f64) -> Result<f64> {
    kappa_with_order(delta, 64)
}

/// kappa(delta) by nested Gauss–Legendre of the given order.
pub fn kappa_with_order(delta: f64, order: usize) -> Result<f64> {
    if !(delta > 0.0 && delta < std::f64::consts::PI) {
        return Err(Error::InvalidArgument(format!(
            "kappa needs 0 < delta < pi, got {delta}"
        )));
    }
    let base = gauss_rule(QuadKind::GaussLegendre, order)?;
    let inner_mass = |v: f64| -> f64 {
        // int_0^v A(u) du
        let half = 0.5 * v;
        base.integrate(|u| sl_weight(half * (u + 1.0))) * half
    };
    let half = 0.5 * delta;
    Ok(base.integrate(|v| {
        let vv = half * (v + 1.0);
        inner_mass(vv) / sl_weight(vv)
    }) * half)
}

/// Apply H^r.
///
/// The multiplier method needs a series representation (so the coefficients
/// b_n exist); the integral method additionally evaluates the displayed
/// nested integral by 64-point quadrature on [0, x] and refuses
/// |x| > 1 - 1e-8. H preserves polynomial degree, so the r-fold integral
/// route re-interpolates at interior Chebyshev points between stages.
pub fn h_apply(f: &FuncRep, r: usize, method: HMethod) -> Result<FuncRep> {
    if r == 0 {
        return Err(Error::InvalidArgument("H power r must be >= 1".into()));
    }
    match method {
        HMethod::Multiplier => {
            let mut series = as_jacobi22(f)?;
            for _ in 0..r {
                series = h_multiplier_once(&series);
            }
            Ok(FuncRep::Jacobi(series))
        }
        HMethod::Integral => {
            let mut cheb_coeffs = as_cheb(f)?;
            let degree = cheb_coeffs.len() - 1;
            for step in 0..r {
                let eval = HIntegralEval::new(&cheb_coeffs)?;
                if step + 1 == r {
                    return Ok(FuncRep::from_fn(move |x| eval.eval(x).unwrap_or(f64::NAN)));
                }
                cheb_coeffs =
                    cheb::interpolate_roots(|x| eval.eval(x).unwrap_or(f64::NAN), degree);
            }
            unreachable!()
        }
    }
}

fn as_jacobi22(f: &FuncRep) -> Result<JacobiSeries> {
    match f {
        FuncRep::Jacobi(s) if (s.nu - 2.0).abs() < 1e-14 && (s.mu - 2.0).abs() < 1e-14 => {
            Ok(s.clone())
        }
        FuncRep::Cheb(s) => jacobi::to_jacobi22(&FuncRep::Cheb(s.clone()), s.degree()),
        FuncRep::Jacobi(s) => {
            let c = s.to_cheb();
            jacobi::to_jacobi22(&FuncRep::Cheb(c.clone()), c.degree())
        }
        FuncRep::Callable(_) => Err(Error::InvalidArgument(
            "H needs a series representation; project the callable first".into(),
        )),
    }
}

fn as_cheb(f: &FuncRep) -> Result<Vec<f64>> {
    match f {
        FuncRep::Cheb(s) => Ok(s.coeffs.clone()),
        FuncRep::Jacobi(s) => Ok(s.to_cheb().coeffs),
        FuncRep::Callable(_) => Err(Error::InvalidArgument(
            "H needs a series representation; project the callable first".into(),
        )),
    }
}

fn h_multiplier_once(series: &JacobiSeries) -> JacobiSeries {
    let deg = series.degree();
    let r_at_zero = jacobi::eval_r_all(deg, 2.0, 2.0, 0.0);
    let mut out = vec![0.0; deg + 1];
    let mut at_zero = 0.0;
    for n in 1..=deg {
        let lambda = (n * (n + 5)) as f64;
        out[n] = -series.coeffs[n] / lambda;
        at_zero += out[n] * r_at_zero[n];
    }
    out[0] = -at_zero; // H(f, 0) = 0
    match series.basis() {
        Some(b) => JacobiSeries::with_basis(b.clone(), out),
        None => JacobiSeries::new(2.0, 2.0, out),
    }
}

/// Pointwise evaluator for one application of H by the displayed integral.
struct HIntegralEval {
    /// Antiderivative F of (f - c1/c0)(1-z^2)^2, exact on coefficients.
    antideriv: Vec<f64>,
    f_at_one: f64,
    f_at_minus_one: f64,
    outer: QuadratureRule,
}

impl HIntegralEval {
    fn new(f_cheb: &[f64]) -> Result<Self> {
        // Chebyshev coefficients of (1-x^2)^2 = 3/8 T0 - 1/2 T2 + 1/8 T4.
        let w22 = [0.375, 0.0, -0.5, 0.0, 0.125];
        let weighted = cheb::product(&w22, f_cheb);
        let c1 = cheb::integral(&weighted);
        let mut tilde = f_cheb.to_vec();
        tilde[0] -= c1 / C0;
        let integrand = cheb::product(&w22, &tilde);
        let antideriv = cheb::antiderivative(&integrand);
        Ok(HIntegralEval {
            f_at_one: cheb::clenshaw(&antideriv, 1.0),
            f_at_minus_one: cheb::clenshaw(&antideriv, -1.0),
            antideriv,
            outer: gauss_rule(QuadKind::GaussLegendre, 64)?,
        })
    }

    /// chi(y) = int_y^1 (f - c1/c0)(1-z^2)^2 dz, using the reflected form
    /// -int_{-1}^y for y < 0 (the two agree because the total integral
    /// vanishes by the definition of c1).
    fn chi(&self, y: f64) -> f64 {
        if y >= 0.0 {
            self.f_at_one - cheb::clenshaw(&self.antideriv, y)
        } else {
            self.f_at_minus_one - cheb::clenshaw(&self.antideriv, y)
        }
    }

    fn eval(&self, x: f64) -> Result<f64> {
        if x.abs() > 1.0 - 1e-8 {
            return Err(Error::InvalidArgument(format!(
                "H integral path refuses |x| > 1 - 1e-8, got {x}"
            )));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        // -int_0^x chi(y) / (1-y^2)^3 dy, scaled from [-1,1]; the quadrature
        // never straddles y = +-1 because it lives on [0, x].
        let half = 0.5 * x;
        let v = self.outer.integrate(|u| {
            let y = half * (u + 1.0);
            self.chi(y) / (1.0 - y * y).powi(3)
        }) * half;
        Ok(-v)
    }
}

/// Apply H_delta^r.
///
/// The multiplier method maps coefficients b_n to b_n * h_n(delta)^r; the
/// integral method nests the translation inside the kappa-weighted double
/// integral (cost grows quickly with r).
pub fn h_delta_apply(
    f: &FuncRep,
    delta: f64,
    r: usize,
    method: HMethod,
    tcfg: &TranslationConfig,
) -> Result<FuncRep> {
    if r == 0 {
        return Err(Error::InvalidArgument("H_delta power r must be >= 1".into()));
    }
    if !(delta > 0.0 && delta < std::f64::consts::PI) {
        return Err(Error::InvalidArgument(format!(
            "H_delta needs 0 < delta < pi, got {delta}"
        )));
    }
    match method {
        HMethod::Multiplier => {
            let series = as_jacobi22(f)?;
            let deg = series.degree();
            let kap = kappa(delta)?;
            let m = crate::translation::shift_multiplier_all(deg, delta.cos());
            let mut coeffs = series.coeffs.clone();
            for n in 1..=deg {
                let h_n = (1.0 - m[n]) / ((n * (n + 5)) as f64 * kap);
                coeffs[n] *= h_n.powi(r as i32);
            }
            Ok(FuncRep::Jacobi(match series.basis() {
                Some(b) => JacobiSeries::with_basis(b.clone(), coeffs),
                None => JacobiSeries::new(2.0, 2.0, coeffs),
            }))
        }
        HMethod::Integral => {
            let kap = kappa(delta)?;
            // Pre-convert series once so the nested translations take the
            // multiplier fast path instead of re-projecting per call.
            let mut current = match f {
                FuncRep::Callable(_) => f.clone(),
                _ => FuncRep::Jacobi(as_jacobi22(f)?),
            };
            for _ in 0..r {
                current = h_delta_integral_once(&current, delta, kap, tcfg)?;
            }
            Ok(current)
        }
    }
}

fn h_delta_integral_once(
    f: &FuncRep,
    delta: f64,
    kap: f64,
    tcfg: &TranslationConfig,
) -> Result<FuncRep> {
    let f = f.clone();
    let tcfg = tcfg.clone();
    let order = 48;
    Ok(FuncRep::from_fn(move |x| {
        let Ok(base) = gauss_rule(QuadKind::GaussLegendre, order) else {
            return f64::NAN;
        };
        let inner = |v: f64| -> f64 {
            let half = 0.5 * v;
            base.integrate(|u| {
                let uu = half * (u + 1.0);
                translate(&f, Shift::T(uu), x, &tcfg).unwrap_or(f64::NAN) * sl_weight(uu)
            }) * half
        };
        let half = 0.5 * delta;
        let outer = base.integrate(|v| {
            let vv = half * (v + 1.0);
            inner(vv) / sl_weight(vv)
        }) * half;
        outer / kap
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::eval_r;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kappa_small_delta_asymptote() {
        // A(t) ~ t/2 near 0, so kappa(delta)/delta^2 -> 1/4.
        let k = kappa(0.01).unwrap();
        assert!(((k / 1e-4 - 0.25) / 0.25).abs() < 5e-3, "kappa = {k}");
    }

    #[test]
    fn kappa_strictly_increasing() {
        let mut prev = 0.0;
        for i in 1..=12 {
            let d = 0.25 * i as f64;
            let k = kappa(d).unwrap();
            assert!(k > prev);
            prev = k;
        }
    }

    #[test]
    fn kappa_lower_bound_on_half_pi() {
        // kappa/delta^2 is increasing on (0, pi/2], minimum 1/4 at 0+; the
        // frozen check constant 1/5 sits safely below.
        for i in 1..=20 {
            let d = std::f64::consts::FRAC_PI_2 * i as f64 / 20.0;
            let k = kappa(d).unwrap();
            assert!(k >= d * d / 5.0, "kappa({d}) = {k}");
        }
    }

    #[test]
    fn kappa_matches_closed_form_inner() {
        // Oracle: int_0^v A = (1 - cos^10(v/2))/5, so kappa has a 1-D
        // integral closed form to compare against the nested quadrature.
        let delta = 1.1;
        let base = gauss_rule(QuadKind::GaussLegendre, 200).unwrap();
        let half = 0.5 * delta;
        let oracle = base.integrate(|v| {
            let vv = half * (v + 1.0);
            (1.0 - (0.5 * vv).cos().powi(10)) / (5.0 * sl_weight(vv))
        }) * half;
        assert_abs_diff_eq!(kappa(delta).unwrap(), oracle, epsilon = 1e-10);
    }

    #[test]
    fn kappa_rejects_bad_delta() {
        assert!(kappa(0.0).is_err());
        assert!(kappa(-0.5).is_err());
        assert!(kappa(3.2).is_err());
    }

    #[test]
    fn h_of_constant_is_zero() {
        for method in [HMethod::Multiplier, HMethod::Integral] {
            let h = h_apply(&FuncRep::constant(1.0), 1, method).unwrap();
            for x in [-0.9, -0.2, 0.0, 0.5, 0.9] {
                assert_abs_diff_eq!(h.eval(x), 0.0, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn h_of_r1_is_minus_x_over_6() {
        for method in [HMethod::Multiplier, HMethod::Integral] {
            let h = h_apply(&FuncRep::from_monomials(&[0.0, 1.0]), 1, method).unwrap();
            for x in [-0.8, -0.3, 0.0, 0.4, 0.9] {
                assert_abs_diff_eq!(h.eval(x), -x / 6.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn h_eigen_action_both_methods_agree() {
        // H(R_n) = (R_n(0) - R_n(x)) / (n(n+5)), n <= 8.
        for n in 1..=8usize {
            let f = FuncRep::from_fn(move |x| eval_r(n, 2.0, 2.0, x))
                .to_cheb(n)
                .map(FuncRep::Cheb)
                .unwrap();
            let lambda = (n * (n + 5)) as f64;
            let hm = h_apply(&f, 1, HMethod::Multiplier).unwrap();
            let hi = h_apply(&f, 1, HMethod::Integral).unwrap();
            let r0 = eval_r(n, 2.0, 2.0, 0.0);
            for x in [-0.9, -0.35, 0.0, 0.5, 0.85] {
                let expect = (r0 - eval_r(n, 2.0, 2.0, x)) / lambda;
                assert_abs_diff_eq!(hm.eval(x), expect, epsilon = 1e-10);
                assert_abs_diff_eq!(hi.eval(x), expect, epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn h_integral_refuses_near_endpoints() {
        let h = h_apply(&FuncRep::from_monomials(&[0.0, 1.0]), 1, HMethod::Integral).unwrap();
        assert!(!h.eval(1.0 - 1e-9).is_finite());
    }

    #[test]
    fn h_delta_of_one_is_one() {
        let tcfg = TranslationConfig::default();
        for method in [HMethod::Multiplier, HMethod::Integral] {
            let h = h_delta_apply(&FuncRep::constant(1.0), 0.7, 1, method, &tcfg).unwrap();
            for x in [-0.6, 0.0, 0.8] {
                assert_abs_diff_eq!(h.eval(x), 1.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn h_delta_multiplier_matches_integral() {
        let tcfg = TranslationConfig::default();
        let f = FuncRep::from_monomials(&[0.5, 1.0, -0.3, 0.2]);
        let delta = 0.8;
        let hm = h_delta_apply(&f, delta, 1, HMethod::Multiplier, &tcfg).unwrap();
        let hi = h_delta_apply(&f, delta, 1, HMethod::Integral, &tcfg).unwrap();
        for k in 0..16 {
            let x = -0.9 + 1.8 * k as f64 / 15.0;
            assert_abs_diff_eq!(hm.eval(x), hi.eval(x), epsilon = 1e-6);
        }
    }

    #[test]
    fn h_delta_coefficient_formula() {
        // Coefficient of R_n in H_delta(R_n) is
        // (1 - R_n^{(0,4)}(cos delta)) / (n(n+5) kappa(delta)).
        let tcfg = TranslationConfig::default();
        let delta = 0.9;
        let kap = kappa(delta).unwrap();
        for n in 1..=6usize {
            let f = FuncRep::from_fn(move |x| eval_r(n, 2.0, 2.0, x))
                .to_cheb(n)
                .map(FuncRep::Cheb)
                .unwrap();
            let h = h_delta_apply(&f, delta, 1, HMethod::Multiplier, &tcfg).unwrap();
            let expect = (1.0 - eval_r(n, 0.0, 4.0, delta.cos())) / ((n * (n + 5)) as f64 * kap);
            for x in [-0.7, 0.2, 0.6] {
                assert_abs_diff_eq!(
                    h.eval(x),
                    expect * eval_r(n, 2.0, 2.0, x),
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn h_delta_tends_to_identity() {
        // ||H_delta f - f||_{2,1} decreases as delta -> 0.
        let space = crate::numerics::space::WeightedSpace::finite(2.0, 1.0);
        let tcfg = TranslationConfig::default();
        let f = FuncRep::from_monomials(&[0.0, 1.0, 0.5, -0.2, 0.1]);
        let mut prev = f64::INFINITY;
        for delta in [0.2, 0.1, 0.05] {
            let h = h_delta_apply(&f, delta, 1, HMethod::Multiplier, &tcfg).unwrap();
            let err = crate::numerics::space::weighted_norm(&h.sub(&f), &space, 128).unwrap();
            assert!(err < prev, "delta={delta}: {err} !< {prev}");
            prev = err;
        }
    }
}
