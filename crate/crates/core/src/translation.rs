//! The asymmetric generalized translation operator.
//!
//! In t-form,
//!
//! ```text
//! tau_t(f, x) = 1/(pi (1-x^2) cos^4(t/2)) * int_0^pi B_{cos t}(x, cos phi, R) f(R) dphi,
//! R = x cos t - sqrt(1-x^2) sin t cos phi,
//! B_y(x, z, R) = 2 (sqrt(1-x^2) y + x z sqrt(1-y^2) + sqrt(1-x^2)(1-y)(1-z^2))^2 - (1-R^2).
//! ```
//!
//! Substituting y = cos t, z = cos phi gives the equivalent y-form with
//! prefactor 4/(pi (1-x^2)(1+y)^2) and a Gauss–Chebyshev z-integral.
//!
//! The operator is *asymmetric*: it acts diagonally on the Jacobi-(2,2)
//! basis, but the multiplier comes from the Jacobi-(0,4) family,
//!
//! ```text
//! tau_y(R_n^{(2,2)}, x) = R_n^{(2,2)}(x) * R_n^{(0,4)}(y),
//! ```
//!
//! the unique family normalized at 1 that shares the spectrum n(n+5) of
//! D_{x,2,2}. Series representations use this multiplier form; callables go
//! through the quadrature of the displayed integral.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiSeries};
use crate::numerics::funcrep::FuncRep;
use crate::numerics::quadrature::{gauss_rule, QuadKind};
use crate::numerics::space::{weighted_norm, Regime, WeightedSpace};
use std::sync::Arc;

/// Which displayed integral the quadrature path evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationForm {
    /// Periodic trapezoid in phi on the t-form.
    TForm,
    /// Gauss–Chebyshev in z on the y-form.
    YForm,
}

/// Configuration for the quadrature path and the nested-difference guard.
#[derive(Debug, Clone)]
pub struct TranslationConfig {
    /// Order of the phi- or z-rule; must be >= 16.
    pub quad_order: usize,
    pub form: TranslationForm,
    /// Cost guard: r-fold differences cost O(quad_order^r) per point on the
    /// integral path.
    pub r_max: usize,
    /// Additive bias on the kernel B, for fault-injection in the
    /// verification suite. Zero in normal use.
    pub kernel_perturbation: f64,
}

impl Default for TranslationConfig {
    fn default() -> Self {
        TranslationConfig {
            quad_order: 64,
            form: TranslationForm::YForm,
            r_max: 3,
            kernel_perturbation: 0.0,
        }
    }
}

impl TranslationConfig {
    fn validate(&self) -> Result<()> {
        if self.quad_order < 16 {
            return Err(Error::InvalidArgument(
                "translation quad_order must be >= 16".into(),
            ));
        }
        Ok(())
    }
}

/// Shift parameter: either the angle t (|t| < pi) or y = cos t in (-1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shift {
    T(f64),
    Y(f64),
}

impl Shift {
    pub fn y(&self) -> f64 {
        match *self {
            Shift::T(t) => t.cos(),
            Shift::Y(y) => y,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Shift::T(t) => {
                if !(t.abs() < std::f64::consts::PI) {
                    return Err(Error::InvalidArgument(format!(
                        "|t| must be < pi, got t={t}"
                    )));
                }
            }
            Shift::Y(y) => {
                if !(y > -1.0 && y <= 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "y must lie in (-1, 1], got y={y}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The multiplier R_n^{(0,4)}(y) of the operator on the degree-n basis
/// element.
pub fn shift_multiplier(n: usize, y: f64) -> f64 {
    jacobi::eval_r(n, 0.0, 4.0, y)
}

/// All multipliers R_0^{(0,4)}(y), ..., R_nmax^{(0,4)}(y).
pub fn shift_multiplier_all(n_max: usize, y: f64) -> Vec<f64> {
    jacobi::eval_r_all(n_max, 0.0, 4.0, y)
}

/// The kernel pair (R, B) at (y, x, z), taking the principal branch
/// sin t = +sqrt(1-y^2). R is clamped to [-1,1] after rounding.
pub fn kernel_b(y: f64, x: f64, z: f64) -> Result<(f64, f64)> {
    for (name, v) in [("y", y), ("x", x), ("z", z)] {
        if !(-1.0..=1.0).contains(&v) {
            return Err(Error::InvalidArgument(format!(
                "kernel argument {name}={v} outside [-1,1]"
            )));
        }
    }
    let sx = (1.0 - x * x).max(0.0).sqrt();
    let sy = (1.0 - y * y).max(0.0).sqrt();
    let r = (x * y - sx * sy * z).clamp(-1.0, 1.0);
    let inner = sx * y + x * z * sy + sx * (1.0 - y) * (1.0 - z * z);
    let b = 2.0 * inner * inner - (1.0 - r * r);
    Ok((r, b))
}

/// Generalized translation, dispatching on the representation: Jacobi-(2,2)
/// and Chebyshev series use the exact multiplier form; callables use the
/// quadrature of the displayed integral.
pub fn translate(f: &FuncRep, shift: Shift, x: f64, cfg: &TranslationConfig) -> Result<f64> {
    shift.validate()?;
    cfg.validate()?;
    match f {
        FuncRep::Jacobi(s) if is_22(s) => translate_series(s, shift.y(), x),
        FuncRep::Cheb(s) => {
            let series = jacobi::to_jacobi22(&FuncRep::Cheb(s.clone()), s.degree())?;
            translate_series(&series, shift.y(), x)
        }
        _ => translate_integral(f, shift, x, cfg),
    }
}

fn is_22(s: &JacobiSeries) -> bool {
    (s.nu - 2.0).abs() < 1e-14 && (s.mu - 2.0).abs() < 1e-14
}

/// Multiplier form on a Jacobi-(2,2) series: sum b_n R_n^{(2,2)}(x) R_n^{(0,4)}(y).
pub fn translate_series(series: &JacobiSeries, y: f64, x: f64) -> Result<f64> {
    if !is_22(series) {
        return Err(Error::InvalidArgument(
            "multiplier form needs a Jacobi-(2,2) series".into(),
        ));
    }
    let n = series.degree();
    let rx = jacobi::eval_r_all(n, 2.0, 2.0, x);
    let my = shift_multiplier_all(n, y);
    Ok(series
        .coeffs
        .iter()
        .zip(rx.iter().zip(&my))
        .map(|(&b, (&r, &m))| b * r * m)
        .sum())
}

/// Quadrature of the displayed integral. Endpoints |x| > 1 - 1e-6 are
/// handled by linear extrapolation from two interior points.
pub fn translate_integral(
    f: &FuncRep,
    shift: Shift,
    x: f64,
    cfg: &TranslationConfig,
) -> Result<f64> {
    shift.validate()?;
    cfg.validate()?;
    const EDGE: f64 = 1e-6;
    if x.abs() > 1.0 - EDGE {
        if x.abs() > 1.0 {
            return Err(Error::InvalidArgument(format!("x={x} outside [-1,1]")));
        }
        let s = x.signum();
        let v1 = translate_integral_interior(f, shift.y(), s * (1.0 - EDGE), cfg)?;
        let v2 = translate_integral_interior(f, shift.y(), s * (1.0 - 2.0 * EDGE), cfg)?;
        return Ok(2.0 * v1 - v2);
    }
    translate_integral_interior(f, shift.y(), x, cfg)
}

fn translate_integral_interior(
    f: &FuncRep,
    y: f64,
    x: f64,
    cfg: &TranslationConfig,
) -> Result<f64> {
    let prefactor = 4.0 / (std::f64::consts::PI * (1.0 - x * x) * (1.0 + y) * (1.0 + y));
    let int = match cfg.form {
        TranslationForm::YForm => {
            let rule = gauss_rule(QuadKind::GaussChebyshev, cfg.quad_order)?;
            rule.integrate_checked(|z| {
                let (r, b) = kernel_b(y, x, z).expect("z in [-1,1]");
                (b + cfg.kernel_perturbation) * f.eval(r)
            })?
        }
        TranslationForm::TForm => {
            // int_0^pi g(cos phi) dphi = 1/2 int_0^{2pi}, and the periodic
            // trapezoid rule is spectrally accurate on the even extension.
            let rule = gauss_rule(QuadKind::TrapezoidPeriodic, cfg.quad_order)?;
            0.5 * rule.integrate_checked(|phi| {
                let z = phi.cos();
                let (r, b) = kernel_b(y, x, z).expect("z in [-1,1]");
                (b + cfg.kernel_perturbation) * f.eval(r)
            })?
        }
    };
    Ok(prefactor * int)
}

/// Apply the translation to the whole representation: series map to series
/// (exact multipliers), callables wrap the quadrature path.
pub fn translate_as_funcrep(f: &FuncRep, shift: Shift, cfg: &TranslationConfig) -> Result<FuncRep> {
    shift.validate()?;
    cfg.validate()?;
    let y = shift.y();
    match f {
        FuncRep::Jacobi(s) if is_22(s) => {
            let my = shift_multiplier_all(s.degree(), y);
            let coeffs = s.coeffs.iter().zip(&my).map(|(&b, &m)| b * m).collect();
            Ok(FuncRep::Jacobi(series_like(s, coeffs)))
        }
        FuncRep::Cheb(s) => {
            let series = jacobi::to_jacobi22(&FuncRep::Cheb(s.clone()), s.degree())?;
            let my = shift_multiplier_all(series.degree(), y);
            let coeffs = series.coeffs.iter().zip(&my).map(|(&b, &m)| b * m).collect();
            Ok(FuncRep::Jacobi(series_like(&series, coeffs)))
        }
        other => {
            let g = other.clone();
            let cfg = cfg.clone();
            Ok(FuncRep::from_fn(move |x| {
                translate_integral(&g, Shift::Y(y), x, &cfg).unwrap_or(f64::NAN)
            }))
        }
    }
}

fn series_like(template: &JacobiSeries, coeffs: Vec<f64>) -> JacobiSeries {
    match template.basis() {
        Some(b) => JacobiSeries::with_basis(b.clone(), coeffs),
        None => JacobiSeries::new(template.nu, template.mu, coeffs),
    }
}

/// An r-fold generalized difference request with its shift angles.
#[derive(Debug, Clone)]
pub struct DifferenceRequest {
    pub r: usize,
    pub t: Vec<f64>,
}

impl DifferenceRequest {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::InvalidArgument(
                "difference request needs r >= 1 shift angles".into(),
            ));
        }
        for &tj in &t {
            if !(tj.abs() < std::f64::consts::PI) {
                return Err(Error::InvalidArgument(format!(
                    "|t_j| must be < pi, got {tj}"
                )));
            }
        }
        Ok(DifferenceRequest { r: t.len(), t })
    }
}

/// r-fold generalized difference Delta^r_{t_1..t_r}(f, x).
pub fn difference(
    f: &FuncRep,
    req: &DifferenceRequest,
    x: f64,
    cfg: &TranslationConfig,
) -> Result<f64> {
    cfg.validate()?;
    if req.r > cfg.r_max {
        return Err(Error::InvalidArgument(format!(
            "difference order r={} exceeds the cost guard r_max={}",
            req.r, cfg.r_max
        )));
    }
    match f {
        FuncRep::Jacobi(s) if is_22(s) => Ok(difference_series_rep(s, &req.t).eval(x)),
        FuncRep::Cheb(s) => {
            let series = jacobi::to_jacobi22(&FuncRep::Cheb(s.clone()), s.degree())?;
            Ok(difference_series_rep(&series, &req.t).eval(x))
        }
        _ => difference_integral(f, req, x, cfg),
    }
}

/// Difference of a Jacobi-(2,2) series as a series: coefficients pick up a
/// product of (multiplier - 1) factors.
pub fn difference_series_rep(series: &JacobiSeries, t: &[f64]) -> JacobiSeries {
    let n = series.degree();
    let mut coeffs = series.coeffs.clone();
    for &tj in t {
        let my = shift_multiplier_all(n, tj.cos());
        for (c, &m) in coeffs.iter_mut().zip(&my) {
            *c *= m - 1.0;
        }
    }
    series_like(series, coeffs)
}

/// r-fold difference by nested quadrature, memoizing inner evaluations on
/// the quadrature grid.
pub fn difference_integral(
    f: &FuncRep,
    req: &DifferenceRequest,
    x: f64,
    cfg: &TranslationConfig,
) -> Result<f64> {
    cfg.validate()?;
    if req.r > cfg.r_max {
        return Err(Error::InvalidArgument(format!(
            "difference order r={} exceeds the cost guard r_max={}",
            req.r, cfg.r_max
        )));
    }
    let mut current = f.clone();
    for &tj in &req.t {
        let inner = current.clone();
        let cfg2 = cfg.clone();
        let cache: Mutex<HashMap<u64, f64>> = Mutex::new(HashMap::new());
        current = FuncRep::Callable(Arc::new(move |xx: f64| {
            if let Some(&v) = cache.lock().unwrap().get(&xx.to_bits()) {
                return v;
            }
            let tau = translate_integral(&inner, Shift::T(tj), xx, &cfg2).unwrap_or(f64::NAN);
            let v = tau - inner.eval(xx);
            cache.lock().unwrap().insert(xx.to_bits(), v);
            v
        }));
    }
    let v = current.eval(x);
    if !v.is_finite() {
        return Err(Error::NonFinite("nested difference".into()));
    }
    Ok(v)
}

/// Empirical operator norm: max over the trial set of ||tau_t f|| / ||f|| in
/// the given space.
pub fn operator_norm_probe(
    t: f64,
    space: &WeightedSpace,
    trials: &[FuncRep],
    cfg: &TranslationConfig,
    resolution: usize,
) -> Result<f64> {
    space.validate(Regime::TranslationBound)?;
    if trials.is_empty() {
        return Err(Error::InvalidArgument("empty trial set".into()));
    }
    let mut worst = 0.0_f64;
    for f in trials {
        let denom = weighted_norm(f, space, resolution)?;
        if denom == 0.0 {
            continue;
        }
        let tf = translate_as_funcrep(f, Shift::T(t), cfg)?;
        let num = weighted_norm(&tf, space, resolution)?;
        worst = worst.max(num / denom);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{eval_r, to_jacobi22};
    use approx::assert_abs_diff_eq;

    fn r22(n: usize) -> FuncRep {
        FuncRep::from_fn(move |x| eval_r(n, 2.0, 2.0, x))
    }

    #[test]
    fn kernel_at_y_one() {
        // y=1: R=x and B = 2(1-x^2) - (1-x^2) = 1-x^2.
        for x in [-0.9, -0.2, 0.4, 0.99] {
            let (r, b) = kernel_b(1.0, x, 0.3).unwrap();
            assert_abs_diff_eq!(r, x, epsilon = 1e-14);
            assert_abs_diff_eq!(b, 1.0 - x * x, epsilon = 1e-14);
        }
    }

    #[test]
    fn kernel_at_origin() {
        let (r, b) = kernel_b(0.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn kernel_limit_x_to_one_is_finite() {
        // Pointwise, B does not vanish at x=1; the 1/(1-x^2) prefactor is
        // cancelled by the z-integral (the leading term (2z^2-1)(1-y^2) has
        // zero Chebyshev-weighted mean). tau_y(f, x) therefore tends to a
        // finite limit as x -> 1, probed on an offset grid.
        let f = FuncRep::from_fn(|x| x * x);
        let cfg = TranslationConfig::default();
        let y = 0.3;
        let mut prev = f64::NAN;
        for k in 1..=4 {
            let x = 1.0 - 2.5e-5 * k as f64;
            let v = translate_integral(&f, Shift::Y(y), x, &cfg).unwrap();
            assert!(v.is_finite());
            if k > 1 {
                assert!((v - prev).abs() < 1e-3, "v={v} prev={prev}");
            }
            prev = v;
        }
    }

    #[test]
    fn kernel_rejects_out_of_range() {
        assert!(kernel_b(1.2, 0.0, 0.0).is_err());
    }

    #[test]
    fn translation_of_one_is_one() {
        let one = FuncRep::from_fn(|_| 1.0);
        let cfg = TranslationConfig::default();
        for y in [-0.9, -0.3, 0.2, 0.8, 1.0] {
            for x in [-0.7, 0.0, 0.5] {
                let v = translate_integral(&one, Shift::Y(y), x, &cfg).unwrap();
                assert_abs_diff_eq!(v, 1.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn translation_at_t_zero_is_identity() {
        let cfg = TranslationConfig::default();
        let f = FuncRep::from_fn(|x| (2.0 * x).sin() + 0.3 * x * x);
        for x in [-0.8, -0.1, 0.6] {
            let v = translate_integral(&f, Shift::T(0.0), x, &cfg).unwrap();
            assert_abs_diff_eq!(v, f.eval(x), epsilon = 1e-9);
        }
    }

    #[test]
    fn multiplier_family_is_jacobi_04() {
        // The decisive structure check: the integral path reproduces
        // R_n^{(2,2)}(x) R_n^{(0,4)}(y) on the basis, and does not reproduce
        // the symmetric (2,2) multiplier reading.
        let cfg = TranslationConfig::default();
        let mut max04 = 0.0_f64;
        let mut max22 = 0.0_f64;
        for n in 1..=8usize {
            for &x in &[-0.8, -0.25, 0.3, 0.7] {
                for &y in &[-0.9, -0.4, 0.1, 0.6, 0.95] {
                    let v = translate_integral(&r22(n), Shift::Y(y), x, &cfg).unwrap();
                    max04 =
                        max04.max((v - eval_r(n, 2.0, 2.0, x) * eval_r(n, 0.0, 4.0, y)).abs());
                    max22 =
                        max22.max((v - eval_r(n, 2.0, 2.0, x) * eval_r(n, 2.0, 2.0, y)).abs());
                }
            }
        }
        assert!(max04 < 1e-10, "asymmetric multiplier residual {max04}");
        assert!(max22 > 1e-1, "symmetric reading should fail, got {max22}");
    }

    #[test]
    fn forms_agree() {
        let f = FuncRep::from_fn(|x| x.exp());
        let y_cfg = TranslationConfig::default();
        let t_cfg = TranslationConfig {
            form: TranslationForm::TForm,
            quad_order: 128,
            ..Default::default()
        };
        for t in [0.4, 1.1, 2.3] {
            for x in [-0.6, 0.2, 0.8] {
                let vy = translate_integral(&f, Shift::T(t), x, &y_cfg).unwrap();
                let vt = translate_integral(&f, Shift::T(t), x, &t_cfg).unwrap();
                assert_abs_diff_eq!(vy, vt, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn even_in_t() {
        let f = FuncRep::from_fn(|x| (1.5 * x).cos());
        let cfg = TranslationConfig::default();
        for t in [0.3, 1.2] {
            for x in [-0.5, 0.1, 0.7] {
                let plus = translate_integral(&f, Shift::T(t), x, &cfg).unwrap();
                let minus = translate_integral(&f, Shift::T(-t), x, &cfg).unwrap();
                assert_abs_diff_eq!(plus, minus, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn series_path_matches_integral_path() {
        let mono = [0.5, -1.0, 0.0, 2.0, 0.7, -0.3];
        let f = FuncRep::from_monomials(&mono);
        let callable =
            FuncRep::from_fn(move |x| mono.iter().rev().fold(0.0, |acc, &c| acc * x + c));
        let cfg = TranslationConfig::default();
        for y in [-0.7, 0.0, 0.6] {
            for x in [-0.4, 0.3, 0.9] {
                let fast = translate(&f, Shift::Y(y), x, &cfg).unwrap();
                let slow = translate_integral(&callable, Shift::Y(y), x, &cfg).unwrap();
                assert_abs_diff_eq!(fast, slow, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn self_adjoint_against_weight() {
        let cfg = TranslationConfig::default();
        let f = FuncRep::from_monomials(&[0.2, 1.0, -0.5, 0.0, 1.0]);
        let g = FuncRep::from_monomials(&[1.0, 0.0, 2.0, -1.0]);
        let rule = gauss_rule(QuadKind::GaussJacobi { a: 2.0, b: 2.0 }, 48).unwrap();
        for y in [-0.5, 0.2, 0.8] {
            let tg = translate_as_funcrep(&g, Shift::Y(y), &cfg).unwrap();
            let tf = translate_as_funcrep(&f, Shift::Y(y), &cfg).unwrap();
            let lhs = rule.integrate(|x| f.eval(x) * tg.eval(x));
            let rhs = rule.integrate(|x| g.eval(x) * tf.eval(x));
            let scale = lhs.abs().max(rhs.abs()).max(1e-12);
            assert!((lhs - rhs).abs() / scale < 1e-7, "y={y}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn difference_of_constant_vanishes() {
        let cfg = TranslationConfig::default();
        let req = DifferenceRequest::new(vec![0.5, 1.1]).unwrap();
        let c = FuncRep::constant(3.25);
        assert_abs_diff_eq!(
            difference(&c, &req, 0.3, &cfg).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn difference_multiplier_oracle_on_basis() {
        // Delta_t R_1 = R_1(x) (R_1^{(0,4)}(cos t) - 1) with
        // R_1^{(0,4)}(y) = 3y - 2, iterated for r=2.
        let cfg = TranslationConfig::default();
        let f = FuncRep::Jacobi(to_jacobi22(&FuncRep::from_monomials(&[0.0, 1.0]), 1).unwrap());
        let (t1, t2) = (0.6, 1.3);
        let m1 = |t: f64| 3.0 * t.cos() - 2.0;
        for x in [-0.6, 0.2, 0.75] {
            let d1 = difference(&f, &DifferenceRequest::new(vec![t1]).unwrap(), x, &cfg).unwrap();
            assert_abs_diff_eq!(d1, x * (m1(t1) - 1.0), epsilon = 1e-12);
            let d2 =
                difference(&f, &DifferenceRequest::new(vec![t1, t2]).unwrap(), x, &cfg).unwrap();
            assert_abs_diff_eq!(d2, x * (m1(t1) - 1.0) * (m1(t2) - 1.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn nested_integral_difference_matches_series_path() {
        let cfg = TranslationConfig {
            quad_order: 48,
            ..Default::default()
        };
        let mono = [0.0, 0.5, 1.0, -0.25];
        let series = FuncRep::from_monomials(&mono);
        let callable =
            FuncRep::from_fn(move |x| mono.iter().rev().fold(0.0, |acc, &c| acc * x + c));
        let req = DifferenceRequest::new(vec![0.7, 1.2]).unwrap();
        for x in [-0.5, 0.0, 0.6] {
            let fast = difference(&series, &req, x, &cfg).unwrap();
            let slow = difference_integral(&callable, &req, x, &cfg).unwrap();
            assert_abs_diff_eq!(fast, slow, epsilon = 1e-9);
        }
    }

    #[test]
    fn r_guard_enforced() {
        let cfg = TranslationConfig::default();
        let req = DifferenceRequest::new(vec![0.1, 0.1, 0.1, 0.1]).unwrap();
        assert!(difference(&FuncRep::constant(1.0), &req, 0.0, &cfg).is_err());
    }

    #[test]
    fn norm_probe_identity_at_t_zero_and_r1_multiplier() {
        let cfg = TranslationConfig::default();
        let space = WeightedSpace::finite(2.0, 1.0);
        let trials = vec![FuncRep::from_monomials(&[0.3, 1.0, -0.2])];
        let at_zero = operator_norm_probe(0.0, &space, &trials, &cfg, 64).unwrap();
        assert_abs_diff_eq!(at_zero, 1.0, epsilon = 1e-9);

        // ||tau_t R_1|| / ||R_1|| = |3 cos t - 2| exactly.
        let r1 = vec![FuncRep::from_monomials(&[0.0, 1.0])];
        for t in [0.4, 1.0, 2.0] {
            let ratio = operator_norm_probe(t, &space, &r1, &cfg, 64).unwrap();
            assert_abs_diff_eq!(ratio, (3.0 * t.cos() - 2.0).abs(), epsilon = 1e-9);
        }
    }

    #[test]
    fn probe_requires_valid_regime_and_nonempty_trials() {
        let cfg = TranslationConfig::default();
        let bad_space = WeightedSpace::finite(2.0, 0.2);
        let trials = vec![FuncRep::constant(1.0)];
        assert!(operator_norm_probe(0.5, &bad_space, &trials, &cfg, 64).is_err());
        let space = WeightedSpace::finite(2.0, 1.0);
        assert!(operator_norm_probe(0.5, &space, &[], &cfg, 64).is_err());
    }

    #[test]
    fn endpoint_extrapolation_is_close_to_interior_values() {
        let f = FuncRep::from_fn(|x| x * x);
        let cfg = TranslationConfig::default();
        let v = translate_integral(&f, Shift::Y(0.5), 1.0, &cfg).unwrap();
        let near = translate_integral(&f, Shift::Y(0.5), 1.0 - 1e-5, &cfg).unwrap();
        assert!((v - near).abs() < 1e-3, "endpoint {v} vs near {near}");
    }
}
