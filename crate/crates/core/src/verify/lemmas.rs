//! The lemma-identity suite: every operator identity and bound probed at
//! fixed tolerances, reported as a deterministic pass/fail table.

use rayon::prelude::*;
use serde::Serialize;

use crate::approx::{bernstein_markov_probe, en_from_d_bound, SolverConfig};
use crate::jacobi::{self, eval_r};
use crate::numerics::cheb;
use crate::numerics::funcrep::{ChebSeries, FuncRep};
use crate::numerics::quadrature::{gauss_rule, QuadKind};
use crate::numerics::space::{weighted_norm, WeightedSpace};
use crate::smoothness::{
    h_apply, h_delta_apply, kappa, modulus, sl_weight, HMethod, ModulusConfig,
};
use crate::translation::{
    difference_integral, operator_norm_probe, shift_multiplier, translate, translate_integral,
    DifferenceRequest, Shift, TranslationConfig, TranslationForm,
};
use crate::verify::random_poly;

/// One identity check: the largest observed residual against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub lemma_id: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl LemmaCheck {
    fn new(id: &str, max_error: f64, tolerance: f64) -> Self {
        LemmaCheck {
            lemma_id: id.to_string(),
            max_error,
            tolerance,
            pass: max_error.is_finite() && max_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub checks: Vec<LemmaCheck>,
    pub all_pass: bool,
}

impl LemmaReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn all_pass(&self) -> bool {
        self.all_pass
    }
}

fn r22_series(n: usize) -> FuncRep {
    FuncRep::Cheb(
        FuncRep::from_fn(move |x| eval_r(n, 2.0, 2.0, x))
            .to_cheb(n)
            .expect("exact interpolation"),
    )
}

fn interior_grid(count: usize, span: f64) -> Vec<f64> {
    (0..count)
        .map(|i| -span + 2.0 * span * i as f64 / (count - 1) as f64)
        .collect()
}

/// c_1/c_0 for a Chebyshev-representable f, exact on coefficients.
fn mean_correction(f: &FuncRep) -> f64 {
    let c = f.to_cheb(f.degree().unwrap_or(32)).expect("series form");
    let w22 = [0.375, 0.0, -0.5, 0.0, 0.125];
    cheb::integral(&cheb::product(&w22, &c.coeffs)) / (16.0 / 15.0)
}

/// Run every identity check. Deterministic for a fixed seed.
pub fn run_lemma_suite(seed: u64) -> LemmaReport {
    let checks: Vec<fn(u64) -> LemmaCheck> = vec![
        check_eigen_relation,
        check_d_factorized,
        check_d_self_adjoint,
        check_tau_multiplier_product,
        check_tau_identity_at_zero,
        check_tau_constant,
        check_tau_linearity,
        check_tau_fourier_multiplier,
        check_tau_self_adjoint,
        check_tau_evenness,
        check_tau_cross_form,
        check_tau_bound_envelope,
        check_commutation_dx,
        check_commutation_dy,
        check_lemma5_identity,
        check_lemma8_smoothness_bound,
        check_lemma9_h_bound,
        check_lemma10_dh_bound,
        check_lemma11_multiplier,
        check_lemma11_integral,
        check_lemma11_partial,
        check_lemma12_identity,
        check_lemma12_corollary,
        check_kappa_asymptote,
        check_kappa_lower_bound,
        check_h_cross_form,
        check_h_delta_cross_form,
        check_h_delta_approx_identity,
        check_bernstein_markov_spread,
        check_e_vs_d_ratio,
    ];
    let results: Vec<LemmaCheck> = checks.par_iter().map(|f| f(seed)).collect();
    let all_pass = results.iter().all(|c| c.pass);
    LemmaReport {
        seed,
        checks: results,
        all_pass,
    }
}

/// D_{2,2} R_n = -n(n+5) R_n, error measured in ||.||_{inf,0} and
/// normalized by n^2.
fn check_eigen_relation(_seed: u64) -> LemmaCheck {
    let mut worst = 0.0_f64;
    for n in 1..=16usize {
        let rn = r22_series(n);
        let drn = jacobi::apply_d(&rn, 2.0, 2.0, 1).expect("series input");
        let lambda = jacobi::eigenvalue(n, 2.0, 2.0);
        let mut err = 0.0_f64;
        for &x in &interior_grid(257, 1.0) {
            err = err.max((drn.eval(x) - lambda * rn.eval(x)).abs());
        }
        worst = worst.max(err / (n * n) as f64);
    }
    LemmaCheck::new("eigen_relation_d22", worst, 1e-8)
}

/// Expanded D versus the factorized divergence form, on random polynomials.
fn check_d_factorized(seed: u64) -> LemmaCheck {
    let mut worst = 0.0_f64;
    for (trial, (nu, mu)) in [(0u64, (2.0, 2.0)), (1, (0.0, 4.0)), (2, (2.0, 2.0))] {
        let f = random_poly(seed ^ (0xD00D + trial), 6);
        let fc = f.to_cheb(6).unwrap();
        let df = jacobi::apply_d(&f, nu, mu, 1).unwrap();
        let mut w = vec![1.0];
        for _ in 0..(nu as usize + 1) {
            w = cheb::product(&w, &cheb::from_monomials(&[1.0, -1.0]));
        }
        for _ in 0..(mu as usize + 1) {
            w = cheb::product(&w, &cheb::from_monomials(&[1.0, 1.0]));
        }
        let inner = cheb::product(&w, &cheb::derivative(&fc.coeffs));
        let outer = cheb::derivative(&inner);
        for &x in &interior_grid(33, 0.95) {
            // Compare in the weight-multiplied form: dividing by the weight
            // is ill-conditioned where it vanishes, and the identity is the
            // same either way.
            let weight = (1.0 - x).powf(nu) * (1.0 + x).powf(mu);
            let lhs = cheb::clenshaw(&outer, x);
            let rhs = df.eval(x) * weight;
            worst = worst.max((lhs - rhs).abs() / (1.0 + lhs.abs().max(rhs.abs())));
        }
    }
    LemmaCheck::new("d_factorized_vs_expanded", worst, 1e-10)
}

/// int (Df) g (1-x^2)^2 = int f (Dg) (1-x^2)^2 on random polynomials.
fn check_d_self_adjoint(seed: u64) -> LemmaCheck {
    let rule = gauss_rule(QuadKind::GaussJacobi { a: 2.0, b: 2.0 }, 48).unwrap();
    let mut worst = 0.0_f64;
    for trial in 0..4u64 {
        let f = random_poly(seed ^ (0xA5A5 + 2 * trial), 10);
        let g = random_poly(seed ^ (0xA5A6 + 2 * trial), 10);
        let df = jacobi::apply_d(&f, 2.0, 2.0, 1).unwrap();
        let dg = jacobi::apply_d(&g, 2.0, 2.0, 1).unwrap();
        let lhs = rule.integrate(|x| df.eval(x) * g.eval(x));
        let rhs = rule.integrate(|x| f.eval(x) * dg.eval(x));
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0));
    }
    LemmaCheck::new("d_self_adjoint", worst, 1e-8)
}

/// tau_y(R_n, x) = R_n^{(2,2)}(x) R_n^{(0,4)}(y) on a 9x9 grid, n <= 12,
/// through the quadrature path.
fn check_tau_multiplier_product(_seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let xs = interior_grid(9, 0.92);
    let ys = interior_grid(9, 0.95);
    let mut worst = 0.0_f64;
    for n in 0..=12usize {
        let f = FuncRep::from_fn(move |x| eval_r(n, 2.0, 2.0, x));
        for &x in &xs {
            for &y in &ys {
                let v = translate_integral(&f, Shift::Y(y), x, &cfg).unwrap();
                let expect = eval_r(n, 2.0, 2.0, x) * shift_multiplier(n, y);
                worst = worst.max((v - expect).abs());
            }
        }
    }
    LemmaCheck::new("tau_multiplier_product", worst, 1e-7)
}

fn check_tau_identity_at_zero(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let f = random_poly(seed ^ 0xBEEF, 9);
    let mut worst = 0.0_f64;
    for &x in &interior_grid(17, 0.9) {
        let v = translate_integral(&f, Shift::T(0.0), x, &cfg).unwrap();
        worst = worst.max((v - f.eval(x)).abs());
    }
    LemmaCheck::new("tau_identity_at_zero", worst, 1e-9)
}

fn check_tau_constant(_seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let one = FuncRep::from_fn(|_| 1.0);
    let mut worst = 0.0_f64;
    for &y in &interior_grid(9, 0.95) {
        for &x in &interior_grid(9, 0.92) {
            let v = translate_integral(&one, Shift::Y(y), x, &cfg).unwrap();
            worst = worst.max((v - 1.0).abs());
        }
    }
    LemmaCheck::new("tau_constant", worst, 1e-9)
}

fn check_tau_linearity(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let f = random_poly(seed ^ 0x11, 7);
    let g = random_poly(seed ^ 0x22, 7);
    let combo = f.scale(1.75).add(&g.scale(-0.6));
    let mut worst = 0.0_f64;
    for &(y, x) in &[(0.4, -0.3), (-0.7, 0.5), (0.9, 0.1)] {
        let vc = translate_integral(&combo, Shift::Y(y), x, &cfg).unwrap();
        let vf = translate_integral(&f, Shift::Y(y), x, &cfg).unwrap();
        let vg = translate_integral(&g, Shift::Y(y), x, &cfg).unwrap();
        worst = worst.max((vc - (1.75 * vf - 0.6 * vg)).abs());
    }
    LemmaCheck::new("tau_linearity", worst, 1e-9)
}

/// a_n(tau_y f) = a_n(f) R_n^{(0,4)}(y) for the seeded random polynomial.
fn check_tau_fourier_multiplier(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let f = random_poly(seed, 10);
    let a_f = jacobi::fourier_jacobi(&f, 10).unwrap();
    let mut worst = 0.0_f64;
    for &y in &[0.3, -0.45, 0.8] {
        let fc = f.clone();
        let cfg2 = cfg.clone();
        let tf = FuncRep::from_fn(move |x| {
            translate_integral(&fc, Shift::Y(y), x, &cfg2).unwrap_or(f64::NAN)
        });
        let a_tf = jacobi::fourier_jacobi(&tf, 10).unwrap();
        for n in 0..=10usize {
            worst = worst.max((a_tf[n] - a_f[n] * shift_multiplier(n, y)).abs());
        }
    }
    LemmaCheck::new("tau_fourier_multiplier", worst, 1e-7)
}

/// int f tau_y(g) (1-x^2)^2 = int g tau_y(f) (1-x^2)^2.
fn check_tau_self_adjoint(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let rule = gauss_rule(QuadKind::GaussJacobi { a: 2.0, b: 2.0 }, 48).unwrap();
    let f = random_poly(seed ^ 0x33, 8);
    let g = random_poly(seed ^ 0x44, 8);
    let mut worst = 0.0_f64;
    for &y in &[-0.5, 0.2, 0.85] {
        let lhs = rule.integrate(|x| {
            f.eval(x) * translate_integral(&g, Shift::Y(y), x, &cfg).unwrap()
        });
        let rhs = rule.integrate(|x| {
            g.eval(x) * translate_integral(&f, Shift::Y(y), x, &cfg).unwrap()
        });
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-12));
    }
    LemmaCheck::new("tau_self_adjoint", worst, 1e-7)
}

fn check_tau_evenness(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let f = random_poly(seed ^ 0x55, 8);
    let mut worst = 0.0_f64;
    for &t in &[0.35, 1.1, 2.2] {
        for &x in &[-0.6, 0.0, 0.7] {
            let plus = translate_integral(&f, Shift::T(t), x, &cfg).unwrap();
            let minus = translate_integral(&f, Shift::T(-t), x, &cfg).unwrap();
            worst = worst.max((plus - minus).abs());
        }
    }
    LemmaCheck::new("tau_evenness", worst, 1e-7)
}

/// The t-form (periodic trapezoid) agrees with the y-form (Gauss-Chebyshev).
fn check_tau_cross_form(seed: u64) -> LemmaCheck {
    let y_cfg = TranslationConfig::default();
    let t_cfg = TranslationConfig {
        form: TranslationForm::TForm,
        quad_order: 128,
        ..Default::default()
    };
    let f = random_poly(seed ^ 0x66, 9);
    let mut worst = 0.0_f64;
    for &t in &[0.4, 1.3, 2.5] {
        for &x in &[-0.5, 0.25, 0.8] {
            let vy = translate_integral(&f, Shift::T(t), x, &y_cfg).unwrap();
            let vt = translate_integral(&f, Shift::T(t), x, &t_cfg).unwrap();
            worst = worst.max((vy - vt).abs());
        }
    }
    LemmaCheck::new("tau_cross_form", worst, 1e-9)
}

/// ||tau_t f|| <= C cos^{-4}(t/2) ||f||: the normalized ratio
/// ratio(t) cos^4(t/2) stays under one frozen constant.
fn check_tau_bound_envelope(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let trials: Vec<FuncRep> = (1..=6)
        .map(r22_series)
        .chain([random_poly(seed ^ 0x77, 8)])
        .collect();
    let mut worst = 0.0_f64;
    for space in [WeightedSpace::finite(2.0, 1.0), WeightedSpace::sup(1.0)] {
        for &t in &[0.5, 1.0, 2.0, 3.0] {
            let ratio = operator_norm_probe(t, &space, &trials, &cfg, 256).unwrap();
            worst = worst.max(ratio * (0.5 * t).cos().powi(4));
        }
    }
    LemmaCheck::new("tau_bound_envelope", worst, 2.0)
}

/// tau_y(D f, x) = D_x tau_y(f, x) on polynomials.
fn check_commutation_dx(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let f = random_poly(seed ^ 0x88, 8);
    let df = jacobi::apply_d(&f, 2.0, 2.0, 1).unwrap();
    let mut worst = 0.0_f64;
    for &y in &[-0.4, 0.3, 0.9] {
        // D_x of the translated function, through its (exact) series form.
        let tf = crate::translation::translate_as_funcrep(&f, Shift::Y(y), &cfg).unwrap();
        let dtf = jacobi::apply_d(&tf, 2.0, 2.0, 1).unwrap();
        for &x in &interior_grid(11, 0.9) {
            let lhs = translate(&df, Shift::Y(y), x, &cfg).unwrap();
            worst = worst.max((lhs - dtf.eval(x)).abs());
        }
    }
    LemmaCheck::new("commutation_dx", worst, 1e-6)
}

/// tau_y(D f, x) = D_y tau_y(f, x): the y-side operator is D_{y,0,4}, the
/// generator of the multiplier family.
fn check_commutation_dy(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let f = random_poly(seed ^ 0x99, 8);
    let df = jacobi::apply_d(&f, 2.0, 2.0, 1).unwrap();
    let mut worst = 0.0_f64;
    for &x in &[-0.35, 0.15, 0.6] {
        let fc = f.clone();
        let cfg2 = cfg.clone();
        let as_of_y = FuncRep::from_fn(move |y| {
            translate(&fc, Shift::Y(y), x, &cfg2).unwrap_or(f64::NAN)
        });
        // Interpolate in y at interior points (the y-form prefactor is
        // singular at y = -1), then apply D_{y,0,4}.
        let series = as_of_y.to_cheb_interior(f.degree().unwrap() + 2).unwrap();
        let dy = jacobi::apply_d(&FuncRep::Cheb(series), 0.0, 4.0, 1).unwrap();
        for &y in &interior_grid(9, 0.85) {
            let lhs = translate(&df, Shift::Y(y), x, &cfg).unwrap();
            worst = worst.max((lhs - dy.eval(y)).abs());
        }
    }
    LemmaCheck::new("commutation_dy", worst, 1e-6)
}

/// tau_t(f,x) - f(x) = int_0^t A(v)^{-1} int_0^v tau_u(Df, x) A(u) du dv.
fn check_lemma5_identity(seed: u64) -> LemmaCheck {
    let cfg = TranslationConfig::default();
    let base = gauss_rule(QuadKind::GaussLegendre, 48).unwrap();
    let mut worst = 0.0_f64;
    for trial in 0..2u64 {
        let f = random_poly(seed ^ (0xAA + trial), 8);
        let df = jacobi::apply_d(&f, 2.0, 2.0, 1).unwrap();
        for &t in &[0.4, 1.0] {
            for &x in &[-0.55, 0.1, 0.75] {
                let lhs = translate(&f, Shift::T(t), x, &cfg).unwrap() - f.eval(x);
                let inner = |v: f64| -> f64 {
                    let half = 0.5 * v;
                    base.integrate(|u| {
                        let uu = half * (u + 1.0);
                        translate(&df, Shift::T(uu), x, &cfg).unwrap() * sl_weight(uu)
                    }) * half
                };
                let half = 0.5 * t;
                let rhs = base.integrate(|v| {
                    let vv = half * (v + 1.0);
                    inner(vv) / sl_weight(vv)
                }) * half;
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    LemmaCheck::new("lemma5_identity", worst, 1e-6)
}

/// omega_r(g, delta) <= C delta^{2r} cos^{-4r}(delta/2) ||D^r g||: the
/// normalized ratio stays under one frozen constant.
fn check_lemma8_smoothness_bound(seed: u64) -> LemmaCheck {
    let space = WeightedSpace::finite(2.0, 1.0);
    let cfg = ModulusConfig::default();
    let mut worst = 0.0_f64;
    let family = [r22_series(3), r22_series(6), random_poly(seed ^ 0xBB, 8)];
    for g in &family {
        for r in 1..=2usize {
            let drg = jacobi::apply_d(g, 2.0, 2.0, r).unwrap();
            let denom_base = weighted_norm(&drg, &space, 256).unwrap();
            for &delta in &[0.1, 0.5, 1.0] {
                let om = modulus(g, r, delta, &space, &cfg).unwrap().value;
                let ratio = om * (0.5 * delta).cos().powi(4 * r as i32)
                    / (delta.powi(2 * r as i32) * denom_base);
                worst = worst.max(ratio);
            }
        }
    }
    LemmaCheck::new("lemma8_smoothness_bound", worst, 1.0)
}

/// ||H f|| / ||f|| bounded over the trial family in the H regime.
fn check_lemma9_h_bound(seed: u64) -> LemmaCheck {
    let spaces = [
        WeightedSpace::finite(1.0, 2.0),
        WeightedSpace::finite(2.0, 1.0),
        WeightedSpace::sup(0.5),
    ];
    let mut worst = 0.0_f64;
    let family = [r22_series(1), r22_series(4), random_poly(seed ^ 0xCC, 10)];
    for f in &family {
        let hf = h_apply(f, 1, HMethod::Multiplier).unwrap();
        for space in &spaces {
            let num = weighted_norm(&hf, space, 256).unwrap();
            let den = weighted_norm(f, space, 256).unwrap();
            worst = worst.max(num / den);
        }
    }
    LemmaCheck::new("lemma9_h_bound", worst, 1.0)
}

/// ||(d/dx) H f|| / ||f|| bounded in the Lemma-10 regime.
fn check_lemma10_dh_bound(seed: u64) -> LemmaCheck {
    let spaces = [
        WeightedSpace::finite(1.0, 1.0),
        WeightedSpace::finite(2.0, 1.0),
        WeightedSpace::sup(0.5),
    ];
    let mut worst = 0.0_f64;
    let family = [r22_series(1), r22_series(4), random_poly(seed ^ 0xDD, 10)];
    for f in &family {
        let hf = h_apply(f, 1, HMethod::Multiplier).unwrap();
        let deg = hf.degree().unwrap();
        let hc = hf.to_cheb(deg).unwrap();
        let dhf = FuncRep::Cheb(ChebSeries::new(cheb::derivative(&hc.coeffs)));
        for space in &spaces {
            let num = weighted_norm(&dhf, space, 256).unwrap();
            let den = weighted_norm(f, space, 256).unwrap();
            worst = worst.max(num / den);
        }
    }
    LemmaCheck::new("lemma10_dh_bound", worst, 2.0)
}

/// D^r H^r f = f - c_1/c_0 (multiplier route).
fn check_lemma11_multiplier(seed: u64) -> LemmaCheck {
    let space = WeightedSpace::finite(2.0, 1.0);
    let f = random_poly(seed ^ 0xEE, 12);
    let c = mean_correction(&f);
    let mut worst = 0.0_f64;
    for r in 1..=2usize {
        let hrf = h_apply(&f, r, HMethod::Multiplier).unwrap();
        let drhrf = jacobi::apply_d(&hrf, 2.0, 2.0, r).unwrap();
        let residual = drhrf.sub(&f).add_constant(c);
        worst = worst.max(weighted_norm(&residual, &space, 256).unwrap());
    }
    LemmaCheck::new("lemma11_inverse_multiplier", worst, 1e-7)
}

/// D^r H^r f = f - c_1/c_0 with H^r computed by the displayed integral.
fn check_lemma11_integral(seed: u64) -> LemmaCheck {
    let space = WeightedSpace::finite(2.0, 1.0);
    let f = random_poly(seed ^ 0xEE, 12);
    let c = mean_correction(&f);
    let deg = f.degree().unwrap();
    let mut worst = 0.0_f64;
    for r in 1..=2usize {
        let hrf = h_apply(&f, r, HMethod::Integral).unwrap();
        // H preserves degree; interpolate the integral evaluator away from
        // the endpoints it refuses.
        let series = FuncRep::Cheb(hrf.to_cheb_interior(deg).unwrap());
        let drhrf = jacobi::apply_d(&series, 2.0, 2.0, r).unwrap();
        let residual = drhrf.sub(&f).add_constant(c);
        worst = worst.max(weighted_norm(&residual, &space, 256).unwrap());
    }
    LemmaCheck::new("lemma11_inverse_integral", worst, 1e-7)
}

/// D^l H^r f = H^{r-l} f - c_{r-l+1}/c_0 for l < r.
fn check_lemma11_partial(seed: u64) -> LemmaCheck {
    let space = WeightedSpace::finite(2.0, 1.0);
    let f = random_poly(seed ^ 0xFF, 12);
    let (l, r) = (1usize, 2usize);
    let hrf = h_apply(&f, r, HMethod::Multiplier).unwrap();
    let dl = jacobi::apply_d(&hrf, 2.0, 2.0, l).unwrap();
    let hrl = h_apply(&f, r - l, HMethod::Multiplier).unwrap();
    let c = mean_correction(&hrl);
    let residual = dl.sub(&hrl).add_constant(c);
    let err = weighted_norm(&residual, &space, 256).unwrap();
    LemmaCheck::new("lemma11_partial_powers", err, 1e-7)
}

/// H_delta^r f = kappa^{-r} Delta_delta^r(H^r f) + c_1/c_0, pointwise on a
/// 17-point grid; the difference side runs through the integral translation.
fn check_lemma12_identity(seed: u64) -> LemmaCheck {
    let tcfg = TranslationConfig::default();
    let f = random_poly(seed ^ 0x1212, 12);
    let c = mean_correction(&f);
    let grid = interior_grid(17, 0.9);
    let mut worst = 0.0_f64;
    for r in 1..=2usize {
        for &delta in &[0.3, 0.8] {
            let kap = kappa(delta).unwrap();
            let lhs = h_delta_apply(&f, delta, r, HMethod::Multiplier, &tcfg).unwrap();
            let hrf = h_apply(&f, r, HMethod::Multiplier).unwrap();
            let req = DifferenceRequest::new(vec![delta; r]).unwrap();
            for &x in &grid {
                let diff = difference_integral(&hrf, &req, x, &tcfg).unwrap();
                let rhs = diff / kap.powi(r as i32) + c;
                worst = worst.max((lhs.eval(x) - rhs).abs());
            }
        }
    }
    LemmaCheck::new("lemma12_identity", worst, 1e-6)
}

/// D^r H_delta^r f = kappa^{-r} Delta_delta^r f.
fn check_lemma12_corollary(seed: u64) -> LemmaCheck {
    let tcfg = TranslationConfig::default();
    let f = random_poly(seed ^ 0x1313, 12);
    let grid = interior_grid(17, 0.9);
    let mut worst = 0.0_f64;
    for r in 1..=2usize {
        for &delta in &[0.3, 0.8] {
            let kap = kappa(delta).unwrap();
            let hd = h_delta_apply(&f, delta, r, HMethod::Multiplier, &tcfg).unwrap();
            let lhs = jacobi::apply_d(&hd, 2.0, 2.0, r).unwrap();
            let req = DifferenceRequest::new(vec![delta; r]).unwrap();
            for &x in &grid {
                let rhs = difference_integral(&f, &req, x, &tcfg).unwrap() / kap.powi(r as i32);
                worst = worst.max((lhs.eval(x) - rhs).abs());
            }
        }
    }
    LemmaCheck::new("lemma12_corollary", worst, 1e-6)
}

/// kappa(delta)/delta^2 -> 1/4 as delta -> 0 (checked at delta = 0.01).
fn check_kappa_asymptote(_seed: u64) -> LemmaCheck {
    let k = kappa(0.01).unwrap();
    let err = (k / 1e-4 - 0.25).abs() / 0.25;
    LemmaCheck::new("kappa_asymptote", err, 5e-3)
}

/// kappa(delta) >= delta^2 / 5 on (0, pi/2]; kappa/delta^2 is increasing
/// with infimum 1/4, so the frozen constant 1/5 has margin.
fn check_kappa_lower_bound(_seed: u64) -> LemmaCheck {
    let mut min_ratio = f64::INFINITY;
    for i in 1..=20 {
        let d = std::f64::consts::FRAC_PI_2 * i as f64 / 20.0;
        min_ratio = min_ratio.min(kappa(d).unwrap() / (d * d));
    }
    LemmaCheck::new("kappa_lower_bound", (0.2 - min_ratio).max(0.0), 1e-12)
}

/// H by the displayed integral versus the multiplier route.
fn check_h_cross_form(seed: u64) -> LemmaCheck {
    let f = random_poly(seed ^ 0x1414, 10);
    let hm = h_apply(&f, 1, HMethod::Multiplier).unwrap();
    let hi = h_apply(&f, 1, HMethod::Integral).unwrap();
    let mut worst = 0.0_f64;
    for &x in &interior_grid(17, 0.9) {
        worst = worst.max((hm.eval(x) - hi.eval(x)).abs());
    }
    LemmaCheck::new("h_cross_form", worst, 1e-7)
}

/// H_delta integral versus multiplier at 16 probe points — the
/// reconstruction gate for the Sturm–Liouville weight.
fn check_h_delta_cross_form(seed: u64) -> LemmaCheck {
    let tcfg = TranslationConfig::default();
    let f = random_poly(seed ^ 0x1515, 8);
    let mut worst = 0.0_f64;
    for &delta in &[0.5, 1.1] {
        let hm = h_delta_apply(&f, delta, 1, HMethod::Multiplier, &tcfg).unwrap();
        let hi = h_delta_apply(&f, delta, 1, HMethod::Integral, &tcfg).unwrap();
        for &x in &interior_grid(16, 0.88) {
            worst = worst.max((hm.eval(x) - hi.eval(x)).abs());
        }
    }
    LemmaCheck::new("h_delta_cross_form", worst, 1e-5)
}

/// ||H_delta f - f||_{2,1} decreases along delta = 0.2, 0.1, 0.05.
fn check_h_delta_approx_identity(seed: u64) -> LemmaCheck {
    let tcfg = TranslationConfig::default();
    let space = WeightedSpace::finite(2.0, 1.0);
    let f = random_poly(seed ^ 0x1616, 8);
    let mut errs = Vec::new();
    for &delta in &[0.2, 0.1, 0.05] {
        let hd = h_delta_apply(&f, delta, 1, HMethod::Multiplier, &tcfg).unwrap();
        errs.push(weighted_norm(&hd.sub(&f), &space, 256).unwrap());
    }
    let worst = errs
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0_f64, f64::max)
        .max(0.0);
    LemmaCheck::new("h_delta_approx_identity", worst, 1e-12)
}

/// Bernstein–Markov: the three normalized ratios each have spread <= 10
/// over P = R_n, n <= 32. The space (2, 1/2) keeps all three ratio
/// sequences near their asymptotes; at alpha = 1 the weight-shift ratio
/// decays like 1/n (the inequality is one-sided there) and the spread
/// measure stops being informative.
fn check_bernstein_markov_spread(_seed: u64) -> LemmaCheck {
    let space = WeightedSpace::finite(2.0, 0.5);
    let mut mins = [f64::INFINITY; 3];
    let mut maxs = [f64::NEG_INFINITY; 3];
    for n in 1..=32usize {
        let p = r22_series(n);
        let ratios = bernstein_markov_probe(&p, &space, 0.5, 384).unwrap();
        for (k, v) in [ratios.derivative, ratios.weight_shift, ratios.d_operator]
            .into_iter()
            .enumerate()
        {
            mins[k] = mins[k].min(v);
            maxs[k] = maxs[k].max(v);
        }
    }
    let spread = (0..3).map(|k| maxs[k] / mins[k]).fold(0.0_f64, f64::max);
    LemmaCheck::new("bernstein_markov_spread", spread, 10.0)
}

/// E_n(f) <= C n^{-2r} ||D^r f||: normalized ratios stay under one constant.
fn check_e_vs_d_ratio(_seed: u64) -> LemmaCheck {
    let space = WeightedSpace::finite(2.0, 1.0);
    let cfg = SolverConfig::default();
    let mut worst = 0.0_f64;
    let r8 = r22_series(8);
    for n in [2usize, 4, 8] {
        let (e, bound) = en_from_d_bound(&r8, 1, n, &space, &cfg).unwrap();
        worst = worst.max(e / bound);
    }
    // Smooth series sum_{k<=10} k^{-4} R_k.
    let mut acc = FuncRep::constant(0.0);
    for k in 1..=10usize {
        acc = acc.add(&r22_series(k).scale((k as f64).powi(-4)));
    }
    for n in [2usize, 4, 8, 16] {
        let (e, bound) = en_from_d_bound(&acc, 1, n, &space, &cfg).unwrap();
        if bound > 0.0 && e > 1e-12 {
            worst = worst.max(e / bound);
        }
    }
    LemmaCheck::new("e_vs_d_ratio", worst, 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::DEFAULT_SEED;

    #[test]
    fn suite_passes_and_is_deterministic() {
        let a = run_lemma_suite(DEFAULT_SEED);
        for c in &a.checks {
            assert!(
                c.pass,
                "{} failed: {} > {}",
                c.lemma_id, c.max_error, c.tolerance
            );
        }
        let b = run_lemma_suite(DEFAULT_SEED);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn kernel_mutation_breaks_the_multiplier_product() {
        // Fault injection: biasing the kernel by 1e-3 must push the
        // multiplier-product identity far past its tolerance.
        let cfg = TranslationConfig {
            kernel_perturbation: 1e-3,
            ..Default::default()
        };
        let mut worst = 0.0_f64;
        for n in 0..=4usize {
            let f = FuncRep::from_fn(move |x| eval_r(n, 2.0, 2.0, x));
            for &x in &[-0.5, 0.2, 0.7] {
                for &y in &[-0.3, 0.4, 0.9] {
                    let v = translate_integral(&f, Shift::Y(y), x, &cfg).unwrap();
                    let expect = eval_r(n, 2.0, 2.0, x) * shift_multiplier(n, y);
                    worst = worst.max((v - expect).abs());
                }
            }
        }
        assert!(worst > 1e-4, "canary too quiet: {worst}");
    }

    #[test]
    fn r_zero_difference_request_rejected() {
        assert!(DifferenceRequest::new(vec![]).is_err());
    }
}
