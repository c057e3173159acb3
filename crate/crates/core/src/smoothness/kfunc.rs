//! Peetre-type K-functional
//! K(f, delta) = inf_g ( ||f-g||_{p,alpha} + delta^{2r} ||D^r g||_{p,alpha} ),
//! realized over polynomials of degree <= search_degree.
//!
//! Candidates come from a Tikhonov regularization path (normal equations on
//! the quadrature-discretized L2 objective, where D^r is exact on Jacobi-(2,2)
//! coefficients), refined by golden-section search over the regularization
//! parameter; for p != 2 the best candidate is polished by normalized
//! subgradient descent with seeded restarts. Every candidate is scored in the
//! true (p, alpha) objective, so the result is always a certified upper bound
//! attained by a concrete polynomial.

use std::sync::Arc;

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiBasis, JacobiSeries};
use crate::numerics::funcrep::FuncRep;
use crate::numerics::quadrature::{gauss_rule, QuadKind};
use crate::numerics::space::{PExp, Regime, WeightedSpace};

/// Result of a K-functional minimization.
#[derive(Debug, Clone)]
pub struct KFunctionalResult {
    pub value: f64,
    pub minimizer: FuncRep,
    pub search_degree: usize,
    /// (||f-g|| term, delta^{2r} ||D^r g|| term); value is their sum.
    pub split: (f64, f64),
}

#[derive(Debug, Clone)]
pub struct KFunctionalConfig {
    /// Norm discretization: quadrature order (finite p) or grid size (p=inf).
    pub resolution: usize,
    /// Points on the log-spaced regularization path.
    pub mu_points: usize,
    /// Golden-section refinements over log mu.
    pub golden_iters: usize,
    /// Subgradient polish (p != 2): restarts and iterations per restart.
    pub polish_restarts: usize,
    pub polish_iters: usize,
    pub seed: u64,
}

impl Default for KFunctionalConfig {
    fn default() -> Self {
        KFunctionalConfig {
            resolution: 256,
            mu_points: 41,
            golden_iters: 40,
            polish_restarts: 10,
            polish_iters: 200,
            seed: 20240101,
        }
    }
}

struct Discretization {
    /// Node-major basis values T[i][n] = R_n^{(2,2)}(x_i).
    table: Vec<Vec<f64>>,
    /// f at the nodes.
    fvals: Vec<f64>,
    /// Quadrature weights (finite p, absorbing the norm weight) — empty for p=inf.
    qweights: Vec<f64>,
    /// Pointwise weights (1-x^2)^alpha for the sup norm — empty for finite p.
    supweights: Vec<f64>,
    p: PExp,
}

impl Discretization {
    fn build(f: &FuncRep, space: &WeightedSpace, degree: usize, resolution: usize) -> Result<Self> {
        let (nodes, qweights, supweights) = match space.p {
            PExp::Finite(p) => {
                let pa = p * space.alpha;
                let rule = gauss_rule(QuadKind::GaussJacobi { a: pa, b: pa }, resolution)?;
                (rule.nodes, rule.weights, Vec::new())
            }
            PExp::Infinity => {
                let m = resolution;
                let nodes: Vec<f64> = (0..m)
                    .map(|j| {
                        (std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * m as f64)).cos()
                    })
                    .collect();
                let sw = nodes
                    .iter()
                    .map(|&x| (1.0 - x * x).powf(space.alpha))
                    .collect();
                (nodes, Vec::new(), sw)
            }
        };
        let mut fvals = Vec::with_capacity(nodes.len());
        for &x in &nodes {
            let v = f.eval(x);
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("f at node x={x}")));
            }
            fvals.push(v);
        }
        let table = nodes
            .iter()
            .map(|&x| jacobi::eval_r_all(degree, 2.0, 2.0, x))
            .collect();
        Ok(Discretization {
            table,
            fvals,
            qweights,
            supweights,
            p: space.p,
        })
    }

    /// ||f - g_c||_{p,alpha} in the discretization.
    fn residual_norm(&self, c: &[f64]) -> f64 {
        self.norm_of(|i| {
            let gi: f64 = c.iter().zip(&self.table[i]).map(|(&cn, &tn)| cn * tn).sum();
            self.fvals[i] - gi
        })
    }

    /// ||sum_n c_n lambda_n^r R_n||_{p,alpha} in the discretization.
    fn weighted_poly_norm(&self, c: &[f64]) -> f64 {
        self.norm_of(|i| {
            c.iter()
                .zip(&self.table[i])
                .map(|(&cn, &tn)| cn * tn)
                .sum()
        })
    }

    fn norm_of(&self, value_at: impl Fn(usize) -> f64) -> f64 {
        match self.p {
            PExp::Finite(p) => {
                let mut acc = 0.0;
                for (i, &w) in self.qweights.iter().enumerate() {
                    acc += w * value_at(i).abs().powf(p);
                }
                acc.powf(1.0 / p)
            }
            PExp::Infinity => {
                let mut best = 0.0_f64;
                for (i, &w) in self.supweights.iter().enumerate() {
                    best = best.max(w * value_at(i).abs());
                }
                best
            }
        }
    }
}

/// Minimize ||f-g|| + delta^{2r} ||D^r g|| over polynomials g of degree
/// <= search_degree in the given space.
pub fn k_functional(
    f: &FuncRep,
    r: usize,
    delta: f64,
    space: &WeightedSpace,
    search_degree: usize,
    cfg: &KFunctionalConfig,
) -> Result<KFunctionalResult> {
    space.validate(Regime::DirectInverse)?;
    if r == 0 {
        return Err(Error::InvalidArgument("K-functional needs r >= 1".into()));
    }
    if search_degree < 4 {
        return Err(Error::InvalidArgument("search_degree must be >= 4".into()));
    }
    if !(0.0..std::f64::consts::PI).contains(&delta) {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in [0, pi), got {delta}"
        )));
    }
    let d = search_degree;
    let scale = delta.powi(2 * r as i32);
    let lambda_r: Vec<f64> = (0..=d)
        .map(|n| jacobi::eigenvalue(n, 2.0, 2.0).powi(r as i32))
        .collect();

    let disc = Discretization::build(f, space, d, cfg.resolution)?;

    // Objective in the true (p, alpha) discretization.
    let objective = |c: &[f64]| -> (f64, f64, f64) {
        let term1 = disc.residual_norm(c);
        let dc: Vec<f64> = c.iter().zip(&lambda_r).map(|(&cn, &ln)| cn * ln).collect();
        let term2 = scale * disc.weighted_poly_norm(&dc);
        (term1 + term2, term1, term2)
    };

    // Tikhonov path generator: normal equations for the quadrature-
    // discretized L2 objective with the matching weight exponent 2*alpha.
    let q = 2.0 * space.alpha;
    let gen_rule = gauss_rule(QuadKind::GaussJacobi { a: q, b: q }, cfg.resolution.max(64))?;
    let n_dim = d + 1;
    let mut gmat = DMatrix::<f64>::zeros(n_dim, n_dim);
    let mut beta = DVector::<f64>::zeros(n_dim);
    for (&x, &w) in gen_rule.nodes.iter().zip(&gen_rule.weights) {
        let row = jacobi::eval_r_all(d, 2.0, 2.0, x);
        let fx = f.eval(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite(format!("f at node x={x}")));
        }
        for i in 0..n_dim {
            beta[i] += w * fx * row[i];
            for j in 0..=i {
                gmat[(i, j)] += w * row[i] * row[j];
            }
        }
    }
    for i in 0..n_dim {
        for j in (i + 1)..n_dim {
            gmat[(i, j)] = gmat[(j, i)];
        }
    }

    let solve_at = |mu: f64| -> Option<Vec<f64>> {
        let mut m = gmat.clone();
        for i in 0..n_dim {
            for j in 0..n_dim {
                m[(i, j)] += mu * lambda_r[i] * gmat[(i, j)] * lambda_r[j];
            }
        }
        Cholesky::new(m).map(|ch| ch.solve(&beta).iter().copied().collect())
    };

    let mut best: Option<(f64, f64, f64, Vec<f64>)> = None;
    let consider = |c: &[f64], best: &mut Option<(f64, f64, f64, Vec<f64>)>| {
        let (v, t1, t2) = objective(c);
        if v.is_finite() && best.as_ref().map_or(true, |b| v < b.0) {
            *best = Some((v, t1, t2, c.to_vec()));
        }
    };

    // g = 0 and, when available, g = f itself.
    consider(&vec![0.0; n_dim], &mut best);
    if let FuncRep::Jacobi(s) = f {
        if (s.nu - 2.0).abs() < 1e-14 && (s.mu - 2.0).abs() < 1e-14 && s.degree() <= d {
            let mut c = s.coeffs.clone();
            c.resize(n_dim, 0.0);
            consider(&c, &mut best);
        }
    }

    // Log-spaced path with truncation ladders.
    let mut mu_best = 1e-12_f64;
    for k in 0..cfg.mu_points {
        let mu = 10f64.powf(-12.0 + 24.0 * k as f64 / (cfg.mu_points - 1) as f64);
        if let Some(c) = solve_at(mu) {
            let before = best.as_ref().map(|b| b.0);
            consider(&c, &mut best);
            for cut in [2.max(d / 4), d / 2, 3 * d / 4] {
                if cut < d {
                    let mut ct = c.clone();
                    for v in ct.iter_mut().skip(cut + 1) {
                        *v = 0.0;
                    }
                    consider(&ct, &mut best);
                }
            }
            if best.as_ref().map(|b| b.0) != before {
                mu_best = mu;
            }
        }
    }

    // Golden-section over log10(mu) around the best path point.
    let phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (mu_best.log10() - 1.2, mu_best.log10() + 1.2);
    let eval_mu = |lg: f64, best: &mut Option<(f64, f64, f64, Vec<f64>)>| -> f64 {
        match solve_at(10f64.powf(lg)) {
            Some(c) => {
                let (v, ..) = objective(&c);
                consider(&c, best);
                v
            }
            None => f64::INFINITY,
        }
    };
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = eval_mu(x1, &mut best);
    let mut f2 = eval_mu(x2, &mut best);
    for _ in 0..cfg.golden_iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = eval_mu(x1, &mut best);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = eval_mu(x2, &mut best);
        }
    }

    // Subgradient polish for p != 2 (the path is exact for the p=2 objective).
    let needs_polish = !matches!(space.p, PExp::Finite(p) if (p - 2.0).abs() < 1e-14);
    if needs_polish {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let start = best.as_ref().map(|b| b.3.clone()).unwrap_or(vec![0.0; n_dim]);
        let base_scale: f64 = start.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-3);
        for restart in 0..cfg.polish_restarts {
            let mut c: Vec<f64> = if restart == 0 {
                start.clone()
            } else {
                start
                    .iter()
                    .map(|&v| v + 0.05 * base_scale * (rng.gen::<f64>() - 0.5))
                    .collect()
            };
            for iter in 0..cfg.polish_iters {
                let g = subgradient(&disc, &c, &lambda_r, scale);
                let gnorm: f64 = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                if gnorm < 1e-14 {
                    break;
                }
                let eta = 0.05 * base_scale / ((1.0 + iter as f64).sqrt() * gnorm);
                for (ck, gk) in c.iter_mut().zip(&g) {
                    *ck -= eta * gk;
                }
                consider(&c, &mut best);
            }
        }
    }

    let (value, t1, t2, cbest) =
        best.ok_or_else(|| Error::SolverFailure("K-functional search produced no candidate".into()))?;
    let basis = Arc::new(JacobiBasis::new(2.0, 2.0, d)?);
    let minimizer = FuncRep::Jacobi(JacobiSeries::with_basis(basis, cbest));
    Ok(KFunctionalResult {
        value,
        minimizer,
        search_degree: d,
        split: (t1, t2),
    })
}

fn subgradient(disc: &Discretization, c: &[f64], lambda_r: &[f64], scale: f64) -> Vec<f64> {
    let n_dim = c.len();
    let mut grad = vec![0.0; n_dim];
    let dc: Vec<f64> = c.iter().zip(lambda_r).map(|(&cn, &ln)| cn * ln).collect();
    match disc.p {
        PExp::Finite(p) => {
            // d/dc of (sum w |f - Tc|^p)^{1/p} and of scale * (sum w |T dc|^p)^{1/p}.
            let mut racc = 0.0;
            let mut sacc = 0.0;
            let mut rs = Vec::with_capacity(disc.qweights.len());
            let mut ss = Vec::with_capacity(disc.qweights.len());
            for (i, &w) in disc.qweights.iter().enumerate() {
                let gi: f64 = c.iter().zip(&disc.table[i]).map(|(&a, &t)| a * t).sum();
                let ri = disc.fvals[i] - gi;
                let si: f64 = dc.iter().zip(&disc.table[i]).map(|(&a, &t)| a * t).sum();
                racc += w * ri.abs().powf(p);
                sacc += w * si.abs().powf(p);
                rs.push(ri);
                ss.push(si);
            }
            let n1 = racc.powf(1.0 / p).max(1e-300);
            let n2 = sacc.powf(1.0 / p).max(1e-300);
            for (i, &w) in disc.qweights.iter().enumerate() {
                let r_fac = w * rs[i].abs().powf(p - 1.0) * rs[i].signum() * n1.powf(1.0 - p);
                let s_fac = w * ss[i].abs().powf(p - 1.0) * ss[i].signum() * n2.powf(1.0 - p);
                for (j, g) in grad.iter_mut().enumerate() {
                    *g += -r_fac * disc.table[i][j] + scale * s_fac * disc.table[i][j] * lambda_r[j];
                }
            }
        }
        PExp::Infinity => {
            let mut imax_r = 0;
            let mut vmax_r = -1.0;
            let mut imax_s = 0;
            let mut vmax_s = -1.0;
            let mut r_at = vec![0.0; disc.supweights.len()];
            let mut s_at = vec![0.0; disc.supweights.len()];
            for (i, &w) in disc.supweights.iter().enumerate() {
                let gi: f64 = c.iter().zip(&disc.table[i]).map(|(&a, &t)| a * t).sum();
                let ri = disc.fvals[i] - gi;
                let si: f64 = dc.iter().zip(&disc.table[i]).map(|(&a, &t)| a * t).sum();
                if w * ri.abs() > vmax_r {
                    vmax_r = w * ri.abs();
                    imax_r = i;
                }
                if w * si.abs() > vmax_s {
                    vmax_s = w * si.abs();
                    imax_s = i;
                }
                r_at[i] = ri;
                s_at[i] = si;
            }
            let wr = disc.supweights[imax_r] * r_at[imax_r].signum();
            let ws = disc.supweights[imax_s] * s_at[imax_s].signum();
            for (j, g) in grad.iter_mut().enumerate() {
                *g += -wr * disc.table[imax_r][j]
                    + scale * ws * disc.table[imax_s][j] * lambda_r[j];
            }
        }
    }
    grad
}
