//! Best weighted polynomial approximation E_n(f)_{p,alpha} by algebraic
//! polynomials of degree <= n-1 (the paper's indexing), plus Bernstein–Markov
//! probes.
//!
//! Three solver paths:
//! * p = 2 — orthogonal projection onto the Jacobi-(2a,2a) basis, with E_n
//!   from tail sums of squares (no cancellation for tiny tails);
//! * p = infinity — discrete weighted minimax on a Chebyshev–Lobatto grid by
//!   multi-point exchange, with a de la Vallee-Poussin certificate;
//! * 1 <= p < infinity — iteratively reweighted least squares with an
//!   epsilon-smoothing schedule.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiBasis, JacobiSeries};
use crate::numerics::cheb;
use crate::numerics::funcrep::{ChebSeries, FuncRep};
use crate::numerics::quadrature::{gauss_rule, QuadKind};
use crate::numerics::space::{weighted_norm, PExp, Regime, WeightedSpace};

/// Solver configuration for [`best_approx`].
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Quadrature order for the p < infinity discretizations.
    pub resolution: usize,
    /// Grid parameter G for the minimax path: the grid is the G+1 Chebyshev
    /// extrema cos(pi j / G).
    pub grid_size: usize,
    pub max_exchange_iters: usize,
    /// Equioscillation tolerance: stop when max|e| - |h| <= tol * max|e|.
    pub exchange_tol: f64,
    /// IRLS smoothing schedule runs eps from `irls_eps_start` down to
    /// `irls_eps_end` by factors of 10.
    pub irls_eps_start: f64,
    pub irls_eps_end: f64,
    /// Interior breakpoints where f has kinks; quadrature is split there.
    pub splits: Vec<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            resolution: 256,
            grid_size: 2048,
            max_exchange_iters: 100,
            exchange_tol: 1e-8,
            irls_eps_start: 1e-2,
            irls_eps_end: 1e-10,
            splits: Vec::new(),
        }
    }
}

/// Result of a best-approximation solve.
#[derive(Debug, Clone)]
pub struct ApproxResult {
    /// E_n convention: the approximant has degree <= n-1.
    pub n: usize,
    pub value: f64,
    pub poly: FuncRep,
    pub iterations: usize,
    /// Upper minus lower bound (minimax path only).
    pub certified_gap: Option<f64>,
    /// Reference points carrying the equioscillation certificate
    /// (minimax path only).
    pub alternation: Option<Vec<f64>>,
}

/// Best approximation E_n(f)_{p,alpha} over polynomials of degree <= n-1.
pub fn best_approx(
    f: &FuncRep,
    n: usize,
    space: &WeightedSpace,
    cfg: &SolverConfig,
) -> Result<ApproxResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("E_n needs n >= 1".into()));
    }
    space.validate_norm()?;
    match space.p {
        PExp::Finite(p) if (p - 2.0).abs() < 1e-14 => best_approx_l2(f, n, space, cfg),
        PExp::Finite(_) => best_approx_irls(f, n, space, cfg),
        PExp::Infinity => best_approx_minimax(f, n, space, cfg),
    }
}

/// All of E_1, ..., E_nmax in L_{2,alpha} from one projection
/// (tail sums of squares).
pub fn l2_profile(
    f: &FuncRep,
    n_max: usize,
    space: &WeightedSpace,
    cfg: &SolverConfig,
) -> Result<Vec<f64>> {
    let (tail, _, _) = l2_projection(f, n_max, space, cfg)?;
    Ok((1..=n_max).map(|n| tail[n].sqrt()).collect())
}

/// Shared projection machinery: returns (tail sums tail[k] = sum_{j>=k} of
/// squared contributions including the beyond-basis residual, coefficients
/// b_k, basis).
fn l2_projection(
    f: &FuncRep,
    n_max: usize,
    space: &WeightedSpace,
    cfg: &SolverConfig,
) -> Result<(Vec<f64>, Vec<f64>, Arc<JacobiBasis>)> {
    let q = 2.0 * space.alpha;
    if q <= -1.0 {
        return Err(Error::InvalidArgument(format!(
            "p=2 projection needs 2*alpha > -1, got {q}"
        )));
    }
    if q < 0.0 {
        // Negative exponents keep the weight integrable but the basis
        // constructor requires nu, mu >= 0; the regimes used by the
        // experiments all have alpha >= 1/2.
        return Err(Error::InvalidArgument(
            "p=2 projection implemented for alpha >= 0 only".into(),
        ));
    }
    let big = n_max + 32;
    let basis = Arc::new(JacobiBasis::new(q, q, big)?);
    let order = (2 * big + 8).max(cfg.resolution);

    // One shared discretization: either Gauss-Jacobi absorbing the weight
    // or piecewise Gauss-Legendre with the weight explicit (kinked f).
    let (nodes, weights): (Vec<f64>, Vec<f64>) = if cfg.splits.is_empty() {
        let rule = gauss_rule(QuadKind::GaussJacobi { a: q, b: q }, order)?;
        (rule.nodes, rule.weights)
    } else {
        let base = gauss_rule(QuadKind::GaussLegendre, order)?;
        let mut edges = vec![-1.0];
        edges.extend_from_slice(&cfg.splits);
        edges.push(1.0);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for w in edges.windows(2) {
            let half = 0.5 * (w[1] - w[0]);
            let mid = 0.5 * (w[1] + w[0]);
            for (&u, &wu) in base.nodes.iter().zip(&base.weights) {
                let x = mid + half * u;
                nodes.push(x);
                weights.push(half * wu * (1.0 - x * x).powf(q));
            }
        }
        (nodes, weights)
    };
    let fvals: Vec<f64> = nodes.iter().map(|&x| f.eval(x)).collect();
    if fvals.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("f on the projection nodes".into()));
    }
    let rows: Vec<Vec<f64>> = nodes
        .iter()
        .map(|&x| jacobi::eval_r_all(big, q, q, x))
        .collect();
    let mut a = vec![0.0; big + 1];
    for ((&w, &fx), row) in weights.iter().zip(&fvals).zip(&rows) {
        for (ak, &rk) in a.iter_mut().zip(row) {
            *ak += w * fx * rk;
        }
    }
    let coeffs: Vec<f64> = (0..=big).map(|k| a[k] / basis.norm_sq(k)).collect();
    // Beyond-basis residual as a quadrature of the squared pointwise
    // residual: nonnegative integrand, so no cancellation floor.
    let mut beyond = 0.0;
    for ((&w, &fx), row) in weights.iter().zip(&fvals).zip(&rows) {
        let synth: f64 = coeffs.iter().zip(row).map(|(&b, &rk)| b * rk).sum();
        beyond += w * (fx - synth) * (fx - synth);
    }
    let contributions: Vec<f64> = (0..=big)
        .map(|k| a[k] * a[k] / basis.norm_sq(k))
        .collect();
    let mut tail = vec![0.0; big + 2];
    tail[big + 1] = beyond;
    for k in (0..=big).rev() {
        tail[k] = tail[k + 1] + contributions[k];
    }
    Ok((tail, coeffs, basis))
}

fn best_approx_l2(
    f: &FuncRep,
    n: usize,
    space: &WeightedSpace,
    cfg: &SolverConfig,
) -> Result<ApproxResult> {
    let (tail, coeffs, basis) = l2_projection(f, n, space, cfg)?;
    let value = tail[n].sqrt();
    let mut c = coeffs;
    c.truncate(n);
    let poly = FuncRep::Jacobi(JacobiSeries::with_basis(basis, c));
    Ok(ApproxResult {
        n,
        value,
        poly,
        iterations: 1,
        certified_gap: None,
        alternation: None,
    })
}

fn best_approx_minimax(
    f: &FuncRep,
    n: usize,
    space: &WeightedSpace,
    cfg: &SolverConfig,
) -> Result<ApproxResult> {
    let alpha = space.alpha;
    let g = cfg.grid_size;
    if g < 8 * n {
        return Err(Error::InvalidArgument(format!(
            "minimax grid {g} too coarse for n={n}"
        )));
    }
    // Chebyshev–Lobatto grid, ascending. Endpoints carry zero weight when
    // alpha > 0 and are excluded from references in that case.
    let grid: Vec<f64> = (0..=g)
        .map(|j| -(std::f64::consts::PI * j as f64 / g as f64).cos())
        .collect();
    let wvals: Vec<f64> = grid.iter().map(|&x| (1.0 - x * x).powf(alpha)).collect();
    let fvals: Vec<f64> = grid.iter().map(|&x| f.eval(x)).collect();
    if fvals.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("f on the minimax grid".into()));
    }
    let f_scale = fvals
        .iter()
        .zip(&wvals)
        .map(|(&fv, &w)| (fv * w).abs())
        .fold(0.0_f64, f64::max)
        .max(1.0);

    let interior_only = alpha > 0.0;
    let (lo, hi) = if interior_only { (1, g - 1) } else { (0, g) };
    // Initial reference: n+1 Chebyshev-spread points inside [lo, hi].
    let mut reference: Vec<usize> = (0..=n)
        .map(|i| {
            let theta = std::f64::consts::PI * i as f64 / n as f64;
            let frac = 0.5 * (1.0 - theta.cos());
            lo + ((hi - lo) as f64 * frac).round() as usize
        })
        .collect();
    reference.dedup();
    if reference.len() < n + 1 {
        return Err(Error::SolverFailure("minimax reference collapsed".into()));
    }

    let mut coeffs = vec![0.0; n];
    let mut h = 0.0_f64;
    let mut iterations = 0;
    let mut errvals = vec![0.0; grid.len()];
    loop {
        iterations += 1;
        if iterations > cfg.max_exchange_iters {
            return Err(Error::SolverFailure(format!(
                "exchange did not settle after {} iterations; last level |h| = {:.6e}",
                cfg.max_exchange_iters,
                h.abs()
            )));
        }
        // Solve P(x_i) + sigma_i h / w(x_i) = f(x_i) for (c, h).
        let m = n + 1;
        let mut a = DMatrix::<f64>::zeros(m, m);
        let mut rhs = DVector::<f64>::zeros(m);
        for (i, &gi) in reference.iter().enumerate() {
            let x = grid[gi];
            let mut t0 = 1.0;
            let mut t1 = x;
            for k in 0..n {
                a[(i, k)] = if k == 0 {
                    1.0
                } else if k == 1 {
                    x
                } else {
                    let t2 = 2.0 * x * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                    t2
                };
            }
            let sigma = if i % 2 == 0 { 1.0 } else { -1.0 };
            a[(i, n)] = sigma / wvals[gi];
            rhs[i] = fvals[gi];
        }
        let sol = a
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::SolverFailure("singular exchange system".into()))?;
        coeffs = sol.as_slice()[..n].to_vec();
        h = sol[n];

        for (i, &x) in grid.iter().enumerate() {
            errvals[i] = wvals[i] * (fvals[i] - cheb::clenshaw(&coeffs, x));
        }
        let emax = errvals.iter().fold(0.0_f64, |acc, &v| acc.max(v.abs()));
        if emax <= 1e-13 * f_scale {
            // Degenerate: f is (numerically) a polynomial of degree < n.
            return Ok(ApproxResult {
                n,
                value: emax,
                poly: FuncRep::Cheb(ChebSeries::new(coeffs)),
                iterations,
                certified_gap: Some(emax),
                alternation: None,
            });
        }
        if emax - h.abs() <= cfg.exchange_tol * emax {
            let alternation = reference.iter().map(|&i| grid[i]).collect();
            return Ok(ApproxResult {
                n,
                value: emax,
                poly: FuncRep::Cheb(ChebSeries::new(coeffs)),
                iterations,
                certified_gap: Some(emax - h.abs()),
                alternation: Some(alternation),
            });
        }

        // Multi-point exchange: local extrema of the sign segments of e.
        let mut candidates: Vec<usize> = Vec::new();
        let mut seg_best = lo;
        let mut seg_sign = errvals[lo] >= 0.0;
        for i in lo..=hi {
            let sign = errvals[i] >= 0.0;
            if sign != seg_sign {
                candidates.push(seg_best);
                seg_best = i;
                seg_sign = sign;
            } else if errvals[i].abs() > errvals[seg_best].abs() {
                seg_best = i;
            }
        }
        candidates.push(seg_best);
        if candidates.len() < n + 1 {
            // Not enough alternations yet: fall back to merging with the old
            // reference to keep the system well-posed.
            let mut merged = reference.clone();
            merged.extend_from_slice(&candidates);
            merged.sort_unstable();
            merged.dedup();
            // Keep the n+1 with the largest |e| but preserve order.
            let mut scored: Vec<usize> = merged.clone();
            scored.sort_by(|&i, &j| {
                errvals[j]
                    .abs()
                    .partial_cmp(&errvals[i].abs())
                    .unwrap()
            });
            let keep: std::collections::BTreeSet<usize> =
                scored.into_iter().take(n + 1).collect();
            reference = keep.into_iter().collect();
            if reference.len() < n + 1 {
                return Err(Error::SolverFailure(
                    "exchange could not assemble a reference".into(),
                ));
            }
            continue;
        }
        // Trim to n+1 consecutive candidates containing the global max.
        let gmax = (lo..=hi)
            .max_by(|&i, &j| errvals[i].abs().partial_cmp(&errvals[j].abs()).unwrap())
            .unwrap();
        let pos = candidates
            .iter()
            .position(|&i| i == gmax)
            .unwrap_or_else(|| {
                candidates
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &i)| i.abs_diff(gmax))
                    .map(|(k, _)| k)
                    .unwrap()
            });
        let mut first = 0;
        let mut last = candidates.len() - 1;
        while last - first > n {
            if first == pos {
                last -= 1;
            } else if last == pos {
                first += 1;
            } else if errvals[candidates[first]].abs() <= errvals[candidates[last]].abs() {
                first += 1;
            } else {
                last -= 1;
            }
        }
        reference = candidates[first..=last].to_vec();
    }
}

fn best_approx_irls(
    f: &FuncRep,
    n: usize,
    space: &WeightedSpace,
    cfg: &SolverConfig,
) -> Result<ApproxResult> {
    let p = match space.p {
        PExp::Finite(p) => p,
        PExp::Infinity => unreachable!(),
    };
    let pa = p * space.alpha;
    // Discretize the norm: Gauss-Jacobi absorbing the weight, or piecewise
    // Gauss-Legendre with the weight explicit when splits are requested.
    let (nodes, weights): (Vec<f64>, Vec<f64>) = if cfg.splits.is_empty() {
        let rule = gauss_rule(QuadKind::GaussJacobi { a: pa, b: pa }, cfg.resolution)?;
        (rule.nodes, rule.weights)
    } else {
        if pa < 0.0 {
            return Err(Error::InvalidArgument(
                "split quadrature needs p*alpha >= 0".into(),
            ));
        }
        let base = gauss_rule(QuadKind::GaussLegendre, cfg.resolution)?;
        let mut edges = vec![-1.0];
        edges.extend_from_slice(&cfg.splits);
        edges.push(1.0);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for w in edges.windows(2) {
            let half = 0.5 * (w[1] - w[0]);
            let mid = 0.5 * (w[1] + w[0]);
            for (&u, &wu) in base.nodes.iter().zip(&base.weights) {
                let x = mid + half * u;
                nodes.push(x);
                weights.push(half * wu * (1.0 - x * x).powf(pa));
            }
        }
        (nodes, weights)
    };
    let fvals: Vec<f64> = nodes.iter().map(|&x| f.eval(x)).collect();
    if fvals.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("f on the IRLS nodes".into()));
    }
    // Chebyshev design matrix.
    let rows = nodes.len();
    let mut design = DMatrix::<f64>::zeros(rows, n);
    for (i, &x) in nodes.iter().enumerate() {
        let mut t0 = 1.0;
        let mut t1 = x;
        for k in 0..n {
            design[(i, k)] = if k == 0 {
                1.0
            } else if k == 1 {
                x
            } else {
                let t2 = 2.0 * x * t1 - t0;
                t0 = t1;
                t1 = t2;
                t2
            };
        }
    }

    let objective = |c: &DVector<f64>| -> f64 {
        let mut acc = 0.0;
        for i in 0..rows {
            let mut gi = 0.0;
            for k in 0..n {
                gi += design[(i, k)] * c[k];
            }
            acc += weights[i] * (fvals[i] - gi).abs().powf(p);
        }
        acc.powf(1.0 / p)
    };

    // Start from the weighted least-squares fit (eps irrelevant at p=2).
    let mut c = solve_weighted_ls(&design, &fvals, &weights)?;
    let mut iterations = 1usize;
    let mut eps = cfg.irls_eps_start;
    let mut best = objective(&c);
    while eps >= cfg.irls_eps_end {
        for _ in 0..24 {
            iterations += 1;
            let mut u = vec![0.0; rows];
            for i in 0..rows {
                let mut gi = 0.0;
                for k in 0..n {
                    gi += design[(i, k)] * c[k];
                }
                let r = fvals[i] - gi;
                u[i] = weights[i] * (r * r + eps * eps).powf(0.5 * p - 1.0);
            }
            let next = solve_weighted_ls(&design, &fvals, &u)?;
            let step: f64 = (&next - &c).norm();
            c = next;
            let now = objective(&c);
            let stalled = (best - now).abs() <= 1e-12 * (1.0 + best);
            best = best.min(now);
            if step < 1e-12 || stalled {
                break;
            }
        }
        eps *= 0.1;
    }
    let value = objective(&c);
    Ok(ApproxResult {
        n,
        value,
        poly: FuncRep::Cheb(ChebSeries::new(c.as_slice().to_vec())),
        iterations,
        certified_gap: None,
        alternation: None,
    })
}

fn solve_weighted_ls(
    design: &DMatrix<f64>,
    fvals: &[f64],
    u: &[f64],
) -> Result<DVector<f64>> {
    let n = design.ncols();
    let rows = design.nrows();
    let mut normal = DMatrix::<f64>::zeros(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    for i in 0..rows {
        for k in 0..n {
            rhs[k] += u[i] * design[(i, k)] * fvals[i];
            for l in 0..=k {
                normal[(k, l)] += u[i] * design[(i, k)] * design[(i, l)];
            }
        }
    }
    for k in 0..n {
        for l in (k + 1)..n {
            normal[(k, l)] = normal[(l, k)];
        }
    }
    let fallback = normal.clone();
    normal
        .cholesky()
        .map(|ch| ch.solve(&rhs))
        .or_else(|| fallback.lu().solve(&rhs))
        .ok_or_else(|| Error::SolverFailure("IRLS normal equations singular".into()))
}

/// Normalized Bernstein–Markov ratios for a polynomial P of degree <= n-1.
#[derive(Debug, Clone, Copy)]
pub struct BernsteinMarkovRatios {
    /// ||P'||_{p,alpha+1/2} / (n ||P||_{p,alpha})
    pub derivative: f64,
    /// ||P||_{p,alpha} / (n^{2 rho} ||P||_{p,alpha+rho})
    pub weight_shift: f64,
    /// ||D_{2,2} P||_{p,alpha} / (n^2 ||P||_{p,alpha})
    pub d_operator: f64,
}

pub fn bernstein_markov_probe(
    poly: &FuncRep,
    space: &WeightedSpace,
    rho: f64,
    resolution: usize,
) -> Result<BernsteinMarkovRatios> {
    space.validate(Regime::BernsteinMarkov)?;
    if rho < 0.0 {
        return Err(Error::InvalidArgument("rho must be >= 0".into()));
    }
    let degree = poly
        .degree()
        .ok_or_else(|| Error::InvalidArgument("probe needs a polynomial".into()))?;
    let n = (degree + 1) as f64;
    let cheb_form = poly.to_cheb(degree)?;
    let deriv = FuncRep::Cheb(ChebSeries::new(cheb::derivative(&cheb_form.coeffs)));
    let dpoly = jacobi::apply_d(&FuncRep::Cheb(cheb_form.clone()), 2.0, 2.0, 1)?;

    let base = weighted_norm(poly, space, resolution)?;
    if base == 0.0 {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let half_up = WeightedSpace {
        p: space.p,
        alpha: space.alpha + 0.5,
    };
    let rho_up = WeightedSpace {
        p: space.p,
        alpha: space.alpha + rho,
    };
    let derivative = weighted_norm(&deriv, &half_up, resolution)? / (n * base);
    let weight_shift = base
        / (n.powf(2.0 * rho) * weighted_norm(poly, &rho_up, resolution)?);
    let d_operator = weighted_norm(&dpoly, space, resolution)? / (n * n * base);
    Ok(BernsteinMarkovRatios {
        derivative,
        weight_shift,
        d_operator,
    })
}

/// Pair (E_n(f), n^{-2r} ||D^r f||) from the E-versus-D inequality.
pub fn en_from_d_bound(
    f: &FuncRep,
    r: usize,
    n: usize,
    space: &WeightedSpace,
    cfg: &SolverConfig,
) -> Result<(f64, f64)> {
    space.validate(Regime::ED)?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    if !f.is_series() {
        return Err(Error::InvalidArgument(
            "en_from_d_bound needs a polynomial f".into(),
        ));
    }
    let e_n = best_approx(f, n, space, cfg)?.value;
    let df = jacobi::apply_d(f, 2.0, 2.0, r)?;
    let bound = (n as f64).powi(-2 * r as i32) * weighted_norm(&df, space, cfg.resolution)?;
    Ok((e_n, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn e1_of_x_squared_in_l2() {
        // One-dimensional least squares by hand: best constant is 1/3 and
        // the error is sqrt(8/45).
        let f = FuncRep::from_monomials(&[0.0, 0.0, 1.0]);
        let space = WeightedSpace::finite(2.0, 0.0);
        let res = best_approx(&f, 1, &space, &SolverConfig::default()).unwrap();
        assert_abs_diff_eq!(res.value, (8.0_f64 / 45.0).sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(res.poly.eval(0.5), 1.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn e2_of_x_squared_minimax() {
        // Classical equioscillation: best linear fit of x^2 is 1/2, error 1/2.
        let f = FuncRep::from_monomials(&[0.0, 0.0, 1.0]);
        let space = WeightedSpace::sup(0.0);
        let res = best_approx(&f, 2, &space, &SolverConfig::default()).unwrap();
        assert_abs_diff_eq!(res.value, 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(res.poly.eval(0.3), 0.5, epsilon = 1e-6);
        let alt = res.alternation.unwrap();
        assert_eq!(alt.len(), 3);
        for &x in &alt {
            let e = (f.eval(x) - res.poly.eval(x)).abs();
            assert!((e - res.value).abs() <= 1e-6);
        }
    }

    #[test]
    fn polynomial_below_degree_gives_zero() {
        let f = FuncRep::from_monomials(&[1.0, -2.0, 0.5]);
        for space in [WeightedSpace::finite(2.0, 1.0), WeightedSpace::sup(1.0)] {
            let res = best_approx(&f, 4, &space, &SolverConfig::default()).unwrap();
            assert!(res.value < 1e-10, "{space:?}: {}", res.value);
            for x in [-0.7, 0.1, 0.8] {
                assert_abs_diff_eq!(res.poly.eval(x), f.eval(x), epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn irls_p1_best_constant_for_x_squared() {
        // Median-type fit: c = 1/4, objective int |x^2 - 1/4| dx = 1/2.
        // The integrand kink needs a fine discretization for 1e-6 accuracy.
        let f = FuncRep::from_monomials(&[0.0, 0.0, 1.0]);
        let space = WeightedSpace::finite(1.0, 0.0);
        let cfg = SolverConfig {
            resolution: 2048,
            ..Default::default()
        };
        let res = best_approx(&f, 1, &space, &cfg).unwrap();
        assert_abs_diff_eq!(res.value, 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(res.poly.eval(0.0), 0.25, epsilon = 1e-3);
    }

    #[test]
    fn e_n_nonincreasing_and_shift_invariant() {
        let f = FuncRep::from_fn(|x: f64| x.exp());
        let space = WeightedSpace::finite(2.0, 1.0);
        let cfg = SolverConfig::default();
        let profile = l2_profile(&f, 8, &space, &cfg).unwrap();
        for w in profile.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        // E_n(f + P) = E_n(f) for polynomials P of degree < n.
        let shifted = f.add(&FuncRep::from_monomials(&[0.7, -2.0]));
        let e2 = best_approx(&f, 2, &space, &cfg).unwrap().value;
        let e2s = best_approx(&shifted, 2, &space, &cfg).unwrap().value;
        assert_abs_diff_eq!(e2, e2s, epsilon = 1e-9);
    }

    #[test]
    fn parseval_consistency_on_series_input() {
        // E_n^2 = sum_{k>=n} of squared orthonormal coefficients for a
        // finite series input.
        let basis = Arc::new(JacobiBasis::new(2.0, 2.0, 10).unwrap());
        let coeffs: Vec<f64> = (0..=10).map(|k| 0.8_f64.powi(k) * 0.3).collect();
        let sq: Vec<f64> = coeffs
            .iter()
            .enumerate()
            .map(|(k, &b)| b * b * basis.norm_sq(k))
            .collect();
        let f = FuncRep::Jacobi(JacobiSeries::with_basis(basis, coeffs));
        let space = WeightedSpace::finite(2.0, 1.0);
        let cfg = SolverConfig::default();
        for n in [1usize, 3, 7, 10] {
            let e = best_approx(&f, n, &space, &cfg).unwrap().value;
            let parseval: f64 = sq[n..].iter().sum::<f64>().sqrt();
            assert_abs_diff_eq!(e, parseval, epsilon = 1e-9);
        }
    }

    #[test]
    fn weighted_minimax_with_vanishing_weight() {
        // alpha > 0: the weighted error of the best fit still equioscillates
        // on the interior.
        let f = FuncRep::from_fn(|x: f64| (3.0 * x).sin());
        let space = WeightedSpace::sup(1.0);
        let res = best_approx(&f, 4, &space, &SolverConfig::default()).unwrap();
        let alt = res.alternation.unwrap();
        assert_eq!(alt.len(), 5);
        assert!(alt.iter().all(|&x| x.abs() < 1.0));
        assert!(res.certified_gap.unwrap() <= 1e-8 * res.value.max(1e-300));
        // Value agrees with an independent weighted-norm evaluation.
        let err = f.sub(&res.poly);
        let norm = weighted_norm(&err, &space, 4096).unwrap();
        assert_abs_diff_eq!(res.value, norm, epsilon = 1e-6 * (1.0 + norm));
    }

    #[test]
    fn bernstein_markov_probe_basics() {
        let space = WeightedSpace::finite(2.0, 1.0);
        // Constant polynomial: derivative ratio 0.
        let one = FuncRep::constant(1.0);
        let r = bernstein_markov_probe(&one, &space, 0.5, 128).unwrap();
        assert_abs_diff_eq!(r.derivative, 0.0, epsilon = 1e-14);
        assert!(r.weight_shift.is_finite() && r.weight_shift > 0.0);
        // Ratios stay positive and finite on a basis slice.
        for n in [1usize, 4, 9] {
            let p = FuncRep::from_fn(move |x| jacobi::eval_r(n, 2.0, 2.0, x))
                .to_cheb(n)
                .map(FuncRep::Cheb)
                .unwrap();
            let r = bernstein_markov_probe(&p, &space, 0.5, 128).unwrap();
            assert!(r.derivative > 0.0 && r.derivative.is_finite());
            assert!(r.weight_shift > 0.0 && r.weight_shift.is_finite());
            assert!(r.d_operator > 0.0 && r.d_operator.is_finite());
        }
    }

    #[test]
    fn en_from_d_bound_on_basis_polynomials() {
        let space = WeightedSpace::finite(2.0, 1.0);
        let cfg = SolverConfig::default();
        // E_n = 0 when n exceeds the degree.
        let r3 = FuncRep::from_fn(|x| jacobi::eval_r(3, 2.0, 2.0, x))
            .to_cheb(3)
            .map(FuncRep::Cheb)
            .unwrap();
        let (e, bound) = en_from_d_bound(&r3, 1, 5, &space, &cfg).unwrap();
        assert!(e < 1e-10);
        assert!(bound > 0.0);
        // The inequality direction E_n <= C bound with a modest C.
        let r8 = FuncRep::from_fn(|x| jacobi::eval_r(8, 2.0, 2.0, x))
            .to_cheb(8)
            .map(FuncRep::Cheb)
            .unwrap();
        for n in [2usize, 4, 8] {
            let (e, bound) = en_from_d_bound(&r8, 1, n, &space, &cfg).unwrap();
            assert!(e <= 3.0 * bound, "n={n}: E={e} vs bound={bound}");
        }
    }

    #[test]
    fn validation_errors() {
        let f = FuncRep::constant(1.0);
        let cfg = SolverConfig::default();
        assert!(best_approx(&f, 0, &WeightedSpace::finite(2.0, 0.0), &cfg).is_err());
        assert!(en_from_d_bound(
            &FuncRep::from_fn(|x| x),
            1,
            2,
            &WeightedSpace::finite(2.0, 1.0),
            &cfg
        )
        .is_err());
        assert!(
            bernstein_markov_probe(&f, &WeightedSpace::finite(2.0, -0.6), 0.5, 128).is_err()
        );
    }
}
