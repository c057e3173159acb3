//! Generalized moduli of smoothness, the inverse operators H and H_delta,
//! kappa(delta), and the Peetre-type K-functional.

pub mod inverse;
pub mod kfunc;

pub use inverse::{h_apply, h_delta_apply, kappa, kappa_with_order, HMethod};
pub use kfunc::{k_functional, KFunctionalConfig, KFunctionalResult};

use crate::error::{Error, Result};
use crate::jacobi;
use crate::numerics::funcrep::FuncRep;
use crate::numerics::quadrature::{gauss_rule, QuadKind};
use crate::numerics::space::{PExp, Regime, WeightedSpace};
use crate::translation::{difference_integral, DifferenceRequest, TranslationConfig};

/// The Sturm–Liouville weight A(t) = sin(t/2) cos^9(t/2) driving H_delta,
/// kappa, and the integral identity for tau_t - 1.
///
/// This is the weight of the multiplier family R_n^{(0,4)}(cos t) (the image
/// of (1-y)^0 (1+y)^4 dy under y = cos t), which shares the spectrum n(n+5)
/// with D_{x,2,2}. Equivalently A(t) = sin(t) (1+cos t)^4 / 32.
pub fn sl_weight(t: f64) -> f64 {
    let h = 0.5 * t;
    h.sin() * h.cos().powi(9)
}

/// Result of a modulus-of-smoothness search.
#[derive(Debug, Clone)]
pub struct ModulusResult {
    pub value: f64,
    /// The maximizing shift vector (sorted ascending; components in [0, delta]).
    pub argmax_t: Vec<f64>,
    /// Number of grid points per shift axis actually used for `value`.
    pub grid_size: usize,
    pub r: usize,
    pub delta: f64,
}

/// Search configuration for [`modulus`].
#[derive(Debug, Clone)]
pub struct ModulusConfig {
    /// Grid points per shift axis on [0, delta].
    pub t_grid_size: usize,
    /// Norm resolution (quadrature order for finite p, grid size for p=inf).
    pub x_resolution: usize,
    pub translation: TranslationConfig,
    /// Re-run on a doubled grid and fail if the value moves by more than 2%.
    pub refinement_check: bool,
}

impl Default for ModulusConfig {
    fn default() -> Self {
        ModulusConfig {
            t_grid_size: 12,
            x_resolution: 256,
            translation: TranslationConfig::default(),
            refinement_check: true,
        }
    }
}

/// r-th generalized modulus of smoothness
/// omega_r(f, delta) = sup over |t_j| <= delta of ||Delta^r_t f||_{p,alpha}.
///
/// Evenness of the translation in t restricts the sup to t_j >= 0, and
/// symmetry of the iterated difference in the shift vector restricts it to
/// sorted tuples.
pub fn modulus(
    f: &FuncRep,
    r: usize,
    delta: f64,
    space: &WeightedSpace,
    cfg: &ModulusConfig,
) -> Result<ModulusResult> {
    space.validate(Regime::DirectInverse)?;
    if r == 0 || r > cfg.translation.r_max {
        return Err(Error::InvalidArgument(format!(
            "modulus order r={r} must lie in 1..={}",
            cfg.translation.r_max
        )));
    }
    if !(0.0..std::f64::consts::PI).contains(&delta) {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in [0, pi), got {delta}"
        )));
    }
    if cfg.t_grid_size < 2 {
        return Err(Error::InvalidArgument("t_grid_size must be >= 2".into()));
    }
    if delta == 0.0 {
        return Ok(ModulusResult {
            value: 0.0,
            argmax_t: vec![0.0; r],
            grid_size: cfg.t_grid_size,
            r,
            delta,
        });
    }

    let evaluator = DifferenceNorm::new(f, space, cfg)?;
    let coarse = sup_over_grid(&evaluator, r, delta, cfg.t_grid_size)?;
    if !cfg.refinement_check {
        return Ok(ModulusResult {
            value: coarse.0,
            argmax_t: coarse.1,
            grid_size: cfg.t_grid_size,
            r,
            delta,
        });
    }
    let fine_size = 2 * cfg.t_grid_size - 1; // halved spacing, superset of the coarse grid
    let fine = sup_over_grid(&evaluator, r, delta, fine_size)?;
    let scale = fine.0.max(coarse.0);
    if scale > 0.0 && (fine.0 - coarse.0).abs() / scale > 0.02 {
        return Err(Error::SolverFailure(format!(
            "modulus grid refinement moved the value from {} to {} (> 2%): \
             oscillatory f, raise t_grid_size",
            coarse.0, fine.0
        )));
    }
    Ok(ModulusResult {
        value: fine.0,
        argmax_t: fine.1,
        grid_size: fine_size,
        r,
        delta,
    })
}

fn sup_over_grid(
    evaluator: &DifferenceNorm,
    r: usize,
    delta: f64,
    grid: usize,
) -> Result<(f64, Vec<f64>)> {
    let ts: Vec<f64> = (0..grid)
        .map(|i| delta * i as f64 / (grid - 1) as f64)
        .collect();
    let mut best = (0.0_f64, vec![0.0; r]);
    let mut idx = vec![0usize; r];
    loop {
        // Sorted tuples only: idx is non-decreasing.
        let tuple: Vec<f64> = idx.iter().map(|&i| ts[i]).collect();
        let value = evaluator.norm_of_difference(&tuple)?;
        if value > best.0 {
            best = (value, tuple);
        }
        // Advance to the next non-decreasing index tuple.
        let mut k = r;
        loop {
            if k == 0 {
                return Ok(best);
            }
            k -= 1;
            if idx[k] + 1 < grid {
                idx[k] += 1;
                let v = idx[k];
                for j in k + 1..r {
                    idx[j] = v;
                }
                break;
            }
        }
    }
}

/// Norm evaluation of Delta^r_t f for a fixed f, with precomputed basis
/// tables so each shift tuple costs O(degree * nodes).
struct DifferenceNorm {
    space: WeightedSpace,
    resolution: usize,
    translation: TranslationConfig,
    repr: DifferenceRepr,
}

enum DifferenceRepr {
    /// Jacobi-(2,2) coefficients plus R_n values on the norm nodes.
    Series {
        coeffs: Vec<f64>,
        /// node-major: values[node][n]
        table: Vec<Vec<f64>>,
        nodes: Vec<f64>,
        /// quadrature weights for finite p (already including the norm
        /// weight); empty for p = infinity.
        weights: Vec<f64>,
        /// Parseval shortcut: ||R_n||^2 against (1-x^2)^{2 alpha}, when p=2.
        parseval: Option<Vec<f64>>,
    },
    Callable(FuncRep),
}

impl DifferenceNorm {
    fn new(f: &FuncRep, space: &WeightedSpace, cfg: &ModulusConfig) -> Result<Self> {
        space.validate_norm()?;
        if cfg.x_resolution < 32 {
            return Err(Error::InvalidArgument(
                "modulus x_resolution must be >= 32".into(),
            ));
        }
        let series = match f {
            FuncRep::Jacobi(s) if (s.nu - 2.0).abs() < 1e-14 && (s.mu - 2.0).abs() < 1e-14 => {
                Some(s.clone())
            }
            FuncRep::Cheb(s) => Some(jacobi::to_jacobi22(&FuncRep::Cheb(s.clone()), s.degree())?),
            _ => None,
        };
        let repr = match series {
            None => DifferenceRepr::Callable(f.clone()),
            Some(s) => {
                let deg = s.degree();
                let (nodes, weights) = match space.p {
                    PExp::Infinity => {
                        let m = cfg.x_resolution;
                        let nodes = (0..m)
                            .map(|j| {
                                (std::f64::consts::PI * (2.0 * j as f64 + 1.0)
                                    / (2.0 * m as f64))
                                    .cos()
                            })
                            .collect::<Vec<_>>();
                        (nodes, Vec::new())
                    }
                    PExp::Finite(p) => {
                        let pa = p * space.alpha;
                        let rule =
                            gauss_rule(QuadKind::GaussJacobi { a: pa, b: pa }, cfg.x_resolution)?;
                        (rule.nodes, rule.weights)
                    }
                };
                let table: Vec<Vec<f64>> = nodes
                    .iter()
                    .map(|&x| jacobi::eval_r_all(deg, 2.0, 2.0, x))
                    .collect();
                let parseval = match space.p {
                    PExp::Finite(p)
                        if (p - 2.0).abs() < 1e-14 && (space.alpha - 1.0).abs() < 1e-14 =>
                    {
                        s.basis().map(|b| {
                            (0..=deg).map(|n| b.norm_sq(n)).collect::<Vec<f64>>()
                        })
                    }
                    _ => None,
                };
                DifferenceRepr::Series {
                    coeffs: s.coeffs.clone(),
                    table,
                    nodes,
                    weights,
                    parseval,
                }
            }
        };
        Ok(DifferenceNorm {
            space: *space,
            resolution: cfg.x_resolution,
            translation: cfg.translation.clone(),
            repr,
        })
    }

    fn norm_of_difference(&self, t: &[f64]) -> Result<f64> {
        match &self.repr {
            DifferenceRepr::Series {
                coeffs,
                table,
                nodes,
                weights,
                parseval,
            } => {
                let deg = coeffs.len() - 1;
                let mut c = coeffs.clone();
                for &tj in t {
                    let m = crate::translation::shift_multiplier_all(deg, tj.cos());
                    for (ck, &mk) in c.iter_mut().zip(&m) {
                        *ck *= mk - 1.0;
                    }
                }
                if let Some(nsq) = parseval {
                    let sq: f64 = c.iter().zip(nsq).map(|(&ck, &s)| ck * ck * s).sum();
                    return Ok(sq.sqrt());
                }
                match self.space.p {
                    PExp::Infinity => {
                        let mut best = 0.0_f64;
                        for (x, row) in nodes.iter().zip(table) {
                            let v: f64 = c.iter().zip(row).map(|(&ck, &rk)| ck * rk).sum();
                            let w = (1.0 - x * x).powf(self.space.alpha);
                            best = best.max(v.abs() * w);
                        }
                        Ok(best)
                    }
                    PExp::Finite(p) => {
                        let mut acc = 0.0;
                        for (w, row) in weights.iter().zip(table) {
                            let v: f64 = c.iter().zip(row).map(|(&ck, &rk)| ck * rk).sum();
                            acc += w * v.abs().powf(p);
                        }
                        Ok(acc.powf(1.0 / p))
                    }
                }
            }
            DifferenceRepr::Callable(f) => {
                let req = DifferenceRequest::new(t.to_vec())?;
                let g = {
                    let f = f.clone();
                    let cfg = self.translation.clone();
                    FuncRep::from_fn(move |x| {
                        difference_integral(&f, &req, x, &cfg).unwrap_or(f64::NAN)
                    })
                };
                crate::numerics::space::weighted_norm(&g, &self.space, self.resolution)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use crate::numerics::space::weighted_norm;

    #[test]
    fn sl_weight_properties() {
        assert_abs_diff_eq!(sl_weight(0.0), 0.0, epsilon = 1e-15);
        for t in [0.1, 0.5, 1.5, 2.9] {
            assert!(sl_weight(t) > 0.0);
            // Closed form sin(t) (1+cos t)^4 / 32.
            assert_abs_diff_eq!(
                sl_weight(t),
                t.sin() * (1.0 + t.cos()).powi(4) / 32.0,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn modulus_of_constant_is_zero() {
        let space = WeightedSpace::finite(2.0, 1.0);
        let cfg = ModulusConfig::default();
        for r in 1..=2usize {
            for delta in [0.0, 0.4, 1.2] {
                let m = modulus(&FuncRep::constant(5.0), r, delta, &space, &cfg).unwrap();
                assert_abs_diff_eq!(m.value, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn modulus_of_r1_matches_closed_form() {
        // Delta_t R_1 = R_1(x)(3 cos t - 3), so
        // omega_1(R_1, delta) = 3 (1 - cos delta) ||x||.
        let space = WeightedSpace::finite(2.0, 1.0);
        let cfg = ModulusConfig::default();
        let f = FuncRep::from_monomials(&[0.0, 1.0]);
        let norm_x = weighted_norm(&f, &space, 128).unwrap();
        for delta in [0.3, 0.8, 1.4] {
            let m = modulus(&f, 1, delta, &space, &cfg).unwrap();
            assert_abs_diff_eq!(
                m.value,
                3.0 * (1.0 - delta.cos()) * norm_x,
                epsilon = 1e-9
            );
            assert_abs_diff_eq!(m.argmax_t[0], delta, epsilon = 1e-12);
        }
    }

    #[test]
    fn modulus_nondecreasing_in_delta() {
        let space = WeightedSpace::sup(1.0);
        let cfg = ModulusConfig::default();
        let f = FuncRep::from_monomials(&[0.1, 0.3, -1.0, 0.0, 0.5]);
        let mut prev = 0.0;
        for delta in [0.2, 0.5, 0.9, 1.3] {
            let m = modulus(&f, 2, delta, &space, &cfg).unwrap();
            assert!(m.value >= prev - 1e-12);
            prev = m.value;
        }
    }

    #[test]
    fn modulus_validates_inputs() {
        let cfg = ModulusConfig::default();
        let f = FuncRep::constant(1.0);
        // Out-of-regime (p, alpha).
        assert!(modulus(&f, 1, 0.5, &WeightedSpace::finite(2.0, 0.2), &cfg).is_err());
        let space = WeightedSpace::finite(2.0, 1.0);
        // r = 0 and r beyond the guard.
        assert!(modulus(&f, 0, 0.5, &space, &cfg).is_err());
        assert!(modulus(&f, 4, 0.5, &space, &cfg).is_err());
        // delta out of range.
        assert!(modulus(&f, 1, 3.2, &space, &cfg).is_err());
    }

    #[test]
    fn argmax_components_stay_in_range_and_sorted() {
        let space = WeightedSpace::finite(2.0, 1.0);
        let cfg = ModulusConfig::default();
        let f = FuncRep::from_monomials(&[0.0, 0.2, 1.0, -0.4]);
        let m = modulus(&f, 2, 0.9, &space, &cfg).unwrap();
        assert!(m.argmax_t.windows(2).all(|w| w[0] <= w[1]));
        assert!(m.argmax_t.iter().all(|&t| (0.0..=0.9 + 1e-12).contains(&t)));
        assert!(m.value > 0.0);
    }
}
