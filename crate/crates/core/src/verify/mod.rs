//! Experiment drivers: the equivalence and Jackson/converse inequalities as
//! ratio tables, a named trial family, and the lemma-identity suite.

pub mod lemmas;

pub use lemmas::{run_lemma_suite, LemmaCheck, LemmaReport};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::approx::{self, SolverConfig};
use crate::error::{Error, Result};
use crate::jacobi;
use crate::numerics::funcrep::FuncRep;
use crate::numerics::space::{weighted_norm, PExp, Regime, WeightedSpace};
use crate::smoothness::{k_functional, modulus, KFunctionalConfig, ModulusConfig};

/// Default seed for the reproducible trial family and experiments.
pub const DEFAULT_SEED: u64 = 20240101;

/// The named trial functions used by the verification experiments.
pub struct TrialFamily {
    pub members: Vec<(String, FuncRep)>,
}

impl TrialFamily {
    /// R_k for k <= 12, |x|^{3/2}, exp(x), (1-x^2)^{1/4}, and a random
    /// degree-10 polynomial drawn from the seeded generator.
    pub fn standard(seed: u64) -> Self {
        let mut members: Vec<(String, FuncRep)> = Vec::new();
        for k in 0..=12usize {
            members.push((
                format!("r{k}"),
                FuncRep::Cheb(
                    FuncRep::from_fn(move |x| jacobi::eval_r(k, 2.0, 2.0, x))
                        .to_cheb(k)
                        .expect("basis polynomials interpolate exactly"),
                ),
            ));
        }
        members.push(("absx15".into(), FuncRep::from_fn(|x: f64| x.abs().powf(1.5))));
        members.push(("expx".into(), FuncRep::from_fn(f64::exp)));
        members.push((
            "bump14".into(),
            FuncRep::from_fn(|x: f64| (1.0 - x * x).max(0.0).powf(0.25)),
        ));
        members.push(("randpoly".into(), random_poly(seed, 10)));
        TrialFamily { members }
    }

    /// Look up a member by name (default seed for the random member).
    /// Supports `r0`..`r12`, `absx15`, `expx`, `bump14`, `randpoly`.
    pub fn member(name: &str) -> Option<FuncRep> {
        TrialFamily::standard(DEFAULT_SEED)
            .members
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
    }

    pub fn names() -> Vec<String> {
        TrialFamily::standard(DEFAULT_SEED)
            .members
            .into_iter()
            .map(|(n, _)| n)
            .collect()
    }

    /// Interior kinks of a named member (quadrature split points).
    pub fn split_points(name: &str) -> Vec<f64> {
        match name {
            "absx15" => vec![0.0],
            _ => Vec::new(),
        }
    }
}

/// Random polynomial with Chebyshev coefficients uniform in [-1, 1].
pub fn random_poly(seed: u64, degree: usize) -> FuncRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
    FuncRep::Cheb(crate::numerics::funcrep::ChebSeries::new(coeffs))
}

/// One experiment row: sweep parameters, the two compared sides, and their
/// ratio. Degenerate rows (a side at the numerical-noise floor) are printed
/// but excluded from the spread summary.
#[derive(Debug, Clone)]
pub struct RatioRow {
    pub params: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub degenerate: bool,
}

#[derive(Debug, Clone)]
pub struct RatioSummary {
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// max_ratio / min_ratio over non-degenerate rows.
    pub spread: f64,
    pub degenerate_rows: usize,
}

#[derive(Debug, Clone)]
pub struct RatioTable {
    pub label: String,
    pub param_names: Vec<String>,
    pub rows: Vec<RatioRow>,
    pub summary: RatioSummary,
}

impl RatioTable {
    pub fn new(label: impl Into<String>, param_names: Vec<String>, rows: Vec<RatioRow>) -> Self {
        let mut min_ratio = f64::INFINITY;
        let mut max_ratio = f64::NEG_INFINITY;
        let mut degenerate_rows = 0;
        for row in &rows {
            if row.degenerate {
                degenerate_rows += 1;
                continue;
            }
            if row.ratio.is_finite() {
                min_ratio = min_ratio.min(row.ratio);
                max_ratio = max_ratio.max(row.ratio);
            }
        }
        let spread = if min_ratio > 0.0 && max_ratio.is_finite() {
            max_ratio / min_ratio
        } else {
            f64::NAN
        };
        let summary = RatioSummary {
            min_ratio: if min_ratio.is_finite() { min_ratio } else { f64::NAN },
            max_ratio: if max_ratio.is_finite() { max_ratio } else { f64::NAN },
            spread,
            degenerate_rows,
        };
        RatioTable {
            label: label.into(),
            param_names,
            rows,
            summary,
        }
    }

    /// CSV with fixed columns params..., lhs, rhs, ratio; `.` decimal,
    /// `,` delimiter, LF line endings, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for name in &self.param_names {
            out.push_str(name);
            out.push(',');
        }
        out.push_str("lhs,rhs,ratio\n");
        for row in &self.rows {
            for p in &row.params {
                out.push_str(&fmt17(*p));
                out.push(',');
            }
            out.push_str(&fmt17(row.lhs));
            out.push(',');
            out.push_str(&fmt17(row.rhs));
            out.push(',');
            out.push_str(&fmt17(row.ratio));
            out.push('\n');
        }
        out
    }
}

/// 17 significant digits: round-trip-exact doubles.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Shared configuration for the experiment sweeps.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub modulus: ModulusConfig,
    pub kfunc: KFunctionalConfig,
    pub solver: SolverConfig,
    /// K-functional search degree.
    pub search_degree: usize,
    /// Degree for projecting callables before modulus evaluation.
    pub projection_degree: usize,
    /// Rows with a side below floor * (1 + ||f||) are flagged degenerate.
    pub degenerate_floor: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            modulus: ModulusConfig::default(),
            kfunc: KFunctionalConfig::default(),
            solver: SolverConfig::default(),
            search_degree: 32,
            projection_degree: 768,
            degenerate_floor: 1e-9,
        }
    }
}

fn cos4_half(delta: f64) -> f64 {
    (0.5 * delta).cos().powi(4)
}

/// A series representation suitable for the fast modulus path: callables are
/// projected once onto the Jacobi-(2,2) basis (split-aware for known kinks).
fn sweep_representation(f: &FuncRep, cfg: &SweepConfig) -> Result<FuncRep> {
    match f {
        FuncRep::Callable(_) => {
            let deg = cfg.projection_degree;
            let basis = std::sync::Arc::new(jacobi::JacobiBasis::new(2.0, 2.0, deg)?);
            let a = if cfg.solver.splits.is_empty() {
                basis.analyze(f, deg, deg + 8)?
            } else {
                basis.analyze_piecewise(f, deg, deg + 200, &cfg.solver.splits)?
            };
            let coeffs: Vec<f64> = a
                .iter()
                .enumerate()
                .map(|(n, &v)| v / basis.norm_sq(n))
                .collect();
            Ok(FuncRep::Jacobi(jacobi::JacobiSeries::with_basis(
                basis, coeffs,
            )))
        }
        other => Ok(other.clone()),
    }
}

/// Equivalence sweep: for each delta, the modulus and the K-functional with
/// the two theorem-normalized ratios:
///
/// * lower table: ratio = omega / (cos^4(delta/2)^{r(r-1)} K), bounded below;
/// * upper table: ratio = omega * cos^4(delta/2)^r / K, bounded above.
pub fn verify_equivalence(
    f: &FuncRep,
    r: usize,
    space: &WeightedSpace,
    deltas: &[f64],
    cfg: &SweepConfig,
) -> Result<(RatioTable, RatioTable)> {
    space.validate(Regime::DirectInverse)?;
    if deltas.is_empty() {
        return Err(Error::InvalidArgument("empty delta sweep".into()));
    }
    for &d in deltas {
        if !(d > 0.0 && d < std::f64::consts::PI) {
            return Err(Error::InvalidArgument(format!(
                "sweep delta {d} outside (0, pi)"
            )));
        }
    }
    let frep = sweep_representation(f, cfg)?;
    let fnorm = weighted_norm(&frep, space, cfg.modulus.x_resolution)?;
    let floor = cfg.degenerate_floor * (1.0 + fnorm);

    let results: Vec<Result<(f64, f64)>> = deltas
        .par_iter()
        .map(|&delta| {
            let om = modulus(&frep, r, delta, space, &cfg.modulus)?.value;
            let kf = k_functional(f, r, delta, space, cfg.search_degree, &cfg.kfunc)?.value;
            Ok((om, kf))
        })
        .collect();

    let mut lower_rows = Vec::new();
    let mut upper_rows = Vec::new();
    for (&delta, res) in deltas.iter().zip(results) {
        let (om, kf) = res?;
        let c4 = cos4_half(delta);
        let degenerate = om <= floor || kf <= floor;
        let rr = (r * (r - 1)) as i32;
        lower_rows.push(RatioRow {
            params: vec![delta],
            lhs: om,
            rhs: kf * c4.powi(rr),
            ratio: om / (kf * c4.powi(rr)),
            degenerate,
        });
        upper_rows.push(RatioRow {
            params: vec![delta],
            lhs: om * c4.powi(r as i32),
            rhs: kf,
            ratio: om * c4.powi(r as i32) / kf,
            degenerate,
        });
    }
    let names = vec!["delta".to_string()];
    Ok((
        RatioTable::new("equivalence-lower", names.clone(), lower_rows),
        RatioTable::new("equivalence-upper", names, upper_rows),
    ))
}

/// Jackson/converse sweep over n = 2..=n_max:
///
/// * left table: ratio = E_n / omega_r(f, 1/n), bounded above;
/// * right table: ratio = omega_r(f, 1/n) / (n^{-2r} sum nu^{2r-1} E_nu),
///   bounded above.
pub fn verify_jackson(
    f: &FuncRep,
    r: usize,
    space: &WeightedSpace,
    n_max: usize,
    cfg: &SweepConfig,
) -> Result<(RatioTable, RatioTable)> {
    space.validate(Regime::DirectInverse)?;
    if !(2..=64).contains(&n_max) {
        return Err(Error::InvalidArgument(format!(
            "n_max must lie in 2..=64, got {n_max}"
        )));
    }
    let frep = sweep_representation(f, cfg)?;
    let fnorm = weighted_norm(&frep, space, cfg.modulus.x_resolution)?;
    let floor = cfg.degenerate_floor * (1.0 + fnorm);

    // Best-approximation profile E_1..E_{n_max}: one projection for p=2,
    // per-n exchange solves for p=inf (both on the original representation,
    // split-aware).
    let e_profile: Vec<f64> = match space.p {
        PExp::Finite(p) if (p - 2.0).abs() < 1e-14 => {
            approx::l2_profile(f, n_max, space, &cfg.solver)?
        }
        _ => {
            let res: Vec<Result<f64>> = (1..=n_max)
                .into_par_iter()
                .map(|n| Ok(approx::best_approx(f, n, space, &cfg.solver)?.value))
                .collect();
            res.into_iter().collect::<Result<Vec<f64>>>()?
        }
    };

    let moduli: Vec<Result<f64>> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let delta = 1.0 / n as f64;
            Ok(modulus(&frep, r, delta, space, &cfg.modulus)?.value)
        })
        .collect();
    let moduli = moduli.into_iter().collect::<Result<Vec<f64>>>()?;

    // Prefix sums of nu^{2r-1} E_nu.
    let mut prefix = vec![0.0; n_max + 1];
    for nu in 1..=n_max {
        prefix[nu] = prefix[nu - 1] + (nu as f64).powi(2 * r as i32 - 1) * e_profile[nu - 1];
    }

    let mut left_rows = Vec::new();
    let mut right_rows = Vec::new();
    for n in 2..=n_max {
        let e_n = e_profile[n - 1];
        let om = moduli[n - 2];
        let s_n = (n as f64).powi(-2 * (r as i32)) * prefix[n];
        left_rows.push(RatioRow {
            params: vec![n as f64],
            lhs: e_n,
            rhs: om,
            ratio: e_n / om,
            degenerate: e_n <= floor || om <= floor,
        });
        right_rows.push(RatioRow {
            params: vec![n as f64],
            lhs: om,
            rhs: s_n,
            ratio: om / s_n,
            degenerate: om <= floor || s_n <= floor,
        });
    }
    let names = vec!["n".to_string()];
    Ok((
        RatioTable::new("jackson-left", names.clone(), left_rows),
        RatioTable::new("jackson-right", names, right_rows),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ::approx::assert_abs_diff_eq;

    #[test]
    fn trial_family_membership_and_norms() {
        let fam = TrialFamily::standard(DEFAULT_SEED);
        assert_eq!(fam.members.len(), 13 + 4);
        // Every member lies in L_{p,alpha} for DirectInverse pairs.
        for space in [WeightedSpace::finite(2.0, 1.0), WeightedSpace::sup(1.0)] {
            for (name, f) in &fam.members {
                let n = weighted_norm(f, &space, 128).unwrap();
                assert!(n.is_finite() && n > 0.0, "{name} in {space:?}");
            }
        }
    }

    #[test]
    fn random_poly_is_seed_stable() {
        let a = random_poly(42, 10);
        let b = random_poly(42, 10);
        for x in [-0.5, 0.1, 0.9] {
            assert_abs_diff_eq!(a.eval(x), b.eval(x), epsilon = 0.0);
        }
        let c = random_poly(43, 10);
        assert!((a.eval(0.3) - c.eval(0.3)).abs() > 1e-12);
    }

    #[test]
    fn ratio_table_summary_skips_degenerate_rows() {
        let rows = vec![
            RatioRow {
                params: vec![1.0],
                lhs: 1.0,
                rhs: 2.0,
                ratio: 0.5,
                degenerate: false,
            },
            RatioRow {
                params: vec![2.0],
                lhs: 0.0,
                rhs: 2.0,
                ratio: 0.0,
                degenerate: true,
            },
            RatioRow {
                params: vec![3.0],
                lhs: 4.0,
                rhs: 2.0,
                ratio: 2.0,
                degenerate: false,
            },
        ];
        let t = RatioTable::new("demo", vec!["n".into()], rows);
        assert_abs_diff_eq!(t.summary.min_ratio, 0.5);
        assert_abs_diff_eq!(t.summary.max_ratio, 2.0);
        assert_abs_diff_eq!(t.summary.spread, 4.0);
        assert_eq!(t.summary.degenerate_rows, 1);
    }

    #[test]
    fn csv_shape_and_determinism() {
        let rows = vec![RatioRow {
            params: vec![0.1],
            lhs: 1.0 / 3.0,
            rhs: 2.0,
            ratio: 1.0 / 6.0,
            degenerate: false,
        }];
        let t = RatioTable::new("demo", vec!["delta".into()], rows);
        let csv = t.to_csv();
        assert!(csv.starts_with("delta,lhs,rhs,ratio\n"));
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
        assert_eq!(csv, t.to_csv());
        // 17 significant digits round-trip.
        let field = csv.lines().nth(1).unwrap().split(',').nth(1).unwrap();
        assert_eq!(field.parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn jackson_sweep_on_polynomial_has_zero_left_tail() {
        // Degree-3 polynomial: E_n = 0 for n > 3, rows flagged degenerate,
        // right ratios finite.
        let f = FuncRep::from_monomials(&[0.0, 1.0, 0.0, 0.5]);
        let space = WeightedSpace::finite(2.0, 1.0);
        let cfg = SweepConfig {
            search_degree: 8,
            ..Default::default()
        };
        let (left, right) = verify_jackson(&f, 1, &space, 8, &cfg).unwrap();
        for row in &left.rows {
            let n = row.params[0] as usize;
            if n > 3 {
                assert!(row.degenerate, "n={n} should be degenerate");
            }
        }
        assert!(right.summary.spread.is_finite());
        assert!(right.summary.max_ratio.is_finite());
    }

    #[test]
    fn equivalence_sweep_smoke_on_r1() {
        let f = FuncRep::from_monomials(&[0.0, 1.0]);
        let space = WeightedSpace::finite(2.0, 1.0);
        let cfg = SweepConfig {
            search_degree: 6,
            ..Default::default()
        };
        let (lower, upper) = verify_equivalence(&f, 1, &space, &[0.2, 0.6, 1.0], &cfg).unwrap();
        for row in lower.rows.iter().chain(&upper.rows) {
            assert!(!row.degenerate);
            assert!(row.ratio.is_finite() && row.ratio > 0.0);
        }
        // omega >= (something) * K always holds with a modest constant here.
        assert!(lower.summary.min_ratio > 0.05);
        assert!(upper.summary.max_ratio < 20.0);
    }

    #[test]
    fn sweeps_guard_their_regimes() {
        let f = FuncRep::from_monomials(&[0.0, 1.0]);
        let bad = WeightedSpace::finite(2.0, 0.3);
        let cfg = SweepConfig::default();
        assert!(verify_equivalence(&f, 1, &bad, &[0.5], &cfg).is_err());
        assert!(verify_jackson(&f, 1, &bad, 8, &cfg).is_err());
        let good = WeightedSpace::finite(2.0, 1.0);
        assert!(verify_jackson(&f, 1, &good, 65, &cfg).is_err());
    }
}
