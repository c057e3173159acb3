use smoothness_lab::numerics::funcrep::FuncRep;
use smoothness_lab::numerics::space::WeightedSpace;
use smoothness_lab::verify::{verify_equivalence, verify_jackson, SweepConfig, TrialFamily};
use std::time::Instant;

fn main() {
    let cfg = SweepConfig::default();
    let spaces = [WeightedSpace::finite(2.0, 1.0), WeightedSpace::sup(1.0)];
    let deltas: Vec<f64> = (0..8).map(|i| 0.1 + 0.2 * i as f64).collect();
    for name in ["absx15", "expx"] {
        let mut f = TrialFamily::member(name).unwrap();
        let mut c = cfg.clone();
        c.solver.splits = TrialFamily::split_points(name);
        if name == "expx" { f = FuncRep::from_fn(f64::exp); }
        for r in [1usize, 2] {
            for space in &spaces {
                let t0 = Instant::now();
                let (left, right) = verify_jackson(&f, r, space, 64, &c).unwrap();
                let tj = t0.elapsed().as_secs_f64();
                let t0 = Instant::now();
                let (lo, up) = verify_equivalence(&f, r, space, &deltas, &c).unwrap();
                let te = t0.elapsed().as_secs_f64();
                println!("{name} r={r} {:?}: J-left spread={:.3e} (min={:.3e} max={:.3e}, degen={}) J-right spread={:.3} [{:.1}s] | E-lower spread={:.3} E-upper spread={:.3} [{:.1}s]",
                    space.p, left.summary.spread, left.summary.min_ratio, left.summary.max_ratio, left.summary.degenerate_rows,
                    right.summary.spread, tj, lo.summary.spread, up.summary.spread, te);
            }
        }
    }
}
