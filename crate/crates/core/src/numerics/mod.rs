//! Quadrature, weighted norms, and function representations — the numeric
//! substrate shared by every operator module.

pub mod cheb;
pub mod funcrep;
pub mod quadrature;
pub mod space;

pub use funcrep::{ChebSeries, FuncRep};
pub use quadrature::{gauss_rule, integrate_with_check, QuadKind, QuadratureRule};
pub use space::{weighted_norm, PExp, Regime, WeightedSpace};
