//! Resultants, implicitization, invariance tests, line containment and
//! exact intersection counting for planar curves.

pub mod curve;
pub mod implicit;
pub mod intersect;
pub mod invariance;
pub mod line;
pub mod resultant;

pub use curve::{ParamCurve, Shift, Transform};
pub use implicit::{implicitize, ImplicitCurve};
pub use intersect::{
    implicit_intersection, solve_real_2d, translate_intersection_count, ImplicitIntersection, SolveOutcome,
    TranslateCount,
};
pub use invariance::{affine_associate, monomial_invariance, AffineMapKind, MonomialInvariance};
pub use line::{line_containment, LineConstant, LineVerdict};
pub use resultant::sylvester_resultant;
