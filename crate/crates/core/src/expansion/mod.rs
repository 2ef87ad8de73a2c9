//! Finite-set arithmetic and growth experiments.

pub mod experiments;
pub mod fit;
pub mod sets;

pub use experiments::{
    enr_experiment, image_growth, incidence_count, meets_power, on_translate, product_bound_experiment, EnrResult,
    ExpansionReport, ImageChain, IncidenceResult, ProductSpec, Sample,
};
pub use fit::{fit_exponent, Fit};
pub use sets::{
    fold_sets, gen_set, image_set, image_set_with_budget, set_algebra, tuple_budget, FiniteSet, PlanarSet, SetKind,
    SetOp, SetSpec,
};
