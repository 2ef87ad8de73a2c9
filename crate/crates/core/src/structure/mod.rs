//! Additive and multiplicative structure of multivariate polynomials.

pub mod classify;
pub mod decompose;
pub mod equiv;

pub use classify::{
    classify_pair, classify_single, decompose, equivalence_classes, expander_exponent, exceptional_size, PairVerdict,
    PairWitness, Verdict,
};
pub use decompose::{
    detect_additive, detect_multiplicative, normalize, uni_decompose, Decomposition, DecompositionKind,
};
pub use equiv::{equiv_a, equiv_m, EquivWitnessA, EquivWitnessM};
