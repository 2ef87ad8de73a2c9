//! Exact polynomial arithmetic over the rationals.

pub mod gcd;
pub mod matrix;
pub mod mpoly;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod serial;
pub mod sturm;

pub use gcd::{bivariate_gcd, bivariate_square_free, normalize_primitive};
pub use mpoly::{compose_outer, MPoly, Monomial};
pub use parse::{parse_constant, parse_mpoly, parse_mpoly_arity, parse_upoly};
pub use poly::{Degree, Poly};
pub use sturm::{isolate_real_roots, sturm_count, Bound, IsolatingIntervals, RealAlgebraic, RootInterval};
