//! Exact coefficient fields, sparse univariate polynomials and rational
//! functions.

mod field;
mod gauss;
mod poly;
mod ratfunc;
mod roots;

pub use field::{int, rat, Field, Rat};
pub use gauss::GaussRat;
pub use poly::{primitive_factor, Poly, PolyDisplay, DENSE_MIN_WORK, DENSE_SPAN_FACTOR};
pub use ratfunc::RatFunc;
pub use roots::integer_roots;
