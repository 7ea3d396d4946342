//! Exact scalars, polynomials, rational functions and jets.

pub mod field;
pub mod jet;
pub mod mat2;
pub mod mpoly;
pub mod poly;
pub mod ratfunc;
pub mod scalar;

pub use field::{Field, Scalar, Specialize};
pub use jet::{jet2_eval, Dual, Jet2};
pub use mat2::{Mat2, Ring};
pub use mpoly::MPoly;
pub use poly::{parse_poly, poly_text, Poly};
pub use ratfunc::{QEps, RatFunc};
pub use scalar::{format_q, parse_q, projective_normalize, q, qi, Q};
