//! Computational non-commutative Iwasawa theory at finite level.

pub mod akashi;
pub mod algebra;
pub mod crossed_product;
pub mod error;
pub mod euler_arith;
pub mod function_field;
pub mod iwasawa_series;
pub mod linalg;
pub mod lvalue;
pub mod padic;
pub mod sampling;

pub use algebra::{Backend, RingElem, Scalar, Valuation};
pub use error::{Error, Result};
