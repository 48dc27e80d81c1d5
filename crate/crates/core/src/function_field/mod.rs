//! Exact arithmetic over `F_p`, `F_p[T]` and `F_p(T)`, and exact linear
//! algebra over `F_p(T)`. This is where zero/nonzero decisions for the
//! mod-p group algebra are made.

mod matrix;
mod poly;
mod rational;

pub use matrix::{ff_det, ff_rank, poly_det};
pub use poly::FpPoly;
pub(crate) use poly::inv_mod;
pub use rational::FpRational;
