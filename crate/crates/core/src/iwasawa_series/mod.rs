//! Truncated power series over `O`, the model of `Lambda_O(Gamma) = O[[T]]`
//! with `gamma_0 -> 1 + T`.

mod json;
mod lpoly;
mod series;
mod weierstrass;

pub use json::{CoeffJson, SeriesJson};
pub use lpoly::LPoly;
pub use series::{det_series, ExactSeries, IwasawaSeries, PadicSeries, DEFAULT_PRECISION, DEFAULT_TRUNCATION};
pub use weierstrass::{WeierstrassData, WeierstrassSummary};
