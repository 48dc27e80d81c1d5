use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::series::IwasawaSeries;
use crate::algebra::{Backend, Scalar};
use crate::error::{Error, Result};
use crate::padic::{ExactScalar, ExtensionRing, PadicScalar, RingSpec};

/// A scalar in JSON: an integer, an `[n, d]` pair, an `"n/d"` string for
/// large values, or `{"coords": [...]}` over the basis of `O`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Frac([i64; 2]),
    Text(String),
    Coords { coords: Vec<CoeffJson> },
}

impl From<i64> for CoeffJson {
    fn from(n: i64) -> Self {
        CoeffJson::Int(n)
    }
}

fn parse_rational(c: &CoeffJson) -> Result<BigRational> {
    match c {
        CoeffJson::Int(n) => Ok(BigRational::from_integer((*n).into())),
        CoeffJson::Frac([_, 0]) => Err(Error::InvalidInput("zero denominator in coefficient".into())),
        CoeffJson::Frac([n, d]) => Ok(BigRational::new((*n).into(), (*d).into())),
        CoeffJson::Text(s) => BigRational::from_str(s.trim())
            .map_err(|_| Error::InvalidInput(format!("cannot parse rational {s:?}"))),
        CoeffJson::Coords { .. } => Err(Error::InvalidInput("nested coordinate lists".into())),
    }
}

fn rational_json(q: &BigRational) -> CoeffJson {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(1)) => CoeffJson::Int(n),
        (Some(n), Some(d)) => CoeffJson::Frac([n, d]),
        _ => CoeffJson::Text(q.to_string()),
    }
}

impl CoeffJson {
    pub fn to_exact(&self, ring: &Arc<ExtensionRing>) -> Result<ExactScalar> {
        match self {
            CoeffJson::Coords { coords } => {
                if coords.len() != ring.degree() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} coordinates for a ring of degree {}",
                        coords.len(),
                        ring.degree()
                    )));
                }
                ExactScalar::new(ring, coords.iter().map(parse_rational).collect::<Result<_>>()?)
            }
            other => Ok(ExactScalar::from_rational(ring, parse_rational(other)?)),
        }
    }

    pub fn to_padic(&self, ring: &Arc<ExtensionRing>) -> Result<PadicScalar> {
        self.to_exact(ring)?.reduce()
    }

    pub fn parse<S: Scalar>(&self, ring: &Arc<ExtensionRing>) -> Result<S> {
        let exact = self.to_exact(ring)?;
        // Build through the coordinate basis so one parser serves both backends.
        match S::BACKEND {
            Backend::Rational => {
                let mut acc = S::zero(ring);
                for (i, c) in exact.coords().iter().enumerate() {
                    let term = S::basis(ring, i);
                    let q = ExactScalar::from_rational(&ring.prime_ring(), c.clone());
                    acc = acc.add_ref(&term.mul_ref(&from_rational_scalar::<S>(&q, ring)?));
                }
                Ok(acc)
            }
            Backend::Padic => {
                let p = exact.reduce()?;
                let mut acc = S::zero(ring);
                for (i, c) in p.coords().iter().enumerate() {
                    let term = S::basis(ring, i);
                    acc = acc.add_ref(&term.mul_ref(&S::from_i64(ring, *c as i64)));
                }
                Ok(acc)
            }
        }
    }

    pub fn from_exact(x: &ExactScalar) -> Self {
        if x.is_rational() {
            return rational_json(&x.coords()[0]);
        }
        CoeffJson::Coords {
            coords: x.coords().iter().map(rational_json).collect(),
        }
    }

    pub fn from_padic(x: &PadicScalar) -> Self {
        let c = x.symmetric_coords();
        if c.len() == 1 {
            return CoeffJson::Int(c[0] as i64);
        }
        CoeffJson::Coords {
            coords: c.into_iter().map(|v| CoeffJson::Int(v as i64)).collect(),
        }
    }

    pub fn from_scalar<S: Scalar>(x: &S) -> Self {
        match S::BACKEND {
            Backend::Rational => CoeffJson::from_exact(&x.to_exact()),
            Backend::Padic => CoeffJson::from_padic(&x.to_padic().expect("p-adic scalar")),
        }
    }
}

fn from_rational_scalar<S: Scalar>(q: &ExactScalar, ring: &Arc<ExtensionRing>) -> Result<S> {
    let r = &q.coords()[0];
    let numer = r
        .numer()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput(format!("coefficient {r} exceeds 64 bits")))?;
    let denom = r
        .denom()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput(format!("coefficient {r} exceeds 64 bits")))?;
    let inv = S::from_i64(ring, denom)
        .inverse()
        .ok_or_else(|| Error::NotIntegral(format!("{r}")))?;
    Ok(S::from_i64(ring, numer).mul_ref(&inv))
}

/// `{"backend": "rational"|"padic", "D": 32, "coeffs": [...], "ring": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    #[serde(default = "default_backend")]
    pub backend: Backend,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    pub coeffs: Vec<CoeffJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
}

fn default_backend() -> Backend {
    Backend::Rational
}


impl SeriesJson {
    pub fn ring_or(&self, default: &Arc<ExtensionRing>) -> Result<Arc<ExtensionRing>> {
        match &self.ring {
            Some(spec) => spec.build(),
            None => Ok(default.clone()),
        }
    }

    /// Parses into the backend `S`; the window defaults to `default_d`
    /// and grows to fit the listed coefficients.
    pub fn parse<S: Scalar>(&self, default_ring: &Arc<ExtensionRing>, default_d: usize) -> Result<IwasawaSeries<S>> {
        let ring = self.ring_or(default_ring)?;
        let d = self.truncation.unwrap_or(default_d);
        if self.coeffs.len() > d + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients exceed the window D = {d}",
                self.coeffs.len()
            )));
        }
        let coeffs = self.coeffs.iter().map(|c| c.parse::<S>(&ring)).collect::<Result<Vec<_>>>()?;
        let s = IwasawaSeries::new(&ring, d, coeffs)?;
        Ok(s.mark_truncated(self.truncated))
    }

    pub fn from_series<S: Scalar>(f: &IwasawaSeries<S>) -> Self {
        SeriesJson {
            backend: S::BACKEND,
            truncation: Some(f.truncation()),
            coeffs: f.coeffs().iter().map(CoeffJson::from_scalar).collect(),
            ring: (!f.ring().is_prime_ring()).then(|| f.ring().spec()),
            truncated: f.is_truncated(),
        }
    }
}
