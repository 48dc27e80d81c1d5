use std::fmt;
use std::sync::Arc;

use super::series::ExactSeries;
use crate::algebra::{RingElem, Scalar};
use crate::error::{Error, Result};
use crate::padic::{ExactScalar, ExtensionRing};

/// Polynomial in `T` over the field `L`, trailing zeros trimmed.
#[derive(Clone, PartialEq)]
pub struct LPoly {
    ring: Arc<ExtensionRing>,
    coeffs: Vec<ExactScalar>,
}

impl LPoly {
    pub fn new(ring: &Arc<ExtensionRing>, mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        LPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &Arc<ExtensionRing>) -> Self {
        LPoly::new(ring, vec![])
    }

    pub fn one(ring: &Arc<ExtensionRing>) -> Self {
        LPoly::new(ring, vec![ExactScalar::one(ring)])
    }

    pub fn from_i64s(ring: &Arc<ExtensionRing>, coeffs: &[i64]) -> Self {
        LPoly::new(ring, coeffs.iter().map(|&c| ExactScalar::from_i64(ring, c)).collect())
    }

    /// The window of an untruncated exact series.
    pub fn from_series(f: &ExactSeries) -> Result<Self> {
        if f.is_truncated() {
            return Err(Error::ExactBackendRequired(
                "polynomial arithmetic needs an untruncated series".into(),
            ));
        }
        Ok(LPoly::new(f.ring(), f.coeffs().to_vec()))
    }

    /// As a series; the window grows to hold the whole polynomial.
    pub fn to_series(&self, truncation: usize) -> ExactSeries {
        let d = truncation.max(self.degree().unwrap_or(0));
        ExactSeries::new(&self.ring, d, self.coeffs.clone()).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<ExtensionRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ExactScalar::zero(&self.ring))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        LPoly::new(&self.ring, self.coeffs.iter().map(|x| x.mul_ref(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inverse().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPoly::new(&self.ring, (0..n).map(|i| self.coeff(i).add_ref(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPoly::new(&self.ring, (0..n).map(|i| self.coeff(i).sub_ref(&rhs.coeff(i))).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return LPoly::zero(&self.ring);
        }
        let mut out = vec![ExactScalar::zero(&self.ring); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        LPoly::new(&self.ring, out)
    }

    pub fn div_rem(&self, rhs: &Self) -> Result<(Self, Self)> {
        let dr = rhs.degree().ok_or(Error::ZeroElement)?;
        let inv = rhs.leading().and_then(ExactScalar::inverse).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dr {
            return Ok((LPoly::zero(&self.ring), self.clone()));
        }
        let mut quot = vec![ExactScalar::zero(&self.ring); rem.len() - dr];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dr].mul_ref(&inv);
            if c.is_zero() {
                continue;
            }
            for (i, b) in rhs.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub_ref(&c.mul_ref(b));
            }
            quot[k] = c;
        }
        rem.truncate(dr);
        Ok((LPoly::new(&self.ring, quot), LPoly::new(&self.ring, rem)))
    }

    /// Quotient when `rhs` divides `self`, else `None`.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), rhs.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(&self.ring), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// `(mu, lambda)`: least coefficient valuation in units of `v(pi)` and
    /// the first index attaining it.
    pub fn mu_lambda(&self) -> Result<(i64, usize)> {
        self.to_series(0).mu_lambda()
    }

    /// Multiplicity of `T` as a factor.
    pub fn t_adic_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides out the largest power of `T`.
    pub fn strip_t_power(&self) -> (Self, usize) {
        let k = self.t_adic_order().unwrap_or(0);
        (LPoly::new(&self.ring, self.coeffs[k.min(self.coeffs.len())..].to_vec()), k)
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*T"),
                _ => format!("({c})*T^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
