use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use super::module::TorsionModuleData;
use crate::algebra::{Backend, RingElem, Scalar};
use crate::error::{Error, Result};
use crate::iwasawa_series::{IwasawaSeries, LPoly, PadicSeries};
use crate::padic::{ExactScalar, ExtensionRing, PadicScalar};

/// `prod_i f_i^{sign_i}` modulo `Lambda_O(Gamma)^x`.
#[derive(Debug, Clone, PartialEq)]
pub struct AkashiSeries<S: Scalar> {
    ring: Arc<ExtensionRing>,
    factors: Vec<(IwasawaSeries<S>, i32)>,
}

/// `pi^mu * num / den` with `num`, `den` distinguished and, on the rational
/// backend, coprime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalForm {
    /// In units of `v(pi)`; may be negative.
    pub mu: i64,
    pub lambda_num: usize,
    pub lambda_den: usize,
    /// Monic, low degree first, symmetric coordinates modulo `p^N`.
    pub num: Vec<Vec<i64>>,
    pub den: Vec<Vec<i64>>,
    /// False when common factors could not be cancelled (p-adic input).
    pub reduced: bool,
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = |c: &[Vec<i64>]| {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, x)| x.iter().any(|&v| v != 0))
                .map(|(i, x)| {
                    let coef = if x.len() == 1 {
                        x[0].to_string()
                    } else {
                        format!("{x:?}")
                    };
                    match i {
                        0 => coef,
                        1 => format!("{coef}*T"),
                        _ => format!("{coef}*T^{i}"),
                    }
                })
                .collect();
            terms.join(" + ")
        };
        write!(f, "pi^{} * ({})", self.mu, poly(&self.num))?;
        if self.lambda_den > 0 {
            write!(f, " / ({})", poly(&self.den))?;
        }
        Ok(())
    }
}

/// Outcome of an Euler characteristic computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EulerChar {
    /// `chi = p^exponent`.
    Finite { exponent: i64 },
    /// The Akashi series vanishes at `T = 0`.
    ZeroValue,
    /// The Akashi series has a pole at `T = 0`.
    Pole,
}

impl EulerChar {
    pub fn exponent(&self) -> Option<i64> {
        match self {
            EulerChar::Finite { exponent } => Some(*exponent),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, EulerChar::Finite { .. })
    }
}

/// Distinguished part of a nonzero polynomial over `L`, found by p-adic
/// Weierstrass preparation of a primitive integral multiple.
fn distinguished_part(f: &LPoly) -> Result<(usize, Vec<Vec<i64>>)> {
    let ring = f.ring();
    let (_, lambda) = f.mu_lambda()?;
    let d = f
        .coeffs()
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, &c.common_denominator()));
    let scale = ExactScalar::from_rational(ring, num_rational::BigRational::from_integer(d));
    let coeffs = f
        .scale(&scale)
        .coeffs()
        .iter()
        .map(ExactScalar::reduce)
        .collect::<Result<Vec<_>>>()?;
    let deg = coeffs.len() - 1;
    let w = PadicSeries::new(ring, deg + 1, coeffs)?.weierstrass_prepare()?;
    debug_assert_eq!(w.lambda, lambda);
    Ok((w.lambda, w.distinguished.coeffs().iter().map(symmetric).collect()))
}

fn symmetric(x: &PadicScalar) -> Vec<i64> {
    x.symmetric_coords().iter().map(|&c| c as i64).collect()
}

impl<S: Scalar> AkashiSeries<S> {
    pub fn new(ring: &Arc<ExtensionRing>, factors: Vec<(IwasawaSeries<S>, i32)>) -> Result<Self> {
        for (f, s) in &factors {
            if f.is_zero() {
                return Err(Error::NotTorsion);
            }
            if s.abs() != 1 {
                return Err(Error::InvalidInput(format!("factor sign {s} is not +1 or -1")));
            }
        }
        Ok(AkashiSeries {
            ring: ring.clone(),
            factors,
        })
    }

    pub fn ring(&self) -> &Arc<ExtensionRing> {
        &self.ring
    }

    pub fn factors(&self) -> &[(IwasawaSeries<S>, i32)] {
        &self.factors
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        AkashiSeries {
            ring: self.ring.clone(),
            factors,
        }
    }

    pub fn inverse(&self) -> Self {
        AkashiSeries {
            ring: self.ring.clone(),
            factors: self.factors.iter().map(|(f, s)| (f.clone(), -s)).collect(),
        }
    }

    /// Factorwise norm down to `Lambda(Gamma)`.
    pub fn norm_to_base(&self) -> Result<Self> {
        let factors = self
            .factors
            .iter()
            .map(|(f, s)| Ok((f.norm_to_base()?, *s)))
            .collect::<Result<Vec<_>>>()?;
        Ok(AkashiSeries {
            ring: self.ring.prime_ring(),
            factors,
        })
    }

    /// Exact alternating product as a coprime fraction over `L`.
    fn reduced_fraction(&self) -> Result<(LPoly, LPoly)> {
        let mut num = LPoly::one(&self.ring);
        let mut den = LPoly::one(&self.ring);
        for (f, s) in &self.factors {
            let p = LPoly::from_series(&f.to_exact()?)?;
            if *s > 0 {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        let g = num.gcd(&den);
        Ok((num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides")))
    }

    /// `pi^mu * P / Q` with `P`, `Q` distinguished. The rational backend
    /// cancels common factors exactly; the p-adic backend multiplies the
    /// Weierstrass data of the factors without cancellation.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        match S::BACKEND {
            Backend::Rational => {
                let (num, den) = self.reduced_fraction()?;
                let mu = num.mu_lambda()?.0 - den.mu_lambda()?.0;
                let (lambda_num, num) = distinguished_part(&num)?;
                let (lambda_den, den) = distinguished_part(&den)?;
                Ok(CanonicalForm {
                    mu,
                    lambda_num,
                    lambda_den,
                    num,
                    den,
                    reduced: true,
                })
            }
            Backend::Padic => {
                let mut mu = 0i64;
                let mut num = PadicSeries::one(&self.ring, 0);
                let mut den = PadicSeries::one(&self.ring, 0);
                for (f, s) in &self.factors {
                    let w = f.to_padic()?.weierstrass_prepare()?;
                    mu += *s as i64 * w.mu as i64;
                    // widen so the polynomial product is not cut off
                    let p = w.distinguished.with_truncation(w.lambda + num.truncation() + den.truncation());
                    if *s > 0 {
                        num = num.with_truncation(p.truncation()).mul_ref(&p);
                    } else {
                        den = den.with_truncation(p.truncation()).mul_ref(&p);
                    }
                }
                Ok(CanonicalForm {
                    mu,
                    lambda_num: num.degree().unwrap_or(0),
                    lambda_den: den.degree().unwrap_or(0),
                    num: num.coeffs().iter().map(symmetric).collect(),
                    den: den.coeffs().iter().map(symmetric).collect(),
                    reduced: false,
                })
            }
        }
    }

    /// Equality of classes modulo units, decided exactly: the quotient
    /// `self / other` reduces to `n / m` with `mu(n) = mu(m)` and
    /// `lambda(n) = lambda(m) = 0`.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        if S::BACKEND != Backend::Rational {
            return Err(Error::ExactBackendRequired("exact comparison of Akashi series".into()));
        }
        let (n, m) = self.mul(&other.inverse()).reduced_fraction()?;
        let (mu_n, l_n) = n.mu_lambda()?;
        let (mu_m, l_m) = m.mu_lambda()?;
        Ok(mu_n == mu_m && l_n == 0 && l_m == 0)
    }

    /// `chi = |phi(Ak)|_p^{-m}`. Powers of `T` are cancelled across factors
    /// first; what remains is evaluated at `T = 0`.
    pub fn euler_characteristic(&self, m: usize) -> Result<EulerChar> {
        let mut net_order = 0i64;
        let mut v = Ratio::from_integer(0i64);
        for (f, s) in &self.factors {
            let ord = f.coeffs().iter().position(|c| !c.is_zero()).ok_or(Error::ZeroWithinPrecision)?;
            if ord > 0 && S::BACKEND == Backend::Padic {
                return Err(Error::PrecisionExhausted(
                    "constant term vanishes modulo p^N, so its valuation is indeterminate".into(),
                ));
            }
            net_order += *s as i64 * ord as i64;
            let val = f.coeffs()[ord].valuation().finite().expect("nonzero coefficient");
            v += val * Ratio::from_integer(*s as i64);
        }
        if net_order > 0 {
            return Ok(EulerChar::ZeroValue);
        }
        if net_order < 0 {
            return Ok(EulerChar::Pole);
        }
        let e = v * Ratio::from_integer(m as i64);
        if !e.is_integer() {
            return Err(Error::NonIntegralTotal(format!("m * v = {e}")));
        }
        Ok(EulerChar::Finite { exponent: e.to_integer() })
    }
}

/// `Ak(M) = prod_i f_{i,M}^{(-1)^i}`.
pub fn akashi_series<S: Scalar>(m: &TorsionModuleData<S>) -> Result<AkashiSeries<S>> {
    let factors = m
        .char_series()?
        .into_iter()
        .enumerate()
        .map(|(i, f)| (f, if i % 2 == 0 { 1 } else { -1 }))
        .collect();
    AkashiSeries::new(m.ring(), factors)
}

pub fn euler_characteristic<S: Scalar>(ak: &AkashiSeries<S>, m: usize) -> Result<EulerChar> {
    ak.euler_characteristic(m)
}
