use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{ExtensionRing, RingKind};
use super::scalar::{mul_mod_modulus, same_ring, PadicScalar};
use crate::algebra::{Backend, RingElem, Scalar, Valuation};
use crate::error::{Error, Result};

/// Element of the fraction field `L`, with exact rational coordinates over
/// the basis `1, x, ..., x^{m-1}`.
#[derive(Clone)]
pub struct ExactScalar {
    ring: Arc<ExtensionRing>,
    coords: Vec<BigRational>,
}

/// p-adic valuation of a nonzero rational.
pub fn rational_valuation(x: &BigRational, p: u64) -> i64 {
    debug_assert!(!x.is_zero());
    let p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut v = 0i64;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    };
    count(x.numer()) - count(x.denom())
}

impl ExactScalar {
    pub fn new(ring: &Arc<ExtensionRing>, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != ring.degree() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a ring of degree {}",
                coords.len(),
                ring.degree()
            )));
        }
        Ok(ExactScalar {
            ring: ring.clone(),
            coords,
        })
    }

    pub fn from_rational(ring: &Arc<ExtensionRing>, q: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); ring.degree()];
        coords[0] = q;
        ExactScalar {
            ring: ring.clone(),
            coords,
        }
    }

    pub fn from_fraction(ring: &Arc<ExtensionRing>, n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(ExactScalar::from_rational(ring, BigRational::new(n.into(), d.into())))
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Whether every coordinate is a p-adic integer (membership in `O`).
    pub fn is_integral(&self) -> bool {
        self.coords
            .iter()
            .all(|c| c.is_zero() || rational_valuation(c, self.ring.p()) >= 0)
    }

    /// Whether `self` lies in the prime field `Q`.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Reduction into `O / p^N`; fails for non-integral elements.
    pub fn reduce(&self) -> Result<PadicScalar> {
        let m = BigInt::from(self.ring.context().modulus());
        let coords = self
            .coords
            .iter()
            .map(|c| {
                if !c.is_zero() && rational_valuation(c, self.ring.p()) < 0 {
                    return Err(Error::NotIntegral(format!("{self} has a p in the denominator")));
                }
                let den = c.denom().mod_floor(&m);
                let inv = den
                    .modinv(&m)
                    .ok_or_else(|| Error::NotIntegral(format!("{self} is not p-integral")))?;
                let r = (c.numer() * inv).mod_floor(&m);
                Ok(r.to_i128().expect("residue below p^N"))
            })
            .collect::<Result<Vec<_>>>()?;
        PadicScalar::new(&self.ring, coords)
    }

    /// The symmetric integer lift of a p-adic element.
    pub fn from_padic(x: &PadicScalar) -> Self {
        ExactScalar {
            ring: x.ring().clone(),
            coords: x
                .symmetric_coords()
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    /// Multiplies by `p^k` (`k` may be negative).
    pub fn scale_p_power(&self, k: i64) -> Self {
        let p = BigRational::from_integer(self.ring.p().into());
        let f = if k >= 0 {
            num_traits::pow(p, k as usize)
        } else {
            num_traits::pow(p, (-k) as usize).recip()
        };
        ExactScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c * &f).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        ExactScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.mul_ref(&inv))
    }

    /// Lowest common denominator of the coordinates.
    pub fn common_denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// Solves `A y = b` over `Q`, or `None` if `A` is singular.
fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        b.swap(k, pivot);
        let inv = a[k][k].recip();
        for x in a[k].iter_mut() {
            *x = &*x * &inv;
        }
        b[k] = &b[k] * &inv;
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
                let t = &f * &b[k];
                b[i] -= t;
            }
        }
    }
    Some(b)
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.coords == other.coords
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coords[0]);
        }
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl RingElem for ExactScalar {
    fn zero_like(&self) -> Self {
        ExactScalar::zero(&self.ring)
    }

    fn one_like(&self) -> Self {
        ExactScalar::from_i64(&self.ring, 1)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        ExactScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        ExactScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        if self.coords.len() == 1 {
            return ExactScalar {
                ring: self.ring.clone(),
                coords: vec![&self.coords[0] * &rhs.coords[0]],
            };
        }
        let coords = mul_mod_modulus(
            &self.coords,
            &rhs.coords,
            self.ring.modulus(),
            BigRational::zero(),
            |a, b| a * b,
            |a, b| a + b,
            |a, c, g| a - c * BigRational::from_integer(g.into()),
        );
        ExactScalar {
            ring: self.ring.clone(),
            coords,
        }
    }

    fn neg_ref(&self) -> Self {
        ExactScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl Scalar for ExactScalar {
    const BACKEND: Backend = Backend::Rational;

    fn ring(&self) -> &Arc<ExtensionRing> {
        &self.ring
    }

    fn zero(ring: &Arc<ExtensionRing>) -> Self {
        ExactScalar {
            ring: ring.clone(),
            coords: vec![BigRational::zero(); ring.degree()],
        }
    }

    fn from_i64(ring: &Arc<ExtensionRing>, n: i64) -> Self {
        ExactScalar::from_rational(ring, BigRational::from_integer(n.into()))
    }

    fn basis(ring: &Arc<ExtensionRing>, i: usize) -> Self {
        if ring.degree() == 1 {
            return ExactScalar::from_i64(ring, -ring.modulus()[0]).pow_u(i as u64);
        }
        if i < ring.degree() {
            let mut x = ExactScalar::zero(ring);
            x.coords[i] = BigRational::one();
            return x;
        }
        ExactScalar::basis(ring, 1).pow_u(i as u64)
    }

    fn valuation(&self) -> Valuation {
        let p = self.ring.p();
        let e = self.ring.ramification_index() as i64;
        let eisenstein = self.ring.kind() == RingKind::Eisenstein;
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Ratio::new(rational_valuation(c, p) * e + if eisenstein { i as i64 } else { 0 }, e))
            .min()
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.ring.degree();
        let cols: Vec<Vec<BigRational>> = (0..m)
            .map(|j| self.mul_ref(&ExactScalar::basis(&self.ring, j)).coords)
            .collect();
        let a = (0..m).map(|i| (0..m).map(|j| cols[j][i].clone()).collect()).collect();
        let mut rhs = vec![BigRational::zero(); m];
        rhs[0] = BigRational::one();
        solve_rational(a, rhs).map(|coords| ExactScalar {
            ring: self.ring.clone(),
            coords,
        })
    }

    fn is_unit(&self) -> bool {
        self.valuation() == Valuation::int(0)
    }

    fn coordinates(&self) -> Vec<Self> {
        let prime = self.ring.prime_ring();
        self.coords
            .iter()
            .map(|c| ExactScalar::from_rational(&prime, c.clone()))
            .collect()
    }

    fn to_exact(&self) -> ExactScalar {
        self.clone()
    }

    fn to_padic(&self) -> Result<PadicScalar> {
        self.reduce()
    }

    fn embed(&self, ring: &Arc<ExtensionRing>) -> Result<Self> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        if !self.ring.is_prime_ring() || self.ring.p() != ring.p() {
            return Err(Error::RingMismatch(format!("cannot embed {} into {}", self.ring, ring)));
        }
        Ok(ExactScalar::from_rational(ring, self.coords[0].clone()))
    }
}
