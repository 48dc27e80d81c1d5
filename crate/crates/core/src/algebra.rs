//! Shared algebraic traits: ring elements carrying their own context, and
//! p-adic scalars with exact rational valuations.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::padic::{ExactScalar, ExtensionRing, PadicScalar, RingKind};

/// A commutative ring element that knows its own context, so zero and one
/// can be produced from any instance.
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Normalized additive valuation, `v(p) = 1`. Values of elements of a
/// ramified ring have denominators dividing the ramification index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Ratio<i64>),
    /// The element vanishes modulo the working precision (or is exactly zero).
    Infinite,
}

impl Valuation {
    pub fn int(v: i64) -> Self {
        Valuation::Finite(Ratio::from_integer(v))
    }

    pub fn finite(&self) -> Option<Ratio<i64>> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Valuation::Finite(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Coefficient backend of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Exact arithmetic in the fraction field `L`, coordinates in `Q`.
    Rational,
    /// Arithmetic in `O / p^N`.
    Padic,
}

/// Element of an extension ring `O` (or its fraction field), in coordinates
/// over the basis `1, x, ..., x^{m-1}` of the defining modulus.
pub trait Scalar: RingElem + Send + Sync + 'static {
    const BACKEND: Backend;

    fn ring(&self) -> &Arc<ExtensionRing>;
    fn zero(ring: &Arc<ExtensionRing>) -> Self;
    fn from_i64(ring: &Arc<ExtensionRing>, n: i64) -> Self;
    /// The basis element `x^i`.
    fn basis(ring: &Arc<ExtensionRing>, i: usize) -> Self;
    fn valuation(&self) -> Valuation;
    /// Exact backend: inverse in the field `L` for any nonzero element.
    /// p-adic backend: inverse in `O` for units only.
    fn inverse(&self) -> Option<Self>;
    /// Coordinates as elements of the prime ring over the same prime.
    fn coordinates(&self) -> Vec<Self>;
    /// Image of a prime-ring element under the structure map into `ring`.
    fn embed(&self, ring: &Arc<ExtensionRing>) -> Result<Self>;

    /// Rational-backend image (a symmetric lift for p-adic elements).
    fn to_exact(&self) -> ExactScalar;
    /// Reduction modulo `p^N`; fails for non-integral elements.
    fn to_padic(&self) -> Result<PadicScalar>;

    fn one(ring: &Arc<ExtensionRing>) -> Self {
        Self::from_i64(ring, 1)
    }

    /// The local parameter: `p` when unramified, `x` when Eisenstein.
    fn uniformizer(ring: &Arc<ExtensionRing>) -> Self {
        match ring.kind() {
            RingKind::Eisenstein => Self::basis(ring, 1),
            _ => Self::from_i64(ring, ring.p() as i64),
        }
    }

    fn is_unit(&self) -> bool {
        self.valuation() == Valuation::int(0)
    }
}
