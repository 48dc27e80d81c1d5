use std::fmt;

use super::poly::{inv_mod, FpPoly};
use crate::algebra::RingElem;

/// Element of `F_p(T)` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpRational {
    num: FpPoly,
    den: FpPoly,
}

impl FpRational {
    /// Builds `num / den`; panics if `den` is zero.
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in F_p(T)");
        let p = num.p();
        if num.is_zero() {
            return FpRational {
                num,
                den: FpPoly::constant(p, 1),
            };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let lead = inv_mod(den.leading(), p);
        FpRational {
            num: num.scale(lead),
            den: den.scale(lead),
        }
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.p();
        FpRational {
            num,
            den: FpPoly::constant(p, 1),
        }
    }

    pub fn numerator(&self) -> &FpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &FpPoly {
        &self.den
    }

    pub fn p(&self) -> u64 {
        self.num.p()
    }

    pub fn inverse(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| FpRational::new(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.mul_ref(&inv))
    }
}

impl RingElem for FpRational {
    fn zero_like(&self) -> Self {
        FpRational::from_poly(FpPoly::zero(self.p()))
    }

    fn one_like(&self) -> Self {
        FpRational::from_poly(FpPoly::constant(self.p(), 1))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        FpRational::new(
            self.num.mul_ref(&rhs.den).add_ref(&rhs.num.mul_ref(&self.den)),
            self.den.mul_ref(&rhs.den),
        )
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        FpRational::new(self.num.mul_ref(&rhs.num), self.den.mul_ref(&rhs.den))
    }

    fn neg_ref(&self) -> Self {
        FpRational {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Debug for FpRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FpRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
