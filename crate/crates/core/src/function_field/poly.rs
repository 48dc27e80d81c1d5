use std::fmt;

use crate::algebra::RingElem;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Polynomial over the prime field `F_p`, coefficients low degree first,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.normalize();
        poly
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Self {
        FpPoly::new(p, coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    /// The monomial `x^n`.
    pub fn monomial(p: u64, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        FpPoly { p, coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn scale(&self, c: u64) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = inv_mod(divisor.leading(), self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod(rem[i], inv_lead, self.p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (k, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + k;
                rem[idx] = (rem[idx] + self.p - mul_mod(c, dc, self.p)) % self.p;
            }
        }
        (FpPoly::new(self.p, quot), FpPoly::new(self.p, rem))
    }

    /// Quotient of an exact division; `None` if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &FpPoly) -> Option<FpPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &FpPoly) -> FpPoly {
        let mut base = self.div_rem(modulus).1;
        let mut acc = FpPoly::constant(self.p, 1).div_rem(modulus).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_ref(&base).div_rem(modulus).1;
            }
            base = base.mul_ref(&base).div_rem(modulus).1;
            exp >>= 1;
        }
        acc
    }

    /// Irreducibility over `F_p`: no factor of degree at most `deg / 2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(deg) = self.degree() else {
            return false;
        };
        if deg == 0 {
            return false;
        }
        let x = FpPoly::monomial(self.p, 1);
        let mut frob = x.clone();
        for _ in 1..=deg / 2 {
            frob = frob.pow_mod(self.p, self);
            if frob.sub_ref(&x).gcd(self).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

impl RingElem for FpPoly {
    fn zero_like(&self) -> Self {
        FpPoly::zero(self.p)
    }

    fn one_like(&self) -> Self {
        FpPoly::constant(self.p, 1)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + rhs.coeff(i)) % self.p).collect())
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - rhs.coeff(i)) % self.p).collect())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    fn neg_ref(&self) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "T".to_string(),
                (1, c) => format!("{c}*T"),
                (i, 1) => format!("T^{i}"),
                (i, c) => format!("{c}*T^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_reconstructs() {
        let a = FpPoly::from_i64s(5, &[3, 0, 2, 1, 4]);
        let b = FpPoly::from_i64s(5, &[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul_ref(&b).add_ref(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = FpPoly::from_i64s(7, &[1, 1]); // T + 1
        let a = f.mul_ref(&FpPoly::from_i64s(7, &[2, 0, 1]));
        let b = f.mul_ref(&FpPoly::from_i64s(7, &[3, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn irreducibility() {
        // x^2 - 2 is irreducible mod 5 since 2 is not a square mod 5.
        assert!(FpPoly::from_i64s(5, &[-2, 0, 1]).is_irreducible());
        // x^2 + 1 = (x - 2)(x + 2) mod 5.
        assert!(!FpPoly::from_i64s(5, &[1, 0, 1]).is_irreducible());
        assert!(FpPoly::from_i64s(5, &[2, 1]).is_irreducible());
    }
}
