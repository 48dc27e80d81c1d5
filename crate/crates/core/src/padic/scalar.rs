use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::exact::ExactScalar;
use super::ring::{inv_mod_i128, symmetric, v_p, ExtensionRing, RingKind, RingSpec};
use crate::algebra::{Backend, RingElem, Scalar, Valuation};
use crate::error::{Error, Result};

/// Element of `O / p^N`, stored as coordinates in `[0, p^N)` over the basis
/// `1, x, ..., x^{m-1}`.
#[derive(Clone)]
pub struct PadicScalar {
    ring: Arc<ExtensionRing>,
    coords: Vec<i128>,
}

pub(crate) fn same_ring(a: &Arc<ExtensionRing>, b: &Arc<ExtensionRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `a * b mod g`, where `g` is the monic modulus and `reduce` folds a
/// coefficient into its canonical range.
pub(crate) fn mul_mod_modulus<T: Clone>(
    a: &[T],
    b: &[T],
    modulus: &[i64],
    zero: T,
    mul: impl Fn(&T, &T) -> T,
    add: impl Fn(&T, &T) -> T,
    sub_scaled: impl Fn(&T, &T, i64) -> T,
) -> Vec<T> {
    let m = modulus.len() - 1;
    let mut prod = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = add(&prod[i + j], &mul(x, y));
        }
    }
    for i in (m..prod.len()).rev() {
        let c = prod[i].clone();
        for (k, &g) in modulus[..m].iter().enumerate() {
            let idx = i - m + k;
            prod[idx] = sub_scaled(&prod[idx], &c, g);
        }
        prod[i] = zero.clone();
    }
    prod.truncate(m);
    prod.resize(m, zero);
    prod
}

impl PadicScalar {
    pub fn new(ring: &Arc<ExtensionRing>, coords: Vec<i128>) -> Result<Self> {
        if coords.len() != ring.degree() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a ring of degree {}",
                coords.len(),
                ring.degree()
            )));
        }
        let m = ring.context().modulus();
        Ok(PadicScalar {
            ring: ring.clone(),
            coords: coords.into_iter().map(|c| c.rem_euclid(m)).collect(),
        })
    }

    pub fn from_i128(ring: &Arc<ExtensionRing>, n: i128) -> Self {
        let mut coords = vec![0; ring.degree()];
        coords[0] = n;
        PadicScalar::new(ring, coords).expect("coordinate count matches degree")
    }

    pub fn coords(&self) -> &[i128] {
        &self.coords
    }

    /// Coordinates lifted to `(-p^N/2, p^N/2]`.
    pub fn symmetric_coords(&self) -> Vec<i128> {
        let m = self.modulus();
        self.coords.iter().map(|&c| symmetric(c, m)).collect()
    }

    /// The representative in `[0, p^N)` of a prime-ring element.
    pub fn residue(&self) -> i128 {
        self.coords[0]
    }

    fn modulus(&self) -> i128 {
        self.ring.context().modulus()
    }

    /// Base-p digits of every coordinate, `N` digits each.
    pub fn digits(&self) -> Vec<Vec<u64>> {
        let p = self.ring.p() as i128;
        self.coords
            .iter()
            .map(|&c| {
                let mut c = c;
                (0..self.ring.precision())
                    .map(|_| {
                        let d = (c % p) as u64;
                        c /= p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_digits(ring: &Arc<ExtensionRing>, digits: &[Vec<u64>]) -> Result<Self> {
        let p = ring.p();
        let coords = digits
            .iter()
            .map(|ds| {
                if ds.len() > ring.precision() as usize || ds.iter().any(|&d| d >= p) {
                    return Err(Error::InvalidInput(format!("invalid base-{p} digit list {ds:?}")));
                }
                Ok(ds.iter().rev().fold(0i128, |acc, &d| acc * p as i128 + d as i128))
            })
            .collect::<Result<Vec<_>>>()?;
        PadicScalar::new(ring, coords)
    }

    /// Divides every coordinate by `p`. The top digit of the result is
    /// unknown and set to zero.
    pub fn divide_by_p(&self) -> Result<Self> {
        let p = self.ring.p() as i128;
        if self.coords.iter().any(|c| c % p != 0) {
            return Err(Error::NotIntegral(format!("{self} is not divisible by p")));
        }
        PadicScalar::new(&self.ring, self.coords.iter().map(|c| c / p).collect())
    }

    /// Division by the local parameter; loses one p-adic digit in the
    /// Eisenstein case (and the top digit otherwise).
    pub fn divide_by_uniformizer(&self) -> Result<Self> {
        match self.ring.kind() {
            RingKind::Eisenstein => {
                // x^{-1} = -(x^{e-1} + g_{e-1} x^{e-2} + ... + g_1) / g_0
                let g = self.ring.modulus();
                let e = self.ring.degree();
                let h: Vec<i128> = (0..e).map(|i| g[i + 1] as i128).collect();
                let scaled = self.mul_ref(&PadicScalar::new(&self.ring, h)?).divide_by_p()?;
                let unit = (g[0] as i128) / self.ring.p() as i128;
                let inv = inv_mod_i128(-unit, self.modulus()).expect("Eisenstein constant is p times a unit");
                Ok(scaled.scale_int(inv))
            }
            _ => self.divide_by_p(),
        }
    }

    /// Division by `pi^k`, returning the quotient and the number of p-adic
    /// digits lost. In the Eisenstein case `pi^e = p * eps` with `eps` a unit.
    pub fn divide_by_pi_power(&self, k: u32) -> Result<(Self, u32)> {
        let e = self.ring.ramification_index() as u32;
        if e == 1 {
            let pk = self.ring.context().p_pow(k);
            if self.coords.iter().any(|c| c % pk != 0) {
                return Err(Error::NotIntegral(format!("{self} is not divisible by p^{k}")));
            }
            let q = PadicScalar::new(&self.ring, self.coords.iter().map(|c| c / pk).collect())?;
            return Ok((q, k));
        }
        let (full, rest) = (k / e, k % e);
        let mut x = self.clone();
        if full > 0 {
            // eps = -(g_0 + g_1 x + ... + g_{e-1} x^{e-1}) / p
            let g = self.ring.modulus();
            let p = self.ring.p() as i128;
            let eps = PadicScalar::new(&self.ring, g[..e as usize].iter().map(|&c| -(c as i128) / p).collect())?;
            let eps_inv = eps.inverse().expect("Eisenstein unit");
            for _ in 0..full {
                x = x.divide_by_p()?.mul_ref(&eps_inv);
            }
        }
        for _ in 0..rest {
            x = x.divide_by_uniformizer()?;
        }
        Ok((x, full + rest))
    }

    pub fn scale_int(&self, c: i128) -> Self {
        let m = self.modulus();
        PadicScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|&x| (x * c.rem_euclid(m)).rem_euclid(m)).collect(),
        }
    }

    /// Multiplication matrix of `self` on the basis `1, x, ..., x^{m-1}`:
    /// column `j` holds the coordinates of `self * x^j`.
    fn multiplication_matrix(&self) -> Vec<Vec<i128>> {
        let m = self.ring.degree();
        let cols: Vec<Vec<i128>> = (0..m)
            .map(|j| self.mul_ref(&PadicScalar::basis(&self.ring, j)).coords)
            .collect();
        (0..m).map(|i| (0..m).map(|j| cols[j][i]).collect()).collect()
    }

    /// Congruence modulo `p^k` (`k <= N`).
    pub fn congruent_mod_p_pow(&self, other: &Self, k: u32) -> bool {
        let pk = self.ring.context().p_pow(k.min(self.ring.precision()));
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| (a - b).rem_euclid(pk) == 0)
    }

    pub fn to_json(&self) -> ScalarJson {
        ScalarJson {
            ring: self.ring.spec(),
            digits: self.digits(),
        }
    }
}

/// Solves `A y = b` modulo `p^N` with unit pivots, or `None` if `A` is not
/// invertible modulo `p`.
fn solve_mod(mut a: Vec<Vec<i128>>, mut b: Vec<i128>, p: u64, modulus: i128) -> Option<Vec<i128>> {
    let n = b.len();
    let p = p as i128;
    for k in 0..n {
        let pivot = (k..n).find(|&i| a[i][k] % p != 0)?;
        a.swap(k, pivot);
        b.swap(k, pivot);
        let inv = inv_mod_i128(a[k][k], modulus)?;
        for j in 0..n {
            a[k][j] = (a[k][j] * inv).rem_euclid(modulus);
        }
        b[k] = (b[k] * inv).rem_euclid(modulus);
        for i in 0..n {
            if i != k && a[i][k] != 0 {
                let f = a[i][k];
                for j in 0..n {
                    a[i][j] = (a[i][j] - f * a[k][j]).rem_euclid(modulus);
                }
                b[i] = (b[i] - f * b[k]).rem_euclid(modulus);
            }
        }
    }
    Some(b)
}

impl PartialEq for PadicScalar {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.coords == other.coords
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.symmetric_coords();
        if c.len() == 1 {
            write!(f, "{} + O({}^{})", c[0], self.ring.p(), self.ring.precision())
        } else {
            write!(f, "{:?} + O({}^{})", c, self.ring.p(), self.ring.precision())
        }
    }
}

impl RingElem for PadicScalar {
    fn zero_like(&self) -> Self {
        PadicScalar::zero(&self.ring)
    }

    fn one_like(&self) -> Self {
        PadicScalar::from_i64(&self.ring, 1)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        let m = self.modulus();
        PadicScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| (a + b) % m).collect(),
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        let m = self.modulus();
        PadicScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| (a - b).rem_euclid(m)).collect(),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        let m = self.modulus();
        if self.coords.len() == 1 {
            return PadicScalar {
                ring: self.ring.clone(),
                coords: vec![(self.coords[0] * rhs.coords[0]) % m],
            };
        }
        let coords = mul_mod_modulus(
            &self.coords,
            &rhs.coords,
            self.ring.modulus(),
            0i128,
            |a, b| (a * b) % m,
            |a, b| (a + b) % m,
            |a, c, g| (a - c * (g as i128).rem_euclid(m) % m).rem_euclid(m),
        );
        PadicScalar {
            ring: self.ring.clone(),
            coords,
        }
    }

    fn neg_ref(&self) -> Self {
        let m = self.modulus();
        PadicScalar {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|a| (m - a) % m).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl Scalar for PadicScalar {
    const BACKEND: Backend = Backend::Padic;

    fn ring(&self) -> &Arc<ExtensionRing> {
        &self.ring
    }

    fn zero(ring: &Arc<ExtensionRing>) -> Self {
        PadicScalar {
            ring: ring.clone(),
            coords: vec![0; ring.degree()],
        }
    }

    fn from_i64(ring: &Arc<ExtensionRing>, n: i64) -> Self {
        PadicScalar::from_i128(ring, n as i128)
    }

    fn basis(ring: &Arc<ExtensionRing>, i: usize) -> Self {
        let mut x = PadicScalar::zero(ring);
        if ring.degree() == 1 {
            // Prime ring: x reduces to -g_0.
            let xi = PadicScalar::from_i64(ring, -ring.modulus()[0]);
            return xi.pow_u(i as u64);
        }
        if i < ring.degree() {
            x.coords[i] = 1;
            return x;
        }
        PadicScalar::basis(ring, 1).pow_u(i as u64)
    }

    fn valuation(&self) -> Valuation {
        let p = self.ring.p();
        let e = self.ring.ramification_index() as i64;
        let n = self.ring.precision() as i64;
        let best = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| Ratio::new(v_p(c, p) as i64 * e + if e > 1 { i as i64 } else { 0 }, e))
            .min();
        match best {
            Some(v) if v < Ratio::from_integer(n) => Valuation::Finite(v),
            _ => Valuation::Infinite,
        }
    }

    fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let m = self.ring.degree();
        let mut rhs = vec![0i128; m];
        rhs[0] = 1;
        let sol = solve_mod(self.multiplication_matrix(), rhs, self.ring.p(), self.modulus())?;
        Some(PadicScalar {
            ring: self.ring.clone(),
            coords: sol,
        })
    }

    fn coordinates(&self) -> Vec<Self> {
        let prime = self.ring.prime_ring();
        self.coords.iter().map(|&c| PadicScalar::from_i128(&prime, c)).collect()
    }

    fn to_exact(&self) -> ExactScalar {
        ExactScalar::from_padic(self)
    }

    fn to_padic(&self) -> Result<PadicScalar> {
        Ok(self.clone())
    }

    fn embed(&self, ring: &Arc<ExtensionRing>) -> Result<Self> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        if !self.ring.is_prime_ring() || self.ring.context() != ring.context() {
            return Err(Error::RingMismatch(format!("cannot embed {} into {}", self.ring, ring)));
        }
        Ok(PadicScalar::from_i128(ring, self.coords[0]))
    }
}

/// JSON form `{"ring": {...}, "digits": [[c0 digits], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub ring: RingSpec,
    pub digits: Vec<Vec<u64>>,
}

impl ScalarJson {
    pub fn build(&self) -> Result<PadicScalar> {
        let ring = self.ring.build()?;
        PadicScalar::from_digits(&ring, &self.digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicContext;

    fn zp() -> Arc<ExtensionRing> {
        ExtensionRing::prime(PadicContext::new(5, 6).unwrap())
    }

    #[test]
    fn valuations_of_named_elements() {
        let r = zp();
        assert_eq!(PadicScalar::from_i64(&r, 5).valuation(), Valuation::int(1));
        assert_eq!(PadicScalar::from_i64(&r, 1).valuation(), Valuation::int(0));
        assert_eq!(PadicScalar::from_i64(&r, 0).valuation(), Valuation::Infinite);
        let ctx = PadicContext::new(5, 6).unwrap();
        let eis = ExtensionRing::eisenstein(ctx, vec![-5, 0, 1]).unwrap();
        let pi = PadicScalar::uniformizer(&eis);
        assert_eq!(pi.valuation(), Valuation::Finite(Ratio::new(1, 2)));
        assert_eq!(pi.mul_ref(&pi).valuation(), Valuation::int(1));
    }

    #[test]
    fn unit_inverse_in_unramified_ring() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let r = ExtensionRing::unramified(ctx, vec![-2, 0, 1]).unwrap();
        let a = PadicScalar::new(&r, vec![3, 7]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul_ref(&inv).is_one());
        assert!(PadicScalar::new(&r, vec![5, 10]).unwrap().inverse().is_none());
    }

    #[test]
    fn uniformizer_division() {
        let ctx = PadicContext::new(5, 8).unwrap();
        let eis = ExtensionRing::eisenstein(ctx, vec![-5, 0, 1]).unwrap();
        let a = PadicScalar::new(&eis, vec![3, 4]).unwrap();
        let pi = PadicScalar::uniformizer(&eis);
        let back = a.mul_ref(&pi).divide_by_uniformizer().unwrap();
        assert!(back.congruent_mod_p_pow(&a, 7));
    }

    #[test]
    fn digits_roundtrip() {
        let r = zp();
        let a = PadicScalar::from_i64(&r, -7);
        assert_eq!(PadicScalar::from_digits(&r, &a.digits()).unwrap(), a);
    }
}
