use serde::Serialize;

use super::series::PadicSeries;
use crate::algebra::{RingElem, Scalar};
use crate::error::{Error, Result};
use crate::padic::PadicScalar;

/// `f = pi^mu * unit * distinguished` modulo `(p^{N - precision_loss}, T^{D+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassData {
    pub mu: u32,
    pub lambda: usize,
    /// Monic of degree `lambda`, lower coefficients in `pi O`.
    pub distinguished: PadicSeries,
    pub unit: PadicSeries,
    /// p-adic digits lost dividing out `pi^mu`.
    pub precision_loss: u32,
}

impl WeierstrassData {
    pub fn reconstruct(&self) -> PadicSeries {
        let ring = self.unit.ring();
        let pi_mu = PadicScalar::uniformizer(ring).pow_u(self.mu as u64);
        self.unit.mul_ref(&self.distinguished).scale(&pi_mu)
    }

    pub fn summary(&self) -> WeierstrassSummary {
        WeierstrassSummary {
            mu: self.mu,
            lambda: self.lambda,
            distinguished: self.distinguished.coeffs().iter().map(|c| c.symmetric_coords()[0] as i64).collect(),
            unit: self.unit.coeffs().iter().map(|c| c.symmetric_coords()[0] as i64).collect(),
            precision_loss: self.precision_loss,
        }
    }
}

/// Serializable view over the prime ring (first coordinates only).
#[derive(Debug, Clone, Serialize)]
pub struct WeierstrassSummary {
    pub mu: u32,
    pub lambda: usize,
    pub distinguished: Vec<i64>,
    pub unit: Vec<i64>,
    pub precision_loss: u32,
}

/// First index whose coefficient is a unit.
fn unit_index(f: &PadicSeries) -> Option<usize> {
    f.coeffs().iter().position(Scalar::is_unit)
}

/// Working window for division by a series with `lambda` as its first unit
/// index. Each step of the division loop loses its top `lambda` quotient
/// terms, and the error moves `lambda` places down per step while gaining a
/// factor `pi`; `(lambda + 1) e N + 1` spare terms beyond `D + lambda` keep
/// everything up to `T^D` exact modulo `p^N`.
fn division_window(ring: &crate::padic::ExtensionRing, d: usize, lambda: usize) -> usize {
    d + lambda + (lambda + 1) * ring.ramification_index() * ring.precision() as usize + 1
}

/// Weierstrass division of `f` by `g = A + T^lambda B` inside the window of
/// `f`: iterates `q += tau(f - q g) B^{-1}`, where `tau` drops the terms
/// below `T^lambda` and shifts down. Each step gains one power of `pi`.
fn division_loop(f: &PadicSeries, g: &PadicSeries, lambda: usize) -> Result<(PadicSeries, PadicSeries)> {
    let w = f.truncation();
    let ring = f.ring().clone();
    let b_inv = g
        .shift_down(lambda)
        .inverse()
        .expect("coefficient at lambda is a unit");
    let max_steps = ring.ramification_index() * ring.precision() as usize + 2;
    let mut q = PadicSeries::zero(&ring, w);
    let mut h = f.clone();
    for _ in 0..=max_steps {
        let tau = h.shift_down(lambda);
        if tau.is_zero() {
            return Ok((q, h));
        }
        let step = tau.mul_ref(&b_inv).with_truncation(w);
        q = q.add_ref(&step);
        h = f.sub_ref(&q.mul_ref(g));
    }
    Err(Error::PrecisionExhausted("Weierstrass division did not converge".into()))
}

impl PadicSeries {
    /// `f = pi^mu * U * P` with `P` distinguished of degree `lambda` and `U`
    /// a unit. The window is read as a polynomial, so `U` is the exact
    /// polynomial quotient of `f / pi^mu` by `P`.
    pub fn weierstrass_prepare(&self) -> Result<WeierstrassData> {
        let (mu, _) = self.mu_lambda()?;
        let mu = mu as u32;
        let ring = self.ring().clone();
        let d = self.truncation();
        let mut loss = 0;
        let g = if mu == 0 {
            self.clone()
        } else {
            let mut coeffs = Vec::with_capacity(self.coeffs().len());
            for c in self.coeffs() {
                let (q, l) = c.divide_by_pi_power(mu)?;
                loss = loss.max(l);
                coeffs.push(q);
            }
            PadicSeries::new(&ring, d, coeffs)?
        };
        let lambda = unit_index(&g).expect("a coefficient of minimal valuation is a unit after division");
        if lambda >= d {
            return Err(Error::LambdaExceedsTruncation { lambda, truncation: d });
        }
        let distinguished = distinguished_factor(&g, lambda)?.with_truncation(d);
        let (unit, rem) = poly_div_monic(&g, &distinguished);
        if !rem.is_zero() {
            return Err(Error::PrecisionExhausted(
                "distinguished factor does not divide within precision".into(),
            ));
        }
        Ok(WeierstrassData {
            mu,
            lambda,
            distinguished,
            unit,
            precision_loss: loss,
        })
    }

    /// Weierstrass division `f = q g + r` with `deg r < lambda(g)`. The
    /// divisor needs a unit coefficient inside its window.
    pub fn divide(&self, g: &PadicSeries) -> Result<(PadicSeries, PadicSeries)> {
        let lambda = unit_index(g).ok_or(Error::DivisorZeroWithinPrecision)?;
        let d = self.truncation().min(g.truncation());
        let w = division_window(g.ring(), d, lambda);
        let (q, r) = division_loop(&self.with_truncation(w), &g.with_truncation(w), lambda)?;
        Ok((q.with_truncation(d), r.with_truncation(d)))
    }
}

/// Monic `P` of degree `lambda` dividing the polynomial `g` (first unit
/// coefficient at `lambda`). Starting from `T^lambda`, each step replaces
/// `P` by `P + (R h^{-1} mod P)`, where `R = g mod P` and `h = g / T^lambda`;
/// since `g / P = h mod (pi, P)` the remainder gains a power of `pi` per step.
fn distinguished_factor(g: &PadicSeries, lambda: usize) -> Result<PadicSeries> {
    let ring = g.ring().clone();
    // room for R h^{-1}, of degree below 2 lambda
    let w = 2 * g.truncation().max(lambda) + 2;
    let gw = g.with_truncation(w);
    let h_inv = gw
        .shift_down(lambda)
        .inverse()
        .expect("coefficient at lambda is a unit")
        .low_part(lambda)
        .with_truncation(w);
    let mut p = PadicSeries::monomial(PadicScalar::one(&ring), lambda, w);
    for _ in 0..=ring.ramification_index() * ring.precision() as usize + 1 {
        let (_, r) = poly_div_monic(&gw, &p);
        if r.is_zero() {
            return Ok(p);
        }
        let (_, delta) = poly_div_monic(&r.mul_ref(&h_inv), &p);
        p = p.add_ref(&delta);
    }
    Err(Error::PrecisionExhausted("distinguished factor did not converge".into()))
}

/// Polynomial division by a monic polynomial inside the window of `f`.
fn poly_div_monic(f: &PadicSeries, m: &PadicSeries) -> (PadicSeries, PadicSeries) {
    let ring = f.ring().clone();
    let d = f.truncation();
    let dm = m.degree().expect("monic divisor is nonzero");
    let mut rem: Vec<PadicScalar> = f.coeffs().to_vec();
    let n = rem.len();
    if n <= dm {
        return (PadicSeries::zero(&ring, d), f.clone());
    }
    let mut quot = vec![PadicScalar::zero(&ring); n - dm];
    for k in (0..n - dm).rev() {
        let c = rem[k + dm].clone();
        if c.is_zero() {
            continue;
        }
        for (i, mi) in m.coeffs().iter().enumerate() {
            rem[k + i] = rem[k + i].sub_ref(&c.mul_ref(mi));
        }
        quot[k] = c;
    }
    rem.truncate(dm);
    (
        PadicSeries::new(&ring, d, quot).expect("same ring"),
        PadicSeries::new(&ring, d, rem).expect("same ring"),
    )
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::padic::{ExtensionRing, PadicContext};

    fn zp() -> Arc<ExtensionRing> {
        ExtensionRing::prime(PadicContext::new(5, 20).unwrap())
    }

    #[test]
    fn already_distinguished() {
        let r = zp();
        let f = PadicSeries::from_i64s(&r, 32, &[5, 1]);
        let w = f.weierstrass_prepare().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 1));
        assert_eq!(w.distinguished, f);
        assert_eq!(w.unit, PadicSeries::one(&r, 32));
    }

    #[test]
    fn pure_power_of_p() {
        let r = zp();
        let f = PadicSeries::from_i64s(&r, 32, &[5, 5]);
        let w = f.weierstrass_prepare().unwrap();
        assert_eq!((w.mu, w.lambda), (1, 0));
        assert_eq!(w.distinguished, PadicSeries::one(&r, 32));
        assert_eq!(w.unit, PadicSeries::from_i64s(&r, 32, &[1, 1]));
    }

    #[test]
    fn cubic_reconstruction() {
        let r = zp();
        let f = PadicSeries::from_i64s(&r, 32, &[25, 5, 1, 1]);
        let w = f.weierstrass_prepare().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 2));
        assert_eq!(w.reconstruct(), f);
        for c in &w.distinguished.coeffs()[..2] {
            assert!(!c.is_unit());
        }
    }

    #[test]
    fn long_distinguished_part() {
        let r = zp();
        // first unit coefficient far from the constant term, dense tail
        let mut c = vec![5i64, 10, 25, 5, 15, 5, 5, 20, 5, 10, 5, 5];
        c.extend([3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7]);
        let f = PadicSeries::from_i64s(&r, 32, &c);
        let w = f.weierstrass_prepare().unwrap();
        assert_eq!((w.mu, w.lambda), (0, 12));
        assert_eq!(w.reconstruct(), f);
        let (q, rem) = f.divide(&w.distinguished).unwrap();
        assert!(rem.is_zero());
        assert_eq!(q, w.unit);
    }

    #[test]
    fn errors() {
        let r = zp();
        assert_eq!(PadicSeries::zero(&r, 8).weierstrass_prepare(), Err(Error::ZeroWithinPrecision));
        let f = PadicSeries::monomial(PadicScalar::one(&r), 8, 8);
        assert!(matches!(f.weierstrass_prepare(), Err(Error::LambdaExceedsTruncation { lambda: 8, .. })));
    }

    #[test]
    fn division_examples() {
        let r = zp();
        let t = PadicSeries::variable(&r, 8);
        let (q, rem) = t.mul_ref(&t).divide(&t).unwrap();
        assert_eq!(q, t);
        assert!(rem.is_zero());
        let one = PadicSeries::one(&r, 8);
        let g = PadicSeries::from_i64s(&r, 8, &[5, 1]);
        let (q, rem) = one.divide(&g).unwrap();
        assert_eq!(q.mul_ref(&g).add_ref(&rem), one);
        let f = PadicSeries::from_i64s(&r, 8, &[3, 1, 4, 1, 5]);
        let (q, rem) = f.divide(&one).unwrap();
        assert_eq!((q, rem.is_zero()), (f.clone(), true));
        assert_eq!(f.divide(&PadicSeries::from_i64s(&r, 8, &[5, 10])), Err(Error::DivisorZeroWithinPrecision));
    }

    #[test]
    fn eisenstein_preparation() {
        let ctx = PadicContext::new(5, 10).unwrap();
        let o = ExtensionRing::eisenstein(ctx, vec![-5, 0, 1]).unwrap();
        let pi = PadicScalar::uniformizer(&o);
        // f = pi * (pi + T) * (1 + T)
        let f = PadicSeries::new(&o, 16, vec![pi.clone(), PadicScalar::one(&o)])
            .unwrap()
            .mul_ref(&PadicSeries::one_plus_t(&o, 16))
            .scale(&pi);
        let w = f.weierstrass_prepare().unwrap();
        assert_eq!((w.mu, w.lambda), (1, 1));
        let back = w.reconstruct();
        for i in 0..=16 {
            assert!(back.coeff(i).congruent_mod_p_pow(&f.coeff(i), ctx.precision() - w.precision_loss - 1));
        }
    }
}
