use std::sync::Arc;

use super::ring::{inv_mod_i128, ExtensionRing, PadicContext};
use super::scalar::PadicScalar;
use crate::algebra::RingElem;
use crate::error::{Error, Result};

/// The two roots of `X^2 - a_p X + p`: the unit root `u` and `w = p / u`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitRoot {
    pub u: PadicScalar,
    pub w: PadicScalar,
}

/// Newton iteration for the unit root of `X^2 - a_p X + p` starting from
/// `u = a_p mod p`.
pub fn hensel_unit_root(p: u64, a_p: i64, precision: u32) -> Result<UnitRoot> {
    let ctx = PadicContext::new(p, precision)?;
    let m = ctx.modulus();
    let a = (a_p as i128).rem_euclid(m);
    if a % p as i128 == 0 {
        return Err(Error::Supersingular(a_p));
    }
    let f = |x: i128| ((x * x) % m - (a * x) % m + p as i128).rem_euclid(m);
    let mut u = a % p as i128;
    // Quadratic convergence: precision doubles per step.
    for _ in 0..=64 - precision.leading_zeros() {
        if f(u) == 0 {
            break;
        }
        let deriv = (2 * u - a).rem_euclid(m);
        let inv = inv_mod_i128(deriv, m).expect("derivative is a unit at the unit root");
        u = (u - f(u) * inv % m).rem_euclid(m);
    }
    if f(u) != 0 {
        return Err(Error::PrecisionExhausted("Newton iteration did not converge".into()));
    }
    let ring: Arc<ExtensionRing> = ExtensionRing::prime(ctx);
    let u = PadicScalar::from_i128(&ring, u);
    let w = PadicScalar::from_i128(&ring, a).sub_ref(&u);
    Ok(UnitRoot { u, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Scalar, Valuation};

    #[test]
    fn roots_mod_25() {
        let r = hensel_unit_root(5, 1, 2).unwrap();
        assert_eq!(r.u.residue(), 21);
        let r = hensel_unit_root(5, 2, 2).unwrap();
        assert_eq!(r.u.residue(), 12);
    }

    #[test]
    fn root_identities() {
        for a in [1i64, 2, 3, 4, 6, -1, 11] {
            let r = hensel_unit_root(5, a, 20).unwrap();
            let ring = r.u.ring().clone();
            let sum = r.u.add_ref(&r.w);
            let prod = r.u.mul_ref(&r.w);
            assert_eq!(sum, PadicScalar::from_i64(&ring, a));
            assert_eq!(prod, PadicScalar::from_i64(&ring, 5));
            assert_eq!(r.u.valuation(), Valuation::int(0));
            assert_eq!(r.w.valuation(), Valuation::int(1));
            assert_eq!(r.u.residue() % 5, (a as i128).rem_euclid(5));
        }
    }

    #[test]
    fn supersingular_rejected() {
        assert_eq!(hensel_unit_root(5, 10, 5), Err(Error::Supersingular(10)));
    }
}
