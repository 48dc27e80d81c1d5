use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use super::artin::ArtinRep;
use super::element::CrossedElement;
use super::ore::ore_s_test;
use crate::algebra::{Backend, RingElem, Scalar};
use crate::error::{Error, Result};
use crate::iwasawa_series::{det_series, IwasawaSeries, LPoly};
use crate::linalg::Matrix;
use crate::padic::ExactScalar;

/// Window needed to hold `Phi_rho(x)` exactly when `x` has polynomial
/// coefficients on the rational backend.
fn output_window<S: Scalar>(x: &CrossedElement<S>) -> usize {
    let d = x.truncation();
    if S::BACKEND == Backend::Padic || x.coeffs().iter().any(IwasawaSeries::is_truncated) {
        return d;
    }
    let g = x.group();
    x.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(q, a)| a.degree().map(|deg| deg * g.pk() as usize + g.weight(q) as usize))
        .max()
        .unwrap_or(0)
        .max(d)
}

/// `sum_q a_q(T_0) s(q) -> sum_q a_q(u^{p^k} - 1) u^{w(q)} rho(q)` with
/// `u = c (1 + T)`, `c` the twisting character value (1 if absent).
pub fn phi_rho<S: Scalar>(x: &CrossedElement<S>, rho: &ArtinRep<S>) -> Result<Matrix<IwasawaSeries<S>>> {
    let g = x.group();
    if !(Arc::ptr_eq(g, rho.group()) || **g == **rho.group()) {
        return Err(Error::DimensionMismatch("element and representation over different groups".into()));
    }
    let ring = rho.ring();
    let d = output_window(x);
    let mut u = IwasawaSeries::<S>::one_plus_t(ring, d);
    if let Some(c) = rho.gamma_character() {
        u = u.scale(c);
    }
    let t0 = u.pow_u(g.pk()).sub_ref(&IwasawaSeries::one(ring, d));
    let n = rho.dim();
    let mut out = Matrix::filled(n, n, IwasawaSeries::zero(ring, d));
    for (q, a) in x.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let coeffs = a.coeffs().iter().map(|c| c.embed(ring)).collect::<Result<Vec<_>>>()?;
        let a = IwasawaSeries::new(ring, a.truncation(), coeffs)?
            .mark_truncated(a.is_truncated())
            .with_truncation(d);
        let s = a.compose(&t0).mul_ref(&u.pow_u(g.weight(q)));
        let m = rho.matrix(q);
        for i in 0..n {
            for j in 0..n {
                let e = &m[(i, j)];
                if !e.is_zero() {
                    out[(i, j)] = out[(i, j)].add_ref(&s.scale(e));
                }
            }
        }
    }
    Ok(out)
}

/// Base change to `Lambda(Gamma)`: `s(q) -> (1 + T)^{w(q)}`,
/// `T_0 -> (1 + T)^{p^k} - 1`.
pub fn gamma_pushforward<S: Scalar>(x: &CrossedElement<S>) -> Result<IwasawaSeries<S>> {
    let rho = ArtinRep::<S>::trivial(x.group(), x.ring());
    Ok(phi_rho(x, &rho)?[(0, 0)].clone())
}

/// `p^{-p_exponent} num den^{-1}`, a representative of a class in
/// `K_1(Lambda(G)_{S*})`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedElement<S: Scalar> {
    pub numerator: CrossedElement<S>,
    pub denominator: CrossedElement<S>,
    pub p_exponent: i64,
}

impl<S: Scalar> LocalizedElement<S> {
    /// On the rational backend the denominator is checked against `S`.
    pub fn new(numerator: CrossedElement<S>, denominator: CrossedElement<S>, p_exponent: i64) -> Result<Self> {
        if numerator.group() != denominator.group() {
            return Err(Error::DimensionMismatch("numerator and denominator over different groups".into()));
        }
        if S::BACKEND == Backend::Rational && !ore_s_test(&denominator)?.in_s {
            return Err(Error::NotInS("denominator fails the Ore-set test".into()));
        }
        Ok(LocalizedElement {
            numerator,
            denominator,
            p_exponent,
        })
    }

    /// The class of `f` itself.
    pub fn from_element(f: CrossedElement<S>) -> Self {
        let one = f.one_like();
        LocalizedElement {
            numerator: f,
            denominator: one,
            p_exponent: 0,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // K_1 is abelian, so [a b^-1][c d^-1] = [ac][bd]^-1
        LocalizedElement {
            numerator: self.numerator.mul_ref(&rhs.numerator),
            denominator: self.denominator.mul_ref(&rhs.denominator),
            p_exponent: self.p_exponent + rhs.p_exponent,
        }
    }
}

/// `Phi'_rho(xi) = p^{-p_exponent} num / den`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiDet<S: Scalar> {
    pub num: IwasawaSeries<S>,
    pub den: IwasawaSeries<S>,
    /// Already multiplied by `dim rho`.
    pub p_exponent: i64,
}

pub fn phi_rho_det<S: Scalar>(xi: &LocalizedElement<S>, rho: &ArtinRep<S>) -> Result<PhiDet<S>> {
    let num = det_series(&phi_rho(&xi.numerator, rho)?)?;
    let den = det_series(&phi_rho(&xi.denominator, rho)?)?;
    if den.is_zero() {
        return Err(Error::NotInS("determinant of the denominator image vanishes".into()));
    }
    Ok(PhiDet {
        num,
        den,
        p_exponent: xi.p_exponent * rho.dim() as i64,
    })
}

/// `xi(rho)`: the value at `T = 0`, or 0, or infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum XiValue {
    Zero,
    Infinite,
    Finite { value: ExactScalar, valuation: Ratio<i64> },
}

impl XiValue {
    /// `|xi(rho)|_p^{-m}` as a power of `p`, with `m = [L : Q_p]`.
    pub fn chi_exponent(&self, m: usize) -> Option<i64> {
        match self {
            XiValue::Finite { valuation, .. } => {
                let e = valuation * Ratio::from_integer(m as i64);
                e.is_integer().then(|| e.to_integer())
            }
            _ => None,
        }
    }
}

/// `Phi'_rho(xi)` as `p^{-p_exponent} num / den` with `num`, `den` coprime
/// polynomials over `L` (the canonical fraction, up to a scalar moved into
/// the constants).
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPhi {
    pub num: LPoly,
    pub den: LPoly,
    pub p_exponent: i64,
}

impl PhiDet<ExactScalar> {
    pub fn reduce(&self) -> Result<ReducedPhi> {
        let num = LPoly::from_series(&self.num)?;
        let den = LPoly::from_series(&self.den)?;
        if den.is_zero() {
            return Err(Error::NotInS("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(ReducedPhi {
                num,
                den: LPoly::one(den.ring()),
                p_exponent: 0,
            });
        }
        let g = num.gcd(&den);
        Ok(ReducedPhi {
            num: num.exact_div(&g).expect("gcd divides"),
            den: den.exact_div(&g).expect("gcd divides"),
            p_exponent: self.p_exponent,
        })
    }
}

impl ReducedPhi {
    pub fn value_at_zero(&self) -> XiValue {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return XiValue::Infinite;
        }
        let n0 = self.num.coeff(0);
        if n0.is_zero() {
            return XiValue::Zero;
        }
        let value = n0
            .div_ref(&d0)
            .expect("nonzero")
            .scale_p_power(-self.p_exponent);
        let valuation = value.valuation().finite().expect("nonzero");
        XiValue::Finite { value, valuation }
    }

    /// Total `mu` in units of `v(pi)`, counting the `p`-power.
    pub fn mu_total(&self) -> Result<i64> {
        let e = self.num.ring().ramification_index() as i64;
        Ok(self.num.mu_lambda()?.0 - self.den.mu_lambda()?.0 - self.p_exponent * e)
    }

    pub fn integrality(&self) -> Result<Integrality> {
        if self.num.is_zero() {
            return Err(Error::ZeroElement);
        }
        let (_, lam_num) = self.num.mu_lambda()?;
        let (_, lam_den) = self.den.mu_lambda()?;
        let mu = self.mu_total()?;
        let in_a2 = lam_den == 0;
        let in_a1 = in_a2 && mu >= 0;
        Ok(Integrality {
            in_a1,
            in_a2,
            unit_a1: in_a1 && lam_num == 0 && mu == 0,
            unit_a2: in_a2 && lam_num == 0,
        })
    }
}

/// Membership of `Phi'_rho(xi)` in `A_1 = Lambda_O(Gamma)`,
/// `A_2 = Lambda_O(Gamma)[1/p]` and their unit groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Integrality {
    pub in_a1: bool,
    pub in_a2: bool,
    pub unit_a1: bool,
    pub unit_a2: bool,
}

pub fn evaluate_xi(xi: &LocalizedElement<ExactScalar>, rho: &ArtinRep<ExactScalar>) -> Result<XiValue> {
    Ok(phi_rho_det(xi, rho)?.reduce()?.value_at_zero())
}

pub fn integrality_check(xi: &LocalizedElement<ExactScalar>, rho: &ArtinRep<ExactScalar>) -> Result<Integrality> {
    phi_rho_det(xi, rho)?.reduce()?.integrality()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed_product::FiniteLevelGroup;
    use crate::iwasawa_series::ExactSeries;
    use crate::padic::{ExtensionRing, PadicContext};

    type E = CrossedElement<ExactScalar>;

    fn zp() -> Arc<ExtensionRing> {
        ExtensionRing::prime(PadicContext::new(5, 10).unwrap())
    }

    fn sign(g: &Arc<FiniteLevelGroup>, r: &Arc<ExtensionRing>) -> ArtinRep<ExactScalar> {
        ArtinRep::characters(g, r, vec![ExactScalar::from_i64(r, 1), ExactScalar::from_i64(r, -1)]).unwrap()
    }

    #[test]
    fn sign_character_example() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::cyclic(5, 2).unwrap());
        let x = E::section(&g, 1, &r, 8).sub_ref(&E::scalar(&g, ExactSeries::one_plus_t(&r, 8)));
        let m = phi_rho(&x, &sign(&g, &r)).unwrap();
        assert_eq!(m[(0, 0)], ExactSeries::from_i64s(&r, 8, &[-2, -1]));
        let xi = LocalizedElement::from_element(x);
        let v = evaluate_xi(&xi, &sign(&g, &r)).unwrap();
        assert_eq!(
            v,
            XiValue::Finite {
                value: ExactScalar::from_i64(&r, -2),
                valuation: 0.into()
            }
        );
    }

    #[test]
    fn p_maps_to_scalar_matrix() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::symmetric3(5).unwrap());
        let rho = crate::crossed_product::standard_s3(&g, &r).unwrap();
        let p = E::scalar(&g, ExactSeries::from_i64s(&r, 8, &[5]));
        let m = phi_rho(&p, &rho).unwrap();
        assert_eq!(m, Matrix::identity(2, &ExactSeries::zero(&r, 8)).scale(&ExactSeries::from_i64s(&r, 8, &[5])));
        let v = evaluate_xi(&LocalizedElement::from_element(p), &rho).unwrap();
        assert_eq!(v.chi_exponent(1), Some(2));
    }

    #[test]
    fn t0_vanishes_at_trivial_character() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::cyclic(5, 1).unwrap());
        let xi = LocalizedElement::from_element(E::scalar(&g, ExactSeries::variable(&r, 8)));
        assert_eq!(evaluate_xi(&xi, &ArtinRep::trivial(&g, &r)).unwrap(), XiValue::Zero);
        let inv = LocalizedElement::new(E::one(&g, &r, 8), xi.numerator.clone(), 0).unwrap();
        assert_eq!(evaluate_xi(&inv, &ArtinRep::trivial(&g, &r)).unwrap(), XiValue::Infinite);
    }

    #[test]
    fn integrality_examples() {
        let r = zp();
        let red = |n: &[i64], d: &[i64], e: i64| ReducedPhi {
            num: LPoly::from_i64s(&r, n),
            den: LPoly::from_i64s(&r, d),
            p_exponent: e,
        };
        let i = red(&[5, 1], &[1], 0).integrality().unwrap();
        assert!(i.in_a1 && i.in_a2 && !i.unit_a1 && !i.unit_a2);
        let i = red(&[5, 1], &[5], 0).integrality().unwrap();
        assert!(!i.in_a1 && i.in_a2);
        let i = red(&[5, 1], &[10, 1], 0).integrality().unwrap();
        assert!(!i.in_a1 && !i.in_a2 && !i.unit_a1 && !i.unit_a2);
        let i = red(&[5, 5], &[1], 1).integrality().unwrap();
        assert!(i.in_a1 && i.unit_a1);
    }

    #[test]
    fn pushforward_is_multiplicative_at_level_one() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::gamma_quotient(5, 1).unwrap());
        let s = E::section(&g, 1, &r, 8);
        let x = s.add_ref(&E::scalar(&g, ExactSeries::from_i64s(&r, 8, &[2, 3])));
        let y = E::section(&g, 4, &r, 8).sub_ref(&E::one(&g, &r, 8));
        let lhs = gamma_pushforward(&x.mul_ref(&y)).unwrap();
        let rhs = gamma_pushforward(&x).unwrap().mul_ref(&gamma_pushforward(&y).unwrap());
        assert!(lhs.congruent(&rhs));
        assert_eq!(gamma_pushforward(&s).unwrap(), ExactSeries::one_plus_t(&r, 8));
    }
}
