use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::scan::binomial_row;
use super::series::{AkashiSeries, EulerChar};
use crate::algebra::{RingElem, Scalar};
use crate::crossed_product::{is_torsion_presentation, phi_rho, ArtinRep, CrossedElement, PhiDet, XiValue};
use crate::error::{Error, Result};
use crate::iwasawa_series::{det_series, ExactSeries};
use crate::linalg::Matrix;
use crate::padic::{padic_snf, ExactScalar};

/// Three computations of `chi(G, tw_{rho^}(M))` for `M = Lambda^r / Lambda^r F`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    /// `xi_M(rho)` as text: a value of `L`, `"0"` or `"inf"`.
    pub xi: String,
    pub xi_finite: bool,
    /// `m * v(xi_M(rho))`, absent when `xi_M(rho)` is 0 or infinite.
    pub xi_exponent: Option<i64>,
    /// From the Akashi series of the twisted coinvariants.
    pub akashi: EulerChar,
    /// `log_p #coker` of the twisted coinvariant relations at `T = 0`;
    /// absent when singular.
    pub snf_exponent: Option<i64>,
    /// False when nonzero higher `mu_i` were supplied although the square
    /// presentation forces the higher homology to vanish.
    pub higher_consistent: bool,
    pub agree: bool,
}

/// `Phi'_rho` of the class of `F`: the determinant of the blockwise image.
pub fn phi_rho_presentation(f: &Matrix<CrossedElement<ExactScalar>>, rho: &ArtinRep<ExactScalar>) -> Result<ExactSeries> {
    let blocks = (0..f.rows())
        .map(|i| (0..f.cols()).map(|j| phi_rho(&f[(i, j)], rho)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    det_series(&Matrix::from_blocks(&blocks)?)
}

fn scalar_int(ring: &std::sync::Arc<crate::padic::ExtensionRing>, n: BigInt) -> ExactScalar {
    ExactScalar::from_rational(ring, BigRational::from_integer(n))
}

/// Relations of `H_0(H, tw_{rho^}(M))` over `Lambda_O(Gamma)`, expanded
/// monomial by monomial: `T_0^k s(q)` acts on the `(m, l)` slot through
/// `rho(q)_{m l} sum_j C(k, j) (-1)^{k-j} u^{p^k j + w(q)}`, `u = c (1 + T)`.
pub fn twisted_coinvariant_relations(
    f: &Matrix<CrossedElement<ExactScalar>>,
    rho: &ArtinRep<ExactScalar>,
) -> Result<Matrix<ExactSeries>> {
    let ring = rho.ring();
    let n = rho.dim();
    let c = rho.gamma_character().cloned().unwrap_or_else(|| ExactScalar::one(ring));
    let mut rows: Vec<Vec<ExactSeries>> = Vec::new();
    for i in 0..f.rows() {
        let mut block_rows = vec![Vec::new(); n];
        for j in 0..f.cols() {
            let x = &f[(i, j)];
            let g = x.group();
            let pk = g.pk();
            // coefficient vectors of the n x n block
            let mut acc = vec![vec![Vec::<ExactScalar>::new(); n]; n];
            for (q, a) in x.coeffs().iter().enumerate() {
                if a.is_truncated() {
                    return Err(Error::ExactBackendRequired("relations need polynomial coefficients".into()));
                }
                for (k, ak) in a.coeffs().iter().enumerate() {
                    if ak.is_zero() {
                        continue;
                    }
                    let ak = ak.embed(ring)?;
                    let kb = binomial_row(k as u64);
                    for (jj, b) in kb.iter().enumerate() {
                        let exp = pk * jj as u64 + g.weight(q);
                        let sign = if (k - jj) % 2 == 0 { 1 } else { -1 };
                        let scal = ak.mul_ref(&scalar_int(ring, b * sign)).mul_ref(&c.pow_u(exp));
                        for (t, bin) in binomial_row(exp).into_iter().enumerate() {
                            let term = scal.mul_ref(&scalar_int(ring, bin));
                            for m in 0..n {
                                for l in 0..n {
                                    let e = &rho.matrix(q)[(m, l)];
                                    if e.is_zero() {
                                        continue;
                                    }
                                    let slot = &mut acc[m][l];
                                    if slot.len() <= t {
                                        slot.resize(t + 1, ExactScalar::zero(ring));
                                    }
                                    slot[t] = slot[t].add_ref(&term.mul_ref(e));
                                }
                            }
                        }
                    }
                }
            }
            for (m, row) in acc.into_iter().enumerate() {
                for coeffs in row {
                    let d = coeffs.len().max(1);
                    block_rows[m].push(ExactSeries::new(ring, d, coeffs)?);
                }
            }
        }
        rows.extend(block_rows);
    }
    Matrix::from_rows(rows)
}

/// Checks `chi(G, tw_{rho^}(M)) = |xi_M(rho)|_p^{-m}` three ways: from
/// `xi_M(rho)`, from the Akashi series of the twisted coinvariants with the
/// supplied pure `pi`-power higher terms `mu_1, mu_2, ...`, and from a Smith
/// normal form at `T = 0`.
pub fn verify_char_element(
    f: &Matrix<CrossedElement<ExactScalar>>,
    rho: &ArtinRep<ExactScalar>,
    higher: &[u32],
) -> Result<VerifyReport> {
    if !is_torsion_presentation(f)? {
        return Err(Error::NotTorsion);
    }
    let ring = rho.ring();
    let m = ring.degree();

    let xi_value = PhiDet {
        num: phi_rho_presentation(f, rho)?,
        den: ExactSeries::one(ring, 0),
        p_exponent: 0,
    }
    .reduce()?
    .value_at_zero();
    let (xi, xi_exponent) = match &xi_value {
        XiValue::Zero => ("0".to_string(), None),
        XiValue::Infinite => ("inf".to_string(), None),
        XiValue::Finite { value, .. } => (value.to_string(), xi_value.chi_exponent(m)),
    };

    let rel = twisted_coinvariant_relations(f, rho)?;
    let h0 = det_series(&rel)?;
    let pi = ExactScalar::uniformizer(ring);
    let mut factors = vec![(h0, 1)];
    for (i, &mu) in higher.iter().enumerate() {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        factors.push((ExactSeries::constant(pi.pow_u(mu as u64), 0), sign));
    }
    let akashi = AkashiSeries::new(ring, factors)?.euler_characteristic(m)?;

    let at_zero = rel.try_map(|s| s.coeff(0).reduce())?;
    let snf = padic_snf(&at_zero)?;
    let snf_exponent = if snf.is_singular_within_precision() {
        None
    } else {
        Some(snf.chi_exponent()?)
    };

    let higher_consistent = higher.iter().all(|&mu| mu == 0);
    let agree = xi_exponent == akashi.exponent() && akashi.exponent() == snf_exponent;
    Ok(VerifyReport {
        xi,
        xi_finite: xi_value != XiValue::Infinite,
        xi_exponent,
        akashi,
        snf_exponent,
        higher_consistent,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::crossed_product::{sign_character, FiniteLevelGroup};
    use crate::padic::{ExtensionRing, PadicContext};

    type E = CrossedElement<ExactScalar>;

    fn zp() -> Arc<ExtensionRing> {
        ExtensionRing::prime(PadicContext::new(5, 20).unwrap())
    }

    fn one_by_one(x: E) -> Matrix<E> {
        Matrix::from_rows(vec![vec![x]]).unwrap()
    }

    #[test]
    fn trivial_group_t0_plus_p() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::cyclic(5, 1).unwrap());
        let f = one_by_one(E::scalar(&g, ExactSeries::from_i64s(&r, 8, &[5, 1])));
        let rep = verify_char_element(&f, &ArtinRep::trivial(&g, &r), &[]).unwrap();
        assert_eq!(rep.xi, "5");
        assert_eq!(rep.xi_exponent, Some(1));
        assert_eq!(rep.akashi, EulerChar::Finite { exponent: 1 });
        assert_eq!(rep.snf_exponent, Some(1));
        assert!(rep.agree && rep.xi_finite && rep.higher_consistent);
    }

    #[test]
    fn sign_character_unit_value() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::cyclic(5, 2).unwrap());
        let x = E::section(&g, 1, &r, 8).sub_ref(&E::scalar(&g, ExactSeries::one_plus_t(&r, 8)));
        let rep = verify_char_element(&one_by_one(x), &sign_character(&g, &r).unwrap(), &[]).unwrap();
        assert_eq!(rep.xi, "-2");
        assert_eq!((rep.xi_exponent, rep.snf_exponent), (Some(0), Some(0)));
        assert!(rep.agree);
    }

    #[test]
    fn coherent_non_finite() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::cyclic(5, 1).unwrap());
        let f = one_by_one(E::scalar(&g, ExactSeries::variable(&r, 8)));
        let rep = verify_char_element(&f, &ArtinRep::trivial(&g, &r), &[]).unwrap();
        assert_eq!(rep.xi, "0");
        assert_eq!(rep.akashi, EulerChar::ZeroValue);
        assert_eq!(rep.snf_exponent, None);
        assert!(rep.agree);
    }

    #[test]
    fn relations_match_phi_rho() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::gamma_quotient(5, 1).unwrap());
        let x = E::section(&g, 3, &r, 8)
            .mul_ref(&E::scalar(&g, ExactSeries::from_i64s(&r, 8, &[2, 0, 1])))
            .add_ref(&E::section(&g, 1, &r, 8));
        let rho = ArtinRep::trivial(&g, &r).with_gamma_character(ExactScalar::from_i64(&r, 6)).unwrap();
        let f = one_by_one(x.clone());
        let rel = twisted_coinvariant_relations(&f, &rho).unwrap();
        let direct = phi_rho(&x, &rho).unwrap();
        assert!(rel[(0, 0)].congruent(&direct[(0, 0)]));
        assert_eq!(rel[(0, 0)].degree(), direct[(0, 0)].degree());
    }

    #[test]
    fn supplied_higher_terms_are_flagged() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::cyclic(5, 1).unwrap());
        let f = one_by_one(E::scalar(&g, ExactSeries::from_i64s(&r, 8, &[5, 1])));
        let rep = verify_char_element(&f, &ArtinRep::trivial(&g, &r), &[1]).unwrap();
        assert_eq!(rep.akashi, EulerChar::Finite { exponent: 0 });
        assert!(!rep.higher_consistent && !rep.agree);
    }
}
