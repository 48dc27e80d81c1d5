use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::module::TorsionModuleData;
use crate::algebra::{Backend, RingElem, Scalar};
use crate::error::{Error, Result};
use crate::iwasawa_series::LPoly;
use crate::padic::{ExactScalar, ExtensionRing};

/// Binomial coefficients of `(1 + T)^n`.
pub(crate) fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for k in 1..=n {
        let next = &row[k as usize - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

/// `Phi_{p^k}(1 + T) = sum_{j < p} (1 + T)^{j p^{k-1}}` for `k >= 1`.
pub fn cyclotomic_at_one_plus_t(ring: &Arc<ExtensionRing>, p: u64, k: u32) -> LPoly {
    let step = p.pow(k - 1);
    let mut acc = vec![BigInt::from(0); ((p - 1) * step + 1) as usize];
    for j in 0..p {
        for (i, b) in binomial_row(j * step).into_iter().enumerate() {
            acc[i] += b;
        }
    }
    LPoly::new(
        ring,
        acc.into_iter()
            .map(|c| ExactScalar::from_rational(ring, BigRational::from_integer(c)))
            .collect(),
    )
}

/// Orders `p^k`, `k <= k_max`, of characters of `Gamma` at which some
/// `f_i(eta(gamma_0)^{-1} - 1)` vanishes. Order `p^0` is the trivial
/// character (`f_i(0) = 0`); for `k >= 1` the test is a nontrivial
/// `gcd(f_i, Phi_{p^k}(1 + T))` over `L`.
pub fn bad_twist_scan<S: Scalar>(m: &TorsionModuleData<S>, k_max: u32) -> Result<BTreeSet<u32>> {
    if S::BACKEND != Backend::Rational {
        return Err(Error::ExactBackendRequired("divisibility by cyclotomic factors".into()));
    }
    let ring = m.ring();
    let p = ring.p();
    let polys = m
        .char_series()?
        .iter()
        .map(|f| LPoly::from_series(&f.to_exact()?))
        .collect::<Result<Vec<_>>>()?;
    let mut bad = BTreeSet::new();
    if polys.iter().any(|f| f.coeff(0).is_zero()) {
        bad.insert(0);
    }
    let max_deg = polys.iter().filter_map(LPoly::degree).max().unwrap_or(0) as u64;
    for k in 1..=k_max {
        // irreducible factors of Phi_{p^k} over L have degree at least
        // phi(p^k) / [L : Q_p]
        let phi = (p - 1) * p.pow(k - 1);
        if phi > max_deg * ring.degree() as u64 {
            break;
        }
        let cyc = cyclotomic_at_one_plus_t(ring, p, k);
        if polys.iter().any(|f| !f.gcd(&cyc).is_constant()) {
            bad.insert(k);
        }
    }
    Ok(bad)
}
