use num_traits::ToPrimitive;
use serde::Serialize;

use super::scalar::PadicScalar;
use crate::algebra::{RingElem, Scalar, Valuation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Elementary divisors of a square matrix over `O`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnfResult {
    /// Ascending, normalized `v(p) = 1`; `Infinite` marks a divisor that
    /// vanishes modulo `p^N`.
    pub divisors: Vec<Valuation>,
    /// `[L : Q_p]`.
    pub degree: usize,
}

impl SnfResult {
    pub fn is_singular_within_precision(&self) -> bool {
        self.divisors.iter().any(|v| !v.is_finite())
    }

    /// `log_p #coker` for a nonsingular matrix.
    pub fn chi_exponent(&self) -> Result<i64> {
        let mut total = num_rational::Ratio::from_integer(0i64);
        for v in &self.divisors {
            match v.finite() {
                Some(v) => total += v,
                None => {
                    return Err(Error::PrecisionExhausted(
                        "an elementary divisor vanishes modulo p^N".into(),
                    ))
                }
            }
        }
        // #O/pi^k = p^{f k} and v = k / e
        Ok((total * self.degree as i64).to_integer())
    }
}

/// Diagonalizes `a` by unimodular row and column operations, pivoting on an
/// entry of least valuation. Over an unramified ring absolute precision
/// `p^N` is preserved; Eisenstein division by `pi` may lose digits.
pub fn padic_snf(a: &Matrix<PadicScalar>) -> Result<SnfResult> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let Some(first) = a.entries().first() else {
        return Ok(SnfResult {
            divisors: vec![],
            degree: 1,
        });
    };
    let ring = first.ring().clone();
    let e = ring.ramification_index() as i64;
    let mut m = a.clone();
    let mut divisors = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(Valuation, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                let v = m[(i, j)].valuation();
                if v.is_finite() && best.as_ref().map_or(true, |(bv, _, _)| v < *bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            divisors.extend(std::iter::repeat(Valuation::Infinite).take(n - k));
            break;
        };
        m.swap_rows(k, pi);
        m.swap_cols(k, pj);
        let vp = v
            .finite()
            .and_then(|r| (r * e).to_integer().to_u32())
            .expect("valuation in pi-units");
        let unit_inv = m[(k, k)]
            .divide_by_pi_power(vp)?
            .0
            .inverse()
            .expect("pivot divided by its p-power is a unit");
        for i in k + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let factor = m[(i, k)].divide_by_pi_power(vp)?.0.mul_ref(&unit_inv);
            for j in k..n {
                let t = factor.mul_ref(&m[(k, j)]);
                m[(i, j)] = m[(i, j)].sub_ref(&t);
            }
        }
        for j in k + 1..n {
            m[(k, j)] = m[(k, j)].zero_like();
        }
        divisors.push(v);
    }
    divisors.sort();
    Ok(SnfResult {
        divisors,
        degree: ring.degree(),
    })
}
