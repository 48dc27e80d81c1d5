use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::element::CrossedElement;
use crate::algebra::{Backend, RingElem, Scalar};
use crate::error::{Error, Result};
use crate::function_field::{inv_mod, poly_det, FpPoly};
use crate::iwasawa_series::IwasawaSeries;
use crate::linalg::Matrix;
use crate::padic::rational_valuation;

/// Outcome of an Ore-set membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct OreReport {
    pub in_s: bool,
    /// Determinant of the multiplication matrix over `F_p(T_0)`.
    pub det: FpPoly,
}

/// Reduction modulo `p` of an exact polynomial coefficient over `Z_p`.
fn reduce_mod_p<S: Scalar>(a: &IwasawaSeries<S>) -> Result<FpPoly> {
    if S::BACKEND != Backend::Rational || a.is_truncated() {
        return Err(Error::ExactBackendRequired(
            "Ore tests need exact polynomial coefficients".into(),
        ));
    }
    if !a.ring().is_prime_ring() {
        return Err(Error::InvalidInput("group-algebra coefficients must lie in Z_p".into()));
    }
    let p = a.ring().p();
    let coeffs = a
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.to_exact().coords()[0].clone();
            let pb = num_bigint::BigInt::from(p);
            let den = q.denom().mod_floor(&pb);
            if den.is_zero() {
                return Err(Error::NotIntegral(format!("coefficient {q} is not p-integral")));
            }
            let n = q.numer().mod_floor(&pb).to_u64().expect("reduced mod p");
            let d = den.to_u64().expect("reduced mod p");
            Ok(n * inv_mod(d, p) % p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FpPoly::new(p, coeffs))
}

fn one_plus_t_pow(p: u64, k: u32) -> FpPoly {
    let mut out = FpPoly::constant(p, 1);
    for _ in 0..k {
        out = out.mul_ref(&FpPoly::from_i64s(p, &[1, 1]));
    }
    out
}

/// Matrix of `x -> x f` (`left = false`) or `x -> f x` on the basis `s(q)`,
/// reduced modulo `p`, rows indexed by the input basis vector.
pub fn multiplication_matrix<S: Scalar>(f: &CrossedElement<S>, left: bool) -> Result<Matrix<FpPoly>> {
    let g = f.group();
    let p = g.p();
    let n = g.order();
    let red = f.coeffs().iter().map(reduce_mod_p).collect::<Result<Vec<_>>>()?;
    let mut m = Matrix::filled(n, n, FpPoly::zero(p));
    for q in 0..n {
        for (r, fr) in red.iter().enumerate() {
            if fr.is_zero() {
                continue;
            }
            // right: s(q) f_r s(r) = f_r (1+T_0)^{tau(q,r)} s(qr)
            // left:  f_r s(r) s(q) = f_r (1+T_0)^{tau(r,q)} s(rq)
            let (tau, target) = if left {
                (g.cocycle(r, q), g.mul(r, q))
            } else {
                (g.cocycle(q, r), g.mul(q, r))
            };
            let term = fr.mul_ref(&one_plus_t_pow(p, tau));
            m[(q, target)] = m[(q, target)].add_ref(&term);
        }
    }
    Ok(m)
}

fn report(m: &Matrix<FpPoly>) -> Result<OreReport> {
    let det = poly_det(m)?;
    Ok(OreReport {
        in_s: !det.is_zero(),
        det,
    })
}

/// `f` lies in `S` iff right multiplication by `f mod p` is injective on the
/// `F_p(T_0)`-algebra `V(G/J)`.
pub fn ore_s_test<S: Scalar>(f: &CrossedElement<S>) -> Result<OreReport> {
    report(&multiplication_matrix(f, false)?)
}

/// The same test with left multiplication.
pub fn ore_left_test<S: Scalar>(f: &CrossedElement<S>) -> Result<OreReport> {
    report(&multiplication_matrix(f, true)?)
}

/// Largest `n` with `p^n` dividing every coefficient.
pub fn p_content<S: Scalar>(f: &CrossedElement<S>) -> Result<i64> {
    let p = f.group().p();
    let mut best: Option<i64> = None;
    for a in f.coeffs() {
        if S::BACKEND != Backend::Rational || a.is_truncated() {
            return Err(Error::ExactBackendRequired("p-content needs exact coefficients".into()));
        }
        for c in a.coeffs() {
            let v = rational_valuation(&c.to_exact().coords()[0], p);
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    let n = best.ok_or(Error::ZeroElement)?;
    if n < 0 {
        return Err(Error::NotIntegral("element has non-integral coefficients".into()));
    }
    Ok(n)
}

/// Writes `f = p^n f'` with `f'` not divisible by `p` and tests `f'` for
/// membership in `S`; `f` lies in `S*` iff `f'` lies in `S`.
pub fn ore_sstar_test<S: Scalar>(f: &CrossedElement<S>) -> Result<(bool, u32)> {
    let n = p_content(f)?;
    let p_inv = S::from_i64(f.ring(), f.group().p() as i64)
        .inverse()
        .expect("exact backend inverts p");
    let mut peeled = f.clone();
    for _ in 0..n {
        peeled = peeled.scale(&p_inv);
    }
    Ok((ore_s_test(&peeled)?.in_s, n as u32))
}

/// A square presentation `F` (the module is `Lambda^r / Lambda^r F`) is
/// S-torsion iff the block matrix of right multiplications is invertible
/// over `F_p(T_0)`.
pub fn is_torsion_presentation<S: Scalar>(f: &Matrix<CrossedElement<S>>) -> Result<bool> {
    if !f.is_square() {
        return Err(Error::NonSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let blocks = (0..f.rows())
        .map(|i| (0..f.cols()).map(|j| multiplication_matrix(&f[(i, j)], false)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let big = Matrix::from_blocks(&blocks)?;
    Ok(!poly_det(&big)?.is_zero())
}
