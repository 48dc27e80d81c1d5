use std::fmt;
use std::sync::Arc;

use crate::algebra::{Backend, RingElem, Scalar};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::padic::{same_ring, ExactScalar, ExtensionRing, PadicScalar};

/// Element of `O[[T]]` known modulo `T^{D+1}`.
///
/// On the rational backend the window usually holds an exact polynomial;
/// `truncated` records that nonzero terms above `T^D` were discarded, after
/// which only congruences modulo `T^{D+1}` are meaningful. On the p-adic
/// backend the flag stays false and every value is read modulo
/// `(p^N, T^{D+1})`.
#[derive(Clone)]
pub struct IwasawaSeries<S: Scalar> {
    ring: Arc<ExtensionRing>,
    truncation: usize,
    /// Trailing zeros trimmed; at most `truncation + 1` entries.
    coeffs: Vec<S>,
    truncated: bool,
}

pub type PadicSeries = IwasawaSeries<PadicScalar>;
pub type ExactSeries = IwasawaSeries<ExactScalar>;

pub const DEFAULT_TRUNCATION: usize = 32;
pub const DEFAULT_PRECISION: u32 = 20;

impl<S: Scalar> IwasawaSeries<S> {
    /// Coefficients of `T^0, T^1, ...`; terms beyond `T^D` are dropped.
    pub fn new(ring: &Arc<ExtensionRing>, truncation: usize, coeffs: Vec<S>) -> Result<Self> {
        for c in &coeffs {
            if !same_ring(c.ring(), ring) {
                return Err(Error::RingMismatch(format!(
                    "coefficient over {} in a series over {}",
                    c.ring(),
                    ring
                )));
            }
        }
        Ok(Self::from_raw(ring, truncation, coeffs, false))
    }

    fn from_raw(ring: &Arc<ExtensionRing>, truncation: usize, mut coeffs: Vec<S>, truncated: bool) -> Self {
        let mut truncated = truncated;
        if coeffs.len() > truncation + 1 {
            if coeffs[truncation + 1..].iter().any(|c| !c.is_zero()) {
                truncated = true;
            }
            coeffs.truncate(truncation + 1);
        }
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        IwasawaSeries {
            ring: ring.clone(),
            truncation,
            coeffs,
            truncated: truncated && S::BACKEND == Backend::Rational,
        }
    }

    pub fn zero(ring: &Arc<ExtensionRing>, truncation: usize) -> Self {
        Self::from_raw(ring, truncation, vec![], false)
    }

    pub fn constant(c: S, truncation: usize) -> Self {
        let ring = c.ring().clone();
        Self::from_raw(&ring, truncation, vec![c], false)
    }

    pub fn one(ring: &Arc<ExtensionRing>, truncation: usize) -> Self {
        Self::constant(S::one(ring), truncation)
    }

    /// `c T^k`.
    pub fn monomial(c: S, k: usize, truncation: usize) -> Self {
        let ring = c.ring().clone();
        let mut coeffs = vec![S::zero(&ring); k];
        coeffs.push(c);
        Self::from_raw(&ring, truncation, coeffs, false)
    }

    /// The variable `T`.
    pub fn variable(ring: &Arc<ExtensionRing>, truncation: usize) -> Self {
        Self::monomial(S::one(ring), 1, truncation)
    }

    /// `1 + T`, the image of the topological generator.
    pub fn one_plus_t(ring: &Arc<ExtensionRing>, truncation: usize) -> Self {
        Self::from_raw(ring, truncation, vec![S::one(ring), S::one(ring)], false)
    }

    pub fn from_i64s(ring: &Arc<ExtensionRing>, truncation: usize, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| S::from_i64(ring, c)).collect();
        Self::from_raw(ring, truncation, coeffs, false)
    }

    pub fn ring(&self) -> &Arc<ExtensionRing> {
        &self.ring
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Nonzero part of the window, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(|| S::zero(&self.ring))
    }

    /// Degree of the window polynomial, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Same coefficients, window `D`. Shrinking may mark the series
    /// truncated; a truncated series cannot be widened and is returned as is.
    pub fn with_truncation(&self, truncation: usize) -> Self {
        if self.truncated && truncation > self.truncation {
            return self.clone();
        }
        Self::from_raw(&self.ring, truncation, self.coeffs.clone(), self.truncated)
    }

    pub(crate) fn mark_exact(mut self) -> Self {
        self.truncated = false;
        self
    }

    pub(crate) fn mark_truncated(mut self, flag: bool) -> Self {
        self.truncated = self.truncated || (flag && S::BACKEND == Backend::Rational);
        self
    }

    pub fn scale(&self, c: &S) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.mul_ref(c)).collect();
        Self::from_raw(&self.ring, self.truncation, coeffs, self.truncated)
    }

    pub fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        let coeffs = self.coeffs.iter().map(f).collect();
        Self::from_raw(&self.ring, self.truncation, coeffs, self.truncated)
    }

    /// Multiplies by `T^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![S::zero(&self.ring); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_raw(&self.ring, self.truncation, coeffs, self.truncated)
    }

    /// Drops the terms below `T^k` and divides by `T^k`; the window shrinks
    /// to `D - k`.
    pub fn shift_down(&self, k: usize) -> Self {
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        Self::from_raw(&self.ring, self.truncation.saturating_sub(k), coeffs, self.truncated)
    }

    /// The part of degree below `k`.
    pub fn low_part(&self, k: usize) -> Self {
        let coeffs = self.coeffs.iter().take(k).cloned().collect();
        Self::from_raw(&self.ring, self.truncation, coeffs, self.truncated)
    }

    /// Augmentation `T -> 0`.
    pub fn augment(&self) -> S {
        self.coeff(0)
    }

    /// Horner evaluation of the window polynomial.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(&self.ring), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// `f(g)` by Horner's rule in the window.
    pub fn compose(&self, g: &Self) -> Self {
        let d = combined_truncation(self, g);
        let g = g.with_truncation(d);
        let mut acc = Self::zero(&self.ring, d);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(&g).add_ref(&Self::constant(c.clone(), d));
        }
        acc.mark_truncated(self.truncated)
    }

    /// `f(c(1 + T) - 1)`, the substitution by which a character of `Gamma`
    /// with `gamma_0 -> c` acts.
    ///
    /// The p-adic backend needs `c = 1 mod pi` so that the truncated tail
    /// contributes only to high p-adic digits; the rational backend accepts
    /// any unit and an untruncated input.
    pub fn twist_substitute(&self, c: &S) -> Result<Self> {
        if !c.is_unit() {
            return Err(Error::NotUnit(format!("twist parameter {c:?}")));
        }
        let shift = c.sub_ref(&S::one(&self.ring));
        match S::BACKEND {
            Backend::Padic if !shift.is_zero() && !shift.valuation().finite().is_some_and(|v| v > 0.into()) => {
                return Err(Error::InvalidInput(
                    "p-adic twist parameters must be congruent to 1 modulo the uniformizer".into(),
                ))
            }
            Backend::Rational if self.truncated && !shift.is_zero() => {
                return Err(Error::ExactBackendRequired(
                    "twisting a truncated series is not determined by its window".into(),
                ))
            }
            _ => {}
        }
        let g = Self::from_raw(&self.ring, self.truncation, vec![shift, c.clone()], false);
        Ok(self.compose(&g))
    }

    /// Multiplies by `(1 + T)^k`.
    pub fn mul_one_plus_t_pow(&self, k: u64) -> Self {
        self.mul_ref(&Self::one_plus_t(&self.ring, self.truncation).pow_u(k))
    }

    /// Inverse of a series whose constant term is invertible in `O`
    /// (p-adic) or nonzero (rational; non-constant inverses are marked
    /// truncated).
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0);
        let inv0 = match S::BACKEND {
            Backend::Padic if !c0.is_unit() => return None,
            _ => c0.inverse()?,
        };
        let d = self.truncation;
        let mut out: Vec<S> = Vec::with_capacity(d + 1);
        out.push(inv0.clone());
        for k in 1..=d {
            let mut s = S::zero(&self.ring);
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = s.add_ref(&self.coeffs[j].mul_ref(&out[k - j]));
            }
            out.push(s.neg_ref().mul_ref(&inv0));
        }
        let truncated = self.truncated || self.degree().unwrap_or(0) > 0;
        Some(Self::from_raw(&self.ring, d, out, truncated))
    }

    /// Smallest coefficient valuation in units of `v(pi)`, and the first
    /// index attaining it: the `mu`- and `lambda`-invariants.
    pub fn mu_lambda(&self) -> Result<(i64, usize)> {
        if self.truncated {
            return Err(Error::ExactBackendRequired(
                "invariants of a truncated series are not determined".into(),
            ));
        }
        let e = self.ring.ramification_index() as i64;
        let mut best: Option<(i64, usize)> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Some(v) = c.valuation().finite() {
                let mu = (v * e).to_integer();
                if best.map_or(true, |(b, _)| mu < b) {
                    best = Some((mu, i));
                }
            }
        }
        best.ok_or(Error::ZeroWithinPrecision)
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    /// Determinant of multiplication by `self` on `O[[T]]` as a free
    /// `Z_p[[T]]`-module with basis `1, x, ..., x^{m-1}`.
    pub fn norm_to_base(&self) -> Result<Self> {
        let prime = self.ring.prime_ring();
        let m = self.ring.degree();
        if m == 1 {
            return Ok(self.clone());
        }
        let d = match (S::BACKEND, self.truncated, self.degree()) {
            (Backend::Rational, false, Some(deg)) => self.truncation.max(m * deg),
            _ => self.truncation,
        };
        // column j: coordinates of self * x^j, coefficientwise in T
        let cols: Vec<Vec<Vec<S>>> = (0..m)
            .map(|j| {
                let xj = S::basis(&self.ring, j);
                self.coeffs.iter().map(|c| c.mul_ref(&xj).coordinates()).collect()
            })
            .collect();
        let mat = Matrix::from_fn(m, m, |i, j| {
            let coeffs = cols[j].iter().map(|coords| coords[i].clone()).collect();
            Self::from_raw(&prime, d, coeffs, self.truncated)
        });
        let det = det_series(&mat)?;
        Ok(det)
    }

    pub fn to_exact(&self) -> Result<ExactSeries> {
        let coeffs = self.coeffs.iter().map(Scalar::to_exact).collect();
        Ok(IwasawaSeries::from_raw(&self.ring, self.truncation, coeffs, self.truncated))
    }

    pub fn to_padic(&self) -> Result<PadicSeries> {
        let coeffs = self.coeffs.iter().map(Scalar::to_padic).collect::<Result<Vec<_>>>()?;
        Ok(IwasawaSeries::from_raw(&self.ring, self.truncation, coeffs, false))
    }

    /// Coefficientwise congruence modulo `p^k` (p-adic backend) or
    /// equality (rational backend).
    pub fn congruent(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        let d = self.truncation.min(other.truncation);
        (0..n.min(d + 1)).all(|i| self.coeff(i) == other.coeff(i))
    }
}

/// Window of a binary operation: the coarser one, except that an exact
/// untruncated polynomial extends freely.
fn combined_truncation<S: Scalar>(a: &IwasawaSeries<S>, b: &IwasawaSeries<S>) -> usize {
    match S::BACKEND {
        Backend::Padic => a.truncation.min(b.truncation),
        Backend::Rational => {
            let mut d = a.truncation.max(b.truncation);
            if a.truncated {
                d = d.min(a.truncation);
            }
            if b.truncated {
                d = d.min(b.truncation);
            }
            d
        }
    }
}

/// Determinant of a square matrix of series (division-free). On the
/// rational backend with untruncated entries the window is first raised to
/// a degree bound, so the result is the exact polynomial determinant.
pub fn det_series<S: Scalar>(a: &Matrix<IwasawaSeries<S>>) -> Result<IwasawaSeries<S>> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let any_truncated = a.entries().iter().any(|x| x.truncated);
    if S::BACKEND == Backend::Rational && !any_truncated {
        let bound: usize = (0..a.rows())
            .map(|i| a.row(i).iter().filter_map(IwasawaSeries::degree).max().unwrap_or(0))
            .sum();
        let d = a.entries().iter().map(|x| x.truncation).max().unwrap_or(0).max(bound);
        let raised = a.map(|x| x.with_truncation(d));
        // Truncation mod T^{d+1} is a ring map and the determinant has
        // degree at most d, so intermediate truncation is harmless.
        return Ok(raised.det()?.mark_exact());
    }
    a.det()
}

impl<S: Scalar> PartialEq for IwasawaSeries<S> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.truncation == other.truncation
            && self.truncated == other.truncated
            && self.coeffs == other.coeffs
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for IwasawaSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*T"),
                _ => format!("({c})*T^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))?;
        if self.truncated || S::BACKEND == Backend::Padic {
            write!(f, " + O(T^{})", self.truncation + 1)?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for IwasawaSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IwasawaSeries")
            .field("D", &self.truncation)
            .field("truncated", &self.truncated)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<S: Scalar> RingElem for IwasawaSeries<S> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ring, self.truncation)
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ring, self.truncation)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let d = combined_truncation(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len()).min(d + 1);
        let coeffs = (0..n).map(|i| self.coeff(i).add_ref(&rhs.coeff(i))).collect();
        let dropped = self.coeffs.len() > d + 1 || rhs.coeffs.len() > d + 1;
        Self::from_raw(&self.ring, d, coeffs, self.truncated || rhs.truncated || dropped)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let d = combined_truncation(self, rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::from_raw(&self.ring, d, vec![], self.truncated || rhs.truncated);
        }
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let n = full.min(d + 1);
        let mut coeffs = vec![S::zero(&self.ring); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        // Over a field the product has exact degree deg a + deg b.
        let overflow = full > d + 1;
        Self::from_raw(&self.ring, d, coeffs, self.truncated || rhs.truncated || overflow)
    }

    fn neg_ref(&self) -> Self {
        self.map_coeffs(RingElem::neg_ref)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{ExtensionRing, PadicContext};

    fn zp() -> Arc<ExtensionRing> {
        ExtensionRing::prime(PadicContext::new(5, 20).unwrap())
    }

    #[test]
    fn augmentation() {
        let r = zp();
        assert!(PadicSeries::variable(&r, 8).augment().is_zero());
        assert_eq!(PadicSeries::from_i64s(&r, 8, &[3, 1]).augment(), PadicScalar::from_i64(&r, 3));
        assert_eq!(PadicSeries::from_i64s(&r, 8, &[5, 1]).augment(), PadicScalar::from_i64(&r, 5));
    }

    #[test]
    fn linear_twist() {
        let r = zp();
        let c = PadicScalar::from_i64(&r, 6);
        let t = PadicSeries::variable(&r, 8).twist_substitute(&c).unwrap();
        assert_eq!(t, PadicSeries::from_i64s(&r, 8, &[5, 6]));
        let f = PadicSeries::from_i64s(&r, 8, &[1, 2, 3]);
        assert_eq!(f.twist_substitute(&PadicScalar::from_i64(&r, 1)).unwrap(), f);
        assert!(f.twist_substitute(&PadicScalar::from_i64(&r, 2)).is_err());
    }

    #[test]
    fn twist_by_root_of_unity_fixes_cyclotomic_series() {
        // O = Z_5[zeta_5] with x = zeta - 1, modulus Phi_5(x + 1).
        let ctx = PadicContext::new(5, 6).unwrap();
        let o = ExtensionRing::eisenstein(ctx, vec![5, 10, 10, 5, 1]).unwrap();
        let zeta = ExactScalar::from_i64(&o, 1).add_ref(&ExactScalar::basis(&o, 1));
        let zeta_inv = zeta.inverse().unwrap();
        let f = ExactSeries::one_plus_t(&o, 10).pow_u(5).sub_ref(&ExactSeries::one(&o, 10));
        assert_eq!(f.twist_substitute(&zeta_inv).unwrap(), f);
    }

    #[test]
    fn norm_of_generator() {
        let ctx = PadicContext::new(5, 10).unwrap();
        let o = ExtensionRing::unramified(ctx, vec![-2, 0, 1]).unwrap();
        let x = ExactSeries::constant(ExactScalar::basis(&o, 1), 8);
        let n = x.norm_to_base().unwrap();
        assert_eq!(n, ExactSeries::from_i64s(&o.prime_ring(), 8, &[-2]));
        let t = ExactSeries::variable(&o, 8).norm_to_base().unwrap();
        assert_eq!(t, ExactSeries::monomial(ExactScalar::from_i64(&o.prime_ring(), 1), 2, 8));
    }

    #[test]
    fn exact_product_marks_truncation() {
        let r = zp();
        let f = ExactSeries::from_i64s(&r, 3, &[1, 1, 1, 1]);
        let g = f.mul_ref(&f);
        assert!(g.is_truncated());
        assert!(g.mu_lambda().is_err());
        let h = ExactSeries::from_i64s(&r, 3, &[1, 1]);
        assert!(!h.mul_ref(&h).is_truncated());
    }

    #[test]
    fn exact_determinant_raises_window() {
        let r = zp();
        let a = ExactSeries::from_i64s(&r, 2, &[0, 0, 1]);
        let m = Matrix::from_rows(vec![vec![a.clone(), ExactSeries::zero(&r, 2)], vec![ExactSeries::zero(&r, 2), a]]).unwrap();
        let d = det_series(&m).unwrap();
        assert!(!d.is_truncated());
        assert_eq!(d.degree(), Some(4));
    }
}
