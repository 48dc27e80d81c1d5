use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::FiniteLevelGroup;
use crate::algebra::{RingElem, Scalar};
use crate::error::{Error, Result};
use crate::iwasawa_series::{IwasawaSeries, SeriesJson};
use crate::padic::{same_ring, ExtensionRing};

/// `sum_q a_q(T_0) s(q)` in `Lambda(G/J) = (+)_q Lambda(Pi) s(q)`.
#[derive(Clone, PartialEq)]
pub struct CrossedElement<S: Scalar> {
    group: Arc<FiniteLevelGroup>,
    coeffs: Vec<IwasawaSeries<S>>,
}

impl<S: Scalar> CrossedElement<S> {
    /// One coefficient per element of `Q`, in table order, all over one ring.
    pub fn new(group: &Arc<FiniteLevelGroup>, coeffs: Vec<IwasawaSeries<S>>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        if coeffs.windows(2).any(|w| !same_ring(w[0].ring(), w[1].ring())) {
            return Err(Error::RingMismatch("coefficients over different rings".into()));
        }
        Ok(CrossedElement {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn zero(group: &Arc<FiniteLevelGroup>, ring: &Arc<ExtensionRing>, truncation: usize) -> Self {
        CrossedElement {
            group: group.clone(),
            coeffs: vec![IwasawaSeries::zero(ring, truncation); group.order()],
        }
    }

    /// `a s(q)`.
    pub fn monomial(group: &Arc<FiniteLevelGroup>, q: usize, a: IwasawaSeries<S>) -> Self {
        let mut x = Self::zero(group, a.ring(), a.truncation());
        x.coeffs[q] = a;
        x
    }

    /// `s(q)`.
    pub fn section(group: &Arc<FiniteLevelGroup>, q: usize, ring: &Arc<ExtensionRing>, truncation: usize) -> Self {
        Self::monomial(group, q, IwasawaSeries::one(ring, truncation))
    }

    /// `a s(1)`: the image of `Lambda(Pi)`.
    pub fn scalar(group: &Arc<FiniteLevelGroup>, a: IwasawaSeries<S>) -> Self {
        Self::monomial(group, group.identity(), a)
    }

    pub fn one(group: &Arc<FiniteLevelGroup>, ring: &Arc<ExtensionRing>, truncation: usize) -> Self {
        Self::section(group, group.identity(), ring, truncation)
    }

    pub fn group(&self) -> &Arc<FiniteLevelGroup> {
        &self.group
    }

    pub fn ring(&self) -> &Arc<ExtensionRing> {
        self.coeffs[0].ring()
    }

    pub fn coeffs(&self) -> &[IwasawaSeries<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, q: usize) -> &IwasawaSeries<S> {
        &self.coeffs[q]
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.iter().map(IwasawaSeries::truncation).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn map(&self, f: impl Fn(&IwasawaSeries<S>) -> IwasawaSeries<S>) -> Self {
        CrossedElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_group(&self, rhs: &Self) {
        assert!(
            Arc::ptr_eq(&self.group, &rhs.group) || self.group == rhs.group,
            "elements of different crossed products"
        );
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(q, a)| (self.group.label(q).to_string(), SeriesJson::from_series(a)))
                .collect(),
        }
    }
}

impl<S: Scalar> RingElem for CrossedElement<S> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.group, self.ring(), self.truncation())
    }

    fn one_like(&self) -> Self {
        Self::one(&self.group, self.ring(), self.truncation())
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.check_group(rhs);
        CrossedElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    /// `(a s(q)) (b s(q')) = a b (1 + T_0)^{tau(q, q')} s(q q')`.
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.check_group(rhs);
        let g = &self.group;
        let mut out = self.zero_like();
        for (q, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (r, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut ab = a.mul_ref(b);
                if g.cocycle(q, r) != 0 {
                    ab = ab.mul_one_plus_t_pow(g.cocycle(q, r) as u64);
                }
                let qr = g.mul(q, r);
                out.coeffs[qr] = out.coeffs[qr].add_ref(&ab);
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        self.map(RingElem::neg_ref)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElem::is_zero)
    }
}

impl<S: Scalar> fmt::Debug for CrossedElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (q, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                m.entry(&self.group.label(q), a);
            }
        }
        m.finish()
    }
}

/// `{"coeffs": {label: series}}`; absent labels are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub coeffs: BTreeMap<String, SeriesJson>,
}

impl ElementJson {
    /// Coefficients default to `ring` and window `truncation` unless the
    /// series JSON says otherwise.
    pub fn parse<S: Scalar>(
        &self,
        group: &Arc<FiniteLevelGroup>,
        ring: &Arc<ExtensionRing>,
        truncation: usize,
    ) -> Result<CrossedElement<S>> {
        let mut x = CrossedElement::zero(group, ring, truncation);
        for (label, s) in &self.coeffs {
            let q = group.index_of(label)?;
            let a = s.parse::<S>(ring, truncation)?;
            if !same_ring(a.ring(), ring) {
                return Err(Error::RingMismatch(format!("coefficient of {label} over {}", a.ring())));
            }
            x.coeffs[q] = a;
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iwasawa_series::ExactSeries;
    use crate::padic::{ExactScalar, PadicContext};

    fn zp() -> Arc<ExtensionRing> {
        ExtensionRing::prime(PadicContext::new(5, 10).unwrap())
    }

    #[test]
    fn section_product_carries() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::gamma_quotient(5, 1).unwrap());
        let s = |q| CrossedElement::<ExactScalar>::section(&g, q, &r, 8);
        // s(3) s(4) = (1 + T_0) s(2)
        let expected = CrossedElement::monomial(&g, 2, ExactSeries::one_plus_t(&r, 8));
        assert_eq!(s(3).mul_ref(&s(4)), expected);
        assert_eq!(s(1).mul_ref(&s(2)), s(3));
        // s(1)^5 = 1 + T_0
        assert_eq!(s(1).pow_u(5), CrossedElement::scalar(&g, ExactSeries::one_plus_t(&r, 8)));
    }

    #[test]
    fn associativity_on_s3() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::symmetric3(5).unwrap());
        let x = CrossedElement::<ExactScalar>::new(
            &g,
            (0..6).map(|i| ExactSeries::from_i64s(&r, 8, &[i, 1])).collect(),
        )
        .unwrap();
        let y = x.mul_ref(&x).add_ref(&CrossedElement::section(&g, 4, &r, 8));
        assert_eq!(x.mul_ref(&y).mul_ref(&x), x.mul_ref(&y.mul_ref(&x)));
    }

    #[test]
    fn json_roundtrip() {
        let r = zp();
        let g = Arc::new(FiniteLevelGroup::cyclic(5, 2).unwrap());
        let x = CrossedElement::<ExactScalar>::section(&g, 1, &r, 8)
            .sub_ref(&CrossedElement::scalar(&g, ExactSeries::one_plus_t(&r, 8)));
        let j = serde_json::to_string(&x.to_json()).unwrap();
        let back: ElementJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.parse::<ExactScalar>(&g, &r, 8).unwrap(), x);
    }
}
