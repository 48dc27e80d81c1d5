//! Seeded random instances for property suites: small finite-level groups
//! with their representations, polynomial elements of the crossed product,
//! series with planted invariants, and torsion modules.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::akashi::TorsionModuleData;
use crate::algebra::{RingElem, Scalar};
use crate::crossed_product::{sign_character, standard_s3, ArtinRep, CrossedElement, FiniteLevelGroup};
use crate::error::Result;
use crate::iwasawa_series::{ExactSeries, IwasawaSeries, PadicSeries};
use crate::linalg::Matrix;
use crate::padic::{ExactScalar, ExtensionRing, PadicContext, PadicScalar};

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The finite groups `Q` exercised by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleGroup {
    Trivial,
    Z2,
    Z4,
    S3,
}

impl SampleGroup {
    pub const ALL: [SampleGroup; 4] = [SampleGroup::Trivial, SampleGroup::Z2, SampleGroup::Z4, SampleGroup::S3];

    pub fn name(self) -> &'static str {
        match self {
            SampleGroup::Trivial => "1",
            SampleGroup::Z2 => "Z/2",
            SampleGroup::Z4 => "Z/4",
            SampleGroup::S3 => "S3",
        }
    }

    pub fn build(self, p: u64) -> Arc<FiniteLevelGroup> {
        let g = match self {
            SampleGroup::Trivial => FiniteLevelGroup::cyclic(p, 1),
            SampleGroup::Z2 => FiniteLevelGroup::cyclic(p, 2),
            SampleGroup::Z4 => FiniteLevelGroup::cyclic(p, 4),
            SampleGroup::S3 => FiniteLevelGroup::symmetric3(p),
        };
        Arc::new(g.expect("sample groups are valid"))
    }

    /// Trivial, sign-type and two-dimensional representations of the group.
    pub fn representations<S: Scalar>(self, group: &Arc<FiniteLevelGroup>, ring: &Arc<ExtensionRing>) -> Vec<ArtinRep<S>> {
        let mut reps = vec![ArtinRep::trivial(group, ring)];
        match self {
            SampleGroup::Trivial => {}
            SampleGroup::Z2 => reps.push(sign_character(group, ring).expect("Z/2 sign")),
            SampleGroup::Z4 => {
                let alt = (0..4).map(|i| S::from_i64(ring, if i % 2 == 0 { 1 } else { -1 })).collect();
                reps.push(ArtinRep::characters(group, ring, alt).expect("(-1)^i"));
                // rotation by a quarter turn, i -> R^i
                let r = Matrix::from_rows(vec![
                    vec![S::zero(ring), S::from_i64(ring, -1)],
                    vec![S::one(ring), S::zero(ring)],
                ])
                .expect("2x2");
                let mut ms = vec![Matrix::identity(2, &S::zero(ring))];
                for i in 1..4 {
                    ms.push(ms[i - 1].mul(&r).expect("2x2"));
                }
                reps.push(ArtinRep::new(group, ring, ms, None).expect("rotation"));
            }
            SampleGroup::S3 => {
                reps.push(sign_character(group, ring).expect("S3 sign"));
                reps.push(standard_s3(group, ring).expect("S3 standard"));
            }
        }
        reps
    }
}

/// `Z_p` with precision `N`.
pub fn prime_ring(p: u64, precision: u32) -> Arc<ExtensionRing> {
    ExtensionRing::prime(PadicContext::new(p, precision).expect("valid context"))
}

/// The unramified quadratic extension `Z_p[x] / (x^2 - n)` for the least
/// quadratic non-residue `n`.
pub fn quadratic_unramified(p: u64, precision: u32) -> Arc<ExtensionRing> {
    let ctx = PadicContext::new(p, precision).expect("valid context");
    let n = (2..p as i64)
        .find(|&n| (1..p as i64).all(|x| (x * x - n) % p as i64 != 0))
        .expect("odd primes have non-residues");
    ExtensionRing::unramified(ctx, vec![-n, 0, 1]).expect("x^2 - n is irreducible")
}

/// A random element of `O` with integer coordinates in `[-bound, bound]`.
pub fn random_exact(rng: &mut impl Rng, ring: &Arc<ExtensionRing>, bound: i64) -> ExactScalar {
    (0..ring.degree()).fold(ExactScalar::zero(ring), |acc, i| {
        let c = ExactScalar::from_i64(ring, rng.gen_range(-bound..=bound));
        acc.add_ref(&c.mul_ref(&ExactScalar::basis(ring, i)))
    })
}

/// A polynomial of degree at most `max_deg`; each coefficient is divisible
/// by `p` with probability `p_multiple`.
pub fn random_poly(
    rng: &mut impl Rng,
    ring: &Arc<ExtensionRing>,
    max_deg: usize,
    truncation: usize,
    p_multiple: f64,
) -> ExactSeries {
    let p = ExactScalar::from_i64(ring, ring.p() as i64);
    let coeffs = (0..=rng.gen_range(0..=max_deg))
        .map(|_| {
            let c = random_exact(rng, ring, 6);
            if rng.gen_bool(p_multiple) {
                c.mul_ref(&p)
            } else {
                c
            }
        })
        .collect();
    ExactSeries::new(ring, truncation, coeffs).expect("coefficients over the ring")
}

/// A nonzero polynomial.
pub fn random_nonzero_poly(
    rng: &mut impl Rng,
    ring: &Arc<ExtensionRing>,
    max_deg: usize,
    truncation: usize,
    p_multiple: f64,
) -> ExactSeries {
    loop {
        let f = random_poly(rng, ring, max_deg, truncation, p_multiple);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A crossed-product element with polynomial coefficients; some group
/// coefficients are left zero.
pub fn random_element(
    rng: &mut impl Rng,
    group: &Arc<FiniteLevelGroup>,
    ring: &Arc<ExtensionRing>,
    max_deg: usize,
    truncation: usize,
) -> CrossedElement<ExactScalar> {
    let p_multiple = rng.gen_range(0.0..0.6);
    let coeffs = (0..group.order())
        .map(|_| {
            if rng.gen_bool(0.3) {
                ExactSeries::zero(ring, truncation)
            } else {
                random_poly(rng, ring, max_deg, truncation, p_multiple)
            }
        })
        .collect();
    CrossedElement::new(group, coeffs).expect("coefficients match the group")
}

/// A nonzero crossed-product element.
pub fn random_nonzero_element(
    rng: &mut impl Rng,
    group: &Arc<FiniteLevelGroup>,
    ring: &Arc<ExtensionRing>,
    max_deg: usize,
    truncation: usize,
) -> CrossedElement<ExactScalar> {
    loop {
        let x = random_element(rng, group, ring, max_deg, truncation);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A character value `gamma_0 -> 1 + p k`.
pub fn random_gamma_character(rng: &mut impl Rng, ring: &Arc<ExtensionRing>) -> ExactScalar {
    let k = random_exact(rng, ring, 4);
    ExactScalar::one(ring).add_ref(&k.mul_ref(&ExactScalar::from_i64(ring, ring.p() as i64)))
}

/// A `D`-term series over `Z_p / p^N` with `mu` and `lambda` planted: every
/// coefficient is divisible by `p^mu`, the first `lambda` by `p^{mu+1}`, and
/// the `lambda`-th is `p^mu` times a unit.
pub fn random_padic_series(rng: &mut impl Rng, ring: &Arc<ExtensionRing>, truncation: usize) -> PadicSeries {
    let p = ring.p() as i128;
    let modulus = ring.context().modulus();
    let mu = rng.gen_range(0..=2u32);
    let lambda = rng.gen_range(0..truncation.min(12));
    let coeffs = (0..truncation)
        .map(|i| {
            let mut c = rng.gen_range(0..modulus);
            if i < lambda {
                c *= p;
            } else if i == lambda && c % p == 0 {
                c += rng.gen_range(1..p);
            }
            PadicScalar::from_i128(ring, c * p.pow(mu))
        })
        .collect();
    IwasawaSeries::new(ring, truncation, coeffs).expect("coefficients over the ring")
}

/// A torsion module with one to three homology degrees, each given by a
/// nonzero polynomial or a small presentation with nonzero determinant.
pub fn random_module(rng: &mut impl Rng, ring: &Arc<ExtensionRing>, truncation: usize) -> Result<TorsionModuleData<ExactScalar>> {
    use crate::akashi::DegreeData;
    let n = rng.gen_range(1..=3);
    let mut degrees = Vec::new();
    while degrees.len() < n {
        if rng.gen_bool(0.5) {
            degrees.push(DegreeData::Series(random_nonzero_poly(rng, ring, 3, truncation, 0.3)));
        } else {
            let k = rng.gen_range(1..=2);
            let m = Matrix::from_fn(k, k, |_, _| random_poly(rng, ring, 2, truncation, 0.3));
            if !crate::iwasawa_series::det_series(&m)?.is_zero() {
                degrees.push(DegreeData::Matrix(m));
            }
        }
    }
    TorsionModuleData::new(ring, degrees)
}
