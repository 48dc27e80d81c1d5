use std::collections::BTreeSet;

use iwk_core::akashi::bad_twist_scan;
use iwk_core::crossed_product::{gamma_pushforward, ore_left_test, ore_s_test, phi_rho, ArtinRep};
use iwk_core::euler_arith::{artin_check, artin_solve, chi_formula, ArtinDecomposition, FieldArithmeticData, Irreducible};
use iwk_core::iwasawa_series::{ExactSeries, LPoly};
use iwk_core::linalg::Matrix;
use iwk_core::lvalue::{interpolate_valuation, InterpolationInput, Rational};
use iwk_core::padic::{padic_snf, ExactScalar};
use iwk_core::sampling::{self, SampleGroup};
use iwk_core::{RingElem, Scalar, Valuation};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::Rng;

const P: u64 = 5;
// generous window so products of the sampled polynomials are never cut
const D: usize = 64;

fn poly(f: &ExactSeries) -> LPoly {
    LPoly::from_series(f).expect("untruncated polynomial")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuation_is_additive(seed: u64) {
        let mut rng = sampling::rng(seed);
        for ring in [sampling::prime_ring(P, 20), sampling::quadratic_unramified(P, 20)] {
            let mut draw = || {
                let x = sampling::random_exact(&mut rng, &ring, 40);
                let k = rng.gen_range(0..4);
                x.scale_p_power(k).reduce().unwrap()
            };
            let (x, y) = (draw(), draw());
            match (x.valuation(), y.valuation()) {
                (Valuation::Finite(a), Valuation::Finite(b)) if a + b < Ratio::from(20) => {
                    prop_assert_eq!(x.mul_ref(&y).valuation(), Valuation::Finite(a + b));
                }
                _ => {}
            }
        }
    }

    #[test]
    fn snf_invariant_under_unimodular_change(seed: u64) {
        let mut rng = sampling::rng(seed);
        let ring = sampling::prime_ring(P, 20);
        let n = rng.gen_range(1..=3);
        let a = Matrix::from_fn(n, n, |_, _| ExactScalar::from_i64(&ring, rng.gen_range(-30..=30)));
        let det = a.det().unwrap();
        // unimodular U, V as products of elementary matrices
        let elementary = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut u = Matrix::identity(n, &ExactScalar::zero(&ring));
            for _ in 0..4 {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if i != j {
                    let e = Matrix::from_fn(n, n, |r, c| {
                        let base = if r == c { 1 } else { 0 };
                        let extra = if (r, c) == (i, j) { rng.gen_range(-7..=7) } else { 0 };
                        ExactScalar::from_i64(&ring, base + extra)
                    });
                    u = u.mul(&e).unwrap();
                }
            }
            u
        };
        let u = elementary(&mut rng);
        let v = elementary(&mut rng);
        let b = u.mul(&a).unwrap().mul(&v).unwrap();
        let to_padic = |m: &Matrix<ExactScalar>| m.try_map(|x| x.reduce()).unwrap();
        let sa = padic_snf(&to_padic(&a)).unwrap();
        let sb = padic_snf(&to_padic(&b)).unwrap();
        prop_assert_eq!(&sa.divisors, &sb.divisors);
        if !det.is_zero() && det.valuation() < Valuation::int(20) {
            let v = det.valuation().finite().unwrap().to_integer();
            prop_assert_eq!(sa.chi_exponent().unwrap(), v);
        }
    }

    #[test]
    fn twist_is_a_ring_map_and_composes(seed: u64) {
        let mut rng = sampling::rng(seed);
        let ring = sampling::prime_ring(P, 20);
        let f = sampling::random_poly(&mut rng, &ring, 4, D, 0.3);
        let g = sampling::random_poly(&mut rng, &ring, 4, D, 0.3);
        let c1 = sampling::random_gamma_character(&mut rng, &ring);
        let c2 = sampling::random_gamma_character(&mut rng, &ring);
        let lhs = f.mul_ref(&g).twist_substitute(&c1).unwrap();
        let rhs = f.twist_substitute(&c1).unwrap().mul_ref(&g.twist_substitute(&c1).unwrap());
        prop_assert_eq!(poly(&lhs), poly(&rhs));
        let twice = f.twist_substitute(&c1).unwrap().twist_substitute(&c2).unwrap();
        let once = f.twist_substitute(&c1.mul_ref(&c2)).unwrap();
        prop_assert_eq!(poly(&twice), poly(&once));
    }

    #[test]
    fn ore_set_is_multiplicative(seed: u64) {
        let mut rng = sampling::rng(seed);
        let ring = sampling::prime_ring(P, 20);
        let kind = SampleGroup::ALL[rng.gen_range(0..4)];
        let g = kind.build(P);
        let x = sampling::random_element(&mut rng, &g, &ring, 3, D);
        let y = sampling::random_element(&mut rng, &g, &ring, 3, D);
        let (rx, ry) = (ore_s_test(&x).unwrap(), ore_s_test(&y).unwrap());
        let rxy = ore_s_test(&x.mul_ref(&y)).unwrap();
        prop_assert_eq!(rxy.det.clone(), rx.det.mul_ref(&ry.det));
        if rx.in_s && ry.in_s {
            prop_assert!(rxy.in_s);
        }
    }

    #[test]
    fn left_and_right_tests_agree(seed: u64) {
        let mut rng = sampling::rng(seed);
        let ring = sampling::prime_ring(P, 20);
        let kind = SampleGroup::ALL[rng.gen_range(0..4)];
        let g = kind.build(P);
        let x = sampling::random_element(&mut rng, &g, &ring, 3, D);
        prop_assert_eq!(ore_s_test(&x).unwrap().in_s, ore_left_test(&x).unwrap().in_s);
    }

    #[test]
    fn phi_rho_is_multiplicative(seed: u64) {
        let mut rng = sampling::rng(seed);
        let ring = sampling::prime_ring(P, 20);
        let kind = SampleGroup::ALL[rng.gen_range(0..4)];
        let g = kind.build(P);
        let reps = kind.representations::<ExactScalar>(&g, &ring);
        let rho = reps[rng.gen_range(0..reps.len())]
            .with_gamma_character(sampling::random_gamma_character(&mut rng, &ring))
            .unwrap();
        let x = sampling::random_element(&mut rng, &g, &ring, 3, D);
        let y = sampling::random_element(&mut rng, &g, &ring, 3, D);
        let lhs = phi_rho(&x.mul_ref(&y), &rho).unwrap();
        let rhs = phi_rho(&x, &rho).unwrap().mul(&phi_rho(&y, &rho).unwrap()).unwrap();
        for (a, b) in lhs.entries().iter().zip(rhs.entries()) {
            prop_assert_eq!(poly(a), poly(b));
        }
    }

    #[test]
    fn pushforward_is_the_trivial_phi(seed: u64) {
        let mut rng = sampling::rng(seed);
        let ring = sampling::prime_ring(P, 20);
        let kind = SampleGroup::ALL[rng.gen_range(0..4)];
        let g = kind.build(P);
        let x = sampling::random_element(&mut rng, &g, &ring, 4, D);
        let via_phi = phi_rho(&x, &ArtinRep::trivial(&g, &ring)).unwrap();
        prop_assert_eq!(poly(&gamma_pushforward(&x).unwrap()), poly(&via_phi[(0, 0)]));
    }

    #[test]
    fn norm_is_multiplicative(seed: u64) {
        let mut rng = sampling::rng(seed);
        let o = sampling::quadratic_unramified(P, 20);
        let f = sampling::random_poly(&mut rng, &o, 3, D, 0.3);
        let g = sampling::random_poly(&mut rng, &o, 3, D, 0.3);
        let lhs = f.mul_ref(&g).norm_to_base().unwrap();
        let rhs = f.norm_to_base().unwrap().mul_ref(&g.norm_to_base().unwrap());
        prop_assert_eq!(poly(&lhs), poly(&rhs));
    }

    #[test]
    fn artin_solve_then_check(sub in -40i64..80, known in prop::collection::vec((1u32..4, -5i64..10), 0..4), n in 1u32..5) {
        let mut irreducibles: Vec<Irreducible> = known
            .iter()
            .map(|&(dim, e)| Irreducible { label: None, dim, count: 1, chi_exponent: Some(e) })
            .collect();
        irreducibles.push(Irreducible { label: None, dim: n, count: 1, chi_exponent: None });
        let d = ArtinDecomposition { subgroup_chi_exponent: sub, base_field_degree: 1, irreducibles, group_order: None };
        match artin_solve(&d) {
            Ok(x) => prop_assert!(artin_check(&d.with_solution(x)).unwrap()),
            Err(_) => {
                let residual = sub - known.iter().map(|&(dim, e)| dim as i64 * e).sum::<i64>();
                prop_assert!(residual % n as i64 != 0);
            }
        }
    }

    #[test]
    fn chi_formula_is_additive(a in arith(), b in arith()) {
        let joint = a.combine(&b).unwrap();
        prop_assert_eq!(chi_formula(&joint).unwrap(), chi_formula(&a).unwrap() + chi_formula(&b).unwrap());
    }

    #[test]
    fn interpolation_scaling_invariance(
        lv in -6i64..6, eps in -6i64..6, a_p in prop::sample::select(vec![1i64, 2, 3, 4, 6, -1, -3]),
        f_rho in 0u32..4, hat in prop::collection::vec(-3i64..4, 1..3)
    ) {
        let hat = if hat.iter().all(|&c| c == 0) { vec![1] } else { hat };
        let base = InterpolationInput {
            p: P, a_p, f_rho,
            lvalue_valuation: Some(Rational::new(2 * lv + 1, 2)),
            lvalue_vanishes: false,
            epsilon_valuation: Rational::new(2 * eps - 1, 2),
            p_rho: vec![1, -1],
            p_rho_hat: hat.clone(),
            m_rho: 1, d_plus: 1, d_minus: 0, dim: None, precision: 20,
        };
        let Ok(out) = interpolate_valuation(&base) else { return Ok(()) };
        // p moved from the L-value into the epsilon factor
        let mut shifted = base.clone();
        shifted.lvalue_valuation = Some(Rational::new(2 * lv + 3, 2));
        shifted.epsilon_valuation = Rational::new(2 * eps - 3, 2);
        prop_assert_eq!(interpolate_valuation(&shifted).unwrap().total, out.total);
        // both Euler factors multiplied by p
        let mut scaled = base.clone();
        scaled.p_rho = base.p_rho.iter().map(|c| c * P as i64).collect();
        scaled.p_rho_hat = hat.iter().map(|c| c * P as i64).collect();
        prop_assert_eq!(interpolate_valuation(&scaled).unwrap().total, out.total);
    }

    #[test]
    fn bad_scan_is_monotone_and_additive(seed: u64) {
        let mut rng = sampling::rng(seed);
        let ring = sampling::prime_ring(P, 20);
        let m = sampling::random_module(&mut rng, &ring, D).unwrap();
        let n = sampling::random_module(&mut rng, &ring, D).unwrap();
        let small = bad_twist_scan(&m, 1).unwrap();
        let large = bad_twist_scan(&m, 2).unwrap();
        prop_assert!(small.is_subset(&large));
        let union: BTreeSet<u32> = large.union(&bad_twist_scan(&n, 2).unwrap()).copied().collect();
        prop_assert_eq!(bad_twist_scan(&m.direct_sum(&n).unwrap(), 2).unwrap(), union);
    }
}

fn arith() -> impl Strategy<Value = FieldArithmeticData> {
    let pow = |k: u32| 5u128.pow(k);
    (
        0u32..3,
        0u32..3,
        prop::collection::vec(1u64..60, 0..4),
        prop::collection::vec(0u32..3, 0..4),
    )
        .prop_map(move |(t, s, bad, good)| FieldArithmeticData {
            p: P,
            torsion_order: pow(t),
            sha_order: pow(s),
            bad_places: bad,
            good_places: good.into_iter().map(pow).collect(),
        })
}

#[test]
fn sampled_padic_series_have_planted_invariants() {
    let mut rng = sampling::rng(7);
    let ring = sampling::prime_ring(P, 20);
    for _ in 0..20 {
        let f = sampling::random_padic_series(&mut rng, &ring, 32);
        let (mu, lambda) = f.mu_lambda().unwrap();
        let first_unit = f
            .coeffs()
            .iter()
            .position(|c| c.valuation() == Valuation::int(mu))
            .unwrap();
        assert_eq!(lambda, first_unit);
    }
}
