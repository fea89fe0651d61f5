mod common;

use angmom::exterior::ExteriorElement;
use angmom::groebner::{buchberger, divide, normal_form, s_polynomial, IdealBasis};
use angmom::hilbert::{hilbert_series_quotient, laurent_at_one, HilbertSeries};
use angmom::model::PhaseRing;
use angmom::{MonomialOrder, Polynomial, Rational};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDERS: [MonomialOrder; 3] = [
    MonomialOrder::Lex,
    MonomialOrder::GradedLex,
    MonomialOrder::GradedRevLex,
];

fn sorted(polys: &[Polynomial]) -> Vec<String> {
    let mut v: Vec<String> = polys.iter().map(Polynomial::format).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_reconstructs_the_dividend(seed in any::<u64>(), which in 0usize..3) {
        let rng = &mut ChaCha8Rng::seed_from_u64(seed);
        let ring = ring(3);
        let order = &ORDERS[which];
        let f = random_polynomial(rng, &ring, 6, 4);
        let divisors: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_nonzero(rng, &ring, 3, 2)).collect();
        let div = divide(&f, &divisors, order).unwrap();
        let mut back = div.remainder.clone();
        for (q, g) in div.quotients.iter().zip(&divisors) {
            back = &back + &(q * g);
        }
        prop_assert_eq!(back, f);
        let compiled = order.compile(&ring).unwrap();
        for (m, _) in div.remainder.terms() {
            for g in &divisors {
                prop_assert!(!g.leading_monomial(&compiled).unwrap().divides(m));
            }
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(seed in any::<u64>(), which in 0usize..3) {
        let rng = &mut ChaCha8Rng::seed_from_u64(seed);
        let ring = ring(3);
        let order = &ORDERS[which];
        let mut gens: Vec<Polynomial> = (0..rng.gen_range(2..=3)).map(|_| random_nonzero(rng, &ring, 3, 2)).collect();
        let gb = buchberger(&ring, &gens, order).unwrap();
        for g in &gens {
            prop_assert!(normal_form(g, &gb, order).unwrap().is_zero());
        }
        for (i, a) in gb.iter().enumerate() {
            for b in &gb[i + 1..] {
                let s = s_polynomial(a, b, order).unwrap();
                prop_assert!(normal_form(&s, &gb, order).unwrap().is_zero());
            }
        }
        gens.shuffle(rng);
        gens.reverse();
        prop_assert_eq!(sorted(&buchberger(&ring, &gens, order).unwrap()), sorted(&gb));
    }

    #[test]
    fn hilbert_function_matches_monomial_counting(seed in any::<u64>(), binomial in any::<bool>()) {
        let rng = &mut ChaCha8Rng::seed_from_u64(seed);
        let ring = ring(4);
        let n = rng.gen_range(1..=4);
        let gens = if binomial {
            random_binomial_ideal(rng, &ring, n)
        } else {
            random_monomial_ideal(rng, &ring, n)
        };
        let ideal = IdealBasis::new(&ring, gens.clone()).unwrap();
        let h = hilbert_series_quotient(&ideal, &MonomialOrder::GradedRevLex).unwrap();
        let coeffs = h.coefficients(6);
        for d in 0..=6u32 {
            prop_assert_eq!(coeffs[d as usize], hilbert_function(&ring, &gens, d) as i128, "degree {}", d);
        }
    }

    #[test]
    fn hilbert_series_does_not_depend_on_the_order(seed in any::<u64>()) {
        let rng = &mut ChaCha8Rng::seed_from_u64(seed);
        let ring = ring(4);
        let gens = random_binomial_ideal(rng, &ring, 3);
        let ideal = IdealBasis::new(&ring, gens).unwrap();
        let series: Vec<HilbertSeries> = ORDERS.iter().map(|o| hilbert_series_quotient(&ideal, o).unwrap()).collect();
        prop_assert_eq!(&series[0], &series[1]);
        prop_assert_eq!(&series[1], &series[2]);
    }

    #[test]
    fn laurent_partial_sums_approach_the_series(
        mut numerator in prop::collection::vec(0i64..5, 1..5),
        weights in prop::collection::vec(1u32..4, 1..4),
    ) {
        numerator[0] = 1;
        let h = HilbertSeries::new(numerator.clone(), weights.clone());
        let terms = 3;
        let c = laurent_at_one(&h, terms + 1).unwrap();
        let d = weights.len() as u32;
        let eps = Rational::new(1, 1_000_000).unwrap();
        let t = &Rational::one() - &eps;
        let mut value = Rational::zero();
        for (i, &a) in numerator.iter().enumerate() {
            value += &(&Rational::from(a) * &t.pow(i as u32));
        }
        for &w in &weights {
            value = (&value / &(&Rational::one() - &t.pow(w))).unwrap();
        }
        let mut rest = &value * &eps.pow(d);
        for (j, cj) in c.iter().take(terms).enumerate() {
            rest -= &(cj * &eps.pow(j as u32));
        }
        let scaled = (&rest / &eps.pow(terms as u32)).unwrap().to_f64();
        let expect = c[terms].to_f64();
        prop_assert!((scaled - expect).abs() <= 1e-3 * (1.0 + expect.abs()), "{} vs {}", scaled, expect);
    }

    #[test]
    fn poisson_bracket_satisfies_jacobi(seed in any::<u64>()) {
        let rng = &mut ChaCha8Rng::seed_from_u64(seed);
        let pr = PhaseRing::new(2, 2).unwrap();
        let f = phase_polynomial(rng, &pr);
        let g = phase_polynomial(rng, &pr);
        let h = phase_polynomial(rng, &pr);
        prop_assert!(jacobiator(&f, &g, &h, &pr).is_zero());
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative(seed in any::<u64>()) {
        let rng = &mut ChaCha8Rng::seed_from_u64(seed);
        let ring = ring(2);
        let rank = 5;
        let mut element = |grade: usize| {
            let blades = angmom::model::subsets(rank, grade);
            let mut terms = Vec::new();
            for b in blades {
                if rng.gen_bool(0.5) {
                    terms.push((b, random_polynomial(rng, &ring, 2, 2)));
                }
            }
            ExteriorElement::from_terms(&ring, rank, grade, terms).unwrap()
        };
        let (a, b, c) = (element(1), element(2), element(1));
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.wedge(&c).unwrap(), c.wedge(&a).unwrap().scale(&Polynomial::constant(&ring, Rational::from(-1))));
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }
}
