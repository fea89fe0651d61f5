use angmom::groebner::{buchberger, normal_form, IdealBasis};
use angmom::hilbert::{complete_intersection_series, hilbert_series_quotient};
use angmom::model::{gram_images, minor_generators, moment_components, q_generators, GramRing, PhaseRing};
use angmom::MonomialOrder;

#[test]
fn quadratic_relations_pull_back_into_the_moment_ideal() {
    let order = MonomialOrder::GradedRevLex;
    for k in 1..=2 {
        for n in 1..=3 {
            let pr = PhaseRing::new(k, n).unwrap();
            let gr = GramRing::new(k).unwrap();
            let images = gram_images(&pr, &gr).unwrap();
            let moment = moment_components(&pr);
            let gb = buchberger(pr.ring(), &moment, &order).unwrap();
            for (i, j, q) in q_generators(&gr) {
                let pulled = q.substitute(pr.ring(), &images).unwrap();
                assert!(
                    normal_form(&pulled, &gb, &order).unwrap().is_zero(),
                    "Q[{i},{j}] for k={k} n={n}"
                );
            }
        }
    }
}

#[test]
fn gram_minors_beyond_the_dimension_vanish_identically() {
    for (k, n) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let pr = PhaseRing::new(k, n).unwrap();
        let gr = GramRing::new(k).unwrap();
        let images = gram_images(&pr, &gr).unwrap();
        for m in minor_generators(&gr, n + 1).unwrap().iter().take(40) {
            assert!(
                m.polynomial.substitute(pr.ring(), &images).unwrap().is_zero(),
                "{}",
                m.label()
            );
        }
    }
}

#[test]
fn moment_ideal_is_a_complete_intersection_when_particles_suffice() {
    for (k, n) in [(2, 2), (3, 2), (2, 3)] {
        let pr = PhaseRing::new(k, n).unwrap();
        let ideal = IdealBasis::new(pr.ring(), moment_components(&pr)).unwrap();
        let h = hilbert_series_quotient(&ideal, &MonomialOrder::GradedRevLex).unwrap();
        let ci = complete_intersection_series(k, n).unwrap().reduce();
        assert_eq!(h, ci, "k={k} n={n}");
    }
}
