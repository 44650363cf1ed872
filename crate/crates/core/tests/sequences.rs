use derange_core::exact::{from_integer, int, ratio, Rational};
use derange_core::oracle::{count_cyclic_derangements_brute, count_derangements_brute};
use derange_core::poly::{
    classic_derangement, cyclic_derangement, generalized_by_convolution, generalized_poly,
    order_by_convolution, order_poly, reflect, Polynomial,
};
use derange_core::series::{egf_values, FamilySpec};
use proptest::prelude::*;

fn grid() -> Vec<Rational> {
    vec![int(-1), int(1), int(2), ratio(1, 2), ratio(-3, 5)]
}

#[test]
fn generalized_three_paths_to_forty() {
    for r in 0..=6 {
        for x in grid() {
            let egf = egf_values(&FamilySpec::Generalized { r, x: x.clone() }, 41).unwrap();
            let conv = generalized_by_convolution(r, &x, 41);
            for n in 0..=40 {
                let explicit = generalized_poly(n, r).eval(&x);
                assert_eq!(egf[n], explicit, "n={n} r={r} x={x}");
                assert_eq!(conv[n], explicit, "n={n} r={r} x={x}");
            }
        }
    }
}

#[test]
fn order_egf_is_reflection_of_generalized() {
    for r in 0..=5 {
        for x in grid() {
            let ord = egf_values(&FamilySpec::OrderRPoly { r, x: x.clone() }, 31).unwrap();
            let gen = egf_values(&FamilySpec::Generalized { r, x: x.recip() }, 31).unwrap();
            let conv = order_by_convolution(r, &x, 31);
            for n in 0..=30 {
                assert_eq!(ord[n], num_traits::pow(x.clone(), n) * &gen[n]);
                assert_eq!(conv[n], ord[n]);
            }
        }
    }
}

#[test]
fn counts_match_brute_force() {
    let egf = egf_values(&FamilySpec::Classic, 10).unwrap();
    for n in 0..=9 {
        let brute = count_derangements_brute(n).unwrap();
        assert_eq!(classic_derangement(n), brute.into());
        assert_eq!(egf[n], from_integer(brute.into()));
    }
    for r in 1..=4 {
        for n in 0..=6 {
            let brute = count_cyclic_derangements_brute(n, r).unwrap();
            assert_eq!(cyclic_derangement(n, r), brute.into(), "n={n} r={r}");
        }
    }
}

#[test]
fn r_derangement_poly_at_minus_one_is_the_number_family() {
    for r in 1..=4 {
        assert_eq!(
            egf_values(&FamilySpec::RDerangementPoly { r, x: int(-1) }, 20).unwrap(),
            egf_values(&FamilySpec::RDerangementNumbers { r }, 20).unwrap()
        );
    }
}

proptest! {
    #[test]
    fn reflect_is_an_involution(coeffs in prop::collection::vec(-50i64..50, 1..12), extra in 0usize..4) {
        let p = Polynomial::new(coeffs.iter().map(|&c| int(c)).collect());
        let n = coeffs.len() - 1 + extra;
        prop_assert_eq!(reflect(&reflect(&p, n).unwrap(), n).unwrap(), p);
    }

    #[test]
    fn reflection_identity_at_random_points(n in 0usize..25, r in 0u32..6, a in -9i64..10, b in 1i64..10) {
        prop_assume!(a != 0);
        let x = ratio(a, b);
        let lhs = num_traits::pow(x.clone(), n) * generalized_poly(n, r).eval(&x.recip());
        prop_assert_eq!(lhs, order_poly(n, r).eval(&x));
    }
}
