mod common;

use common::{leibniz_det, q, recentered_derivative, Q};
use derange_core::exact::{int, ratio};
use derange_core::hankel::{
    closed_form_generalized, det_bareiss, det_cofactor, det_condensation, hankel_matrix,
    reduced_derivative, verify_derivative_hankel, SquareMatrix,
};
use derange_core::series::{egf_values, FamilySpec};
use proptest::prelude::*;

fn matrix_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<(i64, i64)>>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec((-20i64..20, 1i64..6), n), n)
    })
}

fn to_matrix(rows: &[Vec<(i64, i64)>]) -> (SquareMatrix, Vec<Vec<Q>>) {
    let qs: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect();
    (SquareMatrix::from_rows(qs.clone()).unwrap(), qs)
}

proptest! {
    #[test]
    fn kernels_agree_on_random_matrices(rows in matrix_strategy(6)) {
        let (m, qs) = to_matrix(&rows);
        let bareiss = det_bareiss(&m);
        prop_assert_eq!(&bareiss, &det_cofactor(&m).unwrap());
        if let Ok(c) = det_condensation(&m) {
            prop_assert_eq!(&bareiss, &c);
        }
        if m.size() <= 5 {
            prop_assert_eq!(&bareiss, &leibniz_det(&qs));
        }
    }

    #[test]
    fn singular_rows_give_zero(rows in matrix_strategy(5), k in -3i64..4) {
        let (_, mut qs) = to_matrix(&rows);
        if qs.len() >= 2 {
            qs[1] = qs[0].iter().map(|v| v * q(k, 1)).collect();
            let m = SquareMatrix::from_rows(qs).unwrap();
            prop_assert_eq!(det_bareiss(&m), int(0));
        }
    }
}

fn closed_form_families() -> Vec<FamilySpec> {
    let mut v = vec![FamilySpec::Classic];
    for r in 0..4 {
        v.push(FamilySpec::OrderRNumbers { r });
        v.push(FamilySpec::Cyclic { r });
        for x in [int(1), int(-1), int(2), ratio(1, 2), ratio(-3, 5)] {
            v.push(FamilySpec::Generalized { r, x: x.clone() });
            v.push(FamilySpec::OrderRPoly { r, x });
        }
    }
    for r in 1..4 {
        v.push(FamilySpec::RDerangementNumbers { r });
    }
    v
}

#[test]
fn kernels_agree_on_family_hankel_matrices() {
    let mut degenerate = 0;
    for spec in closed_form_families() {
        let seq = egf_values(&spec, 17).unwrap();
        for n in 0..=8 {
            let m = hankel_matrix(&seq, n).unwrap();
            let b = det_bareiss(&m);
            match det_condensation(&m) {
                Ok(c) => assert_eq!(b, c, "{spec} n={n}"),
                Err(_) => degenerate += 1,
            }
            if let Ok(c) = det_cofactor(&m) {
                assert_eq!(b, c, "{spec} n={n}");
            }
        }
    }
    // r = 0 and r-derangement matrices have zero interior minors
    assert!(degenerate > 0);
}

#[test]
fn reduced_derivative_matches_recentered_expansion() {
    for z in [q(0, 1), q(1, 2), q(-1, 1), q(2, 1), q(-3, 5)] {
        for r in 0..4 {
            for m in 0..=8 {
                assert_eq!(
                    reduced_derivative(m, r, &z).unwrap(),
                    recentered_derivative(m, r, &z),
                    "m={m} r={r} z={z}"
                );
            }
        }
    }
}

#[test]
fn derivative_hankel_agrees_with_generalized_closed_form() {
    for z in [q(0, 1), q(1, 2), q(-1, 1), q(2, 1)] {
        for r in 0..4 {
            for n in 1..=6 {
                let cell = verify_derivative_hankel(n, r, &z).unwrap();
                assert!(cell.passed(), "{cell:?}");
                let one_minus = q(1, 1) - &z;
                let expected = closed_form_generalized(n - 1, r, &one_minus.recip())
                    / num_traits::pow(one_minus, n * r as usize);
                assert_eq!(cell.expected, derange_core::exact::format_rational(&expected));
            }
        }
    }
}
