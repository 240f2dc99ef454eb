use lahnet::lah::{lah_closed_form, lah_enumerate, lah_matrix, lah_recurrence_table};
use lahnet::linalg::{determinant, laplace_determinant, minor_value, submatrix};
use lahnet::tnn::{check_variation_decreasing, is_totally_nonnegative, weak_variation};
use lahnet::{BigInt, ExactMatrix, IndexSet};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(lo..=hi, n * n).prop_map(move |v| {
        ExactMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn any_square(max: usize, lo: i64, hi: i64) -> impl Strategy<Value = ExactMatrix> {
    (1..=max).prop_flat_map(move |n| matrix(n, lo, hi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn bareiss_matches_laplace_3x3(m in matrix(3, -3, 3)) {
        prop_assert_eq!(determinant(&m).unwrap(), laplace_determinant(&m).unwrap());
    }

    #[test]
    fn weak_variation_ignores_positive_scaling_and_negation(
        u in prop::collection::vec(-20i64..=20, 1..12),
        scale in 1i64..50,
    ) {
        let v = weak_variation(&u).unwrap();
        let scaled: Vec<i64> = u.iter().map(|x| x * scale).collect();
        let negated: Vec<i64> = u.iter().map(|x| -x).collect();
        prop_assert_eq!(weak_variation(&scaled).unwrap(), v);
        prop_assert_eq!(weak_variation(&negated).unwrap(), v);
    }

    #[test]
    fn weak_variation_bounded_by_nonzeros(u in prop::collection::vec(-3i64..=3, 1..12)) {
        let nonzero = u.iter().filter(|&&x| x != 0).count();
        let v = weak_variation(&u).unwrap();
        if nonzero == 0 {
            prop_assert_eq!(v, 0);
        } else {
            prop_assert!(v < nonzero);
        }
    }

    #[test]
    fn weak_variation_matches_indexed_definition(u in prop::collection::vec(-2i64..=2, 1..10)) {
        // Pairs i < j with u_i u_j < 0 and only zeros strictly between.
        let mut pairs = 0;
        for i in 0..u.len() {
            for j in (i + 1)..u.len() {
                if u[i] * u[j] < 0 && u[i + 1..j].iter().all(|&x| x == 0) {
                    pairs += 1;
                }
            }
        }
        prop_assert_eq!(weak_variation(&u).unwrap(), pairs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_laplace_up_to_5(m in any_square(5, -9, 9)) {
        prop_assert_eq!(determinant(&m).unwrap(), laplace_determinant(&m).unwrap());
    }

    #[test]
    fn lower_triangular_determinant_is_diagonal_product(
        n in 1usize..=6,
        raw in prop::collection::vec(-50i64..=50, 36),
    ) {
        let m = ExactMatrix::from_fn(n, n, |i, j| {
            if j > i { BigInt::zero() } else { BigInt::from(raw[(i - 1) * 6 + (j - 1)]) }
        });
        let product: BigInt = (1..=n).map(|i| m.entry(i, i).clone()).product();
        prop_assert_eq!(determinant(&m).unwrap(), product);
    }

    #[test]
    fn full_submatrix_is_identity_selection(m in any_square(6, -100, 100)) {
        let all = IndexSet::full(m.rows());
        prop_assert_eq!(submatrix(&m, &all, &all).unwrap(), m);
    }

    #[test]
    fn tnn_witness_is_reproducible(m in any_square(4, -2, 3)) {
        let report = is_totally_nonnegative(&m).unwrap();
        prop_assert_eq!(report.is_tnn(), report.witness.is_none());
        if let Some(w) = report.witness {
            prop_assert!(w.value < BigInt::zero());
            prop_assert_eq!(minor_value(&m, &w.rows, &w.cols).unwrap(), w.value);
        }
    }

    #[test]
    fn lah_matrix_decreases_variation_for_any_seed(seed in any::<u64>()) {
        let lm = lah_matrix(4).unwrap();
        let report = check_variation_decreasing(lm.matrix(), 50, seed, 5).unwrap();
        prop_assert!(report.holds());
    }
}

#[test]
fn triple_agreement_up_to_8() {
    let table = lah_recurrence_table(8);
    for n in 0..=8 {
        for k in 0..=n {
            let rec = table.get(n, k);
            assert_eq!(rec, lah_closed_form(n, k), "closed form ({n},{k})");
            assert_eq!(rec, lah_enumerate(n, k).unwrap(), "enumeration ({n},{k})");
        }
    }
}

#[test]
fn zero_pattern_matches_enumeration() {
    for n in 0..=8 {
        for k in 0..=(n + 2) {
            let zero = lah_enumerate(n, k).unwrap().is_zero();
            assert_eq!(zero, (k == 0 && n > 0) || k > n, "({n},{k})");
            assert_eq!(lah_closed_form(n, k).is_zero(), zero);
        }
    }
}

#[test]
fn lah_submatrix_example() {
    // LM_3 built from the recurrence.
    let t = lah_recurrence_table(3);
    let lm3 = ExactMatrix::from_fn(3, 3, |i, j| BigInt::from(t.get(i, j)));
    let rows: IndexSet = "2,3".parse().unwrap();
    let cols: IndexSet = "1,2".parse().unwrap();
    assert_eq!(
        submatrix(&lm3, &rows, &cols).unwrap(),
        ExactMatrix::from_rows([[2, 1], [6, 6]]).unwrap()
    );
    assert_eq!(minor_value(&lm3, &rows, &cols).unwrap(), BigInt::from(6));
    assert_eq!(lm3, lah_matrix(3).unwrap().into_matrix());
}

#[test]
fn lah_determinants() {
    assert!(determinant(lah_matrix(4).unwrap().matrix())
        .unwrap()
        .is_one());
    let lm5 = lah_matrix(5).unwrap();
    let all = IndexSet::full(5);
    assert!(minor_value(lm5.matrix(), &all, &all).unwrap().is_one());
    assert_eq!(
        laplace_determinant(lm5.matrix()).unwrap(),
        determinant(lm5.matrix()).unwrap()
    );
}

/// Exhaustive search for a 2x2 matrix with entries in {-1, 0, 1} and a vector
/// x in {-1, 0, 1}^2 with Var(Mx) > Var(x).
#[test]
fn brute_force_variation_violation() {
    let vals = [-1i64, 0, 1];
    let mut found = None;
    'search: for a in vals {
        for b in vals {
            for c in vals {
                for d in vals {
                    for x0 in vals {
                        for x1 in vals {
                            if x0 == 0 && x1 == 0 {
                                continue;
                            }
                            let mx = [a * x0 + b * x1, c * x0 + d * x1];
                            if weak_variation(&mx).unwrap() > weak_variation(&[x0, x1]).unwrap() {
                                found = Some(([[a, b], [c, d]], [x0, x1]));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
    }
    let (m, x) = found.expect("a violating pair exists");
    // First hit in search order: (0, -1) maps to (1, -1).
    assert_eq!((m, x), ([[-1, -1], [-1, 1]], [0, -1]));
    let m = ExactMatrix::from_rows(m).unwrap();
    assert!(!is_totally_nonnegative(&m).unwrap().is_tnn());
    let report = check_variation_decreasing(&m, 200, 3, 1).unwrap();
    assert!(!report.holds());
}
