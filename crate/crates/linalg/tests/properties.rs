use exstat_linalg::*;
use proptest::prelude::*;

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec(
                prop_oneof![4 => Just(0i64), 3 => -1i64..=1, 2 => -6i64..=6],
                c,
            ),
            r,
        )
    })
}

fn minors_gcd(a: &[Vec<i64>], k: usize) -> Integer {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
    let mut g = Integer::ZERO;
    for rs in combos(a.len(), k) {
        for cs in combos(a[0].len(), k) {
            let sub: Vec<Vec<i64>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| a[i][j]).collect())
                .collect();
            let d = determinant(&SparseIntMatrix::from_i64_rows(&sub));
            g = g.gcd(&d);
        }
    }
    g
}

fn unit_det(m: &SparseIntMatrix) -> bool {
    determinant(m).is_unit()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decomposition_reconstructs_and_is_unimodular(a in matrix_strategy(6, 6)) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let res = snf(&m).unwrap();
        prop_assert!(res.verify(&m).unwrap());
        prop_assert!(unit_det(&res.u_matrix()));
        prop_assert!(unit_det(&res.v_matrix().unwrap()));
        let inv = res.invariants();
        for w in inv.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert!(inv.iter().all(|x| x.signum() > 0));
        prop_assert_eq!(res.u_matrix().mul(&res.row_transform().inverse_matrix()), SparseIntMatrix::identity(m.nrows()));
    }

    #[test]
    fn invariants_match_determinantal_divisors(a in matrix_strategy(4, 5)) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let res = snf(&m).unwrap();
        let diag = res.diagonal();
        let mut prod = Integer::ONE;
        for k in 1..=diag.len() {
            prod = &prod * &diag[k - 1];
            prop_assert_eq!(&prod, &minors_gcd(&a, k));
        }
    }

    #[test]
    fn tracking_v_does_not_change_invariants(a in matrix_strategy(7, 9)) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let with = snf_with(&m, &SnfOptions::with_v()).unwrap();
        let without = snf_with(&m, &SnfOptions::without_v()).unwrap();
        prop_assert_eq!(with.invariants(), without.invariants());
    }

    #[test]
    fn row_transform_without_v_is_a_smith_transform(a in matrix_strategy(7, 9)) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let res = snf_with(&m, &SnfOptions::without_v()).unwrap();
        let u = res.u_matrix();
        prop_assert!(unit_det(&u));
        prop_assert_eq!(u.mul(&res.row_transform().inverse_matrix()), SparseIntMatrix::identity(m.nrows()));
        let inv = res.invariants();
        for col in m.columns() {
            let c = res.row_transform().apply(col);
            for (i, ci) in c.iter().enumerate() {
                if i < inv.len() {
                    prop_assert!(inv[i].divides(ci));
                } else {
                    prop_assert!(ci.is_zero());
                }
            }
        }
        // λ_i * U^{-1} e_i lies in the column lattice
        for (i, l) in inv.iter().enumerate() {
            let target = res.row_transform().inverse_column(i).scale(l);
            prop_assert!(solve_integer(&m, &target).unwrap().is_some());
        }
    }

    #[test]
    fn span_snf_matches_plain_snf(a in matrix_strategy(6, 12), batch in 1usize..5) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let plain = snf_with(&m, &SnfOptions::without_v()).unwrap();
        let span = snf_of_span(&m, batch, &Limits::default()).unwrap();
        prop_assert_eq!(plain.invariants(), span.invariants());
        for col in m.columns() {
            prop_assert!(span.contains(col));
        }
        for b in span.lattice_basis() {
            prop_assert!(plain.contains(&b));
            prop_assert!(solve_integer(&m, &b).unwrap().is_some());
        }
    }

    #[test]
    fn solve_recovers_image_points(a in matrix_strategy(5, 5), x in prop::collection::vec(-4i64..=4, 5)) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let x = SparseVec::from_pairs(x.iter().take(m.ncols()).enumerate().map(|(i, &v)| (i, Integer::from(v))));
        let b = m.mul_vec(&x);
        let sol = solve_integer(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn kernel_is_annihilated_and_saturated(a in matrix_strategy(4, 7)) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let k = kernel_basis(&m).unwrap();
        let rank = snf(&m).unwrap().rank();
        prop_assert_eq!(k.ncols(), m.ncols() - rank);
        for c in k.columns() {
            prop_assert!(m.mul_vec(c).is_zero());
        }
        let q = quotient_invariants(&k, m.ncols()).unwrap();
        prop_assert!(q.iter().take(k.ncols()).all(|x| x.is_one()));
    }

    #[test]
    fn kernel_coordinates_invert_the_kernel_basis(a in matrix_strategy(4, 7), y in prop::collection::vec(-5i64..=5, 7)) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let res = snf(&m).unwrap();
        let v = res.col_transform().unwrap();
        let idx: Vec<usize> = (res.rank()..m.ncols()).collect();
        let basis = v.columns(&idx);
        let coords: Vec<Integer> = y.iter().take(idx.len()).map(|&t| Integer::from(t)).collect();
        let mut w = SparseVec::new();
        for (c, b) in coords.iter().zip(&basis) {
            w = w.add_scaled(c, b);
        }
        prop_assert!(m.mul_vec(&w).is_zero());
        prop_assert_eq!(v.kernel_coordinates(&w), coords);
    }

    #[test]
    fn hermite_basis_is_invariant_under_column_operations(a in matrix_strategy(5, 5), seed in 0u64..1000) {
        let m = SparseIntMatrix::from_i64_rows(&a);
        let mut cols: Vec<SparseVec> = m.columns().to_vec();
        let n = cols.len();
        let mut s = seed;
        for _ in 0..6 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (s >> 33) as usize % n;
            let j = (s >> 17) as usize % n;
            if i != j {
                let k = Integer::from(((s >> 7) % 5) as i64 - 2);
                cols[i] = cols[i].add_scaled(&k, &cols[j]);
            }
        }
        cols.reverse();
        cols.push(cols[0].scale(&Integer::from(3)));
        let m2 = SparseIntMatrix::from_columns(m.nrows(), cols);
        prop_assert!(same_lattice(&m, &m2));
    }
}

#[test]
fn known_forms() {
    let m = SparseIntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let res = snf(&m).unwrap();
    assert_eq!(
        res.diagonal(),
        vec![Integer::from(2), Integer::from(6), Integer::from(12)]
    );
    assert!(res.verify(&m).unwrap());

    let q = quotient_invariants(&SparseIntMatrix::from_i64_rows(&[vec![2], vec![4]]), 2).unwrap();
    assert_eq!(q, vec![Integer::from(2), Integer::ZERO]);
    let q = quotient_invariants(
        &SparseIntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]),
        2,
    )
    .unwrap();
    assert_eq!(q, vec![Integer::from(1), Integer::from(6)]);
}

#[test]
fn solve_rejects_non_integral_and_inconsistent_systems() {
    let m = SparseIntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]);
    let b = SparseVec::from_pairs([(0, Integer::from(1))]);
    assert!(solve_integer(&m, &b).unwrap().is_none());
    let m = SparseIntMatrix::from_i64_rows(&[vec![1], vec![1]]);
    let b = SparseVec::from_pairs([(0, Integer::from(1))]);
    assert!(solve_integer(&m, &b).unwrap().is_none());
}

#[test]
fn large_entries_do_not_overflow() {
    let big = 1i64 << 62;
    let m = SparseIntMatrix::from_i64_rows(&[vec![big, big - 1], vec![big - 1, big - 2]]);
    let res = snf(&m).unwrap();
    assert!(res.verify(&m).unwrap());
    let det = determinant(&m);
    assert_eq!(&res.invariants()[0] * &res.invariants()[1], det.abs());
}

#[test]
fn row_limit_is_enforced() {
    let m = SparseIntMatrix::zeros(10, 1);
    let opts = SnfOptions {
        track_v: false,
        limits: Limits {
            max_rows: 5,
            ..Limits::default()
        },
    };
    assert!(matches!(
        snf_with(&m, &opts),
        Err(LinalgError::ResourceLimit { .. })
    ));
}

#[test]
fn empty_and_zero_matrices() {
    let m = SparseIntMatrix::zeros(3, 2);
    let res = snf(&m).unwrap();
    assert_eq!(res.rank(), 0);
    assert!(res.verify(&m).unwrap());
    assert_eq!(kernel_basis(&m).unwrap().ncols(), 2);
    assert_eq!(quotient_invariants(&m, 3).unwrap(), vec![Integer::ZERO; 3]);
}
