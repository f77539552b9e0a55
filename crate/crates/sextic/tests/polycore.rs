use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use sextic::polycore::{self, BinaryForm, IntPoly};

mod common;
use common::brute_force_real_roots;

fn sextic_strategy(bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, 7).prop_filter("degree six", |c| c[6] != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sturm_count_matches_bisection(c in sextic_strategy(20)) {
        let f = IntPoly::from_i64(&c);
        prop_assert_eq!(polycore::sturm_real_roots(&f).unwrap(), brute_force_real_roots(&f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sturm_on_products_with_repeated_factors(
        a in prop::collection::vec(-5i64..=5, 3).prop_filter("quadratic", |c| c[2] != 0),
        b in prop::collection::vec(-5i64..=5, 2).prop_filter("linear", |c| c[1] != 0),
    ) {
        let qa = IntPoly::from_i64(&a);
        let qb = IntPoly::from_i64(&b);
        let f = &(&qa * &qa) * &(&qb * &qb);
        let n = polycore::sturm_real_roots(&f).unwrap();
        prop_assert_eq!(n, brute_force_real_roots(&f));
        let sq = f.squarefree_part();
        prop_assert_eq!((sq.degree().unwrap() - n) % 2, 0);
        prop_assert!(polycore::discriminant(&f).unwrap().is_zero());
    }

    #[test]
    fn height_is_sign_invariant(c in prop::collection::vec(-50i64..=50, 1..8).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))) {
        let f = IntPoly::from_i64(&c);
        prop_assert_eq!(polycore::height(&f).unwrap(), polycore::height(&-&f).unwrap());
    }

    #[test]
    fn resultant_is_multiplicative(
        f in prop::collection::vec(-6i64..=6, 2..5).prop_filter("nonconstant", |c| *c.last().unwrap() != 0),
        g in prop::collection::vec(-6i64..=6, 1..4).prop_filter("nonzero lead", |c| *c.last().unwrap() != 0),
        h in prop::collection::vec(-6i64..=6, 1..4).prop_filter("nonzero lead", |c| *c.last().unwrap() != 0),
    ) {
        let (f, g, h) = (IntPoly::from_i64(&f), IntPoly::from_i64(&g), IntPoly::from_i64(&h));
        let lhs = polycore::resultant(&f, &(&g * &h)).unwrap();
        let rhs = polycore::resultant(&f, &g).unwrap() * polycore::resultant(&f, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_vanishes_iff_repeated_factor(c in prop::collection::vec(-8i64..=8, 3..8).prop_filter("lead", |c| *c.last().unwrap() != 0)) {
        let f = IntPoly::from_i64(&c);
        let d = polycore::discriminant(&f).unwrap();
        let g = f.gcd(&f.derivative());
        prop_assert_eq!(d.is_zero(), g.deg_i() > 0);
    }

    #[test]
    fn primitive_normalization_is_idempotent(c in prop::collection::vec(-30i64..=30, 7).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))) {
        let form = BinaryForm::from_i64(&c);
        let p = form.primitive();
        prop_assert!(p.is_primitive());
        prop_assert_eq!(p.primitive(), p.clone());
        prop_assert_eq!(form.scale(&BigInt::from(-3)).primitive(), p);
    }

    #[test]
    fn homogenize_round_trip(c in sextic_strategy(30)) {
        let f = IntPoly::from_i64(&c);
        let form = polycore::homogenize(&f, 6).unwrap();
        prop_assert_eq!(polycore::dehomogenize(&form), f);
    }

    #[test]
    fn monic_associate_is_monic_with_same_discriminant_class(c in sextic_strategy(6)) {
        let f = IntPoly::from_i64(&c);
        let g = polycore::monic_associate(&f).unwrap();
        prop_assert!(g.is_monic());
        // g(x) = a^5 f(x / a), so disc(g) = a^20 disc(f)
        let a = BigInt::from(c[6]);
        let expect = polycore::discriminant(&f).unwrap() * a.pow(20);
        prop_assert_eq!(polycore::discriminant(&g).unwrap(), expect);
    }
}

#[test]
fn sturm_fixed_examples() {
    let roots = IntPoly::from_i64(&[720, -1764, 1624, -735, 175, -21, 1]);
    assert_eq!(polycore::sturm_real_roots(&roots).unwrap(), 6);
    assert_eq!(brute_force_real_roots(&roots), 6);
    assert_eq!(polycore::sturm_real_roots(&IntPoly::from_i64(&[1, 0, 0, 0, 0, 0, 1])).unwrap(), 0);
    assert_eq!(polycore::sturm_real_roots(&IntPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 1])).unwrap(), 2);
    // two roots 1e-3 apart
    let close = &IntPoly::from_i64(&[-1000, 1]) * &IntPoly::from_i64(&[-1001, 1]);
    let f = &close * &IntPoly::from_i64(&[1, 0, 0, 0, 1]);
    assert_eq!(polycore::sturm_real_roots(&f).unwrap(), 2);
    assert_eq!(brute_force_real_roots(&f), 2);
}

#[test]
fn resultant_matches_determinant_expansion() {
    let f = IntPoly::from_i64(&[1, 0, 0, -1, 0, 0, 1]);
    let v = polycore::resultant(&f, &f.derivative()).unwrap();
    assert_eq!(polycore::discriminant(&f).unwrap(), -v.clone());
    // Sylvester matrix of f and f' expanded by the independent Bareiss routine on a
    // permuted row order (two row swaps leave the sign unchanged).
    let (a, b) = (f.coeffs(), f.derivative().into_coeffs());
    let n = 11;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..5 {
        let mut r = vec![BigInt::zero(); n];
        for (j, c) in a.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..6 {
        let mut r = vec![BigInt::zero(); n];
        for (j, c) in b.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    rows.swap(0, 1);
    rows.swap(2, 3);
    assert_eq!(polycore::bareiss_det(rows), v);
}
