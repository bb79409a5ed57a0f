use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use parastat::radical::squarefree_split;
use parastat::Radical;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn radical() -> impl Strategy<Value = Radical> {
    prop::collection::vec((-6i64..=6, 1i64..=4, 1u32..=12), 0..4).prop_map(|terms| {
        let mut acc = Radical::zero();
        for (n, d, r) in terms {
            acc += &Radical::from_term(rat(n, d), &BigUint::from(r));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn addition_is_a_group(a in radical(), b in radical(), c in radical()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &Radical::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_and_distributes(a in radical(), b in radical(), c in radical()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Radical::one(), a.clone());
    }

    #[test]
    fn sqrt_squares_back(n in 0i64..400, d in 1i64..50, sign in prop::sample::select(vec![1, -1])) {
        let q = rat(n, d);
        let r = Radical::from_sqrt_rational(sign, &q).unwrap();
        prop_assert_eq!((&r * &r).as_rational(), Some(q.clone()));
        prop_assert_eq!(r.square_rational(), Some(q));
        prop_assert!(r.num_terms() <= 1);
    }

    #[test]
    fn canonical_form_is_unique(s in 1u32..20, d in 1u32..30, n in -5i64..=5) {
        // √(s²·d) and s·√d are the same number
        let big = Radical::from_term(rat(n, 1), &BigUint::from(s * s * d));
        let small = Radical::from_term(rat(n * s as i64, 1), &BigUint::from(d));
        prop_assert_eq!(&big, &small);
        for (root, _) in big.terms() {
            let (sq, free) = squarefree_split(root);
            prop_assert_eq!(sq, BigUint::from(1u32));
            prop_assert_eq!(&free, root);
        }
    }

    #[test]
    fn json_round_trip(a in radical()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Radical = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn float_value_agrees(a in radical(), b in radical()) {
        let exact = (&a * &b).to_f64();
        let approx = a.to_f64() * b.to_f64();
        prop_assert!((exact - approx).abs() <= 1e-9 * (1.0 + approx.abs()));
    }
}

#[test]
fn negative_radicand_is_rejected() {
    assert!(Radical::from_sqrt_rational(1, &rat(-2, 3)).is_err());
}

#[test]
fn display_is_readable() {
    let r = Radical::from_term(rat(-7, 5), &BigUint::from(1u32))
        + Radical::from_term(rat(1, 2), &BigUint::from(6u32));
    assert_eq!(r.to_string(), "-7/5 + 1/2·√6");
    assert_eq!(Radical::zero().to_string(), "0");
}
