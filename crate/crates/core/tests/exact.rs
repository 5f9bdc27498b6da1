use cmperiods_core::exact::{rational_sqrt, QuadExt, QuadPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn elem() -> impl Strategy<Value = QuadExt> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
        .prop_map(|(a, ad, b, bd)| QuadExt::new(q(a, ad), q(b, bd), 3).unwrap())
}

fn poly(max_deg: usize) -> impl Strategy<Value = QuadPoly> {
    proptest::collection::vec(elem(), 1..=max_deg + 1).prop_map(|c| QuadPoly::new(c, 3).unwrap())
}

#[test]
fn non_squarefree_radicand_is_rejected() {
    assert!(QuadExt::new(q(1, 1), q(1, 1), 12).is_err());
}

#[test]
fn known_square_roots() {
    // (2 + √3)² = 7 + 4√3
    let x = QuadExt::from_ints(7, 4, 3);
    assert_eq!(x.sqrt_exact(), Some(QuadExt::from_ints(2, 1, 3)));
    assert_eq!(
        QuadExt::from_ints(12, 0, 3).sqrt_exact(),
        Some(QuadExt::from_ints(0, 2, 3))
    );
    assert_eq!(QuadExt::from_ints(2, 0, 3).sqrt_exact(), None);
    assert_eq!(rational_sqrt(&q(49, 4)), Some(q(7, 2)));
    assert_eq!(rational_sqrt(&q(-1, 1)), None);
}

#[test]
fn inverse_of_zero_fails() {
    assert!(QuadExt::zero(3).inv().is_err());
}

proptest! {
    #[test]
    fn field_axioms(x in elem(), y in elem(), z in elem()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), QuadExt::one(3));
        }
    }

    #[test]
    fn norm_is_multiplicative(x in elem(), y in elem()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(&x * &x.conj(), QuadExt::from_rational(x.norm(), 3));
    }

    #[test]
    fn sqrt_of_square(x in elem()) {
        let s = (&x * &x).sqrt_exact().unwrap();
        prop_assert!(s == x || s == -x.clone());
    }

    #[test]
    fn divrem_reconstructs(a in poly(6), b in poly(3)) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divrem(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).unwrap().add(&rem).unwrap(), a);
        if let (Some(dr), Some(db)) = (rem.degree(), b.degree()) {
            prop_assert!(dr < db);
        }
    }

    #[test]
    fn eval_is_a_ring_map(a in poly(4), b in poly(4), y in elem()) {
        prop_assert_eq!(a.mul(&b).unwrap().eval(&y), &a.eval(&y) * &b.eval(&y));
    }
}
