use cmperiods_core::quaternion::{
    corollary19_disc, embedding_discriminant, from_order_coords, in_order, order_basis,
    order_coords, QuatElement,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn zero() -> BigRational {
    BigRational::zero()
}

fn order_elem() -> impl Strategy<Value = QuatElement> {
    proptest::array::uniform4(-20i64..20).prop_map(|c| from_order_coords(&c.map(BigInt::from)))
}

#[test]
fn algebra_relations() {
    let (i, j, ij) = (QuatElement::i(), QuatElement::j(), QuatElement::ij());
    assert_eq!(&i * &i, QuatElement::from_ints(-1, 0, 0, 0));
    assert_eq!(&j * &j, QuatElement::from_ints(3, 0, 0, 0));
    assert_eq!(&i * &j, ij);
    assert_eq!(&j * &i, -&ij);
}

#[test]
fn order_membership() {
    assert!(in_order(&QuatElement::from_halves(1, 1, 1, 1)));
    assert!(!in_order(&QuatElement::from_halves(1, 0, 0, 0)));
    assert!(in_order(&QuatElement::from_halves(6, -4, 0, -2)));
    for b in order_basis() {
        assert!(in_order(&b));
    }
}

#[test]
fn embedding_discriminants() {
    assert_eq!(embedding_discriminant(&QuatElement::i()).unwrap(), -4);
    assert_eq!(
        embedding_discriminant(&QuatElement::pure(12, -2, 2)).unwrap(),
        -120
    );
    assert_eq!(
        embedding_discriminant(&QuatElement::pure(8, 0, 2)).unwrap(),
        -52
    );
    assert_eq!(
        embedding_discriminant(&QuatElement::pure(12, 0, 2)).unwrap(),
        -132
    );
}

#[test]
fn corollary19_values() {
    let got: Vec<i64> = [-3, -4, -24, -40]
        .iter()
        .map(|&d| corollary19_disc(d))
        .collect();
    assert_eq!(got, [12, 36, 24, 360]);
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in order_elem(), b in order_elem()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        prop_assert_eq!(&a * &a.conj(), QuatElement::new(a.norm(), zero(), zero(), zero()));
    }

    #[test]
    fn order_is_closed(a in order_elem(), b in order_elem()) {
        prop_assert!(in_order(&(&a * &b)));
        prop_assert!(in_order(&(&a + &b)));
        prop_assert!(in_order(&a.conj()));
    }

    #[test]
    fn inverse(a in order_elem()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inverse().unwrap(), QuatElement::one());
    }

    #[test]
    fn coordinates_round_trip(c in proptest::array::uniform4(-50i64..50)) {
        let c = c.map(BigInt::from);
        let a = from_order_coords(&c);
        let back: Vec<BigInt> = order_coords(&a).into_iter().map(|v| v.to_integer()).collect();
        prop_assert_eq!(back, c.to_vec());
    }
}
