use cmperiods_core::numerics::{
    below_decimal, relative_residual, BigComplex, BigReal, PrecisionContext,
};
use cmperiods_core::qseries::{
    delta_expansion, eta_cusp_orders, eta_quotient_expansion, lemma13_check, qseries_eval,
    CoefficientBound, EtaQuotient, QSeries,
};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn ramanujan_tau() {
    let d = delta_expansion(12);
    assert_eq!(d.leading_exponent, Rational64::from_integer(1));
    let tau = [1, -24, 252, -1472, 4830, -6048, -16744, 84480];
    for (k, t) in tau.iter().enumerate() {
        assert_eq!(d.coeffs[k], int(*t), "τ({})", k + 1);
    }
}

#[test]
fn delta_at_i() {
    let ctx = PrecisionContext::new(50).unwrap();
    let b = ctx.bits();
    let tau = BigComplex::new(BigReal::zero(b), BigReal::one(b));
    let v = qseries_eval(&delta_expansion(120), &tau, CoefficientBound::DELTA, &ctx).unwrap();
    let want = BigReal::parse_decimal("1.7853698506421519043430549603422623105811098636164e-3", b)
        .unwrap();
    assert!(
        below_decimal(&relative_residual(&v.re, &want), 45),
        "{}",
        v.re.to_decimal(50)
    );
    assert!(below_decimal(&v.im.abs(), 45));
}

#[test]
fn eta_quotient_prefix() {
    // η(q)^24 reproduces Δ
    let eq = EtaQuotient::new(1, &[(1, 24)]).unwrap();
    assert_eq!(
        eta_quotient_expansion(&eq, 10).truncate(8),
        delta_expansion(10).truncate(8)
    );
}

#[test]
fn cusp_orders_cover_divisors() {
    let eq = EtaQuotient::new(6, &[(1, 1), (2, 3), (6, 2), (3, -1)]).unwrap();
    let orders = eta_cusp_orders(&eq).unwrap();
    assert_eq!(orders.len(), 4);
}

#[test]
fn lemma13_on_delta_quotient() {
    let eq = EtaQuotient::new(1, &[(1, 24)]).unwrap();
    let r = lemma13_check(&eq, 1);
    assert!(!r.sum_is_one);
    assert!(r.weighted_sum_divisible);
}

#[test]
fn bad_leading_exponent() {
    assert!(QSeries::new(Rational64::new(1, 5), vec![int(1)]).is_err());
}

fn series() -> impl Strategy<Value = QSeries> {
    (-3i64..3, proptest::collection::vec(-9i64..10, 1..12)).prop_map(|(l, mut c)| {
        if c[0] == 0 {
            c[0] = 1;
        }
        QSeries::new(
            Rational64::from_integer(l),
            c.into_iter().map(int).collect(),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn inverse_times_series_is_one(s in series()) {
        let prod = s.mul(&s.inverse().unwrap());
        let n = prod.truncation_order();
        prop_assert_eq!(prod, QSeries::one(n));
    }

    #[test]
    fn mul_is_commutative(a in series(), b in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn pow_matches_repeated_mul(s in series(), n in 1i64..4) {
        let mut acc = s.clone();
        for _ in 1..n {
            acc = acc.mul(&s);
        }
        prop_assert_eq!(s.pow(n).unwrap(), acc);
    }
}
