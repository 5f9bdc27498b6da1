use cmperiods_core::numerics::{
    below_decimal, elementary, gamma, hyp_pfq, log_gamma, rat, relative_residual, BigReal,
    HypParams, PrecisionContext,
};
use proptest::prelude::*;

// Reference values computed independently with mpmath at 50 digits.
const PI: &str = "3.1415926535897932384626433832795028841971693993751";
const LN2: &str = "6.9314718055994530941723212145817656807550013436026e-1";
const SQRT2: &str = "1.4142135623730950488016887242096980785696718753769";
const E: &str = "2.7182818284590452353602874713526624977572470937";
const SIN1: &str = "8.4147098480789650665250232163029899962256306079837e-1";
const COS1: &str = "5.4030230586813971740093660744297660373231042061792e-1";

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn assert_close(got: &BigReal, reference: &str, digits: u32) {
    let r = BigReal::parse_decimal(reference, got.prec()).unwrap();
    let res = relative_residual(got, &r);
    assert!(
        below_decimal(&res, digits),
        "got {} want {reference} (residual {})",
        got.to_decimal(50),
        res.to_decimal(3)
    );
}

#[test]
fn elementary_constants() {
    let c = ctx(50);
    let b = c.bits();
    assert_close(&elementary::pi(b), PI, 45);
    assert_close(&elementary::ln2(b), LN2, 45);
    assert_close(&BigReal::from_i64(2, b).sqrt().unwrap(), SQRT2, 45);
    assert_close(&elementary::exp(&BigReal::one(b)).unwrap(), E, 45);
    let (s, co) = elementary::sin_cos(&BigReal::one(b)).unwrap();
    assert_close(&s, SIN1, 45);
    assert_close(&co, COS1, 45);
}

#[test]
fn gamma_values() {
    let c = ctx(50);
    assert_close(
        &gamma(&rat(1, 4), &c).unwrap(),
        "3.6256099082219083119306851558676720029951676828801",
        45,
    );
    assert_close(
        &gamma(&rat(1, 3), &c).unwrap(),
        "2.6789385347077476336556929409746776441286893779573",
        45,
    );
    assert_close(
        &gamma(&rat(5, 24), &c).unwrap(),
        "4.3968001000002525082360090974782051646972418137987",
        45,
    );
    assert_close(
        &log_gamma(&rat(1000, 3), &c).unwrap(),
        "1.6010622804759817794738831819710257204722201093876e3",
        45,
    );
}

#[test]
fn gamma_half_is_sqrt_pi() {
    let c = ctx(40);
    let g = gamma(&rat(1, 2), &c).unwrap();
    let sp = elementary::pi(c.bits()).sqrt().unwrap();
    assert!(below_decimal(&relative_residual(&g, &sp), 35));
}

#[test]
fn hypergeometric_values() {
    let c = ctx(50);
    let cases: [(&[(i64, i64)], &[(i64, i64)], (i64, i64), &str); 4] = [
        (
            &[(1, 24), (5, 24)],
            &[(3, 4)],
            (-2401, 3375),
            "9.933067165752548573457793118392133611598011259905e-1",
        ),
        (
            &[(1, 12), (5, 12)],
            &[(1, 1)],
            (1, 2),
            "1.0221117411206147658321510858897629777124268944235",
        ),
        (
            &[(1, 3), (1, 2), (2, 3)],
            &[(3, 4), (5, 4)],
            (27, 196),
            "1.0173624219152925036389875663520209029999221133",
        ),
        (
            &[(1, 4), (1, 2), (3, 4)],
            &[(5, 6), (7, 6)],
            (-125, 2187),
            "9.9461452708696954160648710337100034205094647031895e-1",
        ),
    ];
    for (num, den, (zn, zd), want) in cases {
        let v = hyp_pfq(&HypParams::from_fracs(num, den, rat(zn, zd)), &c).unwrap();
        assert_close(&v.value, want, 44);
    }
}

#[test]
fn terminating_series_is_exact_polynomial() {
    // 2F1(−2, 1; 1; z) = (1 − z)²
    let c = ctx(30);
    let v = hyp_pfq(
        &HypParams::from_fracs(&[(-2, 1), (1, 1)], &[(1, 1)], rat(1, 3)),
        &c,
    )
    .unwrap();
    let want = BigReal::from_ratio(&rat(4, 9), c.bits());
    assert!(below_decimal(&relative_residual(&v.value, &want), 28));
}

#[test]
fn precision_below_minimum_is_rejected() {
    assert!(PrecisionContext::new(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqrt_squares_back(n in 1u64..1_000_000_000, d in 1u64..1_000_000) {
        let b = ctx(40).bits();
        let x = BigReal::from_ratio(&rat(n as i64, d as i64), b);
        let s = x.sqrt().unwrap();
        prop_assert!(below_decimal(&relative_residual(&s.square(), &x), 37));
    }

    #[test]
    fn exp_inverts_ln(n in 1i64..100_000, d in 1i64..1_000) {
        let b = ctx(40).bits();
        let x = BigReal::from_ratio(&rat(n, d), b);
        let y = elementary::exp(&elementary::ln(&x).unwrap()).unwrap();
        prop_assert!(below_decimal(&relative_residual(&y, &x), 35));
    }

    #[test]
    fn gamma_recurrence(n in 1i64..200, d in 1i64..50) {
        let c = ctx(30);
        let x = rat(n, d);
        let lhs = gamma(&(&x + rat(1, 1)), &c).unwrap();
        let rhs = gamma(&x, &c).unwrap().mul_ratio(&x);
        prop_assert!(below_decimal(&relative_residual(&lhs, &rhs), 25));
    }

    #[test]
    fn decimal_round_trip(m in -1_000_000_000_000i64..1_000_000_000_000, e in -30i32..30) {
        let b = ctx(40).bits();
        let s = format!("{m}e{e}");
        let x = BigReal::parse_decimal(&s, b).unwrap();
        let y = BigReal::parse_decimal(&x.to_decimal(30), b).unwrap();
        prop_assert!(below_decimal(&relative_residual(&y, &x), 28));
    }
}
