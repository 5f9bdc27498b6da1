use cmperiods_core::numerics::{below_decimal, relative_residual, BigReal, PrecisionContext};
use cmperiods_core::quadfield::{
    analytic_class_number, big_omega, is_fundamental, kronecker, omega, reduced_forms,
    squarefree_part,
};
use proptest::prelude::*;

// Class numbers of all fundamental d in [−299, −3], computed independently.
const CLASS_NUMBERS: &[(u32, &[i64])] = &[
    (1, &[-3, -4, -7, -8, -11, -19, -43, -67, -163]),
    (
        2,
        &[
            -15, -20, -24, -35, -40, -51, -52, -88, -91, -115, -123, -148, -187, -232, -235, -267,
        ],
    ),
    (3, &[-23, -31, -59, -83, -107, -139, -211, -283]),
    (
        4,
        &[
            -39, -55, -56, -68, -84, -120, -132, -136, -155, -168, -184, -195, -203, -219, -228,
            -259, -280, -291, -292,
        ],
    ),
    (5, &[-47, -79, -103, -127, -131, -179, -227]),
    (6, &[-87, -104, -116, -152, -212, -244, -247]),
    (7, &[-71, -151, -223, -251]),
    (
        8,
        &[-95, -111, -164, -183, -248, -260, -264, -276, -295, -299],
    ),
    (9, &[-199]),
    (10, &[-119, -143, -159, -296]),
    (11, &[-167, -271]),
    (12, &[-231, -255]),
    (13, &[-191, -263]),
    (14, &[-215, -287]),
    (15, &[-239]),
];

const OMEGAS: &[(i64, &str)] = &[
    (-3, "1.6065666932438455297987874495625627810422773762714"),
    (-4, "1.479337559594319446155410678863859783237449098029"),
    (-7, "1.2545456135793416580447148809907565108345404203664"),
    (-8, "1.1950419599730247083474976413280535861716264195721"),
    (
        -120,
        "3.8114974268243287686151104077215478705669966051769e-1",
    ),
    (
        -163,
        "8.8611618169233892378742102118186165147114120394805e-2",
    ),
    (
        -276,
        "2.9827846088826485256156649284551809421520922280797e-1",
    ),
];

fn close(got: &BigReal, want: &str, digits: u32) -> bool {
    let w = BigReal::parse_decimal(want, got.prec()).unwrap();
    below_decimal(&relative_residual(got, &w), digits)
}

#[test]
fn class_number_table() {
    let mut listed = 0;
    for &(h, ds) in CLASS_NUMBERS {
        for &d in ds {
            assert!(is_fundamental(d).unwrap(), "{d}");
            assert_eq!(reduced_forms(d).unwrap().len() as u32, h, "h({d})");
            listed += 1;
        }
    }
    let all = (3..=299)
        .map(|n| -(n as i64))
        .filter(|&d| is_fundamental(d).unwrap())
        .count();
    assert_eq!(all, listed);
}

#[test]
fn analytic_class_number_matches_forms() {
    let ctx = PrecisionContext::new(30).unwrap();
    for &(h, ds) in CLASS_NUMBERS {
        for &d in &ds[..ds.len().min(3)] {
            let a = analytic_class_number(d, &ctx).unwrap();
            let want = BigReal::from_i64(h as i64, a.prec());
            assert!(
                below_decimal(&relative_residual(&a, &want), 20),
                "d = {d}: {}",
                a.to_decimal(20)
            );
        }
    }
}

#[test]
fn omega_values() {
    let ctx = PrecisionContext::new(50).unwrap();
    for &(d, want) in OMEGAS {
        assert!(close(&omega(d, &ctx).unwrap(), want, 45), "ω_{d}");
    }
}

#[test]
fn big_omega_minus_four() {
    let ctx = PrecisionContext::new(50).unwrap();
    assert!(close(
        &big_omega(-4, &ctx).unwrap(),
        "5.2441151085842396209296791797822388273655099028632",
        45
    ));
}

#[test]
fn non_fundamental_discriminants_are_rejected() {
    for d in [-12, -16, -27, -28, -36] {
        assert!(!is_fundamental(d).unwrap(), "{d}");
        assert!(omega(d, &PrecisionContext::new(20).unwrap()).is_err());
    }
    assert!(is_fundamental(5).is_err() || !is_fundamental(-5).unwrap());
}

#[test]
fn squarefree_parts() {
    assert_eq!(squarefree_part(72), 2);
    assert_eq!(squarefree_part(3375), 15);
    assert_eq!(squarefree_part(1), 1);
}

proptest! {
    #[test]
    fn reduced_forms_are_reduced(n in 3i64..400) {
        let d = -n;
        prop_assume!(is_fundamental(d).unwrap());
        for (a, b, c) in reduced_forms(d).unwrap() {
            prop_assert_eq!(b * b - 4 * a * c, d);
            prop_assert!(b.abs() <= a && a <= c);
            if b.abs() == a || a == c {
                prop_assert!(b >= 0);
            }
        }
    }

    #[test]
    fn kronecker_is_multiplicative(n in 3i64..400, x in 1i64..500, y in 1i64..500) {
        let d = -n;
        prop_assume!(is_fundamental(d).unwrap());
        prop_assert_eq!(kronecker(d, x * y), kronecker(d, x) * kronecker(d, y));
    }

    #[test]
    fn kronecker_is_periodic(n in 3i64..400, x in 1i64..500) {
        let d = -n;
        prop_assume!(is_fundamental(d).unwrap());
        prop_assert_eq!(kronecker(d, x + n), kronecker(d, x));
    }
}
