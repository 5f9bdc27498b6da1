use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{guard, Verifier, VerifyReport};
use crate::error::{domain, Result};
use crate::exact::QuadExt;
use crate::numerics::{elementary, hyp_pfq, rat, relative_residual, BigReal, HypArg, HypParams};
use crate::quadfield::squarefree_part;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// s-family: ₂F₁(1/24,5/24;3/4) and ₃F₂(1/3,1/2,2/3;3/4,5/4).
    S,
    /// t-family: ₂F₁(1/24,7/24;5/6) and ₃F₂(1/4,1/2,3/4;5/6,7/6).
    T,
}

/// Numerator and denominator parameters of a hypergeometric series.
type Params = (&'static [(i64, i64)], &'static [(i64, i64)]);

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::S => "S",
            Family::T => "T",
        }
    }

    fn f1_params(&self) -> Params {
        match self {
            Family::S => (&[(1, 24), (5, 24)], &[(3, 4)]),
            Family::T => (&[(1, 24), (7, 24)], &[(5, 6)]),
        }
    }

    fn f2_params(&self) -> Params {
        match self {
            Family::S => (&[(7, 24), (11, 24)], &[(5, 4)]),
            Family::T => (&[(5, 24), (11, 24)], &[(7, 6)]),
        }
    }

    fn h_params(&self) -> Params {
        match self {
            Family::S => (&[(1, 3), (1, 2), (2, 3)], &[(3, 4), (5, 4)]),
            Family::T => (&[(1, 4), (1, 2), (3, 4)], &[(5, 6), (7, 6)]),
        }
    }

    /// Power taken of the ₂F₁ identity (8 for S, 12 for T).
    pub fn hyp1_power(&self) -> i64 {
        match self {
            Family::S => 8,
            Family::T => 12,
        }
    }

    fn reference_disc(&self) -> i64 {
        match self {
            Family::S => -4,
            Family::T => -3,
        }
    }
}

/// One row of the CM-value tables together with its embedding and Borcherds scale.
#[derive(Clone, Debug)]
pub struct Theorem2Row {
    pub d: i64,
    pub family: Family,
    pub m_num: BigInt,
    pub n_den: BigInt,
    /// φ(√d) = a1·I + a2·J + a3·IJ.
    pub embedding: (i64, i64, i64),
    /// A_d (S) or B_d (T).
    pub scale: BigInt,
    /// A₁⁸ (S) or B₁¹² (T).
    pub hyp1_pow: QuadExt,
    /// A₂² (S) or B₂² (T).
    pub hyp2_sq: QuadExt,
}

/// Constraint on the embedding imposed by the sign of M.
pub fn lemma26_holds(family: Family, m_positive: bool, (a1, a2, a3): (i64, i64, i64)) -> bool {
    match (family, m_positive) {
        (Family::S, true) => a2 == 0,
        (Family::T, true) => a1 == 3 * a3,
        (_, false) => a2 == -a3,
    }
}

impl Theorem2Row {
    pub fn argument(&self) -> BigRational {
        BigRational::new(self.m_num.clone(), self.n_den.clone())
    }

    pub fn case_id(&self, suite: &str) -> String {
        format!("{suite}/{}/d={}", self.family.as_str(), self.d)
    }

    /// Checks the row invariants.
    pub fn validate(&self) -> Result<()> {
        if !self.n_den.is_positive() {
            return Err(domain(format!("d={}: N must be positive", self.d)));
        }
        if self.m_num.abs() >= self.n_den || self.m_num.is_zero() {
            return Err(domain(format!("d={}: need 0 < |M/N| < 1", self.d)));
        }
        let (a1, a2, a3) = self.embedding;
        if -a1 * a1 + 3 * a2 * a2 + 3 * a3 * a3 != self.d {
            return Err(domain(format!(
                "d={}: embedding does not square to d",
                self.d
            )));
        }
        if !lemma26_holds(self.family, self.m_num.is_positive(), self.embedding) {
            return Err(domain(format!(
                "d={}: embedding violates the sign constraint",
                self.d
            )));
        }
        if self.hyp1_pow.signum() <= 0 || self.hyp2_sq.signum() <= 0 {
            return Err(domain(format!(
                "d={}: tabulated powers must be positive",
                self.d
            )));
        }
        if !self.scale.is_positive() {
            return Err(domain(format!("d={}: scale must be positive", self.d)));
        }
        Ok(())
    }
}

pub(crate) fn series(
    v: &Verifier,
    num: &[(i64, i64)],
    den: &[(i64, i64)],
    z: HypArg,
) -> Result<BigReal> {
    let f = |s: &[(i64, i64)]| s.iter().map(|&(n, d)| rat(n, d)).collect();
    let p = HypParams::new(f(num), f(den), z);
    Ok(hyp_pfq(&p, v.ctx())?.value)
}

struct RowSeries {
    f1: BigReal,
    h: BigReal,
}

fn eval_row(v: &Verifier, row: &Theorem2Row) -> Result<RowSeries> {
    let z = row.argument();
    let (n1, d1) = row.family.f1_params();
    let (nh, dh) = row.family.h_params();
    Ok(RowSeries {
        f1: series(v, n1, d1, HypArg::Rational(z.clone()))?,
        h: series(v, nh, dh, HypArg::Rational(z))?,
    })
}

/// √n for a positive integer n, as k·√m in ℚ(√m) with m squarefree.
pub(crate) fn surd(n: u64) -> QuadExt {
    let m = squarefree_part(n);
    let k = (n / m).sqrt();
    QuadExt {
        a: BigRational::zero(),
        b: BigRational::from_integer(BigInt::from(k)),
        m,
    }
}

/// a + √n.
fn shifted_surd(a: i64, n: u64) -> QuadExt {
    let r = surd(n);
    QuadExt {
        a: BigRational::from_integer(BigInt::from(a)),
        ..r
    }
}

/// c·√3 + √n, squared, as an element of ℚ(√(3n)).
fn squared_sum_with_root3(c: i64, n: u64) -> QuadExt {
    let cross = surd(3 * n);
    let a = BigRational::from_integer(BigInt::from(3 * c * c + n as i64));
    QuadExt {
        a,
        b: &cross.b * BigRational::from_integer(BigInt::from(2 * c)),
        m: cross.m,
    }
}

/// Equality of a + b√m values that may carry different m when b = 0.
pub(crate) fn quad_equal(x: &QuadExt, y: &QuadExt) -> bool {
    x.a == y.a && ((x.b.is_zero() && y.b.is_zero()) || (x.m == y.m && x.b == y.b))
}

fn omega_ratio_pow(v: &Verifier, d: i64, reference: i64, k: i64) -> Result<BigReal> {
    Ok((&v.omega(d)? / &v.omega(reference)?).powi(k))
}

/// F₁⁸ = A₁⁸(ω_d/ω₋₄)⁸ and ₃F₂² = A₂²ω_d⁴ (12th power with ω₋₃ for T).
pub fn verify_theorem2_row(v: &Verifier, row: &Theorem2Row) -> VerifyReport {
    let id = row.case_id("theorem2");
    guard(&id.clone(), || {
        row.validate()?;
        let s = eval_row(v, row)?;
        theorem2_report(v, row, &s, id)
    })
}

fn theorem2_report(
    v: &Verifier,
    row: &Theorem2Row,
    s: &RowSeries,
    id: String,
) -> Result<VerifyReport> {
    let p = v.prec();
    let k = row.family.hyp1_power();
    let lhs1 = s.f1.powi(k);
    let rhs1 =
        &row.hyp1_pow.to_real(p) * &omega_ratio_pow(v, row.d, row.family.reference_disc(), k)?;
    let lhs2 = s.h.square();
    let rhs2 = &row.hyp2_sq.to_real(p) * &v.omega(row.d)?.powi(4);
    Ok(v.report(
        id,
        &[("2F1 power", &lhs1, &rhs1), ("3F2 square", &lhs2, &rhs2)],
        "",
    ))
}

struct Prop27Rhs {
    /// Coefficient of (ω_d/ω_ref)^k in the ₂F₁ product formula.
    c1: QuadExt,
    /// Value of the rational coefficient in the ₃F₂ product formula (multiplies ω_d⁸ resp. ω_d¹²).
    c2: BigRational,
}

fn prop27_rhs(row: &Theorem2Row) -> Prop27Rhs {
    let (a1, a2, a3) = row.embedding;
    let n = row.d.unsigned_abs();
    let s_abs = BigRational::new(row.m_num.abs(), row.n_den.clone());
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let scale = BigRational::from_integer(row.scale.clone());
    match row.family {
        Family::S => {
            let base = shifted_surd(a1, n);
            let c1 = base.pow(4).scale(&(&scale / big(4096 * 3)));
            let q = big(a2 * a2 + a3 * a3);
            let c2 = &scale * big(9) * &q * &q / (big(1024) * &s_abs);
            Prop27Rhs { c1, c2 }
        }
        Family::T => {
            let positive = row.m_num.is_positive();
            let c = if positive { a2 + 2 * a3 } else { a1 - 2 * a3 };
            let c1 = squared_sum_with_root3(c, n)
                .pow(3)
                .scale(&(&scale / big(128 * 27)));
            let kfac = if positive {
                big(27) * big(a2 + a3).pow(6)
            } else {
                big(a1 - 3 * a3).pow(6)
            };
            let c2 = &scale * kfac / (big(216) * &s_abs);
            Prop27Rhs { c1, c2 }
        }
    }
}

/// Borcherds-product forms of both identities, with the sign case taken from M.
pub fn verify_prop27(v: &Verifier, row: &Theorem2Row) -> VerifyReport {
    let id = row.case_id("prop27");
    guard(&id.clone(), || {
        row.validate()?;
        let s = eval_row(v, row)?;
        prop27_report(v, row, &s, id)
    })
}

fn prop27_report(
    v: &Verifier,
    row: &Theorem2Row,
    s: &RowSeries,
    id: String,
) -> Result<VerifyReport> {
    let p = v.prec();
    let rhs = prop27_rhs(row);
    let k = row.family.hyp1_power();
    let lhs1 = s.f1.powi(k);
    let rhs1 = &rhs.c1.to_real(p) * &omega_ratio_pow(v, row.d, row.family.reference_disc(), k)?;
    let (k2, names) = match row.family {
        Family::S => (4, ["2F1^8 product", "3F2^4 product"]),
        Family::T => (6, ["2F1^12 product", "3F2^6 product"]),
    };
    let lhs2 = s.h.powi(k2);
    let rhs2 = &BigReal::from_ratio(&rhs.c2, p) * &v.omega(row.d)?.powi(2 * k2);
    let case = match (row.family, row.m_num.is_positive()) {
        (Family::T, true) => "t > 0 branch",
        (Family::T, false) => "t < 0 branch",
        _ => "",
    };
    Ok(v.report(
        id,
        &[(names[0], &lhs1, &rhs1), (names[1], &lhs2, &rhs2)],
        case,
    ))
}

/// Tabulated closed forms against the Borcherds-product right-hand sides, exactly in ℚ(√m).
pub fn verify_cross_consistency(v: &Verifier, row: &Theorem2Row) -> VerifyReport {
    let id = row.case_id("cross");
    guard(&id.clone(), || {
        row.validate()?;
        let p = v.prec();
        let rhs = prop27_rhs(row);
        let ok1 = quad_equal(&row.hyp1_pow, &rhs.c1);
        // S: (A₂²)² = c2 ; T: (B₂²)³ = c2
        let k = match row.family {
            Family::S => 2,
            Family::T => 3,
        };
        let lhs2 = row.hyp2_sq.pow(k);
        let ok2 = lhs2.b.is_zero() && lhs2.a == rhs.c2;
        let r1 = relative_residual(&row.hyp1_pow.to_real(p), &rhs.c1.to_real(p));
        let r2 = relative_residual(&lhs2.to_real(p), &BigReal::from_ratio(&rhs.c2, p));
        let residual = if r1 >= r2 { r1 } else { r2 };
        let details = format!(
            "2F1 power {}; 3F2 power {}",
            if ok1 { "equal" } else { "differs" },
            if ok2 { "equal" } else { "differs" }
        );
        Ok(VerifyReport::exact(id, ok1 && ok2, residual, details))
    })
}

/// The Hauptmodul relation on the imaginary axis: −s^{1/4}F₂/(⁴√12·ω₋₄²·F₁) = (y−1)/(y+1), τ_d = iy.
pub fn verify_axis_relation(v: &Verifier, row: &Theorem2Row) -> VerifyReport {
    let id = row.case_id("axis");
    guard(&id.clone(), || {
        row.validate()?;
        if row.family != Family::S || !row.m_num.is_positive() {
            return Ok(VerifyReport::skipped(
                id,
                "only S-family rows with s > 0 lie on the imaginary axis",
            ));
        }
        let p = v.prec();
        let z = row.argument();
        let (n1, d1) = Family::S.f1_params();
        let (n2, d2) = Family::S.f2_params();
        let f1 = series(v, n1, d1, HypArg::Rational(z.clone()))?;
        let f2 = series(v, n2, d2, HypArg::Rational(z.clone()))?;
        let quarter = rat(1, 4);
        let s4 = elementary::pow_rational(&BigReal::from_ratio(&z, p), &quarter)?;
        let c = &elementary::nth_root(&BigReal::from_i64(12, p), 4)? * &v.omega(-4)?.square();
        let lhs = -(&(&s4 * &f2) / &(&c * &f1));
        let (a1, _, a3) = row.embedding;
        let root3 = BigReal::from_i64(3, p).sqrt()?;
        let y = &BigReal::from_i64(-row.d, p).sqrt()?
            / &(&BigReal::from_i64(a1, p) + &root3.mul_int(&BigInt::from(a3)));
        let one = BigReal::one(p);
        let rhs = &(&y - &one) / &(&y + &one);
        Ok(v.report(id, &[("(τ−i)/(τ+i)", &lhs, &rhs)], ""))
    })
}

/// The three points where s or t takes a boundary value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialPoint {
    /// s = 0 (d = −4): only the ₂F₁ formula is meaningful.
    SZero,
    /// s = 1 (d = −24): both formulas through Gauss's evaluation.
    SOne,
    /// t = 0 (d = −3): only the ₂F₁ formula, on the a₁ = 3a₃ branch.
    TZero,
}

#[derive(Clone, Debug)]
pub struct SpecialRow {
    pub d: i64,
    pub point: SpecialPoint,
    pub embedding: (i64, i64, i64),
    pub scale: BigInt,
}

/// Borcherds-product identity at a degenerate or endpoint value of the Hauptmodul.
pub fn verify_prop27_special(v: &Verifier, row: &SpecialRow) -> VerifyReport {
    let fam = match row.point {
        SpecialPoint::TZero => "T",
        _ => "S",
    };
    let id = format!("prop27/{fam}/d={}", row.d);
    guard(&id.clone(), || {
        let p = v.prec();
        let (a1, a2, a3) = row.embedding;
        if -a1 * a1 + 3 * a2 * a2 + 3 * a3 * a3 != row.d {
            return Err(domain(format!(
                "d={}: embedding does not square to d",
                row.d
            )));
        }
        let n = row.d.unsigned_abs();
        let scale = BigRational::from_integer(row.scale.clone());
        let big = |x: i64| BigRational::from_integer(BigInt::from(x));
        match row.point {
            SpecialPoint::SZero | SpecialPoint::SOne => {
                let base = shifted_surd(a1, n);
                let c1 = base.pow(4).scale(&(&scale / big(4096 * 3)));
                let rhs1 = &c1.to_real(p) * &omega_ratio_pow(v, row.d, -4, 8)?;
                if row.point == SpecialPoint::SZero {
                    let lhs1 = BigReal::one(p);
                    return Ok(v.report(
                        id,
                        &[("2F1 product at s=0", &lhs1, &rhs1)],
                        "3F2 product undefined at s = 0",
                    ));
                }
                let t = v.table();
                let f1 =
                    crate::numerics::gauss_2f1_at_1_with(t, &rat(1, 24), &rat(5, 24), &rat(3, 4))?;
                let f2 =
                    crate::numerics::gauss_2f1_at_1_with(t, &rat(7, 24), &rat(11, 24), &rat(5, 4))?;
                let lhs1 = f1.powi(8);
                let q = big(a2 * a2 + a3 * a3);
                let c2 = &scale * big(9) * &q * &q / big(1024);
                let lhs2 = (&f1 * &f2).powi(4);
                let rhs2 = &BigReal::from_ratio(&c2, p) * &v.omega(row.d)?.powi(8);
                Ok(v.report(
                    id,
                    &[
                        ("2F1 product at s=1", &lhs1, &rhs1),
                        ("3F2 product at s=1", &lhs2, &rhs2),
                    ],
                    "Gauss values",
                ))
            }
            SpecialPoint::TZero => {
                if a1 != 3 * a3 {
                    return Err(domain("t = 0 row must satisfy a1 = 3a3"));
                }
                let c1 = squared_sum_with_root3(a2 + 2 * a3, n)
                    .pow(3)
                    .scale(&(&scale / big(128 * 27)));
                let rhs1 = &c1.to_real(p) * &omega_ratio_pow(v, row.d, -3, 12)?;
                let lhs1 = BigReal::one(p);
                Ok(v.report(
                    id,
                    &[("2F1 product at t=0", &lhs1, &rhs1)],
                    "3F2 product undefined at t = 0",
                ))
            }
        }
    })
}
