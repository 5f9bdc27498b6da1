use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::theorem2::series;
use super::{guard, Verifier, VerifyReport};
use crate::error::{domain, Result};
use crate::exact::{build_section6_sextic, QuadExt, QuadPoly, SPoly};
use crate::numerics::{elementary, rat, relative_residual, BigReal, HypArg};

/// Data of the two-point example d = −276.
#[derive(Clone, Debug)]
pub struct Section6Data {
    pub d: i64,
    /// s(τ₁) ∈ ℚ(√3).
    pub s1: QuadExt,
    pub embedding: (i64, i64, i64),
    /// Sextic coefficients of y⁰..y⁶, each a polynomial in s.
    pub sextic: Vec<SPoly>,
    /// Quadratic factor, constant term first.
    pub quadratic: Vec<QuadExt>,
    /// Claimed |F̃(τ₁)/F(τ₁)|.
    pub abs_ratio: QuadExt,
    /// 144(14+5√3): |F(τ₁)(Im τ₁)⁴| in units of |d|²ω⁸/(64π⁴).
    pub borcherds_factor: QuadExt,
    /// 2⁸·3⁴·11², the Schofer product constant.
    pub schofer_constant: BigInt,
    /// Right side of the final ₂F₁⁸ display as ∏ factorᵉ.
    pub final_2f1: Vec<(QuadExt, i64)>,
    /// Right side of the final ₃F₂⁴ display as ∏ factorᵉ.
    pub final_3f2: Vec<(QuadExt, i64)>,
}

fn product(v: &Verifier, factors: &[(QuadExt, i64)]) -> BigReal {
    let p = v.prec();
    factors
        .iter()
        .fold(BigReal::one(p), |acc, (f, e)| &acc * &f.to_real(p).powi(*e))
}

/// Exact steps (divisibility, |F̃/F|, Schofer product assembly) and the numeric evaluations at s₁.
pub fn run_section6(v: &Verifier, data: &Section6Data) -> Vec<VerifyReport> {
    alloc::vec![
        guard("section6/sextic-divisible", || divisibility(data)),
        guard("section6/abs-ratio", || abs_ratio(v, data)),
        guard("section6/schofer-assembly", || assembly(v, data)),
        guard("section6/borcherds-vs-hypergeometric", || borcherds_side(
            v, data
        )),
        guard("section6/final-2F1", || final_2f1(v, data)),
        guard("section6/final-3F2", || final_3f2(v, data)),
    ]
}

fn quadratic(data: &Section6Data) -> Result<QuadPoly> {
    if data.quadratic.len() != 3 {
        return Err(domain("the quadratic factor needs 3 coefficients"));
    }
    QuadPoly::new(data.quadratic.clone(), data.s1.m)
}

fn divisibility(data: &Section6Data) -> Result<VerifyReport> {
    let sextic = build_section6_sextic(&data.sextic, &data.s1)?;
    let q = quadratic(data)?;
    let (quot, rem) = sextic.divrem(&q)?;
    let ok = rem.is_zero();
    let details = if ok {
        format!(
            "remainder 0; quotient degree {}",
            quot.degree().unwrap_or(0)
        )
    } else {
        format!("nonzero remainder of degree {}", rem.degree().unwrap_or(0))
    };
    Ok(VerifyReport::exact(
        "section6/sextic-divisible",
        ok,
        BigReal::zero(64),
        details,
    ))
}

fn abs_ratio(v: &Verifier, data: &Section6Data) -> Result<VerifyReport> {
    let q = quadratic(data)?;
    let c0 = q.coeff(0);
    let c1 = q.coeff(1);
    let c2 = q.coeff(2);
    // complex-conjugate roots: b² − 4ac < 0, so |root|² = c/a
    let disc = &(&c1 * &c1) - &(&c2 * &c0).scale(&BigRational::from_integer(4.into()));
    let conj_roots = disc.signum() < 0;
    let prod = c0.div(&c2)?;
    let claimed_sq = &data.abs_ratio * &data.abs_ratio;
    let root_ok = prod
        .sqrt_exact()
        .is_some_and(|r| r == data.abs_ratio || -r == data.abs_ratio);
    let ok = conj_roots && root_ok && claimed_sq == prod && data.abs_ratio.signum() > 0;
    let p = v.prec();
    let residual = relative_residual(&claimed_sq.to_real(p), &prod.to_real(p));
    let details = format!(
        "constant/leading = {prod}; claimed square root {}; discriminant {}",
        if root_ok { "matches" } else { "differs" },
        if conj_roots {
            "negative"
        } else {
            "not negative"
        }
    );
    Ok(VerifyReport::exact(
        "section6/abs-ratio",
        ok,
        residual,
        details,
    ))
}

fn assembly(v: &Verifier, data: &Section6Data) -> Result<VerifyReport> {
    let lhs = &(&data.borcherds_factor * &data.borcherds_factor) * &data.abs_ratio;
    let want = QuadExt::from_rational(
        BigRational::from_integer(data.schofer_constant.clone()),
        lhs.m,
    );
    let ok = lhs.b.is_zero() && lhs.a == want.a;
    let p = v.prec();
    let residual = relative_residual(&lhs.to_real(p), &want.to_real(p));
    Ok(VerifyReport::exact(
        "section6/schofer-assembly",
        ok,
        residual,
        format!("|F y⁴|²·|F̃/F| = {lhs}"),
    ))
}

fn s1_arg(v: &Verifier, data: &Section6Data) -> Result<HypArg> {
    let x = data.s1.to_real(v.prec() + 32);
    if x.is_zero() || x.abs() >= BigReal::one(x.prec()) {
        return Err(domain("s1 must satisfy 0 < |s1| < 1"));
    }
    Ok(HypArg::Real(x))
}

fn borcherds_side(v: &Verifier, data: &Section6Data) -> Result<VerifyReport> {
    let p = v.prec();
    let (a1, a2, a3) = data.embedding;
    if a2 != 0 || data.s1.signum() <= 0 {
        return Err(domain("s1 in (0,1) requires a2 = 0"));
    }
    let n = data.d.unsigned_abs() as i64;
    let pi4 = v.pi().powi(4);
    let w = v.omega(data.d)?;
    let w4 = v.omega(-4)?;
    let scale = (&BigReal::from_i64(n * n, p) * &w.powi(8)).div_int(&BigInt::from(64));
    let borcherds = &(&data.borcherds_factor.to_real(p) * &scale) / &pi4;
    let f1 = series(v, &[(1, 24), (5, 24)], &[(3, 4)], s1_arg(v, data)?)?;
    let f2 = series(v, &[(7, 24), (11, 24)], &[(5, 4)], s1_arg(v, data)?)?;
    let s4 = elementary::pow_rational(&data.s1.to_real(p), &rat(1, 4))?;
    let c = &elementary::nth_root(&BigReal::from_i64(12, p), 4)? * &w4.square();
    let form = &f1 + &(&(&s4 * &f2) / &c);
    let c1 = &(&w4.powi(8) * &BigReal::from_i64(12, p)) / &pi4;
    let root3 = BigReal::from_i64(3, p).sqrt()?;
    let y = &BigReal::from_i64(n, p).sqrt()?
        / &(&BigReal::from_i64(a1, p) + &root3.mul_int(&BigInt::from(a3)));
    let hyp = &(&c1 * &form.powi(8)) * &y.powi(4);
    Ok(v.report(
        "section6/borcherds-vs-hypergeometric".into(),
        &[("|F(τ₁)(Im τ₁)⁴|", &borcherds, &hyp)],
        "",
    ))
}

fn final_2f1(v: &Verifier, data: &Section6Data) -> Result<VerifyReport> {
    let f1 = series(v, &[(1, 24), (5, 24)], &[(3, 4)], s1_arg(v, data)?)?;
    let lhs = f1.powi(8);
    let rhs = &product(v, &data.final_2f1) * &(&v.omega(data.d)? / &v.omega(-4)?).powi(8);
    Ok(v.report(
        "section6/final-2F1".into(),
        &[("2F1(s1)^8", &lhs, &rhs)],
        "",
    ))
}

fn final_3f2(v: &Verifier, data: &Section6Data) -> Result<VerifyReport> {
    let h = series(
        v,
        &[(1, 3), (1, 2), (2, 3)],
        &[(3, 4), (5, 4)],
        s1_arg(v, data)?,
    )?;
    let lhs = h.powi(4);
    let rhs = &product(v, &data.final_3f2) * &v.omega(data.d)?.powi(8);
    Ok(v.report(
        "section6/final-3F2".into(),
        &[("3F2(s1)^4", &lhs, &rhs)],
        "",
    ))
}
