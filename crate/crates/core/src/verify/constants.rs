use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{guard, Verifier, VerifyReport};
use crate::error::Result;
use crate::numerics::{elementary, gauss_2f1_at_1_with, rat, BigComplex, BigReal};
use crate::quadfield::big_omega_with;

/// Borcherds scales and pinned dimensions used by the constant checks.
#[derive(Clone, Debug)]
pub struct ConstantsFixture {
    /// Borcherds constant A₋₄ at τ = i.
    pub a_minus4: BigInt,
    /// Borcherds constant A₋₂₄.
    pub a_minus24: BigInt,
    /// Borcherds constant B₋₃.
    pub b_minus3: BigInt,
    /// Pinned (k, d_k) pairs.
    pub dimensions: Vec<(i64, i64)>,
}

/// d_k = 1 − k + ⌊k/4⌋ + ⌊3k/8⌋ + ⌊5k/12⌋.
pub fn dimension_dk(k: i64) -> i64 {
    1 - k + k.div_euclid(4) + (3 * k).div_euclid(8) + (5 * k).div_euclid(12)
}

fn real(v: &Verifier, n: i64) -> BigReal {
    BigReal::from_i64(n, v.prec())
}

fn root(v: &Verifier, n: i64, k: u32) -> Result<BigReal> {
    elementary::nth_root(&real(v, n), k)
}

fn rpow(v: &Verifier, n: i64, e: BigRational) -> Result<BigReal> {
    elementary::pow_rational(&real(v, n), &e)
}

/// The constants C₁ and C₂, the Γ-chain for ω₋₃, the Gauss evaluation at τ = i and d_k.
pub fn verify_constants(v: &Verifier, fx: &ConstantsFixture) -> Vec<VerifyReport> {
    let mut out = vec![
        guard("constants/C1-vs-A-4", || c1_vs_a4(v, fx)),
        guard("constants/C1-via-d-24", || c1_via_d24(v, fx)),
        guard("constants/C2-vs-B-3", || c2_vs_b3(v, fx)),
        guard("constants/C-closed-forms", || c_closed_forms(v)),
        guard("constants/gamma-chain-1", || gamma_chain_1(v)),
        guard("constants/gamma-chain-2", || gamma_chain_2(v)),
        guard("constants/gamma-chain-3", || gamma_chain_3(v)),
        guard("constants/P-ratio", || p_ratio(v)),
        guard("constants/gauss-2F1-at-1", || gauss_at_one(v)),
    ];
    out.push(dimensions(fx));
    out
}

/// |C₁| = 12ω₋₄⁸/π⁴ against the S-family Borcherds value at τ = i (s = 0, Im τ = 1).
fn c1_vs_a4(v: &Verifier, fx: &ConstantsFixture) -> Result<VerifyReport> {
    let p = v.prec();
    let w8 = v.omega(-4)?.powi(8);
    let pi4 = v.pi().powi(4);
    let c1 = &(&w8 * &real(v, 12)) / &pi4;
    let a = BigReal::from_bigint(&fx.a_minus4, p);
    let borcherds_value = &(&(&a * &real(v, 16)).div_int(&BigInt::from(64)) * &w8) / &pi4;
    Ok(v.report(
        "constants/C1-vs-A-4".into(),
        &[("|C1| vs Borcherds value", &c1, &borcherds_value)],
        "",
    ))
}

/// |C₁| through τ₋₂₄ = iy, s = 1: |C₁|(F₁(1) + F₂(1)/(⁴√12·ω₋₄²))⁸y⁴ = A₋₂₄·24²/64·(ω₋₂₄/√π)⁸.
fn c1_via_d24(v: &Verifier, fx: &ConstantsFixture) -> Result<VerifyReport> {
    let p = v.prec();
    let t = v.table();
    let w4 = v.omega(-4)?;
    let f1 = gauss_2f1_at_1_with(t, &rat(1, 24), &rat(5, 24), &rat(3, 4))?;
    let f2 = gauss_2f1_at_1_with(t, &rat(7, 24), &rat(11, 24), &rat(5, 4))?;
    let c = &root(v, 12, 4)? * &w4.square();
    let form = &f1 + &(&f2 / &c);
    let y = (&real(v, 6).sqrt()? - &real(v, 2).sqrt()?).mul_pow2(-1);
    let pi4 = v.pi().powi(4);
    let c1 = &(&w4.powi(8) * &real(v, 12)) / &pi4;
    let lhs = &(&c1 * &form.powi(8)) * &y.powi(4);
    let a = BigReal::from_bigint(&fx.a_minus24, p);
    let rhs = &(&(&a * &real(v, 576)).div_int(&BigInt::from(64)) * &v.omega(-24)?.powi(8)) / &pi4;
    Ok(v.report(
        "constants/C1-via-d-24".into(),
        &[("closed form at s=1 vs Borcherds value", &lhs, &rhs)],
        "",
    ))
}

/// |C₂| = 27(1+√3)⁶ω₋₃¹²/(256π⁶) against the T-family Borcherds value at τ₋₃ (t = 0, Im τ = 1/(1+√3)).
fn c2_vs_b3(v: &Verifier, fx: &ConstantsFixture) -> Result<VerifyReport> {
    let p = v.prec();
    let w12 = v.omega(-3)?.powi(12);
    let pi6 = v.pi().powi(6);
    let one_r3 = &BigReal::one(p) + &real(v, 3).sqrt()?;
    let c2 = (&(&(&one_r3.powi(6) * &w12) * &real(v, 27)) / &pi6).div_int(&BigInt::from(256));
    let lhs = &c2 * &one_r3.powi(-6);
    let b = BigReal::from_bigint(&fx.b_minus3, p);
    let rhs = (&(&(&b * &real(v, 27)) * &w12) / &pi6).div_int(&BigInt::from(512));
    Ok(v.report(
        "constants/C2-vs-B-3".into(),
        &[("|C2|·Im(τ)^6 vs Borcherds value", &lhs, &rhs)],
        "",
    ))
}

/// π/Ω₋₄² = Γ(3/4)²/Γ(1/4)² and π/Ω₋₃² = Γ(2/3)³/Γ(1/3)³.
fn c_closed_forms(v: &Verifier) -> Result<VerifyReport> {
    let t = v.table();
    let pi = v.pi();
    let o4 = big_omega_with(t, -4)?;
    let o3 = big_omega_with(t, -3)?;
    let l1 = &pi / &o4.square();
    let r1 = (&t.gamma(&rat(3, 4))? / &t.gamma(&rat(1, 4))?).square();
    let l2 = &pi / &o3.square();
    let r2 = (&t.gamma(&rat(2, 3))? / &t.gamma(&rat(1, 3))?).powi(3);
    Ok(v.report(
        "constants/C-closed-forms".into(),
        &[("C1 forms", &l1, &r1), ("C2 forms", &l2, &r2)],
        "",
    ))
}

fn g24(v: &Verifier, n: i64) -> Result<BigReal> {
    v.table().gamma(&rat(n, 24))
}

fn sin_pi(v: &Verifier, q: BigRational) -> Result<BigReal> {
    Ok(elementary::sin_cos(&v.pi().mul_ratio(&q))?.0)
}

/// (Γ(17/24)Γ(23/24)/(Γ(13/24)Γ(19/24)))² through the reflection form to 4^{−2/3}(Γ(5/6)/Γ(1/6))(3+2√2).
fn gamma_chain_1(v: &Verifier) -> Result<VerifyReport> {
    let t = v.table();
    let lhs = (&(&g24(v, 17)? * &g24(v, 23)?) / &(&g24(v, 13)? * &g24(v, 19)?)).square();
    let num = &(&g24(v, 17)? * &g24(v, 23)?) * &(&g24(v, 5)? * &g24(v, 11)?);
    let den = &(&g24(v, 13)? * &g24(v, 19)?) * &(&g24(v, 1)? * &g24(v, 7)?);
    let sines = &(&sin_pi(v, rat(5, 24))? * &sin_pi(v, rat(11, 24))?)
        / &(&sin_pi(v, rat(1, 24))? * &sin_pi(v, rat(7, 24))?);
    let mid = &(&num / &den) * &sines;
    let ratio = &t.gamma(&rat(5, 6))? / &t.gamma(&rat(1, 6))?;
    let tail = &real(v, 3) + &real(v, 8).sqrt()?;
    let rhs = &(&rpow(v, 4, rat(-2, 3))? * &ratio) * &tail;
    Ok(v.report(
        "constants/gamma-chain-1".into(),
        &[("reflection form", &lhs, &mid), ("closed form", &lhs, &rhs)],
        "",
    ))
}

/// Γ(1/3)Γ(5/6) = (2π)^{1/2}2^{−1/6}Γ(2/3).
fn gamma_chain_2(v: &Verifier) -> Result<VerifyReport> {
    let t = v.table();
    let lhs = &t.gamma(&rat(1, 3))? * &t.gamma(&rat(5, 6))?;
    let rhs = &(&v.pi().mul_pow2(1).sqrt()? * &rpow(v, 2, rat(-1, 6))?) * &t.gamma(&rat(2, 3))?;
    Ok(v.report(
        "constants/gamma-chain-2".into(),
        &[("duplication", &lhs, &rhs)],
        "",
    ))
}

/// Γ(5/6)Γ(17/24)Γ(23/24)/(Γ(7/6)Γ(13/24)Γ(19/24)) against its four displayed forms.
fn gamma_chain_3(v: &Verifier) -> Result<VerifyReport> {
    let t = v.table();
    let g56 = t.gamma(&rat(5, 6))?;
    let lhs = &(&(&g56 * &g24(v, 17)?) * &g24(v, 23)?)
        / &(&(&t.gamma(&rat(7, 6))? * &g24(v, 13)?) * &g24(v, 19)?);
    let s2p1 = &real(v, 2).sqrt()? + &BigReal::one(v.prec());
    let lead = (&rpow(v, 2, rat(-2, 3))? * &s2p1).mul_int(&BigInt::from(6));
    let f1 = &lead * &elementary::pow_rational(&(&g56 / &t.gamma(&rat(1, 6))?), &rat(3, 2))?;
    let f2 = &lead * &(&g56.powi(3) / &elementary::pow_rational(&v.pi().mul_pow2(1), &rat(3, 2))?);
    let f3 = (&(&rpow(v, 2, rat(-7, 6))? * &s2p1)
        * &(&t.gamma(&rat(2, 3))? / &t.gamma(&rat(1, 3))?).powi(3))
        .mul_int(&BigInt::from(6));
    let f4 = &s2p1 / &(&rpow(v, 2, rat(1, 6))? * &v.omega(-3)?.square());
    Ok(v.report(
        "constants/gamma-chain-3".into(),
        &[
            ("form 1", &lhs, &f1),
            ("form 2", &lhs, &f2),
            ("form 3", &lhs, &f3),
            ("(√2+1)/(2^{1/6}ω₋₃²)", &lhs, &f4),
        ],
        "",
    ))
}

/// (P₋₂₄ − P₋₃)/(P₋₂₄ − P̄₋₃) = (1−i)(1−1/√2) = e^{−2πi/8}(√2−1), compared on both coordinates.
fn p_ratio(v: &Verifier) -> Result<VerifyReport> {
    let p = v.prec();
    let zero = BigReal::zero(p);
    let r2 = real(v, 2).sqrt()?;
    let r3 = real(v, 3).sqrt()?;
    let p24 = BigComplex::new(zero.clone(), (&real(v, 6).sqrt()? - &r2).mul_pow2(-1));
    let den = &BigReal::one(p) + &r3;
    let p3 = BigComplex::new(-(&BigReal::one(p) / &den), &BigReal::one(p) / &den);
    let ratio = (&p24 - &p3).div(&(&p24 - &p3.conj()));
    let k = &BigReal::one(p) - &r2.recip();
    let form1 = BigComplex::new(k.clone(), -k);
    let (s, c) = elementary::sin_cos(&v.pi().mul_pow2(-2))?;
    let r = &r2 - &BigReal::one(p);
    let form2 = BigComplex::new(&c * &r, -(&s * &r));
    // distance relative to |ratio|
    let scale = ratio.abs();
    let d1 = &(&ratio - &form1).abs() / &scale;
    let d2 = &(&ratio - &form2).abs() / &scale;
    let details = format!(
        "(1−i)(1−1/√2): {}, e^(−2πi/8)(√2−1): {}",
        d1.to_decimal(3),
        d2.to_decimal(3)
    );
    let worst = if d1 >= d2 { d1 } else { d2 };
    Ok(VerifyReport::numeric(
        "constants/P-ratio",
        worst,
        v.tolerance_digits(),
        details,
    ))
}

/// ₂F₁(1/12,5/12;1;1) = Γ(1/2)/(Γ(11/12)Γ(7/12)) = (3^{1/4}/2)Ω₋₄/π.
fn gauss_at_one(v: &Verifier) -> Result<VerifyReport> {
    let t = v.table();
    let lhs = gauss_2f1_at_1_with(t, &rat(1, 12), &rat(5, 12), &rat(1, 1))?;
    let mid = &t.gamma(&rat(1, 2))? / &(&t.gamma(&rat(11, 12))? * &t.gamma(&rat(7, 12))?);
    let pi = v.pi();
    let mid2 = &(&pi.sqrt()? * &t.gamma(&rat(1, 4))?)
        / &(&(&pi.mul_pow2(1) * &rpow(v, 3, rat(-1, 4))?) * &t.gamma(&rat(3, 4))?);
    let rhs = (&(&root(v, 3, 4)? * &big_omega_with(t, -4)?) / &pi).mul_pow2(-1);
    Ok(v.report(
        "constants/gauss-2F1-at-1".into(),
        &[
            ("Γ(1/2)/(Γ(11/12)Γ(7/12))", &lhs, &mid),
            ("multiplication form", &lhs, &mid2),
            ("(3^{1/4}/2)Ω₋₄/π", &lhs, &rhs),
        ],
        "",
    ))
}

fn dimensions(fx: &ConstantsFixture) -> VerifyReport {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in (4..=16).step_by(2) {
        let dk = dimension_dk(k);
        ok &= dk >= 0;
        parts.push(format!("d{k}={dk}"));
    }
    for &(k, want) in &fx.dimensions {
        let got = dimension_dk(k);
        if got != want {
            ok = false;
            parts.push(format!("d{k}: expected {want}, got {got}"));
        }
    }
    VerifyReport::exact(
        "constants/dimensions",
        ok,
        BigReal::zero(64),
        parts.join(" "),
    )
}
