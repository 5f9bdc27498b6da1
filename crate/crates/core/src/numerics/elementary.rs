//! Constants and elementary functions on [`BigReal`].
//!
//! Every routine takes its target precision in bits, works with extra guard
//! bits internally and rounds once at the end.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::real::BigReal;
use crate::error::{domain, Error, Result};

const GUARD: u32 = 32;

/// atan(1/n) (alternating) or atanh(1/n) in fixed point with `w` fractional bits.
fn arc_inv(n: u64, w: u64, hyperbolic: bool) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut term = (BigInt::one() << w) / &n;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if !hyperbolic && k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        term /= &n2;
        k += 1;
    }
    sum
}

pub fn pi(prec: u32) -> BigReal {
    let w = prec as u64 + GUARD as u64;
    let v = arc_inv(5, w, false) * 16 - arc_inv(239, w, false) * 4;
    BigReal::from_parts(v, -(w as i64), prec)
}

pub fn ln2(prec: u32) -> BigReal {
    let w = prec as u64 + GUARD as u64;
    BigReal::from_parts(arc_inv(3, w, true) * 2, -(w as i64), prec)
}

pub fn exp(x: &BigReal) -> Result<BigReal> {
    let p = x.prec();
    if x.is_zero() {
        return Ok(BigReal::one(p));
    }
    if x.top() > 40 {
        return Err(domain("exp argument too large"));
    }
    let kbits = x.top().max(1) as u32 + 2;
    let work = p + GUARD + kbits;
    let xw = x.with_prec(work);
    let l2 = ln2(work + kbits);
    let k = (&xw / &l2).round();
    let r = &xw - &l2.mul_int(&k);
    // halve j times so the Taylor series converges fast, then square back
    let j = (libm::sqrt(work as f64) as i64 / 2).max(4);
    let work2 = work + j as u32;
    let r = r.with_prec(work2).mul_pow2(-j);
    let mut sum = BigReal::one(work2);
    let mut term = BigReal::one(work2);
    let mut n = 1i64;
    loop {
        term = (&term * &r).div_int(&BigInt::from(n));
        if term.is_zero() || term.top() < -(work2 as i64) - 4 {
            break;
        }
        sum = &sum + &term;
        n += 1;
    }
    for _ in 0..j {
        sum = sum.square();
    }
    let k = k.to_i64().ok_or_else(|| domain("exp argument too large"))?;
    Ok(sum.mul_pow2(k).with_prec(p))
}

pub fn ln(x: &BigReal) -> Result<BigReal> {
    if x.signum() <= 0 {
        return Err(domain("log of a non-positive number"));
    }
    let p = x.prec();
    let work = p + GUARD + 16;
    // x = y · 2^e with y in [1/2, 1)
    let e = x.top();
    let y = x.with_prec(work).mul_pow2(-e);
    let one = BigReal::one(work);
    let z = &(&y - &one) / &(&y + &one);
    let z2 = z.square();
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1i64;
    loop {
        power = &power * &z2;
        let t = power.div_int(&BigInt::from(2 * k + 1));
        if t.is_zero() || t.top() < -(work as i64) - 4 {
            break;
        }
        sum = &sum + &t;
        k += 1;
    }
    let res = &sum.mul_pow2(1) + &ln2(work).mul_int(&BigInt::from(e));
    Ok(res.with_prec(p))
}

/// (sin x, cos x).
pub fn sin_cos(x: &BigReal) -> Result<(BigReal, BigReal)> {
    let p = x.prec();
    if x.top() > 40 {
        return Err(domain("sin/cos argument too large"));
    }
    let work = p + GUARD + x.top().max(0) as u32;
    let xw = x.with_prec(work);
    let two_pi = pi(work).mul_pow2(1);
    let k = (&xw / &two_pi).round();
    let r = &xw - &two_pi.mul_int(&k);
    let j = (libm::sqrt(work as f64) as i64 / 2).max(4);
    let work2 = work + 2 * j as u32;
    let r = r.with_prec(work2).mul_pow2(-j);
    let r2 = r.square();
    let mut s = r.clone();
    let mut c = BigReal::one(work2);
    let mut ts = r.clone();
    let mut tc = BigReal::one(work2);
    let mut n = 1i64;
    loop {
        ts = -(&ts * &r2).div_int(&BigInt::from((2 * n) * (2 * n + 1)));
        tc = -(&tc * &r2).div_int(&BigInt::from((2 * n - 1) * (2 * n)));
        if tc.is_zero() || tc.top() < -(work2 as i64) - 4 {
            break;
        }
        s = &s + &ts;
        c = &c + &tc;
        n += 1;
    }
    let one = BigReal::one(work2);
    for _ in 0..j {
        let s2 = (&s * &c).mul_pow2(1);
        c = &(&c * &c).mul_pow2(1) - &one;
        s = s2;
    }
    Ok((s.with_prec(p), c.with_prec(p)))
}

/// x^q for x > 0 and rational q.
pub fn pow_rational(x: &BigReal, q: &BigRational) -> Result<BigReal> {
    if q.is_integer() {
        if x.is_zero() && !q.is_positive() {
            return Err(Error::DivisionByZero);
        }
        if let Some(n) = q.to_integer().to_i64() {
            return Ok(x.powi(n));
        }
    }
    if x.signum() <= 0 {
        return Err(domain("fractional power of a non-positive number"));
    }
    let p = x.prec();
    let qbits = (q.numer().bits() + q.denom().bits()) as u32;
    let work = p + GUARD + qbits;
    let l = ln(&x.with_prec(work))?;
    Ok(exp(&l.mul_ratio(q))?.with_prec(p))
}

/// Positive real n-th root of x > 0.
pub fn nth_root(x: &BigReal, n: u32) -> Result<BigReal> {
    if n == 0 {
        return Err(domain("root of degree 0"));
    }
    if x.is_zero() {
        return Ok(x.clone());
    }
    if x.is_negative() {
        return Err(domain("real root of a negative number"));
    }
    if n == 2 {
        return x.sqrt();
    }
    let p = x.prec();
    let work = p + GUARD;
    let xw = x.with_prec(work);
    let r = pow_rational(&xw, &BigRational::new(BigInt::one(), BigInt::from(n)))?;
    // one Newton step polishes the last bits
    let nn = BigInt::from(n);
    let rn1 = r.powi(n as i64 - 1);
    let r = &r - &(&(&(&rn1 * &r) - &xw) / &rn1.mul_int(&nn));
    Ok(r.with_prec(p))
}
