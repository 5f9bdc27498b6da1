//! Binary floating point over `BigInt`: value = mant · 2^exp, |mant| < 2^prec.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shift(mag: &BigUint, shift: u64) -> BigUint {
    if shift == 0 {
        return mag.clone();
    }
    let q = mag >> shift;
    if mag.bit(shift - 1) {
        q + 1u32
    } else {
        q
    }
}

fn pow10(n: u32) -> BigUint {
    num_traits::pow(BigUint::from(10u32), n as usize)
}

impl BigReal {
    pub fn zero(prec: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::from_parts(v.clone(), 0, prec)
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        let n = Self::from_parts(r.numer().clone(), 0, prec + 4);
        let d = Self::from_parts(r.denom().clone(), 0, prec + 4);
        (&n / &d).with_prec(prec)
    }

    /// Builds mant·2^exp rounded to `prec` bits.
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        let prec = prec.max(8);
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let (sign, mut mag) = (mant.sign(), mant.magnitude().clone());
        let mut exp = exp;
        let b = mag.bits();
        if b > prec as u64 {
            let shift = b - prec as u64;
            mag = round_shift(&mag, shift);
            exp += shift as i64;
        }
        let tz = mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mag >>= tz;
            exp += tz as i64;
        }
        BigReal {
            mant: BigInt::from_biguint(sign, mag),
            exp,
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Smallest t with |x| < 2^t (meaningless for zero).
    pub fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigReal {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::from_parts(&self.mant * k, self.exp, self.prec)
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        self / &BigReal::from_parts(k.clone(), 0, self.prec + 2)
    }

    pub fn mul_ratio(&self, r: &BigRational) -> Self {
        self.mul_int(r.numer()).div_int(r.denom())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec;
        let work = p + 2 * (64 - (n.unsigned_abs()).leading_zeros()) + 8;
        let mut base = self.with_prec(work);
        let mut acc = BigReal::one(work);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        if n < 0 {
            acc = &BigReal::one(work) / &acc;
        }
        acc.with_prec(p)
    }

    pub fn recip(&self) -> Self {
        &BigReal::one(self.prec) / self
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(domain("sqrt of a negative number"));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let p = self.prec as u64;
        let mag = self.mant.magnitude();
        let mut s = (2 * p + 4).saturating_sub(mag.bits());
        if (self.exp - s as i64).rem_euclid(2) != 0 {
            s += 1;
        }
        let r = (mag << s).sqrt();
        Ok(Self::from_parts(
            BigInt::from(r),
            (self.exp - s as i64) / 2,
            self.prec,
        ))
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(other.exp);
        let a = self.mant.magnitude() << (self.exp - e) as u64;
        let b = other.mant.magnitude() << (other.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        match sa {
            0 => Ordering::Equal,
            1 => self.cmp_abs(other),
            _ => other.cmp_abs(self),
        }
    }

    /// Nearest integer (ties away from zero).
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let mag = round_shift(self.mant.magnitude(), (-self.exp) as u64);
        BigInt::from_biguint(self.mant.sign(), mag)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let d = BigInt::one() << (-self.exp) as u64;
        self.mant.div_floor(&d)
    }

    /// Exact rational value of the stored binary number.
    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.mant.bits();
        let shift = b.saturating_sub(60);
        let top = (self.mant.magnitude() >> shift).to_u64().unwrap_or(0) as f64;
        let v = libm::ldexp(
            top,
            (self.exp + shift as i64).clamp(-100_000, 100_000) as i32,
        );
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Approximate log2|x|; -inf for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = self.mant.bits();
        let shift = b.saturating_sub(60);
        let top = (self.mant.magnitude() >> shift).to_u64().unwrap_or(1) as f64;
        libm::log2(top) + (self.exp + shift as i64) as f64
    }

    /// Scientific notation with `digits` significant digits, e.g. `-1.2345e-7`.
    pub fn to_decimal(&self, digits: u32) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return String::from("0");
        }
        let mut k = libm::floor(self.log2_abs() * core::f64::consts::LOG10_2) as i64;
        loop {
            let n = self.scaled_decimal(digits as i64 - 1 - k);
            let len = n.to_str_radix(10).len() as i64;
            if len > digits as i64 {
                k += 1;
                continue;
            }
            if len < digits as i64 {
                k -= 1;
                continue;
            }
            let s = n.to_str_radix(10);
            let (head, tail) = s.split_at(1);
            let sign = if self.is_negative() { "-" } else { "" };
            let tail = tail.trim_end_matches('0');
            return if tail.is_empty() {
                format!("{sign}{head}e{k}")
            } else {
                format!("{sign}{head}.{tail}e{k}")
            };
        }
    }

    fn scaled_decimal(&self, s: i64) -> BigUint {
        let mut num = self.mant.magnitude().clone();
        let mut den = BigUint::one();
        if s >= 0 {
            num *= pow10(s as u32);
        } else {
            den *= pow10((-s) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        (num * 2u32 + &den) / (den * 2u32)
    }

    /// Parses `[-]digits[.digits][e[+-]digits]`.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Self> {
        let r = parse_decimal_ratio(s)?;
        Ok(Self::from_ratio(&r, prec))
    }
}

pub fn parse_decimal_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (
            &s[..i],
            s[i + 1..]
                .parse::<i64>()
                .map_err(|_| domain(format!("bad exponent in {s:?}")))?,
        ),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    let all: String = [int_part, frac_part].concat();
    if all.is_empty() || !all.bytes().all(|c| c.is_ascii_digit()) {
        return Err(domain(format!("not a decimal number: {s:?}")));
    }
    let mut n = BigInt::parse_bytes(all.as_bytes(), 10).ok_or_else(|| domain("bad digits"))?;
    if neg {
        n = -n;
    }
    let e = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Ok(if e >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-e) as usize))
    })
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .map(|p| p as u32)
            .unwrap_or_else(|| bits_to_digits(self.prec));
        f.write_str(&self.to_decimal(digits))
    }
}

pub(crate) fn bits_to_digits(bits: u32) -> u32 {
    ((bits as u64 * 30103) / 100000) as u32
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.total_cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.total_cmp(other))
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, other: &BigReal) -> BigReal {
        let p = self.prec.max(other.prec);
        if other.is_zero() {
            return self.with_prec(p);
        }
        if self.is_zero() {
            return other.with_prec(p);
        }
        let gap = self.top() - other.top();
        if gap > p as i64 + 4 {
            return self.with_prec(p);
        }
        if -gap > p as i64 + 4 {
            return other.with_prec(p);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        BigReal::from_parts(a + b, e, p)
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, other: &BigReal) -> BigReal {
        self + &(-other)
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, other: &BigReal) -> BigReal {
        let p = self.prec.max(other.prec);
        BigReal::from_parts(&self.mant * &other.mant, self.exp + other.exp, p)
    }
}

impl core::ops::Div for &BigReal {
    type Output = BigReal;
    /// Panics on division by zero.
    fn div(self, other: &BigReal) -> BigReal {
        assert!(!other.is_zero(), "BigReal division by zero");
        let p = self.prec.max(other.prec);
        if self.is_zero() {
            return BigReal::zero(p);
        }
        let shift = (p as i64 + 4 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << shift as u64) / &other.mant;
        BigReal::from_parts(q, self.exp - shift - other.exp, p)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl core::ops::$tr for BigReal {
            type Output = BigReal;
            fn $m(self, o: BigReal) -> BigReal {
                (&self).$m(&o)
            }
        }
        impl core::ops::$tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, o: &BigReal) -> BigReal {
                (&self).$m(o)
            }
        }
        impl core::ops::$tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, o: BigReal) -> BigReal {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Sums a slice without intermediate cancellation concerns beyond `prec`.
pub fn sum(values: &[BigReal], prec: u32) -> BigReal {
    values.iter().fold(BigReal::zero(prec), |acc, v| &acc + v)
}
