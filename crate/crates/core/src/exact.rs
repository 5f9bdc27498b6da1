//! Exact arithmetic in ℚ(√m) and polynomials over it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::numerics::BigReal;

/// a + b·√m with m a squarefree positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
    pub m: u64,
}

fn is_squarefree(m: u64) -> bool {
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational, m: u64) -> Result<Self> {
        if m == 0 || !is_squarefree(m) {
            return Err(domain(alloc::format!(
                "radicand {m} is not a squarefree positive integer"
            )));
        }
        Ok(QuadExt { a, b, m })
    }

    pub fn from_rational(a: BigRational, m: u64) -> Self {
        QuadExt {
            a,
            b: BigRational::zero(),
            m,
        }
    }

    pub fn from_ints(a: i64, b: i64, m: u64) -> Self {
        QuadExt {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
            m,
        }
    }

    pub fn zero(m: u64) -> Self {
        Self::from_rational(BigRational::zero(), m)
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(BigRational::one(), m)
    }

    /// √m itself.
    pub fn root(m: u64) -> Self {
        QuadExt {
            a: BigRational::zero(),
            b: BigRational::one(),
            m,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            m: self.m,
        }
    }

    /// Field norm a² − m·b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadExt {
            a: &self.a / &n,
            b: -(&self.b / &n),
            m: self.m,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadExt {
            a: &self.a * r,
            b: &self.b * r,
            m: self.m,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QuadExt::one(self.m);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of the real embedding (√m > 0), decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // a and b√m have opposite signs: compare a² with m·b²
        let a2 = &self.a * &self.a;
        let mb2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m));
        match a2.cmp(&mb2) {
            core::cmp::Ordering::Greater => sa,
            core::cmp::Ordering::Less => sb,
            core::cmp::Ordering::Equal => 0,
        }
    }

    pub fn to_real(&self, prec: u32) -> BigReal {
        let w = prec + 16;
        let root = BigReal::from_i64(self.m as i64, w).sqrt().expect("m > 0");
        let v = &BigReal::from_ratio(&self.a, w) + &(&BigReal::from_ratio(&self.b, w) * &root);
        v.with_prec(prec)
    }

    /// Exact square root inside ℚ(√m) if the element is a square there.
    pub fn sqrt_exact(&self) -> Option<Self> {
        // (x + y√m)² = a + b√m  ⇔  x² + m y² = a, 2xy = b
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(QuadExt::from_rational(r, self.m));
            }
            let m = BigRational::from_integer(BigInt::from(self.m));
            return rational_sqrt(&(&self.a / &m)).map(|y| QuadExt {
                a: BigRational::zero(),
                b: y,
                m: self.m,
            });
        }
        let n = rational_sqrt(&self.norm())?;
        for s in [n.clone(), -n] {
            let x2 = (&self.a + &s) / BigRational::from_integer(2.into());
            if let Some(x) = rational_sqrt(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&x * BigRational::from_integer(2.into()));
                let cand = QuadExt {
                    a: x,
                    b: y,
                    m: self.m,
                };
                if &(&cand * &cand) == self {
                    return Some(if cand.signum() < 0 { -cand } else { cand });
                }
            }
        }
        None
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact square root of a non-negative rational, if rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn check_m(x: &QuadExt, y: &QuadExt) {
    assert!(
        x.m == y.m || x.is_rational() || y.is_rational(),
        "mismatched radicands {} and {}",
        x.m,
        y.m
    );
}

fn common_m(x: &QuadExt, y: &QuadExt) -> u64 {
    check_m(x, y);
    if x.is_rational() {
        y.m
    } else {
        x.m
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        let m = common_m(self, o);
        QuadExt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            m,
        }
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        let m = common_m(self, o);
        QuadExt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            m,
        }
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        let m = common_m(self, o);
        let mm = BigRational::from_integer(BigInt::from(m));
        QuadExt {
            a: &self.a * &o.a + &self.b * &o.b * mm,
            b: &self.a * &o.b + &self.b * &o.a,
            m,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            m: self.m,
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{} - ({})√{}", self.a, -&self.b, self.m)
        } else {
            write!(f, "{} + ({})√{}", self.a, self.b, self.m)
        }
    }
}

pub const MAX_DEGREE: usize = 8;

/// Polynomial over ℚ(√m), coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadPoly {
    coeffs: Vec<QuadExt>,
    m: u64,
}

impl QuadPoly {
    pub fn new(coeffs: Vec<QuadExt>, m: u64) -> Result<Self> {
        if coeffs.iter().any(|c| c.m != m && !c.is_rational()) {
            return Err(domain("polynomial coefficients over different fields"));
        }
        let mut coeffs: Vec<QuadExt> = coeffs.into_iter().map(|c| QuadExt { m, ..c }).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(domain(alloc::format!(
                "degree {} exceeds the cap {MAX_DEGREE}",
                coeffs.len() - 1
            )));
        }
        Ok(QuadPoly { coeffs, m })
    }

    pub fn zero(m: u64) -> Self {
        QuadPoly {
            coeffs: Vec::new(),
            m,
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QuadExt {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| QuadExt::zero(self.m))
    }

    pub fn leading(&self) -> Option<&QuadExt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c == &QuadExt::one(self.m))
    }

    pub fn conj(&self) -> Self {
        QuadPoly {
            coeffs: self.coeffs.iter().map(QuadExt::conj).collect(),
            m: self.m,
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(o.coeffs.len());
        QuadPoly::new(
            (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect(),
            self.m,
        )
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(QuadPoly::zero(self.m));
        }
        let mut out = vec![QuadExt::zero(self.m); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QuadPoly::new(out, self.m)
    }

    pub fn eval(&self, y: &QuadExt) -> QuadExt {
        self.coeffs
            .iter()
            .rev()
            .fold(QuadExt::zero(self.m), |acc, c| &(&acc * y) + c)
    }

    /// Euclidean division: self = quotient·q + remainder with deg remainder < deg q.
    pub fn divrem(&self, q: &Self) -> Result<(Self, Self)> {
        let lead_inv = q.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dq = q.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((QuadPoly::zero(self.m), self.clone()));
        }
        let mut quot = vec![QuadExt::zero(self.m); rem.len() - dq];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dq] * &lead_inv;
            for (j, qc) in q.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * qc);
            }
            quot[k] = c;
        }
        rem.truncate(dq);
        Ok((QuadPoly::new(quot, self.m)?, QuadPoly::new(rem, self.m)?))
    }
}

/// Coefficient template c0 + c1·s + c2·s² with rational cj.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPoly(pub Vec<BigRational>);

impl SPoly {
    pub fn eval(&self, s: &QuadExt) -> QuadExt {
        self.0.iter().rev().fold(QuadExt::zero(s.m), |acc, c| {
            &(&acc * s) + &QuadExt::from_rational(c.clone(), s.m)
        })
    }
}

/// The degree-6 polynomial in y whose coefficients are templates in s, evaluated at s.
pub fn build_section6_sextic(templates: &[SPoly], s: &QuadExt) -> Result<QuadPoly> {
    if templates.len() != 7 {
        return Err(domain("the sextic needs 7 coefficient templates"));
    }
    QuadPoly::new(templates.iter().map(|t| t.eval(s)).collect(), s.m)
}
