use alloc::format;
use alloc::string::String;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::elementary;
use super::real::BigReal;
use crate::error::{domain, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: BigReal) -> Self {
        let p = re.prec();
        BigComplex {
            re,
            im: BigReal::zero(p),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_real(BigReal::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(BigReal::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, p: u32) -> Self {
        BigComplex {
            re: self.re.with_prec(p),
            im: self.im.with_prec(p),
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> BigReal {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> BigReal {
        self.norm_sqr().sqrt().expect("norm is non-negative")
    }

    pub fn scale(&self, k: &BigReal) -> Self {
        BigComplex {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        BigComplex {
            re: self.re.mul_int(k),
            im: self.im.mul_int(k),
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.recip()
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        let mut base = self.with_prec(p + 16);
        let mut acc = BigComplex::one(p + 16);
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
            acc = acc.recip();
        }
        acc.with_prec(p)
    }

    pub fn exp(&self) -> Result<Self> {
        let r = elementary::exp(&self.re)?;
        let (s, c) = elementary::sin_cos(&self.im)?;
        Ok(BigComplex {
            re: &r * &c,
            im: &r * &s,
        })
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        let im = self.im.to_decimal(digits);
        if let Some(abs) = im.strip_prefix('-') {
            format!("{} - {}i", self.re.to_decimal(digits), abs)
        } else {
            format!("{} + {}i", self.re.to_decimal(digits), im)
        }
    }
}

/// q = exp(2πiτ) for Im τ > 0.
pub fn qexp(tau: &BigComplex) -> Result<BigComplex> {
    if tau.im.signum() <= 0 {
        return Err(domain("q-expansion needs Im(tau) > 0"));
    }
    let p = tau.prec();
    let two_pi = elementary::pi(p + 16).mul_pow2(1);
    let arg = BigComplex {
        re: -(&tau.im.with_prec(p + 16) * &two_pi),
        im: &tau.re.with_prec(p + 16) * &two_pi,
    };
    Ok(arg.exp()?.with_prec(p))
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        BigComplex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}
