//! Gamma function by Spouge's approximation after reduction into [1, 2).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elementary::{exp, ln, pi};
use super::real::BigReal;
use super::PrecisionContext;
use crate::error::{domain, Result};

const LOG2_TWO_PI: f64 = 2.651_496_129_472_319;

/// Spouge coefficients for one target precision; build once, evaluate many times.
#[derive(Clone, Debug)]
pub struct GammaTable {
    prec: u32,
    work: u32,
    a: i64,
    c0: BigReal,
    coeffs: Vec<BigReal>,
}

impl GammaTable {
    pub fn new(ctx: &PrecisionContext) -> Result<Self> {
        Self::with_bits(ctx.bits())
    }

    pub fn with_bits(prec: u32) -> Result<Self> {
        // relative error of Spouge's sum is at most a^(-1/2) (2π)^(-(a+1/2))
        let target = prec as f64 + 8.0;
        let a = libm::ceil(target / LOG2_TWO_PI) as i64 + 1;
        // the coefficients grow like (2π)^a, which the sum cancels again
        let work = prec + libm::ceil(a as f64 * LOG2_TWO_PI) as u32 + 48;
        let two_pi = pi(work).mul_pow2(1);
        let c0 = two_pi.sqrt()?;
        let mut coeffs = Vec::with_capacity(a as usize - 1);
        let mut fact = BigInt::one();
        for k in 1..a {
            if k > 1 {
                fact *= k - 1;
            }
            let base = BigReal::from_i64(a - k, work);
            let half = BigRational::new(BigInt::from(2 * k - 1), BigInt::from(2));
            let log_mag = &ln(&base)?.mul_ratio(&half) + &base;
            let mut c = exp(&log_mag)?.div_int(&fact);
            if k % 2 == 0 {
                c = -c;
            }
            coeffs.push(c);
        }
        Ok(GammaTable {
            prec,
            work,
            a,
            c0,
            coeffs,
        })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// ln Γ(z+1) for real z in [0, 1).
    fn log_gamma_core(&self, z: &BigReal) -> Result<BigReal> {
        let w = self.work;
        let z = z.with_prec(w);
        let mut s = self.c0.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            let zk = &z + &BigReal::from_i64(i as i64 + 1, w);
            s = &s + &(c / &zk);
        }
        let za = &z + &BigReal::from_i64(self.a, w);
        let half = BigReal::one(w).mul_pow2(-1);
        let v = &(&(&z + &half) * &ln(&za)?) - &za;
        Ok((&v + &ln(&s)?).with_prec(self.prec + 16))
    }

    /// Splits x = r·(rational factor) with Γ(x) = Γ(r)·factor and r in [1, 2).
    fn reduce(x: &BigRational) -> Result<(BigRational, BigRational)> {
        if x.is_integer() && !x.is_positive() {
            return Err(domain("Gamma has a pole at non-positive integers"));
        }
        let n = x.floor().to_integer() - BigInt::one();
        let r = x - BigRational::from_integer(n.clone());
        let mut factor = BigRational::one();
        let steps = n
            .abs()
            .to_u64()
            .ok_or_else(|| domain("Gamma argument too large"))?;
        if steps > 100_000 {
            return Err(domain("Gamma argument too large"));
        }
        for i in 0..steps {
            let i = BigRational::from_integer(BigInt::from(i));
            if n.is_positive() {
                factor *= &r + i;
            } else {
                factor /= &r - i - BigRational::one();
            }
        }
        Ok((r, factor))
    }

    /// Γ(x) for any rational x that is not a pole.
    pub fn gamma_signed(&self, x: &BigRational) -> Result<BigReal> {
        let (r, factor) = Self::reduce(x)?;
        let z = BigReal::from_ratio(&(r - BigRational::one()), self.work);
        let g = exp(&self.log_gamma_core(&z)?)?;
        Ok(g.mul_ratio(&factor).with_prec(self.prec))
    }

    pub fn gamma(&self, x: &BigRational) -> Result<BigReal> {
        if !x.is_positive() {
            return Err(domain("gamma needs x > 0"));
        }
        self.gamma_signed(x)
    }

    pub fn log_gamma(&self, x: &BigRational) -> Result<BigReal> {
        if !x.is_positive() {
            return Err(domain("log_gamma needs x > 0"));
        }
        let (r, factor) = Self::reduce(x)?;
        let z = BigReal::from_ratio(&(r - BigRational::one()), self.work);
        let lg = self.log_gamma_core(&z)?;
        let lf = if factor.is_one() {
            BigReal::zero(self.prec + 16)
        } else {
            ln(&BigReal::from_ratio(&factor, self.prec + 16))?
        };
        Ok((&lg + &lf).with_prec(self.prec))
    }

    /// ∏ Γ(x_i)^{e_i} evaluated through log-Gamma sums; all x_i > 0.
    pub fn gamma_product(&self, factors: &[(BigRational, BigRational)]) -> Result<BigReal> {
        let w = self.prec + 32;
        let mut acc = BigReal::zero(w);
        for (x, e) in factors {
            if e.is_zero() {
                continue;
            }
            acc = &acc + &self.log_gamma(x)?.with_prec(w).mul_ratio(e);
        }
        Ok(exp(&acc)?.with_prec(self.prec))
    }
}

pub fn gamma(x: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    GammaTable::new(ctx)?.gamma(x)
}

pub fn log_gamma(x: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    GammaTable::new(ctx)?.log_gamma(x)
}

/// Gauss: ₂F₁(a,b;c;1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)).
pub fn gauss_2f1_at_1(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let table = GammaTable::new(ctx)?;
    gauss_2f1_at_1_with(&table, a, b, c)
}

pub fn gauss_2f1_at_1_with(
    t: &GammaTable,
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
) -> Result<BigReal> {
    let p = t.prec();
    if c.is_integer() && !c.is_positive() {
        return Err(domain("c is a non-positive integer"));
    }
    let s = c - a - b;
    if !s.is_positive() {
        return Err(domain(
            "c - a - b must be positive for convergence at z = 1",
        ));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(BigReal::one(p));
    }
    let is_pole = |x: &BigRational| x.is_integer() && !x.is_positive();
    let (ca, cb) = (c - a, c - b);
    if is_pole(&ca) || is_pole(&cb) {
        return Ok(BigReal::zero(p));
    }
    let num = &t.gamma_signed(c)? * &t.gamma_signed(&s)?;
    let den = &t.gamma_signed(&ca)? * &t.gamma_signed(&cb)?;
    Ok(&num / &den)
}
