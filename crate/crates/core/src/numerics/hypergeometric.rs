//! Generalized hypergeometric series by direct summation with a proven tail bound.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::real::BigReal;
use super::PrecisionContext;
use crate::error::{domain, Error, Result};

pub const TERM_CAP: usize = 1_000_000;
const RATIO_THRESHOLD: f64 = 0.95;

#[derive(Clone, Debug)]
pub enum HypArg {
    Rational(BigRational),
    Real(BigReal),
}

#[derive(Clone, Debug)]
pub struct HypParams {
    pub numerator: Vec<BigRational>,
    pub denominator: Vec<BigRational>,
    pub argument: HypArg,
}

#[derive(Clone, Debug)]
pub struct HypValue {
    pub value: BigReal,
    /// Number of terms summed, including the leading 1.
    pub terms: usize,
    /// log10 of the bound on the neglected tail (−inf for terminating series).
    pub tail_bound_log10: f64,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl HypParams {
    pub fn new(
        numerator: Vec<BigRational>,
        denominator: Vec<BigRational>,
        argument: HypArg,
    ) -> Self {
        HypParams {
            numerator,
            denominator,
            argument,
        }
    }

    /// Convenience constructor from small integer fractions.
    pub fn from_fracs(
        numerator: &[(i64, i64)],
        denominator: &[(i64, i64)],
        z: BigRational,
    ) -> Self {
        let f = |v: &[(i64, i64)]| v.iter().map(|&(n, d)| rat(n, d)).collect();
        HypParams::new(f(numerator), f(denominator), HypArg::Rational(z))
    }

    /// Same series with every parameter shifted by +1 (the derivative up to a constant).
    pub fn shifted(&self) -> Self {
        let one = BigRational::one();
        HypParams {
            numerator: self.numerator.iter().map(|a| a + &one).collect(),
            denominator: self.denominator.iter().map(|b| b + &one).collect(),
            argument: self.argument.clone(),
        }
    }

    fn abs_arg_f64(&self) -> f64 {
        match &self.argument {
            HypArg::Rational(z) => z.abs().to_f64().unwrap_or(f64::INFINITY),
            HypArg::Real(z) => z.to_f64().abs(),
        }
    }

    fn arg_is_zero(&self) -> bool {
        match &self.argument {
            HypArg::Rational(z) => z.is_zero(),
            HypArg::Real(z) => z.is_zero(),
        }
    }

    fn arg_below_one(&self) -> bool {
        match &self.argument {
            HypArg::Rational(z) => z.abs() < BigRational::one(),
            HypArg::Real(z) => z.cmp_abs(&BigReal::one(z.prec())) == core::cmp::Ordering::Less,
        }
    }
}

fn nonpositive_integer(x: &BigRational) -> bool {
    x.is_integer() && !x.is_positive()
}

/// Sup over m ≥ n of |ρ(m)|, where ρ(m) = z·∏(m+a_i)/(∏(m+b_j)·(m+1)), valid once every
/// factor is positive and monotone in m.
fn ratio_sup(p: &HypParams, n: u64, zabs: f64) -> Option<f64> {
    let nf = n as f64;
    let mut dens: Vec<f64> = p
        .denominator
        .iter()
        .map(|b| b.to_f64().unwrap_or(0.0))
        .collect();
    dens.push(1.0);
    let nums: Vec<f64> = p
        .numerator
        .iter()
        .map(|a| a.to_f64().unwrap_or(0.0))
        .collect();
    if nums.len() > dens.len() {
        return None;
    }
    let mut bound = zabs;
    for (i, b) in dens.iter().enumerate() {
        if nf + b <= 0.5 {
            return None;
        }
        match nums.get(i) {
            Some(a) => {
                if nf + a <= 0.0 {
                    return None;
                }
                bound *= ((nf + a) / (nf + b)).max(1.0);
            }
            None => bound *= (1.0 / (nf + b)).max(0.0),
        }
    }
    Some(bound * (1.0 + 1e-9))
}

pub fn hyp_pfq(params: &HypParams, ctx: &PrecisionContext) -> Result<HypValue> {
    let prec = ctx.bits();
    if params.denominator.iter().any(nonpositive_integer) {
        return Err(domain("denominator parameter is a non-positive integer"));
    }
    if params.arg_is_zero() {
        return Ok(HypValue {
            value: BigReal::one(prec),
            terms: 1,
            tail_bound_log10: f64::NEG_INFINITY,
        });
    }
    if !params.arg_below_one() {
        return Err(Error::Convergence(alloc::format!(
            "|z| = {} is not below 1",
            params.abs_arg_f64()
        )));
    }
    let work = prec + 40;
    let target = -(prec as f64) - 2.0;
    let zabs = params.abs_arg_f64();
    let zreal = match &params.argument {
        HypArg::Real(z) => Some(z.with_prec(work)),
        HypArg::Rational(_) => None,
    };
    let mut term = BigReal::one(work);
    let mut sum = BigReal::one(work);
    for n in 0..TERM_CAP as u64 {
        let nr = BigRational::from_integer(BigInt::from(n));
        let mut ratio = BigRational::one();
        for a in &params.numerator {
            ratio *= a + &nr;
        }
        for b in &params.denominator {
            ratio /= b + &nr;
        }
        ratio /= &nr + BigRational::one();
        if let HypArg::Rational(z) = &params.argument {
            ratio *= z;
        }
        if ratio.is_zero() {
            return Ok(HypValue {
                value: sum.with_prec(prec),
                terms: n as usize + 1,
                tail_bound_log10: f64::NEG_INFINITY,
            });
        }
        term = term.mul_ratio(&ratio);
        if let Some(z) = &zreal {
            term = &term * z;
        }
        sum = &sum + &term;
        // term now holds t_{n+1}; the rest is bounded by |t_{n+1}|·B/(1−B)
        if let Some(b) = ratio_sup(params, n + 1, zabs) {
            if b < RATIO_THRESHOLD {
                let tail = term.log2_abs() + libm::log2(b / (1.0 - b));
                if tail < target {
                    return Ok(HypValue {
                        value: sum.with_prec(prec),
                        terms: n as usize + 2,
                        tail_bound_log10: tail * core::f64::consts::LOG10_2,
                    });
                }
            }
        }
    }
    Err(Error::Precision(alloc::format!(
        "tail bound not reached within {TERM_CAP} terms"
    )))
}
