//! Arbitrary-precision reals and complexes, Gamma, and hypergeometric series.

mod complex;
pub mod elementary;
mod gamma;
mod hypergeometric;
mod real;

use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use complex::{qexp, BigComplex};
pub use gamma::{gamma, gauss_2f1_at_1, gauss_2f1_at_1_with, log_gamma, GammaTable};
pub use hypergeometric::{hyp_pfq, rat, HypArg, HypParams, HypValue, TERM_CAP};
pub use real::{parse_decimal_ratio, sum, BigReal};

use crate::error::{domain, Result};

/// Working precision: results are good to `decimal_digits`; `guard_digits` more are carried.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    pub decimal_digits: u32,
    pub guard_digits: u32,
}

impl PrecisionContext {
    pub fn new(decimal_digits: u32) -> Result<Self> {
        Self::with_guard(decimal_digits, 10)
    }

    pub fn with_guard(decimal_digits: u32, guard_digits: u32) -> Result<Self> {
        if decimal_digits < 10 || guard_digits < 10 {
            return Err(domain(
                "precision context needs at least 10 digits and 10 guard digits",
            ));
        }
        Ok(PrecisionContext {
            decimal_digits,
            guard_digits,
        })
    }

    /// Binary working precision covering digits + guard digits.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.decimal_digits + self.guard_digits)
    }

    pub fn raised(&self, extra_digits: u32) -> Self {
        PrecisionContext {
            decimal_digits: self.decimal_digits + extra_digits,
            guard_digits: self.guard_digits,
        }
    }

    pub fn real(&self, v: i64) -> BigReal {
        BigReal::from_i64(v, self.bits())
    }

    pub fn ratio(&self, r: &BigRational) -> BigReal {
        BigReal::from_ratio(r, self.bits())
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    // log2(10) < 3.3219281
    ((digits as u64 * 33_219_281).div_ceil(10_000_000)) as u32 + 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Exp,
    Log,
    Sqrt,
    NthRoot,
    Pi,
    PowerRational,
}

/// Uniform entry point to the elementary functions; `aux` is the root degree or exponent.
pub fn elem(op: ElemOp, x: &BigReal, aux: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    let p = ctx.bits();
    let x = x.with_prec(p);
    match op {
        ElemOp::Exp => elementary::exp(&x),
        ElemOp::Log => elementary::ln(&x),
        ElemOp::Sqrt => x.sqrt(),
        ElemOp::Pi => Ok(elementary::pi(p)),
        ElemOp::PowerRational => elementary::pow_rational(&x, aux),
        ElemOp::NthRoot => {
            let n = if aux.is_integer() {
                aux.to_integer().to_u32()
            } else {
                None
            };
            let n = n.ok_or_else(|| domain("root degree must be a positive integer"))?;
            elementary::nth_root(&x, n)
        }
    }
}

/// |a − b| / |b| (or |a| when b = 0).
pub fn relative_residual(a: &BigReal, b: &BigReal) -> BigReal {
    let diff = (a - b).abs();
    if b.is_zero() {
        diff
    } else {
        &diff / &b.abs()
    }
}

/// True when x < 10^(−digits).
pub fn below_decimal(x: &BigReal, digits: u32) -> bool {
    if x.is_zero() {
        return true;
    }
    let lim = BigReal::from_ratio(
        &BigRational::new(
            1.into(),
            num_traits::pow(num_bigint::BigInt::from(10), digits as usize),
        ),
        x.prec().max(digits_to_bits(digits) + 16),
    );
    x.abs() < lim
}
