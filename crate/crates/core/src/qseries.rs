//! Truncated Laurent series in q^(1/24) with exact rational coefficients,
//! Dedekind eta quotients and their cusp orders.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::numerics::{qexp, BigComplex, BigReal, PrecisionContext};

pub const DEFAULT_TRUNCATION: usize = 200;

/// Σ_k c_k q^(leading + k); coefficients from index `coeffs.len()` on are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub leading_exponent: Rational64,
    pub coeffs: Vec<BigRational>,
}

fn ri(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QSeries {
    pub fn new(leading_exponent: Rational64, coeffs: Vec<BigRational>) -> Result<Self> {
        if 24 % leading_exponent.denom() != 0 {
            return Err(domain("leading exponent denominator must divide 24"));
        }
        Ok(QSeries {
            leading_exponent,
            coeffs,
        })
    }

    /// The constant 1 known to `len` coefficients.
    pub fn one(len: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); len.max(1)];
        coeffs[0] = BigRational::one();
        QSeries {
            leading_exponent: Rational64::zero(),
            coeffs,
        }
    }

    /// Number of known coefficients.
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of q^e, `None` if e lies beyond the truncation.
    pub fn coeff_at(&self, e: Rational64) -> Option<BigRational> {
        let k = e - self.leading_exponent;
        if !k.is_integer() {
            return Some(BigRational::zero());
        }
        let k = k.to_integer();
        if k < 0 {
            return Some(BigRational::zero());
        }
        self.coeffs.get(k as usize).cloned()
    }

    pub fn truncate(&self, len: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(len);
        s
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QSeries {
            leading_exponent: self.leading_exponent,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// q ↦ q^δ.
    pub fn substitute(&self, delta: u64) -> Self {
        let d = delta as usize;
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() * d];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * d] = c.clone();
        }
        QSeries {
            leading_exponent: self.leading_exponent * Rational64::from_integer(delta as i64),
            coeffs,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let len = self.coeffs.len().min(o.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries {
            leading_exponent: self.leading_exponent + o.leading_exponent,
            coeffs,
        }
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self
            .coeffs
            .first()
            .filter(|c| !c.is_zero())
            .ok_or(Error::DivisionByZero)?;
        let inv0 = c0.recip();
        let n = self.coeffs.len();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-(s * &inv0));
        }
        Ok(QSeries {
            leading_exponent: -self.leading_exponent,
            coeffs: out,
        })
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = QSeries::one(self.coeffs.len());
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let shift = self.leading_exponent - o.leading_exponent;
        if !shift.is_integer() {
            return Err(domain(
                "cannot add series whose exponents differ by a non-integer",
            ));
        }
        let lead = if shift.to_integer() <= 0 {
            self.leading_exponent
        } else {
            o.leading_exponent
        };
        let end_self = self.leading_exponent + Rational64::from_integer(self.coeffs.len() as i64);
        let end_o = o.leading_exponent + Rational64::from_integer(o.coeffs.len() as i64);
        let end = if end_self < end_o { end_self } else { end_o };
        let len = (end - lead).to_integer().max(0) as usize;
        let coeffs = (0..len)
            .map(|k| {
                let e = lead + Rational64::from_integer(k as i64);
                self.coeff_at(e).unwrap_or_default() + o.coeff_at(e).unwrap_or_default()
            })
            .collect();
        Ok(QSeries {
            leading_exponent: lead,
            coeffs,
        })
    }

    /// Human-readable prefix such as `2q^-3 - 6 - 18q`.
    pub fn format_prefix(&self, terms: usize) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().take(terms) {
            if c.is_zero() {
                continue;
            }
            let e = self.leading_exponent + Rational64::from_integer(k as i64);
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
            let q = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                String::from("q")
            } else {
                alloc::format!("q^{}", e)
            };
            if mag.is_one() && !q.is_empty() {
                out.push_str(&q);
            } else {
                out.push_str(&alloc::format!("{}{}", mag, q));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// ∏(1 − qⁿ) by Euler's pentagonal number theorem, `len` coefficients.
pub fn euler_product(len: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); len];
    let mut k = 0i64;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) < len {
                c[e as usize] = ri(if kk % 2 == 0 { 1 } else { -1 });
                any = true;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    c
}

/// η(τ) = q^(1/24)·∏(1 − qⁿ), `upto` coefficients.
pub fn eta_expansion(upto: usize) -> QSeries {
    QSeries {
        leading_exponent: Rational64::new(1, 24),
        coeffs: euler_product(upto.max(1)),
    }
}

/// Δ = η²⁴.
pub fn delta_expansion(upto: usize) -> QSeries {
    eta_expansion(upto).pow(24).expect("positive power")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    pub level: u64,
    pub exponents: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    pub fn new(level: u64, exponents: &[(u64, i64)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(d, r) in exponents {
            if d == 0 || !level.is_multiple_of(d) {
                return Err(domain(alloc::format!(
                    "{d} does not divide the level {level}"
                )));
            }
            *map.entry(d).or_insert(0) += r;
        }
        Ok(EtaQuotient {
            level,
            exponents: map,
        })
    }

    /// Σ δ·r_δ / 24, the exponent of the leading q-power.
    pub fn leading_exponent(&self) -> Rational64 {
        let s: i64 = self.exponents.iter().map(|(&d, &r)| d as i64 * r).sum();
        Rational64::new(s, 24)
    }

    pub fn divisors(&self) -> Vec<u64> {
        (1..=self.level)
            .filter(|c| self.level.is_multiple_of(*c))
            .collect()
    }
}

pub fn eta_quotient_expansion(eq: &EtaQuotient, upto: usize) -> QSeries {
    let base = euler_product(upto.max(1));
    let mut acc = QSeries::one(upto.max(1));
    for (&d, &r) in &eq.exponents {
        if r == 0 {
            continue;
        }
        let p = QSeries {
            leading_exponent: Rational64::zero(),
            coeffs: base.clone(),
        }
        .substitute(d)
        .truncate(upto.max(1));
        acc = acc.mul(&p.pow(r).expect("Euler product is invertible"));
    }
    acc.leading_exponent = eq.leading_exponent();
    acc
}

/// 24 × order of the quotient at each cusp 1/c, c | level (Ligozat).
pub fn eta_cusp_orders(eq: &EtaQuotient) -> Result<BTreeMap<u64, Rational64>> {
    let n = eq.level as i64;
    for &d in eq.exponents.keys() {
        if !eq.level.is_multiple_of(d) {
            return Err(domain("exponent key does not divide the level"));
        }
    }
    let mut out = BTreeMap::new();
    for c in eq.divisors() {
        let c = c as i64;
        let mut total = Rational64::zero();
        for (&d, &r) in &eq.exponents {
            let d = d as i64;
            let g = c.gcd(&d);
            total += Rational64::new(n * g * g * r, c.gcd(&(n / c)) * c * d);
        }
        out.insert(c as u64, total);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma13Report {
    pub sum_is_one: bool,
    pub square_condition: bool,
    pub weighted_sum_divisible: bool,
    pub dual_weighted_sum_divisible: bool,
    pub note: &'static str,
}

impl Lemma13Report {
    pub fn all(&self) -> bool {
        self.sum_is_one
            && self.square_condition
            && self.weighted_sum_divisible
            && self.dual_weighted_sum_divisible
    }
}

fn is_rational_square(r: &BigRational) -> bool {
    if !r.is_positive() {
        return false;
    }
    let sq = |n: &BigInt| {
        let s = n.sqrt();
        &(&s * &s) == n
    };
    sq(r.numer()) && sq(r.denom())
}

pub fn lemma13_check(eq: &EtaQuotient, dual_order: u64) -> Lemma13Report {
    let m = eq.level as i64;
    let sum: i64 = eq.exponents.values().sum();
    let mut prod = BigRational::from_integer(BigInt::from(dual_order));
    for (&d, &r) in &eq.exponents {
        let f = ri(d as i64);
        let f = if r >= 0 { f } else { f.recip() };
        prod *= num_traits::pow(f, r.unsigned_abs() as usize);
    }
    let w: i64 = eq.exponents.iter().map(|(&d, &r)| d as i64 * r).sum();
    let dw: i64 = eq.exponents.iter().map(|(&d, &r)| (m / d as i64) * r).sum();
    Lemma13Report {
        sum_is_one: sum == 1,
        square_condition: is_rational_square(&prod),
        weighted_sum_divisible: w % 24 == 0,
        dual_weighted_sum_divisible: dw % 24 == 0,
        note: "scalar factors multiplying the quotient are outside the check",
    }
}

/// |c_k| ≤ scale·(k+1)^exponent for every k (including unknown coefficients).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientBound {
    pub scale: f64,
    pub exponent: f64,
}

impl CoefficientBound {
    /// |τ(n)| ≤ n¹² (crude, far from Deligne's bound).
    pub const DELTA: CoefficientBound = CoefficientBound {
        scale: 1.0,
        exponent: 12.0,
    };
}

/// Σ c_k q^(leading+k) with a geometric bound on the unknown tail.
pub fn qseries_eval(
    series: &QSeries,
    tau: &BigComplex,
    bound: CoefficientBound,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    let p = ctx.bits() + 16;
    let tau = tau.with_prec(p);
    let q = qexp(&tau)?;
    let mut acc = BigComplex::zero(p);
    for c in series.coeffs.iter().rev() {
        acc = &(&acc * &q) + &BigComplex::from_real(BigReal::from_ratio(c, p));
    }
    let lead = series.leading_exponent;
    let ql = if lead.is_zero() {
        BigComplex::one(p)
    } else {
        let l = BigRational::new(BigInt::from(*lead.numer()), BigInt::from(*lead.denom()));
        let t = BigComplex::new(tau.re.mul_ratio(&l), tau.im.mul_ratio(&l));
        qexp(&t)?
    };
    let value = &acc * &ql;
    // tail: Σ_{k≥K} C (k+1)^e |q|^k ≤ C (K+1)^e |q|^K / (1 − ρ)
    let k = series.coeffs.len() as f64;
    let log2_q = q.abs().log2_abs();
    let rho = libm::pow((k + 2.0) / (k + 1.0), bound.exponent) * libm::exp2(log2_q);
    if rho >= 1.0 {
        return Err(Error::Precision(String::from(
            "q-series tail bound does not converge at this truncation",
        )));
    }
    let tail = libm::log2(bound.scale) + bound.exponent * libm::log2(k + 1.0) + k * log2_q
        - libm::log2(1.0 - rho);
    let tail = tail + ql.abs().log2_abs();
    let target = value.abs().log2_abs() - ctx.bits() as f64;
    if tail > target {
        return Err(Error::Precision(alloc::format!(
            "q-series tail 2^{tail:.1} exceeds target 2^{target:.1}; raise the truncation or Im(tau)"
        )));
    }
    Ok(value.with_prec(ctx.bits()))
}

/// Σ_{r≥1} c(−k·r²) for the principal part of an e₀-expansion.
pub fn principal_square_sum(principal: &BTreeMap<i64, i64>, k: i64) -> i64 {
    principal
        .iter()
        .filter(|(&m, _)| m < 0 && (-m) % k == 0 && is_square((-m) / k))
        .map(|(_, &c)| c)
        .sum()
}

fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = libm::sqrt(n as f64) as i64;
    (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
}

/// Parity test for the e₀-component: Σ c(−r²) ≡ Σ c(−3r²) ≡ c(0)/2 (mod 2) with c(0) even.
pub fn corollary9_parity(principal: &BTreeMap<i64, i64>, constant: i64) -> bool {
    if constant % 2 != 0 {
        return false;
    }
    let a = principal_square_sum(principal, 1).rem_euclid(2);
    let b = principal_square_sum(principal, 3).rem_euclid(2);
    let c = (constant / 2).rem_euclid(2);
    a == b && b == c
}

pub fn rational_to_i64(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}
