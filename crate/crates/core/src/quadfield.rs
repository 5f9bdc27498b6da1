//! Imaginary quadratic fields: Kronecker characters, reduced forms, class
//! numbers and the Chowla–Selberg period ω_d.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{domain, Result};
use crate::numerics::{elementary, BigReal, GammaTable, PrecisionContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadFieldData {
    pub d: i64,
    pub h: u32,
    pub mu: u32,
    pub forms: Vec<(i64, i64, i64)>,
}

fn squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

pub fn is_fundamental(d: i64) -> Result<bool> {
    if d >= 0 {
        return Err(domain("discriminant must be negative"));
    }
    if d.rem_euclid(4) == 1 {
        return Ok(squarefree(d.unsigned_abs()));
    }
    if d % 4 != 0 {
        return Ok(false);
    }
    let m = d / 4;
    Ok(matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs()))
}

fn require_fundamental(d: i64) -> Result<()> {
    if is_fundamental(d)? {
        Ok(())
    } else {
        Err(domain(alloc::format!(
            "{d} is not a fundamental discriminant"
        )))
    }
}

/// Jacobi symbol (n/k) for odd k > 0.
fn jacobi(n: i64, k: i64) -> i32 {
    let mut n = n.rem_euclid(k);
    let mut k = k;
    let mut t = 1;
    while n != 0 {
        while n % 2 == 0 {
            n /= 2;
            if matches!(k % 8, 3 | 5) {
                t = -t;
            }
        }
        core::mem::swap(&mut n, &mut k);
        if n % 4 == 3 && k % 4 == 3 {
            t = -t;
        }
        n %= k;
    }
    if k == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (d/a).
pub fn kronecker(d: i64, a: i64) -> i32 {
    if a == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut res = 1;
    let mut a = a;
    if a < 0 {
        a = -a;
        if d < 0 {
            res = -res;
        }
    }
    let v = a.trailing_zeros();
    if v > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            res = -res;
        }
        a >>= v;
    }
    res * jacobi(d, a)
}

/// χ_d(a) for a fundamental discriminant d.
pub fn kronecker_chi(d: i64, a: i64) -> Result<i32> {
    require_fundamental(d)?;
    Ok(kronecker(d, a))
}

pub fn reduced_forms(d: i64) -> Result<Vec<(i64, i64, i64)>> {
    require_fundamental(d)?;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && (-b == a || a == c)) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                forms.push((a, b, c));
            }
        }
        a += 1;
    }
    Ok(forms)
}

pub fn unit_count(d: i64) -> u32 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

impl QuadFieldData {
    pub fn new(d: i64) -> Result<Self> {
        let forms = reduced_forms(d)?;
        Ok(QuadFieldData {
            d,
            h: forms.len() as u32,
            mu: unit_count(d),
            forms,
        })
    }

    pub fn chi(&self, a: i64) -> i32 {
        kronecker(self.d, a)
    }
}

/// L(1, χ_d) by the finite closed form for odd real primitive characters,
/// L(1, χ) = −π·|d|^(−3/2)·Σ_{a<|d|} χ(a)·a.
pub fn l_one_chi(d: i64, ctx: &PrecisionContext) -> Result<BigReal> {
    require_fundamental(d)?;
    let n = -d;
    let s: i64 = (1..n).map(|a| kronecker(d, a) as i64 * a).sum();
    let p = ctx.bits() + 16;
    let nn = BigReal::from_i64(n, p);
    let denom = &nn * &nn.sqrt()?;
    let v = &elementary::pi(p).mul_int(&BigInt::from(-s)) / &denom;
    Ok(v.with_prec(ctx.bits()))
}

/// h from Dirichlet's class number formula h = μ·√|d|·L(1,χ_d)/(2π), unrounded.
pub fn analytic_class_number(d: i64, ctx: &PrecisionContext) -> Result<BigReal> {
    let p = ctx.bits();
    let l = l_one_chi(d, ctx)?;
    let root = BigReal::from_i64(-d, p).sqrt()?;
    let v = (&l * &root).mul_int(&BigInt::from(unit_count(d)));
    Ok(&v / &elementary::pi(p).mul_pow2(1))
}

pub fn omega(d: i64, ctx: &PrecisionContext) -> Result<BigReal> {
    omega_with(&GammaTable::new(ctx)?, d)
}

/// ω_d = exp(−½·log|d| + (μ/4h)·Σ χ(a)·logΓ(a/|d|)).
pub fn omega_with(table: &GammaTable, d: i64) -> Result<BigReal> {
    let q = QuadFieldData::new(d)?;
    let p = table.prec() + 32;
    let n = -d;
    let mut acc = BigReal::zero(p);
    for a in 1..n {
        let chi = q.chi(a);
        if chi == 0 {
            continue;
        }
        let lg = table.log_gamma(&BigRational::new(BigInt::from(a), BigInt::from(n)))?;
        acc = if chi > 0 { &acc + &lg } else { &acc - &lg };
    }
    let expo = acc.mul_ratio(&BigRational::new(BigInt::from(q.mu), BigInt::from(4 * q.h)));
    let half_log = elementary::ln(&BigReal::from_i64(n, p))?.mul_pow2(-1);
    Ok(elementary::exp(&(&expo - &half_log))?.with_prec(table.prec()))
}

pub fn big_omega(d: i64, ctx: &PrecisionContext) -> Result<BigReal> {
    big_omega_with(&GammaTable::new(ctx)?, d)
}

/// Ω_d = √(π|d|)·ω_d.
pub fn big_omega_with(table: &GammaTable, d: i64) -> Result<BigReal> {
    let p = table.prec();
    let w = omega_with(table, d)?;
    let s = elementary::pi(p).mul_int(&BigInt::from(-d)).sqrt()?;
    Ok(&s * &w)
}

/// Squarefree kernel of a positive integer (used by the radical fixtures).
pub fn squarefree_part(n: u64) -> u64 {
    let mut n = n;
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * n
}
