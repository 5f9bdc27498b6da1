//! p-adic numbers at finite precision, Morita's Γ_p and p-adic limits of
//! hypergeometric series.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::numerics::HypParams;
use crate::quadfield::{kronecker, QuadFieldData};

pub const MAX_PRECISION: u32 = 8;

/// p^valuation · unit, the unit known modulo p^precision.
/// A zero element stores unit 0 and is known only modulo p^valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    pub p: u64,
    pub unit: u64,
    pub valuation: i64,
    pub precision: u32,
}

fn pow_u64(p: u64, k: u32) -> u64 {
    p.pow(k)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Splits n = p^v · rest with p ∤ rest.
fn split_valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut n = n.clone();
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    (v, n)
}

pub fn valuation_of(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(split_valuation(r.numer(), p).0 - split_valuation(r.denom(), p).0)
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl PadicNumber {
    pub fn zero(p: u64, absolute_precision: i64) -> Self {
        PadicNumber {
            p,
            unit: 0,
            valuation: absolute_precision,
            precision: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    pub fn modulus(&self) -> u64 {
        pow_u64(self.p, self.precision)
    }

    /// The value is known modulo p^(absolute precision).
    pub fn absolute_precision(&self) -> i64 {
        self.valuation + self.precision as i64
    }

    /// A p-integral or general rational, known to relative precision k.
    pub fn from_rational(r: &BigRational, p: u64, k: u32) -> Result<Self> {
        if r.is_zero() {
            return Ok(PadicNumber::zero(p, k as i64));
        }
        let (vn, n) = split_valuation(r.numer(), p);
        let (vd, d) = split_valuation(r.denom(), p);
        let m = pow_u64(p, k);
        let mb = BigInt::from(m);
        let n = n.mod_floor(&mb).to_u64().expect("reduced");
        let d = d.mod_floor(&mb).to_u64().expect("reduced");
        let dinv = invmod(d, m).ok_or_else(|| domain("denominator not invertible"))?;
        Ok(PadicNumber {
            p,
            unit: mulmod(n, dinv, m),
            valuation: vn - vd,
            precision: k,
        })
    }

    /// Value known to absolute precision `abs` (i.e. modulo p^abs).
    pub fn from_rational_absolute(r: &BigRational, p: u64, abs: i64) -> Result<Self> {
        match valuation_of(r, p) {
            None => Ok(PadicNumber::zero(p, abs)),
            Some(v) if v >= abs => Ok(PadicNumber::zero(p, abs)),
            Some(v) => Self::from_rational(r, p, (abs - v) as u32),
        }
    }

    pub fn from_u64(n: u64, p: u64, k: u32) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)), p, k).expect("integer")
    }

    /// Relative precision lowered to k.
    pub fn reduce(&self, k: u32) -> Self {
        if self.is_zero() || k >= self.precision {
            return *self;
        }
        PadicNumber {
            unit: self.unit % pow_u64(self.p, k),
            precision: k,
            ..*self
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        let m = self.modulus();
        PadicNumber {
            unit: (m - self.unit) % m,
            ..*self
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            // a zero stores its absolute precision as the valuation
            return PadicNumber::zero(self.p, self.valuation + o.valuation);
        }
        let k = self.precision.min(o.precision);
        let m = pow_u64(self.p, k);
        PadicNumber {
            p: self.p,
            unit: mulmod(self.unit % m, o.unit % m, m),
            valuation: self.valuation + o.valuation,
            precision: k,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.modulus();
        Ok(PadicNumber {
            unit: invmod(self.unit, m).expect("unit"),
            valuation: -self.valuation,
            ..*self
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { *self };
        if base.is_zero() {
            return Ok(PadicNumber::zero(self.p, self.valuation * e.max(1)));
        }
        let m = base.modulus();
        Ok(PadicNumber {
            unit: powmod(base.unit, e.unsigned_abs(), m),
            valuation: base.valuation * e,
            ..base
        })
    }

    /// Exact rational representative, for addition.
    fn to_rational(&self) -> BigRational {
        let pv = |v: i64| -> BigRational {
            let p = BigRational::from_integer(BigInt::from(self.p));
            if v >= 0 {
                num_traits::pow(p, v as usize)
            } else {
                num_traits::pow(p.recip(), (-v) as usize)
            }
        };
        BigRational::from_integer(BigInt::from(self.unit)) * pv(self.valuation)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let abs = self.absolute_precision().min(o.absolute_precision());
        Self::from_rational_absolute(&(self.to_rational() + o.to_rational()), self.p, abs)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Largest N ≤ both absolute precisions with self ≡ other (mod p^N).
    pub fn agreement(&self, o: &Self) -> i64 {
        let abs = self.absolute_precision().min(o.absolute_precision());
        let diff = self.to_rational() - o.to_rational();
        match valuation_of(&diff, self.p) {
            None => abs,
            Some(v) => v.min(abs),
        }
    }

    /// Representative in [0, p^N) for N = absolute precision; requires valuation ≥ 0.
    pub fn residue(&self) -> Option<u64> {
        if self.valuation < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        let n = self.absolute_precision() as u32;
        Some(mulmod(
            pow_u64(self.p, self.valuation as u32),
            self.unit,
            pow_u64(self.p, n),
        ))
    }
}

impl core::fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "O({}^{})", self.p, self.valuation);
        }
        if self.valuation == 0 {
            write!(f, "{} + O({}^{})", self.unit, self.p, self.precision)
        } else {
            write!(
                f,
                "{}^{}·{} + O({}^{})",
                self.p,
                self.valuation,
                self.unit,
                self.p,
                self.absolute_precision()
            )
        }
    }
}

/// Prefix products of the p-units below p^K, the integer data behind Γ_p mod p^K.
#[derive(Clone, Debug)]
pub struct GammaPTable {
    p: u64,
    k: u32,
    modulus: u64,
    prefix: Vec<u32>,
}

impl GammaPTable {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(domain("p must be an odd prime"));
        }
        if k == 0 || k > MAX_PRECISION {
            return Err(domain(format!("precision must be in 1..={MAX_PRECISION}")));
        }
        let modulus = pow_u64(p, k);
        // prefix[n] = ∏_{0<j<n, p∤j} j mod p^K, for n = 1..=p^K
        let mut prefix = vec![0u32; modulus as usize + 1];
        let mut acc = 1u64;
        prefix[1] = 1;
        for n in 2..=modulus {
            let j = n - 1;
            if j % p != 0 {
                acc = mulmod(acc, j, modulus);
            }
            prefix[n as usize] = acc as u32;
        }
        Ok(GammaPTable {
            p,
            k,
            modulus,
            prefix,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    /// Γ_p(n) for an integer n ≥ 1 of any size, reduced mod p^K.
    pub fn gamma_int(&self, n: u64) -> PadicNumber {
        let r = ((n - 1) % self.modulus) + 1;
        self.gamma_rep(r)
    }

    fn gamma_rep(&self, n: u64) -> PadicNumber {
        let v = self.prefix[n as usize] as u64;
        let unit = if n % 2 == 1 {
            (self.modulus - v) % self.modulus
        } else {
            v
        };
        PadicNumber {
            p: self.p,
            unit,
            valuation: 0,
            precision: self.k,
        }
    }

    /// Γ_p(x) for x ∈ ℤ_p ∩ ℚ through the representative n ≡ x (mod p^K), n ∈ [1, p^K].
    pub fn gamma(&self, x: &BigRational) -> Result<PadicNumber> {
        let pb = BigInt::from(self.p);
        if (x.denom() % &pb).is_zero() {
            return Err(domain("Γ_p needs a p-integral argument"));
        }
        let m = BigInt::from(self.modulus);
        let d = x.denom().mod_floor(&m).to_u64().expect("reduced");
        let dinv = invmod(d, self.modulus).expect("coprime");
        let n = mulmod(
            x.numer().mod_floor(&m).to_u64().expect("reduced"),
            dinv,
            self.modulus,
        );
        Ok(self.gamma_rep(if n == 0 { self.modulus } else { n }))
    }
}

pub fn gamma_p(x: &BigRational, p: u64, k: u32) -> Result<PadicNumber> {
    GammaPTable::new(p, k)?.gamma(x)
}

/// Γ_p(n) straight from the definition, for cross-checks.
pub fn gamma_p_direct(n: u64, p: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    for j in 1..n {
        if j % p != 0 {
            acc = mulmod(acc, j, modulus);
        }
    }
    if n % 2 == 1 {
        (modulus - acc) % modulus
    } else {
        acc
    }
}

/// All v-th roots in ℤ_p of a unit a (p ∤ v), by lifting roots mod p.
pub fn unit_roots(a: &PadicNumber, v: u64) -> Vec<PadicNumber> {
    let p = a.p;
    if a.is_zero() || v.is_multiple_of(p) {
        return Vec::new();
    }
    let m = a.modulus();
    let mut out = Vec::new();
    for r0 in 1..p {
        if powmod(r0, v, p) != a.unit % p {
            continue;
        }
        let mut r = r0;
        // Newton: r ← r − (r^v − a)/(v·r^(v−1))
        for _ in 0..=a.precision {
            let f = (powmod(r, v, m) + m - a.unit % m) % m;
            let df = mulmod(v % m, powmod(r, v - 1, m), m);
            let step = mulmod(f, invmod(df, m).expect("unit derivative"), m);
            r = (r + m - step) % m;
        }
        out.push(PadicNumber {
            p,
            unit: r,
            valuation: 0,
            precision: a.precision,
        });
    }
    out
}

pub fn sqrt_padic(x: &PadicNumber) -> Vec<PadicNumber> {
    if x.p == 2 {
        return Vec::new();
    }
    if x.is_zero() {
        return vec![PadicNumber::zero(x.p, x.valuation / 2)];
    }
    if x.valuation % 2 != 0 {
        return Vec::new();
    }
    let unit = PadicNumber { valuation: 0, ..*x };
    unit_roots(&unit, 2)
        .into_iter()
        .map(|r| PadicNumber {
            valuation: x.valuation / 2,
            ..r
        })
        .collect()
}

/// Candidates for ω_{d,p}²: the (μ/4h)-th powers of U = ∏ Γ_p(a/|d|)^{χ(a)}.
pub fn omega_p_squared_candidates(d: i64, table: &GammaPTable) -> Result<Vec<PadicNumber>> {
    let q = QuadFieldData::new(d)?;
    let p = table.p();
    if d.unsigned_abs().is_multiple_of(p) {
        return Err(domain("p must not divide d"));
    }
    let n = -d;
    let mut u = PadicNumber::from_u64(1, p, table.precision());
    for a in 1..n {
        match kronecker(d, a) {
            0 => {}
            c => {
                let g = table.gamma(&BigRational::new(BigInt::from(a), BigInt::from(n)))?;
                u = u.mul(&if c > 0 { g } else { g.inv()? });
            }
        }
    }
    let e = BigRational::new(BigInt::from(q.mu), BigInt::from(4 * q.h));
    let (num, den) = (
        e.numer().to_i64().expect("small"),
        e.denom().to_u64().expect("small"),
    );
    let base = u.pow(num)?;
    if den == 1 {
        return Ok(vec![base]);
    }
    let roots = unit_roots(&base, den);
    if roots.is_empty() {
        return Err(Error::NoRootInQp(format!(
            "U^{num} has no {den}-th root in Z_{p} for d = {d}"
        )));
    }
    Ok(roots)
}

#[derive(Clone, Debug)]
pub struct PadicSeries {
    pub value: PadicNumber,
    pub terms: usize,
    /// Valuations of the summed terms t_0, t_1, ….
    pub valuations: Vec<i64>,
    /// Exact partial sums at the last two cutoffs.
    pub last_partials: (BigRational, BigRational),
}

pub const PADIC_TERM_CAP: usize = 300;
const SAFETY: i64 = 2;
const WINDOW: usize = 4;

/// p-adic limit of a hypergeometric series with rational argument, modulo p^K.
pub fn pfq_padic(params: &HypParams, p: u64, k: u32) -> Result<PadicSeries> {
    let z = match &params.argument {
        crate::numerics::HypArg::Rational(z) => z.clone(),
        crate::numerics::HypArg::Real(_) => {
            return Err(domain("p-adic evaluation needs a rational argument"))
        }
    };
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut prev = BigRational::zero();
    let mut vals = vec![0i64];
    let target = k as i64 + SAFETY;
    let mut above = 0usize;
    for n in 0..PADIC_TERM_CAP {
        let nr = BigRational::from_integer(BigInt::from(n));
        let mut ratio = z.clone();
        for a in &params.numerator {
            ratio *= a + &nr;
        }
        for b in &params.denominator {
            ratio /= b + &nr;
        }
        ratio /= &nr + BigRational::one();
        if ratio.is_zero() {
            return Ok(PadicSeries {
                value: PadicNumber::from_rational_absolute(&sum, p, k as i64)?,
                terms: n + 1,
                valuations: vals,
                last_partials: (prev, sum),
            });
        }
        term *= ratio;
        prev = sum.clone();
        sum += &term;
        let v = valuation_of(&term, p).expect("nonzero term");
        vals.push(v);
        // require the valuation to sit above K + safety and to have risen over the window
        if v >= target {
            above += 1;
        } else {
            above = 0;
        }
        let rising = vals.len() > WINDOW && vals[vals.len() - 1] > vals[vals.len() - 1 - WINDOW];
        if above >= WINDOW && rising {
            return Ok(PadicSeries {
                value: PadicNumber::from_rational_absolute(&sum, p, k as i64)?,
                terms: n + 2,
                valuations: vals,
                last_partials: (prev, sum),
            });
        }
    }
    Err(Error::Convergence(format!(
        "term valuations did not grow past {target} within {PADIC_TERM_CAP} terms (last valuation {})",
        vals.last().copied().unwrap_or(0)
    )))
}

/// A value a + b·√radicand with a possibly negative radicand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalValue {
    pub a: BigRational,
    pub b: BigRational,
    pub radicand: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Remark4Status {
    Pass,
    Fail,
    Skipped(String),
    Unverifiable(String),
}

#[derive(Clone, Debug)]
pub struct Remark4Outcome {
    pub status: Remark4Status,
    /// Largest N with a matching congruence modulo p^N over all choices.
    pub attained_precision: i64,
    pub details: String,
}

/// Checks ₃F₂(1/3,1/2,2/3;3/4,5/4;M/N) ≡ A₂·ω_{d,p}² (mod p^K) over all root choices.
pub fn verify_remark4_row(
    d: i64,
    m: &BigInt,
    n: &BigInt,
    a2: &RadicalValue,
    table: &GammaPTable,
) -> Result<Remark4Outcome> {
    let p = table.p();
    let k = table.precision();
    let z = BigRational::new(m.clone(), n.clone());
    let params = HypParams::new(
        vec![
            crate::numerics::rat(1, 3),
            crate::numerics::rat(1, 2),
            crate::numerics::rat(2, 3),
        ],
        vec![crate::numerics::rat(3, 4), crate::numerics::rat(5, 4)],
        crate::numerics::HypArg::Rational(z),
    );
    let series = match pfq_padic(&params, p, k) {
        Ok(s) => s,
        Err(Error::Convergence(msg)) => {
            return Ok(Remark4Outcome {
                status: Remark4Status::Skipped(format!("ConvergenceError: {msg}")),
                attained_precision: 0,
                details: String::from("series does not converge p-adically"),
            })
        }
        Err(e) => return Err(e),
    };
    let root_choices: Vec<PadicNumber> = if a2.b.is_zero() {
        vec![PadicNumber::from_u64(0, p, k)]
    } else {
        let r = PadicNumber::from_rational(
            &BigRational::from_integer(BigInt::from(a2.radicand)),
            p,
            k,
        )?;
        let roots = sqrt_padic(&r);
        if roots.is_empty() {
            return Ok(Remark4Outcome {
                status: Remark4Status::Unverifiable(format!("√{} is not in Q_{p}", a2.radicand)),
                attained_precision: 0,
                details: String::from("radicand is a non-residue"),
            });
        }
        roots
    };
    let candidates = match omega_p_squared_candidates(d, table) {
        Ok(c) => c,
        Err(Error::NoRootInQp(msg)) => {
            return Ok(Remark4Outcome {
                status: Remark4Status::Unverifiable(msg),
                attained_precision: 0,
                details: String::from("ω² needs an extension of Q_p"),
            })
        }
        Err(e) => return Err(e),
    };
    let a_part = PadicNumber::from_rational_absolute(&a2.a, p, k as i64 + 8)?;
    let b_part = PadicNumber::from_rational_absolute(&a2.b, p, k as i64 + 8)?;
    let mut best = i64::MIN;
    let mut choice = String::new();
    for (ri, root) in root_choices.iter().enumerate() {
        let a2v = if a2.b.is_zero() {
            a_part
        } else {
            a_part.add(&b_part.mul(root))?
        };
        for (ci, w2) in candidates.iter().enumerate() {
            let rhs = a2v.mul(w2);
            let agree = series.value.agreement(&rhs);
            if agree > best {
                best = agree;
                choice = format!(
                    "omega^2 candidate {ci} of {} (unit {}), sqrt choice {ri}",
                    candidates.len(),
                    w2.unit
                );
            }
        }
    }
    let status = if best >= k as i64 {
        Remark4Status::Pass
    } else {
        Remark4Status::Fail
    };
    Ok(Remark4Outcome {
        status,
        attained_precision: best,
        details: format!(
            "{choice}; series summed {} terms, value {}",
            series.terms, series.value
        ),
    })
}
