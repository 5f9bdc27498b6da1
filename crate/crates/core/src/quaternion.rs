//! The quaternion algebra B = (−1, 3)_ℚ, its maximal order
//! 𝒪 = ℤ + ℤI + ℤJ + ℤ(1+I+J+IJ)/2, optimal embeddings and CM points.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::numerics::{BigComplex, BigReal, PrecisionContext};

/// x + yI + zJ + wIJ with I² = −1, J² = 3, IJ = −JI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatElement {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
    pub w: BigRational,
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuatElement {
    pub fn new(x: BigRational, y: BigRational, z: BigRational, w: BigRational) -> Self {
        QuatElement { x, y, z, w }
    }

    pub fn from_ints(x: i64, y: i64, z: i64, w: i64) -> Self {
        QuatElement::new(r(x), r(y), r(z), r(w))
    }

    /// (x + yI + zJ + wIJ)/2.
    pub fn from_halves(x: i64, y: i64, z: i64, w: i64) -> Self {
        QuatElement::from_ints(x, y, z, w).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// a1·I + a2·J + a3·IJ, the image of √d under an embedding.
    pub fn pure(a1: i64, a2: i64, a3: i64) -> Self {
        QuatElement::from_ints(0, a1, a2, a3)
    }

    pub fn one() -> Self {
        QuatElement::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        QuatElement::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        QuatElement::from_ints(0, 0, 1, 0)
    }

    pub fn ij() -> Self {
        QuatElement::from_ints(0, 0, 0, 1)
    }

    pub fn coords(&self) -> [&BigRational; 4] {
        [&self.x, &self.y, &self.z, &self.w]
    }

    pub fn conj(&self) -> Self {
        QuatElement::new(self.x.clone(), -&self.y, -&self.z, -&self.w)
    }

    pub fn trace(&self) -> BigRational {
        &self.x * r(2)
    }

    pub fn norm(&self) -> BigRational {
        let three = r(3);
        &self.x * &self.x + &self.y * &self.y
            - &three * &self.z * &self.z
            - &three * &self.w * &self.w
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuatElement::new(&self.x * k, &self.y * k, &self.z * k, &self.w * k)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }
}

impl Mul for &QuatElement {
    type Output = QuatElement;
    fn mul(self, o: &QuatElement) -> QuatElement {
        let (x1, y1, z1, w1) = (&self.x, &self.y, &self.z, &self.w);
        let (x2, y2, z2, w2) = (&o.x, &o.y, &o.z, &o.w);
        let three = r(3);
        QuatElement {
            x: x1 * x2 - y1 * y2 + &three * (z1 * z2 + w1 * w2),
            y: x1 * y2 + y1 * x2 + &three * (w1 * z2 - z1 * w2),
            z: x1 * z2 + z1 * x2 + w1 * y2 - y1 * w2,
            w: x1 * w2 + w1 * x2 + y1 * z2 - z1 * y2,
        }
    }
}

impl Add for &QuatElement {
    type Output = QuatElement;
    fn add(self, o: &QuatElement) -> QuatElement {
        QuatElement::new(
            &self.x + &o.x,
            &self.y + &o.y,
            &self.z + &o.z,
            &self.w + &o.w,
        )
    }
}

impl Sub for &QuatElement {
    type Output = QuatElement;
    fn sub(self, o: &QuatElement) -> QuatElement {
        self + &(-o)
    }
}

impl Neg for &QuatElement {
    type Output = QuatElement;
    fn neg(self) -> QuatElement {
        QuatElement::new(-&self.x, -&self.y, -&self.z, -&self.w)
    }
}

impl fmt::Display for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + ({})I + ({})J + ({})IJ",
            self.x, self.y, self.z, self.w
        )
    }
}

pub fn quat_mul(a: &QuatElement, b: &QuatElement) -> QuatElement {
    a * b
}

/// The fixed order basis {1, I, J, (1+I+J+IJ)/2}.
pub fn order_basis() -> [QuatElement; 4] {
    [
        QuatElement::one(),
        QuatElement::i(),
        QuatElement::j(),
        QuatElement::from_halves(1, 1, 1, 1),
    ]
}

/// Solves A·c = b over ℚ for square invertible A by Gaussian elimination.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = b.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut row = row.clone();
            row.push(v.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !m[i][col].is_zero())
            .ok_or_else(|| domain("singular system"))?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for k in col..=n {
            m[col][k] = &m[col][k] * &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for k in col..=n {
                    let t = &f * &m[col][k];
                    m[i][k] = &m[i][k] - t;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Coordinates of α in the order basis.
pub fn order_coords(alpha: &QuatElement) -> Vec<BigRational> {
    let basis = order_basis();
    // columns of the matrix are the basis elements in (x, y, z, w) coordinates
    let a: Vec<Vec<BigRational>> = (0..4)
        .map(|row| basis.iter().map(|e| e.coords()[row].clone()).collect())
        .collect();
    let b: Vec<BigRational> = alpha.coords().iter().map(|c| (*c).clone()).collect();
    solve_rational(&a, &b).expect("order basis is a ℚ-basis")
}

pub fn from_order_coords(c: &[BigInt]) -> QuatElement {
    let basis = order_basis();
    basis
        .iter()
        .zip(c)
        .fold(QuatElement::from_ints(0, 0, 0, 0), |acc, (e, k)| {
            &acc + &e.scale(&BigRational::from_integer(k.clone()))
        })
}

pub fn in_order(alpha: &QuatElement) -> bool {
    order_coords(alpha).iter().all(|c| c.is_integer())
}

fn integer_order_coords(alpha: &QuatElement) -> Result<Vec<BigInt>> {
    let c = order_coords(alpha);
    if c.iter().all(|v| v.is_integer()) {
        Ok(c.into_iter().map(|v| v.to_integer()).collect())
    } else {
        Err(domain("element is not in the maximal order"))
    }
}

/// ι(α) = ((x + z√3, −y + w√3), (y + w√3, x − z√3)).
pub fn embed_matrix(alpha: &QuatElement, ctx: &PrecisionContext) -> [[BigReal; 2]; 2] {
    let p = ctx.bits() + 8;
    let s3 = BigReal::from_i64(3, p).sqrt().expect("positive");
    let f = |q: &BigRational| BigReal::from_ratio(q, p);
    let (x, y, z, w) = (f(&alpha.x), f(&alpha.y), f(&alpha.z), f(&alpha.w));
    let zs = &z * &s3;
    let ws = &w * &s3;
    [[&x + &zs, &ws - &y], [&y + &ws, &x - &zs]]
}

pub fn mat_mul(a: &[[BigReal; 2]; 2], b: &[[BigReal; 2]; 2]) -> [[BigReal; 2]; 2] {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_det(a: &[[BigReal; 2]; 2]) -> BigReal {
    &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
}

/// Möbius action (Aτ + B)/(Cτ + D).
pub fn mobius(m: &[[BigReal; 2]; 2], tau: &BigComplex) -> BigComplex {
    let num = &tau.scale(&m[0][0]) + &BigComplex::from_real(m[0][1].clone());
    let den = &tau.scale(&m[1][0]) + &BigComplex::from_real(m[1][1].clone());
    num.div(&den)
}

/// τ_d = (a2√3 + i√|d|)/(a1 + a3√3).
pub fn cm_point(a1: i64, a2: i64, a3: i64, d: i64, ctx: &PrecisionContext) -> Result<BigComplex> {
    if d >= 0 {
        return Err(domain("discriminant must be negative"));
    }
    let p = ctx.bits() + 8;
    let s3 = BigReal::from_i64(3, p).sqrt()?;
    let den = &BigReal::from_i64(a1, p) + &s3.mul_int(&BigInt::from(a3));
    if den.signum() <= 0 {
        return Err(domain("a1 + a3·√3 must be positive"));
    }
    let re = &s3.mul_int(&BigInt::from(a2)) / &den;
    let im = &BigReal::from_i64(-d, p).sqrt()? / &den;
    Ok(BigComplex::new(re, im).with_prec(ctx.bits()))
}

/// |ι(λ)·τ − τ| for λ = a1 I + a2 J + a3 IJ and τ = cm_point(...).
pub fn fixed_point_residual(
    a1: i64,
    a2: i64,
    a3: i64,
    d: i64,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let tau = cm_point(a1, a2, a3, d, ctx)?;
    let m = embed_matrix(&QuatElement::pure(a1, a2, a3), ctx);
    Ok((&mobius(&m, &tau) - &tau).abs())
}

fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn check_pure_order(lambda: &QuatElement) -> Result<Vec<BigInt>> {
    if !lambda.trace().is_zero() {
        return Err(domain("trace must be zero"));
    }
    if !lambda.norm().is_positive() {
        return Err(domain("norm must be positive"));
    }
    integer_order_coords(lambda)
}

/// λ divided by its content in 𝒪.
pub fn primitive_part(lambda: &QuatElement) -> Result<QuatElement> {
    let c = integer_order_coords(lambda)?;
    let g = gcd_all(&c);
    if g.is_zero() {
        return Err(domain("zero element has no primitive part"));
    }
    Ok(lambda.scale(&BigRational::from_integer(g).recip()))
}

pub fn embedding_discriminant(lambda: &QuatElement) -> Result<i64> {
    check_pure_order(lambda)?;
    let l0 = primitive_part(lambda)?;
    let n = l0
        .norm()
        .to_integer()
        .to_i64()
        .ok_or_else(|| domain("norm too large"))?;
    let half = (&QuatElement::one() + &l0).scale(&BigRational::new(1.into(), 2.into()));
    Ok(if in_order(&half) { -n } else { -4 * n })
}

/// ⟨α, β⟩ = tr(αβ′).
pub fn pairing(a: &QuatElement, b: &QuatElement) -> BigRational {
    (a * &b.conj()).trace()
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Basis (as columns of a unimodular transform) of the integer kernel of the row v.
pub fn integer_kernel(v: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = v.len();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut v: Vec<BigInt> = v.to_vec();
    for j in 1..n {
        if v[j].is_zero() {
            continue;
        }
        let (g, s, t) = ext_gcd(&v[0], &v[j]);
        let (p, q) = (&v[j] / &g, &v[0] / &g);
        for row in u.iter_mut() {
            let c0 = row[0].clone();
            let cj = row[j].clone();
            row[0] = &s * &c0 + &t * &cj;
            row[j] = &q * &cj - &p * &c0;
        }
        v[0] = g;
        v[j] = BigInt::zero();
    }
    let cols: Vec<usize> = if v[0].is_zero() {
        (0..n).collect()
    } else {
        (1..n).collect()
    };
    let kernel: Vec<Vec<BigInt>> = cols
        .iter()
        .map(|&c| u.iter().map(|row| row[c].clone()).collect())
        .collect();
    hermite_rows(kernel)
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above pivots reduced.
pub fn hermite_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut m = rows;
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == m.len() {
            break;
        }
        // gcd-combine all rows below into the pivot row
        for i in pivot_row + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let (g, s, t) = ext_gcd(&m[pivot_row][col], &m[i][col]);
            let (p, q) = (&m[i][col] / &g, &m[pivot_row][col] / &g);
            let (a, b) = (m[pivot_row].clone(), m[i].clone());
            m[pivot_row] = a.iter().zip(&b).map(|(x, y)| &s * x + &t * y).collect();
            m[i] = a.iter().zip(&b).map(|(x, y)| &q * y - &p * x).collect();
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            m[pivot_row] = m[pivot_row].iter().map(|x| -x).collect();
        }
        let pv = m[pivot_row][col].clone();
        for i in 0..pivot_row {
            let f = m[i][col].div_floor(&pv);
            if !f.is_zero() {
                let pr = m[pivot_row].clone();
                m[i] = m[i].iter().zip(&pr).map(|(x, y)| x - &f * y).collect();
            }
        }
        pivot_row += 1;
    }
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSplit {
    /// Generator of L₊ = L ∩ ℚλ, in order coordinates.
    pub lattice_basis_plus: Vec<BigInt>,
    /// Basis of L₋ = L ∩ λ^⊥, in order coordinates.
    pub lattice_basis_minus: Vec<Vec<BigInt>>,
    pub gram_minus: [[i64; 2]; 2],
    pub disc_minus: i64,
}

/// Basis of the trace-zero lattice L = 𝒪 ∩ B⁰ in order coordinates.
pub fn trace_zero_lattice() -> Vec<Vec<BigInt>> {
    let traces: Vec<BigInt> = order_basis()
        .iter()
        .map(|e| e.trace().to_integer())
        .collect();
    integer_kernel(&traces)
}

pub fn lattice_split(lambda: &QuatElement) -> Result<LatticeSplit> {
    check_pure_order(lambda)?;
    let basis = trace_zero_lattice();
    let elems: Vec<QuatElement> = basis.iter().map(|c| from_order_coords(c)).collect();
    let row: Vec<BigInt> = elems
        .iter()
        .map(|e| pairing(e, lambda).to_integer())
        .collect();
    let minus: Vec<Vec<BigInt>> = integer_kernel(&row)
        .iter()
        .map(|k| {
            let e = elems
                .iter()
                .zip(k)
                .fold(QuatElement::from_ints(0, 0, 0, 0), |acc, (b, c)| {
                    &acc + &b.scale(&BigRational::from_integer(c.clone()))
                });
            integer_order_coords(&e).expect("L is inside the order")
        })
        .collect();
    let minus = hermite_rows(minus);
    if minus.len() != 2 {
        return Err(domain("λ^⊥ ∩ L does not have rank 2"));
    }
    let me: Vec<QuatElement> = minus.iter().map(|c| from_order_coords(c)).collect();
    let mut gram = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            gram[i][j] = pairing(&me[i], &me[j])
                .to_integer()
                .to_i64()
                .ok_or_else(|| domain("Gram entry too large"))?;
        }
    }
    let disc = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
    let plus = integer_order_coords(&primitive_part(lambda)?)?;
    Ok(LatticeSplit {
        lattice_basis_plus: plus,
        lattice_basis_minus: minus,
        gram_minus: gram,
        disc_minus: disc,
    })
}

/// r²·|d| with r the product of the primes p | 6 not dividing d.
pub fn corollary19_disc(d: i64) -> i64 {
    let r: i64 = [2i64, 3].iter().filter(|&&p| d % p != 0).product();
    r * r * d.abs()
}
