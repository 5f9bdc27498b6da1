use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;

use super::theorem2::{lemma26_holds, Family};
use super::{guard, Verifier, VerifyReport};
use crate::error::{domain, Result};
use crate::numerics::{rat, BigComplex, BigReal};
use crate::padic::{verify_remark4_row, GammaPTable, RadicalValue, Remark4Status};
use crate::qseries::{
    corollary9_parity, delta_expansion, eta_cusp_orders, eta_quotient_expansion, lemma13_check,
    qseries_eval, CoefficientBound, EtaQuotient, QSeries,
};
use crate::quadfield::{analytic_class_number, reduced_forms};
use crate::quaternion::{
    corollary19_disc, embed_matrix, embedding_discriminant, fixed_point_residual, in_order,
    lattice_split, mobius, QuatElement,
};

/// Class numbers against the analytic formula and ∏ a_j^{−6}Δ(τ_j) = ω^{12h}/(2π)^{6h}.
pub fn chowla_selberg_suite(v: &Verifier, class_numbers: &[(i64, u64)]) -> Vec<VerifyReport> {
    let mut out: Vec<VerifyReport> = class_numbers
        .iter()
        .flat_map(|&(d, h)| chowla_selberg_row(v, d, h))
        .collect();
    out.push(delta_at_i_check(v));
    out
}

/// Class number and Δ-product cases for one discriminant.
pub fn chowla_selberg_row(v: &Verifier, d: i64, h: u64) -> Vec<VerifyReport> {
    alloc::vec![
        guard(&format!("chowla_selberg/h/d={d}"), || class_number(v, d, h)),
        guard(&format!("chowla_selberg/delta/d={d}"), || delta_product(
            v, d
        )),
    ]
}

/// Δ(i) = Γ(1/4)²⁴/(2²⁴π¹⁸).
pub fn delta_at_i_check(v: &Verifier) -> VerifyReport {
    guard("chowla_selberg/delta-at-i", || delta_at_i(v))
}

fn class_number(v: &Verifier, d: i64, expected: u64) -> Result<VerifyReport> {
    let forms = reduced_forms(d)?.len() as u64;
    let analytic = analytic_class_number(d, v.ctx())?;
    let rounded = analytic.round();
    let dist = (&analytic - &BigReal::from_bigint(&rounded, analytic.prec())).abs();
    let near = crate::numerics::below_decimal(&dist, 10);
    let ok = near && rounded == BigInt::from(forms) && forms == expected;
    let details = format!(
        "reduced forms {forms}, analytic {}, fixture {expected}",
        analytic.to_decimal(12)
    );
    Ok(VerifyReport::exact(
        format!("chowla_selberg/h/d={d}"),
        ok,
        dist,
        details,
    ))
}

fn delta_series(v: &Verifier) -> QSeries {
    // enough terms for Im τ ≥ √3/(2·a) with a ≤ √(|d|/3) at the working precision
    let digits = v.ctx().decimal_digits + v.ctx().guard_digits;
    delta_expansion(40 + 2 * digits as usize)
}

fn delta(v: &Verifier, series: &QSeries, tau: &BigComplex) -> Result<BigComplex> {
    let ctx = v.ctx().raised(8);
    qseries_eval(series, tau, CoefficientBound::DELTA, &ctx)
}

fn delta_product(v: &Verifier, d: i64) -> Result<VerifyReport> {
    let p = v.prec() + 32;
    let forms = reduced_forms(d)?;
    let h = forms.len() as i64;
    let series = delta_series(v);
    let root = BigReal::from_i64(-d, p).sqrt()?;
    let mut prod = BigComplex::one(p);
    for &(a, b, _) in &forms {
        let den = BigReal::from_i64(2 * a, p);
        let tau = BigComplex::new(&BigReal::from_i64(-b, p) / &den, &root / &den);
        let dv = delta(v, &series, &tau)?;
        prod = &prod * &dv.scale(&BigReal::from_i64(a, p).powi(-6));
    }
    let lhs = prod.abs();
    let w = v.omega(d)?;
    let rhs = &w.powi(12 * h) / &v.pi().mul_pow2(1).powi(6 * h);
    Ok(v.report(
        format!("chowla_selberg/delta/d={d}"),
        &[("|∏ a^-6 Δ(τ)|", &lhs, &rhs)],
        &format!("h = {h}"),
    ))
}

fn delta_at_i(v: &Verifier) -> Result<VerifyReport> {
    let p = v.prec();
    let series = delta_series(v);
    let tau = BigComplex::new(BigReal::zero(p), BigReal::one(p));
    let dv = delta(v, &series, &tau)?;
    let g = v.table().gamma(&rat(1, 4))?;
    let rhs = &g.powi(24) / &(&BigReal::from_i64(1, p).mul_pow2(24) * &v.pi().powi(18));
    let im = dv.im.abs();
    let lhs = dv.re;
    let extra = format!("|Im Δ(i)| = {}", im.to_decimal(3));
    Ok(v.report(
        "chowla_selberg/delta-at-i".into(),
        &[("Δ(i) vs Γ(1/4)^24/(2^24 π^18)", &lhs, &rhs)],
        &extra,
    ))
}

/// Cusp-order table: rows η(δτ), columns cusps 1/c, entries 24·order.
#[derive(Clone, Debug)]
pub struct CuspTable {
    pub level: u64,
    pub cusps: Vec<u64>,
    pub rows: Vec<(u64, Vec<i64>)>,
}

/// Scaled eta quotient term of a weakly holomorphic form.
#[derive(Clone, Debug)]
pub struct QuotientTerm {
    pub scale: i64,
    pub exponents: Vec<(u64, i64)>,
}

#[derive(Clone, Debug)]
pub struct NamedForm {
    pub name: String,
    pub level: u64,
    pub terms: Vec<QuotientTerm>,
    /// Displayed expansion prefix, e.g. "2q^-3 - 6 - 18q".
    pub prefix: String,
    pub prefix_terms: usize,
    /// Principal part and constant term of the e₀-component.
    pub principal: Vec<(i64, i64)>,
    pub constant: i64,
}

#[derive(Clone, Debug)]
pub struct QSeriesFixture {
    pub forms: Vec<NamedForm>,
    pub dual_order: u64,
    pub cusp_table: CuspTable,
}

/// Expansion prefixes, eta-quotient modularity conditions, the cusp table, pole location and parity.
pub fn qseries_suite(fx: &QSeriesFixture) -> Vec<VerifyReport> {
    let mut out = Vec::new();
    for form in &fx.forms {
        out.push(guard(&format!("qseries/prefix/{}", form.name), || {
            prefix_check(form)
        }));
        for (i, term) in form.terms.iter().enumerate() {
            let id = format!("qseries/lemma13/{}/{i}", form.name);
            out.push(guard(&id.clone(), || {
                let eq = EtaQuotient::new(form.level, &term.exponents)?;
                let r = lemma13_check(&eq, fx.dual_order);
                let details = format!(
                    "sum=1 {}, square {}, Σδr≡0 {}, Σ(N/δ)r≡0 {}",
                    r.sum_is_one,
                    r.square_condition,
                    r.weighted_sum_divisible,
                    r.dual_weighted_sum_divisible
                );
                Ok(VerifyReport::exact(id, r.all(), BigReal::zero(64), details))
            }));
            let id = format!("qseries/poles/{}/{i}", form.name);
            out.push(guard(&id.clone(), || pole_check(id, form.level, term)));
        }
        let id = format!("qseries/corollary9/{}", form.name);
        out.push(guard(&id.clone(), || parity_check(id, form)));
    }
    out.extend(cusp_table_check(&fx.cusp_table));
    out
}

fn form_expansion(form: &NamedForm, len: usize) -> Result<QSeries> {
    let mut acc: Option<QSeries> = None;
    for t in &form.terms {
        let eq = EtaQuotient::new(form.level, &t.exponents)?;
        let s = eta_quotient_expansion(&eq, len)
            .scale(&BigRational::from_integer(BigInt::from(t.scale)));
        acc = Some(match acc {
            None => s,
            Some(a) => a.add(&s)?,
        });
    }
    acc.ok_or_else(|| domain("form without terms"))
}

fn prefix_check(form: &NamedForm) -> Result<VerifyReport> {
    let s = form_expansion(form, form.prefix_terms + 8)?;
    let got = s.format_prefix(form.prefix_terms);
    let ok = got == form.prefix;
    Ok(VerifyReport::exact(
        format!("qseries/prefix/{}", form.name),
        ok,
        BigReal::zero(64),
        format!("expansion {got}; expected {}", form.prefix),
    ))
}

/// Parity of the e₀-component, after matching the tabulated principal part against the expansion.
fn parity_check(id: String, form: &NamedForm) -> Result<VerifyReport> {
    let s = form_expansion(form, 4)?;
    let lead = s.leading_exponent.to_integer();
    let mut computed = BTreeMap::new();
    for (k, c) in s.coeffs.iter().enumerate() {
        let e = lead + k as i64;
        if e >= 0 {
            break;
        }
        if !c.is_zero() {
            let c = crate::qseries::rational_to_i64(c)
                .ok_or_else(|| domain("non-integral principal part"))?;
            computed.insert(e, c);
        }
    }
    let principal: BTreeMap<i64, i64> = form
        .principal
        .iter()
        .copied()
        .filter(|(_, c)| *c != 0)
        .collect();
    let matches = principal == computed;
    let parity = corollary9_parity(&principal, form.constant);
    let details = format!(
        "principal part matches expansion {matches}; parity with constant {} {parity}",
        form.constant
    );
    Ok(VerifyReport::exact(
        id,
        matches && parity,
        BigReal::zero(64),
        details,
    ))
}

/// Only the cusp 1/N (∼ ∞) may carry a pole.
fn pole_check(id: String, level: u64, term: &QuotientTerm) -> Result<VerifyReport> {
    let eq = EtaQuotient::new(level, &term.exponents)?;
    let orders = eta_cusp_orders(&eq)?;
    let ok = orders.iter().all(|(&c, o)| {
        if c == level {
            *o < Rational64::zero()
        } else {
            *o >= Rational64::zero()
        }
    });
    let list: Vec<String> = orders.iter().map(|(c, o)| format!("1/{c}:{o}")).collect();
    Ok(VerifyReport::exact(
        id,
        ok,
        BigReal::zero(64),
        list.join(" "),
    ))
}

fn cusp_table_check(t: &CuspTable) -> Vec<VerifyReport> {
    let mut out = Vec::new();
    for (delta, entries) in &t.rows {
        for (c, want) in t.cusps.iter().zip(entries) {
            let id = format!("qseries/cusp/eta{delta}/1-{c}");
            out.push(guard(&id.clone(), || {
                let eq = EtaQuotient::new(t.level, &[(*delta, 1)])?;
                let orders = eta_cusp_orders(&eq)?;
                let got = orders
                    .get(c)
                    .copied()
                    .ok_or_else(|| domain(format!("cusp 1/{c} not a divisor cusp")))?;
                let ok = got == Rational64::from_integer(*want);
                Ok(VerifyReport::exact(
                    id,
                    ok,
                    BigReal::zero(64),
                    format!("24·ord = {got}, expected {want}"),
                ))
            }));
        }
    }
    out
}

/// An optimal embedding φ(√d) = a1·I + a2·J + a3·IJ with its Hauptmodul sign, if tabulated.
#[derive(Clone, Debug)]
pub struct EmbeddingRow {
    pub d: i64,
    pub embedding: (i64, i64, i64),
    /// Family and sign of M for the sign constraint on the embedding; `None` for the special points.
    pub lemma26: Option<(Family, bool)>,
}

/// Conjugating element mapping one CM point of discriminant −276 to the other.
#[derive(Clone, Debug)]
pub struct Conjugation {
    pub name: String,
    /// Coordinates (x, y, z, w) over 2: α = (x + yI + zJ + wIJ)/2.
    pub halves: (i64, i64, i64, i64),
    pub lambda_from: (i64, i64, i64),
    pub lambda_to: (i64, i64, i64),
    pub norm: i64,
    pub d: i64,
}

/// Discriminant, fixed point, lattice discriminant, sign constraint and the d = −276 conjugations.
pub fn quaternion_suite(
    v: &Verifier,
    rows: &[EmbeddingRow],
    conjugations: &[Conjugation],
) -> Vec<VerifyReport> {
    let mut out: Vec<VerifyReport> = rows.iter().map(|r| embedding_check(v, r)).collect();
    out.extend(conjugations.iter().map(|c| conjugation_check(v, c)));
    out
}

/// Discriminant, fixed point, lattice discriminant and sign constraint for one embedding.
pub fn embedding_check(v: &Verifier, row: &EmbeddingRow) -> VerifyReport {
    let (a1, a2, a3) = row.embedding;
    let id = format!("quaternion/embedding/d={}", row.d);
    guard(&id.clone(), || {
        let lam = QuatElement::pure(a1, a2, a3);
        let disc = embedding_discriminant(&lam)?;
        let split = lattice_split(&lam)?;
        let want19 = corollary19_disc(row.d);
        let lemma26 = row
            .lemma26
            .map(|(f, pos)| lemma26_holds(f, pos, row.embedding));
        let fixed = fixed_point_residual(a1, a2, a3, row.d, v.ctx())?;
        let numeric_ok = crate::numerics::below_decimal(&fixed, v.tolerance_digits());
        let ok =
            disc == row.d && split.disc_minus == want19 && lemma26 != Some(false) && numeric_ok;
        let details = format!(
            "disc {disc}; disc(L-) {} vs r²|d| {want19}; sign constraint {}; fixed-point residual {}",
            split.disc_minus,
            match lemma26 {
                Some(true) => "holds",
                Some(false) => "violated",
                None => "n/a",
            },
            fixed.to_decimal(3)
        );
        Ok(VerifyReport {
            digits_checked: v.tolerance_digits(),
            ..VerifyReport::exact(id, ok, fixed, details)
        })
    })
}

/// αλα⁻¹ = λ', norm, membership in the order and the induced move of CM points.
pub fn conjugation_check(v: &Verifier, c: &Conjugation) -> VerifyReport {
    let id = format!("quaternion/conjugation/{}", c.name);
    guard(&id.clone(), || conjugation(v, id, c))
}

fn conjugation(v: &Verifier, id: String, c: &Conjugation) -> Result<VerifyReport> {
    let (x, y, z, w) = c.halves;
    let alpha = QuatElement::from_halves(x, y, z, w);
    let (f1, f2, f3) = c.lambda_from;
    let (t1, t2, t3) = c.lambda_to;
    let from = QuatElement::pure(f1, f2, f3);
    let to = QuatElement::pure(t1, t2, t3);
    let conj = &(&alpha * &from) * &alpha.inverse()?;
    let norm_ok = alpha.norm() == BigRational::from_integer(BigInt::from(c.norm));
    let member = in_order(&alpha);
    let maps = conj == to;
    // ι(α) moves the fixed point of λ_from to that of λ_to
    let tau_from = crate::quaternion::cm_point(f1, f2, f3, c.d, v.ctx())?;
    let tau_to = crate::quaternion::cm_point(t1, t2, t3, c.d, v.ctx())?;
    let moved = mobius(&embed_matrix(&alpha, v.ctx()), &tau_from);
    let dist = &(&moved - &tau_to).abs() / &tau_to.abs();
    let ok =
        norm_ok && member && maps && crate::numerics::below_decimal(&dist, v.tolerance_digits());
    let details = format!(
        "norm {} (expected {}), in order {member}, αλα⁻¹ = λ' {maps}, |ι(α)τ − τ'|/|τ'| = {}",
        alpha.norm(),
        c.norm,
        dist.to_decimal(3)
    );
    Ok(VerifyReport {
        digits_checked: v.tolerance_digits(),
        ..VerifyReport::exact(id, ok, dist, details)
    })
}

#[derive(Clone, Debug)]
pub struct Remark4Row {
    pub d: i64,
    pub m_num: BigInt,
    pub n_den: BigInt,
    pub a2: RadicalValue,
    /// The row is known to be out of reach (no convergence or no root in ℚ_p).
    pub expect_skip: bool,
}

/// p-adic rows at precision K: PASS when some root choice agrees mod p^K.
///
/// With `strict`, a row that cannot be checked fails unless it is marked `expect_skip`.
pub fn padic_suite(rows: &[Remark4Row], table: &GammaPTable, strict: bool) -> Vec<VerifyReport> {
    let k = table.precision();
    rows.iter()
        .map(|row| {
            let id = format!("padic/remark4/d={}", row.d);
            guard(&id.clone(), || {
                let o = verify_remark4_row(row.d, &row.m_num, &row.n_den, &row.a2, table)?;
                let residual = padic_residual(table.p(), o.attained_precision);
                let reason = match o.status {
                    Remark4Status::Pass | Remark4Status::Fail => None,
                    Remark4Status::Skipped(ref r) => Some(r.clone()),
                    Remark4Status::Unverifiable(ref r) => Some(format!("UNVERIFIABLE-IN-QP: {r}")),
                };
                let mut rep = match reason {
                    None => VerifyReport::exact(
                        id,
                        o.status == Remark4Status::Pass,
                        residual,
                        String::new(),
                    ),
                    Some(r) if strict && !row.expect_skip => VerifyReport::exact(
                        id,
                        false,
                        residual,
                        format!("expected a checkable row: {r}"),
                    ),
                    Some(r) => VerifyReport::skipped(id, r),
                };
                let agreement = format!(
                    "agreement mod {}^{} (target {k}); {}",
                    table.p(),
                    o.attained_precision,
                    o.details
                );
                rep.details = if rep.details.is_empty() {
                    agreement
                } else {
                    format!("{}; {agreement}", rep.details)
                };
                rep.digits_checked = k;
                Ok(rep)
            })
        })
        .collect()
}

/// p^(−agreement) as a real, the p-adic size of the discrepancy.
fn padic_residual(p: u64, agreement: i64) -> BigReal {
    if agreement <= 0 {
        return BigReal::one(64);
    }
    let e = agreement.min(10_000) as u32;
    BigReal::from_ratio(
        &BigRational::new(
            BigInt::from(1),
            num_traits::pow(BigInt::from(p), e as usize),
        ),
        64,
    )
}
