use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{guard, Verifier, VerifyReport};
use crate::error::{domain, Result};
use crate::numerics::{elementary, hyp_pfq, BigReal, HypArg, HypParams};

/// coeff · √radicand · ω_d^omega_power.
#[derive(Clone, Debug)]
pub struct ClosedFormTerm {
    pub coeff: BigRational,
    pub radicand: BigRational,
    pub omega_power: i64,
}

/// prefactor · ∏ pᵉ · ω_ref^ref_power · Σ terms, with the terms' ω taken at `omega_disc`.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub prefactor: BigRational,
    pub prime_powers: Vec<(u64, BigRational)>,
    pub omega_ref: i64,
    pub ref_power: i64,
    pub omega_disc: i64,
    pub terms: Vec<ClosedFormTerm>,
}

#[derive(Clone, Debug)]
pub struct Remark1Instance {
    pub id: String,
    pub numerator: Vec<BigRational>,
    pub denominator: Vec<BigRational>,
    pub argument: BigRational,
    pub value: ClosedForm,
}

impl ClosedForm {
    pub fn evaluate(&self, v: &Verifier) -> Result<BigReal> {
        let p = v.prec();
        let mut acc = BigReal::from_ratio(&self.prefactor, p);
        for (q, e) in &self.prime_powers {
            acc = &acc * &elementary::pow_rational(&BigReal::from_bigint(&BigInt::from(*q), p), e)?;
        }
        acc = &acc * &v.omega(self.omega_ref)?.powi(self.ref_power);
        let w = v.omega(self.omega_disc)?;
        let mut sum = BigReal::zero(p);
        for t in &self.terms {
            if t.radicand.is_negative() {
                return Err(domain("closed-form radicands must be non-negative"));
            }
            let r = BigReal::from_ratio(&t.radicand, p).sqrt()?;
            let term = &(&r * &BigReal::from_ratio(&t.coeff, p)) * &w.powi(t.omega_power);
            sum = &sum + &term;
        }
        Ok(&acc * &sum)
    }
}

/// Series value of each ₃F₂ against its displayed closed form.
pub fn verify_remark1_instances(v: &Verifier, instances: &[Remark1Instance]) -> Vec<VerifyReport> {
    instances
        .iter()
        .map(|inst| {
            let id = alloc::format!("remark1/{}", inst.id);
            guard(&id.clone(), || {
                let params = HypParams::new(
                    inst.numerator.clone(),
                    inst.denominator.clone(),
                    HypArg::Rational(inst.argument.clone()),
                );
                let lhs = hyp_pfq(&params, v.ctx())?;
                let rhs = inst.value.evaluate(v)?;
                let extra = alloc::format!("{} terms", lhs.terms);
                Ok(v.report(id, &[("series vs closed form", &lhs.value, &rhs)], &extra))
            })
        })
        .collect()
}
