//! JSON fixture schemas and their conversion into core types.

use std::fs;
use std::path::{Path, PathBuf};

use cmperiods_core::exact::{QuadExt, SPoly};
use cmperiods_core::padic::RadicalValue;
use cmperiods_core::verify::{
    ClosedForm, ClosedFormTerm, Conjugation, ConstantsFixture, CuspTable, EmbeddingRow, Family,
    NamedForm, QSeriesFixture, QuotientTerm, Remark1Instance, Remark4Row, Section6Data,
    SpecialPoint, SpecialRow, Theorem2Row,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{path}: cannot read: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: schema violation: {source}")]
    Schema {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: field `{field}`: {message}")]
    Value {
        path: PathBuf,
        field: String,
        message: String,
    },
}

/// An integer written either as a JSON number or as a decimal string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Num(i64),
    Str(String),
}

impl IntJson {
    fn big(&self) -> Result<BigInt, String> {
        match self {
            IntJson::Num(n) => Ok(BigInt::from(*n)),
            IntJson::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not a rational: {s:?}");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// a_num/a_den + (b_num/b_den)·√m.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadJson {
    pub a_num: IntJson,
    pub a_den: IntJson,
    pub b_num: IntJson,
    pub b_den: IntJson,
    pub m: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Theorem2Json {
    pub d: i64,
    pub family: String,
    #[serde(rename = "M")]
    pub m: IntJson,
    #[serde(rename = "N")]
    pub n: IntJson,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub scale: IntJson,
    pub hyp1_pow: QuadJson,
    pub hyp2_sq: QuadJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Theorem2File {
    pub rows: Vec<Theorem2Json>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecialJson {
    pub d: i64,
    pub point: String,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub scale: IntJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Prop27File {
    pub special: Vec<SpecialJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstantsFile {
    pub a_minus4: IntJson,
    pub a_minus24: IntJson,
    pub b_minus3: IntJson,
    pub dimensions: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimePowerJson {
    pub p: u64,
    pub e: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub radicand: String,
    pub omega_power: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedFormJson {
    pub prefactor: String,
    pub prime_powers: Vec<PrimePowerJson>,
    pub omega_ref: i64,
    pub ref_power: i64,
    pub omega_disc: i64,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Remark1Json {
    pub id: String,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub argument: String,
    pub value: ClosedFormJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Remark1File {
    pub instances: Vec<Remark1Json>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorJson {
    pub factor: QuadJson,
    pub power: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Section6File {
    pub d: i64,
    pub s1: QuadJson,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    /// y⁰..y⁶ coefficients, each a polynomial in s (constant term first).
    pub sextic: Vec<Vec<String>>,
    pub quadratic: Vec<QuadJson>,
    pub abs_ratio: QuadJson,
    pub borcherds_factor: QuadJson,
    pub schofer_constant: IntJson,
    pub final_2f1: Vec<FactorJson>,
    pub final_3f2: Vec<FactorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadicalJson {
    pub a: String,
    pub b: String,
    pub radicand: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Remark4Json {
    pub d: i64,
    #[serde(rename = "M")]
    pub m: IntJson,
    #[serde(rename = "N")]
    pub n: IntJson,
    #[serde(rename = "A2")]
    pub a2: RadicalJson,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub expect_skip: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Remark4File {
    pub p: u64,
    pub rows: Vec<Remark4Json>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub d: i64,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_positive: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjugationJson {
    pub name: String,
    pub halves: (i64, i64, i64, i64),
    pub d: i64,
    pub norm: i64,
    pub lambda_from: (i64, i64, i64),
    pub lambda_to: (i64, i64, i64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuaternionFile {
    pub embeddings: Vec<EmbeddingJson>,
    pub conjugations: Vec<ConjugationJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientJson {
    pub scale: i64,
    pub exponents: Vec<(u64, i64)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub name: String,
    pub level: u64,
    pub terms: Vec<QuotientJson>,
    pub prefix: String,
    pub prefix_terms: usize,
    pub principal: Vec<(i64, i64)>,
    pub constant: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuspRowJson {
    pub delta: u64,
    pub orders: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuspTableJson {
    pub level: u64,
    pub cusps: Vec<u64>,
    pub rows: Vec<CuspRowJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QSeriesFile {
    pub dual_order: u64,
    pub forms: Vec<FormJson>,
    pub cusp_table: CuspTableJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassNumberJson {
    pub d: i64,
    pub h: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChowlaSelbergFile {
    pub class_numbers: Vec<ClassNumberJson>,
}

/// All fixture documents in their JSON form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureSet {
    pub theorem2: Theorem2File,
    pub prop27: Prop27File,
    pub constants: ConstantsFile,
    pub remark1: Remark1File,
    pub section6: Section6File,
    pub remark4: Remark4File,
    pub quaternion: QuaternionFile,
    pub qseries: QSeriesFile,
    pub chowla_selberg: ChowlaSelbergFile,
}

/// File name of each fixture document.
pub const FILES: [&str; 9] = [
    "theorem2.json",
    "prop27.json",
    "constants.json",
    "remark1.json",
    "section6.json",
    "remark4.json",
    "quaternion.json",
    "qseries.json",
    "chowla_selberg.json",
];

fn read<T: for<'de> Deserialize<'de>>(dir: &Path, name: &str) -> Result<T, FixtureError> {
    let path = dir.join(name);
    let text = fs::read_to_string(&path).map_err(|source| FixtureError::Io {
        path: path.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FixtureError::Schema { path, source })
}

impl FixtureSet {
    pub fn load(dir: &Path) -> Result<Self, FixtureError> {
        Ok(FixtureSet {
            theorem2: read(dir, FILES[0])?,
            prop27: read(dir, FILES[1])?,
            constants: read(dir, FILES[2])?,
            remark1: read(dir, FILES[3])?,
            section6: read(dir, FILES[4])?,
            remark4: read(dir, FILES[5])?,
            quaternion: read(dir, FILES[6])?,
            qseries: read(dir, FILES[7])?,
            chowla_selberg: read(dir, FILES[8])?,
        })
    }

    /// Every discriminant whose ω_d the numeric suites will ask for.
    pub fn discriminants(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.theorem2.rows.iter().map(|r| r.d).collect();
        ds.extend(self.prop27.special.iter().map(|r| r.d));
        ds.extend(self.chowla_selberg.class_numbers.iter().map(|r| r.d));
        ds.push(self.section6.d);
        for inst in &self.remark1.instances {
            ds.push(inst.value.omega_ref);
            ds.push(inst.value.omega_disc);
        }
        ds.extend([-3, -4, -24]);
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

/// Converts JSON values into core types, tagging errors with file and field.
pub struct Converter {
    path: PathBuf,
}

impl Converter {
    pub fn new(dir: &Path, file: &str) -> Self {
        Converter {
            path: dir.join(file),
        }
    }

    fn err(&self, field: &str, message: impl Into<String>) -> FixtureError {
        FixtureError::Value {
            path: self.path.clone(),
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub fn int(&self, field: &str, v: &IntJson) -> Result<BigInt, FixtureError> {
        v.big().map_err(|m| self.err(field, m))
    }

    pub fn rational(&self, field: &str, s: &str) -> Result<BigRational, FixtureError> {
        parse_rational(s).map_err(|m| self.err(field, m))
    }

    pub fn quad(&self, field: &str, q: &QuadJson) -> Result<QuadExt, FixtureError> {
        let part =
            |num: &IntJson, den: &IntJson, which: &str| -> Result<BigRational, FixtureError> {
                let n = self.int(&format!("{field}.{which}_num"), num)?;
                let d = self.int(&format!("{field}.{which}_den"), den)?;
                if d == BigInt::from(0) {
                    return Err(self.err(&format!("{field}.{which}_den"), "zero denominator"));
                }
                Ok(BigRational::new(n, d))
            };
        let a = part(&q.a_num, &q.a_den, "a")?;
        let b = part(&q.b_num, &q.b_den, "b")?;
        if q.m == 0 {
            return Err(self.err(&format!("{field}.m"), "m must be positive"));
        }
        QuadExt::new(a, b, q.m).map_err(|e| self.err(field, e.to_string()))
    }

    fn family(&self, field: &str, s: &str) -> Result<Family, FixtureError> {
        match s {
            "S" => Ok(Family::S),
            "T" => Ok(Family::T),
            other => Err(self.err(field, format!("family must be S or T, got {other:?}"))),
        }
    }
}

pub fn theorem2_rows(dir: &Path, f: &Theorem2File) -> Result<Vec<Theorem2Row>, FixtureError> {
    let c = Converter::new(dir, FILES[0]);
    f.rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let at = |s: &str| format!("rows[{i}].{s}");
            Ok(Theorem2Row {
                d: r.d,
                family: c.family(&at("family"), &r.family)?,
                m_num: c.int(&at("M"), &r.m)?,
                n_den: c.int(&at("N"), &r.n)?,
                embedding: (r.a1, r.a2, r.a3),
                scale: c.int(&at("scale"), &r.scale)?,
                hyp1_pow: c.quad(&at("hyp1_pow"), &r.hyp1_pow)?,
                hyp2_sq: c.quad(&at("hyp2_sq"), &r.hyp2_sq)?,
            })
        })
        .collect()
}

pub fn special_rows(dir: &Path, f: &Prop27File) -> Result<Vec<SpecialRow>, FixtureError> {
    let c = Converter::new(dir, FILES[1]);
    f.special
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let point = match r.point.as_str() {
                "S0" => SpecialPoint::SZero,
                "S1" => SpecialPoint::SOne,
                "T0" => SpecialPoint::TZero,
                other => {
                    return Err(c.err(
                        &format!("special[{i}].point"),
                        format!("unknown point {other:?}"),
                    ))
                }
            };
            Ok(SpecialRow {
                d: r.d,
                point,
                embedding: (r.a1, r.a2, r.a3),
                scale: c.int(&format!("special[{i}].scale"), &r.scale)?,
            })
        })
        .collect()
}

pub fn constants(dir: &Path, f: &ConstantsFile) -> Result<ConstantsFixture, FixtureError> {
    let c = Converter::new(dir, FILES[2]);
    Ok(ConstantsFixture {
        a_minus4: c.int("a_minus4", &f.a_minus4)?,
        a_minus24: c.int("a_minus24", &f.a_minus24)?,
        b_minus3: c.int("b_minus3", &f.b_minus3)?,
        dimensions: f.dimensions.clone(),
    })
}

pub fn remark1(dir: &Path, f: &Remark1File) -> Result<Vec<Remark1Instance>, FixtureError> {
    let c = Converter::new(dir, FILES[3]);
    f.instances
        .iter()
        .enumerate()
        .map(|(i, inst)| {
            let at = |s: &str| format!("instances[{i}].{s}");
            let list = |name: &str, xs: &[String]| -> Result<Vec<BigRational>, FixtureError> {
                xs.iter()
                    .enumerate()
                    .map(|(j, x)| c.rational(&at(&format!("{name}[{j}]")), x))
                    .collect()
            };
            let v = &inst.value;
            let prime_powers = v
                .prime_powers
                .iter()
                .enumerate()
                .map(|(j, pp)| {
                    Ok((
                        pp.p,
                        c.rational(&at(&format!("value.prime_powers[{j}].e")), &pp.e)?,
                    ))
                })
                .collect::<Result<Vec<_>, FixtureError>>()?;
            let terms = v
                .terms
                .iter()
                .enumerate()
                .map(|(j, t)| {
                    Ok(ClosedFormTerm {
                        coeff: c.rational(&at(&format!("value.terms[{j}].coeff")), &t.coeff)?,
                        radicand: c
                            .rational(&at(&format!("value.terms[{j}].radicand")), &t.radicand)?,
                        omega_power: t.omega_power,
                    })
                })
                .collect::<Result<Vec<_>, FixtureError>>()?;
            Ok(Remark1Instance {
                id: inst.id.clone(),
                numerator: list("numerator", &inst.numerator)?,
                denominator: list("denominator", &inst.denominator)?,
                argument: c.rational(&at("argument"), &inst.argument)?,
                value: ClosedForm {
                    prefactor: c.rational(&at("value.prefactor"), &v.prefactor)?,
                    prime_powers,
                    omega_ref: v.omega_ref,
                    ref_power: v.ref_power,
                    omega_disc: v.omega_disc,
                    terms,
                },
            })
        })
        .collect()
}

pub fn section6(dir: &Path, f: &Section6File) -> Result<Section6Data, FixtureError> {
    let c = Converter::new(dir, FILES[4]);
    let sextic = f
        .sextic
        .iter()
        .enumerate()
        .map(|(k, coeffs)| {
            let cs = coeffs
                .iter()
                .enumerate()
                .map(|(j, s)| c.rational(&format!("sextic[{k}][{j}]"), s))
                .collect::<Result<Vec<_>, FixtureError>>()?;
            Ok(SPoly(cs))
        })
        .collect::<Result<Vec<_>, FixtureError>>()?;
    if sextic.len() != 7 {
        return Err(c.err(
            "sextic",
            format!("expected 7 coefficient templates, got {}", sextic.len()),
        ));
    }
    let factors = |name: &str, xs: &[FactorJson]| -> Result<Vec<(QuadExt, i64)>, FixtureError> {
        xs.iter()
            .enumerate()
            .map(|(j, x)| Ok((c.quad(&format!("{name}[{j}].factor"), &x.factor)?, x.power)))
            .collect()
    };
    Ok(Section6Data {
        d: f.d,
        s1: c.quad("s1", &f.s1)?,
        embedding: (f.a1, f.a2, f.a3),
        sextic,
        quadratic: f
            .quadratic
            .iter()
            .enumerate()
            .map(|(j, q)| c.quad(&format!("quadratic[{j}]"), q))
            .collect::<Result<Vec<_>, FixtureError>>()?,
        abs_ratio: c.quad("abs_ratio", &f.abs_ratio)?,
        borcherds_factor: c.quad("borcherds_factor", &f.borcherds_factor)?,
        schofer_constant: c.int("schofer_constant", &f.schofer_constant)?,
        final_2f1: factors("final_2f1", &f.final_2f1)?,
        final_3f2: factors("final_3f2", &f.final_3f2)?,
    })
}

pub fn remark4(dir: &Path, f: &Remark4File) -> Result<Vec<Remark4Row>, FixtureError> {
    let c = Converter::new(dir, FILES[5]);
    f.rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let at = |s: &str| format!("rows[{i}].{s}");
            Ok(Remark4Row {
                d: r.d,
                m_num: c.int(&at("M"), &r.m)?,
                n_den: c.int(&at("N"), &r.n)?,
                a2: RadicalValue {
                    a: c.rational(&at("A2.a"), &r.a2.a)?,
                    b: c.rational(&at("A2.b"), &r.a2.b)?,
                    radicand: r.a2.radicand,
                },
                expect_skip: r.expect_skip,
            })
        })
        .collect()
}

pub fn quaternion(
    dir: &Path,
    f: &QuaternionFile,
) -> Result<(Vec<EmbeddingRow>, Vec<Conjugation>), FixtureError> {
    let c = Converter::new(dir, FILES[6]);
    let rows = f
        .embeddings
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let lemma26 = match (&e.family, e.m_positive) {
                (Some(fam), Some(pos)) => {
                    Some((c.family(&format!("embeddings[{i}].family"), fam)?, pos))
                }
                (None, None) => None,
                _ => {
                    return Err(c.err(
                        &format!("embeddings[{i}]"),
                        "family and m_positive go together",
                    ))
                }
            };
            Ok(EmbeddingRow {
                d: e.d,
                embedding: (e.a1, e.a2, e.a3),
                lemma26,
            })
        })
        .collect::<Result<Vec<_>, FixtureError>>()?;
    let conj = f
        .conjugations
        .iter()
        .map(|x| Conjugation {
            name: x.name.clone(),
            halves: x.halves,
            lambda_from: x.lambda_from,
            lambda_to: x.lambda_to,
            norm: x.norm,
            d: x.d,
        })
        .collect();
    Ok((rows, conj))
}

pub fn qseries(f: &QSeriesFile) -> QSeriesFixture {
    QSeriesFixture {
        forms: f
            .forms
            .iter()
            .map(|x| NamedForm {
                name: x.name.clone(),
                level: x.level,
                terms: x
                    .terms
                    .iter()
                    .map(|t| QuotientTerm {
                        scale: t.scale,
                        exponents: t.exponents.clone(),
                    })
                    .collect(),
                prefix: x.prefix.clone(),
                prefix_terms: x.prefix_terms,
                principal: x.principal.clone(),
                constant: x.constant,
            })
            .collect(),
        dual_order: f.dual_order,
        cusp_table: CuspTable {
            level: f.cusp_table.level,
            cusps: f.cusp_table.cusps.clone(),
            rows: f
                .cusp_table
                .rows
                .iter()
                .map(|r| (r.delta, r.orders.clone()))
                .collect(),
        },
    }
}

pub fn class_numbers(f: &ChowlaSelbergFile) -> Vec<(i64, u64)> {
    f.class_numbers.iter().map(|r| (r.d, r.h)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse() {
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(
            parse_rational(" 7 ").unwrap(),
            BigRational::from_integer(7.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integers_accept_numbers_and_strings() {
        let a: IntJson = serde_json::from_str("12").unwrap();
        let b: IntJson = serde_json::from_str("\"-123456789012345678901234567890\"").unwrap();
        assert_eq!(a.big().unwrap(), BigInt::from(12));
        assert_eq!(
            b.big().unwrap().to_string(),
            "-123456789012345678901234567890"
        );
    }
}
