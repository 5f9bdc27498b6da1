//! Suite selection, parallel execution and deterministic ordering.

use std::collections::BTreeMap;
use std::path::Path;

use clap::ValueEnum;
use cmperiods_core::numerics::{GammaTable, PrecisionContext};
use cmperiods_core::padic::GammaPTable;
use cmperiods_core::quadfield::omega_with;
use cmperiods_core::verify::{
    chowla_selberg_row, conjugation_check, delta_at_i_check, embedding_check, padic_suite,
    qseries_suite, run_section6, verify_axis_relation, verify_constants, verify_cross_consistency,
    verify_prop27, verify_prop27_special, verify_remark1_instances, verify_theorem2_row, Verifier,
    VerifyReport,
};
use rayon::prelude::*;

use crate::fixtures::{self, FixtureError, FixtureSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Theorem2,
    Prop27,
    Constants,
    Remark1,
    Section6,
    Padic,
    ChowlaSelberg,
    Qseries,
    Quaternion,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Theorem2,
        Suite::Prop27,
        Suite::Constants,
        Suite::Remark1,
        Suite::Section6,
        Suite::Padic,
        Suite::ChowlaSelberg,
        Suite::Qseries,
        Suite::Quaternion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem2 => "theorem2",
            Suite::Prop27 => "prop27",
            Suite::Constants => "constants",
            Suite::Remark1 => "remark1",
            Suite::Section6 => "section6",
            Suite::Padic => "padic",
            Suite::ChowlaSelberg => "chowla_selberg",
            Suite::Qseries => "qseries",
            Suite::Quaternion => "quaternion",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }

    fn numeric(self) -> bool {
        !matches!(self, Suite::Padic | Suite::Qseries)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: Suite,
    pub digits: u32,
    pub padic_precision: u32,
    /// Overrides the prime of the p-adic fixture.
    pub p: Option<u64>,
    pub jobs: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("setup failed: {0}")]
    Setup(String),
    #[error("duplicate case id {0}")]
    Duplicate(String),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), RunError> {
        if self.digits < 20 {
            return Err(RunError::Config(format!(
                "--digits must be at least 20, got {}",
                self.digits
            )));
        }
        if !(3..=8).contains(&self.padic_precision) {
            return Err(RunError::Config(format!(
                "--prec must lie in 3..=8, got {}",
                self.padic_precision
            )));
        }
        if self.jobs == 0 {
            return Err(RunError::Config("--jobs must be positive".into()));
        }
        Ok(())
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<VerifyReport> + Send + Sync + 'a>;

/// Builds a verifier with ω_d precomputed in parallel for every discriminant in the fixtures.
fn verifier(fx: &FixtureSet, digits: u32) -> Result<Verifier, RunError> {
    let ctx = PrecisionContext::new(digits).map_err(|e| RunError::Setup(e.to_string()))?;
    let table = GammaTable::new(&ctx).map_err(|e| RunError::Setup(e.to_string()))?;
    // invalid discriminants are left out here and reported by the case that needs them
    let omegas: BTreeMap<i64, _> = fx
        .discriminants()
        .par_iter()
        .filter_map(|&d| omega_with(&table, d).ok().map(|w| (d, w)))
        .collect();
    Ok(Verifier::from_parts(ctx, table, omegas))
}

/// Runs the configured suite and returns the case reports sorted by case_id.
pub fn run(dir: &Path, fx: &FixtureSet, cfg: &RunConfig) -> Result<Vec<VerifyReport>, RunError> {
    run_with(dir, fx, cfg, None)
}

/// Like [`run`], reusing `shared` (if given) instead of building a verifier at `cfg.digits`.
pub fn run_with(
    dir: &Path,
    fx: &FixtureSet,
    cfg: &RunConfig,
    shared: Option<&Verifier>,
) -> Result<Vec<VerifyReport>, RunError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| RunError::Setup(e.to_string()))?;
    pool.install(|| {
        let owned = match shared {
            None if cfg.suite.members().iter().any(|s| s.numeric()) => {
                Some(verifier(fx, cfg.digits)?)
            }
            _ => None,
        };
        run_in_pool(dir, fx, cfg, shared.or(owned.as_ref()))
    })
}

/// Verifier for `digits` with ω_d precomputed for every discriminant in `fx`.
pub fn shared_verifier(fx: &FixtureSet, digits: u32) -> Result<Verifier, RunError> {
    verifier(fx, digits)
}

fn run_in_pool(
    dir: &Path,
    fx: &FixtureSet,
    cfg: &RunConfig,
    v: Option<&Verifier>,
) -> Result<Vec<VerifyReport>, RunError> {
    let suites = cfg.suite.members();

    let t2 = fixtures::theorem2_rows(dir, &fx.theorem2)?;
    let specials = fixtures::special_rows(dir, &fx.prop27)?;
    let consts = fixtures::constants(dir, &fx.constants)?;
    let r1 = fixtures::remark1(dir, &fx.remark1)?;
    let s6 = fixtures::section6(dir, &fx.section6)?;
    let r4 = fixtures::remark4(dir, &fx.remark4)?;
    let (embeddings, conjugations) = fixtures::quaternion(dir, &fx.quaternion)?;
    let qs = fixtures::qseries(&fx.qseries);
    let cs = fixtures::class_numbers(&fx.chowla_selberg);
    // rows are expected to be checkable only at the prime the fixture was written for
    let strict = cfg.p.is_none_or(|p| p == fx.remark4.p);
    let padic_table = if suites.contains(&Suite::Padic) {
        let p = cfg.p.unwrap_or(fx.remark4.p);
        Some(GammaPTable::new(p, cfg.padic_precision).map_err(|e| RunError::Setup(e.to_string()))?)
    } else {
        None
    };

    let mut jobs: Vec<Job> = Vec::new();
    for s in &suites {
        match s {
            Suite::Theorem2 => {
                let v = v.expect("numeric suite");
                jobs.extend(
                    t2.iter()
                        .map(|row| Box::new(move || vec![verify_theorem2_row(v, row)]) as Job),
                );
            }
            Suite::Prop27 => {
                let v = v.expect("numeric suite");
                jobs.extend(t2.iter().map(|row| {
                    Box::new(move || {
                        vec![
                            verify_prop27(v, row),
                            verify_cross_consistency(v, row),
                            verify_axis_relation(v, row),
                        ]
                    }) as Job
                }));
                jobs.extend(
                    specials
                        .iter()
                        .map(|row| Box::new(move || vec![verify_prop27_special(v, row)]) as Job),
                );
            }
            Suite::Constants => {
                let v = v.expect("numeric suite");
                let consts = &consts;
                jobs.push(Box::new(move || verify_constants(v, consts)));
            }
            Suite::Remark1 => {
                let v = v.expect("numeric suite");
                jobs.extend(r1.iter().map(|inst| {
                    Box::new(move || verify_remark1_instances(v, std::slice::from_ref(inst))) as Job
                }));
            }
            Suite::Section6 => {
                let v = v.expect("numeric suite");
                let s6 = &s6;
                jobs.push(Box::new(move || run_section6(v, s6)));
            }
            Suite::Padic => {
                let table = padic_table.as_ref().expect("p-adic table");
                jobs.extend(r4.iter().map(|row| {
                    Box::new(move || padic_suite(std::slice::from_ref(row), table, strict)) as Job
                }));
            }
            Suite::ChowlaSelberg => {
                let v = v.expect("numeric suite");
                jobs.extend(
                    cs.iter()
                        .map(|&(d, h)| Box::new(move || chowla_selberg_row(v, d, h)) as Job),
                );
                jobs.push(Box::new(move || vec![delta_at_i_check(v)]));
            }
            Suite::Qseries => {
                let qs = &qs;
                jobs.push(Box::new(move || qseries_suite(qs)));
            }
            Suite::Quaternion => {
                let v = v.expect("numeric suite");
                jobs.extend(
                    embeddings
                        .iter()
                        .map(|row| Box::new(move || vec![embedding_check(v, row)]) as Job),
                );
                jobs.extend(
                    conjugations
                        .iter()
                        .map(|c| Box::new(move || vec![conjugation_check(v, c)]) as Job),
                );
            }
            Suite::All => unreachable!("expanded by members()"),
        }
    }

    let mut cases: Vec<VerifyReport> = jobs
        .par_iter()
        .map(|job| job())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    cases.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    if let Some(w) = cases.windows(2).find(|w| w[0].case_id == w[1].case_id) {
        return Err(RunError::Duplicate(w[0].case_id.clone()));
    }
    Ok(cases)
}
