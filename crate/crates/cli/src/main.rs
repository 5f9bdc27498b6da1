use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cmperiods::{default_fixtures_dir, run, FixtureSet, Report, RunConfig, Suite};
use cmperiods_core::numerics::{
    hyp_pfq, parse_decimal_ratio, BigReal, HypArg, HypParams, PrecisionContext,
};
use cmperiods_core::padic::gamma_p;
use cmperiods_core::qseries::{eta_quotient_expansion, EtaQuotient};
use cmperiods_core::quadfield::{big_omega, omega};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Parser)]
#[command(
    name = "cmperiods",
    version,
    about = "Verify CM-value identities of hypergeometric functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite against the fixtures.
    Verify(VerifyArgs),
    /// Evaluate a hypergeometric series pFq at a point inside the unit disc.
    Eval(EvalArgs),
    /// Print the Chowla–Selberg period ω_d (and Ω_d).
    Omega(OmegaArgs),
    /// Print the p-adic Gamma value Γ_p(x) modulo p^prec.
    PadicGamma(PadicGammaArgs),
    /// Print the q-expansion prefix of an eta quotient.
    ExpandEta(ExpandEtaArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Working precision in decimal digits (at least 20).
    #[arg(long, default_value_t = 40)]
    digits: u32,
    /// p-adic precision K, checking congruences mod p^K (3..=8).
    #[arg(long = "prec", default_value_t = 6)]
    padic_precision: u32,
    /// Prime for the p-adic suite (defaults to the fixture's).
    #[arg(long)]
    p: Option<u64>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long, env = "CMP_FIXTURES")]
    fixtures: Option<PathBuf>,
    /// Only print the summary line.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Series type such as 2f1 or 3f2.
    kind: String,
    /// Comma-separated rational parameters: numerator parameters, then denominator ones.
    #[arg(long, allow_hyphen_values = true)]
    params: String,
    /// Argument z as a fraction or decimal.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
    #[arg(long, default_value_t = 40)]
    digits: u32,
}

#[derive(Args)]
struct OmegaArgs {
    /// Negative fundamental discriminant.
    #[arg(allow_hyphen_values = true)]
    d: i64,
    #[arg(long, default_value_t = 40)]
    digits: u32,
}

#[derive(Args)]
struct PadicGammaArgs {
    /// Rational argument in Z_p.
    #[arg(allow_hyphen_values = true)]
    x: String,
    #[arg(long, default_value_t = 7)]
    p: u64,
    #[arg(long, default_value_t = 6)]
    prec: u32,
}

#[derive(Args)]
struct ExpandEtaArgs {
    #[arg(long)]
    level: u64,
    /// Comma-separated δ:r pairs, e.g. 1:1,2:3,6:2,3:-1,4:-1,12:-3.
    #[arg(long, allow_hyphen_values = true)]
    exponents: String,
    /// Number of coefficients to print.
    #[arg(long, default_value_t = 8)]
    terms: usize,
}

fn rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .with_context(|| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d
            .trim()
            .parse()
            .with_context(|| format!("bad denominator in {s:?}"))?;
        if d == BigInt::from(0) {
            bail!("zero denominator in {s:?}");
        }
        return Ok(BigRational::new(n, d));
    }
    parse_decimal_ratio(s).map_err(|e| anyhow!("{s:?}: {e}"))
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let cfg = RunConfig {
        suite: a.suite,
        digits: a.digits,
        padic_precision: a.padic_precision,
        p: a.p,
        jobs: a.jobs.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        }),
    };
    cfg.validate()?;
    let dir = a.fixtures.unwrap_or_else(default_fixtures_dir);
    let fx = FixtureSet::load(&dir)?;
    let start = Instant::now();
    let cases = run(&dir, &fx, &cfg)?;
    let report = Report::new(
        a.suite.name(),
        a.digits,
        &cases,
        start.elapsed().as_millis(),
    );
    if let Some(path) = &a.json_out {
        std::fs::write(path, report.to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut out = io::stdout().lock();
    if a.quiet {
        let (pass, fail, skip) = report.counts();
        writeln!(
            out,
            "suite {}: {pass} passed, {fail} failed, {skip} skipped",
            report.suite
        )?;
    } else {
        report.print_human(&mut out)?;
    }
    Ok(if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn eval(a: EvalArgs) -> Result<ExitCode> {
    let kind = a.kind.to_ascii_lowercase();
    let (p, q) = kind
        .split_once('f')
        .and_then(|(p, q)| Some((p.parse::<usize>().ok()?, q.parse::<usize>().ok()?)))
        .ok_or_else(|| anyhow!("series type must look like 2f1, got {:?}", a.kind))?;
    let params: Vec<BigRational> = a.params.split(',').map(rational).collect::<Result<_>>()?;
    if params.len() != p + q {
        bail!(
            "{} expects {} parameters, got {}",
            a.kind,
            p + q,
            params.len()
        );
    }
    if a.digits < 10 {
        bail!("--digits must be at least 10");
    }
    let z = rational(&a.at)?;
    let ctx = PrecisionContext::new(a.digits)?;
    let hp = HypParams::new(
        params[..p].to_vec(),
        params[p..].to_vec(),
        HypArg::Rational(z),
    );
    let v = hyp_pfq(&hp, &ctx)?;
    println!("value {}", v.value.to_decimal(a.digits));
    println!("terms {}", v.terms);
    Ok(ExitCode::SUCCESS)
}

fn omega_cmd(a: OmegaArgs) -> Result<ExitCode> {
    let ctx = PrecisionContext::new(a.digits)?;
    let w: BigReal = omega(a.d, &ctx)?;
    let big = big_omega(a.d, &ctx)?;
    println!("omega {}", w.to_decimal(a.digits));
    println!("Omega {}", big.to_decimal(a.digits));
    Ok(ExitCode::SUCCESS)
}

fn padic_gamma(a: PadicGammaArgs) -> Result<ExitCode> {
    if !(1..=12).contains(&a.prec) {
        bail!("--prec must lie in 1..=12");
    }
    let x = rational(&a.x)?;
    let g = gamma_p(&x, a.p, a.prec)?;
    println!("{g}");
    Ok(ExitCode::SUCCESS)
}

fn expand_eta(a: ExpandEtaArgs) -> Result<ExitCode> {
    let exps: Vec<(u64, i64)> = a
        .exponents
        .split(',')
        .map(|pair| {
            let (d, r) = pair
                .split_once(':')
                .ok_or_else(|| anyhow!("expected δ:r, got {pair:?}"))?;
            Ok((d.trim().parse()?, r.trim().parse()?))
        })
        .collect::<Result<_>>()?;
    let eq = EtaQuotient::new(a.level, &exps)?;
    let s = eta_quotient_expansion(&eq, a.terms + 4);
    println!("{}", s.format_prefix(a.terms));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Eval(a) => eval(a),
        Command::Omega(a) => omega_cmd(a),
        Command::PadicGamma(a) => padic_gamma(a),
        Command::ExpandEta(a) => expand_eta(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
