//! Command-line frontend: parse a curve specification, run the
//! pipeline, and emit deterministic JSON. Timings go to stderr only.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use vdgv::addpoly::AdditivePoly;
use vdgv::curve::Curve;
use vdgv::error::Error;
use vdgv::gf::{FieldCtx, FieldTower};
use vdgv::heis::maximal_isotropic_rational;
use vdgv::lfunc::count_points_jobs;
use vdgv::quotient::{closed_form_ca, iterate_to_ca};
use vdgv::report::{
    analysis_json, analyze, builtin_grid, curve_json, cyc_json, fe_json, suites_json,
    verify_curve, SuiteStatus, SCHEMA,
};

const EXIT_INVALID: u8 = 2;
const EXIT_ASSUMPTIONS: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_SIZE_GUARD: u8 = 5;

#[derive(Parser)]
#[command(
    name = "vdgv",
    about = "Exact L-polynomials, Gauss sums and supersingularity verdicts \
             for curves y^p - y = x R(x) with R additive"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CurveArgs {
    /// Prime characteristic p0
    #[arg(long)]
    p0: u64,
    /// q = p0^f
    #[arg(long)]
    f: usize,
    /// Artin-Schreier degree p (a power of p0 with q a power of p)
    #[arg(long)]
    p: u128,
    /// p-coefficients a_0;a_1;...;a_e of R, each a comma-separated
    /// F_p0-coordinate vector (a plain integer for prime fields)
    #[arg(long = "R", allow_hyphen_values = true)]
    r: String,
    /// Override for F_A: p0-coefficients in the same syntax
    #[arg(long = "FR", allow_hyphen_values = true)]
    fr: Option<String>,
    /// Additive polynomial delta over F_p for the quotient curve
    /// delta(y) = x R(x): p0-coefficients in the same syntax
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Verdict horizon (defaults to 4 p0)
    #[arg(long, default_value_t = 0)]
    max_n: usize,
    /// Lift the size guard
    #[arg(long)]
    force: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for point counting
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full pipeline: assumptions, quotient chain, tau table, L, verdicts
    Analyze(CurveArgs),
    /// Point count N_n over F_{q^n}
    Count {
        #[command(flatten)]
        curve: CurveArgs,
        n: usize,
    },
    /// Run every invariant suite on the curve (or --grid small)
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Tau table only
    Tau(CurveArgs),
    /// Quotient chain only
    Quotient(CurveArgs),
}

struct Parsed {
    curve: Curve,
    fa: Option<AdditivePoly>,
    delta: Option<AdditivePoly>,
    max_n: usize,
    jobs: usize,
}

fn parse_element(ctx: &FieldCtx, s: &str) -> Result<vdgv::gf::FieldElement, Error> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::InvalidInput(format!("bad coefficient '{s}': {e}")))?;
    if coords.len() > ctx.deg() {
        return Err(Error::InvalidInput(format!(
            "coefficient '{s}' has {} coordinates, field degree is {}",
            coords.len(),
            ctx.deg()
        )));
    }
    ctx.from_coords(&coords)
}

fn parse_coeff_list(ctx: &FieldCtx, s: &str) -> Result<Vec<vdgv::gf::FieldElement>, Error> {
    s.split(';').map(|t| parse_element(ctx, t)).collect()
}

fn parse_args(a: &CurveArgs) -> Result<Parsed, Error> {
    let tower = FieldTower::new(a.p0)?;
    if a.force {
        tower.set_size_guard(u128::MAX);
    }
    if a.f == 0 {
        return Err(Error::InvalidInput("f must be positive".into()));
    }
    let mut kappa = 0usize;
    let mut v = a.p;
    while v > 1 && v % a.p0 as u128 == 0 {
        v /= a.p0 as u128;
        kappa += 1;
    }
    if v != 1 || kappa == 0 {
        return Err(Error::InvalidInput(format!(
            "p = {} is not a positive power of p0 = {}",
            a.p, a.p0
        )));
    }
    let fq = tower.field(a.f)?;
    let r_coeffs = parse_coeff_list(&fq, &a.r)?;
    let r = AdditivePoly::from_p_coeffs(&fq, kappa, &r_coeffs);
    let curve = Curve::new(&tower, a.f, kappa, r)?;
    let fa = a
        .fr
        .as_deref()
        .map(|s| {
            parse_coeff_list(&fq, s).map(|cs| AdditivePoly::from_p_coeffs(&fq, kappa, &cs))
        })
        .transpose()?;
    let delta = a
        .delta
        .as_deref()
        .map(|s| {
            let fp = tower.field(kappa)?;
            parse_coeff_list(&fp, s).map(|cs| AdditivePoly::from_p0_coeffs(&fp, cs))
        })
        .transpose()?;
    let max_n = if a.max_n == 0 { 4 * a.p0 as usize } else { a.max_n };
    Ok(Parsed { curve, fa, delta, max_n, jobs: a.jobs.max(1) })
}

fn emit(v: &Value, out: Option<&PathBuf>) -> Result<(), Error> {
    let mut body = serde_json::to_string_pretty(v)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    body.push('\n');
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::SizeGuardExceeded(..) => EXIT_SIZE_GUARD,
        Error::HypothesisViolated(..)
        | Error::NoRationalMaximalIsotropic
        | Error::NoRationalLift => EXIT_ASSUMPTIONS,
        Error::OracleMismatch(..) | Error::Internal(..) | Error::NormMismatch(..) => {
            EXIT_MISMATCH
        }
        _ => EXIT_INVALID,
    }
}

fn tau_json(p: &Parsed) -> Result<Value, Error> {
    let c = &p.curve;
    let a = analyze(c, p.fa.as_ref(), None, p.max_n, p.jobs)?;
    let taus: Vec<Value> = a
        .taus
        .iter()
        .map(|e| {
            json!({
                "psi": fe_json(&e.psi.c),
                "xi_exponents": e.xi.zeta_exponents,
                "tau": cyc_json(&e.tau),
                "eta": e.eta.as_ref().map(fe_json),
            })
        })
        .collect();
    Ok(json!({ "schema": SCHEMA, "curve": curve_json(c), "taus": taus }))
}

fn quotient_json(p: &Parsed) -> Result<Value, Error> {
    let c = &p.curve;
    if c.p0() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let iso = match &p.fa {
        Some(fa) => vdgv::heis::isotropic_from_fa(c, fa)?,
        None => maximal_isotropic_rational(c)?,
    };
    let chain = iterate_to_ca(c, &iso)?;
    let cmp = closed_form_ca(c, &iso, &chain)?;
    Ok(json!({
        "schema": SCHEMA,
        "curve": curve_json(c),
        "isotropic_basis": iso.basis.iter().map(fe_json).collect::<Vec<_>>(),
        "c_a": fe_json(&chain.c_a),
        "lemma_value": fe_json(&cmp.lemma_value),
        "lemma_agrees": cmp.lemma_agrees,
        "display_value": fe_json(&cmp.display_value),
        "display_agrees": cmp.display_agrees,
        "steps": chain.steps.iter().map(|s| json!({
            "a": fe_json(&s.a),
            "b": fe_json(&s.b),
            "r1_p0_coeffs": s.r1.p0_coeffs().iter().map(fe_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    }))
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze(args) => {
            let p = parse_args(&args)?;
            let t0 = Instant::now();
            let a = analyze(&p.curve, p.fa.as_ref(), p.delta.as_ref(), p.max_n, p.jobs)?;
            eprintln!("analyze: {:?}", t0.elapsed());
            let v = analysis_json(&p.curve, &a, p.max_n);
            emit(&v, args.out.as_ref())
        }
        Cmd::Count { curve: args, n } => {
            let p = parse_args(&args)?;
            let t0 = Instant::now();
            let nn = count_points_jobs(&p.curve, n, p.jobs)?;
            eprintln!("count n={n}: {:?}", t0.elapsed());
            let v = json!({
                "schema": SCHEMA,
                "curve": curve_json(&p.curve),
                "n": n,
                "N": nn as u64,
            });
            emit(&v, args.out.as_ref())
        }
        Cmd::Verify { curve: args, grid } => {
            let reports: Vec<(String, Vec<vdgv::report::SuiteResult>)> = match grid.as_deref() {
                Some("small") => builtin_grid()?
                    .into_iter()
                    .map(|(name, c)| {
                        let r = verify_curve(&c, 4 * c.p0() as usize, args.jobs.max(1));
                        (name, r)
                    })
                    .collect(),
                Some(other) => {
                    return Err(Error::InvalidInput(format!("unknown grid '{other}'")))
                }
                None => {
                    let p = parse_args(&args)?;
                    let r = verify_curve(&p.curve, p.max_n, p.jobs);
                    vec![("curve".to_string(), r)]
                }
            };
            let any_fail = reports
                .iter()
                .any(|(_, rs)| rs.iter().any(|r| matches!(r.status, SuiteStatus::Fail(_))));
            let v = json!({
                "schema": SCHEMA,
                "reports": reports.iter().map(|(name, rs)| json!({
                    "case": name,
                    "suites": suites_json(rs),
                })).collect::<Vec<_>>(),
            });
            emit(&v, args.out.as_ref())?;
            if any_fail {
                return Err(Error::OracleMismatch("verification suites failed".into()));
            }
            Ok(())
        }
        Cmd::Tau(args) => {
            let p = parse_args(&args)?;
            let v = tau_json(&p)?;
            emit(&v, args.out.as_ref())
        }
        Cmd::Quotient(args) => {
            let p = parse_args(&args)?;
            let v = quotient_json(&p)?;
            emit(&v, args.out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
