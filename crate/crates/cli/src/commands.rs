//! Subcommand definitions and dispatch.
//!
//! Every JSON argument may be a file path, `-` for standard input, or the
//! document itself inline. Input that is not JSON is read as a text
//! expression.

use std::io::Read;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use holonomica::arith::{Field, GaussRat, Poly, Rat};
use holonomica::denef::{denef_witness, transcript, witness_verify};
use holonomica::holonomic::{
    annihilator_add, annihilator_mul, ode_to_recurrence, polynomial_annihilator, recurrence_to_ode,
    InitialData, Recurrence,
};
use holonomica::lacunary::{
    lacunarity_evidence, polynomiality_certificate, support_combine, CombineOp, EvidenceReport,
    DEFAULT_HORIZON,
};
use holonomica::pell::{
    pell_classify, pell_general_solution, pell_generate, pell_holonomic_witness, pell_verify_poly,
};
use holonomica::quad::discriminant;
use holonomica::series::{series_of_quad, series_w, Branch};
use serde_json::{json, Value};

use crate::error::{CliError, Exit};
use crate::json::{self, Reader};
use crate::text;

/// Default series truncation order.
pub const DEFAULT_ORDER: usize = 120;
/// Default cap on polynomial degree, overridden by `HOLONOMICA_MAX_DEGREE`.
pub const DEFAULT_MAX_DEGREE: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "holonomica",
    version,
    about = "Exact holonomic, Pell and lacunarity computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polynomial Pell equation x^2 - (z^2-1)y^2 = 1.
    #[command(subcommand)]
    Pell(PellCmd),
    /// Holonomic annihilators and recurrences.
    #[command(subcommand)]
    Holo(HoloCmd),
    /// Support counting and polynomiality certificates.
    #[command(subcommand)]
    Lac(LacCmd),
    /// Witnesses for the definition of the integers.
    #[command(subcommand)]
    Denef(DenefCmd),
    /// Truncated power series.
    #[command(subcommand)]
    Series(SeriesCmd),
}

#[derive(Debug, Subcommand)]
pub enum PellCmd {
    /// The solution (x_n, y_n); with --to, every n in N..=M.
    #[command(allow_negative_numbers = true)]
    Gen {
        n: i64,
        #[arg(long)]
        to: Option<i64>,
    },
    /// Check the Pell identity for F and G, or for one {"x", "y"} document.
    Verify { f: String, g: Option<String> },
    /// Find (epsilon, n) with (F, G) = (epsilon*x_n, y_n).
    Classify { f: String, g: Option<String> },
    /// Series of the entire solution epsilon*(z+w)^n*exp(w*h).
    #[command(allow_negative_numbers = true)]
    Entire {
        eps: i8,
        n: i64,
        h: String,
        t: Option<usize>,
    },
    /// Annihilating ODEs of f and g for the entire solution.
    #[command(allow_negative_numbers = true)]
    WitnessOde { eps: i8, n: i64, h: String },
}

#[derive(Debug, Subcommand)]
pub enum HoloCmd {
    /// ODE annihilator to recurrence.
    Ode2rec { ode: String },
    /// Recurrence to ODE annihilator.
    Rec2ode { rec: String },
    /// Annihilator of f + g.
    Add { a: String, b: String },
    /// Annihilator of f * g.
    Mul { a: String, b: String },
    /// Check that ODE annihilates SERIES up to its truncation; exit 1 if not.
    Check {
        ode: String,
        series: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Terms a_0 .. a_N of the recurrence from initial data.
    Unroll { rec: String, init: String, n: usize },
    /// Annihilator of a polynomial.
    Poly { p: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OpArg {
    Add,
    Mul,
}

#[derive(Debug, Subcommand)]
pub enum LacCmd {
    /// Number of support exponents at most X.
    Count { profile: String, x: u64 },
    /// Support of P+Q or P*Q with the counting inequality at every exponent.
    Combine {
        p: String,
        q: String,
        #[arg(long, value_enum, default_value = "add")]
        op: OpArg,
    },
    /// Counts against x^eps on a grid.
    Evidence {
        profile: String,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        grid: Vec<u64>,
    },
    /// Polynomiality certificate for the sequence defined by REC and INIT.
    Certify {
        rec: String,
        init: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum DenefCmd {
    /// Witness for t with its proof transcript.
    #[command(allow_negative_numbers = true)]
    Witness { t: i64 },
    /// Re-check a witness document; exit 1 if rejected.
    Verify { file: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
pub enum SeriesCmd {
    /// exp(S) for S with zero constant term.
    Exp {
        s: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// The branch of sqrt(z^2-1) with value i at 0.
    W {
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Product of two series.
    Mul {
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Sum of two series.
    Add {
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Expansion of a + b*w on one branch.
    Quad {
        u: String,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
}

/// Output document, exit status and lines for standard error.
#[derive(Debug)]
pub struct Outcome {
    pub doc: Value,
    pub exit: Exit,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome {
            doc,
            exit: Exit::Success,
            diagnostics: Vec::new(),
        }
    }

    fn verdict(doc: Value, holds: bool, reasons: Vec<String>) -> Self {
        if holds {
            Outcome::ok(doc)
        } else {
            Outcome {
                doc,
                exit: Exit::VerifiedFalse,
                diagnostics: reasons,
            }
        }
    }
}

fn max_degree() -> Result<usize, CliError> {
    match std::env::var("HOLONOMICA_MAX_DEGREE") {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::malformed(format!(
                "HOLONOMICA_MAX_DEGREE must be a nonnegative integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

/// Reads an argument as a file, standard input or inline content.
pub fn load(arg: &str) -> Result<Value, CliError> {
    let content = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg)?
    } else {
        arg.to_owned()
    };
    let trimmed = content.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('[') || trimmed.starts_with('"') {
        Ok(serde_json::from_str(trimmed)?)
    } else {
        Ok(Value::String(trimmed.to_owned()))
    }
}

pub fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let r = Reader {
        max_degree: max_degree()?,
    };
    match cli.command {
        Command::Pell(cmd) => pell(r, cmd),
        Command::Holo(cmd) => holo(r, cmd),
        Command::Lac(cmd) => lac(r, cmd),
        Command::Denef(cmd) => denef(r, cmd),
        Command::Series(cmd) => series(r, cmd),
    }
}

fn check_pell_index(r: Reader, n: i64) -> Result<(), CliError> {
    if n.unsigned_abs() > r.max_degree as u64 {
        return Err(CliError::precondition(format!(
            "|n| = {} exceeds HOLONOMICA_MAX_DEGREE = {}",
            n.unsigned_abs(),
            r.max_degree
        )));
    }
    Ok(())
}

fn pell_args(r: Reader, f: &str, g: Option<&str>) -> Result<(Poly, Poly), CliError> {
    match g {
        Some(g) => Ok((r.poly(&load(f)?, "z")?, r.poly(&load(g)?, "z")?)),
        None => r.pell_pair(&load(f)?),
    }
}

fn pell(r: Reader, cmd: PellCmd) -> Result<Outcome, CliError> {
    match cmd {
        PellCmd::Gen { n, to: None } => {
            check_pell_index(r, n)?;
            Ok(Outcome::ok(json::pell_witness_json(&pell_generate(n))))
        }
        PellCmd::Gen { n, to: Some(m) } => {
            check_pell_index(r, n)?;
            check_pell_index(r, m)?;
            let (lo, hi) = (n.min(m), n.max(m));
            let docs: Vec<Value> = (lo..=hi)
                .map(|k| json::pell_witness_json(&pell_generate(k)))
                .collect();
            Ok(Outcome::ok(Value::Array(docs)))
        }
        PellCmd::Verify { f, g } => {
            let (x, y) = pell_args(r, &f, g.as_deref())?;
            let ok = pell_verify_poly(&x, &y);
            let residual = &(&(&x * &x) - &(&discriminant() * &(&y * &y))) - &Poly::one();
            let doc = json!({ "ok": ok, "residual": json::poly_json(&residual, "z") });
            let reason = format!("x^2 - (z^2-1)*y^2 - 1 = {residual}, not 0");
            Ok(Outcome::verdict(doc, ok, vec![reason]))
        }
        PellCmd::Classify { f, g } => {
            let (x, y) = pell_args(r, &f, g.as_deref())?;
            let (epsilon, n) = pell_classify(&x, &y)?;
            Ok(Outcome::ok(json!({ "epsilon": epsilon, "n": n })))
        }
        PellCmd::Entire { eps, n, h, t } => {
            check_pell_index(r, n)?;
            let h = r.poly(&load(&h)?, "z")?;
            let d = pell_general_solution(eps, n, &h, t.unwrap_or(DEFAULT_ORDER))?;
            Ok(Outcome::ok(json::entire_json(&d)))
        }
        PellCmd::WitnessOde { eps, n, h } => {
            check_pell_index(r, n)?;
            let h = r.poly(&load(&h)?, "z")?;
            let (f, g) = pell_holonomic_witness(eps, n, &h)?;
            Ok(Outcome::ok(
                json!({ "f": json::ode_json(&f), "g": json::ode_json(&g) }),
            ))
        }
    }
}

/// Initial data over the rationals when possible.
enum Init {
    Real(InitialData<Rat>),
    Complex(InitialData<GaussRat>),
}

fn split_initial(init: InitialData<GaussRat>) -> Init {
    let real = init
        .values
        .iter()
        .chain(init.supplied.values())
        .all(GaussRat::is_real);
    if !real {
        return Init::Complex(init);
    }
    let mut out = InitialData::new(init.values.into_iter().map(|c| c.re).collect());
    for (k, v) in init.supplied {
        out.supplied.insert(k, v.re);
    }
    Init::Real(out)
}

fn to_gauss(rec: &Recurrence) -> Recurrence<GaussRat> {
    rec.map_coeffs(Field::to_gauss)
}

fn holo(r: Reader, cmd: HoloCmd) -> Result<Outcome, CliError> {
    match cmd {
        HoloCmd::Ode2rec { ode } => Ok(Outcome::ok(json::recurrence_json(&ode_to_recurrence(
            &r.ode(&load(&ode)?)?,
        )))),
        HoloCmd::Rec2ode { rec } => Ok(Outcome::ok(json::ode_json(&recurrence_to_ode(
            &r.recurrence(&load(&rec)?)?,
        )))),
        HoloCmd::Add { a, b } => {
            let out = annihilator_add(&r.ode(&load(&a)?)?, &r.ode(&load(&b)?)?);
            Ok(Outcome::ok(json::ode_json(&out)))
        }
        HoloCmd::Mul { a, b } => {
            let out = annihilator_mul(&r.ode(&load(&a)?)?, &r.ode(&load(&b)?)?);
            Ok(Outcome::ok(json::ode_json(&out)))
        }
        HoloCmd::Check { ode, series, order } => {
            let ode = r.ode(&load(&ode)?)?;
            let s = r.series(&load(&series)?, order)?;
            let check = ode.check_series(&s)?;
            let reason = match check.first_mismatch {
                Some(i) => format!("coefficient {i} of L(f) is nonzero"),
                None => String::new(),
            };
            Ok(Outcome::verdict(
                json::check_json(&check),
                check.passed(),
                vec![reason],
            ))
        }
        HoloCmd::Unroll { rec, init, n } => {
            let rec = r.recurrence(&load(&rec)?)?;
            let doc = match split_initial(r.initial(&load(&init)?)?) {
                Init::Real(i) => json::values_json(&rec.unroll(&i, n)?),
                Init::Complex(i) => json::values_json(&to_gauss(&rec).unroll(&i, n)?),
            };
            Ok(Outcome::ok(doc))
        }
        HoloCmd::Poly { p } => {
            let p = r.gauss_poly(&load(&p)?, "z")?;
            let (re, im) = p.re_im();
            let doc = if im.is_zero() {
                json::ode_json(&polynomial_annihilator(&re))
            } else {
                json::ode_json(&polynomial_annihilator(&p))
            };
            Ok(Outcome::ok(doc))
        }
    }
}

fn lac(r: Reader, cmd: LacCmd) -> Result<Outcome, CliError> {
    match cmd {
        LacCmd::Count { profile, x } => {
            let p = r.profile(&load(&profile)?)?;
            Ok(Outcome::ok(json!({ "x": x, "count": p.gap_count(x)? })))
        }
        LacCmd::Combine { p, q, op } => {
            let p = r.profile(&load(&p)?)?;
            let q = r.profile(&load(&q)?)?;
            let op = match op {
                OpArg::Add => CombineOp::Add,
                OpArg::Mul => CombineOp::Mul,
            };
            let (combined, report) = support_combine(&p, &q, op);
            let holds = report.holds();
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "x": c.x, "combined": c.combined, "bound": c.bound }))
                .collect();
            let doc = json!({ "profile": json::profile_json(&combined), "holds": holds, "checks": checks });
            Ok(Outcome::verdict(
                doc,
                holds,
                vec!["counting inequality fails".to_owned()],
            ))
        }
        LacCmd::Evidence { profile, eps, grid } => {
            let p = r.profile(&load(&profile)?)?;
            let eps = text::parse_rat(&eps)?;
            let report = lacunarity_evidence(&p, &eps, &grid)?;
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|row| json!({ "x": row.x, "count": row.count, "ratio": row.ratio, "small": row.small }))
                .collect();
            Ok(Outcome::ok(json!({
                "label": EvidenceReport::LABEL,
                "eps": report.eps.to_string(),
                "rows": rows,
                "monotone": report.monotone,
            })))
        }
        LacCmd::Certify { rec, init, horizon } => {
            if horizon > r.max_degree {
                return Err(CliError::precondition(
                    "horizon exceeds HOLONOMICA_MAX_DEGREE",
                ));
            }
            let rec = r.recurrence(&load(&rec)?)?;
            let cert = match split_initial(r.initial(&load(&init)?)?) {
                Init::Real(i) => polynomiality_certificate(&rec, &i, horizon)?,
                Init::Complex(i) => polynomiality_certificate(&to_gauss(&rec), &i, horizon)?,
            };
            Ok(Outcome::ok(json::certificate_json(&cert)))
        }
    }
}

fn denef(r: Reader, cmd: DenefCmd) -> Result<Outcome, CliError> {
    match cmd {
        DenefCmd::Witness { t } => {
            check_pell_index(r, t)?;
            let w = denef_witness(t);
            Ok(Outcome::ok(json::denef_json(&w, &transcript(&w))))
        }
        DenefCmd::Verify { file } => {
            let w = r.denef_witness(&load(&file)?)?;
            let report = witness_verify(&w);
            let reasons = report.reasons.iter().map(ToString::to_string).collect();
            let doc = json::verify_report_json(&report, &transcript(&w));
            Ok(Outcome::verdict(doc, report.ok, reasons))
        }
    }
}

fn series(r: Reader, cmd: SeriesCmd) -> Result<Outcome, CliError> {
    let s = match cmd {
        SeriesCmd::Exp { s, order } => r.series(&load(&s)?, order)?.exp()?,
        SeriesCmd::W { order } => series_w(order),
        SeriesCmd::Mul { a, b, order } => r
            .series(&load(&a)?, order)?
            .mul(&r.series(&load(&b)?, order)?),
        SeriesCmd::Add { a, b, order } => r
            .series(&load(&a)?, order)?
            .add(&r.series(&load(&b)?, order)?),
        SeriesCmd::Quad { u, branch, order } => {
            let branch = match branch {
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            };
            series_of_quad(&r.quad(&load(&u)?)?, branch, order)?
        }
    };
    Ok(Outcome::ok(json::series_json(&s)))
}
