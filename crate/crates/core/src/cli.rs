//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cases;
use crate::error::{Error, Result};
use crate::input::{self, Input};
use crate::ncpoly::{self, RewriteSystem};
use crate::orders;
use crate::rational::{self, Rat};
use crate::toric::{self, CartierFunctional, ConePair, ToricDivisor};
use crate::valmat;

/// Exit status for a negative verdict where a positive one was asked for.
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "logcentre", version, about = "Exact checks for orders, toric log pairs and presented algebras")]
struct Cli {
    /// Also write the machine-readable result to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<std::path::PathBuf>,
    /// Format of the result printed on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Valuation matrices and discriminants of orders.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Affine toric pairs.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Presented algebras.
    #[command(subcommand)]
    Ncpoly(NcpolyCmd),
    /// Built-in case studies.
    #[command(subcommand)]
    Examples(ExamplesCmd),
}

#[derive(Subcommand, Debug)]
enum OrderCmd {
    /// Centre exponent of the i-th power of the dualizing module.
    OmegaCenter {
        #[arg(long)]
        e: usize,
        #[arg(long)]
        i: u32,
    },
    /// Discriminant divisor of an order.
    Discriminant {
        /// FILE#name; FILE may be `builtin`.
        reference: String,
    },
    /// Graded valuations of the index-m cover at a prime of index e.
    CoverCenter {
        #[arg(long)]
        e: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// FILE#name; FILE may be `builtin`.
    reference: String,
}

#[derive(Args, Debug)]
struct DivisorArgs {
    /// FILE#name; FILE may be `builtin`.
    reference: String,
    /// `K`, `K+D`, or comma-separated coefficients `n1,n2,...`.
    #[arg(long, default_value = "K+D", allow_hyphen_values = true)]
    divisor: String,
}

#[derive(Subcommand, Debug)]
enum ToricCmd {
    /// Functional u with <u, v_i> = -n_i, or `none`.
    Qcartier(DivisorArgs),
    /// Cartier index of a divisor.
    Index(DivisorArgs),
    /// klt verdict for K + D.
    Klt(PairArgs),
    /// Canonical verdict for the cone (boundary ignored).
    Canonical(PairArgs),
    /// Index-one cover of K + D.
    Cover(PairArgs),
    /// Hilbert basis of the dual cone.
    DualGens(PairArgs),
    /// Hilbert basis of the cone.
    Hilbert(PairArgs),
}

#[derive(Subcommand, Debug)]
enum NcpolyCmd {
    /// Normal form of an expression.
    NormalForm { reference: String, expr: String },
    /// Whether an expression commutes with every generator.
    Central { reference: String, expr: String },
    /// Whether two expressions agree in the algebra.
    Identity { reference: String, lhs: String, rhs: String },
}

#[derive(Subcommand, Debug)]
enum ExamplesCmd {
    /// Run a case study.
    Run { name: String },
    /// List case studies.
    List,
}

struct Outcome {
    text: String,
    json: String,
    status: i32,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: impl Serialize) -> Self {
        Self::verdict(text, json, true)
    }

    fn verdict(text: impl Into<String>, json: impl Serialize, positive: bool) -> Self {
        let mut json = serde_json::to_string_pretty(&json).expect("results serialize");
        json.push('\n');
        Self { text: text.into(), json, status: if positive { 0 } else { EXIT_NEGATIVE } }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_status();
        }
    };
    let stdout = match cli.format {
        Format::Text => &outcome.text,
        Format::Json => &outcome.json,
    };
    let mut lock = std::io::stdout().lock();
    let _ = writeln!(lock, "{}", stdout.trim_end());
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &outcome.json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    outcome.status
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Order(c) => order(c),
        Command::Toric(c) => toric_cmd(c),
        Command::Ncpoly(c) => ncpoly_cmd(c),
        Command::Examples(c) => examples(c),
    }
}

fn load(reference: &str) -> Result<(Input, Option<String>)> {
    let (file, name) = input::split_reference(reference);
    Ok((input::load(file)?, name.map(str::to_string)))
}

fn order(cmd: &OrderCmd) -> Result<Outcome> {
    match cmd {
        OrderCmd::OmegaCenter { e, i } => {
            let z = valmat::centralizer(&valmat::omega_power(*e, *i)?)?;
            Ok(Outcome::ok(z.to_string(), json!({ "e": e, "i": i, "centralizer": z.finite() })))
        }
        OrderCmd::Discriminant { reference } => {
            let (input, name) = load(reference)?;
            let spec = input.order(name.as_deref())?;
            let d = orders::discriminant(spec);
            let terms: serde_json::Map<String, Value> =
                d.terms().map(|(p, c)| (p.to_string(), Value::String(c.to_string()))).collect();
            Ok(Outcome::ok(d.to_string(), json!({ "order": spec.name(), "discriminant": terms, "index": spec.index() })))
        }
        OrderCmd::CoverCenter { e, m } => {
            if *e == 0 || *m == 0 {
                return Err(Error::InvalidArgument("e and m must be positive".into()));
            }
            let check = orders::check_cover_centre(*e, *m)?;
            if !check.holds() {
                return Err(Error::PreconditionViolation(format!("descriptions disagree: {check:?}")));
            }
            let text = check.closed_form.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            Ok(Outcome::ok(text, json!({ "e": e, "m": m, "valuations": check.closed_form })))
        }
    }
}

fn parse_divisor(spec: &str, pair: &ConePair) -> Result<ToricDivisor> {
    let n = pair.cone().rays().len();
    match spec.replace(' ', "").as_str() {
        "K" => Ok(ToricDivisor::canonical(n)),
        "K+D" => Ok(pair.log_canonical_divisor()),
        list => {
            let coeffs = list.split(',').map(rational::parse).collect::<Result<Vec<Rat>>>()?;
            if coeffs.len() != n {
                return Err(Error::Parse(format!("divisor has {} coefficients for {n} rays", coeffs.len())));
            }
            Ok(ToricDivisor(coeffs))
        }
    }
}

fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn functional_json(u: &Option<CartierFunctional>) -> Value {
    u.as_ref().map_or(Value::Null, |u| rats_json(&u.0))
}

fn points_text(points: &[Vec<i64>]) -> String {
    points.iter().map(|p| rational::fmt_int_vec(p)).collect::<Vec<_>>().join("\n")
}

fn toric_cmd(cmd: &ToricCmd) -> Result<Outcome> {
    let reference = match cmd {
        ToricCmd::Qcartier(a) | ToricCmd::Index(a) => &a.reference,
        ToricCmd::Klt(a) | ToricCmd::Canonical(a) | ToricCmd::Cover(a) | ToricCmd::DualGens(a) | ToricCmd::Hilbert(a) => {
            &a.reference
        }
    };
    let (input, name) = load(reference)?;
    let pair = input.cone_pair(name.as_deref())?;
    match cmd {
        ToricCmd::Qcartier(a) => {
            let d = parse_divisor(&a.divisor, pair)?;
            let u = toric::q_cartier_functional(pair.cone(), &d)?;
            let text = u.as_ref().map_or("none".into(), |u| u.to_string());
            let positive = u.is_some();
            Ok(Outcome::verdict(text, json!({ "q_cartier": positive, "u": functional_json(&u) }), positive))
        }
        ToricCmd::Index(a) => {
            let d = parse_divisor(&a.divisor, pair)?;
            match toric::q_cartier_functional(pair.cone(), &d)? {
                Some(u) => {
                    let m = toric::cartier_index(&u)?;
                    Ok(Outcome::ok(m.to_string(), json!({ "index": m, "u": rats_json(&u.0) })))
                }
                None => Ok(Outcome::verdict("none", json!({ "index": Value::Null, "u": Value::Null }), false)),
            }
        }
        ToricCmd::Klt(_) => {
            let v = toric::klt_check(pair)?;
            let index = v.functional.as_ref().map(toric::cartier_index).transpose()?;
            let json = json!({ "klt": v.klt, "u": functional_json(&v.functional), "index": index });
            Ok(Outcome::verdict(v.to_string(), json, v.klt))
        }
        ToricCmd::Canonical(_) => {
            let k = ToricDivisor::canonical(pair.cone().rays().len());
            let Some(u) = toric::q_cartier_functional(pair.cone(), &k)? else {
                return Ok(Outcome::verdict("none", json!({ "canonical": Value::Null, "u": Value::Null }), false));
            };
            let canonical = toric::canonical_check(pair.cone())?;
            let text = format!("canonical={canonical} u={u}");
            Ok(Outcome::verdict(text, json!({ "canonical": canonical, "u": rats_json(&u.0) }), canonical))
        }
        ToricCmd::Cover(_) => {
            let c = toric::log_canonical_cover(pair)?;
            let basis: Vec<Vec<Rat>> = c.lattice.basis_vectors();
            let text = format!(
                "degree={}\nlattice={}\nrays={}\nu={}\nramification={}",
                c.degree,
                basis.iter().map(|b| rational::fmt_vec(b)).collect::<Vec<_>>().join(" "),
                c.cone.rays().iter().map(|r| rational::fmt_int_vec(r)).collect::<Vec<_>>().join(" "),
                c.functional,
                c.ramification.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            );
            let json = json!({
                "degree": c.degree,
                "lattice": basis.iter().map(|b| rats_json(b)).collect::<Vec<_>>(),
                "rays": c.cone.rays(),
                "u": rats_json(&c.functional.0),
                "ramification": c.ramification,
            });
            Ok(Outcome::ok(text, json))
        }
        ToricCmd::DualGens(_) => {
            let g = toric::dual_cone_generators(pair.cone())?;
            Ok(Outcome::ok(points_text(&g), json!({ "count": g.len(), "generators": g })))
        }
        ToricCmd::Hilbert(_) => {
            let g = toric::hilbert_basis(pair.cone())?;
            Ok(Outcome::ok(points_text(&g), json!({ "count": g.len(), "generators": g })))
        }
    }
}

fn presentation(reference: &str) -> Result<RewriteSystem> {
    let (input, name) = load(reference)?;
    Ok(input.presentation(name.as_deref())?.clone())
}

fn ncpoly_cmd(cmd: &NcpolyCmd) -> Result<Outcome> {
    match cmd {
        NcpolyCmd::NormalForm { reference, expr } => {
            let rs = presentation(reference)?;
            let nf = rs.display(&rs.normal_form(&rs.parse(expr)?)?);
            Ok(Outcome::ok(nf.clone(), json!({ "normal_form": nf })))
        }
        NcpolyCmd::Central { reference, expr } => {
            let rs = presentation(reference)?;
            let c = ncpoly::is_central(&rs.parse(expr)?, &rs, &rs.generators())?;
            Ok(Outcome::verdict(c.to_string(), json!({ "central": c }), c))
        }
        NcpolyCmd::Identity { reference, lhs, rhs } => {
            let rs = presentation(reference)?;
            let holds = ncpoly::verify_identity(&rs.parse(lhs)?, &rs.parse(rhs)?, &rs)?;
            Ok(Outcome::verdict(holds.to_string(), json!({ "holds": holds }), holds))
        }
    }
}

fn examples(cmd: &ExamplesCmd) -> Result<Outcome> {
    match cmd {
        ExamplesCmd::List => Ok(Outcome::ok(cases::NAMES.join("\n"), json!(cases::NAMES))),
        ExamplesCmd::Run { name } => {
            let report = cases::run(name)?;
            Ok(Outcome::verdict(report.to_string(), &report, report.overall))
        }
    }
}
