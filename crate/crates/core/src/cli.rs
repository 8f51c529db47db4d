//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for bad input (including usage errors and
//! parse failures), 3 when an internal assertion or a verification fails.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::checks::{self, Check};
use crate::classnum::{class_number, class_number_bruteforce, l_polynomial, QuadDisc};
use crate::error::Error;
use crate::ffpoly::{parse_elem, parse_poly, parse_poly_list, prime_power, FieldSpec, Fq, Place, RamSet};
use crate::modcurve::{
    classify_quotient, curve_report, deficient_places_xr, genus_xr, hyperelliptic_bound,
    hyperelliptic_max_r, Parity, QuotientReport,
};
use crate::search::{dirichlet_check, find_odd_pairs, hyperelliptic_survey, inert_degree2_census, with_jobs};
use crate::symbols::{legendre_euler, legendre_fast};

#[derive(Debug, Parser)]
#[command(name = "ffmodcurve", version, about = "Genus, fixed points and Jacobian parity for modular curves over F_q(T)")]
struct Cli {
    #[command(flatten)]
    field: FieldArgs,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Emit tab-separated rows where the command has a table.
    #[arg(long, global = true)]
    tsv: bool,
    /// Cross-check results with an independent computation.
    #[arg(long, global = true)]
    verify: bool,
    /// Worker threads for sweeps; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Field order q = p^e.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Characteristic p, as an alternative to --q (with --e).
    #[arg(long = "char", global = true, conflicts_with = "q")]
    characteristic: Option<u64>,
    /// Extension degree e, used with --char.
    #[arg(long, global = true, requires = "characteristic")]
    e: Option<u32>,
    /// Monic irreducible modulus over F_p defining F_q when e > 1.
    #[arg(long, global = true)]
    modulus: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Legendre symbol (a / p) for a monic irreducible p.
    Symbol {
        #[arg(long)]
        a: String,
        #[arg(long)]
        p: String,
    },
    /// Class number of F_q[T, sqrt(xi p)].
    Classnum {
        #[arg(long)]
        p: String,
        /// Constant multiplier; defaults to the canonical non-square.
        #[arg(long)]
        xi: Option<String>,
        /// Also compute the class group exhaustively and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Genus of X^R.
    Genus {
        #[arg(long = "R")]
        ram: String,
    },
    /// Classify X^R / w_y, or every quotient when --y is absent.
    Classify {
        #[arg(long = "R")]
        ram: String,
        #[arg(long)]
        y: Option<String>,
    },
    /// Search pairs R = {x, y} with an odd Jacobian of X^R / w_y.
    Search {
        #[arg(long)]
        deg_x: usize,
        #[arg(long)]
        deg_y: usize,
    },
    /// Place counts by symbol.
    Census {
        #[command(subcommand)]
        kind: CensusKind,
    },
    /// Finiteness window for hyperelliptic quotients.
    Survey {
        #[command(subcommand)]
        kind: SurveyKind,
    },
    /// Run the invariant suite.
    Selftest,
    /// Recompute the reference table.
    Table,
}

#[derive(Debug, Subcommand)]
enum CensusKind {
    /// Quadratic places inert in F(sqrt(p_x)).
    Inert {
        #[arg(long)]
        x: String,
    },
    /// Places x of each even degree with (p_x / p_y) = -1.
    Dirichlet {
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SurveyKind {
    /// Scan r against q^(r/2) < 32 q^3 r; with --R and --x also test the
    /// bound for that witness.
    Hyperelliptic {
        #[arg(long = "R", requires = "x")]
        ram: Option<String>,
        #[arg(long)]
        x: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(format!("write failed: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(format!("serialization failed: {e}"))
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            3
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Tsv,
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let format = if cli.json {
        Format::Json
    } else if cli.tsv {
        Format::Tsv
    } else {
        Format::Text
    };
    match &cli.command {
        Command::Selftest => return run_checks(checks::invariants(), out),
        Command::Table => return run_checks(checks::table(), out),
        _ => {}
    }
    let field = build_field(&cli.field)?;
    match &cli.command {
        Command::Symbol { a, p } => symbol(&field, a, p, cli.verify, format, out),
        Command::Classnum { p, xi, oracle } => {
            classnum(&field, p, xi.as_deref(), *oracle || cli.verify, format, out)
        }
        Command::Genus { ram } => genus(&field, ram, format, out),
        Command::Classify { ram, y } => classify(&field, ram, y.as_deref(), cli.verify, format, out),
        Command::Search { deg_x, deg_y } => search(&field, *deg_x, *deg_y, cli.jobs, format, out),
        Command::Census { kind: CensusKind::Inert { x } } => census_inert(&field, x, format, out),
        Command::Census { kind: CensusKind::Dirichlet { y, dmax } } => {
            census_dirichlet(&field, y, *dmax, cli.jobs, format, out)
        }
        Command::Survey { kind: SurveyKind::Hyperelliptic { ram, x } } => {
            survey(&field, ram.as_deref(), x.as_deref(), format, out)
        }
        Command::Selftest | Command::Table => unreachable!("handled above"),
    }
}

fn build_field(args: &FieldArgs) -> Result<Fq, Failure> {
    let (p, e) = match (args.q, args.characteristic) {
        (Some(q), _) => prime_power(q)
            .ok_or_else(|| Failure::Input(format!("--q {q} is not a prime power")))?,
        (None, Some(p)) => (p, args.e.unwrap_or(1)),
        (None, None) => return Err(Failure::Input("the field is not set: pass --q or --char".into())),
    };
    let modulus = match &args.modulus {
        None => None,
        Some(text) => {
            let base = Fq::prime(p)?;
            let m = parse_poly(&base, text)?;
            Some(m.coeffs().iter().map(|c| c.index()).collect())
        }
    };
    Ok(Fq::new(FieldSpec::new(p, e, modulus)?))
}

fn place(field: &Fq, text: &str) -> Result<Place, Failure> {
    Ok(Place::new(parse_poly(field, text)?)?)
}

fn ram_set(field: &Fq, text: &str) -> Result<RamSet, Failure> {
    let places = parse_poly_list(field, text)?
        .into_iter()
        .map(Place::new)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RamSet::new(places)?)
}

fn names(places: &[Place]) -> String {
    places.iter().map(Place::to_string).collect::<Vec<_>>().join(",")
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn symbol(field: &Fq, a: &str, p: &str, verify: bool, format: Format, out: &mut dyn Write) -> Outcome {
    let a = parse_poly(field, a)?;
    let x = place(field, p)?;
    let fast = legendre_fast(&a, &x)?;
    let euler = if verify { Some(legendre_euler(&a, &x)?) } else { None };
    if format == Format::Json {
        let mut v = json!({ "q": field.q(), "a": a.to_string(), "p": x, "symbol": fast.as_i8() });
        if let Some(e) = euler {
            v["euler"] = json!(e.as_i8());
            v["reciprocity"] = json!(fast.as_i8());
            v["agree"] = json!(e == fast);
        }
        json_line(out, &v)?;
    } else {
        writeln!(out, "{fast}")?;
        if let Some(e) = euler {
            writeln!(out, "euler {e}")?;
            writeln!(out, "reciprocity {fast}")?;
        }
    }
    match euler {
        Some(e) if e != fast => Err(Failure::Internal(format!(
            "({a} / {x}): Euler criterion gives {e}, reciprocity gives {fast}"
        ))),
        _ => Ok(()),
    }
}

fn classnum(field: &Fq, p: &str, xi: Option<&str>, oracle: bool, format: Format, out: &mut dyn Write) -> Outcome {
    let p = parse_poly(field, p)?;
    let xi = match xi {
        Some(text) => parse_elem(field, text)?,
        None => field.nonsquare_xi()?,
    };
    let d = QuadDisc::new(p.scale(xi))?;
    let l = l_polynomial(&d)?;
    let h = class_number(&d)?;
    let brute = if oracle { Some(class_number_bruteforce(&d)?) } else { None };
    if format == Format::Json {
        let mut v = json!({
            "q": field.q(),
            "D": d.to_string(),
            "infinity": d.infinity_type(),
            "genus": d.genus(),
            "L": l.coeffs(),
            "h": h,
        });
        if let Some(b) = brute {
            v["oracle"] = json!(b);
            v["agree"] = json!(b == h);
        }
        json_line(out, &v)?;
    } else {
        writeln!(out, "{h}")?;
        if let Some(b) = brute {
            writeln!(out, "l-polynomial {h}")?;
            writeln!(out, "oracle {b}")?;
            writeln!(out, "agree {}", b == h)?;
        }
    }
    match brute {
        Some(b) if b != h => Err(Failure::Internal(format!(
            "D = {d}: L-polynomial gives {h}, exhaustive class group gives {b}"
        ))),
        _ => Ok(()),
    }
}

fn genus(field: &Fq, ram: &str, format: Format, out: &mut dyn Write) -> Outcome {
    let r = ram_set(field, ram)?;
    let g = genus_xr(&r)?;
    let (deficient, parity) = deficient_places_xr(&r);
    match format {
        Format::Json => json_line(
            out,
            &json!({ "q": field.q(), "R": r.places(), "genus_XR": g, "deficient": deficient, "parity": parity }),
        ),
        Format::Tsv => {
            writeln!(out, "R\tgenus_XR\tdeficient\tparity")?;
            writeln!(out, "{}\t{g}\t{}\t{parity}", names(r.places()), names(&deficient))?;
            Ok(())
        }
        Format::Text => {
            writeln!(out, "{g}")?;
            Ok(())
        }
    }
}

fn opt(v: Option<u128>) -> String {
    v.map_or_else(|| "-".into(), |n| n.to_string())
}

fn classify(field: &Fq, ram: &str, y: Option<&str>, verify: bool, format: Format, out: &mut dyn Write) -> Outcome {
    let r = ram_set(field, ram)?;
    let reports = match y {
        Some(text) => vec![classify_quotient(&r, &place(field, text)?)?],
        None => curve_report(&r)?.quotients,
    };
    let mut checked = Vec::new();
    if verify {
        for rep in &reports {
            checked.push(verify_report(field, rep)?);
        }
    }
    match format {
        Format::Json if y.is_some() => json_line(out, &reports[0])?,
        Format::Json => json_line(out, &reports)?,
        Format::Tsv => {
            writeln!(out, "y\tfix\tgenus_quotient\tparity\tsha_certificate")?;
            for rep in &reports {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    rep.y,
                    opt(rep.fix),
                    opt(rep.genus_quotient),
                    rep.parity,
                    rep.sha_certificate
                )?;
            }
        }
        Format::Text => {
            for (i, rep) in reports.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write_report(out, rep)?;
                if let Some(line) = checked.get(i) {
                    writeln!(out, "verified {line}")?;
                }
            }
        }
    }
    Ok(())
}

fn write_report(out: &mut dyn Write, rep: &QuotientReport) -> io::Result<()> {
    let c = &rep.conditions;
    writeln!(out, "q {}", rep.q)?;
    writeln!(out, "R {}", names(&rep.ram))?;
    writeln!(out, "genus_XR {}", rep.genus_xr)?;
    writeln!(out, "y {}", rep.y)?;
    writeln!(out, "fix {}", opt(rep.fix))?;
    writeln!(out, "genus_quotient {}", opt(rep.genus_quotient))?;
    writeln!(out, "deficient {}", names(&rep.deficient))?;
    writeln!(out, "parity {}", rep.parity)?;
    writeln!(out, "sha_certificate {}", rep.sha_certificate)?;
    writeln!(
        out,
        "conditions cardinality={} symbol={} degree_mod4={}",
        c.cardinality, c.symbol, c.degree_mod4
    )?;
    for note in &rep.notes {
        writeln!(out, "note {note}")?;
    }
    Ok(())
}

/// Parity against quotient genus, and the class number against the
/// exhaustive class group when the instance is small enough.
fn verify_report(field: &Fq, rep: &QuotientReport) -> Result<String, Failure> {
    let mut done = Vec::new();
    if let (Some(g), true) = (rep.genus_quotient, rep.parity != Parity::OutOfScope) {
        if (rep.parity == Parity::Odd) != (g % 2 == 0) {
            return Err(Failure::Internal(format!(
                "y = {}: parity {} but quotient genus {g}",
                rep.y, rep.parity
            )));
        }
        done.push("parity-genus");
    }
    if field.is_odd() {
        let d = QuadDisc::from_place(field.nonsquare_xi()?, &rep.y)?;
        match class_number_bruteforce(&d) {
            Ok(b) => {
                let h = class_number(&d)?;
                if b != h {
                    return Err(Failure::Internal(format!(
                        "D = {d}: L-polynomial gives {h}, exhaustive class group gives {b}"
                    )));
                }
                done.push("class-number");
            }
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(if done.is_empty() { "nothing".into() } else { done.join(",") })
}

fn search(field: &Fq, deg_x: usize, deg_y: usize, jobs: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let res = with_jobs(jobs, || find_odd_pairs(field, deg_x, deg_y))??;
    match format {
        Format::Json => json_line(out, &res)?,
        Format::Tsv => {
            writeln!(out, "x\ty\tfix\tgenus_quotient\tparity\tsha_certificate")?;
            for h in &res.hits {
                let r = &h.report;
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    h.x,
                    h.y,
                    opt(r.fix),
                    opt(r.genus_quotient),
                    r.parity,
                    r.sha_certificate
                )?;
            }
        }
        Format::Text => {
            writeln!(out, "q {} deg_x {deg_x} deg_y {deg_y}", res.q)?;
            for (name, n) in &res.census {
                writeln!(out, "{name} {n}")?;
            }
            for h in &res.hits {
                let r = &h.report;
                writeln!(
                    out,
                    "hit x={} y={} fix={} genus_quotient={} sha_certificate={}",
                    h.x,
                    h.y,
                    opt(r.fix),
                    opt(r.genus_quotient),
                    r.sha_certificate
                )?;
            }
        }
    }
    Ok(())
}

fn census_inert(field: &Fq, x: &str, format: Format, out: &mut dyn Write) -> Outcome {
    let x = place(field, x)?;
    let n = inert_degree2_census(&x)?;
    if format == Format::Json {
        json_line(out, &json!({ "q": field.q(), "x": x, "inert": n }))
    } else {
        writeln!(out, "{n}")?;
        Ok(())
    }
}

fn census_dirichlet(field: &Fq, y: &str, dmax: usize, jobs: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let y = place(field, y)?;
    let rows = with_jobs(jobs, || dirichlet_check(&y, dmax))??;
    match format {
        Format::Json => json_line(out, &json!({ "q": field.q(), "y": y, "rows": rows })),
        Format::Tsv | Format::Text => {
            let sep = if format == Format::Tsv { "\t" } else { " " };
            writeln!(out, "{}", ["degree", "places", "minus_one", "heuristic"].join(sep))?;
            for r in &rows {
                writeln!(out, "{}{sep}{}{sep}{}{sep}{:.1}", r.degree, r.places, r.minus_one, r.heuristic)?;
            }
            Ok(())
        }
    }
}

fn survey(field: &Fq, ram: Option<&str>, x: Option<&str>, format: Format, out: &mut dyn Write) -> Outcome {
    let q = field.q();
    let max = hyperelliptic_max_r(q)?;
    let rows = hyperelliptic_survey(q)?;
    let bound = match (ram, x) {
        (Some(r), Some(x)) => Some(hyperelliptic_bound(&ram_set(field, r)?, &place(field, x)?)?),
        _ => None,
    };
    match format {
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(|&(r, ok)| json!({ "r": r, "feasible": ok })).collect();
            let mut v = json!({ "q": q, "max_r": max, "rows": rows });
            if let Some(b) = bound {
                v["bound"] = json!(b);
            }
            json_line(out, &v)
        }
        Format::Tsv | Format::Text => {
            let sep = if format == Format::Tsv { "\t" } else { " " };
            writeln!(out, "max_r{sep}{max}")?;
            if let Some(b) = bound {
                writeln!(out, "bound{sep}{}{sep}lhs={}{sep}rhs={}", if b.holds { "holds" } else { "fails" }, b.lhs, b.rhs)?;
            }
            writeln!(out, "r{sep}feasible")?;
            for (r, ok) in rows {
                writeln!(out, "{r}{sep}{ok}")?;
            }
            Ok(())
        }
    }
}

fn run_checks(list: Vec<Check>, out: &mut dyn Write) -> Outcome {
    let mut failed = 0;
    let total = list.len();
    for check in &list {
        let outcome = check.run();
        failed += usize::from(!outcome.passed);
        writeln!(out, "{outcome}")?;
    }
    writeln!(out, "{}/{total} passed", total - failed)?;
    if failed > 0 {
        Err(Failure::Internal(format!("{failed} of {total} checks failed")))
    } else {
        Ok(())
    }
}
