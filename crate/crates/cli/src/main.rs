//! `quadzeta`: classify, reduce and compute Igusa zeta functions of
//! quadratic polynomials from a JSON description.

mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quadzeta::exec::Exec;
use quadzeta::genfun::{assemble_gf, modular_gf};
use quadzeta::oracle::{verify, VerifyStatus};
use quadzeta::quadform::{alpha, jordan_decompose, reduce_standard, xi, QuadPoly};
use quadzeta::ratfunc::RationalFunction;
use quadzeta::zeta::{poles_odd, zeta_jordan};
use quadzeta::{Error, Result};

#[derive(Parser)]
#[command(name = "quadzeta", version, about = "Igusa zeta functions of p-adic quadratic polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// JSON file with the polynomial
    #[arg(long, conflicts_with = "inline")]
    input: Option<PathBuf>,
    /// The polynomial as inline JSON
    #[arg(long)]
    inline: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Series length, or the level for `gf`
    #[arg(long = "K", alias = "k", value_parser = clap::value_parser!(u32).range(0..=64))]
    k: Option<u32>,
    /// Working precision of the input coefficients
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Jordan decomposition with classified blocks
    Classify(Common),
    /// Reduction to standard form, with the audit trail
    Reduce(Common),
    /// The zeta function as a rational function in t
    Zeta(Common),
    /// The reduced pole polynomial
    Poles(Common),
    /// The Poincaré series
    Poincare(Common),
    /// Generating function through level K
    Gf {
        #[command(flatten)]
        common: Common,
        /// Enumerate the level-K histogram instead of assembling cosets
        #[arg(long)]
        modular: bool,
    },
    /// Compare the zeta function with brute-force counts
    Verify(Common),
}

struct Output {
    text: String,
    json: Value,
    failed: bool,
}

fn load(c: &Common) -> Result<QuadPoly> {
    let raw = match (&c.input, &c.inline) {
        (Some(path), None) => {
            std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?
        }
        (None, Some(s)) => s.clone(),
        _ => return Err(Error::Invalid("give exactly one of --input and --inline".into())),
    };
    let v: Value = serde_json::from_str(&raw).map_err(|e| Error::Invalid(format!("bad JSON: {e}")))?;
    let f = input::parse_poly(&v)?;
    Ok(match c.precision {
        Some(k) => f.with_precision(k),
        None => f,
    })
}

fn classify(f: &QuadPoly) -> Result<Output> {
    if !f.linear().iter().all(|b| b.is_zero()) {
        return Err(Error::Invalid("classify takes a form; use reduce for polynomials".into()));
    }
    let blocks = jordan_decompose(f)?;
    let lines: Vec<String> = if blocks.len() == 1 && blocks[0].0 == 0 {
        vec![blocks[0].1.to_string()]
    } else {
        blocks.iter().map(|(i, q)| format!("{q} @ pi^{i}")).collect()
    };
    // the nonsquare representative the class names refer to
    let field = f.field();
    let (key, rep) = if field.p() == 2 { ("xi", xi(field)?) } else { ("alpha", alpha(field)?) };
    let json = json!({
        key: rep.to_string(),
        "blocks": blocks.iter().map(|(i, q)| json!({
            "exponent": i.to_string(),
            "class": q.to_string(),
            "rank": q.rank().to_string(),
            "norm": q.norm().to_string(),
        })).collect::<Vec<_>>(),
    });
    Ok(Output { text: lines.join("\n"), json, failed: false })
}

fn reduce(f: &QuadPoly) -> Result<Output> {
    let red = reduce_standard(f)?;
    let mut text = red.form.to_string();
    for line in &red.audit {
        text.push_str(&format!("\n  {line}"));
    }
    let json = json!({ "form": red.form.to_string(), "audit": red.audit });
    Ok(Output { text, json, failed: false })
}

fn zeta(f: &QuadPoly, k: Option<u32>) -> Result<Output> {
    let red = reduce_standard(f)?;
    let z = zeta_jordan(&red.form)?;
    let mut text = format!("{}\ncase: {}\ndenominator: {}", z.zf, z.case, z.shape);
    if z.is_degenerate() {
        text.push_str("\nnote: degenerate input, f is identically zero");
    }
    let mut json = json!({
        "zeta": render::rational_function(&z.zf),
        "case": z.case.to_string(),
        "shape": z.shape.to_string(),
        "form": z.form.to_string(),
        "degenerate": z.is_degenerate(),
    });
    if let Some(k) = k {
        let zs = z.zf.series_prefix(k as usize)?;
        let ps = RationalFunction::poincare_from_zeta(&z.zf).series_prefix(k as usize)?;
        text.push_str(&format!("\nzeta series: {}", render::list(&zs)));
        text.push_str(&format!("\npoincare series: {}", render::list(&ps)));
        json["zeta_series"] = render::rationals(&zs);
        json["poincare_series"] = render::rationals(&ps);
    }
    Ok(Output { text, json, failed: false })
}

fn poles(f: &QuadPoly) -> Result<Output> {
    let red = reduce_standard(f)?;
    let z = zeta_jordan(&red.form)?;
    let pure = red.form.lambda().is_none() && red.form.constant().is_zero();
    let (g, source) = if f.field().p() != 2 && pure {
        (poles_odd(&red.form)?, "pole classification")
    } else {
        (z.zf.den().clone(), "reduced denominator")
    };
    let text = format!("{g}\nfactors: {}\nsource: {source}", z.shape);
    let json = json!({
        "poly": render::poly(&g),
        "text": g.to_string(),
        "shape": z.shape.to_string(),
        "source": source,
    });
    Ok(Output { text, json, failed: false })
}

fn poincare(f: &QuadPoly, k: Option<u32>) -> Result<Output> {
    let red = reduce_standard(f)?;
    let z = zeta_jordan(&red.form)?;
    let p = RationalFunction::poincare_from_zeta(&z.zf);
    let mut text = p.to_string();
    let mut json = json!({ "poincare": render::rational_function(&p) });
    if let Some(k) = k {
        let s = p.series_prefix(k as usize)?;
        text.push_str(&format!("\nseries: {}", render::list(&s)));
        json["series"] = render::rationals(&s);
    }
    Ok(Output { text, json, failed: false })
}

fn gf(f: &QuadPoly, k: Option<u32>, modular: bool) -> Result<Output> {
    let k = k.unwrap_or(3);
    if modular {
        let g = modular_gf(f, k, Exec::Parallel)?;
        let lines: Vec<Value> = g
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(i, c)| {
                json!([
                    quadzeta::padic::RingElem::from_index(f.field(), k, i as u128)
                        .map(|e| e.to_string())
                        .unwrap_or_default(),
                    render::rational(c)
                ])
            })
            .collect();
        return Ok(Output {
            text: g.render().trim_end().to_string(),
            json: json!({ "level": k.to_string(), "masses": lines }),
            failed: false,
        });
    }
    let red = reduce_standard(f)?;
    let a = assemble_gf(&red.form, k)?;
    let total = a.total().coalesce();
    let terms: Vec<Value> = total.terms().map(|(t, c)| json!([t.to_string(), render::rational(c)])).collect();
    Ok(Output {
        text: total.render().trim_end().to_string(),
        json: json!({ "level": k.to_string(), "form": red.form.to_string(), "terms": terms }),
        failed: false,
    })
}

fn verify_cmd(f: &QuadPoly, k: Option<u32>) -> Result<Output> {
    let k = k.unwrap_or(8);
    let red = reduce_standard(f)?;
    let z = zeta_jordan(&red.form)?;
    let report = verify(f, &z.zf, k, Exec::Parallel)?;
    let pass = report.status == VerifyStatus::Pass;
    let json = json!({
        "status": if pass { "PASS" } else { "FAIL" },
        "first_mismatch": report.first_mismatch.map(|i| i.to_string()),
        "oracle_prefix": render::rationals(&report.oracle_prefix),
        "closed_form_prefix": render::rationals(&report.closed_form_prefix),
    });
    let text = match report.first_mismatch {
        None => format!("PASS ({k} coefficients)"),
        Some(i) => format!(
            "FAIL at index {i}: oracle {} vs closed form {}",
            render::rational(&report.oracle_prefix[i]),
            render::rational(&report.closed_form_prefix[i])
        ),
    };
    Ok(Output { text, json, failed: !pass })
}

fn run(cli: &Cli) -> (Format, Result<Output>) {
    let (common, result) = match &cli.command {
        Command::Classify(c) => (c, load(c).and_then(|f| classify(&f))),
        Command::Reduce(c) => (c, load(c).and_then(|f| reduce(&f))),
        Command::Zeta(c) => (c, load(c).and_then(|f| zeta(&f, c.k))),
        Command::Poles(c) => (c, load(c).and_then(|f| poles(&f))),
        Command::Poincare(c) => (c, load(c).and_then(|f| poincare(&f, c.k))),
        Command::Gf { common, modular } => (common, load(common).and_then(|f| gf(&f, common.k, *modular))),
        Command::Verify(c) => (c, load(c).and_then(|f| verify_cmd(&f, c.k))),
    };
    (common.format, result)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, result) = run(&cli);
    match result {
        Ok(out) => {
            match format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            if out.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
