//! Command-line front door: parse field/matrix inputs, run the analysis
//! pipelines, and emit human-readable or JSON reports.
//!
//! Exit codes are a stable contract:
//!   0  success (for `analyze`: the action is uniserial)
//!   1  verified negative (`analyze`: not uniserial; `construct`: a claim failed)
//!   2  input error (unreadable file, parse failure, bad shapes, bad flags)
//!   3  refusal: the computation needs p-th roots the field does not offer
//!      (imperfect coefficient fields)

mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use uniserial::constructions::{by_name, registry, BuildParams};
use uniserial::cyclicgen::analyze;
use uniserial::linalg::jordan_chevalley;
use uniserial::primelt::{
    degree_profile, find_primitive_combination, find_primitive_pair, sweep_alpha_statistics,
};
use uniserial::{Error, Field, Result};

use input::{parse_mode, InputDocument};
use report::{AnalyzeReport, ConstructReport, JcReport, PrimitiveReport};

#[derive(Parser)]
#[command(
    name = "uniserial",
    version,
    about = "Exact analysis of commutative matrix actions: uniseriality, single \
             generators, primitive elements, and worked counterexamples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether commuting matrices act uniserially; report the socle
    /// filtration, a single generator, and expressions for each input
    Analyze(AnalyzeArgs),
    /// Degree profile and primitive-combination search for elements of a
    /// finite field tower
    Primitive(PrimitiveArgs),
    /// Build a named reference instance and verify its certificate
    Construct(ConstructArgs),
    /// Jordan–Chevalley decomposition of one matrix
    Jc(JcArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input document (JSON): field, generators, optional mode/options
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Override the document's mode: associative | lie
    #[arg(long)]
    mode: Option<String>,
    /// Emit the report as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PrimitiveArgs {
    /// Coefficient subfield F, e.g. GF(2) or GF(4)
    #[arg(long)]
    field: String,
    /// Modulus over the prime field defining the ambient tower K,
    /// e.g. "X^6+X+1"
    #[arg(long)]
    tower: String,
    /// Elements of K as expressions in the generator g, one per argument
    #[arg(long, num_args = 1.., required = true)]
    elements: Vec<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// Which instance to build: unomas | pedo | menti
    kind: String,
    /// Base field size q (unomas)
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Number of planted primes A (unomas)
    #[arg(long = "A", default_value_t = 1)]
    prime_count: u64,
    /// Characteristic p (pedo, menti)
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Seed for the randomized planting steps
    #[arg(long, default_value_t = 1729)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct JcArgs {
    /// Input document (JSON) with exactly one generator matrix
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => run_analyze(&args),
        Command::Primitive(args) => run_primitive(&args),
        Command::Construct(args) => run_construct(&args),
        Command::Jc(args) => run_jc(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

/// Map an error to the exit-code contract: refusals over imperfect fields
/// are 3, everything else is an input error.  The root of a stage-tagged
/// chain decides.
fn exit_for(e: &Error) -> u8 {
    match e.root() {
        Error::ImperfectField { .. } | Error::NoPthRoot { .. } => 3,
        _ => 2,
    }
}

/// Print a report without panicking when stdout is a closed pipe
/// (`uniserial ... | head` must not turn into a crash).
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn read_document(path: &PathBuf) -> Result<InputDocument> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::parse("input file", format!("{}: {e}", path.display()))
    })?;
    InputDocument::from_json(&text)
}

// ---- analyze ----

fn run_analyze(args: &AnalyzeArgs) -> Result<ExitCode> {
    let doc = read_document(&args.input)?;
    let (field, gens) = doc.matrices()?;
    let mode = match &args.mode {
        Some(text) => parse_mode(text)?,
        None => doc.mode()?,
    };
    let r = analyze(&gens, mode)?;
    let report = AnalyzeReport::build(&field, mode, &r);
    if args.json || doc.options.as_ref().and_then(|o| o.format.as_deref()) == Some("json") {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report).unwrap()));
    } else {
        emit(&report.render_text());
    }
    Ok(ExitCode::from(if r.uniserial { 0 } else { 1 }))
}

// ---- primitive ----

fn run_primitive(args: &PrimitiveArgs) -> Result<ExitCode> {
    let sub = Field::parse(&args.field)?;
    let m = sub.degree_over_prime().ok_or_else(|| {
        Error::parse("field", format!("{} is not a finite field", args.field))
    })?;
    let p = sub.characteristic();
    let tower = Field::parse(&format!("GF({p})[X]/({})", args.tower))?;
    let k = tower.degree_over_prime().unwrap();
    if k % m != 0 {
        return Err(Error::parse(
            "tower",
            format!("GF({p}^{m}) does not embed in a degree-{k} tower"),
        ));
    }
    if args.elements.len() < 2 {
        return Err(Error::parse("elements", "need at least two elements"));
    }
    let xs = args
        .elements
        .iter()
        .map(|text| tower.parse_element(text))
        .collect::<Result<Vec<_>>>()?;

    let mut degrees = Vec::with_capacity(xs.len());
    for x in &xs {
        degrees.push(x.degree_over_subfield(m)?);
    }
    let profile = degree_profile(degrees[0], degrees[1])?;
    let pair = find_primitive_pair(&xs[0], &xs[1], m)?;
    let sweep = sweep_alpha_statistics(&xs[0], &xs[1], m)?;
    let combination = if xs.len() > 2 {
        find_primitive_combination(&xs, m)?
    } else {
        pair.as_ref().map(|alpha| vec![tower.one(), alpha.clone()])
    };

    let report = PrimitiveReport {
        schema_version: report::SCHEMA_VERSION,
        command: "primitive".into(),
        field: sub.to_string(),
        tower: tower.to_string(),
        degrees,
        profile: (&profile).into(),
        pair_alpha: pair.map(|a| a.to_string()),
        combination: combination.map(|cs| cs.iter().map(|c| c.to_string()).collect()),
        sweep: (&sweep).into(),
    };
    if args.json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report).unwrap()));
    } else {
        emit(&report.render_text());
    }
    Ok(ExitCode::SUCCESS)
}

// ---- construct ----

fn run_construct(args: &ConstructArgs) -> Result<ExitCode> {
    let construction = by_name(&args.kind).ok_or_else(|| {
        let known: Vec<&str> = registry().iter().map(|c| c.name()).collect();
        Error::parse(
            "construction",
            format!("'{}' is not one of {}", args.kind, known.join(", ")),
        )
    })?;
    let params = BuildParams {
        q: args.q,
        prime_count: args.prime_count,
        p: args.p,
        seed: args.seed,
    };
    let (facts, cert) = construction.build(&params)?;
    let report = ConstructReport::build(construction.name(), &params, facts, &cert);
    if args.json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report).unwrap()));
    } else {
        emit(&report.render_text());
    }
    Ok(ExitCode::from(if report.all_pass { 0 } else { 1 }))
}

// ---- jc ----

fn run_jc(args: &JcArgs) -> Result<ExitCode> {
    let doc = read_document(&args.input)?;
    let (field, gens) = doc.matrices()?;
    if gens.len() != 1 {
        return Err(Error::parse(
            "input document",
            format!("jc takes exactly one matrix, found {}", gens.len()),
        ));
    }
    let d = jordan_chevalley(&gens[0])?;
    let report = JcReport::build(&field, &gens[0], &d);
    if args.json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report).unwrap()));
    } else {
        emit(&report.render_text());
    }
    Ok(ExitCode::SUCCESS)
}
