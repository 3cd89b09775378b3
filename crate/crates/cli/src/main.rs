//! `isgkit` — generate finite inverse semigroups, inspect them, and check
//! distributivity-style laws with counterexample witnesses.
//!
//! Exit codes: 0 the law holds (possibly within budget), 1 the law fails
//! (the report carries a witness), 2 usage or input error, 3 the law's
//! hypothesis could not be established.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use isgkit::constructors::{self, FamilySpec};
use isgkit::io::{
    self, parse_report, parse_semigroup_file, ReportFile, SemigroupFile,
};
use isgkit::verify::{self, LawReport, SubsetBudget, Verdict, DEFAULT_SUBSET_CEILING};
use isgkit::NaturalOrder;

/// Overrides the ceiling on exhaustive subset enumeration (a number of
/// subsets, default 2^20).
const CEILING_ENV: &str = "ISGKIT_SUBSET_CEILING";

#[derive(Parser)]
#[command(name = "isgkit", version, about = "Finite inverse semigroup toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a semigroup file from a named family.
    Gen(GenArgs),
    /// Check a law on a semigroup and emit a report.
    Check(CheckArgs),
    /// Summarize a semigroup file.
    Info(InfoArgs),
}

#[derive(Args)]
struct GenArgs {
    /// symmetric-inverse | cyclic-group | brandt | semilattice | adjoin-zero | builtin
    #[arg(long)]
    family: String,
    /// Size parameter for symmetric-inverse, cyclic-group and brandt.
    #[arg(long)]
    n: Option<usize>,
    /// Fixture name for semilattice and builtin (n5, m3, chain<k>, ...).
    #[arg(long)]
    name: Option<String>,
    /// Inner semigroup (path or builtin:<name>) for adjoin-zero.
    #[arg(long)]
    input: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Path to a semigroup file, or builtin:<name>.
    input: String,
    /// distributive | lemma1 | lemma2 | theorem | prop17 | prop20
    #[arg(long)]
    law: String,
    /// Enumerate every subset (subject to the ceiling).
    #[arg(long)]
    exhaustive: bool,
    /// Size cap for systematic enumeration in bounded mode.
    #[arg(long, default_value_t = 3)]
    max_subset_size: usize,
    /// Seeded random subsets beyond the size cap.
    #[arg(long, default_value_t = 0)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "true", value_parser = clap::value_parser!(bool))]
    include_empty_set: bool,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InfoArgs {
    /// Path to a semigroup file, or builtin:<name>.
    input: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => gen(args),
        Command::Check(args) => check(args),
        Command::Info(args) => info(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("isgkit: {message}");
            ExitCode::from(2)
        }
    }
}

fn resolve_input(input: &str) -> Result<SemigroupFile, String> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let semigroup = constructors::builtin(name).map_err(|e| e.to_string())?;
        return Ok(SemigroupFile::new(semigroup));
    }
    let bytes =
        std::fs::read(input).map_err(|e| format!("cannot read {input}: {e}"))?;
    parse_semigroup_file(&bytes).map_err(|e| format!("{input}: {e}"))
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(args: GenArgs) -> Result<u8, String> {
    let need_n = || args.n.ok_or(format!("--family {} requires --n", args.family));
    let need_name = || {
        args.name
            .clone()
            .ok_or(format!("--family {} requires --name", args.family))
    };
    let mut metadata = serde_json::Map::new();
    metadata.insert("family".into(), args.family.clone().into());
    let semigroup = match args.family.as_str() {
        "symmetric-inverse" => {
            let n = need_n()?;
            metadata.insert("n".into(), n.into());
            FamilySpec::SymmetricInverse { n }.construct()
        }
        "cyclic-group" => {
            let n = need_n()?;
            metadata.insert("n".into(), n.into());
            FamilySpec::CyclicGroup { n }.construct()
        }
        "brandt" => {
            let n = need_n()?;
            metadata.insert("n".into(), n.into());
            FamilySpec::Brandt { n }.construct()
        }
        "semilattice" | "builtin" => {
            let name = need_name()?;
            metadata.insert("name".into(), name.clone().into());
            constructors::builtin(&name)
        }
        "adjoin-zero" => {
            let input = args
                .input
                .clone()
                .ok_or("--family adjoin-zero requires --input")?;
            metadata.insert("inner".into(), input.clone().into());
            let inner = resolve_input(&input)?;
            Ok(constructors::adjoin_zero(&inner.semigroup))
        }
        other => Err(format!("unknown family '{other}'"))?,
    }
    .map_err(|e| e.to_string())?;

    let size = semigroup.size();
    let file = SemigroupFile {
        semigroup,
        metadata,
    };
    write_output(&args.out, &io::emit_semigroup_file(&file))?;
    match &args.out {
        Some(path) => eprintln!("isgkit gen: {} elements -> {}", size, path.display()),
        None => eprintln!("isgkit gen: {size} elements"),
    }
    Ok(0)
}

fn budget_from_flags(args: &CheckArgs) -> Result<SubsetBudget, String> {
    let ceiling = match std::env::var(CEILING_ENV) {
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| format!("invalid {CEILING_ENV} value '{raw}'"))?,
        Err(_) => DEFAULT_SUBSET_CEILING,
    };
    let mut budget = if args.exhaustive {
        SubsetBudget::exhaustive()
    } else {
        SubsetBudget::bounded(args.max_subset_size).with_samples(args.samples, args.seed)
    };
    budget.include_empty_set = args.include_empty_set;
    budget.subset_ceiling = ceiling;
    Ok(budget)
}

fn run_law(
    law: &str,
    file: &SemigroupFile,
    budget: &SubsetBudget,
) -> Result<LawReport, String> {
    let s = &file.semigroup;
    let ord = NaturalOrder::new(s);
    let report = match law {
        "distributive" | "distributivity" => {
            verify::is_infinitely_distributive(s, &ord, budget).map_err(|e| e.to_string())?
        }
        "lemma1" => verify::check_lemma1(s, &ord),
        "lemma2" => verify::check_lemma2(s, &ord, budget).map_err(|e| e.to_string())?,
        "theorem" => verify::check_theorem(s, &ord, budget).map_err(|e| e.to_string())?,
        "prop17" => verify::check_prop17(s, &ord, budget).map_err(|e| e.to_string())?,
        "prop20" | "prop20-corpus" => {
            verify::check_prop20_corpus(std::slice::from_ref(s), budget)
                .map_err(|e| e.to_string())?
        }
        other => {
            return Err(format!(
                "unknown law '{other}' (expected distributive, lemma1, lemma2, theorem, prop17 or prop20)"
            ))
        }
    };
    Ok(report)
}

fn check(args: CheckArgs) -> Result<u8, String> {
    let file = resolve_input(&args.input)?;
    let budget = budget_from_flags(&args)?;
    if args.exhaustive {
        budget
            .feasible_for(file.semigroup.size())
            .map_err(|e| e.to_string())?;
    }
    let report = run_law(&args.law, &file, &budget)?;
    let report_file = ReportFile::new(&report, &file);
    write_output(&args.out, &report_file.to_canonical_string())?;
    eprintln!(
        "isgkit check: {} on {} -> {} ({} cases)",
        report.law.id(),
        args.input,
        report.verdict.id(),
        report.cases_checked
    );
    let code = if report.failed() {
        1
    } else if report.verdict == Verdict::HypothesisNotEstablished {
        3
    } else {
        0
    };
    Ok(code)
}

fn info(args: InfoArgs) -> Result<u8, String> {
    let file = resolve_input(&args.input)?;
    let s = &file.semigroup;
    let ord = NaturalOrder::new(s);
    println!("size: {}", s.size());
    println!("idempotents: {}", s.idempotents().len());
    println!(
        "has zero: {}",
        if ord.minimum().is_some() { "yes" } else { "no" }
    );
    println!("comparable pairs: {}", ord.comparable_pairs());
    if !args.input.starts_with("builtin:") {
        report_sidecar(&args.input, &file);
    }
    Ok(0)
}

/// A report stored next to the input as `<input>.report.json` is surfaced as
/// a cached verdict, provided its digest still matches.
fn report_sidecar(input: &str, file: &SemigroupFile) {
    let sidecar = format!("{input}.report.json");
    if !Path::new(&sidecar).exists() {
        return;
    }
    match std::fs::read(&sidecar).ok().and_then(|b| parse_report(&b).ok()) {
        Some(report) => {
            if report.input_digest == io::semigroup_file_digest(file) {
                println!("cached verdict: {} {}", report.law, report.verdict);
            } else {
                println!("report sidecar: stale (digest mismatch)");
            }
        }
        None => println!("report sidecar: unreadable"),
    }
}
