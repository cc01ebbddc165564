use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ballspace::category::{
    augment, coproduct, final_structure, initial_structure, product, AugmentedBallSpace, Sink, Source,
};
use ballspace::maps::quotient;
use ballspace::symbolic::{example_certificate, ExampleCertificate};
use ballspace::verify::{search_aprime_not_coproduct, search_s2c_union_failure, verify, TheoremId, VerifyOptions};
use ballspace::{Config, Execution, FiniteBallSpace, HierarchyReport, Property};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

// a closed stdout (say, piped into `head`) is not an error worth a panic
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "ballspace",
    version,
    about = "Exact workbench for finite and symbolic ball spaces"
)]
struct Cli {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide S1-S4 and S1c-S4c for a space file
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        max_balls: usize,
    },
    /// Build a new space from an input file
    Construct {
        kind: ConstructKind,
        file: PathBuf,
        /// Also write the canonical JSON here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a theorem at the given bounds ("all" runs every id)
    Verify {
        theorem: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Randomized instances per check
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        max_balls: Option<usize>,
        #[arg(long)]
        max_i: Option<usize>,
        /// Run without worker threads
        #[arg(long)]
        sequential: bool,
    },
    /// Look for a small instance of a phenomenon
    Search {
        target: SearchTarget,
        /// Universe bound
        #[arg(long)]
        max_size: Option<usize>,
        /// Candidate pairs examined (s2c-union-failure); 0 skips the search
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certificate that f-un of the prime-gap balls is not spherically complete
    Demo {
        #[arg(long, default_value_t = 8)]
        max_i: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Product,
    Coproduct,
    #[value(name = "f-un")]
    FUn,
    Union,
    Quotient,
    Initial,
    Final,
    Augment,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchTarget {
    S2cUnionFailure,
    AprimeNotCoproduct,
}

/// Anything that stops a command before it can report a verdict.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn field<T: serde::de::DeserializeOwned>(v: &Value, name: &str, path: &Path) -> Result<T, Failure> {
    let raw = v
        .get(name)
        .ok_or_else(|| Failure(format!("{}: missing field {name:?}", path.display())))?;
    serde_json::from_value(raw.clone()).map_err(|e| Failure(format!("{}: field {name:?}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, path: &Path) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Failure> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn sets(family: &[ballspace::PointSet]) -> String {
    family.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
}

fn classify(file: &Path, max_balls: usize, json: bool) -> Outcome {
    let space: FiniteBallSpace = parse(read_json(file)?, file)?;
    let cfg = Config {
        max_balls,
        ..Config::default()
    };
    let report = space.classify(&cfg)?;
    if json {
        print_json(&report)?;
    } else {
        print_report(&space, &report);
    }
    Ok(true)
}

fn print_report(space: &FiniteBallSpace, report: &HierarchyReport) {
    out!(
        "{} points, {} balls: {}",
        space.universe_size(),
        space.len(),
        sets(space.balls())
    );
    for p in Property::ALL {
        match report.witness(p) {
            Some(w) => out!("  {:<4} false  witness: {}", p.name(), sets(w)),
            None => out!("  {:<4} {}", p.name(), report.get(p)),
        }
    }
}

enum Built {
    Space(FiniteBallSpace),
    Augmented(AugmentedBallSpace),
}

fn construct(kind: ConstructKind, file: &Path, out: Option<&Path>, json: bool) -> Outcome {
    let input = read_json(file)?;
    let cfg = Config::default();
    let built = match kind {
        ConstructKind::Product => Built::Space((**product(&field::<Vec<_>>(&input, "spaces", file)?)?.space()).clone()),
        ConstructKind::Coproduct => {
            Built::Space((**coproduct(&field::<Vec<_>>(&input, "spaces", file)?)?.space()).clone())
        }
        ConstructKind::FUn => Built::Space(parse::<FiniteBallSpace>(input, file)?.f_un_closure(&cfg)?),
        ConstructKind::Union => {
            let spaces: Vec<FiniteBallSpace> = field(&input, "spaces", file)?;
            let (first, rest) = spaces
                .split_first()
                .ok_or_else(|| Failure("union needs at least one space".into()))?;
            let mut acc = first.clone();
            for s in rest {
                acc = acc.union_families(s)?;
            }
            Built::Space(acc)
        }
        ConstructKind::Quotient => {
            let space: FiniteBallSpace = field(&input, "space", file)?;
            let table: Vec<usize> = field(&input, "table", file)?;
            let target: usize = field(&input, "target_size", file)?;
            Built::Space((*quotient(&space, &table, target)?.space).clone())
        }
        ConstructKind::Initial => {
            let sinks: Vec<Sink> = field(&input, "sinks", file)?;
            Built::Augmented(initial_structure(field(&input, "n", file)?, &sinks)?)
        }
        ConstructKind::Final => {
            let sources: Vec<Source> = field(&input, "sources", file)?;
            Built::Augmented(final_structure(field(&input, "n", file)?, &sources)?)
        }
        ConstructKind::Augment => Built::Augmented(augment(&parse::<FiniteBallSpace>(input, file)?)),
    };
    let value = match &built {
        Built::Space(s) => serde_json::to_value(s)?,
        Built::Augmented(a) => serde_json::to_value(a)?,
    };
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(&value)? + "\n")
            .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    if json {
        print_json(&value)?;
    } else {
        match &built {
            Built::Space(s) => out!("{} points, {} balls: {}", s.universe_size(), s.len(), sets(s.balls())),
            Built::Augmented(a) => {
                out!(
                    "{} points, {} sets (augmented): {}",
                    a.universe_size(),
                    a.family().len(),
                    sets(a.family())
                )
            }
        }
    }
    Ok(true)
}

struct VerifyArgs {
    theorem: String,
    opts: VerifyOptions,
}

fn run_verify(args: VerifyArgs, json: bool) -> Outcome {
    let ids: Vec<TheoremId> = if args.theorem == "all" {
        TheoremId::ALL.to_vec()
    } else {
        vec![args.theorem.parse()?]
    };
    let mut reports = Vec::new();
    for id in ids {
        reports.push(verify(id, &args.opts)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    if json {
        if reports.len() == 1 {
            print_json(&reports[0])?;
        } else {
            print_json(&reports)?;
        }
    } else {
        for r in &reports {
            out!(
                "{}: {} ({} checks)",
                r.theorem,
                if r.passed { "PASS" } else { "FAIL" },
                r.checked
            );
            for d in &r.details {
                out!("  {d}");
            }
            if let Some(c) = &r.counterexample {
                out!("  counterexample: {c}");
            }
        }
    }
    Ok(passed)
}

fn search(target: SearchTarget, max_size: Option<usize>, budget: u64, seed: u64, json: bool) -> Outcome {
    let found: Option<Value> = match target {
        SearchTarget::S2cUnionFailure => search_s2c_union_failure(max_size.unwrap_or(4), budget, seed)?
            .map(serde_json::to_value)
            .transpose()?,
        SearchTarget::AprimeNotCoproduct if budget == 0 => None,
        SearchTarget::AprimeNotCoproduct => search_aprime_not_coproduct(max_size.unwrap_or(2))?
            .map(serde_json::to_value)
            .transpose()?,
    };
    match (&found, json) {
        (Some(v), true) => print_json(v)?,
        (None, true) => print_json(&Value::Null)?,
        (Some(v), false) => print_found(target, v),
        (None, false) => out!("none found in budget"),
    }
    Ok(true)
}

fn print_found(target: SearchTarget, v: &Value) {
    let show = |key: &str| v.get(key).map(|x| x.to_string()).unwrap_or_default();
    match target {
        SearchTarget::S2cUnionFailure => {
            out!("first:   {}", show("first"));
            out!("second:  {}", show("second"));
            out!("union:   {}", show("union"));
            out!("centered system whose intersection holds no ball: {}", show("witness"));
        }
        SearchTarget::AprimeNotCoproduct => {
            out!("components:  {}", show("components"));
            out!("alternative: {}", show("alternative"));
            out!("target:      {}", show("target"));
            out!("tables:      {}", show("tables"));
            out!("preimage of {} is not in the alternative family", show("target_set"));
        }
    }
}

fn demo(max_i: usize, json: bool) -> Outcome {
    let cert = example_certificate(max_i)?;
    if json {
        print_json(&cert)?;
    } else {
        print_certificate(&cert);
    }
    Ok(cert.holds)
}

fn print_certificate(cert: &ExampleCertificate) {
    out!(
        "prime-gap balls B_i = (0, 1/p_i) minus the powers 1/p_i^j with p_i^j > p_(i+1), i <= {}",
        cert.max_i
    );
    for b in &cert.balls {
        out!("  B_{} = {}", b.i, b.ball);
    }
    out!("pairwise incomparable ({} pairs):", cert.incomparable.len());
    for w in &cert.incomparable {
        out!("  {} in B_{} only, {} in B_{} only", w.x, w.i, w.y, w.j);
    }
    for (i, j) in &cert.missing_witnesses {
        out!("  no witness found for ({i}, {j})");
    }
    out!("unions of neighbours:");
    for u in &cert.unions {
        out!(
            "  B_{} u B_{} = {} ({})",
            u.i,
            u.i + 1,
            u.union,
            if u.equals_interval { "exact" } else { "MISMATCH" }
        );
    }
    out!("prefix intersections of the union nest:");
    for p in &cert.prefix_intersections {
        out!(
            "  N = {}: {} nonempty={} sample={}",
            p.n,
            p.intersection,
            p.nonempty,
            p.sample.as_deref().unwrap_or("-")
        );
    }
    out!("nest intersection empty: {} ({})", cert.nest_empty, cert.emptiness_rule);
    out!("certificate {}", if cert.holds { "holds" } else { "FAILS" });
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Classify { file, max_balls } => classify(&file, max_balls, json),
        Command::Construct { kind, file, out } => construct(kind, &file, out.as_deref(), json),
        Command::Verify {
            theorem,
            seed,
            random,
            max_size,
            max_balls,
            max_i,
            sequential,
        } => {
            let d = VerifyOptions::default();
            let opts = VerifyOptions {
                seed,
                samples: random.unwrap_or(d.samples),
                max_size: max_size.unwrap_or(d.max_size),
                max_balls: max_balls.unwrap_or(d.max_balls),
                max_i: max_i.unwrap_or(d.max_i),
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::Parallel
                },
            };
            run_verify(VerifyArgs { theorem, opts }, json)
        }
        Command::Search {
            target,
            max_size,
            budget,
            seed,
        } => search(target, max_size, budget, seed, json),
        Command::Demo { max_i } => demo(max_i, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
