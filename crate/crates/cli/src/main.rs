use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use argue::aggregation::{
    agg_bnd, agg_num, check_acr_criteria, check_flattening_criteria, check_selective_f4,
    flatten_arguments, overlapping_grounds, random_cases, random_selective_instances,
    BuiltinFlattener, CriteriaReport, Flattener,
};
use argue::defeat::{
    attacks, grounded_labelling, selective_aggregate, signed_closure_for, DefeatGraph, Label,
};
use argue::dictionary::{Confidence, DictionaryKind};
use argue::error::{Error, ErrorClass};
use argue::kernel::{parse_database, Database, Formula};
use argue::prover::{check_proof, find_arguments, ProofTerm, SearchLimits};

mod output;

use output::{ArgumentView, QueryResult};

#[derive(Parser)]
#[command(
    name = "argue",
    version,
    about = "Build, aggregate and defeat labelled arguments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every argument for a goal.
    Arguments(Query),
    /// Aggregate the arguments for a goal into one confidence.
    Aggregate(Query),
    /// Label the attack graph between pro and con arguments.
    Defeat(DefeatQuery),
    /// Print the proof term behind each argument for a goal.
    Prove(Query),
    /// Check a proof term or run a criteria suite.
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Shared {
    /// Knowledge base file.
    #[arg(long)]
    kb: Option<PathBuf>,
    #[arg(long, value_parser = parse_flattener)]
    flattener: Option<BuiltinFlattener>,
    /// Maximum proof height.
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[arg(long, default_value_t = 1000)]
    max_args: usize,
    /// Keep arguments whose grounds are not subset-minimal.
    #[arg(long)]
    no_minimal: bool,
    /// Aggregate only undefeated arguments.
    #[arg(long)]
    selective: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct Query {
    #[arg(long)]
    goal: String,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct DefeatQuery {
    /// Formula whose arguments are added to the graph.
    #[arg(long)]
    goal: Option<String>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Flattening,
    Acr,
}

#[derive(Args)]
struct CheckArgs {
    /// JSON proof term to validate against the knowledge base.
    #[arg(long, conflicts_with = "criteria")]
    proof: Option<PathBuf>,
    #[arg(long, value_enum)]
    criteria: Option<Suite>,
    /// Report the prover alone, without the signed closure.
    #[arg(long)]
    no_closure: bool,
    /// Number of randomized cases for the flattening suite.
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    shared: Shared,
}

fn parse_flattener(s: &str) -> Result<BuiltinFlattener, String> {
    s.parse()
}

/// Failure of a command, carrying its exit code.
enum Failure {
    Core(Error),
    Io(String),
    Usage(String),
    /// A criteria suite or proof check reported a violation; the report
    /// has been printed.
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Violation => 1,
            Failure::Io(_) | Failure::Usage(_) => 2,
            Failure::Core(e) => match e.class() {
                ErrorClass::Proof => 1,
                ErrorClass::Parse => 2,
                ErrorClass::Mismatch => 3,
            },
        }
    }
}

type Outcome = Result<String, Failure>;

impl Shared {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_depth: self.depth,
            max_args: self.max_args,
            minimal: !self.no_minimal,
        }
    }

    fn database(&self) -> Result<Database, Failure> {
        let path = self
            .kb
            .as_deref()
            .ok_or_else(|| Failure::Usage("--kb is required".into()))?;
        Ok(parse_database(&read(path)?)?)
    }

    fn flattener(&self, db: &Database) -> Result<BuiltinFlattener, Failure> {
        let f = self
            .flattener
            .unwrap_or_else(|| BuiltinFlattener::for_dictionary(db.dictionary()));
        if f.accepts(db.dictionary()) {
            Ok(f)
        } else {
            Err(Failure::Core(Error::WrongDictionary {
                expected: format!("dictionary accepted by the {f} flattener"),
                found: db.dictionary(),
            }))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn goal(text: &str) -> Result<Formula, Failure> {
    Ok(text.parse::<Formula>()?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output values serialize");
    s.push('\n');
    s
}

fn cmd_arguments(q: &Query, with_proofs: bool) -> Outcome {
    let db = q.shared.database()?;
    let goal = goal(&q.goal)?;
    let args = find_arguments(&db, &goal, q.shared.limits())?;
    match q.shared.format {
        Format::Json => {
            let result = QueryResult {
                goal: goal.readable().to_string(),
                arguments: args
                    .iter()
                    .map(|a| ArgumentView::new(a, with_proofs))
                    .collect(),
                confidence: None,
            };
            Ok(json(&result))
        }
        Format::Text => {
            let mut out = String::new();
            for a in &args {
                out.push_str(&format!("{a}\n"));
                if with_proofs {
                    out.push_str(&a.proof().render());
                }
            }
            if args.is_empty() {
                out.push_str("no arguments\n");
            }
            Ok(out)
        }
    }
}

fn cmd_aggregate(q: &Query) -> Outcome {
    let db = q.shared.database()?;
    let goal = goal(&q.goal)?;
    let limits = q.shared.limits();
    let f = q.shared.flattener(&db)?;
    let confidence = if q.shared.selective {
        selective_aggregate(&db, &goal, &f, limits)?
    } else {
        match (db.dictionary(), f) {
            (DictionaryKind::Bounded, BuiltinFlattener::Bnd) => agg_bnd(&db, &goal, limits)?,
            (DictionaryKind::Numeric, BuiltinFlattener::Num) => {
                Confidence::Degree(agg_num(&db, &goal, limits)?)
            }
            _ => flatten_arguments(&find_arguments(&db, &goal, limits)?, &f)?,
        }
    };
    if f == BuiltinFlattener::Num {
        let args = find_arguments(&db, &goal, limits)?;
        for (i, j) in overlapping_grounds(&args) {
            eprintln!(
                "warning: arguments {} and {} share grounds; they are combined as independent",
                args[i], args[j]
            );
        }
    }
    Ok(match q.shared.format {
        Format::Text => format!("{confidence}\n"),
        Format::Json => json(&QueryResult {
            goal: goal.readable().to_string(),
            arguments: Vec::new(),
            confidence: Some(confidence.to_string()),
        }),
    })
}

fn cmd_defeat(q: &DefeatQuery) -> Outcome {
    let db = q.shared.database()?;
    let goals = match &q.goal {
        Some(g) => vec![goal(g)?],
        None => Vec::new(),
    };
    let pool = signed_closure_for(&db, &goals, q.shared.limits())?;
    let edges = attacks(&pool);
    let labelling = grounded_labelling(&pool);
    match q.shared.format {
        Format::Json => Ok(json(&DefeatGraph::new(&pool, &edges, &labelling))),
        Format::Text => {
            let mut out = String::new();
            let width = |l: Label| format!("{l:<5}");
            for (i, a) in pool.pros().iter().enumerate() {
                out.push_str(&format!("P{i} {} pro {a}\n", width(labelling.pros[i])));
            }
            for (i, c) in pool.cons().iter().enumerate() {
                out.push_str(&format!(
                    "C{i} {} con {} from P{}\n",
                    width(labelling.cons[i]),
                    c.claim,
                    c.origin
                ));
            }
            for e in &edges {
                let kind = match e.kind {
                    argue::defeat::AttackKind::Rebut => "rebuts",
                    argue::defeat::AttackKind::Discount => "discounts",
                };
                out.push_str(&format!("C{} {kind} P{}\n", e.con, e.pro));
            }
            Ok(out)
        }
    }
}

fn report_outcome(text: String, passed: bool) -> Outcome {
    if passed {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Violation)
    }
}

fn render_report(report: &CriteriaReport, format: Format) -> String {
    match format {
        Format::Text => report.to_string(),
        Format::Json => json(report),
    }
}

fn cmd_check(c: &CheckArgs) -> Outcome {
    let format = c.shared.format;
    if let Some(path) = &c.proof {
        let db = c.shared.database()?;
        let text = read(path)?;
        let proofs: Vec<ProofTerm> = serde_json::from_str::<ProofTerm>(&text)
            .map(|p| vec![p])
            .or_else(|_| serde_json::from_str(&text))
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let args = proofs
            .iter()
            .map(|p| check_proof(&db, p))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(match format {
            Format::Text => args.iter().map(|a| format!("{a}\n")).collect(),
            Format::Json => json(
                &args
                    .iter()
                    .map(|a| ArgumentView::new(a, false))
                    .collect::<Vec<_>>(),
            ),
        });
    }
    match c.criteria {
        Some(Suite::Flattening) => {
            let f = match (c.shared.flattener, &c.shared.kb) {
                (Some(f), _) => f,
                (None, Some(_)) => {
                    BuiltinFlattener::for_dictionary(c.shared.database()?.dictionary())
                }
                (None, None) => BuiltinFlattener::Bnd,
            };
            let mut report = check_flattening_criteria(&f, &random_cases(&f, c.cases, c.seed));
            if c.shared.selective {
                let instances = random_selective_instances(c.cases.min(200), c.seed);
                let f4 = check_selective_f4(&instances, &f, c.shared.limits())?;
                report.results.retain(|r| r.criterion != f4.criterion);
                report.merge(argue::aggregation::CriteriaReport { results: vec![f4] });
            }
            report_outcome(render_report(&report, format), report.passed())
        }
        Some(Suite::Acr) => {
            let db = c.shared.database()?;
            let report = check_acr_criteria(&db, c.shared.limits())?;
            if c.no_closure {
                let text = render_report(&report.native, format);
                report_outcome(text, report.native.passed())
            } else {
                let text = match format {
                    Format::Text => {
                        format!("prover alone:\n{}closed:\n{}", report.native, report.closed)
                    }
                    Format::Json => json(&report),
                };
                report_outcome(text, report.closed.passed())
            }
        }
        None => Err(Failure::Usage("check needs --proof or --criteria".into())),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Arguments(q) => cmd_arguments(q, false),
        Command::Prove(q) => match q.shared.format {
            Format::Json => {
                let db = q.shared.database()?;
                let args = find_arguments(&db, &goal(&q.goal)?, q.shared.limits())?;
                let proofs: Vec<&ProofTerm> = args.iter().map(|a| a.proof()).collect();
                Ok(json(&proofs))
            }
            Format::Text => cmd_arguments(q, true),
        },
        Command::Aggregate(q) => cmd_aggregate(q),
        Command::Defeat(q) => cmd_defeat(q),
        Command::Check(c) => cmd_check(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Io(m) | Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Violation => {}
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
