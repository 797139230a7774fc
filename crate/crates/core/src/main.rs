use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gramcalc::grammar::{builtin_grammar_named, Grammar};
use gramcalc::laurent::{parse_rational, LaurentPolynomial};
use gramcalc::permstat::{
    specialize_triangle, stat_table_with, triangle_csv, EnumOptions, StatKind, Triangle,
    DEFAULT_ENUM_CAP,
};
use gramcalc::series::{closed_form, ClosedForm, EvalPoint};
use gramcalc::verify::{format_summary, run_suite, CheckId, SuiteConfig};
use gramcalc::{parse_grammar, parse_polynomial, Error};

#[derive(Parser)]
#[command(
    name = "gramcalc",
    version,
    about = "Context-free grammar calculus for permutation statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the formal derivative of a grammar.
    Derive(DeriveArgs),
    /// Enumerate a statistic table over all permutations of [n].
    Table(TableArgs),
    /// Expand a closed-form generating function at a point.
    Series(SeriesArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct EnumArgs {
    /// Largest n enumerated by brute force.
    #[arg(long, env = "GRAMCALC_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
    cap: usize,
    /// Worker threads for enumeration.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl EnumArgs {
    fn options(&self) -> EnumOptions {
        EnumOptions {
            cap: self.cap,
            jobs: self.jobs.max(1),
        }
    }
}

#[derive(Args)]
struct DeriveArgs {
    /// Builtin grammar name or path to a .gram file.
    #[arg(long)]
    grammar: String,
    /// Start polynomial; defaults to the file's `start:` directive.
    #[arg(long)]
    start: Option<String>,
    /// Number of derivatives; defaults to the file's `n:` directive.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print every D^k for k = 0..=n.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct TableArgs {
    /// exterior_pdd, peak_dd or carlitz_quadruple.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: usize,
    /// Collapse to a one-statistic triangle row: T, U, R or W.
    #[arg(long)]
    triangle: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    enumeration: EnumArgs,
}

#[derive(Args)]
struct SeriesArgs {
    /// gen_z, gen_y, gessel_T, elizalde_noy_U, no_pdd_U0 or carlitz_F.
    #[arg(long)]
    which: String,
    /// Comma list of var=rational.
    #[arg(long, default_value = "")]
    point: String,
    /// Square root of the discriminant at the point.
    #[arg(long)]
    root: Option<String>,
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// Print n! times each coefficient.
    #[arg(long)]
    egf: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single check.
    #[arg(long)]
    check: Vec<String>,
    #[arg(long, default_value_t = 9)]
    max_n: usize,
    /// Series order for closed forms.
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    enumeration: EnumArgs,
}

enum Outcome {
    Ok(String),
    Failed(String),
}

fn load_grammar(
    source: &str,
) -> Result<(Grammar, Option<LaurentPolynomial>, Option<usize>), Error> {
    let looks_like_file = source.ends_with(".gram") || Path::new(source).is_file();
    if !looks_like_file {
        return Ok((builtin_grammar_named(source)?, None, None));
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::UnknownGrammar(format!("{source}: {e}")))?;
    let spec = parse_grammar(&text)?;
    let stem = Path::new(source).file_stem().and_then(|s| s.to_str());
    let grammar = spec.to_grammar(stem)?;
    Ok((grammar, spec.start, spec.default_n))
}

fn unsupported_format(cmd: &str, f: Format) -> Error {
    let name = match f {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
    };
    Error::UnknownName(format!("format {name} for {cmd}"))
}

fn derive(args: &DeriveArgs) -> Result<Outcome, Error> {
    let (grammar, file_start, file_n) = load_grammar(&args.grammar)?;
    let start = match &args.start {
        Some(s) => parse_polynomial(s)?,
        None => file_start.ok_or_else(|| Error::UnknownName("--start is required".into()))?,
    };
    let n = args
        .n
        .or(file_n)
        .ok_or_else(|| Error::UnknownName("--n is required".into()))?;
    let seq = grammar.derive_n(&start, n)?;
    let shown: Vec<(usize, &LaurentPolynomial)> = if args.all {
        seq.items.iter().enumerate().collect()
    } else {
        vec![(n, seq.last())]
    };
    let out = match args.format {
        Format::Text if args.all => shown
            .iter()
            .map(|(k, p)| format!("{k}: {}\n", grammar.format(p)))
            .collect(),
        Format::Text => format!("{}\n", grammar.format(shown[0].1)),
        Format::Json => {
            let items: Vec<_> = shown
                .iter()
                .map(|(k, p)| json!({"n": k, "text": grammar.format(p), "terms": p}))
                .collect();
            let body = if args.all {
                json!({"grammar": grammar, "start": grammar.format(&start), "items": items})
            } else {
                json!({"grammar": grammar, "start": grammar.format(&start), "n": n,
                       "text": items[0]["text"], "terms": items[0]["terms"]})
            };
            format!("{}\n", serde_json::to_string_pretty(&body).expect("json"))
        }
        Format::Csv => return Err(unsupported_format("derive", args.format)),
    };
    Ok(Outcome::Ok(out))
}

fn table(args: &TableArgs) -> Result<Outcome, Error> {
    let kind: StatKind = args.kind.parse()?;
    let table = stat_table_with(args.n, kind, &args.enumeration.options())?;
    let out = match &args.triangle {
        Some(which) => {
            let which: Triangle = which.parse()?;
            let row = specialize_triangle(&table, which)?;
            match args.format {
                Format::Csv => triangle_csv(args.n, &row),
                Format::Text => row
                    .iter()
                    .map(|(k, c)| format!("{}({},{}) = {c}\n", which.name(), args.n, k))
                    .collect(),
                Format::Json => {
                    let counts: serde_json::Map<String, serde_json::Value> =
                        row.iter().map(|(k, c)| (k.to_string(), json!(c))).collect();
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(
                            &json!({"n": args.n, "triangle": which.name(), "counts": counts})
                        )
                        .expect("json")
                    )
                }
            }
        }
        None => match args.format {
            Format::Csv => table.to_csv(),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&table).expect("json")),
            Format::Text => table
                .counts
                .iter()
                .map(|(key, c)| {
                    let key: Vec<String> = key.iter().map(u32::to_string).collect();
                    format!("({}) {c}\n", key.join(","))
                })
                .collect(),
        },
    };
    Ok(Outcome::Ok(out))
}

fn series(args: &SeriesArgs) -> Result<Outcome, Error> {
    let which: ClosedForm = args.which.parse()?;
    let assignment = EvalPoint::parse_assignment(&args.point)?;
    let root = match &args.root {
        Some(r) => Some(
            parse_rational(r).ok_or_else(|| Error::InadmissiblePoint(format!("bad root {r}")))?,
        ),
        None => None,
    };
    let point = EvalPoint::new(assignment, root);
    let s = closed_form(which, &point, args.order)?;
    let values = s.to_strings(args.egf);
    let out = match args.format {
        Format::Text => values
            .iter()
            .enumerate()
            .map(|(n, v)| format!("{n}: {v}\n"))
            .collect(),
        Format::Csv => values
            .iter()
            .enumerate()
            .map(|(n, v)| format!("{n},{v}\n"))
            .collect(),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "which": which.name(),
                "point": point.to_string(),
                "order": args.order,
                "egf": args.egf,
                "coeffs": values,
            }))
            .expect("json")
        ),
    };
    Ok(Outcome::Ok(out))
}

fn verify(args: &VerifyArgs) -> Result<Outcome, Error> {
    let only = args
        .check
        .iter()
        .map(|c| c.parse::<CheckId>())
        .collect::<Result<Vec<_>, _>>()?;
    let opts = args.enumeration.options();
    let config = SuiteConfig {
        max_n: args.max_n,
        order: args.order,
        enum_opts: opts,
        parallel: opts.jobs > 1,
        ..SuiteConfig::default()
    };
    let reports = run_suite(&config, &only)?;
    let out = match args.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).expect("json")
        ),
        Format::Text => format_summary(&reports),
        Format::Csv => return Err(unsupported_format("verify", args.format)),
    };
    Ok(if reports.iter().all(|r| r.passed) {
        Outcome::Ok(out)
    } else {
        Outcome::Failed(out)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Derive(a) => derive(a),
        Command::Table(a) => table(a),
        Command::Series(a) => series(a),
        Command::Verify(a) => verify(a),
    };
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(Outcome::Ok(out)) => {
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(out)) => {
            let _ = stdout.write_all(out.as_bytes());
            eprintln!("gramcalc: verification failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("gramcalc: {e}");
            ExitCode::from(1)
        }
    }
}
