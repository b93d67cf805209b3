use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};
use sizecalc::eval::{Context, EvalError};
use sizecalc::syntax::{self, Expr, SetExpr, SizeExpr, SyntaxError};
use sizecalc_core::seq::{self, compare, Outcome, Relation, Seq, SeqError};
use sizecalc_core::set::SetError;
use sizecalc_core::verifier::{self, Status, TheoremReport, VerifyError, VerifyOptions};

/// Sizes of countable sets as sequences.
#[derive(Parser, Debug)]
#[command(name = "sizecalc", version)]
struct Cli {
    /// number of terms to print
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    terms: u64,
    /// scan length for comparisons and theorem checks
    #[arg(long, global = true, env = "SIZECALC_HORIZON", default_value_t = seq::DEFAULT_HORIZON,
          value_parser = clap::value_parser!(u64).range(1..))]
    horizon: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// seed for randomized theorem checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// count 1 among the primes
    #[arg(long = "paper-primes", global = true)]
    one_is_prime: bool,
    /// arrange Q+ and intervals by coprime pairs (numerator or denominator)
    #[arg(long, global = true)]
    noncanonical_q: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size sequence of a size expression (a bare set means its sigma)
    Size { expr: String },
    /// Characteristic sequence of a set
    Chi { expr: String },
    /// Decide a relation between two size expressions; exit 0 proved, 1 refuted, 2 undecided
    Compare {
        /// =F, <F, <=F, <<F or ~F
        relation: String,
        lhs: String,
        rhs: String,
    },
    /// Re-check theorems by id, or `all`; exit 0 iff every report passes
    Verify {
        #[arg(required = true)]
        theorems: Vec<String>,
        /// interval length for homogeneity
        #[arg(long)]
        length: Option<String>,
        /// comma-separated interval starts for homogeneity
        #[arg(long)]
        starts: Option<String>,
        /// multiplier for ordering-chain and multiples-bound
        #[arg(long)]
        k: Option<u64>,
        /// random pairs for union-product-laws
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Components 1..=upto of a set
    Components {
        expr: String,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        upto: u64,
    },
    /// `n value` rows for plotting
    Plotdata {
        expr: String,
        /// overrides --terms
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        terms: Option<u64>,
    },
    /// Theorem ids accepted by verify
    ListTheorems,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{err}\n  {input}\n  {caret}^", caret = " ".repeat(.input[..err.offset].chars().count()))]
    Syntax { input: String, err: SyntaxError },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Usage(String),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

type Out = Result<(String, u8), CliError>;

fn parse_expr(input: &str) -> Result<Expr, CliError> {
    syntax::parse(input).map_err(|err| CliError::Syntax { input: input.into(), err })
}

fn parse_set(input: &str) -> Result<SetExpr, CliError> {
    syntax::parse_set(input).map_err(|err| CliError::Syntax { input: input.into(), err })
}

/// A size expression, reading a bare set as its size.
fn size_of(ctx: &Context, input: &str) -> Result<Seq, CliError> {
    let e = match parse_expr(input)? {
        Expr::Size(e) => e,
        Expr::Set(s) => SizeExpr::Sigma(s),
    };
    Ok(ctx.size(&e)?)
}

fn ratio(s: &str) -> Result<Ratio<i64>, CliError> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("`{s}` is not a rational number")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 fields"))
}

fn sequence(s: &Seq, terms: u64, format: Format) -> Out {
    Ok(match format {
        Format::Csv => (seq::prefix_csv(s, terms)?, 0),
        Format::Json => (pretty(&seq::prefix_json(s, terms)?), 0),
    })
}

fn outcome_code(o: Outcome) -> u8 {
    match o {
        Outcome::Proved => 0,
        Outcome::Refuted => 1,
        Outcome::Undecided => 2,
    }
}

fn report_code(reports: &[TheoremReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        2
    } else {
        0
    }
}

fn run(cli: Cli) -> Out {
    let ctx = Context { one_is_prime: cli.one_is_prime, noncanonical_q: cli.noncanonical_q, horizon: cli.horizon };
    let fmt = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Size { expr } => sequence(&size_of(&ctx, expr)?, cli.terms, fmt(Format::Csv)),
        Command::Chi { expr } => {
            let set = match parse_expr(expr)? {
                Expr::Set(s) | Expr::Size(SizeExpr::Sigma(s)) => s,
                Expr::Size(_) => return Err(CliError::Usage("chi takes a set expression".into())),
            };
            sequence(&ctx.set(&set)?.char_seq(), cli.terms, fmt(Format::Csv))
        }
        Command::Compare { relation, lhs, rhs } => {
            let rel = Relation::parse(relation)
                .ok_or_else(|| CliError::Usage(format!("unknown relation `{relation}`; use =F, <F, <=F, <<F or ~F")))?;
            let (a, b) = (size_of(&ctx, lhs)?, size_of(&ctx, rhs)?);
            let v = compare(rel, &a, &b, cli.horizon)?;
            let code = outcome_code(v.outcome);
            let text = match fmt(Format::Json) {
                Format::Json => {
                    let mut j = v.to_json();
                    j["lhs"] = json!(a.label());
                    j["rhs"] = json!(b.label());
                    pretty(&j)
                }
                Format::Csv => csv_rows(
                    &["relation", "lhs", "rhs", "outcome", "witness", "method"],
                    [vec![
                        rel.symbol().into(),
                        a.label().into(),
                        b.label().into(),
                        v.outcome.as_str().into(),
                        v.witness.map(|m| m.to_string()).unwrap_or_default(),
                        v.method.map(|m| m.as_str().to_string()).unwrap_or_default(),
                    ]],
                )?,
            };
            Ok((text, code))
        }
        Command::Verify { theorems, length, starts, k, trials } => {
            let mut o = VerifyOptions {
                horizon: cli.horizon,
                seed: cli.seed,
                include_one: cli.one_is_prime,
                noncanonical: cli.noncanonical_q,
                ..VerifyOptions::default()
            };
            if let Some(l) = length {
                o.length = ratio(l)?;
            }
            if let Some(s) = starts {
                o.starts = s.split(',').map(ratio).collect::<Result<_, _>>()?;
            }
            if let Some(k) = k {
                o.k = *k;
            }
            if let Some(t) = trials {
                o.trials = *t;
            }
            let ids: Vec<&str> = if theorems.iter().any(|t| t == "all") {
                verifier::THEOREMS.iter().map(|(id, _)| *id).collect()
            } else {
                theorems.iter().map(String::as_str).collect()
            };
            let reports = ids.iter().map(|id| verifier::run(id, &o)).collect::<Result<Vec<_>, _>>()?;
            let code = report_code(&reports);
            let text = match fmt(Format::Json) {
                Format::Json if reports.len() == 1 => pretty(&reports[0].to_json()),
                Format::Json => pretty(&Value::Array(reports.iter().map(TheoremReport::to_json).collect())),
                Format::Csv => csv_rows(
                    &["theorem", "status", "horizon"],
                    reports.iter().map(|r| vec![r.theorem.clone(), r.status.as_str().into(), r.horizon.to_string()]),
                )?,
            };
            Ok((text, code))
        }
        Command::Components { expr, upto } => {
            let set = ctx.set(&parse_set(expr)?)?;
            let text = match fmt(Format::Csv) {
                Format::Json => {
                    let comps = (1..=*upto).map(|n| set.component_json(n)).collect::<Result<Vec<_>, _>>()?;
                    pretty(&json!({"set": set.label(), "universe": set.universe().name(), "components": comps}))
                }
                Format::Csv => {
                    let mut rows = Vec::new();
                    for n in 1..=*upto {
                        rows.extend(set.component(n)?.iter().map(|e| vec![n.to_string(), e.to_string()]));
                    }
                    csv_rows(&["n", "element"], rows)?
                }
            };
            Ok((text, 0))
        }
        Command::Plotdata { expr, terms } => {
            let s = size_of(&ctx, expr)?;
            let mut text = String::new();
            for (i, v) in s.prefix(terms.unwrap_or(cli.terms))?.iter().enumerate() {
                text.push_str(&format!("{} {v}\n", i + 1));
            }
            Ok((text, 0))
        }
        Command::ListTheorems => {
            let text = match fmt(Format::Csv) {
                Format::Json => pretty(&Value::Array(
                    verifier::THEOREMS.iter().map(|(id, d)| json!({"id": id, "description": d})).collect(),
                )),
                Format::Csv => csv_rows(
                    &["id", "description"],
                    verifier::THEOREMS.iter().map(|(id, d)| vec![id.to_string(), d.to_string()]),
                )?,
            };
            Ok((text, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let ok = matches!(e.kind(), DisplayHelp | DisplayVersion);
            let _ = e.print();
            return ExitCode::from(if ok { 0 } else { 3 });
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
