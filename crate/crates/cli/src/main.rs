use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use macsum::combinat::{Composition, Partition};
use macsum::field::{parse, ratio_to_f64, Symbol};
use macsum::macdonald::{
    compose_f, hall_littlewood, jack_p, macdonald_p, monomial_limit, q_whittaker_p, HlMode, Strategy,
};
use macsum::mpstrace::{fock_trace, fock_trace_closed, relative_error, FockTruncation, DEFAULT_CUTOFF, MAX_N, MAX_R};
use macsum::oracle::{gram_schmidt_p, Variant};
use macsum::polyring::Polynomial;
use macsum::verify::{run_bench, run_suite, Bounds, Suite};
use macsum::Error;

/// Environment variable capping the worker thread count.
const THREADS_VAR: &str = "MACSUM_THREADS";

const MAX_WEIGHT: u32 = 8;
const MAX_VARS: usize = 6;

#[derive(Parser)]
#[command(name = "macsum", version, about = "Exact symmetric Macdonald polynomials and their checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Macdonald,
    HallLittlewood,
    Jack,
    QWhittaker,
    Monomial,
    NonsymF,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum HlArg {
    Hecke,
    Standard,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hecke,
    Golden,
    Coefficients,
    Oracle,
    Eigen,
    Specialization,
    Structure,
    Trace,
    Lemma,
    Mps,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Hecke => Suite::Hecke,
            SuiteArg::Golden => Suite::Golden,
            SuiteArg::Coefficients => Suite::Coefficients,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Eigen => Suite::Eigen,
            SuiteArg::Specialization => Suite::Specialization,
            SuiteArg::Structure => Suite::Structure,
            SuiteArg::Trace => Suite::Trace,
            SuiteArg::Lemma => Suite::Lemma,
            SuiteArg::Mps => Suite::Mps,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Macdonald,
    Jack,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    Naive,
    Memoized,
    Parallel,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print a polynomial of the chosen family.
    Compute {
        /// Partition such as 3,1 (a composition for nonsym-f).
        #[arg(long)]
        lambda: String,
        /// Number of variables; defaults to the length of lambda.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "macdonald")]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Hall-Littlewood evaluation route.
        #[arg(long, value_enum, default_value = "hecke")]
        hl_mode: HlArg,
    },
    /// Compute P_lambda and substitute parameters, e.g. --set q=0 --set t=1.
    Specialize {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n: Option<usize>,
        /// SYMBOL=VALUE, VALUE an expression in the remaining symbols.
        #[arg(long = "set", required = true)]
        assignments: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        max_weight: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Print only the summary, without the per-instance list.
        #[arg(long)]
        summary: bool,
    },
    /// Compare the nested formula with the Gram-Schmidt oracle on one input.
    OracleCompare {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "macdonald")]
        variant: VariantArg,
    },
    /// Truncated trace of L^b R^c D against its closed form.
    TraceCheck {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
        /// Exponent of t in the diagonal operator.
        #[arg(long, default_value_t = 1)]
        a: u32,
        /// Exponent of q in the diagonal operator.
        #[arg(long = "bq", default_value_t = 0)]
        bq: u32,
        #[arg(long, default_value = "1/2")]
        t: String,
        #[arg(long, default_value = "1/3")]
        q: String,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Time the evaluation strategies; outputs are compared first.
    Bench {
        /// Single input, or the nonzero parts of a family when --max-n is set.
        #[arg(long, default_value = "3,2,1")]
        lambda: String,
        #[arg(long)]
        n: Option<usize>,
        /// Pad lambda with zeros for every n from its length up to this.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "naive,memoized,parallel")]
        scenario: Vec<Scenario>,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
}

/// Failure with its exit code: 1 check failed, 2 bad input, 3 internal.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::NotAPartition(_)
            | Error::TooFewVariables { .. }
            | Error::LengthMismatch { .. }
            | Error::OutOfRange(_)
            | Error::Oversize(_)
            | Error::UnknownSymbol(_)
            | Error::VanishingDenominator(_)
            | Error::Divergent(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

fn partition_arg(s: &str, n: Option<usize>) -> std::result::Result<(Partition, usize), Failure> {
    let p: Partition = s.parse()?;
    let n = n.unwrap_or(p.len());
    if n == 0 || n > MAX_VARS {
        return Err(Failure::input(format!("n must be in 1..={}", MAX_VARS)));
    }
    if p.size() > MAX_WEIGHT {
        return Err(Failure::input(format!("|lambda| must be at most {}", MAX_WEIGHT)));
    }
    Ok((p.with_len(n)?, n))
}

fn render(p: &Polynomial, format: Format) -> std::result::Result<String, Failure> {
    Ok(match format {
        Format::Text => p.to_string(),
        Format::Latex => p.to_latex(),
        Format::Json => serde_json::to_string_pretty(&p.to_json()).map_err(|e| Failure::internal(e.to_string()))?,
    })
}

fn compute(lambda: &str, n: Option<usize>, family: FamilyArg, format: Format, hl: HlArg) -> Outcome {
    let p = if let FamilyArg::NonsymF = family {
        let mu: Composition = lambda.parse()?;
        if n.is_some_and(|n| n != mu.0.len()) {
            return Err(Failure::input("n must equal the length of the composition"));
        }
        if mu.0.is_empty() || mu.0.len() > MAX_VARS {
            return Err(Failure::input(format!("composition length must be in 1..={}", MAX_VARS)));
        }
        compose_f(&mu)?
    } else {
        let (l, n) = partition_arg(lambda, n)?;
        match family {
            FamilyArg::Macdonald => macdonald_p(&l, n)?,
            FamilyArg::HallLittlewood => hall_littlewood(
                &l,
                n,
                match hl {
                    HlArg::Hecke => HlMode::HeckeSum,
                    HlArg::Standard => HlMode::StandardSum,
                },
            )?,
            FamilyArg::Jack => jack_p(&l, n)?,
            FamilyArg::QWhittaker => q_whittaker_p(&l, n)?,
            FamilyArg::Monomial => monomial_limit(&l, n)?,
            FamilyArg::NonsymF => unreachable!(),
        }
    };
    Ok((render(&p, format)?, true))
}

fn specialize(lambda: &str, n: Option<usize>, assignments: &[String], format: Format) -> Outcome {
    let (l, n) = partition_arg(lambda, n)?;
    let mut syms = Vec::new();
    for a in assignments {
        let (s, _) = a
            .split_once('=')
            .ok_or_else(|| Failure::input(format!("expected SYMBOL=VALUE, got `{}`", a)))?;
        let sym: Symbol = s.trim().parse()?;
        if sym == Symbol::Alpha {
            return Err(Failure::input("alpha does not occur in P_lambda"));
        }
        if syms.contains(&sym) {
            return Err(Failure::input(format!("`{}` assigned twice", sym)));
        }
        syms.push(sym);
    }
    let p = macdonald_p(&l, n)?;
    let target = syms.iter().fold(p.params(), |acc, &s| acc.without(s));
    let mut assignment = Vec::new();
    for (a, &sym) in assignments.iter().zip(&syms) {
        let value = a.split_once('=').expect("checked").1;
        assignment.push((sym, parse(value, target)?));
    }
    Ok((render(&p.specialize_params(&assignment)?, format)?, true))
}

fn pretty<T: serde::Serialize>(v: &T) -> std::result::Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::internal(e.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: SuiteArg,
    max_weight: Option<u32>,
    n: Option<usize>,
    r: Option<u32>,
    samples: Option<usize>,
    seed: Option<u64>,
    cutoff: Option<usize>,
    summary: bool,
) -> Outcome {
    let suite = Suite::from(suite);
    let mut b = Bounds::standard(suite);
    b.max_weight = max_weight.unwrap_or(b.max_weight);
    b.n = n.unwrap_or(b.n);
    b.r = r.unwrap_or(b.r);
    b.samples = samples.unwrap_or(b.samples);
    b.seed = seed.unwrap_or(b.seed);
    b.cutoff = cutoff.unwrap_or(b.cutoff);
    if b.max_weight > MAX_WEIGHT || b.n > MAX_VARS || b.samples > 10_000 {
        return Err(Failure::input(format!(
            "bounds exceed max-weight {}, n {}, samples 10000",
            MAX_WEIGHT, MAX_VARS
        )));
    }
    if matches!(suite, Suite::Lemma | Suite::Mps) && (b.r > MAX_R || b.n > MAX_N) {
        return Err(Failure::input(format!("trace suites support r <= {} and n <= {}", MAX_R, MAX_N)));
    }
    if matches!(suite, Suite::Trace) && b.r > 10 {
        return Err(Failure::input("trace suite supports r <= 10"));
    }
    let mut report = run_suite(suite, &b)?;
    if summary {
        report.checks.clear();
    }
    Ok((pretty(&report)?, report.passed))
}

fn oracle_compare(lambda: &str, n: Option<usize>, variant: VariantArg) -> Outcome {
    let (l, n) = partition_arg(lambda, n)?;
    let (nested, oracle) = match variant {
        VariantArg::Macdonald => (macdonald_p(&l, n)?, gram_schmidt_p(&l, n, Variant::Macdonald)?),
        VariantArg::Jack => (jack_p(&l, n)?, gram_schmidt_p(&l, n, Variant::Jack)?),
    };
    let agree = nested == oracle;
    let out = json!({
        "lambda": l.to_string(),
        "n": n,
        "agree": agree,
        "nested": nested.to_json(),
        "oracle": oracle.to_json(),
    });
    Ok((pretty(&out)?, agree))
}

fn rational(name: &str, s: &str) -> std::result::Result<BigRational, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::input(format!("--{} expects a rational such as 1/2, got `{}`", name, s)))
}

fn trace_check(b: usize, c: usize, a: u32, bq: u32, t: &str, q: &str, cutoff: usize) -> Outcome {
    let t = rational("t", t)?;
    let q = rational("q", q)?;
    if b > 10 || c > 10 || cutoff > 2000 {
        return Err(Failure::input("b, c must be at most 10 and the cutoff at most 2000"));
    }
    let trunc = FockTruncation::new(cutoff, t.clone(), q.clone())?;
    let lhs = fock_trace(b, c, (a, bq), &trunc)?;
    let rhs = fock_trace_closed(b, c, (a, bq), &t, &q)?;
    let err = relative_error(&lhs.value, &rhs);
    let passed = err < 1e-9;
    let out = json!({
        "b": b, "c": c, "diag": [a, bq],
        "t": t.to_string(), "q": q.to_string(),
        "cutoff": cutoff,
        "lhs": ratio_to_f64(&lhs.value),
        "rhs": ratio_to_f64(&rhs),
        "rel_err": err,
        "tail_bound": lhs.tail_bound,
        "passed": passed,
    });
    Ok((pretty(&out)?, passed))
}

fn bench(
    lambda: &str,
    n: Option<usize>,
    max_n: Option<usize>,
    scenarios: &[Scenario],
    repetitions: usize,
    format: TableFormat,
) -> Outcome {
    let base: Partition = lambda.parse()?;
    let inputs: Vec<(Partition, usize)> = match max_n {
        Some(m) => {
            if m > MAX_VARS + 1 {
                return Err(Failure::input(format!("--max-n must be at most {}", MAX_VARS + 1)));
            }
            (base.length().max(1)..=m).map(|k| Ok((base.with_len(k)?, k))).collect::<Result<_, Error>>()?
        }
        None => vec![partition_arg(lambda, n)?],
    };
    let strategies: Vec<Strategy> = scenarios
        .iter()
        .map(|s| match s {
            Scenario::Naive => Strategy::Naive,
            Scenario::Memoized => Strategy::Memoized,
            Scenario::Parallel => Strategy::Parallel,
        })
        .collect();
    let report = run_bench(&inputs, &strategies, repetitions)?;
    if let Some(m) = report.mismatch {
        return Err(Failure::internal(format!("scenario outputs differ: {}", m)));
    }
    let text = match format {
        TableFormat::Json => pretty(&report)?,
        TableFormat::Csv => {
            let mut s = String::from("lambda,n,strategy,cosets,terms,generator_applications,cache_hits,median_ms,min_ms\n");
            for r in &report.rows {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{:?},{},{},{},{},{:.3},{:.3}",
                    r.lambda, r.n, r.strategy, r.cosets, r.terms, r.generator_applications, r.cache_hits, r.median_ms, r.min_ms
                );
            }
            s.trim_end().to_string()
        }
    };
    Ok((text, true))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compute { lambda, n, family, format, hl_mode } => compute(&lambda, n, family, format, hl_mode),
        Command::Specialize { lambda, n, assignments, format } => specialize(&lambda, n, &assignments, format),
        Command::Verify { suite, max_weight, n, r, samples, seed, cutoff, summary } => {
            verify(suite, max_weight, n, r, samples, seed, cutoff, summary)
        }
        Command::OracleCompare { lambda, n, variant } => oracle_compare(&lambda, n, variant),
        Command::TraceCheck { b, c, a, bq, t, q, cutoff } => trace_check(b, c, a, bq, &t, &q, cutoff),
        Command::Bench { lambda, n, max_n, scenario, repetitions, format } => {
            bench(&lambda, n, max_n, &scenario, repetitions, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("error: {} must be a positive integer", THREADS_VAR);
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok((out, passed)) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", out);
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
