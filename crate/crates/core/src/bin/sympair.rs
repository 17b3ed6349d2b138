use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use sympair::codes::DEFAULT_BUDGET;
use sympair::galois::parse_digits;
use sympair::pairmetric::{min_distance_brute, Method, Metric, OracleOptions};
use sympair::theory::{self, UnitSampling};
use sympair::{Base, CodeSpec, ConstacyclicCode, Error, Field, Gf, QuotientRing};

const EXIT_CONSTRAINT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "sympair", version, about = "Symbol-pair distances of repeated-root constacyclic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field modulus, primitive elements and the λ making x^n − λ irreducible.
    FieldInfo(RunConfig),
    /// Is x^n − λ irreducible?
    CheckBinomial {
        #[command(flatten)]
        config: RunConfig,
        /// λ as comma-separated GF(p) digits; defaults to --alpha0.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Materialize a code and report its size and generators.
    BuildCode {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long)]
        spec: String,
    },
    /// Pair and Hamming distance of a code.
    Distance {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value_t = DistanceMethod::Both)]
        method: DistanceMethod,
        /// Fail with exit code 4 instead of falling back to an upper bound.
        #[arg(long)]
        exact: bool,
    },
    /// MDS classification or formula-vs-oracle consistency over every code of the ring.
    Scan {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, value_enum)]
        target: ScanTarget,
        /// Random units tried as b(x) for the type II/III ideals.
        #[arg(long, default_value_t = 3)]
        units: usize,
    },
    /// The published MDS table rows at these parameters, with computed distances.
    Tables(RunConfig),
}

#[derive(Args, Clone)]
struct RunConfig {
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value_t = 1)]
    n: u64,
    /// α0 as comma-separated GF(p) digits; defaults to the first λ with x^n − λ irreducible.
    #[arg(long)]
    alpha0: Option<String>,
    /// β; when given, codes live over GF(p^m) + u·GF(p^m).
    #[arg(long)]
    beta: Option<String>,
    /// Monic field modulus, constant term first, e.g. "2,2,1".
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceMethod {
    Formula,
    Brute,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanTarget {
    Mds,
    Consistency,
}

/// Command output before rendering.
struct Output {
    results: Vec<Value>,
    /// Pre-rendered Markdown, when the generic table layout does not fit.
    markdown: Option<String>,
    exit: u8,
}

impl Output {
    fn new(results: Vec<Value>) -> Self {
        Output { results, markdown: None, exit: 0 }
    }
}

enum Failure {
    Lib(Error),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.command {
        Command::FieldInfo(c) | Command::Tables(c) => c.clone(),
        Command::CheckBinomial { config, .. }
        | Command::BuildCode { config, .. }
        | Command::Distance { config, .. }
        | Command::Scan { config, .. } => config.clone(),
    };
    let outcome = match &cli.command {
        Command::FieldInfo(c) => field_info(c),
        Command::CheckBinomial { config, lambda } => check_binomial(config, lambda.as_deref()),
        Command::BuildCode { config, spec } => build_code(config, spec),
        Command::Distance { config, spec, method, exact } => distance(config, spec, *method, *exact),
        Command::Scan { config, target, units } => scan(config, *target, *units),
        Command::Tables(c) => tables(c),
    };
    let (text, code) = match outcome {
        Ok(out) => (render(&config, &out), out.exit),
        Err(failure) => {
            let (kind, message, code) = match failure {
                Failure::Lib(e) => (e.kind().to_string(), e.to_string(), EXIT_CONSTRAINT),
                Failure::Budget(msg) => ("BudgetExceeded".to_string(), msg, EXIT_BUDGET),
            };
            let body = json!({
                "config": config_json(&config),
                "error": {"kind": kind, "message": message},
                "version": env!("CARGO_PKG_VERSION"),
            });
            (format!("{}\n", serde_json::to_string_pretty(&body).unwrap()), code)
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}

fn config_json(c: &RunConfig) -> Value {
    json!({
        "p": c.p, "m": c.m, "s": c.s, "n": c.n,
        "alpha0": c.alpha0, "beta": c.beta, "modulus": c.modulus,
        "budget": c.budget,
        "format": match c.format { Format::Json => "json", Format::Csv => "csv", Format::Md => "md" },
        "seed": c.seed,
    })
}

fn render(config: &RunConfig, out: &Output) -> String {
    match config.format {
        Format::Json => {
            let body = json!({
                "config": config_json(config),
                "results": out.results,
                "version": env!("CARGO_PKG_VERSION"),
            });
            format!("{}\n", serde_json::to_string_pretty(&body).unwrap())
        }
        Format::Csv => {
            let (header, rows) = flatten(&out.results);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).unwrap();
            for row in rows {
                w.write_record(&row).unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
        Format::Md => {
            if let Some(md) = &out.markdown {
                return md.clone();
            }
            let (header, rows) = flatten(&out.results);
            let mut text = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
            for row in rows {
                text.push_str(&format!("| {} |\n", row.join(" | ")));
            }
            text
        }
    }
}

/// Column names in first-seen order and stringified cells.
fn flatten(results: &[Value]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header: Vec<String> = Vec::new();
    for r in results {
        if let Value::Object(map) = r {
            for k in map.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let cell = |v: Option<&Value>| match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    };
    let rows = results
        .iter()
        .map(|r| header.iter().map(|k| cell(r.get(k))).collect())
        .collect();
    (header, rows)
}

fn field(c: &RunConfig) -> Result<Field, Failure> {
    let modulus = c.modulus.as_deref().map(parse_digits).transpose()?;
    Ok(Field::new(c.p, c.m, modulus.as_deref())?)
}

fn alpha0(c: &RunConfig, f: &Field) -> Result<Gf, Failure> {
    match &c.alpha0 {
        Some(text) => Ok(f.parse(text)?),
        None => f.irreducible_binomial_constants(c.n).first().copied().ok_or_else(|| {
            Failure::Lib(Error::ConstructionRefused(format!(
                "no λ makes x^{} - λ irreducible over GF({}^{})",
                c.n, c.p, c.m
            )))
        }),
    }
}

fn ring(c: &RunConfig) -> Result<Arc<QuotientRing>, Failure> {
    let f = field(c)?;
    let a0 = alpha0(c, &f)?;
    let (base, beta) = match &c.beta {
        Some(b) => (Base::Chain, f.parse(b)?),
        None => (Base::Field, Gf::ZERO),
    };
    Ok(QuotientRing::new(f, base, c.n, c.s, a0, beta)?)
}

fn field_info(c: &RunConfig) -> Result<Output, Failure> {
    let f = field(c)?;
    let fmt = |xs: Vec<Gf>| xs.into_iter().map(|x| f.format(x)).collect::<Vec<_>>();
    Ok(Output::new(vec![json!({
        "field": f.to_string(),
        "q": f.q(),
        "modulus": f.modulus(),
        "primitive_elements": fmt(f.primitive_elements()),
        "n": c.n,
        "irreducible_binomial_constants": fmt(f.irreducible_binomial_constants(c.n)),
    })]))
}

fn check_binomial(c: &RunConfig, lambda: Option<&str>) -> Result<Output, Failure> {
    let f = field(c)?;
    let lambda = match lambda {
        Some(text) => f.parse(text)?,
        None => alpha0(c, &f)?,
    };
    let irreducible = f.binomial_irreducible(c.n, lambda)?;
    Ok(Output::new(vec![json!({
        "n": c.n,
        "lambda": f.format(lambda),
        "order": f.order(lambda)?,
        "irreducible": irreducible,
    })]))
}

fn build_code(c: &RunConfig, text: &str) -> Result<Output, Failure> {
    let ring = ring(c)?;
    let spec = CodeSpec::parse(&ring, text)?;
    let code = ConstacyclicCode::build(&spec)?;
    Ok(Output::new(vec![json!({
        "spec": spec.to_string(),
        "generator": theory::generator_label(&spec),
        "length": code.length(),
        "dim_p": code.dim_p(),
        "closed_form_log_size": spec.closed_form_log_size(),
        "generators": spec.generators()?.iter().map(|g| g.to_text()).collect::<Vec<_>>(),
    })]))
}

fn distance(c: &RunConfig, text: &str, method: DistanceMethod, exact: bool) -> Result<Output, Failure> {
    let ring = ring(c)?;
    let spec = CodeSpec::parse(&ring, text)?;
    let mut result = Map::new();
    result.insert("spec".into(), json!(spec.to_string()));
    let formula = if method != DistanceMethod::Brute {
        let w = theory::dsp_formula(&spec)?;
        let d_h = theory::dh_formula_spec(&spec)?;
        result.insert("formula".into(), json!({"d_sp": w.value, "d_H": d_h, "branch": w}));
        Some((w.value, d_h))
    } else {
        None
    };
    let mut exit = 0;
    if method != DistanceMethod::Formula {
        let code = ConstacyclicCode::build(&spec)?;
        let report = min_distance_brute(&code, Metric::Pair, OracleOptions { budget: c.budget, seed: c.seed });
        let upper = report.method == Method::UpperBound;
        if upper && exact {
            return Err(Failure::Budget(format!(
                "code has p^{} words, above the budget of {}",
                code.dim_p(),
                c.budget
            )));
        }
        result.insert("oracle".into(), report.to_json());
        result.insert("warning".into(), json!(upper.then_some("budget exceeded: oracle value is an upper bound")));
        if let Some((d_sp, d_h)) = formula {
            let consistent = if upper {
                report.d_sp >= d_sp && report.d_h >= d_h
            } else {
                report.d_sp == d_sp && report.d_h == d_h
            };
            result.insert("match".into(), json!(if upper { None } else { Some(consistent) }));
            if !consistent {
                exit = EXIT_MISMATCH;
            }
        }
    }
    let mut out = Output::new(vec![Value::Object(result)]);
    out.exit = exit;
    Ok(out)
}

fn scan(c: &RunConfig, target: ScanTarget, units: usize) -> Result<Output, Failure> {
    let ring = ring(c)?;
    let sampling = UnitSampling { units, seed: c.seed };
    match target {
        ScanTarget::Mds => {
            let verdicts = theory::mds_classify(&ring, sampling);
            let mut out = Output::new(verdicts.iter().map(|v| v.to_json()).collect());
            out.markdown = Some(theory::verdicts_to_markdown(&verdicts));
            Ok(out)
        }
        ScanTarget::Consistency => {
            let report = theory::consistency_scan(&ring, c.budget, sampling)?;
            let mut results: Vec<Value> = report.entries.iter().map(|e| e.to_json()).collect();
            results.extend(report.skipped.iter().map(|s| json!({"spec": s.to_string(), "skipped": "budget"})));
            let mut out = Output::new(results);
            if report.mismatches().next().is_some() {
                out.exit = EXIT_MISMATCH;
            }
            Ok(out)
        }
    }
}

fn tables(c: &RunConfig) -> Result<Output, Failure> {
    let ring = ring(c)?;
    let rows = match ring.base() {
        Base::Field => theory::table1_rows(&ring),
        Base::Chain if ring.beta().is_zero() => theory::table2_rows(&ring),
        Base::Chain => Vec::new(),
    };
    let mut results = Vec::new();
    let mut verdicts = Vec::new();
    let mut exit = 0;
    for row in &rows {
        for spec in &row.specs {
            let formula = theory::dsp_formula(spec)?.value;
            let code = ConstacyclicCode::build(spec)?;
            let report = min_distance_brute(&code, Metric::Pair, OracleOptions { budget: c.budget, seed: c.seed });
            let oracle = (report.method == Method::Exhaustive).then_some(report.d_sp);
            let verdict = theory::singleton_defect(spec, formula);
            let agrees = formula == row.claimed_d_sp && oracle.is_none_or(|d| d == formula) && verdict.is_mds;
            if !agrees {
                exit = EXIT_MISMATCH;
            }
            results.push(json!({
                "generator": row.generator,
                "spec": spec.to_string(),
                "size_log_p": verdict.size_log_p,
                "claimed_d_sp": row.claimed_d_sp,
                "formula_d_sp": formula,
                "oracle_d_sp": oracle,
                "singleton_defect": verdict.singleton_defect,
                "is_mds": verdict.is_mds,
            }));
            verdicts.push(verdict);
        }
    }
    let mut out = Output::new(results);
    out.markdown = Some(theory::verdicts_to_markdown(&verdicts));
    out.exit = exit;
    Ok(out)
}
