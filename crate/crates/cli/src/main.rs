mod catalog;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hullsmith::descriptor::{load_code, CodeDescriptor, OutcomeDescriptor};
use hullsmith::eaqecc::{mds_summary_table, theorem_q22_enumerate, witness, EaqeccParams, MAX_WITNESS_Q};
use hullsmith::families::{build_family, build_family_code, hull_lb_formula, sweep, Family, FamilySpec, TRange};
use hullsmith::grs::{mds_certificate, Code, InnerProduct};
use hullsmith::rules::{extend_both, extend_length_infty, extend_length_zero, hull_reduce, increase_dim, Direction, RuleOutcome};
use hullsmith::suites::{self, SuiteReport};
use hullsmith::Error;

use catalog::Catalog;

const AFTER_HELP: &str = "\
Exit codes: 0 success, 1 verification failure, 2 usage or precondition error,
3 violated construction guarantee (a bug-report JSON is written to
$HULLSMITH_BUG_DIR or the working directory).

Results are appended to a content-addressed JSONL catalog at
$HULLSMITH_CATALOG (default .hullsmith/catalog.jsonl); --no-catalog skips it.

CSV layouts (field elements are integer reps, no locale formatting):
  tables:            q,family,h,n,k_logical,d,c,mds,shape_id,witnessed
  tables --summary:  q,family,h,n,t,branch,d_min,d_max,c_formula
  families --sweep:  family,q,h,n,k,t,l_formula,hull_computed,mds_certificate";

#[derive(Parser)]
#[command(name = "hullsmith", version, about = "Hermitian hulls of GRS codes and the EAQECC parameters they yield", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Do not record results in the catalog.
    #[arg(long, global = true)]
    no_catalog: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family code of dimension k and write its descriptor.
    Build(BuildArgs),
    /// Apply a propagation rule to a code descriptor.
    Rule(RuleArgs),
    /// Enumerate EAQECC parameters for a family.
    Tables(TablesArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Emit a family code descriptor or its hull sweep.
    Families(FamiliesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    FullField,
    CosetH,
    #[value(name = "coset-2h")]
    Coset2h,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RangeArg {
    Ceil,
    Floor,
}

#[derive(clap::Args)]
struct BuildArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    h: Option<u32>,
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    k: usize,
    /// Descriptor path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleOp {
    ExtendLength,
    ExtendZero,
    IncreaseDim,
    ExtendBoth,
    Reduce,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Up,
    Down,
}

#[derive(clap::Args)]
struct RuleArgs {
    #[arg(value_enum)]
    op: RuleOp,
    /// Code or outcome descriptor.
    #[arg(long)]
    code: PathBuf,
    /// Integer rep of λ ∈ GF(q)*; extend-both cancels the corner when omitted.
    #[arg(long)]
    lambda: Option<u32>,
    #[arg(long)]
    target_hull: Option<usize>,
    #[arg(long, value_enum, default_value = "up")]
    direction: DirArg,
    /// hermitian, euclidean or galois:<e> (reduce only).
    #[arg(long, default_value = "hermitian")]
    inner: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct TablesArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    h: Option<u32>,
    /// 1 full-field, 2 coset-h, 3 coset-2h.
    #[arg(long)]
    family: u8,
    /// Certify each tuple by building a code (q <= 9).
    #[arg(long)]
    witness: bool,
    /// Emit the distance/entanglement summary instead of tuples.
    #[arg(long)]
    summary: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    #[value(name = "lemma-q22")]
    LemmaQ22,
    #[value(name = "lemma-h1")]
    LemmaH1,
    #[value(name = "lemma-2h1")]
    Lemma2h1,
    #[value(name = "prop-grs1")]
    PropGrs1,
    #[value(name = "prop-3")]
    Prop3,
    #[value(name = "prop-4")]
    Prop4,
    #[value(name = "theorem-grs1")]
    TheoremGrs1,
    Tables,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteName,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    h: Option<u32>,
    /// Family number for the tables suite.
    #[arg(long)]
    family: Option<u8>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = suites::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    witness: bool,
}

#[derive(clap::Args)]
struct FamiliesArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    h: Option<u32>,
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Emit the hull sweep over k = 1..n/2 instead of the descriptor.
    #[arg(long)]
    sweep: bool,
    #[arg(long, value_enum)]
    range: Option<RangeArg>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

enum Failure {
    Verification,
    Usage(String),
    Guarantee { error: String, input: Value },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::SearchExhausted { .. } | Error::PredictionViolated { .. } => Failure::Guarantee { error: e.to_string(), input: Value::Null },
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Usage(format!("{e:#}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn with_input(e: Error, input: &Value) -> Failure {
    match Failure::from(e) {
        Failure::Guarantee { error, .. } => Failure::Guarantee { error, input: input.clone() },
        f => f,
    }
}

fn family_of(name: FamilyName, h: Option<u32>) -> Outcome<Family> {
    let need = |h: Option<u32>| h.ok_or_else(|| Failure::Usage("this family needs --h".into()));
    Ok(match name {
        FamilyName::FullField => Family::FullField,
        FamilyName::CosetH => Family::CosetH(need(h)?),
        FamilyName::Coset2h => Family::Coset2H(need(h)?),
    })
}

fn spec_of(number: u8, q: u32, h: Option<u32>) -> Outcome<FamilySpec> {
    Ok(FamilySpec::new(Family::from_number(number, h)?, q)?)
}

struct Ctx {
    catalog: Option<Catalog>,
}

impl Ctx {
    fn record<T: Serialize>(&mut self, kind: &str, items: &[T]) -> Outcome<()> {
        if let Some(c) = self.catalog.as_mut() {
            let vals: Vec<Value> = items.iter().map(|x| serde_json::to_value(x).expect("records serialize")).collect();
            c.add_all(kind, vals.iter())?;
        }
        Ok(())
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn say(text: &str) -> Outcome<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Outcome<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => say(text)?,
    }
    Ok(())
}

/// Summary lines go to stdout when the payload goes to a file, else stderr.
fn note(to_file: bool, line: String) {
    if to_file {
        let _ = say(&line);
    } else {
        eprintln!("{line}");
    }
}

fn csv_string<T: Serialize>(rows: &[T]) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8").trim_end().to_string())
}

fn cmd_build(a: BuildArgs, ctx: &mut Ctx) -> Outcome<()> {
    let family = family_of(a.family, a.h)?;
    let spec = FamilySpec::new(family, a.q)?;
    let fc = build_family(spec)?;
    let input = json!({"q": a.q, "h": a.h, "family": family, "k": a.k});
    // The descriptor is written even when the hull misses the formula bound;
    // the violation is reported afterwards.
    let code: Code = fc.with_dimension(a.k)?.into();
    let (formula, violation) = match hull_lb_formula(&spec, a.k, TRange::Ceil) {
        Ok(_) => match build_family_code(&fc, a.k) {
            Ok(o) => (Some(o.predicted_hull_lb), None),
            Err(e @ Error::PredictionViolated { predicted, .. }) => (Some(predicted), Some(e)),
            Err(e) => return Err(e.into()),
        },
        Err(_) => (None, None),
    };
    let desc = CodeDescriptor::of(&code);
    emit(a.out.as_deref(), &desc.to_json())?;
    let to_file = a.out.is_some();
    let eu = code.hull(InnerProduct::Euclidean)?;
    let he = code.hull(InnerProduct::Hermitian)?;
    let cert = mds_certificate(&code)?;
    note(to_file, format!("n={} k={}", code.length(), code.dimension()));
    note(to_file, format!("hull euclidean={} hermitian={}", eu.hull_dim, he.hull_dim));
    note(to_file, format!("formula l={}", formula.map_or("none".to_string(), |l| l.to_string())));
    note(to_file, format!("mds certificate={}", cert.certificate.tier()));
    ctx.record("code", &[desc])?;
    match violation {
        Some(e) => Err(with_input(e, &input)),
        None => Ok(()),
    }
}

fn parse_inner(s: &str) -> Outcome<InnerProduct> {
    match s {
        "hermitian" => Ok(InnerProduct::Hermitian),
        "euclidean" => Ok(InnerProduct::Euclidean),
        _ => s
            .strip_prefix("galois:")
            .and_then(|e| e.parse().ok())
            .map(InnerProduct::Galois)
            .ok_or_else(|| Failure::Usage(format!("unknown inner product {s:?}"))),
    }
}

fn cmd_rule(a: RuleArgs, ctx: &mut Ctx) -> Outcome<()> {
    let text = fs::read_to_string(&a.code).map_err(|e| Failure::Usage(format!("{}: {e}", a.code.display())))?;
    let input: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let code = load_code(&text)?;
    let f = code.field().clone();
    let lambda = a.lambda.map(|r| f.elem(r)).transpose()?;
    let need_grs = || code.as_grs().ok_or_else(|| Failure::Usage("rule needs a GRS descriptor".into()));
    let need_lambda = || lambda.ok_or_else(|| Failure::Usage("--lambda is required".into()));
    let dir = match a.direction {
        DirArg::Up => Direction::Up,
        DirArg::Down => Direction::Down,
    };
    let wrap = |e: Error| with_input(e, &input);
    let outcome: RuleOutcome = match a.op {
        RuleOp::ExtendLength => extend_length_infty(need_grs()?, need_lambda()?).map_err(wrap)?,
        RuleOp::ExtendZero => extend_length_zero(need_grs()?, need_lambda()?).map_err(wrap)?,
        RuleOp::IncreaseDim => increase_dim(need_grs()?, dir).map_err(wrap)?,
        RuleOp::ExtendBoth => extend_both(need_grs()?, lambda, dir).map_err(wrap)?,
        RuleOp::Reduce => {
            let target = a.target_hull.ok_or_else(|| Failure::Usage("--target-hull is required".into()))?;
            let inner = parse_inner(&a.inner)?;
            hull_reduce(&code, target, inner).map_err(wrap)?.into_rule_outcome(target)
        }
    };
    let desc = OutcomeDescriptor::of(&outcome);
    emit(a.out.as_deref(), &desc.to_json())?;
    let to_file = a.out.is_some();
    note(to_file, format!("rule {}", outcome.rule_tag));
    note(to_file, format!("[n,k]=[{},{}]", outcome.code.length(), outcome.code.dimension()));
    let rel = if outcome.exact { "=" } else { ">=" };
    note(to_file, format!("predicted hull {rel} {} computed {}", outcome.predicted_hull_lb, outcome.computed.hull_dim));
    ctx.record("outcome", &[desc])
}

fn cmd_tables(a: TablesArgs, ctx: &mut Ctx) -> Outcome<()> {
    let spec = spec_of(a.family, a.q, a.h)?;
    if a.summary {
        let rows = mds_summary_table(&spec)?;
        #[derive(Serialize)]
        struct Row<'a> {
            q: u32,
            family: u8,
            h: Option<u32>,
            n: usize,
            t: usize,
            branch: u8,
            d_min: usize,
            d_max: usize,
            c_formula: &'a str,
        }
        let flat: Vec<Row> = rows
            .iter()
            .map(|r| Row { q: r.q, family: r.family.number(), h: r.family.h(), n: r.n, t: r.t, branch: r.branch, d_min: r.d_min, d_max: r.d_max, c_formula: r.c_formula })
            .collect();
        let text = match a.format {
            Format::Csv => csv_string(&flat)?,
            Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
        };
        say(&text)?;
        return Ok(());
    }
    let mut tuples: Vec<EaqeccParams> = theorem_q22_enumerate(&spec)?;
    if a.witness {
        if spec.q > MAX_WITNESS_Q {
            return Err(Failure::Usage(format!("--witness needs q <= {MAX_WITNESS_Q}")));
        }
        let (_, rep) = witness(&spec, &mut tuples)?;
        eprintln!("witnessed {}/{} witnessable tuples", rep.witnessed, rep.witnessable);
    }
    let text = match a.format {
        Format::Csv => csv_string(&tuples.iter().map(EaqeccParams::csv_row).collect::<Vec<_>>())?,
        Format::Json => serde_json::to_string_pretty(&tuples).expect("tuples serialize"),
    };
    say(&text)?;
    ctx.record("eaqecc", &tuples)
}

fn cmd_verify(a: VerifyArgs, ctx: &mut Ctx) -> Outcome<()> {
    let need_h = || a.h.ok_or_else(|| Failure::Usage("this suite needs --h".into()));
    let report: SuiteReport = match a.suite {
        SuiteName::LemmaQ22 => suites::lemma_q22(a.q)?,
        SuiteName::LemmaH1 => suites::lemma_h1(a.q, need_h()?)?,
        SuiteName::Lemma2h1 => suites::lemma_2h1(a.q, need_h()?)?,
        SuiteName::PropGrs1 => suites::prop_grs1(a.q, a.samples, a.seed)?,
        SuiteName::Prop3 => suites::prop_3(a.q, a.samples, a.seed)?,
        SuiteName::Prop4 => suites::prop_4(a.q, a.samples, a.seed)?,
        SuiteName::TheoremGrs1 => suites::theorem_grs1(a.q)?,
        SuiteName::Tables => {
            let fam = a.family.ok_or_else(|| Failure::Usage("tables suite needs --family".into()))?;
            suites::tables(&spec_of(fam, a.q, a.h)?, a.witness)?
        }
    };
    let passed = report.passed();
    say(&serde_json::to_string_pretty(&json!({"suite": report.suite, "passed": passed, "checks": report.checks})).expect("report serializes"))?;
    ctx.record("verify", &[json!({"suite": report.suite, "passed": passed})])?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_families(a: FamiliesArgs, ctx: &mut Ctx) -> Outcome<()> {
    let family = family_of(a.family, a.h)?;
    let spec = FamilySpec::new(family, a.q)?;
    let fc = build_family(spec)?;
    if !a.sweep {
        let desc = CodeDescriptor::of(&Code::Grs(fc.code.clone()));
        say(&desc.to_json())?;
        eprintln!("gram pattern {} (nonzero {:?})", if fc.pattern.holds() { "holds" } else { "deviates" }, fc.pattern.nonzero);
        return ctx.record("code", &[desc]);
    }
    let range = match a.range {
        Some(RangeArg::Ceil) => TRange::Ceil,
        Some(RangeArg::Floor) => TRange::Floor,
        None => spec.default_t_range(),
    };
    #[derive(Serialize)]
    struct Row {
        family: u8,
        q: u32,
        h: Option<u32>,
        n: usize,
        k: usize,
        t: Option<usize>,
        l_formula: Option<usize>,
        hull_computed: usize,
        mds_certificate: String,
    }
    let mut rows = Vec::new();
    for s in sweep(&fc, range)? {
        let code = Code::Grs(fc.with_dimension(s.k)?);
        let cert = mds_certificate(&code)?;
        let tier = if cert.distance == Some(code.length() - code.dimension() + 1) { cert.certificate.tier().to_string() } else { "failed".into() };
        rows.push(Row { family: family.number(), q: spec.q, h: family.h(), n: spec.n, k: s.k, t: s.formula.map(|b| b.t), l_formula: s.formula.map(|b| b.l), hull_computed: s.hull, mds_certificate: tier });
    }
    let text = match a.format {
        Format::Csv => csv_string(&rows)?,
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
    };
    say(&text)?;
    Ok(())
}

fn write_bug_report(error: &str, input: &Value) -> Option<PathBuf> {
    let args: Vec<String> = std::env::args().collect();
    let report = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "args": args,
        "error": error,
        "input": input,
    });
    let hash = catalog::content_hash(&report);
    let dir = std::env::var_os("HULLSMITH_BUG_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    let path = dir.join(format!("hullsmith-bug-{}.json", &hash[..12]));
    let mut f = fs::File::create(&path).ok()?;
    f.write_all(serde_json::to_string_pretty(&report).ok()?.as_bytes()).ok()?;
    Some(path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let catalog = if cli.no_catalog {
        None
    } else {
        match Catalog::open(&Catalog::default_path()) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
        }
    };
    let mut ctx = Ctx { catalog };
    let result = match cli.command {
        Command::Build(a) => cmd_build(a, &mut ctx),
        Command::Rule(a) => cmd_rule(a, &mut ctx),
        Command::Tables(a) => cmd_tables(a, &mut ctx),
        Command::Verify(a) => cmd_verify(a, &mut ctx),
        Command::Families(a) => cmd_families(a, &mut ctx),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guarantee { error, input }) => {
            eprintln!("guarantee violated: {error}");
            match write_bug_report(&error, &input) {
                Some(p) => eprintln!("bug report written to {}", p.display()),
                None => eprintln!("could not write bug report"),
            }
            ExitCode::from(3)
        }
    }
}
