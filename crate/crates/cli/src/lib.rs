//! The `pdc` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 resource limit.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pdc_algebra::Divisor24;
use pdc_bundles::{
    achievable_lambdas, admissibility, admissible_residues, enumerate_admissible_residues, epsilon_of, lambda_of,
    AchievableOptions, BundleError, EpsilonS, Limits, Verdict,
};
use pdc_eclass::{homotopy_equal, normal_form_with_trace, table1, Derivation, EFile, EPresentation, Equality};
use pdc_manifold::{is_stably_trivial, parity, sigma, CohomologyClass4, ManifoldPresentation, PresentationFile};
use pdc_verify::{run_suite, stable_total_space, DOptions, Suite};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pdc", version, about = "SU(2)-bundles over 3-connected 8-dimensional PD complexes")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the residue searches.
    #[arg(long, global = true, env = "PDC_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// k, parity, σ, stable vector and stable triviality of a presentation.
    Invariants { file: PathBuf },
    /// Admissible classes ψ mod 24.
    Bundles {
        file: PathBuf,
        /// List every admissible residue.
        #[arg(long, conflicts_with = "exists")]
        enumerate: bool,
        /// Only decide whether one exists.
        #[arg(long)]
        exists: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// λ(ψ) and, for even forms, the total space E(ψ).
    Lambda {
        file: PathBuf,
        /// ψ in the dual basis, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        psi: Vec<i64>,
    },
    /// Values of λ(ψ) over all admissible ψ.
    Achievable {
        file: PathBuf,
        /// Integer lifts are searched in [−R, R]^k.
        #[arg(long, default_value_t = AchievableOptions::default().lift_radius)]
        lift_radius: i64,
        /// Seed for the sampled residues whose lifts are checked.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: Budget,
    },
    /// Normal form and stable invariants of an E-presentation.
    ClassifyE { file: PathBuf },
    /// Whether two E-presentations are homotopy equivalent.
    EqualE { first: PathBuf, second: PathBuf },
    /// Orbits of rank-one classes E_{λ,ε,δ}, by λ.
    Table1,
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random instances drawn; each suite has its own default.
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        budget: Budget,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Maximal residue vectors visited by one search.
    #[arg(long)]
    pub budget: Option<u64>,
}

impl Budget {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits { budget: self.budget.unwrap_or(d.budget), ..d }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Resource(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Internal(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Resource(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<BundleError> for CliError {
    fn from(e: BundleError) -> Self {
        match e {
            BundleError::ResourceLimit(_) | BundleError::Algebra(pdc_algebra::Error::ArithmeticOverflow) => {
                CliError::Resource(e.to_string())
            }
            BundleError::Inconsistent(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// What a command produced: text, the JSON document and the exit code.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: EXIT_OK }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn load_manifold(path: &Path) -> Result<ManifoldPresentation, CliError> {
    PresentationFile::load(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_e(path: &Path) -> Result<EPresentation, CliError> {
    EFile::load(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn divisors(set: impl IntoIterator<Item = Divisor24>) -> String {
    let parts: Vec<String> = set.into_iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Summands `E_{0,0,0}` are written as `S⁴×S⁷`.
fn show_e(e: &EPresentation) -> String {
    let parts: Vec<String> = e
        .factors()
        .iter()
        .map(|c| if c.is_trivial() { "S⁴×S⁷".to_string() } else { c.to_string() })
        .collect();
    parts.join(" # ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn invariants(path: &Path) -> Result<Output, CliError> {
    let m = load_manifold(path)?;
    let v: Vec<i64> = m.stable_vector().iter().map(|r| r.value()).collect();
    let (p, s, trivial) = (parity(&m), sigma(&m), is_stably_trivial(&m));
    let text = format!(
        "k = {}\nparity = {p}\nsigma = {s}\nstable vector = {}\nstably trivial = {}\n",
        m.k(),
        vector(&v),
        yes_no(trivial)
    );
    let json = json!({
        "k": m.k(),
        "parity": p.to_string(),
        "sigma": s,
        "stable_vector": v,
        "stably_trivial": trivial,
    });
    Ok(Output::ok(text, json))
}

fn bundles(path: &Path, enumerate: bool, exists: bool, limits: &Limits) -> Result<Output, CliError> {
    let m = load_manifold(path)?;
    let f = admissible_residues(&m, limits)?;
    let found = !f.is_empty();
    if exists {
        let text = if found { "admissible class exists\n" } else { "no admissible class\n" };
        return Ok(Output::ok(text.into(), json!({ "exists": found })));
    }
    let count = f.count();
    let mut text = format!(
        "admissible residues: {count} mod 24 ({} mod 8 × {} mod 3)\n",
        f.mod8.len(),
        f.mod3.len()
    );
    let mut json = json!({
        "exists": found,
        "count_mod24": count as u64,
        "count_mod8": f.mod8.len(),
        "count_mod3": f.mod3.len(),
    });
    if !found {
        text.push_str("no admissible class\n");
    }
    if enumerate {
        let list = enumerate_admissible_residues(&m, limits)?;
        for r in &list {
            text.push_str(&vector(r));
            text.push('\n');
        }
        json["residues"] = to_value(&list);
    }
    Ok(Output::ok(text, json))
}

fn lambda(path: &Path, psi: Vec<i64>) -> Result<Output, CliError> {
    let m = load_manifold(path)?;
    if psi.len() != m.k() {
        return Err(CliError::Input(format!("ψ has {} entries, k = {}", psi.len(), m.k())));
    }
    let psi = CohomologyClass4::new(psi);
    let a = admissibility(&m, &psi)?;
    match a.verdict {
        Verdict::Admissible => {}
        Verdict::NotPrimitive => return Err(CliError::Input(format!("ψ = {} is not primitive", vector(&psi.n)))),
        Verdict::CongruenceFails => {
            return Err(CliError::Input(format!(
                "ψ = {} is not admissible: ψ² = {} but τ(ψ) = {} (mod 24)",
                vector(&psi.n),
                a.self_intersection,
                a.tau
            )))
        }
    }
    let result = lambda_of(&m, &psi)?;
    let eps = epsilon_of(&m, &psi)?;
    let mut json = json!({
        "psi": psi.n,
        "lambda": result.lambda,
        "route": result.route,
        "epsilon_s": eps,
    });
    let text = if eps == EpsilonS::Zero {
        let e = stable_total_space(&m, &psi)?;
        let report = normal_form_with_trace(&e);
        let form = report.form.render();
        json["total_space"] = to_value(&EFile::from_presentation(&e));
        json["normal_form"] = to_value(&EFile::from_presentation(&form));
        format!("lambda = {}; E ≃ {}\n", result.lambda, show_e(&form))
    } else {
        format!("lambda = {}; epsilon_s unknown for odd forms\n", result.lambda)
    };
    Ok(Output::ok(text, json))
}

fn achievable(path: &Path, lift_radius: i64, seed: u64, limits: &Limits) -> Result<Output, CliError> {
    if lift_radius < 1 {
        return Err(CliError::Input(format!("lift radius must be positive, got {lift_radius}")));
    }
    let m = load_manifold(path)?;
    let options = AchievableOptions { lift_radius, seed, ..AchievableOptions::default() };
    let r = achievable_lambdas(&m, &options, limits)?;
    let mut text = format!(
        "lambda over residues = {}\nlambda over lifts in [-{lift_radius}, {lift_radius}]^{} = {}\nbox sufficient = {}\n",
        divisors(r.residue_lambdas.iter().copied()),
        m.k(),
        divisors(r.lambdas.iter().copied()),
        yes_no(r.box_sufficient)
    );
    for (l, psi) in &r.witnesses {
        text.push_str(&format!("  lambda = {l}: psi = {}\n", vector(psi)));
    }
    if r.mod24_dependence_observed {
        text.push_str("warning: some lift has a lambda different from its residue class\n");
    }
    Ok(Output::ok(text, to_value(&r)))
}

fn classify(path: &Path) -> Result<Output, CliError> {
    let e = load_e(path)?;
    let report = normal_form_with_trace(&e);
    let form = report.form.render();
    let how = match &report.derivation {
        Derivation::Rewritten { steps } => format!("{} rewriting steps", steps.len()),
        Derivation::ByInvariants { eps_hat, j } => format!("selected by invariants ε̂ = {eps_hat}, J = {j}"),
    };
    let text = format!(
        "normal form = {form}\ncase = {}\nlambda_s = {}\neps_s = {}\nderivation: {how}\n",
        report.form.case(),
        report.stable.lambda_s,
        report.stable.eps_s
    );
    let json = json!({
        "input": EFile::from_presentation(&e),
        "normal_form": EFile::from_presentation(&form),
        "case": report.form.case(),
        "stable": report.stable,
        "derivation": report.derivation,
    });
    Ok(Output::ok(text, json))
}

fn equal(first: &Path, second: &Path) -> Result<Output, CliError> {
    let (e1, e2) = (load_e(first)?, load_e(second)?);
    if e1.rank() != e2.rank() {
        return Err(CliError::Input(format!("ranks differ: {} and {}", e1.rank(), e2.rank())));
    }
    let equal = homotopy_equal(&e1, &e2) == Equality::Equal;
    let (n1, n2) = (normal_form_with_trace(&e1).form.render(), normal_form_with_trace(&e2).form.render());
    let text = format!("{}\n  {n1}\n  {n2}\n", if equal { "equal" } else { "not equal" });
    let json = json!({
        "equal": equal,
        "normal_forms": [EFile::from_presentation(&n1), EFile::from_presentation(&n2)],
    });
    Ok(Output::ok(text, json))
}

fn table() -> Output {
    let t = table1();
    let mut text = String::from("lambda  count  classes\n");
    for row in &t.rows {
        let reps: Vec<String> = row.printed.iter().map(ToString::to_string).collect();
        text.push_str(&format!("{:>6}  {:>5}  {}\n", row.lambda, row.count, reps.join(" ")));
    }
    text.push_str(&format!("total {}\n", t.total));
    Output::ok(text, to_value(&t))
}

fn verify(suite: Suite, seed: u64, samples: Option<usize>, limits: Limits, timings: bool) -> Result<Output, CliError> {
    let options = DOptions { limits, ..DOptions::default() };
    let start = Instant::now();
    let mut report = run_suite(suite, samples, seed, &options)?;
    if timings {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let code = if report.all_passed() { EXIT_OK } else { EXIT_FAILURE };
    Ok(Output { text: report.to_table(), json: to_value(&report), code })
}

fn execute(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Invariants { file } => invariants(&file),
        Command::Bundles { file, enumerate, exists, budget } => bundles(&file, enumerate, exists, &budget.limits()),
        Command::Lambda { file, psi } => lambda(&file, psi),
        Command::Achievable { file, lift_radius, seed, budget } => achievable(&file, lift_radius, seed, &budget.limits()),
        Command::ClassifyE { file } => classify(&file),
        Command::EqualE { first, second } => equal(&first, &second),
        Command::Table1 => Ok(table()),
        Command::Verify { suite, seed, samples, budget, timings } => {
            verify(suite, seed, samples, budget.limits(), timings)
        }
    }
}

#[cfg(feature = "parallel")]
fn set_threads(n: usize) -> Result<(), CliError> {
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_: usize) -> Result<(), CliError> {
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let json = cli.json;
    let result = match cli.threads {
        Some(0) => Err(CliError::Input("--threads must be positive".into())),
        Some(n) => set_threads(n),
        None => Ok(()),
    }
    .and_then(|()| execute(cli));
    match result {
        Ok(o) => {
            let written = if json {
                let mut s = serde_json::to_string_pretty(&o.json).expect("JSON values serialize");
                s.push('\n');
                out.write_all(s.as_bytes())
            } else {
                out.write_all(o.text.as_bytes())
            };
            if written.is_err() {
                return EXIT_FAILURE;
            }
            o.code
        }
        Err(e) => {
            if json {
                let _ = writeln!(out, "{}", json!({ "error": e.message(), "exit_code": e.code() }));
            }
            let _ = writeln!(err, "pdc: {}", e.message());
            e.code()
        }
    }
}
