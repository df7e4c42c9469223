//! Command-line front end: argument parsing, reports and the survey.
//!
//! Every command prints `key: value` lines to standard output and, with
//! `--out`, writes one JSON document with the same content (the survey
//! writes CSV instead). Exit status: 0 pass/found, 1 fail/none found,
//! 2 usage or input error.

pub mod subset;
pub mod survey;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use workbench_core::corpus::{gen_counterexample, parse_manifest, verify_counterexample};
use workbench_core::regularity::{cayley_graph, PairKind, RegularityOutcome, DEFAULT_SIZE_CAP};
use workbench_core::stability::{DEFAULT_EXACT_LIMIT, DEFAULT_K_CAP};
use workbench_core::structure::{
    definability_check, minimal_witnesses, pareto_front, verify_corollary_partition, StructureError,
};
use workbench_core::{
    build_group, find_structure, fmt_rational, group::parse_table_text, is_k_stable, ladder_index,
    parse_rational, per_coset_dichotomy, translate_cover_number, validate_table, Group, Rational, Subgroup,
    SubsetMask, Validation,
};

pub use subset::{parse_subset_spec, SubsetSpecError};

#[derive(Parser, Debug)]
#[command(name = "workbench", version, about = "Stability and coset structure of subsets of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ladder index (half-graph height) and optional translate cover number.
    Stability(StabilityArgs),
    /// Minimum-index normal subgroup with a coset union close to the set.
    Structure(StructureArgs),
    /// Uniform goodness and regularity of pairs in the Cayley graph.
    Regularity(RegularityArgs),
    /// Generate and verify a Z/p × Z/q instance showing n must depend on ε.
    Counterexample(CounterexampleArgs),
    /// Run a manifest of instances over several ε and write a CSV table.
    Survey(SurveyArgs),
    /// Check a Cayley table file (or a family descriptor) against the group axioms.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct Target {
    /// Group descriptor, e.g. `product:cyclic:3,cyclic:5` or `table:<path>`.
    #[arg(long)]
    group: String,
    /// Subset spec: `list:…`, `hex:…` or `gen:…`.
    #[arg(long)]
    set: String,
    /// Seed for `gen:` subset specs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the machine-readable JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, default_value_t = DEFAULT_K_CAP)]
    k_cap: usize,
    /// Decide k-stability; exit status 0 iff the set is k-stable.
    #[arg(long)]
    k: Option<usize>,
    /// Also compute the translate cover number.
    #[arg(long)]
    cover: bool,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: u64,
}

#[derive(Args, Debug)]
struct StructureArgs {
    #[command(flatten)]
    target: Target,
    /// Error parameter as `p/q`.
    #[arg(long)]
    eps: String,
    /// Largest index searched; defaults to the group order.
    #[arg(long)]
    max_index: Option<usize>,
    /// Report every admissible subgroup at the minimum index.
    #[arg(long)]
    all_witnesses: bool,
    /// Also search for a subgroup definable from this many translates (1..=3).
    #[arg(long)]
    definability: Option<usize>,
    /// Per-index error bounds `m=p/q,…` instead of a single ε.
    #[arg(long)]
    gamma: Option<String>,
}

#[derive(Args, Debug)]
struct RegularityArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long)]
    eps: String,
    /// Normal subgroup (subset spec) whose coset partition is checked.
    #[arg(long, conflicts_with_all = ["x", "y"])]
    subgroup: Option<String>,
    /// Left side of a single pair (subset spec).
    #[arg(long, requires = "y")]
    x: Option<String>,
    /// Right side of a single pair (subset spec).
    #[arg(long, requires = "x")]
    y: Option<String>,
    /// Sampled trials when the pair is too large for the exhaustive scan.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
}

#[derive(Args, Debug)]
struct CounterexampleArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    min_order: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    /// Manifest of `<group> <set> <seed>` lines.
    #[arg(long)]
    manifest: PathBuf,
    /// Comma-separated ε values as `p/q`.
    #[arg(long, default_value = "1/10,1/4,3/10")]
    eps: String,
    #[arg(long)]
    max_index: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_K_CAP)]
    k_cap: usize,
    /// CSV output path (standard output if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the (index, sym_diff) Pareto fronts as CSV.
    #[arg(long)]
    pareto: Option<PathBuf>,
    /// Leave the `ms` column empty so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Cayley table text file.
    #[arg(long, conflicts_with = "group", required_unless_present = "group")]
    table: Option<PathBuf>,
    /// Family descriptor.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Pass/fail of a finished command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit status. Human-readable output goes to `out`.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = match worker_pool() {
        Some(pool) => pool.install(|| dispatch(cli.command, &mut buf)),
        None => dispatch(cli.command, &mut buf),
    };
    let _ = out.write_all(&buf);
    match result {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

/// A dedicated pool when `WORKBENCH_THREADS` is set to a positive number.
fn worker_pool() -> Option<rayon::ThreadPool> {
    let n: usize = std::env::var("WORKBENCH_THREADS").ok()?.trim().parse().ok()?;
    if n == 0 {
        return None;
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cmd {
        Command::Stability(a) => stability(a, out),
        Command::Structure(a) => structure(a, out),
        Command::Regularity(a) => regularity(a, out),
        Command::Counterexample(a) => counterexample(a, out),
        Command::Survey(a) => survey_cmd(a, out),
        Command::Validate(a) => validate(a, out),
    }
}

/// Line-oriented text report followed by the optional JSON document.
struct Report {
    lines: Vec<(String, String)>,
    doc: serde_json::Map<String, Value>,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut r = Self { lines: Vec::new(), doc: serde_json::Map::new() };
        r.field("command", command);
        r
    }

    /// Adds a field to both the text and JSON forms.
    fn field(&mut self, key: &str, value: impl Into<Value>) {
        let value = value.into();
        let text = match &value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        self.lines.push((key.to_string(), text));
        self.doc.insert(key.to_string(), value);
    }

    /// JSON only (large or structured content).
    fn data(&mut self, key: &str, value: impl Serialize) {
        self.doc.insert(key.to_string(), serde_json::to_value(value).expect("report values serialize"));
    }

    fn text(&mut self, key: &str, value: impl Into<String>) {
        self.lines.push((key.to_string(), value.into()));
    }

    fn finish(self, out: &mut dyn Write, path: Option<&Path>) -> Result<(), CliError> {
        for (k, v) in &self.lines {
            writeln!(out, "{k}: {v}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
        }
        if let Some(path) = path {
            let body = serde_json::to_string_pretty(&Value::Object(self.doc)).expect("json");
            std::fs::write(path, body + "\n").map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        }
        Ok(())
    }
}

use serde::Serialize;

fn set_string(g: &Group, s: &SubsetMask) -> String {
    let labels: Vec<&str> = s.iter().map(|x| g.label(x)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn load_target(t: &Target) -> Result<(Group, SubsetMask), CliError> {
    let g = build_group(&t.group).map_err(usage)?;
    let a = parse_subset_spec(&t.set, &g, t.seed).map_err(usage)?;
    Ok((g, a))
}

fn parse_eps(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(usage)
}

fn describe_target(r: &mut Report, g: &Group, a: &SubsetMask) {
    r.field("group", g.descriptor());
    r.field("order", g.order());
    r.field("set_size", a.count());
    r.field("set_hex", a.to_hex());
    r.text("set", set_string(g, a));
    r.data("set", a);
}

fn stability(args: StabilityArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (g, a) = load_target(&args.target)?;
    if args.k_cap == 0 || args.k == Some(0) {
        return Err(usage("k and k-cap must be positive"));
    }
    let mut r = Report::new("stability");
    describe_target(&mut r, &g, &a);
    let (k, cert) = ladder_index(&g, &a, args.k_cap);
    r.field("k_cap", args.k_cap);
    r.field("ladder_index", k);
    if k < args.k_cap {
        r.field("stable_at", k + 1);
    }
    if let Some(c) = &cert {
        r.text("certificate_a", format!("{:?}", c.a));
        r.text("certificate_b", format!("{:?}", c.b));
        r.data("certificate", c);
    }
    let mut outcome = Outcome::Pass;
    if let Some(kk) = args.k {
        let (stable, w) = is_k_stable(&g, &a, kk);
        r.field("k", kk);
        r.field("k_stable", stable);
        if let Some(w) = w {
            r.data("instability_witness", w);
        }
        outcome = Outcome::from_bool(stable);
    }
    if args.cover {
        match translate_cover_number(&g, &a, args.exact_limit) {
            Ok(c) => {
                r.field("cover_size", c.cover_size);
                r.field("cover_exact", c.exact);
                r.text("cover_translators", format!("{:?}", c.translators));
                r.data("cover", c);
            }
            Err(e) => r.field("cover_error", e.to_string()),
        }
    }
    r.finish(out, args.target.out.as_deref())?;
    Ok(outcome)
}

fn parse_gamma(s: &str) -> Result<BTreeMap<usize, Rational>, CliError> {
    s.split(',')
        .map(|item| {
            let (m, v) = item.split_once('=').ok_or_else(|| usage(format!("bad gamma entry {item:?}")))?;
            let m: usize = m.trim().parse().map_err(|_| usage(format!("bad index {m:?}")))?;
            Ok((m, parse_eps(v)?))
        })
        .collect()
}

fn structure(args: StructureArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (g, a) = load_target(&args.target)?;
    let eps = parse_eps(&args.eps)?;
    let max_index = args.max_index.unwrap_or(g.order());
    let mut r = Report::new("structure");
    describe_target(&mut r, &g, &a);
    r.field("eps", fmt_rational(&eps));
    r.field("max_index", max_index);
    let found = match &args.gamma {
        Some(spec) => {
            let gamma = parse_gamma(spec)?;
            r.data("gamma", gamma.iter().map(|(m, v)| (m.to_string(), fmt_rational(v))).collect::<BTreeMap<_, _>>());
            workbench_core::structure::gamma_variant_search(&g, &a, &gamma, max_index)
        }
        None => find_structure(&g, &a, eps, max_index),
    };
    let res = match found {
        Ok(res) => res,
        Err(StructureError::NoAdmissible { max_index }) => {
            r.field("verdict", "none");
            r.field("min_index", format!("none<={max_index}"));
            let front = pareto_front(&g, &a, max_index);
            r.data("pareto", front.iter().map(|p| json!({"index": p.index, "sym_diff": p.sym_diff})).collect::<Vec<_>>());
            r.finish(out, args.target.out.as_deref())?;
            return Ok(Outcome::Fail);
        }
        Err(e) => return Err(usage(e)),
    };
    r.field("verdict", "found");
    r.field("index", res.index);
    r.field("subgroup_order", res.subgroup.order());
    r.text("subgroup", set_string(&g, res.subgroup.elements()));
    r.field("subgroup_hex", res.subgroup.elements().to_hex());
    r.field("sym_diff", res.sym_diff);
    r.field("threshold", fmt_rational(&res.threshold));
    r.text("y", set_string(&g, &res.y_mask));
    r.field("y_hex", res.y_mask.to_hex());
    r.data("result", &res);
    let dich = per_coset_dichotomy(&g, &a, &res.subgroup, eps).map_err(usage)?;
    r.field("dichotomy", if dich.pass { "pass" } else { "fail" });
    r.data("dichotomy_report", &dich);
    if args.all_witnesses && args.gamma.is_none() {
        let all = minimal_witnesses(&g, &a, eps, max_index).map_err(usage)?;
        r.field("witnesses_at_min_index", all.len());
        r.data("witnesses", all.iter().map(|w| json!({"subgroup": w.subgroup.elements(), "sym_diff": w.sym_diff})).collect::<Vec<_>>());
    }
    if let Some(budget) = args.definability {
        match definability_check(&g, &a, &res.subgroup, budget).map_err(usage)? {
            Some(w) => {
                r.field("definable", true);
                r.field("definition", w.formula(&g));
                r.data("definability", &w);
            }
            None => r.field("definable", "none_found"),
        }
    }
    r.data(
        "pareto",
        pareto_front(&g, &a, max_index).iter().map(|p| json!({"index": p.index, "sym_diff": p.sym_diff})).collect::<Vec<_>>(),
    );
    r.finish(out, args.target.out.as_deref())?;
    Ok(Outcome::Pass)
}

fn kind_name(k: PairKind) -> &'static str {
    match k {
        PairKind::Sparse => "sparse",
        PairKind::Dense => "dense",
        PairKind::Fail => "fail",
    }
}

fn regularity(args: RegularityArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (g, a) = load_target(&args.target)?;
    let eps = parse_eps(&args.eps)?;
    let mut r = Report::new("regularity");
    describe_target(&mut r, &g, &a);
    r.field("eps", fmt_rational(&eps));
    let outcome = match (&args.subgroup, &args.x, &args.y) {
        (Some(spec), _, _) => {
            let h = parse_subset_spec(spec, &g, args.target.seed).map_err(usage)?;
            let h = Subgroup::new(&g, h).map_err(usage)?;
            let part = verify_corollary_partition(&g, &a, &h, eps).map_err(usage)?;
            let dich = per_coset_dichotomy(&g, &a, &h, eps).map_err(usage)?;
            r.field("index", h.index());
            r.field("dichotomy", if dich.pass { "pass" } else { "fail" });
            r.field("partition", if part.pass { "pass" } else { "fail" });
            let rows: Vec<String> =
                part.matrix.iter().map(|row| row.iter().map(|&k| kind_name(k)).collect::<Vec<_>>().join(" ")).collect();
            r.text("matrix", format!("[{}]", rows.join("; ")));
            r.data("partition_report", &part);
            r.data("dichotomy_report", &dich);
            Outcome::from_bool(part.pass)
        }
        (None, Some(xs), Some(ys)) => {
            let x = parse_subset_spec(xs, &g, args.target.seed).map_err(usage)?;
            let y = parse_subset_spec(ys, &g, args.target.seed).map_err(usage)?;
            let graph = cayley_graph(&g, &a);
            let density = graph.density(&x, &y).map_err(usage)?;
            r.field("density", fmt_rational(&density));
            if x.count() == y.count() {
                let good = graph.is_uniformly_good(&x, &y, eps).map_err(usage)?;
                r.field("uniformly_good", kind_name(good.kind));
                r.data("goodness", &good);
                if eps < Rational::new(1, 2) && x.count() + y.count() <= DEFAULT_SIZE_CAP {
                    match graph.proposition_dichotomy_check(&x, &y, eps) {
                        Ok(rep) => {
                            r.field("proposition", if rep.confirmed() { "confirmed" } else { "violated" });
                            r.field("extremal_density", fmt_rational(&rep.extremal_density));
                            r.data("proposition_report", &rep);
                        }
                        Err(e) => r.field("proposition", format!("not_applicable: {e}")),
                    }
                }
            }
            let verdict = if x.count() + y.count() <= DEFAULT_SIZE_CAP {
                graph.is_regular_exact(&x, &y, eps, DEFAULT_SIZE_CAP)
            } else {
                graph.is_regular_sampled(&x, &y, eps, args.trials, args.target.seed)
            }
            .map_err(usage)?;
            let name = match verdict.outcome {
                RegularityOutcome::Regular => "regular",
                RegularityOutcome::Irregular => "irregular",
                RegularityOutcome::NoViolationFound => "no_violation_found",
            };
            r.field("regularity", name);
            r.field("checked", verdict.checked);
            if let Some(w) = &verdict.witness {
                r.text("witness_x0", set_string(&g, &w.x0));
                r.text("witness_y0", set_string(&g, &w.y0));
                r.field("witness_density", fmt_rational(&w.density));
            }
            r.data("regularity_report", &verdict);
            Outcome::from_bool(verdict.outcome != RegularityOutcome::Irregular)
        }
        _ => return Err(usage("give either --subgroup or both --x and --y")),
    };
    r.finish(out, args.target.out.as_deref())?;
    Ok(outcome)
}

fn counterexample(args: CounterexampleArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let inst = gen_counterexample(args.k, args.n, args.min_order).map_err(usage)?;
    let v = verify_counterexample(&inst);
    let mut r = Report::new("counterexample");
    r.field("k", inst.k);
    r.field("n", inst.n);
    r.field("p", inst.p);
    r.field("q", inst.q);
    r.field("eps", fmt_rational(&inst.eps));
    r.field("group", inst.group().descriptor());
    r.field("order", inst.group().order());
    r.field("set_size", inst.a_set.count());
    r.field("bound", fmt_rational(&v.bound));
    r.text("sym_diffs", format!("{:?}", v.sym_diffs));
    r.field("normal_subgroups_checked", v.subgroups);
    r.field("verified", v.holds);
    r.data("instance", &inst);
    r.data("verification", &v);
    r.finish(out, args.out.as_deref())?;
    Ok(Outcome::from_bool(v.holds))
}

fn survey_cmd(args: SurveyArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(&args.manifest)
        .map_err(|e| usage(format!("cannot read manifest {}: {e}", args.manifest.display())))?;
    let entries = parse_manifest(&text).map_err(usage)?;
    let eps = args.eps.split(',').map(parse_eps).collect::<Result<Vec<_>, _>>()?;
    if args.k_cap == 0 || args.max_index == Some(0) {
        return Err(usage("k-cap and max-index must be positive"));
    }
    let opts = survey::SurveyOptions { eps, max_index: args.max_index, timing: !args.no_timing, k_cap: args.k_cap };
    let (records, pareto) = survey::run_survey(&entries, &opts);
    fn csv_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
        move |e| CliError::Io { path: path.to_path_buf(), source: e.into() }
    }
    match &args.out {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            survey::write_csv(&records, &survey::SURVEY_HEADER, f).map_err(csv_err(path))?;
            writeln!(out, "rows: {}", records.len()).ok();
            writeln!(out, "written: {}", path.display()).ok();
        }
        None => survey::write_csv(&records, &survey::SURVEY_HEADER, out).map_err(csv_err(Path::new("<stdout>")))?,
    }
    if let Some(path) = &args.pareto {
        let f = std::fs::File::create(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
        survey::write_csv(&pareto, &survey::PARETO_HEADER, f).map_err(csv_err(path))?;
    }
    Ok(Outcome::Pass)
}

fn validate(args: ValidateArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut r = Report::new("validate");
    let verdict = match (&args.table, &args.group) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read table {}: {e}", path.display())))?;
            let (rows, _) = parse_table_text(&text).map_err(usage)?;
            r.field("table", path.display().to_string());
            r.field("order", rows.len());
            validate_table(&rows)
        }
        (None, Some(desc)) => {
            let g = build_group(desc).map_err(usage)?;
            r.field("group", g.descriptor());
            r.field("order", g.order());
            validate_table(&g.rows())
        }
        (None, None) => return Err(usage("give --table or --group")),
    };
    match &verdict {
        Validation::Pass => r.field("verdict", "pass"),
        Validation::Fail(d) => {
            r.field("verdict", "fail");
            r.field("defect", d.to_string());
        }
    }
    r.data("validation", &verdict);
    r.finish(out, args.out.as_deref())?;
    Ok(Outcome::from_bool(verdict.is_pass()))
}
