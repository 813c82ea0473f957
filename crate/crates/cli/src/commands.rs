//! Subcommand implementations. Each returns the text for standard output and
//! an exit code; errors map to exit code 2 in [`crate::run`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use satkit::analysis::{self, AnalysisError};
use satkit::constructions::{self, ConstructionError, FormulaTable};
use satkit::saturation;
use satkit::search::{self, SearchError, SearchMode, SearchOptions, SearchResult};
use satkit::{BipartiteGraph, PatternSpec};
use serde::Serialize;
use thiserror::Error;

use crate::graphfile::{self, ParseError};
use crate::report::{self, AnalysisSection, CoreFindings, Parameters, Predicates, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "satkit", version, about = "Saturation numbers of complete bipartite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print an extremal construction as a graph file.
    Construct(ConstructArgs),
    /// Check saturation predicates on a graph file.
    Verify(VerifyArgs),
    /// Cores, nice cores, partitions and certificates of a graph file.
    Analyze(AnalyzeArgs),
    /// Exact minimum edge count by exhaustive search.
    Search(SearchArgs),
    /// Search that writes every extremal class to a directory.
    Census(CensusArgs),
    /// Closed-form values for (s, t, n).
    Formulas(FormulasArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    F,
    Ms,
    Ordered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Sat,
    Ordered,
    Weak,
}

impl Mode {
    fn search_mode(self) -> SearchMode {
        match self {
            Mode::Sat => SearchMode::UnorderedSat,
            Mode::Ordered => SearchMode::OrderedSat,
            Mode::Weak => SearchMode::WeakSat,
        }
    }
}

#[derive(Debug, Args)]
pub struct Pattern {
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[command(flatten)]
    pub pattern: Pattern,
    #[arg(long)]
    pub n: usize,
    /// Cyclic offset of the interval rows (family f only).
    #[arg(long, default_value_t = 0)]
    pub shift: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub pattern: Pattern,
    /// Require ordered saturation (s on the left).
    #[arg(long)]
    pub ordered: bool,
    /// Require strong saturation.
    #[arg(long)]
    pub strong: bool,
    /// Require weak saturation.
    #[arg(long)]
    pub weak: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub pattern: Pattern,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchFlags {
    #[command(flatten)]
    pub pattern: Pattern,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Sat)]
    pub mode: Mode,
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    #[arg(long)]
    pub max_nodes: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 2)]
    pub split_depth: usize,
    /// Largest n accepted.
    #[arg(long, default_value_t = 6)]
    pub n_cap: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub flags: SearchFlags,
    /// Write every extremal class to this directory.
    #[arg(long)]
    pub census: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub flags: SearchFlags,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FormulasArgs {
    #[command(flatten)]
    pub pattern: Pattern,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: ParseError,
    },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn check_pattern(p: &Pattern) -> Result<(), CliError> {
    if p.s < 1 || p.s > p.t {
        return Err(CliError::Usage(format!("need 1 <= s <= t, got s = {}, t = {}", p.s, p.t)));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n < 1 {
        return Err(CliError::Usage("need n >= 1".into()));
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<(BipartiteGraph, Vec<u8>), CliError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| {
        let offset = e.utf8_error().valid_up_to();
        let before = &bytes[..offset];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = offset - before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1) + 1;
        CliError::Parse {
            path: path.to_path_buf(),
            source: ParseError { line, column, message: "invalid UTF-8".into() },
        }
    })?;
    let g = graphfile::parse(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })?;
    Ok((g, bytes))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(io_err(path))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn base_report(command: &'static str, input_digest: String, parameters: Parameters) -> Report {
    Report {
        schema_version: report::SCHEMA_VERSION,
        command,
        artifact: report::Artifact::current(),
        input_digest,
        parameters,
        predicates: None,
        formulas: None,
        analysis: None,
        search: None,
    }
}

fn square_formulas(g: &BipartiteGraph, s: usize, t: usize) -> Option<FormulaTable> {
    (g.n_left() == g.n_right() && g.n_left() >= 1)
        .then(|| constructions::formula_table(s, t, g.n_left()).ok())
        .flatten()
}

pub fn construct(a: &ConstructArgs) -> Result<Outcome, CliError> {
    check_pattern(&a.pattern)?;
    check_n(a.n)?;
    let (s, t, n) = (a.pattern.s, a.pattern.t, a.n);
    let g = match a.family {
        Family::F => constructions::construct_f_family(s, t, n, a.shift)?,
        Family::Ms => constructions::construct_ms(s, t, n)?,
        Family::Ordered => constructions::construct_ordered_extremal(s, t, n)?,
    };
    let text = graphfile::emit(&g);
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome { stdout: String::new(), code: EXIT_OK })
        }
        None => Ok(Outcome { stdout: text, code: EXIT_OK }),
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    check_pattern(&a.pattern)?;
    let (g, bytes) = read_graph(&a.graph)?;
    let (s, t) = (a.pattern.s, a.pattern.t);
    let p = PatternSpec::unordered(s, t).expect("checked");
    let r = saturation::check_saturated(&g, &p);

    let mut requested = Vec::new();
    if a.ordered {
        requested.push(("is_ordered_saturated", r.is_ordered_saturated));
    }
    if a.strong {
        requested.push(("is_strongly_saturated", r.is_strongly_saturated));
    }
    if a.weak {
        requested.push(("is_weakly_saturated", r.is_weakly_saturated));
    }
    if requested.is_empty() {
        requested.push(("is_free", r.is_free));
        requested.push(("is_saturated", r.is_saturated));
    }
    let failed: Vec<String> = requested.iter().filter(|(_, ok)| !ok).map(|(k, _)| k.to_string()).collect();
    let all = failed.is_empty();
    let code = if all { EXIT_OK } else { EXIT_FAILED };

    let stdout = if a.json {
        let mut rep = base_report(
            "verify",
            report::digest(&bytes),
            Parameters { s, t, n_left: g.n_left(), n_right: g.n_right(), mode: "sat".into() },
        );
        rep.formulas = square_formulas(&g, s, t);
        rep.predicates = Some(Predicates {
            report: r,
            requested: requested.iter().map(|(k, _)| k.to_string()).collect(),
            failed,
            all_requested_hold: all,
        });
        report::to_json(&rep)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "graph      {}x{}, {} edges", g.n_left(), g.n_right(), g.edge_count());
        let _ = writeln!(out, "pattern    K_{{{s},{t}}}");
        let rows = [
            ("is_free", r.is_free),
            ("is_saturated", r.is_saturated),
            ("is_ordered_saturated", r.is_ordered_saturated),
            ("is_strongly_saturated", r.is_strongly_saturated),
            ("is_weakly_saturated", r.is_weakly_saturated),
        ];
        for (name, value) in rows {
            let mark = if requested.iter().any(|(k, _)| *k == name) { "*" } else { " " };
            let _ = writeln!(out, "{mark} {name:<22} {value}");
        }
        let _ = writeln!(out, "  {:<22} {}", "min_degree", r.min_degree);
        if let Some(w) = &r.offending_copy {
            let _ = writeln!(out, "copy       left {:?} right {:?}", w.left_set, w.right_set);
        }
        if let Some(e) = r.dead_nonedge {
            let _ = writeln!(out, "dead       non-edge {e:?} creates no copy");
        }
        if let Some(e) = r.weak_stuck_nonedge {
            let _ = writeln!(out, "stuck      weak closure cannot add {e:?}");
        }
        let _ = writeln!(out, "result     {}", if all { "all requested predicates hold" } else { "FAILED" });
        out
    };
    Ok(Outcome { stdout, code })
}

/// Analysis findings for a square graph and `1 <= s < t`.
pub fn analysis_section(g: &BipartiteGraph, s: usize, t: usize) -> Result<AnalysisSection, CliError> {
    let p = PatternSpec::unordered(s, t).map_err(|e| CliError::Usage(e.to_string()))?;
    let is_saturated = saturation::is_saturated(g, &p);
    let min_degree = g.min_degree();
    let mut notes = Vec::new();
    let mut nice_cores = Vec::new();
    for core in analysis::find_nice_cores(g, s, t)? {
        let partition = analysis::partition_around_core(g, &core, s, t)?;
        let observations = analysis::check_core_observations(g, &partition, s, t)?;
        let core_bound = if min_degree + 1 >= t {
            Some(analysis::core_bound_certificate(g, &core, s, t)?)
        } else {
            None
        };
        nice_cores.push(CoreFindings { core, partition, observations, core_bound });
    }
    if min_degree + 1 < t {
        notes.push(format!("min degree {min_degree} < t-1 = {}: core bound not applicable", t - 1));
    } else if nice_cores.is_empty() {
        notes.push("no nice core: core bound not applicable".into());
    }
    let min_degree_certificate = if !is_saturated {
        notes.push("graph is not saturated: min-degree certificate not evaluated".into());
        None
    } else {
        let c = analysis::min_degree_certificate(g, s, t)?;
        if c.is_none() {
            notes.push(format!("min degree {min_degree} >= t-1 = {}: min-degree certificate not applicable", t - 1));
        }
        c
    };
    Ok(AnalysisSection {
        min_degree,
        is_saturated,
        cores: analysis::find_cores(g),
        nice_cores,
        reading_conflicts: analysis::nice_core_reading_conflicts(g, s, t)?,
        min_degree_certificate,
        notes,
        degree_classes: analysis::degree_classes(g, None),
        f_membership: constructions::classify_f_membership(g, s, t),
    })
}

pub fn analyze(a: &AnalyzeArgs) -> Result<Outcome, CliError> {
    check_pattern(&a.pattern)?;
    let (s, t) = (a.pattern.s, a.pattern.t);
    if s == t {
        return Err(CliError::Usage(format!("analysis needs s < t, got s = t = {s}")));
    }
    let (g, bytes) = read_graph(&a.graph)?;
    if g.n_left() != g.n_right() {
        return Err(CliError::Usage(format!("analysis needs a square graph, got {}x{}", g.n_left(), g.n_right())));
    }
    let section = analysis_section(&g, s, t)?;
    let stdout = if a.json {
        let mut rep = base_report(
            "analyze",
            report::digest(&bytes),
            Parameters { s, t, n_left: g.n_left(), n_right: g.n_right(), mode: "sat".into() },
        );
        rep.formulas = square_formulas(&g, s, t);
        rep.analysis = Some(section);
        report::to_json(&rep)
    } else {
        analysis_text(&g, &section)
    };
    Ok(Outcome { stdout, code: EXIT_OK })
}

fn analysis_text(g: &BipartiteGraph, a: &AnalysisSection) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph       {}x{}, {} edges, min degree {}", g.n_left(), g.n_right(), g.edge_count(), a.min_degree);
    let _ = writeln!(out, "saturated   {}", a.is_saturated);
    let _ = writeln!(out, "cores       {}", a.cores.len());
    let _ = writeln!(out, "nice cores  {}", a.nice_cores.len());
    for f in &a.nice_cores {
        let c = &f.core;
        let _ = writeln!(out, "  core a0={} a0'={} A={:?} A'={:?}", c.a0, c.a0_prime, c.a, c.a_prime);
        let l = &f.partition;
        let _ = writeln!(out, "    B1={:?} B2={:?} C1={:?} C2={:?}", l.b1, l.b2, l.c1, l.c2);
        let _ = writeln!(out, "    B1'={:?} B2'={:?} C1'={:?} C2'={:?}", l.b1_prime, l.b2_prime, l.c1_prime, l.c2_prime);
        let o = &f.observations;
        let _ = writeln!(out, "    C degree holds {}  C2 x C2' complete {}", o.c_degree_holds, o.c2_complete_holds);
        if let Some(b) = &f.core_bound {
            let _ = writeln!(out, "    core bound: e(G) = {} >= {} : {}", g.edge_count(), b.lower_bound, b.holds);
        }
    }
    if let Some(c) = &a.min_degree_certificate {
        let _ = writeln!(out, "min-degree certificate (u0 = {} on {:?}, delta = {}, |V| = {})", c.u0, c.side, c.delta, c.v.len());
        let _ = writeln!(out, "  neighborhood conditions  {}", c.neighborhood_conditions_hold);
        let _ = writeln!(out, "  e(G) = {} >= bound {} : {}", c.edge_count, c.bound, c.edge_count_at_least_bound);
        let _ = writeln!(out, "  bound {} >= final {} : {}", c.bound, c.final_bound, c.bound_at_least_final);
    }
    for note in &a.notes {
        let _ = writeln!(out, "note        {note}");
    }
    let _ = writeln!(out, "F-family    {}", a.f_membership.member);
    out
}

fn search_options(f: &SearchFlags, census: bool) -> SearchOptions {
    SearchOptions {
        census,
        workers: f.workers,
        split_depth: f.split_depth,
        max_seconds: f.budget_seconds,
        max_nodes: f.max_nodes,
        n_cap: f.n_cap,
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Sat => "sat",
        Mode::Ordered => "ordered",
        Mode::Weak => "weak",
    }
}

#[derive(Debug, Serialize)]
struct IndexEntry {
    file: String,
    edges: usize,
    canonical: String,
    f_membership: Option<bool>,
}

#[derive(Debug, Serialize)]
struct CensusIndex {
    schema_version: u32,
    s: usize,
    t: usize,
    n: usize,
    mode: SearchMode,
    min_edges: Option<usize>,
    complete: bool,
    graphs: Vec<IndexEntry>,
}

fn f_memberships(r: &SearchResult) -> Option<Vec<bool>> {
    (r.mode == SearchMode::UnorderedSat && r.s <= r.t).then(|| {
        r.graphs()
            .iter()
            .map(|g| constructions::classify_f_membership(g, r.s, r.t).member)
            .collect()
    })
}

fn write_census(dir: &Path, r: &SearchResult, membership: &Option<Vec<bool>>) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut graphs = Vec::new();
    for (i, (g, c)) in r.graphs().iter().zip(&r.extremal_graphs).enumerate() {
        let file = format!("graph_{:03}.bsg", i + 1);
        write_file(&dir.join(&file), &graphfile::emit(g))?;
        graphs.push(IndexEntry {
            file,
            edges: g.edge_count(),
            canonical: c.to_hex(),
            f_membership: membership.as_ref().map(|m| m[i]),
        });
    }
    let index = CensusIndex {
        schema_version: report::SCHEMA_VERSION,
        s: r.s,
        t: r.t,
        n: r.n,
        mode: r.mode,
        min_edges: r.min_edges,
        complete: r.complete,
        graphs,
    };
    write_file(&dir.join("index.json"), &json(&index))
}

fn run_search(f: &SearchFlags, census_dir: Option<&Path>, command: &'static str) -> Result<Outcome, CliError> {
    check_pattern(&f.pattern)?;
    check_n(f.n)?;
    if f.workers == 0 {
        return Err(CliError::Usage("need --workers >= 1".into()));
    }
    let (s, t, n) = (f.pattern.s, f.pattern.t, f.n);
    let mode = f.mode.search_mode();
    let census = census_dir.is_some();
    let opts = search_options(f, census);
    let r = if census {
        search::census_extremal(s, t, n, mode, &opts)?
    } else if mode == SearchMode::WeakSat {
        search::min_wsat_edges(s, t, n, &opts)?
    } else {
        search::min_sat_edges(s, t, n, mode, &opts)?
    };
    let formulas = constructions::formula_table(s, t, n)?;
    let membership = f_memberships(&r);
    if let Some(dir) = census_dir {
        write_census(dir, &r, &membership)?;
    }
    let summary = report::search_summary(&r, &formulas, membership);
    let code = if r.complete { EXIT_OK } else { EXIT_BUDGET };

    let stdout = if f.json {
        let params = format!("{command} s={s} t={t} n={n} mode={} census={census}", mode_name(f.mode));
        let mut rep = base_report(
            command,
            report::digest(params.as_bytes()),
            Parameters { s, t, n_left: n, n_right: n, mode: mode_name(f.mode).into() },
        );
        rep.formulas = Some(formulas);
        rep.search = Some(summary);
        report::to_json(&rep)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "search      s={s} t={t} n={n} mode={}", mode.as_str());
        match summary.min_edges {
            Some(m) => {
                let _ = writeln!(out, "min_edges   {m}");
            }
            None => {
                let _ = writeln!(
                    out,
                    "min_edges   unknown (budget exhausted, no graph below {} edges)",
                    summary.verified_lower_bound
                );
            }
        }
        let _ = writeln!(out, "complete    {}", summary.complete);
        let _ = writeln!(out, "classes     {}", summary.extremal_count);
        let _ = writeln!(out, "nodes       {}", summary.nodes_explored);
        for l in &summary.levels {
            let _ = writeln!(out, "  m={:<3} nodes={:<10} hits={}", l.m, l.nodes, l.hits);
        }
        for c in &summary.comparisons {
            let _ = writeln!(out, "compare     {:<24} {:<11} {:>5}  {} (delta {})", c.formula, c.kind, c.value, c.relation, c.delta);
        }
        if let Some(m) = &summary.f_membership {
            let members = m.iter().filter(|&&b| b).count();
            let _ = writeln!(out, "F-family    {members}/{} extremal classes", m.len());
        }
        let _ = writeln!(out, "elapsed     {:.3}s", summary.timing.elapsed_seconds);
        out
    };
    Ok(Outcome { stdout, code })
}

pub fn search_cmd(a: &SearchArgs) -> Result<Outcome, CliError> {
    run_search(&a.flags, a.census.as_deref(), "search")
}

pub fn census(a: &CensusArgs) -> Result<Outcome, CliError> {
    run_search(&a.flags, Some(&a.out), "census")
}

/// `(name, value, provenance)` rows of the formula table.
pub fn formula_rows(f: &FormulaTable) -> Vec<(&'static str, Option<i64>, &'static str)> {
    vec![
        ("conjecture_value", Some(f.conjecture_value), "conjecture"),
        ("theorem12_value", f.theorem12_value, "theorem"),
        ("theorem13_lower", Some(f.theorem13_lower), "theorem"),
        ("gks_lower", Some(f.gks_lower), "classical"),
        ("ordered_value", Some(f.ordered_value), "classical"),
        ("ehm_ss_value", f.ehm_ss_value, "classical"),
        ("f_family_count", Some(f.f_family_count), "computed"),
        ("f_family_stated_count", Some(f.f_family_stated_count), "stated"),
    ]
}

pub fn formulas(a: &FormulasArgs) -> Result<Outcome, CliError> {
    check_pattern(&a.pattern)?;
    check_n(a.n)?;
    let (s, t, n) = (a.pattern.s, a.pattern.t, a.n);
    let f = constructions::formula_table(s, t, n)?;
    let stdout = if a.json {
        let params = format!("formulas s={s} t={t} n={n}");
        let mut rep = base_report(
            "formulas",
            report::digest(params.as_bytes()),
            Parameters { s, t, n_left: n, n_right: n, mode: "sat".into() },
        );
        rep.formulas = Some(f);
        report::to_json(&rep)
    } else {
        let mut out = format!("formulas    s={s} t={t} n={n}\n");
        for (name, value, label) in formula_rows(&f) {
            let shown = value.map_or("n/a".to_string(), |v| v.to_string());
            let _ = writeln!(out, "{name:<22} {shown:>8}  {label}");
        }
        if f.f_family_discrepancy {
            let _ = writeln!(
                out,
                "note: F-family edge count {} differs from the stated count {}; they agree only when s = t-1",
                f.f_family_count, f.f_family_stated_count
            );
        }
        out
    };
    Ok(Outcome { stdout, code: EXIT_OK })
}

pub fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Analyze(a) => analyze(a),
        Command::Search(a) => search_cmd(a),
        Command::Census(a) => census(a),
        Command::Formulas(a) => formulas(a),
    }
}
