//! JSON report documents. Every command produces the same top-level shape;
//! sections that do not apply are `null`. Search timing lives under
//! `search.timing` so reruns can be compared with that one field dropped.

use satkit::analysis::{
    CoreBound, DegreeClasses, MinDegreeCertificate, NiceCore, ObservationReport, PartitionLabels,
    ReadingConflict,
};
use satkit::analysis::Core;
use satkit::constructions::{FMembership, FormulaTable};
use satkit::saturation::SaturationReport;
use satkit::search::{LevelStats, SearchMode, SearchResult};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Bumped on any change to the report fields.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub artifact: Artifact,
    pub input_digest: String,
    pub parameters: Parameters,
    pub predicates: Option<Predicates>,
    pub formulas: Option<FormulaTable>,
    pub analysis: Option<AnalysisSection>,
    pub search: Option<SearchSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Artifact {
    pub name: &'static str,
    pub version: &'static str,
}

impl Artifact {
    pub fn current() -> Artifact {
        Artifact { name: "satkit", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Parameters {
    pub s: usize,
    pub t: usize,
    pub n_left: usize,
    pub n_right: usize,
    pub mode: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Predicates {
    #[serde(flatten)]
    pub report: SaturationReport,
    pub requested: Vec<String>,
    pub failed: Vec<String>,
    pub all_requested_hold: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreFindings {
    pub core: NiceCore,
    pub partition: PartitionLabels,
    pub observations: ObservationReport,
    /// Present when every degree is at least `t-1`.
    pub core_bound: Option<CoreBound>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisSection {
    pub min_degree: usize,
    pub is_saturated: bool,
    pub cores: Vec<Core>,
    pub nice_cores: Vec<CoreFindings>,
    pub reading_conflicts: Vec<ReadingConflict>,
    pub min_degree_certificate: Option<MinDegreeCertificate>,
    /// Why a certificate or bound is absent, when it is.
    pub notes: Vec<String>,
    pub degree_classes: DegreeClasses,
    pub f_membership: FMembership,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub formula: &'static str,
    /// `exact`: claimed value of the minimum; `lower_bound`: claimed bound;
    /// `guide`: asymptotic estimate, informational only.
    pub kind: &'static str,
    pub value: i64,
    pub relation: &'static str,
    /// `min_edges - value`.
    pub delta: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    pub mode: SearchMode,
    pub census: bool,
    pub min_edges: Option<usize>,
    pub complete: bool,
    pub lower_bound_used: usize,
    pub verified_lower_bound: usize,
    pub largest_exhausted_m: Option<usize>,
    pub nodes_explored: u64,
    pub levels: Vec<LevelStats>,
    pub extremal_count: usize,
    pub extremal_graphs: Vec<String>,
    pub allow_side_swap: bool,
    pub comparisons: Vec<Comparison>,
    /// Membership of each extremal graph in `F^n_{s,t}` (unordered mode only).
    pub f_membership: Option<Vec<bool>>,
    pub timing: Timing,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn compare(formula: &'static str, kind: &'static str, value: i64, min: i64) -> Comparison {
    let relation = match kind {
        "exact" if min == value => "match",
        "exact" => "mismatch",
        "lower_bound" if min >= value => "consistent",
        "lower_bound" => "violated",
        _ => "informational",
    };
    Comparison { formula, kind, value, relation, delta: min - value }
}

/// Formula values relevant to the search mode, checked against the minimum.
pub fn comparisons(r: &SearchResult, f: &FormulaTable) -> Vec<Comparison> {
    let Some(min) = r.min_edges.map(|m| m as i64) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    match r.mode {
        SearchMode::UnorderedSat => {
            out.push(compare("conjecture_value", "exact", f.conjecture_value, min));
            if let Some(v) = f.theorem12_value {
                out.push(compare("theorem12_value", "exact", v, min));
            }
            if let Some(v) = f.ehm_ss_value {
                out.push(compare("ehm_ss_value", "exact", v, min));
            }
            out.push(compare("theorem13_lower", "lower_bound", f.theorem13_lower, min));
            out.push(compare("gks_lower", "lower_bound", f.gks_lower, min));
        }
        SearchMode::OrderedSat => {
            out.push(compare("ordered_value", "exact", f.ordered_value, min));
        }
        SearchMode::WeakSat => {
            let guide = 2 * (r.s as i64 - 1) * r.n as i64;
            out.push(compare("wsat_guide_2s_minus_2_n", "guide", guide, min));
        }
    }
    out
}

pub fn search_summary(r: &SearchResult, f: &FormulaTable, f_membership: Option<Vec<bool>>) -> SearchSummary {
    SearchSummary {
        mode: r.mode,
        census: r.census,
        min_edges: r.min_edges,
        complete: r.complete,
        lower_bound_used: r.lower_bound_used,
        verified_lower_bound: r.verified_lower_bound(),
        largest_exhausted_m: r.largest_exhausted_m,
        nodes_explored: r.nodes_explored,
        levels: r.levels.clone(),
        extremal_count: r.extremal_graphs.len(),
        extremal_graphs: r.extremal_graphs.iter().map(|c| c.to_hex()).collect(),
        allow_side_swap: r.allow_side_swap,
        comparisons: comparisons(r, f),
        f_membership,
        timing: Timing { elapsed_seconds: r.elapsed.as_secs_f64() },
    }
}

pub fn to_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}
