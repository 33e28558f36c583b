//! JSON shapes printed by the commands. Word lists are always sorted.

use std::collections::BTreeMap;

use groundkernel::{DefGraph, MgsConfig, MgsResult, SccDecomposition};
use serde::Serialize;

/// Present only when undefined words were accepted with `--allow-open`.
#[derive(Serialize)]
pub struct OpenInfo {
    pub allow_open: bool,
    pub undefined_words: Vec<String>,
}

#[derive(Serialize)]
pub struct Coverage {
    pub reached: usize,
    pub total: usize,
    pub fraction: String,
    pub value: f64,
}

impl Coverage {
    /// From a reduced fraction.
    pub fn new(numer: usize, denom: usize) -> Self {
        Coverage {
            reached: numer,
            total: denom,
            fraction: format!("{numer}/{denom}"),
            value: numer as f64 / denom as f64,
        }
    }
}

#[derive(Serialize)]
pub struct ReachedWord {
    pub word: String,
    pub step: u32,
}

#[derive(Serialize)]
pub struct ReachableReport {
    pub seeds: Vec<String>,
    pub relax: u32,
    #[serde(serialize_with = "reached_words")]
    pub reached: Vec<(String, u32)>,
    pub unreached: Vec<String>,
    pub fixpoint_step: u32,
    pub coverage: Coverage,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open: Option<OpenInfo>,
}

fn reached_words<S: serde::Serializer>(reached: &[(String, u32)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(reached.iter().map(|(word, step)| ReachedWord {
        word: word.clone(),
        step: *step,
    }))
}

#[derive(Serialize)]
pub struct KernelReport {
    pub kernel: Vec<String>,
    pub removal_rounds: Vec<Vec<String>>,
    /// Index = level.
    pub levels: Vec<Vec<String>>,
    pub max_level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open: Option<OpenInfo>,
}

#[derive(Serialize)]
pub struct LevelsReport {
    pub level_of: BTreeMap<String, u32>,
    pub levels: Vec<Vec<String>>,
    pub max_level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open: Option<OpenInfo>,
}

#[derive(Serialize)]
pub struct ComponentReport {
    pub words: Vec<String>,
    pub chosen: Vec<String>,
    pub exact: bool,
    pub lower_bound: usize,
}

#[derive(Serialize)]
pub struct GroundingNumber {
    pub lower_bound: usize,
    pub upper_bound: usize,
}

#[derive(Serialize)]
pub struct MgsReport {
    pub chosen: Vec<String>,
    pub exact: bool,
    pub grounding_number: GroundingNumber,
    pub per_component: Vec<ComponentReport>,
    pub parameters: MgsConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open: Option<OpenInfo>,
}

#[derive(Serialize)]
pub struct MgsSummary {
    pub chosen: Vec<String>,
    pub exact: bool,
    pub grounding_number: GroundingNumber,
}

fn names(g: &DefGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.word(v).to_string()).collect()
}

impl MgsReport {
    pub fn new(g: &DefGraph, res: &MgsResult, cfg: &MgsConfig) -> Self {
        MgsReport {
            chosen: names(g, &res.chosen),
            exact: res.exact,
            grounding_number: GroundingNumber {
                lower_bound: res.grounding_number_lower_bound,
                upper_bound: res.grounding_number_upper_bound,
            },
            per_component: res
                .per_component
                .iter()
                .map(|c| ComponentReport {
                    words: names(g, &c.vertices),
                    chosen: names(g, &c.chosen),
                    exact: c.exact,
                    lower_bound: c.lower_bound,
                })
                .collect(),
            parameters: *cfg,
            open: None,
        }
    }

    pub fn summary(self) -> MgsSummary {
        MgsSummary {
            chosen: self.chosen,
            exact: self.exact,
            grounding_number: self.grounding_number,
        }
    }
}

#[derive(Serialize)]
pub struct SccSummary {
    pub component_count: usize,
    /// Components containing a cycle.
    pub cyclic_count: usize,
    /// Component size -> number of components of that size.
    pub size_histogram: BTreeMap<usize, usize>,
}

impl SccSummary {
    pub fn new(g: &DefGraph, scc: &SccDecomposition) -> Self {
        let mut size_histogram = BTreeMap::new();
        for c in &scc.components {
            *size_histogram.entry(c.len()).or_insert(0) += 1;
        }
        SccSummary {
            component_count: scc.len(),
            cyclic_count: (0..scc.len()).filter(|&c| scc.is_cyclic(g, c)).count(),
            size_histogram,
        }
    }
}

#[derive(Serialize)]
pub struct Parameters {
    pub exact_limit: usize,
    pub relax: u32,
    pub from: Vec<String>,
    pub allow_open: bool,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub word_count: usize,
    pub arc_count: usize,
    pub scc_summary: SccSummary,
    pub kernel: Vec<String>,
    pub levels: Vec<Vec<String>>,
    pub max_level: u32,
    pub mgs: MgsSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reachable: Option<ReachableReport>,
    pub parameters: Parameters,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open: Option<OpenInfo>,
}

#[derive(Serialize)]
pub struct ExportSummary {
    pub output: String,
    pub nodes: usize,
    pub arcs: usize,
    pub highlighted: Vec<String>,
}
