use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::Path;
use std::process::ExitCode;

use groundkernel::kernel::grounding_kernel;
use groundkernel::lexicon::{parse_json_entries, parse_text_entries, validate as validate_entries};
use groundkernel::mgs::minimum_grounding_set;
use groundkernel::reachability::{coverage_fraction, relaxed_reachable_set};
use groundkernel::{DefGraph, Dictionary, Error, MgsConfig, Percent, RawEntries};
use serde::Serialize;

use crate::report::{
    AnalysisReport, Coverage, ExportSummary, KernelReport, LevelsReport, MgsReport, OpenInfo,
    ReachableReport, SccSummary,
};
use crate::{dot, Format, Highlight, Input};

pub struct Failure {
    pub code: ExitCode,
    pub message: String,
}

impl Failure {
    fn domain(message: impl ToString) -> Self {
        Failure {
            code: ExitCode::from(1),
            message: message.to_string(),
        }
    }

    fn usage(message: impl ToString) -> Self {
        Failure {
            code: ExitCode::from(2),
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPercent(_) | Error::InvalidConfig(_) => Failure::usage(e),
            _ => Failure::domain(e),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read_entries(input: &Input) -> Result<RawEntries, Failure> {
    let file = File::open(&input.file)
        .map_err(|e| Failure::usage(format!("{}: {e}", input.file.display())))?;
    let format = input.format.unwrap_or_else(|| {
        match input.file.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Text,
        }
    });
    let reader = BufReader::new(file);
    let raw = match format {
        Format::Text => parse_text_entries(reader),
        Format::Json => parse_json_entries(reader),
    };
    raw.map_err(|e| Failure::domain(format!("{}: {e}", input.file.display())))
}

struct Loaded {
    dict: Dictionary,
    graph: DefGraph,
}

impl Loaded {
    fn open_info(&self, input: &Input) -> Option<OpenInfo> {
        input.allow_open.then(|| OpenInfo {
            allow_open: true,
            undefined_words: self.dict.undefined().iter().map(|w| w.to_string()).collect(),
        })
    }
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let raw = read_entries(input)?;
    let dict = if input.allow_open {
        Dictionary::from_raw_open(raw)
    } else {
        Dictionary::from_raw(raw)
    }
    .map_err(|e| Failure::domain(format!("{}: {e}", input.file.display())))?;
    let graph = DefGraph::from_dictionary(&dict);
    Ok(Loaded { dict, graph })
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(Failure::usage)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(Failure::usage)
}

fn names(g: &DefGraph, vertices: &[usize]) -> Vec<String> {
    vertices.iter().map(|&v| g.word(v).to_string()).collect()
}

pub fn validate(input: &Input) -> CmdResult {
    let raw = read_entries(input)?;
    let report = validate_entries(&raw);
    emit(&report)?;
    Ok(ExitCode::from(if report.ok { 0 } else { 1 }))
}

fn reachable_report(loaded: &Loaded, input: &Input, from: &[String], relax: u32) -> Result<ReachableReport, Failure> {
    let g = &loaded.graph;
    let r = Percent::new(relax)?;
    let seeds = g.vertex_set(from)?;
    let res = relaxed_reachable_set(g, &seeds, r)?;
    let coverage = coverage_fraction(g, &seeds, r)?;
    Ok(ReachableReport {
        seeds: names(g, &seeds),
        relax,
        reached: res
            .reached()
            .iter()
            .map(|&v| (g.word(v).to_string(), res.step(v).expect("reached")))
            .collect(),
        unreached: g
            .vertices()
            .filter(|&v| !res.contains(v))
            .map(|v| g.word(v).to_string())
            .collect(),
        fixpoint_step: res.fixpoint_step(),
        coverage: Coverage::new(*coverage.numer(), *coverage.denom()),
        open: loaded.open_info(input),
    })
}

pub fn reachable(input: &Input, from: &[String], relax: u32) -> CmdResult {
    let loaded = load(input)?;
    emit(&reachable_report(&loaded, input, from, relax)?)?;
    Ok(ExitCode::SUCCESS)
}

pub fn kernel(input: &Input) -> CmdResult {
    let loaded = load(input)?;
    let g = &loaded.graph;
    let k = grounding_kernel(g);
    emit(&KernelReport {
        kernel: names(g, &k.kernel),
        removal_rounds: k.removal_rounds.iter().map(|r| names(g, r)).collect(),
        levels: k.levels().iter().map(|l| names(g, l)).collect(),
        max_level: k.max_level(),
        open: loaded.open_info(input),
    })?;
    Ok(ExitCode::SUCCESS)
}

pub fn levels(input: &Input) -> CmdResult {
    let loaded = load(input)?;
    let g = &loaded.graph;
    let k = grounding_kernel(g);
    emit(&LevelsReport {
        level_of: g
            .vertices()
            .map(|v| (g.word(v).to_string(), k.level_of[v]))
            .collect(),
        levels: k.levels().iter().map(|l| names(g, l)).collect(),
        max_level: k.max_level(),
        open: loaded.open_info(input),
    })?;
    Ok(ExitCode::SUCCESS)
}

fn mgs_report(g: &DefGraph, exact_limit: usize) -> Result<MgsReport, Failure> {
    let cfg = MgsConfig::with_exact_limit(exact_limit)?;
    let res = minimum_grounding_set(g, &cfg)?;
    Ok(MgsReport::new(g, &res, &cfg))
}

pub fn mgs(input: &Input, exact_limit: usize) -> CmdResult {
    let loaded = load(input)?;
    let mut report = mgs_report(&loaded.graph, exact_limit)?;
    report.open = loaded.open_info(input);
    emit(&report)?;
    Ok(ExitCode::SUCCESS)
}

pub fn export(input: &Input, out: Option<&Path>, highlight: Highlight, exact_limit: usize) -> CmdResult {
    let loaded = load(input)?;
    let g = &loaded.graph;
    let marked = match highlight {
        Highlight::None => Vec::new(),
        Highlight::Kernel => grounding_kernel(g).kernel,
        Highlight::Mgs => {
            let cfg = MgsConfig::with_exact_limit(exact_limit)?;
            minimum_grounding_set(g, &cfg)?.chosen
        }
    };
    let text = dot::render(g, &marked);
    match out {
        None => {
            io::stdout().lock().write_all(text.as_bytes()).map_err(Failure::usage)?;
        }
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            emit(&ExportSummary {
                output: path.display().to_string(),
                nodes: g.vertex_count(),
                arcs: g.arc_count(),
                highlighted: names(g, &marked),
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn analyze(input: &Input, exact_limit: usize, from: &[String], relax: u32) -> CmdResult {
    let loaded = load(input)?;
    let g = &loaded.graph;
    let scc = g.scc();
    let k = grounding_kernel(g);
    let mgs = mgs_report(g, exact_limit)?;
    let reachable = if from.is_empty() {
        // still validates the percentage
        Percent::new(relax)?;
        None
    } else {
        Some(reachable_report(&loaded, input, from, relax)?)
    };
    emit(&AnalysisReport {
        word_count: g.vertex_count(),
        arc_count: g.arc_count(),
        scc_summary: SccSummary::new(g, &scc),
        kernel: names(g, &k.kernel),
        levels: k.levels().iter().map(|l| names(g, l)).collect(),
        max_level: k.max_level(),
        mgs: mgs.summary(),
        reachable,
        parameters: crate::report::Parameters {
            exact_limit,
            relax,
            from: from.to_vec(),
            allow_open: input.allow_open,
        },
        open: loaded.open_info(input),
    })?;
    Ok(ExitCode::SUCCESS)
}
