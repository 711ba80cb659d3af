//! The JSON documents printed by `check`, `report` and `aut`.

use std::path::PathBuf;

use conhom::census::{
    divisibility_bound, local_structure, mu_graph_classes, parameters, unique_x, xplus_obstruction, DivisibilityBound, LocalReport,
    MuClassReport, ParameterReport, UniqueX, XPlusVerdict,
};
use conhom::homct::{check, CheckOptions, ChReport, Mode, Trust, Witness};
use conhom::permgrp::{automorphism_group, GroupChain};
use conhom::{CheckError, Graph};
use serde::{Deserialize, Serialize};

use crate::fixtures::{load_group, trust_of};
use crate::{registry, CliError, Context};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub source: String,
    pub order: usize,
    pub edges: usize,
}

impl GraphInfo {
    pub fn new(source: &str, g: &Graph) -> Self {
        GraphInfo { source: source.to_string(), order: g.order(), edges: g.edge_count() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub source: String,
    pub trust: Trust,
    pub order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub k: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub order: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCensus {
    pub mode: Mode,
    pub largest_verified: usize,
    pub negative_conclusive: bool,
    pub classes: Vec<ClassCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub graph: GraphInfo,
    pub group: GroupInfo,
    pub verdicts: Vec<Verdict>,
    pub census: CheckCensus,
}

impl CheckJson {
    pub fn from_report(graph: GraphInfo, group: GroupInfo, report: &ChReport) -> Self {
        let verdicts = report.verdicts.iter().map(|v| Verdict { k: v.k, pass: v.pass, witness: v.witness.clone() }).collect();
        let classes = report.verdicts.iter().filter_map(|v| v.classes.map(|c| ClassCount { order: v.k, classes: c })).collect();
        let census = CheckCensus {
            mode: report.mode,
            largest_verified: report.largest_verified,
            negative_conclusive: report.negative_conclusive,
            classes,
        };
        CheckJson { graph, group, verdicts, census }
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    Auto,
    File(PathBuf),
}

impl GroupSource {
    pub fn parse(s: &str) -> Self {
        if s == "auto" {
            GroupSource::Auto
        } else {
            GroupSource::File(PathBuf::from(s))
        }
    }
}

pub fn resolve_group(g: &Graph, source: &GroupSource) -> Result<(GroupChain, GroupInfo), CliError> {
    match source {
        GroupSource::Auto => {
            let aut = automorphism_group(g).map_err(|e| CliError::Usage(format!("{e}; pass --group with generators")))?;
            let info = GroupInfo { source: "auto".into(), trust: Trust::ComputedAut, order: aut.chain.order().to_string() };
            Ok((aut.chain, info))
        }
        GroupSource::File(path) => {
            let (chain, meta) = load_group(path)?;
            if chain.degree() != g.order() {
                return Err(CliError::Io(format!("{}: group has degree {}, graph has {} vertices", path.display(), chain.degree(), g.order())));
            }
            let source = path.file_name().map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned());
            let info = GroupInfo { source, trust: trust_of(meta.as_ref()), order: chain.order().to_string() };
            Ok((chain, info))
        }
    }
}

fn check_error(e: CheckError) -> CliError {
    match e {
        CheckError::Group(g) => CliError::Io(format!("group does not act on the graph: {g}")),
        other => CliError::Usage(other.to_string()),
    }
}

pub struct CheckArgs {
    pub k: usize,
    pub group: GroupSource,
    pub mode: Mode,
    pub class_cap: Option<usize>,
}

pub fn run_check(words: &[String], args: &CheckArgs, ctx: &Context) -> Result<CheckJson, CliError> {
    let g = registry::build(words, ctx)?;
    let (chain, info) = resolve_group(&g, &args.group)?;
    let mut opts = CheckOptions::new(args.k).mode(args.mode).trust(info.trust);
    if let Some(cap) = args.class_cap {
        opts = opts.class_cap(cap);
    }
    let report = check(&g, &chain, &opts).map_err(check_error)?;
    Ok(CheckJson::from_report(GraphInfo::new(&words.join(" "), &g), info, &report))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportBlock {
    pub parameters: ParameterReport,
    pub local: LocalReport,
    pub mu_classes: MuClassReport,
    pub unique_x: Option<UniqueX>,
    pub xplus: XPlusVerdict,
    pub divisibility_bound: Option<DivisibilityBound>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub report: ReportBlock,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub graph: GraphInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportBlock>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentReport>,
}

fn report_block(g: &Graph) -> Result<ReportBlock, CliError> {
    let group = automorphism_group(g).ok().map(|a| a.chain);
    let group = group.as_ref();
    let err = |e: &dyn std::fmt::Display| CliError::Usage(e.to_string());
    let params = parameters(g);
    let local = local_structure(g, group).map_err(|e| err(&e))?;
    let unique = if g.is_complete() { None } else { unique_x(g, group).map_err(|e| err(&e))? };
    Ok(ReportBlock {
        divisibility_bound: divisibility_bound(&params, &local),
        mu_classes: mu_graph_classes(g, group).map_err(|e| err(&e))?,
        xplus: xplus_obstruction(g, group).map_err(|e| err(&e))?,
        unique_x: unique,
        local,
        parameters: params,
    })
}

pub fn run_report(words: &[String], ctx: &Context) -> Result<ReportJson, CliError> {
    let g = registry::build(words, ctx)?;
    let graph = GraphInfo::new(&words.join(" "), &g);
    if g.is_connected() {
        return Ok(ReportJson { graph, report: Some(report_block(&g)?), components: Vec::new() });
    }
    let components = g
        .components()
        .into_iter()
        .map(|vertices| Ok(ComponentReport { report: report_block(&g.induced_subgraph(&vertices))?, vertices }))
        .collect::<Result<_, CliError>>()?;
    Ok(ReportJson { graph, report: None, components })
}

#[derive(Clone, Debug, Serialize)]
pub struct AutJson {
    pub graph: GraphInfo,
    pub order: String,
    pub generators: usize,
    pub base: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

pub fn run_aut(words: &[String], ctx: &Context) -> Result<(AutJson, GroupChain), CliError> {
    let g = registry::build(words, ctx)?;
    let (chain, _) = resolve_group(&g, &GroupSource::Auto)?;
    let json = AutJson {
        graph: GraphInfo::new(&words.join(" "), &g),
        order: chain.order().to_string(),
        generators: chain.generators().len(),
        base: chain.base(),
        orbits: chain.orbits(),
    };
    Ok((json, chain))
}
