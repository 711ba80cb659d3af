//! Claim files: graphs with expected verdicts and parameters, run as a
//! batch by `conhom reproduce`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use conhom::census::{parameters, IntersectionArray, Srg};
use conhom::homct::{check, CheckOptions, Mode, Trust};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::{resolve_group, GraphInfo, GroupInfo, GroupSource, Verdict};
use crate::{registry, CliError, Context};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Core,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub k: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedParameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub srg: Option<[usize; 4]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub intersection_array: Option<IntersectionArray>,
}

fn auto() -> String {
    "auto".into()
}

fn ch() -> Mode {
    Mode::Ch
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub id: String,
    /// Registry words, e.g. `"gq-pointgraph q5minus 3"`.
    pub graph: String,
    /// `auto` or a generator file, relative to the claims file.
    #[serde(default = "auto")]
    pub group: String,
    #[serde(default = "ch")]
    pub mode: Mode,
    #[serde(default)]
    pub expect: Vec<Expectation>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parameters: Option<ExpectedParameters>,
    pub tag: Tag,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimFile {
    pub version: u32,
    pub claims: Vec<ClaimSpec>,
}

/// Claims from one or more files, sorted by id; `bases[i]` is the directory
/// of the file `claims[i]` came from.
#[derive(Clone, Debug, Default)]
pub struct Claims {
    pub claims: Vec<ClaimSpec>,
    bases: Vec<PathBuf>,
}

impl Claims {
    /// Adds the claims of another file, keeping ids unique.
    pub fn merge(&mut self, other: Claims) -> Result<(), CliError> {
        let mut rows: Vec<(ClaimSpec, PathBuf)> = self.claims.drain(..).zip(self.bases.drain(..)).collect();
        rows.extend(other.claims.into_iter().zip(other.bases));
        rows.sort_by(|a, b| a.0.id.cmp(&b.0.id));
        if let Some(w) = rows.windows(2).find(|w| w[0].0.id == w[1].0.id) {
            return Err(CliError::Io(format!("claims: duplicate id {:?}", w[0].0.id)));
        }
        (self.claims, self.bases) = rows.into_iter().unzip();
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TagFilter {
    Core,
    Extended,
    All,
}

impl TagFilter {
    pub fn admits(self, tag: Tag) -> bool {
        matches!((self, tag), (TagFilter::All, _) | (TagFilter::Core, Tag::Core) | (TagFilter::Extended, Tag::Extended))
    }
}

pub fn parse_claims(text: &str, base: &Path) -> Result<Claims, CliError> {
    let file: ClaimFile = serde_json::from_str(text).map_err(|e| CliError::Io(format!("claims: {e}")))?;
    for c in &file.claims {
        let mut sorted = c.expect.clone();
        sorted.sort_by_key(|e| e.k);
        if sorted.windows(2).any(|w| !w[0].pass && w[1].pass) || sorted.windows(2).any(|w| w[0].k == w[1].k) {
            return Err(CliError::Io(format!("claims: {:?} expects non-monotone verdicts", c.id)));
        }
        if c.group != "auto" && !base.join(&c.group).exists() {
            return Err(CliError::Io(format!("claims: {:?} names missing group file {}", c.id, base.join(&c.group).display())));
        }
    }
    let mut claims = Claims::default();
    claims.merge(Claims { bases: vec![base.to_path_buf(); file.claims.len()], claims: file.claims })?;
    Ok(claims)
}

pub fn load_claims(paths: &[PathBuf]) -> Result<Claims, CliError> {
    let mut claims = Claims::default();
    for path in paths {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        claims.merge(parse_claims(&text, path.parent().unwrap_or(Path::new(".")))?)?;
    }
    Ok(claims)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Timeout,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "MISMATCH",
            Status::Timeout => "TIMEOUT",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputedParameters {
    pub srg: Option<Srg>,
    pub intersection_array: Option<IntersectionArray>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub tag: Tag,
    pub status: Status,
    pub expected: Vec<Expectation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInfo>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<ComputedParameters>,
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ClaimResult {
    fn failed(spec: &ClaimSpec, status: Status, error: String) -> Self {
        ClaimResult {
            id: spec.id.clone(),
            tag: spec.tag,
            status,
            expected: spec.expect.clone(),
            graph: None,
            group: None,
            verdicts: Vec::new(),
            parameters: None,
            mismatches: Vec::new(),
            error: Some(error),
        }
    }
}

fn evaluate(spec: &ClaimSpec, base: &Path, ctx: &Context) -> Result<ClaimResult, CliError> {
    let words: Vec<String> = spec.graph.split_whitespace().map(String::from).collect();
    let g = registry::build(&words, ctx)?;
    let mut result = ClaimResult {
        id: spec.id.clone(),
        tag: spec.tag,
        status: Status::Match,
        expected: spec.expect.clone(),
        graph: Some(GraphInfo::new(&spec.graph, &g)),
        group: None,
        verdicts: Vec::new(),
        parameters: None,
        mismatches: Vec::new(),
        error: None,
    };
    if let Some(max_k) = spec.expect.iter().map(|e| e.k).max() {
        let source = if spec.group == "auto" { GroupSource::Auto } else { GroupSource::File(base.join(&spec.group)) };
        let (chain, info) = resolve_group(&g, &source)?;
        let report = check(&g, &chain, &CheckOptions::new(max_k).mode(spec.mode).trust(info.trust))
            .map_err(|e| CliError::Io(format!("{}: {e}", spec.id)))?;
        for e in &spec.expect {
            let got = report.holds(e.k);
            if got != Some(e.pass) {
                result.mismatches.push(format!("k={}: expected {}, computed {:?}", e.k, e.pass, got));
            } else if !e.pass && info.trust == Trust::SubgroupOnly {
                result.mismatches.push(format!("k={}: negative verdict is inconclusive for a subgroup", e.k));
            }
        }
        result.verdicts = report.verdicts.iter().map(|v| Verdict { k: v.k, pass: v.pass, witness: v.witness.clone() }).collect();
        result.group = Some(info);
    }
    if let Some(expected) = &spec.parameters {
        let p = parameters(&g);
        if let Some([v, k, l, m]) = expected.srg {
            let got = p.srg.map(|s| [s.v, s.k, s.lambda, s.mu]);
            if got != Some([v, k, l, m]) {
                result.mismatches.push(format!("srg: expected ({v},{k},{l},{m}), computed {got:?}"));
            }
        }
        if let Some(ia) = &expected.intersection_array {
            if p.intersection_array.as_ref() != Some(ia) {
                result.mismatches.push(format!("intersection array: expected {ia:?}, computed {:?}", p.intersection_array));
            }
        }
        result.parameters = Some(ComputedParameters { srg: p.srg, intersection_array: p.intersection_array });
    }
    if !result.mismatches.is_empty() {
        result.status = Status::Mismatch;
    }
    Ok(result)
}

/// Runs one claim, giving up after `timeout` (the worker thread is left to
/// finish in the background).
pub fn run_claim(spec: &ClaimSpec, base: &Path, ctx: &Context, timeout: Option<Duration>) -> ClaimResult {
    let run = {
        let (spec, base, ctx) = (spec.clone(), base.to_path_buf(), ctx.clone());
        move || match evaluate(&spec, &base, &ctx) {
            Ok(r) => r,
            Err(e) => ClaimResult::failed(&spec, Status::Error, e.to_string()),
        }
    };
    let Some(limit) = timeout else { return run() };
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(run());
    });
    rx.recv_timeout(limit).unwrap_or_else(|_| ClaimResult::failed(spec, Status::Timeout, CliError::Timeout(limit.as_secs()).to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceLog {
    pub version: u32,
    pub tag: TagFilter,
    pub seed: u64,
    pub results: Vec<ClaimResult>,
}

impl ReproduceLog {
    pub fn exit_code(&self) -> u8 {
        if self.results.iter().any(|r| r.status == Status::Mismatch) {
            1
        } else if self.results.iter().any(|r| r.status != Status::Match) {
            3
        } else {
            0
        }
    }
}

pub struct ReproduceArgs {
    pub tag: TagFilter,
    pub jobs: usize,
    pub timeout: Option<Duration>,
    pub seed: u64,
}

/// Runs the selected claims on `jobs` threads; results come back sorted by
/// id together with wall-clock times.
pub fn reproduce(claims: &Claims, args: &ReproduceArgs, ctx: &Context) -> Result<(ReproduceLog, Vec<Duration>), CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs.max(1)).build().map_err(|e| CliError::Io(e.to_string()))?;
    let selected: Vec<(&ClaimSpec, &PathBuf)> = claims.claims.iter().zip(&claims.bases).filter(|(c, _)| args.tag.admits(c.tag)).collect();
    let outcomes: Vec<(ClaimResult, Duration)> = pool.install(|| {
        selected
            .par_iter()
            .map(|(spec, base)| {
                let start = Instant::now();
                let r = run_claim(spec, base, ctx, args.timeout);
                (r, start.elapsed())
            })
            .collect()
    });
    let (results, times) = outcomes.into_iter().unzip();
    Ok((ReproduceLog { version: 1, tag: args.tag, seed: args.seed, results }, times))
}
