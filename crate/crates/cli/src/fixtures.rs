//! `fixtures/<name>.gens` with `fixtures/<name>.meta.json`.

use std::path::{Path, PathBuf};

use conhom::constructions::orbital_graphs_of;
use conhom::homct::Trust;
use conhom::io::parse_generators;
use conhom::permgrp::GroupChain;
use conhom::Graph;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureMeta {
    pub name: String,
    pub group: String,
    /// Decimal group order.
    pub order: String,
    pub degree: usize,
    pub claimed_full_aut: bool,
    /// The fixture graph is the unique orbital graph of this valency.
    pub orbital_valency: usize,
    pub provenance: String,
}

pub struct Fixture {
    pub meta: FixtureMeta,
    pub chain: GroupChain,
    pub graph: Graph,
}

fn io(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| io(path, e))
}

fn meta_path(gens: &Path) -> PathBuf {
    let stem = gens.file_name().and_then(|s| s.to_str()).unwrap_or("").trim_end_matches(".gens");
    gens.with_file_name(format!("{stem}.meta.json"))
}

/// Reads a generator file and its metadata, if present, and checks the
/// group order against the metadata.
pub fn load_group(gens_path: &Path) -> Result<(GroupChain, Option<FixtureMeta>), CliError> {
    let gens = parse_generators(&read(gens_path)?).map_err(|e| io(gens_path, e))?;
    let chain = GroupChain::new(gens.degree, gens.perms).map_err(|e| io(gens_path, e))?;
    let mp = meta_path(gens_path);
    let meta = if mp.exists() {
        let meta: FixtureMeta = serde_json::from_str(&read(&mp)?).map_err(|e| io(&mp, e))?;
        if meta.order != chain.order().to_string() || meta.degree != chain.degree() {
            return Err(io(&mp, format!("claims order {} on {} points, generators give {} on {}", meta.order, meta.degree, chain.order(), chain.degree())));
        }
        Some(meta)
    } else {
        None
    };
    Ok((chain, meta))
}

pub fn trust_of(meta: Option<&FixtureMeta>) -> Trust {
    if meta.is_some_and(|m| m.claimed_full_aut) {
        Trust::FixtureTrustedAut
    } else {
        Trust::SubgroupOnly
    }
}

pub fn load_fixture(dir: &Path, name: &str) -> Result<Fixture, CliError> {
    let gens_path = dir.join(format!("{name}.gens"));
    let (chain, meta) = load_group(&gens_path)?;
    let meta = meta.ok_or_else(|| io(&meta_path(&gens_path), "missing fixture metadata"))?;
    let orbitals = orbital_graphs_of(&chain).map_err(|e| io(&gens_path, e))?;
    let mut matching = orbitals.graphs.into_iter().filter(|o| o.valency == meta.orbital_valency);
    let graph = match (matching.next(), matching.next()) {
        (Some(o), None) => o.graph,
        _ => return Err(io(&gens_path, format!("no unique orbital graph of valency {}", meta.orbital_valency))),
    };
    Ok(Fixture { meta, chain, graph })
}
