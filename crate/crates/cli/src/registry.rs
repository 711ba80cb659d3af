//! Graphs by kebab-case name with positional numeric parameters, e.g.
//! `grid 4 4`, `gq-pointgraph q5minus 3`, `complement petersen`.

use std::path::Path;

use conhom::constructions::*;
use conhom::geometry::{gq, GqKind};
use conhom::io::{parse_edge_list, parse_graph6};
use conhom::Graph;

use crate::fixtures::load_fixture;
use crate::{CliError, Context};

/// Names accepted by [`build`], with their parameters.
pub const NAMES: &[&str] = &[
    "complete N",
    "cycle N",
    "path N",
    "complete-multipartite M R",
    "grid N M",
    "cross N M",
    "hypercube N",
    "folded-cube N",
    "halved-cube N",
    "johnson N K",
    "affine-polar M Q plus|minus",
    "projective-plane Q",
    "gq-pointgraph KIND Q",
    "gq-incidence KIND Q",
    "gq-dual-pointgraph KIND Q",
    "petersen",
    "icosahedron",
    "clebsch",
    "schlafli",
    "heawood",
    "tutte-coxeter",
    "complement GRAPH...",
    "line-graph GRAPH...",
    "halved SIDE GRAPH...",
    "disjoint-union COPIES GRAPH...",
    "fixture NAME",
    "hoffman-singleton | higman-sims | mclaughlin | hexagon | hexagon-dual | hall-janko | hall-janko-octagon",
    "PATH.g6 | PATH.edges",
];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn num(words: &[String], i: usize, what: &str) -> Result<usize, CliError> {
    let w = words.get(i).ok_or_else(|| usage(format!("{}: missing parameter {what}", words[0])))?;
    w.parse().map_err(|_| usage(format!("{}: {what} must be a non-negative integer, got {w:?}", words[0])))
}

fn arity(words: &[String], n: usize) -> Result<(), CliError> {
    if words.len() != n + 1 {
        return Err(usage(format!("{} takes {n} parameter(s), got {}", words[0], words.len() - 1)));
    }
    Ok(())
}

fn gq_kind(words: &[String]) -> Result<GqKind, CliError> {
    let w = words.get(1).ok_or_else(|| usage(format!("{}: missing GQ kind", words[0])))?;
    w.to_lowercase().parse().map_err(|_| usage(format!("unknown GQ kind {w:?}; expected w3, q4, q5minus, h3 or h4")))
}

fn fixture_alias(name: &str) -> Option<&'static str> {
    Some(match name {
        "hoffman-singleton" => "hoffman-singleton",
        "higman-sims" => "higman-sims",
        "mclaughlin" | "mcl" => "mcl2",
        "hexagon" => "hexagon",
        "hexagon-dual" => "hexagon-dual",
        "hall-janko" => "hall-janko",
        "hall-janko-octagon" => "hall-janko-octagon",
        _ => return None,
    })
}

fn is_file_source(word: &str) -> bool {
    word.contains('/') || [".g6", ".graph6", ".edges", ".txt"].iter().any(|e| word.ends_with(e))
}

pub fn read_graph_file(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let is_g6 = path.extension().is_some_and(|e| e == "g6" || e == "graph6");
    let parsed = if is_g6 { parse_graph6(&text) } else { parse_edge_list(&text) };
    parsed.map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Builds the graph named by `words`.
pub fn build(words: &[String], ctx: &Context) -> Result<Graph, CliError> {
    let Some(name) = words.first() else { return Err(usage("no graph given")) };
    if words.len() == 1 && is_file_source(name) {
        return read_graph_file(Path::new(name));
    }
    if let Some(f) = fixture_alias(name) {
        arity(words, 0)?;
        return Ok(load_fixture(&ctx.fixtures, f)?.graph);
    }
    let bad = |e: conhom::GraphError| usage(format!("{}: {e}", words.join(" ")));
    let rest = || words[1..].to_vec();
    let name = name.to_lowercase().replace('ä', "a");
    let g = match name.as_str() {
        "complete" | "cycle" | "path" | "hypercube" | "folded-cube" | "halved-cube" | "projective-plane" => {
            arity(words, 1)?;
            let n = num(words, 1, "N")?;
            match name.as_str() {
                "complete" => complete(n),
                "cycle" => cycle(n),
                "path" => path(n),
                "hypercube" => hypercube(n),
                "folded-cube" => folded_cube(n),
                "halved-cube" => halved_cube(n),
                _ => projective_plane_incidence(n),
            }
            .map_err(bad)?
        }
        "complete-multipartite" | "grid" | "cross" | "johnson" => {
            arity(words, 2)?;
            let (a, b) = (num(words, 1, "first parameter")?, num(words, 2, "second parameter")?);
            match name.as_str() {
                "complete-multipartite" => complete_multipartite(a, b),
                "grid" => grid(a, b),
                "cross" => cross(a, b),
                _ => johnson(a, b),
            }
            .map_err(bad)?
        }
        "affine-polar" => {
            arity(words, 3)?;
            let plus = match words[3].as_str() {
                "plus" | "+" => true,
                "minus" | "-" => false,
                other => return Err(usage(format!("affine-polar: type must be plus or minus, got {other:?}"))),
            };
            affine_polar(num(words, 1, "M")?, num(words, 2, "Q")?, plus).map_err(bad)?
        }
        "gq-pointgraph" | "gq-incidence" | "gq-dual-pointgraph" => {
            arity(words, 2)?;
            let geo = gq(gq_kind(words)?, num(words, 2, "Q")?).map_err(bad)?;
            match name.as_str() {
                "gq-pointgraph" => geo.point_graph(),
                "gq-incidence" => geo.incidence_graph(),
                _ => geo.dual().map_err(bad)?.point_graph(),
            }
        }
        "petersen" | "icosahedron" | "clebsch" | "schlafli" | "heawood" | "tutte-coxeter" => {
            arity(words, 0)?;
            match name.as_str() {
                "petersen" => petersen(),
                "icosahedron" => icosahedron(),
                "clebsch" => halved_cube(5).map_err(bad)?,
                "schlafli" => complement(&gq(GqKind::Q5Minus, 2).map_err(bad)?.point_graph()),
                "heawood" => projective_plane_incidence(2).map_err(bad)?,
                _ => gq(GqKind::W3, 2).map_err(bad)?.incidence_graph(),
            }
        }
        "complement" => complement(&build(&rest(), ctx)?),
        "line-graph" => line_graph(&build(&rest(), ctx)?).map_err(bad)?,
        "halved" | "disjoint-union" => {
            let k = num(words, 1, if name == "halved" { "SIDE" } else { "COPIES" })?;
            let inner = build(&words[2..], ctx)?;
            if name == "halved" { halved(&inner, k) } else { disjoint_union(&inner, k) }.map_err(bad)?
        }
        "fixture" => {
            arity(words, 1)?;
            load_fixture(&ctx.fixtures, &words[1])?.graph
        }
        other => return Err(usage(format!("unknown graph {other:?}; known: {}", NAMES.join(", ")))),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn builds_named_graphs() {
        let ctx = Context::default();
        assert_eq!(build(&w("grid 4 4"), &ctx).unwrap().order(), 16);
        assert_eq!(build(&w("gq-pointgraph Q5minus 3"), &ctx).unwrap().order(), 112);
        assert_eq!(build(&w("complement line-graph petersen"), &ctx).unwrap().order(), 15);
        assert_eq!(build(&w("affine-polar 3 2 minus"), &ctx).unwrap().valency(), Some(27));
    }

    #[test]
    fn rejects_bad_input() {
        let ctx = Context::default();
        assert!(matches!(build(&w("gq-pointgraph Q5minus 7"), &ctx), Err(CliError::Usage(_))));
        assert!(matches!(build(&w("grid 4"), &ctx), Err(CliError::Usage(_))));
        assert!(matches!(build(&w("nonsense"), &ctx), Err(CliError::Usage(_))));
        assert!(matches!(build(&w("missing/file.g6"), &ctx), Err(CliError::Io(_))));
    }
}
