//! Partial linear spaces and the classical generalised quadrangles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::forms::{FormKind, FormedSpace};
use crate::graph::{Bitset, Graph};

/// Points `0..points` and lines given as sorted point lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    points: usize,
    lines: Vec<Vec<usize>>,
    point_labels: Option<Vec<String>>,
    gq_order: Option<(usize, usize)>,
}

impl Geometry {
    /// Validates that two points share at most one line.
    pub fn new(points: usize, mut lines: Vec<Vec<usize>>) -> Result<Geometry, GraphError> {
        let mut seen = vec![Bitset::new(points); points];
        for line in &mut lines {
            line.sort_unstable();
            if line.len() < 2 {
                return Err(GraphError::Geometry(format!("line {line:?} has fewer than 2 points")));
            }
            if line.windows(2).any(|w| w[0] == w[1]) || line.last().is_some_and(|&p| p >= points) {
                return Err(GraphError::Geometry(format!("line {line:?} repeats a point or is out of range")));
            }
            for (i, &a) in line.iter().enumerate() {
                for &b in &line[i + 1..] {
                    if seen[a].contains(b) {
                        return Err(GraphError::Geometry(format!("points {a} and {b} lie on two lines")));
                    }
                    seen[a].insert(b);
                    seen[b].insert(a);
                }
            }
        }
        Ok(Geometry { points, lines, point_labels: None, gq_order: None })
    }

    pub fn with_point_labels(mut self, labels: Vec<String>) -> Geometry {
        self.point_labels = Some(labels);
        self
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// `(s, t)` once [`Geometry::validate_gq`] has succeeded.
    pub fn gq_order(&self) -> Option<(usize, usize)> {
        self.gq_order
    }

    /// Checks the GQ Axiom on every non-incident point-line pair, plus
    /// constant line size `s+1` and constant `t+1` lines per point.
    pub fn validate_gq(mut self) -> Result<Geometry, GraphError> {
        let s1 = self.lines.first().map_or(0, Vec::len);
        if s1 < 2 || self.lines.iter().any(|l| l.len() != s1) {
            return Err(GraphError::Geometry("lines do not all have the same size".into()));
        }
        let mut per_point = vec![0usize; self.points];
        for l in &self.lines {
            for &p in l {
                per_point[p] += 1;
            }
        }
        let t1 = per_point.first().copied().unwrap_or(0);
        if t1 < 2 || per_point.iter().any(|&c| c != t1) {
            return Err(GraphError::Geometry("points are not all on the same number of lines".into()));
        }
        let collinear = self.point_graph();
        let mut on = Bitset::new(self.points);
        for (li, l) in self.lines.iter().enumerate() {
            for &p in l {
                on.insert(p);
            }
            for p in 0..self.points {
                if on.contains(p) {
                    continue;
                }
                let c = l.iter().filter(|&&x| collinear.adjacent(p, x)).count();
                if c != 1 {
                    return Err(GraphError::Geometry(format!("point {p} is collinear with {c} points of line {li}")));
                }
            }
            for &p in l {
                on.remove(p);
            }
        }
        self.gq_order = Some((s1 - 1, t1 - 1));
        Ok(self)
    }

    /// Collinearity graph.
    pub fn point_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for l in &self.lines {
            for (i, &a) in l.iter().enumerate() {
                for &b in &l[i + 1..] {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(self.points, edges);
        match &self.point_labels {
            Some(labels) => g.with_labels(labels.clone()),
            None => g,
        }
    }

    /// Bipartite incidence graph: points `0..P`, then lines `P..P+L`.
    pub fn incidence_graph(&self) -> Graph {
        let p = self.points;
        let edges = self.lines.iter().enumerate().flat_map(|(i, l)| l.iter().map(move |&x| (x, p + i)));
        Graph::from_edges(p + self.lines.len(), edges)
    }

    /// Points and lines swapped.
    pub fn dual(&self) -> Result<Geometry, GraphError> {
        let mut lines = vec![Vec::new(); self.points];
        for (i, l) in self.lines.iter().enumerate() {
            for &x in l {
                lines[x].push(i);
            }
        }
        Geometry::new(self.lines.len(), lines)
    }
}

/// The classical generalised quadrangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GqKind {
    /// Symplectic W3(q), order (q, q).
    W3,
    /// Parabolic Q4(q), q odd, order (q, q).
    Q4,
    /// Elliptic Q5⁻(q), order (q, q²).
    Q5Minus,
    /// Hermitian H3(q²), order (q², q).
    H3,
    /// Hermitian H4(q²), order (q², q³).
    H4,
}

impl fmt::Display for GqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GqKind::W3 => "W3",
            GqKind::Q4 => "Q4",
            GqKind::Q5Minus => "Q5minus",
            GqKind::H3 => "H3",
            GqKind::H4 => "H4",
        })
    }
}

impl FromStr for GqKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "w3" => Ok(GqKind::W3),
            "q4" => Ok(GqKind::Q4),
            "q5minus" | "q5-" => Ok(GqKind::Q5Minus),
            "h3" => Ok(GqKind::H3),
            "h4" => Ok(GqKind::H4),
            _ => Err(GraphError::InvalidParameters(format!("unknown quadrangle kind {s:?}; expected W3, Q4, Q5minus, H3 or H4"))),
        }
    }
}

/// Field orders accepted by [`gq`]. For the Hermitian kinds this is the
/// base `q` of GF(q²).
pub const GQ_SUPPORTED_Q: [usize; 4] = [2, 3, 4, 5];

/// Largest point count [`gq`] will build.
pub const GQ_MAX_POINTS: usize = 2000;

impl GqKind {
    /// `(s, t)` for base field order `q`.
    pub fn order(self, q: usize) -> (usize, usize) {
        match self {
            GqKind::W3 | GqKind::Q4 => (q, q),
            GqKind::Q5Minus => (q, q * q),
            GqKind::H3 => (q * q, q),
            GqKind::H4 => (q * q, q * q * q),
        }
    }

    pub fn point_count(self, q: usize) -> usize {
        let (s, t) = self.order(q);
        (s + 1) * (s * t + 1)
    }

    pub fn line_count(self, q: usize) -> usize {
        let (s, t) = self.order(q);
        (t + 1) * (s * t + 1)
    }

    fn space(self, q: usize) -> Result<FormedSpace, GraphError> {
        let (kind, dim) = match self {
            GqKind::W3 => (FormKind::Symplectic, 4),
            GqKind::Q4 => (FormKind::Quadratic, 5),
            GqKind::Q5Minus => (FormKind::QuadraticMinus, 6),
            GqKind::H3 => (FormKind::Unitary, 4),
            GqKind::H4 => (FormKind::Unitary, 5),
        };
        Ok(FormedSpace::standard(kind, dim, q)?)
    }
}

/// Builds a classical quadrangle from the standard formed space and
/// validates the GQ Axiom.
pub fn gq(kind: GqKind, q: usize) -> Result<Geometry, GraphError> {
    if !GQ_SUPPORTED_Q.contains(&q) {
        return Err(GraphError::InvalidParameters(format!("unsupported q = {q} for {kind}; supported values are {GQ_SUPPORTED_Q:?}")));
    }
    if kind == GqKind::Q4 && q.is_multiple_of(2) {
        return Err(GraphError::InvalidParameters(format!("Q4({q}) needs odd q")));
    }
    if kind.point_count(q) > GQ_MAX_POINTS {
        return Err(GraphError::InvalidParameters(format!(
            "unsupported q = {q} for {kind}: {} points exceed the limit {GQ_MAX_POINTS}",
            kind.point_count(q)
        )));
    }
    let space = kind.space(q)?;
    let points = space.singular_points();
    let lines = space.ts_lines();
    let labels = points.iter().map(|v| format!("<{}>", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))).collect();
    let geo = Geometry::new(points.len(), lines)?.with_point_labels(labels).validate_gq()?;
    if geo.gq_order() != Some(kind.order(q)) || geo.point_count() != kind.point_count(q) {
        return Err(GraphError::Geometry(format!("{kind}({q}) has order {:?}, expected {:?}", geo.gq_order(), kind.order(q))));
    }
    Ok(geo)
}
