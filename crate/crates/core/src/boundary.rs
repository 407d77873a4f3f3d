//! Finitely presented infinite paths: lassos `u·c·c·…` on finite graphs and
//! `u·s_{j+1}s_{j+2}…` (the spine from `v_j`) on ladder truncations.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::ladder::{LadderGraph, LadderVertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Repeats forever; always primitive in canonical form.
    Cycle(Path),
    /// The spine read from `v_j` upward: `s_{j+1} s_{j+2} …`.
    Spine(usize),
}

/// An infinite path `x = prefix · tail`, kept canonical: primitive cycle and
/// minimal prefix. Two values are equal iff they denote the same path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryPath {
    prefix: Path,
    tail: Tail,
}

fn primitive_root(g: &Graph, cycle: &Path) -> Path {
    let edges = cycle.edges();
    let n = edges.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| edges[i] == edges[i - d]) {
            return Path::from_edges(g, edges[..d].to_vec()).expect("subword of a cycle");
        }
    }
    cycle.clone()
}

fn rotate_right(g: &Graph, cycle: &Path) -> Path {
    let e = cycle.edges();
    let mut out = Vec::with_capacity(e.len());
    out.push(e[e.len() - 1]);
    out.extend_from_slice(&e[..e.len() - 1]);
    Path::from_edges(g, out).expect("rotation of a cycle")
}

/// Rotates left by `m`: `c_{m+1} … c_L c_1 … c_m`.
pub fn rotate_left(g: &Graph, cycle: &Path, m: usize) -> Path {
    let e = cycle.edges();
    let m = m % e.len();
    if m == 0 {
        return cycle.clone();
    }
    let mut out = e[m..].to_vec();
    out.extend_from_slice(&e[..m]);
    Path::from_edges(g, out).expect("rotation of a cycle")
}

fn spine_vertex(g: &Graph, j: usize) -> Result<VertexId> {
    g.vertex_id(&LadderGraph::spine_vertex_name(j))
        .ok_or(Error::DepthExceeded { needed: j, available: max_spine_stage(g) })
}

fn spine_edge(g: &Graph, j: usize) -> Result<EdgeId> {
    g.edge_id(&LadderGraph::spine_edge_name(j))
        .ok_or(Error::DepthExceeded { needed: j, available: max_spine_stage(g) })
}

fn max_spine_stage(g: &Graph) -> usize {
    (0..).take_while(|&j| g.vertex_id(&LadderGraph::spine_vertex_name(j)).is_some()).last().unwrap_or(0)
}

impl BoundaryPath {
    pub fn lasso(g: &Graph, prefix: Path, cycle: Path) -> Result<Self> {
        if cycle.is_vertex() {
            return Err(Error::InvalidLasso("cycle must contain at least one edge".into()));
        }
        if cycle.source() != cycle.range() {
            return Err(Error::InvalidLasso(format!("cycle `{}` is not closed", g.path_to_string(&cycle))));
        }
        if prefix.source() != cycle.range() {
            return Err(Error::InvalidLasso(format!(
                "prefix `{}` ends at {} but the cycle starts at {}",
                g.path_to_string(&prefix),
                g.vertex_name(prefix.source()),
                g.vertex_name(cycle.range())
            )));
        }
        let mut prefix = prefix;
        let mut cycle = primitive_root(g, &cycle);
        while let (Some(a), Some(b)) = (prefix.last_edge(), cycle.last_edge()) {
            if a != b {
                break;
            }
            prefix = prefix.drop_last(g).unwrap();
            cycle = rotate_right(g, &cycle);
        }
        Ok(BoundaryPath { prefix, tail: Tail::Cycle(cycle) })
    }

    /// `prefix · s_{j+1} s_{j+2} …`; `s(prefix)` must be `v_j`.
    pub fn spine(g: &Graph, prefix: Path, from: usize) -> Result<Self> {
        let vj = spine_vertex(g, from)?;
        if prefix.source() != vj {
            return Err(Error::InvalidLasso(format!(
                "prefix `{}` must end at {}",
                g.path_to_string(&prefix),
                g.vertex_name(vj)
            )));
        }
        let mut prefix = prefix;
        let mut from = from;
        while let Some(last) = prefix.last_edge() {
            if from == 0 || g.edge_id(&LadderGraph::spine_edge_name(from)) != Some(last) {
                break;
            }
            prefix = prefix.drop_last(g).unwrap();
            from -= 1;
        }
        Ok(BoundaryPath { prefix, tail: Tail::Spine(from) })
    }

    /// Parses `prefix;cycle` (whitespace-separated edge ids; a lone vertex id
    /// for an empty prefix), `spine`, or `prefix;spine`.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "spine" {
            return Self::spine(g, Path::vertex(spine_vertex(g, 0)?), 0);
        }
        let (pre, cyc) = text
            .split_once(';')
            .ok_or_else(|| Error::InvalidLasso(format!("expected `prefix;cycle`, got `{text}`")))?;
        let cyc = cyc.trim();
        if cyc == "spine" {
            let prefix = g.parse_path(pre)?;
            let stage = match LadderGraph::classify(g, prefix.source()) {
                Some(LadderVertex::Spine(j)) => j,
                _ => return Err(Error::InvalidLasso("a spine tail must start at a spine vertex".into())),
            };
            return Self::spine(g, prefix, stage);
        }
        let cycle = g.parse_path(cyc).map_err(|e| Error::InvalidLasso(e.to_string()))?;
        if cycle.is_vertex() {
            return Err(Error::InvalidLasso("cycle must contain at least one edge".into()));
        }
        let prefix = if pre.trim().is_empty() { Path::vertex(cycle.range()) } else { g.parse_path(pre)? };
        Self::lasso(g, prefix, cycle)
    }

    pub fn prefix(&self) -> &Path {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_spine(&self) -> bool {
        matches!(self.tail, Tail::Spine(_))
    }

    /// `r(x)`.
    pub fn range(&self) -> VertexId {
        self.prefix.range()
    }

    /// `x_i`, 1-indexed.
    pub fn edge_at(&self, g: &Graph, i: usize) -> Result<EdgeId> {
        assert!(i >= 1);
        let u = self.prefix.len();
        if i <= u {
            return Ok(self.prefix.edges()[i - 1]);
        }
        match &self.tail {
            Tail::Cycle(c) => Ok(c.edges()[(i - u - 1) % c.len()]),
            Tail::Spine(j) => spine_edge(g, j + (i - u)),
        }
    }

    /// `s(x_{≤n})`; `r(x)` for `n = 0`.
    pub fn vertex_after(&self, g: &Graph, n: usize) -> Result<VertexId> {
        if n == 0 {
            return Ok(self.range());
        }
        let u = self.prefix.len();
        match &self.tail {
            Tail::Spine(j) if n > u => spine_vertex(g, j + (n - u)),
            _ => Ok(g.source(self.edge_at(g, n)?)),
        }
    }

    /// Ladder position of `s(x_{≤n})`, without materializing the spine.
    pub fn ladder_position(&self, g: &Graph, n: usize) -> Option<LadderVertex> {
        let u = self.prefix.len();
        match &self.tail {
            Tail::Spine(j) if n >= u => Some(LadderVertex::Spine(j + (n - u))),
            _ => LadderGraph::classify(g, self.vertex_after(g, n).ok()?),
        }
    }

    /// `x_{≤n}`.
    pub fn initial_segment(&self, g: &Graph, n: usize) -> Result<Path> {
        if n == 0 {
            return Ok(Path::vertex(self.range()));
        }
        let edges = (1..=n).map(|i| self.edge_at(g, i)).collect::<Result<Vec<_>>>()?;
        Path::from_edges(g, edges)
    }

    /// The shift `σ^n x`.
    pub fn shift(&self, g: &Graph, n: usize) -> Result<Self> {
        let u = self.prefix.len();
        if n <= u {
            let prefix = self.prefix.suffix(g, n);
            return Ok(BoundaryPath { prefix, tail: self.tail.clone() });
        }
        match &self.tail {
            Tail::Cycle(c) => {
                let rotated = rotate_left(g, c, n - u);
                Ok(BoundaryPath { prefix: Path::vertex(rotated.range()), tail: Tail::Cycle(rotated) })
            }
            Tail::Spine(j) => {
                let stage = j + (n - u);
                Ok(BoundaryPath { prefix: Path::vertex(spine_vertex(g, stage)?), tail: Tail::Spine(stage) })
            }
        }
    }

    /// `β · x`, defined when `s(β) = r(x)`.
    pub fn prepend(&self, g: &Graph, beta: &Path) -> Result<Self> {
        let prefix = beta.concat(&self.prefix).ok_or_else(|| {
            Error::NotComposable(format!("s({}) != r(x)", g.path_to_string(beta)))
        })?;
        match &self.tail {
            Tail::Cycle(c) => Self::lasso(g, prefix, c.clone()),
            Tail::Spine(j) => Self::spine(g, prefix, *j),
        }
    }

    /// Whether `x = α z` for some `z`.
    pub fn has_prefix(&self, g: &Graph, alpha: &Path) -> Result<bool> {
        if alpha.range() != self.range() {
            return Ok(false);
        }
        for (i, &e) in alpha.edges().iter().enumerate() {
            if self.edge_at(g, i + 1)? != e {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> BoundaryDisplay<'a> {
        BoundaryDisplay { path: self, graph: g }
    }

    pub fn to_string(&self, g: &Graph) -> String {
        self.display(g).to_string()
    }
}

pub struct BoundaryDisplay<'a> {
    path: &'a BoundaryPath,
    graph: &'a Graph,
}

impl fmt::Display for BoundaryDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        let pre = g.path_to_string(&self.path.prefix);
        match &self.path.tail {
            Tail::Cycle(c) => write!(f, "{pre};{}", g.path_to_string(c)),
            Tail::Spine(0) if self.path.prefix.is_vertex() => f.write_str("spine"),
            Tail::Spine(_) => write!(f, "{pre};spine"),
        }
    }
}

/// Whether the graph carries any infinite path (some cycle in the step
/// digraph).
pub fn has_infinite_path(g: &Graph) -> bool {
    crate::graph::step_digraph_scc(g).iter().any(|comp| {
        comp.len() > 1 || g.receiving(comp[0]).iter().any(|&e| g.source(e) == comp[0])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn primitive_root_and_absorption() {
        let g = fixtures::loop_graph();
        let x = BoundaryPath::parse(&g, "v;e e").unwrap();
        assert_eq!(x.to_string(&g), "v;e");
        let y = BoundaryPath::parse(&g, "e;e").unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn invalid_lasso() {
        let g = fixtures::chain();
        assert!(matches!(BoundaryPath::parse(&g, "v;e"), Err(Error::InvalidLasso(_))));
        let g = fixtures::c2();
        // prefix ends at b, cycle starts at a
        assert!(matches!(BoundaryPath::parse(&g, "e1;e1 e2"), Err(Error::InvalidLasso(_))));
    }

    #[test]
    fn truncation_oracle_for_equality() {
        // equal canonical forms iff equal long truncations
        let g = fixtures::c2();
        let reps = ["a;e1 e2", "e1;e2 e1", "e1 e2;e1 e2", "b;e2 e1", "e2;e1 e2", "e2 e1;e2 e1 e2 e1"];
        let parsed: Vec<BoundaryPath> = reps.iter().map(|r| BoundaryPath::parse(&g, r).unwrap()).collect();
        for a in &parsed {
            for b in &parsed {
                let ta = a.initial_segment(&g, 20).unwrap();
                let tb = b.initial_segment(&g, 20).unwrap();
                assert_eq!(a == b, ta == tb);
            }
        }
    }

    #[test]
    fn shift_and_prepend() {
        let g = fixtures::c2();
        let x = BoundaryPath::parse(&g, "a;e1 e2").unwrap();
        let s1 = x.shift(&g, 1).unwrap();
        assert_eq!(s1.to_string(&g), "b;e2 e1");
        let e1 = g.parse_path("e1").unwrap();
        assert_eq!(s1.prepend(&g, &e1).unwrap(), x);
        assert_eq!(x.vertex_after(&g, 1).unwrap(), g.vertex_id("b").unwrap());
    }

    #[test]
    fn spine_paths() {
        let preset = fixtures::ladder(2, 0);
        let g = preset.instantiate(8);
        let x = BoundaryPath::parse(&g, "spine").unwrap();
        assert_eq!(x.vertex_after(&g, 3).unwrap(), g.vertex_id("v3").unwrap());
        assert_eq!(x.initial_segment(&g, 2).unwrap(), g.parse_path("s1 s2").unwrap());
        let shifted = x.shift(&g, 2).unwrap();
        assert_eq!(shifted.to_string(&g), "v2;spine");
        let back = shifted.prepend(&g, &g.parse_path("s1 s2").unwrap()).unwrap();
        assert_eq!(back, x);
        assert!(matches!(x.vertex_after(&g, 20), Err(Error::DepthExceeded { .. })));
    }

    #[test]
    fn infinite_paths_exist() {
        assert!(has_infinite_path(&fixtures::loop_graph()));
        assert!(has_infinite_path(&fixtures::c2()));
        assert!(!has_infinite_path(&fixtures::chain()));
    }
}
