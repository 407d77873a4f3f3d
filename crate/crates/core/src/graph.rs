//! Directed graphs, finite paths and the cutoff enumerations `E^k_J`.
//!
//! Edges carry a range `r(e)` and a source `s(e)`; a path `α_1 … α_n`
//! composes when `s(α_i) = r(α_{i+1})`. A vertex is a *source* when it
//! receives no edges, i.e. `r^{-1}(v)` is empty.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::LadderGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

/// Edge ids double as enumeration ranks: `EdgeId(j)` is `e_{j+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawId {
    Name(String),
    Number(i64),
}

impl RawId {
    fn into_string(self) -> String {
        match self {
            RawId::Name(s) => s,
            RawId::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u32),
    Omega,
}

impl Default for Multiplicity {
    fn default() -> Self {
        Multiplicity::Finite(1)
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => s.serialize_u32(*n),
            Multiplicity::Omega => s.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(0) => Err(serde::de::Error::custom("multiplicity must be at least 1")),
            Raw::N(n) => Ok(Multiplicity::Finite(n)),
            Raw::S(s) if s == "omega" => Ok(Multiplicity::Omega),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad multiplicity `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: RawId,
    pub range: RawId,
    pub source: RawId,
    #[serde(default)]
    pub mult: Multiplicity,
}

/// Unvalidated finite-graph description, exactly as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<RawId>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<Vec<RawId>>,
}

/// Either kind of graph accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphDoc {
    Finite(GraphSpec),
    Ladder(LadderGraph),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphInput {
    Finite(Graph),
    Ladder(LadderGraph),
}

impl GraphInput {
    pub fn from_doc(doc: GraphDoc) -> Result<Self> {
        match doc {
            GraphDoc::Finite(spec) => Ok(GraphInput::Finite(validate_graph(spec)?)),
            GraphDoc::Ladder(l) => {
                l.validate()?;
                Ok(GraphInput::Ladder(l))
            }
        }
    }

    pub fn to_doc(&self) -> GraphDoc {
        match self {
            GraphInput::Finite(g) => GraphDoc::Finite(g.spec().clone()),
            GraphInput::Ladder(l) => GraphDoc::Ladder(l.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub range: VertexId,
    pub source: VertexId,
    pub omega: bool,
}

/// A validated finite graph. Edges are stored in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    into: Vec<Vec<EdgeId>>,
    out: Vec<Vec<EdgeId>>,
    spec: GraphSpec,
}

fn check_id(id: &str) -> Result<()> {
    let bad = id.is_empty()
        || id.chars().any(|c| c.is_whitespace() || matches!(c, '[' | ']' | '|' | ';' | '*'));
    if bad {
        Err(Error::InvalidId(id.to_string()))
    } else {
        Ok(())
    }
}

/// Validates a raw description. Finite multiplicities `m > 1` expand into
/// parallel edges `id#1 … id#m`, placed consecutively in the enumeration.
pub fn validate_graph(spec: GraphSpec) -> Result<Graph> {
    let mut vertex_index = HashMap::new();
    let mut vertices = Vec::with_capacity(spec.vertices.len());
    for raw in &spec.vertices {
        let name = raw.clone().into_string();
        check_id(&name)?;
        if vertex_index.insert(name.clone(), VertexId(vertices.len())).is_some() {
            return Err(Error::DuplicateId(name));
        }
        vertices.push(name);
    }

    let mut declared: Vec<(String, &EdgeSpec)> = Vec::with_capacity(spec.edges.len());
    let mut seen = HashMap::new();
    for e in &spec.edges {
        let name = e.id.clone().into_string();
        check_id(&name)?;
        if vertex_index.contains_key(&name) || seen.insert(name.clone(), declared.len()).is_some() {
            return Err(Error::DuplicateId(name));
        }
        declared.push((name, e));
    }

    let order: Vec<usize> = match &spec.enumeration {
        None => (0..declared.len()).collect(),
        Some(list) => {
            let mut order = Vec::with_capacity(list.len());
            let mut used = vec![false; declared.len()];
            for raw in list {
                let name = raw.clone().into_string();
                let &i = seen
                    .get(&name)
                    .ok_or_else(|| Error::BadEnumeration(format!("unknown edge `{name}`")))?;
                if std::mem::replace(&mut used[i], true) {
                    return Err(Error::BadEnumeration(format!("edge `{name}` listed twice")));
                }
                order.push(i);
            }
            if order.len() != declared.len() {
                return Err(Error::BadEnumeration("some edges are not listed".into()));
            }
            order
        }
    };

    let lookup = |edge: &str, v: &RawId| -> Result<VertexId> {
        let v = v.clone().into_string();
        vertex_index
            .get(&v)
            .copied()
            .ok_or(Error::DanglingEndpoint { edge: edge.to_string(), vertex: v })
    };

    let mut edges = Vec::new();
    for i in order {
        let (name, e) = &declared[i];
        let range = lookup(name, &e.range)?;
        let source = lookup(name, &e.source)?;
        match e.mult {
            Multiplicity::Omega => edges.push(Edge { name: name.clone(), range, source, omega: true }),
            Multiplicity::Finite(1) => edges.push(Edge { name: name.clone(), range, source, omega: false }),
            Multiplicity::Finite(m) => {
                for copy in 1..=m {
                    edges.push(Edge { name: format!("{name}#{copy}"), range, source, omega: false });
                }
            }
        }
    }

    let mut edge_index = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        if vertex_index.contains_key(&e.name) || edge_index.insert(e.name.clone(), EdgeId(i)).is_some() {
            return Err(Error::DuplicateId(e.name.clone()));
        }
    }

    let mut into = vec![Vec::new(); vertices.len()];
    let mut out = vec![Vec::new(); vertices.len()];
    for (i, e) in edges.iter().enumerate() {
        into[e.range.0].push(EdgeId(i));
        out[e.source.0].push(EdgeId(i));
    }

    Ok(Graph { vertices, edges, vertex_index, edge_index, into, out, spec })
}

impl Graph {
    /// Builds a graph from `(name, range, source)` triples, input order as
    /// enumeration. Panics on invalid input; intended for fixtures.
    pub fn from_triples(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
        let spec = GraphSpec {
            vertices: vertices.iter().map(|v| RawId::Name(v.to_string())).collect(),
            edges: edges
                .iter()
                .map(|(id, r, s)| EdgeSpec {
                    id: RawId::Name(id.to_string()),
                    range: RawId::Name(r.to_string()),
                    source: RawId::Name(s.to_string()),
                    mult: Multiplicity::Finite(1),
                })
                .collect(),
            enumeration: None,
        };
        validate_graph(spec).expect("fixture graph must validate")
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    /// `r^{-1}(v)`, in enumeration order.
    pub fn receiving(&self, v: VertexId) -> &[EdgeId] {
        &self.into[v.0]
    }

    /// `s^{-1}(v)`, in enumeration order.
    pub fn emitting(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.0]
    }

    pub fn has_omega(&self) -> bool {
        self.edges.iter().any(|e| e.omega)
    }

    pub fn require_algebraic(&self) -> Result<()> {
        if self.has_omega() {
            Err(Error::OmegaEdgesUnsupported)
        } else {
            Ok(())
        }
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.into[v.0].is_empty()
    }

    /// `0 < |r^{-1}(v)| < ∞`.
    pub fn is_regular(&self, v: VertexId) -> bool {
        let into = &self.into[v.0];
        !into.is_empty() && into.iter().all(|&e| !self.edges[e.0].omega)
    }

    /// The special edge of a regular vertex: the earliest member of
    /// `r^{-1}(v)` in the enumeration.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        if self.is_regular(v) {
            self.into[v.0].first().copied()
        } else {
            None
        }
    }

    pub fn edge_names_in_order(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.name.clone()).collect()
    }

    pub fn path_to_string(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.range).to_string()
        } else {
            let names: Vec<&str> = p.edges.iter().map(|&e| self.edge_name(e)).collect();
            names.join(" ")
        }
    }

    /// Parses a leg: a single vertex id, or whitespace-separated edge ids
    /// listed range-to-source.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens.as_slice() {
            [] => Err(Error::InvalidInput("empty path".into())),
            [one] if self.vertex_id(one).is_some() => Ok(Path::vertex(self.vertex_id(one).unwrap())),
            _ => {
                let mut edges = Vec::with_capacity(tokens.len());
                for t in &tokens {
                    match self.edge_id(t) {
                        Some(e) => edges.push(e),
                        None if self.vertex_id(t).is_some() => {
                            return Err(Error::NotComposable(format!(
                                "vertex `{t}` cannot appear inside an edge sequence"
                            )))
                        }
                        None => return Err(Error::UnknownId(t.to_string())),
                    }
                }
                Path::from_edges(self, edges)
            }
        }
    }
}

/// A finite path: a vertex (length 0) or a composable edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<EdgeId>,
    range: VertexId,
    source: VertexId,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { edges: Vec::new(), range: v, source: v }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path { edges: vec![e], range: g.range(e), source: g.source(e) }
    }

    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Path> {
        let first = *edges.first().ok_or_else(|| Error::InvalidInput("empty edge list".into()))?;
        for w in edges.windows(2) {
            if g.source(w[0]) != g.range(w[1]) {
                return Err(Error::NotComposable(format!(
                    "s({}) = {} but r({}) = {}",
                    g.edge_name(w[0]),
                    g.vertex_name(g.source(w[0])),
                    g.edge_name(w[1]),
                    g.vertex_name(g.range(w[1]))
                )));
            }
        }
        let last = *edges.last().unwrap();
        Ok(Path { range: g.range(first), source: g.source(last), edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// Same as [`Path::is_vertex`].
    pub fn is_empty(&self) -> bool {
        self.is_vertex()
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `self · other`, defined when `s(self) = r(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.source != other.range {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path { edges, range: self.range, source: other.source })
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.range != self.range || prefix.len() > self.len() {
            return None;
        }
        if !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path { edges: self.edges[prefix.len()..].to_vec(), range: prefix.source, source: self.source })
    }

    /// Drops the last edge; `None` on a vertex path.
    pub fn drop_last(&self, g: &Graph) -> Option<Path> {
        let last = self.last_edge()?;
        let edges = self.edges[..self.edges.len() - 1].to_vec();
        Some(Path { edges, range: self.range, source: g.range(last) })
    }

    /// The first `n` edges (a vertex path at `r(self)` when `n = 0`).
    pub fn prefix(&self, g: &Graph, n: usize) -> Path {
        if n == 0 {
            return Path::vertex(self.range);
        }
        let edges = self.edges[..n].to_vec();
        let source = g.source(edges[n - 1]);
        Path { edges, range: self.range, source }
    }

    /// The edges after the first `n`.
    pub fn suffix(&self, g: &Graph, n: usize) -> Path {
        if n == 0 {
            return self.clone();
        }
        if n == self.len() {
            return Path::vertex(self.source);
        }
        let edges = self.edges[n..].to_vec();
        Path { range: g.range(edges[0]), source: self.source, edges }
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph: g }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.graph.path_to_string(self.path))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub row_finite: bool,
    pub sources: Vec<String>,
    pub emitters_empty: Vec<String>,
    pub scc: Vec<Vec<String>>,
    pub enumeration: Vec<String>,
}

pub fn structural_report(g: &Graph) -> StructuralReport {
    let names = |vs: Vec<VertexId>| vs.into_iter().map(|v| g.vertex_name(v).to_string()).collect();
    let row_finite = g.vertices().all(|v| g.receiving(v).iter().all(|&e| !g.edge(e).omega));
    let sources = g.vertices().filter(|&v| g.is_source(v)).collect();
    let emitters_empty = g.vertices().filter(|&v| g.emitting(v).is_empty()).collect();
    let scc = step_digraph_scc(g).into_iter().map(names).collect();
    StructuralReport {
        row_finite,
        sources: names(sources),
        emitters_empty: names(emitters_empty),
        scc,
        enumeration: g.edge_names_in_order(),
    }
}

/// Successors in the step digraph `D`: `u → w` iff some edge has
/// `r(e) = u` and `s(e) = w`. Sorted, deduplicated.
pub fn step_successors(g: &Graph, u: VertexId) -> Vec<VertexId> {
    let mut next: Vec<VertexId> = g.receiving(u).iter().map(|&e| g.source(e)).collect();
    next.sort();
    next.dedup();
    next
}

/// Strongly connected components of `D` (Tarjan). Each component is
/// sorted; components are ordered by their least vertex.
pub fn step_digraph_scc(g: &Graph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let succ: Vec<Vec<VertexId>> = g.vertices().map(|v| step_successors(g, v)).collect();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, next successor position)
        let mut work = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos].0;
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(VertexId(w));
                        if w == v {
                            break;
                        }
                    }
                    comp.sort();
                    comps.push(comp);
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// `E^0_J = { s(e_j) : 1 ≤ j ≤ J }`, sorted by vertex id.
pub fn cutoff_vertices(g: &Graph, cutoff: usize) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = (0..cutoff.min(g.edge_count())).map(|j| g.source(EdgeId(j))).collect();
    vs.sort();
    vs.dedup();
    vs
}

/// `E^k_J`, or `E^k_J v` when `source` is given, in lexicographic order of
/// the enumeration. For `k = 0` this is the vertex set `E^0_J`.
pub fn enumerate_paths(g: &Graph, length: usize, cutoff: usize, source: Option<VertexId>) -> Result<Vec<Path>> {
    g.require_algebraic()?;
    let cutoff = cutoff.min(g.edge_count());
    if length == 0 {
        return Ok(cutoff_vertices(g, cutoff)
            .into_iter()
            .filter(|&v| source.is_none_or(|s| s == v))
            .map(Path::vertex)
            .collect());
    }
    let allowed: Vec<EdgeId> = (0..cutoff).map(EdgeId).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(length);
    fn extend(
        g: &Graph,
        allowed: &[EdgeId],
        length: usize,
        source: Option<VertexId>,
        current: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
    ) {
        if current.len() == length {
            let p = Path::from_edges(g, current.clone()).expect("built composable");
            if source.is_none_or(|s| s == p.source()) {
                out.push(p);
            }
            return;
        }
        for &e in allowed {
            if let Some(&prev) = current.last() {
                if g.source(prev) != g.range(e) {
                    continue;
                }
            }
            current.push(e);
            extend(g, allowed, length, source, current, out);
            current.pop();
        }
    }
    extend(g, &allowed, length, source, &mut current, &mut out);
    Ok(out)
}

/// All paths of exactly `length` edges with range `v`, in lexicographic
/// order (no cutoff).
pub fn paths_with_range(g: &Graph, v: VertexId, length: usize) -> Vec<Path> {
    let mut layer = vec![Path::vertex(v)];
    for _ in 0..length {
        let mut next = Vec::new();
        for p in &layer {
            for &e in g.receiving(p.source()) {
                next.push(p.concat(&Path::edge(g, e)).expect("composable by construction"));
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn spec_from_json(json: &str) -> GraphSpec {
        match serde_json::from_str::<GraphDoc>(json).unwrap() {
            GraphDoc::Finite(s) => s,
            _ => panic!("expected finite"),
        }
    }

    #[test]
    fn loop_validates() {
        let g = fixtures::loop_graph();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn dangling_endpoint() {
        let spec = spec_from_json(
            r#"{"kind":"finite","vertices":["v"],"edges":[{"id":"f","range":"z","source":"v","mult":1}]}"#,
        );
        assert!(matches!(validate_graph(spec), Err(Error::DanglingEndpoint { .. })));
    }

    #[test]
    fn duplicate_edge_id() {
        let spec = spec_from_json(
            r#"{"kind":"finite","vertices":["v"],"edges":[{"id":"e","range":"v","source":"v"},{"id":"e","range":"v","source":"v"}]}"#,
        );
        assert_eq!(validate_graph(spec), Err(Error::DuplicateId("e".into())));
    }

    #[test]
    fn empty_graph_is_legal() {
        let g = validate_graph(spec_from_json(r#"{"kind":"finite","vertices":[],"edges":[]}"#)).unwrap();
        assert_eq!(g.vertex_count(), 0);
        let rep = structural_report(&g);
        assert!(rep.row_finite && rep.scc.is_empty());
    }

    #[test]
    fn enumeration_reorders_edges() {
        let spec = spec_from_json(
            r#"{"kind":"finite","vertices":["v"],"edges":[{"id":"e","range":"v","source":"v"},{"id":"f","range":"v","source":"v"}],"enumeration":["f","e"]}"#,
        );
        let g = validate_graph(spec).unwrap();
        assert_eq!(g.edge_names_in_order(), vec!["f", "e"]);
        assert_eq!(g.special_edge(g.vertex_id("v").unwrap()), g.edge_id("f"));
    }

    #[test]
    fn bad_enumeration() {
        let spec = spec_from_json(
            r#"{"kind":"finite","vertices":["v"],"edges":[{"id":"e","range":"v","source":"v"}],"enumeration":["e","e"]}"#,
        );
        assert!(matches!(validate_graph(spec), Err(Error::BadEnumeration(_))));
    }

    #[test]
    fn finite_multiplicity_expands() {
        let spec = spec_from_json(
            r#"{"kind":"finite","vertices":["v"],"edges":[{"id":"e","range":"v","source":"v","mult":2}]}"#,
        );
        let g = validate_graph(spec).unwrap();
        assert_eq!(g.edge_names_in_order(), vec!["e#1", "e#2"]);
    }

    #[test]
    fn structural_examples() {
        let rep = structural_report(&fixtures::loop_graph());
        assert!(rep.row_finite);
        assert!(rep.sources.is_empty());

        let rep = structural_report(&fixtures::chain());
        assert_eq!(rep.sources, vec!["w"]);
        assert_eq!(rep.emitters_empty, vec!["v"]);
        assert_eq!(rep.scc, vec![vec!["v"], vec!["w"]]);

        let spec = spec_from_json(
            r#"{"kind":"finite","vertices":["v","w"],"edges":[{"id":"e","range":"v","source":"w","mult":"omega"}]}"#,
        );
        let g = validate_graph(spec).unwrap();
        assert!(!structural_report(&g).row_finite);
        assert_eq!(enumerate_paths(&g, 1, 1, None), Err(Error::OmegaEdgesUnsupported));
    }

    #[test]
    fn scc_of_two_cycle() {
        let rep = structural_report(&fixtures::c2());
        assert_eq!(rep.scc, vec![vec!["a", "b"]]);
    }

    #[test]
    fn enumeration_examples() {
        let g = fixtures::loop_graph();
        let v = g.vertex_id("v").unwrap();
        let p = enumerate_paths(&g, 2, 1, Some(v)).unwrap();
        assert_eq!(p.iter().map(|p| g.path_to_string(p)).collect::<Vec<_>>(), vec!["e e"]);

        let g = fixtures::l2();
        let v = g.vertex_id("v").unwrap();
        let p = enumerate_paths(&g, 2, 2, Some(v)).unwrap();
        let names: Vec<String> = p.iter().map(|p| g.path_to_string(p)).collect();
        assert_eq!(names, vec!["e e", "e f", "f e", "f f"]);
        let p = enumerate_paths(&g, 1, 1, Some(v)).unwrap();
        assert_eq!(p.iter().map(|p| g.path_to_string(p)).collect::<Vec<_>>(), vec!["e"]);
        assert_eq!(enumerate_paths(&g, 0, 0, None).unwrap(), vec![]);
        assert_eq!(enumerate_paths(&g, 0, 1, None).unwrap(), vec![Path::vertex(v)]);
    }

    #[test]
    fn path_algebra() {
        let g = fixtures::chain();
        let e = g.edge_id("e").unwrap();
        let v = g.vertex_id("v").unwrap();
        let w = g.vertex_id("w").unwrap();
        let pe = Path::edge(&g, e);
        assert_eq!(pe.range(), v);
        assert_eq!(pe.source(), w);
        assert_eq!(Path::vertex(v).concat(&pe), Some(pe.clone()));
        assert_eq!(pe.concat(&Path::vertex(w)), Some(pe.clone()));
        assert_eq!(pe.concat(&pe), None);
        assert_eq!(pe.strip_prefix(&Path::vertex(v)), Some(pe.clone()));
        assert_eq!(pe.strip_prefix(&pe), Some(Path::vertex(w)));
        assert_eq!(g.parse_path("e").unwrap(), pe);
        assert!(matches!(g.parse_path("e e"), Err(Error::NotComposable(_))));
        assert!(matches!(g.parse_path("q"), Err(Error::UnknownId(_))));
    }
}
