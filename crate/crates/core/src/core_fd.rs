//! Finite-dimensional pieces of the degree-zero core: matrix-unit systems
//! `G_{k,J}(v)`, the subalgebras `F_{k,J}`, and embeddings of core elements.
//!
//! All linear algebra is exact: vectors are normal-form coordinates over the
//! rationals and spans are kept in reduced echelon form.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::{self, Coeff};
use crate::error::{Error, Result};
use crate::graph::{cutoff_vertices, enumerate_paths, Graph, Path, VertexId};
use crate::lpa::{parse_element, Element, Monomial, RawSum};

type Vector = BTreeMap<Monomial, Coeff>;

#[derive(Debug, Clone)]
struct Row {
    pivot: Monomial,
    vector: Vector,
    /// The row as a combination of `Span::basis`.
    combo: BTreeMap<usize, Coeff>,
}

/// A subspace of the algebra, with the independent elements that were
/// inserted kept as its basis.
#[derive(Debug, Clone)]
pub struct Span {
    graph: Arc<Graph>,
    basis: Vec<Element>,
    rows: Vec<Row>,
}

fn axpy<K: Ord + Clone>(target: &mut BTreeMap<K, Coeff>, factor: &Coeff, source: &BTreeMap<K, Coeff>) {
    for (k, c) in source {
        let entry = target.entry(k.clone()).or_insert_with(Coeff::zero);
        *entry += factor * c;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

impl Span {
    pub fn new(graph: Arc<Graph>) -> Self {
        Span { graph, basis: Vec::new(), rows: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    /// Residual of `x` after elimination, plus the combination of basis
    /// elements that was subtracted.
    fn reduce(&self, x: &Element) -> (Vector, BTreeMap<usize, Coeff>) {
        let mut v: Vector = x.terms().clone();
        let mut used = BTreeMap::new();
        for row in &self.rows {
            if let Some(c) = v.get(&row.pivot).cloned() {
                axpy(&mut v, &-c.clone(), &row.vector);
                axpy(&mut used, &c, &row.combo);
            }
        }
        (v, used)
    }

    /// Adds `x`; returns whether the dimension grew.
    pub fn insert(&mut self, x: &Element) -> bool {
        let (residual, used) = self.reduce(x);
        let Some((pivot, lead)) = residual.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        let inv = Coeff::one() / lead;
        let index = self.basis.len();
        self.basis.push(x.clone());
        let mut combo: BTreeMap<usize, Coeff> = BTreeMap::new();
        combo.insert(index, Coeff::one());
        axpy(&mut combo, &-Coeff::one(), &used);
        let vector: Vector = residual.into_iter().map(|(m, c)| (m, c * &inv)).collect();
        let combo: BTreeMap<usize, Coeff> = combo.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        for row in &mut self.rows {
            if let Some(c) = row.vector.get(&pivot).cloned() {
                axpy(&mut row.vector, &-c.clone(), &vector);
                axpy(&mut row.combo, &-c, &combo);
            }
        }
        self.rows.push(Row { pivot, vector, combo });
        true
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.reduce(x).0.is_empty()
    }

    /// Coordinates of `x` in `basis()`, if it lies in the span.
    pub fn coordinates(&self, x: &Element) -> Option<Vec<Coeff>> {
        let (residual, used) = self.reduce(x);
        if !residual.is_empty() {
            return None;
        }
        let mut out = vec![Coeff::zero(); self.basis.len()];
        for (i, c) in used {
            out[i] = c;
        }
        Some(out)
    }

    pub fn combine(&self, coords: &[Coeff]) -> Element {
        combine(&self.graph, &self.basis, coords)
    }
}

fn combine(g: &Arc<Graph>, basis: &[Element], coords: &[Coeff]) -> Element {
    let mut sum = Element::zero(g.clone());
    for (b, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            sum = sum.add(&b.scale(c)).expect("same graph");
        }
    }
    sum
}

fn unit(g: &Arc<Graph>, alpha: &Path, beta: &Path) -> Element {
    Element::monomial(g.clone(), Monomial { alpha: alpha.clone(), beta: beta.clone() }, Coeff::one())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub products_checked: usize,
    pub idempotents_nonzero: bool,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.idempotents_nonzero && self.failures.is_empty()
    }
}

/// `m_{αβ} = αβ*` for `α, β ∈ E^k_J v`.
#[derive(Debug, Clone)]
pub struct MatrixUnitSystem {
    pub length: usize,
    pub cutoff: usize,
    pub vertex: VertexId,
    pub index: Vec<Path>,
    pub units: Vec<Vec<Element>>,
    pub report: RelationReport,
}

impl MatrixUnitSystem {
    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn span(&self, g: &Arc<Graph>) -> Span {
        let mut span = Span::new(g.clone());
        for row in &self.units {
            for u in row {
                span.insert(u);
            }
        }
        span
    }
}

fn check_relations(g: &Arc<Graph>, units: &[Vec<Element>]) -> RelationReport {
    let d = units.len();
    let zero = Element::zero(g.clone());
    let mut failures = Vec::new();
    let mut checked = 0;
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    checked += 1;
                    let product = units[a][b].mul(&units[c][e]).expect("same graph");
                    let expected = if b == c { &units[a][e] } else { &zero };
                    if &product != expected {
                        failures.push(format!("m[{a},{b}]*m[{c},{e}] = {product}, expected {expected}"));
                    }
                }
            }
        }
    }
    let idempotents_nonzero = (0..d).all(|i| !units[i][i].is_zero());
    RelationReport { products_checked: checked, idempotents_nonzero, failures }
}

pub fn matrix_units(g: &Arc<Graph>, length: usize, cutoff: usize, vertex: VertexId) -> Result<MatrixUnitSystem> {
    g.require_algebraic()?;
    if length == 0 && !cutoff_vertices(g, cutoff).contains(&vertex) {
        return Err(Error::VertexNotInCutoff(g.vertex_name(vertex).to_string()));
    }
    let index = enumerate_paths(g, length, cutoff, Some(vertex))?;
    let units: Vec<Vec<Element>> =
        index.iter().map(|a| index.iter().map(|b| unit(g, a, b)).collect()).collect();
    let report = check_relations(g, &units);
    Ok(MatrixUnitSystem { length, cutoff, vertex, index, units, report })
}

/// True when every product `G_{k,J}(v) · G_{k,J}(w)` vanishes.
pub fn cross_products_vanish(g: &Arc<Graph>, length: usize, cutoff: usize, v: VertexId, w: VertexId) -> Result<bool> {
    let left = enumerate_paths(g, length, cutoff, Some(v))?;
    let right = enumerate_paths(g, length, cutoff, Some(w))?;
    for a in &left {
        for b in &left {
            for c in &right {
                for d in &right {
                    if !unit(g, a, b).mul(&unit(g, c, d))?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Normal forms of `{αβ* : α, β ∈ E^l_J v, l ≤ k, v ∈ E^0_J}`.
pub fn spanning_set(g: &Arc<Graph>, length: usize, cutoff: usize) -> Result<Vec<Element>> {
    g.require_algebraic()?;
    let mut out = Vec::new();
    for v in cutoff_vertices(g, cutoff) {
        for l in 0..=length {
            let paths = enumerate_paths(g, l, cutoff, Some(v))?;
            for a in &paths {
                for b in &paths {
                    out.push(unit(g, a, b));
                }
            }
        }
    }
    Ok(out)
}

pub fn fd_span(g: &Arc<Graph>, length: usize, cutoff: usize) -> Result<Span> {
    let mut span = Span::new(g.clone());
    for x in spanning_set(g, length, cutoff)? {
        span.insert(&x);
    }
    Ok(span)
}

/// Exact dimension of `F_{k,J}`.
pub fn fd_dimension(g: &Arc<Graph>, length: usize, cutoff: usize) -> Result<usize> {
    Ok(fd_span(g, length, cutoff)?.dimension())
}

/// A finite-dimensional *-subalgebra of the core containing a given element.
#[derive(Debug, Clone)]
pub struct FdEmbedding {
    pub element: Element,
    pub length: usize,
    pub cutoff: usize,
    /// Vertices with a bare `[v|v]` term that lie outside `E^0_J`.
    pub extra_vertices: Vec<VertexId>,
    pub dimension: usize,
    pub basis: Vec<Element>,
    pub coordinates: Vec<Coeff>,
}

fn embedding_span(g: &Arc<Graph>, length: usize, cutoff: usize, extra: &[VertexId]) -> Result<Span> {
    let mut span = fd_span(g, length, cutoff)?;
    for &w in extra {
        span.insert(&Element::vertex(g.clone(), w));
    }
    Ok(span)
}

/// Parameters read off the support as written: `k` is the longest leg, `J`
/// the least cutoff containing every edge used, `W` the bare vertex terms
/// outside `E^0_J`.
pub fn embed_in_fd(raw: &RawSum) -> Result<FdEmbedding> {
    let g = &raw.graph;
    g.require_algebraic()?;
    let mut length = 0;
    let mut cutoff = 0;
    let mut bare = Vec::new();
    for (m, c) in &raw.terms {
        if c.is_zero() {
            continue;
        }
        if m.degree() != 0 {
            return Err(Error::NotDegreeZero);
        }
        length = length.max(m.alpha.len());
        for e in m.alpha.edges().iter().chain(m.beta.edges()) {
            cutoff = cutoff.max(e.0 + 1);
        }
        if m.alpha.is_vertex() {
            bare.push(m.alpha.range());
        }
    }
    let inside = cutoff_vertices(g, cutoff);
    let mut extra: Vec<VertexId> = bare.into_iter().filter(|v| !inside.contains(v)).collect();
    extra.sort();
    extra.dedup();
    let span = embedding_span(g, length, cutoff, &extra)?;
    let element = raw.normalize();
    let coordinates = span
        .coordinates(&element)
        .ok_or_else(|| Error::Certificate("element escapes its claimed subalgebra".into()))?;
    Ok(FdEmbedding {
        element,
        length,
        cutoff,
        extra_vertices: extra,
        dimension: span.dimension(),
        basis: span.basis().to_vec(),
        coordinates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub products_checked: usize,
    pub stars_checked: usize,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: ClosureReport) {
        self.products_checked += other.products_checked;
        self.stars_checked += other.stars_checked;
        self.failures.extend(other.failures);
    }
}

/// Products and stars of basis elements stay in the span. Exhaustive when
/// `dim² ≤ samples`, otherwise `samples` seeded random pairs.
pub fn span_closure(span: &Span, samples: usize, seed: u64) -> ClosureReport {
    let basis = span.basis();
    let mut report = ClosureReport { products_checked: 0, stars_checked: 0, failures: Vec::new() };
    for b in basis {
        report.stars_checked += 1;
        if !span.contains(&b.star()) {
            report.failures.push(format!("star of {b} leaves the span"));
        }
    }
    let d = basis.len();
    let pairs: Vec<(usize, usize)> = if d * d <= samples {
        (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idx: Vec<usize> = (0..d).collect();
        (0..samples).map(|_| (*idx.choose(&mut rng).unwrap(), *idx.choose(&mut rng).unwrap())).collect()
    };
    for (i, j) in pairs {
        report.products_checked += 1;
        let p = basis[i].mul(&basis[j]).expect("same graph");
        if !span.contains(&p) {
            report.failures.push(format!("({})*({}) leaves the span", basis[i], basis[j]));
        }
    }
    report
}

/// Sampled checks of the component structure of `F_{k,J}`: products of
/// `G_{k',J}(v)` with `G_{l',J}(w)` for `l' < k'` land in `G_{k',J}(v)`,
/// equal-length components at distinct vertices annihilate each other, and
/// `F_{k,J}` is closed under star.
pub fn verify_closure(g: &Arc<Graph>, length: usize, cutoff: usize, samples: usize, seed: u64) -> Result<ClosureReport> {
    g.require_algebraic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = cutoff_vertices(g, cutoff);
    let mut report = ClosureReport { products_checked: 0, stars_checked: 0, failures: Vec::new() };
    let mut units: BTreeMap<(usize, VertexId), Vec<Element>> = BTreeMap::new();
    let mut spans: BTreeMap<(usize, VertexId), Span> = BTreeMap::new();
    for l in 0..=length {
        for &v in &vertices {
            let sys = matrix_units(g, l, cutoff, v)?;
            spans.insert((l, v), sys.span(g));
            units.insert((l, v), sys.units.into_iter().flatten().collect());
        }
    }
    let keys: Vec<(usize, VertexId)> = units.keys().copied().filter(|k| !units[k].is_empty()).collect();
    let mut attempts = 0;
    while report.products_checked < samples && attempts < samples * 20 && !keys.is_empty() {
        attempts += 1;
        let &(k1, v) = keys.choose(&mut rng).unwrap();
        let &(k2, w) = keys.choose(&mut rng).unwrap();
        let x = units[&(k1, v)].choose(&mut rng).unwrap();
        let y = units[&(k2, w)].choose(&mut rng).unwrap();
        if k1 == k2 && v != w {
            report.products_checked += 1;
            let p = x.mul(y)?;
            if !p.is_zero() {
                report.failures.push(format!("({x})*({y}) = {p}, expected 0"));
            }
        } else if k1 != k2 {
            // the longer component absorbs the shorter from either side
            let (big, target) = if k1 > k2 { ((k1, v), x.mul(y)?) } else { ((k2, w), x.mul(y)?) };
            report.products_checked += 1;
            if !spans[&big].contains(&target) {
                report.failures.push(format!("({x})*({y}) = {target} leaves its component"));
            }
        }
    }
    let span = fd_span(g, length, cutoff)?;
    let star_only = span_closure(&span, 0, seed);
    report.merge(ClosureReport { products_checked: 0, ..star_only });
    Ok(report)
}

/// Wire form of an embedding, with everything in the element grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDoc {
    pub element: String,
    pub k: usize,
    #[serde(rename = "J")]
    pub cutoff: usize,
    #[serde(rename = "W")]
    pub extra_vertices: Vec<String>,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub coordinates: Vec<String>,
    pub repairs: Vec<String>,
}

impl FdEmbedding {
    pub fn to_doc(&self) -> EmbeddingDoc {
        let g = self.element.graph();
        let mut repairs = vec!["J covers every edge in the support".to_string()];
        if !self.extra_vertices.is_empty() {
            repairs.push("vertex terms outside E^0_J adjoined (W-extension)".to_string());
        }
        EmbeddingDoc {
            element: self.element.to_expr(),
            k: self.length,
            cutoff: self.cutoff,
            extra_vertices: self.extra_vertices.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
            dimension: self.dimension,
            basis: self.basis.iter().map(Element::to_expr).collect(),
            coordinates: self.coordinates.iter().map(coeff::format).collect(),
            repairs,
        }
    }
}

/// Re-checks a serialized embedding against a freshly computed span: the
/// basis is independent, lies in `F_{k,J} + span{p_w : w ∈ W}` and has the
/// recomputed dimension, the coordinates reproduce the element, and sampled
/// products and stars stay inside.
pub fn verify_embedding_doc(g: &Arc<Graph>, doc: &EmbeddingDoc, samples: usize, seed: u64) -> Result<()> {
    let fail = |m: &str| Err(Error::Certificate(m.to_string()));
    let parse = |s: &str| parse_element(s, g).map(|r| r.normalize());
    let element = parse(&doc.element)?;
    if element.terms().keys().any(|m| m.degree() != 0) {
        return fail("element is not of degree zero");
    }
    let extra = doc
        .extra_vertices
        .iter()
        .map(|n| g.vertex_id(n).ok_or_else(|| Error::UnknownId(n.clone())))
        .collect::<Result<Vec<_>>>()?;
    let reference = embedding_span(g, doc.k, doc.cutoff, &extra)?;
    if reference.dimension() != doc.dimension || doc.basis.len() != doc.dimension {
        return fail("dimension does not match the recomputed span");
    }
    let mut claimed = Span::new(g.clone());
    for b in &doc.basis {
        let b = parse(b)?;
        if !reference.contains(&b) {
            return fail("basis element outside the subalgebra");
        }
        if !claimed.insert(&b) {
            return fail("basis is linearly dependent");
        }
    }
    if doc.coordinates.len() != doc.dimension {
        return fail("coordinate count differs from dimension");
    }
    let coords = doc
        .coordinates
        .iter()
        .map(|c| coeff::parse(c).ok_or_else(|| Error::InvalidInput(format!("bad coefficient `{c}`"))))
        .collect::<Result<Vec<_>>>()?;
    if claimed.combine(&coords) != element {
        return fail("coordinates do not reproduce the element");
    }
    let closure = span_closure(&claimed, samples, seed);
    if !closure.ok() {
        return Err(Error::Certificate(closure.failures.join("; ")));
    }
    Ok(())
}
