//! Exact Leavitt path algebra over the rationals.
//!
//! Elements are finite sums of monomials `[α|β] = αβ*` with `s(α) = s(β)`,
//! kept in normal form: no term ends in `(α'f)(β'f)*` with `f` the special
//! edge of the regular vertex `r(f)`. That shape is rewritten with the
//! collapse direction of the second Cuntz–Krieger relation,
//!
//! ```text
//! (α'f)(β'f)* → α'β'* − Σ_{g ∈ r^{-1}(r(f)), g ≠ f} (α'g)(β'g)*
//! ```
//!
//! which strictly shortens the only term that can still be reducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::coeff::{self, Coeff};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId};

/// `αβ*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: Path,
    pub beta: Path,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.size(), &self.alpha, &self.beta).cmp(&(other.size(), &other.alpha, &other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Result<Self> {
        if alpha.source() != beta.source() {
            return Err(Error::SourceMismatch { alpha: g.path_to_string(&alpha), beta: g.path_to_string(&beta) });
        }
        Ok(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexId) -> Self {
        Monomial { alpha: Path::vertex(v), beta: Path::vertex(v) }
    }

    /// `|α| − |β|`.
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    /// `|α| + |β|`.
    pub fn size(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    pub fn star(&self) -> Self {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    pub fn to_string(&self, g: &Graph) -> String {
        format!("[{}|{}]", g.path_to_string(&self.alpha), g.path_to_string(&self.beta))
    }
}

/// `(αβ*)(γδ*)`: `(αγ')δ*` if `γ = βγ'`, `α(δβ')*` if `β = γβ'`, else zero.
pub fn mono_mul(m1: &Monomial, m2: &Monomial) -> Option<Monomial> {
    if let Some(rest) = m2.alpha.strip_prefix(&m1.beta) {
        let alpha = m1.alpha.concat(&rest)?;
        return Some(Monomial { alpha, beta: m2.beta.clone() });
    }
    if let Some(rest) = m1.beta.strip_prefix(&m2.alpha) {
        let beta = m2.beta.concat(&rest)?;
        return Some(Monomial { alpha: m1.alpha.clone(), beta });
    }
    None
}

/// Whether both legs end in the special edge of a regular vertex.
pub fn is_reducible(g: &Graph, m: &Monomial) -> bool {
    match (m.alpha.last_edge(), m.beta.last_edge()) {
        (Some(a), Some(b)) if a == b => g.special_edge(g.range(a)) == Some(a),
        _ => false,
    }
}

/// One rewrite of a reducible monomial.
pub fn reduce_once(g: &Graph, m: &Monomial) -> Vec<(Monomial, Coeff)> {
    let f = m.alpha.last_edge().expect("reducible monomial");
    let a = m.alpha.drop_last(g).unwrap();
    let b = m.beta.drop_last(g).unwrap();
    let w = g.range(f);
    let mut out = vec![(Monomial { alpha: a.clone(), beta: b.clone() }, Coeff::one())];
    for &other in g.receiving(w) {
        if other == f {
            continue;
        }
        let tail = Path::edge(g, other);
        let alpha = a.concat(&tail).expect("r(g) = w = s(α')");
        let beta = b.concat(&tail).expect("r(g) = w = s(β')");
        out.push((Monomial { alpha, beta }, -Coeff::one()));
    }
    out
}

/// An unreduced linear combination, as written.
#[derive(Debug, Clone)]
pub struct RawSum {
    pub graph: Arc<Graph>,
    pub terms: Vec<(Monomial, Coeff)>,
}

impl RawSum {
    pub fn new(graph: Arc<Graph>) -> Self {
        RawSum { graph, terms: Vec::new() }
    }

    pub fn push(&mut self, m: Monomial, c: Coeff) {
        self.terms.push((m, c));
    }

    pub fn normalize(&self) -> Element {
        normal_form(self)
    }
}

/// A canonical element: irreducible monomials with nonzero coefficients.
#[derive(Debug, Clone)]
pub struct Element {
    graph: Arc<Graph>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl Eq for Element {}

fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn accumulate(map: &mut BTreeMap<Monomial, Coeff>, m: Monomial, c: Coeff) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// How the next reducible term is picked.
pub enum ReductionOrder<'a, R: Rng> {
    /// Longest reducible term first.
    LongestFirst,
    Random(&'a mut R),
}

struct Reducer<'g> {
    graph: &'g Graph,
    terms: BTreeMap<Monomial, Coeff>,
    pending: BTreeSet<Monomial>,
}

impl<'g> Reducer<'g> {
    fn new(graph: &'g Graph) -> Self {
        Reducer { graph, terms: BTreeMap::new(), pending: BTreeSet::new() }
    }

    fn add(&mut self, m: Monomial, c: Coeff) {
        let reducible = is_reducible(self.graph, &m);
        accumulate(&mut self.terms, m.clone(), c);
        if reducible {
            if self.terms.contains_key(&m) {
                self.pending.insert(m);
            } else {
                self.pending.remove(&m);
            }
        }
    }

    fn step(&mut self, m: Monomial) {
        self.pending.remove(&m);
        let Some(c) = self.terms.remove(&m) else { return };
        for (n, d) in reduce_once(self.graph, &m) {
            self.add(n, &c * d);
        }
    }

    /// Sizes of the pending reducible terms, largest first.
    fn measure(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.pending.iter().map(Monomial::size).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    fn run<R: Rng>(&mut self, order: &mut ReductionOrder<'_, R>, mut trace: Option<&mut Vec<Vec<usize>>>) {
        loop {
            if let Some(t) = trace.as_deref_mut() {
                t.push(self.measure());
            }
            let next = match order {
                ReductionOrder::LongestFirst => self.pending.iter().next_back().cloned(),
                ReductionOrder::Random(rng) => {
                    if self.pending.is_empty() {
                        None
                    } else {
                        let i = rng.gen_range(0..self.pending.len());
                        self.pending.iter().nth(i).cloned()
                    }
                }
            };
            match next {
                Some(m) => self.step(m),
                None => break,
            }
        }
    }
}

pub fn normal_form(raw: &RawSum) -> Element {
    normal_form_with::<rand_chacha::ChaCha8Rng>(raw, ReductionOrder::LongestFirst)
}

pub fn normal_form_with<R: Rng>(raw: &RawSum, mut order: ReductionOrder<'_, R>) -> Element {
    let mut red = Reducer::new(&raw.graph);
    for (m, c) in &raw.terms {
        red.add(m.clone(), c.clone());
    }
    red.run(&mut order, None);
    Element { graph: raw.graph.clone(), terms: red.terms }
}

/// Normal form plus the measure (sizes of pending reducible terms, largest
/// first) before every rewrite and at the end.
pub fn normal_form_traced<R: Rng>(raw: &RawSum, mut order: ReductionOrder<'_, R>) -> (Element, Vec<Vec<usize>>) {
    let mut red = Reducer::new(&raw.graph);
    for (m, c) in &raw.terms {
        red.add(m.clone(), c.clone());
    }
    let mut trace = Vec::new();
    red.run(&mut order, Some(&mut trace));
    (Element { graph: raw.graph.clone(), terms: red.terms }, trace)
}

impl Element {
    pub fn zero(graph: Arc<Graph>) -> Self {
        Element { graph, terms: BTreeMap::new() }
    }

    /// `p_v`.
    pub fn vertex(graph: Arc<Graph>, v: VertexId) -> Self {
        Self::monomial(graph, Monomial::vertex(v), Coeff::one())
    }

    pub fn monomial(graph: Arc<Graph>, m: Monomial, c: Coeff) -> Self {
        let mut raw = RawSum::new(graph);
        raw.push(m, c);
        raw.normalize()
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    fn check(&self, other: &Element) -> Result<()> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub fn to_raw(&self) -> RawSum {
        RawSum { graph: self.graph.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        // sums of irreducible terms stay irreducible
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Element { graph: self.graph.clone(), terms })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&-Coeff::one()))
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        if c.is_zero() {
            return Element::zero(self.graph.clone());
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect();
        Element { graph: self.graph.clone(), terms }
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut raw = RawSum::new(self.graph.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = mono_mul(m1, m2) {
                    raw.push(m, c1 * c2);
                }
            }
        }
        Ok(raw.normalize())
    }

    /// Transposes legs; coefficients are real, so no conjugation.
    pub fn star(&self) -> Element {
        let mut raw = RawSum::new(self.graph.clone());
        for (m, c) in &self.terms {
            raw.push(m.star(), c.clone());
        }
        raw.normalize()
    }

    pub fn grade_decompose(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Element::zero(self.graph.clone()))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// `Some(n)` when every term has degree `n`; zero is homogeneous of
    /// every degree and reports `None`.
    pub fn degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, n: i64) -> bool {
        self.terms.keys().all(|m| m.degree() == n)
    }

    pub fn equals(&self, other: &Element) -> Result<bool> {
        self.check(other)?;
        Ok(self.terms == other.terms)
    }

    pub fn to_expr(&self) -> String {
        format_terms(&self.graph, self.terms.iter())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

pub fn format_terms<'a>(g: &Graph, terms: impl Iterator<Item = (&'a Monomial, &'a Coeff)>) -> String {
    let mut out = String::new();
    for (i, (m, c)) in terms.enumerate() {
        let neg = c < &Coeff::zero();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = coeff::format_abs(c);
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&m.to_string(g));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the element grammar
///
/// ```text
/// element  := term (("+" | "-") term)*
/// term     := (rational "*")? mono
/// mono     := "[" leg "|" leg "]"
/// leg      := vertex-id | edge-id (space edge-id)*
/// rational := "-"? digits ("/" digits)?
/// ```
///
/// A leading sign before the first term and the literal `0` are accepted.
pub fn parse_element(text: &str, graph: &Arc<Graph>) -> Result<RawSum> {
    graph.require_algebraic()?;
    let mut raw = RawSum::new(graph.clone());
    if text.trim() == "0" {
        return Ok(raw);
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos] as char).is_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        let mut sign = Coeff::one();
        if first {
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') && !starts_rational(&bytes[pos..]) {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
                skip_ws(&mut pos);
            }
        } else {
            if pos >= bytes.len() {
                break;
            }
            match bytes[pos] {
                b'+' => {}
                b'-' => sign = -sign,
                _ => return Err(Error::syntax(text, pos, "expected `+` or `-`")),
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        first = false;

        let mut c = Coeff::one();
        if pos < bytes.len() && bytes[pos] != b'[' {
            let start = pos;
            if bytes[pos] == b'-' {
                pos += 1;
            }
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                pos += 1;
            }
            c = coeff::parse(&text[start..pos]).ok_or_else(|| Error::syntax(text, start, "expected a rational"))?;
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'*' {
                return Err(Error::syntax(text, pos, "expected `*` after coefficient"));
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        if pos >= bytes.len() || bytes[pos] != b'[' {
            return Err(Error::syntax(text, pos, "expected `[`"));
        }
        let open = pos;
        let close = text[open..]
            .find(']')
            .map(|i| open + i)
            .ok_or_else(|| Error::syntax(text, open, "unclosed `[`"))?;
        let body = &text[open + 1..close];
        let (a, b) = body.split_once('|').ok_or_else(|| Error::syntax(text, open, "expected `|` inside monomial"))?;
        if b.contains('|') {
            return Err(Error::syntax(text, open, "more than one `|` inside monomial"));
        }
        let alpha = graph.parse_path(a)?;
        let beta = graph.parse_path(b)?;
        raw.push(Monomial::new(graph, alpha, beta)?, c * sign);
        pos = close + 1;
    }
    Ok(raw)
}

fn starts_rational(rest: &[u8]) -> bool {
    rest.len() > 1 && rest[0] == b'-' && rest[1].is_ascii_digit()
}
