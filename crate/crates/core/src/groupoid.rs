//! The boundary-path groupoid on finitely presented points: elements
//! `(x, k, y)` with `x = μw`, `y = νw`, `k = |μ| − |ν|`, cylinder bisections
//! `Z(α, β)`, and the factorizations behind strong grading.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::boundary::{BoundaryPath, Tail};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphInput, Path, VertexId};
use crate::ladder::LadderGraph;
use crate::lpa::{mono_mul, Element, Monomial, RawSum};
use crate::property_y::{property_y_witness, YWitness};

/// Depth used for ladder presets when no truncation is requested.
pub const DEFAULT_TRUNCATION: usize = 8;

/// A graph on which boundary points are the infinite paths: a finite
/// row-finite graph without sources, or a ladder truncation whose only
/// source is the artificial top of the spine.
#[derive(Debug, Clone)]
pub struct Groupoid {
    graph: Arc<Graph>,
    ladder: Option<LadderGraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupoidElement {
    pub x: BoundaryPath,
    pub lag: i64,
    pub y: BoundaryPath,
    /// Minimal `μ, ν` with `x = μw`, `y = νw`.
    pub mu: Path,
    pub nu: Path,
}

/// `Z(α, β) = {(αz, |α| − |β|, βz)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CylinderBisection {
    pub alpha: Path,
    pub beta: Path,
}

impl CylinderBisection {
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Result<Self> {
        let m = Monomial::new(g, alpha, beta)?;
        Ok(CylinderBisection { alpha: m.alpha, beta: m.beta })
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial { alpha: self.alpha.clone(), beta: self.beta.clone() }
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        CylinderBisection { alpha: m.alpha.clone(), beta: m.beta.clone() }
    }

    /// `{"alpha":leg,"beta":leg}`.
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({ "alpha": g.path_to_string(&self.alpha), "beta": g.path_to_string(&self.beta) })
    }
}

/// `Z(α,β)·Z(γ,δ)`: `Z(αγ′, δ)` if `γ = βγ′`, `Z(α, δβ′)` if `β = γβ′`,
/// otherwise empty.
pub fn bisection_product(left: &CylinderBisection, right: &CylinderBisection) -> Option<CylinderBisection> {
    if let Some(rest) = right.alpha.strip_prefix(&left.beta) {
        return Some(CylinderBisection { alpha: left.alpha.concat(&rest)?, beta: right.beta.clone() });
    }
    if let Some(rest) = left.beta.strip_prefix(&right.alpha) {
        return Some(CylinderBisection { alpha: left.alpha.clone(), beta: right.beta.concat(&rest)? });
    }
    None
}

/// Both factorizations of a degree-zero element through degrees `±k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementFactorization {
    /// Degrees `(k, −k)`; always exists.
    pub pos_neg: (GroupoidElement, GroupoidElement),
    pub neg_pos: NegPosFactor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NegPosFactor {
    Found(GroupoidElement, GroupoidElement),
    /// No prefix of `x` admits a long enough path. `exact` is set when the
    /// nonexistence is proved in closed form (ladder spines); otherwise the
    /// search covered every prefix up to `bound`.
    Exhausted { bound: usize, exact: bool },
}

impl Groupoid {
    pub fn new(graph: Arc<Graph>) -> Result<Self> {
        if graph.has_omega() {
            return Err(Error::UnsupportedGraph("graph is not row-finite".into()));
        }
        let sources: Vec<&str> = graph.vertices().filter(|&v| graph.is_source(v)).map(|v| graph.vertex_name(v)).collect();
        if !sources.is_empty() {
            return Err(Error::UnsupportedGraph(format!("sources: {}", sources.join(", "))));
        }
        Ok(Groupoid { graph, ladder: None })
    }

    pub fn ladder(preset: &LadderGraph, stages: usize) -> Result<Self> {
        preset.validate()?;
        Ok(Groupoid { graph: Arc::new(preset.instantiate(stages)), ladder: Some(preset.clone()) })
    }

    pub fn from_input(input: &GraphInput, truncate: Option<usize>) -> Result<Self> {
        match input {
            GraphInput::Finite(g) => Self::new(Arc::new(g.clone())),
            GraphInput::Ladder(preset) => Self::ladder(preset, truncate.unwrap_or(DEFAULT_TRUNCATION)),
        }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn preset(&self) -> Option<&LadderGraph> {
        self.ladder.as_ref()
    }

    pub fn parse_point(&self, text: &str) -> Result<BoundaryPath> {
        BoundaryPath::parse(&self.graph, text)
    }

    pub fn unit(&self, x: &BoundaryPath) -> GroupoidElement {
        let v = Path::vertex(x.range());
        GroupoidElement { x: x.clone(), lag: 0, y: x.clone(), mu: v.clone(), nu: v }
    }

    /// Checks `σ^n x = σ^m y` with `n − m = lag` for some `n, m`, and
    /// returns the element with minimal `(μ, ν)`.
    pub fn element(&self, x: &BoundaryPath, lag: i64, y: &BoundaryPath) -> Result<GroupoidElement> {
        let g = &*self.graph;
        let reject = |why: &str| {
            Err(Error::NotComposableTails(format!(
                "({}, {lag}, {}): {why}",
                x.to_string(g),
                y.to_string(g)
            )))
        };
        let (ux, uy) = (x.prefix().len() as i64, y.prefix().len() as i64);
        let start = ux.max(uy + lag).max(lag).max(0) as usize;
        let window = match (x.tail(), y.tail()) {
            (Tail::Cycle(c), Tail::Cycle(_)) => c.len(),
            (Tail::Spine(_), Tail::Spine(_)) => 1,
            _ => return reject("a cycle tail never meets a spine tail"),
        };
        for n in start..start + window {
            let m = (n as i64 - lag) as usize;
            if x.shift(g, n)? == y.shift(g, m)? {
                let (mut n, mut m) = (n, m);
                while n > 0 && m > 0 && x.edge_at(g, n)? == y.edge_at(g, m)? {
                    n -= 1;
                    m -= 1;
                }
                return Ok(GroupoidElement {
                    x: x.clone(),
                    lag,
                    y: y.clone(),
                    mu: x.initial_segment(g, n)?,
                    nu: y.initial_segment(g, m)?,
                });
            }
        }
        reject("tails differ at this lag")
    }

    pub fn is_element(&self, x: &BoundaryPath, lag: i64, y: &BoundaryPath) -> Result<bool> {
        match self.element(x, lag, y) {
            Ok(_) => Ok(true),
            Err(Error::NotComposableTails(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// `(x, k, y)(y, l, z) = (x, k + l, z)`.
    pub fn product(&self, a: &GroupoidElement, b: &GroupoidElement) -> Result<GroupoidElement> {
        if a.y != b.x {
            return Err(Error::NotComposableTails("source of the left factor differs from range of the right".into()));
        }
        self.element(&a.x, a.lag + b.lag, &b.y)
    }

    pub fn inverse(&self, a: &GroupoidElement) -> GroupoidElement {
        GroupoidElement { x: a.y.clone(), lag: -a.lag, y: a.x.clone(), mu: a.nu.clone(), nu: a.mu.clone() }
    }

    /// Whether `a = (αz, |α| − |β|, βz)` for some `z`.
    pub fn in_bisection(&self, a: &GroupoidElement, z: &CylinderBisection) -> Result<bool> {
        let g = &*self.graph;
        if a.lag != z.degree() || !a.x.has_prefix(g, &z.alpha)? || !a.y.has_prefix(g, &z.beta)? {
            return Ok(false);
        }
        Ok(a.x.shift(g, z.alpha.len())? == a.y.shift(g, z.beta.len())?)
    }

    /// The point `(αz, |α| − |β|, βz)` of `Z(α, β)` for a tail `z`.
    pub fn point_in(&self, z: &CylinderBisection, tail: &BoundaryPath) -> Result<GroupoidElement> {
        let g = &*self.graph;
        let x = tail.prepend(g, &z.alpha)?;
        let y = tail.prepend(g, &z.beta)?;
        self.element(&x, z.degree(), &y)
    }

    /// Factors a degree-zero element through degrees `(k, −k)` by the shift
    /// `σ^k x`, and through `(−k, k)` via a prefix `x_{≤n}` admitting a path
    /// `β` of length `n + k`, using `z = β σ^n x`.
    pub fn factor_element(&self, a: &GroupoidElement, k: usize) -> Result<ElementFactorization> {
        if a.lag != 0 {
            return Err(Error::InvalidInput(format!("element has degree {}, expected 0", a.lag)));
        }
        let g = &*self.graph;
        let ki = k as i64;
        let shifted = a.x.shift(g, k)?;
        let pos_neg = (self.element(&a.x, ki, &shifted)?, self.element(&shifted, -ki, &a.y)?);
        let neg_pos = match property_y_witness(g, self.ladder.as_ref(), &a.x, k, false)? {
            YWitness::Found { n, beta } => {
                let z = a.x.shift(g, n)?.prepend(g, &beta)?;
                NegPosFactor::Found(self.element(&a.x, -ki, &z)?, self.element(&z, ki, &a.y)?)
            }
            YWitness::Exhausted { bound, exact } => NegPosFactor::Exhausted { bound, exact },
        };
        Ok(ElementFactorization { pos_neg, neg_pos })
    }

    /// A lasso starting at `v`: follows the first receiving edge until a
    /// vertex repeats. `None` when the walk hits a source.
    pub fn first_point_at(&self, v: VertexId) -> Option<BoundaryPath> {
        self.walk_point(v, |_, edges| edges[0])
    }

    /// Like `first_point_at` with random edge choices.
    pub fn random_point_at<R: Rng>(&self, v: VertexId, rng: &mut R) -> Option<BoundaryPath> {
        let mut pick = |_: usize, edges: &[crate::graph::EdgeId]| edges[rng.gen_range(0..edges.len())];
        self.walk_point(v, &mut pick)
    }

    fn walk_point(
        &self,
        v: VertexId,
        mut pick: impl FnMut(usize, &[crate::graph::EdgeId]) -> crate::graph::EdgeId,
    ) -> Option<BoundaryPath> {
        let g = &*self.graph;
        if let Some(preset) = &self.ladder {
            // every ladder vertex receives exactly one edge; the walk climbs
            // toward the spine
            let _ = preset;
            let mut path = Path::vertex(v);
            loop {
                if let Some(crate::ladder::LadderVertex::Spine(j)) = LadderGraph::classify(g, path.source()) {
                    return BoundaryPath::spine(g, path, j).ok();
                }
                let e = *g.receiving(path.source()).first()?;
                path = path.concat(&Path::edge(g, e))?;
            }
        }
        let mut seen = vec![usize::MAX; g.vertex_count()];
        let mut edges = Vec::new();
        let mut at = v;
        loop {
            if seen[at.0] != usize::MAX {
                let cut = seen[at.0];
                let prefix =
                    if cut == 0 { Path::vertex(v) } else { Path::from_edges(g, edges[..cut].to_vec()).ok()? };
                let cycle = Path::from_edges(g, edges[cut..].to_vec()).ok()?;
                return BoundaryPath::lasso(g, prefix, cycle).ok();
            }
            seen[at.0] = edges.len();
            let incoming = g.receiving(at);
            if incoming.is_empty() {
                return None;
            }
            let e = pick(edges.len(), incoming);
            edges.push(e);
            at = g.source(e);
        }
    }

    /// Compares the monomial product with the bisection product, and checks
    /// `1_B 1_D = 1_{BD}` at a point of the product: the point splits as a
    /// product of points of the two factors.
    pub fn steinberg_product_check(&self, m1: &Monomial, m2: &Monomial) -> Result<bool> {
        let z1 = CylinderBisection::from_monomial(m1);
        let z2 = CylinderBisection::from_monomial(m2);
        let algebra = mono_mul(m1, m2);
        let groupoid = bisection_product(&z1, &z2);
        match (algebra, groupoid) {
            (None, None) => Ok(true),
            (Some(m), Some(z)) => {
                if z.to_monomial() != m || z.degree() != z1.degree() + z2.degree() || m.degree() != z.degree() {
                    return Ok(false);
                }
                let Some(tail) = self.first_point_at(z.alpha.source()) else { return Ok(true) };
                let p = self.point_in(&z, &tail)?;
                let g = &*self.graph;
                // p = p1 p2 with p2 = (α₂w, ·, β₂w) ending at y(p)
                if !p.y.has_prefix(g, &z2.beta)? {
                    return Ok(false);
                }
                let w = p.y.shift(g, z2.beta.len())?;
                let p2 = self.point_in(&z2, &w)?;
                let p1 = self.element(&p.x, z1.degree(), &p2.x)?;
                Ok(self.in_bisection(&p1, &z1)? && self.in_bisection(&p2, &z2)? && self.product(&p1, &p2)? == p)
            }
            _ => Ok(false),
        }
    }

    /// Value at `a` of the function attached to an algebra element, read off
    /// any of its representations as a sum of cylinder indicators.
    pub fn evaluate(&self, element: &Element, a: &GroupoidElement) -> Result<Coeff> {
        let mut value = Coeff::zero();
        for (m, c) in element.terms() {
            if self.in_bisection(a, &CylinderBisection::from_monomial(m))? {
                value += c;
            }
        }
        Ok(value)
    }

    /// For `f = Σ c_i 1_{Z_i}` and `h = Σ d_j 1_{Z′_j}`: at sampled points
    /// of the support of `f * h` (computed through the algebra), the value
    /// agrees with `Σ c_i d_j 1_{Z_i Z′_j}` and every point with nonzero
    /// value lies in some `Z_i Z′_j`.
    pub fn support_containment_check<R: Rng>(
        &self,
        f: &[(Coeff, CylinderBisection)],
        h: &[(Coeff, CylinderBisection)],
        tails_per_term: usize,
        rng: &mut R,
    ) -> Result<bool> {
        let g = &self.graph;
        let to_element = |sum: &[(Coeff, CylinderBisection)]| {
            let mut raw = RawSum::new(g.clone());
            for (c, z) in sum {
                raw.push(z.to_monomial(), c.clone());
            }
            raw.normalize()
        };
        let conv = to_element(f).mul(&to_element(h))?;
        let products: Vec<(Coeff, CylinderBisection)> = f
            .iter()
            .flat_map(|(c, z)| h.iter().filter_map(move |(d, w)| bisection_product(z, w).map(|p| (c * d, p))))
            .collect();
        let mut candidates: Vec<CylinderBisection> = conv.terms().keys().map(CylinderBisection::from_monomial).collect();
        candidates.extend(products.iter().map(|(_, z)| z.clone()));
        for z in candidates {
            for attempt in 0..tails_per_term {
                let tail = if attempt == 0 {
                    self.first_point_at(z.alpha.source())
                } else {
                    self.random_point_at(z.alpha.source(), rng)
                };
                let Some(tail) = tail else { continue };
                let p = self.point_in(&z, &tail)?;
                let value = self.evaluate(&conv, &p)?;
                let mut direct = Coeff::zero();
                let mut covered = false;
                for (c, prod) in &products {
                    if self.in_bisection(&p, prod)? {
                        direct += c;
                        covered = true;
                    }
                }
                if value != direct || (!value.is_zero() && !covered) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl GroupoidElement {
    pub fn display<'a>(&'a self, g: &'a Graph) -> ElementDisplay<'a> {
        ElementDisplay { element: self, graph: g }
    }
}

pub struct ElementDisplay<'a> {
    element: &'a GroupoidElement,
    graph: &'a Graph,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.element;
        write!(f, "({}, {}, {})", a.x.display(self.graph), a.lag, a.y.display(self.graph))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn path(g: &Graph, s: &str) -> Path {
        g.parse_path(s).unwrap()
    }

    fn z(g: &Graph, a: &str, b: &str) -> CylinderBisection {
        CylinderBisection::new(g, path(g, a), path(g, b)).unwrap()
    }

    #[test]
    fn validation() {
        let gr = Groupoid::new(Arc::new(fixtures::loop_graph())).unwrap();
        let x = gr.parse_point("v;e").unwrap();
        assert!(gr.is_element(&x, 0, &x).unwrap());
        let a = gr.element(&x, 1, &x).unwrap();
        assert_eq!(gr.graph().path_to_string(&a.mu), "e");
        assert!(a.nu.is_vertex());

        let gr = Groupoid::new(Arc::new(fixtures::c2())).unwrap();
        let x = gr.parse_point("a;e1 e2").unwrap();
        assert!(matches!(gr.element(&x, 1, &x), Err(Error::NotComposableTails(_))));
        assert!(gr.is_element(&x, 2, &x).unwrap());
        let y = gr.parse_point("b;e2 e1").unwrap();
        assert!(gr.is_element(&x, 1, &y).unwrap());
    }

    #[test]
    fn sources_rejected() {
        assert!(matches!(Groupoid::new(Arc::new(fixtures::chain())), Err(Error::UnsupportedGraph(_))));
    }

    #[test]
    fn groupoid_laws() {
        let gr = Groupoid::new(Arc::new(fixtures::l2())).unwrap();
        let x = gr.parse_point("e;f").unwrap();
        let y = gr.parse_point("v;f").unwrap();
        let w = gr.parse_point("f e;f").unwrap();
        let a = gr.element(&x, 1, &y).unwrap();
        let b = gr.element(&y, -2, &w).unwrap();
        let ab = gr.product(&a, &b).unwrap();
        assert_eq!(ab.lag, -1);
        assert_eq!(gr.product(&a, &gr.inverse(&a)).unwrap(), gr.unit(&x));
        assert_eq!(gr.product(&gr.unit(&x), &a).unwrap(), a);
    }

    #[test]
    fn bisections() {
        let g = fixtures::loop_graph();
        let p = bisection_product(&z(&g, "e", "v"), &z(&g, "v", "e")).unwrap();
        assert_eq!(p, z(&g, "e", "e"));
        assert_eq!(p.degree(), 0);
        let g = fixtures::l2();
        assert_eq!(bisection_product(&z(&g, "v", "e"), &z(&g, "f", "v")), None);
        let p = bisection_product(&z(&g, "e", "v"), &z(&g, "f", "v")).unwrap();
        assert_eq!(p, z(&g, "e f", "v"));
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn membership() {
        let g = fixtures::loop_graph();
        let gr = Groupoid::new(Arc::new(g.clone())).unwrap();
        let x = gr.parse_point("v;e").unwrap();
        assert!(gr.in_bisection(&gr.unit(&x), &z(&g, "v", "v")).unwrap());
        let a = gr.element(&x, 1, &x).unwrap();
        assert!(gr.in_bisection(&a, &z(&g, "e", "v")).unwrap());
        assert!(!gr.in_bisection(&a, &z(&g, "v", "e")).unwrap());
    }

    #[test]
    fn factorizations() {
        let gr = Groupoid::new(Arc::new(fixtures::loop_graph())).unwrap();
        let x = gr.parse_point("v;e").unwrap();
        let f = gr.factor_element(&gr.unit(&x), 1).unwrap();
        assert_eq!(gr.product(&f.pos_neg.0, &f.pos_neg.1).unwrap(), gr.unit(&x));
        match f.neg_pos {
            NegPosFactor::Found(h1, h2) => {
                assert_eq!((h1.lag, h2.lag), (-1, 1));
                assert_eq!(gr.product(&h1, &h2).unwrap(), gr.unit(&x));
            }
            other => panic!("{other:?}"),
        }

        let gr = Groupoid::ladder(&fixtures::ladder(1, 0), 6).unwrap();
        let x = gr.parse_point("spine").unwrap();
        let f = gr.factor_element(&gr.unit(&x), 1).unwrap();
        assert!(matches!(f.neg_pos, NegPosFactor::Exhausted { exact: true, .. }));

        let gr = Groupoid::ladder(&fixtures::ladder(2, 0), 8).unwrap();
        let x = gr.parse_point("spine").unwrap();
        let f = gr.factor_element(&gr.unit(&x), 2).unwrap();
        match f.neg_pos {
            NegPosFactor::Found(h1, h2) => {
                let g = gr.graph();
                assert_eq!(h1.y.to_string(g), "c2_4 c2_3 c2_2 c2_1;spine");
                assert_eq!(gr.product(&h1, &h2).unwrap(), gr.unit(&x));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn steinberg_examples() {
        let g = fixtures::loop_graph();
        let gr = Groupoid::new(Arc::new(g.clone())).unwrap();
        let m = |a: &str, b: &str| z(&g, a, b).to_monomial();
        assert!(gr.steinberg_product_check(&m("v", "e"), &m("e", "v")).unwrap());
        let g = fixtures::l2();
        let gr = Groupoid::new(Arc::new(g.clone())).unwrap();
        let m = |a: &str, b: &str| z(&g, a, b).to_monomial();
        assert!(gr.steinberg_product_check(&m("v", "e"), &m("f", "v")).unwrap());
        assert!(gr.steinberg_product_check(&m("e f", "e"), &m("e", "f f")).unwrap());
    }

    #[test]
    fn support_containment_small() {
        let g = fixtures::l2();
        let gr = Groupoid::new(Arc::new(g.clone())).unwrap();
        let one = Coeff::from_integer(1.into());
        let f = vec![(one.clone(), z(&g, "e", "v")), (one.clone(), z(&g, "f", "v"))];
        let h = vec![(one.clone(), z(&g, "v", "e")), (-one, z(&g, "v", "f"))];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        use rand::SeedableRng;
        assert!(gr.support_containment_check(&f, &h, 3, &mut rng).unwrap());
    }
}
