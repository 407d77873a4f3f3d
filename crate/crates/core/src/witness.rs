//! Constructive strong-grading checks: writing a local unit `p_v`, or any
//! homogeneous element, as `Σ x_i y_i` with `x_i`, `y_i` homogeneous of
//! prescribed degrees.

use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::graph::{paths_with_range, Graph, Path, VertexId};
use crate::ladder::LadderGraph;
use crate::lengths::{length_profiles, path_of_length};
use crate::lpa::{parse_element, Element, Monomial, RawSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Degrees `(+k, −k)`: expand `p_v = Σ_{|α| = k} αα*`.
    PosNeg,
    /// Degrees `(−k, +k)`: `αα* = (αβ*)(βα*)` with `|β| = |α| + k`.
    NegPos,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos-neg" => Ok(Direction::PosNeg),
            "neg-pos" => Ok(Direction::NegPos),
            _ => Err(Error::InvalidInput(format!("direction must be pos-neg or neg-pos, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub target: Element,
    pub split: (i64, i64),
    pub pairs: Vec<(Element, Element)>,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorOutcome {
    Found(FactorizationWitness),
    /// No witness of the searched shape at levels `0..=m`. A bounded claim,
    /// not a proof of nonexistence.
    NotFoundUpTo(usize),
}

impl FactorOutcome {
    pub fn witness(&self) -> Option<&FactorizationWitness> {
        match self {
            FactorOutcome::Found(w) => Some(w),
            FactorOutcome::NotFoundUpTo(_) => None,
        }
    }
}

/// Wire form: `{"target":expr,"split":[a,b],"pairs":[[expr,expr]...],"level":m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub target: String,
    pub split: [i64; 2],
    pub pairs: Vec<[String; 2]>,
    pub level: usize,
}

impl FactorizationWitness {
    pub fn to_doc(&self) -> WitnessDoc {
        WitnessDoc {
            target: self.target.to_expr(),
            split: [self.split.0, self.split.1],
            pairs: self.pairs.iter().map(|(x, y)| [x.to_expr(), y.to_expr()]).collect(),
            level: self.level,
        }
    }

    pub fn from_doc(doc: &WitnessDoc, graph: &Arc<Graph>) -> Result<Self> {
        let parse = |s: &str| parse_element(s, graph).map(|r| r.normalize());
        Ok(FactorizationWitness {
            target: parse(&doc.target)?,
            split: (doc.split[0], doc.split[1]),
            pairs: doc.pairs.iter().map(|[x, y]| Ok((parse(x)?, parse(y)?))).collect::<Result<_>>()?,
            level: doc.level,
        })
    }
}

/// Paths `α` with `r(α) = v`, `|α| = level`, provided every vertex the
/// expansion passes through is regular.
fn expansion(g: &Graph, v: VertexId, level: usize) -> Result<Vec<Path>> {
    let mut layer = vec![Path::vertex(v)];
    for _ in 0..level {
        let mut next = Vec::new();
        for p in &layer {
            let u = p.source();
            if !g.is_regular(u) {
                return Err(Error::IrregularVertexOnExpansion(g.vertex_name(u).to_string()));
            }
            for &e in g.receiving(u) {
                next.push(p.concat(&Path::edge(g, e)).expect("r(e) = s(p)"));
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// Monomial pairs whose products sum to `p_v`, with the level used.
fn local_unit_pairs(
    g: &Graph,
    v: VertexId,
    k: usize,
    dir: Direction,
    max_level: usize,
) -> Result<Option<(Vec<(Monomial, Monomial)>, usize)>> {
    g.require_algebraic()?;
    if k == 0 {
        return Ok(Some((vec![(Monomial::vertex(v), Monomial::vertex(v))], 0)));
    }
    match dir {
        Direction::PosNeg => {
            let pairs = expansion(g, v, k)?
                .into_iter()
                .map(|a| {
                    let s = Path::vertex(a.source());
                    (Monomial { alpha: a.clone(), beta: s.clone() }, Monomial { alpha: s, beta: a })
                })
                .collect();
            Ok(Some((pairs, k)))
        }
        Direction::NegPos => {
            let prof = length_profiles(g);
            for m in 0..=max_level {
                let layer = match expansion(g, v, m) {
                    Ok(layer) => layer,
                    Err(Error::IrregularVertexOnExpansion(_)) => break,
                    Err(e) => return Err(e),
                };
                if !layer.iter().all(|a| prof.member(a.source(), m + k)) {
                    continue;
                }
                let pairs = layer
                    .into_iter()
                    .map(|a| {
                        let b = path_of_length(g, a.source(), m + k).expect("membership implies a path");
                        (Monomial { alpha: a.clone(), beta: b.clone() }, Monomial { alpha: b, beta: a })
                    })
                    .collect();
                return Ok(Some((pairs, m)));
            }
            Ok(None)
        }
    }
}

fn to_element(g: &Arc<Graph>, m: Monomial, c: Coeff) -> Element {
    Element::monomial(g.clone(), m, c)
}

/// Writes `p_v` as a sum of products of homogeneous monomials of degrees
/// `(k, −k)` or `(−k, k)`.
pub fn factor_local_unit(
    g: &Arc<Graph>,
    v: VertexId,
    k: usize,
    dir: Direction,
    max_level: usize,
) -> Result<FactorOutcome> {
    let target = Element::vertex(g.clone(), v);
    let split = match dir {
        Direction::PosNeg => (k as i64, -(k as i64)),
        Direction::NegPos => (-(k as i64), k as i64),
    };
    Ok(match local_unit_pairs(g, v, k, dir, max_level)? {
        None => FactorOutcome::NotFoundUpTo(max_level),
        Some((pairs, level)) => FactorOutcome::Found(FactorizationWitness {
            target,
            split,
            pairs: pairs
                .into_iter()
                .map(|(x, y)| (to_element(g, x, Coeff::one()), to_element(g, y, Coeff::one())))
                .collect(),
            level,
        }),
    })
}

/// Ladder version: the truncation is deepened past `stages` far enough that
/// the expansion never meets the artificial source at its boundary, so the
/// witness is valid in the infinite graph. `vertex` must lie in a stage
/// `≤ stages`.
pub fn factor_local_unit_ladder(
    preset: &LadderGraph,
    stages: usize,
    vertex: &str,
    k: usize,
    dir: Direction,
    max_level: usize,
) -> Result<FactorOutcome> {
    let shallow = preset.instantiate(stages);
    if shallow.vertex_id(vertex).is_none() {
        return Err(Error::UnknownId(vertex.to_string()));
    }
    let depth = match dir {
        Direction::PosNeg => k,
        Direction::NegPos => max_level,
    };
    let g = Arc::new(preset.instantiate(stages + depth + 1));
    let v = g.vertex_id(vertex).expect("nested truncations share ids");
    factor_local_unit(&g, v, k, dir, max_level)
}

/// Factors a homogeneous element of degree `n` through degrees `(a, n − a)`:
/// each term `c·αβ*` becomes `Σ (c·αμ ν*)(ν (βμ)*)` where the pairs
/// `(μν*, νμ*)` split `p_{s(α)}` at the residual degree `a − |α|`.
pub fn factor_homogeneous(g: &Arc<Graph>, x: &Element, a: i64, max_level: usize) -> Result<FactorOutcome> {
    g.require_algebraic()?;
    let n = match x.degree() {
        Some(n) => n,
        None if x.is_zero() => a,
        None => {
            return Err(Error::NotHomogeneous { expected: x.terms().keys().next().map_or(0, Monomial::degree) })
        }
    };
    let b = n - a;
    let mut pairs = Vec::new();
    let mut level = 0;
    for (m, c) in x.terms() {
        let s = m.alpha.source();
        let residual = a - m.alpha.len() as i64;
        let k = residual.unsigned_abs() as usize;
        let dir = if residual >= 0 { Direction::PosNeg } else { Direction::NegPos };
        let local = match local_unit_pairs(g, s, k, dir, max_level) {
            Ok(Some(found)) => found,
            Ok(None) => return Ok(FactorOutcome::NotFoundUpTo(max_level)),
            Err(Error::IrregularVertexOnExpansion(_)) if paths_with_range(g, s, k).is_empty() => {
                // no path of the residual length ends at s at all
                return Ok(FactorOutcome::NotFoundUpTo(max_level));
            }
            Err(e) => return Err(e),
        };
        level = level.max(local.1);
        for (mu_nu, nu_mu) in local.0 {
            let alpha = m.alpha.concat(&mu_nu.alpha).expect("r(μ) = s(α)");
            let beta = m.beta.concat(&nu_mu.beta).expect("r(μ) = s(β)");
            let left = Monomial { alpha, beta: mu_nu.beta };
            let right = Monomial { alpha: nu_mu.alpha, beta };
            pairs.push((to_element(g, left, c.clone()), to_element(g, right, Coeff::one())));
        }
    }
    Ok(FactorOutcome::Found(FactorizationWitness { target: x.clone(), split: (a, b), pairs, level }))
}

/// Recomputes `Σ x_i y_i` and checks every factor's degree.
pub fn verify_factorization(w: &FactorizationWitness) -> bool {
    let g = w.target.graph().clone();
    let mut sum = Element::zero(g);
    for (x, y) in &w.pairs {
        if !x.is_homogeneous_of(w.split.0) || !y.is_homogeneous_of(w.split.1) {
            return false;
        }
        match x.mul(y).and_then(|p| sum.add(&p)) {
            Ok(s) => sum = s,
            Err(_) => return false,
        }
    }
    if let Some(d) = w.target.degree() {
        if d != w.split.0 + w.split.1 {
            return false;
        }
    }
    sum == w.target
}

/// Builds the raw form of a witness sum, handy for reporting.
pub fn witness_sum(w: &FactorizationWitness) -> RawSum {
    let mut raw = RawSum::new(w.target.graph().clone());
    for (x, y) in &w.pairs {
        if let Ok(p) = x.mul(y) {
            raw.terms.extend(p.terms().iter().map(|(m, c)| (m.clone(), c.clone())));
        }
    }
    raw
}
