//! Seeded generators for graphs, paths and algebra elements, shared by the
//! self-test and the property tests.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coeff::{self, Coeff};
use crate::graph::{Graph, Path, VertexId};
use crate::lpa::{Monomial, RawSum};

/// A random graph on `1..=max_vertices` vertices with `0..=max_edges` edges.
pub fn graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    from_pairs(n, &edges)
}

/// Vertices `x0..`, edges `a0..` with the given `(range, source)` indices.
pub fn from_pairs(vertices: usize, edges: &[(usize, usize)]) -> Graph {
    let names: Vec<String> = (0..vertices).map(|i| format!("x{i}")).collect();
    let edge_names: Vec<String> = (0..edges.len()).map(|i| format!("a{i}")).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = edges
        .iter()
        .zip(&edge_names)
        .map(|(&(r, s), id)| (id.as_str(), names[r].as_str(), names[s].as_str()))
        .collect();
    Graph::from_triples(&vs, &es)
}

/// Every graph with `1..=max_vertices` vertices and `0..=max_edges` labeled
/// edges, loops and parallel edges included.
pub fn all_small_graphs(max_vertices: usize, max_edges: usize) -> impl Iterator<Item = Graph> {
    (1..=max_vertices).flat_map(move |n| {
        (0..=max_edges).flat_map(move |m| {
            let pairs = n * n;
            (0..pairs.pow(m as u32)).map(move |mut code| {
                let edges: Vec<(usize, usize)> = (0..m)
                    .map(|_| {
                        let p = code % pairs;
                        code /= pairs;
                        (p / n, p % n)
                    })
                    .collect();
                from_pairs(n, &edges)
            })
        })
    })
}

/// A path with source `v` of length at most `len`, grown backward along
/// edges emitted from the current range; stops early at dead ends.
pub fn path_from_source<R: Rng>(rng: &mut R, g: &Graph, v: VertexId, len: usize) -> Path {
    let mut p = Path::vertex(v);
    for _ in 0..len {
        let Some(&e) = g.emitting(p.range()).choose(rng) else { break };
        p = Path::edge(g, e).concat(&p).expect("s(e) = r(p)");
    }
    p
}

/// A path with source `v` of length exactly `len`, if one turns up within
/// a few attempts.
pub fn exact_path_from_source<R: Rng>(rng: &mut R, g: &Graph, v: VertexId, len: usize) -> Option<Path> {
    (0..8).map(|_| path_from_source(rng, g, v, len)).find(|p| p.len() == len)
}

pub fn monomial<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> Monomial {
    let v = VertexId(rng.gen_range(0..g.vertex_count()));
    let a = rng.gen_range(0..=max_len);
    let b = rng.gen_range(0..=max_len);
    Monomial { alpha: path_from_source(rng, g, v, a), beta: path_from_source(rng, g, v, b) }
}

/// A monomial of degree `degree`, when the graph allows one quickly.
pub fn monomial_of_degree<R: Rng>(rng: &mut R, g: &Graph, max_len: usize, degree: i64) -> Option<Monomial> {
    (0..64).map(|_| monomial(rng, g, max_len)).find(|m| m.degree() == degree)
}

/// `[α|β]` with `|α| = |β|`.
pub fn degree_zero_monomial<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> Monomial {
    for _ in 0..16 {
        let v = VertexId(rng.gen_range(0..g.vertex_count()));
        let l = rng.gen_range(0..=max_len);
        if let (Some(a), Some(b)) = (exact_path_from_source(rng, g, v, l), exact_path_from_source(rng, g, v, l)) {
            return Monomial { alpha: a, beta: b };
        }
    }
    Monomial::vertex(VertexId(rng.gen_range(0..g.vertex_count())))
}

pub fn small_coeff<R: Rng>(rng: &mut R) -> Coeff {
    let n = rng.gen_range(-3..=3);
    let n = if n == 0 { 1 } else { n };
    if rng.gen_bool(0.2) {
        coeff::ratio(n, rng.gen_range(2..=3))
    } else {
        coeff::int(n)
    }
}

pub fn raw_sum<R: Rng>(rng: &mut R, g: &Arc<Graph>, max_terms: usize, max_len: usize) -> RawSum {
    let mut raw = RawSum::new(g.clone());
    for _ in 0..rng.gen_range(1..=max_terms) {
        raw.push(monomial(rng, g, max_len), small_coeff(rng));
    }
    raw
}

/// Homogeneous of `degree`; may come out empty when the graph is too small.
pub fn homogeneous_sum<R: Rng>(rng: &mut R, g: &Arc<Graph>, max_terms: usize, max_len: usize, degree: i64) -> RawSum {
    let mut raw = RawSum::new(g.clone());
    for _ in 0..rng.gen_range(1..=max_terms) {
        if let Some(m) = monomial_of_degree(rng, g, max_len, degree) {
            raw.push(m, small_coeff(rng));
        }
    }
    raw
}

pub fn degree_zero_sum<R: Rng>(rng: &mut R, g: &Arc<Graph>, max_terms: usize, max_len: usize) -> RawSum {
    let mut raw = RawSum::new(g.clone());
    for _ in 0..rng.gen_range(1..=max_terms) {
        raw.push(degree_zero_monomial(rng, g, max_len), small_coeff(rng));
    }
    raw
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_graph_count() {
        // one vertex: 1 + 1 + 1 graphs for up to two edges
        assert_eq!(all_small_graphs(1, 2).count(), 3);
        // two vertices, one edge: 1 + 4
        assert_eq!(all_small_graphs(2, 1).filter(|g| g.vertex_count() == 2).count(), 5);
    }

    #[test]
    fn generated_monomials_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let g = graph(&mut rng, 4, 6);
            let m = monomial(&mut rng, &g, 3);
            assert_eq!(m.alpha.source(), m.beta.source());
            let z = degree_zero_monomial(&mut rng, &g, 3);
            assert_eq!(z.degree(), 0);
        }
    }
}
