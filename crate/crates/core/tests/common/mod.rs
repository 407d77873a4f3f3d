//! Independent oracles for the integration tests. None of these call the
//! library's algorithms; they only use its data types.

#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use leavitt::graph::{EdgeId, Graph, VertexId};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn graphs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../graphs")
}

pub fn graph_file(name: &str) -> String {
    graphs_dir().join(format!("{name}.json")).to_string_lossy().into_owned()
}

/// `L(v) ∩ [0, max]` by enumerating edge sequences `β = β_1 … β_ℓ` with
/// `s(β_ℓ) = v`, built right to left; sequences ending in the same
/// `(range, length)` are explored once.
pub fn lengths_by_enumeration(g: &Graph, v: VertexId, max: usize) -> Vec<bool> {
    let mut out = vec![false; max + 1];
    let mut seen: HashSet<(VertexId, usize)> = HashSet::new();
    let mut stack = vec![(v, 0usize)];
    while let Some((head, len)) = stack.pop() {
        if !seen.insert((head, len)) {
            continue;
        }
        out[len] = true;
        if len == max {
            continue;
        }
        for e in (0..g.edge_count()).map(EdgeId) {
            if g.source(e) == head {
                stack.push((g.range(e), len + 1));
            }
        }
    }
    out
}

/// A path as a plain edge list, first edge at the range end.
pub type Word = Vec<EdgeId>;

/// Every word of length `len` whose last edge has source `v` (the vertex
/// word when `len = 0`), using edges with enumeration index `< cutoff`.
pub fn words_from(g: &Graph, v: VertexId, len: usize, cutoff: usize) -> Vec<Word> {
    let mut words: Vec<(Word, VertexId)> = vec![(Vec::new(), v)];
    for _ in 0..len {
        let mut next = Vec::new();
        for (w, head) in &words {
            for e in (0..cutoff.min(g.edge_count())).map(EdgeId) {
                if g.source(e) == *head {
                    let mut nw = vec![e];
                    nw.extend_from_slice(w);
                    next.push((nw, g.range(e)));
                }
            }
        }
        words = next;
    }
    words.into_iter().map(|(w, _)| w).collect()
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let d = &pivot[j] * &f;
                    rows[i][j] -= d;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Dimension of `span{αβ* : α, β ∈ E^l_J v, l ≤ k, v ∈ E^0_J}` on a finite
/// graph where every vertex receives an edge: each `αβ*` is expanded to
/// level `k` by `αβ* = Σ_{r(γ) = s(α), |γ| = k − l} αγ (βγ)*`, and level-`k`
/// matrix units are linearly independent.
pub fn core_dimension_by_expansion(g: &Graph, k: usize, cutoff: usize) -> usize {
    assert!(g.vertices().all(|v| (0..g.edge_count()).any(|e| g.range(EdgeId(e)) == v)));
    let mut cutoff_vertices: Vec<VertexId> = (0..cutoff.min(g.edge_count())).map(|e| g.source(EdgeId(e))).collect();
    cutoff_vertices.sort();
    cutoff_vertices.dedup();
    // coordinates: pairs of level-k words with their common source
    let mut coords: Vec<(Word, Word, VertexId)> = Vec::new();
    for v in g.vertices() {
        let ws = words_from(g, v, k, g.edge_count());
        for a in &ws {
            for b in &ws {
                coords.push((a.clone(), b.clone(), v));
            }
        }
    }
    let index = |a: &Word, b: &Word, v: VertexId| {
        coords.iter().position(|(x, y, u)| x == a && y == b && *u == v).expect("level-k pair")
    };
    // words γ with r(γ) = v, read left to right, with their source
    let into = |v: VertexId, len: usize| -> Vec<(Word, VertexId)> {
        let mut out: Vec<(Word, VertexId)> = vec![(Vec::new(), v)];
        for _ in 0..len {
            let mut next = Vec::new();
            for (w, tail) in &out {
                for e in (0..g.edge_count()).map(EdgeId) {
                    if g.range(e) == *tail {
                        let mut nw = w.clone();
                        nw.push(e);
                        next.push((nw, g.source(e)));
                    }
                }
            }
            out = next;
        }
        out
    };
    let mut rows = Vec::new();
    for &v in &cutoff_vertices {
        for l in 0..=k {
            let ws = words_from(g, v, l, cutoff);
            for a in &ws {
                for b in &ws {
                    let mut row = vec![BigRational::zero(); coords.len()];
                    for (gamma, end) in into(v, k - l) {
                        let mut x = a.clone();
                        x.extend_from_slice(&gamma);
                        let mut y = b.clone();
                        y.extend_from_slice(&gamma);
                        row[index(&x, &y, end)] += BigRational::one();
                    }
                    rows.push(row);
                }
            }
        }
    }
    rank(rows)
}
