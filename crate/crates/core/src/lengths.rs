//! Length sets `L(v) = { ℓ : some path β has s(β) = v and |β| = ℓ }`.
//!
//! The indicator vectors obey `w_0 ≡ 1` and
//! `w_{ℓ+1}(v) = OR_{e : s(e) = v} w_ℓ(r(e))`, so the sequence is eventually
//! periodic; it is stored up to its first repeat.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph, Path, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthProfile {
    /// `w_0 … w_{p+c−1}`, indexed `[ℓ][v]`.
    pub table: Vec<Vec<bool>>,
    pub preperiod: usize,
    pub period: usize,
}

impl LengthProfile {
    pub fn fold(&self, m: usize) -> usize {
        let (p, c) = (self.preperiod, self.period);
        if m < p + c {
            m
        } else {
            p + (m - p) % c
        }
    }

    pub fn member(&self, v: VertexId, m: usize) -> bool {
        self.table[self.fold(m)][v.0]
    }

    /// `p + c`.
    pub fn horizon(&self) -> usize {
        self.preperiod + self.period
    }
}

/// Computes the profile with minimal `(p, c)` by first-repeat detection.
/// Multiplicities do not matter here, so ω edges are accepted.
pub fn length_profiles(g: &Graph) -> LengthProfile {
    let n = g.vertex_count();
    let mut table = vec![vec![true; n]];
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    seen.insert(table[0].clone(), 0);
    loop {
        let last = table.last().unwrap();
        let next: Vec<bool> =
            g.vertices().map(|v| g.emitting(v).iter().any(|&e| last[g.range(e).0])).collect();
        if let Some(&p) = seen.get(&next) {
            let period = table.len() - p;
            return LengthProfile { table, preperiod: p, period };
        }
        seen.insert(next.clone(), table.len());
        table.push(next);
    }
}

/// The lexicographically least path (by enumeration, first edge first) with
/// source `v` and exactly `len` edges.
pub fn path_of_length(g: &Graph, v: VertexId, len: usize) -> Option<Path> {
    if len == 0 {
        return Some(Path::vertex(v));
    }
    // reach[t][u]: some path of length t has source v and range u
    let n = g.vertex_count();
    let mut reach = Vec::with_capacity(len + 1);
    let mut start = vec![false; n];
    start[v.0] = true;
    reach.push(start);
    for t in 0..len {
        let cur = &reach[t];
        let mut next = vec![false; n];
        for e in g.edge_ids() {
            if cur[g.source(e).0] {
                next[g.range(e).0] = true;
            }
        }
        if !next.iter().any(|&b| b) {
            return None;
        }
        reach.push(next);
    }
    // pick α_1, α_2, … greedily; α_i must leave room for len − i more edges
    let mut edges: Vec<EdgeId> = Vec::with_capacity(len);
    let mut need_range: Option<VertexId> = None;
    for i in 1..=len {
        let remaining = len - i;
        let pick = g.edge_ids().find(|&e| {
            need_range.is_none_or(|r| g.range(e) == r) && reach[remaining][g.source(e).0]
        })?;
        edges.push(pick);
        need_range = Some(g.source(pick));
    }
    Some(Path::from_edges(g, edges).expect("greedy construction is composable"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Brute-force `L(v) ∩ [0, max]` by enumerating all edge sequences.
    pub(crate) fn brute_lengths(g: &Graph, v: VertexId, max: usize) -> Vec<bool> {
        let mut out = vec![false; max + 1];
        out[0] = true;
        // frontier: ranges of paths with source v of the current length
        let mut frontier: Vec<VertexId> = vec![v];
        for len in 1..=max {
            let mut next = Vec::new();
            for &u in &frontier {
                for &e in g.emitting(u) {
                    next.push(g.range(e));
                }
            }
            next.sort();
            next.dedup();
            out[len] = !next.is_empty();
            frontier = next;
        }
        out
    }

    #[test]
    fn loop_profile() {
        let g = fixtures::loop_graph();
        let p = length_profiles(&g);
        assert_eq!((p.preperiod, p.period), (0, 1));
        assert!((0..10).all(|m| p.member(VertexId(0), m)));
    }

    #[test]
    fn chain_profile() {
        let g = fixtures::chain();
        let v = g.vertex_id("v").unwrap();
        let w = g.vertex_id("w").unwrap();
        let p = length_profiles(&g);
        // w_0 = (1,1), w_1 = (0,1), w_2 = (0,0) = w_3
        assert_eq!(p.table, vec![vec![true, true], vec![false, true], vec![false, false]]);
        assert_eq!((p.preperiod, p.period), (2, 1));
        assert!(p.member(v, 0) && !p.member(v, 1));
        assert!(p.member(w, 0) && p.member(w, 1) && !p.member(w, 2) && !p.member(w, 7));
    }

    #[test]
    fn two_cycle_profile() {
        let g = fixtures::c2();
        let p = length_profiles(&g);
        assert_eq!((p.preperiod, p.period), (0, 1));
        assert!(g.vertices().all(|v| (0..6).all(|m| p.member(v, m))));
    }

    #[test]
    fn witness_paths() {
        let g = fixtures::loop_graph();
        let v = g.vertex_id("v").unwrap();
        assert_eq!(g.path_to_string(&path_of_length(&g, v, 3).unwrap()), "e e e");

        let g = fixtures::chain();
        let (v, w) = (g.vertex_id("v").unwrap(), g.vertex_id("w").unwrap());
        assert_eq!(g.path_to_string(&path_of_length(&g, w, 1).unwrap()), "e");
        assert_eq!(path_of_length(&g, v, 1), None);
    }

    #[test]
    fn lexicographically_least() {
        let g = fixtures::l2();
        let v = g.vertex_id("v").unwrap();
        assert_eq!(g.path_to_string(&path_of_length(&g, v, 2).unwrap()), "e e");
        let g = fixtures::ladder(2, 0).instantiate(3);
        let v2 = g.vertex_id("v2").unwrap();
        let p = path_of_length(&g, v2, 4).unwrap();
        assert_eq!(g.path_to_string(&p), "c2_4 c2_3 c2_2 c2_1");
    }

    #[test]
    fn ladder_profile_matches_closed_form() {
        for preset in [fixtures::ladder(1, 0), fixtures::ladder(2, 0), fixtures::ladder(1, 3), fixtures::ladder(0, 1)] {
            for n in 0..5 {
                let g = preset.instantiate(n);
                let p = length_profiles(&g);
                for v in g.vertices() {
                    let pos = crate::ladder::LadderGraph::classify(&g, v).unwrap();
                    for m in 0..(p.horizon() + 2 * p.period + 3) {
                        assert_eq!(p.member(v, m), preset.member(pos, m), "{:?} m={m}", pos);
                    }
                }
            }
        }
    }

    #[test]
    fn brute_force_agrees_on_fixtures() {
        for g in [fixtures::loop_graph(), fixtures::l2(), fixtures::c2(), fixtures::chain()] {
            let p = length_profiles(&g);
            let max = p.preperiod + 2 * p.period;
            for v in g.vertices() {
                let brute = brute_lengths(&g, v, max);
                for (m, &b) in brute.iter().enumerate() {
                    assert_eq!(p.member(v, m), b);
                }
            }
        }
    }
}
