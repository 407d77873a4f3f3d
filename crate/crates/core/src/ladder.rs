//! The spine-with-branches family of infinite graphs.
//!
//! Spine vertices `v_0, v_1, …` with spine edges `s_j: v_j → v_{j-1}`
//! (`r(s_j) = v_{j-1}`, `s(s_j) = v_j`). At every `v_j` hangs a branch of
//! `b_j` edges `c_{j,1}, …, c_{j,b_j}` with `s(c_{j,i}) = u_{j,i-1}`,
//! `r(c_{j,i}) = u_{j,i}` and `u_{j,0} = v_j`.
//!
//! Truncations are laid out stage by stage (`v_j`, its branch, then
//! `v_{j+1}`), so a truncation at `N` is an initial segment of every deeper
//! truncation: vertex and edge ids agree between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{validate_graph, EdgeSpec, Graph, GraphSpec, Multiplicity, RawId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderGraph {
    #[serde(default)]
    pub table: Vec<i64>,
    pub slope: i64,
    pub offset: i64,
}

/// Where a vertex of a ladder truncation sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderVertex {
    Spine(usize),
    Branch { stage: usize, depth: usize },
}

impl LadderGraph {
    pub fn validate(&self) -> Result<()> {
        if self.slope < 0 {
            return Err(Error::InvalidLadder(format!("slope {} is negative", self.slope)));
        }
        if let Some(b) = self.table.iter().find(|&&b| b < 0) {
            return Err(Error::InvalidLadder(format!("table entry {b} is negative")));
        }
        Ok(())
    }

    /// `b_j`.
    pub fn branch_len(&self, j: usize) -> usize {
        match self.table.get(j) {
            Some(&b) => b as usize,
            None => (self.slope * j as i64 + self.offset).max(0) as usize,
        }
    }

    /// `max_{i ≤ n} (b_i − i)`.
    pub fn max_excess_upto(&self, n: usize) -> i64 {
        (0..=n).map(|i| self.branch_len(i) as i64 - i as i64).max().unwrap()
    }

    /// `sup_j (b_j − j)`, or `None` when it is infinite (slope ≥ 2).
    pub fn sup_excess(&self) -> Option<i64> {
        let t = self.table.len() as i64;
        let table_max = self.table.iter().enumerate().map(|(j, &b)| b - j as i64).max();
        let tail = match self.slope {
            0 => self.offset.max(0) - t,
            1 => self.offset.max(-t),
            _ => return None,
        };
        Some(table_max.map_or(tail, |m| m.max(tail)))
    }

    /// Smallest stage `n ≥ min_stage` with `max_{i ≤ n}(b_i − i) ≥ target`.
    pub fn first_stage_with_excess(&self, target: i64, min_stage: usize) -> Option<usize> {
        if let Some(sup) = self.sup_excess() {
            if sup < target {
                return None;
            }
        }
        let mut best = i64::MIN;
        let mut n = 0;
        loop {
            best = best.max(self.branch_len(n) as i64 - n as i64);
            if n >= min_stage && best >= target {
                return Some(n);
            }
            n += 1;
        }
    }

    /// Closed-form `L(v_n) = ⋃_{i ≤ n} [n − i, n − i + b_i]`, which is the
    /// interval `[0, n + max_{i≤n}(b_i − i)]`.
    pub fn spine_member(&self, n: usize, len: usize) -> bool {
        len as i64 <= n as i64 + self.max_excess_upto(n)
    }

    /// Closed-form membership for any vertex.
    pub fn member(&self, v: LadderVertex, len: usize) -> bool {
        match v {
            LadderVertex::Spine(n) => self.spine_member(n, len),
            LadderVertex::Branch { stage, depth } => len + depth <= self.branch_len(stage),
        }
    }

    pub fn spine_vertex_name(j: usize) -> String {
        format!("v{j}")
    }

    pub fn spine_edge_name(j: usize) -> String {
        format!("s{j}")
    }

    pub fn classify(g: &Graph, v: VertexId) -> Option<LadderVertex> {
        let name = g.vertex_name(v);
        if let Some(rest) = name.strip_prefix('v') {
            return rest.parse().ok().map(LadderVertex::Spine);
        }
        let rest = name.strip_prefix('u')?;
        let (stage, depth) = rest.split_once('_')?;
        Some(LadderVertex::Branch { stage: stage.parse().ok()?, depth: depth.parse().ok()? })
    }

    /// The finite subgraph on stages `j ≤ n`.
    pub fn instantiate(&self, n: usize) -> Graph {
        ladder_instantiate(self, n)
    }
}

pub fn ladder_instantiate(preset: &LadderGraph, stages: usize) -> Graph {
    let name = |s: String| RawId::Name(s);
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let edge = |id: String, r: String, s: String| EdgeSpec {
        id: RawId::Name(id),
        range: RawId::Name(r),
        source: RawId::Name(s),
        mult: Multiplicity::Finite(1),
    };
    for j in 0..=stages {
        let vj = LadderGraph::spine_vertex_name(j);
        vertices.push(name(vj.clone()));
        if j >= 1 {
            edges.push(edge(LadderGraph::spine_edge_name(j), LadderGraph::spine_vertex_name(j - 1), vj.clone()));
        }
        let mut below = vj;
        for i in 1..=preset.branch_len(j) {
            let u = format!("u{j}_{i}");
            vertices.push(name(u.clone()));
            edges.push(edge(format!("c{j}_{i}"), u.clone(), below));
            below = u;
        }
    }
    validate_graph(GraphSpec { vertices, edges, enumeration: None }).expect("ladder truncations are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::structural_report;

    #[test]
    fn identity_branches_count() {
        let g = ladder_instantiate(&fixtures::ladder(1, 0), 2);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 5);
        let mut names: Vec<String> = g.vertices().map(|v| g.vertex_name(v).to_string()).collect();
        names.sort();
        assert_eq!(names, vec!["u1_1", "u2_1", "u2_2", "v0", "v1", "v2"]);
        let mut edges = g.edge_names_in_order();
        edges.sort();
        assert_eq!(edges, vec!["c1_1", "c2_1", "c2_2", "s1", "s2"]);
    }

    #[test]
    fn single_vertex_stage() {
        let preset = LadderGraph { table: vec![0], slope: 0, offset: 0 };
        let g = ladder_instantiate(&preset, 0);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn slope_two_branch() {
        let g = ladder_instantiate(&fixtures::ladder(2, 0), 2);
        let v2 = g.vertex_id("v2").unwrap();
        let mut depth = 0;
        let mut at = v2;
        while let Some(&e) = g.emitting(at).iter().find(|&&e| g.edge_name(e).starts_with('c')) {
            depth += 1;
            at = g.range(e);
        }
        assert_eq!(depth, 4);
    }

    #[test]
    fn truncation_sources_and_row_finiteness() {
        for (slope, offset) in [(0, 2), (1, 0), (1, 3), (2, 0), (3, -2)] {
            let preset = fixtures::ladder(slope, offset);
            for n in 0..6 {
                let g = preset.instantiate(n);
                let rep = structural_report(&g);
                assert!(rep.row_finite);
                // only the truncation boundary v_n receives nothing
                assert_eq!(rep.sources, vec![LadderGraph::spine_vertex_name(n)]);
                let expected: usize = n + (0..=n).map(|j| preset.branch_len(j)).sum::<usize>();
                assert_eq!(g.edge_count(), expected);
            }
        }
    }

    #[test]
    fn truncations_are_nested() {
        let preset = fixtures::ladder(2, 1);
        let small = preset.instantiate(3);
        let big = preset.instantiate(6);
        for e in small.edge_ids() {
            assert_eq!(small.edge_name(e), big.edge_name(e));
        }
        for v in small.vertices() {
            assert_eq!(small.vertex_name(v), big.vertex_name(v));
        }
    }

    #[test]
    fn sup_excess_closed_form() {
        assert_eq!(fixtures::ladder(1, 3).sup_excess(), Some(3));
        assert_eq!(fixtures::ladder(1, 0).sup_excess(), Some(0));
        assert_eq!(fixtures::ladder(2, 0).sup_excess(), None);
        assert_eq!(fixtures::ladder(0, 5).sup_excess(), Some(5));
        let p = LadderGraph { table: vec![0, 9], slope: 1, offset: -10 };
        assert_eq!(p.sup_excess(), Some(8));
        // brute force over a long window agrees with the closed form
        for p in [fixtures::ladder(1, 3), fixtures::ladder(0, 5), fixtures::ladder(1, -4), p] {
            let brute = (0..200).map(|j| p.branch_len(j) as i64 - j as i64).max().unwrap();
            assert_eq!(Some(brute), p.sup_excess());
        }
    }

    #[test]
    fn rejects_negative_parameters() {
        assert!(LadderGraph { table: vec![], slope: -1, offset: 0 }.validate().is_err());
        assert!(LadderGraph { table: vec![-2], slope: 1, offset: 0 }.validate().is_err());
    }
}
