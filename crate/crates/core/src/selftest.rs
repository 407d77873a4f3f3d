//! The invariant suite run by `selftest`. Every check is seeded and
//! deterministic.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::core_fd::{embed_in_fd, fd_dimension, matrix_units, span_closure, Span};
use crate::fixtures;
use crate::graph::{Graph, GraphInput, VertexId};
use crate::groupoid::Groupoid;
use crate::lengths::length_profiles;
use crate::lpa::{normal_form_with, parse_element, Element, ReductionOrder};
use crate::property_y::decide_property_y_finite;
use crate::random;
use crate::witness::{factor_local_unit, verify_factorization, Direction, FactorOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Outcome = std::result::Result<String, String>;

fn algebra_graphs() -> Vec<Arc<Graph>> {
    vec![
        Arc::new(fixtures::loop_graph()),
        Arc::new(fixtures::l2()),
        Arc::new(fixtures::c2()),
        Arc::new(fixtures::chain()),
        Arc::new(fixtures::ladder(2, 0).instantiate(4)),
    ]
}

fn lengths_by_walking(g: &Graph, v: VertexId, max: usize) -> Vec<bool> {
    let mut out = vec![true];
    let mut frontier = vec![v];
    for _ in 0..max {
        let mut next: Vec<VertexId> = frontier.iter().flat_map(|&u| g.emitting(u).iter().map(|&e| g.range(e))).collect();
        next.sort();
        next.dedup();
        out.push(!next.is_empty());
        frontier = next;
    }
    out
}

fn check_length_profiles(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..200 {
        let g = random::graph(rng, 6, 10);
        let p = length_profiles(&g);
        let max = p.preperiod + 2 * p.period;
        for v in g.vertices() {
            for (m, &b) in lengths_by_walking(&g, v, max).iter().enumerate() {
                if p.member(v, m) != b {
                    return Err(format!("graph {i}, vertex {}, length {m}", g.vertex_name(v)));
                }
            }
        }
    }
    Ok("200 random graphs".into())
}

fn check_small_graphs_property_y() -> Outcome {
    let mut count = 0;
    for g in random::all_small_graphs(3, 4) {
        count += 1;
        if !decide_property_y_finite(&g, false).holds {
            return Err(format!("property (Y) fails on {:?}", g.spec()));
        }
    }
    Ok(format!("{count} graphs"))
}

fn check_confluence(rng: &mut ChaCha8Rng, seed: u64) -> Outcome {
    let mut a = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut b = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    for g in algebra_graphs() {
        for _ in 0..100 {
            let raw = random::raw_sum(rng, &g, 4, 3);
            let x = normal_form_with(&raw, ReductionOrder::Random(&mut a));
            let y = normal_form_with(&raw, ReductionOrder::Random(&mut b));
            let z = raw.normalize();
            if x != y || x != z {
                return Err(format!("orders disagree: {x} vs {y} vs {z}"));
            }
        }
    }
    Ok("100 elements per graph, three orders".into())
}

fn check_ring_laws(rng: &mut ChaCha8Rng) -> Outcome {
    for g in algebra_graphs() {
        for _ in 0..60 {
            let x = random::raw_sum(rng, &g, 3, 2).normalize();
            let y = random::raw_sum(rng, &g, 3, 2).normalize();
            let z = random::raw_sum(rng, &g, 3, 2).normalize();
            let m = |p: &Element, q: &Element| p.mul(q).map_err(|e| e.to_string());
            let s = |p: &Element, q: &Element| p.add(q).map_err(|e| e.to_string());
            if m(&m(&x, &y)?, &z)? != m(&x, &m(&y, &z)?)? {
                return Err(format!("associativity fails on {x}, {y}, {z}"));
            }
            if m(&x, &s(&y, &z)?)? != s(&m(&x, &y)?, &m(&x, &z)?)? {
                return Err(format!("left distributivity fails on {x}, {y}, {z}"));
            }
            if m(&x, &y)?.star() != m(&y.star(), &x.star())? || x.star().star() != x {
                return Err(format!("star fails on {x}, {y}"));
            }
        }
    }
    Ok("associativity, distributivity, star".into())
}

fn check_graded(rng: &mut ChaCha8Rng) -> Outcome {
    let mut nonzero = 0;
    for g in algebra_graphs() {
        for _ in 0..100 {
            let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            let x = random::homogeneous_sum(rng, &g, 3, 3, a).normalize();
            let y = random::homogeneous_sum(rng, &g, 3, 3, b).normalize();
            let p = x.mul(&y).map_err(|e| e.to_string())?;
            if !p.is_zero() {
                nonzero += 1;
                if !p.is_homogeneous_of(a + b) {
                    return Err(format!("deg({x} * {y}) != {}", a + b));
                }
            }
            if !x.star().is_homogeneous_of(-a) {
                return Err(format!("star of {x} is not of degree {}", -a));
            }
        }
    }
    Ok(format!("{nonzero} nonzero products"))
}

fn check_round_trip(rng: &mut ChaCha8Rng) -> Outcome {
    for g in algebra_graphs() {
        for _ in 0..100 {
            let x = random::raw_sum(rng, &g, 4, 3).normalize();
            let back = parse_element(&x.to_expr(), &g).map_err(|e| e.to_string())?.normalize();
            if back != x {
                return Err(format!("{x} reparses as {back}"));
            }
        }
    }
    Ok("print then parse is the identity".into())
}

fn check_matrix_units() -> Outcome {
    let mut systems = 0;
    for g in [Arc::new(fixtures::l2()), Arc::new(fixtures::c2())] {
        for k in 0..=2 {
            for cutoff in 1..=g.edge_count() {
                for v in crate::graph::cutoff_vertices(&g, cutoff) {
                    let sys = matrix_units(&g, k, cutoff, v).map_err(|e| e.to_string())?;
                    if !sys.report.ok() {
                        return Err(format!("k={k} J={cutoff}: {:?}", sys.report.failures.first()));
                    }
                    systems += 1;
                }
            }
        }
    }
    Ok(format!("{systems} systems"))
}

fn check_dimensions() -> Outcome {
    let loop_graph = Arc::new(fixtures::loop_graph());
    for k in 0..=5 {
        let d = fd_dimension(&loop_graph, k, 1).map_err(|e| e.to_string())?;
        if d != 1 {
            return Err(format!("dim F_{{{k},1}}(loop) = {d}"));
        }
    }
    let l2 = Arc::new(fixtures::l2());
    let d = fd_dimension(&l2, 1, 2).map_err(|e| e.to_string())?;
    if d != 4 {
        return Err(format!("dim F_{{1,2}}(L2) = {d}"));
    }
    Ok("loop k=0..5 and L2 (1,2)".into())
}

fn check_embeddings(rng: &mut ChaCha8Rng, seed: u64) -> Outcome {
    for g in algebra_graphs() {
        for _ in 0..20 {
            let raw = random::degree_zero_sum(rng, &g, 3, 2);
            let e = embed_in_fd(&raw).map_err(|e| e.to_string())?;
            let mut span = Span::new(g.clone());
            for b in &e.basis {
                span.insert(b);
            }
            if span.combine(&e.coordinates) != e.element {
                return Err(format!("coordinates do not reproduce {}", e.element));
            }
            let closure = span_closure(&span, 60, seed);
            if !closure.ok() {
                return Err(closure.failures.join("; "));
            }
        }
    }
    Ok("20 elements per graph".into())
}

fn check_witnesses() -> Outcome {
    let mut count = 0;
    let check = |out: FactorOutcome| -> std::result::Result<(), String> {
        match out {
            FactorOutcome::Found(w) if verify_factorization(&w) => Ok(()),
            FactorOutcome::Found(w) => Err(format!("witness for {} does not verify", w.target)),
            FactorOutcome::NotFoundUpTo(m) => Err(format!("no witness up to level {m}")),
        }
    };
    let g = Arc::new(fixtures::loop_graph());
    let preset = fixtures::ladder(2, 0);
    for k in 1..=3 {
        for dir in [Direction::PosNeg, Direction::NegPos] {
            check(factor_local_unit(&g, VertexId(0), k, dir, 6).map_err(|e| e.to_string())?)?;
            count += 1;
            let shallow = preset.instantiate(4);
            for v in shallow.vertices() {
                let name = shallow.vertex_name(v);
                check(crate::witness::factor_local_unit_ladder(&preset, 4, name, k, dir, 32).map_err(|e| e.to_string())?)?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} local units"))
}

fn check_steinberg(rng: &mut ChaCha8Rng) -> Outcome {
    for g in [fixtures::loop_graph(), fixtures::l2(), fixtures::c2()] {
        let gr = Groupoid::new(Arc::new(g)).map_err(|e| e.to_string())?;
        for _ in 0..200 {
            let m1 = random::monomial(rng, gr.graph(), 3);
            let m2 = random::monomial(rng, gr.graph(), 3);
            if !gr.steinberg_product_check(&m1, &m2).map_err(|e| e.to_string())? {
                return Err(format!("{} and {}", m1.to_string(gr.graph()), m2.to_string(gr.graph())));
            }
        }
    }
    Ok("200 pairs per graph".into())
}

fn check_certificates() -> Outcome {
    let mut certs = Vec::new();
    for preset in [fixtures::ladder(1, 0), fixtures::ladder(1, 3)] {
        let input = GraphInput::Ladder(preset);
        let verdict = crate::property_y::decide_property_y(&input, false);
        certs.extend(Certificate::property_y_failure(&input, &verdict));
    }
    let g = Arc::new(fixtures::l2());
    if let FactorOutcome::Found(w) =
        factor_local_unit(&g, VertexId(0), 2, Direction::NegPos, 4).map_err(|e| e.to_string())?
    {
        certs.push(Certificate::factorization(&w));
    }
    let raw = parse_element("[e|f] + 2*[v|v]", &g).map_err(|e| e.to_string())?;
    certs.push(Certificate::embedding(&embed_in_fd(&raw).map_err(|e| e.to_string())?));
    for c in &certs {
        let back = Certificate::from_json(&c.to_json()).map_err(|e| e.to_string())?;
        back.verify().map_err(|e| format!("{}: {e}", c.kind()))?;
    }
    Ok(format!("{} certificates", certs.len()))
}

/// Runs every check; individual failures are reported, not raised.
pub fn run_selftest(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut record = |name: &str, run: &mut dyn FnMut() -> Outcome| {
        // no timings: reports must be byte-identical across reruns
        let (passed, detail) = match run() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(CheckResult { name: name.to_string(), passed, detail });
    };
    record("length-profiles", &mut || check_length_profiles(&mut rng));
    record("property-y-small-graphs", &mut check_small_graphs_property_y);
    record("normal-form-confluence", &mut || check_confluence(&mut rng, seed));
    record("ring-laws", &mut || check_ring_laws(&mut rng));
    record("graded-laws", &mut || check_graded(&mut rng));
    record("print-parse-round-trip", &mut || check_round_trip(&mut rng));
    record("matrix-units", &mut check_matrix_units);
    record("core-dimensions", &mut check_dimensions);
    record("core-embeddings", &mut || check_embeddings(&mut rng, seed));
    record("local-unit-witnesses", &mut check_witnesses);
    record("groupoid-algebra-products", &mut || check_steinberg(&mut rng));
    record("certificates", &mut check_certificates);
    SelftestReport { seed, checks }
}

/// Reads a certificate file and re-verifies it.
pub fn verify_certificate_text(text: &str) -> crate::Result<Certificate> {
    let cert = Certificate::from_json(text)?;
    cert.verify()?;
    Ok(cert)
}
