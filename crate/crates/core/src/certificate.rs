//! Self-contained certificates: each carries its graph, so it can be
//! re-verified from the serialized form alone.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::core_fd::{verify_embedding_doc, EmbeddingDoc, FdEmbedding};
use crate::error::{Error, Result};
use crate::graph::{validate_graph, Graph, GraphDoc, GraphInput};
use crate::property_y::{verify_finite_failure, verify_ladder_failure, PropertyYVerdict, YEvidence};
use crate::witness::{verify_factorization, FactorizationWitness, WitnessDoc};

/// Closure samples drawn when re-checking an embedding.
const CLOSURE_SAMPLES: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "kebab-case")]
pub enum Certificate {
    PropertyYFailure { graph: GraphDoc, allow_empty_prefix: bool, evidence: YEvidence },
    /// The graph is the finite graph the witness lives in (for ladders, the
    /// truncation used).
    Factorization { graph: GraphDoc, witness: WitnessDoc },
    FdEmbedding { graph: GraphDoc, embedding: EmbeddingDoc },
}

fn finite(doc: &GraphDoc) -> Result<Arc<Graph>> {
    match doc {
        GraphDoc::Finite(spec) => Ok(Arc::new(validate_graph(spec.clone())?)),
        GraphDoc::Ladder(_) => Err(Error::Certificate("expected a finite graph".into())),
    }
}

fn finite_doc(g: &Graph) -> GraphDoc {
    GraphDoc::Finite(g.spec().clone())
}

impl Certificate {
    /// `None` when the verdict is positive (nothing to certify).
    pub fn property_y_failure(input: &GraphInput, verdict: &PropertyYVerdict) -> Option<Self> {
        if verdict.holds {
            return None;
        }
        Some(Certificate::PropertyYFailure {
            graph: input.to_doc(),
            allow_empty_prefix: verdict.allow_empty_prefix,
            evidence: verdict.evidence.clone(),
        })
    }

    pub fn factorization(w: &FactorizationWitness) -> Self {
        Certificate::Factorization { graph: finite_doc(w.target.graph()), witness: w.to_doc() }
    }

    pub fn embedding(e: &FdEmbedding) -> Self {
        Certificate::FdEmbedding { graph: finite_doc(e.element.graph()), embedding: e.to_doc() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::PropertyYFailure { .. } => "property-y-failure",
            Certificate::Factorization { .. } => "factorization",
            Certificate::FdEmbedding { .. } => "fd-embedding",
        }
    }

    pub fn verify(&self) -> Result<()> {
        match self {
            Certificate::PropertyYFailure { graph, allow_empty_prefix, evidence } => {
                match (GraphInput::from_doc(graph.clone())?, evidence) {
                    (GraphInput::Finite(g), YEvidence::FiniteFailure(f)) => {
                        verify_finite_failure(&g, f, *allow_empty_prefix)
                    }
                    (GraphInput::Ladder(preset), YEvidence::LadderBounded(f)) => {
                        let window = f.k + preset.table.len() + 8;
                        verify_ladder_failure(&preset, f, window)
                    }
                    _ => Err(Error::Certificate("evidence does not certify a failure for this graph".into())),
                }
            }
            Certificate::Factorization { graph, witness } => {
                let g = finite(graph)?;
                let w = FactorizationWitness::from_doc(witness, &g)?;
                if verify_factorization(&w) {
                    Ok(())
                } else {
                    Err(Error::Certificate("the pairs do not multiply out to the target".into()))
                }
            }
            Certificate::FdEmbedding { graph, embedding } => {
                let g = finite(graph)?;
                verify_embedding_doc(&g, embedding, CLOSURE_SAMPLES, 0)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}
