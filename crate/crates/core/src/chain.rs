//! Chains of blocks glued one after another onto a base graph.
//!
//! A [`Chain`] starts from a base graph with a distinguished pair. Each
//! [`Block`] brings fresh vertices and edges, attaches along the current
//! pair and names the pair the next block will use. Evaluation folds the
//! base k-matching vector through one transfer matrix per block, so it never
//! needs the realized graph.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFragment};
use crate::oracle::k_vector_direct;
use crate::scalar::Count;
use crate::transfer::{build_transfer, AttachProfile, KVector, Pair, TransferMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub attach: Pair,
    pub out: Pair,
    pub vertices: Vec<String>,
    pub edges: Vec<Pair>,
}

impl Block {
    /// The block as a graph on its fresh vertices plus the attach pair.
    pub fn graph(&self) -> Result<Graph> {
        let (x, y) = (&self.attach.0, &self.attach.1);
        Graph::from_edges(
            [x, y].into_iter().chain(&self.vertices),
            self.edges.iter().map(|(u, v)| (u, v)),
        )
    }

    pub fn profile(&self) -> Result<AttachProfile> {
        AttachProfile::from_block_graph(&self.graph()?, self.attach.clone(), self.out.clone())
    }

    pub fn transfer<T: Count>(&self, k: usize) -> Result<TransferMatrix<T>> {
        build_transfer(&self.profile()?, k)
    }
}

/// JSON form of the base: a graph fragment plus its pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseFragment {
    pub vertices: Vec<String>,
    pub edges: Vec<Pair>,
    pub pair: Pair,
}

/// JSON form of a chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub base: BaseFragment,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub base: Graph,
    pub pair: Pair,
    pub blocks: Vec<Block>,
    /// Truncation bound stored with the chain, if any.
    pub k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DiagnosticKind {
    BasePairInvalid,
    AttachPairDegenerate,
    AttachMismatch,
    DuplicateLabel,
    UnknownEndpoint,
    SelfLoop,
    DuplicateEdge,
    AttachEdgeInBlock,
    OutEqualsAttach,
    OutPairDegenerate,
    OutVertexNotInBlock,
    InteriorDisconnected,
    NotTwoComponents,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    /// Index of the offending block; `None` for the base.
    pub block: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match self.block {
            Some(i) => write!(f, "{level}[{:?}] block {i}: {}", self.kind, self.message),
            None => write!(f, "{level}[{:?}] base: {}", self.kind, self.message),
        }
    }
}

/// How strictly [`Chain::validate`] reads the two-component requirement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    /// Structural errors only; a disconnected block interior is a warning.
    #[default]
    Lenient,
    /// Additionally require that removing each attach pair from the graph
    /// built so far leaves exactly two components, and treat every warning
    /// as an error.
    Strict,
}

impl Chain {
    pub fn from_file(file: ChainFile) -> Result<Self> {
        let base = Graph::from_edges(
            file.base.vertices.iter(),
            file.base.edges.iter().map(|(u, v)| (u, v)),
        )?;
        Ok(Chain {
            base,
            pair: file.base.pair,
            blocks: file.blocks,
            k: file.k,
        })
    }

    pub fn to_file(&self) -> ChainFile {
        let GraphFragment { vertices, edges } = self.base.to_fragment();
        ChainFile {
            k: self.k,
            base: BaseFragment {
                vertices,
                edges,
                pair: self.pair.clone(),
            },
            blocks: self.blocks.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("chain serializes");
        s.push('\n');
        s
    }

    /// Vertex count of the realized graph.
    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count() + self.blocks.iter().map(|b| b.vertices.len()).sum::<usize>()
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count() + self.blocks.iter().map(|b| b.edges.len()).sum::<usize>()
    }

    /// Pair the final k-matching vector is taken over.
    pub fn out_pair(&self) -> &Pair {
        self.blocks.last().map(|b| &b.out).unwrap_or(&self.pair)
    }

    /// Default truncation: the stored bound, else `floor(n / 2)`.
    pub fn default_k(&self) -> usize {
        self.k.unwrap_or(self.vertex_count() / 2)
    }

    pub fn validate(&self, strictness: Strictness) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let mut push = |severity, kind, block, message: String| {
            diags.push(Diagnostic {
                severity,
                kind,
                block,
                message,
            })
        };

        let (p, q) = (&self.pair.0, &self.pair.1);
        if p == q || !self.base.contains(p) || !self.base.contains(q) {
            push(
                Severity::Error,
                DiagnosticKind::BasePairInvalid,
                None,
                format!("base pair ({p}, {q}) must be two distinct base vertices"),
            );
        }

        let mut labels: HashSet<&str> = self.base.labels().iter().map(String::as_str).collect();
        let mut current = &self.pair;
        for (i, block) in self.blocks.iter().enumerate() {
            let at = Some(i);
            let (x, y) = (&block.attach.0, &block.attach.1);
            let (a, b) = (&block.out.0, &block.out.1);
            if &block.attach != current {
                push(
                    Severity::Error,
                    DiagnosticKind::AttachMismatch,
                    at,
                    format!(
                        "`{}` attaches at ({x}, {y}) but the current pair is ({}, {})",
                        block.name, current.0, current.1
                    ),
                );
            }
            if x == y {
                push(
                    Severity::Error,
                    DiagnosticKind::AttachPairDegenerate,
                    at,
                    format!("attach pair repeats `{x}`"),
                );
            }
            let mut fresh: HashSet<&str> = HashSet::new();
            for v in &block.vertices {
                let reused = labels.contains(v.as_str());
                if !fresh.insert(v) || reused {
                    push(
                        Severity::Error,
                        DiagnosticKind::DuplicateLabel,
                        at,
                        format!("vertex `{v}` is not a fresh label"),
                    );
                }
            }
            let is_attach = |v: &String| v == x || v == y;
            let mut seen_edges = HashSet::new();
            for (u, v) in &block.edges {
                if u == v {
                    push(
                        Severity::Error,
                        DiagnosticKind::SelfLoop,
                        at,
                        format!("self-loop on `{u}`"),
                    );
                    continue;
                }
                if is_attach(u) && is_attach(v) {
                    push(
                        Severity::Error,
                        DiagnosticKind::AttachEdgeInBlock,
                        at,
                        format!("edge {{{u}, {v}}} joins the attach pair; it belongs to the earlier graph"),
                    );
                    continue;
                }
                for w in [u, v] {
                    if !is_attach(w) && !fresh.contains(w.as_str()) {
                        push(
                            Severity::Error,
                            DiagnosticKind::UnknownEndpoint,
                            at,
                            format!("edge endpoint `{w}` is neither a block vertex nor an attach vertex"),
                        );
                    }
                }
                let key = if u <= v { (u, v) } else { (v, u) };
                if !seen_edges.insert(key) {
                    push(
                        Severity::Error,
                        DiagnosticKind::DuplicateEdge,
                        at,
                        format!("edge {{{u}, {v}}} listed twice"),
                    );
                }
            }
            if a == b {
                push(
                    Severity::Error,
                    DiagnosticKind::OutPairDegenerate,
                    at,
                    format!("output pair repeats `{a}`"),
                );
            } else if is_attach(a) && is_attach(b) {
                push(
                    Severity::Error,
                    DiagnosticKind::OutEqualsAttach,
                    at,
                    format!("output pair ({a}, {b}) equals the attach pair as a set"),
                );
            }
            for w in [a, b] {
                if !is_attach(w) && !fresh.contains(w.as_str()) {
                    push(
                        Severity::Error,
                        DiagnosticKind::OutVertexNotInBlock,
                        at,
                        format!("output vertex `{w}` is not in the block"),
                    );
                }
            }
            labels.extend(fresh);
            current = &block.out;
        }

        let structural_errors = diags.iter().any(|d| d.severity == Severity::Error);
        if !structural_errors {
            self.connectivity_checks(strictness, &mut diags);
        }
        if strictness == Strictness::Strict {
            for d in &mut diags {
                d.severity = Severity::Error;
            }
        }
        diags
    }

    fn connectivity_checks(&self, strictness: Strictness, diags: &mut Vec<Diagnostic>) {
        let mut realized = (strictness == Strictness::Strict).then(|| self.base.clone());
        for (i, block) in self.blocks.iter().enumerate() {
            let interior = block
                .graph()
                .and_then(|h| h.delete_vertices([&block.attach.0, &block.attach.1]));
            if let Ok(interior) = interior {
                if !interior.is_connected() {
                    diags.push(Diagnostic {
                        severity: Severity::Warning,
                        kind: DiagnosticKind::InteriorDisconnected,
                        block: Some(i),
                        message: format!("interior of `{}` is disconnected", block.name),
                    });
                }
            }
            if let Some(g) = realized.as_mut() {
                if g.glue_in_place(&block.vertices, block.edges.iter().map(|(u, v)| (u, v)))
                    .is_err()
                {
                    // structural problems are reported above
                    return;
                }
                let cut = g
                    .delete_vertices([&block.attach.0, &block.attach.1])
                    .map(|rest| rest.component_ids().1);
                if let Ok(parts) = cut {
                    if parts != 2 {
                        diags.push(Diagnostic {
                            severity: Severity::Warning,
                            kind: DiagnosticKind::NotTwoComponents,
                            block: Some(i),
                            message: format!(
                                "removing ({}, {}) leaves {parts} component(s), not two",
                                block.attach.0, block.attach.1
                            ),
                        });
                    }
                }
            }
        }
    }

    fn ensure_valid(&self) -> Result<()> {
        let errors: Vec<Diagnostic> = self
            .validate(Strictness::Lenient)
            .into_iter()
            .filter(|d| d.severity == Severity::Error)
            .collect();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidChain(errors))
        }
    }

    /// Materializes the amalgamated graph.
    pub fn realize(&self) -> Result<Graph> {
        self.ensure_valid()?;
        let mut g = self.base.clone();
        for block in &self.blocks {
            g.glue_in_place(&block.vertices, block.edges.iter().map(|(u, v)| (u, v)))?;
        }
        Ok(g)
    }

    /// k-matching vector of the base graph over the base pair.
    pub fn base_vector<T: Count>(&self, k: usize) -> Result<KVector<T>> {
        k_vector_direct(&self.base, &self.pair.0, &self.pair.1, k)
    }

    /// One transfer matrix per block, built in parallel.
    pub fn transfer_matrices<T: Count>(&self, k: usize) -> Result<Vec<TransferMatrix<T>>> {
        self.ensure_valid()?;
        self.blocks.par_iter().map(|b| b.transfer(k)).collect()
    }

    /// Product of all block matrices, last block leftmost.
    pub fn composed_transfer<T: Count>(&self, k: usize) -> Result<TransferMatrix<T>> {
        let matrices = self.transfer_matrices(k)?;
        matrices
            .into_par_iter()
            .map(Ok)
            .reduce_with(|earlier, later| later?.compose(&earlier?))
            .unwrap_or_else(|| Ok(TransferMatrix::identity(k)))
    }

    /// k-matching vector of the realized graph over [`Chain::out_pair`],
    /// computed by folding the base vector through every block.
    /// `k` defaults to [`Chain::default_k`].
    pub fn evaluate<T: Count>(&self, k: Option<usize>) -> Result<KVector<T>> {
        let k = k.unwrap_or_else(|| self.default_k());
        let matrices = self.transfer_matrices(k)?;
        fold(self.base_vector(k)?, &matrices)
    }

    /// Total number of matchings of the realized graph.
    pub fn hosoya<T: Count>(&self) -> Result<T> {
        Ok(self.evaluate::<T>(Some(self.vertex_count() / 2))?.hosoya())
    }
}

/// Applies `matrices` left to right.
pub fn fold<T: Count>(start: KVector<T>, matrices: &[TransferMatrix<T>]) -> Result<KVector<T>> {
    matrices.iter().try_fold(start, |v, m| m.apply(&v))
}
