//! Concrete members `G_n` of a linear family, built by gluing copies of a
//! link graph onto a base, and the brute-force check of a family against them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::EmbeddingKind;
use crate::enumerator::{surface_polynomial, EnumerationError, MultiGraph, SurfaceKind};
use crate::poly::IntPolynomial;
use crate::recurrence::Family;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("{what} lists {len} vertices, expected {expected}")]
    RootCount { what: &'static str, len: usize, expected: usize },
    #[error("index n must be at least 1")]
    ZeroIndex,
    #[error("crosscap families have no chain check")]
    UnsupportedKind,
    #[error(transparent)]
    Graph(#[from] EnumerationError),
    #[error("n = {n}: coefficient of x^{power} is {expected} by enumeration but {actual} from the family")]
    Mismatch { n: usize, power: usize, expected: String, actual: String },
}

/// `G_1 = base`; `G_n` glues `link_left` of a fresh link onto the right roots of `G_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRule {
    pub base: MultiGraph,
    pub base_right: Vec<usize>,
    pub link: MultiGraph,
    pub link_left: Vec<usize>,
    pub link_right: Vec<usize>,
    /// Edges `[i, b]` added last, joining right root `i` to base vertex `b`
    /// (closes ring-like families).
    #[serde(default)]
    pub closing_edges: Vec<[usize; 2]>,
}

impl ChainRule {
    pub fn validate(&self) -> Result<(), ChainError> {
        let expect = |what, len: usize, expected: usize| {
            if len == expected {
                Ok(())
            } else {
                Err(ChainError::RootCount { what, len, expected })
            }
        };
        let r = self.base_right.len();
        expect("link_left", self.link_left.len(), r)?;
        expect("link_right", self.link_right.len(), r)?;
        let in_range = |g: &MultiGraph, vs: &[usize]| {
            vs.iter().find(|&&v| v >= g.vertex_count()).map_or(Ok(()), |&v| Err(EnumerationError::BadVertex(v)))
        };
        in_range(&self.base, &self.base_right)?;
        in_range(&self.link, &self.link_left)?;
        in_range(&self.link, &self.link_right)?;
        for &[i, b] in &self.closing_edges {
            if i >= r {
                return Err(EnumerationError::BadVertex(i).into());
            }
            in_range(&self.base, &[b])?;
        }
        Ok(())
    }

    pub fn build(&self, n: usize) -> Result<MultiGraph, ChainError> {
        if n == 0 {
            return Err(ChainError::ZeroIndex);
        }
        self.validate()?;
        let mut graph = self.base.clone();
        let mut right = self.base_right.clone();
        for _ in 1..n {
            let glue: Vec<(usize, usize)> = right.iter().copied().zip(self.link_left.iter().copied()).collect();
            let (next, map) = graph.amalgamate(&self.link, &glue)?;
            right = self.link_right.iter().map(|&v| map[v]).collect();
            graph = next;
        }
        if !self.closing_edges.is_empty() {
            let mut edges = graph.edges().to_vec();
            edges.extend(self.closing_edges.iter().map(|&[i, b]| (right[i], b)));
            graph = MultiGraph::new(graph.vertex_count(), edges)?;
        }
        Ok(graph)
    }
}

pub fn surface_of(kind: EmbeddingKind) -> Result<SurfaceKind, ChainError> {
    match kind {
        EmbeddingKind::Genus => Ok(SurfaceKind::Genus),
        EmbeddingKind::EulerGenus => Ok(SurfaceKind::Euler),
        EmbeddingKind::Crosscap => Err(ChainError::UnsupportedKind),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub polynomial: IntPolynomial,
}

/// Enumerates `G_1..=G_{n_max}` and compares each with the family's `P_n`.
pub fn oracle_verify(family: &Family, chain: &ChainRule, n_max: usize, budget: u64) -> Result<Vec<VerifyRow>, ChainError> {
    let surface = surface_of(family.embedding_kind())?;
    let predicted = family.polynomials(n_max);
    let mut rows = Vec::with_capacity(n_max);
    for (i, expected_from_family) in predicted.iter().enumerate() {
        let n = i + 1;
        let graph = chain.build(n)?;
        let enumerated = surface_polynomial(&graph, surface, budget)?;
        if let Some(power) = first_difference(&enumerated, expected_from_family) {
            return Err(ChainError::Mismatch {
                n,
                power,
                expected: enumerated.coeff(power).to_string(),
                actual: expected_from_family.coeff(power).to_string(),
            });
        }
        rows.push(VerifyRow { n, vertex_count: graph.vertex_count(), edge_count: graph.edge_count(), polynomial: enumerated });
    }
    Ok(rows)
}

pub fn first_difference(a: &IntPolynomial, b: &IntPolynomial) -> Option<usize> {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len).find(|&i| a.coeff(i) != b.coeff(i))
}
