//! JSON documents: family and graph inputs, and the reports emitted for them.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::{ConvergenceRow, CrosscapGap, DiscreteLimit, EmbeddingKind, MomentSummary};
use crate::chain::{surface_of, ChainError, ChainRule, VerifyRow};
use crate::enumerator::{partial_polynomials, EnumerationError, MultiGraph, Partition};
use crate::poly::{bigint_str, rational_str, IntPolynomial, Rational};
use crate::recurrence::{Family, FamilyError, FamilySpec, ProductionMatrix, RecurrenceSpec};
use crate::spectral::LimitReport;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {source}")]
    Family { field: &'static str, source: FamilyError },
    #[error("seed_graph: {0}")]
    Seed(#[from] EnumerationError),
    #[error("{0}")]
    Chain(#[from] ChainError),
    #[error("give exactly one of `matrix` and `recurrence`")]
    FamilyForm,
    #[error("matrix families need `initial_vector` or `seed_graph`")]
    MissingInitialVector,
    #[error("seed_graph partition has {classes} classes but the matrix is {k}×{k}")]
    SeedDimension { classes: usize, k: usize },
    #[error("no `chain` section: cannot build the family members")]
    MissingChain,
}

/// Graph input; `roots` selects the shared-face split unless `partition` is given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Partition>,
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn graph(&self) -> Result<MultiGraph, EnumerationError> {
        MultiGraph::new(self.vertex_count, self.edges.iter().map(|&[u, v]| (u, v)).collect())
    }

    pub fn partition(&self) -> Partition {
        match (&self.partition, self.roots) {
            (Some(p), _) => p.clone(),
            (None, Some([u, v])) => Partition::SharedFace { u, v },
            (None, None) => Partition::Whole,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceDocument {
    /// `b_1, …, b_k`
    pub coefficients: Vec<IntPolynomial>,
    /// `P_1, P_2, …` (at least k).
    pub seeds: Vec<IntPolynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub kind: EmbeddingKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<IntPolynomial>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_vector: Option<Vec<IntPolynomial>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spider_vector: Option<Vec<IntPolynomial>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_graph: Option<GraphDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<RecurrenceDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainRule>,
}

impl FamilyDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the family; seeding from `seed_graph` runs the enumerator.
    pub fn family(&self, budget: u64) -> Result<Family, DocumentError> {
        match (&self.matrix, &self.recurrence) {
            (Some(rows), None) => {
                let matrix = ProductionMatrix::new(rows.clone()).map_err(|source| DocumentError::Family { field: "matrix", source })?;
                let initial = match (&self.initial_vector, &self.seed_graph) {
                    (Some(v), _) => v.clone(),
                    (None, Some(doc)) => self.seed_vector(doc, matrix.dim(), budget)?,
                    (None, None) => return Err(DocumentError::MissingInitialVector),
                };
                let spec = FamilySpec::new(self.name.clone(), self.kind, matrix, initial, self.spider_vector.clone())
                    .map_err(|source| DocumentError::Family { field: "initial_vector", source })?;
                Ok(Family::Transfer(spec))
            }
            (None, Some(rec)) => {
                let spec = RecurrenceSpec::new(self.name.clone(), self.kind, rec.coefficients.clone(), rec.seeds.clone())
                    .map_err(|source| DocumentError::Family { field: "recurrence", source })?;
                Ok(Family::Recurrence(spec))
            }
            _ => Err(DocumentError::FamilyForm),
        }
    }

    fn seed_vector(&self, doc: &GraphDocument, k: usize, budget: u64) -> Result<Vec<IntPolynomial>, DocumentError> {
        let partition = doc.partition();
        if partition.class_count() != k {
            return Err(DocumentError::SeedDimension { classes: partition.class_count(), k });
        }
        let surface = surface_of(self.kind)?;
        Ok(partial_polynomials(&doc.graph()?, &partition, surface, budget)?)
    }

    pub fn chain(&self) -> Result<&ChainRule, DocumentError> {
        self.chain.as_ref().ok_or(DocumentError::MissingChain)
    }
}

/// Polynomial with its exact distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialEntry {
    pub n: usize,
    pub polynomial: IntPolynomial,
    #[serde(with = "bigint_str")]
    pub total: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational_vec")]
    pub distribution: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<MomentSummary>,
}

mod opt_rational_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::poly::Rational;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "crate::poly::rational_vec_str")] Vec<Rational>);

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|v| Wrap(v.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub cycle_rank: usize,
    #[serde(with = "bigint_str")]
    pub embedding_count: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<IntPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<IntPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crosscap: Option<IntPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partials: Option<Vec<IntPolynomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub genus: IntPolynomial,
    pub crosscap: IntPolynomial,
    pub euler: IntPolynomial,
    #[serde(flatten)]
    pub gap: CrosscapGap,
    pub cycle_rank: usize,
    /// `E(1) = Γ(1)·2^β`
    pub beta_check: bool,
    pub gap_within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub name: String,
    #[serde(with = "rational_str")]
    pub e: Rational,
    #[serde(with = "rational_str")]
    pub v: Rational,
    pub rows: Vec<ConvergenceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub name: String,
    pub n_max: usize,
    pub rows: Vec<VerifyRow>,
}

/// Everything the command line emits, tagged by `report`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum ReportDocument {
    Analysis(LimitReport),
    Evolution { name: String, kind: EmbeddingKind, entries: Vec<PolynomialEntry> },
    Convergence(ConvergenceReport),
    DiscreteLimit { name: String, limit: DiscreteLimit },
    Enumeration(EnumerationReport),
    CrosscapGap(GapReport),
    OracleVerify(VerifyReport),
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}
