//! Linear graph families: production-matrix evolution and k-th order
//! recurrences over polynomial coefficients.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::EmbeddingKind;
use crate::poly::{IntPolynomial, Rational};
use crate::spectral::CharPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("production matrix is empty")]
    EmptyMatrix,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix entry ({row}, {col}) has a negative coefficient")]
    NegativeEntry { row: usize, col: usize },
    #[error("{what} has length {len}, expected {expected}")]
    LengthMismatch { what: &'static str, len: usize, expected: usize },
    #[error("{what} entry {index} has a negative coefficient")]
    NegativeVectorEntry { what: &'static str, index: usize },
    #[error("initial vector is identically zero")]
    ZeroInitialVector,
    #[error("S_H(x) = 0 is impossible for a connected graph")]
    ZeroSamePartial,
    #[error("q(x) = 0 is impossible for a connected graph")]
    ZeroLadderQ,
    #[error("recurrence has no coefficients")]
    EmptyRecurrence,
    #[error("last recurrence coefficient is zero")]
    ZeroLastCoefficient,
    #[error("recurrence of order {order} needs at least {order} seeds, got {seeds}")]
    TooFewSeeds { order: usize, seeds: usize },
    #[error("index n must be at least 1")]
    ZeroIndex,
}

/// Square matrix `M(x)` of polynomials with nonnegative coefficients; acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<IntPolynomial>>", into = "Vec<Vec<IntPolynomial>>")]
pub struct ProductionMatrix {
    rows: Vec<Vec<IntPolynomial>>,
}

impl TryFrom<Vec<Vec<IntPolynomial>>> for ProductionMatrix {
    type Error = FamilyError;

    fn try_from(rows: Vec<Vec<IntPolynomial>>) -> Result<Self, FamilyError> {
        ProductionMatrix::new(rows)
    }
}

impl From<ProductionMatrix> for Vec<Vec<IntPolynomial>> {
    fn from(m: ProductionMatrix) -> Self {
        m.rows
    }
}

impl ProductionMatrix {
    pub fn new(rows: Vec<Vec<IntPolynomial>>) -> Result<Self, FamilyError> {
        let k = rows.len();
        if k == 0 {
            return Err(FamilyError::EmptyMatrix);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != k {
                return Err(FamilyError::NotSquare { row, len: r.len(), expected: k });
            }
            if let Some(col) = r.iter().position(|p| !p.has_nonnegative_coeffs()) {
                return Err(FamilyError::NegativeEntry { row, col });
            }
        }
        Ok(ProductionMatrix { rows })
    }

    pub fn from_i64_rows(rows: &[&[&[i64]]]) -> Result<Self, FamilyError> {
        Self::new(rows.iter().map(|r| r.iter().map(|c| IntPolynomial::from_i64s(c)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &IntPolynomial {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<IntPolynomial>] {
        &self.rows
    }

    pub fn at_one(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.iter().map(|p| Rational::from_integer(p.eval_at_one())).collect()).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.rows.iter().flatten().all(IntPolynomial::is_constant)
    }

    pub fn apply(&self, v: &[IntPolynomial]) -> Vec<IntPolynomial> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(m, p)| m * p).sum()).collect()
    }
}

/// `[[D+S, D], [0, S]]`
pub fn pathlike_matrix(d: &IntPolynomial, s: &IntPolynomial) -> Result<ProductionMatrix, FamilyError> {
    if s.is_zero() {
        return Err(FamilyError::ZeroSamePartial);
    }
    ProductionMatrix::new(vec![vec![d + s, d.clone()], vec![IntPolynomial::zero(), s.clone()]])
}

/// `p(x)·[[4x,2x,0],[0,0,0],[0,2x,4x]] + q(x)·[[0,0,0],[0,2,4],[4x,2x,0]]`
pub fn ladderlike_matrix(p: &IntPolynomial, q: &IntPolynomial) -> Result<ProductionMatrix, FamilyError> {
    if q.is_zero() {
        return Err(FamilyError::ZeroLadderQ);
    }
    let m = |c: i64, power: usize| IntPolynomial::monomial(c, power);
    let z = IntPolynomial::zero;
    let rows = vec![
        vec![p * &m(4, 1), p * &m(2, 1), z()],
        vec![z(), q * &m(2, 0), q * &m(4, 0)],
        vec![q * &m(4, 1), &(p * &m(2, 1)) + &(q * &m(2, 1)), p * &m(4, 1)],
    ];
    ProductionMatrix::new(rows)
}

fn check_vector(what: &'static str, v: &[IntPolynomial], k: usize) -> Result<(), FamilyError> {
    if v.len() != k {
        return Err(FamilyError::LengthMismatch { what, len: v.len(), expected: k });
    }
    if let Some(index) = v.iter().position(|p| !p.has_nonnegative_coeffs()) {
        return Err(FamilyError::NegativeVectorEntry { what, index });
    }
    Ok(())
}

/// `V_{G_n} = M^{n−1}·V_{G_1}` and total `V·V_{G_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    name: String,
    kind: EmbeddingKind,
    matrix: ProductionMatrix,
    initial_vector: Vec<IntPolynomial>,
    spider_vector: Vec<IntPolynomial>,
}

impl FamilySpec {
    pub fn new(
        name: impl Into<String>,
        kind: EmbeddingKind,
        matrix: ProductionMatrix,
        initial_vector: Vec<IntPolynomial>,
        spider_vector: Option<Vec<IntPolynomial>>,
    ) -> Result<Self, FamilyError> {
        let k = matrix.dim();
        check_vector("initial_vector", &initial_vector, k)?;
        if initial_vector.iter().all(IntPolynomial::is_zero) {
            return Err(FamilyError::ZeroInitialVector);
        }
        let spider_vector = spider_vector.unwrap_or_else(|| vec![IntPolynomial::one(); k]);
        check_vector("spider_vector", &spider_vector, k)?;
        Ok(FamilySpec { name: name.into(), kind, matrix, initial_vector, spider_vector })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn matrix(&self) -> &ProductionMatrix {
        &self.matrix
    }

    pub fn initial_vector(&self) -> &[IntPolynomial] {
        &self.initial_vector
    }

    pub fn spider_vector(&self) -> &[IntPolynomial] {
        &self.spider_vector
    }

    pub fn with_matrix(&self, matrix: ProductionMatrix) -> Result<Self, FamilyError> {
        FamilySpec::new(self.name.clone(), self.kind, matrix, self.initial_vector.clone(), Some(self.spider_vector.clone()))
    }

    pub fn evolve_vector(&self, n: usize) -> Result<Vec<IntPolynomial>, FamilyError> {
        if n == 0 {
            return Err(FamilyError::ZeroIndex);
        }
        Ok((1..n).fold(self.initial_vector.clone(), |v, _| self.matrix.apply(&v)))
    }

    fn total_of(&self, v: &[IntPolynomial]) -> IntPolynomial {
        self.spider_vector.iter().zip(v).map(|(s, p)| s * p).sum()
    }

    pub fn total_polynomial(&self, n: usize) -> Result<IntPolynomial, FamilyError> {
        Ok(self.total_of(&self.evolve_vector(n)?))
    }

    /// Totals for `n = 1..=n_max`.
    pub fn totals(&self, n_max: usize) -> Vec<IntPolynomial> {
        let mut v = self.initial_vector.clone();
        let mut out = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            if n > 1 {
                v = self.matrix.apply(&v);
            }
            out.push(self.total_of(&v));
        }
        out
    }
}

/// `P_n = b_1·P_{n−1} + … + b_k·P_{n−k}` beyond the listed seeds.
///
/// A recurrence read off a singular matrix may carry more seeds than its
/// order; the extra leading terms are returned as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    name: String,
    kind: EmbeddingKind,
    coefficients: Vec<IntPolynomial>,
    seeds: Vec<IntPolynomial>,
}

impl RecurrenceSpec {
    pub fn new(
        name: impl Into<String>,
        kind: EmbeddingKind,
        coefficients: Vec<IntPolynomial>,
        seeds: Vec<IntPolynomial>,
    ) -> Result<Self, FamilyError> {
        let order = coefficients.len();
        match coefficients.last() {
            None => return Err(FamilyError::EmptyRecurrence),
            Some(b) if b.is_zero() => return Err(FamilyError::ZeroLastCoefficient),
            _ => {}
        }
        if seeds.len() < order {
            return Err(FamilyError::TooFewSeeds { order, seeds: seeds.len() });
        }
        Ok(RecurrenceSpec { name: name.into(), kind, coefficients, seeds })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[IntPolynomial] {
        &self.coefficients
    }

    pub fn seeds(&self) -> &[IntPolynomial] {
        &self.seeds
    }

    pub fn with_seeds(&self, seeds: Vec<IntPolynomial>) -> Result<Self, FamilyError> {
        RecurrenceSpec::new(self.name.clone(), self.kind, self.coefficients.clone(), seeds)
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.coefficients.iter().all(IntPolynomial::is_constant)
    }

    /// `P_1..=P_{n_max}`.
    pub fn polynomials(&self, n_max: usize) -> Vec<IntPolynomial> {
        let mut out: Vec<IntPolynomial> = self.seeds.iter().take(n_max).cloned().collect();
        while out.len() < n_max {
            let len = out.len();
            let next = self.coefficients.iter().enumerate().map(|(j, b)| b * &out[len - 1 - j]).sum();
            out.push(next);
        }
        out
    }

    pub fn evolve(&self, n: usize) -> Result<IntPolynomial, FamilyError> {
        if n == 0 {
            return Err(FamilyError::ZeroIndex);
        }
        Ok(self.polynomials(n).pop().expect("n >= 1"))
    }

    pub fn char_poly(&self) -> CharPoly {
        CharPoly::from_recurrence(&self.coefficients)
    }
}

/// Recurrence satisfied by the totals of a matrix family (Cayley–Hamilton).
///
/// Trailing zero coefficients (a factor `λ^m` of the characteristic
/// polynomial) are dropped; the seeds are always the first `k` totals.
pub fn recurrence_from_matrix(spec: &FamilySpec) -> RecurrenceSpec {
    let k = spec.matrix.dim();
    let mut b = CharPoly::from_matrix(&spec.matrix).recurrence_coefficients();
    while b.last().is_some_and(IntPolynomial::is_zero) {
        b.pop();
    }
    let seeds = spec.totals(k);
    if b.is_empty() {
        // nilpotent M(x): totals vanish after n = k
        b.push(IntPolynomial::zero());
        let mut r = RecurrenceSpec { name: spec.name.clone(), kind: spec.kind, coefficients: b, seeds };
        r.seeds.truncate(k);
        return r;
    }
    RecurrenceSpec::new(spec.name.clone(), spec.kind, b, seeds).expect("nonzero last coefficient and k seeds")
}

/// A family given either by its production matrix or by its recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Transfer(FamilySpec),
    Recurrence(RecurrenceSpec),
}

impl Family {
    pub fn name(&self) -> &str {
        match self {
            Family::Transfer(s) => s.name(),
            Family::Recurrence(r) => r.name(),
        }
    }

    pub fn embedding_kind(&self) -> EmbeddingKind {
        match self {
            Family::Transfer(s) => s.kind(),
            Family::Recurrence(r) => r.kind(),
        }
    }

    /// `P_1..=P_{n_max}`.
    pub fn polynomials(&self, n_max: usize) -> Vec<IntPolynomial> {
        match self {
            Family::Transfer(s) => s.totals(n_max),
            Family::Recurrence(r) => r.polynomials(n_max),
        }
    }

    pub fn polynomial(&self, n: usize) -> Result<IntPolynomial, FamilyError> {
        match self {
            Family::Transfer(s) => s.total_polynomial(n),
            Family::Recurrence(r) => r.evolve(n),
        }
    }

    pub fn recurrence(&self) -> RecurrenceSpec {
        match self {
            Family::Transfer(s) => recurrence_from_matrix(s),
            Family::Recurrence(r) => r.clone(),
        }
    }

    pub fn char_poly(&self) -> CharPoly {
        match self {
            Family::Transfer(s) => CharPoly::from_matrix(s.matrix()),
            Family::Recurrence(r) => r.char_poly(),
        }
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.recurrence().has_constant_coefficients()
    }
}

/// `P_n(1)` for `n = 1..=n_max`.
pub fn totals_at_one(family: &Family, n_max: usize) -> Vec<BigInt> {
    family.polynomials(n_max).iter().map(IntPolynomial::eval_at_one).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational_int;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn ladder_euler() -> ProductionMatrix {
        ProductionMatrix::from_i64_rows(&[&[&[2], &[4]], &[&[0, 2, 4], &[0, 4]]]).unwrap()
    }

    #[test]
    fn matrix_validation() {
        assert_eq!(ProductionMatrix::new(vec![]), Err(FamilyError::EmptyMatrix));
        assert_eq!(
            ProductionMatrix::new(vec![vec![p(&[1]), p(&[1])], vec![p(&[1])]]),
            Err(FamilyError::NotSquare { row: 1, len: 1, expected: 2 })
        );
        assert_eq!(ProductionMatrix::new(vec![vec![p(&[1, -1])]]), Err(FamilyError::NegativeEntry { row: 0, col: 0 }));
    }

    #[test]
    fn evolve_examples() {
        let spec = FamilySpec::new("ladder", EmbeddingKind::EulerGenus, ladder_euler(), vec![p(&[1]), p(&[0, 1])], None).unwrap();
        assert_eq!(spec.evolve_vector(1).unwrap(), vec![p(&[1]), p(&[0, 1])]);
        let a = p(&[3, 0, 1]);
        let b = p(&[0, 5]);
        assert_eq!(spec.matrix().apply(&[a.clone(), b.clone()])[0], &(&a * &p(&[2])) + &(&b * &p(&[4])));
        assert_eq!(spec.evolve_vector(0), Err(FamilyError::ZeroIndex));
        let totals = totals_at_one(&Family::Transfer(spec), 6);
        for w in totals.windows(2) {
            assert_eq!(&w[0] * BigInt::from(8), w[1]);
        }
    }

    #[test]
    fn spider_vector_weights_partials() {
        let m = ProductionMatrix::from_i64_rows(&[&[&[1], &[0]], &[&[0], &[1]]]).unwrap();
        let spec = FamilySpec::new("id", EmbeddingKind::Genus, m, vec![p(&[1]), p(&[0, 1])], Some(vec![p(&[2]), p(&[0, 1])])).unwrap();
        assert_eq!(spec.total_polynomial(3).unwrap(), p(&[2, 0, 1]));
        assert!(matches!(
            FamilySpec::new("bad", EmbeddingKind::Genus, ladder_euler(), vec![p(&[1])], None),
            Err(FamilyError::LengthMismatch { .. })
        ));
        assert_eq!(
            FamilySpec::new("zero", EmbeddingKind::Genus, ladder_euler(), vec![p(&[]), p(&[])], None),
            Err(FamilyError::ZeroInitialVector)
        );
    }

    #[test]
    fn one_by_one_recurrence() {
        let m = ProductionMatrix::new(vec![vec![p(&[1, 3])]]).unwrap();
        let spec = FamilySpec::new("c", EmbeddingKind::Genus, m, vec![p(&[2])], None).unwrap();
        let r = recurrence_from_matrix(&spec);
        assert_eq!(r.coefficients(), &[p(&[1, 3])]);
        assert_eq!(r.seeds(), &[p(&[2])]);
    }

    #[test]
    fn pathlike_examples() {
        let id = pathlike_matrix(&IntPolynomial::zero(), &p(&[1])).unwrap();
        assert_eq!(id.rows(), &[vec![p(&[1]), p(&[])], vec![p(&[]), p(&[1])]]);
        let (d, s) = (p(&[1, 2]), p(&[3, 0, 1]));
        let m = pathlike_matrix(&d, &s).unwrap();
        assert_eq!(m.entry(0, 0), &(&d + &s));
        assert_eq!(m.entry(1, 0), &IntPolynomial::zero());
        assert_eq!(pathlike_matrix(&d, &IntPolynomial::zero()), Err(FamilyError::ZeroSamePartial));

        // b1 = trace, b2 = −det
        let spec = FamilySpec::new("path", EmbeddingKind::Genus, m, vec![d.clone(), s.clone()], None).unwrap();
        let r = recurrence_from_matrix(&spec);
        assert_eq!(r.coefficients()[0], &(&d + &s) + &s);
        assert_eq!(r.coefficients()[1], -(&(&d + &s) * &s));
    }

    #[test]
    fn ladderlike_examples() {
        let m = ladderlike_matrix(&IntPolynomial::zero(), &p(&[1])).unwrap();
        assert_eq!(m.rows(), &[vec![p(&[]), p(&[]), p(&[])], vec![p(&[]), p(&[2]), p(&[4])], vec![p(&[0, 4]), p(&[0, 2]), p(&[])]]);
        let (pp, q) = (p(&[1, 1]), p(&[0, 2]));
        let ones = ladderlike_matrix(&pp, &q).unwrap().at_one();
        let sums: Vec<Rational> = (0..3).map(|col| ones.iter().map(|r| r[col].clone()).sum()).collect();
        assert_eq!(sums, vec![rational_int(4 * (2 + 2)); 3]);
        assert_eq!(ladderlike_matrix(&pp, &IntPolynomial::zero()), Err(FamilyError::ZeroLadderQ));
    }

    #[test]
    fn recurrence_seeds_and_unrolling() {
        let b = vec![p(&[0, 20]), p(&[0, 24, -64]), p(&[0, 0, 0, -384])];
        let seeds = vec![p(&[2]), p(&[2, 30]), p(&[2, 350, 160])];
        let r = RecurrenceSpec::new("claw", EmbeddingKind::Genus, b.clone(), seeds.clone()).unwrap();
        for n in 1..=3 {
            assert_eq!(r.evolve(n).unwrap(), seeds[n - 1]);
        }
        let expected = &(&(&b[0] * &seeds[2]) + &(&b[1] * &seeds[1])) + &(&b[2] * &seeds[0]);
        assert_eq!(r.evolve(4).unwrap(), expected);
        assert_eq!(
            RecurrenceSpec::new("x", EmbeddingKind::Genus, vec![p(&[1]), p(&[])], vec![p(&[1]), p(&[1])]),
            Err(FamilyError::ZeroLastCoefficient)
        );
        assert_eq!(
            RecurrenceSpec::new("x", EmbeddingKind::Genus, vec![p(&[1]), p(&[1])], vec![p(&[1])]),
            Err(FamilyError::TooFewSeeds { order: 2, seeds: 1 })
        );
    }

    #[test]
    fn singular_matrix_keeps_all_seeds() {
        // ladder-like matrices are singular: det M(x) = 0
        let spec = FamilySpec::new(
            "ladder",
            EmbeddingKind::Genus,
            ladderlike_matrix(&p(&[1]), &p(&[1])).unwrap(),
            vec![p(&[1]), p(&[0, 1]), p(&[1])],
            None,
        )
        .unwrap();
        let r = recurrence_from_matrix(&spec);
        assert_eq!(r.order(), 2);
        assert_eq!(r.seeds().len(), 3);
        assert_eq!(r.polynomials(12), spec.totals(12));
    }
}
