//! Characteristic polynomial, dominant root, primitivity and the limit
//! parameters `e`, `v` of a family.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::EmbeddingKind;
use crate::poly::{opt_rational_str, rational_str, BiPoly, IntPolynomial, RatPolynomial, Rational};
use crate::recurrence::{Family, ProductionMatrix};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("column sums at x = 1 differ: {sums:?}")]
    ColumnSumMismatch { sums: Vec<String> },
    #[error("entry ({row}, {col}) of M(1) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("{d} is not a root of F(1, λ)")]
    NotARoot { d: String },
    #[error("{d} is a repeated root of F(1, λ)")]
    NotSimple { d: String },
    #[error("dominance fails: D − max|other roots| = {margin:e}, tolerance {tol:e}")]
    DominanceFails { margin: f64, tol: f64 },
    #[error("root approximations could not be isolated")]
    RootsNotIsolated,
    #[error("F_λ(1, D) = 0")]
    SingularPoint,
    #[error("dominant root D must be positive, got {0}")]
    NonpositiveDominant(String),
    #[error("largest root of F(1, λ) ≈ {approx} is not an integer")]
    NoIntegerDominantRoot { approx: f64 },
}

/// `F(x, λ)`, monic in λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    f: BiPoly,
}

impl CharPoly {
    /// `det(λI − M(x))` by Laplace expansion over column subsets.
    pub fn from_matrix(m: &ProductionMatrix) -> Self {
        let k = m.dim();
        let entry = |row: usize, col: usize| {
            let minus = BiPoly::from_x(-m.entry(row, col));
            if row == col {
                &BiPoly::lambda() + &minus
            } else {
                minus
            }
        };
        // dp[mask]: signed sum over assignments of the first |mask| rows to the columns in mask
        let mut dp = vec![BiPoly::zero(); 1 << k];
        dp[0] = BiPoly::from_x(IntPolynomial::one());
        for mask in 0usize..(1 << k) {
            if dp[mask].is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == k {
                continue;
            }
            for col in 0..k {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let a = entry(row, col);
                if a.is_zero() {
                    continue;
                }
                let term = &dp[mask] * &a;
                let above = (mask >> col).count_ones();
                let next = mask | (1 << col);
                dp[next] = if above % 2 == 0 { &dp[next] + &term } else { &dp[next] - &term };
            }
        }
        CharPoly { f: dp.pop().expect("nonempty table") }
    }

    /// `λ^k − b_1 λ^{k−1} − … − b_k`
    pub fn from_recurrence(b: &[IntPolynomial]) -> Self {
        let k = b.len();
        let mut coeffs = vec![IntPolynomial::zero(); k + 1];
        coeffs[k] = IntPolynomial::one();
        for (j, bj) in b.iter().enumerate() {
            coeffs[k - 1 - j] = -bj;
        }
        CharPoly { f: BiPoly::new(coeffs) }
    }

    pub fn bipoly(&self) -> &BiPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.lambda_degree().unwrap_or(0)
    }

    /// `b_1, …, b_k`
    pub fn recurrence_coefficients(&self) -> Vec<IntPolynomial> {
        let k = self.degree();
        (1..=k).map(|j| -&self.f.lambda_coeff(k - j)).collect()
    }

    pub fn at_x(&self, x: &Rational) -> RatPolynomial {
        self.f.at_x(x)
    }

    pub fn at_one(&self) -> RatPolynomial {
        self.f.at_x(&Rational::from_integer(1.into()))
    }

    pub fn eval(&self, x: &Rational, lam: &Rational) -> Rational {
        self.f.eval(x, lam)
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.f.fmt(f)
    }
}

/// The constant `D` shared by all column sums of `M(1)`.
pub fn common_column_sum(m: &ProductionMatrix) -> Result<Rational, SpectralError> {
    let ones = m.at_one();
    let sums: Vec<Rational> = (0..m.dim()).map(|c| ones.iter().map(|r| r[c].clone()).sum()).collect();
    if sums.windows(2).all(|w| w[0] == w[1]) {
        Ok(sums[0].clone())
    } else {
        Err(SpectralError::ColumnSumMismatch { sums: sums.iter().map(ToString::to_string).collect() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitivity {
    Primitive,
    Imprimitive,
    /// No matrix available (recurrence input).
    Unknown,
}

fn bool_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let k = a.len();
    (0..k).map(|i| (0..k).map(|j| (0..k).any(|l| a[i][l] && b[l][j])).collect()).collect()
}

/// Wielandt test: `A` is primitive iff `A^{(k−1)²+1}` is entrywise positive.
pub fn primitivity(m1: &[Vec<Rational>]) -> Result<Primitivity, SpectralError> {
    for (row, r) in m1.iter().enumerate() {
        if let Some(col) = r.iter().position(Signed::is_negative) {
            return Err(SpectralError::NegativeEntry { row, col });
        }
    }
    let k = m1.len();
    let base: Vec<Vec<bool>> = m1.iter().map(|r| r.iter().map(|v| !v.is_zero()).collect()).collect();
    let mut exp = (k.saturating_sub(1)).pow(2) + 1;
    let mut result: Option<Vec<Vec<bool>>> = None;
    let mut square = base;
    while exp > 0 {
        if exp & 1 == 1 {
            result = Some(match result {
                None => square.clone(),
                Some(r) => bool_product(&r, &square),
            });
        }
        exp >>= 1;
        if exp > 0 {
            square = bool_product(&square, &square);
        }
    }
    let positive = result.is_some_and(|r| r.iter().flatten().all(|&b| b));
    Ok(if positive { Primitivity::Primitive } else { Primitivity::Imprimitive })
}

/// A root approximation `z` with a radius `r` such that the disk `|λ − z| ≤ r`
/// contains exactly one root of the square-free part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxRoot {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl ApproxRoot {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSummary {
    #[serde(with = "rational_str")]
    pub dominant: Rational,
    /// Distinct remaining roots.
    pub others: Vec<ApproxRoot>,
    /// `D − max(|z| + r)` over the other roots.
    pub margin: f64,
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration on a monic polynomial (coefficients low to high).
fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max).max(1.0);
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4)).collect();
    for _ in 0..1000 {
        let mut moved: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Distinct roots of `p` with inclusion radii `deg·|p(z)/p′(z)|`, which
/// isolate every root once the disks are pairwise disjoint.
pub fn isolate_roots(p: &RatPolynomial) -> Result<Vec<ApproxRoot>, SpectralError> {
    let Some(deg) = p.degree() else { return Ok(Vec::new()) };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let square_free = {
        let g = p.gcd(&p.derivative());
        p.div_rem(&g).0.monic()
    };
    let m = square_free.degree().unwrap_or(0);
    if m == 1 {
        let root = -&square_free.coeffs()[0];
        return Ok(vec![ApproxRoot { re: root.to_f64().unwrap_or(f64::NAN), im: 0.0, radius: 0.0 }]);
    }
    let coeffs = square_free.to_f64();
    let roots: Vec<ApproxRoot> = aberth(&coeffs)
        .into_iter()
        .map(|z| {
            let (v, dv) = horner(&coeffs, z);
            let radius = if v.norm() == 0.0 { 0.0 } else { m as f64 * (v / dv).norm() };
            // a root of tiny imaginary part is real when its disk meets the axis
            let im = if z.im.abs() <= radius { 0.0 } else { z.im };
            ApproxRoot { re: z.re, im, radius: radius + f64::EPSILON * z.norm() * m as f64 }
        })
        .collect();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let gap = (roots[i].re - roots[j].re).hypot(roots[i].im - roots[j].im);
            if gap.is_nan() || gap <= roots[i].radius + roots[j].radius {
                return Err(SpectralError::RootsNotIsolated);
            }
        }
    }
    Ok(roots)
}

/// Checks that `D` is a simple root of `F(1, λ)` strictly dominating all others.
pub fn dominant_simplicity(f1: &RatPolynomial, d: &Rational, tol: f64) -> Result<RootSummary, SpectralError> {
    let (rest, value) = f1.deflate(d);
    if !value.is_zero() {
        return Err(SpectralError::NotARoot { d: d.to_string() });
    }
    if rest.eval(d).is_zero() {
        return Err(SpectralError::NotSimple { d: d.to_string() });
    }
    let others = isolate_roots(&rest)?;
    let d_f = d.to_f64().unwrap_or(f64::NAN);
    let reach = others.iter().map(|r| r.modulus() + r.radius).fold(0.0, f64::max);
    let margin = d_f - reach;
    if margin.is_nan() || margin <= tol {
        return Err(SpectralError::DominanceFails { margin, tol });
    }
    Ok(RootSummary { dominant: d.clone(), others, margin })
}

/// Largest root of `F(1, λ)` when it is an integer. A monic integer
/// polynomial has only integer rational roots, so rounding suffices.
pub fn integer_dominant_root(f: &CharPoly) -> Result<Rational, SpectralError> {
    let f1 = f.at_one();
    let roots = isolate_roots(&f1)?;
    let top =
        roots.iter().max_by(|a, b| a.modulus().total_cmp(&b.modulus())).ok_or(SpectralError::NoIntegerDominantRoot { approx: f64::NAN })?;
    let candidate = Rational::from_integer(BigInt::from(top.re.round() as i64));
    if top.im != 0.0 || !f1.eval(&candidate).is_zero() {
        return Err(SpectralError::NoIntegerDominantRoot { approx: top.re });
    }
    Ok(candidate)
}

/// `(λ₁′(1), λ₁″(1))` by implicit differentiation of `F(x, λ) = 0` at `(1, D)`.
pub fn implicit_derivatives(f: &CharPoly, d: &Rational) -> Result<(Rational, Rational), SpectralError> {
    let one = Rational::from_integer(1.into());
    let parts = f.bipoly().partials();
    let at = |g: &BiPoly| g.eval(&one, d);
    let fl = at(&parts.flambda);
    if fl.is_zero() {
        return Err(SpectralError::SingularPoint);
    }
    let l1 = -at(&parts.fx) / &fl;
    let two = Rational::from_integer(2.into());
    let l2 = -(at(&parts.fxx) + two * at(&parts.fxlambda) * &l1 + at(&parts.flambdalambda) * &l1 * &l1) / &fl;
    Ok((l1, l2))
}

/// `e = λ′/D`, `v = (−λ′² + D·λ″ + D·λ′)/D²`
pub fn limit_parameters(f: &CharPoly, d: &Rational) -> Result<(Rational, Rational), SpectralError> {
    if !d.is_positive() {
        return Err(SpectralError::NonpositiveDominant(d.to_string()));
    }
    let (l1, l2) = implicit_derivatives(f, d)?;
    let e = &l1 / d;
    let v = (-(&l1 * &l1) + d * &l2 + d * &l1) / (d * d);
    Ok((e, v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitCase {
    NormalLimit,
    DegenerateImpossible,
    DiscreteOrOnePoint,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub name: String,
    pub kind: EmbeddingKind,
    pub char_poly: String,
    #[serde(rename = "D", with = "rational_str")]
    pub d: Rational,
    #[serde(with = "opt_rational_str")]
    pub lambda_prime: Option<Rational>,
    #[serde(with = "opt_rational_str")]
    pub lambda_double_prime: Option<Rational>,
    #[serde(with = "opt_rational_str")]
    pub e: Option<Rational>,
    #[serde(with = "opt_rational_str")]
    pub v: Option<Rational>,
    pub dominant_simple: bool,
    pub primitivity: Primitivity,
    pub case: LimitCase,
    pub margin: Option<f64>,
    pub other_roots: Vec<ApproxRoot>,
    /// All recurrence coefficients are constants (discrete sub-case).
    pub constant_coefficients: bool,
    /// `v < 0`: the matrix or seeds cannot describe embedding counts.
    pub input_error: bool,
    pub diagnostics: Vec<String>,
}

/// Case selection: Imprimitive or non-dominant → Inconclusive; otherwise by the sign of `v`.
pub fn classify(primitivity: Primitivity, dominant_simple: bool, v: Option<&Rational>) -> LimitCase {
    if primitivity == Primitivity::Imprimitive || !dominant_simple {
        return LimitCase::Inconclusive;
    }
    match v {
        None => LimitCase::Inconclusive,
        Some(v) if v.is_positive() => LimitCase::NormalLimit,
        Some(v) if v.is_zero() => LimitCase::DiscreteOrOnePoint,
        Some(_) => LimitCase::DegenerateImpossible,
    }
}

/// Full spectral analysis of a family.
pub fn analyze(family: &Family, tol: f64) -> Result<LimitReport, SpectralError> {
    let f = family.char_poly();
    let (d, primitivity) = match family {
        Family::Transfer(spec) => {
            let d = common_column_sum(spec.matrix())?;
            (d, primitivity(&spec.matrix().at_one())?)
        }
        Family::Recurrence(_) => (integer_dominant_root(&f)?, Primitivity::Unknown),
    };
    let mut diagnostics = Vec::new();
    let (dominant_simple, margin, other_roots) = match dominant_simplicity(&f.at_one(), &d, tol) {
        Ok(summary) => (true, Some(summary.margin), summary.others),
        Err(e @ SpectralError::NotARoot { .. }) => return Err(e),
        Err(e) => {
            let margin = if let SpectralError::DominanceFails { margin, .. } = e { Some(margin) } else { None };
            diagnostics.push(e.to_string());
            (false, margin, Vec::new())
        }
    };
    if primitivity == Primitivity::Imprimitive {
        diagnostics.push("M(1) is imprimitive".to_string());
    }
    let derivatives = if primitivity == Primitivity::Imprimitive || !dominant_simple {
        None
    } else {
        match implicit_derivatives(&f, &d) {
            Ok(pair) => Some(pair),
            Err(e) => {
                diagnostics.push(e.to_string());
                None
            }
        }
    };
    let params = match &derivatives {
        Some(_) => Some(limit_parameters(&f, &d)?),
        None => None,
    };
    let case = classify(primitivity, dominant_simple, params.as_ref().map(|(_, v)| v));
    let input_error = case == LimitCase::DegenerateImpossible;
    if input_error {
        diagnostics.push("v < 0: the matrix or seeds do not describe an embedding distribution".to_string());
    }
    let (lambda_prime, lambda_double_prime) = derivatives.map_or((None, None), |(a, b)| (Some(a), Some(b)));
    let (e, v) = params.map_or((None, None), |(e, v)| (Some(e), Some(v)));
    Ok(LimitReport {
        name: family.name().to_string(),
        kind: family.embedding_kind(),
        char_poly: f.to_string(),
        d,
        lambda_prime,
        lambda_double_prime,
        e,
        v,
        dominant_simple,
        primitivity,
        case,
        margin,
        other_roots,
        constant_coefficients: family.has_constant_coefficients(),
        input_error,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rational, rational_int};
    use crate::recurrence::{ladderlike_matrix, pathlike_matrix, FamilySpec, RecurrenceSpec};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn claw() -> CharPoly {
        CharPoly::from_recurrence(&[p(&[0, 20]), p(&[0, 24, -64]), p(&[0, 0, 0, -384])])
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rational_int(v)).collect()).collect()
    }

    #[test]
    fn char_poly_examples() {
        let one = ProductionMatrix::new(vec![vec![p(&[1, 2])]]).unwrap();
        assert_eq!(CharPoly::from_matrix(&one).bipoly(), &BiPoly::new(vec![p(&[-1, -2]), p(&[1])]));

        let diag = ProductionMatrix::from_i64_rows(&[&[&[1, 1], &[]], &[&[], &[0, 2]]]).unwrap();
        assert_eq!(CharPoly::from_matrix(&diag).bipoly(), &BiPoly::new(vec![p(&[0, 2, 2]), p(&[-1, -3]), p(&[1])]));

        let ladder = ProductionMatrix::from_i64_rows(&[&[&[2], &[4]], &[&[0, 2, 4], &[0, 4]]]).unwrap();
        let f = CharPoly::from_matrix(&ladder);
        assert_eq!(f.recurrence_coefficients(), vec![p(&[2, 4]), p(&[0, 0, 16])]);
    }

    #[test]
    fn char_poly_matches_trace_and_determinant() {
        let m = ProductionMatrix::from_i64_rows(&[&[&[1, 2], &[0, 0, 3], &[5]], &[&[2], &[1, 1], &[0, 1]], &[&[0, 4], &[7], &[1, 0, 1]]])
            .unwrap();
        let f = CharPoly::from_matrix(&m);
        let x = rational(3, 7);
        let a: Vec<Vec<Rational>> = m.rows().iter().map(|r| r.iter().map(|e| e.eval(&x)).collect()).collect();
        let trace = &a[0][0] + &a[1][1] + &a[2][2];
        let det = &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1]) - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
            + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0]);
        let b = f.recurrence_coefficients();
        assert_eq!(b[0].eval(&x), trace);
        assert_eq!(b[2].eval(&x), det);
    }

    #[test]
    fn column_sums() {
        let ladder = ProductionMatrix::from_i64_rows(&[&[&[2], &[4]], &[&[0, 2, 4], &[0, 4]]]).unwrap();
        assert_eq!(common_column_sum(&ladder), Ok(rational_int(8)));
        let id = ProductionMatrix::from_i64_rows(&[&[&[1], &[]], &[&[], &[1]]]).unwrap();
        assert_eq!(common_column_sum(&id), Ok(rational_int(1)));
        let diag = ProductionMatrix::from_i64_rows(&[&[&[1, 1], &[]], &[&[], &[0, 2]]]).unwrap();
        assert_eq!(common_column_sum(&diag), Ok(rational_int(2)));
        let bad = ProductionMatrix::from_i64_rows(&[&[&[1], &[2]], &[&[1], &[1]]]).unwrap();
        assert!(matches!(common_column_sum(&bad), Err(SpectralError::ColumnSumMismatch { .. })));
    }

    #[test]
    fn primitivity_examples() {
        assert_eq!(primitivity(&ints(&[&[2, 4], &[6, 4]])), Ok(Primitivity::Primitive));
        assert_eq!(primitivity(&ints(&[&[2, 0], &[0, 2]])), Ok(Primitivity::Imprimitive));
        assert_eq!(primitivity(&ints(&[&[0, 1], &[1, 0]])), Ok(Primitivity::Imprimitive));
        assert_eq!(primitivity(&ints(&[&[0, 1], &[1, 1]])), Ok(Primitivity::Primitive));
        assert_eq!(primitivity(&ints(&[&[1, -1], &[1, 1]])), Err(SpectralError::NegativeEntry { row: 0, col: 1 }));
        for (pp, q) in [(1, 1), (3, 2), (1, 5)] {
            let m = ladderlike_matrix(&p(&[pp]), &p(&[0, q])).unwrap();
            assert_eq!(primitivity(&m.at_one()), Ok(Primitivity::Primitive));
        }
        // p(1) = 0 empties the first row, so M(1) is reducible
        let m = ladderlike_matrix(&IntPolynomial::zero(), &p(&[1])).unwrap();
        assert_eq!(primitivity(&m.at_one()), Ok(Primitivity::Imprimitive));
    }

    #[test]
    fn dominance_examples() {
        let f1 = claw().at_one();
        let s = dominant_simplicity(&f1, &rational_int(16), DEFAULT_TOLERANCE).unwrap();
        assert!((s.margin - (16.0 - 2.0 * (1.0 + 7f64.sqrt()))).abs() < 1e-9);
        assert_eq!(s.others.len(), 2);

        // (λ+2)²(λ−3)(λ−4)(λ−8)
        let f = [p(&[2, 1]), p(&[2, 1]), p(&[-3, 1]), p(&[-4, 1]), p(&[-8, 1])].iter().fold(IntPolynomial::one(), |acc, q| &acc * q);
        let f1 = RatPolynomial::new(f.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect());
        let s = dominant_simplicity(&f1, &rational_int(8), DEFAULT_TOLERANCE).unwrap();
        assert!((s.margin - 4.0).abs() < 1e-9);
        assert_eq!(s.others.len(), 3);

        let diag = RatPolynomial::new(vec![rational_int(4), rational_int(-4), rational_int(1)]);
        assert_eq!(dominant_simplicity(&diag, &rational_int(2), DEFAULT_TOLERANCE), Err(SpectralError::NotSimple { d: "2".into() }));
        assert!(matches!(dominant_simplicity(&diag, &rational_int(3), DEFAULT_TOLERANCE), Err(SpectralError::NotARoot { .. })));
        // λ² − 4: the other root has the same modulus
        let sym = RatPolynomial::new(vec![rational_int(-4), rational_int(0), rational_int(1)]);
        assert!(matches!(dominant_simplicity(&sym, &rational_int(2), DEFAULT_TOLERANCE), Err(SpectralError::DominanceFails { .. })));
    }

    #[test]
    fn implicit_derivative_examples() {
        // F = λ − c(x), c = 1 + 2x + 3x²
        let f = CharPoly::from_recurrence(&[p(&[1, 2, 3])]);
        assert_eq!(implicit_derivatives(&f, &rational_int(6)), Ok((rational_int(8), rational_int(6))));
        // F = λ² − (3x+1)λ + 2x(x+1) has λ₁ = x + 1 and λ₂ = 2x crossing at x = 1
        let diag = CharPoly::from_recurrence(&[p(&[1, 3]), p(&[0, -2, -2])]);
        assert_eq!(implicit_derivatives(&diag, &rational_int(2)), Err(SpectralError::SingularPoint));
    }

    #[test]
    fn claw_limit_parameters() {
        let f = claw();
        assert_eq!(f.bipoly().partials().flambda.eval(&rational_int(1), &rational_int(16)), rational_int(168));
        assert_eq!(limit_parameters(&f, &rational_int(16)), Ok((rational(6, 7), rational(8, 147))));
        assert_eq!(integer_dominant_root(&f), Ok(rational_int(16)));
    }

    #[test]
    fn classification() {
        let constant = ProductionMatrix::from_i64_rows(&[&[&[2]]]).unwrap();
        let spec = FamilySpec::new("const", EmbeddingKind::Genus, constant, vec![p(&[1, 1])], None).unwrap();
        let r = analyze(&Family::Transfer(spec), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.case, LimitCase::DiscreteOrOnePoint);
        assert!(r.constant_coefficients);

        let diag = ProductionMatrix::from_i64_rows(&[&[&[1, 1], &[]], &[&[], &[0, 2]]]).unwrap();
        let spec = FamilySpec::new("diag", EmbeddingKind::Genus, diag, vec![p(&[1]), p(&[1])], None).unwrap();
        let r = analyze(&Family::Transfer(spec), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.primitivity, Primitivity::Imprimitive);
        assert_eq!(r.case, LimitCase::Inconclusive);
        assert!(r.e.is_none());

        let rec = RecurrenceSpec::new("claw", EmbeddingKind::Genus, claw().recurrence_coefficients(), vec![p(&[2]); 3]).unwrap();
        let r = analyze(&Family::Recurrence(rec), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.case, LimitCase::NormalLimit);
        assert_eq!(r.primitivity, Primitivity::Unknown);
        assert_eq!(r.e, Some(rational(6, 7)));

        assert_eq!(classify(Primitivity::Primitive, true, Some(&rational(-1, 2))), LimitCase::DegenerateImpossible);
        assert_eq!(classify(Primitivity::Primitive, false, Some(&rational(1, 2))), LimitCase::Inconclusive);
    }

    #[test]
    fn pathlike_eigenvalues() {
        let (d, s) = (p(&[1, 2]), p(&[0, 1, 1]));
        let f = CharPoly::from_matrix(&pathlike_matrix(&d, &s).unwrap()).at_one();
        let (d1, s1) = (rational_int(3), rational_int(2));
        assert!(f.eval(&(&d1 + &s1)).is_zero());
        assert!(f.eval(&s1).is_zero());
    }
}
