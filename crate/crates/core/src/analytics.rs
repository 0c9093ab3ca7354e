//! Embedding distributions as probability laws: moments, CDFs, distance to
//! the Gaussian limit, empirical discrete limits, and the comparison between
//! crosscap-number and Euler-genus distributions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{bigint_str, rational_str, rational_vec_str, IntPolynomial, Rational};
use crate::recurrence::Family;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("coefficient of x^{index} is negative")]
    NegativeCoefficient { index: usize },
    #[error("polynomial has zero total weight")]
    ZeroTotal,
    #[error("sigma must be positive, got {0}")]
    NonpositiveSigma(f64),
    #[error("variance slope v = {0} is not positive")]
    NonpositiveVariance(String),
    #[error("crosscap polynomial is zero: the graph has no nonorientable embedding")]
    ZeroCrosscap,
    #[error("recurrence coefficients are not all constant")]
    NotConstantCoefficients,
    #[error("probabilities moved by {max_change:e} between the probes, tolerance is {tol:e}")]
    NotConverged { max_change: f64, tol: f64 },
    #[error("family index must be at least 1")]
    BadIndex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingKind {
    Genus,
    Crosscap,
    #[serde(alias = "euler")]
    EulerGenus,
}

/// Nonnegative integer weights `p_i(n)` with their exact total `P_n(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingDistribution {
    weights: IntPolynomial,
    #[serde(with = "bigint_str")]
    total: BigInt,
    kind: EmbeddingKind,
    n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentSummary {
    #[serde(with = "rational_str")]
    pub mean: Rational,
    #[serde(with = "rational_str")]
    pub variance: Rational,
}

impl EmbeddingDistribution {
    pub fn from_polynomial(p: &IntPolynomial, kind: EmbeddingKind, n: usize) -> Result<Self, AnalyticsError> {
        if let Some(index) = p.first_negative() {
            return Err(AnalyticsError::NegativeCoefficient { index });
        }
        let total = p.eval_at_one();
        if total.is_zero() {
            return Err(AnalyticsError::ZeroTotal);
        }
        Ok(EmbeddingDistribution { weights: p.clone(), total, kind, n })
    }

    pub fn weights(&self) -> &[BigInt] {
        self.weights.coeffs()
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.weights
    }

    pub fn total(&self) -> &BigInt {
        &self.total
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probabilities(&self) -> Vec<Rational> {
        self.weights().iter().map(|w| BigRational::new(w.clone(), self.total.clone())).collect()
    }

    /// Mean `P′(1)/P(1)` and variance `(P″(1) + P′(1))/P(1) − (P′(1)/P(1))²`.
    pub fn moments(&self) -> MomentSummary {
        let d1 = self.weights.derivative();
        let d2 = d1.derivative();
        let total = Rational::from_integer(self.total.clone());
        let p1 = Rational::from_integer(d1.eval_at_one());
        let p2 = Rational::from_integer(d2.eval_at_one());
        let mean = &p1 / &total;
        let variance = (p2 + p1) / total - &mean * &mean;
        MomentSummary { mean, variance }
    }

    /// Moments straight from `∑ i·p_i / P(1)` and `∑ (i − mean)²·p_i / P(1)`.
    pub fn moments_by_definition(&self) -> MomentSummary {
        let probs = self.probabilities();
        let mean: Rational = probs.iter().enumerate().map(|(i, p)| p * Rational::from_integer(BigInt::from(i))).sum();
        let variance = probs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let d = Rational::from_integer(BigInt::from(i)) - &mean;
                &d * &d * p
            })
            .sum();
        MomentSummary { mean, variance }
    }

    /// Cumulative weights `∑_{j ≤ i} p_j` for every index.
    fn cumulative(&self) -> Vec<BigInt> {
        self.weights()
            .iter()
            .scan(BigInt::zero(), |acc, w| {
                *acc += w;
                Some(acc.clone())
            })
            .collect()
    }

    /// Exact CDF at every integer index of the support range.
    pub fn cdf(&self) -> Vec<Rational> {
        self.cumulative().into_iter().map(|c| BigRational::new(c, self.total.clone())).collect()
    }
}

/// Standard normal CDF through the complementary error function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

fn ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    BigRational::new(num.clone(), den.clone()).to_f64().unwrap_or(f64::NAN)
}

/// Kolmogorov distance between the distribution and `N(mu, sigma²)`.
///
/// The empirical CDF is a step function, so the supremum is attained on one
/// side of a jump; both sides of every integer point are checked.
pub fn ks_distance(d: &EmbeddingDistribution, mu: f64, sigma: f64) -> Result<f64, AnalyticsError> {
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(AnalyticsError::NonpositiveSigma(sigma));
    }
    let mut before = 0.0;
    let mut sup: f64 = 0.0;
    for (i, cum) in d.cumulative().iter().enumerate() {
        let after = ratio_f64(cum, &d.total);
        let phi = normal_cdf((i as f64 - mu) / sigma);
        sup = sup.max((before - phi).abs()).max((after - phi).abs());
        before = after;
    }
    Ok(sup.min(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub ks_distance: f64,
    /// `|mean − e·n|`
    pub mean_gap: f64,
    /// `|variance − v·n|`
    pub var_gap: f64,
}

/// Convergence of the normalized distributions toward `N(e·n, v·n)`.
pub fn clt_series(family: &Family, e: &Rational, v: &Rational, n_list: &[usize]) -> Result<Vec<ConvergenceRow>, AnalyticsError> {
    if !v.is_positive() {
        return Err(AnalyticsError::NonpositiveVariance(v.to_string()));
    }
    let n_max = n_list.iter().copied().max().unwrap_or(0);
    if n_list.contains(&0) {
        return Err(AnalyticsError::BadIndex);
    }
    let polys = family.polynomials(n_max);
    n_list
        .iter()
        .map(|&n| {
            let dist = EmbeddingDistribution::from_polynomial(&polys[n - 1], family.embedding_kind(), n)?;
            let nn = Rational::from_integer(BigInt::from(n));
            let target_mean = e * &nn;
            let target_var = v * &nn;
            let m = dist.moments();
            let mu = target_mean.to_f64().unwrap_or(f64::NAN);
            let sigma = target_var.to_f64().unwrap_or(f64::NAN).sqrt();
            Ok(ConvergenceRow {
                n,
                ks_distance: ks_distance(&dist, mu, sigma)?,
                mean_gap: (m.mean - target_mean).abs().to_f64().unwrap_or(f64::NAN),
                var_gap: (m.variance - target_var).abs().to_f64().unwrap_or(f64::NAN),
            })
        })
        .collect()
}

/// `E(x) = Γ(x²) + Γ̃(x)`
pub fn euler_from_parts(genus: &IntPolynomial, crosscap: &IntPolynomial) -> IntPolynomial {
    &genus.compose_square() + crosscap
}

/// Sup-distance between the Euler-genus and crosscap-number CDFs, with the
/// bound `2·a` where `a = Γ(1)/E(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscapGap {
    #[serde(with = "rational_str")]
    pub gap: Rational,
    #[serde(with = "rational_str")]
    pub bound: Rational,
    #[serde(with = "rational_str")]
    pub orientable_fraction: Rational,
}

pub fn crosscap_euler_gap(genus: &IntPolynomial, crosscap: &IntPolynomial) -> Result<CrosscapGap, AnalyticsError> {
    if crosscap.is_zero() {
        return Err(AnalyticsError::ZeroCrosscap);
    }
    let euler = euler_from_parts(genus, crosscap);
    let e_dist = EmbeddingDistribution::from_polynomial(&euler, EmbeddingKind::EulerGenus, 0)?;
    let c_dist = EmbeddingDistribution::from_polynomial(crosscap, EmbeddingKind::Crosscap, 0)?;
    let (e_cdf, c_cdf) = (e_dist.cdf(), c_dist.cdf());
    let len = e_cdf.len().max(c_cdf.len());
    let one = Rational::one();
    let gap = (0..len)
        .map(|i| {
            let a = e_cdf.get(i).unwrap_or(&one);
            let b = c_cdf.get(i).unwrap_or(&one);
            (a - b).abs()
        })
        .max()
        .unwrap_or_default();
    let orientable_fraction = BigRational::new(genus.eval_at_one(), euler.eval_at_one());
    Ok(CrosscapGap { gap, bound: &orientable_fraction * Rational::from_integer(2.into()), orientable_fraction })
}

/// `E(1) = Γ(1)·2^β`
pub fn beta_bound_check(genus_at_1: &BigInt, euler_at_1: &BigInt, beta: usize) -> bool {
    *euler_at_1 == genus_at_1 << beta
}

/// Empirical limit `ω_j = lim P(X_n = j)` for a family with constant recurrence coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteLimit {
    pub kappa: usize,
    #[serde(with = "rational_vec_str")]
    pub omega: Vec<Rational>,
    pub probe: usize,
}

pub fn discrete_limit(family: &Family, n_probe: usize, tol: f64) -> Result<DiscreteLimit, AnalyticsError> {
    if n_probe == 0 {
        return Err(AnalyticsError::BadIndex);
    }
    if !family.has_constant_coefficients() {
        return Err(AnalyticsError::NotConstantCoefficients);
    }
    let polys = family.polynomials(2 * n_probe);
    let first = EmbeddingDistribution::from_polynomial(&polys[n_probe - 1], family.embedding_kind(), n_probe)?.probabilities();
    let second = EmbeddingDistribution::from_polynomial(&polys[2 * n_probe - 1], family.embedding_kind(), 2 * n_probe)?.probabilities();
    let len = first.len().max(second.len());
    let zero = Rational::zero();
    let max_change = (0..len)
        .map(|j| (first.get(j).unwrap_or(&zero) - second.get(j).unwrap_or(&zero)).abs())
        .max()
        .unwrap_or_default()
        .to_f64()
        .unwrap_or(f64::INFINITY);
    if max_change > tol {
        return Err(AnalyticsError::NotConverged { max_change, tol });
    }
    Ok(DiscreteLimit { kappa: second.len().saturating_sub(1), omega: second, probe: 2 * n_probe })
}
