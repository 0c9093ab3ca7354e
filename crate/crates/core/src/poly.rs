//! Exact polynomial arithmetic over the integers and the rationals.
//!
//! [`IntPolynomial`] carries every sequence and matrix entry in the crate.
//! [`BiPoly`] is a polynomial in `(x, λ)` stored as λ-power coefficients,
//! which is the shape of a characteristic polynomial `det(λI − M(x))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c·x^power`
    pub fn monomial(c: impl Into<BigInt>, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c.into();
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Index of the first negative coefficient, if any.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by `x^power`.
    pub fn shift(&self, power: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); power];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `P(1)`, the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `p(x²)`: the coefficient of `x^i` moves to `x^{2i}`.
    pub fn compose_square(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        IntPolynomial { coeffs }
    }

    /// Index of the lowest and highest nonzero coefficients.
    pub fn support(&self) -> Option<(usize, usize)> {
        let low = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some((low, self.coeffs.len() - 1))
    }
}

impl From<Vec<BigInt>> for IntPolynomial {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolynomial::new(coeffs)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    // Schoolbook convolution; degrees stay in the low thousands.
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{magnitude}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{magnitude}x^{i}")?,
            }
        }
        Ok(())
    }
}

// Coefficient arrays are written as decimal strings so that values beyond
// 64 bits survive any JSON reader; plain integers are accepted on input.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_seq(CoeffsVisitor).map(IntPolynomial::new)
    }
}

struct CoeffsVisitor;

impl<'de> Visitor<'de> for CoeffsVisitor {
    type Value = Vec<BigInt>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an array of integer coefficients (numbers or decimal strings)")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
        let mut out = Vec::new();
        while let Some(c) = seq.next_element::<BigIntRepr>()? {
            out.push(c.0);
        }
        Ok(out)
    }
}

/// A big integer that deserializes from either a JSON integer or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntRepr(pub BigInt);

impl Serialize for BigIntRepr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigIntRepr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
                Ok(v.into())
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
                Ok(v.into())
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
                v.trim().parse().map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }
        deserializer.deserialize_any(V).map(BigIntRepr)
    }
}

/// Serde adapter writing a [`Rational`] as the string `"p/q"` (or `"p"`).
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| de::Error::custom(format!("invalid rational {text:?}")))
    }

    pub fn parse_rational(text: &str) -> Option<Rational> {
        let text = text.trim();
        match text.split_once('/') {
            Some((n, d)) => {
                let num: BigInt = n.trim().parse().ok()?;
                let den: BigInt = d.trim().parse().ok()?;
                (!den.is_zero()).then(|| Rational::new(num, den))
            }
            None => text.parse::<BigInt>().ok().map(Rational::from_integer),
        }
    }
}

/// Serde adapter writing a [`BigInt`] as a decimal string.
pub mod bigint_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        BigIntRepr::deserialize(d).map(|r| r.0)
    }
}

/// Optional variant of [`rational_str`].
pub mod opt_rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|text| rational_str::parse_rational(&text).ok_or_else(|| de::Error::custom(format!("invalid rational {text:?}"))))
            .transpose()
    }
}

/// Vector variant of [`rational_str`].
pub mod rational_vec_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|text| rational_str::parse_rational(&text).ok_or_else(|| de::Error::custom(format!("invalid rational {text:?}"))))
            .collect()
    }
}

/// Dense polynomial with rational coefficients, used for exact deflation and
/// square-free reduction of characteristic polynomials at a fixed `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lead) => Self::new(self.coeffs.iter().map(|c| c / lead).collect()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[d_deg];
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (RatPolynomial::new(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d_deg];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + d_deg] / lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(d_deg);
        (RatPolynomial::new(quot), RatPolynomial::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPolynomial) -> RatPolynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out `(λ − root)`, returning the quotient and the remainder
    /// (which is the value at `root`).
    pub fn deflate(&self, root: &Rational) -> (RatPolynomial, Rational) {
        let n = self.coeffs.len();
        if n == 0 {
            return (self.clone(), Rational::zero());
        }
        let mut quot = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (RatPolynomial::new(quot), value);
            }
            quot[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// Polynomial in `(x, λ)`: `lambda_coeffs[j]` is the coefficient of `λ^j`,
/// itself a polynomial in `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    lambda_coeffs: Vec<IntPolynomial>,
}

/// Partial derivatives of a [`BiPoly`] up to second order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPartials {
    pub fx: BiPoly,
    pub flambda: BiPoly,
    pub fxx: BiPoly,
    pub fxlambda: BiPoly,
    pub flambdalambda: BiPoly,
}

impl BiPoly {
    pub fn new(mut lambda_coeffs: Vec<IntPolynomial>) -> Self {
        while lambda_coeffs.last().is_some_and(IntPolynomial::is_zero) {
            lambda_coeffs.pop();
        }
        BiPoly { lambda_coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { lambda_coeffs: Vec::new() }
    }

    /// The polynomial `p(x)` with no λ dependence.
    pub fn from_x(p: IntPolynomial) -> Self {
        Self::new(vec![p])
    }

    /// `λ`
    pub fn lambda() -> Self {
        Self::new(vec![IntPolynomial::zero(), IntPolynomial::one()])
    }

    pub fn lambda_coeffs(&self) -> &[IntPolynomial] {
        &self.lambda_coeffs
    }

    pub fn lambda_coeff(&self, j: usize) -> IntPolynomial {
        self.lambda_coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn lambda_degree(&self) -> Option<usize> {
        self.lambda_coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.lambda_coeffs.is_empty()
    }

    pub fn is_monic_in_lambda(&self) -> bool {
        self.lambda_coeffs.last().is_some_and(|c| *c == IntPolynomial::one())
    }

    pub fn derivative_x(&self) -> Self {
        Self::new(self.lambda_coeffs.iter().map(IntPolynomial::derivative).collect())
    }

    pub fn derivative_lambda(&self) -> Self {
        Self::new(self.lambda_coeffs.iter().enumerate().skip(1).map(|(j, c)| c.scale(&BigInt::from(j))).collect())
    }

    pub fn partials(&self) -> BiPartials {
        let fx = self.derivative_x();
        let flambda = self.derivative_lambda();
        BiPartials { fxx: fx.derivative_x(), fxlambda: fx.derivative_lambda(), flambdalambda: flambda.derivative_lambda(), fx, flambda }
    }

    pub fn eval(&self, x: &Rational, lam: &Rational) -> Rational {
        self.lambda_coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * lam + c.eval(x))
    }

    /// Specializes `x`, leaving a polynomial in λ.
    pub fn at_x(&self, x: &Rational) -> RatPolynomial {
        RatPolynomial::new(self.lambda_coeffs.iter().map(|c| c.eval(x)).collect())
    }

    /// Maximum x-degree over all λ-coefficients.
    pub fn x_degree(&self) -> usize {
        self.lambda_coeffs.iter().filter_map(IntPolynomial::degree).max().unwrap_or(0)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.lambda_coeffs.len().max(rhs.lambda_coeffs.len());
        BiPoly::new((0..n).map(|j| &self.lambda_coeff(j) + &rhs.lambda_coeff(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.lambda_coeffs.len().max(rhs.lambda_coeffs.len());
        BiPoly::new((0..n).map(|j| &self.lambda_coeff(j) - &rhs.lambda_coeff(j)).collect())
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly::new(self.lambda_coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![IntPolynomial::zero(); self.lambda_coeffs.len() + rhs.lambda_coeffs.len() - 1];
        for (i, a) in self.lambda_coeffs.iter().enumerate() {
            for (j, b) in rhs.lambda_coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.lambda_coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})λ")?,
                _ => write!(f, "({c})λ^{j}")?,
            }
        }
        Ok(())
    }
}

/// Greatest common divisor of a list of integers (zero for an empty list).
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn add_disjoint_supports_and_cancellation() {
        assert_eq!(&p(&[1, 2]) + &p(&[0, 0, 3]), p(&[1, 2, 3]));
        assert_eq!(&p(&[5, 0, 7]) + &IntPolynomial::zero(), p(&[5, 0, 7]));
        let sum = &p(&[-1, 1]) + &p(&[1, -1]);
        assert!(sum.is_zero());
        assert!(sum.coeffs().is_empty());
        assert_eq!(sum.degree(), None);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(&p(&[3, 0, 4]) * &IntPolynomial::one(), p(&[3, 0, 4]));
        let prod = &p(&[0, 2, 4]) * &p(&[0, 2]);
        assert_eq!(prod, p(&[0, 0, 4, 8]));
        // evaluation at 2 against plain integer arithmetic: (4+16)·4 = 80
        assert_eq!(prod.eval_int(&BigInt::from(2)), BigInt::from(80));
    }

    #[test]
    fn eval_examples() {
        let one = rational_int(1);
        assert_eq!(p(&[1, 2, 3]).eval(&one), rational_int(6));
        assert_eq!(p(&[9, 2, 3]).eval(&Rational::zero()), rational_int(9));
        // ladder Euler matrix entry 2x + 4x² at x = 1
        assert_eq!(p(&[0, 2, 4]).eval(&one), rational_int(6));
        assert_eq!(p(&[1, 1]).eval(&rational(1, 2)), rational(3, 2));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 1]).derivative(), p(&[0, 2]));
        assert!(p(&[7]).derivative().is_zero());
        assert_eq!(p(&[1, 2, 3]).derivative().eval(&rational_int(1)), rational_int(8));
    }

    #[test]
    fn compose_square_examples() {
        assert_eq!(p(&[1, 1]).compose_square(), p(&[1, 0, 1]));
        assert!(IntPolynomial::zero().compose_square().is_zero());
        assert_eq!(p(&[4, 2]).compose_square(), p(&[4, 0, 2]));
    }

    #[test]
    fn bipoly_partials_simple() {
        // F = λ − x
        let f = BiPoly::new(vec![p(&[0, -1]), p(&[1])]);
        let d = f.partials();
        assert_eq!(d.fx, BiPoly::from_x(p(&[-1])));
        assert_eq!(d.flambda, BiPoly::from_x(p(&[1])));
        assert!(d.fxx.is_zero() && d.fxlambda.is_zero() && d.flambdalambda.is_zero());

        // F = λ² − xλ
        let f = BiPoly::new(vec![p(&[]), p(&[0, -1]), p(&[1])]);
        let d = f.partials();
        assert_eq!(d.flambda, BiPoly::new(vec![p(&[0, -1]), p(&[2])]));
        assert_eq!(d.fxlambda, BiPoly::from_x(p(&[-1])));
    }

    fn claw_f() -> BiPoly {
        // λ³ − 20xλ² + 8(8x² − 3x)λ + 384x³
        BiPoly::new(vec![p(&[0, 0, 0, 384]), p(&[0, -24, 64]), p(&[0, -20]), p(&[1])])
    }

    #[test]
    fn claw_lambda_partial_at_dominant_root() {
        let d = claw_f().partials();
        let v = d.flambda.eval(&rational_int(1), &rational_int(16));
        // 3·256 − 40·16 + 40, computed from the monomials by hand
        assert_eq!(v, rational_int(3 * 256 - 40 * 16 + 40));
        assert_eq!(v, rational_int(168));
    }

    #[test]
    fn bipoly_eval_examples() {
        let f = BiPoly::new(vec![p(&[0, -1]), p(&[1])]);
        assert!(f.eval(&rational_int(1), &rational_int(1)).is_zero());
        assert!(claw_f().eval(&rational_int(1), &rational_int(16)).is_zero());
    }

    #[test]
    fn rat_poly_deflate_and_gcd() {
        // (λ − 2)²(λ + 1) = λ³ − 3λ² + 4
        let f = RatPolynomial::new(vec![rational_int(4), rational_int(0), rational_int(-3), rational_int(1)]);
        let (q, r) = f.deflate(&rational_int(2));
        assert!(r.is_zero());
        assert_eq!(q, RatPolynomial::new(vec![rational_int(-2), rational_int(-1), rational_int(1)]));
        let g = f.gcd(&f.derivative());
        assert_eq!(g, RatPolynomial::new(vec![rational_int(-2), rational_int(1)]));
        let (sf, rem) = f.div_rem(&g);
        assert!(rem.is_zero());
        assert_eq!(sf.degree(), Some(2));
    }

    #[test]
    fn display_and_serde() {
        assert_eq!(p(&[1, -2, 0, 3]).to_string(), "1 - 2x + 3x^3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        let parsed: IntPolynomial = serde_json::from_str(r#"[1, "18446744073709551616", -3]"#).unwrap();
        assert_eq!(parsed.coeff(1), BigInt::from(1u128 << 64));
        let text = serde_json::to_string(&parsed).unwrap();
        assert_eq!(text, r#"["1","18446744073709551616","-3"]"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&text).unwrap(), parsed);
    }

    #[test]
    fn rational_string_parsing() {
        use rational_str::parse_rational;
        assert_eq!(parse_rational("6/7"), Some(rational(6, 7)));
        assert_eq!(parse_rational("-4"), Some(rational_int(-4)));
        assert_eq!(parse_rational("2/0"), None);
        assert_eq!(parse_rational("a/2"), None);
    }
}
