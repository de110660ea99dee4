//! Exact univariate polynomials in `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Dense polynomial, `coeffs[k]` is the coefficient of `t^k`.
///
/// Always normalized: no zero at the top, and the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `t - r`
    pub fn linear(root: C) -> Self {
        Self::new(vec![-root, C::one()])
    }

    /// `∏ (t - r)` over `roots`.
    pub fn from_roots<I: IntoIterator<Item = C>>(roots: I) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear(r))
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Largest `k` such that `t^k` divides `self` (0 for the zero polynomial).
    pub fn t_adic_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn evaluate(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $m(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Writes `Σ c_k t^k` from the highest exponent down, e.g. `t^2 - 3t + 2`.
fn write_terms<C: Coefficient>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, C)>,
) -> fmt::Result {
    let mut first = true;
    for (exp, c) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let magnitude = c.abs();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let unit = magnitude.is_one();
        match exp {
            0 => write!(f, "{magnitude}")?,
            _ => {
                if !unit {
                    write!(f, "{magnitude}")?;
                }
                if exp == 1 {
                    f.write_str("t")?;
                } else {
                    write!(f, "t^{exp}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(k, c)| (k as i64, c.clone())),
        )
    }
}

/// One JSON coefficient: a number when it fits in 64 bits, otherwise a
/// decimal string.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Int(i64),
    Text(String),
}

impl JsonCoeff {
    fn from_coeff<C: Coefficient>(c: &C) -> Self {
        match c.to_i64() {
            Some(v) => JsonCoeff::Int(v),
            None => JsonCoeff::Text(c.to_string()),
        }
    }

    fn into_coeff<C: Coefficient + std::str::FromStr, E: serde::de::Error>(self) -> Result<C, E> {
        match self {
            JsonCoeff::Int(v) => C::from_i64(v).ok_or_else(|| E::custom(format!("coefficient {v} out of range"))),
            JsonCoeff::Text(s) => s.parse::<C>().map_err(|_| E::custom(format!("bad coefficient {s:?}"))),
        }
    }
}

/// `#[serde(with = "coeff_serde")]` for a single coefficient, in the same
/// number-or-string form used by polynomials.
pub mod coeff_serde {
    use super::*;

    pub fn serialize<C: Coefficient, S: Serializer>(c: &C, serializer: S) -> Result<S::Ok, S::Error> {
        JsonCoeff::from_coeff(c).serialize(serializer)
    }

    pub fn deserialize<'de, C, D>(deserializer: D) -> Result<C, D::Error>
    where
        C: Coefficient + std::str::FromStr,
        D: Deserializer<'de>,
    {
        JsonCoeff::deserialize(deserializer)?.into_coeff()
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    coeffs: Vec<JsonCoeff>,
}

impl<C: Coefficient> Serialize for Polynomial<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs = self.coeffs.iter().map(JsonCoeff::from_coeff).collect();
        PolynomialJson { coeffs }.serialize(serializer)
    }
}

impl<'de, C: Coefficient + std::str::FromStr> Deserialize<'de> for Polynomial<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolynomialJson::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .into_iter()
            .map(JsonCoeff::into_coeff)
            .collect::<Result<Vec<C>, D::Error>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

/// `t^low * body`, a polynomial in `t` and `t^-1`.
///
/// Normalized so that `body` has a nonzero constant term; the zero element
/// has `low == 0` and an empty body.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent<C> {
    low: i64,
    body: Polynomial<C>,
}

impl<C: Coefficient> Laurent<C> {
    pub fn new(low: i64, body: Polynomial<C>) -> Self {
        if body.is_zero() {
            return Self { low: 0, body };
        }
        let v = body.t_adic_valuation();
        let body = Polynomial::new(body.coeffs()[v..].to_vec());
        Self {
            low: low + v as i64,
            body,
        }
    }

    pub fn from_polynomial(p: Polynomial<C>) -> Self {
        Self::new(0, p)
    }

    /// `c * t^k` for any integer `k`.
    pub fn monomial(c: C, k: i64) -> Self {
        Self::new(k, Polynomial::constant(c))
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.low
    }

    pub fn body(&self) -> &Polynomial<C> {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.low + k, self.body.clone())
    }

    /// The ordinary polynomial, when no negative powers remain.
    pub fn to_polynomial(&self) -> Result<Polynomial<C>> {
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        if self.low < 0 {
            return Err(Error::NegativePower(self.low));
        }
        Ok(self.body.shift(self.low as usize))
    }
}

impl<C: Coefficient> Add for &Laurent<C> {
    type Output = Laurent<C>;

    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let a = self.body.shift((self.low - low) as usize);
        let b = rhs.body.shift((rhs.low - low) as usize);
        Laurent::new(low, &a + &b)
    }
}

impl<C: Coefficient> Mul for &Laurent<C> {
    type Output = Laurent<C>;

    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        Laurent::new(self.low + rhs.low, &self.body * &rhs.body)
    }
}

impl<C: Coefficient> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let low = self.low;
        write_terms(
            f,
            self.body
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .map(|(k, c)| (k as i64 + low, c.clone())),
        )
    }
}

/// `t^t_power * ∏ (t - r)` over the multiset `linear_roots`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredForm {
    pub t_power: i64,
    pub linear_roots: Vec<u64>,
}

impl FactoredForm {
    pub fn new(t_power: i64, linear_roots: Vec<u64>) -> Self {
        Self {
            t_power,
            linear_roots,
        }
    }

    pub fn to_laurent<C: Coefficient>(&self) -> Laurent<C> {
        let body = Polynomial::from_roots(
            self.linear_roots
                .iter()
                .map(|&r| C::from_u64(r).expect("root fits the coefficient type")),
        );
        Laurent::new(self.t_power, body)
    }

    /// Fails with [`Error::NegativePower`] when the zero roots do not absorb a
    /// negative `t_power`.
    pub fn expand<C: Coefficient>(&self) -> Result<Polynomial<C>> {
        self.to_laurent::<C>().to_polynomial()
    }

    /// Roots in ascending order, zero roots included.
    pub fn sorted_roots(&self) -> Vec<u64> {
        let mut r = self.linear_roots.clone();
        r.sort_unstable();
        r
    }

    /// Same expansion, comparing as multisets after folding zero roots into
    /// the power of `t`.
    pub fn equivalent(&self, other: &Self) -> bool {
        let fold = |f: &Self| {
            let zeros = f.linear_roots.iter().filter(|&&r| r == 0).count() as i64;
            let mut rest: Vec<u64> = f.linear_roots.iter().copied().filter(|&r| r != 0).collect();
            rest.sort_unstable();
            (f.t_power + zeros, rest)
        };
        fold(self) == fold(other)
    }
}

/// Zero roots are folded into the power of `t`.
impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zeros = self.linear_roots.iter().filter(|&&r| r == 0).count() as i64;
        let mut wrote = true;
        match self.t_power + zeros {
            0 => wrote = false,
            1 => f.write_str("t")?,
            k => write!(f, "t^{k}")?,
        }
        for r in self.linear_roots.iter().filter(|&&r| r != 0) {
            write!(f, "(t - {r})")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// `e_0, e_1, …, e_n` of the given values.
pub fn elementary_symmetric<C: Coefficient>(values: &[u64]) -> Vec<C> {
    let mut e = vec![C::zero(); values.len() + 1];
    e[0] = C::one();
    for (i, &v) in values.iter().enumerate() {
        let v = C::from_u64(v).expect("value fits the coefficient type");
        for k in (1..=i + 1).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * v.clone();
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Polynomial<i64>;

    #[test]
    fn normalizes_trailing_zeros() {
        let p = P::new(vec![1, 2, 0, 0]);
        assert_eq!(p.coeffs(), &[1, 2]);
        assert!(P::new(vec![0, 0]).is_zero());
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn pretty_print() {
        assert_eq!(P::new(vec![2, -3, 1]).to_string(), "t^2 - 3t + 2");
        assert_eq!(P::new(vec![1, 0, -2, 1]).to_string(), "t^3 - 2t^2 + 1");
        assert_eq!(P::new(vec![0, -1]).to_string(), "-t");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::new(vec![-5]).to_string(), "-5");
    }

    #[test]
    fn product_of_linear_factors() {
        let p = P::from_roots([1, 2]);
        assert_eq!(p, P::new(vec![2, -3, 1]));
        assert_eq!(p.evaluate(&1), 0);
        assert_eq!(p.evaluate(&3), 2);
    }

    #[test]
    fn laurent_normalizes_and_expands() {
        // t^-2 (t - 1)(t - 2) t^2 = (t - 1)(t - 2)
        let f = FactoredForm::new(-2, vec![0, 0, 1, 2]);
        assert_eq!(f.expand::<i64>().unwrap(), P::from_roots([1, 2]));
        let bad = FactoredForm::new(-1, vec![1]);
        assert!(matches!(bad.expand::<i64>(), Err(Error::NegativePower(-1))));
        let l = Laurent::new(-3, P::new(vec![0, 0, 5]));
        assert_eq!(l.lowest_exponent(), -1);
        assert_eq!(l.to_string(), "5t^-1");
    }

    #[test]
    fn factored_equivalence_folds_zero_roots() {
        let a = FactoredForm::new(-1, vec![0, 1, 2]);
        let b = FactoredForm::new(0, vec![2, 1]);
        assert!(a.equivalent(&b));
        assert_eq!(a.to_string(), "(t - 1)(t - 2)");
        assert_eq!(b.to_string(), "(t - 2)(t - 1)");
    }

    #[test]
    fn elementary_symmetric_matches_expansion() {
        let e = elementary_symmetric::<i64>(&[0, 1, 2, 3]);
        assert_eq!(e, vec![1, 6, 11, 6, 0]);
    }

    #[test]
    fn json_uses_numbers_and_strings() {
        let big = BigInt::from(1u8) << 80u32;
        let p = Polynomial::new(vec![BigInt::from(-3), big.clone()]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, format!("{{\"coeffs\":[-3,\"{big}\"]}}"));
        let back: Polynomial<BigInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
