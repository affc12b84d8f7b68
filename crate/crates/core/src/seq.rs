//! Finite sequences of exact rationals.
//!
//! Public indices are 1-based, so `S.at(1)` is the first term. The empty
//! sequence is an ordinary value; every operation accepts it.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteSeq(Vec<Rational>);

impl FiniteSeq {
    pub fn new(values: Vec<Rational>) -> Self {
        FiniteSeq(values)
    }

    pub fn empty() -> Self {
        FiniteSeq(Vec::new())
    }

    pub fn constant(value: Rational, len: usize) -> Self {
        FiniteSeq(vec![value; len])
    }

    pub fn from_integers(values: &[i64]) -> Self {
        FiniteSeq(values.iter().copied().map(Rational::integer).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Term at 1-based position `i`.
    pub fn get(&self, i: usize) -> Option<&Rational> {
        i.checked_sub(1).and_then(|k| self.0.get(k))
    }

    /// Term at 1-based position `i`; panics when out of range.
    pub fn at(&self, i: usize) -> &Rational {
        match self.get(i) {
            Some(v) => v,
            None => panic!("index {i} out of range for length {}", self.len()),
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub fn first(&self) -> Option<&Rational> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Rational> {
        self.0.last()
    }

    fn zip_with(
        &self,
        other: &FiniteSeq,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<FiniteSeq> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }

    pub fn add(&self, other: &FiniteSeq) -> Result<FiniteSeq> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FiniteSeq) -> Result<FiniteSeq> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &FiniteSeq) -> Result<FiniteSeq> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Elementwise quotient `S/G`; `ZeroEntry` names the first zero of `G`.
    pub fn div(&self, other: &FiniteSeq) -> Result<FiniteSeq> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        self.mul(&other.inverse()?)
    }

    /// `(1/S(i))`.
    pub fn inverse(&self) -> Result<FiniteSeq> {
        self.0
            .iter()
            .enumerate()
            .map(|(k, v)| v.recip().ok_or(Error::ZeroEntry(k + 1)))
            .collect::<Result<Vec<_>>>()
            .map(FiniteSeq)
    }

    pub fn scale(&self, lambda: &Rational) -> FiniteSeq {
        self.0.iter().map(|v| lambda * v).collect()
    }

    pub fn neg(&self) -> FiniteSeq {
        self.0.iter().map(|v| -v).collect()
    }

    /// First `k` terms.
    pub fn prefix(&self, k: usize) -> Result<FiniteSeq> {
        if k > self.len() {
            return Err(Error::OutOfRange {
                index: k as i64,
                len: self.len(),
            });
        }
        Ok(FiniteSeq(self.0[..k].to_vec()))
    }

    /// `len` terms starting at 1-based position `from`.
    pub(crate) fn window(&self, from: usize, len: usize) -> &[Rational] {
        &self.0[from - 1..from - 1 + len]
    }

    pub fn has_zero(&self) -> bool {
        self.0.iter().any(Rational::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Comma-separated literal, e.g. `1,3/2,2`.
    pub fn to_literal(&self) -> String {
        self.0
            .iter()
            .map(Rational::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl FromIterator<Rational> for FiniteSeq {
    fn from_iter<T: IntoIterator<Item = Rational>>(iter: T) -> Self {
        FiniteSeq(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a FiniteSeq {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl From<Vec<Rational>> for FiniteSeq {
    fn from(v: Vec<Rational>) -> Self {
        FiniteSeq(v)
    }
}

impl fmt::Display for FiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(∅)");
        }
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(Rational::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl fmt::Debug for FiniteSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
