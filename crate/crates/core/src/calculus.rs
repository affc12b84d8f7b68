//! Derivative, indefinite integral and definite integral of finite sequences.

use crate::error::{Error, Result};
use crate::ops::OperatorPoly;
use crate::rational::Rational;
use crate::seq::FiniteSeq;

/// Inclusive 1-based summation range `a..=b`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DefiniteIntegralBounds {
    pub a: i64,
    pub b: i64,
}

impl DefiniteIntegralBounds {
    pub fn new(a: i64, b: i64) -> Self {
        DefiniteIntegralBounds { a, b }
    }

    /// Check `1 <= a <= b <= len`.
    pub fn validate(&self, len: usize) -> Result<()> {
        if self.a > self.b {
            return Err(Error::InvertedBounds {
                from: self.a,
                to: self.b,
            });
        }
        if self.a < 1 {
            return Err(Error::OutOfRange { index: self.a, len });
        }
        if self.b > len as i64 {
            return Err(Error::OutOfRange { index: self.b, len });
        }
        Ok(())
    }
}

/// First difference `S(i+1) - S(i)`, length `n - 1` (empty for `n <= 1`).
pub fn first_difference(s: &FiniteSeq) -> FiniteSeq {
    s.values().windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// `m`-th derivative, computed by iterating the first difference.
///
/// The result has length `max(n - m, 0)`; `m = 0` returns `S` unchanged.
pub fn derivative(s: &FiniteSeq, m: usize) -> FiniteSeq {
    let mut out = s.clone();
    for _ in 0..m {
        if out.is_empty() {
            break;
        }
        out = first_difference(&out);
    }
    out
}

/// `m`-th derivative computed as the operator `(E - I)^m`.
pub fn derivative_by_operator(s: &FiniteSeq, m: u32) -> FiniteSeq {
    OperatorPoly::derivative().pow(m).apply(s)
}

/// Indefinite integral with integration constant `c = result(1)`:
/// `result(i) = c + S(1) + ... + S(i-1)`, length `n + 1`.
pub fn antiderivative(s: &FiniteSeq, c: &Rational) -> FiniteSeq {
    let mut out = Vec::with_capacity(s.len() + 1);
    let mut acc = c.clone();
    out.push(acc.clone());
    for v in s {
        acc += v;
        out.push(acc.clone());
    }
    FiniteSeq::new(out)
}

/// Running sums `S(1) + ... + S(i)`, same length as `S`.
pub fn partial_sums(s: &FiniteSeq) -> FiniteSeq {
    let mut acc = Rational::zero();
    s.iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect()
}

/// `S(a) + ... + S(b)`.
pub fn definite_integral(s: &FiniteSeq, bounds: DefiniteIntegralBounds) -> Result<Rational> {
    bounds.validate(s.len())?;
    Ok(s.values()[(bounds.a - 1) as usize..bounds.b as usize]
        .iter()
        .sum())
}
