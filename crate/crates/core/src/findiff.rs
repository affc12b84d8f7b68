//! Finite differences of functions sampled on an arithmetic grid.
//!
//! A [`GridFunction`] holds `f(x0 + (i-1)h)` at position `i`. Each operator
//! returns a grid function whose origin is the argument `x` of its first
//! sample. So `displacement(k)` for `k >= 0` keeps origin `x0` and reads
//! `f(x + kh)`, and for `k < 0` it starts at `x0 + |k|h`.

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seq::FiniteSeq;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GridFunction {
    x0: Rational,
    h: Rational,
    samples: FiniteSeq,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FdKind {
    /// `Δ_h f(x) = f(x+h) - f(x)`.
    Difference,
    /// `E_h^k f(x) = f(x + kh)`.
    Displacement(i64),
    /// `M_h f(x) = (f(x) + f(x+h))/2`.
    Mean,
    /// `D_h = Δ_h / h`.
    DiscreteDerivative,
}

impl GridFunction {
    pub fn new(x0: Rational, h: Rational, samples: FiniteSeq) -> Result<Self> {
        if !h.is_positive() {
            return Err(Error::BadParameter(format!(
                "grid step must be positive, got {h}"
            )));
        }
        Ok(GridFunction { x0, h, samples })
    }

    /// Sample `f` at `n` grid points starting from `x0`.
    pub fn sample(
        f: impl Fn(&Rational) -> Rational,
        x0: Rational,
        h: Rational,
        n: usize,
    ) -> Result<Self> {
        let samples = (0..n)
            .map(|k| f(&(&x0 + &h * Rational::integer(k as i64))))
            .collect();
        GridFunction::new(x0, h, samples)
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    pub fn samples(&self) -> &FiniteSeq {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Grid coordinate of 1-based position `i`.
    pub fn point(&self, i: usize) -> Rational {
        &self.x0 + &self.h * Rational::integer(i as i64 - 1)
    }

    fn with_samples(&self, x0: Rational, samples: Vec<Rational>) -> GridFunction {
        GridFunction {
            x0,
            h: self.h.clone(),
            samples: FiniteSeq::new(samples),
        }
    }

    pub fn apply(&self, kind: FdKind) -> Result<GridFunction> {
        let v = self.samples.values();
        let pairs = || v.windows(2);
        Ok(match kind {
            FdKind::Difference => {
                self.with_samples(self.x0.clone(), pairs().map(|w| &w[1] - &w[0]).collect())
            }
            FdKind::Mean => {
                let half = Rational::new(1, 2);
                self.with_samples(
                    self.x0.clone(),
                    pairs().map(|w| (&w[0] + &w[1]) * &half).collect(),
                )
            }
            FdKind::DiscreteDerivative => {
                let inv_h = self.h.recip().expect("grid step is positive");
                self.with_samples(
                    self.x0.clone(),
                    pairs().map(|w| (&w[1] - &w[0]) * &inv_h).collect(),
                )
            }
            FdKind::Displacement(k) => {
                let shift = k.unsigned_abs() as usize;
                if shift > v.len() {
                    return Err(Error::OutOfRange {
                        index: k,
                        len: v.len(),
                    });
                }
                if k >= 0 {
                    self.with_samples(self.x0.clone(), v[shift..].to_vec())
                } else {
                    let x0 = &self.x0 + &self.h * Rational::integer(shift as i64);
                    self.with_samples(x0, v[..v.len() - shift].to_vec())
                }
            }
        })
    }

    /// Restrict two functions on the same grid to the points both cover.
    ///
    /// Fails when the steps differ or the origins are not grid-aligned.
    pub fn common_range(&self, other: &GridFunction) -> Result<(GridFunction, GridFunction)> {
        if self.h != other.h {
            return Err(Error::BadParameter("grid steps differ".into()));
        }
        let offset = (&other.x0 - &self.x0) / &self.h;
        let offset = offset
            .to_i64()
            .ok_or_else(|| Error::BadParameter("grid origins are not aligned".into()))?;
        // Positions measured on self's grid.
        let lo = 0i64.max(offset);
        let hi = (self.len() as i64).min(offset + other.len() as i64);
        if hi <= lo {
            let x0 = &self.x0 + &self.h * Rational::integer(lo);
            return Ok((
                self.with_samples(x0.clone(), vec![]),
                other.with_samples(x0, vec![]),
            ));
        }
        let x0 = &self.x0 + &self.h * Rational::integer(lo);
        let a = self.samples.values()[lo as usize..hi as usize].to_vec();
        let b = other.samples.values()[(lo - offset) as usize..(hi - offset) as usize].to_vec();
        Ok((self.with_samples(x0.clone(), a), other.with_samples(x0, b)))
    }
}

pub fn fd_apply(kind: FdKind, g: &GridFunction) -> Result<GridFunction> {
    g.apply(kind)
}

/// Sup-norm distance between `D_h G` and reference derivative samples taken
/// at `x0, x0 + h, ..., x0 + (n-2)h`.
pub fn fd_derivative_error(g: &GridFunction, true_derivative: &FiniteSeq) -> Result<Rational> {
    let dh = g.apply(FdKind::DiscreteDerivative)?;
    if dh.len() != true_derivative.len() || g.is_empty() {
        return Err(Error::LengthMismatch {
            left: dh.len(),
            right: true_derivative.len(),
        });
    }
    Ok(dh
        .samples
        .iter()
        .zip(true_derivative)
        .map(|(a, b)| (a - b).abs())
        .max()
        .unwrap_or_else(Rational::zero))
}
