//! Interpolation through consecutive graph points `(j, S(j))`.
//!
//! The interpolating polynomial through `j = n0..=n0+m` has leading
//! coefficient `D^m S(n0) / m!`, so its `m`-th derivative is the `m`-th
//! discrete derivative of the sequence. The same number falls out of
//! Cramer's rule on the Vandermonde system, computed here with exact
//! fraction-free determinants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seq::FiniteSeq;

/// Dense univariate polynomial; `coefficients()[k]` multiplies `x^k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Formal derivative `d/dx`.
    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::integer(k as i64))
                .collect(),
        )
    }

    /// Multiply by `(x - root)`.
    fn mul_linear(&self, root: &Rational) -> Polynomial {
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= &(c * root);
        }
        Polynomial::new(out)
    }

    fn scale(&self, lambda: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * lambda).collect())
    }

    fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| self.coefficient(k) + other.coefficient(k))
                .collect(),
        )
    }
}

/// Ascending powers with zero terms omitted, e.g. `1 - 2*x + 1/2*x^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = if first { c.clone() } else { c.abs() };
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (k, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (_, true) => write!(f, "{var}")?,
                _ => write!(f, "{magnitude}*{var}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn check_window(s: &FiniteSeq, n0: usize, m: usize) -> Result<()> {
    if n0 < 1 {
        return Err(Error::OutOfRange {
            index: n0 as i64,
            len: s.len(),
        });
    }
    if n0 + m > s.len() {
        return Err(Error::OutOfRange {
            index: (n0 + m) as i64,
            len: s.len(),
        });
    }
    Ok(())
}

/// Interpolating polynomial of degree `<= m` through `(j, S(j))`,
/// `j = n0..=n0+m`, assembled from the Lagrange basis.
pub fn lagrange_poly(s: &FiniteSeq, n0: usize, m: usize) -> Result<Polynomial> {
    check_window(s, n0, m)?;
    let nodes: Vec<i64> = (n0..=n0 + m).map(|j| j as i64).collect();
    let mut out = Polynomial::zero();
    for &j in &nodes {
        let mut basis = Polynomial::new(vec![Rational::one()]);
        let mut denom = Rational::one();
        for &k in nodes.iter().filter(|&&k| k != j) {
            basis = basis.mul_linear(&Rational::integer(k));
            denom *= &Rational::integer(j - k);
        }
        out = out.add(&basis.scale(&(s.at(j as usize) / &denom)));
    }
    Ok(out)
}

/// `m! * l_m`, the `m`-th derivative of the interpolating polynomial.
pub fn lagrange_mth_derivative(s: &FiniteSeq, n0: usize, m: usize) -> Result<Rational> {
    let poly = lagrange_poly(s, n0, m)?;
    Ok(Rational::factorial(m as u32) * poly.coefficient(m))
}

/// Actual degree of the interpolating polynomial; `None` when it is zero.
pub fn effective_degree(s: &FiniteSeq, n0: usize, m: usize) -> Result<Option<usize>> {
    Ok(lagrange_poly(s, n0, m)?.degree())
}

/// The two determinants of Cramer's rule for the leading coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CramerParts {
    /// `det(M_S)`: Vandermonde matrix with its `x^m` column replaced by the data.
    pub numerator: Rational,
    /// `det(V)` for rows `[(i+r)^m, ..., i+r, 1]`.
    pub denominator: Rational,
}

/// Rows `[(i+r)^m, (i+r)^(m-1), ..., 1]` for `r = 0..=m`.
pub fn vandermonde_rows(i: usize, m: usize) -> Vec<Vec<Rational>> {
    (0..=m)
        .map(|r| {
            let x = Rational::integer((i + r) as i64);
            (0..=m).rev().map(|p| x.pow(p as u32)).collect()
        })
        .collect()
}

pub fn cramer_parts(s: &FiniteSeq, i: usize, m: usize) -> Result<CramerParts> {
    check_window(s, i, m)?;
    let v = vandermonde_rows(i, m);
    let mut ms = v.clone();
    for (r, row) in ms.iter_mut().enumerate() {
        row[0] = s.at(i + r).clone();
    }
    Ok(CramerParts {
        numerator: determinant(&ms),
        denominator: determinant(&v),
    })
}

/// `m! * det(M_S) / det(V)`, equal to `D^m S(i)`.
pub fn dm_via_determinant(s: &FiniteSeq, i: usize, m: usize) -> Result<Rational> {
    let parts = cramer_parts(s, i, m)?;
    Ok(Rational::factorial(m as u32) * parts.numerator / parts.denominator)
}

/// Exact determinant of a square rational matrix.
///
/// Each row is cleared of denominators, then Bareiss elimination runs over
/// the integers; every division in it is exact.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &l;
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 {
        BigInt::one()
    } else {
        a[n - 1][n - 1].clone()
    };
    let det = if negate { -det } else { det };
    Rational::from_bigints(det, scale).expect("row scales are nonzero")
}
