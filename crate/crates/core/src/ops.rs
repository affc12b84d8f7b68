//! The operator algebra generated by top (`I`) and bottom (`E`).
//!
//! Every operator built from `1`, `I`, `E`, `M = (I+E)/2` and `D = E-I` with
//! rational scalars, sums, compositions and powers lives in the commutative
//! polynomial ring Q[I, E]. [`OperatorPoly`] stores such an operator in
//! canonical sparse form, so two operators are symbolically equal exactly
//! when their term maps agree.
//!
//! Applying a monomial `I^a E^b` to a sequence of length `n` drops `b` terms
//! from the front and `a` from the back. A sum of monomials of different
//! degrees is truncated to the shortest result, `n - max_degree`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seq::FiniteSeq;

/// `I^top E^bottom`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub top: u32,
    pub bottom: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { top: 0, bottom: 0 };

    pub fn new(top: u32, bottom: u32) -> Self {
        Monomial { top, bottom }
    }

    pub fn degree(&self) -> u32 {
        self.top + self.bottom
    }
}

// Total degree first, then E-exponent: 1, I, E, I^2, I*E, E^2, ...
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.bottom).cmp(&(other.degree(), other.bottom))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |name: &str, exp: u32| match exp {
            0 => None,
            1 => Some(name.to_string()),
            e => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = [factor("I", self.top), factor("E", self.bottom)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OperatorPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl OperatorPoly {
    pub fn zero() -> Self {
        OperatorPoly::default()
    }

    pub fn monomial(coeff: Rational, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        OperatorPoly { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    /// `1`.
    pub fn identity() -> Self {
        Self::constant(Rational::one())
    }

    /// `I`, cuts off the last term.
    pub fn top() -> Self {
        Self::monomial(Rational::one(), Monomial::new(1, 0))
    }

    /// `E`, cuts off the first term.
    pub fn bottom() -> Self {
        Self::monomial(Rational::one(), Monomial::new(0, 1))
    }

    /// `M = (I + E)/2`.
    pub fn middle() -> Self {
        (Self::top() + Self::bottom()).scale(&Rational::new(1, 2))
    }

    /// `D = E - I`.
    pub fn derivative() -> Self {
        Self::bottom() - Self::top()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        terms.into_iter().fold(OperatorPoly::zero(), |acc, (m, c)| {
            acc + OperatorPoly::monomial(c, m)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `I^top E^bottom` (zero when absent).
    pub fn coefficient(&self, top: u32, bottom: u32) -> Rational {
        self.terms
            .get(&Monomial::new(top, bottom))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest total degree, `None` for the zero operator.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// All monomials share one total degree. The zero operator counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        if lambda.is_zero() {
            return OperatorPoly::zero();
        }
        OperatorPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * lambda)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = OperatorPoly::identity();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                if !coeff.is_zero() {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Apply the operator to a finite sequence.
    ///
    /// The result has length `max(n - max_degree, 0)` and
    /// `result(i) = sum of coeff(a, b) * S(i + b)`. The zero operator maps `S`
    /// to the all-zero sequence of the same length.
    pub fn apply(&self, s: &FiniteSeq) -> FiniteSeq {
        let n = s.len();
        let Some(d) = self.max_degree() else {
            return FiniteSeq::constant(Rational::zero(), n);
        };
        let out_len = n.saturating_sub(d as usize);
        let mut out = vec![Rational::zero(); out_len];
        if out_len == 0 {
            return FiniteSeq::new(out);
        }
        for (mono, coeff) in &self.terms {
            let shifted = s.window(1 + mono.bottom as usize, out_len);
            for (acc, v) in out.iter_mut().zip(shifted) {
                *acc += &(coeff * v);
            }
        }
        FiniteSeq::new(out)
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $trait<&'b OperatorPoly> for &'a OperatorPoly {
            type Output = OperatorPoly;
            fn $method(self, rhs: &'b OperatorPoly) -> OperatorPoly {
                let f: fn(&OperatorPoly, &OperatorPoly) -> OperatorPoly = $body;
                f(self, rhs)
            }
        }
        impl $trait<OperatorPoly> for OperatorPoly {
            type Output = OperatorPoly;
            fn $method(self, rhs: OperatorPoly) -> OperatorPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(*m, c.clone());
    }
    out
});

poly_binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(*m, -c);
    }
    out
});

poly_binop!(Mul, mul, |a, b| {
    let mut out = OperatorPoly::zero();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            out.add_term(
                Monomial::new(ma.top + mb.top, ma.bottom + mb.bottom),
                ca * cb,
            );
        }
    }
    out
});

impl Neg for OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        self.scale(&-Rational::one())
    }
}

/// Canonical text, e.g. `1/2*I + 1/2*E` or `I^2 - 2*I*E + E^2`.
///
/// Unit coefficients are omitted except on the constant term; a negative
/// leading coefficient is written as a signed literal (`-1*I + E`) so the
/// text stays inside the expression grammar.
impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mono, coeff)) in self.terms.iter().enumerate() {
            let magnitude = if k == 0 { coeff.clone() } else { coeff.abs() };
            if k > 0 {
                write!(f, "{}", if coeff.is_negative() { " - " } else { " + " })?;
            }
            if *mono == Monomial::ONE {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorPoly({self})")
    }
}

/// Named generators of the operator language.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    One,
    Top,
    Bottom,
    Middle,
    Derivative,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::One,
        Generator::Top,
        Generator::Bottom,
        Generator::Middle,
        Generator::Derivative,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            Generator::One => "1",
            Generator::Top => "I",
            Generator::Bottom => "E",
            Generator::Middle => "M",
            Generator::Derivative => "D",
        }
    }

    pub fn to_poly(self) -> OperatorPoly {
        match self {
            Generator::One => OperatorPoly::identity(),
            Generator::Top => OperatorPoly::top(),
            Generator::Bottom => OperatorPoly::bottom(),
            Generator::Middle => OperatorPoly::middle(),
            Generator::Derivative => OperatorPoly::derivative(),
        }
    }
}

/// Unsimplified operator expression, as produced by the parser.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OperatorExpr {
    Generator(Generator),
    Literal(Rational),
    Add(Box<OperatorExpr>, Box<OperatorExpr>),
    Sub(Box<OperatorExpr>, Box<OperatorExpr>),
    /// Composition.
    Mul(Box<OperatorExpr>, Box<OperatorExpr>),
    Pow(Box<OperatorExpr>, i64),
}

impl OperatorExpr {
    /// Expand into canonical form, substituting `M = (I+E)/2` and `D = E - I`.
    pub fn canonicalize(&self) -> Result<OperatorPoly> {
        Ok(match self {
            OperatorExpr::Generator(g) => g.to_poly(),
            OperatorExpr::Literal(c) => OperatorPoly::constant(c.clone()),
            OperatorExpr::Add(a, b) => a.canonicalize()? + b.canonicalize()?,
            OperatorExpr::Sub(a, b) => a.canonicalize()? - b.canonicalize()?,
            OperatorExpr::Mul(a, b) => a.canonicalize()? * b.canonicalize()?,
            OperatorExpr::Pow(base, exp) => {
                let e = u32::try_from(*exp).map_err(|_| Error::NegativePower(*exp))?;
                base.canonicalize()?.pow(e)
            }
        })
    }
}

/// Fully parenthesized text that parses back to an equivalent expression.
impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Generator(g) => write!(f, "{}", g.symbol()),
            OperatorExpr::Literal(c) if c.is_negative() => write!(f, "({c})"),
            OperatorExpr::Literal(c) => write!(f, "{c}"),
            OperatorExpr::Add(a, b) => write!(f, "({a} + {b})"),
            OperatorExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            OperatorExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            OperatorExpr::Pow(a, e) => write!(f, "({a})^{e}"),
        }
    }
}

/// `I` applied to `S`: drop the last term.
pub fn top(s: &FiniteSeq) -> FiniteSeq {
    OperatorPoly::top().apply(s)
}

/// `E` applied to `S`: drop the first term.
pub fn bottom(s: &FiniteSeq) -> FiniteSeq {
    OperatorPoly::bottom().apply(s)
}

/// `M` applied to `S`: mean of consecutive terms.
pub fn middle(s: &FiniteSeq) -> FiniteSeq {
    OperatorPoly::middle().apply(s)
}
