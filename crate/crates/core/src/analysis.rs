//! Monotonicity and convexity of sequences from the signs of their first and
//! second derivatives, plus the collinearity determinant of three
//! consecutive graph points.

use crate::calculus::derivative;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seq::FiniteSeq;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct MonotonicityReport {
    pub strictly_increasing: bool,
    pub strictly_decreasing: bool,
    pub increasing: bool,
    pub decreasing: bool,
    pub constant: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvexityReport {
    pub convex: bool,
    pub concave: bool,
    pub strictly_convex: bool,
    pub strictly_concave: bool,
    pub continuously_convex: bool,
    pub continuously_concave: bool,
    pub second_derivative: FiniteSeq,
}

/// Requires at least two terms.
pub fn classify_monotonicity(s: &FiniteSeq) -> Result<MonotonicityReport> {
    if s.len() < 2 {
        return Err(Error::TooShort {
            len: s.len(),
            min: 2,
        });
    }
    let ds = derivative(s, 1);
    let all = |p: fn(&Rational) -> bool| ds.iter().all(p);
    Ok(MonotonicityReport {
        strictly_increasing: all(Rational::is_positive),
        strictly_decreasing: all(Rational::is_negative),
        increasing: all(|v| !v.is_negative()),
        decreasing: all(|v| !v.is_positive()),
        constant: all(Rational::is_zero),
    })
}

struct ConvexFlags {
    convex: bool,
    strict: bool,
    continuous: bool,
}

fn convex_flags(d1: &FiniteSeq, d2: &FiniteSeq) -> ConvexFlags {
    let convex = d2.iter().all(|v| !v.is_negative());
    let strict = d2.iter().all(Rational::is_positive);
    let continuous = strict && d1.iter().all(|v| !v.is_zero());
    ConvexFlags {
        convex,
        strict,
        continuous,
    }
}

/// Requires at least three terms.
///
/// Convex means `D²S(i) >= 0` for every `i`, strictly convex `D²S(i) > 0`,
/// and continuously convex additionally `DS(i) != 0`. Each concave flag is
/// the convex flag of `-S`.
pub fn classify_convexity(s: &FiniteSeq) -> Result<ConvexityReport> {
    if s.len() < 3 {
        return Err(Error::TooShort {
            len: s.len(),
            min: 3,
        });
    }
    let d1 = derivative(s, 1);
    let d2 = derivative(&d1, 1);
    let up = convex_flags(&d1, &d2);
    let down = convex_flags(&d1.neg(), &d2.neg());
    Ok(ConvexityReport {
        convex: up.convex,
        concave: down.convex,
        strictly_convex: up.strict,
        strictly_concave: down.strict,
        continuously_convex: up.continuous,
        continuously_concave: down.continuous,
        second_derivative: d2,
    })
}

/// Determinant of the rows `(j, S(j), 1)` for `j = i, i+1, i+2`, expanded
/// along the last column. It equals `D²S(i)`.
pub fn collinearity_determinant(s: &FiniteSeq, i: usize) -> Result<Rational> {
    if i < 1 || i + 2 > s.len() {
        return Err(Error::OutOfRange {
            index: i as i64,
            len: s.len(),
        });
    }
    let x = |r: usize| Rational::integer((i + r) as i64);
    let y = |r: usize| s.at(i + r).clone();
    // Cofactors of the column of ones: +M13 - M23 + M33.
    let minor = |a: usize, b: usize| &x(a) * &y(b) - &x(b) * &y(a);
    Ok(minor(1, 2) - minor(0, 2) + minor(0, 1))
}

/// Area of the triangle spanned by three consecutive graph points: `|A|/2`.
pub fn triangle_area(s: &FiniteSeq, i: usize) -> Result<Rational> {
    Ok(collinearity_determinant(s, i)?.abs() / Rational::integer(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> FiniteSeq {
        FiniteSeq::from_integers(v)
    }

    #[test]
    fn monotonicity_examples() {
        let m = classify_monotonicity(&seq(&[1, 2, 3])).unwrap();
        assert!(m.strictly_increasing && m.increasing && !m.decreasing && !m.constant);

        let m = classify_monotonicity(&seq(&[1, 1, 2])).unwrap();
        assert!(m.increasing && !m.strictly_increasing);

        assert_eq!(
            classify_monotonicity(&seq(&[3, 1, 2])).unwrap(),
            MonotonicityReport::default()
        );

        let m = classify_monotonicity(&seq(&[4, 4])).unwrap();
        assert!(m.constant && m.increasing && m.decreasing);

        assert_eq!(
            classify_monotonicity(&seq(&[1])),
            Err(Error::TooShort { len: 1, min: 2 })
        );
    }

    #[test]
    fn convexity_examples() {
        let c = classify_convexity(&seq(&[1, 4, 9, 16])).unwrap();
        assert!(c.convex && c.strictly_convex && c.continuously_convex);
        assert!(!c.concave);
        assert_eq!(c.second_derivative, seq(&[2, 2]));

        let c = classify_convexity(&seq(&[0, 1, 2, 3])).unwrap();
        assert!(c.convex && c.concave && !c.strictly_convex && !c.strictly_concave);

        let c = classify_convexity(&seq(&[0, 1, 0])).unwrap();
        assert!(c.strictly_concave && c.continuously_concave && !c.convex);

        assert_eq!(
            classify_convexity(&seq(&[1, 2])),
            Err(Error::TooShort { len: 2, min: 3 })
        );
    }

    #[test]
    fn strictly_but_not_continuously_convex() {
        // DS = (-1, 0, 1) vanishes in the middle.
        let c = classify_convexity(&seq(&[1, 0, 0, 1])).unwrap();
        assert!(c.strictly_convex);
        assert!(!c.continuously_convex);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            collinearity_determinant(&seq(&[0, 1, 2]), 1).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            collinearity_determinant(&seq(&[1, 4, 9]), 1).unwrap(),
            Rational::integer(2)
        );
        let s = seq(&[3, -1, 4, 1, 5]);
        for i in 1..=3 {
            assert_eq!(
                collinearity_determinant(&s.neg(), i).unwrap(),
                -collinearity_determinant(&s, i).unwrap()
            );
        }
        assert_eq!(triangle_area(&seq(&[1, 4, 9]), 1).unwrap(), Rational::one());
        assert!(collinearity_determinant(&s, 4).is_err());
        assert!(collinearity_determinant(&s, 0).is_err());
    }
}
