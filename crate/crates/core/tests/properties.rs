//! Property tests for the algebraic laws of every module.

mod common;

use common::*;
use num_integer::Integer;
use proptest::prelude::*;

use seqcalc::analysis::{classify_convexity, collinearity_determinant};
use seqcalc::calculus::{antiderivative, definite_integral, derivative, DefiniteIntegralBounds};
use seqcalc::dsl::{parse_operator, parse_sequence_text, render_sequence, SourceFormat};
use seqcalc::findiff::{FdKind, GridFunction};
use seqcalc::lagrange::{dm_via_determinant, effective_degree, lagrange_poly};
use seqcalc::ops::{bottom, middle, top, Generator};
use seqcalc::verifier::{run_check, CheckName, CheckSpec};
use seqcalc::{FiniteSeq, Monomial, OperatorExpr, OperatorPoly, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn seq_of(len: impl Into<prop::collection::SizeRange>) -> impl Strategy<Value = FiniteSeq> {
    prop::collection::vec(rational(), len).prop_map(FiniteSeq::new)
}

fn nonzero_seq_of(len: impl Into<prop::collection::SizeRange>) -> impl Strategy<Value = FiniteSeq> {
    prop::collection::vec(nonzero_rational(), len).prop_map(FiniteSeq::new)
}

/// Two sequences of one shared length.
fn seq_pair(min: usize, max: usize) -> impl Strategy<Value = (FiniteSeq, FiniteSeq)> {
    (min..=max).prop_flat_map(|n| (seq_of(n), seq_of(n)))
}

fn operator() -> impl Strategy<Value = OperatorPoly> {
    prop::collection::vec((0u32..=3, 0u32..=3, rational()), 0..5).prop_map(|terms| {
        OperatorPoly::from_terms(terms.into_iter().map(|(a, b, c)| (Monomial::new(a, b), c)))
    })
}

fn homogeneous() -> impl Strategy<Value = OperatorPoly> {
    (0u32..=3)
        .prop_flat_map(|d| {
            prop::collection::vec((0..=d, nonzero_rational()), 1..4).prop_map(move |terms| {
                OperatorPoly::from_terms(
                    terms.into_iter().map(|(a, c)| (Monomial::new(a, d - a), c)),
                )
            })
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn expr() -> impl Strategy<Value = OperatorExpr> {
    let leaf = prop_oneof![
        (0usize..5).prop_map(|k| OperatorExpr::Generator(Generator::ALL[k])),
        rational().prop_map(OperatorExpr::Literal),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| OperatorExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| OperatorExpr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| OperatorExpr::Mul(Box::new(a), Box::new(b))),
            (inner, 0i64..=3).prop_map(|(a, e)| OperatorExpr::Pow(Box::new(a), e)),
        ]
    })
}

fn is_normalized(r: &Rational) -> bool {
    let d = r.denom();
    *d > 0.into() && r.numer().gcd(d) == 1.into()
}

proptest! {
    // Sequences.

    #[test]
    fn elementwise_ops_commute_and_associate((s, g) in seq_pair(0, 8), lambda in rational()) {
        prop_assert_eq!(s.add(&g).unwrap(), g.add(&s).unwrap());
        prop_assert_eq!(s.mul(&g).unwrap(), g.mul(&s).unwrap());
        let h = s.sub(&g).unwrap();
        prop_assert_eq!(s.add(&g).unwrap().add(&h).unwrap(), s.add(&g.add(&h).unwrap()).unwrap());
        prop_assert_eq!(s.mul(&g).unwrap().mul(&h).unwrap(), s.mul(&g.mul(&h).unwrap()).unwrap());
        let constant = FiniteSeq::constant(lambda.clone(), s.len());
        prop_assert_eq!(s.scale(&lambda), s.mul(&constant).unwrap());
    }

    #[test]
    fn arithmetic_results_are_normalized(a in rational(), b in nonzero_rational()) {
        for r in [&a + &b, &a - &b, &a * &b, &a / &b] {
            prop_assert!(is_normalized(&r), "{}", r);
        }
    }

    #[test]
    fn top_is_prefix(s in seq_of(1..10)) {
        prop_assert_eq!(OperatorPoly::top().apply(&s), s.prefix(s.len() - 1).unwrap());
    }

    #[test]
    fn inverse_multiplies_to_one(s in nonzero_seq_of(0..10)) {
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.mul(&inv).unwrap(), FiniteSeq::constant(Rational::one(), s.len()));
    }

    // Operators.

    #[test]
    fn ring_laws(p in operator(), q in operator(), r in operator()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &(&q + &r), &(&p + &q) + &r);
        prop_assert_eq!(&p * &(&q * &r), &(&p * &q) * &r);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, OperatorPoly::zero());
        prop_assert_eq!(&p * &OperatorPoly::identity(), p.clone());
    }

    #[test]
    fn application_is_linear(p in operator(), (s, g) in seq_pair(0, 9), lambda in rational()) {
        let lhs = p.apply(&s.scale(&lambda).add(&g).unwrap());
        let rhs = p.apply(&s).scale(&lambda).add(&p.apply(&g)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn application_matches_index_formula(p in operator(), s in seq_of(0..9)) {
        let got = p.apply(&s);
        match p.max_degree() {
            None => prop_assert_eq!(got, FiniteSeq::constant(Rational::zero(), s.len())),
            Some(d) => {
                let n = s.len();
                let want: FiniteSeq = (1..=n.saturating_sub(d as usize))
                    .map(|i| p.terms().map(|(m, c)| c * s.at(i + m.bottom as usize)).sum())
                    .collect();
                prop_assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn homogeneous_composition_is_a_homomorphism(p in homogeneous(), q in homogeneous(), s in seq_of(0..10)) {
        prop_assert_eq!((&p * &q).apply(&s), p.apply(&q.apply(&s)));
    }

    #[test]
    fn nonzero_operators_fix_the_empty_sequence(p in operator()) {
        prop_assume!(!p.is_zero());
        prop_assert_eq!(p.apply(&FiniteSeq::empty()), FiniteSeq::empty());
    }

    // Calculus.

    #[test]
    fn derivative_matches_binomial_sum(s in seq_of(0..10), m in 0usize..=8) {
        prop_assert_eq!(derivative(&s, m), dm_seq(&s, m));
        prop_assert_eq!(OperatorPoly::derivative().pow(m as u32).apply(&s), dm_seq(&s, m));
    }

    #[test]
    fn antiderivative_inverts_derivative(s in seq_of(1..10), c in rational()) {
        prop_assert_eq!(derivative(&antiderivative(&s, &c), 1), s.clone());
        prop_assert_eq!(antiderivative(&derivative(&s, 1), s.at(1)), s);
    }

    #[test]
    fn fundamental_theorem(s in seq_of(1..10), c in rational(), a in 1usize..10, b in 1usize..10) {
        let n = s.len();
        let (a, b) = (a.min(b).min(n), a.max(b).min(n));
        let j = antiderivative(&s, &c);
        let direct: Rational = s.values()[a - 1..b].iter().cloned().sum();
        let got = definite_integral(&s, DefiniteIntegralBounds::new(a as i64, b as i64)).unwrap();
        prop_assert_eq!(&got, &direct);
        prop_assert_eq!(j.at(b + 1) - j.at(a), direct);
    }

    #[test]
    fn product_rule_in_all_forms((s, g) in seq_pair(1, 10)) {
        let want: FiniteSeq = (1..s.len())
            .map(|i| s.at(i + 1) * g.at(i + 1) - s.at(i) * g.at(i))
            .collect();
        let (ds, dg) = (derivative(&s, 1), derivative(&g, 1));
        prop_assert_eq!(derivative(&s.mul(&g).unwrap(), 1), want.clone());
        let sym = ds.mul(&middle(&g)).unwrap().add(&middle(&s).mul(&dg).unwrap()).unwrap();
        prop_assert_eq!(sym, want.clone());
        let left = ds.mul(&bottom(&g)).unwrap().add(&top(&s).mul(&dg).unwrap()).unwrap();
        prop_assert_eq!(left, want.clone());
        let right = ds.mul(&top(&g)).unwrap().add(&bottom(&s).mul(&dg).unwrap()).unwrap();
        prop_assert_eq!(right, want);
    }

    #[test]
    fn quotient_inverse_and_mean_inverse(s in seq_of(1..10).prop_flat_map(|s| {
        let n = s.len();
        (Just(s), nonzero_seq_of(n))
    })) {
        let (s, g) = s;
        let n = s.len();
        let ig_eg = top(&g).mul(&bottom(&g)).unwrap();
        let quotient: FiniteSeq = (1..n).map(|i| s.at(i + 1) / g.at(i + 1) - s.at(i) / g.at(i)).collect();
        let rule = derivative(&s, 1).mul(&middle(&g)).unwrap()
            .sub(&derivative(&g, 1).mul(&middle(&s)).unwrap()).unwrap()
            .div(&ig_eg).unwrap();
        prop_assert_eq!(derivative(&s.div(&g).unwrap(), 1), quotient.clone());
        prop_assert_eq!(rule, quotient);

        let inv = g.inverse().unwrap();
        let inverse: FiniteSeq = (1..n).map(|i| z(1) / g.at(i + 1) - z(1) / g.at(i)).collect();
        prop_assert_eq!(derivative(&inv, 1), inverse.clone());
        prop_assert_eq!(derivative(&g, 1).neg().div(&ig_eg).unwrap(), inverse);

        let mean: FiniteSeq = (1..n).map(|i| (z(1) / g.at(i) + z(1) / g.at(i + 1)) / z(2)).collect();
        prop_assert_eq!(middle(&inv), mean.clone());
        prop_assert_eq!(middle(&g).div(&ig_eg).unwrap(), mean);
    }

    #[test]
    fn integration_by_parts((s, g) in seq_pair(1, 10), c0 in rational()) {
        let sg = s.mul(&g).unwrap();
        let c1 = sg.at(1) - &c0;
        let lhs = antiderivative(&derivative(&s, 1).mul(&middle(&g)).unwrap(), &c0);
        let rhs = sg.sub(&antiderivative(&middle(&s).mul(&derivative(&g, 1)).unwrap(), &c1)).unwrap();
        prop_assert_eq!(derivative(&lhs, 1), derivative(&rhs, 1));
        prop_assert_eq!(lhs.at(1), rhs.at(1));
    }

    // Analysis.

    #[test]
    fn determinant_is_second_derivative(s in seq_of(3..10)) {
        for i in 1..=s.len() - 2 {
            prop_assert_eq!(collinearity_determinant(&s, i).unwrap(), dm_at(s.values(), i, 2));
        }
    }

    #[test]
    fn convexity_midpoint_and_duality(s in seq_of(3..10)) {
        let rep = classify_convexity(&s).unwrap();
        let v = s.values();
        let midpoint = (0..v.len() - 2).all(|k| v[k + 1] <= (&v[k] + &v[k + 2]) / z(2));
        prop_assert_eq!(rep.convex, midpoint);
        let neg = classify_convexity(&s.neg()).unwrap();
        prop_assert_eq!(rep.convex, neg.concave);
        prop_assert_eq!(rep.strictly_convex, neg.strictly_concave);
        prop_assert_eq!(rep.continuously_convex, neg.continuously_concave);
        prop_assert_eq!(rep.concave, neg.convex);
    }

    // Lagrange.

    #[test]
    fn lagrange_interpolates_and_leads_with_dm(s in seq_of(1..11), m in 0usize..=6, start in 0usize..10) {
        prop_assume!(m < s.len());
        let n0 = 1 + start % (s.len() - m);
        let p = lagrange_poly(&s, n0, m).unwrap();
        for j in n0..=n0 + m {
            prop_assert_eq!(&horner(p.coefficients(), &z(j as i64)), s.at(j));
        }
        let dm = dm_at(s.values(), n0, m);
        prop_assert_eq!(Rational::factorial(m as u32) * p.coefficient(m), dm.clone());
        prop_assert_eq!(effective_degree(&s, n0, m).unwrap() == Some(m), !dm.is_zero());
    }

    #[test]
    fn determinant_route_agrees(s in seq_of(2..11), m in 1usize..=5, start in 0usize..10) {
        prop_assume!(m < s.len());
        let i = 1 + start % (s.len() - m);
        let want = dm_at(s.values(), i, m);
        prop_assert_eq!(dm_via_determinant(&s, i, m).unwrap(), want.clone());
        let applied = OperatorPoly::derivative().pow(m as u32).apply(&s);
        prop_assert_eq!(applied.at(i), &want);
    }

    // Finite differences.

    #[test]
    fn finite_difference_identities(s in seq_of(1..10), x0 in rational(), h in rational(), a in -4i64..=4, b in -4i64..=4) {
        let h = h.abs();
        prop_assume!(h.is_positive());
        let g = GridFunction::new(x0, h.clone(), s.clone()).unwrap();
        let e0 = g.apply(FdKind::Displacement(0)).unwrap();
        let e1 = g.apply(FdKind::Displacement(1)).unwrap();
        let (u, v) = e0.common_range(&e1).unwrap();
        let diff = g.apply(FdKind::Difference).unwrap();
        prop_assert_eq!(diff.samples(), &v.samples().sub(u.samples()).unwrap());
        prop_assert_eq!(diff.x0(), u.x0());
        let mean = g.apply(FdKind::Mean).unwrap();
        let avg: FiniteSeq = u.samples().iter().zip(v.samples()).map(|(p, q)| (p + q) / z(2)).collect();
        prop_assert_eq!(mean.samples(), &avg);
        let dh = g.apply(FdKind::DiscreteDerivative).unwrap();
        prop_assert_eq!(dh.samples(), &diff.samples().scale(&(z(1) / &h)));

        if let (Ok(ab), Ok(direct)) = (
            g.apply(FdKind::Displacement(a)).and_then(|x| x.apply(FdKind::Displacement(b))),
            g.apply(FdKind::Displacement(a + b)),
        ) {
            let (p, q) = ab.common_range(&direct).unwrap();
            prop_assert_eq!(p.samples(), q.samples());
        }
    }

    #[test]
    fn unit_grid_matches_operators(s in seq_of(1..10), x0 in rational()) {
        let g = GridFunction::new(x0, z(1), s.clone()).unwrap();
        let diff = g.apply(FdKind::Difference).unwrap();
        let mean = g.apply(FdKind::Mean).unwrap();
        prop_assert_eq!(diff.samples(), &OperatorPoly::derivative().apply(&s));
        prop_assert_eq!(mean.samples(), &OperatorPoly::middle().apply(&s));
    }

    // Text surfaces.

    #[test]
    fn parser_round_trip(e in expr()) {
        let text = e.to_string();
        let parsed = parse_operator(&text).unwrap();
        prop_assert_eq!(parsed.canonicalize().unwrap(), e.canonicalize().unwrap());
        let canon = e.canonicalize().unwrap();
        prop_assert_eq!(parse_operator(&canon.to_string()).unwrap().canonicalize().unwrap(), canon);
    }

    #[test]
    fn ingestion_round_trip(s in seq_of(0..12)) {
        for format in SourceFormat::ALL {
            let doc = parse_sequence_text(&render_sequence(&s, format), format).unwrap();
            prop_assert_eq!(&doc.values, &s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_are_reproducible(seed in any::<u64>(), k in 0usize..19) {
        let name = CheckName::ALL[k];
        let spec = CheckSpec::new(name, 5, seed, (name.min_length(), 6));
        prop_assert_eq!(run_check(&spec).unwrap(), run_check(&spec).unwrap());
    }
}

#[test]
fn derivative_vanishes_exactly_on_constants() {
    for len in 1..=5 {
        for s in all_int_sequences(len, -2, 2) {
            let flat = derivative(&s, 1).iter().all(Rational::is_zero);
            let constant = s.values().windows(2).all(|w| w[0] == w[1]);
            assert_eq!(flat, constant, "{s}");
        }
    }
}

#[test]
fn derivative_powers_have_binomial_coefficients() {
    for m in 0..=8usize {
        let p = OperatorPoly::derivative().pow(m as u32);
        let row = binomial_row(m);
        assert_eq!(p.num_terms(), m + 1);
        for (k, c) in row.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                p.coefficient(k as u32, (m - k) as u32),
                z(sign * c),
                "m={m} k={k}"
            );
        }
    }
}
