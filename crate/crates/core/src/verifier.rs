//! Seeded identity checks.
//!
//! Each [`CheckName`] is one identity of the discrete calculus. A check runs
//! its fixed exhaustive instances (if any) and then `trials` randomized
//! instances. Trial `t` draws from a ChaCha stream keyed by `(seed, t)`, so a
//! report depends only on the [`CheckSpec`] and never on execution order.
//! Every library result is compared with an index-wise oracle written
//! directly from the defining formula.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{classify_convexity, collinearity_determinant, triangle_area};
use crate::calculus::{
    antiderivative, definite_integral, derivative, partial_sums, DefiniteIntegralBounds,
};
use crate::error::{Error, Result};
use crate::findiff::{FdKind, GridFunction};
use crate::lagrange::{
    cramer_parts, dm_via_determinant, effective_degree, lagrange_mth_derivative, lagrange_poly,
    vandermonde_rows,
};
use crate::ops::{bottom, middle, top, Monomial, OperatorPoly};
use crate::rational::Rational;
use crate::seq::FiniteSeq;

macro_rules! catalog {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// The closed catalog of checks.
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        pub enum CheckName {
            $($variant),*
        }

        impl CheckName {
            pub const ALL: &'static [CheckName] = &[$(CheckName::$variant),*];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $(CheckName::$variant => $name),*
                }
            }
        }

        impl FromStr for CheckName {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(CheckName::$variant),)*
                    _ => Err(Error::UnknownCheck(s.to_string())),
                }
            }
        }
    };
}

catalog! {
    ProductRule => "product_rule",
    QuotientRule => "quotient_rule",
    InverseRule => "inverse_rule",
    MeanInverse => "mean_inverse",
    IntByParts => "int_by_parts",
    AntiderivativeRoundtrip => "antiderivative_roundtrip",
    PartialSums => "partial_sums",
    HodBinomial => "hod_binomial",
    Ftc => "ftc",
    GeometricRule => "geometric_rule",
    ArithmeticRule => "arithmetic_rule",
    GeometricSum => "geometric_sum",
    ConvexityEquivalence => "convexity_equivalence",
    DetEqualsD2 => "det_equals_d2",
    LagrangeLeading => "lagrange_leading",
    LagrangeMth => "lagrange_mth",
    DetNormalization => "det_normalization",
    SymbolicLaws => "symbolic_laws",
    FdBridge => "fd_bridge",
}

impl CheckName {
    /// Shortest sequence length the check can sample.
    pub fn min_length(&self) -> usize {
        match self {
            CheckName::ConvexityEquivalence | CheckName::DetEqualsD2 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CheckSpec {
    pub name: CheckName,
    pub trials: usize,
    pub seed: u64,
    /// Inclusive `(low, high)` bounds on sampled sequence lengths.
    pub length_range: (usize, usize),
}

impl CheckSpec {
    pub fn new(name: CheckName, trials: usize, seed: u64, length_range: (usize, usize)) -> Self {
        CheckSpec {
            name,
            trials,
            seed,
            length_range,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.length_range;
        if self.trials == 0 {
            return Err(Error::Usage("trials must be positive".into()));
        }
        if lo < self.name.min_length() {
            return Err(Error::Usage(format!(
                "{} needs sequences of length >= {}, got minimum {lo}",
                self.name,
                self.name.min_length()
            )));
        }
        if lo > hi {
            return Err(Error::Usage(format!("empty length range {lo}..={hi}")));
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub name: String,
    pub trials_run: usize,
    /// Counterexamples, with sequences in the `inline:` literal format.
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Reports of several checks, in catalog order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SequenceKind {
    /// Numerators in `-9..=9`, denominators in `1..=9`.
    RandomRational,
    Arithmetic {
        start: Rational,
        difference: Rational,
    },
    Geometric {
        start: Rational,
        ratio: Rational,
    },
    Constant(Rational),
}

pub fn generate_sequence(kind: &SequenceKind, len: usize, seed: u64) -> Result<FiniteSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_sequence(kind, len, &mut rng)
}

fn sample_sequence(kind: &SequenceKind, len: usize, rng: &mut ChaCha8Rng) -> Result<FiniteSeq> {
    Ok(match kind {
        SequenceKind::RandomRational => (0..len).map(|_| random_rational(rng)).collect(),
        SequenceKind::Arithmetic { start, difference } => {
            recurrence(start, len, |prev| prev + difference)
        }
        SequenceKind::Geometric { start, ratio } => {
            if ratio.is_zero() {
                return Err(Error::BadParameter(
                    "geometric ratio must be nonzero".into(),
                ));
            }
            recurrence(start, len, |prev| prev * ratio)
        }
        SequenceKind::Constant(c) => FiniteSeq::constant(c.clone(), len),
    })
}

fn recurrence(start: &Rational, len: usize, step: impl Fn(&Rational) -> Rational) -> FiniteSeq {
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for k in 0..len {
        let next = if k == 0 {
            start.clone()
        } else {
            step(&out[k - 1])
        };
        out.push(next);
    }
    FiniteSeq::new(out)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_seq(rng: &mut ChaCha8Rng, len: usize) -> FiniteSeq {
    (0..len).map(|_| random_rational(rng)).collect()
}

/// Resample until no entry is zero.
fn random_nonzero_seq(rng: &mut ChaCha8Rng, len: usize) -> FiniteSeq {
    loop {
        let s = random_seq(rng, len);
        if !s.has_zero() {
            return s;
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Every integer sequence of length 4 with entries in `-2..=2`.
fn small_integer_sequences() -> impl Iterator<Item = FiniteSeq> {
    (0..625i64).map(|code| {
        (0..4)
            .map(|d| Rational::integer((code / 5i64.pow(d)) % 5 - 2))
            .collect()
    })
}

fn lit(s: &FiniteSeq) -> String {
    format!("inline:{}", s.to_literal())
}

fn int(n: i64) -> Rational {
    Rational::integer(n)
}

fn binomial(m: usize, k: usize) -> Rational {
    let mut row = vec![int(1)];
    for _ in 0..m {
        let mut next = vec![int(1); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row[k].clone()
}

/// `sum_k (-1)^k C(m,k) S(i+m-k)`, evaluated straight from the binomial expansion.
fn binomial_difference(s: &FiniteSeq, m: usize) -> FiniteSeq {
    let n = s.len();
    (1..=n.saturating_sub(m))
        .map(|i| {
            (0..=m)
                .map(|k| {
                    let t = binomial(m, k) * s.at(i + m - k);
                    if k % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        })
        .collect()
}

/// Apply an operator term by term: `sum coeff * S(i + bottom)` for `i <= n - max_degree`.
fn oracle_apply(p: &OperatorPoly, s: &FiniteSeq) -> FiniteSeq {
    let Some(d) = p.max_degree() else {
        return FiniteSeq::constant(Rational::zero(), s.len());
    };
    let n = s.len();
    (1..=n.saturating_sub(d as usize))
        .map(|i| {
            p.terms()
                .map(|(m, c)| c * s.at(i + m.bottom as usize))
                .sum()
        })
        .collect()
}

/// Laplace expansion along the first row.
fn laplace(rows: &[Vec<Rational>]) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    (0..rows.len())
        .map(|c| {
            let minor: Vec<Vec<Rational>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let t = &rows[0][c] * laplace(&minor);
            if c % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

fn superfactorial(m: usize) -> Rational {
    (0..=m as u32).map(Rational::factorial).product()
}

struct Runner {
    cases: usize,
    failures: Vec<String>,
}

impl Runner {
    fn case(&mut self) {
        self.cases += 1;
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(
        &mut self,
        left: &T,
        right: &T,
        what: impl FnOnce() -> String,
    ) {
        if left != right {
            self.failures
                .push(format!("{}: {left:?} != {right:?}", what()));
        }
    }

    fn expect_ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

/// Run one check.
pub fn run_check(spec: &CheckSpec) -> Result<CheckReport> {
    spec.validate()?;
    let mut runner = Runner {
        cases: 0,
        failures: Vec::new(),
    };
    exhaustive(spec.name, &mut runner);
    let (lo, hi) = spec.length_range;
    for t in 0..spec.trials {
        let mut rng = trial_rng(spec.seed, t);
        let n = rng.gen_range(lo..=hi);
        runner.case();
        trial(spec.name, t, n, &mut rng, &mut runner);
    }
    if spec.name == CheckName::DetNormalization {
        det_normalization_fixed(&mut runner);
    }
    Ok(CheckReport {
        name: spec.name.as_str().to_string(),
        trials_run: runner.cases,
        passed: runner.failures.is_empty(),
        failures: runner.failures,
    })
}

/// Run every catalog check, raising each length range to the check's minimum.
pub fn run_all(
    trials: usize,
    seed: u64,
    length_range: (usize, usize),
) -> Result<VerificationReport> {
    let checks = CheckName::ALL
        .iter()
        .map(|&name| {
            let lo = length_range.0.max(name.min_length());
            let hi = length_range.1.max(lo);
            run_check(&CheckSpec::new(name, trials, seed, (lo, hi)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport { checks })
}

fn exhaustive(name: CheckName, r: &mut Runner) {
    match name {
        CheckName::Ftc => {
            for s in small_integer_sequences() {
                for c in [int(0), Rational::new(5, 3)] {
                    ftc_all_bounds(&s, &c, r, "exhaustive");
                }
            }
        }
        CheckName::ConvexityEquivalence => {
            for s in small_integer_sequences() {
                r.case();
                convexity_equivalence(&s, r, "exhaustive");
            }
        }
        CheckName::DetEqualsD2 => {
            for s in small_integer_sequences() {
                r.case();
                det_equals_d2(&s, r, "exhaustive");
            }
        }
        CheckName::HodBinomial => {
            for m in 0..=8usize {
                r.case();
                let p = OperatorPoly::derivative().pow(m as u32);
                r.expect_eq(&p.num_terms(), &(m + 1), || format!("D^{m} term count"));
                for k in 0..=m {
                    let want = if k % 2 == 0 {
                        binomial(m, k)
                    } else {
                        -binomial(m, k)
                    };
                    r.expect_eq(&p.coefficient(k as u32, (m - k) as u32), &want, || {
                        format!("D^{m} coefficient of I^{k} E^{}", m - k)
                    });
                }
            }
        }
        CheckName::GeometricSum => {
            let ratios = [int(2), int(3), Rational::new(1, 2), int(-2)];
            for q in &ratios {
                for n in 3..=8 {
                    r.case();
                    geometric_sum(&int(1), q, n, r, "sweep");
                }
            }
        }
        _ => {}
    }
}

fn trial(name: CheckName, t: usize, n: usize, rng: &mut ChaCha8Rng, r: &mut Runner) {
    let tag = format!("trial {t}");
    match name {
        CheckName::ProductRule => {
            let s = random_seq(rng, n);
            let g = random_seq(rng, n);
            let ctx = || format!("{tag}: S={} G={}", lit(&s), lit(&g));
            let sg = s.mul(&g).unwrap();
            let lhs = derivative(&sg, 1);
            let oracle: FiniteSeq = (1..n)
                .map(|i| s.at(i + 1) * g.at(i + 1) - s.at(i) * g.at(i))
                .collect();
            r.expect_eq(&lhs, &oracle, || format!("{}: D(SG)", ctx()));
            let ds = derivative(&s, 1);
            let dg = derivative(&g, 1);
            let sym = ds
                .mul(&middle(&g))
                .unwrap()
                .add(&middle(&s).mul(&dg).unwrap())
                .unwrap();
            r.expect_eq(&sym, &oracle, || format!("{}: DS*MG + MS*DG", ctx()));
            let eq10 = bottom(&s)
                .mul(&bottom(&g))
                .unwrap()
                .sub(&top(&s).mul(&top(&g)).unwrap())
                .unwrap();
            r.expect_eq(&eq10, &oracle, || format!("{}: ES*EG - IS*IG", ctx()));
            let eq11 = ds
                .mul(&bottom(&g))
                .unwrap()
                .add(&top(&s).mul(&dg).unwrap())
                .unwrap();
            r.expect_eq(&eq11, &oracle, || format!("{}: DS*EG + IS*DG", ctx()));
            let eq12 = ds
                .mul(&top(&g))
                .unwrap()
                .add(&bottom(&s).mul(&dg).unwrap())
                .unwrap();
            r.expect_eq(&eq12, &oracle, || format!("{}: DS*IG + ES*DG", ctx()));
        }
        CheckName::QuotientRule => {
            let s = random_seq(rng, n);
            let g = random_nonzero_seq(rng, n);
            let ctx = || format!("{tag}: S={} G={}", lit(&s), lit(&g));
            let oracle: FiniteSeq = (1..n)
                .map(|i| s.at(i + 1) / g.at(i + 1) - s.at(i) / g.at(i))
                .collect();
            let Some(q) = r.expect_ok(s.div(&g), ctx) else {
                return;
            };
            r.expect_eq(&derivative(&q, 1), &oracle, || format!("{}: D(S/G)", ctx()));
            let num = derivative(&s, 1)
                .mul(&middle(&g))
                .unwrap()
                .sub(&derivative(&g, 1).mul(&middle(&s)).unwrap())
                .unwrap();
            let den = top(&g).mul(&bottom(&g)).unwrap();
            if let Some(rhs) = r.expect_ok(num.div(&den), ctx) {
                r.expect_eq(&rhs, &oracle, || {
                    format!("{}: (DS*MG - DG*MS)/(IG*EG)", ctx())
                });
            }
        }
        CheckName::InverseRule => {
            let s = random_nonzero_seq(rng, n);
            let ctx = || format!("{tag}: S={}", lit(&s));
            let oracle: FiniteSeq = (1..n)
                .map(|i| s.at(i + 1).recip().unwrap() - s.at(i).recip().unwrap())
                .collect();
            let Some(inv) = r.expect_ok(s.inverse(), ctx) else {
                return;
            };
            r.expect_eq(&derivative(&inv, 1), &oracle, || {
                format!("{}: D(S^-1)", ctx())
            });
            let den = top(&s).mul(&bottom(&s)).unwrap();
            if let Some(rhs) = r.expect_ok(derivative(&s, 1).neg().div(&den), ctx) {
                r.expect_eq(&rhs, &oracle, || format!("{}: -DS/(IS*ES)", ctx()));
            }
        }
        CheckName::MeanInverse => {
            let g = random_nonzero_seq(rng, n);
            let ctx = || format!("{tag}: G={}", lit(&g));
            let half = Rational::new(1, 2);
            let oracle: FiniteSeq = (1..n)
                .map(|i| (g.at(i).recip().unwrap() + g.at(i + 1).recip().unwrap()) * &half)
                .collect();
            let Some(inv) = r.expect_ok(g.inverse(), ctx) else {
                return;
            };
            r.expect_eq(&middle(&inv), &oracle, || format!("{}: M(G^-1)", ctx()));
            let den = top(&g).mul(&bottom(&g)).unwrap();
            if let Some(rhs) = r.expect_ok(middle(&g).div(&den), ctx) {
                r.expect_eq(&rhs, &oracle, || format!("{}: MG/(IG*EG)", ctx()));
            }
        }
        CheckName::IntByParts => {
            let s = random_seq(rng, n);
            let g = random_seq(rng, n);
            let c0 = random_rational(rng);
            let ctx = || format!("{tag}: S={} G={} c={c0}", lit(&s), lit(&g));
            let sg = s.mul(&g).unwrap();
            let c1 = sg.at(1) - &c0;
            let lhs = antiderivative(&derivative(&s, 1).mul(&middle(&g)).unwrap(), &c0);
            let rhs = sg
                .sub(&antiderivative(
                    &middle(&s).mul(&derivative(&g, 1)).unwrap(),
                    &c1,
                ))
                .unwrap();
            r.expect_eq(&derivative(&lhs, 1), &derivative(&rhs, 1), || {
                format!("{}: derivatives of both sides", ctx())
            });
            r.expect_eq(&lhs.first(), &rhs.first(), || {
                format!("{}: first entries", ctx())
            });
            r.expect_eq(&lhs, &rhs, || {
                format!("{}: J(DS*MG) = SG - J(MS*DG)", ctx())
            });
            // Summation form: sum_{j<i} (DS*MG)(j) = S(i)G(i) - S(1)G(1) - sum_{j<i} (MS*DG)(j).
            for i in 1..=n {
                let a: Rational = (1..i)
                    .map(|j| (s.at(j + 1) - s.at(j)) * (g.at(j) + g.at(j + 1)) / int(2))
                    .sum();
                let b: Rational = (1..i)
                    .map(|j| (s.at(j) + s.at(j + 1)) / int(2) * (g.at(j + 1) - g.at(j)))
                    .sum();
                r.expect_eq(&a, &(s.at(i) * g.at(i) - s.at(1) * g.at(1) - b), || {
                    format!("{}: summation form at {i}", ctx())
                });
            }
        }
        CheckName::AntiderivativeRoundtrip => {
            let s = random_seq(rng, n);
            let c = random_rational(rng);
            let ctx = || format!("{tag}: S={} c={c}", lit(&s));
            let j = antiderivative(&s, &c);
            let oracle: FiniteSeq = (1..=n + 1)
                .map(|i| (1..i).fold(c.clone(), |acc, k| acc + s.at(k)))
                .collect();
            r.expect_eq(&j, &oracle, || format!("{}: cumulative sums", ctx()));
            r.expect_eq(&derivative(&j, 1), &s, || format!("{}: D(J S) = S", ctx()));
            r.expect_eq(&antiderivative(&derivative(&s, 1), s.at(1)), &s, || {
                format!("{}: J(D S) = S with constant S(1)", ctx())
            });
        }
        CheckName::PartialSums => {
            let s = random_seq(rng, n);
            let c = random_rational(rng);
            let ctx = || format!("{tag}: S={} c={c}", lit(&s));
            let oracle: FiniteSeq = (1..=n)
                .map(|i| (1..=i).map(|k| s.at(k).clone()).sum())
                .collect();
            r.expect_eq(&partial_sums(&s), &oracle, || {
                format!("{}: partial sums", ctx())
            });
            let shifted = bottom(&antiderivative(&s, &c))
                .sub(&FiniteSeq::constant(c.clone(), n))
                .unwrap();
            r.expect_eq(&shifted, &oracle, || format!("{}: E(J S) - c", ctx()));
        }
        CheckName::HodBinomial => {
            let s = random_seq(rng, n);
            for m in 0..=8usize {
                let ctx = || format!("{tag}: S={} m={m}", lit(&s));
                let oracle = binomial_difference(&s, m);
                r.expect_eq(&derivative(&s, m), &oracle, || {
                    format!("{}: iterated D", ctx())
                });
                let op = OperatorPoly::derivative().pow(m as u32).apply(&s);
                r.expect_eq(&op, &oracle, || format!("{}: (E - I)^m applied", ctx()));
            }
        }
        CheckName::Ftc => {
            let s = random_seq(rng, n);
            let c = random_rational(rng);
            ftc_all_bounds(&s, &c, r, &tag);
        }
        CheckName::GeometricRule => {
            let start = random_nonzero(rng);
            let q = random_nonzero(rng);
            let kind = SequenceKind::Geometric {
                start: start.clone(),
                ratio: q.clone(),
            };
            let Some(s) = r.expect_ok(sample_sequence(&kind, n, rng), || tag.clone()) else {
                return;
            };
            let ctx = || format!("{tag}: S={} q={q}", lit(&s));
            let oracle: FiniteSeq = (1..n).map(|i| (&q - int(1)) * s.at(i)).collect();
            r.expect_eq(&derivative(&s, 1), &oracle, || format!("{}: DS", ctx()));
            r.expect_eq(&top(&s).scale(&(&q - int(1))), &oracle, || {
                format!("{}: (q-1) IS", ctx())
            });
            for i in 1..=n {
                r.expect_eq(s.at(i), &(&start * q.pow(i as u32 - 1)), || {
                    format!("{}: term {i}", ctx())
                });
            }
        }
        CheckName::ArithmeticRule => {
            let start = random_rational(rng);
            let d = random_rational(rng);
            let kind = SequenceKind::Arithmetic {
                start: start.clone(),
                difference: d.clone(),
            };
            let Some(s) = r.expect_ok(sample_sequence(&kind, n, rng), || tag.clone()) else {
                return;
            };
            let ctx = || format!("{tag}: S={} d={d}", lit(&s));
            let ds = derivative(&s, 1);
            let constant = FiniteSeq::constant(d.clone(), n - 1);
            r.expect_eq(&ds, &constant, || format!("{}: DS = (d)", ctx()));
            for i in 1..n {
                let closed = &start + Rational::integer(i as i64) * &d;
                r.expect_eq(s.at(i + 1), &closed, || {
                    format!("{}: S({}) closed form", ctx(), i + 1)
                });
                let integral =
                    definite_integral(&constant, DefiniteIntegralBounds::new(1, i as i64));
                if let Some(v) = r.expect_ok(integral, ctx) {
                    r.expect_eq(&(s.at(1) + &v), s.at(i + 1), || {
                        format!("{}: S(1) + integral of (d) to {i}", ctx())
                    });
                }
            }
            r.expect_eq(&antiderivative(&constant, s.at(1)), &s, || {
                format!("{}: J(d) = S", ctx())
            });
        }
        CheckName::GeometricSum => {
            let start = random_nonzero(rng);
            let q = loop {
                let q = random_nonzero(rng);
                if !q.is_one() {
                    break q;
                }
            };
            geometric_sum(&start, &q, n, r, &tag);
        }
        CheckName::ConvexityEquivalence => {
            let s = random_seq(rng, n);
            convexity_equivalence(&s, r, &tag);
        }
        CheckName::DetEqualsD2 => {
            let s = random_seq(rng, n);
            det_equals_d2(&s, r, &tag);
        }
        CheckName::LagrangeLeading => {
            let s = random_seq(rng, n);
            for m in 0..=6.min(n - 1) {
                let n0 = rng.gen_range(1..=n - m);
                let ctx = || format!("{tag}: S={} n0={n0} m={m}", lit(&s));
                let Some(p) = r.expect_ok(lagrange_poly(&s, n0, m), ctx) else {
                    continue;
                };
                for j in n0..=n0 + m {
                    r.expect_eq(&p.evaluate(&int(j as i64)), s.at(j), || {
                        format!("{}: node {j}", ctx())
                    });
                }
                r.expect(p.degree().is_none_or(|d| d <= m), || {
                    format!("{}: degree above m", ctx())
                });
                let dm = binomial_difference(&s, m).at(n0).clone();
                let lead = Rational::factorial(m as u32) * p.coefficient(m);
                r.expect_eq(&lead, &dm, || format!("{}: m! l_m", ctx()));
                if let Some(deg) = r.expect_ok(effective_degree(&s, n0, m), ctx) {
                    r.expect_eq(&(deg == Some(m)), &!dm.is_zero(), || {
                        format!("{}: degree law", ctx())
                    });
                }
            }
        }
        CheckName::LagrangeMth => {
            let s = random_seq(rng, n);
            for m in 0..=6.min(n - 1) {
                let n0 = rng.gen_range(1..=n - m);
                let ctx = || format!("{tag}: S={} n0={n0} m={m}", lit(&s));
                // sum_j (-1)^(m+j-n0) C(m, j-n0) S(j)
                let oracle: Rational = (n0..=n0 + m)
                    .map(|j| {
                        let t = binomial(m, j - n0) * s.at(j);
                        if (m + j - n0) % 2 == 0 {
                            t
                        } else {
                            -t
                        }
                    })
                    .sum();
                if let Some(v) = r.expect_ok(lagrange_mth_derivative(&s, n0, m), ctx) {
                    r.expect_eq(&v, &oracle, || format!("{}: m-th derivative of L", ctx()));
                }
                r.expect_eq(derivative(&s, m).at(n0), &oracle, || {
                    format!("{}: D^m S(n0)", ctx())
                });
                if let Some(p) = r.expect_ok(lagrange_poly(&s, n0, m), ctx) {
                    let dp = (0..m).fold(p, |q, _| q.derivative());
                    let x = random_rational(rng);
                    r.expect_eq(&dp.evaluate(&x), &oracle, || {
                        format!("{}: d^m/dx^m L at {x}", ctx())
                    });
                }
            }
        }
        CheckName::DetNormalization => {
            let s = random_seq(rng, n);
            let m = rng.gen_range(1..=5.min(n - 1));
            let i = rng.gen_range(1..=n - m);
            det_normalization_case(&s, i, m, r, &tag);
        }
        CheckName::SymbolicLaws => symbolic_laws(n, rng, r, &tag),
        CheckName::FdBridge => fd_bridge(n, rng, r, &tag),
    }
}

fn ftc_all_bounds(s: &FiniteSeq, c: &Rational, r: &mut Runner, tag: &str) {
    let n = s.len();
    let j = antiderivative(s, c);
    for a in 1..=n {
        for b in a..=n {
            r.case();
            let ctx = || format!("{tag}: S={} c={c} a={a} b={b}", lit(s));
            let mut oracle = Rational::zero();
            for k in a..=b {
                oracle += s.at(k);
            }
            let bounds = DefiniteIntegralBounds::new(a as i64, b as i64);
            if let Some(v) = r.expect_ok(definite_integral(s, bounds), ctx) {
                r.expect_eq(&v, &oracle, || format!("{}: definite integral", ctx()));
            }
            r.expect_eq(&(j.at(b + 1) - j.at(a)), &oracle, || {
                format!("{}: I(b+1) - I(a)", ctx())
            });
        }
    }
}

fn geometric_sum(start: &Rational, q: &Rational, n: usize, r: &mut Runner, tag: &str) {
    let kind = SequenceKind::Geometric {
        start: start.clone(),
        ratio: q.clone(),
    };
    let s = match generate_sequence(&kind, n, 0) {
        Ok(s) => s,
        Err(e) => return r.expect(false, || format!("{tag}: {e}")),
    };
    let ctx = || format!("{tag}: S={} q={q}", lit(&s));
    let closed = start * (int(1) - q.pow(n as u32 - 1)) / (int(1) - q);
    let by_ends = (s.at(n) - s.at(1)) / (q - int(1));
    let integral = definite_integral(&top(&s), DefiniteIntegralBounds::new(1, n as i64 - 1));
    if let Some(v) = r.expect_ok(integral, ctx) {
        r.expect_eq(&v, &closed, || format!("{}: S(1)(1-q^(n-1))/(1-q)", ctx()));
        r.expect_eq(&v, &by_ends, || format!("{}: (S(n)-S(1))/(q-1)", ctx()));
    }
}

fn convexity_equivalence(s: &FiniteSeq, r: &mut Runner, tag: &str) {
    let n = s.len();
    let ctx = || format!("{tag}: S={}", lit(s));
    let Some(rep) = r.expect_ok(classify_convexity(s), ctx) else {
        return;
    };
    let Some(neg) = r.expect_ok(classify_convexity(&s.neg()), ctx) else {
        return;
    };
    let triples = 1..=n - 2;
    let chord_mid = |i: usize| (s.at(i) + s.at(i + 2)) / int(2);

    // Strict convexity, non-collinear triples bending downward, positive determinants.
    let below = triples
        .clone()
        .all(|i| s.at(i + 1) != &chord_mid(i) && s.at(i + 1) < &chord_mid(i));
    let above = triples
        .clone()
        .all(|i| s.at(i + 1) != &chord_mid(i) && s.at(i + 1) > &chord_mid(i));
    let dets: Vec<Rational> = triples
        .clone()
        .filter_map(|i| collinearity_determinant(s, i).ok())
        .collect();
    let pos = dets.len() == n - 2 && dets.iter().all(Rational::is_positive);
    let negd = dets.len() == n - 2 && dets.iter().all(Rational::is_negative);
    r.expect(rep.strictly_convex == below && below == pos, || {
        format!(
            "{}: strict convexity {} / chord {} / determinant {}",
            ctx(),
            rep.strictly_convex,
            below,
            pos
        )
    });
    r.expect(rep.strictly_concave == above && above == negd, || {
        format!(
            "{}: strict concavity {} / chord {} / determinant {}",
            ctx(),
            rep.strictly_concave,
            above,
            negd
        )
    });

    let midpoint_convex = triples.clone().all(|i| s.at(i + 1) <= &chord_mid(i));
    r.expect_eq(&rep.convex, &midpoint_convex, || {
        format!("{}: midpoint characterization", ctx())
    });
    let no_flat = (1..n).all(|i| s.at(i + 1) != s.at(i));
    r.expect_eq(
        &rep.continuously_convex,
        &(rep.strictly_convex && no_flat),
        || format!("{}: continuous convexity", ctx()),
    );
    r.expect(!rep.strictly_convex || rep.convex, || {
        format!("{}: strict without plain", ctx())
    });
    r.expect(!rep.continuously_convex || rep.strictly_convex, || {
        format!("{}: continuous without strict", ctx())
    });
    let swapped = (
        neg.concave,
        neg.strictly_concave,
        neg.continuously_concave,
        neg.convex,
    );
    r.expect_eq(
        &(
            rep.convex,
            rep.strictly_convex,
            rep.continuously_convex,
            rep.concave,
        ),
        &swapped,
        || format!("{}: negation duality", ctx()),
    );
}

fn det_equals_d2(s: &FiniteSeq, r: &mut Runner, tag: &str) {
    let ctx = || format!("{tag}: S={}", lit(s));
    let d2 = derivative(s, 2);
    for i in 1..=s.len() - 2 {
        let direct = s.at(i + 2) - int(2) * s.at(i + 1) + s.at(i);
        let Some(a) = r.expect_ok(collinearity_determinant(s, i), ctx) else {
            continue;
        };
        r.expect_eq(&a, &direct, || format!("{}: A at {i}", ctx()));
        r.expect_eq(d2.at(i), &direct, || format!("{}: D^2 S at {i}", ctx()));
        if let Some(a_neg) = r.expect_ok(collinearity_determinant(&s.neg(), i), ctx) {
            r.expect_eq(&a_neg, &-&a, || format!("{}: A(-S) at {i}", ctx()));
        }
        // Shoelace formula.
        let (x0, x1, x2) = (int(i as i64), int(i as i64 + 1), int(i as i64 + 2));
        let (y0, y1, y2) = (s.at(i), s.at(i + 1), s.at(i + 2));
        let shoelace = (&x0 * (y1 - y2) + &x1 * (y2 - y0) + &x2 * (y0 - y1)).abs() / int(2);
        if let Some(area) = r.expect_ok(triangle_area(s, i), ctx) {
            r.expect_eq(&area, &shoelace, || {
                format!("{}: triangle area at {i}", ctx())
            });
        }
    }
}

/// Bare Cramer numerator and Cramer-corrected value against exact oracles.
/// Returns whether the bare numerator differs from `D^m S(i)`.
fn det_normalization_case(s: &FiniteSeq, i: usize, m: usize, r: &mut Runner, tag: &str) -> bool {
    let ctx = || format!("{tag}: S={} i={i} m={m}", lit(s));
    let dm = binomial_difference(s, m).at(i).clone();
    if let Some(v) = r.expect_ok(dm_via_determinant(s, i, m), ctx) {
        r.expect_eq(&v, &dm, || format!("{}: m! det(M_S)/det(V)", ctx()));
    }
    let Some(parts) = r.expect_ok(cramer_parts(s, i, m), ctx) else {
        return false;
    };
    let v = vandermonde_rows(i, m);
    let mut ms = v.clone();
    for (k, row) in ms.iter_mut().enumerate() {
        row[0] = s.at(i + k).clone();
    }
    // Reversing m+1 columns takes floor((m+1)/2) swaps of the ascending Vandermonde.
    let sign = if m.div_ceil(2).is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    };
    let det_v = &sign * superfactorial(m);
    r.expect_eq(&parts.denominator, &laplace(&v), || {
        format!("{}: det(V) by cofactors", ctx())
    });
    r.expect_eq(&parts.denominator, &det_v, || {
        format!("{}: det(V) = ±superfactorial", ctx())
    });
    r.expect_eq(&parts.numerator, &laplace(&ms), || {
        format!("{}: det(M_S) by cofactors", ctx())
    });
    let bare_expected = &dm * &det_v / Rational::factorial(m as u32);
    r.expect_eq(&parts.numerator, &bare_expected, || {
        format!("{}: det(M_S) = D^m S det(V)/m!", ctx())
    });
    parts.numerator != dm
}

/// Fixed instances pinning the normalization factor.
fn det_normalization_fixed(r: &mut Runner) {
    // m = 2: the A-determinant (rows (j, S(j), 1)) equals D^2 S(i); the Cramer
    // numerator with the data in the first column is its negative.
    r.case();
    let squares = FiniteSeq::from_integers(&[1, 4, 9]);
    det_normalization_case(&squares, 1, 2, r, "fixed m=2");
    let a = collinearity_determinant(&squares, 1).ok();
    r.expect_eq(&a, &Some(int(2)), || "fixed m=2: A-determinant".into());
    let parts = cramer_parts(&squares, 1, 2).ok();
    r.expect_eq(
        &parts.map(|p| (p.numerator, p.denominator)),
        &Some((int(-2), int(-2))),
        || "fixed m=2: Cramer determinants".into(),
    );

    // m = 3 on cubes: corrected value 6, bare numerator 12 = 2 * 6.
    r.case();
    let cubes = FiniteSeq::from_integers(&[1, 8, 27, 64]);
    let mismatch = det_normalization_case(&cubes, 1, 3, r, "fixed m=3");
    r.expect_eq(
        &dm_via_determinant(&cubes, 1, 3).ok(),
        &Some(int(6)),
        || "fixed m=3: corrected".into(),
    );
    if let Ok(parts) = cramer_parts(&cubes, 1, 3) {
        r.expect_eq(&parts.numerator, &int(12), || {
            "fixed m=3: bare determinant".into()
        });
        let factor = parts.denominator.abs() / Rational::factorial(3);
        r.expect_eq(&factor, &int(2), || "fixed m=3: |det V|/3!".into());
        r.expect_eq(&(&parts.numerator / int(6)), &factor, || {
            "fixed m=3: bare/corrected".into()
        });
    }
    r.expect(mismatch, || {
        "fixed m=3: bare determinant unexpectedly equals D^3 S".into()
    });
}

fn random_operator(rng: &mut ChaCha8Rng) -> OperatorPoly {
    let k = rng.gen_range(0..=4);
    OperatorPoly::from_terms((0..k).map(|_| {
        (
            Monomial::new(rng.gen_range(0..=2), rng.gen_range(0..=2)),
            random_rational(rng),
        )
    }))
}

/// Nonzero; terms may cancel, so resample until something survives.
fn random_homogeneous(rng: &mut ChaCha8Rng) -> OperatorPoly {
    loop {
        let d = rng.gen_range(0..=2u32);
        let k = rng.gen_range(1..=3);
        let p = OperatorPoly::from_terms((0..k).map(|_| {
            let a = rng.gen_range(0..=d);
            (Monomial::new(a, d - a), random_nonzero(rng))
        }));
        if !p.is_zero() {
            return p;
        }
    }
}

fn symbolic_laws(n: usize, rng: &mut ChaCha8Rng, r: &mut Runner, tag: &str) {
    let p = random_operator(rng);
    let q = random_operator(rng);
    let w = random_operator(rng);
    let ctx = || format!("{tag}: P={p} Q={q} R={w}");
    r.expect_eq(&(&p + &q), &(&q + &p), || format!("{}: P+Q = Q+P", ctx()));
    r.expect_eq(&(&p * &q), &(&q * &p), || format!("{}: PQ = QP", ctx()));
    r.expect_eq(&(&p + &(&q + &w)), &(&(&p + &q) + &w), || {
        format!("{}: + associativity", ctx())
    });
    r.expect_eq(&(&p * &(&q * &w)), &(&(&p * &q) * &w), || {
        format!("{}: * associativity", ctx())
    });
    r.expect_eq(&(&p * &(&q + &w)), &(&(&p * &q) + &(&p * &w)), || {
        format!("{}: distribution", ctx())
    });

    let s = random_seq(rng, n);
    let g = random_seq(rng, n);
    let lambda = random_rational(rng);
    let ctx = || format!("{tag}: P={p} S={} G={} lambda={lambda}", lit(&s), lit(&g));
    r.expect_eq(&p.apply(&s), &oracle_apply(&p, &s), || {
        format!("{}: apply", ctx())
    });
    let combo = s.scale(&lambda).add(&g).unwrap();
    let linear = p.apply(&s).scale(&lambda).add(&p.apply(&g)).unwrap();
    r.expect_eq(&p.apply(&combo), &linear, || {
        format!("{}: linearity", ctx())
    });
    if !p.is_zero() {
        r.expect_eq(&p.apply(&FiniteSeq::empty()), &FiniteSeq::empty(), || {
            format!("{}: P(∅)", ctx())
        });
    }

    let h1 = random_homogeneous(rng);
    let h2 = random_homogeneous(rng);
    r.expect_eq(&(&h1 * &h2).apply(&s), &h1.apply(&h2.apply(&s)), || {
        format!(
            "{tag}: H1={h1} H2={h2} S={}: homogeneous composition",
            lit(&s)
        )
    });

    let half = Rational::new(1, 2);
    let (one, i_op, e_op) = (
        OperatorPoly::identity(),
        OperatorPoly::top(),
        OperatorPoly::bottom(),
    );
    r.expect_eq(
        &OperatorPoly::middle(),
        &(&i_op + &e_op).scale(&half),
        || "M = (I+E)/2".into(),
    );
    r.expect_eq(&OperatorPoly::derivative(), &(&e_op - &i_op), || {
        "D = E - I".into()
    });
    r.expect(one != i_op, || "1 and I must be distinct".into());
}

fn fd_bridge(n: usize, rng: &mut ChaCha8Rng, r: &mut Runner, tag: &str) {
    let s = random_seq(rng, n);
    let x0 = random_rational(rng);
    let ctx = || format!("{tag}: S={} x0={x0}", lit(&s));
    let Some(g) = r.expect_ok(GridFunction::new(x0.clone(), int(1), s.clone()), ctx) else {
        return;
    };
    let fd = |k: FdKind, g: &GridFunction| g.apply(k).map(|out| out.samples().clone());
    let diff = fd(FdKind::Difference, &g).ok();
    r.expect_eq(&diff, &Some(OperatorPoly::derivative().apply(&s)), || {
        format!("{}: Δ_1 = D", ctx())
    });
    let mean = fd(FdKind::Mean, &g).ok();
    r.expect_eq(&mean, &Some(OperatorPoly::middle().apply(&s)), || {
        format!("{}: M_1 = M", ctx())
    });
    let d1 = fd(FdKind::DiscreteDerivative, &g).ok();
    r.expect_eq(&d1, &diff, || format!("{}: D_1 = Δ_1", ctx()));
    for k in 1..=n {
        let pk = s.prefix(k).unwrap();
        r.expect_eq(&top(&pk), &s.prefix(k - 1).unwrap(), || {
            format!("{}: I S_{k} = S_{}", ctx(), k - 1)
        });
    }

    // General step h.
    let h = loop {
        let h = random_rational(rng).abs();
        if h.is_positive() {
            break h;
        }
    };
    let ctx = || format!("{tag}: S={} x0={x0} h={h}", lit(&s));
    let Some(g) = r.expect_ok(GridFunction::new(x0.clone(), h.clone(), s.clone()), ctx) else {
        return;
    };
    let (Ok(e0), Ok(e1)) = (
        g.apply(FdKind::Displacement(0)),
        g.apply(FdKind::Displacement(1)),
    ) else {
        return r.expect(false, || format!("{}: displacement failed", ctx()));
    };
    let Some((a, b)) = r.expect_ok(e1.common_range(&e0), ctx) else {
        return;
    };
    let diff = g.apply(FdKind::Difference).unwrap();
    r.expect_eq(diff.samples(), &b_minus_a(&a, &b), || {
        format!("{}: Δ = E - 1", ctx())
    });
    let mean = g.apply(FdKind::Mean).unwrap();
    let avg: FiniteSeq = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(u, v)| (u + v) / int(2))
        .collect();
    r.expect_eq(mean.samples(), &avg, || format!("{}: M = (1 + E)/2", ctx()));
    let dh = g.apply(FdKind::DiscreteDerivative).unwrap();
    r.expect_eq(
        dh.samples(),
        &diff.samples().scale(&h.recip().unwrap()),
        || format!("{}: D_h = Δ/h", ctx()),
    );

    let (p, q) = (rng.gen_range(-3..=3i64), rng.gen_range(-3..=3i64));
    let composed = g
        .apply(FdKind::Displacement(p))
        .and_then(|x| x.apply(FdKind::Displacement(q)));
    let direct = g.apply(FdKind::Displacement(p + q));
    if let (Ok(c), Ok(d)) = (composed, direct) {
        match c.common_range(&d) {
            Ok((u, v)) => r.expect_eq(u.samples(), v.samples(), || {
                format!("{}: E^{p} E^{q} = E^{}", ctx(), p + q)
            }),
            Err(e) => r.expect(false, || format!("{}: alignment {e}", ctx())),
        }
    }
}

/// Samplewise `b - a` (first argument is `E^1`, second `E^0`).
fn b_minus_a(e1: &GridFunction, e0: &GridFunction) -> FiniteSeq {
    e1.samples()
        .sub(e0.samples())
        .expect("aligned ranges have equal length")
}
