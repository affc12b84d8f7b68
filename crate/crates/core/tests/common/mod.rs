//! Reference implementations used as oracles by the integration tests.
//! Nothing here calls into the library except for constructing values.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use seqcalc::{FiniteSeq, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn z(n: i64) -> Rational {
    Rational::integer(n)
}

pub fn ints(v: &[i64]) -> FiniteSeq {
    FiniteSeq::from_integers(v)
}

/// Pascal's triangle row `m`.
pub fn binomial_row(m: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..m {
        let mut next = vec![1i64; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row
}

/// `D^m S(i)` as the alternating binomial sum over `S(i..=i+m)`.
pub fn dm_at(s: &[Rational], i: usize, m: usize) -> Rational {
    let row = binomial_row(m);
    let mut acc = Rational::zero();
    for (k, c) in row.iter().enumerate() {
        let t = z(*c) * &s[i - 1 + k];
        if (m - k).is_multiple_of(2) {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    acc
}

/// Whole `D^m S` sequence from the binomial sum.
pub fn dm_seq(s: &FiniteSeq, m: usize) -> FiniteSeq {
    let v = s.values();
    (1..=v.len().saturating_sub(m))
        .map(|i| dm_at(v, i, m))
        .collect()
}

/// Cofactor expansion along the first row.
pub fn laplace(rows: &[Vec<Rational>]) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for c in 0..rows.len() {
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
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    acc
}

/// Horner evaluation of `sum c_k x^k`.
pub fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn random_seq(rng: &mut ChaCha8Rng, len: usize) -> FiniteSeq {
    (0..len).map(|_| random_rational(rng)).collect()
}

/// All integer sequences of length `len` with entries in `lo..=hi`.
pub fn all_int_sequences(len: usize, lo: i64, hi: i64) -> Vec<FiniteSeq> {
    let base = hi - lo + 1;
    let total = base.pow(len as u32);
    (0..total)
        .map(|code| {
            (0..len)
                .map(|d| z((code / base.pow(d as u32)) % base + lo))
                .collect()
        })
        .collect()
}
