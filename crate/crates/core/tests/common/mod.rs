#![allow(dead_code)]

use polyseq::rational::{int, ratio};
use polyseq::{HSpec, Rational, TruncMatrix};
use rand::Rng;

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform-ish rational in `[-bound, bound]` with denominator in `1..=6`.
pub fn rational_in(rng: &mut impl Rng, bound: i64) -> Rational {
    let q = rng.gen_range(1..=6);
    ratio(rng.gen_range(-bound * q..=bound * q), q)
}

pub fn nonzero_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let r = rational_in(rng, bound);
        if r != int(0) {
            return r;
        }
    }
}

pub fn random_tridiagonal(rng: &mut impl Rng, size: usize) -> HSpec {
    HSpec::Tridiagonal {
        beta: (0..size).map(|_| rational_in(rng, 5)).collect(),
        alpha: (1..size).map(|_| nonzero_rational(rng, 5)).collect(),
    }
}

/// Monic lower Hessenberg rows whose nonzero entries sit on diagonals
/// `-1..=lowest`; `lowest = None` fills the whole lower triangle. The lowest
/// diagonal of a banded matrix is kept nonzero.
pub fn random_hessenberg(rng: &mut impl Rng, size: usize, lowest: Option<usize>) -> HSpec {
    let rows = (0..size)
        .map(|i| {
            (0..=i + 1)
                .map(|k| {
                    if k == i + 1 {
                        return int(1);
                    }
                    let depth = i - k;
                    match lowest {
                        Some(l) if depth > l => int(0),
                        Some(l) if depth == l => nonzero_rational(rng, 3),
                        _ => rational_in(rng, 3),
                    }
                })
                .collect()
        })
        .collect();
    HSpec::Rows { rows }
}

pub fn identity_rows(n: usize) -> Vec<Vec<Rational>> {
    TruncMatrix::identity(n).rows()
}

pub fn parse_rows(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|s| polyseq::rational::parse(s).unwrap()).collect())
        .collect()
}

/// Dense monic lower Hessenberg specs with small rational entries.
pub fn hessenberg_strategy(size: usize) -> impl proptest::strategy::Strategy<Value = HSpec> {
    use proptest::prelude::*;
    let count = size * (size + 1) / 2;
    proptest::collection::vec((-6i64..=6, 1i64..=4), count).prop_map(move |entries| {
        let mut it = entries.into_iter();
        let rows = (0..size)
            .map(|i| {
                let mut row: Vec<Rational> = (0..=i).map(|_| {
                    let (p, q) = it.next().unwrap();
                    ratio(p, q)
                }).collect();
                row.push(int(1));
                row
            })
            .collect();
        HSpec::Rows { rows }
    })
}
