#![allow(dead_code)]

use std::collections::BTreeMap;

use jac_core::a1core::{A1Element, Generator};
use jac_core::rational::{int, ratio};
use jac_core::{FiniteMatrix, HUnit, Rational, ShiftRatFun, SkewLaurent};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_q(r: &mut ChaCha8Rng) -> Rational {
    let num = r.gen_range(-5i64..=5);
    let den = r.gen_range(1i64..=3);
    ratio(num, den)
}

pub fn nonzero_q(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_q(r);
        if q != int(0) {
            return q;
        }
    }
}

/// Numerator degree <= `deg`, up to `shifts` distinct denominator shifts.
pub fn ratfun(r: &mut ChaCha8Rng, deg: usize, shifts: usize) -> ShiftRatFun {
    let num: Vec<Rational> = (0..=r.gen_range(0..=deg)).map(|_| small_q(r)).collect();
    let mut den = BTreeMap::new();
    for _ in 0..r.gen_range(0..=shifts) {
        den.insert(r.gen_range(-4i64..=4), r.gen_range(1u32..=2));
    }
    ShiftRatFun::new(num, den)
}

pub fn skew(r: &mut ChaCha8Rng, lo: i64, hi: i64, terms: usize) -> SkewLaurent {
    let mut acc = SkewLaurent::zero();
    for _ in 0..r.gen_range(0..=terms) {
        let d = r.gen_range(lo..=hi);
        acc = &acc + &SkewLaurent::monomial(d, ratfun(r, 2, 2));
    }
    acc
}

pub fn matrix(r: &mut ChaCha8Rng, size: u64, entries: usize) -> FiniteMatrix {
    let mut m = FiniteMatrix::zero(1);
    for _ in 0..r.gen_range(0..=entries) {
        m.add_entry(
            vec![r.gen_range(0..size)],
            vec![r.gen_range(0..size)],
            small_q(r),
        );
    }
    m
}

pub fn matrix_n(r: &mut ChaCha8Rng, n: usize, size: u64, entries: usize) -> FiniteMatrix {
    let mut m = FiniteMatrix::zero(n);
    for _ in 0..r.gen_range(0..=entries) {
        let row = (0..n).map(|_| r.gen_range(0..size)).collect();
        let col = (0..n).map(|_| r.gen_range(0..size)).collect();
        m.add_entry(row, col, small_q(r));
    }
    m
}

/// Random element: a skew part with small poles plus a small matrix.
pub fn element(r: &mut ChaCha8Rng) -> A1Element {
    A1Element::new(skew(r, -2, 2, 3), matrix(r, 4, 3))
}

pub fn hunit(r: &mut ChaCha8Rng) -> HUnit {
    let mut exps = BTreeMap::new();
    for _ in 0..r.gen_range(0..=3) {
        exps.insert(r.gen_range(-3i64..=3), r.gen_range(-2i64..=2));
    }
    HUnit::new(exps)
}

/// A matrix with `det(1 + f) != 0`.
pub fn invertible_perturbation(r: &mut ChaCha8Rng, size: u64, entries: usize) -> FiniteMatrix {
    loop {
        let f = matrix(r, size, entries);
        if f.det_one_plus() != int(0) {
            return f;
        }
    }
}

pub fn gen(g: Generator) -> A1Element {
    A1Element::generator(&g).unwrap()
}

pub fn one_plus(f: &FiniteMatrix) -> A1Element {
    &A1Element::one() + &A1Element::from_mat(f.clone())
}
