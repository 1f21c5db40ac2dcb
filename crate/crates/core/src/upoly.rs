//! Dense little-endian univariate polynomials over the rationals.
//! The zero polynomial is the empty vector.

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn eval(a: &[Rational], x: &Rational) -> Rational {
    a.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// `(H + j)`.
pub(crate) fn linear(j: i64) -> Vec<Rational> {
    let mut p = vec![int(j), Rational::one()];
    trim(&mut p);
    p
}

pub(crate) fn linear_pow(j: i64, m: u32) -> Vec<Rational> {
    let base = linear(j);
    (0..m).fold(vec![Rational::one()], |acc, _| mul(&acc, &base))
}

/// Divides by `(H + j)`; returns (quotient, remainder).
pub(crate) fn div_linear(a: &[Rational], j: i64) -> (Vec<Rational>, Rational) {
    if a.is_empty() {
        return (Vec::new(), Rational::zero());
    }
    // synthetic division at root -j
    let root = int(-j);
    let mut q = vec![Rational::zero(); a.len() - 1];
    let mut carry = Rational::zero();
    for i in (0..a.len()).rev() {
        let v = &a[i] + &carry * &root;
        if i == 0 {
            return (q, v);
        }
        q[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Returns (quotient, remainder) of `a / b`, `b` nonzero.
pub(crate) fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap();
    let mut q = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        q[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut q);
    (q, rem)
}

/// `a(H + c)` via Horner on the linear polynomial.
pub(crate) fn taylor_shift(a: &[Rational], c: i64) -> Vec<Rational> {
    let lin = linear(c);
    let mut out: Vec<Rational> = Vec::new();
    for coeff in a.iter().rev() {
        out = mul(&out, &lin);
        out = add(&out, std::slice::from_ref(coeff));
    }
    out
}

/// Truncated power series product, keeping terms below `order`.
pub(crate) fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            out[i + j] += x * y;
        }
    }
    out
}
