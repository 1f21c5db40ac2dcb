//! Text forms of algebra elements in basis notation, readable back by the
//! expression parser.

use jac_core::tensorn::{basis_terms, BasisKey, PfTerm};
use jac_core::{A1Element, FiniteMatrix, HUnit, MinimalUnit, Rational, TensorElement};
use num_traits::{One, Signed};

use crate::elaborate::Operator;

fn name(base: &str, slot: usize, n: usize) -> String {
    if n == 1 {
        base.to_string()
    } else {
        format!("{base}{slot}")
    }
}

fn power(base: &str, e: i64) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

/// `H + j` written as a parenthesized base, or bare `H` when `j = 0`.
fn shifted(h: &str, j: i64) -> String {
    match j {
        0 => h.to_string(),
        j if j > 0 => format!("({h}+{j})"),
        j => format!("({h}-{})", -j),
    }
}

/// One basis element in slot `slot` of `n`, or `None` for the identity.
pub fn basis_key(k: &BasisKey, slot: usize, n: usize) -> Option<String> {
    let h = name("H", slot, n);
    match k {
        BasisKey::Mat { row, col } => Some(format!("{}[{row},{col}]", name("E", slot, n))),
        BasisKey::Skew { degree, term } => {
            let coeff = match *term {
                PfTerm::Power(0) => None,
                PfTerm::Power(p) => Some(power(&h, p as i64)),
                PfTerm::Pole { shift, order } => {
                    Some(format!("{}^-{order}", shifted(&h, shift)))
                }
            };
            let mut parts = Vec::new();
            if *degree > 0 {
                parts.push(power(&name("x", slot, n), *degree));
            }
            parts.extend(coeff);
            if *degree < 0 {
                parts.push(power(&name("D", slot, n), -*degree));
            }
            (!parts.is_empty()).then(|| parts.join("*"))
        }
    }
}

/// `c_1*m_1 + c_2*m_2 - …` with `m = "1"` for a bare constant.
pub fn signed_sum(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (c, m)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m == "1" {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(m);
        } else {
            out.push_str(&format!("{a}*{m}"));
        }
    }
    out
}

pub fn a1(a: &A1Element) -> String {
    let terms: Vec<(Rational, String)> = basis_terms(a)
        .into_iter()
        .map(|(k, c)| (c, basis_key(&k, 1, 1).unwrap_or_else(|| "1".into())))
        .collect();
    signed_sum(&terms)
}

/// A sum of pure tensors of basis elements.
pub fn tensor(t: &TensorElement) -> String {
    let n = t.n();
    let terms: Vec<(Rational, String)> = t
        .basis_expansion()
        .into_iter()
        .map(|(mono, c)| {
            let parts: Vec<String> = mono
                .iter()
                .enumerate()
                .filter_map(|(i, k)| basis_key(k, i + 1, n))
                .collect();
            let m = if parts.is_empty() { "1".into() } else { parts.join("*") };
            (c, m)
        })
        .collect();
    signed_sum(&terms)
}

pub fn operator(op: &Operator) -> String {
    match op {
        Operator::One(a) => a1(a),
        Operator::Many(t) => tensor(t),
    }
}

/// The element rebuilt from its basis coordinates, so that equal operators
/// serialize identically.
pub fn canonical_tensor(t: &TensorElement) -> TensorElement {
    TensorElement::from_basis(t.n(), &t.basis_expansion())
}

/// `∏ (H+i)^{n_i} ∏ (H-i)_1^{n_{-i}}` with slot names, writing
/// `(H-i)_1` as `(H-i+PI[i-1])`.
pub fn hunit(h: &HUnit, slot: usize, n: usize) -> String {
    if h.is_identity() {
        return "1".into();
    }
    let hn = name("H", slot, n);
    let parts: Vec<String> = h
        .exps()
        .iter()
        .rev()
        .map(|(&i, &e)| {
            let base = if i >= 0 {
                shifted(&hn, i)
            } else {
                format!("({hn}-{}+{}[{}])", -i, name("PI", slot, n), -i - 1)
            };
            power(&base, e)
        })
        .collect();
    parts.join("*")
}

pub fn matrix(f: &FiniteMatrix) -> String {
    f.to_string()
}

/// The HUnit factors of a minimal unit, one per slot, skipping identities.
pub fn minimal_h(u: &MinimalUnit) -> String {
    let n = u.n();
    let parts: Vec<String> = u
        .hs
        .iter()
        .enumerate()
        .filter(|(_, h)| !h.is_identity())
        .map(|(i, h)| hunit(h, i + 1, n))
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn prime_list(ps: &[jac_core::PrimeIdeal]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// A product of primes, parenthesizing sums.
pub fn prime_product(ps: &[jac_core::PrimeIdeal]) -> String {
    if ps.len() == 1 {
        return ps[0].to_string();
    }
    ps.iter()
        .map(|p| {
            let s = p.to_string();
            if s.contains('+') {
                format!("({s})")
            } else {
                s
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}
