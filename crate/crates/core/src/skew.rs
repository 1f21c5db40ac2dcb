//! The localized Weyl algebra in one variable, `S^{-1}K[H][x, x^{-1}; σ]`.
//!
//! Stored in mixed normal form: degree `d >= 0` means `x^d * r(H)` and degree
//! `-e` means `r(H) * ∂^e`. Products go through the uniform left form
//! `Σ r(H) x^d`, which is never exposed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::ratfun::ShiftRatFun;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SkewWire", try_from = "SkewWire")]
pub struct SkewLaurent {
    comps: BTreeMap<i64, ShiftRatFun>,
}

#[derive(Serialize, Deserialize)]
struct SkewWire {
    comps: BTreeMap<i64, ShiftRatFun>,
}

impl From<SkewLaurent> for SkewWire {
    fn from(s: SkewLaurent) -> Self {
        SkewWire { comps: s.comps }
    }
}

impl From<SkewWire> for SkewLaurent {
    fn from(w: SkewWire) -> Self {
        SkewLaurent::from_comps(w.comps)
    }
}

impl SkewLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(ShiftRatFun::one())
    }

    /// A degree-0 element `r(H)`.
    pub fn scalar(r: ShiftRatFun) -> Self {
        Self::monomial(0, r)
    }

    pub fn constant(c: Rational) -> Self {
        Self::scalar(ShiftRatFun::constant(c))
    }

    /// One mixed-form component: `x^d r` for `d >= 0`, `r ∂^{-d}` otherwise.
    pub fn monomial(d: i64, r: ShiftRatFun) -> Self {
        let mut comps = BTreeMap::new();
        if !r.is_zero() {
            comps.insert(d, r);
        }
        SkewLaurent { comps }
    }

    pub fn from_comps(comps: BTreeMap<i64, ShiftRatFun>) -> Self {
        SkewLaurent {
            comps: comps.into_iter().filter(|(_, r)| !r.is_zero()).collect(),
        }
    }

    pub fn x() -> Self {
        Self::monomial(1, ShiftRatFun::one())
    }

    pub fn d() -> Self {
        Self::monomial(-1, ShiftRatFun::one())
    }

    pub fn h() -> Self {
        Self::scalar(ShiftRatFun::h())
    }

    pub fn comps(&self) -> &BTreeMap<i64, ShiftRatFun> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.comps.len() == 1 && self.comps.get(&0).is_some_and(ShiftRatFun::is_one)
    }

    pub fn component(&self, d: i64) -> Option<&ShiftRatFun> {
        self.comps.get(&d)
    }

    /// `Some(r)` if the element is `r(H)` in degree 0 only.
    pub fn as_scalar(&self) -> Option<ShiftRatFun> {
        match self.comps.len() {
            0 => Some(ShiftRatFun::zero()),
            1 => self.comps.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_comps(self.comps.iter().map(|(&d, r)| (d, r.scale(c))).collect())
    }

    /// The uniform left form `Σ u_d(H) x^d`.
    pub fn to_left(&self) -> BTreeMap<i64, ShiftRatFun> {
        self.comps
            .iter()
            .map(|(&d, r)| {
                let u = if d >= 0 {
                    r.shift(d)
                } else {
                    r * &ShiftRatFun::rising((-d) as u32)
                };
                (d, u)
            })
            .collect()
    }

    pub fn from_left(left: BTreeMap<i64, ShiftRatFun>) -> Self {
        Self::from_comps(
            left.into_iter()
                .map(|(d, u)| {
                    let r = if d >= 0 {
                        u.shift(-d)
                    } else {
                        &u * &ShiftRatFun::new(vec![Rational::from_integer(1.into())], rising_den(-d))
                    };
                    (d, r)
                })
                .collect(),
        )
    }

    /// `λ ∏ (H+j)^{e_j}` decomposition of a degree-0 element.
    pub fn is_base_unit(&self) -> Option<(Rational, BTreeMap<i64, i64>)> {
        if self.comps.len() != 1 {
            return None;
        }
        self.comps.get(&0)?.as_base_unit()
    }

    /// Lowest degree present, 0 for the zero element.
    pub fn min_degree(&self) -> i64 {
        self.comps.keys().next().copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i64 {
        self.comps.keys().next_back().copied().unwrap_or(0)
    }

    /// The part of strictly negative degree, counted as a power of `∂`.
    pub fn d_order(&self) -> u32 {
        (-self.min_degree()).max(0) as u32
    }
}

/// Denominator of `1 / (H(H+1)...(H+e-1))`.
fn rising_den(e: i64) -> BTreeMap<i64, u32> {
    (0..e).map(|i| (i, 1)).collect()
}

impl std::ops::Add for &SkewLaurent {
    type Output = SkewLaurent;
    fn add(self, other: &SkewLaurent) -> SkewLaurent {
        let mut comps = self.comps.clone();
        for (&d, r) in &other.comps {
            let v = match comps.get(&d) {
                Some(a) => a + r,
                None => r.clone(),
            };
            comps.insert(d, v);
        }
        SkewLaurent::from_comps(comps)
    }
}

impl std::ops::Neg for &SkewLaurent {
    type Output = SkewLaurent;
    fn neg(self) -> SkewLaurent {
        SkewLaurent {
            comps: self.comps.iter().map(|(&d, r)| (d, -r)).collect(),
        }
    }
}

impl std::ops::Sub for &SkewLaurent {
    type Output = SkewLaurent;
    fn sub(self, other: &SkewLaurent) -> SkewLaurent {
        self + &(-other)
    }
}

impl std::ops::Mul for &SkewLaurent {
    type Output = SkewLaurent;
    fn mul(self, other: &SkewLaurent) -> SkewLaurent {
        let a = self.to_left();
        let b = other.to_left();
        let mut out: BTreeMap<i64, ShiftRatFun> = BTreeMap::new();
        // (r x^d)(r' x^d') = r r'(H - d) x^{d + d'}
        for (&d, r) in &a {
            for (&d2, r2) in &b {
                let term = r * &r2.shift(d);
                let e = out.entry(d + d2).or_insert_with(ShiftRatFun::zero);
                *e = &*e + &term;
            }
        }
        SkewLaurent::from_left(out)
    }
}

impl std::fmt::Display for SkewLaurent {
    /// Basis form: `x^d*r` terms expanded as `x^d*(H+j)^k`, and `r*D^e`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts = skew_terms(self, "x", "D", "H");
        if parts.is_empty() {
            return f.write_str("0");
        }
        crate::ratfun::write_signed_sum(f, &parts)
    }
}

/// Coefficient/monomial pairs of the basis expansion, with the given symbol
/// names. Monomial strings are empty for the constant 1.
pub fn skew_terms(a: &SkewLaurent, x: &str, d: &str, h: &str) -> Vec<(Rational, String)> {
    let mut parts = Vec::new();
    for (&deg, r) in a.comps.iter().rev() {
        let pf = r.partial_fractions();
        let mut hs: Vec<(Rational, String)> = Vec::new();
        for (i, c) in pf.poly.iter().enumerate().rev() {
            if !num_traits::Zero::is_zero(c) {
                hs.push((c.clone(), crate::ratfun::power_of_h(i as i64)));
            }
        }
        for (&(j, k), c) in &pf.terms {
            hs.push((c.clone(), crate::ratfun::shift_power(j, -(k as i64))));
        }
        for (c, hm) in hs {
            let hm = hm.replace('H', h);
            let mono = if deg >= 0 {
                join(&x_power(x, deg), &hm)
            } else {
                join(&hm, &x_power(d, -deg))
            };
            parts.push((c, mono));
        }
    }
    parts
}

fn x_power(sym: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

fn join(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}
