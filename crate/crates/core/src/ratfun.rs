//! Rational functions of `H` whose denominators are products of integer
//! shifts `(H + j)`.
//!
//! These are the coefficients of the localized Weyl algebra in one variable.
//! Values are kept fully reduced: no `(H + j)` of the denominator divides the
//! numerator, so structural equality is mathematical equality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::upoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "RatFunWire", try_from = "RatFunWire")]
pub struct ShiftRatFun {
    num: Vec<Rational>,
    den: BTreeMap<i64, u32>,
}

#[derive(Serialize, Deserialize)]
struct RatFunWire {
    num: Vec<String>,
    den: BTreeMap<i64, u32>,
}

impl From<ShiftRatFun> for RatFunWire {
    fn from(r: ShiftRatFun) -> Self {
        RatFunWire {
            num: r.num.iter().map(rational::to_wire).collect(),
            den: r.den,
        }
    }
}

impl TryFrom<RatFunWire> for ShiftRatFun {
    type Error = Error;
    fn try_from(w: RatFunWire) -> Result<Self> {
        let num = w
            .num
            .iter()
            .map(|s| rational::from_wire(s))
            .collect::<Result<Vec<_>>>()?;
        if w.den.values().any(|&m| m == 0) {
            return Err(Error::Malformed("denominator multiplicity 0".into()));
        }
        Ok(ShiftRatFun::new(num, w.den))
    }
}

/// Partial-fraction form: a polynomial part plus coefficients of
/// `(H + j)^{-k}` keyed by `(j, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly: Vec<Rational>,
    pub terms: BTreeMap<(i64, u32), Rational>,
}

impl PartialFractions {
    pub fn reassemble(&self) -> ShiftRatFun {
        let mut acc = ShiftRatFun::from_poly(self.poly.clone());
        for (&(j, k), c) in &self.terms {
            acc = &acc + &ShiftRatFun::inv_linear(j, k).scale(c);
        }
        acc
    }
}

impl ShiftRatFun {
    /// Builds `num / prod (H+j)^{m_j}` and reduces it.
    pub fn new(mut num: Vec<Rational>, den: BTreeMap<i64, u32>) -> Self {
        upoly::trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        let mut out = BTreeMap::new();
        for (j, mut m) in den {
            while m > 0 {
                let (q, r) = upoly::div_linear(&num, j);
                if !r.is_zero() {
                    break;
                }
                num = q;
                m -= 1;
            }
            if m > 0 {
                out.insert(j, m);
            }
        }
        ShiftRatFun { num, den: out }
    }

    pub fn zero() -> Self {
        ShiftRatFun {
            num: Vec::new(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(vec![c])
    }

    pub fn from_poly(num: Vec<Rational>) -> Self {
        Self::new(num, BTreeMap::new())
    }

    /// `H`.
    pub fn h() -> Self {
        Self::from_poly(vec![Rational::zero(), Rational::one()])
    }

    /// `H + j`.
    pub fn linear(j: i64) -> Self {
        Self::from_poly(upoly::linear(j))
    }

    /// `(H + j)^{-k}`.
    pub fn inv_linear(j: i64, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        Self::new(vec![Rational::one()], BTreeMap::from([(j, k)]))
    }

    /// `H(H+1)...(H+e-1)`, the symbol of `d^e x^e`.
    pub fn rising(e: u32) -> Self {
        let mut p = vec![Rational::one()];
        for i in 0..e {
            p = upoly::mul(&p, &upoly::linear(i as i64));
        }
        Self::from_poly(p)
    }

    /// `lambda * prod (H+j)^{e_j}` with exponents of either sign.
    pub fn from_shift_exponents(lambda: Rational, exps: &BTreeMap<i64, i64>) -> Self {
        let mut num = vec![lambda];
        let mut den = BTreeMap::new();
        for (&j, &e) in exps {
            if e > 0 {
                num = upoly::mul(&num, &upoly::linear_pow(j, e as u32));
            } else if e < 0 {
                den.insert(j, (-e) as u32);
            }
        }
        Self::new(num, den)
    }

    pub fn num(&self) -> &[Rational] {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<i64, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.len() == 1 && self.num[0].is_one()
    }

    /// The value if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.den.is_empty(), self.num.len()) {
            (true, 0) => Some(Rational::zero()),
            (true, 1) => Some(self.num[0].clone()),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    fn den_poly(&self) -> Vec<Rational> {
        self.den
            .iter()
            .fold(vec![Rational::one()], |acc, (&j, &m)| {
                upoly::mul(&acc, &upoly::linear_pow(j, m))
            })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ShiftRatFun {
            num: upoly::scale(&self.num, c),
            den: self.den.clone(),
        }
    }

    /// `a(H - d)`, i.e. the automorphism `H -> H - 1` applied `d` times.
    pub fn shift(&self, d: i64) -> Self {
        if d == 0 || self.is_zero() {
            return self.clone();
        }
        // (H - d + j) = (H + (j - d))
        ShiftRatFun {
            num: upoly::taylor_shift(&self.num, -d),
            den: self.den.iter().map(|(&j, &m)| (j - d, m)).collect(),
        }
    }

    /// Exact value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = upoly::eval(&self.den_poly(), x);
        if d.is_zero() {
            return None;
        }
        Some(upoly::eval(&self.num, x) / d)
    }

    pub fn has_pole_at(&self, m: i64) -> bool {
        self.den.contains_key(&-m)
    }

    /// Positive integers `i` where this function has a pole.
    pub fn positive_poles(&self) -> impl Iterator<Item = i64> + '_ {
        self.den.keys().filter(|&&j| j <= -1).map(|&j| -j)
    }

    /// Value of the π′-regularized lift at `H = m`: partial-fraction terms with
    /// a pole exactly at `m` contribute zero, all others evaluate normally.
    pub fn eval_regularized(&self, m: i64) -> Result<Rational> {
        let x = int(m);
        if !self.has_pole_at(m) {
            return Ok(self.eval(&x).expect("no pole at m"));
        }
        if m <= 0 {
            return Err(Error::PoleAtNonPositive(m));
        }
        let pf = self.partial_fractions();
        let mut acc = upoly::eval(&pf.poly, &x);
        for (&(j, k), c) in &pf.terms {
            if m + j == 0 {
                continue;
            }
            acc += c / rational::pow(&int(m + j), k);
        }
        Ok(acc)
    }

    pub fn partial_fractions(&self) -> PartialFractions {
        if self.den.is_empty() {
            return PartialFractions {
                poly: self.num.clone(),
                terms: BTreeMap::new(),
            };
        }
        let (poly, _) = upoly::div_rem(&self.num, &self.den_poly());
        let mut terms = BTreeMap::new();
        for (&j, &m) in &self.den {
            let order = m as usize;
            // expand num / prod_{j' != j} (H + j')^{m'} around t = H + j
            let mut series = upoly::taylor_shift(&self.num, -j);
            series.resize(order.max(series.len()), Rational::zero());
            series.truncate(order);
            for (&j2, &m2) in &self.den {
                if j2 == j {
                    continue;
                }
                let c = int(j2 - j);
                // 1/(t + c) = sum_n (-1)^n t^n / c^{n+1}
                let inv: Vec<Rational> = (0..order)
                    .map(|n| {
                        let v = Rational::one() / rational::pow(&c, n as u32 + 1);
                        if n % 2 == 1 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect();
                for _ in 0..m2 {
                    series = upoly::series_mul(&series, &inv, order);
                }
            }
            for k in 1..=m {
                let idx = (m - k) as usize;
                if let Some(c) = series.get(idx) {
                    if !c.is_zero() {
                        terms.insert((j, k), c.clone());
                    }
                }
            }
        }
        PartialFractions { poly, terms }
    }

    /// Decomposes `lambda * prod (H+j)^{e_j}` if this function has that shape.
    pub fn as_base_unit(&self) -> Option<(Rational, BTreeMap<i64, i64>)> {
        if self.is_zero() {
            return None;
        }
        let lambda = self.num.last().unwrap().clone();
        let mut p = upoly::scale(&self.num, &(Rational::one() / &lambda));
        let mut exps: BTreeMap<i64, i64> = BTreeMap::new();
        let record = |root: i64, exps: &mut BTreeMap<i64, i64>| {
            *exps.entry(-root).or_insert(0) += 1;
        };
        while p.len() > 1 && p[0].is_zero() {
            p.remove(0);
            record(0, &mut exps);
        }
        let mut r: i64 = 1;
        while p.len() > 1 {
            // integer roots force integer coefficients and bound |root| by sqrt(sum r^2)
            if p.iter().any(|c| !c.is_integer()) {
                return None;
            }
            let bound = root_square_sum(&p)?;
            if BigInt::from(r) * BigInt::from(r) > bound {
                return None;
            }
            let mut found = false;
            for cand in [r, -r] {
                loop {
                    let (q, rem) = upoly::div_linear(&p, -cand);
                    if !rem.is_zero() {
                        break;
                    }
                    p = q;
                    record(cand, &mut exps);
                    found = true;
                    if p.len() <= 1 {
                        break;
                    }
                }
            }
            if !found {
                r = r.checked_add(1)?;
            }
        }
        for (&j, &m) in &self.den {
            *exps.entry(j).or_insert(0) -= m as i64;
        }
        exps.retain(|_, e| *e != 0);
        Some((lambda, exps))
    }
}

/// `sum r_i^2` over the roots of a monic polynomial with integer coefficients,
/// or `None` when that value is negative.
fn root_square_sum(p: &[Rational]) -> Option<BigInt> {
    let d = p.len() - 1;
    let e1 = -p[d - 1].numer().clone();
    let e2 = if d >= 2 {
        p[d - 2].numer().clone()
    } else {
        BigInt::zero()
    };
    let s = &e1 * &e1 - BigInt::from(2) * e2;
    if s.is_negative() {
        None
    } else {
        Some(s)
    }
}

impl std::ops::Add for &ShiftRatFun {
    type Output = ShiftRatFun;
    fn add(self, other: &ShiftRatFun) -> ShiftRatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcm = self.den.clone();
        for (&j, &m) in &other.den {
            let e = lcm.entry(j).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |r: &ShiftRatFun| {
            lcm.iter().fold(r.num.clone(), |acc, (&j, &m)| {
                let have = r.den.get(&j).copied().unwrap_or(0);
                upoly::mul(&acc, &upoly::linear_pow(j, m - have))
            })
        };
        ShiftRatFun::new(upoly::add(&lift(self), &lift(other)), lcm)
    }
}

impl std::ops::Neg for &ShiftRatFun {
    type Output = ShiftRatFun;
    fn neg(self) -> ShiftRatFun {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Sub for &ShiftRatFun {
    type Output = ShiftRatFun;
    fn sub(self, other: &ShiftRatFun) -> ShiftRatFun {
        self + &(-other)
    }
}

impl std::ops::Mul for &ShiftRatFun {
    type Output = ShiftRatFun;
    fn mul(self, other: &ShiftRatFun) -> ShiftRatFun {
        if self.is_zero() || other.is_zero() {
            return ShiftRatFun::zero();
        }
        let mut den = self.den.clone();
        for (&j, &m) in &other.den {
            *den.entry(j).or_insert(0) += m;
        }
        ShiftRatFun::new(upoly::mul(&self.num, &other.num), den)
    }
}

impl std::fmt::Display for ShiftRatFun {
    /// Partial-fraction notation, e.g. `H + 1 + 2*(H+1)^-1`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let pf = self.partial_fractions();
        let mut parts: Vec<(Rational, String)> = Vec::new();
        for (i, c) in pf.poly.iter().enumerate().rev() {
            if !c.is_zero() {
                parts.push((c.clone(), power_of_h(i as i64)));
            }
        }
        for (&(j, k), c) in &pf.terms {
            parts.push((c.clone(), shift_power(j, -(k as i64))));
        }
        write_signed_sum(f, &parts)
    }
}

pub(crate) fn power_of_h(p: i64) -> String {
    match p {
        0 => String::new(),
        1 => "H".into(),
        _ => format!("H^{p}"),
    }
}

/// `(H+j)^e` in printed form; `j = 0` prints as a power of `H`.
pub(crate) fn shift_power(j: i64, e: i64) -> String {
    if j == 0 {
        return power_of_h(e);
    }
    let base = if j > 0 {
        format!("(H+{j})")
    } else {
        format!("(H-{})", -j)
    };
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// Writes `c1*m1 + c2*m2 - ...`; an empty monomial string means the constant.
pub(crate) fn write_signed_sum(
    f: &mut std::fmt::Formatter<'_>,
    parts: &[(Rational, String)],
) -> std::fmt::Result {
    for (idx, (c, m)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (idx, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if m.is_empty() {
            f.write_str(&rational::to_pretty(&mag))?;
        } else if mag.is_one() {
            f.write_str(m)?;
        } else {
            write!(f, "{}*{}", rational::to_pretty(&mag), m)?;
        }
    }
    Ok(())
}

/// Largest positive pole over a set of functions, 0 if none.
pub(crate) fn max_positive_pole<'a>(fs: impl IntoIterator<Item = &'a ShiftRatFun>) -> i64 {
    fs.into_iter()
        .flat_map(|r| r.positive_poles())
        .max()
        .unwrap_or(0)
        .max(0)
}
