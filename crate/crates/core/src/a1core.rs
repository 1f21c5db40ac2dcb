//! The Jacobian algebra in one variable in canonical form `s(skew) + mat`.
//!
//! `skew` is an element of the localized Weyl algebra lifted to operators on
//! `K[x]` through the section `s`, which fixes `H^i` and `(H+j)^{-k}` for
//! `j >= 0` and sends `(H-i)^{-k}` to `(H-i)^{-k} π′_{i-1}`. `mat` is a finite
//! matrix acting by `E_{ij}(x^k) = δ_{jk} x^i`. The sum is direct, so the
//! representation is unique.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmatrix::{self, FiniteMatrix};
use crate::rational::{self, int, Rational};
use crate::ratfun::{self, ShiftRatFun};
use crate::skew::{self, SkewLaurent};

/// A polynomial in `x` as a sparse map degree -> coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly1 {
    coeffs: BTreeMap<u64, Rational>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: u64, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn x_pow(k: u64) -> Self {
        Self::monomial(k, Rational::one())
    }

    pub fn from_coeffs(coeffs: BTreeMap<u64, Rational>) -> Self {
        Poly1 {
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, k: u64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, k: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let v = self.coeffs.remove(&k).unwrap_or_else(Rational::zero) + c;
        if !v.is_zero() {
            self.coeffs.insert(k, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect())
    }
}

impl std::fmt::Display for Poly1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<(Rational, String)> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&k, c)| {
                let m = match k {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{k}"),
                };
                (c.clone(), m)
            })
            .collect();
        ratfun::write_signed_sum(f, &parts)
    }
}

/// A subset of `ℕ` given either by its elements or by its finite complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetSpec {
    Finite(BTreeSet<u64>),
    Cofinite(BTreeSet<u64>),
}

/// Named operators of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    X,
    Partial,
    H,
    HInv,
    /// `(H+j)^{-k}`, `j >= 0`, `k >= 1`.
    ShiftInv { j: i64, k: u32 },
    /// `(H-i)^{-k} π′_{i-1}`, `i >= 1`, `k >= 1`.
    ShiftedPiPrime { i: i64, k: u32 },
    Int,
    E(u64, u64),
    Pi(u64),
    Rho(u64),
    /// `ρ_{ji} = x^i (H^j ∂^i x^i)^{-1} ∂^i`.
    RhoJI { j: u32, i: u64 },
    /// `h = H - 1`.
    SmallH,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct A1Element {
    skew: SkewLaurent,
    mat: FiniteMatrix,
}

impl Default for A1Element {
    fn default() -> Self {
        Self::zero()
    }
}

impl A1Element {
    pub fn new(skew: SkewLaurent, mat: FiniteMatrix) -> Self {
        assert_eq!(mat.dim(), 1, "matrix part of an element in one variable");
        A1Element { skew, mat }
    }

    pub fn zero() -> Self {
        A1Element {
            skew: SkewLaurent::zero(),
            mat: FiniteMatrix::zero(1),
        }
    }

    pub fn one() -> Self {
        Self::from_skew(SkewLaurent::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_skew(SkewLaurent::constant(c))
    }

    pub fn from_skew(skew: SkewLaurent) -> Self {
        A1Element {
            skew,
            mat: FiniteMatrix::zero(1),
        }
    }

    pub fn from_mat(mat: FiniteMatrix) -> Self {
        Self::new(SkewLaurent::zero(), mat)
    }

    pub fn skew(&self) -> &SkewLaurent {
        &self.skew
    }

    pub fn mat(&self) -> &FiniteMatrix {
        &self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.skew.is_zero() && self.mat.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.skew.is_one() && self.mat.is_zero()
    }

    pub fn generator(g: &Generator) -> Result<Self> {
        use Generator::*;
        let rf = |r: ShiftRatFun| Ok(A1Element::from_skew(SkewLaurent::scalar(r)));
        match *g {
            X => Ok(Self::from_skew(SkewLaurent::x())),
            Partial => Ok(Self::from_skew(SkewLaurent::d())),
            H => rf(ShiftRatFun::h()),
            HInv => rf(ShiftRatFun::inv_linear(0, 1)),
            SmallH => rf(ShiftRatFun::linear(-1)),
            ShiftInv { j, k } => {
                if j < 0 || k == 0 {
                    return Err(Error::BadIndex(format!("(H+{j})^-{k} needs j >= 0, k >= 1")));
                }
                rf(ShiftRatFun::inv_linear(j, k))
            }
            ShiftedPiPrime { i, k } => {
                if i < 1 || k == 0 {
                    return Err(Error::BadIndex(format!("(H-{i})^-{k} needs i >= 1, k >= 1")));
                }
                // the section already attaches π′_{i-1}
                rf(ShiftRatFun::inv_linear(-i, k))
            }
            Int => Ok(Self::from_skew(SkewLaurent::monomial(
                1,
                ShiftRatFun::inv_linear(0, 1),
            ))),
            E(i, j) => Ok(Self::from_mat(FiniteMatrix::e(i, j, Rational::one()))),
            Pi(i) => Ok(Self::from_mat(FiniteMatrix::e(i, i, Rational::one()))),
            Rho(i) => {
                let mut m = FiniteMatrix::zero(1);
                for k in 0..i {
                    m.add_entry(vec![k], vec![k], -Rational::one());
                }
                Ok(Self::new(SkewLaurent::one(), m))
            }
            RhoJI { j: 0, i } => Self::generator(&Rho(i)),
            RhoJI { j, i } => {
                let ii = i as i64;
                let mut m = FiniteMatrix::zero(1);
                for k in 0..(ii - 1).max(0) {
                    let v = Rational::one() / rational::pow(&int(k + 1 - ii), j);
                    m.add_entry(vec![k as u64], vec![k as u64], -v);
                }
                Ok(Self::new(
                    SkewLaurent::scalar(ShiftRatFun::inv_linear(-ii, j)),
                    m,
                ))
            }
        }
    }

    /// `π_S`.
    pub fn projector(s: &SubsetSpec) -> Self {
        match s {
            SubsetSpec::Finite(set) => {
                let mut m = FiniteMatrix::zero(1);
                for &i in set {
                    m.add_entry(vec![i], vec![i], Rational::one());
                }
                Self::from_mat(m)
            }
            SubsetSpec::Cofinite(t) => {
                let mut m = FiniteMatrix::zero(1);
                for &i in t {
                    m.add_entry(vec![i], vec![i], -Rational::one());
                }
                Self::new(SkewLaurent::one(), m)
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        A1Element {
            skew: self.skew.scale(c),
            mat: self.mat.scale(c),
        }
    }

    /// Image of `x^k`.
    pub fn apply_monomial(&self, k: u64) -> Poly1 {
        let mut out = apply_skew(&self.skew, k);
        for ((r, c), v) in self.mat.entries() {
            if c[0] == k {
                out.add_term(r[0], v.clone());
            }
        }
        out
    }

    pub fn apply(&self, p: &Poly1) -> Poly1 {
        let mut out = Poly1::zero();
        for (&k, c) in p.coeffs() {
            out = out.add(&self.apply_monomial(k).scale(c));
        }
        out
    }

    /// Homogeneous components; mat entry `E_{ij}` has degree `i - j`.
    pub fn grade(&self) -> BTreeMap<i64, A1Element> {
        let mut out: BTreeMap<i64, A1Element> = BTreeMap::new();
        for (&d, r) in self.skew.comps() {
            out.entry(d).or_default().skew = SkewLaurent::monomial(d, r.clone());
        }
        for ((r, c), v) in self.mat.entries() {
            let d = r[0] as i64 - c[0] as i64;
            out.entry(d)
                .or_default()
                .mat
                .add_entry(r.clone(), c.clone(), v.clone());
        }
        out
    }

    /// The involution `x ↔ ∂` fixing `H`, with `E_{ij} ↦ (i!/j!) E_{ji}`.
    pub fn theta(&self) -> Self {
        A1Element {
            skew: SkewLaurent::from_comps(
                self.skew.comps().iter().map(|(&d, r)| (-d, r.clone())).collect(),
            ),
            mat: self.mat.theta(),
        }
    }

    /// `s(a) ∘ s(b) - s(ab)`, a finite matrix.
    fn section_defect(a: &SkewLaurent, b: &SkewLaurent, ab: &SkewLaurent) -> FiniteMatrix {
        let maxpole = ratfun::max_positive_pole(
            a.comps()
                .values()
                .chain(b.comps().values())
                .chain(ab.comps().values()),
        );
        let n = 1 + maxpole as u64 + a.d_order() as u64 + b.d_order() as u64;
        let defect_col = |k: u64| {
            let mut lhs = Poly1::zero();
            for (&m, c) in apply_skew(b, k).coeffs() {
                lhs = lhs.add(&apply_skew(a, m).scale(c));
            }
            lhs.add(&apply_skew(ab, k).scale(&-Rational::one()))
        };
        let mut out = FiniteMatrix::zero(1);
        for k in 0..n {
            for (m, v) in defect_col(k).coeffs {
                out.add_entry(vec![m], vec![k], v);
            }
        }
        for k in n..n + 5 {
            assert!(
                defect_col(k).is_zero(),
                "section defect has support past column {n}"
            );
        }
        out
    }

    /// `s(a) E_{ij} = Σ c_m E_{mj}` with `s(a)(x^i) = Σ c_m x^m`.
    fn left_on_matrix(a: &SkewLaurent, g: &FiniteMatrix) -> FiniteMatrix {
        let mut out = FiniteMatrix::zero(1);
        if a.is_zero() {
            return out;
        }
        for ((r, c), v) in g.entries() {
            for (m, cm) in apply_skew(a, r[0]).coeffs {
                out.add_entry(vec![m], c.clone(), cm * v);
            }
        }
        out
    }

    /// `E_{ij} s(b) = Σ_d λ_d E_{i, j-d}` where the degree-`d` part of
    /// `s(b)` sends `x^{j-d}` to `λ_d x^j`.
    fn right_on_matrix(f: &FiniteMatrix, b: &SkewLaurent) -> FiniteMatrix {
        let mut out = FiniteMatrix::zero(1);
        for ((r, c), v) in f.entries() {
            let j = c[0] as i64;
            for (&d, rb) in b.comps() {
                let src = j - d;
                if src < 0 {
                    continue;
                }
                if let Some((lam, deg)) = lift_apply_component(d, rb, src as u64) {
                    debug_assert_eq!(deg as i64, j);
                    out.add_entry(r.clone(), vec![src as u64], lam * v);
                }
            }
        }
        out
    }
}

/// Action of the lifted component of degree `d` with coefficient `r` on `x^k`:
/// the coefficient and the output degree, or `None` for zero.
pub fn lift_apply_component(d: i64, r: &ShiftRatFun, k: u64) -> Option<(Rational, u64)> {
    let ki = k as i64;
    let (c, out) = if d >= 0 {
        (reg(r, ki + 1), k + d as u64)
    } else {
        let e = -d;
        if ki < e {
            return None;
        }
        // k(k-1)...(k-e+1)
        let falling: BigInt = (ki - e + 1..=ki).map(BigInt::from).product();
        (Rational::from_integer(falling) * reg(r, ki - e + 1), (ki - e) as u64)
    };
    (!c.is_zero()).then_some((c, out))
}

fn reg(r: &ShiftRatFun, m: i64) -> Rational {
    r.eval_regularized(m)
        .expect("lifted coefficients are only evaluated at positive H")
}

fn apply_skew(a: &SkewLaurent, k: u64) -> Poly1 {
    let mut out = Poly1::zero();
    for (&d, r) in a.comps() {
        if let Some((c, m)) = lift_apply_component(d, r, k) {
            out.add_term(m, c);
        }
    }
    out
}

impl std::ops::Add for &A1Element {
    type Output = A1Element;
    fn add(self, other: &A1Element) -> A1Element {
        A1Element {
            skew: &self.skew + &other.skew,
            mat: self.mat.checked_add(&other.mat).expect("dim 1"),
        }
    }
}

impl std::ops::Neg for &A1Element {
    type Output = A1Element;
    fn neg(self) -> A1Element {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Sub for &A1Element {
    type Output = A1Element;
    fn sub(self, other: &A1Element) -> A1Element {
        self + &(-other)
    }
}

impl std::ops::Mul for &A1Element {
    type Output = A1Element;
    fn mul(self, other: &A1Element) -> A1Element {
        let skew = &self.skew * &other.skew;
        let mut mat = A1Element::section_defect(&self.skew, &other.skew, &skew);
        let parts = [
            A1Element::left_on_matrix(&self.skew, &other.mat),
            A1Element::right_on_matrix(&self.mat, &other.skew),
            self.mat.checked_mul(&other.mat).expect("dim 1"),
        ];
        for p in &parts {
            mat = mat.checked_add(p).expect("dim 1");
        }
        A1Element { skew, mat }
    }
}

impl std::fmt::Display for A1Element {
    /// Basis form, e.g. `x^2*(H+1)^-1 + (H-1)^-1*D - 3*E[0,2]`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = skew::skew_terms(&self.skew, "x", "D", "H");
        parts.extend(
            self.mat
                .entries()
                .iter()
                .map(|((r, c), v)| (v.clone(), fmatrix::matrix_unit_name(r, c))),
        );
        if parts.is_empty() {
            return f.write_str("0");
        }
        ratfun::write_signed_sum(f, &parts)
    }
}
