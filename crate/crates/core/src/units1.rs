//! Units of the algebra in one variable.
//!
//! Every unit is uniquely `λ · s(h) · (1 + f)` with `λ` a nonzero scalar, `h`
//! in the free abelian group generated by the `H + i` (`i >= 0`) and the
//! `(H - i)_1 = H - i + π_{i-1}` (`i >= 1`), and `1 + f` an invertible finite
//! matrix perturbation of the identity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::a1core::{A1Element, Generator, Poly1};
use crate::error::{Error, NotAUnitReason, Result};
use crate::fmatrix::FiniteMatrix;
use crate::rational::{self, Rational};
use crate::ratfun::ShiftRatFun;
use crate::skew::SkewLaurent;

/// Exponents keyed by index: `i >= 0` stands for `H + i`, `i < 0` for
/// `(H - |i|)_1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "BTreeMap<i64, i64>", from = "BTreeMap<i64, i64>")]
pub struct HUnit {
    exps: BTreeMap<i64, i64>,
}

impl From<HUnit> for BTreeMap<i64, i64> {
    fn from(h: HUnit) -> Self {
        h.exps
    }
}

impl From<BTreeMap<i64, i64>> for HUnit {
    fn from(exps: BTreeMap<i64, i64>) -> Self {
        HUnit::new(exps)
    }
}

impl HUnit {
    pub fn new(exps: BTreeMap<i64, i64>) -> Self {
        HUnit {
            exps: exps.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn exps(&self) -> &BTreeMap<i64, i64> {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (&i, &e) in &other.exps {
            *exps.entry(i).or_insert(0) += e;
        }
        Self::new(exps)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.exps.iter().map(|(&i, &e)| (i, -e)).collect())
    }

    /// The operator `∏ (H+i)^{n_i} ∏ (H-i)_1^{n_{-i}}`.
    pub fn build(&self) -> A1Element {
        self.exps
            .iter()
            .fold(A1Element::one(), |acc, (&i, &e)| &acc * &factor_pow(i, e))
    }

    /// The inverse operator, assembled from the explicit inverse of each
    /// factor.
    pub fn build_inverse(&self) -> A1Element {
        self.inverse().build()
    }
}

/// `f^e` for the generator `f` of index `i`.
fn factor_pow(i: i64, e: i64) -> A1Element {
    let base = if e > 0 {
        factor(i)
    } else {
        factor_inverse(i)
    };
    (0..e.unsigned_abs()).fold(A1Element::one(), |acc, _| &acc * &base)
}

fn factor(i: i64) -> A1Element {
    if i >= 0 {
        A1Element::from_skew(SkewLaurent::scalar(ShiftRatFun::linear(i)))
    } else {
        h_lambda(i.unsigned_abs(), &Rational::one())
    }
}

fn factor_inverse(i: i64) -> A1Element {
    if i >= 0 {
        A1Element::from_skew(SkewLaurent::scalar(ShiftRatFun::inv_linear(i, 1)))
    } else {
        h_lambda_inverse(i.unsigned_abs(), &Rational::one()).expect("λ = 1")
    }
}

/// `(H - i)_λ = H - i + λπ_{i-1}`, `i >= 1`.
pub fn h_lambda(i: u64, lambda: &Rational) -> A1Element {
    assert!(i >= 1, "(H-i)_λ needs i >= 1");
    let lin = A1Element::from_skew(SkewLaurent::scalar(ShiftRatFun::linear(-(i as i64))));
    &lin + &A1Element::from_mat(FiniteMatrix::e(i - 1, i - 1, lambda.clone()))
}

/// `(H - i)_λ^{-1} = ρ_{1i} + Σ_{j<i-1} (j+1-i)^{-1} π_j + λ^{-1} π_{i-1}`.
pub fn h_lambda_inverse(i: u64, lambda: &Rational) -> Result<A1Element> {
    if i == 0 {
        return Err(Error::BadIndex("(H-i)_λ needs i >= 1".into()));
    }
    if lambda.is_zero() {
        return Err(Error::Singular);
    }
    let mut acc = A1Element::generator(&Generator::RhoJI { j: 1, i })?;
    for j in 0..i - 1 {
        let c = Rational::one() / rational::int(j as i64 + 1 - i as i64);
        acc = &acc + &A1Element::generator(&Generator::Pi(j))?.scale(&c);
    }
    let last = A1Element::generator(&Generator::Pi(i - 1))?.scale(&(Rational::one() / lambda));
    Ok(&acc + &last)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "FactorWire", try_from = "FactorWire")]
pub struct UnitFactorization {
    pub lambda: Rational,
    pub h: HUnit,
    pub f: FiniteMatrix,
}

#[derive(Serialize, Deserialize)]
struct FactorWire {
    lambda: String,
    h: HUnit,
    f: FiniteMatrix,
}

impl From<UnitFactorization> for FactorWire {
    fn from(u: UnitFactorization) -> Self {
        FactorWire {
            lambda: rational::to_wire(&u.lambda),
            h: u.h,
            f: u.f,
        }
    }
}

impl TryFrom<FactorWire> for UnitFactorization {
    type Error = Error;
    fn try_from(w: FactorWire) -> Result<Self> {
        Ok(UnitFactorization {
            lambda: rational::from_wire(&w.lambda)?,
            h: w.h,
            f: w.f,
        })
    }
}

impl UnitFactorization {
    /// `λ · s(h) · (1 + f)`.
    pub fn reassemble(&self) -> A1Element {
        let one_plus = &A1Element::one() + &A1Element::from_mat(self.f.clone());
        (&self.h.build() * &one_plus).scale(&self.lambda)
    }
}

pub fn factor_unit(u: &A1Element) -> Result<UnitFactorization> {
    let not_unit = |r| Error::NotAUnit(r);
    let comps = u.skew().comps();
    if comps.keys().any(|&d| d != 0) {
        return Err(not_unit(NotAUnitReason::NonScalarDegree));
    }
    let (lambda, shifts) = u
        .skew()
        .is_base_unit()
        .ok_or(not_unit(NotAUnitReason::BadBaseSymbol))?;
    // the linear factor H + j carries index j on both sides of zero
    let h = HUnit::new(shifts);
    let v = (&h.build_inverse() * u).scale(&(Rational::one() / &lambda));
    if !v.skew().is_one() {
        return Err(not_unit(NotAUnitReason::ResidueNotInF));
    }
    let f = v.mat().clone();
    if f.det_one_plus().is_zero() {
        return Err(not_unit(NotAUnitReason::SingularMatrix));
    }
    Ok(UnitFactorization { lambda, h, f })
}

/// `u^{-1} = λ^{-1} (1 + f)^{-1} s(h)^{-1}`.
pub fn invert_unit(u: &A1Element) -> Result<A1Element> {
    let fac = factor_unit(u)?;
    let g = fac.f.invert_one_plus()?;
    let one_plus_g = &A1Element::one() + &A1Element::from_mat(g);
    Ok((&one_plus_g * &fac.h.build_inverse()).scale(&(Rational::one() / &fac.lambda)))
}

/// The unique `y` with `u y = f`.
pub fn solve(u: &A1Element, f: &Poly1) -> Result<Poly1> {
    Ok(invert_unit(u)?.apply(f))
}

/// `(λ, h, det(1 + f))`.
pub fn det_extended(u: &A1Element) -> Result<(Rational, HUnit, Rational)> {
    let fac = factor_unit(u)?;
    let d = fac.f.det_one_plus();
    Ok((fac.lambda, fac.h, d))
}
