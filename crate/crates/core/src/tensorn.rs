//! The algebra in `n` variables as finite sums of pure tensors of
//! one-variable elements.
//!
//! Sums of pure tensors are not a normal form, so [`TensorElement`] has no
//! equality. Elements are compared through their action or through the basis
//! expansion, which resolves every cancellation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::a1core::{A1Element, Poly1};
use crate::error::{Error, Result};
use crate::fmatrix::{FiniteMatrix, MultiIndex};
use crate::lattice::{IdealNF, Pattern};
use crate::rational::{self, Rational};
use crate::ratfun::ShiftRatFun;
use crate::skew::SkewLaurent;
use crate::units1::HUnit;

/// A polynomial in `x_1, ..., x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PolyWire", try_from = "PolyWire")]
pub struct PolyN {
    n: usize,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    n: usize,
    coeffs: Vec<(MultiIndex, String)>,
}

impl From<PolyN> for PolyWire {
    fn from(p: PolyN) -> Self {
        PolyWire {
            n: p.n,
            coeffs: p
                .coeffs
                .iter()
                .map(|(a, c)| (a.clone(), rational::to_wire(c)))
                .collect(),
        }
    }
}

impl TryFrom<PolyWire> for PolyN {
    type Error = Error;
    fn try_from(w: PolyWire) -> Result<Self> {
        let mut p = PolyN::zero(w.n);
        for (a, c) in w.coeffs {
            if a.len() != w.n {
                return Err(Error::ArityMismatch(w.n, a.len()));
            }
            p.add_term(a, rational::from_wire(&c)?);
        }
        Ok(p)
    }
}

impl PolyN {
    pub fn zero(n: usize) -> Self {
        PolyN {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(alpha: MultiIndex, c: Rational) -> Self {
        let mut p = PolyN::zero(alpha.len());
        p.add_term(alpha, c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], Rational::one())
    }

    pub fn from_poly1(p: &Poly1) -> Self {
        let mut out = PolyN::zero(1);
        for (&k, c) in p.coeffs() {
            out.add_term(vec![k], c.clone());
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &[u64]) -> Rational {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        assert_eq!(alpha.len(), self.n, "exponent arity");
        if c.is_zero() {
            return;
        }
        let v = self.coeffs.remove(&alpha).unwrap_or_else(Rational::zero) + c;
        if !v.is_zero() {
            self.coeffs.insert(alpha, v);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = PolyN::zero(self.n);
        for (a, v) in &self.coeffs {
            out.add_term(a.clone(), v * c);
        }
        out
    }
}

impl std::fmt::Display for PolyN {
    /// `x1^2*x2 - 1/2*x1 + 3`; in one variable the plain `x` is used.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<(Rational, String)> = self
            .coeffs
            .iter()
            .rev()
            .map(|(a, c)| {
                let vars: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let v = if self.n == 1 {
                            "x".to_string()
                        } else {
                            format!("x{}", i + 1)
                        };
                        if e == 1 {
                            v
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
                (c.clone(), vars.join("*"))
            })
            .collect();
        crate::ratfun::write_signed_sum(f, &parts)
    }
}

/// One term of the partial-fraction expansion of a coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PfTerm {
    /// `H^p`.
    Power(u32),
    /// `(H + shift)^{-order}`.
    Pole { shift: i64, order: u32 },
}

/// A basis element of the algebra in one variable: a lifted skew monomial
/// or a matrix unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKey {
    Skew { degree: i64, term: PfTerm },
    Mat { row: u64, col: u64 },
}

impl BasisKey {
    pub fn is_mat(&self) -> bool {
        matches!(self, BasisKey::Mat { .. })
    }

    /// The basis element itself.
    pub fn element(&self) -> A1Element {
        match *self {
            BasisKey::Skew { degree, ref term } => {
                let r = match *term {
                    PfTerm::Power(p) => {
                        let mut coeffs = vec![Rational::zero(); p as usize];
                        coeffs.push(Rational::one());
                        ShiftRatFun::from_poly(coeffs)
                    }
                    PfTerm::Pole { shift, order } => ShiftRatFun::inv_linear(shift, order),
                };
                A1Element::from_skew(SkewLaurent::monomial(degree, r))
            }
            BasisKey::Mat { row, col } => {
                A1Element::from_mat(FiniteMatrix::e(row, col, Rational::one()))
            }
        }
    }
}

/// Coordinates of `a` in the basis of lifted skew monomials and matrix units.
pub fn basis_terms(a: &A1Element) -> Vec<(BasisKey, Rational)> {
    let mut out = Vec::new();
    for (&degree, r) in a.skew().comps() {
        let pf = r.partial_fractions();
        for (p, c) in pf.poly.iter().enumerate() {
            if !c.is_zero() {
                let term = PfTerm::Power(p as u32);
                out.push((BasisKey::Skew { degree, term }, c.clone()));
            }
        }
        for (&(shift, order), c) in &pf.terms {
            let term = PfTerm::Pole { shift, order };
            out.push((BasisKey::Skew { degree, term }, c.clone()));
        }
    }
    for ((r, c), v) in a.mat().entries() {
        out.push((BasisKey::Mat { row: r[0], col: c[0] }, v.clone()));
    }
    out
}

/// Inverse of [`basis_terms`].
pub fn from_basis_terms<'a>(terms: impl IntoIterator<Item = (&'a BasisKey, &'a Rational)>) -> A1Element {
    terms
        .into_iter()
        .fold(A1Element::zero(), |acc, (k, c)| &acc + &k.element().scale(c))
}

#[derive(Clone, Debug)]
pub struct TensorElement {
    n: usize,
    terms: Vec<(Rational, Vec<A1Element>)>,
}

#[derive(Serialize, Deserialize)]
struct TensorWire {
    n: usize,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    coeff: String,
    factors: Vec<A1Element>,
}

impl Serialize for TensorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorWire {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(c, fs)| TermWire {
                    coeff: rational::to_wire(c),
                    factors: fs.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = TensorWire::deserialize(d)?;
        let mut out = TensorElement::zero(w.n);
        for t in w.terms {
            let c = rational::from_wire(&t.coeff).map_err(D::Error::custom)?;
            out.push_term(c, t.factors).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

pub type BasisMonomial = Vec<BasisKey>;

impl TensorElement {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "arity must be at least 1");
        TensorElement {
            n,
            terms: Vec::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::pure(Rational::one(), vec![A1Element::one(); n])
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        Self::pure(c, vec![A1Element::one(); n])
    }

    /// `c · u_1 ⊗ ... ⊗ u_n`.
    pub fn pure(c: Rational, factors: Vec<A1Element>) -> Self {
        let mut t = TensorElement::zero(factors.len());
        t.push_term(c, factors).expect("arity from factors");
        t
    }

    /// `1 ⊗ ... ⊗ a ⊗ ... ⊗ 1` with `a` in slot `i` (0-based).
    pub fn embed(n: usize, i: usize, a: A1Element) -> Self {
        assert!(i < n, "slot out of range");
        let mut fs = vec![A1Element::one(); n];
        fs[i] = a;
        Self::pure(Rational::one(), fs)
    }

    /// `Σ c E_{αβ}` with `E_{αβ} = ⊗ E_{α_i β_i}`.
    pub fn from_matrix(f: &FiniteMatrix) -> Self {
        let mut t = TensorElement::zero(f.dim());
        for ((r, c), v) in f.entries() {
            let fs = r
                .iter()
                .zip(c)
                .map(|(&i, &j)| A1Element::from_mat(FiniteMatrix::e(i, j, Rational::one())))
                .collect();
            t.push_term(v.clone(), fs).expect("arity from matrix");
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Rational, Vec<A1Element>)] {
        &self.terms
    }

    /// No terms at all; a nonempty sum may still vanish, see
    /// [`TensorElement::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact zero test through the basis expansion.
    pub fn is_zero(&self) -> bool {
        self.basis_expansion().is_empty()
    }

    /// Adds a term, merging with a structurally identical factor list.
    pub fn push_term(&mut self, c: Rational, factors: Vec<A1Element>) -> Result<()> {
        if factors.len() != self.n {
            return Err(Error::ArityMismatch(self.n, factors.len()));
        }
        if c.is_zero() || factors.iter().any(A1Element::is_zero) {
            return Ok(());
        }
        if let Some(pos) = self.terms.iter().position(|(_, f)| *f == factors) {
            let v = &self.terms[pos].0 + &c;
            if v.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].0 = v;
            }
        } else {
            self.terms.push((c, factors));
        }
        Ok(())
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut out = self.clone();
        for (c, fs) in &other.terms {
            out.push_term(c.clone(), fs.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = TensorElement::zero(self.n);
        for (v, fs) in &self.terms {
            out.push_term(v * c, fs.clone()).expect("same arity");
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut out = TensorElement::zero(self.n);
        for (c, us) in &self.terms {
            for (d, vs) in &other.terms {
                let fs = us.iter().zip(vs).map(|(u, v)| u * v).collect();
                out.push_term(c * d, fs)?;
            }
        }
        Ok(out)
    }

    /// Image of `x^α`.
    pub fn apply_monomial(&self, alpha: &[u64]) -> PolyN {
        let mut out = PolyN::zero(self.n);
        for (c, fs) in &self.terms {
            // tensor product of the per-variable images
            let mut acc: Vec<(MultiIndex, Rational)> = vec![(Vec::new(), c.clone())];
            for (u, &k) in fs.iter().zip(alpha) {
                let img = u.apply_monomial(k);
                let mut next = Vec::new();
                for (mono, v) in &acc {
                    for (&m, w) in img.coeffs() {
                        let mut mm = mono.clone();
                        mm.push(m);
                        next.push((mm, v * w));
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            for (mono, v) in acc {
                out.add_term(mono, v);
            }
        }
        out
    }

    pub fn apply(&self, p: &PolyN) -> Result<PolyN> {
        if p.n() != self.n {
            return Err(Error::ArityMismatch(self.n, p.n()));
        }
        let mut out = PolyN::zero(self.n);
        for (a, c) in p.coeffs() {
            out = out.add(&self.apply_monomial(a).scale(c))?;
        }
        Ok(out)
    }

    /// Coordinates in the tensor basis; worst case exponential in `n`.
    pub fn basis_expansion(&self) -> BTreeMap<BasisMonomial, Rational> {
        let mut out: BTreeMap<BasisMonomial, Rational> = BTreeMap::new();
        for (c, fs) in &self.terms {
            let mut acc: Vec<(BasisMonomial, Rational)> = vec![(Vec::new(), c.clone())];
            for u in fs {
                let terms = basis_terms(u);
                let mut next = Vec::with_capacity(acc.len() * terms.len());
                for (mono, v) in &acc {
                    for (k, w) in &terms {
                        let mut mm = mono.clone();
                        mm.push(k.clone());
                        next.push((mm, v * w));
                    }
                }
                acc = next;
            }
            for (mono, v) in acc {
                let e = out.entry(mono).or_insert_with(Rational::zero);
                *e += v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Patterns `f_b` of the basis monomials with nonzero coefficient: bit
    /// `i` is 0 exactly when the `i`-th factor is a matrix unit.
    pub fn basis_patterns(&self) -> Vec<Pattern> {
        let mut pats: Vec<Pattern> = self
            .basis_expansion()
            .keys()
            .map(|mono| {
                let bits = mono
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, k)| acc | (u64::from(!k.is_mat()) << i));
                Pattern::new(self.n, bits)
            })
            .collect();
        pats.sort_by_key(|p| (p.bits().count_ones(), p.values()));
        pats.dedup();
        pats
    }

    /// The two-sided ideal generated by this element.
    pub fn generated_ideal(&self) -> IdealNF {
        IdealNF::canon(self.n, self.basis_patterns()).expect("patterns share the arity")
    }

    /// Rebuilds an element from basis coordinates.
    pub fn from_basis(n: usize, coords: &BTreeMap<BasisMonomial, Rational>) -> Self {
        let mut out = TensorElement::zero(n);
        for (mono, c) in coords {
            let fs = mono.iter().map(BasisKey::element).collect();
            out.push_term(c.clone(), fs).expect("basis monomial arity");
        }
        out
    }
}

/// `λ · (⊗ s(h_i)) · (1 + f)` with `det(1 + f) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MinimalWire", try_from = "MinimalWire")]
pub struct MinimalUnit {
    pub lambda: Rational,
    pub hs: Vec<HUnit>,
    pub f: FiniteMatrix,
}

#[derive(Serialize, Deserialize)]
struct MinimalWire {
    lambda: String,
    hs: Vec<HUnit>,
    f: FiniteMatrix,
}

impl From<MinimalUnit> for MinimalWire {
    fn from(u: MinimalUnit) -> Self {
        MinimalWire {
            lambda: rational::to_wire(&u.lambda),
            hs: u.hs,
            f: u.f,
        }
    }
}

impl TryFrom<MinimalWire> for MinimalUnit {
    type Error = Error;
    fn try_from(w: MinimalWire) -> Result<Self> {
        MinimalUnit::new(rational::from_wire(&w.lambda)?, w.hs, w.f)
    }
}

impl MinimalUnit {
    pub fn new(lambda: Rational, hs: Vec<HUnit>, f: FiniteMatrix) -> Result<Self> {
        if hs.len() != f.dim() {
            return Err(Error::ArityMismatch(f.dim(), hs.len()));
        }
        if lambda.is_zero() || f.det_one_plus().is_zero() {
            return Err(Error::Singular);
        }
        Ok(MinimalUnit { lambda, hs, f })
    }

    pub fn n(&self) -> usize {
        self.hs.len()
    }

    fn h_tensor(&self, inverse: bool) -> TensorElement {
        let fs = self
            .hs
            .iter()
            .map(|h| if inverse { h.build_inverse() } else { h.build() })
            .collect();
        TensorElement::pure(Rational::one(), fs)
    }

    pub fn build(&self) -> TensorElement {
        let one_plus = TensorElement::one(self.n())
            .add(&TensorElement::from_matrix(&self.f))
            .expect("same arity");
        self.h_tensor(false)
            .mul(&one_plus)
            .expect("same arity")
            .scale(&self.lambda)
    }

    /// `λ^{-1} (1 + g) (⊗ s(h_i)^{-1})` with `(1 + f)(1 + g) = 1`.
    pub fn invert(&self) -> Result<TensorElement> {
        let g = self.f.invert_one_plus()?;
        let one_plus = TensorElement::one(self.n()).add(&TensorElement::from_matrix(&g))?;
        Ok(one_plus
            .mul(&self.h_tensor(true))?
            .scale(&(Rational::one() / &self.lambda)))
    }

    pub fn solve(&self, f: &PolyN) -> Result<PolyN> {
        self.invert()?.apply(f)
    }
}

fn not_minimal(why: &str) -> Error {
    Error::Unsupported(format!(
        "only minimal operators λ·h·(1+f) can be inverted in several variables: {why}"
    ))
}

/// Splits the all-skew part of `t` as `λ · a_1 ⊗ ⋯ ⊗ a_n` with each `a_i`
/// normalised at the first basis monomial.
pub fn split_symbol(t: &TensorElement) -> Result<(Rational, Vec<A1Element>)> {
    let n = t.n();
    let coords = t.basis_expansion();
    let skew: BTreeMap<&BasisMonomial, &Rational> = coords
        .iter()
        .filter(|(m, _)| m.iter().all(|k| !k.is_mat()))
        .collect();
    let (&base, c0) = skew
        .iter()
        .next()
        .ok_or_else(|| not_minimal("no invertible symbol"))?;
    // rank-one split of the all-skew part around the first monomial
    let mut slots: Vec<BTreeMap<BasisKey, Rational>> = vec![BTreeMap::new(); n];
    for (i, slot) in slots.iter_mut().enumerate() {
        for (m, c) in &skew {
            if m.iter().enumerate().all(|(j, k)| j == i || *k == base[j]) {
                slot.insert(m[i].clone(), *c / *c0);
            }
        }
    }
    let size: usize = slots.iter().map(BTreeMap::len).product();
    if size != skew.len() {
        return Err(not_minimal("symbol is not a pure tensor"));
    }
    for (m, c) in &skew {
        let mut want = (*c0).clone();
        for (i, k) in m.iter().enumerate() {
            match slots[i].get(k) {
                Some(v) => want *= v,
                None => return Err(not_minimal("symbol is not a pure tensor")),
            }
        }
        if want != **c {
            return Err(not_minimal("symbol is not a pure tensor"));
        }
    }
    let factors = slots.iter().map(|s| from_basis_terms(s.iter())).collect();
    Ok(((*c0).clone(), factors))
}

/// Recovers `(λ, h, f)` from an element of the minimal-operator group.
pub fn factor_minimal_unit(t: &TensorElement) -> Result<MinimalUnit> {
    let n = t.n();
    let (mut lambda, factors) = split_symbol(t)?;
    let mut hs = Vec::with_capacity(n);
    for a in &factors {
        let (l, shifts) = a
            .skew()
            .is_base_unit()
            .ok_or_else(|| not_minimal("factor symbol is not a product of shifts of H"))?;
        lambda *= l;
        hs.push(HUnit::new(shifts));
    }
    let inv_h = TensorElement::pure(
        Rational::one() / &lambda,
        hs.iter().map(HUnit::build_inverse).collect(),
    );
    let v = inv_h.mul(t)?.sub(&TensorElement::one(n))?;
    let mut f = FiniteMatrix::zero(n);
    for (mono, c) in v.basis_expansion() {
        let mut row = Vec::with_capacity(n);
        let mut col = Vec::with_capacity(n);
        for k in &mono {
            match *k {
                BasisKey::Mat { row: r, col: c } => {
                    row.push(r);
                    col.push(c);
                }
                BasisKey::Skew { .. } => return Err(not_minimal("residue is not in 1 + F")),
            }
        }
        f.add_entry(row, col, c);
    }
    MinimalUnit::new(lambda, hs, f)
}
