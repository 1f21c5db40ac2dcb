//! Finitely supported matrices `M_∞(K)` and their tensor powers, with rows and
//! columns indexed by multi-indices in `ℕ^n`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type MultiIndex = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MatrixWire", try_from = "MatrixWire")]
pub struct FiniteMatrix {
    dim: usize,
    entries: BTreeMap<(MultiIndex, MultiIndex), Rational>,
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    dim: usize,
    entries: Vec<(MultiIndex, MultiIndex, String)>,
}

impl From<FiniteMatrix> for MatrixWire {
    fn from(m: FiniteMatrix) -> Self {
        MatrixWire {
            dim: m.dim,
            entries: m
                .entries
                .iter()
                .map(|((r, c), v)| (r.clone(), c.clone(), rational::to_wire(v)))
                .collect(),
        }
    }
}

impl TryFrom<MatrixWire> for FiniteMatrix {
    type Error = Error;
    fn try_from(w: MatrixWire) -> Result<Self> {
        if w.dim == 0 {
            return Err(Error::Malformed("matrix dim must be at least 1".into()));
        }
        let mut m = FiniteMatrix::zero(w.dim);
        for (r, c, v) in w.entries {
            m.check_index(&r)?;
            m.check_index(&c)?;
            m.add_entry(r, c, rational::from_wire(&v)?);
        }
        Ok(m)
    }
}

impl FiniteMatrix {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dim must be at least 1");
        FiniteMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// `c * E_{row, col}`.
    pub fn unit(row: MultiIndex, col: MultiIndex, c: Rational) -> Self {
        let mut m = FiniteMatrix::zero(row.len());
        assert_eq!(row.len(), col.len(), "row and column arity differ");
        m.add_entry(row, col, c);
        m
    }

    /// `c * E_{ij}` in one variable.
    pub fn e(i: u64, j: u64, c: Rational) -> Self {
        Self::unit(vec![i], vec![j], c)
    }

    fn check_index(&self, idx: &MultiIndex) -> Result<()> {
        if idx.len() != self.dim {
            return Err(Error::DimMismatch(self.dim, idx.len()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &BTreeMap<(MultiIndex, MultiIndex), Rational> {
        &self.entries
    }

    pub fn get(&self, row: &[u64], col: &[u64]) -> Rational {
        self.entries
            .get(&(row.to_vec(), col.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `c` to the `(row, col)` entry, dropping it if it becomes zero.
    pub fn add_entry(&mut self, row: MultiIndex, col: MultiIndex, c: Rational) {
        debug_assert_eq!(row.len(), self.dim);
        debug_assert_eq!(col.len(), self.dim);
        if c.is_zero() {
            return;
        }
        let key = (row, col);
        let v = self.entries.remove(&key).unwrap_or_else(Rational::zero) + c;
        if !v.is_zero() {
            self.entries.insert(key, v);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return FiniteMatrix::zero(self.dim);
        }
        FiniteMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.add_entry(r.clone(), c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let mut by_row: BTreeMap<&MultiIndex, Vec<(&MultiIndex, &Rational)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = FiniteMatrix::zero(self.dim);
        for ((i, j), a) in &self.entries {
            if let Some(row) = by_row.get(j) {
                for (l, b) in row {
                    out.add_entry(i.clone(), (*l).clone(), a * *b);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        FiniteMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|((r, c), v)| ((c.clone(), r.clone()), v.clone()))
                .collect(),
        }
    }

    /// Row and column indices that carry an entry, sorted.
    pub fn support_indices(&self) -> Vec<MultiIndex> {
        let set: BTreeSet<&MultiIndex> = self.entries.keys().flat_map(|(r, c)| [r, c]).collect();
        set.into_iter().cloned().collect()
    }

    /// Smallest `d` with the support inside the block `[0, d)^n`.
    pub fn block_size(&self) -> u64 {
        self.entries
            .keys()
            .flat_map(|(r, c)| r.iter().chain(c.iter()))
            .map(|&i| i + 1)
            .max()
            .unwrap_or(0)
    }

    /// Dense `1 + f` on the given index list.
    fn one_plus_dense(&self, idx: &[MultiIndex]) -> Vec<Vec<Rational>> {
        let pos: BTreeMap<&MultiIndex, usize> = idx.iter().enumerate().map(|(p, i)| (i, p)).collect();
        let n = idx.len();
        let mut a = vec![vec![Rational::zero(); n]; n];
        for (p, row) in a.iter_mut().enumerate() {
            row[p] = Rational::one();
        }
        for ((r, c), v) in &self.entries {
            a[pos[r]][pos[c]] += v;
        }
        a
    }

    /// Determinant of `1 + f` on an explicit list of indices, which must
    /// cover the support.
    pub fn det_one_plus_on(&self, idx: &[MultiIndex]) -> Rational {
        det(self.one_plus_dense(idx))
    }

    /// The stable determinant of `1 + f`. Indices outside the support only
    /// contribute diagonal ones, so the support suffices.
    pub fn det_one_plus(&self) -> Rational {
        self.det_one_plus_on(&self.support_indices())
    }

    /// `g` with `(1 + f)(1 + g) = 1`.
    pub fn invert_one_plus(&self) -> Result<Self> {
        let idx = self.support_indices();
        let n = idx.len();
        let mut a = self.one_plus_dense(&idx);
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = Rational::one() / &a[col][col];
            for v in a[col].iter_mut() {
                *v *= &p;
            }
            for v in inv[col].iter_mut() {
                *v *= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for k in 0..n {
                    let t = &f * &a[col][k];
                    a[r][k] -= t;
                    let t = &f * &inv[col][k];
                    inv[r][k] -= t;
                }
            }
        }
        let mut g = FiniteMatrix::zero(self.dim);
        for (r, row) in inv.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                let v = if r == c { v - Rational::one() } else { v };
                g.add_entry(idx[r].clone(), idx[c].clone(), v);
            }
        }
        Ok(g)
    }

    /// `E_{αβ} ↦ (α!/β!) E_{βα}`.
    pub fn theta(&self) -> Self {
        let mut out = FiniteMatrix::zero(self.dim);
        for ((r, c), v) in &self.entries {
            let s = Rational::new(multi_factorial(r), multi_factorial(c));
            out.add_entry(c.clone(), r.clone(), v * s);
        }
        out
    }

    /// The matrix part `λE_{ij}` of the transvection `1 + λE_{ij}`.
    pub fn transvection(i: MultiIndex, j: MultiIndex, lambda: Rational) -> Result<Self> {
        if i.len() != j.len() {
            return Err(Error::DimMismatch(i.len(), j.len()));
        }
        if i == j {
            return Err(Error::DegenerateTransvection);
        }
        Ok(Self::unit(i, j, lambda))
    }

    /// Tensor product `E_{αβ} ⊗ E_{γδ} = E_{(α,γ),(β,δ)}`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = FiniteMatrix::zero(self.dim + other.dim);
        for ((r1, c1), v1) in &self.entries {
            for ((r2, c2), v2) in &other.entries {
                let r = r1.iter().chain(r2).copied().collect();
                let c = c1.iter().chain(c2).copied().collect();
                out.add_entry(r, c, v1 * v2);
            }
        }
        out
    }
}

/// `α! = ∏ α_i!`.
pub fn multi_factorial(a: &[u64]) -> num_bigint::BigInt {
    a.iter().map(|&k| rational::factorial(k)).product()
}

/// Determinant by Gaussian elimination over the rationals.
fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut acc = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            acc = -acc;
        }
        let p = a[col][col].clone();
        acc *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for k in col..n {
                let t = &f * &a[col][k];
                a[r][k] -= t;
            }
        }
    }
    acc
}

impl std::fmt::Display for FiniteMatrix {
    /// `c*E[i,j]`; multi-indices print as `E[(a,b),(c,d)]`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<(Rational, String)> = self
            .entries
            .iter()
            .map(|((r, c), v)| (v.clone(), matrix_unit_name(r, c)))
            .collect();
        crate::ratfun::write_signed_sum(f, &parts)
    }
}

pub(crate) fn matrix_unit_name(r: &[u64], c: &[u64]) -> String {
    if r.len() == 1 {
        format!("E[{},{}]", r[0], c[0])
    } else {
        let show = |v: &[u64]| {
            v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        };
        format!("E[({}),({})]", show(r), show(c))
    }
}
