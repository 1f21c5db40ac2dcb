//! Turning parsed expressions into algebra elements and polynomials.

use std::collections::BTreeMap;

use jac_core::tensorn::{factor_minimal_unit, split_symbol};
use jac_core::units1::invert_unit;
use jac_core::{
    A1Element, FiniteMatrix, Generator, Poly1, PolyN, Rational, ShiftRatFun, SkewLaurent,
    TensorElement,
};
use num_traits::One;

use crate::error::CliError;
use crate::syntax::{pretty, Atom, Expr};

/// An element of the algebra in one variable, or a sum of pure tensors.
#[derive(Clone, Debug)]
pub enum Operator {
    One(A1Element),
    Many(TensorElement),
}

impl Operator {
    pub fn n(&self) -> usize {
        match self {
            Operator::One(_) => 1,
            Operator::Many(t) => t.n(),
        }
    }

    fn one(n: usize) -> Self {
        if n == 1 {
            Operator::One(A1Element::one())
        } else {
            Operator::Many(TensorElement::one(n))
        }
    }

    fn scalar(n: usize, c: Rational) -> Self {
        if n == 1 {
            Operator::One(A1Element::constant(c))
        } else {
            Operator::Many(TensorElement::scalar(n, c))
        }
    }

    fn add(&self, other: &Self) -> Result<Self, CliError> {
        Ok(match (self, other) {
            (Operator::One(a), Operator::One(b)) => Operator::One(a + b),
            (Operator::Many(a), Operator::Many(b)) => Operator::Many(a.add(b)?),
            _ => unreachable!("operands share the arity of the parse"),
        })
    }

    fn scale(&self, c: &Rational) -> Self {
        match self {
            Operator::One(a) => Operator::One(a.scale(c)),
            Operator::Many(t) => Operator::Many(t.scale(c)),
        }
    }

    fn mul(&self, other: &Self) -> Result<Self, CliError> {
        Ok(match (self, other) {
            (Operator::One(a), Operator::One(b)) => Operator::One(a * b),
            (Operator::Many(a), Operator::Many(b)) => Operator::Many(a.mul(b)?),
            _ => unreachable!("operands share the arity of the parse"),
        })
    }

    fn pow(&self, k: u64) -> Result<Self, CliError> {
        let mut acc = Operator::one(self.n());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Applies `θ` slot by slot.
    pub fn theta(&self) -> Self {
        match self {
            Operator::One(a) => Operator::One(a.theta()),
            Operator::Many(t) => {
                let mut out = TensorElement::zero(t.n());
                for (c, fs) in t.terms() {
                    out.push_term(c.clone(), fs.iter().map(A1Element::theta).collect())
                        .expect("same arity");
                }
                Operator::Many(out)
            }
        }
    }
}

/// `1 / r` for a base unit `r = λ ∏ (H+j)^{e_j}`.
fn base_reciprocal(lambda: &Rational, exps: &BTreeMap<i64, i64>) -> A1Element {
    let neg: BTreeMap<i64, i64> = exps.iter().map(|(&j, &e)| (j, -e)).collect();
    let r = ShiftRatFun::from_shift_exponents(Rational::one() / lambda, &neg);
    A1Element::from_skew(SkewLaurent::scalar(r))
}

/// The inverse of an element of the unit group, or the lifted reciprocal
/// of a pure symbol `λ ∏ (H+j)^{e_j}` (which is regularized at poles
/// `H = i >= 1` and so is only a one-sided inverse there).
fn reciprocal(op: &Operator, shown: &str) -> Result<Operator, CliError> {
    let fail = |why: String| CliError::NotInvertible(format!("{shown}: {why}"));
    match op {
        Operator::One(a) => {
            if a.mat().is_zero() {
                if let Some((l, exps)) = a.skew().is_base_unit() {
                    return Ok(Operator::One(base_reciprocal(&l, &exps)));
                }
            }
            invert_unit(a).map(Operator::One).map_err(|e| fail(e.to_string()))
        }
        Operator::Many(t) => {
            let coords = t.basis_expansion();
            if coords.keys().all(|m| m.iter().all(|k| !k.is_mat())) {
                let (mut lambda, factors) = split_symbol(t).map_err(|e| fail(e.to_string()))?;
                let mut slots = Vec::with_capacity(factors.len());
                for a in &factors {
                    let (l, exps) = a.skew().is_base_unit().ok_or_else(|| {
                        fail("a factor of the symbol is not a product of shifts of H".into())
                    })?;
                    lambda *= &l;
                    slots.push(base_reciprocal(&Rational::one(), &exps));
                }
                return Ok(Operator::Many(TensorElement::pure(Rational::one() / lambda, slots)));
            }
            let u = factor_minimal_unit(t).map_err(|e| fail(e.to_string()))?;
            Ok(Operator::Many(u.invert().map_err(|e| fail(e.to_string()))?))
        }
    }
}

fn generator(g: Generator) -> A1Element {
    A1Element::generator(&g).expect("parsed indices are in range")
}

fn atom(a: &Atom, n: usize) -> Operator {
    let (slot, el) = match a {
        Atom::X(s) => (*s, generator(Generator::X)),
        Atom::D(s) => (*s, generator(Generator::Partial)),
        Atom::H(s) => (*s, generator(Generator::H)),
        Atom::SmallH(s) => (*s, generator(Generator::SmallH)),
        Atom::Int(s) => (*s, generator(Generator::Int)),
        Atom::E { slot, row, col } => (*slot, generator(Generator::E(*row, *col))),
        Atom::Pi { slot, i } => (*slot, generator(Generator::Pi(*i))),
        Atom::Rho { slot, j: None, i } => (*slot, generator(Generator::Rho(*i))),
        Atom::Rho { slot, j: Some(j), i } => {
            (*slot, generator(Generator::RhoJI { j: *j, i: *i }))
        }
        Atom::EMulti { row, col } => {
            let mut m = FiniteMatrix::zero(n);
            m.add_entry(row.clone(), col.clone(), Rational::one());
            return if n == 1 {
                Operator::One(A1Element::from_mat(m))
            } else {
                Operator::Many(TensorElement::from_matrix(&m))
            };
        }
    };
    if n == 1 {
        Operator::One(el)
    } else {
        Operator::Many(TensorElement::embed(n, slot - 1, el))
    }
}

/// Evaluates `e` in the algebra with `n` variables.
pub fn elaborate(e: &Expr, n: usize) -> Result<Operator, CliError> {
    Ok(match e {
        Expr::Num(q) => Operator::scalar(n, q.clone()),
        Expr::Atom(a) => atom(a, n),
        Expr::Neg(a) => elaborate(a, n)?.scale(&-Rational::one()),
        Expr::Add(a, b) => elaborate(a, n)?.add(&elaborate(b, n)?)?,
        Expr::Sub(a, b) => elaborate(a, n)?.add(&elaborate(b, n)?.scale(&-Rational::one()))?,
        Expr::Mul(a, b) => elaborate(a, n)?.mul(&elaborate(b, n)?)?,
        Expr::Pow(a, k) => {
            let base = elaborate(a, n)?.pow(k.unsigned_abs())?;
            if *k < 0 {
                let mut shown = pretty(a, n);
                if !matches!(**a, Expr::Atom(_) | Expr::Num(_)) {
                    shown = format!("({shown})");
                }
                if *k != -1 {
                    shown = format!("{shown}^{}", k.unsigned_abs());
                }
                reciprocal(&base, &shown)?
            } else {
                base
            }
        }
    })
}

/// Evaluates `e` as a polynomial in `x_1, …, x_n`.
pub fn polynomial(e: &Expr, n: usize) -> Result<PolyN, CliError> {
    let mul = |a: &PolyN, b: &PolyN| {
        let mut out = PolyN::zero(n);
        for (al, c) in a.coeffs() {
            for (be, d) in b.coeffs() {
                let sum = al.iter().zip(be).map(|(x, y)| x + y).collect();
                out.add_term(sum, c * d);
            }
        }
        out
    };
    Ok(match e {
        Expr::Num(q) => PolyN::monomial(vec![0; n], q.clone()),
        Expr::Atom(Atom::X(s)) => {
            let mut alpha = vec![0; n];
            alpha[s - 1] = 1;
            PolyN::monomial(alpha, Rational::one())
        }
        Expr::Atom(_) => {
            return Err(CliError::NotPolynomial(format!(
                "'{}' is not an x-variable",
                pretty(e, n)
            )))
        }
        Expr::Neg(a) => polynomial(a, n)?.scale(&-Rational::one()),
        Expr::Add(a, b) => polynomial(a, n)?.add(&polynomial(b, n)?)?,
        Expr::Sub(a, b) => polynomial(a, n)?.add(&polynomial(b, n)?.scale(&-Rational::one()))?,
        Expr::Mul(a, b) => mul(&polynomial(a, n)?, &polynomial(b, n)?),
        Expr::Pow(a, k) => {
            if *k < 0 {
                return Err(CliError::NotPolynomial("negative exponent".into()));
            }
            let p = polynomial(a, n)?;
            let mut acc = PolyN::one(n);
            for _ in 0..*k {
                acc = mul(&acc, &p);
            }
            acc
        }
    })
}

/// `PolyN` in one variable as a `Poly1`.
pub fn to_poly1(p: &PolyN) -> Poly1 {
    let mut out = Poly1::zero();
    for (al, c) in p.coeffs() {
        out.add_term(al[0], c.clone());
    }
    out
}
