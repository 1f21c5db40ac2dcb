//! Generated ideals and minimal units in several variables.

use std::collections::BTreeSet;

use jac_core::rational::int;
use jac_core::tensorn::factor_minimal_unit;
use jac_core::{A1Element, FiniteMatrix, Generator, IdealNF, MinimalUnit, MultiIndex, Pattern, PolyN, Rational, TensorElement};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::common::{self, gen};
use crate::Report;

/// A basis element of the algebra in one variable, named by how it is built
/// from generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    HD { i: u64, l: u64 },
    ShiftD { j: i64, k: u32, l: u64 },
    PiD { i: i64, k: u32, l: u64 },
    XH { m: u64, i: u64 },
    XShift { m: u64, j: i64, k: u32 },
    XPi { m: u64, i: i64, k: u32 },
    E { s: u64, t: u64 },
}

fn pow(g: Generator, k: u64) -> A1Element {
    (0..k).fold(A1Element::one(), |acc, _| &acc * &gen(g.clone()))
}

impl Slot {
    fn random(r: &mut ChaCha8Rng) -> Self {
        let (a, b) = (r.gen_range(0..=3u64), r.gen_range(1..=3u64));
        let (j, k) = (r.gen_range(0..=2i64), r.gen_range(1..=2u32));
        match r.gen_range(0..7) {
            0 => Slot::HD { i: a, l: b },
            1 => Slot::ShiftD { j, k, l: b },
            2 => Slot::PiD { i: j + 1, k, l: b },
            3 => Slot::XH { m: b, i: a },
            4 => Slot::XShift { m: b, j, k },
            5 => Slot::XPi { m: b, i: j + 1, k },
            _ => Slot::E { s: a, t: r.gen_range(0..=3) },
        }
    }

    fn element(&self) -> A1Element {
        use Generator::*;
        match *self {
            Slot::HD { i, l } => &pow(H, i) * &pow(Partial, l),
            Slot::ShiftD { j, k, l } => &gen(ShiftInv { j, k }) * &pow(Partial, l),
            Slot::PiD { i, k, l } => &gen(ShiftedPiPrime { i, k }) * &pow(Partial, l),
            Slot::XH { m, i } => &pow(X, m) * &pow(H, i),
            Slot::XShift { m, j, k } => &pow(X, m) * &gen(ShiftInv { j, k }),
            Slot::XPi { m, i, k } => &pow(X, m) * &gen(ShiftedPiPrime { i, k }),
            Slot::E { s, t } => gen(E(s, t)),
        }
    }

    fn is_mat(&self) -> bool {
        matches!(self, Slot::E { .. })
    }
}

fn pattern(slots: &[Slot]) -> Pattern {
    let bits = slots
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, s)| acc | (u64::from(!s.is_mat()) << i));
    Pattern::new(slots.len(), bits)
}

fn random_tensor(r: &mut ChaCha8Rng, n: usize) -> (TensorElement, IdealNF) {
    let mut monomials: BTreeSet<Vec<Slot>> = BTreeSet::new();
    for _ in 0..r.gen_range(1..=4) {
        monomials.insert((0..n).map(|_| Slot::random(r)).collect());
    }
    let mut t = TensorElement::zero(n);
    for m in &monomials {
        let term = TensorElement::pure(common::nonzero_q(r), m.iter().map(Slot::element).collect());
        t = t.add(&term).unwrap();
    }
    let want = IdealNF::canon(n, monomials.iter().map(|m| pattern(m))).unwrap();
    (t, want)
}

pub fn generated_ideals(rep: &mut Report) {
    let mut r = common::rng(601);
    for n in 2..=3 {
        for t in 0..50 {
            let (a, want) = random_tensor(&mut r, n);
            let got = a.generated_ideal();
            rep.eq(got.clone(), want, || format!("n={n}: ideal generated by tensor {t}"));
            let (left, _) = random_tensor(&mut r, n);
            let (right, _) = random_tensor(&mut r, n);
            let sandwich = left.mul(&a).unwrap().mul(&right).unwrap();
            rep.check(got.contains(&sandwich.generated_ideal()).unwrap(), || {
                format!("n={n}: r a s lies in the ideal of a, tensor {t}")
            });
        }
    }
    let e00 = gen(Generator::E(0, 0));
    let one = A1Element::one();
    let a = TensorElement::pure(int(1), vec![e00.clone(), one.clone()])
        .add(&TensorElement::pure(int(1), vec![one, e00]))
        .unwrap();
    rep.eq(a.generated_ideal(), IdealNF::a_n(2), || "E_00 ⊗ 1 + 1 ⊗ E_00 generates a_2".into());
    for n in 1..=3 {
        let units = TensorElement::pure(int(1), (0..n).map(|_| gen(Generator::E(1, 2))).collect());
        rep.eq(units.generated_ideal(), IdealNF::f_tensor(n), || format!("E_12^⊗{n} generates F^⊗{n}"));
        let h = TensorElement::pure(int(1), (0..n).map(|_| gen(Generator::H)).collect());
        rep.eq(h.generated_ideal(), IdealNF::full(n), || format!("H^⊗{n} generates the ring"));
    }
}

fn random_minimal_unit(r: &mut ChaCha8Rng) -> MinimalUnit {
    loop {
        let mut f = FiniteMatrix::zero(2);
        for _ in 0..r.gen_range(0..=5) {
            let row = vec![r.gen_range(0..3), r.gen_range(0..3)];
            let col = vec![r.gen_range(0..3), r.gen_range(0..3)];
            f.add_entry(row, col, common::small_q(r));
        }
        let hs = vec![common::hunit(r), common::hunit(r)];
        if let Ok(u) = MinimalUnit::new(common::nonzero_q(r), hs, f) {
            return u;
        }
    }
}

fn random_poly(r: &mut ChaCha8Rng) -> PolyN {
    let mut p = PolyN::zero(2);
    for _ in 0..r.gen_range(1..=5) {
        p.add_term(vec![r.gen_range(0..=6), r.gen_range(0..=6)], common::small_q(r));
    }
    p
}

fn cube(d: u64) -> Vec<MultiIndex> {
    (0..d).flat_map(|a| (0..d).map(move |b| vec![a, b])).collect()
}

/// `det(1 + f)` on the index cube `[0, d)^2` by Gaussian elimination.
fn gauss_det(f: &FiniteMatrix, d: u64) -> Rational {
    let idx = cube(d);
    let mut a: Vec<Vec<Rational>> = idx
        .iter()
        .map(|row| {
            idx.iter()
                .map(|col| {
                    let e = f.get(row, col);
                    if row == col {
                        e + Rational::one()
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            let m = &a[i][c] / &pivot;
            if m.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &a[c][j] * &m;
                a[i][j] -= v;
            }
        }
    }
    det
}

pub fn minimal_units(rep: &mut Report) {
    let mut r = common::rng(701);
    let one = TensorElement::one(2).basis_expansion();
    for t in 0..100 {
        let u = random_minimal_unit(&mut r);
        let a = u.build();
        match u.invert() {
            Ok(v) => {
                rep.eq(a.mul(&v).unwrap().basis_expansion(), one.clone(), || format!("u u^-1 = 1, unit {t}"));
                rep.eq(v.mul(&a).unwrap().basis_expansion(), one.clone(), || format!("u^-1 u = 1, unit {t}"));
            }
            Err(e) => rep.check(false, || format!("unit {t} not inverted: {e}")),
        }
        let p = random_poly(&mut r);
        match u.solve(&p) {
            Ok(y) => rep.eq(a.apply(&y).unwrap(), p, || format!("u y = f, unit {t}")),
            Err(e) => rep.check(false, || format!("unit {t} not solved: {e}")),
        }
        match factor_minimal_unit(&a) {
            Ok(w) => rep.eq(w.build().basis_expansion(), a.basis_expansion(), || {
                format!("factorization rebuilds unit {t}")
            }),
            Err(e) => rep.check(false, || format!("unit {t} not factored: {e}")),
        }
    }
    for t in 0..100 {
        let f = common::matrix_n(&mut r, 2, 3, 6);
        let d = f.block_size();
        let det = f.det_one_plus();
        for extra in 0..=2 {
            rep.eq(gauss_det(&f, d + extra), det.clone(), || {
                format!("det(1 + f) on a cube padded by {extra}, matrix {t}")
            });
            rep.eq(f.det_one_plus_on(&cube(d + extra)), det.clone(), || {
                format!("library det(1 + f) padded by {extra}, matrix {t}")
            });
        }
    }
}
