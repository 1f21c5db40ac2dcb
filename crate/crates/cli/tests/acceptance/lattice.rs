//! The lattice of two-sided ideals.

use std::collections::{BTreeSet, HashMap, HashSet};

use jac_core::lattice::{
    count_ideals, enumerate_ideals, ideal_count_lower_bound, ideal_count_upper_bound, krull_dim,
    spec_enum,
};
use jac_core::{IdealNF, Pattern, PrimeIdeal};
use num_bigint::BigUint;
use rand::seq::SliceRandom;

use crate::common;
use crate::Report;

/// Antichains of `{0,1}^n`, counted by scanning every family of patterns.
fn brute_force_antichains(n: usize) -> u64 {
    let m = 1usize << n;
    let mut count = 0;
    for fam in 0u64..(1u64 << m) {
        let members: Vec<u64> = (0..m as u64).filter(|&s| fam >> s & 1 == 1).collect();
        if members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || a & !b != 0))
        {
            count += 1;
        }
    }
    count
}

/// `2 - n + Σ_i 2^C(n,i)` and `2^(2^n)`, computed directly.
fn bounds(n: usize) -> (BigUint, BigUint) {
    let binom = |n: usize, k: usize| (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
    let mut lo = BigUint::from(2u32);
    for i in 1..=n {
        lo += BigUint::from(1u32) << binom(n, i);
    }
    lo -= BigUint::from(n);
    (lo, BigUint::from(1u32) << (1u64 << n))
}

fn proper(ideals: &[IdealNF]) -> Vec<IdealNF> {
    ideals.iter().filter(|a| !a.is_full()).cloned().collect()
}

fn min_set(a: &IdealNF) -> BTreeSet<u64> {
    a.min_primes().expect("proper ideal").iter().map(PrimeIdeal::idx).collect()
}

fn minimal(set: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
    let all: Vec<u64> = set.into_iter().collect();
    all.iter()
        .copied()
        .filter(|&p| !all.iter().any(|&q| q != p && q & !p == 0))
        .collect()
}

fn single(n: usize, f: &Pattern) -> IdealNF {
    IdealNF::canon(n, [f.clone()]).expect("pattern of arity n")
}

/// `C ⪯ C'`: every `f ∈ C` lies below some `f' ∈ C'` and every `g' ∈ C'`
/// lies above some `g ∈ C`.
fn preceq(c: &[Pattern], d: &[Pattern]) -> bool {
    c.iter().all(|f| d.iter().any(|g| f.le(g))) && d.iter().all(|g| c.iter().any(|f| f.le(g)))
}

fn is_antichain(c: &[Pattern]) -> bool {
    c.iter().all(|f| c.iter().all(|g| f == g || !f.le(g)))
}

fn pair_laws(rep: &mut Report, n: usize, a: &IdealNF, b: &IdealNF) {
    let ab = a.product(b).unwrap();
    rep.eq(a.product(a).unwrap(), a.clone(), || format!("n={n}: a a = a for a = {a}"));
    rep.eq(ab.clone(), b.product(a).unwrap(), || format!("n={n}: ab = ba for {a}, {b}"));
    rep.eq(ab, a.intersect(b).unwrap(), || format!("n={n}: ab = a ∩ b for {a}, {b}"));
}

fn counts(rep: &mut Report) {
    let ideals_1: HashSet<IdealNF> = enumerate_ideals(1).unwrap().into_iter().collect();
    let want: HashSet<IdealNF> = [IdealNF::zero(1), IdealNF::f_tensor(1), IdealNF::full(1)].into();
    rep.eq(ideals_1, want, || "ideals of the algebra in one variable are 0, F, A".into());
    for (n, want) in [(1usize, 3u64), (2, 6), (3, 20), (4, 168)] {
        if n >= 2 {
            rep.eq(brute_force_antichains(n), want, || format!("antichain oracle s_{n}"));
        }
        rep.eq(count_ideals(n).ok(), Some(want), || format!("s_{n}"));
        rep.eq(enumerate_ideals(n).unwrap().len() as u64, want, || format!("enumerated s_{n}"));
    }
    for n in 1..=5 {
        let s = BigUint::from(count_ideals(n).unwrap());
        let (lo, hi) = bounds(n);
        rep.check(lo <= s && s <= hi, || format!("bounds for s_{n} = {s}: [{lo}, {hi}]"));
        rep.eq((ideal_count_lower_bound(n), ideal_count_upper_bound(n)), (lo, hi), || {
            format!("library bounds for n = {n}")
        });
    }
}

fn laws(rep: &mut Report) {
    for n in 1..=3 {
        let all = enumerate_ideals(n).unwrap();
        for a in &all {
            for b in &all {
                pair_laws(rep, n, a, b);
            }
        }
    }
    let all = enumerate_ideals(4).unwrap();
    let mut r = common::rng(301);
    for _ in 0..3000 {
        let a = all.choose(&mut r).unwrap();
        let b = all.choose(&mut r).unwrap();
        pair_laws(rep, 4, a, b);
    }
    let all = enumerate_ideals(3).unwrap();
    for a in &all {
        for b in &all {
            let meet = a.intersect(b).unwrap();
            let sum = a.sum(b).unwrap();
            for c in &all {
                let lhs = meet.product(c).unwrap();
                let rhs = a.product(c).unwrap().intersect(&b.product(c).unwrap()).unwrap();
                rep.eq(lhs, rhs, || format!("(a ∩ b)c = ac ∩ bc for {a}, {b}, {c}"));
                let lhs = sum.intersect(c).unwrap();
                let rhs = a.intersect(c).unwrap().sum(&b.intersect(c).unwrap()).unwrap();
                rep.eq(lhs, rhs, || format!("(a + b) ∩ c = a ∩ c + b ∩ c for {a}, {b}, {c}"));
            }
        }
    }
}

fn product_of(n: usize, primes: &[PrimeIdeal]) -> IdealNF {
    primes
        .iter()
        .fold(IdealNF::full(n), |acc, p| acc.product(&p.to_ideal()).unwrap())
}

fn factorization(rep: &mut Report) {
    for n in 1..=4 {
        let primes: Vec<PrimeIdeal> = spec_enum(n).into_iter().map(|(p, _)| p).collect();
        // every antichain of primes and the ideal its product gives
        let mut products: HashMap<IdealNF, Vec<Vec<PrimeIdeal>>> = HashMap::new();
        for mask in 1u64..(1u64 << primes.len()) {
            let set: Vec<PrimeIdeal> = (0..primes.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| primes[i])
                .collect();
            let incomparable = set.iter().all(|p| {
                set.iter().all(|q| p == q || (p.idx() & !q.idx() != 0 && q.idx() & !p.idx() != 0))
            });
            if incomparable {
                products.entry(product_of(n, &set)).or_default().push(set);
            }
        }
        for a in proper(&enumerate_ideals(n).unwrap()) {
            let Ok(fac) = a.factor_primes() else {
                rep.check(false, || format!("n={n}: {a} not factored"));
                continue;
            };
            rep.eq(product_of(n, &fac), a.clone(), || format!("n={n}: product of factors of {a}"));
            let meet = fac
                .iter()
                .fold(IdealNF::full(n), |acc, p| acc.intersect(&p.to_ideal()).unwrap());
            rep.eq(meet, a.clone(), || format!("n={n}: intersection of factors of {a}"));
            rep.eq(products.get(&a).cloned(), Some(vec![fac.clone()]), || {
                format!("n={n}: the incomparable prime factorization of {a} is unique")
            });
        }
    }
}

fn products_and_minimal_primes(rep: &mut Report) {
    for n in 1..=3 {
        let all = proper(&enumerate_ideals(n).unwrap());
        for a1 in &all {
            for a2 in &all {
                let m = minimal(min_set(a1).into_iter().chain(min_set(a2)));
                let prod = a1.product(a2).unwrap();
                for a in &all {
                    rep.eq(*a == prod, min_set(a) == m, || {
                        format!("n={n}: {a} = {a1}·{a2} iff Min({a}) = M")
                    });
                }
            }
        }
    }
}

fn spectrum(rep: &mut Report) {
    for n in 1..=6 {
        let spec = spec_enum(n);
        rep.eq(spec.len(), 1 << n, || format!("|Spec| for n = {n}"));
        let ideals: Vec<IdealNF> = spec.iter().map(|(p, _)| p.to_ideal()).collect();
        let distinct: HashSet<&IdealNF> = ideals.iter().collect();
        rep.eq(distinct.len(), 1 << n, || format!("distinct primes for n = {n}"));
        // longest chain ending at each prime, primes listed by height
        let mut chain = vec![0usize; spec.len()];
        for i in 0..spec.len() {
            for j in 0..i {
                if i != j && ideals[i].contains(&ideals[j]).unwrap() && ideals[i] != ideals[j] {
                    chain[i] = chain[i].max(chain[j] + 1);
                }
            }
        }
        for (i, (p, h)) in spec.iter().enumerate() {
            rep.eq(chain[i], p.idx().count_ones() as usize, || format!("height of {p}"));
            rep.eq(*h, chain[i], || format!("reported height of {p}"));
        }
        let dim = chain.iter().copied().max().unwrap_or(0);
        rep.eq(dim, n, || format!("longest chain of primes for n = {n}"));
        rep.eq(krull_dim(n), n, || format!("Krull dimension for n = {n}"));
    }
}

fn c_involution(rep: &mut Report) {
    for n in 1..=3 {
        let all = enumerate_ideals(n).unwrap();
        let pats: Vec<Pattern> = (0..1u64 << n).map(|b| Pattern::new(n, b)).collect();
        for a in &all {
            rep.eq(a.c_involution().c_involution(), a.clone(), || format!("n={n}: c²({a})"));
        }
        for f in &pats {
            for g in &pats {
                if f.le(g) {
                    let (cf, cg) = (single(n, f).c_involution(), single(n, g).c_involution());
                    rep.check(cf.contains(&cg).unwrap(), || {
                        format!("c order reversal, n={n}: {f} ≤ {g} but c(I_f) = {cf} ⊉ c(I_g) = {cg}")
                    });
                }
            }
        }
        for a in &all {
            let closed = a
                .antichain()
                .iter()
                .all(|p| a.antichain().contains(&Pattern::new(n, p.csupp())));
            rep.eq(a.c_involution() == *a, closed, || {
                format!("c fixed points, n={n}: c({a}) = {a} iff its patterns are closed under f ↦ f+1")
            });
        }
        for a in &all {
            for b in &all {
                let (ca, cb) = (a.c_involution(), b.c_involution());
                let (cc, cd) = (a.antichain(), b.antichain());
                if preceq(cc, cd) {
                    rep.check(ca.contains(&cb).unwrap(), || {
                        format!("c ⪯ reversal, n={n}: C = {a} ⪯ C' = {b} but c(I_C) = {ca} ⊉ c(I_C') = {cb}")
                    });
                }
                let c_sum = a.sum(b).unwrap().c_involution();
                let sum_c = ca.sum(&cb).unwrap();
                rep.check(sum_c.contains(&c_sum).unwrap(), || {
                    format!("c sums, n={n}: c({a} + {b}) = {c_sum} ⊄ c(a) + c(b) = {sum_c}")
                });
                let union: Vec<Pattern> =
                    cc.iter().chain(cd.iter()).cloned().collect::<BTreeSet<_>>().into_iter().collect();
                if is_antichain(&union) {
                    rep.eq(c_sum.clone(), sum_c.clone(), || {
                        format!("c sums, n={n}: c({a} + {b}) = c(a) + c(b) when C ∪ C' is an antichain")
                    });
                }
                if !a.is_zero() && !b.is_zero() {
                    let c_prod = a.product(b).unwrap().c_involution();
                    rep.check(c_prod.contains(&sum_c).unwrap(), || {
                        format!("c products, n={n}: a = {a}, b = {b}: c(ab) = {c_prod} ⊉ c(a) + c(b) = {sum_c}")
                    });
                }
            }
        }
    }
}

fn tau_involution(rep: &mut Report) {
    for n in 1..=4 {
        let full = (1u64 << n) - 1;
        for a in proper(&enumerate_ideals(n).unwrap()) {
            let Ok(t) = a.tau_involution() else {
                rep.check(false, || format!("n={n}: τ({a}) undefined"));
                continue;
            };
            rep.eq(t.tau_involution().ok(), Some(a.clone()), || format!("n={n}: τ²({a})"));
            let mins = min_set(&a);
            let flipped: BTreeSet<u64> = mins.iter().map(|&p| full & !p).collect();
            rep.eq(t == a, flipped == mins, || format!("n={n}: τ({a}) = {a} iff τ(Min) = Min"));
            let want = mins
                .iter()
                .map(|&p| PrimeIdeal::new(n, full & !p).to_ideal())
                .fold(IdealNF::full(n), |acc, q| acc.intersect(&q).unwrap());
            rep.eq(t, want, || format!("n={n}: τ({a}) is the intersection of τ over Min"));
        }
        for (p, _) in spec_enum(n) {
            let tp = p.to_ideal().tau_involution().unwrap();
            rep.eq(tp.clone(), p.complement().to_ideal(), || format!("n={n}: τ({p})"));
            rep.eq(p.to_ideal().sum(&tp).unwrap(), IdealNF::a_n(n), || format!("n={n}: {p} + τ({p})"));
            for (q, _) in spec_enum(n) {
                if q.to_ideal().contains(&p.to_ideal()).unwrap() {
                    let tq = q.to_ideal().tau_involution().unwrap();
                    rep.check(tp.contains(&tq).unwrap(), || format!("n={n}: τ reverses {p} ⊆ {q}"));
                }
            }
        }
    }
}

fn completely_prime(rep: &mut Report) {
    for n in 1..=4 {
        let all = enumerate_ideals(n).unwrap();
        let cp: Vec<IdealNF> = all.iter().filter(|a| a.classify().completely_prime).cloned().collect();
        rep.eq(cp, vec![IdealNF::a_n(n)], || format!("completely prime ideals for n = {n}"));
        let noeth: Vec<IdealNF> =
            all.iter().filter(|a| a.classify().noetherian_quotient).cloned().collect();
        rep.eq(noeth, vec![IdealNF::a_n(n)], || format!("Noetherian quotients for n = {n}"));
    }
}

pub fn lattice(rep: &mut Report) {
    counts(rep);
    laws(rep);
    factorization(rep);
    products_and_minimal_primes(rep);
    spectrum(rep);
    c_involution(rep);
    tau_involution(rep);
    completely_prime(rep);
}
