//! Ideals of the algebra in `n` variables as antichains of `{0,1}`-patterns.
//!
//! A pattern `f: {1..n} -> {0,1}` stands for `I_{f(1)} ⊗ ... ⊗ I_{f(n)}`
//! with `I_0 = F` and `I_1` the whole algebra in one variable. Every ideal is
//! a sum of such tensors, and the maximal patterns form its normal form.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration is supported up to this arity.
pub const MAX_ENUM_N: usize = 6;

/// Support set of a pattern, bit `i - 1` for index `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    n: u8,
    bits: u64,
}

impl Pattern {
    pub fn new(n: usize, bits: u64) -> Self {
        assert!((1..=64).contains(&n), "arity must be in 1..=64");
        assert!(n == 64 || bits >> n == 0, "pattern bits exceed arity");
        Pattern { n: n as u8, bits }
    }

    /// From the values `f(1), ..., f(n)`.
    pub fn from_values(vals: &[u8]) -> Self {
        let bits = vals
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &v)| acc | (u64::from(v != 0) << i));
        Self::new(vals.len(), bits)
    }

    pub fn ones(n: usize) -> Self {
        Self::new(n, full_mask(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(n, 0)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// `f(i)` for `1 <= i <= n`.
    pub fn value(&self, i: usize) -> u8 {
        ((self.bits >> (i - 1)) & 1) as u8
    }

    pub fn values(&self) -> Vec<u8> {
        (1..=self.n()).map(|i| self.value(i)).collect()
    }

    /// Indices where `f` vanishes.
    pub fn csupp(&self) -> u64 {
        !self.bits & full_mask(self.n())
    }

    pub fn le(&self, other: &Pattern) -> bool {
        self.bits & !other.bits == 0
    }

    fn sort_key(&self) -> (u32, Vec<u8>) {
        (self.bits.count_ones(), self.values())
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v: Vec<String> = self.values().iter().map(u8::to_string).collect();
        write!(f, "({})", v.join(","))
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Normal form: the maximal patterns, sorted by (popcount, values).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "IdealWire", try_from = "IdealWire")]
pub struct IdealNF {
    n: usize,
    antichain: Vec<Pattern>,
}

#[derive(Serialize, Deserialize)]
struct IdealWire {
    n: usize,
    antichain: Vec<Vec<u8>>,
}

impl From<IdealNF> for IdealWire {
    fn from(a: IdealNF) -> Self {
        IdealWire {
            n: a.n,
            antichain: a.antichain.iter().map(Pattern::values).collect(),
        }
    }
}

impl TryFrom<IdealWire> for IdealNF {
    type Error = Error;
    fn try_from(w: IdealWire) -> Result<Self> {
        if !(1..=64).contains(&w.n) {
            return Err(Error::Malformed(format!("arity {} out of range", w.n)));
        }
        let mut pats = Vec::new();
        for v in &w.antichain {
            if v.iter().any(|&b| b > 1) {
                return Err(Error::Malformed("pattern values must be 0 or 1".into()));
            }
            pats.push(Pattern::from_values(v));
        }
        IdealNF::canon(w.n, pats)
    }
}

/// `𝔭_I = Σ_{i∈I} 𝔭_i`, bit `i - 1` for index `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    n: usize,
    idx: u64,
}

impl PrimeIdeal {
    pub fn new(n: usize, idx: u64) -> Self {
        assert!(idx & !full_mask(n) == 0, "prime index outside 1..n");
        PrimeIdeal { n, idx }
    }

    pub fn from_indices(n: usize, idx: &[usize]) -> Self {
        Self::new(n, idx.iter().fold(0, |acc, &i| acc | 1 << (i - 1)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn idx(&self) -> u64 {
        self.idx
    }

    pub fn indices(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.idx >> (i - 1) & 1 == 1).collect()
    }

    pub fn height(&self) -> usize {
        self.idx.count_ones() as usize
    }

    pub fn to_ideal(&self) -> IdealNF {
        let pats = self
            .indices()
            .into_iter()
            .map(|i| Pattern::new(self.n, full_mask(self.n) & !(1u64 << (i - 1))))
            .collect::<Vec<_>>();
        IdealNF::canon(self.n, pats).expect("same arity")
    }

    /// `τ(𝔭_I) = 𝔭_{I^c}`.
    pub fn complement(&self) -> Self {
        PrimeIdeal::new(self.n, !self.idx & full_mask(self.n))
    }

    fn sort_key(&self) -> (u32, Vec<bool>) {
        (
            self.idx.count_ones(),
            (0..self.n).map(|i| self.idx >> i & 1 == 0).collect(),
        )
    }
}

impl std::fmt::Display for PrimeIdeal {
    /// `0` or `p1+p3`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ix = self.indices();
        if ix.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = ix.iter().map(|i| format!("p{i}")).collect();
        f.write_str(&s.join("+"))
    }
}

/// Structural flags of an ideal; none set means "other".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub zero: bool,
    pub full: bool,
    pub prime: bool,
    pub completely_prime: bool,
    /// The quotient ring is Noetherian; this happens exactly for `𝔞_n`.
    pub noetherian_quotient: bool,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut flags = Vec::new();
        for (on, name) in [
            (self.zero, "zero"),
            (self.full, "full"),
            (self.prime, "prime"),
            (self.completely_prime, "completely_prime"),
        ] {
            if on {
                flags.push(name);
            }
        }
        if flags.is_empty() {
            flags.push("other");
        }
        f.write_str(&flags.join("+"))
    }
}

impl IdealNF {
    /// Keeps the maximal patterns of `Σ I_f`.
    pub fn canon(n: usize, patterns: impl IntoIterator<Item = Pattern>) -> Result<Self> {
        let mut uniq: BTreeSet<u64> = BTreeSet::new();
        for p in patterns {
            if p.n() != n {
                return Err(Error::ArityMismatch(n, p.n()));
            }
            uniq.insert(p.bits);
        }
        let all: Vec<u64> = uniq.into_iter().collect();
        let mut antichain: Vec<Pattern> = all
            .iter()
            .filter(|&&a| !all.iter().any(|&b| b != a && a & !b == 0))
            .map(|&b| Pattern::new(n, b))
            .collect();
        antichain.sort_by_key(Pattern::sort_key);
        Ok(IdealNF { n, antichain })
    }

    pub fn zero(n: usize) -> Self {
        IdealNF {
            n,
            antichain: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        IdealNF {
            n,
            antichain: vec![Pattern::ones(n)],
        }
    }

    /// `F^{⊗n}`, the smallest nonzero ideal.
    pub fn f_tensor(n: usize) -> Self {
        IdealNF {
            n,
            antichain: vec![Pattern::zeros(n)],
        }
    }

    /// `𝔭_i`.
    pub fn prime(n: usize, i: usize) -> Self {
        PrimeIdeal::from_indices(n, &[i]).to_ideal()
    }

    /// `𝔞_n = 𝔭_1 + ... + 𝔭_n`.
    pub fn a_n(n: usize) -> Self {
        PrimeIdeal::new(n, full_mask(n)).to_ideal()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn antichain(&self) -> &[Pattern] {
        &self.antichain
    }

    pub fn is_zero(&self) -> bool {
        self.antichain.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.antichain.first().is_some_and(|p| p.bits == full_mask(self.n))
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Self::canon(
            self.n,
            self.antichain.iter().chain(&other.antichain).copied(),
        )
    }

    /// `I_f I_g = I_{fg}` extended bilinearly.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let pats = self.antichain.iter().flat_map(|a| {
            other
                .antichain
                .iter()
                .map(move |b| Pattern::new(self.n, a.bits & b.bits))
        });
        Self::canon(self.n, pats.collect::<Vec<_>>())
    }

    /// Equal to the product: every ideal is idempotent and the lattice is
    /// distributive.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.product(other)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.same_arity(other)?;
        Ok(other
            .antichain
            .iter()
            .all(|b| self.antichain.iter().any(|a| b.le(a))))
    }

    /// Minimal primes over `self`: minimal hitting sets of the zero sets of
    /// its patterns.
    pub fn min_primes(&self) -> Result<Vec<PrimeIdeal>> {
        if self.is_full() {
            return Err(Error::FullRing);
        }
        if self.is_zero() {
            return Ok(vec![PrimeIdeal::new(self.n, 0)]);
        }
        let family: Vec<u64> = self.antichain.iter().map(Pattern::csupp).collect();
        let mut out: Vec<PrimeIdeal> = minimal_transversals(&family)
            .into_iter()
            .map(|t| PrimeIdeal::new(self.n, t))
            .collect();
        out.sort_by_key(PrimeIdeal::sort_key);
        Ok(out)
    }

    /// The unique factorization into incomparable primes; the product of
    /// the factors is checked against `self`.
    pub fn factor_primes(&self) -> Result<Vec<PrimeIdeal>> {
        let primes = self.min_primes()?;
        let mut prod = Self::full(self.n);
        for p in &primes {
            prod = prod.product(&p.to_ideal())?;
        }
        assert_eq!(&prod, self, "prime factors do not multiply back");
        Ok(primes)
    }

    pub fn classify(&self) -> Classification {
        let zero = self.is_zero();
        let full = self.is_full();
        let prime = !full && (zero || self.antichain.iter().all(|p| p.csupp().count_ones() == 1));
        let completely_prime = *self == Self::a_n(self.n);
        Classification {
            zero,
            full,
            prime,
            completely_prime,
            noetherian_quotient: completely_prime,
        }
    }

    /// `f ↦ f + 1` on every pattern, with `c(0) = 0`.
    pub fn c_involution(&self) -> Self {
        let m = full_mask(self.n);
        Self::canon(
            self.n,
            self.antichain
                .iter()
                .map(|p| Pattern::new(self.n, !p.bits & m))
                .collect::<Vec<_>>(),
        )
        .expect("same arity")
    }

    /// `τ(𝔞) = ⋂_{𝔮 ∈ Min(𝔞)} τ(𝔮)` with `τ(𝔭_I) = 𝔭_{I^c}`.
    pub fn tau_involution(&self) -> Result<Self> {
        let mut acc = Self::full(self.n);
        for q in self.min_primes()? {
            acc = acc.intersect(&q.complement().to_ideal())?;
        }
        Ok(acc)
    }

    /// The down-set of patterns below the antichain, as a bitmask over all
    /// `2^n` supports; only for `n <= 6`.
    pub fn to_downset(&self) -> u64 {
        assert!(self.n <= MAX_ENUM_N);
        let mut mask = 0u64;
        for s in 0..(1u64 << self.n) {
            if self.antichain.iter().any(|p| s & !p.bits == 0) {
                mask |= 1 << s;
            }
        }
        mask
    }

    pub fn from_downset(n: usize, mask: u64) -> Self {
        assert!(n <= MAX_ENUM_N);
        let size = 1u64 << n;
        let maximal = (0..size).filter(|&s| {
            mask >> s & 1 == 1 && (0..n).all(|i| s >> i & 1 == 1 || mask >> (s | 1 << i) & 1 == 0)
        });
        let mut antichain: Vec<Pattern> = maximal.map(|s| Pattern::new(n, s)).collect();
        antichain.sort_by_key(Pattern::sort_key);
        IdealNF { n, antichain }
    }
}

impl std::fmt::Display for IdealNF {
    /// `0`, or the antichain as `{(0,1),(1,0)}`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let v: Vec<String> = self.antichain.iter().map(Pattern::to_string).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// Minimal sets meeting every member of `family` (Berge's incremental
/// algorithm). Members must be nonempty.
fn minimal_transversals(family: &[u64]) -> Vec<u64> {
    let mut trs: Vec<u64> = vec![0];
    for &s in family {
        let mut next: Vec<u64> = Vec::new();
        for &t in &trs {
            if t & s != 0 {
                next.push(t);
            } else {
                let mut bits = s;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    next.push(t | b);
                    bits &= bits - 1;
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        let snapshot = next.clone();
        next.retain(|&a| !snapshot.iter().any(|&b| b != a && b & !a == 0));
        trs = next;
    }
    trs
}

/// All primes with their heights, ordered by height.
pub fn spec_enum(n: usize) -> Vec<(PrimeIdeal, usize)> {
    let mut out: Vec<PrimeIdeal> = (0..1u64 << n).map(|i| PrimeIdeal::new(n, i)).collect();
    out.sort_by_key(PrimeIdeal::sort_key);
    out.into_iter().map(|p| (p, p.height())).collect()
}

/// Covering relations `(lower, upper)` of the prime spectrum ordered by
/// inclusion, computed from ideal containment.
pub fn spec_hasse(n: usize) -> Vec<(PrimeIdeal, PrimeIdeal)> {
    let primes: Vec<(PrimeIdeal, IdealNF)> =
        spec_enum(n).into_iter().map(|(p, _)| (p, p.to_ideal())).collect();
    let below = |a: &IdealNF, b: &IdealNF| a != b && b.contains(a).expect("same arity");
    let mut edges = Vec::new();
    for (p, pi) in &primes {
        for (q, qi) in &primes {
            if below(pi, qi) && !primes.iter().any(|(_, ri)| below(pi, ri) && below(ri, qi)) {
                edges.push((*p, *q));
            }
        }
    }
    edges
}

/// Length of the longest strict chain of primes, found by dynamic
/// programming over the containment order.
pub fn krull_dim(n: usize) -> usize {
    let primes: Vec<IdealNF> = spec_enum(n).into_iter().map(|(p, _)| p.to_ideal()).collect();
    // spec_enum is sorted by height, so every strict predecessor comes earlier
    let mut len = vec![0usize; primes.len()];
    for i in 0..primes.len() {
        for j in 0..i {
            if primes[i] != primes[j] && primes[i].contains(&primes[j]).expect("same arity") {
                len[i] = len[i].max(len[j] + 1);
            }
        }
    }
    len.into_iter().max().unwrap_or(0)
}

/// Calls `visit` with the down-set mask of every ideal for arity `n`.
///
/// A down-set of subsets of `{1..n}` splits into the sets without `n` and
/// the sets with `n` removed; these are down-sets `B ⊇ A` of `{1..n-1}`.
pub fn for_each_downset(n: usize, mut visit: impl FnMut(u64)) -> Result<()> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(Error::TooLarge(n, MAX_ENUM_N));
    }
    let mut level: Vec<u64> = vec![0, 1];
    for m in 1..n {
        level = extend_downsets(&level, m);
    }
    let half = 1u32 << (n - 1);
    for &b in &level {
        for &a in &level {
            if a & !b == 0 {
                visit(b | a << half);
            }
        }
    }
    Ok(())
}

fn extend_downsets(prev: &[u64], m: usize) -> Vec<u64> {
    let half = 1u32 << (m - 1);
    let mut out = Vec::new();
    for &b in prev {
        for &a in prev {
            if a & !b == 0 {
                out.push(b | a << half);
            }
        }
    }
    out
}

/// Number of ideals for arity `n <= 6`.
pub fn count_ideals(n: usize) -> Result<u64> {
    let mut c = 0u64;
    for_each_downset(n, |_| c += 1)?;
    Ok(c)
}

/// Every ideal for arity `n <= 6`, in down-set enumeration order. At
/// `n = 6` this allocates several million values; prefer the visitor.
pub fn enumerate_ideals(n: usize) -> Result<Vec<IdealNF>> {
    let mut out = Vec::new();
    for_each_downset(n, |m| out.push(IdealNF::from_downset(n, m)))?;
    Ok(out)
}

/// `2 - n + Σ_{i=1}^n 2^{C(n,i)}`, a lower bound on the number of ideals.
pub fn ideal_count_lower_bound(n: usize) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    let mut sum = BigUint::from(2u32);
    let mut binom = BigUint::from(1u32);
    for i in 1..=n {
        binom = binom * BigUint::from((n + 1 - i) as u64) / BigUint::from(i as u64);
        let e: u32 = (&binom).try_into().expect("binomial fits in u32");
        sum += BigUint::from(1u32) << e;
    }
    sum - BigUint::from(n as u64)
}

/// `2^{2^n}`.
pub fn ideal_count_upper_bound(n: usize) -> num_bigint::BigUint {
    num_bigint::BigUint::from(1u32) << (1u64 << n)
}
