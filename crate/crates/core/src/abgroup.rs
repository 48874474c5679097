//! Finite abelian groups in invariant-factor form, subgroup enumeration,
//! Gaussian binomials, and closed-form subgroup counts for p-groups.
//!
//! Elements are residue vectors `coords[i] ∈ [0, n_i)`. Their mixed-radix
//! rank `Σ coords[i] · ∏_{j>i} n_j` is a bijection onto `[0, |G|)` that
//! orders elements lexicographically by coordinates, leftmost first.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{big_pow, factorize, gcd_u64, is_prime, lcm_u64};
use crate::{Error, Result};

/// Default cap on `|G|` for oracle-grade enumerations.
pub const DEFAULT_ORACLE_BOUND: u64 = 512;

/// A finite abelian group `ℤ_{n₁} × … × ℤ_{n_s}` with `2 ≤ n₁ | n₂ | … | n_s`.
/// The empty chain is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    factors: Vec<u64>,
    order: u64,
}

impl GroupSpec {
    /// Accepts a list that is already an invariant-factor chain.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::invalid(format!("invariant factor {bad} is below 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid(format!(
                "invariant factors must form a divisibility chain, but {} does not divide {}",
                w[0], w[1]
            )));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::invalid("group order overflows 64 bits"))?;
        Ok(GroupSpec { factors, order })
    }

    /// Normalizes an arbitrary product `ℤ_{a₁} × … × ℤ_{a_r}` into invariant
    /// factors (split into prime powers, then merge largest powers first).
    /// Factors equal to 1 are dropped.
    pub fn from_product(factors: &[u64]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::invalid("cyclic factor of order 0"));
        }
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &a in factors {
            for (p, e) in factorize(a) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let s = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut chain = vec![1u64; s];
        for (p, mut exps) in by_prime {
            exps.sort_unstable();
            let offset = s - exps.len();
            for (i, e) in exps.into_iter().enumerate() {
                chain[offset + i] = chain[offset + i]
                    .checked_mul(p.checked_pow(e).ok_or_else(|| Error::invalid("factor overflow"))?)
                    .ok_or_else(|| Error::invalid("factor overflow"))?;
            }
        }
        Self::new(chain)
    }

    pub fn trivial() -> Self {
        GroupSpec { factors: Vec::new(), order: 1 }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::from_product(&[n])
    }

    /// `ℤ_n^copies`.
    pub fn power(n: u64, copies: usize) -> Result<Self> {
        Self::from_product(&vec![n; copies])
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of invariant factors `s`.
    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    pub fn check_element(&self, x: &[u64]) -> Result<()> {
        if x.len() != self.factors.len() {
            return Err(Error::invalid(format!(
                "element has {} coordinates, group has {}",
                x.len(),
                self.factors.len()
            )));
        }
        if let Some((c, n)) = x.iter().zip(&self.factors).find(|(c, n)| c >= n) {
            return Err(Error::invalid(format!("coordinate {c} out of range for Z{n}")));
        }
        Ok(())
    }

    pub fn rank_of(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.factors).fold(0, |acc, (&c, &n)| acc * n + c)
    }

    pub fn element(&self, mut rank: u64) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &n) in out.iter_mut().zip(&self.factors).rev() {
            *slot = rank % n;
            rank /= n;
        }
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((&x, &y), &n)| (x + y) % n).collect()
    }

    pub fn add_assign(&self, a: &mut [u64], b: &[u64]) {
        for ((x, &y), &n) in a.iter_mut().zip(b).zip(&self.factors) {
            *x = (*x + y) % n;
        }
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(&x, &n)| (n - x) % n).collect()
    }

    /// `c · a` for a nonnegative scalar `c`.
    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(&x, &n)| ((x as u128 * (c % n) as u128) % n as u128) as u64).collect()
    }

    /// Least `d ≥ 1` with `d · x = 0`.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.factors).fold(1, |acc, (&c, &n)| lcm_u64(acc, n / gcd_u64(c, n)))
    }

    /// Ranks of `{x : d · x = 0}`.
    pub fn torsion(&self, d: u64) -> Vec<u64> {
        (0..self.order).filter(|&r| d.is_multiple_of(self.element_order(&self.element(r)))).collect()
    }

    /// Whether `ℤ_d^copies` embeds in this group.
    pub fn contains_power(&self, d: u64, copies: usize) -> bool {
        d == 1 || copies == 0 || self.factors.iter().filter(|&&n| n % d == 0).count() >= copies
    }

    /// The `p`-primary component as a p-group type.
    pub fn p_component(&self, p: u64) -> PGroupType {
        let exponents = self
            .factors
            .iter()
            .filter_map(|&n| {
                let e = factorize(n).into_iter().find(|&(q, _)| q == p).map_or(0, |(_, e)| e);
                (e > 0).then_some(e)
            })
            .collect();
        PGroupType { p, exponents }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("Z1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

/// `G/H` for `H ≅ ℤ_{n_s}`: drop the largest invariant factor.
pub fn quotient_type(g: &GroupSpec) -> GroupSpec {
    let mut factors = g.factors.clone();
    factors.pop();
    GroupSpec::new(factors).expect("a prefix of an invariant chain is a chain")
}

/// Type `(k₁ ≤ … ≤ k_η)` of the p-group `∏ ℤ_{p^{kᵢ}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PGroupType {
    p: u64,
    exponents: Vec<u32>,
}

impl PGroupType {
    /// Exponents may be given in any order; they are stored ascending.
    pub fn new(p: u64, mut exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if exponents.contains(&0) {
            return Err(Error::invalid("p-group type exponents must be positive"));
        }
        exponents.sort_unstable();
        Ok(PGroupType { p, exponents })
    }

    /// `ℤ_{p^a}^copies`.
    pub fn homocyclic(p: u64, a: u32, copies: usize) -> Result<Self> {
        Self::new(p, vec![a; copies])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn to_group(&self) -> Result<GroupSpec> {
        let factors = self
            .exponents
            .iter()
            .map(|&e| self.p.checked_pow(e).ok_or_else(|| Error::invalid("p-power overflows")))
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(factors)
    }

    /// `#{i : kᵢ ≥ j}`, the rank of `p^{j-1}G / p^j G`.
    fn layer(&self, j: u32) -> usize {
        self.exponents.iter().filter(|&&k| k >= j).count()
    }
}

/// Number of `M`-dimensional subspaces of an `N`-dimensional space over a
/// `q`-element field: `∏_{i<M} (q^{N−i} − 1)/(q^{M−i} − 1)`.
pub fn gaussian_binomial(n: u32, m: u32, q: u64) -> Result<BigUint> {
    if m > n {
        return Err(Error::invalid(format!("Gaussian binomial needs M <= N, got M={m}, N={n}")));
    }
    if q < 2 {
        return Err(Error::invalid("Gaussian binomial needs q >= 2"));
    }
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        num *= big_pow(q, n - i) - &one;
        den *= big_pow(q, m - i) - &one;
    }
    if !(&num % &den).is_zero() {
        return Err(Error::internal("Gaussian binomial quotient is not integral"));
    }
    Ok(num / den)
}

/// Number of subgroups of type `target` in the p-group of type `host`
/// (Yeh's closed form). Returns zero when `target` does not embed.
pub fn yeh_count(host: &PGroupType, target: &PGroupType) -> Result<BigUint> {
    if host.p != target.p {
        return Err(Error::MismatchedPrimes(host.p, target.p));
    }
    let p = host.p;
    let k = &host.exponents;
    let eta = k.len() as i64;
    // Target exponents h₁ ≥ h₂ ≥ … ≥ h_m.
    let mut h: Vec<u32> = target.exponents.clone();
    h.sort_unstable_by(|a, b| b.cmp(a));
    let m = h.len();
    if m == 0 {
        return Ok(BigUint::one());
    }
    let top = h[0];
    if (1..=top).any(|j| target.layer(j) > host.layer(j)) {
        return Ok(BigUint::zero());
    }

    let mut multiplicities: Vec<u64> = Vec::new();
    for (i, &hi) in h.iter().enumerate() {
        if i > 0 && h[i - 1] == hi {
            *multiplicities.last_mut().expect("nonempty") += 1;
        } else {
            multiplicities.push(1);
        }
    }
    // νᵢ: k_{νᵢ} < hᵢ ≤ k_{νᵢ+1}, with k₀ = 0.
    let nu: Vec<usize> = h.iter().map(|&hi| k.iter().filter(|&&kj| kj < hi).count()).collect();

    let mut exponent: i64 = 0;
    for (idx, (&hi, &nui)) in h.iter().zip(&nu).enumerate() {
        let i = idx as i64 + 1;
        exponent += (eta - nui as i64 + 1 - 2 * i) * (hi as i64 - 1);
        exponent += k[..nui].iter().map(|&x| x as i64).sum::<i64>();
    }
    let sq: i64 = multiplicities.iter().map(|&x| (x * x) as i64).sum();
    exponent += (sq - (m * m) as i64) / 2;

    let one = BigUint::one();
    let mut num = BigUint::one();
    for (idx, &nui) in nu.iter().enumerate() {
        let e = eta - nui as i64 - idx as i64;
        if e <= 0 {
            return Err(Error::internal("embeddable target produced a vanishing factor"));
        }
        num *= big_pow(p, e as u32) - &one;
    }
    let mut den = BigUint::one();
    for &mu in &multiplicities {
        for v in 1..=mu {
            den *= big_pow(p, v as u32) - &one;
        }
    }
    if exponent >= 0 {
        num *= big_pow(p, exponent as u32);
    } else {
        den *= big_pow(p, (-exponent) as u32);
    }
    if !(&num % &den).is_zero() {
        return Err(Error::internal("subgroup count formula is not integral"));
    }
    Ok(num / den)
}

/// Number of subgroups of `g` isomorphic to `ℤ_d^copies`, as the product over
/// primes `p | d` of the counts in the `p`-components.
pub fn count_subgroups_iso(g: &GroupSpec, d: u64, copies: usize) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::invalid("subgroup exponent must be positive"));
    }
    if copies == 0 || d == 1 {
        return Ok(BigUint::one());
    }
    if !g.exponent().is_multiple_of(d) {
        return Ok(BigUint::zero());
    }
    let mut total = BigUint::one();
    for (p, beta) in factorize(d) {
        let target = PGroupType::homocyclic(p, beta, copies)?;
        total *= yeh_count(&g.p_component(p), &target)?;
        if total.is_zero() {
            break;
        }
    }
    Ok(total)
}

/// Addition table on ranks for enumeration-sized groups.
pub(crate) struct RankTable {
    order: usize,
    add: Vec<u32>,
}

impl RankTable {
    pub(crate) fn new(g: &GroupSpec) -> Self {
        let order = g.order() as usize;
        let elems: Vec<Vec<u64>> = (0..order as u64).map(|r| g.element(r)).collect();
        let mut add = vec![0u32; order * order];
        for (a, ea) in elems.iter().enumerate() {
            for (b, eb) in elems.iter().enumerate() {
                add[a * order + b] = g.rank_of(&g.add(ea, eb)) as u32;
            }
        }
        RankTable { order, add }
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order + b as usize]
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    #[inline]
    fn get(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: u32) {
        self.0[i as usize / 64] |= 1 << (i % 64);
    }
    fn ranks(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push((w * 64) as u64 + bits.trailing_zeros() as u64);
                bits &= bits - 1;
            }
        }
        out
    }
}

struct Subgroup {
    elems: Vec<u32>,
    bits: Bits,
}

impl Subgroup {
    fn trivial(order: usize) -> Self {
        let mut bits = Bits::new(order);
        bits.set(0);
        Subgroup { elems: vec![0], bits }
    }

    /// `⟨H, g⟩ = ⋃_k (H + k·g)`.
    fn join(&self, g: u32, table: &RankTable) -> Subgroup {
        let mut elems = self.elems.clone();
        let mut bits = self.bits.clone();
        let mut c = g;
        while !self.bits.get(c) {
            for &h in &self.elems {
                let x = table.add(h, c);
                elems.push(x);
                bits.set(x);
            }
            c = table.add(c, g);
        }
        Subgroup { elems, bits }
    }
}

fn check_bound(g: &GroupSpec, bound: u64) -> Result<()> {
    if g.order() > bound {
        return Err(Error::Capacity { what: "subgroup enumeration", needed: g.order() as u128, limit: bound as u128 });
    }
    Ok(())
}

/// All subgroups of `g` isomorphic to `ℤ_d^copies`, each as a sorted list of
/// element ranks, in ascending lexicographic order of those lists.
pub fn enumerate_subgroups(g: &GroupSpec, d: u64, copies: usize, bound: u64) -> Result<Vec<Vec<u64>>> {
    check_bound(g, bound)?;
    if d == 0 {
        return Err(Error::invalid("subgroup exponent must be positive"));
    }
    let order = g.order() as usize;
    if copies == 0 || d == 1 {
        return Ok(vec![vec![0]]);
    }
    let table = RankTable::new(g);
    let torsion: Vec<u32> = g.torsion(d).into_iter().map(|r| r as u32).collect();

    // A group of exponent dividing d, generated by j elements, with order d^j is ℤ_d^j.
    let mut level: Vec<Subgroup> = vec![Subgroup::trivial(order)];
    let mut target_size = 1usize;
    for _ in 0..copies {
        target_size = match target_size.checked_mul(d as usize) {
            Some(s) if s <= order => s,
            _ => return Ok(Vec::new()),
        };
        let mut seen: BTreeSet<Bits> = BTreeSet::new();
        let mut next = Vec::new();
        for h in &level {
            let mut done = h.bits.clone();
            for &x in &torsion {
                if done.get(x) {
                    continue;
                }
                let k = h.join(x, &table);
                if k.elems.len() == target_size {
                    for &e in &k.elems {
                        done.set(e);
                    }
                    if seen.insert(k.bits.clone()) {
                        next.push(k);
                    }
                } else {
                    done.set(x);
                }
            }
        }
        level = next;
    }
    let mut out: Vec<Vec<u64>> = level.iter().map(|s| s.bits.ranks()).collect();
    out.sort();
    Ok(out)
}

/// Every subgroup of `g`, as sorted rank lists in ascending order.
pub fn enumerate_all_subgroups(g: &GroupSpec, bound: u64) -> Result<Vec<Vec<u64>>> {
    check_bound(g, bound)?;
    let order = g.order() as usize;
    let table = RankTable::new(g);
    let start = Subgroup::trivial(order);
    let mut seen: BTreeSet<Bits> = BTreeSet::new();
    seen.insert(start.bits.clone());
    let mut queue = vec![start];
    while let Some(h) = queue.pop() {
        let mut done = h.bits.clone();
        for x in 0..order as u32 {
            if done.get(x) {
                continue;
            }
            for &e in &h.elems {
                done.set(table.add(e, x));
            }
            let k = h.join(x, &table);
            if seen.insert(k.bits.clone()) {
                queue.push(k);
            }
        }
    }
    let mut out: Vec<Vec<u64>> = seen.iter().map(Bits::ranks).collect();
    out.sort();
    Ok(out)
}

/// Invariant factors of the subgroup with the given element ranks, read off
/// from the sizes of its `p^j`-torsion layers.
pub fn subgroup_type(g: &GroupSpec, elements: &[u64]) -> Result<GroupSpec> {
    let size = elements.len() as u64;
    let orders: Vec<u64> = elements.iter().map(|&r| g.element_order(&g.element(r))).collect();
    let mut prime_powers = Vec::new();
    for (p, _) in factorize(size) {
        let mut prev_log = 0u32;
        let mut j = 1u32;
        let mut layers = Vec::new();
        loop {
            let count = torsion_count(&orders, p, p.pow(j));
            let log = ilog(count, p).ok_or_else(|| Error::invalid("rank list is not a subgroup"))?;
            if log == prev_log {
                break;
            }
            layers.push(log - prev_log);
            prev_log = log;
            j += 1;
        }
        // layers[j-1] = number of cyclic p-factors of exponent >= j
        for (idx, &cnt) in layers.iter().enumerate() {
            let next = layers.get(idx + 1).copied().unwrap_or(0);
            for _ in 0..(cnt - next) {
                prime_powers.push(p.pow(idx as u32 + 1));
            }
        }
    }
    let spec = GroupSpec::from_product(&prime_powers)?;
    if spec.order() != size {
        return Err(Error::invalid("rank list is not a subgroup"));
    }
    Ok(spec)
}

fn p_part(mut o: u64, p: u64) -> u64 {
    let mut out = 1;
    while o.is_multiple_of(p) {
        o /= p;
        out *= p;
    }
    out
}

/// `#{x ∈ S_p : p^j x = 0}` where `S_p` is the set of p-power-order elements.
fn torsion_count(orders: &[u64], p: u64, pj: u64) -> u64 {
    orders.iter().filter(|&&o| p_part(o, p) == o && pj.is_multiple_of(o)).count() as u64
}

fn ilog(mut x: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        e += 1;
    }
    (x == 1).then_some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> GroupSpec {
        GroupSpec::from_product(f).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(g(&[4, 2]).invariant_factors(), &[2, 4]);
        assert_eq!(g(&[2, 3]).invariant_factors(), &[6]);
        assert_eq!(g(&[6, 4]).invariant_factors(), &[2, 12]);
        assert_eq!(g(&[1, 5]).invariant_factors(), &[5]);
        assert!(g(&[]).is_trivial());
        assert!(GroupSpec::new(vec![4, 2]).is_err());
        assert!(GroupSpec::new(vec![1]).is_err());
        assert!(GroupSpec::from_product(&[0]).is_err());
        assert_eq!(g(&[4, 2]).order(), 8);
        assert_eq!(g(&[4, 2]).exponent(), 4);
    }

    #[test]
    fn rank_is_a_lex_bijection() {
        let grp = g(&[2, 6]);
        let mut prev: Option<Vec<u64>> = None;
        for r in 0..grp.order() {
            let x = grp.element(r);
            assert_eq!(grp.rank_of(&x), r);
            if let Some(p) = prev {
                assert!(p < x);
            }
            prev = Some(x);
        }
    }

    #[test]
    fn element_orders() {
        let z4 = g(&[4]);
        assert_eq!(z4.element_order(&[0]), 1);
        assert_eq!(z4.element_order(&[2]), 2);
        // (1,1) in Z4 x Z2, i.e. coordinates (1 in Z2, 1 in Z4): brute-force doubling.
        let grp = g(&[4, 2]);
        let x = vec![1, 1];
        let mut acc = x.clone();
        let mut d = 1;
        while acc != grp.zero() {
            acc = grp.add(&acc, &x);
            d += 1;
        }
        assert_eq!(d, 4);
        assert_eq!(grp.element_order(&x), 4);
    }

    #[test]
    fn orders_divide_exponent() {
        for f in [&[2u64, 4][..], &[3, 9], &[6, 12], &[2, 2, 2]] {
            let grp = g(f);
            for r in 0..grp.order() {
                assert_eq!(grp.exponent() % grp.element_order(&grp.element(r)), 0);
            }
        }
    }

    /// Independent oracle: M-dim subspaces of F_q^N for prime q by closure.
    fn subspaces_oracle(n: u32, m: u32, q: u64) -> u64 {
        let size = q.pow(n);
        let digits = |x: u64| -> Vec<u64> { (0..n).map(|i| x / q.pow(i) % q).collect() };
        let from = |d: &[u64]| -> u64 { d.iter().enumerate().map(|(i, &c)| c * q.pow(i as u32)).sum() };
        let add = |a: u64, b: u64| -> u64 {
            let (da, db) = (digits(a), digits(b));
            from(&da.iter().zip(&db).map(|(x, y)| (x + y) % q).collect::<Vec<_>>())
        };
        let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut layer: BTreeSet<Vec<u64>> = BTreeSet::from([vec![0]]);
        for _ in 0..m {
            let mut next = BTreeSet::new();
            for s in &layer {
                for v in 0..size {
                    if s.contains(&v) {
                        continue;
                    }
                    let mut span: BTreeSet<u64> = BTreeSet::new();
                    let mut mult = 0;
                    for _ in 0..q {
                        for &x in s {
                            span.insert(add(x, mult));
                        }
                        mult = add(mult, v);
                    }
                    next.insert(span.into_iter().collect());
                }
            }
            layer = next;
        }
        found.extend(layer);
        found.len() as u64
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), BigUint::one());
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binomial(2, 3, 2).is_err());
        assert!(gaussian_binomial(2, 1, 1).is_err());
        for (n, m, q) in [(2, 1, 2), (4, 2, 2), (3, 1, 3), (3, 2, 3), (4, 1, 2)] {
            assert_eq!(gaussian_binomial(n, m, q).unwrap(), BigUint::from(subspaces_oracle(n, m, q)));
        }
    }

    #[test]
    fn gaussian_recurrence_identity() {
        for q in 2..=5u64 {
            for n in 1..=8u32 {
                for m in 1..=n {
                    let lhs = gaussian_binomial(n, m, q).unwrap() * (big_pow(q, m) - 1u32);
                    let rhs = gaussian_binomial(n - 1, m - 1, q).unwrap() * (big_pow(q, n) - 1u32);
                    assert_eq!(lhs, rhs, "N={n} M={m} q={q}");
                }
            }
        }
    }

    #[test]
    fn yeh_examples() {
        for p in [2u64, 3, 5] {
            let host = PGroupType::new(p, vec![1, 1]).unwrap();
            let target = PGroupType::new(p, vec![1]).unwrap();
            assert_eq!(yeh_count(&host, &target).unwrap(), BigUint::from(p + 1));
            assert_eq!(yeh_count(&host, &host).unwrap(), BigUint::one());
        }
        let host = PGroupType::new(2, vec![1, 2]).unwrap();
        let target = PGroupType::new(2, vec![1]).unwrap();
        assert_eq!(yeh_count(&host, &target).unwrap(), BigUint::from(3u32));
        assert_eq!(yeh_count(&host, &host).unwrap(), BigUint::one());
        let other = PGroupType::new(3, vec![1]).unwrap();
        assert_eq!(yeh_count(&host, &other), Err(Error::MismatchedPrimes(2, 3)));
        assert!(PGroupType::new(4, vec![1]).is_err());
        // Not embeddable: Z4^2 in Z2 x Z4.
        let big_target = PGroupType::new(2, vec![2, 2]).unwrap();
        assert_eq!(yeh_count(&host, &big_target).unwrap(), BigUint::zero());
    }

    #[test]
    fn yeh_matches_enumeration_for_every_type_up_to_order_64() {
        // General (not only homocyclic) target types, via full subgroup enumeration.
        let hosts: &[(u64, &[u32])] = &[
            (2, &[1, 1, 1]),
            (2, &[1, 2]),
            (2, &[2, 2]),
            (2, &[1, 1, 2]),
            (2, &[1, 3]),
            (2, &[1, 2, 3]),
            (2, &[2, 2, 2]),
            (2, &[1, 1, 1, 1]),
            (3, &[1, 2]),
            (3, &[1, 1, 1]),
            (3, &[1, 1]),
        ];
        for &(p, exps) in hosts {
            let host = PGroupType::new(p, exps.to_vec()).unwrap();
            let grp = host.to_group().unwrap();
            let mut by_type: BTreeMap<GroupSpec, u64> = BTreeMap::new();
            for sub in enumerate_all_subgroups(&grp, 64).unwrap() {
                *by_type.entry(subgroup_type(&grp, &sub).unwrap()).or_default() += 1;
            }
            for (ty, count) in by_type {
                let exps: Vec<u32> = ty.invariant_factors().iter().map(|&n| ilog(n, p).unwrap()).collect();
                let target = PGroupType::new(p, exps).unwrap();
                assert_eq!(yeh_count(&host, &target).unwrap(), BigUint::from(count), "{host:?} {target:?}");
            }
        }
    }

    #[test]
    fn count_iso_examples() {
        assert_eq!(count_subgroups_iso(&g(&[6]), 6, 1).unwrap(), BigUint::one());
        assert_eq!(count_subgroups_iso(&g(&[2, 2]), 2, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(count_subgroups_iso(&g(&[2, 2]), 2, 3).unwrap(), BigUint::zero());
        assert_eq!(count_subgroups_iso(&g(&[2, 2]), 4, 1).unwrap(), BigUint::zero());
        for (f, d, m) in [(&[6u64, 6][..], 6u64, 1usize), (&[6, 6], 6, 2), (&[2, 6, 6], 2, 2), (&[12, 12], 6, 1)] {
            let grp = g(f);
            let n = enumerate_subgroups(&grp, d, m, 512).unwrap().len();
            assert_eq!(count_subgroups_iso(&grp, d, m).unwrap(), BigUint::from(n), "{f:?} {d} {m}");
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_subgroups(&g(&[4]), 2, 1, 512).unwrap(), vec![vec![0, 2]]);
        let v4 = enumerate_subgroups(&g(&[2, 2]), 2, 1, 512).unwrap();
        assert_eq!(v4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        assert!(enumerate_subgroups(&g(&[2, 2]), 4, 1, 512).unwrap().is_empty());
        assert!(matches!(enumerate_subgroups(&g(&[2; 10]), 2, 1, 512), Err(Error::Capacity { .. })));
    }

    #[test]
    fn enumerated_subgroups_are_closed() {
        let grp = g(&[2, 4, 4]);
        let table = RankTable::new(&grp);
        for sub in enumerate_subgroups(&grp, 4, 2, 512).unwrap() {
            assert_eq!(sub.len(), 16);
            let set: BTreeSet<u64> = sub.iter().copied().collect();
            for &a in &sub {
                for &b in &sub {
                    assert!(set.contains(&(table.add(a as u32, b as u32) as u64)));
                }
            }
            assert_eq!(subgroup_type(&grp, &sub).unwrap(), g(&[4, 4]));
        }
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_type(&g(&[2, 4])), g(&[2]));
        assert!(quotient_type(&g(&[4])).is_trivial());
        assert_eq!(quotient_type(&GroupSpec::new(vec![2, 2, 6]).unwrap()), g(&[2, 2]));
    }

    #[test]
    fn subgroups_through_a_fixed_element() {
        // Z_n^M-subgroups containing an element a of order n correspond to
        // Z_n^{M-1}-subgroups of G/<a> (whose type drops the top factor).
        for (f, n, m) in [(&[2u64, 4, 4][..], 4u64, 2usize), (&[6, 6], 6, 2), (&[3, 3, 3], 3, 2), (&[2, 2, 2, 2], 2, 3)]
        {
            let grp = g(f);
            let subs = enumerate_subgroups(&grp, n, m, 512).unwrap();
            let expected = count_subgroups_iso(&quotient_type(&grp), n, m - 1).unwrap();
            for a in 0..grp.order() {
                if grp.element_order(&grp.element(a)) != n {
                    continue;
                }
                let through = subs.iter().filter(|s| s.binary_search(&a).is_ok()).count();
                assert_eq!(BigUint::from(through), expected, "{f:?} a={a}");
            }
        }
    }
}
