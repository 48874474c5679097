//! Counting solutions of `A x = 0` over a finite abelian group with each
//! coordinate confined to a set: a brute-force oracle (direct scan or Smith
//! parametrization) and an exact character sum evaluated modulo large primes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroup::GroupSpec;
use crate::arith::{crt, mul_mod, rooted_primes};
use crate::intmat::{residue, smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// Default cap on brute-force iterations.
pub const DEFAULT_BRUTE_BOUND: u128 = 100_000_000;

/// A subset of a group, by element rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    members: Vec<bool>,
    ranks: Vec<u64>,
}

impl ElementSet {
    pub fn from_ranks(g: &GroupSpec, ranks: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut members = vec![false; g.order() as usize];
        for r in ranks {
            let slot = members
                .get_mut(r as usize)
                .ok_or_else(|| Error::invalid(format!("element rank {r} out of range for {g}")))?;
            *slot = true;
        }
        let ranks = members.iter().enumerate().filter(|(_, &b)| b).map(|(r, _)| r as u64).collect();
        Ok(ElementSet { members, ranks })
    }

    pub fn from_elements(g: &GroupSpec, elements: &[Vec<u64>]) -> Result<Self> {
        for x in elements {
            g.check_element(x)?;
        }
        Self::from_ranks(g, elements.iter().map(|x| g.rank_of(x)))
    }

    pub fn full(g: &GroupSpec) -> Self {
        Self::from_ranks(g, 0..g.order()).expect("ranks in range")
    }

    /// `G ∖ {0}`.
    pub fn nonzero(g: &GroupSpec) -> Self {
        Self::from_ranks(g, 1..g.order()).expect("ranks in range")
    }

    pub fn contains(&self, rank: u64) -> bool {
        self.members.get(rank as usize).copied().unwrap_or(false)
    }

    /// Member ranks, ascending.
    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    fn universe(&self) -> usize {
        self.members.len()
    }
}

/// An `r`-coloring of `G ∖ {0}`: color `colors[rank] ∈ [1, r]` for every
/// nonzero rank; rank 0 carries the placeholder 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    group: GroupSpec,
    num_colors: u32,
    colors: Vec<u32>,
}

impl Coloring {
    /// `colors` lists the colors of ranks `1..|G|` in order.
    pub fn new(group: GroupSpec, num_colors: u32, colors: &[u32]) -> Result<Self> {
        if num_colors == 0 {
            return Err(Error::invalid("a coloring needs at least one color"));
        }
        let expected = group.order() as usize - 1;
        if colors.len() != expected {
            return Err(Error::invalid(format!("coloring of {group} needs {expected} colors, got {}", colors.len())));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c == 0 || c > num_colors) {
            return Err(Error::invalid(format!("color {bad} outside 1..={num_colors}")));
        }
        let mut all = Vec::with_capacity(colors.len() + 1);
        all.push(0);
        all.extend_from_slice(colors);
        Ok(Coloring { group, num_colors, colors: all })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    /// Color of a nonzero rank; `None` for the identity.
    pub fn color(&self, rank: u64) -> Option<u32> {
        match rank {
            0 => None,
            r => self.colors.get(r as usize).copied(),
        }
    }

    /// Colors of ranks `1..|G|`.
    pub fn colors(&self) -> &[u32] {
        &self.colors[1..]
    }

    pub fn class(&self, color: u32) -> ElementSet {
        let ranks = (1..self.group.order()).filter(|&r| self.colors[r as usize] == color);
        ElementSet::from_ranks(&self.group, ranks).expect("ranks in range")
    }
}

/// How to build a coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringScheme {
    /// Color `i` for the `i`-th smallest element order above 1.
    ByOrder,
    /// Uniform colors from a seeded ChaCha8 stream.
    Random { colors: u32, seed: u64 },
    /// Colors of ranks `1..|G|`.
    Explicit { colors: u32, values: Vec<u32> },
}

pub fn make_coloring(g: &GroupSpec, scheme: &ColoringScheme) -> Result<Coloring> {
    match scheme {
        ColoringScheme::ByOrder => {
            let orders: Vec<u64> = (1..g.order()).map(|r| g.element_order(&g.element(r))).collect();
            let mut distinct = orders.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let values: Vec<u32> =
                orders.iter().map(|o| distinct.binary_search(o).expect("present") as u32 + 1).collect();
            Coloring::new(g.clone(), (distinct.len() as u32).max(1), &values)
        }
        ColoringScheme::Random { colors, seed } => {
            if *colors == 0 {
                return Err(Error::invalid("a coloring needs at least one color"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let values: Vec<u32> = (1..g.order()).map(|_| rng.random_range(1..=*colors)).collect();
            Coloring::new(g.clone(), *colors, &values)
        }
        ColoringScheme::Explicit { colors, values } => Coloring::new(g.clone(), *colors, values),
    }
}

/// Result of a monochromatic count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCount {
    /// Sum of `per_color`.
    pub total: BigUint,
    pub per_color: BTreeMap<u32, BigUint>,
    /// Nonzero constant solutions `(c, …, c)`.
    pub trivial: BigUint,
}

/// Counting backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Brute force when `|G|^{m−k} ≤ |G|^k · m`, character sum otherwise.
    #[default]
    Auto,
    BruteForce,
    Fourier,
}

/// Precomputed residue-vector arithmetic for one group.
struct Arith {
    group: GroupSpec,
    elements: Vec<Vec<u64>>,
    /// `A` reduced modulo the exponent, `k × m`.
    coeffs: Vec<Vec<u64>>,
}

impl Arith {
    fn new(a: &IntMatrix, g: &GroupSpec) -> Self {
        let n = BigInt::from(g.exponent());
        let elements = (0..g.order()).map(|r| g.element(r)).collect();
        let coeffs = (0..a.rows()).map(|i| a.row(i).iter().map(|x| residue(x, &n)).collect()).collect();
        Arith { group: g.clone(), elements, coeffs }
    }

    fn s(&self) -> usize {
        self.group.num_factors()
    }

    /// `(c₁·x, …, c_r·x)` flattened, for scalars `cs`.
    fn scaled(&self, cs: &[u64], x: u64) -> Vec<u64> {
        let e = &self.elements[x as usize];
        cs.iter().flat_map(|&c| self.group.scale(e, c)).collect()
    }

    fn moduli(&self, copies: usize) -> Vec<u64> {
        let f = self.group.invariant_factors();
        (0..copies).flat_map(|_| f.iter().copied()).collect()
    }
}

/// Visits every sum `Σ_d levels[d][choice_d]` of flattened residue vectors.
fn walk(levels: &[Vec<Vec<u64>>], moduli: &[u64], leaf: &mut dyn FnMut(&[u64])) {
    fn go(levels: &[Vec<Vec<u64>>], moduli: &[u64], acc: &[u64], leaf: &mut dyn FnMut(&[u64])) {
        let Some((first, rest)) = levels.split_first() else {
            leaf(acc);
            return;
        };
        let mut next = vec![0u64; acc.len()];
        for v in first {
            for (((slot, &a), &b), &n) in next.iter_mut().zip(acc).zip(v).zip(moduli) {
                let s = a + b;
                *slot = if s >= n { s - n } else { s };
            }
            go(rest, moduli, &next, leaf);
        }
    }
    go(levels, moduli, &vec![0; moduli.len()], leaf);
}

fn code(v: &[u64], moduli: &[u64]) -> u64 {
    v.iter().zip(moduli).fold(0, |acc, (&x, &n)| acc * n + x)
}

fn check_sets(g: &GroupSpec, a: &IntMatrix, sets: &[ElementSet]) -> Result<()> {
    if sets.len() != a.cols() {
        return Err(Error::invalid(format!("need {} coordinate sets, got {}", a.cols(), sets.len())));
    }
    if sets.iter().any(|s| s.universe() as u64 != g.order()) {
        return Err(Error::invalid("coordinate set belongs to a different group"));
    }
    Ok(())
}

/// Parametrization `x = V y` from the Smith form: `y_i ∈ G[d_i]` for `i ≤ k`
/// (all of `G` when `d_i = 0`) and `y_i ∈ G` for `i > k`.
struct Parametrization {
    choices: Vec<Vec<u64>>,
    v: IntMatrix,
}

impl Parametrization {
    fn new(a: &IntMatrix, g: &GroupSpec) -> Self {
        let snf = smith_normal_form(a);
        let n = BigInt::from(g.exponent());
        let all: Vec<u64> = (0..g.order()).collect();
        let choices = (0..a.cols())
            .map(|i| match snf.diagonal().get(i) {
                Some(d) if !d.is_zero() => g.torsion(d.gcd(&n).to_u64().expect("divides the exponent")),
                _ => all.clone(),
            })
            .collect();
        Parametrization { choices, v: snf.v().clone() }
    }

    fn cost(&self) -> u128 {
        self.choices.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// Calls `f` with the ranks of every solution whose coordinates lie in `sets`.
    fn for_each(&self, ar: &Arith, sets: &[ElementSet], f: &mut dyn FnMut(&[u64])) {
        let m = sets.len();
        let n = BigInt::from(ar.group.exponent());
        // Column i of V scales y_i into every coordinate x_j.
        let levels: Vec<Vec<Vec<u64>>> = self
            .choices
            .iter()
            .enumerate()
            .map(|(i, ys)| {
                let cs: Vec<u64> = (0..m).map(|j| residue(self.v.get(j, i), &n)).collect();
                ys.iter().map(|&y| ar.scaled(&cs, y)).collect()
            })
            .collect();
        let moduli = ar.moduli(m);
        let s = ar.s();
        let mut ranks = vec![0u64; m];
        walk(&levels, &moduli, &mut |x| {
            for (j, slot) in ranks.iter_mut().enumerate() {
                *slot = ar.group.rank_of(&x[j * s..(j + 1) * s]);
                if !sets[j].contains(*slot) {
                    return;
                }
            }
            f(&ranks);
        });
    }
}

fn scan_cost(sets: &[ElementSet]) -> u128 {
    sets[..sets.len().saturating_sub(1)].iter().fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128))
}

/// Direct scan over `X₁ × … × X_{m−1}` with the last coordinate looked up
/// by its contribution to `A x`.
fn scan_count(ar: &Arith, sets: &[ElementSet]) -> Result<u128> {
    let k = ar.coeffs.len();
    let m = sets.len();
    let moduli = ar.moduli(k);
    let space = ar.group.order().checked_pow(k as u32).filter(|&s| s < 1 << 62).ok_or(Error::Capacity {
        what: "solution scan codes",
        needed: u128::MAX,
        limit: 1 << 62,
    })?;
    let column = |j: usize| -> Vec<u64> { ar.coeffs.iter().map(|row| row[j]).collect() };
    let levels: Vec<Vec<Vec<u64>>> = (0..m - 1)
        .map(|j| {
            let cs = column(j);
            sets[j].ranks().iter().map(|&x| ar.scaled(&cs, x)).collect()
        })
        .collect();
    let last = column(m - 1);
    let mut table: BTreeMap<u64, u64> = BTreeMap::new();
    let mut dense: Vec<u64> = Vec::new();
    let use_dense = space <= 1 << 20;
    if use_dense {
        dense = vec![0; space as usize];
    }
    for &x in sets[m - 1].ranks() {
        let c = code(&ar.scaled(&last, x), &moduli);
        if use_dense {
            dense[c as usize] += 1;
        } else {
            *table.entry(c).or_default() += 1;
        }
    }
    let mut total: u128 = 0;
    let mut need = vec![0u64; moduli.len()];
    walk(&levels, &moduli, &mut |acc| {
        for ((slot, &a), &n) in need.iter_mut().zip(acc).zip(&moduli) {
            *slot = (n - a) % n;
        }
        let c = code(&need, &moduli);
        total += if use_dense { dense[c as usize] } else { table.get(&c).copied().unwrap_or(0) } as u128;
    });
    Ok(total)
}

/// Exact number of `x ∈ X₁ × … × X_m` with `A x = 0` in `G^k`, by whichever
/// of the direct scan and the Smith parametrization is cheaper.
pub fn count_solutions_bruteforce(a: &IntMatrix, g: &GroupSpec, sets: &[ElementSet], bound: u128) -> Result<BigUint> {
    check_sets(g, a, sets)?;
    if sets.iter().any(ElementSet::is_empty) {
        return Ok(BigUint::zero());
    }
    let ar = Arith::new(a, g);
    let param = Parametrization::new(a, g);
    let (scan, par) = (scan_cost(sets), param.cost());
    if scan.min(par) > bound {
        return Err(Error::Capacity { what: "brute-force iterations", needed: scan.min(par), limit: bound });
    }
    if scan <= par {
        if let Ok(total) = scan_count(&ar, sets) {
            return Ok(BigUint::from(total));
        }
    }
    let mut total: u128 = 0;
    param.for_each(&ar, sets, &mut |_| total += 1);
    Ok(BigUint::from(total))
}

/// Every solution with coordinates in `sets`, as rank tuples in the
/// parametrization's traversal order.
pub fn solutions(a: &IntMatrix, g: &GroupSpec, sets: &[ElementSet], bound: u128) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for_each_solution(a, g, sets, bound, &mut |x| out.push(x.to_vec()))?;
    Ok(out)
}

/// Streams every solution with coordinates in `sets` to `f`.
pub fn for_each_solution(
    a: &IntMatrix,
    g: &GroupSpec,
    sets: &[ElementSet],
    bound: u128,
    f: &mut dyn FnMut(&[u64]),
) -> Result<()> {
    check_sets(g, a, sets)?;
    let ar = Arith::new(a, g);
    let param = Parametrization::new(a, g);
    if param.cost() > bound {
        return Err(Error::Capacity { what: "solution enumeration", needed: param.cost(), limit: bound });
    }
    param.for_each(&ar, sets, f);
    Ok(())
}

/// Exact count through the character sum
/// `|G|^{−k} Σ_{t ∈ G^k} ∏_j Ŝ_j(Σ_i a_{ij} t_i)`.
pub fn count_solutions_fourier(a: &IntMatrix, g: &GroupSpec, sets: &[ElementSet]) -> Result<BigUint> {
    check_sets(g, a, sets)?;
    if sets.iter().any(ElementSet::is_empty) {
        return Ok(BigUint::zero());
    }
    let ar = Arith::new(a, g);
    let (k, m) = (a.rows(), a.cols());
    let n = g.exponent();
    let order = g.order();
    let f = g.invariant_factors();

    // S = |G|^k · count ≤ |G|^k · ∏|X_j|; each prime exceeds 2^61.
    let mut bound = BigUint::from(order).pow(k as u32);
    for s in sets {
        bound *= s.len();
    }
    let primes = rooted_primes(n, (bound.bits() / 61 + 1) as usize)?;
    let moduli: Vec<u64> = primes.iter().map(|p| p.prime).collect();
    let powers: Vec<Vec<u64>> = primes
        .iter()
        .map(|p| {
            let mut w = vec![1u64; n as usize];
            for e in 1..n as usize {
                w[e] = mul_mod(w[e - 1], p.root, p.prime);
            }
            w
        })
        .collect();

    let pairing = |u: &[u64], x: &[u64]| -> usize {
        let s: u128 = u.iter().zip(x).zip(f).map(|((&a, &b), &nl)| a as u128 * b as u128 * (n / nl) as u128).sum();
        (s % n as u128) as usize
    };
    // hat[j][prime][u] = Ŝ_j(u) mod q.
    let hat: Vec<Vec<Vec<u64>>> = sets
        .iter()
        .map(|set| {
            let hist: Vec<Vec<u64>> = ar
                .elements
                .iter()
                .map(|u| {
                    let mut h = vec![0u64; n as usize];
                    for &x in set.ranks() {
                        h[pairing(u, &ar.elements[x as usize])] += 1;
                    }
                    h
                })
                .collect();
            primes
                .iter()
                .zip(&powers)
                .map(|(p, w)| {
                    hist.iter()
                        .map(|h| {
                            h.iter()
                                .zip(w)
                                .fold(0u64, |acc, (&c, &we)| (acc + mul_mod(c % p.prime, we, p.prime)) % p.prime)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let levels: Vec<Vec<Vec<u64>>> =
        (0..k).map(|i| (0..order).map(|t| ar.scaled(&ar.coeffs[i], t)).collect()).collect();
    let s = ar.s();
    let mut sums = vec![0u64; primes.len()];
    let mut us = vec![0usize; m];
    walk(&levels, &ar.moduli(m), &mut |acc| {
        for (j, slot) in us.iter_mut().enumerate() {
            *slot = g.rank_of(&acc[j * s..(j + 1) * s]) as usize;
        }
        for (pi, p) in primes.iter().enumerate() {
            let term = us.iter().enumerate().fold(1u64, |acc, (j, &u)| mul_mod(acc, hat[j][pi][u], p.prime));
            sums[pi] = (sums[pi] + term) % p.prime;
        }
    });
    let total = crt(&sums, &moduli);
    let norm = BigUint::from(order).pow(k as u32);
    let (count, rem) = total.div_rem(&norm);
    if !rem.is_zero() {
        return Err(Error::internal("character sum is not divisible by |G|^k"));
    }
    Ok(count)
}

/// `|G|^{m−k} ≤ |G|^k · m` selects brute force.
fn prefers_brute(a: &IntMatrix, g: &GroupSpec) -> bool {
    let o = BigUint::from(g.order());
    let (k, m) = (a.rows() as u32, a.cols() as u32);
    o.pow(m.saturating_sub(k)) <= o.pow(k) * m
}

pub fn count_solutions(
    a: &IntMatrix,
    g: &GroupSpec,
    sets: &[ElementSet],
    backend: Backend,
    bound: u128,
) -> Result<BigUint> {
    match backend {
        Backend::BruteForce => count_solutions_bruteforce(a, g, sets, bound),
        Backend::Fourier => count_solutions_fourier(a, g, sets),
        Backend::Auto if prefers_brute(a, g) => count_solutions_bruteforce(a, g, sets, bound),
        Backend::Auto => count_solutions_fourier(a, g, sets),
    }
}

/// Number of nonzero `c` with `(Σ_j a_{ij}) · c = 0` for every row `i`.
pub fn trivial_solutions(a: &IntMatrix, g: &GroupSpec) -> BigUint {
    let n = BigInt::from(g.exponent());
    let sums: Vec<u64> = (0..a.rows()).map(|i| residue(&a.row(i).iter().sum::<BigInt>(), &n)).collect();
    let count = (1..g.order())
        .filter(|&r| {
            let x = g.element(r);
            sums.iter().all(|&c| g.scale(&x, c).iter().all(|&v| v == 0))
        })
        .count();
    BigUint::from(count)
}

/// Monochromatic solutions under `coloring`, class by class.
pub fn count_monochromatic(a: &IntMatrix, coloring: &Coloring, backend: Backend, bound: u128) -> Result<SolutionCount> {
    let g = coloring.group();
    let mut per_color = BTreeMap::new();
    let mut total = BigUint::zero();
    for c in 1..=coloring.num_colors() {
        let class = coloring.class(c);
        let sets = vec![class; a.cols()];
        let count = count_solutions(a, g, &sets, backend, bound)?;
        total += &count;
        per_color.insert(c, count);
    }
    Ok(SolutionCount { total, per_color, trivial: trivial_solutions(a, g) })
}

/// `|G|^{m−k}`, the normalizer of monochromatic counts.
pub fn normalizer(a: &IntMatrix, g: &GroupSpec) -> BigUint {
    BigUint::from(g.order()).pow(a.cols().saturating_sub(a.rows()) as u32)
}

/// `count / |G|^{m−k}` as a float, for reports.
pub fn empirical_constant(count: &BigUint, a: &IntMatrix, g: &GroupSpec) -> f64 {
    let norm = normalizer(a, g);
    let (c, d) = (count.to_f64().unwrap_or(f64::INFINITY), norm.to_f64().unwrap_or(f64::INFINITY));
    if d.is_finite() && d > 0.0 {
        c / d
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    fn g(f: &[u64]) -> GroupSpec {
        GroupSpec::from_product(f).unwrap()
    }

    fn order4() -> IntMatrix {
        m(&[&[1, 0, -1, 0], &[0, 1, -1, 0], &[0, 0, 0, 2]])
    }

    /// Independent oracle: nested loops over all tuples.
    fn naive(a: &IntMatrix, grp: &GroupSpec, sets: &[ElementSet]) -> u64 {
        let mcols = a.cols();
        let mut idx = vec![0usize; mcols];
        let mut count = 0;
        'outer: loop {
            let xs: Vec<Vec<u64>> = (0..mcols).map(|j| grp.element(sets[j].ranks()[idx[j]])).collect();
            let ok = (0..a.rows()).all(|i| {
                let mut acc = grp.zero();
                for (j, x) in xs.iter().enumerate() {
                    let c = a.get(i, j).mod_floor(&BigInt::from(grp.exponent())).to_u64().unwrap();
                    acc = grp.add(&acc, &grp.scale(x, c));
                }
                acc == grp.zero()
            });
            count += ok as u64;
            for j in 0..mcols {
                idx[j] += 1;
                if idx[j] < sets[j].len() {
                    continue 'outer;
                }
                idx[j] = 0;
            }
            break;
        }
        count
    }

    #[test]
    fn examples() {
        let z5 = g(&[5]);
        let schur = m(&[&[1, 1, -1]]);
        let full = vec![ElementSet::full(&z5); 3];
        assert_eq!(count_solutions_bruteforce(&schur, &z5, &full, DEFAULT_BRUTE_BOUND).unwrap(), BigUint::from(25u32));
        assert_eq!(count_solutions_fourier(&schur, &z5, &full).unwrap(), BigUint::from(25u32));

        let z4 = g(&[4]);
        let full4 = vec![ElementSet::full(&z4); 4];
        assert_eq!(
            count_solutions_bruteforce(&order4(), &z4, &full4, DEFAULT_BRUTE_BOUND).unwrap(),
            BigUint::from(8u32)
        );
        assert_eq!(count_solutions_fourier(&order4(), &z4, &full4).unwrap(), BigUint::from(8u32));

        let singles: Vec<ElementSet> =
            [1u64, 1, 1].iter().map(|&r| ElementSet::from_ranks(&z5, [r]).unwrap()).collect();
        assert_eq!(count_solutions_bruteforce(&schur, &z5, &singles, DEFAULT_BRUTE_BOUND).unwrap(), BigUint::zero());
        assert_eq!(count_solutions_fourier(&schur, &z5, &singles).unwrap(), BigUint::zero());

        let mut with_empty = full.clone();
        with_empty[1] = ElementSet::from_ranks(&z5, []).unwrap();
        assert_eq!(count_solutions_fourier(&schur, &z5, &with_empty).unwrap(), BigUint::zero());
    }

    #[test]
    fn backends_agree_with_naive_on_mixed_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [&[2u64, 4][..], &[6], &[2, 2, 2], &[3, 6], &[8]] {
            let grp = g(f);
            for _ in 0..6 {
                let k = rng.random_range(1..=2usize);
                let mcols = rng.random_range(k..=4usize);
                let rows: Vec<Vec<i64>> =
                    (0..k).map(|_| (0..mcols).map(|_| rng.random_range(-4..=4)).collect()).collect();
                let a = IntMatrix::from_i64(&rows).unwrap();
                let sets: Vec<ElementSet> = (0..mcols)
                    .map(|_| ElementSet::from_ranks(&grp, (0..grp.order()).filter(|_| rng.random_bool(0.6))).unwrap())
                    .collect();
                let expected = BigUint::from(naive(&a, &grp, &sets));
                assert_eq!(
                    count_solutions_bruteforce(&a, &grp, &sets, DEFAULT_BRUTE_BOUND).unwrap(),
                    expected,
                    "{rows:?}"
                );
                assert_eq!(count_solutions_fourier(&a, &grp, &sets).unwrap(), expected, "{rows:?}");
                let mut enumerated = 0u64;
                for_each_solution(&a, &grp, &sets, DEFAULT_BRUTE_BOUND, &mut |_| enumerated += 1).unwrap();
                assert_eq!(BigUint::from(enumerated), expected);
            }
        }
    }

    #[test]
    fn rank_degenerate_systems_are_exact() {
        // (2 2) over Z4: x + y ∈ {0, 2}, so 8 solutions; mod-4 rank collapses.
        let a = m(&[&[2, 2]]);
        let z4 = g(&[4]);
        let full = vec![ElementSet::full(&z4); 2];
        assert_eq!(count_solutions_bruteforce(&a, &z4, &full, DEFAULT_BRUTE_BOUND).unwrap(), BigUint::from(8u32));
        let mut n = 0;
        for_each_solution(&a, &z4, &full, DEFAULT_BRUTE_BOUND, &mut |_| n += 1).unwrap();
        assert_eq!(n, 8);
    }

    #[test]
    fn bound_is_enforced() {
        let z5 = g(&[5]);
        let a = m(&[&[1, 1, -1]]);
        let full = vec![ElementSet::full(&z5); 3];
        assert!(matches!(count_solutions_bruteforce(&a, &z5, &full, 4), Err(Error::Capacity { .. })));
    }

    #[test]
    fn colorings() {
        let z4 = g(&[4]);
        let c = make_coloring(&z4, &ColoringScheme::ByOrder).unwrap();
        assert_eq!(c.num_colors(), 2);
        assert_eq!(c.colors(), &[2, 1, 2]);
        let r1 = make_coloring(&g(&[3, 3]), &ColoringScheme::Random { colors: 2, seed: 7 }).unwrap();
        let r2 = make_coloring(&g(&[3, 3]), &ColoringScheme::Random { colors: 2, seed: 7 }).unwrap();
        assert_eq!(r1, r2);
        assert!(make_coloring(&z4, &ColoringScheme::Explicit { colors: 2, values: vec![1, 0, 2] }).is_err());
        assert!(make_coloring(&z4, &ColoringScheme::Explicit { colors: 2, values: vec![1, 2] }).is_err());
        assert!(make_coloring(&z4, &ColoringScheme::Explicit { colors: 2, values: vec![1, 3, 2] }).is_err());
        let sizes: usize = (1..=r1.num_colors()).map(|k| r1.class(k).len()).sum();
        assert_eq!(sizes as u64, r1.group().order() - 1);
    }

    #[test]
    fn monochromatic_examples() {
        let z4 = g(&[4]);
        let by_order = make_coloring(&z4, &ColoringScheme::ByOrder).unwrap();
        let res = count_monochromatic(&order4(), &by_order, Backend::BruteForce, DEFAULT_BRUTE_BOUND).unwrap();
        // Color 1 is order 2 ({2}); color 2 is order 4 ({1, 3}).
        assert_eq!(res.per_color[&1], BigUint::one());
        assert_eq!(res.per_color[&2], BigUint::zero());
        assert_eq!(res.total, BigUint::one());

        let z5 = g(&[5]);
        let schur = m(&[&[1, 1, -1]]);
        let c = make_coloring(&z5, &ColoringScheme::Explicit { colors: 2, values: vec![1, 2, 2, 1] }).unwrap();
        for backend in [Backend::BruteForce, Backend::Fourier, Backend::Auto] {
            let res = count_monochromatic(&schur, &c, backend, DEFAULT_BRUTE_BOUND).unwrap();
            assert_eq!(res.total, BigUint::zero());
        }

        let constant = make_coloring(&z5, &ColoringScheme::Explicit { colors: 1, values: vec![1; 4] }).unwrap();
        let res = count_monochromatic(&schur, &constant, Backend::Auto, DEFAULT_BRUTE_BOUND).unwrap();
        let nonzero = vec![ElementSet::nonzero(&z5); 3];
        assert_eq!(res.total, count_solutions_bruteforce(&schur, &z5, &nonzero, DEFAULT_BRUTE_BOUND).unwrap());
    }

    #[test]
    fn trivial_solutions_under_strong_condition() {
        let grp = g(&[2, 6]);
        assert_eq!(trivial_solutions(&m(&[&[1, 1, -2]]), &grp), BigUint::from(grp.order() - 1));
        assert_eq!(trivial_solutions(&m(&[&[1, 1, -1]]), &g(&[5])), BigUint::zero());
    }

    #[test]
    fn order4_scaling() {
        for big_n in 1..=2usize {
            let grp = GroupSpec::power(4, big_n).unwrap();
            let full = vec![ElementSet::full(&grp); 4];
            let total = count_solutions_bruteforce(&order4(), &grp, &full, DEFAULT_BRUTE_BOUND).unwrap();
            assert_eq!(total, BigUint::from(8u32).pow(big_n as u32));
            let c = make_coloring(&grp, &ColoringScheme::ByOrder).unwrap();
            let mono = count_monochromatic(&order4(), &c, Backend::BruteForce, DEFAULT_BRUTE_BOUND).unwrap();
            let expected = (1u64 << big_n) - 1;
            assert_eq!(mono.total, BigUint::from(expected * expected));
        }
    }
}
