//! Searches over colorings and dense subsets for few (monochromatic)
//! solutions, the congruence-class counterexample for equations whose
//! coefficients do not sum to zero, and the order-4 counterexample fixture.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroup::GroupSpec;
use crate::columns::{
    check_columns_condition, strong_column_condition, ColumnsCertificate, Ring, DEFAULT_COLUMN_BOUND,
};
use crate::count::{
    count_monochromatic, count_solutions_bruteforce, make_coloring, solutions, Backend, Coloring, ColoringScheme,
    ElementSet,
};
use crate::intmat::IntMatrix;
use crate::{Error, Result};

/// Default cap on candidates examined by a search.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Upper bound on consecutive non-improving equal-cost moves in hill descent.
const PLATEAU_CAP: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub mode: SearchMode,
    pub max_candidates: u128,
    pub seed: u64,
    /// Exhaustive colorings: fix rank 1 to color 1 and skip color permutations.
    pub symmetry_reduction: bool,
}

impl SearchBudget {
    pub fn exhaustive(max_candidates: u128) -> Self {
        SearchBudget { mode: SearchMode::Exhaustive, max_candidates, seed: 0, symmetry_reduction: true }
    }

    pub fn randomized(max_candidates: u128, seed: u64) -> Self {
        SearchBudget { mode: SearchMode::Randomized, max_candidates, seed, symmetry_reduction: true }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::exhaustive(DEFAULT_BUDGET)
    }
}

/// Outcome of a minimization. In randomized mode `min` is an upper bound
/// on the true minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport<W> {
    pub mode: SearchMode,
    pub min: BigUint,
    pub witness: W,
    pub evaluated: u128,
    /// `|G|^{m−k}`.
    pub normalizer: BigUint,
    /// `min / normalizer`.
    pub empirical_c: f64,
}

/// All-nonzero solutions of `A x = 0`, stored as their sets of distinct
/// coordinates, with incidence lists for incremental recounting.
pub struct MonoProblem {
    order: usize,
    colors: u32,
    solutions: Vec<Vec<u32>>,
    /// Solutions whose largest coordinate rank is the index.
    by_last: Vec<Vec<u32>>,
    /// Solutions containing the index.
    incidence: Vec<Vec<u32>>,
}

impl MonoProblem {
    pub fn new(a: &IntMatrix, g: &GroupSpec, colors: u32, bound: u128) -> Result<Self> {
        if colors == 0 {
            return Err(Error::invalid("need at least one color"));
        }
        let order = g.order() as usize;
        let sets = vec![ElementSet::nonzero(g); a.cols()];
        let raw = solutions(a, g, &sets, bound)?;
        let mut by_last = vec![Vec::new(); order];
        let mut incidence = vec![Vec::new(); order];
        let mut sols = Vec::with_capacity(raw.len());
        for (idx, s) in raw.into_iter().enumerate() {
            let mut d: Vec<u32> = s.into_iter().map(|r| r as u32).collect();
            d.sort_unstable();
            d.dedup();
            by_last[*d.last().expect("m >= 1") as usize].push(idx as u32);
            for &e in &d {
                incidence[e as usize].push(idx as u32);
            }
            sols.push(d);
        }
        Ok(MonoProblem { order, colors, solutions: sols, by_last, incidence })
    }

    pub fn num_solutions(&self) -> usize {
        self.solutions.len()
    }

    fn is_mono(&self, idx: u32, colors: &[u32]) -> bool {
        let s = &self.solutions[idx as usize];
        let c = colors[s[0] as usize];
        s.iter().all(|&e| colors[e as usize] == c)
    }

    /// Monochromatic solutions under `colors` (indexed by rank, entry 0 unused).
    pub fn mono_count(&self, colors: &[u32]) -> u64 {
        (0..self.solutions.len() as u32).filter(|&i| self.is_mono(i, colors)).count() as u64
    }

    /// Partial colorings of ranks `1..=depth` that seed independent exhaustive jobs,
    /// in lexicographic order.
    pub fn exhaustive_prefixes(&self, depth: usize, symmetry_reduction: bool) -> Vec<Vec<u32>> {
        let depth = depth.min(self.order.saturating_sub(1));
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(depth);
        self.prefixes(depth, symmetry_reduction, &mut cur, 0, &mut out);
        out
    }

    fn prefixes(&self, depth: usize, sym: bool, cur: &mut Vec<u32>, used: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == depth {
            out.push(cur.clone());
            return;
        }
        let top = if sym { (used + 1).min(self.colors) } else { self.colors };
        for c in 1..=top {
            cur.push(c);
            self.prefixes(depth, sym, cur, used.max(c), out);
            cur.pop();
        }
    }

    /// Exact minimum over all completions of `prefix` (colors of ranks
    /// `1..=prefix.len()`), with the lex-first coloring attaining it.
    pub fn exhaustive_from(&self, prefix: &[u32], symmetry_reduction: bool) -> (u64, Vec<u32>, u128) {
        let mut colors = vec![0u32; self.order];
        let mut partial = 0u64;
        let mut used = 0u32;
        for (i, &c) in prefix.iter().enumerate() {
            colors[i + 1] = c;
            used = used.max(c);
            partial += self.completed_mono(i + 1, &colors);
        }
        let mut best = (u64::MAX, Vec::new());
        let mut visited = 0u128;
        self.branch(prefix.len() + 1, &mut colors, partial, used, symmetry_reduction, &mut best, &mut visited);
        (best.0, best.1, visited)
    }

    fn completed_mono(&self, e: usize, colors: &[u32]) -> u64 {
        self.by_last[e].iter().filter(|&&i| self.is_mono(i, colors)).count() as u64
    }

    #[allow(clippy::too_many_arguments)]
    fn branch(
        &self,
        e: usize,
        colors: &mut Vec<u32>,
        partial: u64,
        used: u32,
        sym: bool,
        best: &mut (u64, Vec<u32>),
        visited: &mut u128,
    ) {
        *visited += 1;
        if partial >= best.0 {
            return;
        }
        if e == self.order {
            *best = (partial, colors[1..].to_vec());
            return;
        }
        let top = if sym { (used + 1).min(self.colors) } else { self.colors };
        for c in 1..=top {
            colors[e] = c;
            let add = self.completed_mono(e, colors);
            self.branch(e + 1, colors, partial + add, used.max(c), sym, best, visited);
        }
        colors[e] = 0;
    }

    /// One random restart followed by single-element recolor descent, using at
    /// most `steps` move evaluations. Deterministic in `(seed, restart)`.
    pub fn descend(&self, seed: u64, restart: u64, steps: u128) -> (u64, Vec<u32>, u128) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart);
        let mut colors = vec![0u32; self.order];
        for c in colors.iter_mut().skip(1) {
            *c = rng.random_range(1..=self.colors);
        }
        let mut count = self.mono_count(&colors);
        let mut best = (count, colors[1..].to_vec());
        if self.order <= 1 || self.colors == 1 {
            return (best.0, best.1, 1);
        }
        let mut used = 1u128;
        let mut plateau = 0u32;
        let mut stale = 0u128;
        let patience = (self.order as u128) * self.colors as u128 * 4;
        while used < steps && count > 0 && stale < patience {
            let e = rng.random_range(1..self.order);
            let old = colors[e];
            let mut new = rng.random_range(1..self.colors);
            if new >= old {
                new += 1;
            }
            let before = self.incidence[e].iter().filter(|&&i| self.is_mono(i, &colors)).count() as i64;
            colors[e] = new;
            let after = self.incidence[e].iter().filter(|&&i| self.is_mono(i, &colors)).count() as i64;
            used += 1;
            let delta = after - before;
            if delta < 0 {
                count = (count as i64 + delta) as u64;
                plateau = 0;
                stale = 0;
                if count < best.0 {
                    best = (count, colors[1..].to_vec());
                }
            } else if delta == 0 && plateau < PLATEAU_CAP {
                plateau += 1;
                stale += 1;
            } else {
                colors[e] = old;
                stale += 1;
            }
        }
        (best.0, best.1, used)
    }
}

/// `r^(|G|−1)`, saturating.
pub fn coloring_space(g: &GroupSpec, r: u32) -> u128 {
    (1..g.order()).fold(1u128, |acc, _| acc.saturating_mul(r as u128))
}

/// Least number of monochromatic solutions over `r`-colorings of `G ∖ {0}`.
pub fn min_monochromatic(
    a: &IntMatrix,
    g: &GroupSpec,
    r: u32,
    budget: &SearchBudget,
    bound: u128,
) -> Result<SearchReport<Coloring>> {
    let problem = MonoProblem::new(a, g, r, bound)?;
    let (min, colors, evaluated) = match budget.mode {
        SearchMode::Exhaustive => {
            let space = coloring_space(g, r);
            if space > budget.max_candidates {
                return Err(Error::Budget { needed: space, budget: budget.max_candidates });
            }
            problem.exhaustive_from(&[], budget.symmetry_reduction)
        }
        SearchMode::Randomized => {
            let out = randomized_min(&problem, budget, 0..RANDOM_RESTARTS);
            (out.min, out.colors, out.evaluated)
        }
    };
    finish_coloring_report(a, g, r, budget.mode, min, &colors, evaluated)
}

/// Restarts a randomized search splits its budget between.
pub const RANDOM_RESTARTS: u64 = 16;

/// Best result of a run of random restarts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestartOutcome {
    pub min: u64,
    pub colors: Vec<u32>,
    /// Move evaluations spent, up to and including the restart that found `min`
    /// when `min` is zero.
    pub evaluated: u128,
    pub restart: u64,
}

/// Serial randomized driver over `restarts`, each allotted
/// `max_candidates / RANDOM_RESTARTS` moves, stopping at the first zero.
/// Ties keep the earliest restart, so contiguous chunks of a restart range
/// reduce to the same outcome as the whole range.
pub fn randomized_min(problem: &MonoProblem, budget: &SearchBudget, restarts: core::ops::Range<u64>) -> RestartOutcome {
    let per = (budget.max_candidates / RANDOM_RESTARTS as u128).max(1);
    let mut best: Option<RestartOutcome> = None;
    let mut used = 0u128;
    for restart in restarts {
        let (min, colors, u) = problem.descend(budget.seed, restart, per);
        used += u;
        if best.as_ref().is_none_or(|b| min < b.min) {
            best = Some(RestartOutcome { min, colors, evaluated: 0, restart });
        }
        if min == 0 {
            break;
        }
    }
    let mut best = best.expect("restart range is nonempty");
    best.evaluated = used;
    best
}

/// Re-verifies a witness through the brute-force counter and builds the report.
pub fn finish_coloring_report(
    a: &IntMatrix,
    g: &GroupSpec,
    r: u32,
    mode: SearchMode,
    min: u64,
    colors: &[u32],
    evaluated: u128,
) -> Result<SearchReport<Coloring>> {
    let witness = make_coloring(g, &ColoringScheme::Explicit { colors: r, values: colors.to_vec() })?;
    let check = count_monochromatic(a, &witness, Backend::BruteForce, u128::MAX)?;
    if check.total != BigUint::from(min) {
        return Err(Error::internal("witness coloring does not reproduce its count"));
    }
    Ok(report(a, g, mode, check.total, witness, evaluated))
}

fn report<W>(
    a: &IntMatrix,
    g: &GroupSpec,
    mode: SearchMode,
    min: BigUint,
    witness: W,
    evaluated: u128,
) -> SearchReport<W> {
    let normalizer = crate::count::normalizer(a, g);
    let empirical_c = crate::count::empirical_constant(&min, a, g);
    SearchReport { mode, min, witness, evaluated, normalizer, empirical_c }
}

/// The set `X = {x ∈ [0, n₀] : x ≡ 1 (mod |α|+1)}` with `n₀ = ⌊n/(m t)⌋`,
/// on which `Σ aᵢxᵢ = 0` has no solution in `ℤ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    pub coefficients: Vec<i64>,
    pub alpha: i64,
    pub t: u64,
    pub n: u64,
    pub n0: u64,
    pub set: Vec<u64>,
    /// Solutions in `X^m`, when the brute-force check fits the bound.
    pub solutions: Option<BigUint>,
    /// `1/(m t (|α|+1))`.
    pub density_bound: BigRational,
    /// `|X| ≥ n/(m t (|α|+1)) − 1`.
    pub meets_bound: bool,
}

pub fn density_counterexample(a: &[i64], n: u64, bound: u128) -> Result<DensityWitness> {
    if a.is_empty() {
        return Err(Error::invalid("need at least one coefficient"));
    }
    let alpha: i64 = a.iter().sum();
    if alpha == 0 {
        return Err(Error::invalid(
            "coefficients sum to zero: the equation has the strong column condition and no counterexample exists",
        ));
    }
    let m = a.len() as u64;
    let t = a.iter().map(|x| x.unsigned_abs()).max().expect("nonempty");
    let n0 = n / (m * t);
    if n0 == 0 {
        return Err(Error::invalid("n is too small: n / (m t) rounds down to 0"));
    }
    let step = alpha.unsigned_abs() + 1;
    let set: Vec<u64> = (0..=n0).filter(|x| x % step == 1 % step).collect();
    let g = GroupSpec::cyclic(n)?;
    let matrix = IntMatrix::from_i64(&[a])?;
    let sets = vec![ElementSet::from_ranks(&g, set.iter().copied())?; a.len()];
    let solutions = match count_solutions_bruteforce(&matrix, &g, &sets, bound) {
        Ok(c) => Some(c),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e),
    };
    let denom = m * t * step;
    let density_bound = BigRational::new(BigInt::one(), BigInt::from(denom));
    let meets_bound = (set.len() as u128 + 1) * denom as u128 >= n as u128;
    Ok(DensityWitness { coefficients: a.to_vec(), alpha, t, n, n0, set, solutions, density_bound, meets_bound })
}

/// `min(⌈ε·|G|⌉, |G| − 1)`.
pub fn dense_subset_size(g: &GroupSpec, epsilon: &BigRational) -> Result<usize> {
    if !epsilon.is_positive() || epsilon > &BigRational::one() {
        return Err(Error::invalid("epsilon must lie in (0, 1]"));
    }
    let scaled = epsilon * BigRational::from_integer(BigInt::from(g.order()));
    let size = scaled.ceil().to_integer().to_u64().expect("at most |G|");
    Ok(size.min(g.order().saturating_sub(1)) as usize)
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

/// Fewest solutions of `A x = 0` with every coordinate in one set `X` of
/// `min(⌈ε|G|⌉, |G|−1)` nonzero elements; exhaustive when the number of such
/// sets fits the budget.
pub fn min_solutions_dense_subsets(
    a: &IntMatrix,
    g: &GroupSpec,
    epsilon: &BigRational,
    budget: &SearchBudget,
    bound: u128,
) -> Result<SearchReport<Vec<u64>>> {
    let size = dense_subset_size(g, epsilon)?;
    let universe = g.order() - 1;
    if size == 0 {
        return Err(Error::invalid("the group has no nonzero elements"));
    }
    let problem = MonoProblem::new(a, g, 1, bound)?;
    let count_in = |members: &[bool]| -> u64 {
        problem.solutions.iter().filter(|s| s.iter().all(|&e| members[e as usize])).count() as u64
    };
    let space = binomial(universe, size as u64);
    let exhaustive = match budget.mode {
        SearchMode::Exhaustive if space <= budget.max_candidates => true,
        SearchMode::Exhaustive => return Err(Error::Budget { needed: space, budget: budget.max_candidates }),
        SearchMode::Randomized => false,
    };
    let order = g.order() as usize;
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut evaluated = 0u128;
    if exhaustive {
        // Combinations of 1..|G| in lex order.
        let mut comb: Vec<u64> = (1..=size as u64).collect();
        loop {
            let mut members = vec![false; order];
            for &x in &comb {
                members[x as usize] = true;
            }
            let c = count_in(&members);
            evaluated += 1;
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, comb.clone()));
            }
            let Some(i) = (0..size).rev().find(|&i| comb[i] < universe - (size - 1 - i) as u64) else {
                break;
            };
            comb[i] += 1;
            for j in i + 1..size {
                comb[j] = comb[j - 1] + 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let pool: Vec<u64> = (1..g.order()).collect();
        while evaluated < budget.max_candidates {
            let mut shuffled = pool.clone();
            shuffled.shuffle(&mut rng);
            let mut members = vec![false; order];
            for &x in &shuffled[..size] {
                members[x as usize] = true;
            }
            let mut c = count_in(&members);
            evaluated += 1;
            let mut stale = 0u32;
            while c > 0 && stale < PLATEAU_CAP && evaluated < budget.max_candidates && size < universe as usize {
                let inside: Vec<u64> = (1..g.order()).filter(|&x| members[x as usize]).collect();
                let outside: Vec<u64> = (1..g.order()).filter(|&x| !members[x as usize]).collect();
                let out = inside[rng.random_range(0..inside.len())];
                let inn = outside[rng.random_range(0..outside.len())];
                members[out as usize] = false;
                members[inn as usize] = true;
                let c2 = count_in(&members);
                evaluated += 1;
                if c2 < c {
                    c = c2;
                    stale = 0;
                } else {
                    members[out as usize] = true;
                    members[inn as usize] = false;
                    stale += 1;
                }
            }
            let set: Vec<u64> = (1..g.order()).filter(|&x| members[x as usize]).collect();
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, set));
            }
            if best.as_ref().is_some_and(|(b, _)| *b == 0) {
                break;
            }
        }
    }
    let (min, witness) = best.ok_or_else(|| Error::invalid("budget admits no candidate"))?;
    let sets = vec![ElementSet::from_ranks(g, witness.iter().copied())?; a.cols()];
    let check = count_solutions_bruteforce(a, g, &sets, u128::MAX)?;
    if check != BigUint::from(min) {
        return Err(Error::internal("witness set does not reproduce its count"));
    }
    if strong_column_condition(a) && check < BigUint::from(witness.len()) {
        return Err(Error::internal("strong column condition but fewer solutions than constants"));
    }
    let mode = if exhaustive { SearchMode::Exhaustive } else { SearchMode::Randomized };
    Ok(report(a, g, mode, check, witness, evaluated))
}

/// The 3×4 matrix satisfying the 2-columns but not the 4-columns condition.
pub fn order4_matrix() -> IntMatrix {
    IntMatrix::from_i64(&[[1, 0, -1, 0], [0, 1, -1, 0], [0, 0, 0, 2]]).expect("valid shape")
}

/// The order-4 counterexample evaluated over `ℤ₄^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order4Report {
    pub copies: usize,
    pub total: BigUint,
    pub expected_total: BigUint,
    pub monochromatic: BigUint,
    pub expected_monochromatic: BigUint,
    pub per_color: Vec<(u32, BigUint)>,
    pub two_columns: Option<ColumnsCertificate>,
    pub four_columns: Option<ColumnsCertificate>,
}

impl Order4Report {
    pub fn passed(&self) -> bool {
        self.total == self.expected_total
            && self.monochromatic == self.expected_monochromatic
            && self.two_columns.is_some()
            && self.four_columns.is_none()
    }
}

pub fn order4_fixture(copies: usize) -> Result<Order4Report> {
    if !(1..=2).contains(&copies) {
        return Err(Error::invalid("the fixture is sized for N in {1, 2}"));
    }
    let a = order4_matrix();
    let g = GroupSpec::power(4, copies)?;
    let full = vec![ElementSet::full(&g); 4];
    let total = count_solutions_bruteforce(&a, &g, &full, u128::MAX)?;
    let coloring = make_coloring(&g, &ColoringScheme::ByOrder)?;
    let mono = count_monochromatic(&a, &coloring, Backend::BruteForce, u128::MAX)?;
    let side = BigUint::from((1u64 << copies) - 1);
    Ok(Order4Report {
        copies,
        total,
        expected_total: BigUint::from(8u32).pow(copies as u32),
        monochromatic: mono.total,
        expected_monochromatic: &side * &side,
        per_color: mono.per_color.into_iter().collect(),
        two_columns: check_columns_condition(&a, Ring::ModN(2), DEFAULT_COLUMN_BOUND)?,
        four_columns: check_columns_condition(&a, Ring::ModN(4), DEFAULT_COLUMN_BOUND)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn schur() -> IntMatrix {
        IntMatrix::from_i64(&[[1, 1, -1]]).unwrap()
    }

    #[test]
    fn schur_z5() {
        let g = GroupSpec::cyclic(5).unwrap();
        let rep = min_monochromatic(&schur(), &g, 2, &SearchBudget::default(), u128::MAX).unwrap();
        assert_eq!(rep.min, BigUint::zero());
        assert_eq!(rep.witness.colors(), &[1, 2, 2, 1]);
        let plain = SearchBudget { symmetry_reduction: false, ..SearchBudget::default() };
        let rep2 = min_monochromatic(&schur(), &g, 2, &plain, u128::MAX).unwrap();
        assert_eq!(rep2.min, rep.min);
    }

    #[test]
    fn single_color_and_tiny_groups() {
        let g = GroupSpec::cyclic(7).unwrap();
        let rep = min_monochromatic(&schur(), &g, 1, &SearchBudget::default(), u128::MAX).unwrap();
        let all = count_solutions_bruteforce(&schur(), &g, &vec![ElementSet::nonzero(&g); 3], u128::MAX).unwrap();
        assert_eq!(rep.min, all);
        let z2 = GroupSpec::cyclic(2).unwrap();
        let rep = min_monochromatic(&schur(), &z2, 2, &SearchBudget::default(), u128::MAX).unwrap();
        assert_eq!(rep.min, BigUint::zero());
    }

    #[test]
    fn budget_is_enforced() {
        let g = GroupSpec::cyclic(11).unwrap();
        assert!(matches!(
            min_monochromatic(&schur(), &g, 2, &SearchBudget::exhaustive(100), u128::MAX),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn randomized_is_reproducible_and_bounded_below_by_exhaustive() {
        let g = GroupSpec::cyclic(11).unwrap();
        let exact = min_monochromatic(&schur(), &g, 2, &SearchBudget::default(), u128::MAX).unwrap();
        let b = SearchBudget::randomized(5_000, 9);
        let r1 = min_monochromatic(&schur(), &g, 2, &b, u128::MAX).unwrap();
        let r2 = min_monochromatic(&schur(), &g, 2, &b, u128::MAX).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.min >= exact.min);
    }

    #[test]
    fn prefix_jobs_reproduce_the_serial_minimum() {
        let g = GroupSpec::power(2, 3).unwrap();
        let a = IntMatrix::from_i64(&[[1, 1, 1, 1]]).unwrap();
        let p = MonoProblem::new(&a, &g, 3, u128::MAX).unwrap();
        let (serial, colors, _) = p.exhaustive_from(&[], true);
        let best = p
            .exhaustive_prefixes(3, true)
            .iter()
            .map(|pre| p.exhaustive_from(pre, true))
            .min_by_key(|(c, _, _)| *c)
            .unwrap();
        assert_eq!(best.0, serial);
        assert_eq!(best.1, colors);
    }

    #[test]
    fn density_examples() {
        let w = density_counterexample(&[1, 1, 1], 100, u128::MAX).unwrap();
        assert_eq!(w.n0, 33);
        assert_eq!(w.set, (0..9).map(|i| 1 + 4 * i).collect::<Vec<_>>());
        assert_eq!(w.solutions, Some(BigUint::zero()));
        assert!(w.meets_bound);
        let w = density_counterexample(&[1, -2], 60, u128::MAX).unwrap();
        assert_eq!((w.alpha, w.t, w.n0), (-1, 2, 15));
        assert_eq!(w.set, vec![1, 3, 5, 7, 9, 11, 13, 15]);
        assert_eq!(w.solutions, Some(BigUint::zero()));
        assert!(density_counterexample(&[1, 1, -2], 100, u128::MAX).is_err());
    }

    #[test]
    fn dense_subsets() {
        let g = GroupSpec::cyclic(13).unwrap();
        let a = IntMatrix::from_i64(&[[1, 1, 1]]).unwrap();
        let eps = BigRational::new(BigInt::from(3), BigInt::from(13));
        let rep = min_solutions_dense_subsets(&a, &g, &eps, &SearchBudget::default(), u128::MAX).unwrap();
        assert_eq!(rep.witness.len(), 3);
        assert_eq!(rep.evaluated, 220);

        let strong = IntMatrix::from_i64(&[[1, 1, -2]]).unwrap();
        let rep = min_solutions_dense_subsets(&strong, &g, &eps, &SearchBudget::default(), u128::MAX).unwrap();
        assert!(rep.min >= BigUint::from(3u32));

        let one = BigRational::one();
        let rep = min_solutions_dense_subsets(&a, &g, &one, &SearchBudget::default(), u128::MAX).unwrap();
        let all = count_solutions_bruteforce(&a, &g, &vec![ElementSet::nonzero(&g); 3], u128::MAX).unwrap();
        assert_eq!(rep.min, all);
    }

    #[test]
    fn fixture() {
        for n in 1..=2 {
            let rep = order4_fixture(n).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        assert!(order4_fixture(3).is_err());
    }
}
