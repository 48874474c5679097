#![allow(dead_code)]

use rado_core::GroupSpec;

/// Every invariant-factor chain with order at most `bound`, trivial group excluded.
pub fn groups_up_to(bound: u64) -> Vec<GroupSpec> {
    fn extend(chain: &mut Vec<u64>, order: u64, bound: u64, out: &mut Vec<GroupSpec>) {
        let last = chain.last().copied().unwrap_or(1);
        let mut next = if last == 1 { 2 } else { last };
        while order * next <= bound {
            if next % last == 0 {
                chain.push(next);
                out.push(GroupSpec::new(chain.clone()).unwrap());
                extend(chain, order * next, bound, out);
                chain.pop();
            }
            next += if last == 1 { 1 } else { last };
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, bound, &mut out);
    out.sort();
    out
}

/// Groups of exponent exactly `n` and order at most `bound`.
pub fn groups_of_exponent(n: u64, bound: u64) -> Vec<GroupSpec> {
    groups_up_to(bound).into_iter().filter(|g| g.exponent() == n).collect()
}

/// Independent evaluation of `Σ_j a_{ij} y_j` in `g`.
pub fn solves(a: &[Vec<i64>], g: &GroupSpec, y: &[Vec<u64>]) -> bool {
    let n = g.exponent() as i64;
    a.iter().all(|row| {
        let mut acc = g.zero();
        for (&c, z) in row.iter().zip(y) {
            acc = g.add(&acc, &g.scale(z, c.rem_euclid(n) as u64));
        }
        acc.iter().all(|&v| v == 0)
    })
}

/// Lex-least generator of `⟨z⟩` by comparing generated sets.
pub fn lex_least_generator(g: &GroupSpec, z: &[u64]) -> Vec<u64> {
    let span = |x: &[u64]| {
        let mut set = std::collections::BTreeSet::new();
        let mut c = g.zero();
        loop {
            if !set.insert(g.rank_of(&c)) {
                break;
            }
            c = g.add(&c, x);
        }
        set
    };
    let target = span(z);
    target.iter().map(|&r| g.element(r)).filter(|x| span(x) == target).min_by_key(|x| g.rank_of(x)).unwrap()
}
