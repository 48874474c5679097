//! Echelon generating sets of `ℤ_n^M`, their F-sets, the block-by-block
//! solution constructor, lex-least generators of cyclic subgroups, and
//! classification of 1-translates inside a larger translate.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::abgroup::GroupSpec;
use crate::arith::gcd_u64;
use crate::columns::{ColumnsCertificate, Ring};
use crate::count::Coloring;
use crate::intmat::{k_determinantal, residue, IntMatrix};
use crate::{Error, Result};

/// Pivots of an echelon tuple: the leading coordinate of every vector is 1
/// and all earlier coordinates are 0. Pivots are 0-based, nondecreasing, and
/// strictly increasing when `strict`. `None` when the shape fails.
pub fn is_echelon(vectors: &[Vec<u64>], n: u64, strict: bool) -> Option<Vec<usize>> {
    let mut pivots: Vec<usize> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let lead = v.iter().position(|&c| c % n != 0)?;
        if v[lead] % n != 1 % n {
            return None;
        }
        if let Some(&prev) = pivots.last() {
            if lead < prev || (strict && lead == prev) {
                return None;
            }
        }
        pivots.push(lead);
    }
    Some(pivots)
}

/// An echelon tuple `(x₁, …, x_t)` in `ℤ_n^M` generating a copy of `ℤ_n^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonBasis {
    ambient: GroupSpec,
    n: u64,
    vectors: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl SkeletonBasis {
    pub fn new(n: u64, dim: usize, vectors: Vec<Vec<u64>>, strict: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("skeleton modulus must be at least 2"));
        }
        let ambient = GroupSpec::power(n, dim)?;
        for v in &vectors {
            ambient.check_element(v)?;
        }
        let pivots =
            is_echelon(&vectors, n, strict).ok_or_else(|| Error::invalid("vectors are not in echelon form"))?;
        if vectors.is_empty() || vectors.len() > dim {
            return Err(Error::invalid("need between 1 and M basis vectors"));
        }
        // ⟨x₁,…,x_t⟩ ≅ ℤ_n^t iff the t×t minors generate the unit ideal mod n.
        let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().map(|&c| BigInt::from(c)).collect()).collect();
        let d = k_determinantal(&IntMatrix::from_rows(rows)?);
        if gcd_u64(residue(&d, &BigInt::from(n)), n) != 1 {
            return Err(Error::invalid("basis vectors do not generate a copy of Z_n^t"));
        }
        Ok(SkeletonBasis { ambient, n, vectors, pivots })
    }

    /// The standard basis `(e₁, …, e_t)` of `ℤ_n^M`.
    pub fn standard(n: u64, dim: usize, t: usize) -> Result<Self> {
        let vectors = (0..t)
            .map(|i| {
                let mut v = vec![0; dim];
                if i < dim {
                    v[i] = 1;
                }
                v
            })
            .collect();
        Self::new(n, dim, vectors, true)
    }

    pub fn ambient(&self) -> &GroupSpec {
        &self.ambient
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.pivots.windows(2).all(|w| w[0] < w[1])
    }
}

/// `F(x₁, …, x_t) = {xᵢ + Σ_{j>i} aⱼxⱼ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSet {
    elements: Vec<Vec<u64>>,
    ranks: BTreeSet<u64>,
}

impl FSet {
    /// Elements in generation order: by `i`, then by the tail coefficients in lex order.
    pub fn elements(&self) -> &[Vec<u64>] {
        &self.elements
    }

    pub fn ranks(&self) -> &BTreeSet<u64> {
        &self.ranks
    }

    pub fn contains_rank(&self, rank: u64) -> bool {
        self.ranks.contains(&rank)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

pub fn f_set(basis: &SkeletonBasis) -> FSet {
    let g = &basis.ambient;
    let n = basis.n;
    let t = basis.len();
    let mut elements = Vec::new();
    for i in 0..t {
        let tail = t - i - 1;
        let mut coeffs = vec![0u64; tail];
        'tails: loop {
            let mut z = basis.vectors[i].clone();
            for (a, x) in coeffs.iter().zip(&basis.vectors[i + 1..]) {
                g.add_assign(&mut z, &g.scale(x, *a));
            }
            elements.push(z);
            for pos in (0..tail).rev() {
                coeffs[pos] += 1;
                if coeffs[pos] < n {
                    continue 'tails;
                }
                coeffs[pos] = 0;
            }
            break;
        }
    }
    let ranks = elements.iter().map(|z| g.rank_of(z)).collect();
    FSet { elements, ranks }
}

/// Builds `y` with `A y = 0` from a `ModN(n)` certificate and a basis with at
/// least as many vectors as blocks. Block 1 gets `x₁`; entering block `i+1`,
/// every earlier column `j` is shifted by `−λ_{i+1,j}·x_{i+1}` and the block's
/// own columns get `x_{i+1}`. The result is indexed by the columns of `a`.
pub fn skeleton_solution(a: &IntMatrix, cert: &ColumnsCertificate, basis: &SkeletonBasis) -> Result<Vec<Vec<u64>>> {
    let n = basis.n;
    if cert.ring() != Ring::ModN(n) {
        return Err(Error::invalid(format!("certificate must be over Z{n}")));
    }
    cert.verify(a)?;
    let blocks = cert.num_blocks();
    if basis.len() < blocks {
        return Err(Error::invalid(format!(
            "basis has {} vectors but the certificate has {blocks} blocks",
            basis.len()
        )));
    }
    let g = &basis.ambient;
    let m = a.cols();
    let mut y: Vec<Vec<u64>> = vec![g.zero(); m];
    for b in 0..blocks {
        let x = &basis.vectors[b];
        let start = if b == 0 { 0 } else { cert.breakpoints()[b - 1] };
        for (j, slot) in y.iter_mut().enumerate().take(start) {
            let l = cert.lambda_mod(b, j, n);
            *slot = g.add(slot, &g.neg(&g.scale(x, l)));
        }
        for slot in &mut y[start..cert.breakpoints()[b]] {
            slot.clone_from(x);
        }
    }
    let mut out = vec![Vec::new(); m];
    for (p, &c) in cert.order().iter().enumerate() {
        out[c] = core::mem::take(&mut y[p]);
    }

    let f = f_set(basis);
    if !evaluates_to_zero(a, g, &out) {
        return Err(Error::internal("skeleton solution does not solve the system"));
    }
    if out.iter().any(|z| !f.contains_rank(g.rank_of(z)) || g.element_order(z) != n) {
        return Err(Error::internal("skeleton solution left the F-set"));
    }
    Ok(out)
}

/// Whether `Σ_j a_{ij} y_j = 0` for every row.
pub fn evaluates_to_zero(a: &IntMatrix, g: &GroupSpec, y: &[Vec<u64>]) -> bool {
    let n = BigInt::from(g.exponent());
    (0..a.rows()).all(|i| {
        let mut acc = g.zero();
        for (c, z) in a.row(i).iter().zip(y) {
            g.add_assign(&mut acc, &g.scale(z, residue(c, &n)));
        }
        acc.iter().all(|&v| v == 0)
    })
}

/// Lex-least generator of `⟨x⟩`: the least-ranked `c·x` with `gcd(c, ord x) = 1`.
pub fn canonical_generator_of(g: &GroupSpec, x: &[u64]) -> Vec<u64> {
    let d = g.element_order(x);
    (1..=d)
        .filter(|&c| gcd_u64(c, d) == 1)
        .map(|c| g.scale(x, c))
        .min_by_key(|z| g.rank_of(z))
        .expect("c = 1 qualifies")
}

/// Lex-least generator of the subgroup with element ranks `h`.
pub fn canonical_generator(g: &GroupSpec, h: &[u64]) -> Result<Vec<u64>> {
    let set: BTreeSet<u64> = h.iter().copied().collect();
    if !set.contains(&0) {
        return Err(Error::invalid("subgroup must contain the identity"));
    }
    let size = set.len() as u64;
    for &r in &set {
        let x = g.element(r);
        if g.element_order(&x) == size && (1..size).all(|c| set.contains(&g.rank_of(&g.scale(&x, c)))) {
            return Ok(x);
        }
    }
    Err(Error::invalid("subgroup is not cyclic"))
}

/// Colors of cyclic subgroups, keyed by the rank of their lex-least
/// generator: `χ′(T) = χ(min generator of T)`.
pub fn lift_coloring(chi: &Coloring) -> BTreeMap<u64, u32> {
    let g = chi.group();
    let mut out = BTreeMap::new();
    for r in 1..g.order() {
        let key = g.rank_of(&canonical_generator_of(g, &g.element(r)));
        out.entry(key).or_insert_with(|| chi.color(key).expect("nonzero"));
    }
    out
}

/// `χ′(⟨x⟩)` for nonzero `x`.
pub fn induced_color(chi: &Coloring, x: &[u64]) -> Option<u32> {
    let g = chi.group();
    chi.color(g.rank_of(&canonical_generator_of(g, x)))
}

/// A coset `base + ⟨generators⟩` of a subgroup `≅ ℤ_n^dim`, in canonical
/// form: `base` is the lex-least member and `generators` is the greedy
/// lex-least basis of the subgroup.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Translate {
    base: Vec<u64>,
    generators: Vec<Vec<u64>>,
}

impl Translate {
    /// Canonicalizes `base + ⟨generators⟩`; the subgroup must be `≅ ℤ_n^i`
    /// with `n` the exponent of `g`.
    pub fn new(g: &GroupSpec, base: Vec<u64>, generators: &[Vec<u64>]) -> Result<Self> {
        g.check_element(&base)?;
        for x in generators {
            g.check_element(x)?;
        }
        let sub = span(g, generators);
        let n = g.exponent();
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut current: BTreeSet<u64> = BTreeSet::from([0]);
        for &r in &sub {
            if current.contains(&r) {
                continue;
            }
            let x = g.element(r);
            if g.element_order(&x) != n {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(x);
            let next = span(g, &trial);
            if next.len() == current.len() * n as usize {
                basis = trial;
                current = next;
            }
        }
        if current.len() != sub.len() {
            return Err(Error::invalid(format!("subgroup is not a power of Z{n}")));
        }
        let base = sub
            .iter()
            .map(|&r| g.add(&base, &g.element(r)))
            .min_by_key(|z| g.rank_of(z))
            .expect("subgroup is nonempty");
        Ok(Translate { base, generators: basis })
    }

    /// The whole group, when it is `≅ ℤ_n^s`.
    pub fn whole(g: &GroupSpec) -> Result<Self> {
        let gens: Vec<Vec<u64>> = (0..g.num_factors())
            .map(|i| {
                let mut e = g.zero();
                e[i] = 1;
                e
            })
            .collect();
        Self::new(g, g.zero(), &gens)
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// `i` with `T₀ ≅ ℤ_n^i`.
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    /// Sorted member ranks.
    pub fn elements(&self, g: &GroupSpec) -> Vec<u64> {
        let mut out: Vec<u64> =
            span(g, &self.generators).into_iter().map(|r| g.rank_of(&g.add(&self.base, &g.element(r)))).collect();
        out.sort_unstable();
        out
    }
}

/// Ranks of the subgroup generated by `gens`, ascending.
fn span(g: &GroupSpec, gens: &[Vec<u64>]) -> BTreeSet<u64> {
    let mut set: BTreeSet<u64> = BTreeSet::from([0]);
    for x in gens {
        let members: Vec<Vec<u64>> = set.iter().map(|&r| g.element(r)).collect();
        let mut c = x.clone();
        while !set.contains(&g.rank_of(&c)) {
            for h in &members {
                set.insert(g.rank_of(&g.add(h, &c)));
            }
            c = g.add(&c, x);
        }
    }
    set
}

/// Every 1-translate inside `within` (the whole group when `None`), in
/// ascending canonical order.
pub fn enumerate_one_translates(g: &GroupSpec, within: Option<&Translate>, bound: u64) -> Result<Vec<Translate>> {
    if g.order() > bound {
        return Err(Error::Capacity { what: "translate enumeration", needed: g.order() as u128, limit: bound as u128 });
    }
    let whole;
    let b = match within {
        Some(b) => b,
        None => {
            whole = Translate::whole(g)?;
            &whole
        }
    };
    let n = g.exponent();
    let b0 = span(g, &b.generators);
    let members = b.elements(g);
    let generators: BTreeSet<u64> = b0
        .iter()
        .map(|&r| g.element(r))
        .filter(|x| g.element_order(x) == n)
        .map(|x| g.rank_of(&canonical_generator_of(g, &x)))
        .collect();
    let mut out = BTreeSet::new();
    for gen in generators {
        let gen = vec![g.element(gen)];
        let mut covered: BTreeSet<u64> = BTreeSet::new();
        for &r in &members {
            if covered.contains(&r) {
                continue;
            }
            let t = Translate::new(g, g.element(r), &gen)?;
            covered.extend(t.elements(g));
            out.insert(t);
        }
    }
    Ok(out.into_iter().collect())
}

/// Position of a 1-translate relative to the projection onto the first `u` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TranslateKind {
    /// `p(T₀) ≅ ℤ_n`.
    Transverse,
    /// `p(T₀) = {0}`.
    Vertical,
    /// `p(T₀)` is a proper nontrivial subgroup.
    Degenerate,
}

fn project(x: &[u64], u: usize) -> Vec<u64> {
    x[..u].to_vec()
}

pub fn classify_translate(g: &GroupSpec, t: &Translate, b: &Translate, u: usize) -> Result<TranslateKind> {
    if t.dimension() != 1 {
        return Err(Error::invalid("classification needs a 1-translate"));
    }
    if u > g.num_factors() {
        return Err(Error::invalid("projection uses more coordinates than the group has"));
    }
    let outer: BTreeSet<u64> = b.elements(g).into_iter().collect();
    if !t.elements(g).iter().all(|r| outer.contains(r)) {
        return Err(Error::invalid("translate is not contained in the outer translate"));
    }
    let image = project(&t.generators[0], u);
    let n = g.exponent();
    let order = image.iter().fold(1, |acc, &c| crate::arith::lcm_u64(acc, n / gcd_u64(c, n)));
    Ok(if order == 1 {
        TranslateKind::Vertical
    } else if order == n {
        TranslateKind::Transverse
    } else {
        TranslateKind::Degenerate
    })
}

/// Whether transverse 1-translates of `b` with equal projections share a
/// color; on failure, the first violating pair in canonical order.
pub fn is_special(
    g: &GroupSpec,
    b: &Translate,
    u: usize,
    colors: &BTreeMap<Translate, u32>,
) -> Result<core::result::Result<(), (Translate, Translate)>> {
    let mut by_image: BTreeMap<Vec<Vec<u64>>, (Translate, u32)> = BTreeMap::new();
    for t in enumerate_one_translates(g, Some(b), u64::MAX)? {
        if classify_translate(g, &t, b, u)? != TranslateKind::Transverse {
            continue;
        }
        let color =
            *colors.get(&t).ok_or_else(|| Error::invalid("translate coloring does not cover every 1-translate"))?;
        let mut image: Vec<Vec<u64>> = t.elements(g).iter().map(|&r| project(&g.element(r), u)).collect();
        image.sort();
        image.dedup();
        match by_image.get(&image) {
            Some((first, c)) if *c != color => return Ok(Err((first.clone(), t))),
            Some(_) => {}
            None => {
                by_image.insert(image, (t, color));
            }
        }
    }
    Ok(Ok(()))
}
