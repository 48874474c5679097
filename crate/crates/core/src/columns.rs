//! Columns conditions over ℤ, ℚ and ℤ/nℤ, and the reduction of a matrix
//! satisfying the n-columns condition to one with unit `k`-determinantal.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use crate::intmat::Ring;
use crate::intmat::{
    k_determinantal, module_membership, rational_rank, residue, smith_normal_form, verify_combination, IntMatrix,
};
use crate::{Error, Result};

/// Default cap on the number of columns for the exhaustive certificate search.
pub const DEFAULT_COLUMN_BOUND: usize = 9;

/// Witness of a columns condition: after permuting columns by `order`, the
/// blocks end at `breakpoints` (strictly increasing, last = m), the first
/// block sums to zero, and block `i > 0` sums to `Σ_j lambda[i-1][j] · A^{order[j]}`
/// over the `breakpoints[i-1]` earlier columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnsCertificate {
    ring: Ring,
    order: Vec<usize>,
    breakpoints: Vec<usize>,
    lambda: Vec<Vec<BigRational>>,
}

impl ColumnsCertificate {
    /// Checks the shape only; use [`ColumnsCertificate::verify`] against a matrix.
    pub fn new(ring: Ring, order: Vec<usize>, breakpoints: Vec<usize>, lambda: Vec<Vec<BigRational>>) -> Result<Self> {
        let ring = ring.validate()?;
        let m = order.len();
        let mut seen = vec![false; m];
        for &c in &order {
            if c >= m || core::mem::replace(&mut seen[c], true) {
                return Err(Error::invalid("certificate order is not a permutation"));
            }
        }
        if breakpoints.is_empty() || breakpoints[0] == 0 || breakpoints.last() != Some(&m) {
            return Err(Error::invalid("breakpoints must start above 0 and end at m"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("breakpoints must be strictly increasing"));
        }
        if lambda.len() + 1 != breakpoints.len() {
            return Err(Error::invalid("need one coefficient list per block after the first"));
        }
        if lambda.iter().zip(&breakpoints).any(|(l, &k)| l.len() != k) {
            return Err(Error::invalid("coefficient list length must equal the number of earlier columns"));
        }
        if !matches!(ring, Ring::Rationals) && lambda.iter().flatten().any(|l| !l.is_integer()) {
            return Err(Error::invalid("coefficients must be integral outside the rationals"));
        }
        Ok(ColumnsCertificate { ring, order, breakpoints, lambda })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    pub fn lambda(&self) -> &[Vec<BigRational>] {
        &self.lambda
    }

    pub fn num_blocks(&self) -> usize {
        self.breakpoints.len()
    }

    /// Original column indices of block `i`, in certificate order.
    pub fn block(&self, i: usize) -> &[usize] {
        let start = if i == 0 { 0 } else { self.breakpoints[i - 1] };
        &self.order[start..self.breakpoints[i]]
    }

    /// Integer coefficient `λ_{i,j}` reduced into `[0, n)`, for `ModN(n)` certificates.
    pub(crate) fn lambda_mod(&self, block: usize, j: usize, n: u64) -> u64 {
        residue(&self.lambda[block - 1][j].to_integer(), &BigInt::from(n))
    }

    /// Re-checks every block equation of the certificate against `a` by substitution.
    pub fn verify(&self, a: &IntMatrix) -> Result<()> {
        if self.order.len() != a.cols() {
            return Err(Error::invalid(format!(
                "certificate covers {} columns, matrix has {}",
                self.order.len(),
                a.cols()
            )));
        }
        let cols: Vec<Vec<BigInt>> = self.order.iter().map(|&c| a.column(c)).collect();
        for i in 0..self.num_blocks() {
            let start = if i == 0 { 0 } else { self.breakpoints[i - 1] };
            let s = column_sum(&cols[start..self.breakpoints[i]], a.rows());
            let ok = if i == 0 {
                is_zero_in(&s, self.ring)
            } else {
                verify_combination(&s, &cols[..start], &self.lambda[i - 1], self.ring)
            };
            if !ok {
                return Err(Error::invalid(format!("certificate equation for block {} fails", i + 1)));
            }
        }
        Ok(())
    }
}

fn column_sum(cols: &[Vec<BigInt>], k: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); k];
    for col in cols {
        for (x, y) in s.iter_mut().zip(col) {
            *x += y;
        }
    }
    s
}

fn is_zero_in(v: &[BigInt], ring: Ring) -> bool {
    match ring {
        Ring::ModN(n) => {
            let n = BigInt::from(n);
            v.iter().all(|x| x.is_multiple_of(&n))
        }
        _ => v.iter().all(Zero::is_zero),
    }
}

/// Whether the columns of `a` sum to the zero vector over ℤ.
pub fn strong_column_condition(a: &IntMatrix) -> bool {
    let cols: Vec<Vec<BigInt>> = (0..a.cols()).map(|j| a.column(j)).collect();
    column_sum(&cols, a.rows()).iter().all(Zero::is_zero)
}

struct Search {
    cols: Vec<Vec<BigInt>>,
    k: usize,
    ring: Ring,
    failed: BTreeSet<(u32, usize)>,
    path: Vec<(Vec<usize>, Option<Vec<BigRational>>)>,
}

impl Search {
    /// Nonempty subsets of the unused columns as ascending index lists, in lex order.
    fn candidates(&self, used: u32) -> Vec<Vec<usize>> {
        let free: Vec<usize> = (0..self.cols.len()).filter(|&c| used >> c & 1 == 0).collect();
        let mut out: Vec<Vec<usize>> = (1u32..1 << free.len())
            .map(|mask| free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c).collect())
            .collect();
        out.sort();
        out
    }

    fn earlier(&self) -> Vec<Vec<BigInt>> {
        self.path.iter().flat_map(|(b, _)| b.iter().map(|&c| self.cols[c].clone())).collect()
    }

    fn accept(&self, block: &[usize]) -> Result<Option<Option<Vec<BigRational>>>> {
        let s = column_sum(&block.iter().map(|&c| self.cols[c].clone()).collect::<Vec<_>>(), self.k);
        if self.path.is_empty() {
            return Ok(is_zero_in(&s, self.ring).then_some(None));
        }
        Ok(module_membership(&s, &self.earlier(), self.ring)?.map(Some))
    }

    fn dfs(&mut self, used: u32, left: usize) -> Result<bool> {
        let m = self.cols.len();
        let remaining = m - used.count_ones() as usize;
        if left == 0 {
            return Ok(remaining == 0);
        }
        if remaining < left || self.failed.contains(&(used, left)) {
            return Ok(false);
        }
        let options =
            if left == 1 { vec![(0..m).filter(|&c| used >> c & 1 == 0).collect()] } else { self.candidates(used) };
        for block in options {
            if remaining - block.len() < left - 1 {
                continue;
            }
            if let Some(lambda) = self.accept(&block)? {
                let mask = block.iter().fold(used, |acc, &c| acc | 1 << c);
                self.path.push((block, lambda));
                if self.dfs(mask, left - 1)? {
                    return Ok(true);
                }
                self.path.pop();
            }
        }
        self.failed.insert((used, left));
        Ok(false)
    }
}

/// Searches for a columns-condition certificate of `a` over `ring`.
///
/// The search is exhaustive over ordered set partitions of the columns, so
/// `None` proves that no certificate exists. Certificates with fewer blocks
/// are preferred; among those, the first in lexicographic order of the blocks'
/// ascending column lists is returned.
pub fn check_columns_condition(a: &IntMatrix, ring: Ring, bound: usize) -> Result<Option<ColumnsCertificate>> {
    let ring = ring.validate()?;
    let m = a.cols();
    if m > bound || m > 31 {
        return Err(Error::Capacity { what: "columns search", needed: m as u128, limit: bound.min(31) as u128 });
    }
    let mut search = Search {
        cols: (0..m).map(|j| a.column(j)).collect(),
        k: a.rows(),
        ring,
        failed: BTreeSet::new(),
        path: Vec::new(),
    };
    for t in 1..=m {
        search.path.clear();
        if search.dfs(0, t)? {
            let mut order = Vec::with_capacity(m);
            let mut breakpoints = Vec::new();
            let mut lambda = Vec::new();
            for (block, l) in search.path.drain(..) {
                order.extend(block);
                breakpoints.push(order.len());
                lambda.extend(l);
            }
            let cert = ColumnsCertificate::new(ring, order, breakpoints, lambda)?;
            cert.verify(a).map_err(|_| Error::internal("search produced an invalid certificate"))?;
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Lifts a `ModN(n)` certificate to ℤ: returns `A″ ≡ A (mod n)` together with
/// the same order and breakpoints and integer coefficients, such that every
/// block equation holds exactly over ℤ. The lowest-indexed column of each
/// block absorbs that block's defect.
pub fn lift_certificate_to_z(a: &IntMatrix, cert: &ColumnsCertificate) -> Result<(IntMatrix, ColumnsCertificate)> {
    let designated: Vec<usize> =
        (0..cert.num_blocks()).map(|i| *cert.block(i).iter().min().expect("blocks are nonempty")).collect();
    lift_with(a, cert, &designated)
}

fn lift_with(
    a: &IntMatrix,
    cert: &ColumnsCertificate,
    designated: &[usize],
) -> Result<(IntMatrix, ColumnsCertificate)> {
    let Ring::ModN(n) = cert.ring else {
        return Err(Error::invalid("lifting needs a certificate over Z_n"));
    };
    cert.verify(a)?;
    let mut cols: Vec<Vec<BigInt>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let lambda: Vec<Vec<BigInt>> = (1..cert.num_blocks())
        .map(|i| (0..cert.breakpoints[i - 1]).map(|j| BigInt::from(cert.lambda_mod(i, j, n))).collect())
        .collect();
    let modulus = BigInt::from(n);
    for (i, &d) in designated.iter().enumerate() {
        let block = cert.block(i);
        let mut defect = column_sum(&block.iter().map(|&c| cols[c].clone()).collect::<Vec<_>>(), a.rows());
        if i > 0 {
            let earlier = &cert.order[..cert.breakpoints[i - 1]];
            for (l, &c) in lambda[i - 1].iter().zip(earlier) {
                for (x, y) in defect.iter_mut().zip(&cols[c]) {
                    *x -= l * y;
                }
            }
        }
        if !defect.iter().all(|x| x.is_multiple_of(&modulus)) {
            return Err(Error::internal("certificate defect is not divisible by n"));
        }
        for (x, y) in cols[d].iter_mut().zip(&defect) {
            *x -= y;
        }
    }
    let rows: Vec<Vec<BigInt>> = (0..a.rows()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let lifted = IntMatrix::from_rows(rows)?;
    let lifted_cert = ColumnsCertificate::new(
        Ring::Integers,
        cert.order.clone(),
        cert.breakpoints.clone(),
        lambda.into_iter().map(|l| l.into_iter().map(BigRational::from_integer).collect()).collect(),
    )?;
    lifted_cert.verify(&lifted).map_err(|_| Error::internal("lifted certificate failed over Z"))?;
    Ok((lifted, lifted_cert))
}

/// Everything produced while reducing `A` to `A′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// `ModN(n)` certificate of the input.
    pub certificate: ColumnsCertificate,
    /// `A″`, the integer lift of `A` (equal to `A` on the shortcut path).
    pub lifted: IntMatrix,
    /// Smith diagonal of `A″` (empty on the shortcut path).
    pub diagonal: Vec<BigInt>,
    /// `A′` with `d_k(A′) = 1`.
    pub reduced: IntMatrix,
    /// `ModN(n)` certificate of `A′` with the input's order and breakpoints.
    pub reduced_certificate: ColumnsCertificate,
    /// Whether `d_k(A) = 1` made `A′ = A`.
    pub shortcut: bool,
}

/// Reduces `a`, which must satisfy the n-columns condition and have full
/// row rank, to `A′` with `d_k(A′) = 1` whose solutions over any group of
/// exponent `n` are solutions of `a`.
///
/// `A′ = D⁻¹·U·A″` where `U·A″·V = (D | 0)` is the Smith form of the lift.
/// Rows of `A′` are normalized so their first nonzero entry is positive.
pub fn reduce_matrix(a: &IntMatrix, n: u64, bound: usize) -> Result<Reduction> {
    let ring = Ring::ModN(n).validate()?;
    let rank = rational_rank(&a.to_rows());
    if rank < a.rows() {
        return Err(Error::RankDeficient { rank, rows: a.rows(), context: "input matrix" });
    }
    let certificate = check_columns_condition(a, ring, bound)?
        .ok_or_else(|| Error::NoCertificate(format!("matrix does not satisfy the {n}-columns condition")))?;
    if k_determinantal(a).is_one() {
        return Ok(Reduction {
            reduced_certificate: certificate.clone(),
            certificate,
            lifted: a.clone(),
            diagonal: Vec::new(),
            reduced: a.clone(),
            shortcut: true,
        });
    }

    let (lifted, lifted_cert) = full_rank_lift(a, &certificate)?;
    let snf = smith_normal_form(&lifted);
    if !snf.verify(&lifted) {
        return Err(Error::internal("Smith decomposition failed verification"));
    }
    let b = snf.u().mul(&lifted)?;
    let mut rows = b.to_rows();
    for (row, d) in rows.iter_mut().zip(snf.diagonal()) {
        if d.is_zero() || !row.iter().all(|x| x.is_multiple_of(d)) {
            return Err(Error::internal("row of U·A″ is not divisible by its invariant factor"));
        }
        for x in row.iter_mut() {
            *x /= d;
        }
        if row.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    let reduced = IntMatrix::from_rows(rows)?;
    if !k_determinantal(&reduced).is_one() {
        return Err(Error::internal("reduced matrix does not have unit determinantal divisor"));
    }
    let modulus = BigInt::from(n);
    let reduced_certificate = ColumnsCertificate::new(
        ring,
        lifted_cert.order.clone(),
        lifted_cert.breakpoints.clone(),
        lifted_cert
            .lambda
            .iter()
            .map(|l| l.iter().map(|x| BigRational::from_integer(x.to_integer().mod_floor(&modulus))).collect())
            .collect(),
    )?;
    reduced_certificate.verify(&reduced).map_err(|_| Error::internal("reduced matrix lost the columns condition"))?;
    Ok(Reduction {
        certificate,
        lifted,
        diagonal: snf.diagonal().to_vec(),
        reduced,
        reduced_certificate,
        shortcut: false,
    })
}

/// Lifts with the lowest-index designation, falling back to other
/// designations in lexicographic order when the lift loses rank.
fn full_rank_lift(a: &IntMatrix, cert: &ColumnsCertificate) -> Result<(IntMatrix, ColumnsCertificate)> {
    let blocks: Vec<Vec<usize>> = (0..cert.num_blocks())
        .map(|i| {
            let mut b = cert.block(i).to_vec();
            b.sort_unstable();
            b
        })
        .collect();
    let mut choice = vec![0usize; blocks.len()];
    loop {
        let designated: Vec<usize> = choice.iter().zip(&blocks).map(|(&c, b)| b[c]).collect();
        let (lifted, lifted_cert) = lift_with(a, cert, &designated)?;
        let rank = rational_rank(&lifted.to_rows());
        if rank == a.rows() {
            return Ok((lifted, lifted_cert));
        }
        // Advance the mixed-radix counter, last block fastest.
        let mut i = blocks.len();
        loop {
            if i == 0 {
                return Err(Error::RankDeficient { rank, rows: a.rows(), context: "lifted matrix" });
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < blocks[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}
