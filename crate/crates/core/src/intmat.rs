//! Exact integer linear algebra: determinants and determinantal divisors,
//! Smith normal form with unimodular transforms, rank, and module membership
//! over ℤ (Hermite form), ℚ (fraction-free elimination) and ℤ/nℤ (Howell form).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

type Rows = Vec<Vec<BigInt>>;

/// The coefficient ring of a columns condition or membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    /// ℤ/nℤ; requires `n ≥ 2`.
    ModN(u64),
}

impl Ring {
    pub fn validate(self) -> Result<Self> {
        match self {
            Ring::ModN(n) if n < 2 => Err(Error::invalid(format!("ring Z{n} needs modulus >= 2"))),
            r => Ok(r),
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::ModN(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::ModN(n) => write!(f, "Z{n}"),
        }
    }
}

/// Dense `k × m` integer matrix with `1 ≤ k ≤ m`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 {
            return Err(Error::invalid("matrix needs at least one row"));
        }
        if cols < rows {
            return Err(Error::invalid(format!("matrix is {rows}x{cols}; need at least as many columns as rows")));
        }
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let k = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        Self::new(k, m, rows.into_iter().flatten().collect())
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Rows {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries reduced into `[0, n)`.
    pub fn residues(&self, n: u64) -> Vec<Vec<u64>> {
        let modulus = BigInt::from(n);
        (0..self.rows).map(|i| self.row(i).iter().map(|x| residue(x, &modulus)).collect()).collect()
    }

    /// Matrix made of the given columns, in the given order.
    pub fn select_columns(&self, order: &[usize]) -> Result<Self> {
        if order.iter().any(|&j| j >= self.cols) {
            return Err(Error::invalid("column index out of range"));
        }
        let data = (0..self.rows)
            .flat_map(|i| order.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self::new(self.rows, order.len(), data)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid("dimension mismatch in matrix product"));
        }
        let prod = mat_mul(&self.to_rows(), &other.to_rows());
        IntMatrix::from_rows(prod)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

pub(crate) fn residue(x: &BigInt, n: &BigInt) -> u64 {
    u64::try_from(x.mod_floor(n)).expect("residue below a u64 modulus")
}

fn mat_mul(a: &Rows, b: &Rows) -> Rows {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|l| &row[l] * &b[l][j]).sum()).collect()).collect()
}

/// Determinant of a square matrix given as rows (Bareiss elimination).
pub fn determinant(square: &[Vec<BigInt>]) -> BigInt {
    let n = square.len();
    let mut a: Rows = square.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
    if negate {
        -det
    } else {
        det
    }
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..m {
            if m - j < k - cur.len() {
                break;
            }
            cur.push(j);
            go(j + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all `k × k` minors; zero exactly when the rank is below `k`.
pub fn k_determinantal(a: &IntMatrix) -> BigInt {
    let k = a.rows;
    combinations(a.cols, k).into_iter().fold(BigInt::zero(), |g, cols| {
        let minor: Rows = (0..k).map(|i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
        g.gcd(&determinant(&minor))
    })
}

/// `U · A · V = (diag(d₁,…,d_k) | 0)` with `U`, `V` unimodular and `d₁ | d₂ | … | d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    u: IntMatrix,
    v: IntMatrix,
    diagonal: Vec<BigInt>,
}

impl SnfDecomposition {
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn diagonal(&self) -> &[BigInt] {
        &self.diagonal
    }

    /// Re-checks every invariant against the source matrix.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let Ok(prod) = self.u.mul(a).and_then(|ua| ua.mul(&self.v)) else {
            return false;
        };
        let shape_ok = (0..a.rows).all(|i| {
            (0..a.cols).all(|j| {
                let expected = if i == j { self.diagonal[i].clone() } else { BigInt::zero() };
                *prod.get(i, j) == expected
            })
        });
        let chain_ok =
            self.diagonal.iter().all(|d| !d.is_negative())
                && self.diagonal.windows(2).all(|w| {
                    if w[0].is_zero() {
                        w[1].is_zero()
                    } else {
                        w[1].is_multiple_of(&w[0])
                    }
                });
        shape_ok
            && chain_ok
            && determinant(&self.u.to_rows()).abs().is_one()
            && determinant(&self.v.to_rows()).abs().is_one()
    }
}

/// Smith normal form. Pivots are chosen as the entry of least absolute
/// value, lowest row-major index first, so the output is deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (k, m) = (a.rows, a.cols);
    let mut d = a.to_rows();
    let mut u = IntMatrix::identity(k).to_rows();
    let mut v = IntMatrix::identity(m).to_rows();

    for t in 0..k {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..k {
                for j in t..m {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            if pi != t {
                d.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                for row in d.iter_mut() {
                    row.swap(pj, t);
                }
                for row in v.iter_mut() {
                    row.swap(pj, t);
                }
            }

            let mut clean = true;
            for i in t + 1..k {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..m {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..k).find(|&i| (t + 1..m).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_sub(&mut d, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }

    let diagonal = (0..k).map(|i| d[i][i].clone()).collect();
    SnfDecomposition {
        u: IntMatrix::from_rows(u).expect("square transform"),
        v: IntMatrix::from_rows(v).expect("square transform"),
        diagonal,
    }
}

// row_dst -= q * row_src
fn row_sub(rows: &mut Rows, dst: usize, src: usize, q: &BigInt) {
    let src_row = rows[src].clone();
    for (x, s) in rows[dst].iter_mut().zip(&src_row) {
        *x -= q * s;
    }
}

// col_dst -= q * col_src
fn col_sub(rows: &mut Rows, dst: usize, src: usize, q: &BigInt) {
    for row in rows.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

/// Rational rank. Rank over ℤ/nℤ is not defined here.
pub fn rank(a: &IntMatrix, ring: Ring) -> Result<usize> {
    match ring {
        Ring::ModN(_) => Err(Error::invalid("rank is only defined over Z or Q")),
        _ => Ok(rational_rank(&a.to_rows())),
    }
}

pub(crate) fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Rows = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (pivot, lead) = (a[r][c].clone(), a[i][c].clone());
            let (head, tail) = a.split_at_mut(i);
            for (x, y) in tail[0][c..cols].iter_mut().zip(&head[r][c..cols]) {
                *x = &*x * &pivot - &lead * y;
            }
        }
        r += 1;
    }
    r
}

/// Row Hermite normal form with the unimodular transform: `T · R = E`,
/// pivots positive, entries above each pivot reduced into `[0, pivot)`.
/// Zero rows of `E` sit at the bottom.
pub(crate) struct Hermite {
    pub echelon: Rows,
    pub transform: Rows,
    /// `(row, column)` of each pivot, rows `0..rank`.
    pub pivots: Vec<(usize, usize)>,
}

pub(crate) fn hermite_rows(rows: &[Vec<BigInt>], width: usize) -> Hermite {
    let s = rows.len();
    let mut e: Rows = rows.to_vec();
    let mut t = IntMatrix::identity(s).to_rows();
    if s == 0 {
        t.clear();
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == s {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..s {
                if !e[i][c].is_zero() && best.is_none_or(|b| e[i][c].abs() < e[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            e.swap(b, r);
            t.swap(b, r);
            let mut done = true;
            for i in r + 1..s {
                if e[i][c].is_zero() {
                    continue;
                }
                let q = e[i][c].div_floor(&e[r][c]);
                row_sub(&mut e, i, r, &q);
                row_sub(&mut t, i, r, &q);
                done &= e[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if e.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if e[r][c].is_negative() {
            for x in e[r].iter_mut() {
                *x = -&*x;
            }
            for x in t[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = e[i][c].div_floor(&e[r][c]);
            if !q.is_zero() {
                row_sub(&mut e, i, r, &q);
                row_sub(&mut t, i, r, &q);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    Hermite { echelon: e, transform: t, pivots }
}

impl Hermite {
    /// Integer `μ` with `μ · E = v`, if `v` lies in the row lattice.
    fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut residual = v.to_vec();
        let mut mu = vec![BigInt::zero(); self.echelon.len()];
        for &(r, c) in &self.pivots {
            let (q, rem) = residual[c].div_mod_floor(&self.echelon[r][c]);
            if !rem.is_zero() {
                return None;
            }
            for (x, e) in residual.iter_mut().zip(&self.echelon[r]) {
                *x -= &q * e;
            }
            mu[r] = q;
        }
        residual.iter().all(Zero::is_zero).then_some(mu)
    }

    /// Coefficients on the original rows: `λ = μ · T`.
    fn pull_back(&self, mu: &[BigInt]) -> Vec<BigInt> {
        let s = self.transform.len();
        (0..s).map(|j| mu.iter().zip(&self.transform).map(|(m, row)| m * &row[j]).sum()).collect()
    }
}

/// Howell normal form of the row span of `gens` in `(ℤ/nℤ)^width`: the
/// Hermite form of the lattice `span(gens) + nℤ^width`, reduced mod `n`,
/// with zero rows dropped. Canonical for the span.
pub fn howell_form(gens: &[Vec<BigInt>], width: usize, n: u64) -> Vec<Vec<u64>> {
    let h = hermite_rows(&lattice_with_modulus(gens, width, n), width);
    let modulus = BigInt::from(n);
    h.pivots
        .iter()
        .map(|&(r, _)| h.echelon[r].iter().map(|x| residue(x, &modulus)).collect::<Vec<_>>())
        .filter(|row| row.iter().any(|&x| x != 0))
        .collect()
}

fn lattice_with_modulus(gens: &[Vec<BigInt>], width: usize, n: u64) -> Rows {
    let mut rows: Rows = gens.to_vec();
    for i in 0..width {
        let mut e = vec![BigInt::zero(); width];
        e[i] = BigInt::from(n);
        rows.push(e);
    }
    rows
}

/// Coefficients `λ` in `ring` with `Σ λ_j · gens_j = v`, or `None`.
///
/// Over ℤ/nℤ the coefficients are returned reduced into `[0, n)`; over ℤ
/// and ℤ/nℤ they are integral.
pub fn module_membership(v: &[BigInt], gens: &[Vec<BigInt>], ring: Ring) -> Result<Option<Vec<BigRational>>> {
    let ring = ring.validate()?;
    let k = v.len();
    if gens.iter().any(|g| g.len() != k) {
        return Err(Error::invalid("generator length differs from target length"));
    }
    let to_rational = |xs: Vec<BigInt>| xs.into_iter().map(BigRational::from_integer).collect();
    Ok(match ring {
        Ring::Integers => {
            let h = hermite_rows(gens, k);
            h.solve(v).map(|mu| to_rational(h.pull_back(&mu)))
        }
        Ring::ModN(n) => {
            let h = hermite_rows(&lattice_with_modulus(gens, k, n), k);
            let modulus = BigInt::from(n);
            h.solve(v).map(|mu| {
                let lambda = h.pull_back(&mu);
                to_rational(lambda[..gens.len()].iter().map(|x| x.mod_floor(&modulus)).collect())
            })
        }
        Ring::Rationals => rational_solve(v, gens),
    })
}

/// Solves `G λ = v` over ℚ (columns of `G` are `gens`) by fraction-free
/// Gauss-Jordan elimination; free variables are set to zero.
fn rational_solve(v: &[BigInt], gens: &[Vec<BigInt>]) -> Option<Vec<BigRational>> {
    let k = v.len();
    let g = gens.len();
    let mut a: Rows = (0..k)
        .map(|i| {
            let mut row: Vec<BigInt> = gens.iter().map(|col| col[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..g {
        let Some(p) = (r..k).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in 0..k {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let (pivot, lead) = (a[r][c].clone(), a[i][c].clone());
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x = &*x * &pivot - &lead * y;
            }
            let content = a[i].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in a[i].iter_mut() {
                    *x /= &content;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    if (r..k).any(|i| !a[i][g].is_zero()) {
        return None;
    }
    let mut lambda = vec![BigRational::zero(); g];
    for (r, c) in pivots {
        lambda[c] = BigRational::new(a[r][g].clone(), a[r][c].clone());
    }
    Some(lambda)
}

/// Checks `Σ λ_j gens_j = v` in `ring` by direct substitution.
pub fn verify_combination(v: &[BigInt], gens: &[Vec<BigInt>], lambda: &[BigRational], ring: Ring) -> bool {
    if lambda.len() != gens.len() || gens.iter().any(|g| g.len() != v.len()) {
        return false;
    }
    if !matches!(ring, Ring::Rationals) && lambda.iter().any(|l| !l.is_integer()) {
        return false;
    }
    (0..v.len()).all(|i| {
        let lhs: BigRational = gens.iter().zip(lambda).map(|(g, l)| l * BigRational::from_integer(g[i].clone())).sum();
        let diff = lhs - BigRational::from_integer(v[i].clone());
        match ring {
            Ring::ModN(n) => diff.to_integer().is_multiple_of(&BigInt::from(n)),
            _ => diff.is_zero(),
        }
    })
}
