//! Finite-index subgroups of `Z^r`.
//!
//! A subgroup of index `n` has a unique basis in Hermite normal form: an
//! upper-triangular integer matrix whose rows generate the subgroup, whose
//! diagonal `d_1, ..., d_r` multiplies to `n`, and whose entries above each
//! `d_i` lie in `[0, d_i)`. Counting those matrices column by column gives
//! `lambda_r(n) = sum_{d_1 ... d_r = n} d_2 d_3^2 ... d_r^(r-1)`, which is the
//! Dirichlet convolution of `n^0, n^1, ..., n^(r-1)`.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::numtheory::{dirichlet_convolve, factorials, power_seq, Nat, Seq1};
use crate::oracle::{CommutingTuple, Permutation};

/// `lambda_r(1..=N)`, the number of subgroups of `Z^r` of each index.
///
/// For `r = 0` this is the convolution identity (1 at `n = 1`, else 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTable {
    rank: u32,
    values: Seq1,
}

impl LambdaTable {
    /// Wrap precomputed values, e.g. from a cache. No consistency check.
    pub fn from_values(rank: u32, values: Seq1) -> Self {
        LambdaTable { rank, values }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `lambda_r(n)`, 1-indexed.
    pub fn get(&self, n: usize) -> &Nat {
        self.values.get(n)
    }

    pub fn values(&self) -> &Seq1 {
        &self.values
    }

    pub fn into_values(self) -> Seq1 {
        self.values
    }
}

/// Iterated Dirichlet convolution `n^0 * n^1 * ... * n^(r-1)` up to `len`.
pub fn lambda_table(r: u32, len: usize) -> LambdaTable {
    assert!(len >= 1, "table length must be positive");
    let mut acc = Seq1::delta(len);
    for k in 0..r {
        acc = if k == 0 {
            Seq1::ones(len)
        } else {
            dirichlet_convolve(&acc, &power_seq(k, len)).expect("equal lengths")
        };
    }
    LambdaTable { rank: r, values: acc }
}

/// `(n-1)! lambda_r(n)`: transitive actions of `Z^r` on `n` labeled points.
pub fn transitive_count(r: u32, n: usize) -> Nat {
    assert!(n >= 1, "no transitive action on the empty set");
    let table = lambda_table(r, n);
    transitive_counts(&table).get(n).clone()
}

/// `(k-1)! lambda_r(k)` for every `k` in the table.
pub fn transitive_counts(table: &LambdaTable) -> Seq1 {
    let fact = factorials(table.len());
    let values = table
        .values()
        .iter()
        .map(|(k, lam)| &fact[k - 1] * lam)
        .collect();
    Seq1::new(values).expect("nonempty")
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HnfError {
    #[error("basis must be a nonempty square matrix")]
    NotSquare,
    #[error("entry ({row}, {col}) below the diagonal is nonzero")]
    NotUpperTriangular { row: usize, col: usize },
    #[error("diagonal entry {0} is zero")]
    ZeroDiagonal(usize),
    #[error("entry ({row}, {col}) = {value} is not reduced modulo the diagonal entry {pivot}")]
    Unreduced { row: usize, col: usize, value: u64, pivot: u64 },
}

/// Upper-triangular Hermite normal form basis of a finite-index subgroup of
/// `Z^r`. Row `i` is the generator `(0, ..., 0, d_i, a_{i,i+1}, ..., a_{i,r-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnfBasis {
    rows: Vec<Vec<u64>>,
}

impl HnfBasis {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self, HnfError> {
        let r = rows.len();
        if r == 0 || rows.iter().any(|row| row.len() != r) {
            return Err(HnfError::NotSquare);
        }
        for (i, row) in rows.iter().enumerate() {
            if let Some(col) = (0..i).find(|&j| row[j] != 0) {
                return Err(HnfError::NotUpperTriangular { row: i, col });
            }
            if row[i] == 0 {
                return Err(HnfError::ZeroDiagonal(i));
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                let pivot = rows[j][j];
                if rows[i][j] >= pivot {
                    return Err(HnfError::Unreduced {
                        row: i,
                        col: j,
                        value: rows[i][j],
                        pivot,
                    });
                }
            }
        }
        Ok(HnfBasis { rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Vec<u64> {
        (0..self.rank()).map(|i| self.rows[i][i]).collect()
    }

    /// Index of the subgroup in `Z^r`: the product of the diagonal.
    pub fn index(&self) -> u64 {
        self.diagonal().iter().product()
    }
}

impl fmt::Display for HnfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        f.write_str("]")
    }
}

/// Ordered factorizations `d_1 d_2 ... d_r = n`, lexicographic.
pub fn ordered_factorizations(n: u64, r: usize) -> Vec<Vec<u64>> {
    fn go(n: u64, slots: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for d in crate::numtheory::divisors(n) {
            prefix.push(d);
            go(n / d, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    assert!(n >= 1 && r >= 1);
    let mut out = Vec::new();
    go(n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// Lazy stream of every HNF basis of rank `r` and index `n`.
///
/// Order: lexicographic by diagonal `(d_1, ..., d_r)`, then lexicographic in
/// the above-diagonal entries read row by row.
pub fn enumerate_hnf(r: usize, n: u64) -> HnfIter {
    HnfIter {
        rank: r,
        diagonals: ordered_factorizations(n, r),
        next_diagonal: 0,
        current: None,
    }
}

pub struct HnfIter {
    rank: usize,
    diagonals: Vec<Vec<u64>>,
    next_diagonal: usize,
    current: Option<OffDiagonalCounter>,
}

struct OffDiagonalCounter {
    diagonal: Vec<u64>,
    // (row, col, radix) for each position above the diagonal, row-major
    positions: Vec<(usize, usize, u64)>,
    digits: Vec<u64>,
    exhausted: bool,
}

impl OffDiagonalCounter {
    fn new(diagonal: Vec<u64>) -> Self {
        let r = diagonal.len();
        let positions: Vec<(usize, usize, u64)> = (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, diagonal[j]))
            .collect();
        let digits = vec![0; positions.len()];
        OffDiagonalCounter {
            diagonal,
            positions,
            digits,
            exhausted: false,
        }
    }

    fn emit(&self) -> HnfBasis {
        let r = self.diagonal.len();
        let mut rows = vec![vec![0u64; r]; r];
        for (i, &d) in self.diagonal.iter().enumerate() {
            rows[i][i] = d;
        }
        for (&(i, j, _), &v) in self.positions.iter().zip(&self.digits) {
            rows[i][j] = v;
        }
        HnfBasis { rows }
    }

    fn advance(&mut self) {
        for (digit, &(_, _, radix)) in self.digits.iter_mut().zip(&self.positions).rev() {
            *digit += 1;
            if *digit < radix {
                return;
            }
            *digit = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for HnfIter {
    type Item = HnfBasis;

    fn next(&mut self) -> Option<HnfBasis> {
        loop {
            if let Some(counter) = self.current.as_mut() {
                if !counter.exhausted {
                    let basis = counter.emit();
                    counter.advance();
                    return Some(basis);
                }
            }
            let diagonal = self.diagonals.get(self.next_diagonal)?.clone();
            debug_assert_eq!(diagonal.len(), self.rank);
            self.next_diagonal += 1;
            self.current = Some(OffDiagonalCounter::new(diagonal));
        }
    }
}

/// The translation action of `Z^r` on the cosets `Z^r / K`, `K` the row
/// lattice of an HNF basis.
///
/// Cosets are labeled by their representatives in the box
/// `[0, d_1) x ... x [0, d_r)`; a representative `(x_1, ..., x_r)` gets the
/// mixed-radix label `((x_1 d_2 + x_2) d_3 + x_3) ...`, so labels follow the
/// lexicographic order of representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetAction {
    basis: HnfBasis,
    generators: Vec<Permutation>,
}

impl CosetAction {
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// Number of cosets.
    pub fn degree(&self) -> usize {
        self.basis.index() as usize
    }

    pub fn basis(&self) -> &HnfBasis {
        &self.basis
    }

    /// Permutation induced by the `i`-th standard basis vector, for each `i`.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The generators as a validated commuting tuple.
    pub fn to_tuple(&self) -> CommutingTuple {
        CommutingTuple::new(self.degree(), self.generators.clone())
            .expect("coset translations commute")
    }

    /// Label of the coset containing `x`.
    pub fn label_of(&self, x: &[i64]) -> usize {
        encode(&self.basis.diagonal(), &reduce(&self.basis, x))
    }

    /// Box representative for a label.
    pub fn representative(&self, label: usize) -> Vec<u64> {
        decode(&self.basis.diagonal(), label)
    }
}

/// Canonical representative of `x + K`: reduce coordinate `i` modulo `d_i`
/// using row `i`, for increasing `i`. Rows are zero left of the diagonal, so
/// later steps never disturb coordinates already reduced.
fn reduce(basis: &HnfBasis, x: &[i64]) -> Vec<u64> {
    let r = basis.rank();
    assert_eq!(x.len(), r);
    let mut v = x.to_vec();
    for i in 0..r {
        let row = &basis.rows()[i];
        let q = v[i].div_euclid(row[i] as i64);
        if q != 0 {
            for j in i..r {
                v[j] -= q * row[j] as i64;
            }
        }
    }
    v.into_iter().map(|c| c as u64).collect()
}

fn encode(diagonal: &[u64], rep: &[u64]) -> usize {
    rep.iter()
        .zip(diagonal)
        .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
}

fn decode(diagonal: &[u64], mut label: usize) -> Vec<u64> {
    let mut rep = vec![0u64; diagonal.len()];
    for (slot, &d) in rep.iter_mut().zip(diagonal).rev() {
        *slot = (label % d as usize) as u64;
        label /= d as usize;
    }
    rep
}

pub fn coset_action(basis: &HnfBasis) -> CosetAction {
    let r = basis.rank();
    let diagonal = basis.diagonal();
    let n = basis.index() as usize;
    let generators = (0..r)
        .map(|t| {
            let images = (0..n)
                .map(|label| {
                    let mut x: Vec<i64> = decode(&diagonal, label).into_iter().map(|c| c as i64).collect();
                    x[t] += 1;
                    encode(&diagonal, &reduce(basis, &x))
                })
                .collect();
            Permutation::new(images).expect("translation by a generator is a bijection on cosets")
        })
        .collect();
    CosetAction {
        basis: basis.clone(),
        generators,
    }
}

/// Outcome of comparing `lambda_r(n)` with `n^(r(r-1)/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub rank: u32,
    pub max: usize,
    pub exponent: u32,
    /// `n` with `lambda_r(n) > n^exponent`.
    pub violations: Vec<usize>,
    /// `n` with `lambda_r(n) = n^exponent`.
    pub equalities: Vec<usize>,
}

impl GrowthReport {
    /// Whether the strict inequality held for every `n` checked.
    pub fn strict_bound_holds(&self) -> bool {
        self.violations.is_empty() && self.equalities.is_empty()
    }
}

impl fmt::Display for GrowthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "lambda_{}(n) vs n^{} for n = 1..={}",
            self.rank, self.exponent, self.max
        )?;
        writeln!(f, "violations ({}): {}", self.violations.len(), compress_ranges(&self.violations))?;
        write!(f, "equalities ({}): {}", self.equalities.len(), compress_ranges(&self.equalities))
    }
}

fn compress_ranges(ns: &[usize]) -> String {
    if ns.is_empty() {
        return "none".to_string();
    }
    let mut parts = Vec::new();
    let mut start = ns[0];
    let mut prev = ns[0];
    for &n in &ns[1..] {
        if n == prev + 1 {
            prev = n;
            continue;
        }
        parts.push(range_str(start, prev));
        start = n;
        prev = n;
    }
    parts.push(range_str(start, prev));
    parts.join(",")
}

fn range_str(a: usize, b: usize) -> String {
    if a == b {
        a.to_string()
    } else {
        format!("{a}-{b}")
    }
}

/// Compare `lambda_r(n)` with `n^(r(r-1)/2)` for `n = 1..=max`.
pub fn check_growth_bound(r: u32, max: usize) -> GrowthReport {
    let exponent = r * r.saturating_sub(1) / 2;
    let table = lambda_table(r, max);
    let mut violations = Vec::new();
    let mut equalities = Vec::new();
    for (n, lam) in table.values().iter() {
        let bound = Nat::from(n).pow(exponent);
        match lam.cmp(&bound) {
            std::cmp::Ordering::Greater => violations.push(n),
            std::cmp::Ordering::Equal => equalities.push(n),
            std::cmp::Ordering::Less => {}
        }
    }
    GrowthReport {
        rank: r,
        max,
        exponent,
        violations,
        equalities,
    }
}

/// `sum_{d | n} d lambda_{r-1}(d)` from the previous rank's table.
pub fn divisor_weighted_sum(prev: &LambdaTable, n: usize) -> Nat {
    crate::numtheory::divisors(n as u64)
        .into_iter()
        .map(|d| prev.get(d as usize) * Nat::from(d))
        .fold(Nat::zero(), |acc, t| acc + t)
}

/// `lambda_r(1) = 1` holds for every rank; a cheap sanity check on tables
/// that did not come from [`lambda_table`].
pub fn is_one_at_one(table: &LambdaTable) -> bool {
    table.get(1).is_one()
}
