//! Brute-force ground truth for commuting tuples.
//!
//! The census walks every commuting `r`-tuple of `S_n` explicitly: pick
//! `g_1` from all of `S_n`, restrict to its centralizer, pick `g_2` from
//! there, and so on. Orbits at each leaf come from a union-find over the
//! generator edges. Nothing here uses the generating-function machinery, so
//! it can check it.

mod perm;
mod union_find;

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::numtheory::Nat;
use crate::series::OrbitPolynomial;

pub use perm::{orbit_count, CommutingTuple, Permutation, PermutationError};
pub use union_find::UnionFind;

/// `S_n` is materialized explicitly, so `n` is capped regardless of budget.
pub const MAX_MATERIALIZED_DEGREE: usize = 8;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("census for r = {r}, n = {n} exceeds the oracle budget")]
    BudgetExceeded { r: usize, n: usize },
    #[error("S_{0} is too large to materialize (limit {MAX_MATERIALIZED_DEGREE})")]
    DegreeTooLarge(usize),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
}

/// Which `(r, n)` cells the oracle agrees to enumerate.
///
/// A cell is allowed when `r <= max_rank`, `n <= max_degree`, and, at the top
/// rank, `n <= max_degree_at_max_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_rank: usize,
    pub max_degree: usize,
    pub max_degree_at_max_rank: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_rank: 4,
            max_degree: 6,
            max_degree_at_max_rank: 5,
        }
    }
}

impl OracleBudget {
    pub fn allows(&self, r: usize, n: usize) -> bool {
        r <= self.max_rank
            && n <= self.max_degree
            && (r < self.max_rank || n <= self.max_degree_at_max_rank)
    }

    fn check(&self, r: usize, n: usize) -> Result<(), OracleError> {
        if r == 0 {
            return Err(OracleError::ZeroRank);
        }
        if n > MAX_MATERIALIZED_DEGREE {
            return Err(OracleError::DegreeTooLarge(n));
        }
        if !self.allows(r, n) {
            return Err(OracleError::BudgetExceeded { r, n });
        }
        Ok(())
    }
}

/// Elements of `within` that commute with `g`, in their original order.
pub fn centralizer(g: &Permutation, within: &[Permutation]) -> Result<Vec<Permutation>, OracleError> {
    if let Some(h) = within.iter().find(|h| h.degree() != g.degree()) {
        return Err(PermutationError::DegreeMismatch(g.degree(), h.degree()).into());
    }
    Ok(within.iter().filter(|h| g.commutes_with(h)).cloned().collect())
}

/// Exact tuple counts for one `(r, n)` cell, overall and by number of orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCensusResult {
    pub r: usize,
    pub n: usize,
    pub total: Nat,
    /// Orbit count `k` to number of tuples with `k` orbits; zero entries omitted.
    pub by_orbits: BTreeMap<usize, Nat>,
}

impl OrbitCensusResult {
    fn from_histogram(r: usize, n: usize, hist: &[u64]) -> Self {
        let by_orbits: BTreeMap<usize, Nat> = hist
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, Nat::from(c)))
            .collect();
        let total = by_orbits.values().sum();
        OrbitCensusResult {
            r,
            n,
            total,
            by_orbits,
        }
    }

    pub fn count(&self, orbits: usize) -> Nat {
        self.by_orbits.get(&orbits).cloned().unwrap_or_else(Nat::zero)
    }

    /// The histogram as a polynomial in the orbit marker `y`.
    pub fn as_polynomial(&self) -> OrbitPolynomial {
        let mut coeffs = vec![Nat::zero(); self.n + 1];
        for (&k, c) in &self.by_orbits {
            coeffs[k] = c.clone();
        }
        OrbitPolynomial::new(coeffs)
    }
}

fn walk<'a, F>(rank: usize, chosen: &mut Vec<&'a Permutation>, candidates: &[&'a Permutation], visit: &mut F)
where
    F: FnMut(&[&'a Permutation]),
{
    if chosen.len() == rank {
        visit(chosen);
        return;
    }
    let last_level = chosen.len() + 1 == rank;
    for &g in candidates {
        chosen.push(g);
        if last_level {
            visit(chosen);
        } else {
            let next: Vec<&Permutation> = candidates.iter().copied().filter(|h| g.commutes_with(h)).collect();
            walk(rank, chosen, &next, visit);
        }
        chosen.pop();
    }
}

/// Call `visit` once for every ordered commuting `r`-tuple of `S_n`, in
/// lexicographic order of `(g_1, ..., g_r)`.
pub fn for_each_commuting_tuple<F>(r: usize, n: usize, budget: &OracleBudget, mut visit: F) -> Result<(), OracleError>
where
    F: FnMut(&[&Permutation]),
{
    budget.check(r, n)?;
    let group = Permutation::all(n);
    let all: Vec<&Permutation> = group.iter().collect();
    walk(r, &mut Vec::with_capacity(r), &all, &mut visit);
    Ok(())
}

fn leaf_orbits(n: usize, tuple: &[&Permutation]) -> usize {
    perm::join_generator_edges(n, tuple.iter().copied()).components()
}

/// Census with the default budget.
pub fn oracle_census(r: usize, n: usize) -> Result<OrbitCensusResult, OracleError> {
    oracle_census_with_budget(r, n, &OracleBudget::default())
}

pub fn oracle_census_with_budget(r: usize, n: usize, budget: &OracleBudget) -> Result<OrbitCensusResult, OracleError> {
    let mut hist = vec![0u64; n + 1];
    for_each_commuting_tuple(r, n, budget, |tuple| hist[leaf_orbits(n, tuple)] += 1)?;
    Ok(OrbitCensusResult::from_histogram(r, n, &hist))
}

/// Same census with the outermost choice of `g_1` spread over the rayon
/// pool. Histograms are merged by addition, so the result is identical to
/// the sequential run.
pub fn oracle_census_parallel(r: usize, n: usize, budget: &OracleBudget) -> Result<OrbitCensusResult, OracleError> {
    budget.check(r, n)?;
    let group = Permutation::all(n);
    let all: Vec<&Permutation> = group.iter().collect();
    let hist = all
        .par_iter()
        .map(|&g| {
            let mut hist = vec![0u64; n + 1];
            let centralized: Vec<&Permutation> = all.iter().copied().filter(|h| g.commutes_with(h)).collect();
            let mut chosen = Vec::with_capacity(r);
            chosen.push(g);
            walk(r, &mut chosen, &centralized, &mut |tuple: &[&Permutation]| {
                hist[leaf_orbits(n, tuple)] += 1
            });
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(OrbitCensusResult::from_histogram(r, n, &hist))
}
