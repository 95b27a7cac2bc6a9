//! Truncated power series over exact integers.
//!
//! Two product/exponential constructions live here:
//!
//! * [`euler_transform`] expands `prod_{j>=1} (1 - u^j)^(-a(j))` through the
//!   logarithmic-derivative recurrence `n c(n) = sum_k b(k) c(n-k)` with
//!   `b(n) = sum_{d|n} d a(d)`.
//! * [`egf_exp_formula`] turns counts of connected labeled structures into
//!   counts of all labeled structures, keeping track of the number of
//!   components with a marker variable `y`.
//!
//! Exponential generating functions are never materialized with rational
//! coefficients: entry `n` always holds the `n!`-scaled integer count.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numtheory::{Nat, Seq1};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("input sequence has {available} terms but {requested} were requested")]
    TooShort { requested: usize, available: usize },
}

/// Ordinary power series `sum_n coeffs[n] u^n`, truncated after `u^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OgfSeries {
    coeffs: Vec<Nat>,
}

impl OgfSeries {
    pub fn coeffs(&self) -> &[Nat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Nat> {
        self.coeffs
    }

    /// Highest stored power of `u`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Nat {
        &self.coeffs[n]
    }
}

/// Polynomial in the orbit marker `y`; the coefficient of `y^k` counts
/// actions with `k` orbits. Trailing zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbitPolynomial {
    coeffs: Vec<Nat>,
}

impl OrbitPolynomial {
    pub fn new(mut coeffs: Vec<Nat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        OrbitPolynomial { coeffs }
    }

    pub fn one() -> Self {
        OrbitPolynomial {
            coeffs: vec![Nat::one()],
        }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Nat::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Nat] {
        &self.coeffs
    }

    /// Coefficient of `y^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> Nat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn evaluate_at_one(&self) -> Nat {
        evaluate_at_one(self)
    }
}

impl fmt::Display for OrbitPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("y")?,
                (1, false) => write!(f, "{c}y")?,
                (_, true) => write!(f, "y^{k}")?,
                (_, false) => write!(f, "{c}y^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Sum of the coefficients, i.e. the value at `y = 1`.
pub fn evaluate_at_one(p: &OrbitPolynomial) -> Nat {
    p.coeffs.iter().sum()
}

/// Per-size orbit polynomials for actions of `Z^r`: entry `n` is
/// `P_n(y) = sum_k T_r(n, k) y^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgfCensus {
    rank: u32,
    entries: Vec<OrbitPolynomial>,
}

impl EgfCensus {
    pub fn new(rank: u32, entries: Vec<OrbitPolynomial>) -> Self {
        debug_assert!(entries.first() == Some(&OrbitPolynomial::one()));
        EgfCensus { rank, entries }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Largest `n` covered.
    pub fn max_degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, n: usize) -> &OrbitPolynomial {
        &self.entries[n]
    }

    pub fn entries(&self) -> &[OrbitPolynomial] {
        &self.entries
    }

    /// `T_r(n)`, the number of actions regardless of orbit count.
    pub fn total(&self, n: usize) -> Nat {
        self.entries[n].evaluate_at_one()
    }

    /// `T_r(n, k)`.
    pub fn count(&self, n: usize, orbits: usize) -> Nat {
        self.entries[n].coeff(orbits)
    }
}

fn check_len(seq: &Seq1, requested: usize) -> Result<(), SeriesError> {
    if seq.len() < requested {
        return Err(SeriesError::TooShort {
            requested,
            available: seq.len(),
        });
    }
    Ok(())
}

/// Divide by `n`, which must divide exactly. A remainder can only come from
/// a broken recurrence, so it aborts rather than rounds.
pub(crate) fn div_exact(num: Nat, n: usize) -> Nat {
    div_exact_nat(num, &Nat::from(n))
}

pub(crate) fn div_exact_nat(num: Nat, divisor: &Nat) -> Nat {
    let (q, r) = num.div_rem(divisor);
    assert!(r.is_zero(), "inexact division by {divisor} in series recurrence");
    q
}

/// `C(m, j)` from `C(m, j-1)`.
fn next_binomial(prev: Nat, m: usize, j: usize) -> Nat {
    div_exact(prev * Nat::from(m - j + 1), j)
}

/// `b(n) = sum_{d | n} d a(d)` for `n = 1..=len`: the coefficients of
/// `u d/du log prod_j (1 - u^j)^(-a(j))`.
pub fn euler_b_sequence(a: &Seq1, len: usize) -> Result<Seq1, SeriesError> {
    check_len(a, len)?;
    let mut b = vec![Nat::zero(); len.max(1)];
    for d in 1..=len {
        let ad = a.get(d);
        if ad.is_zero() {
            continue;
        }
        let weighted = ad * Nat::from(d);
        let mut m = d;
        while m <= len {
            b[m - 1] += &weighted;
            m += d;
        }
    }
    Ok(Seq1::new(b).expect("nonempty"))
}

/// Coefficients `c(0..=order)` of `prod_{j>=1} (1 - u^j)^(-a(j))`.
///
/// `a` needs at least `order` terms (a single term suffices when `order` is 0).
pub fn euler_transform(a: &Seq1, order: usize) -> Result<OgfSeries, SeriesError> {
    check_len(a, order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Nat::one());
    if order == 0 {
        return Ok(OgfSeries { coeffs });
    }
    let b = euler_b_sequence(a, order)?;
    for n in 1..=order {
        let mut acc = Nat::zero();
        for k in 1..=n {
            let bk = b.get(k);
            if !bk.is_zero() {
                acc += bk * &coeffs[n - k];
            }
        }
        coeffs.push(div_exact(acc, n));
    }
    Ok(OgfSeries { coeffs })
}

/// Orbit polynomials `P_0..=P_order` of all labeled structures built from
/// connected ones, where `connected.get(k)` counts connected structures on
/// `k` labels.
///
/// Splits off the component containing the largest label, choosing its
/// other `k - 1` labels among the remaining `n - 1`:
/// `P_n(y) = y sum_{k=1..n} C(n-1, k-1) d(k) P_{n-k}(y)`.
pub fn egf_exp_formula(connected: &Seq1, order: usize) -> Result<Vec<OrbitPolynomial>, SeriesError> {
    check_len(connected, order)?;
    let mut polys: Vec<OrbitPolynomial> = Vec::with_capacity(order + 1);
    polys.push(OrbitPolynomial::one());
    for n in 1..=order {
        let mut acc = vec![Nat::zero(); n + 1];
        let mut binom = Nat::one();
        for k in 1..=n {
            if k > 1 {
                binom = next_binomial(binom, n - 1, k - 1);
            }
            let dk = connected.get(k);
            if dk.is_zero() {
                continue;
            }
            let weight = &binom * dk;
            for (j, c) in polys[n - k].coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc[j + 1] += &weight * c;
                }
            }
        }
        polys.push(OrbitPolynomial::new(acc));
    }
    Ok(polys)
}

/// [`egf_exp_formula`] evaluated at `y = 1`: the same recurrence on plain
/// totals, without the orbit refinement.
pub fn egf_exp_formula_at_one(connected: &Seq1, order: usize) -> Result<Vec<Nat>, SeriesError> {
    check_len(connected, order)?;
    let mut totals: Vec<Nat> = Vec::with_capacity(order + 1);
    totals.push(Nat::one());
    for n in 1..=order {
        let mut acc = Nat::zero();
        let mut binom = Nat::one();
        for k in 1..=n {
            if k > 1 {
                binom = next_binomial(binom, n - 1, k - 1);
            }
            let dk = connected.get(k);
            if dk.is_zero() {
                continue;
            }
            acc += &binom * dk * &totals[n - k];
        }
        totals.push(acc);
    }
    Ok(totals)
}
