//! Elementary arithmetic kernels: divisor iteration, divisor sums,
//! Dirichlet convolution and partition numbers.
//!
//! Sequences that live on the positive integers (arithmetic functions) are
//! stored as [`Seq1`], which is 1-indexed. Power-series coefficients elsewhere
//! in the crate are plain 0-indexed vectors.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision nonnegative integer. All counts in this crate are exact.
pub type Nat = BigUint;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("argument must be a positive integer, got 0")]
    ZeroArgument,
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("sequence must have at least one entry")]
    EmptySequence,
}

/// A finite arithmetic function `n -> a(n)` for `n = 1..=len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seq1 {
    values: Vec<Nat>,
}

impl Seq1 {
    pub fn new(values: Vec<Nat>) -> Result<Self, NumTheoryError> {
        if values.is_empty() {
            return Err(NumTheoryError::EmptySequence);
        }
        Ok(Seq1 { values })
    }

    pub fn from_u64s(values: &[u64]) -> Result<Self, NumTheoryError> {
        Self::new(values.iter().map(|&v| Nat::from(v)).collect())
    }

    /// The constant sequence `1, 1, 1, ...` of length `len`.
    pub fn ones(len: usize) -> Self {
        power_seq(0, len)
    }

    /// `n -> n`.
    pub fn identity(len: usize) -> Self {
        power_seq(1, len)
    }

    /// The convolution identity: 1 at n = 1, 0 elsewhere.
    pub fn delta(len: usize) -> Self {
        assert!(len >= 1, "sequence length must be positive");
        let mut values = vec![Nat::zero(); len];
        values[0] = Nat::one();
        Seq1 { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at `n` (1-indexed). Panics when `n` is 0 or past the end.
    pub fn get(&self, n: usize) -> &Nat {
        assert!(n >= 1, "Seq1 is 1-indexed");
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[Nat] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Nat> {
        self.values
    }

    /// Iterate over `(n, a(n))` pairs starting at `n = 1`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Nat)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    /// The first `len` entries. Panics if `len` is 0 or exceeds the length.
    pub fn prefix(&self, len: usize) -> Seq1 {
        assert!(len >= 1 && len <= self.len(), "prefix length out of range");
        Seq1 {
            values: self.values[..len].to_vec(),
        }
    }
}

/// Smallest-prime-factor table for fast factorization and divisor listing
/// up to a fixed limit.
///
/// Build it once and share it; lookups are read-only.
#[derive(Clone, Debug)]
pub struct DivisorSieve {
    spf: Vec<u32>,
}

impl DivisorSieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] != 0 {
                continue;
            }
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        DivisorSieve { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Prime factorization as `(prime, exponent)` pairs in increasing order.
    pub fn factorize(&self, mut n: usize) -> Vec<(usize, u32)> {
        assert!(n >= 1 && n <= self.limit(), "{n} outside sieve range");
        let mut out: Vec<(usize, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    /// All divisors of `n` in increasing order.
    pub fn divisors(&self, n: usize) -> Vec<usize> {
        let mut divs = vec![1usize];
        for (p, e) in self.factorize(n) {
            let current = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..current {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Divisors of `n` by trial division, increasing. `n` must be positive.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Sum of the divisors of `n`.
pub fn sigma(n: u64) -> Result<Nat, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::ZeroArgument);
    }
    Ok(divisors(n).into_iter().map(Nat::from).sum())
}

/// `c(n) = sum_{d | n} a(d) b(n/d)` for `n = 1..=N`.
///
/// Runs the harmonic double loop over `(d, m)` with `d m <= N`, which is
/// `O(N log N)` products.
pub fn dirichlet_convolve(a: &Seq1, b: &Seq1) -> Result<Seq1, NumTheoryError> {
    if a.len() != b.len() {
        return Err(NumTheoryError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    let mut out = vec![Nat::zero(); n];
    for d in 1..=n {
        let ad = a.get(d);
        if ad.is_zero() {
            continue;
        }
        for m in 1..=n / d {
            let bm = b.get(m);
            if bm.is_zero() {
                continue;
            }
            out[d * m - 1] += ad * bm;
        }
    }
    Ok(Seq1 { values: out })
}

/// `n -> n^k` for `n = 1..=len`.
pub fn power_seq(k: u32, len: usize) -> Seq1 {
    assert!(len >= 1, "sequence length must be positive");
    let values = (1..=len as u64).map(|n| Nat::from(n).pow(k)).collect();
    Seq1 { values }
}

/// `0!, 1!, ..., max!`.
pub fn factorials(max: usize) -> Vec<Nat> {
    let mut out = Vec::with_capacity(max + 1);
    let mut f = Nat::one();
    out.push(f.clone());
    for k in 1..=max {
        f *= Nat::from(k);
        out.push(f.clone());
    }
    out
}

/// `p(0), ..., p(max)` via Euler's pentagonal-number recurrence
/// `p(n) = sum_{k >= 1} (-1)^(k+1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
pub fn partition_numbers(max: usize) -> Vec<Nat> {
    let mut p: Vec<Nat> = Vec::with_capacity(max + 1);
    p.push(Nat::one());
    for n in 1..=max {
        // Keep the alternating sum as two nonnegative halves.
        let mut plus = Nat::zero();
        let mut minus = Nat::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &p[n - g1];
            if g2 <= n {
                *acc += &p[n - g2];
            }
            k += 1;
        }
        p.push(plus - minus);
    }
    p
}
