//! `T_r(n) = |Hom(Z^r, S_n)|`, the number of commuting `r`-tuples in `S_n`,
//! along two independent routes.
//!
//! * Product route: `sum_n T_r(n) u^n / n! = prod_{j>=1} (1 - u^j)^(-lambda_{r-1}(j))`,
//!   an Euler transform.
//! * Exponential route: transitive actions of `Z^r` on `k` points number
//!   `(k-1)! lambda_r(k)`; the exponential formula assembles them into all
//!   actions, with `y` marking orbits.

use crate::lattice::{lambda_table, transitive_counts, LambdaTable};
use crate::numtheory::{factorials, Nat};
use crate::series::{div_exact_nat, egf_exp_formula, egf_exp_formula_at_one, euler_transform, EgfCensus};

/// `T_r(n) / n!` for `n = 0..=max`, the coefficients of the Euler product.
pub fn count_tuples_normalized(r: u32, max: usize) -> Vec<Nat> {
    assert!(r >= 1, "rank must be at least 1");
    let prev = lambda_table(r - 1, max.max(1));
    count_tuples_normalized_from(&prev, max)
}

/// Same, given `lambda_{r-1}` up to at least `max`.
pub fn count_tuples_normalized_from(prev: &LambdaTable, max: usize) -> Vec<Nat> {
    euler_transform(prev.values(), max)
        .expect("lambda table covers the requested order")
        .into_coeffs()
}

/// `T_r(0..=max)` by the product route.
pub fn count_tuples(r: u32, max: usize) -> Vec<Nat> {
    scale_by_factorials(count_tuples_normalized(r, max))
}

/// `T_r(0..=max)` by the product route, given `lambda_{r-1}`.
pub fn count_tuples_from(prev: &LambdaTable, max: usize) -> Vec<Nat> {
    scale_by_factorials(count_tuples_normalized_from(prev, max))
}

fn scale_by_factorials(coeffs: Vec<Nat>) -> Vec<Nat> {
    let fact = factorials(coeffs.len().saturating_sub(1));
    coeffs.into_iter().zip(fact).map(|(c, f)| c * f).collect()
}

/// Divide `T_r(n)` by `n!`; the quotient is always an integer.
pub fn normalize(counts: &[Nat]) -> Vec<Nat> {
    let fact = factorials(counts.len().saturating_sub(1));
    counts.iter().zip(&fact).map(|(c, f)| div_exact_nat(c.clone(), f)).collect()
}

/// `T_r(0..=max)` by the exponential route at `y = 1`.
pub fn count_tuples_exp_route(r: u32, max: usize) -> Vec<Nat> {
    let table = lambda_table(r, max.max(1));
    count_tuples_exp_route_from(&table, max)
}

/// Same, given `lambda_r` (not `lambda_{r-1}`).
pub fn count_tuples_exp_route_from(table: &LambdaTable, max: usize) -> Vec<Nat> {
    egf_exp_formula_at_one(&transitive_counts(table), max).expect("lambda table covers the requested order")
}

/// Orbit polynomials `P_n(y) = sum_k T_r(n, k) y^k` for `n = 0..=max`.
pub fn count_tuples_by_orbits(r: u32, max: usize) -> EgfCensus {
    assert!(r >= 1, "rank must be at least 1");
    let table = lambda_table(r, max.max(1));
    let polys = egf_exp_formula(&transitive_counts(&table), max).expect("lambda table covers the requested order");
    EgfCensus::new(r, polys)
}
