//! Exact counts of commuting tuples in symmetric groups.
//!
//! The number `T_r(n)` of ordered `r`-tuples of pairwise commuting
//! permutations of `n` points equals `|Hom(Z^r, S_n)|`, the number of
//! actions of `Z^r` on `{0, ..., n-1}`. This crate computes it, refined by
//! orbit count, from the subgroup counts `lambda_r(n)` of `Z^r`, and checks
//! the result against explicit enumeration.
//!
//! * [`numtheory`]: divisor sums, Dirichlet convolution, partition numbers.
//! * [`series`]: Euler transform and exponential formula over exact integers.
//! * [`lattice`]: `lambda_r` tables, Hermite normal forms, coset actions.
//! * [`oracle`]: brute-force enumeration of commuting tuples.
//! * [`count`]: `T_r(n)` and its orbit refinement.

pub mod count;
pub mod lattice;
pub mod numtheory;
pub mod oracle;
pub mod series;

pub use count::{
    count_tuples, count_tuples_by_orbits, count_tuples_exp_route, count_tuples_normalized,
};
pub use lattice::{
    check_growth_bound, coset_action, enumerate_hnf, lambda_table, transitive_count, CosetAction,
    GrowthReport, HnfBasis, LambdaTable,
};
pub use numtheory::{Nat, Seq1};
pub use oracle::{oracle_census, CommutingTuple, OrbitCensusResult, Permutation};
pub use series::{EgfCensus, OgfSeries, OrbitPolynomial};
