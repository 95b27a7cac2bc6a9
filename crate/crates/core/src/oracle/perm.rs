use std::fmt;

use thiserror::Error;

use super::union_find::UnionFind;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("images do not form a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
}

/// A bijection of `{0, ..., n-1}`, stored as its image list.
///
/// Composition follows function notation: `g.compose(h)` maps `i` to
/// `g(h(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermutationError::NotABijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn rotation(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + 1) % n.max(1)).collect(),
        }
    }

    /// Swap of `a` and `b` on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Every permutation of `n` points, in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation {
            images: current.clone(),
        }];
        while next_lexicographic(&mut current) {
            out.push(Permutation {
                images: current.clone(),
            });
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Conjugate by a relabeling `sigma`: the permutation `sigma g sigma^-1`,
    /// which sends `sigma(i)` to `sigma(g(i))`.
    pub fn relabel(&self, sigma: &Permutation) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[sigma.apply(i)] = sigma.apply(j);
        }
        Permutation { images }
    }

    /// Equal-degree commutation test; no allocation.
    pub fn commutes_with(&self, other: &Permutation) -> bool {
        debug_assert_eq!(self.degree(), other.degree());
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&gi, &hi)| self.images[hi] == other.images[gi])
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{i}")?;
                i = self.images[i];
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// An ordered tuple of pairwise commuting permutations of a common degree,
/// i.e. a homomorphism from `Z^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommutingTuple {
    degree: usize,
    generators: Vec<Permutation>,
}

impl CommutingTuple {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermutationError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermutationError::DegreeMismatch(degree, g.degree()));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes_with(&generators[j]) {
                    return Err(PermutationError::NotCommuting(i, j));
                }
            }
        }
        Ok(CommutingTuple { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Orbits of the generated group, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = join_generator_edges(self.degree, self.generators.iter());
        let mut by_root: Vec<Option<usize>> = vec![None; self.degree];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.degree {
            let root = uf.find(i);
            match by_root[root] {
                Some(slot) => out[slot].push(i),
                None => {
                    by_root[root] = Some(out.len());
                    out.push(vec![i]);
                }
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && orbit_count(self) == 1
    }
}

pub(crate) fn join_generator_edges<'a>(
    degree: usize,
    generators: impl Iterator<Item = &'a Permutation>,
) -> UnionFind {
    let mut uf = UnionFind::new(degree);
    for g in generators {
        for (i, &j) in g.images().iter().enumerate() {
            uf.union(i, j);
        }
    }
    uf
}

/// Number of orbits of the group generated by the tuple: connected
/// components of the graph with edges `i -- g_t(i)`.
pub fn orbit_count(tuple: &CommutingTuple) -> usize {
    join_generator_edges(tuple.degree, tuple.generators.iter()).components()
}
