//! Component indices (𝐦, 𝐫) of the variety of q-commuting pairs, their
//! enumeration and dimensions, the θ-switch, and generic-point samplers.

mod jacobian;
mod sampler;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qchains::restricted_partition_count;
use crate::qcommutant::MatrixPair;
use crate::qscalar::Ell;

pub use jacobian::{
    expected_jacobian_rank, jacobian_rank_at_seed, parametrization_jacobian_rank, StratumKind,
};
pub use sampler::{sample_point, Sampler};

/// Sparse count vector: block size ↦ multiplicity, zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Counts(BTreeMap<usize, usize>);

impl Counts {
    pub fn new() -> Self {
        Counts(BTreeMap::new())
    }

    /// From a dense vector whose entry `k` is the count for size `k + 1`.
    pub fn from_dense(dense: &[usize]) -> Self {
        Counts(
            dense
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(k, &c)| (k + 1, c))
                .collect(),
        )
    }

    pub fn get(&self, size: usize) -> usize {
        self.0.get(&size).copied().unwrap_or(0)
    }

    pub fn add(&mut self, size: usize, count: usize) {
        if count > 0 {
            *self.0.entry(size).or_insert(0) += count;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn max_size(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Dense vector of length `len` (entry k is the count for size k + 1).
    pub fn dense(&self, len: usize) -> Vec<usize> {
        (1..=len).map(|k| self.get(k)).collect()
    }

    /// Σ size·count.
    pub fn weight(&self) -> usize {
        self.iter().map(|(k, v)| k * v).sum()
    }

    /// Σ count.
    pub fn total(&self) -> usize {
        self.iter().map(|(_, v)| v).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn merged(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add(k, v);
        }
        out
    }
}

/// An index (𝐦, 𝐫) with ‖𝐦‖ + ‖𝐫‖ = n.
///
/// For finite ℓ, 𝐦 is supported on sizes 1..=ℓ and 𝐫 on 1..ℓ; for generic q
/// both may use any size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentIndex {
    ell: Ell,
    m: Counts,
    r: Counts,
}

impl ComponentIndex {
    pub fn new(ell: Ell, m: Counts, r: Counts) -> Result<Self> {
        if let Ell::Finite(l) = ell {
            if m.max_size() > l {
                return Err(Error::invalid(format!("m has an entry beyond ell = {l}")));
            }
            if !r.is_empty() && r.max_size() >= l {
                return Err(Error::invalid(format!(
                    "r has an entry at or beyond ell = {l}"
                )));
            }
        }
        Ok(ComponentIndex { ell, m, r })
    }

    /// From dense vectors (entry k is the count for size k + 1).
    pub fn from_dense(ell: Ell, m: &[usize], r: &[usize]) -> Result<Self> {
        if let Ell::Finite(l) = ell {
            if m.len() > l || r.len() > l - 1 {
                return Err(Error::invalid(format!(
                    "expected at most {l} entries in m and {} in r",
                    l - 1
                )));
            }
        }
        Self::new(ell, Counts::from_dense(m), Counts::from_dense(r))
    }

    pub fn ell(&self) -> Ell {
        self.ell
    }

    pub fn m(&self) -> &Counts {
        &self.m
    }

    pub fn r(&self) -> &Counts {
        &self.r
    }

    /// ‖𝐦‖ + ‖𝐫‖.
    pub fn n(&self) -> usize {
        self.m.weight() + self.r.weight()
    }

    /// m_ℓ, or zero for generic q.
    pub fn m_top(&self) -> usize {
        match self.ell {
            Ell::Finite(l) => self.m.get(l),
            Ell::Infinite => 0,
        }
    }

    /// Dense 𝐦 of length ℓ (generic q: length n).
    pub fn m_dense(&self) -> Vec<usize> {
        self.m.dense(self.dense_len_m())
    }

    /// Dense 𝐫 of length ℓ - 1 (generic q: length n).
    pub fn r_dense(&self) -> Vec<usize> {
        self.r.dense(self.dense_len_r())
    }

    fn dense_len_m(&self) -> usize {
        match self.ell {
            Ell::Finite(l) => l,
            Ell::Infinite => self.n(),
        }
    }

    fn dense_len_r(&self) -> usize {
        match self.ell {
            Ell::Finite(l) => l - 1,
            Ell::Infinite => self.n(),
        }
    }

    /// Componentwise sum, the index of a direct sum of generic points.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ell != other.ell {
            return Err(Error::invalid("indices for different ell"));
        }
        Ok(ComponentIndex {
            ell: self.ell,
            m: self.m.merged(&other.m),
            r: self.r.merged(&other.r),
        })
    }
}

impl Ord for ComponentIndex {
    /// Lexicographic on the dense vectors (𝐦, then 𝐫).
    fn cmp(&self, other: &Self) -> Ordering {
        let lm = self.m.max_size().max(other.m.max_size());
        let lr = self.r.max_size().max(other.r.max_size());
        self.ell
            .cmp(&other.ell)
            .then_with(|| self.m.dense(lm).cmp(&other.m.dense(lm)))
            .then_with(|| self.r.dense(lr).cmp(&other.r.dense(lr)))
    }
}

impl PartialOrd for ComponentIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ComponentIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={:?} r={:?}", self.m_dense(), self.r_dense())
    }
}

/// All multiplicity vectors of partitions of `t` with parts ≤ `max_part`.
fn partitions_as_counts(t: usize, max_part: usize) -> Vec<Counts> {
    fn rec(rest: usize, max_part: usize, cur: &mut Counts, out: &mut Vec<Counts>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            cur.add(part, 1);
            rec(rest - part, part, cur, out);
            let c = cur.0.get_mut(&part).expect("just added");
            *c -= 1;
            if *c == 0 {
                cur.0.remove(&part);
            }
        }
    }
    let mut out = Vec::new();
    rec(t, max_part, &mut Counts::new(), &mut out);
    out
}

/// Every index (𝐦, 𝐫) with ‖𝐦‖ + ‖𝐫‖ = n, sorted lexicographically.
pub fn enumerate_ml(ell: Ell, n: usize) -> Vec<ComponentIndex> {
    let (m_max, r_max) = match ell {
        Ell::Finite(l) => (l, l - 1),
        Ell::Infinite => (n, n),
    };
    let mut out = Vec::new();
    for i in 0..=n {
        let rs = partitions_as_counts(i, r_max);
        if rs.is_empty() {
            continue;
        }
        let ms = partitions_as_counts(n - i, m_max);
        for r in &rs {
            for m in &ms {
                out.push(ComponentIndex {
                    ell,
                    m: m.clone(),
                    r: r.clone(),
                });
            }
        }
    }
    out.sort();
    out
}

/// Σ_{i+j=n} p_{ℓ-1}(i)·p_ℓ(j), or Σ p(i)p(j) for generic q.
pub fn count_ml(ell: Ell, n: usize) -> u128 {
    (0..=n)
        .map(|i| match ell {
            Ell::Finite(l) => {
                restricted_partition_count(l - 1, i) * restricted_partition_count(l, n - i)
            }
            Ell::Infinite => {
                restricted_partition_count(i, i) * restricted_partition_count(n - i, n - i)
            }
        })
        .sum()
}

/// n² + m_ℓ for finite ℓ, n² for generic q.
pub fn dim_component(idx: &ComponentIndex) -> usize {
    let n = idx.n();
    n * n + idx.m_top()
}

/// Dimension assembled from the generator strata: Σ dim(generator) plus
/// n_i·n_j - hom for each ordered pair of distinct summands, with hom = 0.
pub fn dim_component_via_cbs(idx: &ComponentIndex) -> usize {
    let mut sizes = Vec::new();
    let mut generator_dims = 0;
    for (i, count) in idx.m.iter() {
        let dim = match idx.ell {
            Ell::Finite(l) if i == l => l * l + 1,
            _ => i * i,
        };
        generator_dims += dim * count;
        sizes.extend(std::iter::repeat_n(i, count));
    }
    for (j, count) in idx.r.iter() {
        generator_dims += j * j * count;
        sizes.extend(std::iter::repeat_n(j, count));
    }
    let mut cross = 0;
    for (a, &na) in sizes.iter().enumerate() {
        for (b, &nb) in sizes.iter().enumerate() {
            if a != b {
                cross += na * nb;
            }
        }
    }
    generator_dims + cross
}

/// ((m_1..m_ℓ), (r_1..r_{ℓ-1})) ↦ ((r_1..r_{ℓ-1}, m_ℓ), (m_1..m_{ℓ-1}));
/// for generic q, 𝐦 and 𝐫 swap.
pub fn theta_index(idx: &ComponentIndex) -> ComponentIndex {
    match idx.ell {
        Ell::Finite(l) => {
            let mut m = Counts::new();
            let mut r = Counts::new();
            for (j, c) in idx.r.iter() {
                m.add(j, c);
            }
            m.add(l, idx.m.get(l));
            for (i, c) in idx.m.iter() {
                if i < l {
                    r.add(i, c);
                }
            }
            ComponentIndex { ell: idx.ell, m, r }
        }
        Ell::Infinite => ComponentIndex {
            ell: idx.ell,
            m: idx.r.clone(),
            r: idx.m.clone(),
        },
    }
}

/// The switch (A, B) ↦ (B, A) transported back to the original scalar field.
///
/// (B, A) satisfies BA = q⁻¹AB. Applying the automorphism q ↦ q⁻¹ to every
/// entry yields a pair for the original q, so the result is again a valid
/// [`MatrixPair`] in the same context and can be classified directly.
pub fn theta_point(p: &MatrixPair) -> Result<MatrixPair> {
    MatrixPair::new(p.b().invert_q(), p.a().invert_q())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(ell: Ell, m: &[usize], r: &[usize]) -> ComponentIndex {
        ComponentIndex::from_dense(ell, m, r).unwrap()
    }

    #[test]
    fn enumerate_small_cases() {
        let list = enumerate_ml(Ell::Finite(2), 2);
        assert_eq!(
            list,
            vec![
                idx(Ell::Finite(2), &[0, 0], &[2]),
                idx(Ell::Finite(2), &[0, 1], &[0]),
                idx(Ell::Finite(2), &[1, 0], &[1]),
                idx(Ell::Finite(2), &[2, 0], &[0]),
            ]
        );
        assert_eq!(count_ml(Ell::Finite(2), 2), 4);
        for n in 0..6 {
            let one = enumerate_ml(Ell::Finite(1), n);
            assert_eq!(one, vec![idx(Ell::Finite(1), &[n], &[])]);
        }
        assert_eq!(enumerate_ml(Ell::Finite(3), 0).len(), 1);
        assert_eq!(enumerate_ml(Ell::Infinite, 0).len(), 1);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_component(&idx(Ell::Finite(2), &[0, 1], &[0])), 5);
        assert_eq!(dim_component(&idx(Ell::Infinite, &[1, 1], &[])), 9);
        assert_eq!(dim_component(&idx(Ell::Finite(3), &[0, 0, 0], &[3, 0])), 9);
        assert_eq!(
            dim_component_via_cbs(&idx(Ell::Finite(3), &[0, 0, 1], &[])),
            10
        );
        assert_eq!(
            dim_component_via_cbs(&idx(Ell::Finite(3), &[2, 0, 0], &[])),
            4
        );
    }

    #[test]
    fn theta_examples() {
        let i = idx(Ell::Finite(3), &[1, 0, 2], &[0, 1]);
        let t = theta_index(&i);
        assert_eq!(t, idx(Ell::Finite(3), &[0, 1, 2], &[1, 0]));
        assert_eq!(theta_index(&t), i);
        let g = idx(Ell::Infinite, &[1, 0, 1], &[2]);
        assert_eq!(theta_index(&g), idx(Ell::Infinite, &[2], &[1, 0, 1]));
    }

    #[test]
    fn index_validation() {
        assert!(ComponentIndex::from_dense(Ell::Finite(2), &[0, 0, 1], &[]).is_err());
        assert!(ComponentIndex::from_dense(Ell::Finite(2), &[0, 1], &[0, 1]).is_err());
        assert!(ComponentIndex::from_dense(Ell::Finite(1), &[3], &[]).is_ok());
    }
}
