//! q-chains: decomposing eigenvalue multisets into chains a, aq⁻¹, …,
//! the associated sequence of a count vector, and partition counting.

use crate::error::{Error, Result};
use crate::qscalar::{q_equivalent, Ell, FieldContext, QScalar};

/// Number of partitions of `t` with all parts ≤ `s`.
pub fn restricted_partition_count(s: usize, t: usize) -> u128 {
    // table[j] = p_{s'}(j), built up for s' = 0..=s
    let mut table = vec![0u128; t + 1];
    table[0] = 1;
    for part in 1..=s.min(t.max(1)) {
        for j in part..=t {
            table[j] += table[j - part];
        }
    }
    table[t]
}

/// Number of partitions of `t`.
pub fn partition_count(t: usize) -> u128 {
    restricted_partition_count(t, t)
}

/// Σ over windows of `width` consecutive entries of the window minimum.
/// Cyclic windows wrap around; linear windows that run off the end count 0.
pub fn window_min_sum(counts: &[usize], width: usize, cyclic: bool) -> usize {
    let len = counts.len();
    if width == 0 || len == 0 {
        return 0;
    }
    (0..len)
        .map(|start| {
            if !cyclic && start + width > len {
                return 0;
            }
            (0..width)
                .map(|k| counts[(start + k) % len])
                .min()
                .expect("nonempty window")
        })
        .sum()
}

/// The associated sequence (m_1, …, m_L) of a count vector.
///
/// For finite ℓ the vector is cyclic of length ℓ and m_ℓ = min(counts). For
/// generic q it is linear and L = counts.len().
pub fn associated_sequence(counts: &[usize], ell: Ell) -> Result<Vec<usize>> {
    match ell {
        Ell::Finite(l) => {
            if counts.len() != l {
                return Err(Error::LengthMismatch {
                    expected: l,
                    got: counts.len(),
                });
            }
            let top = *counts.iter().min().expect("ell >= 1");
            // f[i] for 0 ≤ i ≤ ℓ, with f[ℓ] = ℓ·m_ℓ
            let mut f: Vec<i64> = (0..l)
                .map(|i| window_min_sum(counts, i + 1, true) as i64)
                .collect();
            f.push((l * top) as i64);
            let mut m: Vec<usize> = (1..l)
                .map(|i| {
                    let v = (f[i - 1] - f[i]) - (f[i] - f[i + 1]);
                    usize::try_from(v).expect("associated counts are nonnegative")
                })
                .collect();
            m.push(top);
            Ok(m)
        }
        Ell::Infinite => {
            let len = counts.len();
            let f = |i: usize| window_min_sum(counts, i + 1, false) as i64;
            Ok((1..=len)
                .map(|i| {
                    let v = f(i - 1) - 2 * f(i) + f(i + 1);
                    usize::try_from(v).expect("associated counts are nonnegative")
                })
                .collect())
        }
    }
}

/// Checks ℓm_ℓ + Σ_{j=i+1}^{ℓ-1} (j-i)m_j = Σ_j min(n_j, …, n_{j+i}) for
/// every 0 ≤ i ≤ ℓ-1 (cyclic count vectors only).
pub fn window_min_identity_holds(counts: &[usize], m: &[usize]) -> bool {
    let l = counts.len();
    if m.len() != l || l == 0 {
        return false;
    }
    (0..l).all(|i| {
        let lhs = l * m[l - 1] + (i + 1..l).map(|j| (j - i) * m[j - 1]).sum::<usize>();
        lhs == window_min_sum(counts, i + 1, true)
    })
}

/// A chain occupying positions start, start+1, …, start+len-1 of a count
/// vector (cyclically for finite ℓ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionChain {
    pub start: usize,
    pub len: usize,
}

/// Greedy longest-run-first extraction from a count vector. Ties go to the
/// smallest starting position.
pub fn greedy_chains(counts: &[usize], ell: Ell) -> Vec<PositionChain> {
    let cyclic = !ell.is_infinite();
    let len = counts.len();
    let mut rest = counts.to_vec();
    let mut out = Vec::new();
    loop {
        let mut best: Option<PositionChain> = None;
        for start in 0..len {
            if rest[start] == 0 {
                continue;
            }
            let mut run = 0;
            while run < len && rest[(start + run) % len] > 0 && (cyclic || start + run < len) {
                run += 1;
            }
            if best.is_none_or(|b| run > b.len) {
                best = Some(PositionChain { start, len: run });
            }
        }
        let Some(chain) = best else {
            return out;
        };
        for k in 0..chain.len {
            rest[(chain.start + k) % len] -= 1;
        }
        out.push(chain);
    }
}

/// Chain-length counts of the greedy decomposition.
pub fn greedy_counts(counts: &[usize], ell: Ell) -> Vec<usize> {
    let mut m = vec![0; counts.len()];
    for c in greedy_chains(counts, ell) {
        m[c.len - 1] += 1;
    }
    m
}

/// A q-chain base, base·q⁻¹, …, base·q^{-(length-1)}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub base: QScalar,
    pub length: usize,
}

impl Chain {
    pub fn elements(&self) -> Vec<QScalar> {
        let ctx = self.base.ctx();
        (0..self.length)
            .map(|k| &self.base * &QScalar::q_pow(ctx, -(k as i64)))
            .collect()
    }
}

/// Decomposition of a multiset of nonzero scalars into q-chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub chains: Vec<Chain>,
    /// `length_counts[i]` is the number of chains of length i+1.
    pub length_counts: Vec<usize>,
}

impl ChainDecomposition {
    /// No two chains have a union containing a q-chain longer than both.
    pub fn is_maximal(&self, ctx: FieldContext) -> bool {
        self.chains.iter().enumerate().all(|(i, c1)| {
            self.chains[i + 1..]
                .iter()
                .all(|c2| longest_chain_in_union(ctx, c1, c2) <= c1.length.max(c2.length))
        })
    }
}

fn longest_chain_in_union(ctx: FieldContext, c1: &Chain, c2: &Chain) -> usize {
    let Some(m) = q_equivalent(&c2.base, &c1.base).expect("nonzero bases") else {
        return c1.length.max(c2.length);
    };
    // With position p meaning c1.base·q^{-p}, chain 1 covers 0..len1 and
    // chain 2 (base c1.base·q^m) covers -m..-m+len2.
    let (len1, len2) = (c1.length as i64, c2.length as i64);
    let (size, offset, cyclic) = match ctx.ell() {
        Ell::Finite(l) => (l as i64, 0, true),
        Ell::Infinite => {
            let lo = (-m).min(0);
            let hi = len1.max(len2 - m);
            (hi - lo, -lo, false)
        }
    };
    let mut occupied = vec![false; size as usize];
    for p in (0..len1).chain((0..len2).map(|k| k - m)) {
        occupied[(p + offset).rem_euclid(size) as usize] = true;
    }
    let size = size as usize;
    let mut best = 0;
    for start in 0..size {
        let mut run = 0;
        while run < size && occupied[(start + run) % size] && (cyclic || start + run < size) {
            run += 1;
        }
        best = best.max(run);
    }
    best
}

/// Positions of each element of a q-class on a count vector, plus the scalar
/// sitting at position 0.
struct ClassLayout {
    origin: QScalar,
    counts: Vec<usize>,
}

fn layout_classes(items: &[QScalar], ctx: FieldContext) -> Vec<ClassLayout> {
    let mut classes: Vec<(QScalar, Vec<i64>)> = Vec::new();
    for x in items {
        let found = classes.iter_mut().find_map(|(r, exps)| {
            q_equivalent(x, r)
                .expect("nonzero, same context")
                .map(|e| (exps, e))
        });
        match found {
            Some((exps, e)) => exps.push(e),
            None => classes.push((x.clone(), vec![0])),
        }
    }
    classes
        .into_iter()
        .map(|(reference, exps)| match ctx.ell() {
            Ell::Finite(l) => {
                let mut counts = vec![0; l];
                for e in exps {
                    counts[(-e).rem_euclid(l as i64) as usize] += 1;
                }
                ClassLayout {
                    origin: reference,
                    counts,
                }
            }
            Ell::Infinite => {
                let top = *exps.iter().max().expect("nonempty");
                let bottom = *exps.iter().min().expect("nonempty");
                let mut counts = vec![0; (top - bottom + 1) as usize];
                for e in exps {
                    counts[(top - e) as usize] += 1;
                }
                ClassLayout {
                    origin: &reference * &QScalar::q_pow(ctx, top),
                    counts,
                }
            }
        })
        .collect()
}

/// Splits a multiset of nonzero scalars into q-chains, class by class,
/// using greedy longest-run extraction.
pub fn chain_decompose(items: &[QScalar], ctx: FieldContext) -> Result<ChainDecomposition> {
    if items.iter().any(QScalar::is_zero) {
        return Err(Error::ZeroArgument);
    }
    if items.iter().any(|x| x.ctx() != ctx) {
        return Err(Error::MixedContext);
    }
    let mut chains = Vec::new();
    let mut length_counts = Vec::new();
    for class in layout_classes(items, ctx) {
        for c in greedy_chains(&class.counts, ctx.ell()) {
            let base = &class.origin * &QScalar::q_pow(ctx, -(c.start as i64));
            if length_counts.len() < c.len {
                length_counts.resize(c.len, 0);
            }
            length_counts[c.len - 1] += 1;
            chains.push(Chain {
                base,
                length: c.len,
            });
        }
    }
    if let Ell::Finite(l) = ctx.ell() {
        length_counts.resize(l, 0);
    }
    Ok(ChainDecomposition {
        chains,
        length_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(restricted_partition_count(2, 2), 2);
        for k in 0..10 {
            assert_eq!(restricted_partition_count(1, k), 1);
        }
        assert_eq!(restricted_partition_count(0, 3), 0);
        assert_eq!(restricted_partition_count(0, 0), 1);
        assert_eq!(restricted_partition_count(4, 0), 1);
        assert_eq!(partition_count(0), 1);
        assert_eq!(partition_count(5), 7);
        assert_eq!(partition_count(12), 77);
    }

    #[test]
    fn worked_example() {
        let counts = [3, 2, 3, 1];
        let m = associated_sequence(&counts, Ell::Finite(4)).unwrap();
        assert_eq!(m, vec![2, 0, 1, 1]);
        assert_eq!(greedy_counts(&counts, Ell::Finite(4)), m);
        assert!(window_min_identity_holds(&counts, &m));
    }

    #[test]
    fn small_sequences() {
        assert_eq!(
            associated_sequence(&[0, 0, 0], Ell::Finite(3)).unwrap(),
            vec![0, 0, 0]
        );
        assert_eq!(
            associated_sequence(&[2, 1], Ell::Finite(2)).unwrap(),
            vec![1, 1]
        );
        assert_eq!(
            associated_sequence(&[1, 1], Ell::Infinite).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            associated_sequence(&[1, 2, 1], Ell::Infinite).unwrap(),
            vec![1, 0, 1]
        );
        assert!(associated_sequence(&[1], Ell::Finite(2)).is_err());
    }

    #[test]
    fn decompose_worked_example() {
        let ctx = FieldContext::cyclotomic(4).unwrap();
        let bases: Vec<QScalar> = [2, 3, 5]
            .iter()
            .map(|&b| QScalar::from_int(ctx, b))
            .collect();
        let qi = |k: i64| QScalar::q_pow(ctx, -k);
        let s = vec![
            bases[0].clone(),
            bases[1].clone(),
            bases[2].clone(),
            &bases[0] * &qi(1),
            &bases[1] * &qi(1),
            &bases[0] * &qi(2),
            &bases[1] * &qi(2),
            &bases[2] * &qi(2),
            &bases[0] * &qi(3),
        ];
        let d = chain_decompose(&s, ctx).unwrap();
        assert_eq!(d.length_counts, vec![2, 0, 1, 1]);
        assert!(d.chains.contains(&Chain {
            base: bases[0].clone(),
            length: 4
        }));
        assert!(d.chains.contains(&Chain {
            base: bases[1].clone(),
            length: 3
        }));
        assert!(d.chains.contains(&Chain {
            base: bases[2].clone(),
            length: 1
        }));
        assert!(d.chains.contains(&Chain {
            base: &bases[2] * &qi(2),
            length: 1
        }));
        assert!(d.is_maximal(ctx));
    }

    #[test]
    fn decompose_small() {
        let ctx = FieldContext::cyclotomic(3).unwrap();
        let a = QScalar::from_int(ctx, 7);
        let d = chain_decompose(std::slice::from_ref(&a), ctx).unwrap();
        assert_eq!(
            d.chains,
            vec![Chain {
                base: a.clone(),
                length: 1
            }]
        );
        let pair = [a.clone(), &a * &QScalar::q_pow(ctx, -1)];
        let d = chain_decompose(&pair, ctx).unwrap();
        assert_eq!(
            d.chains,
            vec![Chain {
                base: a.clone(),
                length: 2
            }]
        );
        assert_eq!(
            chain_decompose(&[QScalar::zero(ctx)], ctx),
            Err(Error::ZeroArgument)
        );

        let singletons = ChainDecomposition {
            chains: vec![
                Chain {
                    base: pair[0].clone(),
                    length: 1,
                },
                Chain {
                    base: pair[1].clone(),
                    length: 1,
                },
            ],
            length_counts: vec![2, 0, 0],
        };
        assert!(!singletons.is_maximal(ctx));
    }

    #[test]
    fn generic_chains_are_linear() {
        let ctx = FieldContext::GenericQ;
        let a = QScalar::from_int(ctx, 2);
        let items: Vec<QScalar> = (0..5).map(|k| &a * &QScalar::q_pow(ctx, -k)).collect();
        let d = chain_decompose(&items, ctx).unwrap();
        assert_eq!(d.chains, vec![Chain { base: a, length: 5 }]);
        assert!(d.is_maximal(ctx));
    }
}
