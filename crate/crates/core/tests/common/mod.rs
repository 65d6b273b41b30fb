//! Independent oracles and random generators shared by the integration
//! tests and the acceptance suite. Nothing here calls the library routine it
//! is meant to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use qplane::components::ComponentIndex;
use qplane::jordan_spec::JordanSpec;
use qplane::{Ell, FieldContext, QMatrix, QScalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Partitions of `n` with every part ≤ `max_part`, listed explicitly.
pub fn partitions_bounded(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, &mut Vec::new(), &mut out);
    out
}

/// Σ_{i+j=n} p_{ℓ−1}(i)·p_ℓ(j), or Σ p(i)p(j) for ℓ = ∞, by listing partitions.
pub fn component_count_oracle(ell: Ell, n: usize) -> usize {
    let (r_cap, m_cap) = match ell {
        Ell::Finite(l) => (l - 1, l),
        Ell::Infinite => (n, n),
    };
    (0..=n)
        .map(|i| partitions_bounded(i, r_cap).len() * partitions_bounded(n - i, m_cap).len())
        .sum()
}

/// Σ_j min(n_j, …, n_{j+w−1}) over windows of width w; off-end windows
/// count zero when not cyclic.
pub fn window_min_oracle(counts: &[usize], width: usize, cyclic: bool) -> usize {
    let len = counts.len();
    let mut total = 0;
    for start in 0..len {
        let mut lo = usize::MAX;
        for k in 0..width {
            let pos = start + k;
            let value = if pos < len {
                counts[pos]
            } else if cyclic {
                counts[pos % len]
            } else {
                0
            };
            lo = lo.min(value);
        }
        total += lo;
    }
    total
}

/// ℓm_ℓ + Σ_{j=i+1}^{ℓ−1}(j−i)m_j = Σ window-min of width i+1, 0 ≤ i < ℓ.
pub fn window_identity_oracle(counts: &[usize], m: &[usize]) -> bool {
    let l = counts.len();
    (0..l).all(|i| {
        let mut lhs = l * m[l - 1];
        for j in i + 1..l {
            lhs += (j - i) * m[j - 1];
        }
        lhs == window_min_oracle(counts, i + 1, true)
    })
}

fn chain_positions(start: usize, len: usize, slots: usize, cyclic: bool) -> Option<Vec<usize>> {
    if cyclic {
        Some((0..len).map(|k| (start + k) % slots).collect())
    } else if start + len <= slots {
        Some((start..start + len).collect())
    } else {
        None
    }
}

/// Longest run of occupied positions, cyclic runs capped at the slot count.
fn longest_run(occupied: &[bool], cyclic: bool) -> usize {
    let slots = occupied.len();
    if cyclic && occupied.iter().all(|&o| o) {
        return slots;
    }
    let span = if cyclic { 2 * slots } else { slots };
    let mut best = 0;
    let mut cur = 0;
    for k in 0..span {
        if occupied[k % slots] {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best.min(slots)
}

/// Every decomposition of the multiset with the given position counts into
/// chains such that no union of two parts contains a longer chain than
/// either part; returns the distinct length-count vectors found.
pub fn brute_force_decompositions(counts: &[usize], ell: Ell) -> BTreeSet<Vec<usize>> {
    let slots = counts.len();
    let cyclic = !ell.is_infinite();
    let mut chains = Vec::new();
    for len in 1..=slots {
        for start in 0..slots {
            if let Some(pos) = chain_positions(start, len, slots, cyclic) {
                chains.push(pos);
            }
        }
    }

    fn go(
        idx: usize,
        remaining: &mut Vec<usize>,
        chains: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if remaining.iter().all(|&c| c == 0) {
            found.push(chosen.clone());
            return;
        }
        if idx == chains.len() {
            return;
        }
        // Either use chain `idx` once more or move on.
        if chains[idx].iter().all(|&p| remaining[p] > 0) {
            for &p in &chains[idx] {
                remaining[p] -= 1;
            }
            chosen.push(idx);
            go(idx, remaining, chains, chosen, found);
            chosen.pop();
            for &p in &chains[idx] {
                remaining[p] += 1;
            }
        }
        go(idx + 1, remaining, chains, chosen, found);
    }

    let mut found = Vec::new();
    go(
        0,
        &mut counts.to_vec(),
        &chains,
        &mut Vec::new(),
        &mut found,
    );

    let mut out = BTreeSet::new();
    for deco in found {
        let valid = deco.iter().enumerate().all(|(x, &cx)| {
            deco.iter().skip(x + 1).all(|&cy| {
                let mut occupied = vec![false; slots];
                for &p in chains[cx].iter().chain(&chains[cy]) {
                    occupied[p] = true;
                }
                longest_run(&occupied, cyclic) <= chains[cx].len().max(chains[cy].len())
            })
        });
        if valid {
            let mut lengths = vec![0; slots];
            for &c in &deco {
                lengths[chains[c].len() - 1] += 1;
            }
            out.insert(lengths);
        }
    }
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &QMatrix) -> QScalar {
    let n = m.rows();
    let ctx = m.ctx();
    if n == 0 {
        return QScalar::one(ctx);
    }
    let mut total = QScalar::zero(ctx);
    for c in 0..n {
        if m.get(0, c).is_zero() {
            continue;
        }
        let minor = QMatrix::from_fn(ctx, n - 1, n - 1, |i, j| {
            m.get(i + 1, if j < c { j } else { j + 1 }).clone()
        });
        let term = m.get(0, c) * &cofactor_det(&minor);
        total = if c % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A random scalar with several nonzero coordinates in its field.
pub fn random_scalar(ctx: FieldContext, rng: &mut ChaCha8Rng) -> QScalar {
    let q = QScalar::q(ctx);
    let mut x = QScalar::zero(ctx);
    let mut power = QScalar::one(ctx);
    for _ in 0..3 {
        x = &x + &power.scale(&small_rational(rng));
        power = &power * &q;
    }
    x
}

pub fn random_matrix(ctx: FieldContext, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    QMatrix::from_fn(ctx, rows, cols, |_, _| {
        QScalar::from_rational(ctx, small_rational(rng))
    })
}

/// A random invertible matrix; small sizes are checked by cofactor determinant.
pub fn random_invertible(ctx: FieldContext, n: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    loop {
        let g = QMatrix::from_fn(ctx, n, n, |_, _| {
            QScalar::from_int(ctx, rng.gen_range(-2..=2))
        });
        let invertible = if n <= 6 {
            !cofactor_det(&g).is_zero()
        } else {
            g.rank() == n
        };
        if invertible {
            return g;
        }
    }
}

/// A product of `n` random transvections: integral with integral inverse,
/// so conjugating by it keeps entries small.
pub fn random_unimodular(ctx: FieldContext, n: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    let mut g = QMatrix::identity(ctx, n);
    if n < 2 {
        return g;
    }
    for _ in 0..n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = QScalar::from_int(ctx, [-2, -1, 1, 2][rng.gen_range(0..4)]);
        let mut t = QMatrix::identity(ctx, n);
        t = t.with_entry(i, j, c);
        g = g.mul(&t).unwrap();
    }
    g
}

/// A random partition of `n` into at most `n` parts.
pub fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut rest = n;
    while rest > 0 {
        let p = rng.gen_range(1..=rest);
        parts.push(p);
        rest -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// A Jordan type whose eigenvalues lie on a few q-orbits (and possibly 0),
/// with total size at most `max_n`.
pub fn random_orbit_spec(ctx: FieldContext, max_n: usize, rng: &mut ChaCha8Rng) -> JordanSpec {
    let orbit_len = ctx.ell().finite().unwrap_or(4);
    let bases = [2_i64, 3, 5, 7];
    let mut pairs: Vec<(QScalar, Vec<usize>)> = Vec::new();
    let mut budget = rng.gen_range(1..=max_n);
    let mut seen = BTreeSet::new();
    let pool = bases.len() * orbit_len + 1;
    while budget > 0 && seen.len() < pool {
        let eigen = if rng.gen_bool(0.2) {
            QScalar::zero(ctx)
        } else {
            let base = QScalar::from_int(ctx, bases[rng.gen_range(0..bases.len())]);
            &base * &QScalar::q_pow(ctx, -(rng.gen_range(0..orbit_len) as i64))
        };
        if !seen.insert(eigen.clone()) {
            continue;
        }
        let size = rng.gen_range(1..=budget.min(3));
        budget -= size;
        pairs.push((eigen, random_partition(size, rng)));
    }
    JordanSpec::from_pairs(ctx, pairs).expect("distinct eigenvalues")
}

/// A matrix in Jordan form for `spec`, blocks laid out in spec order.
pub fn jordan_matrix(spec: &JordanSpec) -> QMatrix {
    let ctx = spec.ctx();
    let blocks: Vec<QMatrix> = spec
        .blocks()
        .iter()
        .flat_map(|b| {
            b.partition
                .parts()
                .iter()
                .map(|&s| QMatrix::jordan_block(&b.eigenvalue, s))
                .collect::<Vec<_>>()
        })
        .collect();
    QMatrix::block_diag(ctx, &blocks).expect("same context")
}

/// (eigenvalue, size) for each Jordan block, in spec order.
pub fn block_list(spec: &JordanSpec) -> Vec<(QScalar, usize)> {
    spec.blocks()
        .iter()
        .flat_map(|b| {
            b.partition
                .parts()
                .iter()
                .map(|&s| (b.eigenvalue.clone(), s))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// dim{X : AX = qXA} = Σ over block pairs with λ_i = qλ_j of min(s_i, s_j).
pub fn commutant_dim_oracle(spec: &JordanSpec) -> usize {
    let q = QScalar::q(spec.ctx());
    let blocks = block_list(spec);
    let mut total = 0;
    for (li, si) in &blocks {
        for (lj, sj) in &blocks {
            if *li == &q * lj {
                total += si.min(sj);
            }
        }
    }
    total
}

/// Expected (rank A, rank B) on a generic stratum point: A loses one rank
/// per V block; B loses one per non-cyclic U block.
pub fn rank_profile_oracle(idx: &ComponentIndex) -> (usize, usize) {
    let n = idx.n();
    let u_blocks = idx.m().total();
    let v_blocks = idx.r().total();
    (n - v_blocks, n - u_blocks + idx.m_top())
}
