//! Assigns to a q-commuting pair the component index whose component
//! contains it, using only the Jordan data of A.

use crate::components::{ComponentIndex, Counts};
use crate::error::Result;
use crate::jordan_spec::{jordan_data, q_classes, ClassBase, JordanSpec, QClass};
use crate::qchains::associated_sequence;
use crate::qcommutant::MatrixPair;
use crate::qscalar::{Ell, QScalar};

/// Contribution of `n_mult` nilpotent Jordan blocks of size `s`: writing
/// s = kℓ + t with 0 ≤ t < ℓ adds n_mult·k to m_ℓ and n_mult to r_t.
pub fn classify_nilpotent_block(s: usize, n_mult: usize, ell: Ell) -> ComponentIndex {
    let mut m = Counts::new();
    let mut r = Counts::new();
    match ell {
        Ell::Finite(l) => {
            m.add(l, n_mult * (s / l));
            if !s.is_multiple_of(l) {
                r.add(s % l, n_mult);
            }
        }
        Ell::Infinite => r.add(s, n_mult),
    }
    ComponentIndex::new(ell, m, r).expect("sizes within range")
}

/// Contribution of a nonzero q-class: for each column of the transposed
/// aligned partitions, the associated sequence of that column's counts.
pub fn classify_q_class(cls: &QClass, ell: Ell) -> ComponentIndex {
    if cls.base == ClassBase::Nilpotent {
        let blocks = cls.partitions.iter().flat_map(|p| p.parts());
        return sum_all(ell, blocks.map(|&s| classify_nilpotent_block(s, 1, ell)));
    }
    let mut m = Counts::new();
    let transposed: Vec<Vec<usize>> = cls
        .partitions
        .iter()
        .map(|p| p.transpose().parts().to_vec())
        .collect();
    let columns = transposed.iter().map(Vec::len).max().unwrap_or(0);
    for j in 0..columns {
        let counts: Vec<usize> = transposed
            .iter()
            .map(|t| t.get(j).copied().unwrap_or(0))
            .collect();
        let seq = associated_sequence(&counts, ell).expect("aligned to ell slots");
        for (k, &c) in seq.iter().enumerate() {
            m.add(k + 1, c);
        }
    }
    ComponentIndex::new(ell, m, Counts::new()).expect("chain lengths within range")
}

fn sum_all(ell: Ell, parts: impl Iterator<Item = ComponentIndex>) -> ComponentIndex {
    parts.fold(
        ComponentIndex::new(ell, Counts::new(), Counts::new()).expect("empty index"),
        |acc, c| acc.sum(&c).expect("same ell"),
    )
}

/// Index for a Jordan type of A.
pub fn classify_spec(spec: &JordanSpec) -> ComponentIndex {
    let ctx = spec.ctx();
    let ell = ctx.ell();
    let mut parts = Vec::new();
    for cls in q_classes(spec) {
        match (&cls.base, ell) {
            (ClassBase::Nilpotent, _) => parts.push(classify_q_class(&cls, ell)),
            (ClassBase::Nonzero(_), Ell::Infinite) => {
                for run in cls.contiguous_runs(ctx) {
                    parts.push(classify_q_class(&run, ell));
                }
            }
            (ClassBase::Nonzero(_), Ell::Finite(_)) => parts.push(classify_q_class(&cls, ell)),
        }
    }
    sum_all(ell, parts.into_iter())
}

/// Index of the irreducible component whose covering family contains the
/// pair. Eigenvalues of A not of the form c·q^k must be passed as hints.
pub fn classify(pair: &MatrixPair, hints: &[QScalar]) -> Result<ComponentIndex> {
    let spec = jordan_data(pair.a(), hints)?;
    Ok(classify_spec(&spec))
}
