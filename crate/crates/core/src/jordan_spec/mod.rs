//! Jordan normal form data: building matrices from it, recovering it from
//! matrices, and grouping eigenvalues into q-equivalence classes.

mod roots;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_matrix::QMatrix;
use crate::qscalar::{q_equivalent, FieldContext, QScalar};

pub use roots::find_eigenvalues;

/// A weakly decreasing list of positive parts. The empty partition is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn transpose(&self) -> Self {
        transpose_partition(self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The conjugate partition: part k counts the parts of `nu` that are ≥ k.
pub fn transpose_partition(nu: &Partition) -> Partition {
    let largest = nu.0.first().copied().unwrap_or(0);
    Partition(
        (1..=largest)
            .map(|k| nu.0.iter().filter(|&&p| p >= k).count())
            .collect(),
    )
}

/// One eigenvalue together with its Jordan block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanBlock {
    pub eigenvalue: QScalar,
    pub partition: Partition,
}

/// A Jordan normal form: distinct eigenvalues, each with a nonempty partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanSpec {
    ctx: FieldContext,
    blocks: Vec<JordanBlock>,
}

impl JordanSpec {
    pub fn new(ctx: FieldContext, blocks: Vec<JordanBlock>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.eigenvalue.ctx() != ctx {
                return Err(Error::MixedContext);
            }
            if b.partition.is_empty() {
                return Err(Error::invalid("empty partition in Jordan spec"));
            }
            if !seen.insert(b.eigenvalue.clone()) {
                return Err(Error::invalid(format!(
                    "eigenvalue {} listed twice",
                    b.eigenvalue
                )));
            }
        }
        Ok(JordanSpec { ctx, blocks })
    }

    /// Convenience constructor from `(eigenvalue, parts)` pairs.
    pub fn from_pairs(ctx: FieldContext, pairs: Vec<(QScalar, Vec<usize>)>) -> Result<Self> {
        let blocks = pairs
            .into_iter()
            .map(|(eigenvalue, parts)| {
                Ok(JordanBlock {
                    eigenvalue,
                    partition: Partition::new(parts)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, blocks)
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(|b| b.partition.size()).sum()
    }

    /// The same spec with blocks sorted by eigenvalue.
    pub fn canonical(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.sort_by(|a, b| a.eigenvalue.cmp(&b.eigenvalue));
        JordanSpec {
            ctx: self.ctx,
            blocks,
        }
    }

    /// Jordan blocks `(eigenvalue, size)` in realization order.
    pub fn jordan_blocks(&self) -> impl Iterator<Item = (&QScalar, usize)> {
        self.blocks
            .iter()
            .flat_map(|b| b.partition.parts().iter().map(move |&s| (&b.eigenvalue, s)))
    }
}

/// Block-diagonal matrix of Jordan blocks in spec order.
pub fn realize(spec: &JordanSpec) -> QMatrix {
    let blocks: Vec<QMatrix> = spec
        .jordan_blocks()
        .map(|(lambda, s)| QMatrix::jordan_block(lambda, s))
        .collect();
    QMatrix::block_diag(spec.ctx, &blocks).expect("blocks share the spec context")
}

/// Recovers the Jordan data of `a`. Eigenvalues must be of the form c·q^k
/// with c rational, or appear in `hints`.
pub fn jordan_data(a: &QMatrix, hints: &[QScalar]) -> Result<JordanSpec> {
    let n = a.square_size()?;
    let ctx = a.ctx();
    let cp = a.char_poly()?;
    let eigen = find_eigenvalues(&cp, hints)?;
    let id = QMatrix::identity(ctx, n);
    let mut blocks = Vec::with_capacity(eigen.len());
    for (lambda, mult) in eigen {
        let shifted = a.sub(&id.scale(&lambda))?;
        // ranks[k] = rank((A - λ)^k); stabilizes at n - mult.
        let mut ranks = vec![n];
        let mut power = id.clone();
        while *ranks.last().expect("nonempty") > n - mult {
            power = power.mul(&shifted)?;
            ranks.push(power.rank());
            if ranks.len() > n + 1 {
                return Err(Error::EigenvaluesNotFound(
                    "rank sequence failed to stabilize".into(),
                ));
            }
        }
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut parts = Vec::new();
        for (k, &cnt) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            parts.extend(std::iter::repeat_n(k + 1, cnt - next));
        }
        blocks.push(JordanBlock {
            eigenvalue: lambda,
            partition: Partition::from_parts(parts),
        });
    }
    JordanSpec::new(ctx, blocks)
}

/// Either the zero eigenvalue or a representative of a nonzero q-orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassBase {
    Nilpotent,
    Nonzero(QScalar),
}

/// Eigenvalues of one q-equivalence class with aligned partitions.
///
/// For a nonzero base `a`, `partitions[i]` belongs to the eigenvalue
/// `a·q^{-i}`; it is empty when that eigenvalue does not occur. For ℓ < ∞
/// there are exactly ℓ slots; for generic q the slots run from the highest
/// exponent present down to the lowest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QClass {
    pub base: ClassBase,
    pub partitions: Vec<Partition>,
}

impl QClass {
    /// The eigenvalue carried by slot `i`, or zero for the nilpotent class.
    pub fn eigenvalue_at(&self, ctx: FieldContext, i: usize) -> QScalar {
        match &self.base {
            ClassBase::Nilpotent => QScalar::zero(ctx),
            ClassBase::Nonzero(a) => a * &QScalar::q_pow(ctx, -(i as i64)),
        }
    }

    /// Nonempty `(eigenvalue, partition)` slots.
    pub fn members(&self, ctx: FieldContext) -> Vec<(QScalar, Partition)> {
        self.partitions
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(i, p)| (self.eigenvalue_at(ctx, i), p.clone()))
            .collect()
    }

    /// Splits a class into maximal runs of consecutive nonempty slots.
    /// Only meaningful for generic q, where slots are not cyclic.
    pub fn contiguous_runs(&self, ctx: FieldContext) -> Vec<QClass> {
        let ClassBase::Nonzero(_) = &self.base else {
            return vec![self.clone()];
        };
        let mut runs = Vec::new();
        let mut i = 0;
        while i < self.partitions.len() {
            if self.partitions[i].is_empty() {
                i += 1;
                continue;
            }
            let start = i;
            while i < self.partitions.len() && !self.partitions[i].is_empty() {
                i += 1;
            }
            runs.push(QClass {
                base: ClassBase::Nonzero(self.eigenvalue_at(ctx, start)),
                partitions: self.partitions[start..i].to_vec(),
            });
        }
        runs
    }
}

/// Groups the spectrum into the nilpotent class (listed first, if present)
/// and nonzero q-equivalence classes ordered by base.
pub fn q_classes(spec: &JordanSpec) -> Vec<QClass> {
    let ctx = spec.ctx();
    let mut out = Vec::new();
    let mut groups: Vec<Vec<&JordanBlock>> = Vec::new();
    let sorted = spec.canonical();
    for b in sorted.blocks() {
        if b.eigenvalue.is_zero() {
            out.push(QClass {
                base: ClassBase::Nilpotent,
                partitions: vec![b.partition.clone()],
            });
            continue;
        }
        let slot = groups.iter_mut().find(|g| {
            q_equivalent(&b.eigenvalue, &g[0].eigenvalue)
                .expect("nonzero, same context")
                .is_some()
        });
        match slot {
            Some(g) => g.push(b),
            None => groups.push(vec![b]),
        }
    }
    let mut nonzero: Vec<QClass> = groups.into_iter().map(|g| align_class(ctx, &g)).collect();
    nonzero.sort_by(|a, b| match (&a.base, &b.base) {
        (ClassBase::Nonzero(x), ClassBase::Nonzero(y)) => x.cmp(y),
        _ => std::cmp::Ordering::Equal,
    });
    out.extend(nonzero);
    out
}

fn align_class(ctx: FieldContext, members: &[&JordanBlock]) -> QClass {
    let reference = &members[0].eigenvalue;
    // λ = reference · q^{e}
    let exps: Vec<i64> = members
        .iter()
        .map(|b| {
            q_equivalent(&b.eigenvalue, reference)
                .expect("nonzero, same context")
                .expect("members are q-equivalent")
        })
        .collect();
    match ctx.ell().finite() {
        Some(ell) => {
            let ell_i = ell as i64;
            let occupied: BTreeSet<i64> = exps.iter().copied().collect();
            let full_cycle = occupied.len() == ell;
            // A run start is a member whose q-multiple is absent.
            let base_idx = (0..members.len())
                .filter(|&k| full_cycle || !occupied.contains(&((exps[k] + 1) % ell_i)))
                .min_by(|&a, &b| members[a].eigenvalue.cmp(&members[b].eigenvalue))
                .expect("nonempty class");
            let eb = exps[base_idx];
            let mut partitions = vec![Partition::empty(); ell];
            for (b, &e) in members.iter().zip(&exps) {
                partitions[(eb - e).rem_euclid(ell_i) as usize] = b.partition.clone();
            }
            QClass {
                base: ClassBase::Nonzero(members[base_idx].eigenvalue.clone()),
                partitions,
            }
        }
        None => {
            let top = *exps.iter().max().expect("nonempty class");
            let bottom = *exps.iter().min().expect("nonempty class");
            let mut partitions = vec![Partition::empty(); (top - bottom + 1) as usize];
            for (b, &e) in members.iter().zip(&exps) {
                partitions[(top - e) as usize] = b.partition.clone();
            }
            let base_idx = exps.iter().position(|&e| e == top).expect("max exists");
            QClass {
                base: ClassBase::Nonzero(members[base_idx].eigenvalue.clone()),
                partitions,
            }
        }
    }
}
