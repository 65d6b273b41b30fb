//! Tools for the affine quotient by simultaneous conjugation: the
//! (p, m, r) index set, dimensions, trace fingerprints and closed-orbit
//! representatives of structured stratum points.

use serde::{Deserialize, Serialize};

use crate::components::ComponentIndex;
use crate::error::{Error, Result};
use crate::exact_matrix::QMatrix;
use crate::qcommutant::MatrixPair;
use crate::qscalar::{Ell, FieldContext, QScalar};

/// Index of a quotient component: p cyclic summands of size ℓ, m summands
/// (a, 0) and r summands (0, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GitIndex {
    pub p: usize,
    pub m: usize,
    pub r: usize,
}

impl GitIndex {
    /// The module dimension ℓp + m + r.
    pub fn n(&self, ell: Ell) -> usize {
        match ell {
            Ell::Finite(l) => l * self.p + self.m + self.r,
            Ell::Infinite => self.m + self.r,
        }
    }
}

/// All indices with ℓp + m + r = n, sorted. At ℓ = ∞ p is 0, and at ℓ = 1
/// the only index is (n, 0, 0) since both other summand types coincide
/// with or are absent next to the cyclic one.
pub fn enumerate_tpl(ell: Ell, n: usize) -> Vec<GitIndex> {
    let max_p = match ell {
        Ell::Finite(1) => return vec![GitIndex { p: n, m: 0, r: 0 }],
        Ell::Finite(l) => n / l,
        Ell::Infinite => 0,
    };
    let l = ell.finite().unwrap_or(0);
    let mut out = Vec::new();
    for p in 0..=max_p {
        let rest = n - l * p;
        for m in 0..=rest {
            out.push(GitIndex { p, m, r: rest - m });
        }
    }
    out.sort();
    out
}

/// Σ_{p=0}^{⌊n/ℓ⌋} (n − ℓp + 1), the number of nonnegative solutions of
/// ℓp + m + r = n (ℓ ≥ 2), or n + 1 at ℓ = ∞.
pub fn tpl_count_formula(ell: Ell, n: usize) -> usize {
    match ell {
        Ell::Finite(l) => (0..=n / l).map(|p| n - l * p + 1).sum(),
        Ell::Infinite => n + 1,
    }
}

/// Dimension n + (2 − ℓ)p of the quotient component, or n at ℓ = ∞.
pub fn dim_git(idx: &GitIndex, ell: Ell) -> usize {
    let n = idx.n(ell);
    match ell {
        Ell::Finite(l) => n + 2 * idx.p - l * idx.p,
        Ell::Infinite => n,
    }
}

/// The quotient index reached by semisimplifying a generic point of the
/// stratum `idx`.
pub fn git_index_of_stratum(idx: &ComponentIndex) -> GitIndex {
    let top = idx.ell().finite();
    let mut gi = GitIndex { p: 0, m: 0, r: 0 };
    for (i, count) in idx.m().iter() {
        if Some(i) == top {
            gi.p += count;
        } else {
            gi.m += i * count;
        }
    }
    gi.r = idx.r().weight();
    gi
}

/// Grid of trace invariants T[i][j] = Tr(AⁱBʲ), 0 ≤ i, j ≤ max_degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFingerprint {
    pub max_degree: usize,
    pub grid: Vec<Vec<QScalar>>,
}

pub fn trace_fingerprint(pair: &MatrixPair, max_degree: usize) -> TraceFingerprint {
    let ctx = pair.ctx();
    let n = pair.size();
    let powers = |m: &QMatrix| -> Vec<QMatrix> {
        let mut out = vec![QMatrix::identity(ctx, n)];
        for _ in 0..max_degree {
            let next = out.last().expect("nonempty").mul(m).expect("square");
            out.push(next);
        }
        out
    };
    let a_pows = powers(pair.a());
    let b_pows = powers(pair.b());
    let grid = a_pows
        .iter()
        .map(|ap| {
            b_pows
                .iter()
                .map(|bp| ap.mul(bp).and_then(|p| p.trace()).expect("square"))
                .collect()
        })
        .collect();
    TraceFingerprint { max_degree, grid }
}

/// Closed-orbit representative of a block-diagonal stratum point. Each
/// connected block with both matrices upper triangular is replaced by the
/// pair of diagonals; a cyclic block of size ℓ (A diagonal, B supported on
/// the superdiagonal and the lower-left corner) is kept.
pub fn semisimplify(pair: &MatrixPair) -> Result<MatrixPair> {
    let ctx = pair.ctx();
    let n = pair.size();
    let mut a_out = QMatrix::zero(ctx, n, n);
    let mut b_out = QMatrix::zero(ctx, n, n);
    for (lo, hi) in diagonal_blocks(pair) {
        let size = hi - lo;
        let a = pair.a().submatrix(lo, lo, size, size);
        let b = pair.b().submatrix(lo, lo, size, size);
        let (na, nb) = if a.is_upper_triangular() && b.is_upper_triangular() {
            (
                QMatrix::diagonal(ctx, &a.diagonal_entries()),
                QMatrix::diagonal(ctx, &b.diagonal_entries()),
            )
        } else if is_cyclic_block(ctx, &a, &b) {
            (a, b)
        } else {
            return Err(Error::UnsupportedShape(format!(
                "block at rows {lo}..{hi} is neither triangular nor cyclic"
            )));
        };
        a_out = a_out.with_block(lo, lo, &na)?;
        b_out = b_out.with_block(lo, lo, &nb)?;
    }
    MatrixPair::new(a_out, b_out)
}

/// Splits 0..n into the finest consecutive intervals with respect to which
/// A and B are both block diagonal.
fn diagonal_blocks(pair: &MatrixPair) -> Vec<(usize, usize)> {
    let n = pair.size();
    // reach[k]: furthest index linked to k by a nonzero entry.
    let mut reach: Vec<usize> = (0..n).collect();
    for r in 0..n {
        for c in 0..n {
            if !pair.a().get(r, c).is_zero() || !pair.b().get(r, c).is_zero() {
                let (lo, hi) = (r.min(c), r.max(c));
                reach[lo] = reach[lo].max(hi);
            }
        }
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut end = 0;
    for (k, &furthest) in reach.iter().enumerate() {
        end = end.max(furthest);
        if k == end {
            blocks.push((start, k + 1));
            start = k + 1;
        }
    }
    blocks
}

fn is_cyclic_block(ctx: FieldContext, a: &QMatrix, b: &QMatrix) -> bool {
    let size = a.rows();
    if ctx.ell() != Ell::Finite(size) || !a.is_diagonal() {
        return false;
    }
    (0..size).all(|r| {
        (0..size).all(|c| {
            let allowed = c == (r + 1) % size;
            allowed || b.get(r, c).is_zero()
        })
    })
}
