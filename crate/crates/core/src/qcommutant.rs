//! q-commuting pairs, q-commutant spaces, q-layered matrices, and the
//! Hom/Ext complex between two pairs.

use crate::error::{Error, Result};
use crate::exact_matrix::QMatrix;
use crate::jordan_spec::JordanSpec;
use crate::qscalar::{FieldContext, QScalar};

/// A pair of square matrices with `AB = qBA`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPair {
    ctx: FieldContext,
    a: QMatrix,
    b: QMatrix,
}

impl MatrixPair {
    /// Validates shapes, contexts and the relation `AB = qBA`.
    pub fn new(a: QMatrix, b: QMatrix) -> Result<Self> {
        let ctx = a.ctx();
        if b.ctx() != ctx {
            return Err(Error::MixedContext);
        }
        let n = a.square_size()?;
        if b.square_size()? != n {
            return Err(Error::DimensionMismatch(format!(
                "A is {n}x{n} but B is {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        if !relation_holds(&a, &b)? {
            return Err(Error::RelationViolated);
        }
        Ok(MatrixPair { ctx, a, b })
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn a(&self) -> &QMatrix {
        &self.a
    }

    pub fn b(&self) -> &QMatrix {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn into_parts(self) -> (QMatrix, QMatrix) {
        (self.a, self.b)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(MatrixPair {
            ctx: self.ctx,
            a: self.a.direct_sum(&other.a)?,
            b: self.b.direct_sum(&other.b)?,
        })
    }

    pub fn direct_sum_all(ctx: FieldContext, parts: &[MatrixPair]) -> Result<Self> {
        let a: Vec<QMatrix> = parts.iter().map(|p| p.a.clone()).collect();
        let b: Vec<QMatrix> = parts.iter().map(|p| p.b.clone()).collect();
        Ok(MatrixPair {
            ctx,
            a: QMatrix::block_diag(ctx, &a)?,
            b: QMatrix::block_diag(ctx, &b)?,
        })
    }

    /// Simultaneous conjugation `(gAg⁻¹, gBg⁻¹)`.
    pub fn conjugate_by(&self, g: &QMatrix) -> Result<Self> {
        let g_inv = g.inverse()?.ok_or(Error::SingularConjugator)?;
        Ok(MatrixPair {
            ctx: self.ctx,
            a: g.mul(&self.a)?.mul(&g_inv)?,
            b: g.mul(&self.b)?.mul(&g_inv)?,
        })
    }
}

/// Whether `AB = qBA`.
pub fn relation_holds(a: &QMatrix, b: &QMatrix) -> Result<bool> {
    let q = QScalar::q(a.ctx());
    Ok(a.mul(b)? == b.mul(a)?.scale(&q))
}

/// Matrix of the linear map `X ↦ AX - qXA` on row-major flattened n×n matrices.
pub fn qcommutant_operator(a: &QMatrix) -> Result<QMatrix> {
    let n = a.square_size()?;
    let ctx = a.ctx();
    let q = QScalar::q(ctx);
    let minus_q = -&q;
    // Coefficient of X_kl in (AX - qXA)_ij is A_ik δ_jl - q δ_ik A_lj.
    Ok(QMatrix::from_fn(ctx, n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (k, l) = (col / n, col % n);
        let mut v = QScalar::zero(ctx);
        if j == l {
            v = a.get(i, k).clone();
        }
        if i == k && !a.get(l, j).is_zero() {
            v = &v + &(&minus_q * a.get(l, j));
        }
        v
    }))
}

/// Basis of the q-commutant {B : AB = qBA}.
pub fn qcommutant_basis(a: &QMatrix) -> Result<Vec<QMatrix>> {
    let n = a.square_size()?;
    let op = qcommutant_operator(a)?;
    op.kernel_basis()
        .into_iter()
        .map(|v| QMatrix::from_flat(a.ctx(), n, n, &v))
        .collect()
}

/// Σ over ordered Jordan block pairs (i, j) with α_i = q·α_j of min(m_i, m_j).
pub fn predicted_commutant_dim(spec: &JordanSpec) -> usize {
    let q = QScalar::q(spec.ctx());
    let blocks: Vec<(&QScalar, usize)> = spec.jordan_blocks().collect();
    let mut total = 0;
    for &(ai, mi) in &blocks {
        for &(aj, mj) in &blocks {
            if *ai == &q * aj {
                total += mi.min(mj);
            }
        }
    }
    total
}

/// The m×n q-layered matrix L^q(m, n, v) with `v.len() == min(m, n)`:
/// entry (r, r+d) is q^r·v_{d-off}, where `off = max(0, n-m)` and
/// `off ≤ d < n`.
pub fn q_layered(ctx: FieldContext, m: usize, n: usize, v: &[QScalar]) -> Result<QMatrix> {
    let len = m.min(n);
    if v.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            got: v.len(),
        });
    }
    let off = n.saturating_sub(m);
    Ok(QMatrix::from_fn(ctx, m, n, |r, c| {
        if c < r || c - r < off {
            return QScalar::zero(ctx);
        }
        let d = c - r;
        if v[d - off].is_zero() {
            QScalar::zero(ctx)
        } else {
            &QScalar::q_pow(ctx, r as i64) * &v[d - off]
        }
    }))
}

/// The q-layered block matrix QLB(s, t, V): an s×t grid of blocks, all of
/// the common shape of the entries of `v`, with the layering of [`q_layered`].
pub fn q_layered_block(ctx: FieldContext, s: usize, t: usize, v: &[QMatrix]) -> Result<QMatrix> {
    let len = s.min(t);
    if v.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            got: v.len(),
        });
    }
    let (br, bc) = v.first().map_or((0, 0), |b| (b.rows(), b.cols()));
    if v.iter().any(|b| b.rows() != br || b.cols() != bc) {
        return Err(Error::DimensionMismatch(
            "QLB blocks must share a shape".into(),
        ));
    }
    let off = t.saturating_sub(s);
    let mut out = QMatrix::zero(ctx, s * br, t * bc);
    for r in 0..s {
        for c in r + off..t {
            let block = v[c - r - off].scale(&QScalar::q_pow(ctx, r as i64));
            out = out.with_block(r * br, c * bc, &block)?;
        }
    }
    Ok(out)
}

/// 𝕁_{s,n}(α) = α·I_{sn} + (block shift with identity blocks I_n).
pub fn block_jordan(alpha: &QScalar, s: usize, n: usize) -> QMatrix {
    let ctx = alpha.ctx();
    QMatrix::from_fn(ctx, s * n, s * n, |i, j| {
        if i == j {
            alpha.clone()
        } else if j == i + n {
            QScalar::one(ctx)
        } else {
            QScalar::zero(ctx)
        }
    })
}

/// Checks `b` against the block structure predicted for
/// `A = diag(𝕁_{s_k, n_k}(α_k))`: block (i, j) vanishes unless α_i = q·α_j,
/// in which case it is a q-layered block matrix.
pub fn fits_qlb_pattern(b: &QMatrix, layout: &[(QScalar, usize, usize)]) -> Result<bool> {
    let ctx = b.ctx();
    let q = QScalar::q(ctx);
    let mut offsets = Vec::with_capacity(layout.len());
    let mut acc = 0;
    for &(_, s, n) in layout {
        offsets.push(acc);
        acc += s * n;
    }
    if b.rows() != acc || b.cols() != acc {
        return Err(Error::DimensionMismatch(
            "layout size differs from matrix".into(),
        ));
    }
    for (i, (ai, si, ni)) in layout.iter().enumerate() {
        for (j, (aj, sj, nj)) in layout.iter().enumerate() {
            let sub = b.submatrix(offsets[i], offsets[j], si * ni, sj * nj);
            if *ai != &q * aj {
                if !sub.is_zero() {
                    return Ok(false);
                }
                continue;
            }
            // Read the generating blocks off the first block row.
            let off = sj.saturating_sub(*si);
            let gens: Vec<QMatrix> = (0..(*si).min(*sj))
                .map(|k| sub.submatrix(0, (off + k) * nj, *ni, *nj))
                .collect();
            if q_layered_block(ctx, *si, *sj, &gens)? != sub {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dimensions of Hom, Ext¹, Ext² from the first pair to the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomExtReport {
    pub hom_dim: usize,
    pub ext1_dim: usize,
    pub ext2_dim: usize,
    /// Basis of the intertwiners F (n₂×n₁) with FA₁ = A₂F and FB₁ = B₂F.
    pub hom_basis: Vec<QMatrix>,
}

/// The differentials of the length-two complex computing Hom and Ext.
#[derive(Clone, Debug)]
pub struct HomExtComplex {
    /// C⁰ → C¹: F ↦ (FA₁ − A₂F, FB₁ − B₂F).
    pub d0: QMatrix,
    /// C¹ → C²: (G, H) ↦ GB₁ − qB₂G + A₂H − qHA₁.
    pub d1: QMatrix,
    pub rows: usize,
    pub cols: usize,
}

/// Builds both differentials as explicit matrices on row-major coordinates.
pub fn hom_ext_complex(m1: &MatrixPair, m2: &MatrixPair) -> Result<HomExtComplex> {
    let ctx = m1.ctx();
    if m2.ctx() != ctx {
        return Err(Error::MixedContext);
    }
    let (n1, n2) = (m1.size(), m2.size());
    let big_n = n1 * n2;
    let q = QScalar::q(ctx);
    let unit = |k: usize| QMatrix::zero(ctx, n2, n1).with_entry(k / n1, k % n1, QScalar::one(ctx));

    let mut d0_cols = Vec::with_capacity(big_n);
    for k in 0..big_n {
        let f = unit(k);
        let g = f.mul(m1.a())?.sub(&m2.a().mul(&f)?)?;
        let h = f.mul(m1.b())?.sub(&m2.b().mul(&f)?)?;
        let mut col = g.flatten();
        col.extend(h.flatten());
        d0_cols.push(col);
    }
    let mut d1_cols = Vec::with_capacity(2 * big_n);
    for k in 0..2 * big_n {
        let e = unit(k % big_n);
        let image = if k < big_n {
            e.mul(m1.b())?.sub(&m2.b().mul(&e)?.scale(&q))?
        } else {
            m2.a().mul(&e)?.sub(&e.mul(m1.a())?.scale(&q))?
        };
        d1_cols.push(image.flatten());
    }
    Ok(HomExtComplex {
        d0: QMatrix::from_columns(ctx, 2 * big_n, &d0_cols)?,
        d1: QMatrix::from_columns(ctx, big_n, &d1_cols)?,
        rows: n2,
        cols: n1,
    })
}

pub fn hom_ext(m1: &MatrixPair, m2: &MatrixPair) -> Result<HomExtReport> {
    let cx = hom_ext_complex(m1, m2)?;
    let big_n = cx.rows * cx.cols;
    let kernel = cx.d0.kernel_basis();
    let rank0 = big_n - kernel.len();
    let rank1 = cx.d1.rank();
    let hom_basis = kernel
        .iter()
        .map(|v| QMatrix::from_flat(m1.ctx(), cx.rows, cx.cols, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomExtReport {
        hom_dim: kernel.len(),
        ext1_dim: 2 * big_n - rank1 - rank0,
        ext2_dim: big_n - rank1,
        hom_basis,
    })
}
