//! Dense matrices over [`QScalar`] with exact elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::ScalarPoly;
use crate::qscalar::{FieldContext, QScalar};

/// Row-major dense matrix; every entry lives in `ctx`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    ctx: FieldContext,
    rows: usize,
    cols: usize,
    data: Vec<QScalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

impl QMatrix {
    pub fn new(ctx: FieldContext, rows: usize, cols: usize, data: Vec<QScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|x| x.ctx() != ctx) {
            return Err(Error::MixedContext);
        }
        Ok(QMatrix {
            ctx,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(ctx: FieldContext, rows: Vec<Vec<QScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        ctx: FieldContext,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> QScalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix {
            ctx,
            rows,
            cols,
            data,
        }
    }

    /// Matrix with small integer entries, mostly for tests.
    pub fn from_ints(ctx: FieldContext, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(ctx, r, c, |i, j| QScalar::from_int(ctx, rows[i][j]))
    }

    pub fn zero(ctx: FieldContext, rows: usize, cols: usize) -> Self {
        QMatrix {
            ctx,
            rows,
            cols,
            data: vec![QScalar::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: FieldContext, n: usize) -> Self {
        Self::from_fn(ctx, n, n, |i, j| {
            if i == j {
                QScalar::one(ctx)
            } else {
                QScalar::zero(ctx)
            }
        })
    }

    pub fn diagonal(ctx: FieldContext, diag: &[QScalar]) -> Self {
        let n = diag.len();
        Self::from_fn(ctx, n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                QScalar::zero(ctx)
            }
        })
    }

    /// The Jordan block J_m(α): α on the diagonal, ones on the superdiagonal.
    pub fn jordan_block(alpha: &QScalar, m: usize) -> Self {
        let ctx = alpha.ctx();
        Self::from_fn(ctx, m, m, |i, j| {
            if i == j {
                alpha.clone()
            } else if j == i + 1 {
                QScalar::one(ctx)
            } else {
                QScalar::zero(ctx)
            }
        })
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The size of a square matrix, or [`Error::NotSquare`].
    pub fn square_size(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &QScalar {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[QScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[QScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<QScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: QScalar) -> Self {
        let mut out = self.clone();
        out.data[i * self.cols + j] = value;
        out
    }

    pub fn map(&self, f: impl FnMut(&QScalar) -> QScalar) -> Self {
        QMatrix {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(QScalar::is_zero)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::MixedContext);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(QMatrix {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(QMatrix {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        self.map(|x| x * c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::MixedContext);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![QScalar::zero(self.ctx); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let slot = &mut data[i * other.cols + j];
                        *slot = &*slot + &(a * b);
                    }
                }
            }
        }
        Ok(QMatrix {
            ctx: self.ctx,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ctx, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let n = self.square_size()?;
        let mut acc = Self::identity(self.ctx, n);
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Block-diagonal stacking of two matrices.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Self::block_diag(self.ctx, &[self.clone(), other.clone()])
    }

    pub fn block_diag(ctx: FieldContext, blocks: &[QMatrix]) -> Result<Self> {
        if blocks.iter().any(|b| b.ctx != ctx) {
            return Err(Error::MixedContext);
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(ctx, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Copies `block` into a copy of `self` with top-left corner at `(r0, c0)`.
    pub fn with_block(&self, r0: usize, c0: usize, block: &QMatrix) -> Result<Self> {
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(Error::DimensionMismatch("block does not fit".into()));
        }
        let mut out = self.clone();
        for i in 0..block.rows {
            for j in 0..block.cols {
                out.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(self.ctx, rows, cols, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn trace(&self) -> Result<QScalar> {
        let n = self.square_size()?;
        Ok((0..n).fold(QScalar::zero(self.ctx), |acc, i| &acc + self.get(i, i)))
    }

    /// Rank by sparse field elimination.
    pub fn rank(&self) -> usize {
        echelon(self.to_rows(), self.cols).1.len()
    }

    /// Rank by fraction-free (Bareiss) elimination. Slower on sparse
    /// operators, kept as an independent cross-check of [`QMatrix::rank`].
    pub fn rank_fraction_free(&self) -> usize {
        bareiss(self).0
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<QScalar> {
        let n = self.square_size()?;
        if n == 0 {
            return Ok(QScalar::one(self.ctx));
        }
        let (rank, last, sign) = bareiss(self);
        if rank < n {
            return Ok(QScalar::zero(self.ctx));
        }
        Ok(if sign { -last } else { last })
    }

    /// Reduced row echelon form: sparse forward elimination, then
    /// normalization and back-substitution from the last pivot up.
    pub fn rref(&self) -> Rref {
        let (mut m, pivots) = echelon(self.to_rows(), self.cols);
        for (k, &c) in pivots.iter().enumerate().rev() {
            let inv = m[k][c].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for x in m[k][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let (head, tail) = m.split_at_mut(k);
            let pivot_row = &tail[0];
            let support: Vec<usize> = (c + 1..self.cols)
                .filter(|&j| !pivot_row[j].is_zero())
                .collect();
            for row in head.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for &j in &support {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
                row[c] = QScalar::zero(self.ctx);
            }
        }
        let matrix = QMatrix::from_rows(self.ctx, m).unwrap_or_else(|_| self.clone());
        Rref { matrix, pivots }
    }

    /// A basis of the right kernel, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<QScalar>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![QScalar::zero(self.ctx); self.cols];
                v[f] = QScalar::one(self.ctx);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[QScalar]) -> Result<Vec<QScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(QScalar::zero(self.ctx), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        let n = self.square_size()?;
        let aug = Self::from_fn(self.ctx, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                QScalar::one(self.ctx)
            } else {
                QScalar::zero(self.ctx)
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        Ok(Some(matrix.submatrix(0, n, n, n)))
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &QMatrix) -> Result<Self> {
        let g_inv = g.inverse()?.ok_or(Error::SingularConjugator)?;
        g.mul(self)?.mul(&g_inv)
    }

    /// Characteristic polynomial det(xI - A) by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Result<ScalarPoly> {
        let n = self.square_size()?;
        let ctx = self.ctx;
        let mut coeffs = vec![QScalar::zero(ctx); n + 1];
        coeffs[n] = QScalar::one(ctx);
        let id = Self::identity(ctx, n);
        let mut m = Self::zero(ctx, n, n);
        for k in 1..=n {
            m = self.mul(&m)?.add(&id.scale(&coeffs[n - k + 1]))?;
            let t = self.mul(&m)?.trace()?;
            let factor = QScalar::from_ratio(ctx, -1, k as i64)?;
            coeffs[n - k] = &t * &factor;
        }
        Ok(ScalarPoly::new(ctx, coeffs))
    }

    /// The `rows·cols` vector of entries in row-major order.
    pub fn flatten(&self) -> Vec<QScalar> {
        self.data.clone()
    }

    pub fn from_flat(ctx: FieldContext, rows: usize, cols: usize, v: &[QScalar]) -> Result<Self> {
        Self::new(ctx, rows, cols, v.to_vec())
    }

    /// The matrix with the given vectors as columns.
    pub fn from_columns(ctx: FieldContext, rows: usize, columns: &[Vec<QScalar>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        Ok(Self::from_fn(ctx, rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    /// Stacks matrices with equal column counts vertically.
    pub fn vstack(ctx: FieldContext, parts: &[QMatrix]) -> Result<Self> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if parts.iter().any(|p| p.cols != cols || p.ctx != ctx) {
            return Err(Error::DimensionMismatch("vstack column counts".into()));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let data = parts.iter().flat_map(|p| p.data.iter().cloned()).collect();
        Self::new(ctx, rows, cols, data)
    }

    /// Applies the scalar automorphism q ↦ q⁻¹ entrywise.
    pub fn invert_q(&self) -> Self {
        self.map(QScalar::invert_q)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<QScalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }
}

/// Fraction-free elimination returning (rank, last pivot, odd row swaps).
/// The last pivot equals the determinant up to sign when the rank is full.
/// Forward elimination over the field. Only rows with a nonzero entry in the
/// pivot column are touched, and the pivot is taken from the sparsest such
/// row, which keeps structured sparse matrices sparse. Returns the echelon
/// rows (pivot rows first, in pivot order) and the pivot columns.
fn echelon(mut m: Vec<Vec<QScalar>>, cols: usize) -> (Vec<Vec<QScalar>>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let weight = |row: &[QScalar]| row[c..].iter().filter(|x| !x.is_zero()).count();
        let Some(p) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| weight(&m[i]))
        else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for &j in &support {
                row[j] = &row[j] - &(&f * &pivot_row[j]);
            }
            row[c] = QScalar::zero(row[c].ctx());
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

fn bareiss(a: &QMatrix) -> (usize, QScalar, bool) {
    let ctx = a.ctx;
    let mut m = a.to_rows();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = QScalar::one(ctx);
    let mut r = 0;
    let mut swapped = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(r, p);
            swapped = !swapped;
        }
        let prev_inv = prev.inv().expect("nonzero previous pivot");
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let keep = if row[j].is_zero() {
                    QScalar::zero(ctx)
                } else {
                    piv * &row[j]
                };
                let v = if f.is_zero() {
                    keep
                } else {
                    &keep - &(&f * &pivot_row[j])
                };
                row[j] = if v.is_zero() { v } else { &v * &prev_inv };
            }
            row[c] = QScalar::zero(ctx);
        }
        prev = piv.clone();
        r += 1;
    }
    (r, prev, swapped)
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} over {}", self.rows, self.cols, self.ctx)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(QScalar::format).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
