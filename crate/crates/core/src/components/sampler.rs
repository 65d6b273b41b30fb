//! Seeded generic points of the open strata: direct sums of U- and V-type
//! blocks with pairwise non-q-equivalent parameters.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ComponentIndex;
use crate::error::{Error, Result};
use crate::exact_matrix::QMatrix;
use crate::qcommutant::{q_layered, MatrixPair};
use crate::qscalar::{q_equivalent, Ell, FieldContext, QScalar};

const NUMERATOR_RANGE: i64 = 40;
const DENOMINATOR_RANGE: i64 = 9;
const MAX_REJECTIONS: usize = 10_000;

/// Random source for sample points. Bases handed out by one sampler are
/// pairwise non-q-equivalent, so points drawn from the same sampler can be
/// direct-summed without creating coincidences.
pub struct Sampler {
    ctx: FieldContext,
    rng: ChaCha8Rng,
    used: Vec<QScalar>,
}

impl Sampler {
    pub fn new(ctx: FieldContext, seed: u64) -> Self {
        Sampler {
            ctx,
            rng: ChaCha8Rng::seed_from_u64(seed),
            used: Vec::new(),
        }
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    /// A nonzero rational with small numerator and denominator.
    pub fn nonzero_rational(&mut self) -> BigRational {
        let num = self.rng.gen_range(1..=NUMERATOR_RANGE);
        let den = self.rng.gen_range(1..=DENOMINATOR_RANGE);
        let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        BigRational::new(BigInt::from(sign * num), BigInt::from(den))
    }

    pub fn nonzero_scalar(&mut self) -> QScalar {
        let r = self.nonzero_rational();
        QScalar::from_rational(self.ctx, r)
    }

    /// A rational scalar, possibly zero.
    pub fn scalar(&mut self) -> QScalar {
        if self.rng.gen_bool(0.2) {
            QScalar::zero(self.ctx)
        } else {
            self.nonzero_scalar()
        }
    }

    /// A scalar not q-equivalent to any base handed out before.
    pub fn fresh_base(&mut self) -> QScalar {
        for _ in 0..MAX_REJECTIONS {
            let cand = self.nonzero_scalar();
            let clash = self.used.iter().any(|u| {
                q_equivalent(&cand, u)
                    .expect("nonzero, same context")
                    .is_some()
            });
            if !clash {
                self.used.push(cand.clone());
                return cand;
            }
        }
        unreachable!("rational pool exhausted")
    }

    /// A random invertible matrix with small rational entries.
    pub fn invertible(&mut self, n: usize) -> QMatrix {
        let ctx = self.ctx;
        loop {
            let rng = &mut self.rng;
            let g = QMatrix::from_fn(ctx, n, n, |_, _| {
                QScalar::from_int(ctx, rng.gen_range(-3..=3))
            });
            if g.rank() == n {
                return g;
            }
        }
    }

    /// U-type block of size i: A = diag(a, aq⁻¹, …), B with nonzero
    /// superdiagonal; for i = ℓ also a nonzero corner entry. The corner is
    /// chosen so that B's eigenvalues β, βq, … lie in the field.
    pub fn u_block(&mut self, i: usize) -> Result<MatrixPair> {
        let ctx = self.ctx;
        let a = self.fresh_base();
        let diag: Vec<QScalar> = (0..i)
            .map(|k| &a * &QScalar::q_pow(ctx, -(k as i64)))
            .collect();
        let big_a = QMatrix::diagonal(ctx, &diag);
        let mut big_b = QMatrix::zero(ctx, i, i);
        let mut product = QScalar::one(ctx);
        for k in 0..i.saturating_sub(1) {
            let b = self.nonzero_scalar();
            product = &product * &b;
            big_b = big_b.with_entry(k, k + 1, b);
        }
        if ctx.ell() == Ell::Finite(i) {
            let beta = self.fresh_base();
            let corner = beta.pow(i as i64)?.checked_div(&product)?;
            big_b = big_b.with_entry(i - 1, 0, corner);
        }
        MatrixPair::new(big_a, big_b)
    }

    /// V-type block of size j: (J_j(0), L^q(j, j, b)) with every b nonzero.
    pub fn v_block(&mut self, j: usize) -> Result<MatrixPair> {
        let ctx = self.ctx;
        let mut v = vec![self.fresh_base()];
        v.extend((1..j).map(|_| self.nonzero_scalar()));
        let big_a = QMatrix::jordan_block(&QScalar::zero(ctx), j);
        MatrixPair::new(big_a, q_layered(ctx, j, j, &v)?)
    }

    /// Block-diagonal generic point of the stratum indexed by `idx`:
    /// U blocks by increasing size, then V blocks by increasing size.
    pub fn sample(&mut self, idx: &ComponentIndex) -> Result<MatrixPair> {
        if idx.ell() != self.ctx.ell() {
            return Err(Error::invalid(format!(
                "index for ell = {} sampled in {}",
                idx.ell(),
                self.ctx
            )));
        }
        let mut parts = Vec::new();
        for (i, count) in idx.m().iter() {
            for _ in 0..count {
                parts.push(self.u_block(i)?);
            }
        }
        for (j, count) in idx.r().iter() {
            for _ in 0..count {
                parts.push(self.v_block(j)?);
            }
        }
        MatrixPair::direct_sum_all(self.ctx, &parts)
    }
}

/// A deterministic generic point of the stratum indexed by `idx`.
pub fn sample_point(idx: &ComponentIndex, seed: u64) -> Result<MatrixPair> {
    let ctx = FieldContext::for_ell(idx.ell())?;
    Sampler::new(ctx, seed).sample(idx)
}
