//! Exact ranks of the differentials of the orbit parametrizations
//! (g, a, b) ↦ (g·A(a)·g⁻¹, g·B(b)·g⁻¹), via first-order dual numbers.

use crate::error::{Error, Result};
use crate::exact_matrix::QMatrix;
use crate::qcommutant::q_layered;
use crate::qscalar::{Ell, FieldContext, QScalar};

use super::Sampler;

/// Generator strata: diagonal-type D (U blocks) and nilpotent-type N (V blocks).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StratumKind {
    D,
    N,
}

/// A matrix `re + ε·eps` with ε² = 0.
#[derive(Clone, Debug)]
struct DualMatrix {
    re: QMatrix,
    eps: QMatrix,
}

impl DualMatrix {
    fn constant(re: QMatrix) -> Self {
        let eps = QMatrix::zero(re.ctx(), re.rows(), re.cols());
        DualMatrix { re, eps }
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(DualMatrix {
            re: self.re.mul(&other.re)?,
            eps: self.re.mul(&other.eps)?.add(&self.eps.mul(&other.re)?)?,
        })
    }

    /// (G + εG')⁻¹ = G⁻¹ − ε·G⁻¹G'G⁻¹.
    fn inverse(&self) -> Result<Self> {
        let inv = self.re.inverse()?.ok_or(Error::SingularConjugator)?;
        let eps = inv.mul(&self.eps)?.mul(&inv)?.neg();
        Ok(DualMatrix { re: inv, eps })
    }
}

/// Stratum dimension the rank should reach: i² for N and for D with i < ℓ,
/// ℓ² + 1 for D with i = ℓ.
pub fn expected_jacobian_rank(kind: StratumKind, i: usize, ell: Ell) -> Result<usize> {
    validate(kind, i, ell)?;
    Ok(match (kind, ell) {
        (StratumKind::D, Ell::Finite(l)) if i == l => l * l + 1,
        _ => i * i,
    })
}

fn validate(kind: StratumKind, i: usize, ell: Ell) -> Result<()> {
    let ok = match (kind, ell) {
        (_, _) if i == 0 => false,
        (StratumKind::D, Ell::Finite(l)) => i <= l,
        (StratumKind::N, Ell::Finite(l)) => i < l,
        (_, Ell::Infinite) => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "no {kind:?} stratum of size {i} for ell = {ell}"
        )))
    }
}

/// The (A, B) representatives and their partial derivatives in each
/// non-group parameter.
struct Parametrization {
    a: QMatrix,
    b: QMatrix,
    /// (∂A, ∂B) for each scalar parameter.
    partials: Vec<(QMatrix, QMatrix)>,
}

fn parametrization(
    kind: StratumKind,
    i: usize,
    ctx: FieldContext,
    sampler: &mut Sampler,
) -> Result<Parametrization> {
    let zero = QMatrix::zero(ctx, i, i);
    let unit = |r: usize, c: usize| zero.with_entry(r, c, QScalar::one(ctx));
    match kind {
        StratumKind::D => {
            let a = sampler.fresh_base();
            let weights: Vec<QScalar> = (0..i).map(|k| QScalar::q_pow(ctx, -(k as i64))).collect();
            let big_a = QMatrix::diagonal(ctx, &weights).scale(&a);
            let mut big_b = zero.clone();
            let mut partials = vec![(QMatrix::diagonal(ctx, &weights), zero.clone())];
            for k in 0..i.saturating_sub(1) {
                big_b = big_b.with_entry(k, k + 1, sampler.nonzero_scalar());
                partials.push((zero.clone(), unit(k, k + 1)));
            }
            if ctx.ell() == Ell::Finite(i) {
                big_b = big_b.with_entry(i - 1, 0, sampler.nonzero_scalar());
                partials.push((zero.clone(), unit(i - 1, 0)));
            }
            Ok(Parametrization {
                a: big_a,
                b: big_b,
                partials,
            })
        }
        StratumKind::N => {
            let v: Vec<QScalar> = (0..i).map(|_| sampler.nonzero_scalar()).collect();
            let big_b = q_layered(ctx, i, i, &v)?;
            let partials = (0..i)
                .map(|t| {
                    let mut e = vec![QScalar::zero(ctx); i];
                    e[t] = QScalar::one(ctx);
                    Ok((zero.clone(), q_layered(ctx, i, i, &e)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Parametrization {
                a: QMatrix::jordan_block(&QScalar::zero(ctx), i),
                b: big_b,
                partials,
            })
        }
    }
}

/// Rank of the differential at the point chosen by `seed`, whatever it is.
pub fn jacobian_rank_at_seed(kind: StratumKind, i: usize, ell: Ell, seed: u64) -> Result<usize> {
    validate(kind, i, ell)?;
    let ctx = FieldContext::for_ell(ell)?;
    let mut sampler = Sampler::new(ctx, seed);
    let g = sampler.invertible(i);
    let par = parametrization(kind, i, ctx, &mut sampler)?;
    let zero = QMatrix::zero(ctx, i, i);

    let image = |g: &DualMatrix, a: &DualMatrix, b: &DualMatrix| -> Result<Vec<QScalar>> {
        let g_inv = g.inverse()?;
        let mut col = g.mul(a)?.mul(&g_inv)?.eps.flatten();
        col.extend(g.mul(b)?.mul(&g_inv)?.eps.flatten());
        Ok(col)
    };

    let a_const = DualMatrix::constant(par.a.clone());
    let b_const = DualMatrix::constant(par.b.clone());
    let mut columns = Vec::new();
    for r in 0..i {
        for c in 0..i {
            let g_dir = DualMatrix {
                re: g.clone(),
                eps: zero.with_entry(r, c, QScalar::one(ctx)),
            };
            columns.push(image(&g_dir, &a_const, &b_const)?);
        }
    }
    let g_const = DualMatrix::constant(g.clone());
    for (da, db) in &par.partials {
        let a_dir = DualMatrix {
            re: par.a.clone(),
            eps: da.clone(),
        };
        let b_dir = DualMatrix {
            re: par.b.clone(),
            eps: db.clone(),
        };
        columns.push(image(&g_const, &a_dir, &b_dir)?);
    }
    Ok(QMatrix::from_columns(ctx, 2 * i * i, &columns)?.rank())
}

/// Jacobian rank at a seeded random point; a rank below the stratum
/// dimension signals a non-generic point and is reported as an error.
pub fn parametrization_jacobian_rank(
    kind: StratumKind,
    i: usize,
    ell: Ell,
    seed: u64,
) -> Result<usize> {
    let expected = expected_jacobian_rank(kind, i, ell)?;
    let rank = jacobian_rank_at_seed(kind, i, ell, seed)?;
    if rank < expected {
        return Err(Error::DegeneratePoint { rank, expected });
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(
            jacobian_rank_at_seed(StratumKind::D, 2, Ell::Finite(3), 1).unwrap(),
            4
        );
        assert_eq!(
            jacobian_rank_at_seed(StratumKind::D, 2, Ell::Finite(2), 1).unwrap(),
            5
        );
        assert_eq!(
            jacobian_rank_at_seed(StratumKind::N, 1, Ell::Finite(3), 1).unwrap(),
            1
        );
        assert_eq!(
            jacobian_rank_at_seed(StratumKind::D, 1, Ell::Finite(1), 1).unwrap(),
            2
        );
        assert_eq!(
            jacobian_rank_at_seed(StratumKind::N, 3, Ell::Infinite, 1).unwrap(),
            9
        );
    }

    #[test]
    fn out_of_range_strata() {
        assert!(expected_jacobian_rank(StratumKind::N, 2, Ell::Finite(2)).is_err());
        assert!(expected_jacobian_rank(StratumKind::D, 3, Ell::Finite(2)).is_err());
        assert!(expected_jacobian_rank(StratumKind::D, 0, Ell::Infinite).is_err());
    }
}
