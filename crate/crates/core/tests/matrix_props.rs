mod common;

use common::*;
use proptest::prelude::*;
use qplane::{FieldContext, QMatrix, QScalar};

fn ctx_for(code: u32) -> FieldContext {
    if code == 0 {
        FieldContext::GenericQ
    } else {
        FieldContext::cyclotomic(code).unwrap()
    }
}

/// A matrix mixing field elements and deliberate rank drops.
fn seeded_matrix(ctx: FieldContext, rows: usize, cols: usize, seed: u64) -> QMatrix {
    let mut rng = rng(seed);
    let mut m = QMatrix::from_fn(ctx, rows, cols, |_, _| random_scalar(ctx, &mut rng));
    if rows > 1 && seed.is_multiple_of(3) {
        // Duplicate a scaled row to force dependence.
        let c = random_scalar(ctx, &mut rng);
        for j in 0..cols {
            m = m.with_entry(rows - 1, j, m.get(0, j) * &c);
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn cayley_hamilton(code in 0u32..=5, n in 1usize..=6, seed in any::<u64>()) {
        let ctx = ctx_for(code);
        let m = seeded_matrix(ctx, n, n, seed);
        let cp = m.char_poly().unwrap();
        prop_assert_eq!(cp.degree(), Some(n));
        prop_assert!(cp.leading().unwrap().is_one());
        prop_assert!(cp.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn bareiss_det_matches_cofactor(code in 0u32..=5, n in 0usize..=5, seed in any::<u64>()) {
        let ctx = ctx_for(code);
        let m = seeded_matrix(ctx, n, n, seed);
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn rank_nullity_and_kernel(code in 0u32..=5, rows in 1usize..=6, cols in 1usize..=6, seed in any::<u64>()) {
        let ctx = ctx_for(code);
        let m = seeded_matrix(ctx, rows, cols, seed);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        // Field elimination and fraction-free elimination are independent routes.
        prop_assert_eq!(m.rank_fraction_free(), m.rank());
        prop_assert_eq!(m.rref().pivots.len(), m.rank());
        for v in &kernel {
            prop_assert!(m.apply(v).unwrap().iter().all(QScalar::is_zero));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rank_of_product_is_bounded(code in 0u32..=4, a in 1usize..=5, b in 1usize..=5, c in 1usize..=5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let ctx = ctx_for(code);
        let x = seeded_matrix(ctx, a, b, s1);
        let y = seeded_matrix(ctx, b, c, s2);
        let p = x.mul(&y).unwrap();
        prop_assert!(p.rank() <= x.rank().min(y.rank()));
    }

    #[test]
    fn inverse_is_two_sided(code in 0u32..=5, n in 1usize..=5, seed in any::<u64>()) {
        let ctx = ctx_for(code);
        let m = seeded_matrix(ctx, n, n, seed);
        match m.inverse().unwrap() {
            Some(inv) => {
                prop_assert!(!cofactor_det(&m).is_zero());
                prop_assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(ctx, n));
                prop_assert_eq!(inv.mul(&m).unwrap(), QMatrix::identity(ctx, n));
            }
            None => prop_assert!(cofactor_det(&m).is_zero()),
        }
    }

    #[test]
    fn char_poly_is_conjugation_invariant(code in 1u32..=5, n in 1usize..=4, seed in any::<u64>()) {
        let ctx = ctx_for(code);
        let m = seeded_matrix(ctx, n, n, seed);
        let g = random_invertible(ctx, n, &mut rng(seed ^ 0x5a5a));
        let conj = m.conjugate_by(&g).unwrap();
        let (lhs, rhs) = (conj.char_poly().unwrap(), m.char_poly().unwrap());
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
        prop_assert_eq!(conj.trace().unwrap(), m.trace().unwrap());
    }
}

#[test]
fn empty_matrix_conventions() {
    let ctx = FieldContext::cyclotomic(3).unwrap();
    let e = QMatrix::zero(ctx, 0, 0);
    assert_eq!(e.rank(), 0);
    assert!(e.det().unwrap().is_one());
    assert!(QMatrix::zero(ctx, 2, 3).det().is_err());
}
