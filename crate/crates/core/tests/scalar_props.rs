mod common;

use common::*;
use proptest::prelude::*;
use qplane::{q_equivalent, FieldContext, QScalar};

fn ctx_for(code: u32) -> FieldContext {
    if code == 0 {
        FieldContext::GenericQ
    } else {
        FieldContext::cyclotomic(code).unwrap()
    }
}

/// A scalar built from a seed; generic-q scalars include genuine quotients.
fn seeded_scalar(ctx: FieldContext, seed: u64) -> QScalar {
    let mut rng = rng(seed);
    let x = random_scalar(ctx, &mut rng);
    match ctx {
        FieldContext::GenericQ if seed.is_multiple_of(2) => {
            let d = random_scalar(ctx, &mut rng);
            if d.is_zero() {
                x
            } else {
                x.checked_div(&d).unwrap()
            }
        }
        _ => x,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn format_parse_round_trip(code in 0u32..=8, seed in any::<u64>()) {
        let ctx = ctx_for(code);
        let x = seeded_scalar(ctx, seed);
        prop_assert_eq!(QScalar::parse(&x.format(), ctx).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(code in 0u32..=7, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let ctx = ctx_for(code);
        let (x, y, z) = (seeded_scalar(ctx, s1), seeded_scalar(ctx, s2), seeded_scalar(ctx, s3));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn invert_q_is_an_involutive_automorphism(code in 0u32..=7, s1 in any::<u64>(), s2 in any::<u64>()) {
        let ctx = ctx_for(code);
        let (x, y) = (seeded_scalar(ctx, s1), seeded_scalar(ctx, s2));
        prop_assert_eq!((&x * &y).invert_q(), &x.invert_q() * &y.invert_q());
        prop_assert_eq!((&x + &y).invert_q(), &x.invert_q() + &y.invert_q());
        prop_assert_eq!(x.invert_q().invert_q(), x);
        prop_assert!((&QScalar::q(ctx).invert_q() * &QScalar::q(ctx)).is_one());
    }

    #[test]
    fn q_has_order_ell(ell in 1u32..=12) {
        let ctx = FieldContext::cyclotomic(ell).unwrap();
        let q = QScalar::q(ctx);
        for k in 1..ell {
            prop_assert!(!q.pow(k as i64).unwrap().is_one());
        }
        prop_assert!(q.pow(ell as i64).unwrap().is_one());
    }

    #[test]
    fn q_equivalence_is_an_equivalence(code in 0u32..=6, base in 1i64..30, e1 in -6i64..6, e2 in -6i64..6) {
        let ctx = ctx_for(code);
        let a = QScalar::from_int(ctx, base);
        let x = &a * &QScalar::q_pow(ctx, e1);
        let y = &a * &QScalar::q_pow(ctx, e2);
        prop_assert!(q_equivalent(&x, &x).unwrap().is_some());
        let xy = q_equivalent(&x, &y).unwrap();
        let yx = q_equivalent(&y, &x).unwrap();
        prop_assert!(xy.is_some() && yx.is_some());
        // x = y·q^k  means x/y = q^k
        let k = xy.unwrap();
        prop_assert_eq!(&y * &QScalar::q_pow(ctx, k), x.clone());
        let other = QScalar::from_int(ctx, base + 1000);
        prop_assert!(q_equivalent(&x, &other).unwrap().is_none());
    }
}

#[test]
fn zero_is_not_q_equivalent_to_anything() {
    let ctx = FieldContext::cyclotomic(3).unwrap();
    assert!(q_equivalent(&QScalar::zero(ctx), &QScalar::one(ctx)).is_err());
}
