//! Eigenvalue discovery for characteristic polynomials whose roots lie on
//! q-orbits of rationals, i.e. have the form c·q^k with c ∈ ℚ.
//!
//! Substituting x = q^k·y and splitting the result into its ℚ-components
//! turns "y·q^k is a root" into a common rational root of finitely many
//! rational polynomials, which the rational root theorem settles.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::ScalarPoly;
use crate::qscalar::{FieldContext, QScalar, RatPoly};

/// Eigenvalues with algebraic multiplicities, sorted canonically.
pub fn find_eigenvalues(cp: &ScalarPoly, hints: &[QScalar]) -> Result<Vec<(QScalar, usize)>> {
    let ctx = cp.ctx();
    let n = cp.degree().unwrap_or(0);
    let mut found: Vec<(QScalar, usize)> = Vec::new();
    let zero_mult = cp.valuation().unwrap_or(0);
    if zero_mult > 0 {
        found.push((QScalar::zero(ctx), zero_mult));
    }
    let mut rest = ScalarPoly::new(ctx, cp.coeffs()[zero_mult..].to_vec());

    let mut candidates: Vec<QScalar> = match ctx {
        FieldContext::Cyclotomic { ell } => cyclotomic_candidates(&rest, ell),
        FieldContext::GenericQ => generic_candidates(&rest),
    };
    candidates.extend(
        hints
            .iter()
            .filter(|h| h.ctx() == ctx && !h.is_zero())
            .cloned(),
    );
    let mut seen = HashSet::new();
    candidates.retain(|c| seen.insert(c.clone()));

    for cand in candidates {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        let lin = ScalarPoly::linear(&cand);
        let mut mult = 0;
        loop {
            let (quot, rem) = rest.div_rem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            mult += 1;
        }
        if mult > 0 {
            found.push((cand, mult));
        }
    }

    let total: usize = found.iter().map(|(_, m)| m).sum();
    if total != n {
        return Err(Error::EigenvaluesNotFound(format!(
            "recovered {total} of {n} eigenvalues; remaining factor {rest:?}"
        )));
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found)
}

/// Nonzero roots y·ζ^k (y ∈ ℚ, 0 ≤ k < ℓ) of a polynomial over ℚ(ζ_ℓ).
fn cyclotomic_candidates(p: &ScalarPoly, ell: u32) -> Vec<QScalar> {
    let ctx = p.ctx();
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for k in 0..ell as i64 {
        // Coefficient j of p(ζ^k y) is c_j ζ^{kj}.
        let shifted: Vec<QScalar> = (0..=deg)
            .map(|j| &p.coeff(j) * &QScalar::q_pow(ctx, k * j as i64))
            .collect();
        let width = shifted[0].cyclotomic_coeffs().map_or(0, <[_]>::len);
        let components = (0..width).map(|t| {
            RatPoly::from_coeffs(
                shifted
                    .iter()
                    .map(|c| c.cyclotomic_coeffs().expect("cyclotomic scalar")[t].clone())
                    .collect(),
            )
        });
        for y in common_rational_roots(components) {
            if !y.is_zero() {
                out.push(&QScalar::from_rational(ctx, y) * &QScalar::q_pow(ctx, k));
            }
        }
    }
    out
}

/// Nonzero roots y·q^k (y ∈ ℚ, k ∈ ℤ) of a polynomial over ℚ(q).
fn generic_candidates(p: &ScalarPoly) -> Vec<QScalar> {
    let ctx = p.ctx();
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    // Clear denominators so every coefficient is a polynomial in q.
    let mut lcm = RatPoly::one();
    for c in p.coeffs() {
        let den = c.as_ratfunc().expect("generic scalar").den();
        let g = lcm.gcd(den);
        lcm = lcm.mul(den).div_exact(&g);
    }
    let polys: Vec<Option<RatPoly>> = p
        .coeffs()
        .iter()
        .map(|c| {
            let f = c.as_ratfunc().expect("generic scalar");
            (!f.is_zero()).then(|| f.num().mul(&lcm.div_exact(f.den())))
        })
        .collect();
    let vals: Vec<(usize, usize)> = polys
        .iter()
        .enumerate()
        .filter_map(|(j, c)| c.as_ref().map(|c| (j, c.valuation().expect("nonzero"))))
        .collect();

    // The lowest q-power of p(y q^k) must cancel, so it is attained by two
    // coefficients j1 < j2: v1 + k j1 = v2 + k j2.
    let mut shifts = BTreeSet::new();
    for (a, &(j1, v1)) in vals.iter().enumerate() {
        for &(j2, v2) in &vals[a + 1..] {
            let diff = v1 as i64 - v2 as i64;
            let span = (j2 - j1) as i64;
            if diff % span == 0 {
                shifts.insert(diff / span);
            }
        }
    }

    let mut out = Vec::new();
    for k in shifts {
        // Group the terms of Σ_j c_j(q) q^{kj} y^j by total q-exponent.
        let mut groups: BTreeMap<i64, BTreeMap<usize, BigRational>> = BTreeMap::new();
        for (j, c) in polys.iter().enumerate() {
            let Some(c) = c else { continue };
            for (e, coeff) in c.coeffs().iter().enumerate() {
                if !coeff.is_zero() {
                    groups
                        .entry(e as i64 + k * j as i64)
                        .or_default()
                        .insert(j, coeff.clone());
                }
            }
        }
        let components = groups.into_values().map(|terms| {
            let deg = *terms.keys().next_back().expect("nonempty group");
            let mut coeffs = vec![BigRational::zero(); deg + 1];
            for (j, c) in terms {
                coeffs[j] = c;
            }
            RatPoly::from_coeffs(coeffs)
        });
        for y in common_rational_roots(components) {
            if !y.is_zero() {
                out.push(&QScalar::from_rational(ctx, y) * &QScalar::q_pow(ctx, k));
            }
        }
    }
    out
}

fn common_rational_roots(polys: impl Iterator<Item = RatPoly>) -> Vec<BigRational> {
    let g = polys.fold(RatPoly::zero(), |acc, p| acc.gcd(&p));
    if g.is_zero() {
        return Vec::new();
    }
    g.rational_roots()
}
