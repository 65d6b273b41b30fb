//! Arithmetic tables for the cyclotomic fields ℚ(ζ_ℓ) = ℚ[x]/Φ_ℓ(x).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratpoly::RatPoly;

/// Reduction data for one ℓ. Instances are interned and live for the whole
/// process, so scalars can hold a `&'static` reference.
#[derive(Debug)]
pub struct CycloField {
    pub ell: u32,
    pub degree: usize,
    pub phi: RatPoly,
    /// `reduce[k]` is x^k mod Φ_ℓ for `k < 2*degree - 1`.
    reduce: Vec<Vec<BigRational>>,
    /// `zeta_pow[k]` is ζ^k for `0 <= k < ell`.
    zeta_pow: Vec<Vec<BigRational>>,
}

/// Φ_n, computed by dividing x^n - 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(n: u32) -> RatPoly {
    let mut p = RatPoly::monomial(BigRational::one(), n as usize).sub(&RatPoly::one());
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic_polynomial(d));
        }
    }
    p
}

fn padded(p: &RatPoly, len: usize) -> Vec<BigRational> {
    (0..len).map(|k| p.coeff(k)).collect()
}

impl CycloField {
    fn build(ell: u32) -> Self {
        let phi = cyclotomic_polynomial(ell);
        let degree = phi.degree().expect("cyclotomic polynomial is nonzero");
        let reduce = (0..(2 * degree).saturating_sub(1).max(1))
            .map(|k| padded(&RatPoly::monomial(BigRational::one(), k).rem(&phi), degree))
            .collect();
        let zeta_pow = (0..ell as usize)
            .map(|k| padded(&RatPoly::monomial(BigRational::one(), k).rem(&phi), degree))
            .collect();
        CycloField {
            ell,
            degree,
            phi,
            reduce,
            zeta_pow,
        }
    }

    pub fn get(ell: u32) -> &'static CycloField {
        static CACHE: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        guard
            .entry(ell)
            .or_insert_with(|| Box::leak(Box::new(CycloField::build(ell))))
    }

    pub fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.degree]
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> Vec<BigRational> {
        let idx = k.rem_euclid(self.ell as i64) as usize;
        self.zeta_pow[idx].clone()
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigRational> = conv[..d].to_vec();
        for (k, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reduce[k]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }

    /// Inverse of a nonzero element via the extended Euclidean algorithm.
    pub fn inv(&self, a: &[BigRational]) -> Vec<BigRational> {
        let p = RatPoly::from_coeffs(a.to_vec());
        let (g, s, _) = p.ext_gcd(&self.phi);
        debug_assert!(g.is_one(), "element not invertible mod Φ");
        padded(&s.rem(&self.phi), self.degree)
    }

    /// Applies the automorphism ζ ↦ ζ^k (k coprime to ℓ).
    pub fn galois(&self, a: &[BigRational], k: i64) -> Vec<BigRational> {
        let mut out = self.zero();
        for (j, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pow = self.zeta_pow(k * j as i64);
            for (o, p) in out.iter_mut().zip(&pow) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        out
    }
}
