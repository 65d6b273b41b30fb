//! Rational functions in the indeterminate q.

use num_rational::BigRational;
use num_traits::One;

use super::ratpoly::{fmt_terms, RatPoly};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: RatPoly::zero(),
            den: RatPoly::one(),
        }
    }

    pub fn from_poly(num: RatPoly) -> Self {
        RatFunc {
            num,
            den: RatPoly::one(),
        }
    }

    /// Builds `num / den`, reducing to canonical form. `den` must be nonzero.
    pub fn new(num: RatPoly, den: RatPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((c, d)) = den.as_monomial() {
            // Laurent case: the gcd is a power of q, no Euclid needed.
            let k = num.valuation().unwrap_or(0).min(d);
            let inv = c.recip();
            return RatFunc {
                num: num.unshift(k).scale(&inv),
                den: RatPoly::monomial(BigRational::one(), d - k),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading().cloned().expect("nonzero denominator");
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `q^k` for any integer k.
    pub fn q_pow(k: i64) -> Self {
        let m = RatPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RatFunc {
                num: RatPoly::one(),
                den: m,
            }
        }
    }

    /// If this is exactly `c * q^k`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        let (c, kn) = self.num.as_monomial()?;
        let (_, kd) = self.den.as_monomial()?;
        Some((c, kn as i64 - kd as i64))
    }

    /// Substitutes q ↦ 1/q.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // p(1/q) = q^{-deg p} rev(p)
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        let num = self.num.reversed();
        let den = self.den.reversed();
        let shift = dd - dn;
        if shift >= 0 {
            Self::new(num.shift(shift as usize), den)
        } else {
            Self::new(num, den.shift((-shift) as usize))
        }
    }

    pub fn format(&self) -> String {
        if self.den.is_one() {
            return fmt_terms(self.num.coeffs(), 0, "q");
        }
        if let Some((c, d)) = self.den.as_monomial() {
            debug_assert!(c.is_one());
            // Laurent polynomial: num * q^{-d}
            let v = self.num.valuation().unwrap_or(0);
            let coeffs = &self.num.coeffs()[v..];
            return fmt_terms(coeffs, v as i64 - d as i64, "q");
        }
        format!(
            "({})/({})",
            fmt_terms(self.num.coeffs(), 0, "q"),
            fmt_terms(self.den.coeffs(), 0, "q")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_common_factors() {
        // (q^2 - 1)/(q - 1) = q + 1
        let f = RatFunc::new(
            RatPoly::from_ints(&[-1, 0, 1]),
            RatPoly::from_ints(&[-1, 1]),
        );
        assert_eq!(f, RatFunc::from_poly(RatPoly::from_ints(&[1, 1])));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFunc::new(RatPoly::from_ints(&[1]), RatPoly::from_ints(&[2, 4]));
        assert!(f.den().leading().unwrap().is_one());
    }

    #[test]
    fn variable_inversion_is_involutive() {
        let f = RatFunc::new(
            RatPoly::from_ints(&[3, 0, 1]),
            RatPoly::from_ints(&[1, 2, 0, 1]),
        );
        assert_eq!(f.invert_variable().invert_variable(), f);
        assert_eq!(RatFunc::q_pow(3).invert_variable(), RatFunc::q_pow(-3));
    }

    #[test]
    fn laurent_formatting() {
        let f = RatFunc::q_pow(-2).add(&RatFunc::from_poly(RatPoly::from_ints(&[0, 3])));
        assert_eq!(f.format(), "3*q + q^-2");
    }
}
