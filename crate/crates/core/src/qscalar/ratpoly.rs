//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first and trailing zeros are always
//! trimmed, so the zero polynomial is the empty vector and structural equality
//! is polynomial equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Single nonzero term `c * x^k`.
    pub fn as_monomial(&self) -> Option<(BigRational, usize)> {
        let k = self.valuation()?;
        if k + 1 == self.coeffs.len() {
            Some((self.coeffs[k].clone(), k))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    /// Divide by `x^k`; the lowest k coefficients must be zero.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        RatPoly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] * &lead_inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k - dd + j] -= &c * d;
                }
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics (debug) if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.add(other).monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) || coprime_mod_p(self, other) {
            return Self::one();
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients reversed: `x^deg * p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    /// Square-free part (monic).
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Scale to a primitive integer polynomial with positive leading coefficient.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|l| l.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// All distinct rational roots, in increasing order.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut roots = Vec::new();
        let Some(v) = self.valuation() else {
            return roots;
        };
        if v > 0 {
            roots.push(BigRational::zero());
        }
        let core = Self::from_coeffs(self.coeffs[v..].to_vec()).squarefree();
        if core.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = core.to_primitive_integer();
        let nums = divisors(&ints[0].abs());
        let dens = divisors(&ints[ints.len() - 1].abs());
        let mut remaining = core;
        'outer: for d in &dens {
            for n in &nums {
                for sign in [1i32, -1] {
                    let cand = BigRational::new(n * BigInt::from(sign), d.clone());
                    if remaining.eval(&cand).is_zero() {
                        roots.push(cand.clone());
                        let lin = RatPoly::from_coeffs(vec![-cand, BigRational::one()]);
                        remaining = remaining.div_exact(&lin);
                        if remaining.degree().unwrap_or(0) == 0 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

/// Positive divisors of a positive integer by trial division.
/// Mersenne prime 2^61 - 1.
const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MODULUS - 2)
}

fn reduce_mod(c: &BigRational) -> Option<u64> {
    let p = BigInt::from(MODULUS);
    let residue = |x: &BigInt| {
        x.mod_floor(&p)
            .to_u64_digits()
            .1
            .first()
            .copied()
            .unwrap_or(0)
    };
    let den = residue(c.denom());
    (den != 0).then(|| mul_mod(residue(c.numer()), inv_mod(den)))
}

/// Proves `gcd(a, b) = 1` by a degree-0 gcd modulo a large prime. A false
/// result is inconclusive. Reduction keeps the degrees because the leading
/// coefficients are required to survive, so a common factor over ℚ would
/// persist modulo p.
fn coprime_mod_p(a: &RatPoly, b: &RatPoly) -> bool {
    let reduce = |p: &RatPoly| -> Option<Vec<u64>> {
        let v: Option<Vec<u64>> = p.coeffs.iter().map(reduce_mod).collect();
        v.filter(|v| v.last().is_some_and(|&l| l != 0))
    };
    let (Some(mut x), Some(mut y)) = (reduce(a), reduce(b)) else {
        return false;
    };
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    while !y.is_empty() {
        let dy = y.len() - 1;
        let lead_inv = inv_mod(y[dy]);
        while x.len() > dy {
            let dx = x.len() - 1;
            let c = mul_mod(x[dx], lead_inv);
            for (j, &d) in y.iter().enumerate() {
                let t = mul_mod(c, d);
                let slot = &mut x[dx - dy + j];
                *slot = (*slot + MODULUS - t) % MODULUS;
            }
            trim(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(5_000_000u64);
    while &p * &p <= rest && p <= limit {
        if (&rest % &p).is_zero() {
            let mut e = 0;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigInt::one() {
        // Either prime or a product of primes beyond the trial bound; in the
        // latter case some divisors are missed and root discovery degrades.
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Writes a rational coefficient in the scalar grammar (`3`, `-1/2`).
pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Formats `sum c_k var^(k + offset)` with descending exponents.
pub(crate) fn fmt_terms(coeffs: &[BigRational], offset: i64, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = k as i64 + offset;
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if power.is_empty() {
            out.push_str(&fmt_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&fmt_rational(&mag));
            out.push('*');
            out.push_str(&power);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_terms(&self.coeffs, 0, "x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) / (x - 1) = x + 1
        let a = RatPoly::from_ints(&[-1, 0, 1]);
        let b = RatPoly::from_ints(&[-1, 1]);
        let (q, rem) = a.div_rem(&b);
        assert_eq!(q, RatPoly::from_ints(&[1, 1]));
        assert!(rem.is_zero());
        let c = RatPoly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&c), RatPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn modular_coprimality_is_sound() {
        let a = RatPoly::from_ints(&[-1, 0, 1]);
        let b = RatPoly::from_ints(&[1, 1]);
        assert!(!coprime_mod_p(&a, &b));
        assert!(coprime_mod_p(&a, &RatPoly::from_ints(&[2, 1])));
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn ext_gcd_identity() {
        let a = RatPoly::from_ints(&[1, 0, 1]);
        let b = RatPoly::from_ints(&[2, 3, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_one());
    }

    #[test]
    fn rational_roots_found() {
        // 6x^3 - 5x^2 - 2x + 1 = (x - 1)(2x + 1)(3x - 1)
        let p = RatPoly::from_ints(&[1, -2, -5, 6]);
        assert_eq!(p.rational_roots(), vec![r(-1, 2), r(1, 3), r(1, 1)]);
        // x^2 + 1 has none; x^3 has only 0
        assert!(RatPoly::from_ints(&[1, 0, 1]).rational_roots().is_empty());
        assert_eq!(
            RatPoly::from_ints(&[0, 0, 0, 1]).rational_roots(),
            vec![r(0, 1)]
        );
    }

    #[test]
    fn formatting() {
        let p = RatPoly::from_coeffs(vec![r(3, 1), r(0, 1), r(-1, 2)]);
        assert_eq!(fmt_terms(p.coeffs(), 0, "q"), "-1/2*q^2 + 3");
        assert_eq!(
            fmt_terms(RatPoly::from_ints(&[0, -1]).coeffs(), 0, "q"),
            "-q"
        );
        assert_eq!(fmt_terms(&[], 0, "q"), "0");
    }
}
