//! Univariate polynomials with [`QScalar`] coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_matrix::QMatrix;
use crate::qscalar::{FieldContext, QScalar};

/// Coefficients from low to high degree, with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarPoly {
    ctx: FieldContext,
    coeffs: Vec<QScalar>,
}

impl ScalarPoly {
    pub fn new(ctx: FieldContext, mut coeffs: Vec<QScalar>) -> Self {
        while coeffs.last().is_some_and(QScalar::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.ctx() == ctx));
        ScalarPoly { ctx, coeffs }
    }

    pub fn zero(ctx: FieldContext) -> Self {
        ScalarPoly {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: FieldContext) -> Self {
        Self::new(ctx, vec![QScalar::one(ctx)])
    }

    /// `x - root`.
    pub fn linear(root: &QScalar) -> Self {
        let ctx = root.ctx();
        Self::new(ctx, vec![-root, QScalar::one(ctx)])
    }

    /// ∏ (x - r) over the given roots.
    pub fn from_roots<'a>(ctx: FieldContext, roots: impl IntoIterator<Item = &'a QScalar>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(ctx), |acc, r| acc.mul(&Self::linear(r)))
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[QScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> QScalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| QScalar::zero(self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&QScalar> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Self::new(self.ctx, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Self::new(self.ctx, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ctx);
        }
        let mut out = vec![QScalar::zero(self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.ctx, out)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.ctx), self.clone()));
        }
        let mut quot = vec![QScalar::zero(self.ctx); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(self.ctx, quot), Self::new(self.ctx, rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &QScalar::from_int(self.ctx, k as i64))
            .collect();
        Self::new(self.ctx, coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &QScalar) -> QScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(QScalar::zero(self.ctx), |acc, c| &(&acc * x) + c)
    }

    /// Evaluates at a square matrix by Horner's scheme.
    pub fn eval_matrix(&self, m: &QMatrix) -> Result<QMatrix> {
        let n = m.square_size()?;
        let mut acc = QMatrix::zero(self.ctx, n, n);
        let id = QMatrix::identity(self.ctx, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*x^{k}"))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
