//! Exact scalars for the two regimes of q: a primitive ℓ-th root of unity
//! (elements of ℚ(ζ_ℓ)) or a transcendental q (elements of ℚ(q)).

mod cyclotomic;
mod parse;
mod ratfunc;
pub mod ratpoly;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cyclotomic::{cyclotomic_polynomial, CycloField};
pub use ratfunc::RatFunc;
pub use ratpoly::RatPoly;

/// Multiplicative order of q; `Infinite` when q is not a root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ell {
    Finite(usize),
    Infinite,
}

impl Ell {
    pub fn finite(self) -> Option<usize> {
        match self {
            Ell::Finite(l) => Some(l),
            Ell::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Ell::Infinite)
    }

    /// Parses `"3"`, `"inf"`, `"infinity"` or `"∞"`.
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "inf" | "infinity" | "∞" | "generic" => Ok(Ell::Infinite),
            t => match t.parse::<usize>() {
                Ok(l) if l >= 1 => Ok(Ell::Finite(l)),
                _ => Err(Error::invalid(format!("invalid ell `{text}`"))),
            },
        }
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ell::Finite(l) => write!(f, "{l}"),
            Ell::Infinite => f.write_str("inf"),
        }
    }
}

/// Which field the scalars live in and what q is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FieldContext {
    /// q = ζ_ℓ, a primitive ℓ-th root of unity.
    Cyclotomic { ell: u32 },
    /// q transcendental.
    GenericQ,
}

impl FieldContext {
    pub fn cyclotomic(ell: u32) -> Result<Self> {
        if ell == 0 {
            return Err(Error::invalid("ell must be at least 1"));
        }
        Ok(FieldContext::Cyclotomic { ell })
    }

    pub fn for_ell(ell: Ell) -> Result<Self> {
        match ell {
            Ell::Finite(l) => {
                Self::cyclotomic(u32::try_from(l).map_err(|_| Error::invalid("ell out of range"))?)
            }
            Ell::Infinite => Ok(FieldContext::GenericQ),
        }
    }

    pub fn ell(self) -> Ell {
        match self {
            FieldContext::Cyclotomic { ell } => Ell::Finite(ell as usize),
            FieldContext::GenericQ => Ell::Infinite,
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldContext::Cyclotomic { ell } => write!(f, "Q(zeta_{ell})"),
            FieldContext::GenericQ => f.write_str("Q(q)"),
        }
    }
}

#[derive(Clone)]
enum Repr {
    Cyclo {
        field: &'static CycloField,
        coeffs: Vec<BigRational>,
    },
    Generic(RatFunc),
}

/// An exact element of ℚ(ζ_ℓ) or ℚ(q), always in canonical form.
///
/// Arithmetic operators panic when the operands come from different field
/// contexts; the `checked_*` methods report [`Error::MixedContext`] instead.
#[derive(Clone)]
pub struct QScalar {
    repr: Repr,
}

impl QScalar {
    pub fn zero(ctx: FieldContext) -> Self {
        Self::from_rational(ctx, BigRational::zero())
    }

    pub fn one(ctx: FieldContext) -> Self {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_int(ctx: FieldContext, n: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(ctx: FieldContext, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_rational(
            ctx,
            BigRational::new(num.into(), den.into()),
        ))
    }

    pub fn from_rational(ctx: FieldContext, r: BigRational) -> Self {
        match ctx {
            FieldContext::Cyclotomic { ell } => {
                let field = CycloField::get(ell);
                let mut coeffs = field.zero();
                coeffs[0] = r;
                QScalar {
                    repr: Repr::Cyclo { field, coeffs },
                }
            }
            FieldContext::GenericQ => QScalar {
                repr: Repr::Generic(RatFunc::from_poly(RatPoly::constant(r))),
            },
        }
    }

    /// The distinguished element q.
    pub fn q(ctx: FieldContext) -> Self {
        Self::q_pow(ctx, 1)
    }

    /// q^k for any integer k.
    pub fn q_pow(ctx: FieldContext, k: i64) -> Self {
        match ctx {
            FieldContext::Cyclotomic { ell } => {
                let field = CycloField::get(ell);
                QScalar {
                    repr: Repr::Cyclo {
                        field,
                        coeffs: field.zeta_pow(k),
                    },
                }
            }
            FieldContext::GenericQ => QScalar {
                repr: Repr::Generic(RatFunc::q_pow(k)),
            },
        }
    }

    /// ℚ(ζ_ℓ) element from coefficients in the power basis 1, ζ, …, ζ^{d-1}.
    /// Longer vectors are reduced modulo Φ_ℓ.
    pub fn from_cyclotomic_coeffs(ell: u32, coeffs: Vec<BigRational>) -> Self {
        let field = CycloField::get(ell);
        let reduced = RatPoly::from_coeffs(coeffs).rem(&field.phi);
        let coeffs = (0..field.degree).map(|k| reduced.coeff(k)).collect();
        QScalar {
            repr: Repr::Cyclo { field, coeffs },
        }
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        QScalar {
            repr: Repr::Generic(f),
        }
    }

    pub fn ctx(&self) -> FieldContext {
        match &self.repr {
            Repr::Cyclo { field, .. } => FieldContext::Cyclotomic { ell: field.ell },
            Repr::Generic(_) => FieldContext::GenericQ,
        }
    }

    /// Power-basis coefficients for ℚ(ζ_ℓ) elements.
    pub fn cyclotomic_coeffs(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::Cyclo { coeffs, .. } => Some(coeffs),
            Repr::Generic(_) => None,
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match &self.repr {
            Repr::Generic(f) => Some(f),
            Repr::Cyclo { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Cyclo { coeffs, .. } => coeffs.iter().all(Zero::is_zero),
            Repr::Generic(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Cyclo { coeffs, .. } => {
                coeffs[0].is_one() && coeffs[1..].iter().all(Zero::is_zero)
            }
            Repr::Generic(f) => f.den().is_one() && f.num().is_one(),
        }
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Cyclo { coeffs, .. } => coeffs[1..]
                .iter()
                .all(Zero::is_zero)
                .then(|| coeffs[0].clone()),
            Repr::Generic(f) => {
                if f.den().is_one() && f.num().degree().unwrap_or(0) == 0 {
                    Some(f.num().coeff(0))
                } else {
                    None
                }
            }
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx() == other.ctx() {
            Ok(())
        } else {
            Err(Error::MixedContext)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Cyclo { field, coeffs: a }, Repr::Cyclo { coeffs: b, .. }) => QScalar {
                repr: Repr::Cyclo {
                    field,
                    coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                },
            },
            (Repr::Generic(a), Repr::Generic(b)) => Self::from_ratfunc(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        if other.is_zero() {
            return Ok(other.clone());
        }
        Ok(match (&self.repr, &other.repr) {
            (Repr::Cyclo { field, coeffs: a }, Repr::Cyclo { coeffs: b, .. }) => QScalar {
                repr: Repr::Cyclo {
                    field,
                    coeffs: field.mul(a, b),
                },
            },
            (Repr::Generic(a), Repr::Generic(b)) => Self::from_ratfunc(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.repr {
            Repr::Cyclo { field, coeffs } => QScalar {
                repr: Repr::Cyclo {
                    field,
                    coeffs: field.inv(coeffs),
                },
            },
            Repr::Generic(f) => Self::from_ratfunc(f.inv()),
        })
    }

    fn neg_ref(&self) -> Self {
        match &self.repr {
            Repr::Cyclo { field, coeffs } => QScalar {
                repr: Repr::Cyclo {
                    field,
                    coeffs: coeffs.iter().map(|c| -c).collect(),
                },
            },
            Repr::Generic(f) => Self::from_ratfunc(f.neg()),
        }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.ctx());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Multiplies by a rational number.
    pub fn scale(&self, r: &BigRational) -> Self {
        match &self.repr {
            Repr::Cyclo { field, coeffs } => QScalar {
                repr: Repr::Cyclo {
                    field,
                    coeffs: coeffs.iter().map(|c| c * r).collect(),
                },
            },
            Repr::Generic(f) => {
                Self::from_ratfunc(f.mul(&RatFunc::from_poly(RatPoly::constant(r.clone()))))
            }
        }
    }

    /// The field automorphism sending q to q⁻¹ (ζ ↦ ζ⁻¹, resp. q ↦ 1/q).
    pub fn invert_q(&self) -> Self {
        match &self.repr {
            Repr::Cyclo { field, coeffs } => QScalar {
                repr: Repr::Cyclo {
                    field,
                    coeffs: field.galois(coeffs, -1),
                },
            },
            Repr::Generic(f) => Self::from_ratfunc(f.invert_variable()),
        }
    }

    pub fn format(&self) -> String {
        match &self.repr {
            Repr::Cyclo { coeffs, .. } => ratpoly::fmt_terms(coeffs, 0, "q"),
            Repr::Generic(f) => f.format(),
        }
    }

    pub fn parse(text: &str, ctx: FieldContext) -> Result<Self> {
        parse::parse_scalar(text, ctx)
    }
}

/// Returns `m` with `a = b·q^m` if `a` and `b` are q-equivalent.
///
/// For ℓ < ∞ the least such `m` in `[0, ℓ)` is returned. For generic q the
/// exponent is unique and may be negative.
pub fn q_equivalent(a: &QScalar, b: &QScalar) -> Result<Option<i64>> {
    a.same_ctx(b)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match a.ctx() {
        FieldContext::Cyclotomic { ell } => {
            let ctx = a.ctx();
            let mut cur = b.clone();
            let q = QScalar::q(ctx);
            for m in 0..ell as i64 {
                if &cur == a {
                    return Ok(Some(m));
                }
                cur = &cur * &q;
            }
            Ok(None)
        }
        FieldContext::GenericQ => {
            let ratio = a.checked_div(b)?;
            let f = ratio.as_ratfunc().expect("generic scalar");
            Ok(f.as_monomial().filter(|(c, _)| c.is_one()).map(|(_, k)| k))
        }
    }
}

/// Order on rationals used for canonical choices: by magnitude, then
/// positive before negative.
pub(crate) fn cmp_rational_canonical(a: &BigRational, b: &BigRational) -> Ordering {
    a.abs()
        .cmp(&b.abs())
        .then_with(|| a.is_negative().cmp(&b.is_negative()))
}

fn cmp_coeff_slices(a: &[BigRational], b: &[BigRational]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = cmp_rational_canonical(x, y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

impl PartialEq for QScalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (
                Repr::Cyclo {
                    field: f,
                    coeffs: a,
                },
                Repr::Cyclo {
                    field: g,
                    coeffs: b,
                },
            ) => f.ell == g.ell && a == b,
            (Repr::Generic(a), Repr::Generic(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for QScalar {}

impl Hash for QScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.repr {
            Repr::Cyclo { field, coeffs } => {
                field.ell.hash(state);
                coeffs.hash(state);
            }
            Repr::Generic(f) => f.hash(state),
        }
    }
}

/// Canonical total order: lexicographic on the canonical coefficient vector,
/// comparing rationals by magnitude and then sign.
impl Ord for QScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (
                Repr::Cyclo {
                    field: f,
                    coeffs: a,
                },
                Repr::Cyclo {
                    field: g,
                    coeffs: b,
                },
            ) => f.ell.cmp(&g.ell).then_with(|| cmp_coeff_slices(a, b)),
            (Repr::Generic(a), Repr::Generic(b)) => {
                cmp_coeff_slices(a.num().coeffs(), b.num().coeffs())
                    .then_with(|| cmp_coeff_slices(a.den().coeffs(), b.den().coeffs()))
            }
            (Repr::Cyclo { .. }, Repr::Generic(_)) => Ordering::Less,
            (Repr::Generic(_), Repr::Cyclo { .. }) => Ordering::Greater,
        }
    }
}

impl PartialOrd for QScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                self.$checked(rhs)
                    .expect("scalar operands from mixed contexts")
            }
        }
        impl $trait<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

/// Convenience for building rationals in tests and samplers.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
