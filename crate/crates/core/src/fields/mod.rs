//! Exact scalar arithmetic over Q and over F_{p^k} with `p > 5`.

mod finite;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub(crate) use finite::is_prime;
pub use finite::{Embedding, FiniteField, Fq, MAX_EXT_DEGREE};

use crate::{Error, Result};

/// Field operations over an explicit context, in the style of a ring
/// object that owns the arithmetic while elements stay plain data.
pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The coefficient field: Q or a finite field F_{p^k} with `p > 5`.
#[derive(Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Finite(Arc<FiniteField>),
}

/// A field element. The representation matches the owning [`FieldSpec`].
/// Rationals are kept in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Finite(Fq),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Finite(x) => x.is_zero(),
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn as_fq(&self) -> Option<Fq> {
        match self {
            Scalar::Finite(a) => Some(*a),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Finite(_) => None,
        }
    }
}

/// Which kind of field to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Finite,
}

/// Builds a field; `p` and `k` are ignored for the rationals.
pub fn make_field(kind: FieldKind, p: u64, k: usize) -> Result<FieldSpec> {
    match kind {
        FieldKind::Rational => Ok(FieldSpec::Rational),
        FieldKind::Finite => FieldSpec::finite(p, k),
    }
}

impl FieldSpec {
    pub fn finite(p: u64, k: usize) -> Result<Self> {
        Ok(FieldSpec::Finite(Arc::new(FiniteField::new(p, k)?)))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::finite(p, 1)
    }

    /// F_{5^k}. Only for the characteristic-5 fixture, which is never fed
    /// to the node test or the census.
    pub fn char5_demo(k: usize) -> Result<Self> {
        Ok(FieldSpec::Finite(Arc::new(FiniteField::with_any_characteristic(
            5, k,
        )?)))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldSpec::Rational)
    }

    pub fn finite_field(&self) -> Option<&Arc<FiniteField>> {
        match self {
            FieldSpec::Finite(f) => Some(f),
            FieldSpec::Rational => None,
        }
    }

    pub fn require_finite(&self) -> Result<&Arc<FiniteField>> {
        self.finite_field().ok_or(Error::FiniteFieldRequired)
    }

    /// `p^k`, or `None` for Q.
    pub fn order(&self) -> Option<u128> {
        self.finite_field().map(|f| f.order())
    }

    /// Whether `a` is a valid element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::Rational, Scalar::Rational(_)) => true,
            (FieldSpec::Finite(f), Scalar::Finite(x)) => f.contains(x),
            _ => false,
        }
    }

    pub fn check(&self, a: &Scalar) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Finite(f) => Scalar::Finite(f.from_bigint(v)),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Option<Scalar> {
        match self {
            FieldSpec::Rational => Some(Scalar::Rational(r.clone())),
            FieldSpec::Finite(f) => f.reduce_rational(r).map(Scalar::Finite),
        }
    }

    pub fn from_fq(&self, a: Fq) -> Scalar {
        debug_assert!(self.finite_field().is_some_and(|f| f.contains(&a)));
        Scalar::Finite(a)
    }

    /// The generator `t` of F_{p^k} over F_p.
    pub fn generator(&self) -> Option<Scalar> {
        self.finite_field().map(|f| Scalar::Finite(f.generator()))
    }

    /// A square root of `a` if one exists in the field. Over a finite field
    /// the smaller root in the canonical element order is chosen; over Q the
    /// nonnegative one.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Finite(f), Scalar::Finite(x)) => f.sqrt(x).map(Scalar::Finite),
            (FieldSpec::Rational, Scalar::Rational(r)) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().magnitude();
                let d = r.denom().magnitude();
                let (sn, sd) = (n.sqrt(), d.sqrt());
                if &(&sn * &sn) == n && &(&sd * &sd) == d {
                    Some(Scalar::Rational(BigRational::new(sn.into(), sd.into())))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// A uniformly distributed element drawn from `rng`.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Scalar> {
        match self {
            FieldSpec::Rational => Err(Error::RationalSamplingUnsupported),
            FieldSpec::Finite(f) => Ok(Scalar::Finite(f.random(rng))),
        }
    }

    /// A uniformly distributed nonzero element.
    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Scalar> {
        loop {
            let s = self.sample_uniform(rng)?;
            if !self.is_zero(&s) {
                return Ok(s);
            }
        }
    }

    /// Canonical text of a single element: `a/b` or an integer over Q,
    /// `c` over F_p, and `(c0 + c1*t + ...)` over F_{p^k}.
    pub fn format_scalar(&self, a: &Scalar) -> String {
        match (self, a) {
            (FieldSpec::Rational, Scalar::Rational(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (FieldSpec::Finite(f), Scalar::Finite(x)) => {
                if f.degree() == 1 {
                    return x.coeffs(1)[0].to_string();
                }
                let parts: Vec<String> = x
                    .coeffs(f.degree())
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match i {
                        0 => c.to_string(),
                        1 if c == 1 => "t".to_string(),
                        1 => format!("{c}*t"),
                        _ if c == 1 => format!("t^{i}"),
                        _ => format!("{c}*t^{i}"),
                    })
                    .collect();
                if parts.is_empty() {
                    "0".to_string()
                } else if parts.len() == 1 {
                    parts[0].clone()
                } else {
                    format!("({})", parts.join(" + "))
                }
            }
            _ => "<mismatch>".to_string(),
        }
    }
}

impl Field for FieldSpec {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Finite(_) => Scalar::Finite(Fq::ZERO),
        }
    }

    fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::one()),
            FieldSpec::Finite(f) => Scalar::Finite(f.one()),
        }
    }

    fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Finite(f) => Scalar::Finite(Field::from_i64(f.as_ref(), v)),
        }
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Finite(f), Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(f.add(x, y)),
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => panic!("scalar field mismatch"),
        }
    }

    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Finite(f), Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(f.sub(x, y)),
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            _ => panic!("scalar field mismatch"),
        }
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Finite(f), Scalar::Finite(x)) => Scalar::Finite(f.neg(x)),
            (_, Scalar::Rational(x)) => Scalar::Rational(-x),
            _ => panic!("scalar field mismatch"),
        }
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Finite(f), Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(f.mul(x, y)),
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => panic!("scalar field mismatch"),
        }
    }

    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Finite(f), Scalar::Finite(x)) => f.inv(x).map(Scalar::Finite),
            (_, Scalar::Rational(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(x.recip()))
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Finite(x) => x.is_zero(),
            Scalar::Rational(x) => x.is_zero(),
        }
    }

    fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Finite(f) => f.p() as u64,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("rational"),
            FieldSpec::Finite(ff) if ff.degree() == 1 => write!(f, "p={}", ff.p()),
            FieldSpec::Finite(ff) => write!(f, "p={},k={}", ff.p(), ff.degree()),
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `rational`, `p=101` or `p=11,k=2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") {
            return Ok(FieldSpec::Rational);
        }
        let bad = || Error::BadFieldSpec(s.to_string());
        let mut p = None;
        let mut k = None;
        for part in s.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "p" if p.is_none() => p = Some(value),
                "k" if k.is_none() => k = Some(value as usize),
                _ => return Err(bad()),
            }
        }
        FieldSpec::finite(p.ok_or_else(bad)?, k.unwrap_or(1))
    }
}

#[cfg(test)]
mod tests;
