use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use super::Field;
use crate::upoly;
use crate::{Error, Result};

/// Largest supported extension degree `k` of F_{p^k}.
pub const MAX_EXT_DEGREE: usize = 12;

/// Largest supported field order.
const MAX_ORDER: u128 = 1 << 62;

/// An element of F_{p^k}: coefficients of a polynomial in the generator `t`
/// of degree `< k`, lowest degree first. Unused slots are zero, so the
/// derived ordering is lexicographic on the coefficient vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq([u32; MAX_EXT_DEGREE]);

impl Fq {
    pub const ZERO: Fq = Fq([0; MAX_EXT_DEGREE]);

    pub(crate) fn from_constant(c: u32) -> Fq {
        let mut v = [0; MAX_EXT_DEGREE];
        v[0] = c;
        Fq(v)
    }

    /// Coefficient vector of length `k`.
    pub fn coeffs(&self, k: usize) -> &[u32] {
        &self.0[..k]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.0.iter().rposition(|&c| c != 0).map_or(1, |i| i + 1);
        f.debug_list().entries(&self.0[..len]).finish()
    }
}

/// The finite field F_{p^k} = F_p[t]/(m(t)).
///
/// The modulus `m` is the first monic irreducible polynomial of degree `k`
/// in lexicographic order of its coefficient vector `(m_0, ..., m_{k-1})`,
/// so the same `(p, k)` always produces the same field.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
    order: u128,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    /// F_{p^k} with the global restriction `5 < p <= 2^31`.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p <= 5 {
            return Err(Error::CharTooSmall(p));
        }
        Self::with_any_characteristic(p, k)
    }

    /// Like [`FiniteField::new`] but without the `p > 5` rule. Only the
    /// characteristic-5 fixture uses this.
    pub(crate) fn with_any_characteristic(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p > 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(Error::ExtensionTooLarge { p, k });
        }
        let order = (p as u128).checked_pow(k as u32).filter(|&q| q <= MAX_ORDER);
        let Some(order) = order else {
            return Err(Error::ExtensionTooLarge { p, k });
        };
        let p = p as u32;
        let modulus = if k == 1 {
            alloc::vec![0, 1]
        } else {
            first_irreducible(p, k)
        };
        Ok(FiniteField { p, k, modulus, order })
    }

    pub(crate) fn prime_field(p: u32) -> Self {
        FiniteField {
            p,
            k: 1,
            modulus: alloc::vec![0, 1],
            order: p as u128,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Number of elements `q = p^k`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Monic modulus, lowest degree first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fq {
        if self.k == 1 {
            // t ≡ 0 modulo the identity modulus `t`
            return Fq::ZERO;
        }
        let mut v = [0; MAX_EXT_DEGREE];
        v[1] = 1;
        Fq(v)
    }

    /// The element with index `n` in the canonical element order (the
    /// derived `Ord` of [`Fq`]).
    pub fn element(&self, mut n: u128) -> Fq {
        debug_assert!(n < self.order);
        let mut v = [0; MAX_EXT_DEGREE];
        for i in (0..self.k).rev() {
            v[i] = (n % self.p as u128) as u32;
            n /= self.p as u128;
        }
        Fq(v)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.order).map(move |n| self.element(n))
    }

    /// Element from a coefficient vector of length at most `k`.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Option<Fq> {
        if coeffs.len() > self.k {
            return None;
        }
        let mut v = [0; MAX_EXT_DEGREE];
        for (slot, &c) in v.iter_mut().zip(coeffs) {
            *slot = c % self.p;
        }
        Some(Fq(v))
    }

    /// Whether the coefficient vector is a valid reduced element.
    pub fn contains(&self, a: &Fq) -> bool {
        a.0.iter()
            .enumerate()
            .all(|(i, &c)| if i < self.k { c < self.p } else { c == 0 })
    }

    pub fn from_constant_u64(&self, v: u64) -> Fq {
        Fq::from_constant((v % self.p as u64) as u32)
    }

    pub fn from_bigint(&self, v: &BigInt) -> Fq {
        let r = v.mod_floor(&BigInt::from(self.p));
        Fq::from_constant(r.to_u32().expect("residue fits"))
    }

    /// Reduction of a rational number; `None` when `p` divides the denominator.
    pub fn reduce_rational(&self, r: &BigRational) -> Option<Fq> {
        let den = self.from_bigint(r.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.from_bigint(r.numer()), &inv))
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        let mut v = [0; MAX_EXT_DEGREE];
        for i in 0..self.k {
            let s = a.0[i] + b.0[i];
            v[i] = if s >= self.p { s - self.p } else { s };
        }
        Fq(v)
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        let mut v = [0; MAX_EXT_DEGREE];
        for i in 0..self.k {
            v[i] = if a.0[i] == 0 { 0 } else { self.p - a.0[i] };
        }
        Fq(v)
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p as u64;
        if self.k == 1 {
            return Fq::from_constant(((a.0[0] as u64 * b.0[0] as u64) % p) as u32);
        }
        let k = self.k;
        let mut acc = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..k {
            let ai = a.0[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                acc[i + j] = (acc[i + j] + ai * b.0[j] as u64) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = acc[i];
            if c == 0 {
                continue;
            }
            let neg_c = p - c;
            for j in 0..k {
                acc[i - k + j] = (acc[i - k + j] + neg_c * self.modulus[j] as u64) % p;
            }
        }
        let mut v = [0; MAX_EXT_DEGREE];
        for i in 0..k {
            v[i] = acc[i] as u32;
        }
        Fq(v)
    }

    pub fn pow(&self, a: &Fq, mut e: u128) -> Fq {
        let mut base = *a;
        let mut acc = Fq::from_constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        if self.k == 1 {
            let (mut r0, mut r1) = (self.p as i64, a.0[0] as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (s0, s1) = (s1, s0 - q * s1);
            }
            return Some(Fq::from_constant(s0.rem_euclid(self.p as i64) as u32));
        }
        Some(self.pow(a, self.order - 2))
    }

    /// `a^(p^d)`, the `d`-th power of Frobenius.
    pub fn frobenius(&self, a: &Fq, d: usize) -> Fq {
        let mut x = *a;
        for _ in 0..d {
            x = self.pow(&x, self.p as u128);
        }
        x
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        let mut v = [0; MAX_EXT_DEGREE];
        for c in v.iter_mut().take(self.k) {
            *c = rng.gen_range(0..self.p);
        }
        Fq(v)
    }

    pub fn is_square(&self, a: &Fq) -> bool {
        a.is_zero() || self.pow(a, (self.order - 1) / 2) == Fq::from_constant(1)
    }

    /// Square root by Tonelli–Shanks; of the two roots the smaller in the
    /// canonical element order is returned.
    pub fn sqrt(&self, a: &Fq) -> Option<Fq> {
        if a.is_zero() {
            return Some(Fq::ZERO);
        }
        if !self.is_square(a) {
            return None;
        }
        let one = Fq::from_constant(1);
        let q1 = self.order - 1;
        let s = q1.trailing_zeros();
        let t = q1 >> s;
        let minus_one = self.neg(&one);
        let z = (1..self.order)
            .map(|n| self.element(n))
            .find(|z| self.pow(z, q1 / 2) == minus_one)
            .expect("odd field has a non-residue");
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        while b != one {
            let mut i = 0;
            let mut b2 = b;
            while b2 != one {
                b2 = self.mul(&b2, &b2);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.mul(&g, &g);
            }
            x = self.mul(&x, &g);
            c = self.mul(&g, &g);
            b = self.mul(&b, &c);
            m = i;
        }
        let neg = self.neg(&x);
        Some(core::cmp::min(x, neg))
    }

    /// Signed representative of a prime-field element in `(-p/2, p/2]`.
    pub fn signed(&self, a: &Fq) -> i64 {
        let v = a.0[0] as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }
}

impl Field for FiniteField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }
    fn one(&self) -> Fq {
        Fq::from_constant(1)
    }
    fn from_i64(&self, v: i64) -> Fq {
        Fq::from_constant(v.rem_euclid(self.p as i64) as u32)
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        FiniteField::add(self, a, b)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        FiniteField::sub(self, a, b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        FiniteField::neg(self, a)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        FiniteField::mul(self, a, b)
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        FiniteField::inv(self, a)
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
}

/// Irreducibility over F_p by Rabin's test. `f` is monic, lowest degree first.
pub(crate) fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let fp = FiniteField::prime_field(p);
    let f: Vec<Fq> = f.iter().map(|&c| Fq::from_constant(c)).collect();
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = alloc::vec![Fq::ZERO, Fq::from_constant(1)];
    // frob[i] = x^(p^i) mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.clone());
    for i in 0..n {
        let next = upoly::pow_mod(&fp, &frob[i], p as u128, &f);
        frob.push(next);
    }
    if upoly::trim(&fp, frob[n].clone()) != x {
        return false;
    }
    prime_factors(n).into_iter().all(|r| {
        let h = upoly::sub(&fp, &frob[n / r], &x);
        upoly::degree(&upoly::gcd(&fp, &h, &f)) == Some(0)
    })
}

fn first_irreducible(p: u32, k: usize) -> Vec<u32> {
    let count = (p as u128).pow(k as u32);
    // candidates with m_0 = 0 are divisible by t
    for n in count / p as u128..count {
        let mut coeffs = alloc::vec![0u32; k + 1];
        let mut r = n;
        for i in (0..k).rev() {
            coeffs[i] = (r % p as u128) as u32;
            r /= p as u128;
        }
        coeffs[k] = 1;
        if coeffs[0] != 0 && is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

/// A field embedding F_{p^a} -> F_{p^b}, determined by the image of the
/// generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<FiniteField>,
    target: Arc<FiniteField>,
    powers: Vec<Fq>,
}

impl Embedding {
    pub fn identity(field: &Arc<FiniteField>) -> Self {
        Self::from_generator_image(field, field, field.generator())
    }

    pub(crate) fn from_generator_image(
        source: &Arc<FiniteField>,
        target: &Arc<FiniteField>,
        image: Fq,
    ) -> Self {
        let mut powers = Vec::with_capacity(source.degree());
        let mut acc = target.one();
        for _ in 0..source.degree() {
            powers.push(acc);
            acc = target.mul(&acc, &image);
        }
        Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        }
    }

    /// All embeddings of `source` into `target`, ordered by the image of
    /// the generator. Empty unless the characteristics agree and the
    /// degree of `source` divides that of `target`.
    pub fn all(source: &Arc<FiniteField>, target: &Arc<FiniteField>) -> Vec<Embedding> {
        if source.p() != target.p() || target.degree() % source.degree() != 0 {
            return Vec::new();
        }
        if source.degree() == 1 {
            return alloc::vec![Self::from_generator_image(source, target, Fq::ZERO)];
        }
        let m: Vec<Fq> = source.modulus().iter().map(|&c| Fq::from_constant(c)).collect();
        let mut roots: Vec<Fq> = upoly::roots(target, &m).into_iter().map(|(r, _)| r).collect();
        roots.sort();
        roots
            .into_iter()
            .map(|r| Self::from_generator_image(source, target, r))
            .collect()
    }

    /// The embedding sending the generator to the smallest admissible image.
    pub fn canonical(source: &Arc<FiniteField>, target: &Arc<FiniteField>) -> Option<Embedding> {
        Self::all(source, target).into_iter().next()
    }

    pub fn source(&self) -> &Arc<FiniteField> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteField> {
        &self.target
    }

    pub fn generator_image(&self) -> Fq {
        if self.source.degree() == 1 {
            Fq::ZERO
        } else {
            self.powers[1]
        }
    }

    pub fn map(&self, a: &Fq) -> Fq {
        let t = &self.target;
        let mut acc = Fq::ZERO;
        for (i, &c) in a.coeffs(self.source.degree()).iter().enumerate() {
            if c != 0 {
                acc = t.add(&acc, &t.mul(&Fq::from_constant(c), &self.powers[i]));
            }
        }
        acc
    }

    pub fn compose(&self, after: &Embedding) -> Embedding {
        debug_assert_eq!(self.target, after.source);
        let image = after.map(&self.generator_image());
        Self::from_generator_image(&self.source, &after.target, image)
    }
}
