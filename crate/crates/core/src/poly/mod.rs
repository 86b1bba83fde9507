//! Sparse homogeneous polynomials in `N` variables (four by default:
//! `x, y, z, w`), with coefficients in a [`FieldSpec`].
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded lexicographic with `x` largest. Iteration therefore starts at
//! `x^d`, and that order is what both the text form and the quintic
//! evaluation matrix use.

mod binary;
mod parse;
#[cfg(test)]
mod tests;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::fields::{Field, FieldSpec, Scalar};
use crate::geometry::ProjPoint;
use crate::linalg::{self, Matrix};
use crate::{Error, Result};

pub use binary::{BinaryForm, BinaryRoot};

/// Variable names used for display, by position.
pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 'w'];

/// Exponent vector of a monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial<const N: usize>(pub [u8; N]);

impl<const N: usize> Monomial<N> {
    pub const ONE: Self = Monomial([0; N]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u8; N] {
        &self.0
    }

    /// Product, or `None` if an exponent would overflow.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut e = [0; N];
        for i in 0..N {
            e[i] = self.0[i].checked_add(other.0[i])?;
        }
        Some(Monomial(e))
    }

    /// Quotient when `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut e = [0; N];
        for i in 0..N {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }

    /// Value at a point, from precomputed power tables `pows[i][e] = p_i^e`.
    pub(crate) fn eval_with<F: Field>(&self, field: &F, pows: &[Vec<F::Elem>]) -> F::Elem {
        let mut acc = field.one();
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                acc = field.mul(&acc, &pows[i][e as usize]);
            }
        }
        acc
    }
}

/// Graded, then lexicographic with earlier variables larger; so among
/// monomials of one degree `x^d` is the smallest key.
impl<const N: usize> Ord for Monomial<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl<const N: usize> PartialOrd for Monomial<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> fmt::Debug for Monomial<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", monomial_text(self, &VARIABLES))
    }
}

fn monomial_text<const N: usize>(m: &Monomial<N>, names: &[char]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(String::from(names[i])),
            _ => parts.push(alloc::format!("{}^{}", names[i], e)),
        }
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join("*")
    }
}

/// All monomials of degree `d` in `N` variables, in term order.
pub fn monomials_of_degree<const N: usize>(d: usize) -> Vec<Monomial<N>> {
    fn fill<const N: usize>(i: usize, left: usize, cur: &mut [u8; N], out: &mut Vec<Monomial<N>>) {
        if i == N - 1 {
            cur[i] = left as u8;
            out.push(Monomial(*cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            fill(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if N == 0 {
        if d == 0 {
            out.push(Monomial([0; N]));
        }
        return out;
    }
    fill(0, d, &mut [0; N], &mut out);
    out
}

/// `pows[i][e] = coords[i]^e` for `e ≤ d`.
pub(crate) fn power_table<F: Field>(field: &F, coords: &[F::Elem], d: usize) -> Vec<Vec<F::Elem>> {
    coords
        .iter()
        .map(|c| {
            let mut row = Vec::with_capacity(d + 1);
            row.push(field.one());
            for e in 1..=d {
                row.push(field.mul(&row[e - 1], c));
            }
            row
        })
        .collect()
}

/// A homogeneous polynomial of fixed degree. The zero polynomial keeps
/// its nominal degree.
#[derive(Clone, PartialEq, Eq)]
pub struct HomoPoly<const N: usize = 4> {
    field: FieldSpec,
    degree: usize,
    terms: BTreeMap<Monomial<N>, Scalar>,
}

impl<const N: usize> HomoPoly<N> {
    pub fn zero(field: &FieldSpec, degree: usize) -> Self {
        HomoPoly {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(field: &FieldSpec, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial<N>, Scalar)>,
    {
        let mut out = Self::zero(field, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::WrongDegree {
                    expected: degree as u32,
                    found: m.degree() as u32,
                });
            }
            field.check(&c)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn monomial(field: &FieldSpec, m: Monomial<N>, c: Scalar) -> Self {
        let mut out = Self::zero(field, m.degree());
        out.add_term(m, c);
        out
    }

    pub fn var(field: &FieldSpec, i: usize) -> Self {
        Self::monomial(field, Monomial::var(i), field.one())
    }

    pub fn constant(field: &FieldSpec, c: Scalar) -> Self {
        Self::monomial(field, Monomial::ONE, c)
    }

    /// The linear form `Σ coeffs[i] x_i`.
    pub fn linear(field: &FieldSpec, coeffs: &[Scalar; N]) -> Self {
        let mut out = Self::zero(field, 1);
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(Monomial::var(i), c.clone());
        }
        out
    }

    /// Uniformly random form: one draw per monomial, in term order.
    pub fn random<R: rand::Rng + ?Sized>(field: &FieldSpec, degree: usize, rng: &mut R) -> Result<Self> {
        let mut out = Self::zero(field, degree);
        for m in monomials_of_degree::<N>(degree) {
            let c = field.sample_uniform(rng)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<N>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<N>) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, m: Monomial<N>, c: Scalar) {
        debug_assert_eq!(m.degree(), self.degree);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, self.degree);
        if f.is_zero(c) {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect();
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(&self.field, self.field.one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients mapped through `f` into another field, e.g. along a
    /// field embedding.
    pub fn map_coeffs(&self, target: &FieldSpec, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(target, self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn evaluate(&self, pt: &[Scalar; N]) -> Result<Scalar> {
        for c in pt {
            self.field.check(c)?;
        }
        Ok(self.eval_unchecked(pt))
    }

    pub(crate) fn eval_unchecked(&self, pt: &[Scalar]) -> Scalar {
        let f = &self.field;
        let pows = power_table(f, pt, self.degree);
        self.terms.iter().fold(f.zero(), |acc, (m, c)| {
            f.add(&acc, &f.mul(c, &m.eval_with(f, &pows)))
        })
    }

    /// `∂/∂x_i`; the derivative of a constant is the zero form of degree 0.
    pub fn partial(&self, i: usize) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            out.add_term(dm, f.mul(c, &f.from_i64(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> [Self; N] {
        core::array::from_fn(|i| self.partial(i))
    }

    pub fn gradient_at(&self, pt: &[Scalar; N]) -> Result<[Scalar; N]> {
        for c in pt {
            self.field.check(c)?;
        }
        Ok(core::array::from_fn(|i| self.partial(i).eval_unchecked(pt)))
    }

    /// Matrix of second partials at `pt`.
    pub fn hessian_at(&self, pt: &[Scalar; N]) -> Result<Matrix<Scalar>> {
        for c in pt {
            self.field.check(c)?;
        }
        let grad = self.gradient();
        let mut h = Matrix::filled(N, N, self.field.zero());
        for i in 0..N {
            for j in i..N {
                let v = grad[i].partial(j).eval_unchecked(pt);
                h.set(j, i, v.clone());
                h.set(i, j, v);
            }
        }
        Ok(h)
    }

    /// Substitutes `x_i ↦ images[i]`. All images must share one degree.
    pub fn substitute<const M: usize>(&self, images: &[HomoPoly<M>; N]) -> HomoPoly<M> {
        let f = &self.field;
        let e = images.first().map_or(0, |g| g.degree);
        debug_assert!(images.iter().all(|g| g.degree == e && g.field == *f));
        let one = HomoPoly::<M>::constant(f, f.one());
        let pows: Vec<Vec<HomoPoly<M>>> = images
            .iter()
            .map(|g| {
                let mut row = vec![one.clone()];
                for k in 1..=self.degree {
                    let next = &row[k - 1] * g;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut out = HomoPoly::<M>::zero(f, self.degree * e);
        for (m, c) in &self.terms {
            let mut t = HomoPoly::<M>::constant(f, c.clone());
            for (i, &ei) in m.0.iter().enumerate() {
                if ei > 0 {
                    t = &t * &pows[i][ei as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Exact quotient by a nonzero linear form.
    pub fn divide_by_linear(&self, l: &HomoPoly<N>) -> Result<Self> {
        if l.field != self.field {
            return Err(Error::FieldMismatch);
        }
        if l.degree != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                found: l.degree as u32,
            });
        }
        let f = &self.field;
        let Some((lead, lc)) = l.terms.iter().next() else {
            return Err(Error::NotDivisible);
        };
        let v = lead.0.iter().position(|&e| e == 1).expect("linear monomial");
        let lc_inv = f.inv(lc).expect("nonzero coefficient");
        let mut rest = self.clone();
        let mut quotient = Self::zero(f, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return if self.is_zero() {
                Ok(quotient)
            } else {
                Err(Error::NotDivisible)
            };
        }
        // eliminate x_v from the top power down
        for e in (1..=self.degree).rev() {
            let layer: Vec<(Monomial<N>, Scalar)> = rest
                .terms
                .iter()
                .filter(|(m, _)| m.0[v] as usize == e)
                .map(|(m, c)| (*m, c.clone()))
                .collect();
            for (m, c) in layer {
                let mut qm = m;
                qm.0[v] -= 1;
                let qc = f.mul(&c, &lc_inv);
                for (lm, lcoef) in &l.terms {
                    let pm = qm.checked_mul(lm).expect("exponent overflow");
                    rest.add_term(pm, f.neg(&f.mul(&qc, lcoef)));
                }
                quotient.add_term(qm, qc);
            }
        }
        if rest.is_zero() {
            Ok(quotient)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Canonical text, with variables named by `names`.
    pub fn to_text_with(&self, names: &[char]) -> String {
        let f = &self.field;
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (negative, body) = match f {
                FieldSpec::Rational => {
                    let r = c.as_rational().expect("rational coefficient");
                    let abs = Scalar::Rational(r.abs());
                    (r.is_negative(), f.format_scalar(&abs))
                }
                FieldSpec::Finite(_) => (false, f.format_scalar(c)),
            };
            if idx > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let mono = monomial_text(m, names);
            if m.degree() == 0 {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&body);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl HomoPoly<4> {
    /// Parses the textual grammar: integers, `x y z w`, `t` (the field
    /// generator, extensions only), `+ - * / ^` and parentheses. Division
    /// is by nonzero constants only.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        parse::parse(field, text)
    }

    /// The binary form `F(s·p0 + t·p1)`.
    pub fn restrict_to_line(&self, p0: &ProjPoint, p1: &ProjPoint) -> Result<BinaryForm> {
        let rows = [p0.coords().clone(), p1.coords().clone()];
        self.check_points(&rows)?;
        if linalg::rank(
            &self.field,
            &Matrix::from_rows(4, rows.iter().map(|r| r.to_vec()).collect()),
        ) < 2
        {
            return Err(Error::DegeneratePair);
        }
        let images: [HomoPoly<2>; 4] = core::array::from_fn(|i| {
            HomoPoly::linear(&self.field, &[rows[0][i].clone(), rows[1][i].clone()])
        });
        Ok(BinaryForm::from_homogeneous(&self.substitute(&images)))
    }

    /// The ternary form `F(a·b0 + b·b1 + c·b2)`.
    pub fn restrict_to_plane(&self, basis: [&ProjPoint; 3]) -> Result<HomoPoly<3>> {
        let rows: Vec<[Scalar; 4]> = basis.iter().map(|p| p.coords().clone()).collect();
        self.check_points(&rows)?;
        if linalg::rank(
            &self.field,
            &Matrix::from_rows(4, rows.iter().map(|r| r.to_vec()).collect()),
        ) < 3
        {
            return Err(Error::DegenerateBasis);
        }
        let images: [HomoPoly<3>; 4] = core::array::from_fn(|i| {
            HomoPoly::linear(
                &self.field,
                &[rows[0][i].clone(), rows[1][i].clone(), rows[2][i].clone()],
            )
        });
        Ok(self.substitute(&images))
    }

    fn check_points(&self, rows: &[[Scalar; 4]]) -> Result<()> {
        for r in rows {
            for c in r {
                self.field.check(c)?;
            }
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Display for HomoPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[char] = if N == 2 { &['s', 't'] } else { &VARIABLES };
        f.write_str(&self.to_text_with(names))
    }
}

impl<const N: usize> fmt::Debug for HomoPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomoPoly[{}; deg {}]({})", self.field, self.degree, self)
    }
}

impl<const N: usize> Add for &HomoPoly<N> {
    type Output = HomoPoly<N>;

    /// Panics on a field or degree mismatch.
    fn add(self, rhs: Self) -> HomoPoly<N> {
        assert!(self.field == rhs.field, "field mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<const N: usize> Neg for &HomoPoly<N> {
    type Output = HomoPoly<N>;

    fn neg(self) -> HomoPoly<N> {
        self.scale(&self.field.from_i64(-1))
    }
}

impl<const N: usize> Sub for &HomoPoly<N> {
    type Output = HomoPoly<N>;

    fn sub(self, rhs: Self) -> HomoPoly<N> {
        self + &(-rhs)
    }
}

impl<const N: usize> Mul for &HomoPoly<N> {
    type Output = HomoPoly<N>;

    fn mul(self, rhs: Self) -> HomoPoly<N> {
        assert!(self.field == rhs.field, "field mismatch");
        let f = &self.field;
        let mut out = HomoPoly::zero(f, self.degree + rhs.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.checked_mul(mb).expect("exponent overflow");
                out.add_term(m, f.mul(ca, cb));
            }
        }
        out
    }
}
