use alloc::vec::Vec;
use core::fmt;

use super::{HomoPoly, Monomial};
use crate::fields::{Field, FieldSpec, Fq, Scalar};
use crate::upoly;
use crate::{Error, Result};

/// A binary form `Σ c_i s^(d-i) t^i` of degree `d`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

/// A point `(s : t)` of P¹ with first nonzero coordinate 1. Affine
/// points `(1 : a)` sort by `a`, and `(0 : 1)` comes last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryRoot(pub [Scalar; 2]);

impl Ord for BinaryRoot {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.0[0].is_zero(), &self.0[1]).cmp(&(other.0[0].is_zero(), &other.0[1]))
    }
}

impl PartialOrd for BinaryRoot {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl BinaryRoot {
    /// The point `(1 : a)`.
    pub fn affine(field: &FieldSpec, a: Scalar) -> Self {
        BinaryRoot([field.one(), a])
    }

    /// The point `(0 : 1)`.
    pub fn infinity(field: &FieldSpec) -> Self {
        BinaryRoot([field.zero(), field.one()])
    }

    pub fn is_infinity(&self) -> bool {
        self.0[0].is_zero()
    }

    /// Canonical representative of `(s : t)`; `None` for `(0 : 0)`.
    pub fn normalize(field: &FieldSpec, s: &Scalar, t: &Scalar) -> Option<Self> {
        if let Some(inv) = field.inv(s) {
            Some(Self::affine(field, field.mul(t, &inv)))
        } else if field.is_zero(t) {
            None
        } else {
            Some(Self::infinity(field))
        }
    }
}

impl BinaryForm {
    /// `coeffs[i]` multiplies `s^(d-i) t^i`, where `d = coeffs.len() - 1`.
    pub fn new(field: &FieldSpec, coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree + 1 coefficients");
        BinaryForm {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_homogeneous(p: &HomoPoly<2>) -> Self {
        let d = p.degree();
        let coeffs = (0..=d)
            .map(|i| p.coeff(&Monomial([(d - i) as u8, i as u8])))
            .collect();
        Self::new(p.field(), coeffs)
    }

    pub fn to_homogeneous(&self) -> HomoPoly<2> {
        let d = self.degree();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial([(d - i) as u8, i as u8]), c.clone()));
        HomoPoly::from_terms(&self.field, d, terms).expect("consistent degree")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn evaluate(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let f = &self.field;
        let d = self.degree() as u64;
        self.coeffs.iter().enumerate().fold(f.zero(), |acc, (i, c)| {
            let m = f.mul(&f.pow(s, d - i as u64), &f.pow(t, i as u64));
            f.add(&acc, &f.mul(c, &m))
        })
    }

    /// `F(1, u)` as a trimmed univariate polynomial, lowest degree first.
    fn dehomogenized(&self) -> Vec<Scalar> {
        upoly::trim(&self.field, self.coeffs.clone())
    }

    /// Order of vanishing at `root`; `None` for the zero form.
    pub fn multiplicity_at(&self, root: &BinaryRoot) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let f = &self.field;
        let g = self.dehomogenized();
        if root.is_infinity() {
            return Some(self.degree() - upoly::degree(&g).unwrap_or(0));
        }
        let lin = alloc::vec![f.neg(&root.0[1]), f.one()];
        let mut cur = g;
        let mut m = 0;
        loop {
            let (q, r) = upoly::divrem(f, &cur, &lin);
            if !r.is_empty() {
                return Some(m);
            }
            m += 1;
            cur = q;
        }
    }

    /// The form `G` with `F = (t0·s − s0·t)·G` where `root = (s0 : t0)`.
    pub fn divide_by_root(&self, root: &BinaryRoot) -> Result<BinaryForm> {
        let f = &self.field;
        let d = self.degree();
        if d == 0 {
            return Err(Error::NotDivisible);
        }
        if root.is_infinity() {
            // factor s: the t^d coefficient must vanish
            if !f.is_zero(&self.coeffs[d]) {
                return Err(Error::NotDivisible);
            }
            return Ok(Self::new(f, self.coeffs[..d].to_vec()));
        }
        // factor (a·s − t), i.e. (a − u) after dehomogenizing
        let lin = alloc::vec![root.0[1].clone(), f.from_i64(-1)];
        let g = self.dehomogenized();
        let (q, r) = if g.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            upoly::divrem(f, &g, &lin)
        };
        if !r.is_empty() {
            return Err(Error::NotDivisible);
        }
        let mut coeffs = q;
        coeffs.resize(d, f.zero());
        Ok(Self::new(f, coeffs))
    }

    /// Root of a nonzero linear form.
    pub fn linear_root(&self) -> Option<BinaryRoot> {
        if self.degree() != 1 {
            return None;
        }
        let f = &self.field;
        BinaryRoot::normalize(f, &f.neg(&self.coeffs[1]), &self.coeffs[0])
    }

    /// No repeated linear factor over the algebraic closure. Uses
    /// `gcd(f, f')`, so it needs the characteristic to exceed the degree.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.dehomogenized();
        let dg = upoly::degree(&g).unwrap_or(0);
        if self.degree() - dg >= 2 {
            return false;
        }
        dg == 0 || upoly::is_squarefree(&self.field, &g)
    }

    fn fq_coeffs(&self) -> Result<Vec<Fq>> {
        self.field.require_finite()?;
        Ok(self
            .dehomogenized()
            .iter()
            .map(|c| c.as_fq().expect("finite coefficient"))
            .collect())
    }

    /// Roots in the coefficient field with multiplicities, sorted, the
    /// point at infinity included.
    pub fn roots(&self) -> Result<Vec<(BinaryRoot, usize)>> {
        let ff = self.field.require_finite()?;
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let g = self.fq_coeffs()?;
        let mut out: Vec<(BinaryRoot, usize)> = upoly::roots(ff, &g)
            .into_iter()
            .map(|(r, m)| (BinaryRoot::affine(&self.field, Scalar::Finite(r)), m))
            .collect();
        let inf = self.degree() - upoly::degree(&g).unwrap_or(0);
        if inf > 0 {
            out.push((BinaryRoot::infinity(&self.field), inf));
        }
        out.sort();
        Ok(out)
    }

    /// Degrees of the irreducible factors with multiplicities, sorted; the
    /// factor `s` (root at infinity) counts as a linear factor.
    pub fn factor_profile(&self) -> Result<Vec<(usize, usize)>> {
        let ff = self.field.require_finite()?;
        let g = self.fq_coeffs()?;
        let mut out = if g.is_empty() {
            Vec::new()
        } else {
            upoly::factor_degrees(ff, &g)
        };
        let inf = self.degree() - upoly::degree(&g).unwrap_or(0);
        if inf > 0 && !g.is_empty() {
            out.push((1, inf));
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_homogeneous(), f)
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({})", self)
    }
}
