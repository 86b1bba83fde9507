//! Dense univariate polynomials over a [`Field`], coefficients lowest
//! degree first. Trimmed polynomials carry no trailing zeros; the zero
//! polynomial is the empty vector.

use alloc::vec;
use alloc::vec::Vec;

use crate::fields::{Field, FiniteField, Fq};

pub fn trim<F: Field>(field: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree of a trimmed polynomial, `None` for zero.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => field.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(field, out)
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let nb: Vec<F::Elem> = b.iter().map(|c| field.neg(c)).collect();
    add(field, a, &nb)
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, out)
}

pub fn scale<F: Field>(field: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    trim(field, a.iter().map(|x| field.mul(x, c)).collect())
}

pub fn monic<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = field.inv(lead).expect("nonzero leading coefficient");
            scale(field, a, &inv)
        }
    }
}

/// Quotient and remainder; panics when `b` is zero.
pub fn divrem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = field.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = trim(field, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = field.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = field.sub(&r[shift + j], &field.mul(&c, bj));
        }
        q[shift] = c;
        r = trim(field, r);
    }
    (trim(field, q), r)
}

pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(field, a, b).1
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(field, a.to_vec());
    let mut y = trim(field, b.to_vec());
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    monic(field, &x)
}

pub fn derivative<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(&field.from_i64(i as i64), c))
        .collect();
    trim(field, out)
}

pub fn eval<F: Field>(field: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// `base^e mod modulus`.
pub fn pow_mod<F: Field>(field: &F, base: &[F::Elem], mut e: u128, modulus: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.one()], modulus);
    let mut b = rem(field, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &b), modulus);
        }
        e >>= 1;
        if e > 0 {
            b = rem(field, &mul(field, &b, &b), modulus);
        }
    }
    acc
}

/// Whether a nonzero polynomial has no repeated factor, via `gcd(f, f')`.
/// Valid when the characteristic exceeds the degree.
pub fn is_squarefree<F: Field>(field: &F, a: &[F::Elem]) -> bool {
    let d = derivative(field, a);
    degree(&gcd(field, a, &d)) == Some(0)
}

fn x_poly(field: &FiniteField) -> Vec<Fq> {
    vec![Fq::ZERO, field.one()]
}

/// Distinct roots in F_q of a nonzero polynomial, each with its
/// multiplicity, sorted by root.
pub fn roots(field: &FiniteField, f: &[Fq]) -> Vec<(Fq, usize)> {
    let f = trim(field, f.to_vec());
    let Some(d) = degree(&f) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let g = monic(field, &f);
    let x = x_poly(field);
    let xq = pow_mod(field, &x, field.order(), &g);
    let linear = gcd(field, &g, &sub(field, &xq, &x));
    let mut found = Vec::new();
    split_linear(field, linear, &mut found);
    found.sort();
    found
        .into_iter()
        .map(|r| {
            let lin = vec![field.neg(&r), field.one()];
            let mut m = 0;
            let mut cur = g.clone();
            loop {
                let (q, rest) = divrem(field, &cur, &lin);
                if !rest.is_empty() {
                    break;
                }
                m += 1;
                cur = q;
            }
            (r, m)
        })
        .collect()
}

/// Splits a product of distinct monic linear factors (Cantor–Zassenhaus
/// with deterministic shifts).
fn split_linear(field: &FiniteField, h: Vec<Fq>, out: &mut Vec<Fq>) {
    match degree(&h) {
        None | Some(0) => {}
        Some(1) => out.push(field.neg(&h[0])),
        Some(dh) => {
            let e = (field.order() - 1) / 2;
            for n in 0..field.order() {
                let a = field.element(n);
                let shifted = vec![a, field.one()];
                let w = pow_mod(field, &shifted, e, &h);
                let w1 = sub(field, &w, &[field.one()]);
                let dpart = gcd(field, &h, &w1);
                let dd = degree(&dpart).unwrap_or(0);
                if dd > 0 && dd < dh {
                    let (other, _) = divrem(field, &h, &dpart);
                    split_linear(field, dpart, out);
                    split_linear(field, monic(field, &other), out);
                    return;
                }
            }
            unreachable!("distinct roots are always separated by some shift");
        }
    }
}

/// Degrees of the irreducible factors over F_q, one `(degree,
/// multiplicity)` entry per distinct factor, sorted. Works in every
/// characteristic since no derivative is taken.
pub fn factor_degrees(field: &FiniteField, f: &[Fq]) -> Vec<(usize, usize)> {
    let mut rest = monic(field, &trim(field, f.to_vec()));
    let x = x_poly(field);
    let mut out = Vec::new();
    let mut d = 1;
    while degree(&rest).is_some_and(|n| n > 0) {
        // counts[i] = number of degree-d factors with multiplicity > i
        let mut counts = Vec::new();
        loop {
            let mut xqd = x.clone();
            for _ in 0..d {
                xqd = pow_mod(field, &xqd, field.order(), &rest);
            }
            let h = gcd(field, &rest, &sub(field, &xqd, &x));
            let dh = degree(&h).unwrap_or(0);
            if dh == 0 {
                break;
            }
            counts.push(dh / d);
            rest = divrem(field, &rest, &h).0;
        }
        for (i, &c) in counts.iter().enumerate() {
            let next = counts.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(c - next) {
                out.push((d, i + 1));
            }
        }
        d += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> FiniteField {
        FiniteField::prime_field(p)
    }

    fn poly(field: &FiniteField, coeffs: &[i64]) -> Vec<Fq> {
        trim(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let f = fp(13);
        let a = poly(&f, &[3, 0, 5, 1, 7]);
        let b = poly(&f, &[1, 2, 1]);
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn roots_with_multiplicity() {
        let f = fp(11);
        // (x - 2)^2 (x - 5) (x^2 + 1), and x^2 + 1 has no roots mod 11
        let a = mul(
            &f,
            &mul(&f, &poly(&f, &[-2, 1]), &poly(&f, &[-2, 1])),
            &mul(&f, &poly(&f, &[-5, 1]), &poly(&f, &[1, 0, 1])),
        );
        let r = roots(&f, &a);
        assert_eq!(r, vec![(f.from_i64(2), 2), (f.from_i64(5), 1)]);
        assert_eq!(factor_degrees(&f, &a), vec![(1, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn factor_degrees_in_characteristic_five() {
        let f = fp(5);
        // (x + 2)^5 = x^5 + 2^5 = x^5 + 2 over F_5
        let a = poly(&f, &[2, 0, 0, 0, 0, 1]);
        assert_eq!(factor_degrees(&f, &a), vec![(1, 5)]);
        assert_eq!(roots(&f, &a), vec![(f.from_i64(3), 5)]);
    }

    #[test]
    fn squarefree_detection() {
        let f = fp(7);
        assert!(is_squarefree(&f, &poly(&f, &[1, 0, 1])));
        assert!(!is_squarefree(&f, &poly(&f, &[1, 2, 1])));
    }
}
