//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/')? unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | x | y | z | w | t | '(' sum ')'
//! ```
//!
//! Juxtaposition multiplies, so `2x^2y` is accepted. Positions in errors
//! are byte offsets into the input.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::{HomoPoly, Monomial};
use crate::fields::{Field, FieldSpec, Scalar};
use crate::{Error, Result};

const MAX_EXPONENT: u32 = 64;
const MAX_DEGREE: usize = 255;

type Sparse = BTreeMap<Monomial<4>, Scalar>;

struct Parser<'a> {
    field: &'a FieldSpec,
    src: &'a [u8],
    pos: usize,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

pub(super) fn parse(field: &FieldSpec, text: &str) -> Result<HomoPoly<4>> {
    let mut p = Parser {
        field,
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return err(0, "empty polynomial");
    }
    let poly = p.sum()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return err(p.pos, format!("unexpected character '{}'", c as char));
    }
    let mut degrees = poly.keys().map(|m| m.degree());
    let degree = degrees.next().unwrap_or(0);
    if degrees.any(|d| d != degree) {
        return Err(Error::NotHomogeneous);
    }
    HomoPoly::from_terms(field, degree, poly)
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn sum(&mut self) -> Result<Sparse> {
        let mut acc = self.product()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc = self.add(acc, rhs, false);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc = self.add(acc, rhs, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Sparse> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            let start = self.pos;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.mul(&acc, &rhs, start)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let rhs = self.unary()?;
                    let divisor = match constant_of(&rhs) {
                        Some(c) => c,
                        None if rhs.is_empty() => return err(at, "division by zero"),
                        None => return err(at, "division by a non-constant"),
                    };
                    let Some(inv) = self.field.inv(&divisor) else {
                        return err(at, "division by zero");
                    };
                    acc = acc
                        .into_iter()
                        .map(|(m, c)| (m, self.field.mul(&c, &inv)))
                        .collect();
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    let rhs = self.unary()?;
                    acc = self.mul(&acc, &rhs, start)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Sparse> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let inner = self.unary()?;
                Ok(self.add(Sparse::new(), inner, true))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        self.skip_ws();
        let exp_at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return err(exp_at, "expected a non-negative integer exponent");
        }
        let e: u32 = match digits.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return err(exp_at, format!("exponent exceeds {MAX_EXPONENT}")),
        };
        let mut acc = self.constant(self.field.one());
        for _ in 0..e {
            acc = self.mul(&acc, &base, at)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Sparse> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            None => err(at, "unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let v: BigInt = digits.parse().expect("ascii digits");
                Ok(self.constant(self.field.from_bigint(&v)))
            }
            Some(c) => {
                self.pos += 1;
                let var = match c {
                    b'x' => 0,
                    b'y' => 1,
                    b'z' => 2,
                    b'w' => 3,
                    b't' => {
                        return match self.field.finite_field() {
                            Some(f) if f.degree() > 1 => {
                                Ok(self.constant(self.field.generator().expect("finite field")))
                            }
                            _ => err(at, "'t' is only defined over extension fields"),
                        };
                    }
                    _ if c.is_ascii() => {
                        return err(at, format!("unexpected character '{}'", c as char));
                    }
                    _ => return err(at, "unexpected non-ASCII character"),
                };
                let mut m = Sparse::new();
                m.insert(Monomial::var(var), self.field.one());
                Ok(m)
            }
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_string()
    }

    fn constant(&self, c: Scalar) -> Sparse {
        let mut m = Sparse::new();
        if !self.field.is_zero(&c) {
            m.insert(Monomial::ONE, c);
        }
        m
    }

    fn add(&self, mut a: Sparse, b: Sparse, negate: bool) -> Sparse {
        let f = self.field;
        for (m, c) in b {
            let c = if negate { f.neg(&c) } else { c };
            let s = match a.get(&m) {
                Some(old) => f.add(old, &c),
                None => c,
            };
            if f.is_zero(&s) {
                a.remove(&m);
            } else {
                a.insert(m, s);
            }
        }
        a
    }

    fn mul(&self, a: &Sparse, b: &Sparse, at: usize) -> Result<Sparse> {
        let f = self.field;
        let mut out = Sparse::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let m = match ma.checked_mul(mb) {
                    Some(m) if m.degree() <= MAX_DEGREE => m,
                    _ => return err(at, format!("degree exceeds {MAX_DEGREE}")),
                };
                let c = f.mul(ca, cb);
                let s = match out.get(&m) {
                    Some(old) => f.add(old, &c),
                    None => c,
                };
                if f.is_zero(&s) {
                    out.remove(&m);
                } else {
                    out.insert(m, s);
                }
            }
        }
        Ok(out)
    }
}

fn constant_of(p: &Sparse) -> Option<Scalar> {
    match p.len() {
        1 => p.get(&Monomial::ONE).cloned(),
        _ => None,
    }
}
