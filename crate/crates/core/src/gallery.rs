//! Reproducible constructors for the explicit sextics of the theory and
//! for sextics with prescribed nodes.
//!
//! The families `g² + h·f` are built so that the base locus `g = h = f = 0`
//! is a reduced complete intersection of rational points. Over a finite
//! field this keeps every node visible at extension depth 1.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fields::{is_prime, Field, FieldSpec, Scalar};
use crate::geometry::{EnumerationGuard, ProjPoint};
use crate::linalg::{self, Matrix};
use crate::poly::{monomials_of_degree, HomoPoly, Monomial};
use crate::singular::verify_nodal;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GalleryName {
    Barth,
    /// `g₃² + h_r·f_(6−r)`, `1 ≤ r ≤ 3`, with `18r − 3r²` nodes.
    Family(u8),
    /// `f₃² − 4·f₂·f₄`, branch sextic of a quartic threefold with a node.
    QuarticNode,
    /// `g₃² − 4·f₃·h₃`, from a divisor of bidegree (2, 3) in P¹ × P³.
    Bidegree23,
    /// Four nodes on the line `x = y = 0`, over primes where 2 is a fourth power.
    FourPointLine,
    /// Five nodes on the line `x = y = 0`, over primes `p ≡ 1 mod 4`.
    FivePointLine,
    Char5Demo,
    Prescribed,
}

impl GalleryName {
    pub const ALL: [GalleryName; 10] = [
        GalleryName::Barth,
        GalleryName::Family(1),
        GalleryName::Family(2),
        GalleryName::Family(3),
        GalleryName::QuarticNode,
        GalleryName::Bidegree23,
        GalleryName::FourPointLine,
        GalleryName::FivePointLine,
        GalleryName::Char5Demo,
        GalleryName::Prescribed,
    ];

    /// Whether the polynomial depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            GalleryName::Family(_)
                | GalleryName::QuarticNode
                | GalleryName::Bidegree23
                | GalleryName::Prescribed
        )
    }
}

impl fmt::Display for GalleryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryName::Barth => f.write_str("barth"),
            GalleryName::Family(r) => write!(f, "family_r,r={r}"),
            GalleryName::QuarticNode => f.write_str("quartic_node"),
            GalleryName::Bidegree23 => f.write_str("bidegree23"),
            GalleryName::FourPointLine => f.write_str("collinear4"),
            GalleryName::FivePointLine => f.write_str("collinear5"),
            GalleryName::Char5Demo => f.write_str("char5_demo"),
            GalleryName::Prescribed => f.write_str("prescribed"),
        }
    }
}

impl FromStr for GalleryName {
    type Err = Error;

    /// Accepts the names printed by `Display`; the family also as
    /// `family,r=N` or `family_rN`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadGallerySpec(s.to_string());
        let (head, tail) = match s.split_once(',') {
            Some((h, t)) => (h.trim(), Some(t.trim())),
            None => (s.trim(), None),
        };
        let name = match head {
            "barth" => GalleryName::Barth,
            "quartic_node" => GalleryName::QuarticNode,
            "bidegree23" => GalleryName::Bidegree23,
            "collinear4" => GalleryName::FourPointLine,
            "collinear5" => GalleryName::FivePointLine,
            "char5_demo" => GalleryName::Char5Demo,
            "prescribed" => GalleryName::Prescribed,
            "family_r" | "family" => {
                let r = tail
                    .and_then(|t| t.strip_prefix("r="))
                    .and_then(|v| v.parse::<u8>().ok())
                    .filter(|r| (1..=3).contains(r))
                    .ok_or_else(bad)?;
                return Ok(GalleryName::Family(r));
            }
            other => match other.strip_prefix("family_r").and_then(|v| v.parse::<u8>().ok()) {
                Some(r) if (1..=3).contains(&r) && tail.is_none() => return Ok(GalleryName::Family(r)),
                _ => return Err(bad()),
            },
        };
        if tail.is_some() {
            return Err(bad());
        }
        Ok(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallerySpec {
    pub name: GalleryName,
    pub field: FieldSpec,
    pub seed: u64,
    /// Node positions, for `Prescribed` only.
    pub points: Vec<ProjPoint>,
}

impl GallerySpec {
    pub fn new(name: GalleryName, field: FieldSpec, seed: u64) -> Self {
        GallerySpec {
            name,
            field,
            seed,
            points: Vec::new(),
        }
    }

    pub fn with_points(mut self, points: Vec<ProjPoint>) -> Self {
        self.points = points;
        self
    }
}

/// A built fixture together with the seed that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GalleryBuild {
    pub spec: GallerySpec,
    pub polynomial: HomoPoly,
    /// The seed actually used; prescribed-node builds advance it on retry.
    pub seed_used: u64,
    pub attempts: u32,
}

/// Retries allowed when a prescribed-node sample is not nodal.
pub const PRESCRIBED_ATTEMPTS: u32 = 32;
/// Most nodes the prescribed-node construction accepts.
pub const PRESCRIBED_MAX_POINTS: usize = 20;

pub fn build(spec: &GallerySpec) -> Result<GalleryBuild> {
    let field = &spec.field;
    let fixed = |polynomial: HomoPoly| GalleryBuild {
        spec: spec.clone(),
        polynomial,
        seed_used: spec.seed,
        attempts: 1,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(match spec.name {
        GalleryName::Barth => fixed(barth(field)?),
        GalleryName::Family(r) => fixed(family(field, r, &mut rng)?),
        GalleryName::QuarticNode => fixed(quartic_node(field, &mut rng)?),
        GalleryName::Bidegree23 => fixed(bidegree23(field, &mut rng)?),
        GalleryName::FourPointLine => fixed(HomoPoly::parse(field, FOUR_POINT_LINE)?),
        GalleryName::FivePointLine => fixed(HomoPoly::parse(field, FIVE_POINT_LINE)?),
        GalleryName::Char5Demo => {
            if field.characteristic() != 5 {
                return Err(Error::WrongCharacteristic { expected: 5 });
            }
            fixed(HomoPoly::parse(field, CHAR5_DEMO)?)
        }
        GalleryName::Prescribed => {
            let (polynomial, seed_used, attempts) = prescribed_nodes(&spec.points, field, spec.seed)?;
            GalleryBuild {
                spec: spec.clone(),
                polynomial,
                seed_used,
                attempts,
            }
        }
    })
}

pub const FOUR_POINT_LINE: &str = "x^6 + x*y^5 + y^6 + (x + y)*(z^5 - 2*z*w^4) + y*(z^4 - 2*w^4)*(z - 3*w)";
pub const FIVE_POINT_LINE: &str = "x^6 + x*y^5 + y^6 + (x + y)*(z^5 - z*w^4)";
pub const CHAR5_DEMO: &str = "x^5*y + x^4*y^2 + x^2*y^3*z - y^5*z - 2*x^4*z^2 + x*z^5 + y*z^5 \
    + x^3*y^2*w + 2*x^2*y^3*w - x*y*z^3*w - x*y*z^2*w^2 - x^2*y*w^3 + x*y^2*w^3 \
    + x^2*z*w^3 + x*y*w^4 + x*w^5 + 2*y*w^5";

/// `4(τ²x²−y²)(τ²y²−z²)(τ²z²−x²) − (1+2τ)·w²·(x²+y²+z²−w²)²` with
/// `τ = (1+√5)/2`, using the square root of 5 the field provides.
pub fn barth(field: &FieldSpec) -> Result<HomoPoly> {
    let root5 = field.sqrt(&field.from_i64(5)).ok_or(Error::SqrtUnavailable)?;
    let half = field.inv(&field.from_i64(2)).ok_or(Error::SqrtUnavailable)?;
    let tau = field.mul(&field.add(&field.one(), &root5), &half);
    let tau2 = field.mul(&tau, &tau);
    let v: [HomoPoly; 4] = core::array::from_fn(|i| HomoPoly::var(field, i));
    let sq = |i: usize| &v[i] * &v[i];
    let diff = |i: usize, j: usize| &sq(i).scale(&tau2) - &sq(j);
    let product = &(&diff(0, 1) * &diff(1, 2)) * &diff(2, 0);
    let quadric = &(&(&sq(0) + &sq(1)) + &sq(2)) - &sq(3);
    let coeff = field.add(&field.one(), &field.add(&tau, &tau));
    let tail = &(&sq(3) * &(&quadric * &quadric)).scale(&coeff);
    Ok(&product.scale(&field.from_i64(4)) - tail)
}

fn random_vector(field: &FieldSpec, rng: &mut ChaCha8Rng) -> Result<[Scalar; 4]> {
    loop {
        let c = (0..4)
            .map(|_| field.sample_uniform(rng))
            .collect::<Result<Vec<_>>>()?;
        if c.iter().any(|x| !field.is_zero(x)) {
            return Ok(c.try_into().expect("4 entries"));
        }
    }
}

fn random_linear(field: &FieldSpec, rng: &mut ChaCha8Rng) -> Result<HomoPoly> {
    Ok(HomoPoly::linear(field, &random_vector(field, rng)?))
}

fn product(field: &FieldSpec, forms: &[HomoPoly]) -> HomoPoly {
    forms
        .iter()
        .fold(HomoPoly::constant(field, field.one()), |acc, l| &acc * l)
}

fn random_invertible(field: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<Matrix<Scalar>> {
    loop {
        let data = (0..n * n)
            .map(|_| field.sample_uniform(rng))
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::new(n, n, data);
        if linalg::rank(field, &m) == n {
            return Ok(m);
        }
    }
}

fn combine(field: &FieldSpec, m: &Matrix<Scalar>, row: usize, forms: &[HomoPoly]) -> HomoPoly {
    let mut out = HomoPoly::zero(field, forms[0].degree());
    for (j, g) in forms.iter().enumerate() {
        out = &out + &g.scale(m.get(row, j));
    }
    out
}

/// Whether no four of the planes pass through a common point.
fn in_general_position(field: &FieldSpec, planes: &[[Scalar; 4]]) -> bool {
    let n = planes.len();
    let rows = |idx: [usize; 4]| Matrix::from_rows(4, idx.iter().map(|&i| planes[i].to_vec()).collect());
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if linalg::rank(field, &rows([a, b, c, d])) < 4 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `n` random planes which, together with `fixed`, are in general
/// position.
fn general_planes(
    field: &FieldSpec,
    fixed: &[[Scalar; 4]],
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<[Scalar; 4]>> {
    loop {
        let mut all = fixed.to_vec();
        for _ in 0..n {
            all.push(random_vector(field, rng)?);
        }
        if in_general_position(field, &all) {
            return Ok(all.split_off(fixed.len()));
        }
    }
}

fn linears(field: &FieldSpec, planes: &[[Scalar; 4]]) -> Vec<HomoPoly> {
    planes.iter().map(|c| HomoPoly::linear(field, c)).collect()
}

/// Where a plane not containing the line through `a, b` meets it.
fn meet(field: &FieldSpec, plane: &[Scalar; 4], a: &[Scalar; 4], b: &[Scalar; 4]) -> Option<[Scalar; 4]> {
    let dot = |v: &[Scalar; 4]| {
        v.iter()
            .zip(plane)
            .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
    };
    let (pa, pb) = (dot(a), dot(b));
    if field.is_zero(&pa) && field.is_zero(&pb) {
        return None;
    }
    // pb·a − pa·b lies on the plane
    Some(core::array::from_fn(|i| {
        field.sub(&field.mul(&pb, &a[i]), &field.mul(&pa, &b[i]))
    }))
}

/// Projective equality of nonzero vectors.
fn same_point(field: &FieldSpec, u: &[Scalar; 4], v: &[Scalar; 4]) -> bool {
    linalg::rank(field, &Matrix::from_rows(4, alloc::vec![u.to_vec(), v.to_vec()])) < 2
}

/// `(g, h, f)` of degrees `(3, 2, 4)` on the quadric `x0·x1 = x2·x3`.
///
/// The quadric is ruled by the lines `R_s = {x0 = s·x2, x3 = s·x1}` and
/// `R'_t = {x0 = t·x3, x2 = t·x1}`, meeting at `(st : 1 : t : s)`. The
/// tangent plane there, `x0 + st·x1 − s·x2 − t·x3`, cuts out `R_s ∪ R'_t`.
/// Three such planes give six rational lines; four planes of `f` cut each
/// line once, and are resampled until the 24 points are distinct and avoid
/// the nine crossings `R_(s_i) ∩ R'_(t_j)`.
fn quadric_base_locus(field: &FieldSpec, rng: &mut ChaCha8Rng) -> Result<[HomoPoly; 3]> {
    let x: [HomoPoly; 4] = core::array::from_fn(|i| HomoPoly::var(field, i));
    let h = &(&x[0] * &x[1]) - &(&x[2] * &x[3]);
    let distinct = |rng: &mut ChaCha8Rng| -> Result<[Scalar; 3]> {
        loop {
            let v = [
                field.sample_uniform(rng)?,
                field.sample_uniform(rng)?,
                field.sample_uniform(rng)?,
            ];
            if v[0] != v[1] && v[1] != v[2] && v[0] != v[2] {
                return Ok(v);
            }
        }
    };
    let (s, t) = (distinct(rng)?, distinct(rng)?);
    let (zero, one) = (field.zero(), field.one());
    let crossing = |s: &Scalar, t: &Scalar| [field.mul(s, t), one.clone(), t.clone(), s.clone()];
    // R_s is spanned by (s : 0 : 1 : 0) and (0 : 1 : 0 : s), R'_t by
    // (t : 0 : 0 : 1) and (0 : 1 : t : 0)
    let mut lines: Vec<([Scalar; 4], [Scalar; 4])> = Vec::new();
    for si in &s {
        lines.push((
            [si.clone(), zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), one.clone(), zero.clone(), si.clone()],
        ));
    }
    for tj in &t {
        lines.push((
            [tj.clone(), zero.clone(), zero.clone(), one.clone()],
            [zero.clone(), one.clone(), tj.clone(), zero.clone()],
        ));
    }
    let crossings: Vec<[Scalar; 4]> = s
        .iter()
        .flat_map(|si| t.iter().map(move |tj| (si, tj)))
        .map(|(si, tj)| crossing(si, tj))
        .collect();
    let tangent = |si: &Scalar, ti: &Scalar| {
        HomoPoly::linear(
            field,
            &[one.clone(), field.mul(si, ti), field.neg(si), field.neg(ti)],
        )
    };
    let g0 = product(
        field,
        &[
            tangent(&s[0], &t[0]),
            tangent(&s[1], &t[1]),
            tangent(&s[2], &t[2]),
        ],
    );
    let planes = loop {
        let planes = (0..4)
            .map(|_| random_vector(field, rng))
            .collect::<Result<Vec<_>>>()?;
        let mut pts: Vec<[Scalar; 4]> = Vec::new();
        let mut ok = true;
        'check: for m in &planes {
            for (a, b) in &lines {
                match meet(field, m, a, b) {
                    Some(p) if !pts.iter().chain(&crossings).any(|q| same_point(field, q, &p)) => pts.push(p),
                    _ => {
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        if ok {
            break planes;
        }
    };
    let g = &g0 + &(&h * &random_linear(field, rng)?);
    let f = &(&product(field, &linears(field, &planes)) + &(&h * &HomoPoly::random(field, 2, rng)?))
        + &(&g * &random_linear(field, rng)?);
    Ok([g, h, f])
}

/// `(g, h, f)` of degrees `(3, r, 6 − r)` whose common zeros are
/// `3r(6 − r)` distinct rational points, each a transversal intersection.
fn split_base_locus(field: &FieldSpec, r: u8, rng: &mut ChaCha8Rng) -> Result<[HomoPoly; 3]> {
    match r {
        1 => {
            // the base locus is the complete intersection of g and f in the
            // plane h; multiples of h keep it while making g and f general
            let hv = random_vector(field, rng)?;
            let planes = general_planes(field, core::slice::from_ref(&hv), 8, rng)?;
            let h = HomoPoly::linear(field, &hv);
            let ls = linears(field, &planes);
            let g = &product(field, &ls[..3]) + &(&h * &HomoPoly::random(field, 2, rng)?);
            let f = &product(field, &ls[3..]) + &(&h * &HomoPoly::random(field, 4, rng)?);
            Ok([g, h, f])
        }
        2 => {
            let [g, h, f] = quadric_base_locus(field, rng)?;
            let m = random_invertible(field, 4, rng)?;
            let images: [HomoPoly; 4] = core::array::from_fn(|i| {
                HomoPoly::linear(field, &core::array::from_fn(|j| m.get(i, j).clone()))
            });
            Ok([
                g.substitute(&images),
                h.substitute(&images),
                f.substitute(&images),
            ])
        }
        3 => {
            // three products of three planes meet in 27 rational points; a
            // random invertible recombination spans the same net
            let planes = general_planes(field, &[], 9, rng)?;
            let ls = linears(field, &planes);
            let base = [
                product(field, &ls[..3]),
                product(field, &ls[3..6]),
                product(field, &ls[6..]),
            ];
            let m = random_invertible(field, 3, rng)?;
            Ok(core::array::from_fn(|i| combine(field, &m, i, &base)))
        }
        _ => Err(Error::BadGallerySpec(alloc::format!("family_r,r={r}"))),
    }
}

/// `g² + h·f` with `(deg g, deg h, deg f) = (3, r, 6 − r)`.
pub fn family(field: &FieldSpec, r: u8, rng: &mut ChaCha8Rng) -> Result<HomoPoly> {
    let [g, h, f] = split_base_locus(field, r, rng)?;
    Ok(&(&g * &g) + &(&h * &f))
}

/// `f₃² − 4·f₂·f₄`.
pub fn quartic_node(field: &FieldSpec, rng: &mut ChaCha8Rng) -> Result<HomoPoly> {
    let [f3, f2, f4] = split_base_locus(field, 2, rng)?;
    Ok(&(&f3 * &f3) - &(&f2 * &f4).scale(&field.from_i64(4)))
}

/// `g₃² − 4·f₃·h₃`.
pub fn bidegree23(field: &FieldSpec, rng: &mut ChaCha8Rng) -> Result<HomoPoly> {
    let [g3, f3, h3] = split_base_locus(field, 3, rng)?;
    Ok(&(&g3 * &g3) - &(&f3 * &h3).scale(&field.from_i64(4)))
}

/// The linear conditions `∂F/∂x_i(p) = 0` on the 84 sextic coefficients.
fn singularity_conditions(field: &FieldSpec, points: &[ProjPoint], monos: &[Monomial<4>]) -> Matrix<Scalar> {
    let mut rows = Vec::with_capacity(4 * points.len());
    for p in points {
        for i in 0..4 {
            rows.push(
                monos
                    .iter()
                    .map(|m| {
                        HomoPoly::monomial(field, *m, field.one())
                            .partial(i)
                            .eval_unchecked(p.coords())
                    })
                    .collect(),
            );
        }
    }
    Matrix::from_rows(monos.len(), rows)
}

/// A sextic singular at exactly `points`, all of them nodes, checked over
/// the field itself. Returns the polynomial, the seed that produced it and
/// the number of attempts.
pub fn prescribed_nodes(points: &[ProjPoint], field: &FieldSpec, seed: u64) -> Result<(HomoPoly, u64, u32)> {
    field.require_finite()?;
    if points.len() > PRESCRIBED_MAX_POINTS {
        return Err(Error::TooManyPoints {
            max: PRESCRIBED_MAX_POINTS,
            got: points.len(),
        });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() != points.len() {
        return Err(Error::DuplicatePoints);
    }
    for p in &pts {
        for c in p.coords() {
            field.check(c)?;
        }
    }
    let monos: Vec<Monomial<4>> = monomials_of_degree(6);
    let kernel = linalg::nullspace(field, &singularity_conditions(field, &pts, &monos));
    let guard = EnumerationGuard::default();
    for attempt in 0..PRESCRIBED_ATTEMPTS {
        let s = seed.wrapping_add(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let mut coeffs = alloc::vec![field.zero(); monos.len()];
        for v in &kernel {
            let c = field.sample_uniform(&mut rng)?;
            for (acc, x) in coeffs.iter_mut().zip(v) {
                *acc = field.add(acc, &field.mul(&c, x));
            }
        }
        let f = HomoPoly::from_terms(field, 6, monos.iter().copied().zip(coeffs))?;
        if f.is_zero() {
            continue;
        }
        let rec = verify_nodal(&f, 1, &guard)?;
        if rec.is_nodal() && rec.nodes == pts {
            return Ok((f, s, attempt + 1));
        }
    }
    Err(Error::NoNodalMember {
        attempts: PRESCRIBED_ATTEMPTS,
    })
}

/// Smallest prime `p ≥ start`, `p > 5`, over which every singular point of
/// the fixture is rational: `z⁴ − 2` splits for the four-point example,
/// `z⁴ − w⁴` splits for the five-point one and 5 is a square for the
/// Barth sextic.
pub fn suitable_prime(name: GalleryName, start: u64, limit: u64) -> Result<u64> {
    let ok = |p: u64| -> bool {
        let fourth_roots = |a: u64| (0..p).filter(|z| (z * z % p) * (z * z % p) % p == a % p).count();
        match name {
            GalleryName::FourPointLine => fourth_roots(2) == 4,
            GalleryName::FivePointLine => p % 4 == 1,
            GalleryName::Barth => (0..p).any(|z| z * z % p == 5 % p),
            _ => true,
        }
    };
    (start.max(7)..=limit)
        .find(|&p| is_prime(p) && ok(p))
        .ok_or(Error::NoSuitablePrime(limit))
}

/// Canonical text of a gallery polynomial, stable across runs.
pub fn polynomial_text(b: &GalleryBuild) -> String {
    b.polynomial.to_string()
}
