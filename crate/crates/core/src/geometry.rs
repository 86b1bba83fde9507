//! Points, lines and planes of P³ with canonical coordinates, exhaustive
//! point enumeration over finite fields, and towers of extension fields
//! for counting points geometrically.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::fields::{Embedding, Field, FieldSpec, FiniteField, Scalar, MAX_EXT_DEGREE};
use crate::linalg::{self, Matrix};
use crate::{Error, Result};

/// A point of P³. The first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [Scalar; 4],
}

impl ProjPoint {
    pub fn new(field: &FieldSpec, coords: [Scalar; 4]) -> Result<Self> {
        for c in &coords {
            field.check(c)?;
        }
        normalize(field, coords).map(|coords| ProjPoint { coords })
    }

    pub fn from_ints(field: &FieldSpec, coords: [i64; 4]) -> Result<Self> {
        Self::new(field, coords.map(|c| field.from_i64(c)))
    }

    /// Wraps coordinates that are already normalized.
    pub(crate) fn from_normalized(coords: [Scalar; 4]) -> Self {
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[Scalar; 4] {
        &self.coords
    }

    /// Index of the leading 1.
    pub fn chart(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero point")
    }

    /// Image under a coordinatewise map (such as a field embedding).
    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        ProjPoint {
            coords: core::array::from_fn(|i| f(&self.coords[i])),
        }
    }

    /// Image under an invertible linear change of coordinates `v ↦ M v`.
    pub fn transform(&self, field: &FieldSpec, m: &Matrix<Scalar>) -> Result<Self> {
        let v = linalg::mat_vec(field, m, &self.coords);
        Self::new(field, v.try_into().expect("4 coordinates"))
    }
}

fn normalize(field: &FieldSpec, mut coords: [Scalar; 4]) -> Result<[Scalar; 4]> {
    let lead = coords
        .iter()
        .find(|c| !field.is_zero(c))
        .ok_or(Error::ZeroVector)?;
    let inv = field.inv(lead).expect("nonzero");
    for c in coords.iter_mut() {
        *c = field.mul(c, &inv);
    }
    Ok(coords)
}

/// Chart first (`x = 1` before `y = 1`, ...), then coordinates.
impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.chart()
            .cmp(&other.chart())
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn rank_of(field: &FieldSpec, rows: &[&[Scalar; 4]]) -> usize {
    let m = Matrix::from_rows(4, rows.iter().map(|r| r.to_vec()).collect());
    linalg::rank(field, &m)
}

/// Whether all points lie on one line (rank of the coordinate matrix ≤ 2).
pub fn collinear(field: &FieldSpec, points: &[&ProjPoint]) -> bool {
    let rows: Vec<&[Scalar; 4]> = points.iter().map(|p| &p.coords).collect();
    rank_of(field, &rows) <= 2
}

/// Whether all points lie in one plane.
pub fn coplanar(field: &FieldSpec, points: &[&ProjPoint]) -> bool {
    let rows: Vec<&[Scalar; 4]> = points.iter().map(|p| &p.coords).collect();
    rank_of(field, &rows) <= 3
}

/// Index pairs `(i, j)` of the Plücker coordinates `p_ij`.
pub const PLUECKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A line of P³, keyed by its normalized Plücker vector. The two
/// spanning points are the rows of the reduced echelon form of any
/// spanning pair, so they are canonical as well.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pluecker: [Scalar; 6],
    points: [ProjPoint; 2],
}

pub fn line_through(field: &FieldSpec, a: &ProjPoint, b: &ProjPoint) -> Result<Line> {
    if a == b {
        return Err(Error::IdenticalPoints);
    }
    let m = Matrix::from_rows(4, alloc::vec![a.coords.to_vec(), b.coords.to_vec()]);
    let ech = linalg::rref(field, &m);
    if ech.rank() < 2 {
        return Err(Error::IdenticalPoints);
    }
    let row = |i: usize| -> [Scalar; 4] { core::array::from_fn(|j| ech.reduced.get(i, j).clone()) };
    let (r0, r1) = (row(0), row(1));
    let raw: [Scalar; 6] =
        PLUECKER_PAIRS.map(|(i, j)| field.sub(&field.mul(&r0[i], &r1[j]), &field.mul(&r0[j], &r1[i])));
    let lead = raw.iter().find(|c| !field.is_zero(c)).expect("independent rows");
    let inv = field.inv(lead).expect("nonzero");
    Ok(Line {
        pluecker: raw.map(|c| field.mul(&c, &inv)),
        points: [ProjPoint::from_normalized(r0), ProjPoint::from_normalized(r1)],
    })
}

impl Line {
    pub fn pluecker(&self) -> &[Scalar; 6] {
        &self.pluecker
    }

    pub fn points(&self) -> &[ProjPoint; 2] {
        &self.points
    }

    pub fn contains(&self, field: &FieldSpec, p: &ProjPoint) -> bool {
        rank_of(
            field,
            &[&self.points[0].coords, &self.points[1].coords, &p.coords],
        ) == 2
    }

    /// The point `s·a + t·b` for the spanning points `a, b`.
    pub fn point_at(&self, field: &FieldSpec, s: &Scalar, t: &Scalar) -> Result<ProjPoint> {
        let [a, b] = &self.points;
        let coords =
            core::array::from_fn(|i| field.add(&field.mul(s, &a.coords[i]), &field.mul(t, &b.coords[i])));
        ProjPoint::new(field, coords)
    }

    /// `(s, t)` with `p = s·a + t·b` for the spanning points, if `p` lies on
    /// the line. The spanning points are in reduced echelon form, so `s`
    /// and `t` are read off at their pivot columns.
    pub fn parameters_of(&self, field: &FieldSpec, p: &ProjPoint) -> Option<(Scalar, Scalar)> {
        if !self.contains(field, p) {
            return None;
        }
        let pivot = |q: &ProjPoint| q.coords.iter().position(|c| !field.is_zero(c)).expect("nonzero");
        let (c0, c1) = (pivot(&self.points[0]), pivot(&self.points[1]));
        Some((p.coords[c0].clone(), p.coords[c1].clone()))
    }

    /// Two independent linear forms cutting out the line.
    pub fn equations(&self, field: &FieldSpec) -> [[Scalar; 4]; 2] {
        let m = Matrix::from_rows(4, self.points.iter().map(|p| p.coords.to_vec()).collect());
        let ker = linalg::nullspace(field, &m);
        core::array::from_fn(|i| ker[i].clone().try_into().expect("4 entries"))
    }

    /// Value of the Plücker relation `p01 p23 − p02 p13 + p03 p12`.
    pub fn pluecker_relation(&self, field: &FieldSpec) -> Scalar {
        let p = &self.pluecker;
        let a = field.mul(&p[0], &p[5]);
        let b = field.mul(&p[1], &p[4]);
        let c = field.mul(&p[2], &p[3]);
        field.add(&field.sub(&a, &b), &c)
    }
}

/// A plane `Σ a_i x_i = 0` with normalized coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plane {
    coeffs: [Scalar; 4],
}

impl Plane {
    pub fn new(field: &FieldSpec, coeffs: [Scalar; 4]) -> Result<Self> {
        for c in &coeffs {
            field.check(c)?;
        }
        normalize(field, coeffs)
            .map(|coeffs| Plane { coeffs })
            .map_err(|_| Error::DegeneratePlane)
    }

    pub fn through(field: &FieldSpec, points: [&ProjPoint; 3]) -> Result<Self> {
        let m = Matrix::from_rows(4, points.iter().map(|p| p.coords.to_vec()).collect());
        let ker = linalg::nullspace(field, &m);
        if ker.len() != 1 {
            return Err(Error::DegenerateBasis);
        }
        Self::new(field, ker[0].clone().try_into().expect("4 entries"))
    }

    /// The unique plane spanned by a line and a point off it.
    pub fn spanned_by(field: &FieldSpec, line: &Line, p: &ProjPoint) -> Result<Self> {
        if line.contains(field, p) {
            return Err(Error::PointOnLine);
        }
        Self::through(field, [&line.points[0], &line.points[1], p])
    }

    pub fn coeffs(&self) -> &[Scalar; 4] {
        &self.coeffs
    }

    pub fn contains(&self, field: &FieldSpec, p: &ProjPoint) -> bool {
        let v = self
            .coeffs
            .iter()
            .zip(&p.coords)
            .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)));
        field.is_zero(&v)
    }
}

/// Upper bound on `q³` for exhaustive enumeration of P³(F_q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub limit: u128,
    pub force: bool,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard {
            limit: 1 << 31,
            force: false,
        }
    }
}

impl EnumerationGuard {
    pub fn with_limit(limit: u128) -> Self {
        EnumerationGuard { limit, force: false }
    }

    pub fn forced() -> Self {
        EnumerationGuard {
            limit: u128::MAX,
            force: true,
        }
    }

    /// Rejects P³(F_q) when `q³` exceeds the limit and the guard is not forced.
    pub fn check(&self, q: u128) -> Result<()> {
        let cube = q.saturating_mul(q).saturating_mul(q);
        if cube > self.limit && !self.force {
            return Err(Error::EnumerationTooLarge {
                points: point_count(q),
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// `|P³(F_q)| = q³ + q² + q + 1`.
pub fn point_count(q: u128) -> u128 {
    q.saturating_mul(q).saturating_mul(q) + q * q + q + 1
}

/// Iterator over P³(F_q) in canonical order.
pub struct PointIter {
    field: Arc<FiniteField>,
    chart: usize,
    index: u128,
}

impl Iterator for PointIter {
    type Item = ProjPoint;

    fn next(&mut self) -> Option<ProjPoint> {
        let q = self.field.order();
        while self.chart < 4 {
            let free = 3 - self.chart;
            if self.index < q.pow(free as u32) {
                let coords = chart_coords(&self.field, self.chart, self.index);
                self.index += 1;
                return Some(ProjPoint::from_normalized(coords.map(Scalar::Finite)));
            }
            self.chart += 1;
            self.index = 0;
        }
        None
    }
}

/// Coordinates of the `n`-th point of chart `c`: zeros, a 1 at position
/// `c`, then the base-`q` digits of `n` (most significant first).
fn chart_coords(field: &FiniteField, c: usize, mut n: u128) -> [crate::fields::Fq; 4] {
    let q = field.order();
    let mut coords = [crate::fields::Fq::ZERO; 4];
    coords[c] = field.one();
    for slot in (c + 1..4).rev() {
        coords[slot] = field.element(n % q);
        n /= q;
    }
    coords
}

pub fn enumerate_points(field: &FieldSpec, guard: &EnumerationGuard) -> Result<PointIter> {
    let ff = field.require_finite()?;
    guard.check(ff.order())?;
    Ok(PointIter {
        field: ff.clone(),
        chart: 0,
        index: 0,
    })
}

/// One level of an [`ExtensionTower`]: the field of degree `degree` over
/// the base, with embeddings into the ambient field and from the base.
#[derive(Clone, Debug)]
pub struct ExtensionLevel {
    pub degree: usize,
    pub field: FieldSpec,
    pub to_ambient: Embedding,
    pub from_base: Embedding,
}

/// The fields F_{q^j}, `1 ≤ j ≤ m`, over a base F_q, all embedded
/// compatibly into F_{q^L} with `L = lcm(1..=m)`.
#[derive(Clone, Debug)]
pub struct ExtensionTower {
    base: FieldSpec,
    ambient: FieldSpec,
    levels: Vec<ExtensionLevel>,
    base_to_ambient: Embedding,
}

fn lcm_upto(m: usize) -> usize {
    (1..=m).fold(1, |acc, j| acc / gcd(acc, j) * j)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ExtensionTower {
    pub fn new(base: &FieldSpec, m: usize, guard: &EnumerationGuard) -> Result<Self> {
        let bf = base.require_finite()?;
        let (p, k) = (bf.p() as u64, bf.degree());
        if m == 0 {
            return Err(Error::ExtensionTooLarge { p, k: 0 });
        }
        let ambient_degree = k * lcm_upto(m);
        if ambient_degree > MAX_EXT_DEGREE {
            return Err(Error::ExtensionTooLarge { p, k: ambient_degree });
        }
        let make = |d: usize| -> Result<Arc<FiniteField>> {
            if d == k {
                Ok(bf.clone())
            } else {
                Ok(Arc::new(FiniteField::with_any_characteristic(p, d)?))
            }
        };
        for j in 1..=m {
            guard.check((p as u128).pow((k * j) as u32))?;
        }
        let ambient = make(ambient_degree)?;
        let base_to_ambient = Embedding::canonical(bf, &ambient).expect("degree divides");
        let mut levels = Vec::with_capacity(m);
        for j in 1..=m {
            let lf = make(k * j)?;
            let to_ambient = Embedding::canonical(&lf, &ambient).expect("degree divides");
            let from_base = Embedding::all(bf, &lf)
                .into_iter()
                .find(|e| e.compose(&to_ambient).generator_image() == base_to_ambient.generator_image())
                .expect("compatible embedding exists");
            levels.push(ExtensionLevel {
                degree: j,
                field: FieldSpec::Finite(lf),
                to_ambient,
                from_base,
            });
        }
        Ok(ExtensionTower {
            base: base.clone(),
            ambient: FieldSpec::Finite(ambient),
            levels,
            base_to_ambient,
        })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn ambient(&self) -> &FieldSpec {
        &self.ambient
    }

    pub fn levels(&self) -> &[ExtensionLevel] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn base_to_ambient(&self) -> &Embedding {
        &self.base_to_ambient
    }

    /// Whether a point with coordinates in level `j` is defined over no
    /// smaller level, i.e. not fixed by `Frob^(k·d)` for a proper divisor
    /// `d` of `j`.
    pub fn is_new_at(&self, j: usize, point: &ProjPoint) -> bool {
        let lf = self.levels[j - 1].field.finite_field().expect("finite");
        let k = self.base.finite_field().expect("finite").degree();
        (1..j).filter(|d| j % d == 0).all(|d| {
            !point.coords.iter().all(|c| {
                let x = c.as_fq().expect("finite coordinate");
                lf.frobenius(&x, k * d) == x
            })
        })
    }

    pub fn to_ambient(&self, j: usize, point: &ProjPoint) -> ProjPoint {
        let e = &self.levels[j - 1].to_ambient;
        point.map(|c| Scalar::Finite(e.map(&c.as_fq().expect("finite coordinate"))))
    }

    /// Runs `finder` on every level and keeps the points that are new at
    /// that level, mapped into the ambient field.
    pub fn search<G>(&self, mut finder: G) -> Result<ExtensionSearch>
    where
        G: FnMut(&ExtensionLevel) -> Result<Vec<ProjPoint>>,
    {
        let mut points = Vec::new();
        let mut new_counts = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let found = finder(level)?;
            let mut n = 0u64;
            for pt in found {
                if self.is_new_at(level.degree, &pt) {
                    points.push((self.to_ambient(level.degree, &pt), level.degree));
                    n += 1;
                }
            }
            new_counts.push(n);
        }
        points.sort();
        Ok(ExtensionSearch::from_parts(points, new_counts))
    }
}

/// Points found over a tower, with per-level statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSearch {
    /// Ambient coordinates and the minimal level of definition, sorted.
    pub points: Vec<(ProjPoint, usize)>,
    /// Points first defined at level `j`, index `j - 1`.
    pub new_counts: Vec<u64>,
    /// `N_j`: points defined over level `j` or below.
    pub counts: Vec<u64>,
    /// `N_{m-1} = N_m`; always false for `m = 1`.
    pub stabilized: bool,
    /// Galois orbit size ↦ number of orbits.
    pub orbit_sizes: BTreeMap<usize, u64>,
}

impl ExtensionSearch {
    fn from_parts(points: Vec<(ProjPoint, usize)>, new_counts: Vec<u64>) -> Self {
        let counts: Vec<u64> = new_counts
            .iter()
            .scan(0, |acc, &n| {
                *acc += n;
                Some(*acc)
            })
            .collect();
        let m = counts.len();
        let stabilized = m >= 2 && counts[m - 2] == counts[m - 1];
        let orbit_sizes = new_counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(i, &n)| (i + 1, n / (i as u64 + 1)))
            .collect();
        ExtensionSearch {
            points,
            new_counts,
            counts,
            stabilized,
            orbit_sizes,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.last().copied().unwrap_or(0)
    }
}

/// Counts points of P³ over `F_{q^j}`, `j ≤ m`, satisfying `predicate` by
/// exhaustive enumeration of each level.
pub fn new_points_over_extension<P>(
    field: &FieldSpec,
    m: usize,
    guard: &EnumerationGuard,
    predicate: P,
) -> Result<ExtensionSearch>
where
    P: Fn(&FieldSpec, &ProjPoint) -> bool,
{
    let tower = ExtensionTower::new(field, m, guard)?;
    tower.search(|level| {
        Ok(enumerate_points(&level.field, guard)?
            .filter(|pt| predicate(&level.field, pt))
            .collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn point_counts() {
        let guard = EnumerationGuard::default();
        assert_eq!(enumerate_points(&fp(7), &guard).unwrap().count(), 400);
        assert_eq!(enumerate_points(&fp(11), &guard).unwrap().count(), 1464);
        let f121 = FieldSpec::finite(11, 2).unwrap();
        // 121^3 + 121^2 + 121 + 1
        assert_eq!(enumerate_points(&f121, &guard).unwrap().count(), 1_786_324);
    }

    #[test]
    fn enumeration_is_sorted_without_duplicates() {
        for f in [fp(7), fp(11), FieldSpec::finite(7, 2).unwrap()] {
            let pts: Vec<ProjPoint> = enumerate_points(&f, &EnumerationGuard::default())
                .unwrap()
                .collect();
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
            let q = f.order().unwrap();
            assert_eq!(pts.len() as u128, point_count(q));
        }
    }

    #[test]
    fn guard_rejects_large_fields() {
        let f = fp(2_147_483_647);
        let err = enumerate_points(&f, &EnumerationGuard::default()).err().unwrap();
        assert!(matches!(err, Error::EnumerationTooLarge { .. }));
        assert!(enumerate_points(&fp(1291), &EnumerationGuard::default()).is_err());
        assert!(enumerate_points(&fp(1291), &EnumerationGuard::forced()).is_ok());
        assert!(enumerate_points(&FieldSpec::Rational, &EnumerationGuard::default()).is_err());
    }

    #[test]
    fn normalization_and_zero_vector() {
        let f = fp(7);
        let p = ProjPoint::from_ints(&f, [0, 3, 6, 1]).unwrap();
        assert_eq!(p, ProjPoint::from_ints(&f, [0, 1, 2, 5]).unwrap());
        assert_eq!(p.chart(), 1);
        assert_eq!(ProjPoint::from_ints(&f, [0, 0, 0, 7]), Err(Error::ZeroVector));
    }

    #[test]
    fn coordinate_line() {
        let f = fp(7);
        let a = ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap();
        let b = ProjPoint::from_ints(&f, [0, 1, 0, 0]).unwrap();
        let l = line_through(&f, &a, &b).unwrap();
        let expect = [1, 0, 0, 0, 0, 0].map(|v| f.from_i64(v));
        assert_eq!(l.pluecker(), &expect);
        assert_eq!(line_through(&f, &b, &a).unwrap(), l);
        assert_eq!(line_through(&f, &a, &a), Err(Error::IdenticalPoints));
    }

    #[test]
    fn collinear_points_give_one_line() {
        let f = fp(13);
        let a = ProjPoint::from_ints(&f, [1, 2, 3, 4]).unwrap();
        let b = ProjPoint::from_ints(&f, [0, 1, 5, 7]).unwrap();
        // c = 2a + 3b
        let c = ProjPoint::from_ints(&f, [2, 7, 21, 29]).unwrap();
        let ab = line_through(&f, &a, &b).unwrap();
        assert_eq!(line_through(&f, &a, &c).unwrap(), ab);
        assert_eq!(line_through(&f, &c, &b).unwrap(), ab);
        assert!(ab.contains(&f, &c));
        assert!(f.is_zero(&ab.pluecker_relation(&f)));
        let d = ProjPoint::from_ints(&f, [0, 0, 0, 1]).unwrap();
        assert!(!ab.contains(&f, &d));
        for eq in ab.equations(&f) {
            let plane = Plane::new(&f, eq).unwrap();
            assert!(plane.contains(&f, &a) && plane.contains(&f, &b) && plane.contains(&f, &c));
        }
    }

    #[test]
    fn plane_through_line_and_point() {
        let f = fp(11);
        let a = ProjPoint::from_ints(&f, [0, 0, 1, 0]).unwrap();
        let b = ProjPoint::from_ints(&f, [0, 0, 0, 1]).unwrap();
        let l = line_through(&f, &a, &b).unwrap();
        let p = ProjPoint::from_ints(&f, [2, 3, 5, 7]).unwrap();
        let h = Plane::spanned_by(&f, &l, &p).unwrap();
        // 3x - 2y = 0, normalized to x + 3y (since -2/3 = 3 mod 11)
        assert_eq!(h.coeffs(), &[1, 3, 0, 0].map(|v| f.from_i64(v)));
        assert_eq!(Plane::spanned_by(&f, &l, &a), Err(Error::PointOnLine));
    }

    #[test]
    fn tower_counts_are_cumulative() {
        // points of the conic-like locus x^2 = 3 y^2 (3 is a non-square mod 7)
        let f = fp(7);
        let s = new_points_over_extension(&f, 2, &EnumerationGuard::default(), |lf, pt| {
            let c = pt.coords();
            let lhs = lf.mul(&c[0], &c[0]);
            let rhs = lf.mul(&lf.from_i64(3), &lf.mul(&c[1], &c[1]));
            lhs == rhs
        })
        .unwrap();
        // over F_7 only x = y = 0: the line {(0:0:z:w)}, 8 points
        assert_eq!(s.new_counts[0], 8);
        // over F_49 two more planes x = ±√3 y, each adding 49^2 + 49 + 1 - 8 - ... points
        let q = 49u64;
        let plane = q * q + q + 1;
        let line = q + 1;
        let over_49 = 2 * plane - line;
        assert_eq!(s.counts[1], over_49);
        assert!(s.counts[0] <= s.counts[1]);
        assert!(!s.stabilized);
        assert_eq!(s.points.len() as u64, s.total());
        assert_eq!(s.orbit_sizes.get(&2).copied(), Some((over_49 - 8) / 2));
    }

    #[test]
    fn tower_embeddings_are_compatible() {
        let f = FieldSpec::finite(7, 2).unwrap();
        let tower = ExtensionTower::new(&f, 3, &EnumerationGuard::forced()).unwrap();
        assert_eq!(tower.ambient().finite_field().unwrap().degree(), 12);
        let bt = tower.base_to_ambient().generator_image();
        for level in tower.levels() {
            assert_eq!(level.from_base.compose(&level.to_ambient).generator_image(), bt);
        }
    }
}
