//! Conditions imposed by a point set on quintic forms.
//!
//! For a nodal sextic with singular set Σ, the number `I` of independent
//! linear conditions that vanishing on Σ imposes on quintics determines the
//! defect `#Σ − I` of the double solid, which vanishes exactly when the
//! double solid is Q-factorial.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::fields::{Field, FieldSpec, Scalar};
use crate::geometry::{line_through, Line, Plane, ProjPoint};
use crate::linalg::{self, Matrix};
use crate::poly::{monomials_of_degree, power_table, Monomial};
use crate::singular::NodalSurfaceRecord;
use crate::{Error, Result};

/// Number of quintic monomials in four variables.
pub const QUINTIC_DIM: usize = 56;

/// How far a defect computed over a given field can be trusted for the
/// characteristic-zero surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Caveat {
    /// Computed over Q: the defect itself.
    ExactRational,
    /// Computed mod p: rank can only drop, so this defect is an upper
    /// bound for the characteristic-zero defect.
    CharPLowerBound,
}

impl Caveat {
    pub fn for_field(field: &FieldSpec) -> Self {
        if field.is_rational() {
            Caveat::ExactRational
        } else {
            Caveat::CharPLowerBound
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Caveat::ExactRational => "exact-rational",
            Caveat::CharPLowerBound => "char-p-lower-bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub node_count: usize,
    pub independent_conditions: usize,
    pub defect: usize,
    pub q_factorial: bool,
    pub field: FieldSpec,
    pub caveat: Caveat,
    /// Set when the points did not come from a verified surface.
    pub synthetic: bool,
}

/// Row `i` holds the 56 quintic monomials, in term order, at point `i`.
pub fn evaluation_matrix(field: &FieldSpec, points: &[ProjPoint]) -> Result<Matrix<Scalar>> {
    evaluation_matrix_of_degree(field, points, 5)
}

fn evaluation_matrix_of_degree(field: &FieldSpec, points: &[ProjPoint], d: usize) -> Result<Matrix<Scalar>> {
    let monos: Vec<Monomial<4>> = monomials_of_degree(d);
    let mut rows = Vec::with_capacity(points.len());
    for pt in points {
        for c in pt.coords() {
            field.check(c)?;
        }
        let pows = power_table(field, pt.coords(), d);
        rows.push(monos.iter().map(|m| m.eval_with(field, &pows)).collect());
    }
    Ok(Matrix::from_rows(monos.len(), rows))
}

/// `I(Γ)`: the rank of the quintic evaluation matrix.
pub fn independent_conditions(field: &FieldSpec, points: &[ProjPoint]) -> Result<usize> {
    Ok(linalg::rank(field, &evaluation_matrix(field, points)?))
}

fn report(field: &FieldSpec, points: &[ProjPoint], synthetic: bool) -> Result<DefectReport> {
    let i = independent_conditions(field, points)?;
    let defect = points.len() - i;
    Ok(DefectReport {
        node_count: points.len(),
        independent_conditions: i,
        defect,
        q_factorial: defect == 0,
        field: field.clone(),
        caveat: Caveat::for_field(field),
        synthetic,
    })
}

/// Defect of the double solid branched along a verified nodal sextic.
pub fn defect_of(record: &NodalSurfaceRecord) -> Result<DefectReport> {
    record.require_nodal()?;
    report(record.ambient_field(), &record.nodes, false)
}

/// Defect of a raw point set, with no surface behind it.
pub fn defect_of_points(field: &FieldSpec, points: &[ProjPoint]) -> Result<DefectReport> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    report(field, &pts, true)
}

/// Defects of one surface reduced modulo several primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPrimeDefect {
    pub reports: Vec<DefectReport>,
    /// The smallest defect seen, the best available upper bound.
    pub defect: usize,
    pub agree: bool,
}

pub fn combine_primes(reports: Vec<DefectReport>) -> Option<MultiPrimeDefect> {
    let defect = reports.iter().map(|r| r.defect).min()?;
    let agree = reports.iter().all(|r| r.defect == defect);
    Some(MultiPrimeDefect {
        reports,
        defect,
        agree,
    })
}

/// Whether some quintic through `gamma` misses `q`, i.e. `q` imposes an
/// independent condition.
pub fn separates(field: &FieldSpec, gamma: &[ProjPoint], q: &ProjPoint) -> Result<bool> {
    if gamma.contains(q) {
        return Err(Error::DuplicatePoints);
    }
    let mut m = evaluation_matrix(field, gamma)?;
    let base = linalg::rank(field, &m);
    m.push_row(
        evaluation_matrix(field, core::slice::from_ref(q))?
            .row(0)
            .to_vec(),
    );
    Ok(linalg::rank(field, &m) == base + 1)
}

/// A subset of the points lying on a curve of degree `k` with more than
/// `5k` points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PositionViolation {
    /// At least six points on a line.
    Collinear { line: Line, points: Vec<ProjPoint> },
    /// At least eleven coplanar points on one conic.
    Conic { plane: Plane, points: Vec<ProjPoint> },
}

impl PositionViolation {
    pub fn degree(&self) -> usize {
        match self {
            PositionViolation::Collinear { .. } => 1,
            PositionViolation::Conic { .. } => 2,
        }
    }

    pub fn points(&self) -> &[ProjPoint] {
        match self {
            PositionViolation::Collinear { points, .. } | PositionViolation::Conic { points, .. } => points,
        }
    }
}

/// Checks that no `5k + 1` points lie on a curve of degree `k ≤ k_max`.
/// Each violating line or conic is reported once with all of its points.
pub fn sextic_node_position(
    field: &FieldSpec,
    gamma: &[ProjPoint],
    k_max: usize,
) -> Result<Vec<PositionViolation>> {
    if !(1..=2).contains(&k_max) {
        return Err(Error::KOutOfRange(k_max));
    }
    let mut pts = gamma.to_vec();
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    let mut seen_lines = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let line = line_through(field, &pts[i], &pts[j])?;
            if seen_lines.contains(&line) {
                continue;
            }
            let on: Vec<ProjPoint> = pts.iter().filter(|p| line.contains(field, p)).cloned().collect();
            seen_lines.insert(line.clone());
            if on.len() >= 6 {
                out.push(PositionViolation::Collinear { line, points: on });
            }
        }
    }
    if k_max == 2 && pts.len() >= 11 {
        out.extend(conic_violations(field, &pts)?);
    }
    out.sort();
    Ok(out)
}

fn conic_violations(field: &FieldSpec, pts: &[ProjPoint]) -> Result<Vec<PositionViolation>> {
    let mut planes = BTreeSet::new();
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Ok(plane) = Plane::through(field, [&pts[a], &pts[b], &pts[c]]) {
                    planes.insert(plane);
                }
            }
        }
    }
    let mut out = Vec::new();
    for plane in planes {
        let on: Vec<ProjPoint> = pts.iter().filter(|p| plane.contains(field, p)).cloned().collect();
        if on.len() < 11 {
            continue;
        }
        let mut conics: BTreeSet<Vec<ProjPoint>> = BTreeSet::new();
        for subset in conics_through_five(field, &plane, &on) {
            if subset.len() >= 11 {
                conics.insert(subset);
            }
        }
        for points in conics {
            out.push(PositionViolation::Conic {
                plane: plane.clone(),
                points,
            });
        }
    }
    Ok(out)
}

/// Plane coordinates: drop the coordinate the plane equation solves for.
fn to_plane_coords(field: &FieldSpec, plane: &Plane, p: &ProjPoint) -> [Scalar; 3] {
    let drop = plane
        .coeffs()
        .iter()
        .position(|c| !field.is_zero(c))
        .expect("nonzero plane");
    let mut it = (0..4).filter(|&i| i != drop).map(|i| p.coords()[i].clone());
    core::array::from_fn(|_| it.next().expect("three coordinates"))
}

fn conic_row(field: &FieldSpec, c: &[Scalar; 3]) -> Vec<Scalar> {
    monomials_of_degree::<3>(2)
        .iter()
        .map(|m| m.eval_with(field, &power_table(field, c, 2)))
        .collect()
}

/// For every 5 points spanning a unique conic, the set of all points on
/// that conic.
fn conics_through_five(field: &FieldSpec, plane: &Plane, on: &[ProjPoint]) -> Vec<Vec<ProjPoint>> {
    let rows: Vec<Vec<Scalar>> = on
        .iter()
        .map(|p| conic_row(field, &to_plane_coords(field, plane, p)))
        .collect();
    let mut out = Vec::new();
    let n = on.len();
    let mut idx = [0usize; 5];
    fn next(idx: &mut [usize; 5], n: usize) -> bool {
        for i in (0..5).rev() {
            if idx[i] < n - 5 + i {
                idx[i] += 1;
                for j in i + 1..5 {
                    idx[j] = idx[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    for (i, v) in idx.iter_mut().enumerate() {
        *v = i;
    }
    loop {
        let m = Matrix::from_rows(6, idx.iter().map(|&i| rows[i].clone()).collect());
        let kernel = linalg::nullspace(field, &m);
        if kernel.len() == 1 {
            let conic = &kernel[0];
            let members: Vec<ProjPoint> = (0..n)
                .filter(|&i| {
                    let v = rows[i]
                        .iter()
                        .zip(conic)
                        .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)));
                    field.is_zero(&v)
                })
                .map(|i| on[i].clone())
                .collect();
            out.push(members);
        }
        if !next(&mut idx, n) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::enumerate_points;
    use crate::geometry::EnumerationGuard;
    use alloc::vec;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn random_points(f: &FieldSpec, n: usize, seed: u64) -> Vec<ProjPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<ProjPoint> = Vec::new();
        while out.len() < n {
            let c: [Scalar; 4] = core::array::from_fn(|_| f.sample_uniform(&mut rng).unwrap());
            if let Ok(p) = ProjPoint::new(f, c) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn points_on_line(f: &FieldSpec, n: i64) -> Vec<ProjPoint> {
        (0..n)
            .map(|t| ProjPoint::from_ints(f, [1, t, 2 * t, 3]).unwrap())
            .collect()
    }

    #[test]
    fn evaluation_matrix_shape_and_order() {
        let f = fp(7);
        let e = evaluation_matrix(&f, &[ProjPoint::from_ints(&f, [1, 0, 0, 0]).unwrap()]).unwrap();
        assert_eq!((e.rows(), e.cols()), (1, QUINTIC_DIM));
        assert!(f.is_zero(&f.sub(e.get(0, 0), &f.one())));
        assert!((1..QUINTIC_DIM).all(|j| f.is_zero(e.get(0, j))));
        let empty = evaluation_matrix(&f, &[]).unwrap();
        assert_eq!((empty.rows(), linalg::rank(&f, &empty)), (0, 0));
    }

    #[test]
    fn evaluation_matrix_rejects_foreign_points() {
        let f49 = FieldSpec::finite(7, 2).unwrap();
        let t = f49.generator().unwrap();
        let p = ProjPoint::new(&f49, [f49.one(), t, f49.zero(), f49.zero()]).unwrap();
        assert_eq!(evaluation_matrix(&fp(7), &[p]).err(), Some(Error::FieldMismatch));
    }

    #[test]
    fn collinear_points_and_quintics() {
        let f = fp(31);
        let six = points_on_line(&f, 6);
        assert_eq!(independent_conditions(&f, &six).unwrap(), 6);
        let seven = points_on_line(&f, 7);
        let r = defect_of_points(&f, &seven).unwrap();
        assert_eq!((r.independent_conditions, r.defect, r.synthetic), (6, 1, true));
        assert_eq!(r.caveat, Caveat::CharPLowerBound);
        assert_eq!(separates(&f, &six[..5], &six[5]), Ok(true));
        assert_eq!(separates(&f, &six, &seven[6]), Ok(false));
        assert_eq!(separates(&f, &six, &six[0]), Err(Error::DuplicatePoints));
    }

    #[test]
    fn thirteen_generic_points_are_separated() {
        let f = fp(101);
        for seed in 0..10 {
            let pts = random_points(&f, 14, seed);
            assert_eq!(separates(&f, &pts[..13], &pts[13]), Ok(true));
        }
    }

    #[test]
    fn many_points_force_a_defect() {
        let f = fp(101);
        let pts = random_points(&f, 60, 3);
        let r = defect_of_points(&f, &pts).unwrap();
        assert_eq!(r.independent_conditions, QUINTIC_DIM);
        assert_eq!(r.defect, 4);
    }

    #[test]
    fn rational_defect_is_exact() {
        let q = FieldSpec::Rational;
        let pts: Vec<ProjPoint> = (0..7)
            .map(|t| ProjPoint::from_ints(&q, [1, t, t * t, 5]).unwrap())
            .collect();
        let r = defect_of_points(&q, &pts).unwrap();
        assert_eq!(r.caveat, Caveat::ExactRational);
        assert_eq!(r.defect, 0);
    }

    #[test]
    fn combining_primes_takes_the_minimum() {
        let f = fp(31);
        let a = defect_of_points(&f, &points_on_line(&f, 7)).unwrap();
        let b = defect_of_points(&f, &points_on_line(&f, 6)).unwrap();
        let m = combine_primes(vec![a.clone(), b]).unwrap();
        assert_eq!((m.defect, m.agree), (0, false));
        let same = combine_primes(vec![a.clone(), a]).unwrap();
        assert_eq!((same.defect, same.agree), (1, true));
        assert!(combine_primes(Vec::new()).is_none());
    }

    #[test]
    fn position_on_lines() {
        let f = fp(31);
        let mut pts = points_on_line(&f, 6);
        pts.extend(random_points(&f, 5, 9));
        let v = sextic_node_position(&f, &pts, 1).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].degree(), v[0].points().len()), (1, 6));
        let mut five = points_on_line(&f, 5);
        five.extend(random_points(&f, 8, 10));
        assert!(sextic_node_position(&f, &five, 2).unwrap().is_empty());
        assert_eq!(sextic_node_position(&f, &five, 3), Err(Error::KOutOfRange(3)));
    }

    #[test]
    fn eleven_points_on_a_conic() {
        // the conic y^2 = xz in the plane w = 0, parametrized by (1 : t : t^2 : 0)
        let f = fp(31);
        let mut pts: Vec<ProjPoint> = (0..11)
            .map(|t| ProjPoint::from_ints(&f, [1, t, t * t, 0]).unwrap())
            .collect();
        let v = sextic_node_position(&f, &pts, 2).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].degree(), v[0].points().len()), (2, 11));
        pts.pop();
        assert!(sextic_node_position(&f, &pts, 2).unwrap().is_empty());
    }

    #[test]
    fn defect_is_invariant_under_coordinate_change() {
        let f = fp(31);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut pts = points_on_line(&f, 8);
        pts.extend(random_points(&f, 20, 5));
        let m = loop {
            let m = Matrix::new(
                4,
                4,
                (0..16).map(|_| f.sample_uniform(&mut rng).unwrap()).collect(),
            );
            if linalg::rank(&f, &m) == 4 {
                break m;
            }
        };
        let moved: Vec<ProjPoint> = pts.iter().map(|p| p.transform(&f, &m).unwrap()).collect();
        assert_eq!(
            defect_of_points(&f, &pts).unwrap().defect,
            defect_of_points(&f, &moved).unwrap().defect
        );
    }

    #[test]
    fn separation_matches_defect_growth() {
        let f = fp(7);
        let mut all: Vec<ProjPoint> = enumerate_points(&f, &EnumerationGuard::default())
            .unwrap()
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        all.shuffle(&mut rng);
        let mut gamma: Vec<ProjPoint> = Vec::new();
        for q in all.into_iter().take(70) {
            let before = defect_of_points(&f, &gamma).unwrap().defect;
            let sep = separates(&f, &gamma, &q).unwrap();
            gamma.push(q);
            let after = defect_of_points(&f, &gamma).unwrap().defect;
            assert_eq!(after, if sep { before } else { before + 1 });
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn defect_bounds(seed in any::<u64>(), n in 0usize..80) {
            let f = fp(13);
            let r = defect_of_points(&f, &random_points(&f, n, seed)).unwrap();
            prop_assert!(r.independent_conditions <= n.min(QUINTIC_DIM));
            prop_assert!(r.defect >= n.saturating_sub(QUINTIC_DIM));
            prop_assert_eq!(r.q_factorial, r.defect == 0);
        }
    }
}
