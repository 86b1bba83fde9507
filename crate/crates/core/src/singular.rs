//! Singular points of a surface `{F = 0}` in P³ over finite fields, the
//! node test, and the verified record consumed by the later stages.
//!
//! The search never visits points one by one. Each chart `x_c = 1` is cut
//! into lines parallel to the `w` axis; on such a line the four partials
//! become univariate polynomials in `w`, and the singular points on it are
//! the roots of their gcd. By Euler's relation `Σ x_i ∂F/∂x_i = d·F`, the
//! common zeros of the partials lie on the surface whenever `p ∤ d`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::fields::{Field, FieldSpec, FiniteField, Fq, Scalar};
use crate::geometry::{EnumerationGuard, ExtensionLevel, ExtensionSearch, ExtensionTower, ProjPoint};
use crate::linalg;
use crate::poly::HomoPoly;
use crate::upoly;
use crate::{Error, Result};

/// A sextic together with its verified singular locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalSurfaceRecord {
    /// The sextic over the field it was given in.
    pub surface: HomoPoly,
    /// The same sextic with coefficients in the ambient field of the
    /// extension tower; node coordinates live in this field.
    pub ambient_surface: HomoPoly,
    pub extension_depth: usize,
    /// Singular points that passed the node test, sorted.
    pub nodes: Vec<ProjPoint>,
    /// Singular points that failed it, sorted.
    pub non_nodal: Vec<ProjPoint>,
    /// `N_j`: singular points defined over the `j`-th extension.
    pub counts: Vec<u64>,
    pub stabilized: bool,
    /// Galois orbit size ↦ number of orbits.
    pub orbit_sizes: BTreeMap<usize, u64>,
    /// True when the node list was supplied by the caller rather than
    /// found by enumeration.
    pub supplied: bool,
}

impl NodalSurfaceRecord {
    pub fn field(&self) -> &FieldSpec {
        self.surface.field()
    }

    pub fn ambient_field(&self) -> &FieldSpec {
        self.ambient_surface.field()
    }

    pub fn is_nodal(&self) -> bool {
        self.non_nodal.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Fails with `NonNodalSurface` unless every singular point is a node.
    pub fn require_nodal(&self) -> Result<()> {
        if self.is_nodal() {
            Ok(())
        } else {
            Err(Error::NonNodalSurface(self.non_nodal.len()))
        }
    }
}

fn check_node_characteristic(field: &FieldSpec) -> Result<()> {
    let p = field.characteristic();
    if matches!(p, 2 | 3 | 5) {
        return Err(Error::BadCharacteristic(p));
    }
    Ok(())
}

/// Whether the singular point `pt` is a node, i.e. the Hessian has rank
/// exactly 3. Rank 4 is impossible at a singular point since the Hessian
/// annihilates `pt`.
pub fn is_node(f: &HomoPoly, pt: &ProjPoint) -> Result<bool> {
    check_node_characteristic(f.field())?;
    let grad = f.gradient_at(pt.coords())?;
    if grad.iter().any(|g| !g.is_zero()) {
        return Err(Error::NotSingular);
    }
    let h = f.hessian_at(pt.coords())?;
    Ok(linalg::rank(f.field(), &h) == 3)
}

/// A partial derivative as a flat term list over a finite field.
struct FqPoly {
    terms: Vec<([u8; 4], Fq)>,
}

impl FqPoly {
    fn from_homo(p: &HomoPoly) -> Self {
        FqPoly {
            terms: p
                .terms()
                .map(|(m, c)| (m.0, c.as_fq().expect("finite coefficient")))
                .collect(),
        }
    }
}

/// `Σ coeffs[j] w^j` where each coefficient is itself a dense polynomial
/// in the free middle coordinate, `dense[e][j]` multiplying `z^e w^j`.
type Slice = Vec<Vec<Fq>>;

/// Singular points of `{F = 0}` over a finite field, one chart at a time.
struct FiberSearch<'a> {
    field: &'a FiniteField,
    partials: Vec<FqPoly>,
    degree: usize,
}

impl<'a> FiberSearch<'a> {
    fn new(field: &'a FiniteField, f: &HomoPoly) -> Self {
        let partials = f.gradient().iter().map(FqPoly::from_homo).collect();
        FiberSearch {
            field,
            partials,
            degree: f.degree().saturating_sub(1),
        }
    }

    /// Specializes every partial at `x_0..x_(c) = prefix` (where `prefix`
    /// covers coordinates `0..=pivot`), keeping `z` (index 2) and `w`.
    fn slice(&self, prefix: &[Fq]) -> Vec<Slice> {
        let f = self.field;
        let d = self.degree;
        let pows: Vec<Vec<Fq>> = prefix
            .iter()
            .map(|v| {
                let mut row = vec![f.one(); d + 1];
                for e in 1..=d {
                    row[e] = f.mul(&row[e - 1], v);
                }
                row
            })
            .collect();
        self.partials
            .iter()
            .map(|p| {
                let mut dense = vec![vec![Fq::ZERO; d + 1]; d + 1];
                'terms: for (e, c) in &p.terms {
                    let mut v = *c;
                    for (i, row) in pows.iter().enumerate() {
                        let ei = e[i] as usize;
                        if ei > 0 {
                            if row[1].is_zero() {
                                continue 'terms;
                            }
                            v = f.mul(&v, &row[ei]);
                        }
                    }
                    let (ez, ew) = (e[2] as usize, e[3] as usize);
                    dense[ez][ew] = f.add(&dense[ez][ew], &v);
                }
                dense
            })
            .collect()
    }

    /// The univariate polynomials in `w` after setting `z`.
    fn fiber(&self, slices: &[Slice], z: &Fq) -> Vec<Vec<Fq>> {
        let f = self.field;
        slices
            .iter()
            .map(|dense| {
                let coeffs = (0..=self.degree)
                    .map(|j| {
                        dense
                            .iter()
                            .rev()
                            .fold(Fq::ZERO, |acc, row| f.add(&f.mul(&acc, z), &row[j]))
                    })
                    .collect();
                upoly::trim(f, coeffs)
            })
            .collect()
    }

    /// Values of `w` at which all four polynomials vanish, sorted.
    fn common_roots(&self, polys: &[Vec<Fq>]) -> Vec<Fq> {
        let f = self.field;
        let mut g: Vec<Fq> = Vec::new();
        for p in polys {
            g = upoly::gcd(f, &g, p);
            if upoly::degree(&g) == Some(0) {
                return Vec::new();
            }
        }
        if g.is_empty() {
            return f.elements().collect();
        }
        upoly::roots(f, &g).into_iter().map(|(r, _)| r).collect()
    }

    /// Chart 0 restricted to `x = 1, y = y`: points `(1, y, z, w)`.
    fn chart0_row(&self, y: Fq) -> Vec<[Fq; 4]> {
        let f = self.field;
        let one = f.one();
        let slices = self.slice(&[one, y]);
        let mut out = Vec::new();
        for z in f.elements() {
            let polys = self.fiber(&slices, &z);
            for w in self.common_roots(&polys) {
                out.push([one, y, z, w]);
            }
        }
        out
    }

    /// Charts 1 to 3, which together hold `q² + q + 1` points.
    fn charts_rest(&self) -> Vec<[Fq; 4]> {
        let f = self.field;
        let (zero, one) = (Fq::ZERO, f.one());
        let mut out = Vec::new();
        let slices = self.slice(&[zero, one]);
        for z in f.elements() {
            for w in self.common_roots(&self.fiber(&slices, &z)) {
                out.push([zero, one, z, w]);
            }
        }
        let slices = self.slice(&[zero, zero]);
        for w in self.common_roots(&self.fiber(&slices, &one)) {
            out.push([zero, zero, one, w]);
        }
        if self.common_roots(&self.fiber(&slices, &zero)).contains(&one) {
            out.push([zero, zero, zero, one]);
        }
        out
    }

    fn run(&self) -> Vec<[Fq; 4]> {
        let f = self.field;
        #[cfg(feature = "parallel")]
        let rows: Vec<Vec<[Fq; 4]>> = {
            use rayon::prelude::*;
            (0..f.order() as u64)
                .into_par_iter()
                .map(|n| self.chart0_row(f.element(n as u128)))
                .collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<Vec<[Fq; 4]>> = f.elements().map(|y| self.chart0_row(y)).collect();
        let mut out: Vec<[Fq; 4]> = rows.into_iter().flatten().collect();
        out.extend(self.charts_rest());
        out
    }
}

fn embed_surface(f: &HomoPoly, target: &FieldSpec, level: &ExtensionLevel) -> HomoPoly {
    f.map_coeffs(target, |c| {
        Scalar::Finite(level.from_base.map(&c.as_fq().expect("finite coefficient")))
    })
}

/// Points of P³ over the `j`-th extension (`j ≤ m`) at which all four
/// partials of `f` vanish, deduplicated across levels and given in
/// ambient coordinates.
pub fn find_singular_points(
    f: &HomoPoly,
    m: usize,
    guard: &EnumerationGuard,
) -> Result<(ExtensionTower, ExtensionSearch)> {
    f.field().require_finite()?;
    let tower = ExtensionTower::new(f.field(), m, guard)?;
    let search = tower.search(|level| {
        let lf = level.field.finite_field().expect("finite level");
        let g = embed_surface(f, &level.field, level);
        Ok(FiberSearch::new(lf, &g)
            .run()
            .into_iter()
            .map(|c| ProjPoint::from_normalized(c.map(Scalar::Finite)))
            .collect())
    })?;
    Ok((tower, search))
}

/// Finds the singular locus over depth-`m` extensions and certifies each
/// point as a node or not.
pub fn verify_nodal(f: &HomoPoly, m: usize, guard: &EnumerationGuard) -> Result<NodalSurfaceRecord> {
    if f.degree() != 6 {
        return Err(Error::WrongDegree {
            expected: 6,
            found: f.degree() as u32,
        });
    }
    check_node_characteristic(f.field())?;
    let (tower, search) = find_singular_points(f, m, guard)?;
    let ambient = tower.ambient().clone();
    let base_to_ambient = tower.base_to_ambient();
    let ambient_surface = f.map_coeffs(&ambient, |c| {
        Scalar::Finite(base_to_ambient.map(&c.as_fq().expect("finite coefficient")))
    });
    let mut nodes = Vec::new();
    let mut non_nodal = Vec::new();
    for (pt, _) in search.points {
        if is_node(&ambient_surface, &pt)? {
            nodes.push(pt);
        } else {
            non_nodal.push(pt);
        }
    }
    Ok(NodalSurfaceRecord {
        surface: f.clone(),
        ambient_surface,
        extension_depth: m,
        nodes,
        non_nodal,
        counts: search.counts,
        stabilized: search.stabilized,
        orbit_sizes: search.orbit_sizes,
        supplied: false,
    })
}

/// Builds a record from a caller-supplied list of singular points, for
/// fields where enumeration is impossible (such as Q). Every point must
/// be singular; completeness of the list is the caller's claim.
pub fn record_from_points(f: &HomoPoly, points: &[ProjPoint]) -> Result<NodalSurfaceRecord> {
    if f.degree() != 6 {
        return Err(Error::WrongDegree {
            expected: 6,
            found: f.degree() as u32,
        });
    }
    let mut pts: Vec<ProjPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut nodes = Vec::new();
    let mut non_nodal = Vec::new();
    for pt in pts {
        for c in pt.coords() {
            f.field().check(c)?;
        }
        if is_node(f, &pt)? {
            nodes.push(pt);
        } else {
            non_nodal.push(pt);
        }
    }
    let total = (nodes.len() + non_nodal.len()) as u64;
    Ok(NodalSurfaceRecord {
        surface: f.clone(),
        ambient_surface: f.clone(),
        extension_depth: 1,
        nodes,
        non_nodal,
        counts: vec![total],
        stabilized: false,
        orbit_sizes: if total > 0 {
            BTreeMap::from([(1, total)])
        } else {
            BTreeMap::new()
        },
        supplied: true,
    })
}
