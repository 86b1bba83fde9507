//! Lines through pairs of singular points, their incidence with the
//! surface, and the pointwise probe of the elliptic fibration attached to
//! a line through four nodes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;

use crate::fields::{Field, FieldSpec, Scalar};
use crate::geometry::{line_through, Line, Plane, ProjPoint};
use crate::linalg::{self, Matrix};
use crate::poly::{BinaryForm, BinaryRoot, HomoPoly};
use crate::singular::NodalSurfaceRecord;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRecord {
    pub line: Line,
    pub contained_in_s: bool,
    pub nodes_on_line: Vec<ProjPoint>,
}

impl LineRecord {
    pub fn node_count(&self) -> usize {
        self.nodes_on_line.len()
    }

    /// A line meets a sextic it is not contained in with total
    /// multiplicity 6, and each node absorbs 2; on the surface the bound
    /// comes from a general plane section through the line.
    pub fn within_incidence_bound(&self) -> bool {
        self.node_count() <= if self.contained_in_s { 5 } else { 3 }
    }
}

/// Whether `F` vanishes identically on `line`.
pub fn line_in_surface(f: &HomoPoly, line: &Line) -> Result<bool> {
    let [a, b] = line.points();
    Ok(f.restrict_to_line(a, b)?.is_zero())
}

/// One record per distinct line through two of `points`, sorted by line.
pub fn lines_through_points(f: &HomoPoly, points: &[ProjPoint]) -> Result<Vec<LineRecord>> {
    let field = f.field();
    let mut by_line: BTreeMap<Line, Vec<ProjPoint>> = BTreeMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let line = line_through(field, &points[i], &points[j])?;
            let on = by_line.entry(line).or_default();
            for p in [&points[i], &points[j]] {
                if !on.contains(p) {
                    on.push(p.clone());
                }
            }
        }
    }
    by_line
        .into_iter()
        .map(|(line, mut nodes_on_line)| {
            nodes_on_line.sort();
            Ok(LineRecord {
                contained_in_s: line_in_surface(f, &line)?,
                line,
                nodes_on_line,
            })
        })
        .collect()
}

/// Lines through pairs of nodes of a verified nodal surface.
pub fn classify_lines(record: &NodalSurfaceRecord) -> Result<Vec<LineRecord>> {
    record.require_nodal()?;
    lines_through_points(&record.ambient_surface, &record.nodes)
}

/// Candidate parameters `(s : t)` on a line, in a fixed order: all of the
/// field for finite fields, small integers for Q, then the point `(0 : 1)`.
fn line_parameters(field: &FieldSpec, wanted: usize) -> Vec<(Scalar, Scalar)> {
    let mut out: Vec<(Scalar, Scalar)> = match field.finite_field() {
        Some(ff) => ff.elements().map(|a| (field.one(), field.from_fq(a))).collect(),
        None => (0..(4 * wanted as i64 + 16))
            .map(|a| (field.one(), field.from_i64(a)))
            .collect(),
    };
    out.push((field.zero(), field.one()));
    out
}

/// Whether the tangent planes of `S` at `samples` smooth points of the
/// line `L ⊂ S` all agree, i.e. the gradients are pairwise proportional.
pub fn tangent_planes_coincide(f: &HomoPoly, line: &Line, samples: usize) -> Result<bool> {
    let field = f.field();
    if !line_in_surface(f, line)? {
        return Err(Error::NotDivisible);
    }
    let mut grads: Vec<Vec<Scalar>> = Vec::new();
    for (s, t) in line_parameters(field, samples) {
        if grads.len() == samples {
            break;
        }
        let p = line.point_at(field, &s, &t)?;
        let g = f.gradient_at(p.coords())?;
        if g.iter().any(|c| !field.is_zero(c)) {
            grads.push(g.to_vec());
        }
    }
    if grads.len() < samples {
        return Err(Error::InsufficientSmoothPoints {
            needed: samples,
            found: grads.len(),
        });
    }
    Ok(linalg::rank(field, &Matrix::from_rows(4, grads)) <= 1)
}

/// The plane `λ·ℓ₀ + μ·ℓ₁ = 0` of the pencil through `line`, where `ℓ₀, ℓ₁`
/// are the line's equations.
pub fn plane_of_pencil(field: &FieldSpec, line: &Line, lambda: &Scalar, mu: &Scalar) -> Result<Plane> {
    let [e0, e1] = line.equations(field);
    let coeffs = core::array::from_fn(|i| field.add(&field.mul(lambda, &e0[i]), &field.mul(mu, &e1[i])));
    Plane::new(field, coeffs)
}

/// A point of `plane` off `line`, chosen canonically.
fn point_off_line(field: &FieldSpec, plane: &Plane, line: &Line) -> Result<ProjPoint> {
    let m = Matrix::from_rows(4, alloc::vec![plane.coeffs().to_vec()]);
    for v in linalg::nullspace(field, &m) {
        let p = ProjPoint::new(field, v.try_into().expect("4 entries"))?;
        if !line.contains(field, &p) {
            return Ok(p);
        }
    }
    Err(Error::DegeneratePlane)
}

/// `Q` with `F|_H = ℓ·Q`, where `H` has basis `(a, b, c)` with `a, b` the
/// spanning points of `L` so that `L = {c = 0}` in plane coordinates.
fn residual_quintic(f: &HomoPoly, line: &Line, third: &ProjPoint) -> Result<HomoPoly<3>> {
    let [a, b] = line.points();
    let g = f.restrict_to_plane([a, b, third])?;
    g.divide_by_linear(&HomoPoly::var(f.field(), 2))
}

/// `Q|_L` as a binary form in the line's parameters.
fn quintic_on_line(q: &HomoPoly<3>) -> BinaryForm {
    let field = q.field();
    let images = [
        HomoPoly::var(field, 0),
        HomoPoly::var(field, 1),
        HomoPoly::zero(field, 1),
    ];
    BinaryForm::from_homogeneous(&q.substitute(&images))
}

/// Roots of `Q|_L` for one plane `H ⊃ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualProfile {
    pub plane: Plane,
    pub restriction: BinaryForm,
    /// Roots in the field, as points of `L`, with multiplicity.
    pub roots: Vec<(ProjPoint, usize)>,
    /// `(degree, multiplicity)` of each irreducible factor; the degrees
    /// times multiplicities sum to 5.
    pub factors: Vec<(usize, usize)>,
}

/// Cuts `S` by a plane through `L ⊂ S`, removes `L` and restricts the
/// residual quintic back to `L`.
pub fn residual_profile(f: &HomoPoly, line: &Line, plane: &Plane) -> Result<ResidualProfile> {
    let field = f.field();
    field.require_finite()?;
    if !line.points().iter().all(|p| plane.contains(field, p)) {
        return Err(Error::DegeneratePlane);
    }
    let third = point_off_line(field, plane, line)?;
    let q = residual_quintic(f, line, &third)?;
    let restriction = quintic_on_line(&q);
    let roots = restriction
        .roots()?
        .into_iter()
        .map(|(r, m)| Ok((line.point_at(field, &r.0[0], &r.0[1])?, m)))
        .collect::<Result<Vec<_>>>()?;
    let factors = restriction.factor_profile()?;
    Ok(ResidualProfile {
        plane: plane.clone(),
        restriction,
        roots,
        factors,
    })
}

/// One sample of the map sending `p` to the line `L_p`: the plane `H_p`
/// through `L` and `p` meets `S` in `L` plus a quintic curve `C`, which
/// meets `L` at the four nodes and one further point `q_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionBProbe {
    pub base_line: Line,
    pub sample: ProjPoint,
    pub plane: Plane,
    /// `C` in the plane coordinates of the basis `(a, b, sample)`, where
    /// `a, b` span `L`.
    pub residual_quintic: HomoPoly<3>,
    pub q_p: ProjPoint,
    pub probe_line: Line,
    /// `F|_{L_p}` in the parameters of `probe_line`.
    pub fiber_form: BinaryForm,
    pub multiplicity_at_q_p: usize,
    /// `fiber_form` with the factor at `q_p` removed twice.
    pub residual_quartic: Option<BinaryForm>,
    pub fiber_elliptic: bool,
}

fn root_on_line(field: &FieldSpec, line: &Line, p: &ProjPoint) -> Result<BinaryRoot> {
    let (s, t) = line.parameters_of(field, p).ok_or(Error::PointOnLine)?;
    BinaryRoot::normalize(field, &s, &t).ok_or(Error::ZeroVector)
}

/// Runs the probe at `p` for a line `L ⊂ S` through the four singular
/// points `nodes`.
pub fn construction_b_probe(
    f: &HomoPoly,
    line: &Line,
    nodes: &[ProjPoint],
    p: &ProjPoint,
) -> Result<ConstructionBProbe> {
    let field = f.field();
    let plane = Plane::spanned_by(field, line, p)?;
    let c = residual_quintic(f, line, p)?;
    let mut rest = quintic_on_line(&c);
    for n in nodes {
        rest = rest.divide_by_root(&root_on_line(field, line, n)?)?;
    }
    let q_root = rest.linear_root().ok_or(Error::NoSmoothResidualPoint)?;
    let q_p = line.point_at(field, &q_root.0[0], &q_root.0[1])?;
    if nodes.contains(&q_p) {
        return Err(Error::NoSmoothResidualPoint);
    }
    let probe_line = line_through(field, &q_p, p)?;
    let [a, b] = probe_line.points();
    let fiber_form = f.restrict_to_line(a, b)?;
    let q_on_probe = root_on_line(field, &probe_line, &q_p)?;
    let multiplicity_at_q_p = fiber_form.multiplicity_at(&q_on_probe).unwrap_or(usize::MAX);
    let residual_quartic = if multiplicity_at_q_p == 2 {
        let once = fiber_form.divide_by_root(&q_on_probe)?;
        Some(once.divide_by_root(&q_on_probe)?)
    } else {
        None
    };
    let fiber_elliptic = residual_quartic.as_ref().is_some_and(BinaryForm::is_squarefree);
    Ok(ConstructionBProbe {
        base_line: line.clone(),
        sample: p.clone(),
        plane,
        residual_quintic: c,
        q_p,
        probe_line,
        fiber_form,
        multiplicity_at_q_p,
        residual_quartic,
        fiber_elliptic,
    })
}

/// A uniformly random point of P³ off `line`.
pub fn random_point_off_line<R: Rng + ?Sized>(
    field: &FieldSpec,
    line: &Line,
    rng: &mut R,
) -> Result<ProjPoint> {
    loop {
        let c = (0..4)
            .map(|_| field.sample_uniform(rng))
            .collect::<Result<Vec<_>>>()?;
        if let Ok(p) = ProjPoint::new(field, c.try_into().expect("4 entries")) {
            if !line.contains(field, &p) {
                return Ok(p);
            }
        }
    }
}

/// Probes at random points until `count` of them are non-degenerate,
/// giving up after `max_attempts` samples.
pub fn sample_probes<R: Rng + ?Sized>(
    f: &HomoPoly,
    line: &Line,
    nodes: &[ProjPoint],
    count: usize,
    max_attempts: usize,
    rng: &mut R,
) -> Result<Vec<ConstructionBProbe>> {
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < max_attempts {
        attempts += 1;
        let p = random_point_off_line(f.field(), line, rng)?;
        match construction_b_probe(f, line, nodes, &p) {
            Ok(probe) => out.push(probe),
            Err(Error::NoSmoothResidualPoint | Error::IdenticalPoints) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
