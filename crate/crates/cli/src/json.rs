//! JSON encoding of reports. Objects are `serde_json::Map`, which keeps
//! keys sorted, and no value is ever a float.

use serde_json::{json, Map, Value};
use sextic_core::census::{AuditViolation, CensusReport, EllipticModel, SuperRigidVerdict};
use sextic_core::defect::{DefectReport, PositionViolation};
use sextic_core::lines::{ConstructionBProbe, LineRecord};
use sextic_core::singular::NodalSurfaceRecord;
use sextic_core::{Error, FieldSpec, Line, Plane, ProjPoint, Scalar};

/// A coefficient vector over the prime field for finite fields, the
/// canonical text `a/b` over Q.
pub fn scalar(field: &FieldSpec, a: &Scalar) -> Value {
    match (field.finite_field(), a) {
        (Some(ff), Scalar::Finite(x)) => json!(x.coeffs(ff.degree())),
        _ => Value::String(field.format_scalar(a)),
    }
}

pub fn point(field: &FieldSpec, p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(|c| scalar(field, c)).collect())
}

pub fn points(field: &FieldSpec, ps: &[ProjPoint]) -> Value {
    Value::Array(ps.iter().map(|p| point(field, p)).collect())
}

pub fn line(field: &FieldSpec, l: &Line) -> Value {
    json!({
        "pluecker": l.pluecker().iter().map(|c| scalar(field, c)).collect::<Vec<_>>(),
        "points": points(field, l.points()),
    })
}

fn plane(field: &FieldSpec, h: &Plane) -> Value {
    Value::Array(h.coeffs().iter().map(|c| scalar(field, c)).collect())
}

/// The field name, and for extensions the modulus that coefficient
/// vectors refer to, lowest degree first.
pub fn field(f: &FieldSpec) -> Value {
    let mut m = Map::new();
    m.insert("spec".into(), json!(f.to_string()));
    match f.finite_field() {
        Some(ff) => {
            m.insert("characteristic".into(), json!(ff.p()));
            m.insert("degree".into(), json!(ff.degree()));
            if ff.degree() > 1 {
                m.insert("modulus".into(), json!(ff.modulus()));
            }
        }
        None => {
            m.insert("characteristic".into(), json!(0));
        }
    }
    Value::Object(m)
}

pub fn surface(r: &NodalSurfaceRecord) -> Value {
    let amb = r.ambient_field();
    let orbits: Map<String, Value> = r
        .orbit_sizes
        .iter()
        .map(|(size, n)| (size.to_string(), json!(n)))
        .collect();
    json!({
        "ambient_field": field(amb),
        "counts": r.counts,
        "extension_depth": r.extension_depth,
        "node_count": r.node_count(),
        "nodes": points(amb, &r.nodes),
        "non_nodal": points(amb, &r.non_nodal),
        "orbit_sizes": orbits,
        "stabilized": r.stabilized,
        "supplied": r.supplied,
    })
}

pub fn defect(d: &DefectReport) -> Value {
    json!({
        "caveat": d.caveat.as_str(),
        "defect": d.defect,
        "field": d.field.to_string(),
        "independent_conditions": d.independent_conditions,
        "node_count": d.node_count,
        "q_factorial": d.q_factorial,
        "synthetic": d.synthetic,
    })
}

pub fn position_violation(f: &FieldSpec, v: &PositionViolation) -> Value {
    let (kind, carrier) = match v {
        PositionViolation::Collinear { line: l, .. } => ("collinear", line(f, l)),
        PositionViolation::Conic { plane: h, .. } => ("conic", plane(f, h)),
    };
    json!({
        "carrier": carrier,
        "degree": v.degree(),
        "kind": kind,
        "points": points(f, v.points()),
    })
}

pub fn audit(v: &[AuditViolation]) -> Value {
    Value::Array(
        v.iter()
            .map(|a| match a {
                AuditViolation::FewNodesDependent { nodes, defect } => {
                    json!({"clause": "few-nodes-independent", "defect": defect, "nodes": nodes})
                }
                AuditViolation::ManyNodesIndependent { nodes } => {
                    json!({"clause": "many-nodes-dependent", "nodes": nodes})
                }
            })
            .collect(),
    )
}

pub fn line_record(f: &FieldSpec, r: &LineRecord) -> Value {
    json!({
        "contained_in_s": r.contained_in_s,
        "line": line(f, &r.line),
        "node_count": r.node_count(),
        "nodes_on_line": points(f, &r.nodes_on_line),
        "within_incidence_bound": r.within_incidence_bound(),
    })
}

fn probe(f: &FieldSpec, p: &ConstructionBProbe) -> Value {
    json!({
        "fiber_elliptic": p.fiber_elliptic,
        "fiber_form": p.fiber_form.to_string(),
        "multiplicity_at_q_p": p.multiplicity_at_q_p,
        "plane": plane(f, &p.plane),
        "probe_line": line(f, &p.probe_line),
        "q_p": point(f, &p.q_p),
        "residual_quartic": p.residual_quartic.as_ref().map(|q| q.to_string()),
        "residual_quintic": p.residual_quintic.to_string(),
        "sample": point(f, &p.sample),
    })
}

fn model(f: &FieldSpec, m: &EllipticModel) -> Value {
    match m {
        EllipticModel::FromNode { node, rule } => json!({
            "descriptor": "blow up the node and project from its image",
            "kind": m.kind(),
            "node": point(f, node),
            "rule": rule,
        }),
        EllipticModel::FromLine {
            line: l,
            nodes,
            probes,
            rule,
        } => json!({
            "descriptor": "pencil of planes through the line",
            "kind": m.kind(),
            "line": line(f, l),
            "nodes": points(f, nodes),
            "probes": probes.iter().map(|p| probe(f, p)).collect::<Vec<_>>(),
            "rule": rule,
        }),
    }
}

fn super_rigid(v: &SuperRigidVerdict) -> Value {
    json!({
        "caveat": v.caveat.as_str(),
        "rule": v.rule,
        "state": v.state.as_str(),
    })
}

pub fn census(r: &CensusReport) -> Value {
    let f = r.surface.ambient_field();
    json!({
        "audit": audit(&r.audit()),
        "classification_complete": r.classification_complete,
        "defect": defect(&r.defect),
        "elliptic_models": r.elliptic_models.iter().map(|m| model(f, m)).collect::<Vec<_>>(),
        "fano_lines": r.fano_lines.iter().map(|l| line(f, l)).collect::<Vec<_>>(),
        "fano_model_exists": r.fano_model_exists,
        "fibration_count": r.fibration_count,
        "lines": r.lines.iter().map(|l| line_record(f, l)).collect::<Vec<_>>(),
        "no_conic_bundle": r.no_conic_bundle,
        "non_rational": r.non_rational,
        "rules": r.rules,
        "super_rigid": super_rigid(&r.super_rigid),
        "surface": surface(&r.surface),
    })
}

/// Lowercase kebab-case name of the error variant.
pub fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    let name: String = debug.chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

pub fn error_object(kind: &str, message: &str, position: Option<usize>) -> Value {
    json!({
        "error": {
            "kind": kind,
            "message": message,
            "position": position,
        }
    })
}
