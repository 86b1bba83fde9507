//! The birational classification report for a nodal sextic double solid.
//!
//! Every verdict carries a rule tag naming the classification rule it came
//! from. The rules are stated for characteristic zero; over a finite field
//! they are applied to the reduction and tagged accordingly.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::defect::{defect_of, Caveat, DefectReport};
use crate::fields::{Field, FieldSpec};
use crate::geometry::{EnumerationGuard, Line, ProjPoint};
use crate::lines::{classify_lines, sample_probes, ConstructionBProbe, LineRecord};
use crate::poly::HomoPoly;
use crate::singular::{record_from_points, verify_nodal, NodalSurfaceRecord};
use crate::{Error, Result};

pub const RULE_Q_FACTORIAL: &str = "q-factorial:quintic-conditions";
pub const RULE_SUPER_RIGID: &str = "super-rigid:nodal-q-factorial";
pub const RULE_NOT_Q_FACTORIAL: &str = "super-rigid:defect-positive-over-q";
pub const RULE_BAD_PRIME: &str = "super-rigid:defect-positive-mod-p";
pub const RULE_NON_RATIONAL: &str = "non-rational:super-rigid";
pub const RULE_NO_CONIC_BUNDLE: &str = "no-conic-bundle:super-rigid";
pub const RULE_ELLIPTIC_NODE: &str = "elliptic:projection-from-node";
pub const RULE_ELLIPTIC_LINE: &str = "elliptic:line-through-four-nodes";
pub const RULE_FANO_LINE: &str = "fano:line-through-five-nodes";
pub const RULE_UNCLASSIFIED: &str = "classification:needs-q-factorial";
pub const RULE_CHAR_P: &str = "char-p:rules-need-char-above-5";

/// Node count at or below which the nodes always impose independent
/// conditions on quintics.
pub const INDEPENDENT_NODE_BOUND: usize = 14;
/// Node count from which the quintic conditions are always dependent:
/// `57 > 56 = dim` of the space of quintic forms.
pub const DEPENDENT_NODE_BOUND: usize = 57;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuperRigidity {
    Yes,
    /// Positive defect mod p: the reduction may be special, so nothing
    /// follows for characteristic zero.
    NoVerdict,
    /// Positive defect over Q: the surface is not Q-factorial.
    HypothesisFailed,
}

impl SuperRigidity {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuperRigidity::Yes => "yes",
            SuperRigidity::NoVerdict => "no-verdict",
            SuperRigidity::HypothesisFailed => "hypothesis-failed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperRigidVerdict {
    pub state: SuperRigidity,
    /// The defect caveat the verdict inherits.
    pub caveat: Caveat,
    pub rule: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EllipticModel {
    /// Blow up the node and project from its image point.
    FromNode { node: ProjPoint, rule: &'static str },
    /// The pencil of planes through a line on `S` through exactly four
    /// nodes; `probes` holds pointwise fiber checks when requested.
    FromLine {
        line: Line,
        nodes: Vec<ProjPoint>,
        probes: Vec<ConstructionBProbe>,
        rule: &'static str,
    },
}

impl EllipticModel {
    pub fn kind(&self) -> &'static str {
        match self {
            EllipticModel::FromNode { .. } => "A",
            EllipticModel::FromLine { .. } => "B",
        }
    }

    pub fn rule(&self) -> &'static str {
        match self {
            EllipticModel::FromNode { rule, .. } | EllipticModel::FromLine { rule, .. } => rule,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub extension_depth: usize,
    pub guard: EnumerationGuard,
    /// Use these as the singular locus instead of searching for it.
    pub supplied_nodes: Option<Vec<ProjPoint>>,
    /// Pointwise fiber checks per four-node line.
    pub probes: usize,
    pub seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            extension_depth: 1,
            guard: EnumerationGuard::default(),
            supplied_nodes: None,
            probes: 0,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub surface: NodalSurfaceRecord,
    pub defect: DefectReport,
    pub lines: Vec<LineRecord>,
    pub super_rigid: SuperRigidVerdict,
    pub non_rational: bool,
    pub no_conic_bundle: bool,
    pub elliptic_models: Vec<EllipticModel>,
    pub fibration_count: usize,
    pub fano_model_exists: bool,
    pub fano_lines: Vec<Line>,
    /// False when the surface is not known to be Q-factorial: the model
    /// list is then what the rules produce, not a proven complete list.
    pub classification_complete: bool,
    /// Every rule applied, sorted.
    pub rules: Vec<&'static str>,
}

impl CensusReport {
    pub fn node_count(&self) -> usize {
        self.surface.node_count()
    }

    pub fn audit(&self) -> Vec<AuditViolation> {
        node_count_audit(&self.defect)
    }
}

fn check_field(field: &FieldSpec, supplied: bool) -> Result<()> {
    if field.is_rational() {
        return if supplied {
            Ok(())
        } else {
            Err(Error::FiniteFieldRequired)
        };
    }
    let p = field.characteristic();
    if p <= 5 {
        return Err(Error::CharTooSmall(p));
    }
    Ok(())
}

/// Singular search (or the supplied node list), then defect, then lines,
/// then the classification rules.
pub fn run_census(f: &HomoPoly, options: &CensusOptions) -> Result<CensusReport> {
    check_field(f.field(), options.supplied_nodes.is_some())?;
    let record = match &options.supplied_nodes {
        Some(pts) => record_from_points(f, pts)?,
        None => verify_nodal(f, options.extension_depth, &options.guard)?,
    };
    census_of_record(record, options)
}

/// The census of an already verified singular locus.
pub fn census_of_record(record: NodalSurfaceRecord, options: &CensusOptions) -> Result<CensusReport> {
    check_field(record.field(), record.supplied)?;
    record.require_nodal()?;
    let defect = defect_of(&record)?;
    let lines = classify_lines(&record)?;
    census_from_parts(record, defect, lines, options)
}

fn census_from_parts(
    surface: NodalSurfaceRecord,
    defect: DefectReport,
    lines: Vec<LineRecord>,
    options: &CensusOptions,
) -> Result<CensusReport> {
    let mut rules = alloc::vec![RULE_Q_FACTORIAL];
    if !surface.field().is_rational() {
        rules.push(RULE_CHAR_P);
    }

    let state = match (defect.q_factorial, defect.caveat) {
        (true, _) => SuperRigidity::Yes,
        (false, Caveat::ExactRational) => SuperRigidity::HypothesisFailed,
        (false, Caveat::CharPLowerBound) => SuperRigidity::NoVerdict,
    };
    let rule = match state {
        SuperRigidity::Yes => RULE_SUPER_RIGID,
        SuperRigidity::HypothesisFailed => RULE_NOT_Q_FACTORIAL,
        SuperRigidity::NoVerdict => RULE_BAD_PRIME,
    };
    rules.push(rule);
    let super_rigid = SuperRigidVerdict {
        state,
        caveat: defect.caveat,
        rule,
    };
    let yes = state == SuperRigidity::Yes;
    if yes {
        rules.extend([RULE_NON_RATIONAL, RULE_NO_CONIC_BUNDLE]);
    }

    let mut elliptic_models: Vec<EllipticModel> = surface
        .nodes
        .iter()
        .map(|n| EllipticModel::FromNode {
            node: n.clone(),
            rule: RULE_ELLIPTIC_NODE,
        })
        .collect();
    if !elliptic_models.is_empty() {
        rules.push(RULE_ELLIPTIC_NODE);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut fano_lines = Vec::new();
    for rec in lines.iter().filter(|r| r.contained_in_s) {
        match rec.node_count() {
            4 => {
                let probes = if options.probes > 0 && !surface.ambient_field().is_rational() {
                    sample_probes(
                        &surface.ambient_surface,
                        &rec.line,
                        &rec.nodes_on_line,
                        options.probes,
                        20 * options.probes,
                        &mut rng,
                    )?
                } else {
                    Vec::new()
                };
                elliptic_models.push(EllipticModel::FromLine {
                    line: rec.line.clone(),
                    nodes: rec.nodes_on_line.clone(),
                    probes,
                    rule: RULE_ELLIPTIC_LINE,
                });
                rules.push(RULE_ELLIPTIC_LINE);
            }
            5 => {
                fano_lines.push(rec.line.clone());
                rules.push(RULE_FANO_LINE);
            }
            _ => {}
        }
    }
    let classification_complete = defect.q_factorial;
    if !classification_complete {
        rules.push(RULE_UNCLASSIFIED);
    }
    rules.sort_unstable();
    rules.dedup();

    Ok(CensusReport {
        fibration_count: elliptic_models.len(),
        fano_model_exists: !fano_lines.is_empty(),
        surface,
        defect,
        lines,
        super_rigid,
        non_rational: yes,
        no_conic_bundle: yes,
        elliptic_models,
        fano_lines,
        classification_complete,
        rules,
    })
}

/// A node-count bound on the defect that a report breaks. Over a finite
/// field this points at a bad prime rather than a contradiction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditViolation {
    /// At most 14 nodes but positive defect.
    FewNodesDependent { nodes: usize, defect: usize },
    /// At least 57 nodes but zero defect.
    ManyNodesIndependent { nodes: usize },
}

pub fn node_count_audit(defect: &DefectReport) -> Vec<AuditViolation> {
    let n = defect.node_count;
    let mut out = Vec::new();
    if n <= INDEPENDENT_NODE_BOUND && defect.defect > 0 {
        out.push(AuditViolation::FewNodesDependent {
            nodes: n,
            defect: defect.defect,
        });
    }
    if n >= DEPENDENT_NODE_BOUND && defect.defect == 0 {
        out.push(AuditViolation::ManyNodesIndependent { nodes: n });
    }
    out
}
