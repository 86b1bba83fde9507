//! The `sextic` command-line tool: argument handling and report assembly.
//!
//! [`run`] never prints; it returns the exit code, the JSON document and a
//! short human-readable summary for standard error.

pub mod json;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sextic_core::census::{census_of_record, CensusOptions};
use sextic_core::defect::{defect_of, sextic_node_position};
use sextic_core::gallery::{build, suitable_prime, GalleryName, GallerySpec};
use sextic_core::lines::{classify_lines, tangent_planes_coincide};
use sextic_core::singular::{record_from_points, verify_nodal, NodalSurfaceRecord};
use sextic_core::{EnumerationGuard, Error, Field, FieldSpec, HomoPoly, ProjPoint, Scalar, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NON_NODAL: i32 = 2;

/// Upper end of the prime search when a fixture is given without a field.
const PRIME_SEARCH_LIMIT: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "sextic",
    version,
    about = "Nodal sextic double solids: singular points, defect, lines and elliptic fibrations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full classification report.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Pointwise fiber checks per line through four nodes.
        #[arg(long, default_value_t = 10)]
        probes: usize,
    },
    /// Singular locus and Q-factoriality defect.
    Defect {
        #[command(flatten)]
        input: Input,
    },
    /// Lines through pairs of nodes.
    Lines {
        #[command(flatten)]
        input: Input,
        /// Smooth points sampled for the tangent-plane test.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Classification report for a given list of nodes.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10)]
        probes: usize,
    },
    /// Emit a gallery polynomial.
    Gallery {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Debug)]
#[group(skip)]
struct Input {
    /// `rational`, `p=101` or `p=11,k=2`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// Gallery entry, e.g. `barth` or `family_r,r=2`.
    #[arg(long)]
    gallery: Option<String>,
    /// JSON list of points: node list for `classify`, node positions for
    /// the `prescribed` gallery entry.
    #[arg(long)]
    nodes_file: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=12))]
    ext_depth: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest number of points a search may visit.
    #[arg(long)]
    max_enum: Option<u128>,
    /// Lift the enumeration limit.
    #[arg(long)]
    force_enum: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// What a command produced.
pub struct Outcome {
    pub code: i32,
    pub document: Value,
    pub summary: String,
    pub out: Option<PathBuf>,
}

impl Outcome {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn rendered(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

struct Failure {
    code: i32,
    kind: String,
    message: String,
    position: Option<usize>,
    extra: Map<String, Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let position = match &e {
            Error::Parse { position, .. } => Some(*position),
            _ => None,
        };
        let code = if matches!(e, Error::NonNodalSurface(_)) {
            EXIT_NON_NODAL
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            kind: json::error_kind(&e),
            message: e.to_string(),
            position,
            extra: Map::new(),
        }
    }
}

fn usage(kind: &str, message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        kind: kind.into(),
        message: message.into(),
        position: None,
        extra: Map::new(),
    }
}

/// The resolved polynomial and the provenance block describing it.
struct Source {
    poly: HomoPoly,
    field: FieldSpec,
    provenance: Map<String, Value>,
}

fn guard(input: &Input) -> EnumerationGuard {
    let mut g = input
        .max_enum
        .map(EnumerationGuard::with_limit)
        .unwrap_or_default();
    g.force = input.force_enum;
    g
}

fn parse_field(text: &str, gallery: Option<GalleryName>) -> Result<FieldSpec, Failure> {
    if gallery == Some(GalleryName::Char5Demo) {
        // the one fixture allowed below characteristic 7
        let k = match text.trim() {
            "p=5" => 1,
            t => t
                .strip_prefix("p=5,k=")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| usage("bad-field-spec", format!("char5_demo needs p=5, got `{t}`")))?,
        };
        return Ok(FieldSpec::char5_demo(k)?);
    }
    Ok(text.parse()?)
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage("io", format!("{}: {e}", path.display())))
}

fn coordinate(field: &FieldSpec, v: &Value) -> Result<Scalar, Failure> {
    let bad = || usage("bad-point", format!("cannot read coordinate {v}"));
    let int = |n: &Value| n.as_i64().ok_or_else(bad);
    match v {
        Value::Number(_) => Ok(field.from_i64(int(v)?)),
        Value::String(s) => {
            let (a, b) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s.trim(), "1"),
            };
            let a: i64 = a.parse().map_err(|_| bad())?;
            let b: i64 = b.parse().map_err(|_| bad())?;
            field.div(&field.from_i64(a), &field.from_i64(b)).ok_or_else(bad)
        }
        Value::Array(cs) => {
            let ff = field.finite_field().ok_or_else(bad)?;
            let p = i64::from(ff.p());
            let cs = cs
                .iter()
                .map(|c| Ok(int(c)?.rem_euclid(p) as u32))
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(field.from_fq(ff.from_coeffs(&cs).ok_or_else(bad)?))
        }
        _ => Err(bad()),
    }
}

fn read_points(path: &PathBuf, field: &FieldSpec) -> Result<Vec<ProjPoint>, Failure> {
    let text = read_file(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure {
        position: Some(e.column()),
        ..usage("bad-points-file", format!("{}: {e}", path.display()))
    })?;
    let list = value
        .as_array()
        .ok_or_else(|| usage("bad-points-file", "expected a JSON array of points"))?;
    list.iter()
        .map(|p| {
            let cs = p
                .as_array()
                .filter(|c| c.len() == 4)
                .ok_or_else(|| usage("bad-point", format!("expected 4 coordinates, got {p}")))?;
            let coords = cs
                .iter()
                .map(|c| coordinate(field, c))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ProjPoint::new(field, coords.try_into().expect("4 coordinates"))?)
        })
        .collect()
}

fn resolve(input: &Input) -> Result<Source, Failure> {
    let sources = [
        input.poly.is_some(),
        input.poly_file.is_some(),
        input.gallery.is_some(),
    ];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(usage(
            "usage",
            "give exactly one of --poly, --poly-file, --gallery",
        ));
    }
    let gallery = input
        .gallery
        .as_deref()
        .map(str::parse::<GalleryName>)
        .transpose()?;
    let mut provenance = Map::new();
    let field = match (&input.field, gallery) {
        (Some(text), _) => parse_field(text, gallery)?,
        (
            None,
            Some(name @ (GalleryName::FourPointLine | GalleryName::FivePointLine | GalleryName::Barth)),
        ) => {
            let p = suitable_prime(name, 7, PRIME_SEARCH_LIMIT)?;
            provenance.insert(
                "prime_search".into(),
                json!({"limit": PRIME_SEARCH_LIMIT, "prime": p, "start": 7}),
            );
            FieldSpec::prime(p)?
        }
        (None, _) => return Err(usage("missing-field", "--field is required for this input")),
    };
    let poly = if let Some(text) = &input.poly {
        provenance.insert("kind".into(), json!("inline"));
        HomoPoly::parse(&field, text)?
    } else if let Some(path) = &input.poly_file {
        provenance.insert("kind".into(), json!("file"));
        provenance.insert("path".into(), json!(path.display().to_string()));
        HomoPoly::parse(&field, &read_file(path)?)?
    } else {
        let name = gallery.expect("checked above");
        let points = match (&input.nodes_file, name) {
            (Some(path), GalleryName::Prescribed) => read_points(path, &field)?,
            _ => Vec::new(),
        };
        let spec = GallerySpec::new(name, field.clone(), input.seed).with_points(points);
        let b = build(&spec)?;
        provenance.insert("kind".into(), json!("gallery"));
        provenance.insert("name".into(), json!(name.to_string()));
        provenance.insert("seed_used".into(), json!(b.seed_used));
        provenance.insert("attempts".into(), json!(b.attempts));
        if name == GalleryName::Prescribed {
            provenance.insert("points".into(), json::points(&field, &spec.points));
        }
        b.polynomial
    };
    Ok(Source {
        poly,
        field,
        provenance,
    })
}

fn record(
    input: &Input,
    src: &Source,
    supplied: Option<&[ProjPoint]>,
) -> Result<NodalSurfaceRecord, Failure> {
    let rec = match supplied {
        Some(pts) => record_from_points(&src.poly, pts)?,
        None => verify_nodal(&src.poly, input.ext_depth as usize, &guard(input))?,
    };
    if !rec.is_nodal() {
        let mut f = Failure::from(Error::NonNodalSurface(rec.non_nodal.len()));
        f.extra.insert("surface".into(), json::surface(&rec));
        return Err(f);
    }
    Ok(rec)
}

fn header(command: &str, input: &Input, src: &Source) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("field".into(), json::field(&src.field));
    m.insert("polynomial".into(), json!(src.poly.to_string()));
    m.insert("seed".into(), json!(input.seed));
    m.insert("source".into(), Value::Object(src.provenance.clone()));
    m.insert("tool".into(), json!({"name": "sextic", "version": VERSION}));
    m
}

fn census_options(input: &Input, probes: usize, supplied: Option<Vec<ProjPoint>>) -> CensusOptions {
    CensusOptions {
        extension_depth: input.ext_depth as usize,
        guard: guard(input),
        supplied_nodes: supplied,
        probes,
        seed: input.seed,
    }
}

fn execute(command: &Command) -> Result<(Map<String, Value>, String), Failure> {
    match command {
        Command::Analyze { input, probes } => {
            let src = resolve(input)?;
            let rec = record(input, &src, None)?;
            let report = census_of_record(rec, &census_options(input, *probes, None))?;
            let mut doc = header("analyze", input, &src);
            doc.insert("report".into(), json::census(&report));
            let summary = format!(
                "{} nodes, defect {}, super-rigid {}, {} elliptic fibrations, fano model {}",
                report.node_count(),
                report.defect.defect,
                report.super_rigid.state.as_str(),
                report.fibration_count,
                report.fano_model_exists
            );
            Ok((doc, summary))
        }
        Command::Classify { input, probes } => {
            let path = input
                .nodes_file
                .as_ref()
                .ok_or_else(|| usage("missing-nodes-file", "classify needs --nodes-file"))?;
            let src = resolve(input)?;
            let nodes = read_points(path, &src.field)?;
            let rec = record(input, &src, Some(&nodes))?;
            let report = census_of_record(rec, &census_options(input, *probes, Some(nodes)))?;
            let mut doc = header("classify", input, &src);
            doc.insert("report".into(), json::census(&report));
            let summary = format!(
                "{} supplied nodes, defect {}, {} elliptic fibrations",
                report.node_count(),
                report.defect.defect,
                report.fibration_count
            );
            Ok((doc, summary))
        }
        Command::Defect { input } => {
            let src = resolve(input)?;
            let rec = record(input, &src, None)?;
            let d = defect_of(&rec)?;
            let amb = rec.ambient_field().clone();
            let violations = sextic_node_position(&amb, &rec.nodes, 2)?;
            let mut doc = header("defect", input, &src);
            doc.insert(
                "audit".into(),
                json::audit(&sextic_core::census::node_count_audit(&d)),
            );
            doc.insert("defect".into(), json::defect(&d));
            doc.insert(
                "position_violations".into(),
                Value::Array(
                    violations
                        .iter()
                        .map(|v| json::position_violation(&amb, v))
                        .collect(),
                ),
            );
            doc.insert("surface".into(), json::surface(&rec));
            let summary = format!(
                "{} nodes, defect {} ({})",
                rec.node_count(),
                d.defect,
                d.caveat.as_str()
            );
            Ok((doc, summary))
        }
        Command::Lines { input, samples } => {
            let src = resolve(input)?;
            let rec = record(input, &src, None)?;
            let lines = classify_lines(&rec)?;
            let amb = rec.ambient_field();
            let entries = lines
                .iter()
                .map(|l| {
                    let mut v = json::line_record(amb, l);
                    let tangent = if l.contained_in_s {
                        match tangent_planes_coincide(&rec.ambient_surface, &l.line, *samples) {
                            Ok(b) => json!(b),
                            Err(e) => json!({"error": json::error_kind(&e)}),
                        }
                    } else {
                        Value::Null
                    };
                    v.as_object_mut()
                        .expect("line records are objects")
                        .insert("tangent_planes_coincide".into(), tangent);
                    v
                })
                .collect();
            let mut doc = header("lines", input, &src);
            doc.insert("lines".into(), Value::Array(entries));
            doc.insert("surface".into(), json::surface(&rec));
            let on_s = lines.iter().filter(|l| l.contained_in_s).count();
            let summary = format!("{} lines through node pairs, {on_s} on the surface", lines.len());
            Ok((doc, summary))
        }
        Command::Gallery { input } => {
            if input.gallery.is_none() {
                return Err(usage("missing-gallery", "gallery needs --gallery"));
            }
            let src = resolve(input)?;
            let mut doc = header("gallery", input, &src);
            doc.insert("degree".into(), json!(src.poly.degree()));
            doc.insert("terms".into(), json!(src.poly.len()));
            let summary = format!("{} terms", src.poly.len());
            Ok((doc, summary))
        }
    }
}

fn out_path(command: &Command) -> Option<PathBuf> {
    match command {
        Command::Analyze { input, .. }
        | Command::Defect { input }
        | Command::Lines { input, .. }
        | Command::Classify { input, .. }
        | Command::Gallery { input } => input.out.clone(),
    }
}

fn failure_document(f: Failure) -> (i32, Value) {
    let mut doc = match json::error_object(&f.kind, &f.message, f.position) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    doc.insert("tool".into(), json!({"name": "sextic", "version": VERSION}));
    doc.extend(f.extra);
    (f.code, Value::Object(doc))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: EXIT_OK,
                    document: Value::Null,
                    summary: e.to_string(),
                    out: None,
                };
            }
            let (code, document) = failure_document(usage("usage", e.to_string().trim_end()));
            return Outcome {
                code,
                document,
                summary: e.to_string(),
                out: None,
            };
        }
    };
    let out = out_path(&cli.command);
    match execute(&cli.command) {
        Ok((doc, summary)) => Outcome {
            code: EXIT_OK,
            document: Value::Object(doc),
            summary,
            out,
        },
        Err(f) => {
            let summary = format!("error: {}", f.message);
            let (code, document) = failure_document(f);
            Outcome {
                code,
                document,
                summary,
                out,
            }
        }
    }
}
