//! Whole-diagram checking: shipped families, transitive closure, non-edge
//! certificates and DOT emission.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{tensor_fingerprint, Annotation, Catalog};
use crate::error::{Error, Result};
use crate::tensor::{stabilizer_dimension, Perm};

use super::certify::{certify_as, NonEdgeCertificate, ObstructionKind};
use super::collision::collision_family;
use super::family::{family_files, verify_family, DegenerationFamily, FamilyReport};
use super::torus::{find_torus_weights, torus_family};

/// Merge groups for the constructed collision families.
pub const COLLISIONS: [(&str, &str, &[&[usize]]); 10] = [
    ("T_{5,1}", "T_{4,1}", &[&[0, 1], &[2], &[3], &[4]]),
    ("T_{4,1}", "T_{3,1}", &[&[0, 1], &[2], &[3]]),
    ("T_{4,1}", "T_{3,3}", &[&[0], &[1, 2], &[3]]),
    ("T_{3,1}", "T_{2,1}", &[&[0], &[1, 2]]),
    ("T_{3,1}", "T_{2,3}", &[&[0, 1], &[2]]),
    ("T_{3,3}", "T_{2,1}", &[&[0, 2], &[1]]),
    ("T_{3,3}", "T_{2,3}", &[&[0, 1], &[2]]),
    ("T_{2,1}", "T_{1,1}", &[&[0, 1]]),
    ("T_{2,3}", "T_{1,1}", &[&[0, 1]]),
    ("T_{5,1}", "T_{1,1}", &[&[0, 1, 2, 3, 4]]),
];

/// File stem for a family, e.g. `collision_T5_1__T4_1`.
pub fn fixture_stem(f: &DegenerationFamily) -> String {
    let clean = |s: &str| -> String {
        s.chars()
            .filter_map(|c| match c {
                '{' | '}' | '_' => None,
                ',' => Some('_'),
                '~' => Some('t'),
                c => Some(c),
            })
            .collect()
    };
    let kind = f
        .note
        .as_deref()
        .and_then(|n| n.split(',').next())
        .unwrap_or("family");
    format!("{}_{}__{}", kind, clean(&f.source), clean(&f.target))
}

/// The constructed families: collisions, torus families found along catalog
/// edges, and the identity on `T_{1,1}`.
pub fn builtin_families(cat: &Catalog) -> Result<Vec<DegenerationFamily>> {
    let mut out = vec![DegenerationFamily::identity("T_{1,1}", 5)];
    for (s, t, merge) in COLLISIONS {
        let merge: Vec<Vec<usize>> = merge.iter().map(|g| g.to_vec()).collect();
        out.push(collision_family(
            s,
            &cat.get(s)?.tensor,
            t,
            &cat.get(t)?.tensor,
            &merge,
        )?);
    }
    for m in [5, 4] {
        for (s, t) in cat.edges(m) {
            let (src, tgt) = (&cat.get(s)?.tensor, &cat.get(t)?.tensor);
            for sigma in Perm::all() {
                if let Some(w) = find_torus_weights(&src.permute(sigma), tgt) {
                    out.push(torus_family(s, t, sigma, &w));
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Writes every built-in family to `dir` as pretty JSON.
pub fn write_fixtures(cat: &Catalog, dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for f in builtin_families(cat)? {
        let name = format!("{}.json", fixture_stem(&f));
        let body =
            serde_json::to_string_pretty(&f.to_json()).map_err(|e| Error::Parse(e.to_string()))?;
        std::fs::write(dir.join(&name), body + "\n")?;
        names.push(name);
    }
    Ok(names)
}

/// Certificate kind expected for a diagram annotation.
pub fn annotation_kind(a: Annotation) -> ObstructionKind {
    match a {
        Annotation::Submodule | Annotation::ZeroProductSubspace => ObstructionKind::Submodule,
        Annotation::GradedLimit => ObstructionKind::GradedLimitFixture,
        Annotation::DInvariant => ObstructionKind::DInvariant,
        Annotation::CoordinateModules => ObstructionKind::CoordinateModules,
        Annotation::GenericityPattern => ObstructionKind::GenericityPattern,
        Annotation::PartCount => ObstructionKind::PartCount,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeStatus {
    Verified,
    Todo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixtureResult {
    pub file: String,
    pub note: Option<String>,
    #[serde(flatten)]
    pub report: FamilyReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeLine {
    pub m: usize,
    pub source: String,
    pub target: String,
    pub status: EdgeStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonEdgeLine {
    pub source: String,
    pub target: String,
    pub annotation: Annotation,
    pub certificate: Option<NonEdgeCertificate>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilizerViolation {
    pub source: String,
    pub target: String,
    pub source_dim: usize,
    pub target_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagramReport {
    pub fixtures: Vec<FixtureResult>,
    pub edges: Vec<EdgeLine>,
    pub acyclic: bool,
    pub stabilizer_violations: Vec<StabilizerViolation>,
    pub non_edges: Vec<NonEdgeLine>,
    /// Non-edges reachable along catalog edges.
    pub conflicts: Vec<(String, String)>,
    pub node_count: BTreeMap<usize, usize>,
    pub restriction_matches: bool,
    pub pass: bool,
}

impl DiagramReport {
    pub fn failed_fixtures(&self) -> Vec<&FixtureResult> {
        self.fixtures.iter().filter(|f| !f.report.pass).collect()
    }

    pub fn todo_edges(&self) -> Vec<&EdgeLine> {
        self.edges
            .iter()
            .filter(|e| e.status == EdgeStatus::Todo)
            .collect()
    }

    /// Non-edges without a certificate of the annotated kind.
    pub fn uncertified(&self) -> Vec<&NonEdgeLine> {
        self.non_edges
            .iter()
            .filter(|n| {
                n.certificate.as_ref().map(|c| c.kind) != Some(annotation_kind(n.annotation))
            })
            .collect()
    }
}

fn closure(edges: &BTreeSet<(String, String)>) -> BTreeSet<(String, String)> {
    let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in edges {
        succ.entry(a).or_default().push(b);
    }
    let mut out = BTreeSet::new();
    for start in succ.keys() {
        let mut stack = vec![*start];
        let mut seen = BTreeSet::new();
        while let Some(x) = stack.pop() {
            for &y in succ.get(x).map_or(&[][..], |v| v.as_slice()) {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        for y in seen {
            out.insert((start.to_string(), y.to_string()));
        }
    }
    out
}

/// Hasse diagram of the order generated by `edges` on the nodes in `keep`.
fn restricted_hasse(
    edges: &BTreeSet<(String, String)>,
    keep: &BTreeSet<String>,
) -> BTreeSet<(String, String)> {
    let cl: BTreeSet<_> = closure(edges)
        .into_iter()
        .filter(|(a, b)| keep.contains(a) && keep.contains(b))
        .collect();
    cl.iter()
        .filter(|(a, c)| {
            !keep.iter().any(|b| {
                cl.contains(&(a.clone(), b.clone())) && cl.contains(&(b.clone(), c.clone()))
            })
        })
        .cloned()
        .collect()
}

/// The `m = 4` diagram obtained from the `m = 5` one: classes with a
/// one-dimensional local piece, with that piece removed (`T_{a,b}` ↦ `U_{a,b}`).
pub fn restricted_m4_edges(cat: &Catalog) -> Result<BTreeSet<(String, String)>> {
    let edges: BTreeSet<(String, String)> = cat.edges(5).iter().cloned().collect();
    let mut keep = BTreeSet::new();
    for name in cat.mbr_names(5) {
        let fp = tensor_fingerprint(&cat.get(&name)?.tensor)?;
        if fp.degrees.len() > 1 && fp.degrees.contains(&1) {
            keep.insert(name);
        }
    }
    let rename = |s: &str| s.replacen("T_", "U_", 1);
    Ok(restricted_hasse(&edges, &keep)
        .into_iter()
        .map(|(a, b)| (rename(&a), rename(&b)))
        .collect())
}

fn load_fixtures(cat: &Catalog, dir: &Path) -> Result<Vec<FixtureResult>> {
    let files = family_files(dir)?;
    files
        .par_iter()
        .map(|path| {
            let file = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let f = DegenerationFamily::read(path)?;
            let report = verify_family(&f, cat)?;
            Ok(FixtureResult {
                file,
                note: f.note.clone(),
                report,
            })
        })
        .collect()
}

/// Runs every diagram check against the family files in `fixtures`.
pub fn check_diagram(cat: &Catalog, fixtures: &Path) -> Result<DiagramReport> {
    let fixtures = load_fixtures(cat, fixtures)?;
    let verified: BTreeSet<(String, String)> = fixtures
        .iter()
        .filter(|f| f.report.pass && f.report.source != f.report.target)
        .map(|f| (f.report.source.clone(), f.report.target.clone()))
        .collect();

    let mut edges = Vec::new();
    let mut node_count = BTreeMap::new();
    for m in [5, 4] {
        node_count.insert(m, cat.mbr_names(m).len());
        for (s, t) in cat.edges(m) {
            let status = if verified.contains(&(s.clone(), t.clone())) {
                EdgeStatus::Verified
            } else {
                EdgeStatus::Todo
            };
            edges.push(EdgeLine {
                m,
                source: s.clone(),
                target: t.clone(),
                status,
            });
        }
    }

    let vclosure = closure(&verified);
    let acyclic = vclosure.iter().all(|(a, b)| a != b);
    let mut stabilizer_violations = Vec::new();
    for (a, b) in &vclosure {
        let (sa, sb) = (
            stabilizer_dimension(&cat.get(a)?.tensor),
            stabilizer_dimension(&cat.get(b)?.tensor),
        );
        if sb <= sa {
            stabilizer_violations.push(StabilizerViolation {
                source: a.clone(),
                target: b.clone(),
                source_dim: sa,
                target_dim: sb,
            });
        }
    }

    let non_edges: Vec<NonEdgeLine> = cat
        .non_edges
        .par_iter()
        .map(|n| {
            let (certificate, error) =
                match certify_as(cat, &n.source, &n.target, annotation_kind(n.annotation)) {
                    Ok(c) => (c, None),
                    Err(e) => (None, Some(e.to_string())),
                };
            NonEdgeLine {
                source: n.source.clone(),
                target: n.target.clone(),
                annotation: n.annotation,
                certificate,
                error,
            }
        })
        .collect();

    let mut all_edges: BTreeSet<(String, String)> = cat.edges(5).iter().cloned().collect();
    all_edges.extend(verified.iter().cloned());
    let full = closure(&all_edges);
    let conflicts: Vec<(String, String)> = cat
        .non_edges
        .iter()
        .filter(|n| full.contains(&(n.source.clone(), n.target.clone())))
        .map(|n| (n.source.clone(), n.target.clone()))
        .collect();

    let m4: BTreeSet<(String, String)> = cat.edges(4).iter().cloned().collect();
    let restriction_matches = restricted_m4_edges(cat)? == m4;

    let mut report = DiagramReport {
        fixtures,
        edges,
        acyclic,
        stabilizer_violations,
        non_edges,
        conflicts,
        node_count,
        restriction_matches,
        pass: false,
    };
    report.pass = report.failed_fixtures().is_empty()
        && report.acyclic
        && report.stabilizer_violations.is_empty()
        && report.uncertified().is_empty()
        && report.conflicts.is_empty()
        && report.restriction_matches;
    Ok(report)
}

/// DOT rendering of the `m`-diagram: nodes `name/stabilizer`, solid catalog
/// edges (grey when no verified family ships), dashed certified non-edges.
pub fn to_dot(cat: &Catalog, report: &DiagramReport, m: usize) -> Result<String> {
    let mut s = String::new();
    let _ = writeln!(s, "digraph degenerations_m{m} {{");
    let _ = writeln!(s, "  rankdir=TB;");
    for name in cat.mbr_names(m) {
        let stab = stabilizer_dimension(&cat.get(&name)?.tensor);
        let _ = writeln!(s, "  \"{name}\" [label=\"{name}/{stab}\"];");
    }
    for e in report.edges.iter().filter(|e| e.m == m) {
        match e.status {
            EdgeStatus::Verified => {
                let _ = writeln!(s, "  \"{}\" -> \"{}\" [style=solid];", e.source, e.target);
            }
            EdgeStatus::Todo => {
                let _ = writeln!(
                    s,
                    "  \"{}\" -> \"{}\" [style=solid, color=gray, label=\"TODO\"];",
                    e.source, e.target
                );
            }
        }
    }
    let names: BTreeSet<String> = cat.mbr_names(m).into_iter().collect();
    for n in report
        .non_edges
        .iter()
        .filter(|n| names.contains(&n.source))
    {
        let label = n
            .certificate
            .as_ref()
            .map_or_else(|| "unresolved".to_string(), |c| c.kind.to_string());
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [style=dashed, label=\"{label}\"];",
            n.source, n.target
        );
    }
    s.push_str("}\n");
    Ok(s)
}
