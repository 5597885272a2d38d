//! Named tensors and modules with their expected invariants, the edge list of
//! the m = 5 degeneration diagram and its annotated non-edges.
//!
//! The data ships as `catalog/catalog.json` (schema in `catalog/SCHEMA.md`)
//! and is embedded at compile time; `Catalog::from_path` reads a replacement.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::apolar::{module_from_dual_generators, DualElement};
use crate::error::{Error, Result};
use crate::module::{
    direct_sum_concise, equivalent_to_dual, fingerprint_core, from_espace, isomorphic_modules,
    local_invariants, module_flags, support_decomposition, FiniteModule, LocalInvariants,
};
use crate::tensor::{
    choose_alpha, e_space, genericity_pattern, stabilizer_dimension, strassen_and_end_closed,
    MatrixForm, Tensor3,
};
use crate::triplealg::{coordinate_modules, one_one_one_algebra};

const EMBEDDED: &str = include_str!("../catalog/catalog.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expect {
    pub concise: bool,
    pub generic_directions: usize,
    /// `None` for 1-degenerate tensors, which have no E-space.
    pub end_closed: Option<bool>,
    pub mbr: bool,
    pub self_dual: Option<bool>,
    pub degrees: Option<Vec<usize>>,
    #[serde(default)]
    pub permutation_classes: Option<usize>,
    #[serde(default)]
    pub stabilizer: Option<usize>,
    /// Set when the stored stabilizer value was read off the diagram layout.
    #[serde(default)]
    pub stabilizer_layout_read: bool,
}

#[derive(Clone, Debug, Deserialize)]
struct RawEntry {
    name: String,
    m: usize,
    family: String,
    rows: Vec<Vec<String>>,
    expect: Expect,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Local,
    Split,
    OneDegenerate,
    NotEndClosed,
    Small,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub m: usize,
    pub family: Family,
    pub form: MatrixForm,
    pub tensor: Tensor3,
    pub expect: Expect,
}

impl CatalogEntry {
    pub fn is_mbr(&self) -> bool {
        self.expect.mbr
    }

    pub fn generic_directions(&self) -> usize {
        self.expect.generic_directions
    }

    /// The module of a 1_A-generic entry: `x_i` acts by the i-th E-space element.
    pub fn module(&self) -> Result<FiniteModule> {
        let alpha = choose_alpha(&self.tensor)?;
        from_espace(&e_space(&self.tensor, &alpha)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Annotation {
    Submodule,
    GradedLimit,
    DInvariant,
    CoordinateModules,
    GenericityPattern,
    PartCount,
    ZeroProductSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonEdge {
    pub source: String,
    pub target: String,
    pub annotation: Annotation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoordinateRow {
    pub tensor: String,
    /// For each factor, the entry whose module the coordinate module matches.
    pub modules: [String; 3],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApolarModule {
    pub name: String,
    pub tensor: String,
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Composite {
    pub name: String,
    pub tensor: String,
    pub pieces: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubspaceEntry {
    pub name: String,
    pub m: usize,
    pub rows: Vec<Vec<String>>,
    pub dual_of: String,
}

#[derive(Deserialize)]
struct RawCatalog {
    version: u32,
    entries: Vec<RawEntry>,
    subspaces: Vec<SubspaceEntry>,
    transposed: Vec<String>,
    edges: BTreeMap<String, Vec<(String, String)>>,
    non_edges: Vec<NonEdge>,
    coordinate_table: Vec<CoordinateRow>,
    apolar: Vec<ApolarModule>,
    composites: Vec<Composite>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    MinimalBorderRank,
    OneAGeneric,
    OneDegenerate,
    NotEndClosed,
}

impl Filter {
    pub fn parse(s: &str) -> Result<Filter> {
        Ok(match s {
            "all" => Filter::All,
            "mbr" | "minimal-border-rank" => Filter::MinimalBorderRank,
            "one-a-generic" | "1a" => Filter::OneAGeneric,
            "one-degenerate" | "1-degenerate" => Filter::OneDegenerate,
            "not-end-closed" => Filter::NotEndClosed,
            _ => return Err(Error::Parse(format!("unknown filter {s:?}"))),
        })
    }

    fn admits(self, e: &CatalogEntry) -> bool {
        match self {
            Filter::All => true,
            Filter::MinimalBorderRank => e.expect.mbr,
            Filter::OneAGeneric => e.expect.generic_directions > 0,
            Filter::OneDegenerate => e.expect.generic_directions == 0,
            Filter::NotEndClosed => e.expect.end_closed == Some(false),
        }
    }
}

pub struct Catalog {
    pub version: u32,
    entries: Vec<CatalogEntry>,
    index: BTreeMap<String, usize>,
    pub subspaces: Vec<SubspaceEntry>,
    pub transposed: Vec<String>,
    pub edges: BTreeMap<usize, Vec<(String, String)>>,
    pub non_edges: Vec<NonEdge>,
    pub coordinate_table: Vec<CoordinateRow>,
    pub apolar: Vec<ApolarModule>,
    pub composites: Vec<Composite>,
}

fn parse_rows(m: usize, rows: &[Vec<String>]) -> Result<MatrixForm> {
    let r: Vec<Vec<&str>> = rows
        .iter()
        .map(|row| row.iter().map(String::as_str).collect())
        .collect();
    let refs: Vec<&[&str]> = r.iter().map(|x| x.as_slice()).collect();
    MatrixForm::parse_rows(m, &refs)
}

/// Transpose of a matrix form: entry `(i, j)` moves to `(j, i)`.
pub fn transpose_form(f: &MatrixForm) -> MatrixForm {
    let m = f.m;
    let entries = (0..m)
        .map(|i| (0..m).map(|j| f.entries[j][i].clone()).collect())
        .collect();
    MatrixForm { m, entries }
}

impl Catalog {
    /// The catalog shipped with the crate, parsed once.
    pub fn builtin() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| Catalog::from_json_str(EMBEDDED).expect("embedded catalog parses"))
    }

    pub fn from_path(path: &Path) -> Result<Catalog> {
        Catalog::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_json_str(s: &str) -> Result<Catalog> {
        let raw: RawCatalog = serde_json::from_str(s)?;
        let mut entries = Vec::new();
        let mut index = BTreeMap::new();
        for e in raw.entries {
            let form = parse_rows(e.m, &e.rows)?;
            let family = match e.family.as_str() {
                "local" => Family::Local,
                "split" => Family::Split,
                "one-degenerate" => Family::OneDegenerate,
                "not-end-closed" => Family::NotEndClosed,
                "small" => Family::Small,
                other => return Err(Error::Parse(format!("unknown family {other:?}"))),
            };
            if index.insert(e.name.clone(), entries.len()).is_some() {
                return Err(Error::Inconsistent(format!("duplicate entry {}", e.name)));
            }
            entries.push(CatalogEntry {
                name: e.name,
                m: e.m,
                family,
                tensor: form.to_tensor(),
                form,
                expect: e.expect,
            });
        }
        let mut edges = BTreeMap::new();
        for (k, v) in raw.edges {
            let m: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge-list key {k:?}")))?;
            edges.insert(m, v);
        }
        let cat = Catalog {
            version: raw.version,
            entries,
            index,
            subspaces: raw.subspaces,
            transposed: raw.transposed,
            edges,
            non_edges: raw.non_edges,
            coordinate_table: raw.coordinate_table,
            apolar: raw.apolar,
            composites: raw.composites,
        };
        cat.check_names()?;
        Ok(cat)
    }

    fn check_names(&self) -> Result<()> {
        let known = |n: &str| -> Result<()> {
            if self.index.contains_key(n) || n == "point" {
                Ok(())
            } else {
                Err(Error::Inconsistent(format!(
                    "reference to unknown entry {n}"
                )))
            }
        };
        for list in self.edges.values() {
            for (a, b) in list {
                known(a)?;
                known(b)?;
            }
        }
        for ne in &self.non_edges {
            known(&ne.source)?;
            known(&ne.target)?;
        }
        for r in &self.coordinate_table {
            known(&r.tensor)?;
            for n in &r.modules {
                known(n)?;
            }
        }
        for a in &self.apolar {
            known(&a.tensor)?;
        }
        for c in &self.composites {
            known(&c.tensor)?;
            for p in &c.pieces {
                known(p)?;
            }
        }
        for n in &self.transposed {
            known(n)?;
        }
        for s in &self.subspaces {
            known(&s.dual_of)?;
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.index
            .get(name)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| Error::UnknownEntry(name.into()))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn list(&self, m: usize, filter: Filter) -> Vec<&CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| e.m == m && filter.admits(e))
            .collect()
    }

    /// Minimal border rank classes at `m`, in catalog order.
    pub fn mbr_names(&self, m: usize) -> Vec<String> {
        self.list(m, Filter::MinimalBorderRank)
            .into_iter()
            .map(|e| e.name.clone())
            .collect()
    }

    pub fn edges(&self, m: usize) -> &[(String, String)] {
        self.edges.get(&m).map_or(&[], |v| v.as_slice())
    }

    /// Module named `M_{..}`: apolar modules are built from their dual
    /// generators, composite ones by `direct_sum_concise`.
    pub fn named_module(&self, name: &str) -> Result<FiniteModule> {
        if let Some(a) = self.apolar.iter().find(|a| a.name == name) {
            return apolar_module(a);
        }
        if let Some(c) = self.composites.iter().find(|c| c.name == name) {
            return self.composite_module(c);
        }
        if name == "point" {
            return FiniteModule::new(1, vec![]);
        }
        self.get(name)?.module()
    }

    fn composite_module(&self, c: &Composite) -> Result<FiniteModule> {
        let pieces = c
            .pieces
            .iter()
            .map(|p| self.named_module(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(direct_sum_concise(&pieces)?.0)
    }

    /// The tensor of a transposed display `T^T` for a name in `transposed`.
    pub fn transposed_tensor(&self, name: &str) -> Result<Tensor3> {
        if !self.transposed.iter().any(|n| n == name) {
            return Err(Error::UnknownEntry(format!("{name}^T")));
        }
        Ok(transpose_form(&self.get(name)?.form).to_tensor())
    }
}

fn apolar_module(a: &ApolarModule) -> Result<FiniteModule> {
    let nvars = 4;
    let gens = a
        .generators
        .iter()
        .map(|g| DualElement::parse(&g.iter().map(String::as_str).collect::<Vec<_>>(), nvars))
        .collect::<Result<Vec<_>>>()?;
    module_from_dual_generators(&gens, nvars)
}

/// Isomorphism-invariant data of a tensor under the permutations of the
/// factors; unequal values certify that two tensors are not equivalent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TensorFingerprint {
    pub m: usize,
    pub generic_directions: usize,
    pub stabilizer_dim: usize,
    pub sharp_dim: usize,
    pub degrees: Vec<usize>,
    /// Local invariants of the pieces of `M` and of `M^∨`, as a sorted pair.
    pub module_pieces: Vec<Vec<LocalInvariants>>,
    pub end_dim: Option<usize>,
    /// For 1-degenerate tensors: sorted local invariants of the coordinate modules.
    pub coordinate_pieces: Vec<Vec<LocalInvariants>>,
}

fn sorted_pieces(module: &FiniteModule) -> Result<Vec<LocalInvariants>> {
    let mut v = support_decomposition(module)?
        .pieces
        .iter()
        .map(|p| local_invariants(&p.local))
        .collect::<Result<Vec<_>>>()?;
    v.sort();
    Ok(v)
}

pub fn tensor_fingerprint(t: &Tensor3) -> Result<TensorFingerprint> {
    let pat = genericity_pattern(t)?;
    let mut fp = TensorFingerprint {
        m: t.m(),
        generic_directions: pat.generic_count(),
        stabilizer_dim: stabilizer_dimension(t),
        sharp_dim: one_one_one_algebra(t).dim(),
        degrees: vec![],
        module_pieces: vec![],
        end_dim: None,
        coordinate_pieces: vec![],
    };
    // rotate a generic direction into A
    if let Some(d) = pat.one_generic.iter().position(|&g| g) {
        let sigma = crate::tensor::Perm::all()
            .into_iter()
            .find(|s| s.0[0] == d)
            .expect("some permutation");
        let u = t.permute(sigma);
        let module = from_espace(&e_space(&u, &choose_alpha(&u)?)?)?;
        let core = fingerprint_core(&module)?;
        fp.degrees = core.degrees.clone();
        fp.end_dim = Some(core.end_dim);
        let mut pair = vec![sorted_pieces(&module)?, sorted_pieces(&module.dual())?];
        pair.sort();
        fp.module_pieces = pair;
    } else if fp.sharp_dim == t.m() {
        let mut cp = coordinate_modules(t)?
            .iter()
            .map(sorted_pieces)
            .collect::<Result<Vec<_>>>()?;
        cp.sort();
        fp.coordinate_pieces = cp;
    }
    Ok(fp)
}

/// One line of the self-check report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub subject: String,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

impl CheckLine {
    fn new(subject: &str, check: &str, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        CheckLine {
            subject: subject.into(),
            check: check.into(),
            ok: expected == computed,
            expected,
            computed,
        }
    }
}

/// Recomputed invariants of a single entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryInvariants {
    pub name: String,
    pub concise: bool,
    pub one_generic: [bool; 3],
    pub strassen: Option<bool>,
    pub end_closed: Option<bool>,
    pub stabilizer_dim: usize,
    pub sharp_dim: usize,
    pub degrees: Option<Vec<usize>>,
    pub self_dual: Option<bool>,
}

pub fn entry_invariants(e: &CatalogEntry, with_duality: bool) -> Result<EntryInvariants> {
    let t = &e.tensor;
    let pat = genericity_pattern(t)?;
    let mut inv = EntryInvariants {
        name: e.name.clone(),
        concise: pat.is_concise(),
        one_generic: pat.one_generic,
        strassen: None,
        end_closed: None,
        stabilizer_dim: stabilizer_dimension(t),
        sharp_dim: one_one_one_algebra(t).dim(),
        degrees: None,
        self_dual: None,
    };
    if pat.one_generic[0] {
        let es = e_space(t, &choose_alpha(t)?)?;
        let (s, c) = strassen_and_end_closed(&es);
        inv.strassen = Some(s);
        inv.end_closed = Some(c);
        let module = from_espace(&es)?;
        if s {
            inv.degrees = Some(support_decomposition(&module)?.degrees());
            if with_duality && c {
                inv.self_dual = equivalent_to_dual(&module, 0)?.as_bool();
            }
        }
    }
    Ok(inv)
}

fn fmt_opt<T: std::fmt::Debug>(x: &Option<T>) -> String {
    match x {
        Some(v) => format!("{v:?}"),
        None => "n/a".into(),
    }
}

/// Recomputes every stored expectation. `with_duality` includes the
/// (slower) self-duality decisions.
pub fn self_check(cat: &Catalog, with_duality: bool) -> Result<Vec<CheckLine>> {
    use rayon::prelude::*;
    let per_entry: Vec<Result<Vec<CheckLine>>> = cat
        .entries
        .par_iter()
        .map(|e| {
            let inv = entry_invariants(e, with_duality)?;
            let n = e.name.as_str();
            let mut out = vec![
                CheckLine::new(n, "concise", e.expect.concise, inv.concise),
                CheckLine::new(
                    n,
                    "generic directions",
                    e.expect.generic_directions,
                    inv.one_generic.iter().filter(|&&b| b).count(),
                ),
            ];
            if inv.one_generic[0] {
                out.push(CheckLine::new(n, "Strassen", true, fmt_opt(&inv.strassen)));
            }
            out.push(CheckLine::new(
                n,
                "End-closed",
                fmt_opt(&e.expect.end_closed),
                fmt_opt(&inv.end_closed),
            ));
            if let Some(s) = e.expect.stabilizer {
                out.push(CheckLine::new(n, "stabilizer", s, inv.stabilizer_dim));
            }
            if e.expect.mbr {
                out.push(CheckLine::new(n, "111-dimension", e.m, inv.sharp_dim));
            }
            if e.expect.degrees.is_some() {
                out.push(CheckLine::new(
                    n,
                    "degrees",
                    fmt_opt(&e.expect.degrees),
                    fmt_opt(&inv.degrees),
                ));
            }
            if with_duality && e.expect.generic_directions > 0 && e.expect.end_closed == Some(true)
            {
                out.push(CheckLine::new(
                    n,
                    "self-dual",
                    fmt_opt(&e.expect.self_dual),
                    fmt_opt(&inv.self_dual),
                ));
            }
            Ok(out)
        })
        .collect();
    let mut lines = Vec::new();
    for r in per_entry {
        lines.extend(r?);
    }
    lines.extend(structural_checks(cat)?);
    Ok(lines)
}

/// Checks that relate entries to each other: composites and apolar modules
/// against tensors, transposes against duals, and distinct fingerprints.
pub fn structural_checks(cat: &Catalog) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for c in &cat.composites {
        let built = cat.composite_module(c)?;
        let own = cat.get(&c.tensor)?.module()?;
        lines.push(CheckLine::new(
            &c.name,
            "fingerprint matches tensor module",
            true,
            same_up_to_dual(&built, &own)?,
        ));
        lines.push(CheckLine::new(
            &c.name,
            "concise",
            true,
            module_flags(&built).0,
        ));
    }
    for a in &cat.apolar {
        let built = apolar_module(a)?;
        let t = cat.get(&a.tensor)?;
        let own = t.module()?;
        let (concise, closed) = module_flags(&built);
        lines.push(CheckLine::new(&a.name, "concise", true, concise));
        lines.push(CheckLine::new(
            &a.name,
            "End-closed",
            fmt_opt(&t.expect.end_closed),
            fmt_opt(&Some(closed)),
        ));
        if closed {
            lines.push(CheckLine::new(
                &a.name,
                "fingerprint matches tensor module",
                true,
                same_up_to_dual(&built, &own)?,
            ));
        } else {
            let h = local_invariants(&built)?.hilbert;
            let h2 = local_invariants(&own)?.hilbert;
            let h3 = local_invariants(&own.dual())?.hilbert;
            lines.push(CheckLine::new(
                &a.name,
                "Hilbert function matches tensor module",
                true,
                h == h2 || h == h3,
            ));
        }
    }
    for n in &cat.transposed {
        let t = cat.transposed_tensor(n)?;
        let module = from_espace(&e_space(&t, &choose_alpha(&t)?)?)?;
        let own = cat.get(n)?.module()?;
        let dual_fp = fingerprint_core(&own.dual())?;
        let fp = fingerprint_core(&module)?;
        lines.push(CheckLine::new(
            &format!("{n}^T"),
            "fingerprint matches dual module",
            true,
            fp == dual_fp,
        ));
        lines.push(CheckLine::new(
            &format!("{n}^T"),
            "differs from the module",
            true,
            !isomorphic_modules(&module, &own, 8, 0).is_yes(),
        ));
    }
    for s in &cat.subspaces {
        let form = parse_rows(s.m, &s.rows)?;
        let t = form.to_tensor();
        let module = from_espace(&e_space(&t, &choose_alpha(&t)?)?)?;
        let own = cat.get(&s.dual_of)?.module()?;
        lines.push(CheckLine::new(
            &s.name,
            "fingerprint matches dual module",
            true,
            fingerprint_core(&module)? == fingerprint_core(&own.dual())?,
        ));
    }
    for m in [2usize, 3, 4, 5] {
        let names = cat.mbr_names(m);
        let mut seen: BTreeMap<TensorFingerprint, String> = BTreeMap::new();
        let mut clash = Vec::new();
        for n in &names {
            let fp = tensor_fingerprint(&cat.get(n)?.tensor)?;
            if let Some(prev) = seen.insert(fp, n.clone()) {
                clash.push(format!("{prev}={n}"));
            }
        }
        lines.push(CheckLine::new(
            &format!("m = {m}"),
            "pairwise distinct fingerprints",
            format!("{} distinct", names.len()),
            if clash.is_empty() {
                format!("{} distinct", names.len())
            } else {
                clash.join(",")
            },
        ));
    }
    let mut acyclic_ok = true;
    for m in cat.edges.keys() {
        acyclic_ok &= is_acyclic(cat.edges(*m));
    }
    lines.push(CheckLine::new("edges", "acyclic", true, acyclic_ok));
    Ok(lines)
}

fn same_up_to_dual(a: &FiniteModule, b: &FiniteModule) -> Result<bool> {
    let fa = fingerprint_core(a)?;
    Ok(fa == fingerprint_core(b)? || fa == fingerprint_core(&b.dual())?)
}

pub fn is_acyclic(edges: &[(String, String)]) -> bool {
    let nodes: BTreeSet<&str> = edges
        .iter()
        .flat_map(|(a, b)| [a.as_str(), b.as_str()])
        .collect();
    let mut indeg: BTreeMap<&str, usize> = nodes.iter().map(|&n| (n, 0)).collect();
    for (_, b) in edges {
        *indeg.get_mut(b.as_str()).unwrap() += 1;
    }
    let mut queue: Vec<&str> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&n, _)| n)
        .collect();
    let mut seen = 0;
    while let Some(n) = queue.pop() {
        seen += 1;
        for (a, b) in edges {
            if a == n {
                let d = indeg.get_mut(b.as_str()).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push(b);
                }
            }
        }
    }
    seen == nodes.len()
}

#[cfg(test)]
mod tests;
