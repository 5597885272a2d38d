use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use mbr_workbench::catalog::{entry_invariants, self_check, tensor_fingerprint, Catalog, Filter};
use mbr_workbench::degengraph::dinv::d_invariant;
use mbr_workbench::degengraph::{
    check_diagram, count_classes, to_dot, verify_family, DegenerationFamily,
};
use mbr_workbench::error::Error;
use mbr_workbench::exact::rational::fmt_q;
use mbr_workbench::module::{equivalent_to_dual, fingerprint, submodules_of_degree, FiniteModule};
use mbr_workbench::pencils::{classify_pencil, Pencil};
use mbr_workbench::tensor::{choose_alpha, e_space, Dir};
use mbr_workbench::triplealg::{coordinate_modules, one_one_one_algebra};

#[derive(Parser)]
#[command(name = "mbr", version, about = "Minimal border rank tensor workbench")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized subroutines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker thread cap.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect catalog entries.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Recompute the invariants of an entry.
    Invariants { name: String },
    /// The E-space of a 1_A-generic entry.
    Espace { name: String },
    /// The 111-algebra of an entry.
    One11 { name: String },
    /// Fingerprints of the three coordinate modules.
    CoordModules { name: String },
    /// Dimension of the rank-bounded slice locus.
    Dinv {
        name: String,
        #[arg(long, default_value = "A")]
        dir: String,
        #[arg(long)]
        r: usize,
    },
    /// Submodules of a given degree over F_p.
    Submodules {
        name: String,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long)]
        deg: usize,
        /// Use the dual module.
        #[arg(long)]
        dual: bool,
    },
    /// Verify a degeneration family file.
    VerifyFamily { file: PathBuf },
    /// Verify all fixtures and certify every annotated non-edge.
    CheckDiagram {
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        m: usize,
    },
    /// Count classes up to permutation, up to isomorphism, and subspaces.
    Count {
        #[arg(long)]
        m: usize,
    },
    /// Classify a line of 2x2 or a pencil of 2x3 matrices.
    ClassifyPencil { file: PathBuf },
    /// Recompute every catalog expectation.
    SelfCheck {
        /// Skip self-duality decisions.
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value = "all")]
        filter: String,
    },
    Show {
        name: String,
    },
}

enum Outcome {
    Ok(Value, Vec<String>),
    /// Verification failed; the report is printed as JSON.
    Failed(Value),
}

enum CliError {
    Usage(String),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownEntry(_) | Error::Parse(_) => CliError::Usage(e.to_string()),
            e => CliError::Run(e),
        }
    }
}

type CliResult = Result<Outcome, CliError>;

fn default_fixtures() -> PathBuf {
    std::env::var_os("WORKBENCH_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn resolve_module(cat: &Catalog, name: &str) -> Result<FiniteModule, CliError> {
    // `M_{1,4}` also names the module of `T_{1,4}`
    match cat.named_module(name) {
        Err(Error::UnknownEntry(_)) if name.starts_with("M_") => {
            Ok(cat.named_module(&name.replacen("M_", "T_", 1))?)
        }
        r => Ok(r?),
    }
}

fn catalog_cmd(cat: &Catalog, cmd: CatalogCmd) -> CliResult {
    match cmd {
        CatalogCmd::List { m, filter } => {
            let filter = Filter::parse(&filter)?;
            let ms: Vec<usize> = m.map_or_else(|| vec![2, 3, 4, 5], |m| vec![m]);
            let names: Vec<String> = ms
                .iter()
                .flat_map(|&m| cat.list(m, filter))
                .map(|e| e.name.clone())
                .collect();
            Ok(Outcome::Ok(json!(names), names.clone()))
        }
        CatalogCmd::Show { name } => {
            let e = cat.get(&name)?;
            let mut lines = vec![
                format!("name: {}", e.name),
                format!("m: {}", e.m),
                format!("family: {:?}", e.family),
            ];
            lines.extend(e.form.to_string().lines().map(|l| format!("  {l}")));
            lines.push(format!("terms: {}", e.tensor.terms_string()));
            let v = json!({
                "name": e.name,
                "m": e.m,
                "family": e.family,
                "form": e.form.to_json(),
                "tensor": e.tensor.to_json(),
                "expect": e.expect,
            });
            Ok(Outcome::Ok(v, lines))
        }
    }
}

fn invariants(cat: &Catalog, name: &str, seed: u64) -> CliResult {
    let e = cat.get(name)?;
    let inv = entry_invariants(e, false)?;
    let self_dual = if inv.end_closed == Some(true) {
        equivalent_to_dual(&e.module()?, seed)?.as_bool()
    } else {
        None
    };
    let opt = |x: Option<bool>| x.map_or("n/a".to_string(), |b| b.to_string());
    let dirs: Vec<&str> = ["A", "B", "C"]
        .iter()
        .zip(inv.one_generic)
        .filter(|(_, g)| *g)
        .map(|(d, _)| *d)
        .collect();
    let lines = vec![
        format!("concise: {}", inv.concise),
        format!(
            "1-generic directions: {}",
            if dirs.is_empty() {
                "none".into()
            } else {
                dirs.join(" ")
            }
        ),
        format!("Strassen-commuting: {}", opt(inv.strassen)),
        format!("End-closed: {}", opt(inv.end_closed)),
        format!("stabilizer dimension: {}", inv.stabilizer_dim),
        format!("111-algebra dimension: {}", inv.sharp_dim),
        format!(
            "degrees: {}",
            inv.degrees
                .as_ref()
                .map_or("n/a".into(), |d| format!("{d:?}"))
        ),
        format!("self-dual: {}", opt(self_dual)),
    ];
    let mut v = serde_json::to_value(&inv).expect("invariants serialize");
    v["self_dual"] = json!(self_dual);
    v["seed"] = json!(seed);
    Ok(Outcome::Ok(v, lines))
}

fn espace(cat: &Catalog, name: &str) -> CliResult {
    let t = &cat.get(name)?.tensor;
    let alpha = choose_alpha(t)?;
    let es = e_space(t, &alpha)?;
    let alpha_s: Vec<String> = alpha.iter().map(fmt_q).collect();
    let mut lines = vec![format!("alpha: [{}]", alpha_s.join(", "))];
    let mut mats = Vec::new();
    for (i, x) in es.basis.iter().enumerate() {
        lines.push(format!("X{i}:"));
        lines.extend(x.to_string().lines().map(|l| format!("  {l}")));
        mats.push(
            x.to_rows()
                .iter()
                .map(|r| r.iter().map(fmt_q).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
    }
    Ok(Outcome::Ok(
        json!({ "alpha": alpha_s, "basis": mats }),
        lines,
    ))
}

fn one11(cat: &Catalog, name: &str) -> CliResult {
    let t = &cat.get(name)?.tensor;
    let a = one_one_one_algebra(t);
    let lines = vec![
        format!("dimension: {}", a.dim()),
        format!("sharp: {}", a.is_sharp()),
        format!("contains unit: {}", a.contains_unit),
        format!("closed: {}", a.is_closed()),
        format!("commutative: {}", a.is_commutative()),
    ];
    let v = json!({
        "m": a.m,
        "dimension": a.dim(),
        "sharp": a.is_sharp(),
        "contains_unit": a.contains_unit,
        "closed": a.is_closed(),
        "commutative": a.is_commutative(),
    });
    Ok(Outcome::Ok(v, lines))
}

fn coord_modules(cat: &Catalog, name: &str) -> CliResult {
    let t = &cat.get(name)?.tensor;
    let mods = coordinate_modules(t)?;
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for (d, m) in ["A", "B", "C"].iter().zip(&mods) {
        let fp = fingerprint(m)?;
        lines.push(format!(
            "{d}: degrees {:?}, End dim {}, self-dual {:?}",
            fp.degrees, fp.end_dim, fp.self_dual
        ));
        out.push(json!({ "direction": d, "module": m.to_json(), "fingerprint": fp }));
    }
    let fp = tensor_fingerprint(t)?;
    Ok(Outcome::Ok(
        json!({ "modules": out, "tensor_fingerprint": fp }),
        lines,
    ))
}

fn dinv(cat: &Catalog, name: &str, dir: &str, r: usize) -> CliResult {
    let dir = Dir::parse(dir).map_err(|e| CliError::Usage(e.to_string()))?;
    let rep = d_invariant(&cat.get(name)?.tensor, dir, r)?;
    let mut lines = vec![
        format!("dimension: {}", rep.dimension),
        format!("slope: {:.4}", rep.slope),
    ];
    lines.push(format!("residual: {:.4}", rep.residual));
    for (p, n) in &rep.counts {
        lines.push(format!("N_{p}: {n}"));
    }
    Ok(Outcome::Ok(
        serde_json::to_value(&rep).expect("report serializes"),
        lines,
    ))
}

fn submodules(cat: &Catalog, name: &str, p: u64, deg: usize, dual: bool) -> CliResult {
    let mut m = resolve_module(cat, name)?;
    if dual {
        m = m.dual();
    }
    let subs = submodules_of_degree(&m, p, deg)?;
    let mut lines = vec![format!("count: {}", subs.len())];
    for s in &subs {
        lines.push(format!(
            "generators {} cyclic {} ann-linear {} killed-by-m2 {}",
            s.min_generators, s.cyclic, s.ann_linear_dim, s.killed_by_m2
        ));
    }
    Ok(Outcome::Ok(
        json!({ "p": p, "degree": deg, "dual": dual, "submodules": subs }),
        lines,
    ))
}

fn verify(cat: &Catalog, file: &Path) -> CliResult {
    let v = read_json(file)?;
    let f = DegenerationFamily::from_json(&v).map_err(|e| CliError::Usage(e.to_string()))?;
    let rep = verify_family(&f, cat)?;
    let out = serde_json::to_value(&rep).expect("report serializes");
    if rep.pass {
        Ok(Outcome::Ok(
            out,
            vec![format!("{} -> {}: pass", rep.source, rep.target)],
        ))
    } else {
        Ok(Outcome::Failed(out))
    }
}

fn diagram(cat: &Catalog, fixtures: Option<PathBuf>, dot: Option<PathBuf>, m: usize) -> CliResult {
    let dir = fixtures.unwrap_or_else(default_fixtures);
    if !dir.is_dir() {
        return Err(CliError::Usage(format!(
            "fixture directory {} not found",
            dir.display()
        )));
    }
    let rep = check_diagram(cat, &dir)?;
    if let Some(path) = dot {
        std::fs::write(&path, to_dot(cat, &rep, m)?).map_err(|e| CliError::Run(e.into()))?;
    }
    let out = serde_json::to_value(&rep).expect("report serializes");
    if !rep.pass {
        return Ok(Outcome::Failed(out));
    }
    let verified = rep.edges.len() - rep.todo_edges().len();
    let mut lines = vec![
        format!("fixtures: {} verified", rep.fixtures.len()),
        format!(
            "edges: {verified} verified, {} pending fixtures",
            rep.todo_edges().len()
        ),
        format!("acyclic: {}", rep.acyclic),
        format!("non-edges certified: {}", rep.non_edges.len()),
        format!("m = 4 restriction matches: {}", rep.restriction_matches),
    ];
    for (m, n) in &rep.node_count {
        lines.push(format!("nodes at m = {m}: {n}"));
    }
    for n in &rep.non_edges {
        let kind = n
            .certificate
            .as_ref()
            .map(|c| c.kind.to_string())
            .unwrap_or_default();
        lines.push(format!("{} -/-> {}: {kind}", n.source, n.target));
    }
    Ok(Outcome::Ok(out, lines))
}

fn count(cat: &Catalog, m: usize) -> CliResult {
    if !(2..=5).contains(&m) {
        return Err(CliError::Usage(format!("no catalog data for m = {m}")));
    }
    let c = count_classes(cat, m)?;
    let lines = vec![
        format!(
            "{} / {} / {}",
            c.up_to_permutation, c.up_to_isomorphism, c.subspaces
        ),
        format!("up to permutation: {}", c.up_to_permutation),
        format!("up to isomorphism: {}", c.up_to_isomorphism),
        format!("subspaces: {}", c.subspaces),
    ];
    Ok(Outcome::Ok(
        serde_json::to_value(&c).expect("count serializes"),
        lines,
    ))
}

fn pencil(file: &Path) -> CliResult {
    let v = read_json(file)?;
    let p = Pencil::from_json(&v).map_err(|e| CliError::Usage(e.to_string()))?;
    let c = classify_pencil(&p);
    let lines = vec![
        format!("class: {:?}", c.label),
        format!("invariants: {:?}", c.invariants),
    ];
    Ok(Outcome::Ok(
        serde_json::to_value(&c).expect("class serializes"),
        lines,
    ))
}

fn self_check_cmd(cat: &Catalog, fast: bool, seed: u64) -> CliResult {
    let lines = self_check(cat, !fast)?;
    let bad: Vec<_> = lines.iter().filter(|l| !l.ok).collect();
    if !bad.is_empty() {
        return Ok(Outcome::Failed(json!({ "seed": seed, "failures": bad })));
    }
    let text = vec![format!("{} checks passed", lines.len())];
    Ok(Outcome::Ok(
        json!({ "seed": seed, "checks": lines.len(), "failures": [] }),
        text,
    ))
}

fn run(cli: Cli) -> CliResult {
    let cat = Catalog::builtin();
    match cli.cmd {
        Cmd::Catalog { cmd } => catalog_cmd(cat, cmd),
        Cmd::Invariants { name } => invariants(cat, &name, cli.seed),
        Cmd::Espace { name } => espace(cat, &name),
        Cmd::One11 { name } => one11(cat, &name),
        Cmd::CoordModules { name } => coord_modules(cat, &name),
        Cmd::Dinv { name, dir, r } => dinv(cat, &name, &dir, r),
        Cmd::Submodules { name, p, deg, dual } => submodules(cat, &name, p, deg, dual),
        Cmd::VerifyFamily { file } => verify(cat, &file),
        Cmd::CheckDiagram { fixtures, dot, m } => diagram(cat, fixtures, dot, m),
        Cmd::Count { m } => count(cat, m),
        Cmd::ClassifyPencil { file } => pencil(&file),
        Cmd::SelfCheck { fast } => self_check_cmd(cat, fast, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let json_out = cli.json;
    match run(cli) {
        Ok(Outcome::Ok(v, lines)) => {
            let mut out = std::io::stdout().lock();
            if json_out {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                for l in lines {
                    if writeln!(out, "{l}").is_err() {
                        break;
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(e)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "error": e.to_string() })).expect("json")
            );
            ExitCode::from(1)
        }
    }
}
