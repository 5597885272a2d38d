//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every line is printed; exits non-zero when any criterion fails.

use std::path::Path;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mbr_workbench::catalog::{entry_invariants, tensor_fingerprint, Catalog};
use mbr_workbench::degengraph::certify::graded_fixture;
use mbr_workbench::degengraph::diagram::{annotation_kind, COLLISIONS};
use mbr_workbench::degengraph::dinv::d_invariant;
use mbr_workbench::degengraph::family::family_files;
use mbr_workbench::degengraph::{
    check_diagram, count_classes, verify_family, DegenerationFamily, ObstructionKind,
};
use mbr_workbench::exact::{q, symbolic_det, QMat, Q};
use mbr_workbench::module::{fingerprint_core, submodules_of_degree, FiniteModule};
use mbr_workbench::pencils::{canonical_pencil, classify_pencil, random_invertible, PencilLabel};
use mbr_workbench::tensor::{genericity_pattern, stabilizer_dimension, Dir, Tensor3};

type Check = Result<String, String>;

fn fixtures() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn ensure(ok: bool, pass: String, fail: String) -> Check {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn catalog_integrity(cat: &Catalog) -> Check {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut listed = 0;
    for name in cat.mbr_names(5) {
        let e = cat.get(&name).map_err(|e| e.to_string())?;
        if e.expect.generic_directions == 0 {
            continue;
        }
        listed += 1;
        let inv = entry_invariants(e, false).map_err(|e| e.to_string())?;
        let ok = inv.concise
            && inv.one_generic[0]
            && inv.strassen == Some(true)
            && inv.end_closed == Some(true);
        if !ok {
            bad.push(name);
        }
    }
    for name in ["T_{1,20}", "T_{2,9}"] {
        let inv = entry_invariants(cat.get(name).map_err(|e| e.to_string())?, false)
            .map_err(|e| e.to_string())?;
        if inv.strassen != Some(true) || inv.end_closed != Some(false) {
            bad.push(name.to_string());
        }
    }
    let t = start.elapsed();
    ensure(
        listed == 32 && bad.is_empty() && t < Duration::from_secs(10),
        format!("{listed} 1_A-generic classes concise/Strassen/End-closed, two Strassen-only exceptions, {t:.1?}"),
        format!("listed {listed}, failing {bad:?}, {t:.1?}"),
    )
}

fn sharpness(cat: &Catalog) -> Check {
    let mut bad = Vec::new();
    let mut n = 0;
    for m in 2..=5 {
        for name in cat.mbr_names(m) {
            n += 1;
            let t = &cat.get(&name).map_err(|e| e.to_string())?.tensor;
            let d = mbr_workbench::triplealg::one_one_one_algebra(t).dim();
            if d != m {
                bad.push(format!("{name}: {d}"));
            }
        }
    }
    ensure(
        bad.is_empty() && n == 54,
        format!("111-algebra dimension = m for all {n} classes"),
        format!("{bad:?}"),
    )
}

fn counting(cat: &Catalog) -> Check {
    let want = [
        (5, (37, 107, 48)),
        (4, (11, 21, 14)),
        (3, (4, 6, 5)),
        (2, (2, 2, 2)),
    ];
    let mut got = Vec::new();
    let mut ok = true;
    for (m, w) in want {
        let c = count_classes(cat, m).map_err(|e| e.to_string())?;
        let g = (c.up_to_permutation, c.up_to_isomorphism, c.subspaces);
        ok &= g == w;
        got.push(format!("m={m}: {}/{}/{}", g.0, g.1, g.2));
    }
    ensure(ok, got.join(", "), format!("got {}", got.join(", ")))
}

fn d_invariants(cat: &Catalog) -> Check {
    let cases: [(&str, usize, [usize; 3], bool); 4] = [
        ("T_{1,8}", 3, [4, 4, 4], false),
        ("T_{O55}", 3, [3, 3, 3], false),
        ("T_{2,6}", 2, [3, 1, 3], true),
        ("T_{O54}", 2, [2, 2, 2], true),
    ];
    let mut ok = true;
    let mut out = Vec::new();
    for (name, r, want, as_multiset) in cases {
        let start = Instant::now();
        let t = &cat.get(name).map_err(|e| e.to_string())?.tensor;
        let mut got = [0; 3];
        let mut residual: f64 = 0.0;
        for d in Dir::ALL {
            let rep = d_invariant(t, d, r).map_err(|e| format!("{name}: {e}"))?;
            got[d.index()] = rep.dimension;
            residual = residual.max(rep.residual);
        }
        let fine = if as_multiset {
            let (mut a, mut b) = (got, want);
            a.sort();
            b.sort();
            a == b
        } else {
            got == want
        };
        let t = start.elapsed();
        ok &= fine && residual < 0.2 && t < Duration::from_secs(60);
        out.push(format!(
            "{name} r={r}: {got:?} (want {want:?}, residual {residual:.3}, {t:.1?})"
        ));
    }
    ensure(ok, out.join("; "), out.join("; "))
}

fn coordinate_modules(cat: &Catalog) -> Check {
    let mut bad = Vec::new();
    for row in &cat.coordinate_table {
        let t = &cat.get(&row.tensor).map_err(|e| e.to_string())?.tensor;
        let mods = mbr_workbench::triplealg::coordinate_modules(t).map_err(|e| e.to_string())?;
        for (k, (m, name)) in mods.iter().zip(&row.modules).enumerate() {
            let own = fingerprint_core(m).map_err(|e| e.to_string())?;
            let reference = cat
                .get(name)
                .and_then(|e| e.module())
                .map_err(|e| e.to_string())?;
            let a = fingerprint_core(&reference).map_err(|e| e.to_string())?;
            let b = fingerprint_core(&reference.dual()).map_err(|e| e.to_string())?;
            if own != a && own != b {
                bad.push(format!("{} factor {k} vs {name}", row.tensor));
            }
        }
    }
    ensure(
        bad.is_empty() && cat.coordinate_table.len() == 5,
        "all five rows match up to duality".into(),
        format!("mismatches {bad:?}"),
    )
}

/// Two-dimensional submodules over Q of a module with one-dimensional socle
/// `<s>`: lines in the socle of `M/<s>`. Returns that socle's dimension.
fn socle_quotient_dim(m: &FiniteModule) -> Result<(usize, usize), String> {
    let n = m.dim();
    let stacked: Vec<Vec<Q>> = m.actions().iter().flat_map(|x| x.to_rows()).collect();
    let socle = QMat::from_rows(stacked).kernel();
    if socle.len() != 1 {
        return Ok((socle.len(), 0));
    }
    let s = &socle[0];
    let k = m.nvars();
    // unknowns (v, c_1..c_k) with x_i v = c_i s
    let mut rows = Vec::new();
    for (i, x) in m.actions().iter().enumerate() {
        for r in 0..n {
            let mut row: Vec<Q> = x.row(r);
            row.extend((0..k).map(|j| if j == i { -s[r].clone() } else { q(0) }));
            rows.push(row);
        }
    }
    let w = QMat::from_rows(rows).kernel().len();
    Ok((1, w - 1))
}

fn submodule_lemmas(cat: &Catalog) -> Check {
    let module = |n: &str| cat.named_module(n).map_err(|e| e.to_string());
    let m11d = module("T_{1,11}")?.dual();
    let m10 = module("T_{1,10}")?;
    let m19 = module("M_{19}")?;
    let m14d = module("T_{1,4}")?.dual();
    let mut out = Vec::new();
    let mut ok = true;
    for p in [5u64, 7] {
        let timed = |m: &FiniteModule, r: usize| {
            let start = Instant::now();
            submodules_of_degree(m, p, r)
                .map(|s| (s, start.elapsed()))
                .map_err(|e| e.to_string())
        };
        let (s, t) = timed(&m11d, 4)?;
        let a = s.iter().all(|x| x.cyclic);
        ok &= a && t < Duration::from_secs(5);
        out.push(format!(
            "F_{p}: M11^dual degree-4 cyclic {a} ({} subs)",
            s.len()
        ));
        let (s, t) = timed(&m10, 4)?;
        let b = s.iter().all(|x| x.min_generators <= 2);
        ok &= b && t < Duration::from_secs(5);
        out.push(format!("M10 <=2 generators {b}"));
        let (s, t) = timed(&m19, 4)?;
        let c = s.iter().all(|x| x.ann_linear_dim <= 1);
        ok &= c && t < Duration::from_secs(5);
        out.push(format!("M19 ann in linear forms <=1 {c}"));
        let (s, t) = timed(&m14d, 2)?;
        ok &= s.len() == 2 && t < Duration::from_secs(5);
        out.push(format!("M14^dual degree-2 submodules {} (want 2)", s.len()));
    }
    let (soc, lines) = socle_quotient_dim(&m14d)?;
    let over_q = if soc == 1 && lines >= 2 {
        "infinitely many".to_string()
    } else {
        format!("socle {soc}, quotient socle {lines}")
    };
    ok &= soc == 1 && lines == 1;
    out.push(format!("over Q: {over_q} (want 2)"));
    ensure(ok, out.join("; "), out.join("; "))
}

fn degenerations(cat: &Catalog) -> Check {
    let mut bad = Vec::new();
    for e in cat.entries() {
        let f = DegenerationFamily::identity(&e.name, e.m);
        if !verify_family(&f, cat).map_err(|e| e.to_string())?.pass {
            bad.push(format!("identity {}", e.name));
        }
    }
    let mut spine = Vec::new();
    let mut other = 0;
    for path in family_files(&fixtures()).map_err(|e| e.to_string())? {
        let f = DegenerationFamily::read(&path).map_err(|e| e.to_string())?;
        let r = verify_family(&f, cat).map_err(|e| e.to_string())?;
        if !r.pass {
            bad.push(path.display().to_string());
            continue;
        }
        if COLLISIONS
            .iter()
            .any(|(s, t, _)| *s == f.source && *t == f.target)
        {
            spine.push((f.source.clone(), f.target.clone()));
        } else if f.source != f.target {
            let src = &cat.get(&f.source).map_err(|e| e.to_string())?.tensor;
            let g = genericity_pattern(src).map_err(|e| e.to_string())?;
            if g.generic_count() < 2 {
                other += 1;
            }
        }
    }
    let required = [
        ("T_{5,1}", "T_{4,1}"),
        ("T_{4,1}", "T_{3,1}"),
        ("T_{4,1}", "T_{3,3}"),
        ("T_{3,1}", "T_{2,1}"),
        ("T_{3,1}", "T_{2,3}"),
        ("T_{3,3}", "T_{2,1}"),
        ("T_{3,3}", "T_{2,3}"),
        ("T_{2,1}", "T_{1,1}"),
        ("T_{2,3}", "T_{1,1}"),
    ];
    let missing: Vec<_> = required
        .iter()
        .filter(|(s, t)| !spine.iter().any(|(a, b)| a == s && b == t))
        .collect();
    ensure(
        bad.is_empty() && missing.is_empty() && spine.len() >= 8 && other >= 2,
        format!(
            "{} identities, {} collision families, {other} non-algebra families pass",
            cat.entries().len(),
            spine.len()
        ),
        format!("failures {bad:?}, missing spine {missing:?}, non-algebra {other}"),
    )
}

fn non_edges(cat: &Catalog) -> Check {
    let rep = check_diagram(cat, &fixtures()).map_err(|e| e.to_string())?;
    let uncertified: Vec<String> = rep
        .uncertified()
        .iter()
        .map(|n| format!("{}->{}", n.source, n.target))
        .collect();
    let mut graded = Vec::new();
    let mut graded_ok = true;
    for n in rep
        .non_edges
        .iter()
        .filter(|n| annotation_kind(n.annotation) == ObstructionKind::GradedLimitFixture)
    {
        let fx = graded_fixture(cat, &n.source, &n.target).map_err(|e| e.to_string())?;
        let twos = fx
            .degree_two_submodules
            .iter()
            .all(|&(_, c)| c == fx.claimed_submodules);
        graded_ok &= fx.target_hilbert == vec![3, 2] && twos;
        graded.push(format!(
            "{}->{}: gr {:?}, degree-2 submodules {:?}",
            n.source, n.target, fx.target_hilbert, fx.degree_two_submodules
        ));
    }
    let ok = uncertified.is_empty() && rep.conflicts.is_empty() && graded.len() == 2 && graded_ok;
    let line = format!(
        "{} non-edges, {} without matching certificate, {} edge conflicts; {}",
        rep.non_edges.len(),
        uncertified.len(),
        rep.conflicts.len(),
        graded.join("; ")
    );
    ensure(
        ok,
        line.clone(),
        format!("{line}; uncertified {uncertified:?}"),
    )
}

fn random_conjugate(t: &Tensor3, rng: &mut ChaCha8Rng) -> Tensor3 {
    let m = t.m();
    t.act(
        &random_invertible(m, 1, rng),
        &random_invertible(m, 1, rng),
        &random_invertible(m, 1, rng),
    )
}

fn properties(cat: &Catalog) -> Check {
    let mut bad = Vec::new();
    // dual involution
    for e in cat.entries() {
        if let Ok(m) = e.module() {
            if m.dual().dual() != m {
                bad.push(format!("dual {}", e.name));
            }
        }
    }
    // fingerprint invariance
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for e in cat.entries() {
        let fp = tensor_fingerprint(&e.tensor).map_err(|x| x.to_string())?;
        for _ in 0..50 {
            let u = random_conjugate(&e.tensor, &mut rng);
            if tensor_fingerprint(&u).map_err(|x| x.to_string())? != fp {
                bad.push(format!("fingerprint {}", e.name));
                break;
            }
        }
    }
    // pencil classes
    for label in PencilLabel::PENCILS {
        let p = canonical_pencil(label);
        for _ in 0..50 {
            let g = random_invertible(2, 3, &mut rng);
            let h = random_invertible(3, 3, &mut rng);
            let c = p.conjugate(&g, &h).map_err(|x| x.to_string())?;
            if classify_pencil(&c).label != label {
                bad.push(format!("pencil {label:?}"));
                break;
            }
        }
    }
    // symbolic determinant
    use rand::Rng;
    for e in cat.entries() {
        let det = symbolic_det(&e.tensor.slices(Dir::A), e.m).map_err(|x| x.to_string())?;
        for _ in 0..100 {
            let pt: Vec<Q> = (0..e.m).map(|_| q(rng.gen_range(-9..=9))).collect();
            if det.eval(&pt) != e.tensor.contract(Dir::A, &pt).det() {
                bad.push(format!("det {}", e.name));
                break;
            }
        }
    }
    // stabilizer along verified edges
    let mut edges = 0;
    for path in family_files(&fixtures()).map_err(|e| e.to_string())? {
        let f = DegenerationFamily::read(&path).map_err(|e| e.to_string())?;
        if f.source == f.target || !verify_family(&f, cat).map_err(|e| e.to_string())?.pass {
            continue;
        }
        edges += 1;
        let s = stabilizer_dimension(&cat.get(&f.source).map_err(|e| e.to_string())?.tensor);
        let t = stabilizer_dimension(&cat.get(&f.target).map_err(|e| e.to_string())?.tensor);
        if t <= s {
            bad.push(format!("stabilizer {} -> {}", f.source, f.target));
        }
    }
    ensure(
        bad.is_empty(),
        format!("dual involution, 50 conjugates per entry, 50 per pencil class, 100 det points, {edges} verified edges"),
        format!("{bad:?}"),
    )
}

fn main() {
    let cat = Catalog::builtin();
    let criteria: [(&str, fn(&Catalog) -> Check); 9] = [
        ("catalog integrity", catalog_integrity),
        ("111-sharpness", sharpness),
        ("counting", counting),
        ("d-invariants", d_invariants),
        ("coordinate modules", coordinate_modules),
        ("submodule lemmas", submodule_lemmas),
        ("degeneration verification", degenerations),
        ("non-edge certification", non_edges),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f(cat);
        let t = start.elapsed();
        match r {
            Ok(msg) => println!("criterion {} {name}: PASS ({t:.1?}) {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({t:.1?}) {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
