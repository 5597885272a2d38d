//! Certificates that one catalog tensor does not degenerate to another.
//!
//! Every stage compares an upper semicontinuous invariant: along a
//! degeneration `T ⊵ T'` the invariant of `T'` is at least that of `T`.
//! A stage applies only when it is violated for every factor permutation of
//! the source.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;
use serde_json::json;

use super::dinv::d_invariant;
use crate::catalog::Catalog;
use crate::error::Result;
use crate::exact::fp::{reduce_q, FpMat};
use crate::exact::{QMat, Subspace, Q};
use crate::module::{
    end_and_hom, fingerprint_core, from_espace, local_invariants, multiplication_tensor,
    submodules_of_degree, support_decomposition, FiniteModule,
};
use crate::tensor::{
    choose_alpha, e_space, genericity_pattern, is_one_generic, stabilizer_dimension, Dir,
    GenericityPattern, Perm, Tensor3,
};
use crate::triplealg::coordinate_modules;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    Stabilizer,
    GenericityPattern,
    PartCount,
    MinGenerators,
    Submodule,
    DInvariant,
    CoordinateModules,
    GradedLimitFixture,
}

impl std::fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        write!(f, "{}", s.as_str().unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonEdgeCertificate {
    pub source: String,
    pub target: String,
    pub kind: ObstructionKind,
    pub evidence: serde_json::Value,
}

/// Primes for the submodule and zero-product stages, tried in order.
pub const SUBMODULE_PRIMES: [u64; 2] = [5, 7];

/// Pairs settled by the associated-graded argument instead of an invariant.
pub const GRADED_FIXTURE_PAIRS: [(&str, &str); 2] =
    [("T_{1,4}", "T_{1,12}"), ("T_{1,5}", "T_{1,13}")];

fn tensor_module(t: &Tensor3) -> Result<FiniteModule> {
    from_espace(&e_space(t, &choose_alpha(t)?)?)
}

/// Modules of the 1_A-generic permutations of `t`, without repeats.
fn case_modules(t: &Tensor3) -> Result<Vec<(Perm, FiniteModule)>> {
    let mut out: Vec<(Perm, FiniteModule)> = Vec::new();
    for s in Perm::all() {
        let u = t.permute(s);
        if !is_one_generic(&u, Dir::A)? {
            continue;
        }
        let m = tensor_module(&u)?;
        if !out.iter().any(|(_, x)| *x == m) {
            out.push((s, m));
        }
    }
    Ok(out)
}

/// `t` permuted so that it is 1_A-generic, if it is 1-generic at all.
fn rotate_generic(t: &Tensor3) -> Result<Option<Tensor3>> {
    for s in Perm::all() {
        let u = t.permute(s);
        if is_one_generic(&u, Dir::A)? {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Whether `fine` can be grouped into parts summing to `coarse`.
pub fn is_coarsening(fine: &[usize], coarse: &[usize]) -> bool {
    fn rec(rest: &mut Vec<usize>, remaining: &mut [usize]) -> bool {
        let Some(x) = rest.pop() else {
            return remaining.iter().all(|&r| r == 0);
        };
        for i in 0..remaining.len() {
            if remaining[i] >= x {
                remaining[i] -= x;
                if rec(rest, remaining) {
                    remaining[i] += x;
                    rest.push(x);
                    return true;
                }
                remaining[i] += x;
            }
        }
        rest.push(x);
        false
    }
    if fine.iter().sum::<usize>() != coarse.iter().sum::<usize>() {
        return false;
    }
    // largest parts are placed first
    let mut rest: Vec<usize> = fine.to_vec();
    rest.sort_unstable();
    let mut remaining = coarse.to_vec();
    rec(&mut rest, &mut remaining)
}

fn pattern_leq(a: &GenericityPattern, b: &GenericityPattern) -> bool {
    a.one_generic
        .iter()
        .zip(&b.one_generic)
        .all(|(x, y)| !x || *y)
}

// ---------------------------------------------------------------- modules

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
struct PieceData {
    dim: usize,
    min_generators: usize,
    socle: usize,
}

fn pieces(m: &FiniteModule) -> Result<Vec<PieceData>> {
    let sd = support_decomposition(m)?;
    sd.pieces
        .iter()
        .map(|p| {
            let li = local_invariants(&p.local)?;
            Ok(PieceData {
                dim: li.dim,
                min_generators: li.min_generators,
                socle: li.socle_dim,
            })
        })
        .collect()
}

/// Minimal generators and socle: along a degeneration both can only grow,
/// piecewise when no support points collide and as a maximum otherwise.
fn min_generator_obstruction(
    src: &FiniteModule,
    tgt: &FiniteModule,
) -> Result<Option<serde_json::Value>> {
    let a = pieces(src)?;
    let b = pieces(tgt)?;
    let mut da: Vec<usize> = a.iter().map(|p| p.dim).collect();
    let mut db: Vec<usize> = b.iter().map(|p| p.dim).collect();
    da.sort_unstable();
    db.sort_unstable();
    let blocked = if da == db {
        // no degree-preserving matching with gens and socle growing
        !crate::module::permutations(b.len()).iter().any(|perm| {
            a.iter().zip(perm).all(|(x, &j)| {
                let y = &b[j];
                y.dim == x.dim && y.min_generators >= x.min_generators && y.socle >= x.socle
            })
        })
    } else {
        let mx = |v: &[PieceData], f: fn(&PieceData) -> usize| v.iter().map(f).max().unwrap_or(0);
        mx(&b, |p| p.min_generators) < mx(&a, |p| p.min_generators)
            || mx(&b, |p| p.socle) < mx(&a, |p| p.socle)
    };
    Ok(blocked.then(|| json!({"source_pieces": a, "target_pieces": b})))
}

/// Per submodule `N`: `(degree, generators, dim ann_E(N))`, where
/// generators are counted at the worst support point and `ann_E` is taken
/// in the span of the identity and the actions.
type Profile = (usize, usize, usize);

type ProfileKey = (Vec<Vec<String>>, u64);

fn profile_cache() -> &'static Mutex<HashMap<ProfileKey, Vec<Profile>>> {
    static C: std::sync::OnceLock<Mutex<HashMap<ProfileKey, Vec<Profile>>>> =
        std::sync::OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn module_key(m: &FiniteModule) -> Vec<Vec<String>> {
    m.actions()
        .iter()
        .map(|x| x.data().iter().map(|v| v.to_string()).collect())
        .collect()
}

/// Restricted actions on the row space of an echelon basis.
fn restrict_fp(x: &FpMat, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let p = x.p();
    let r = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&v| v != 0).unwrap())
        .collect();
    let mut out = vec![vec![0u64; r]; r];
    for (j, v) in basis.iter().enumerate() {
        let w = x.mul_vec(v);
        for (k, &c) in pivots.iter().enumerate() {
            out[k][j] = w[c] % p;
        }
    }
    out
}

fn submodule_profiles(m: &FiniteModule, p: u64) -> Result<Vec<Profile>> {
    let key = (module_key(m), p);
    if let Some(v) = profile_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let points: Vec<Vec<u64>> = support_decomposition(m)?
        .pieces
        .iter()
        .map(|pc| {
            pc.point
                .iter()
                .map(|x| reduce_q(x, p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let acts: Vec<FpMat> = m
        .actions()
        .iter()
        .map(|x| FpMat::from_qmat(x, p))
        .collect::<Result<_>>()?;
    let n = acts.len();
    let mut out = Vec::new();
    for r in 1..m.dim() {
        for s in submodules_of_degree(m, p, r)? {
            let ys: Vec<Vec<Vec<u64>>> = acts.iter().map(|x| restrict_fp(x, &s.basis)).collect();
            let mut gens = 0;
            for pt in &points {
                let mut img = FpMat::zeros(p, r, n * r);
                for (i, y) in ys.iter().enumerate() {
                    for a in 0..r {
                        for b in 0..r {
                            let v = (y[a][b] + if a == b { p - pt[i] } else { 0 }) % p;
                            img.set(a, i * r + b, v);
                        }
                    }
                }
                gens = gens.max(r - img.rank());
            }
            let mut lin = FpMat::zeros(p, r * r, n + 1);
            for a in 0..r {
                lin.set(a * r + a, 0, 1);
                for b in 0..r {
                    for (i, y) in ys.iter().enumerate() {
                        lin.set(a * r + b, i + 1, y[a][b]);
                    }
                }
            }
            out.push((r, gens, n + 1 - lin.rank()));
        }
    }
    out.sort_unstable();
    out.dedup();
    profile_cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// A source submodule profile that no target submodule dominates.
fn whole_submodule_obstruction(
    src: &FiniteModule,
    tgt: &FiniteModule,
) -> Result<Option<serde_json::Value>> {
    for p in SUBMODULE_PRIMES {
        for (label, a, b) in [
            ("module", src.clone(), tgt.clone()),
            ("dual", src.dual(), tgt.dual()),
        ] {
            let pa = submodule_profiles(&a, p)?;
            let pb = submodule_profiles(&b, p)?;
            if let Some(bad) = pa.iter().find(|(r, g, an)| {
                !pb.iter()
                    .any(|(r2, g2, an2)| r2 == r && g2 >= g && an2 >= an)
            }) {
                let same_degree: Vec<_> = pb.iter().filter(|x| x.0 == bad.0).collect();
                return Ok(Some(json!({
                    "test": "submodule-profile",
                    "prime": p,
                    "side": label,
                    "source_submodule": {"degree": bad.0, "generators": bad.1, "annihilator": bad.2},
                    "target_profiles": same_degree.iter().map(|x| json!([x.1, x.2])).collect::<Vec<_>>(),
                })));
            }
        }
    }
    Ok(None)
}

/// Submodule profiles, compared piece by piece when the degree multisets
/// agree (no support points collide, so each piece degenerates to a piece
/// of the same degree) and on the whole module otherwise.
fn submodule_obstruction(
    src: &FiniteModule,
    tgt: &FiniteModule,
) -> Result<Option<serde_json::Value>> {
    let a = support_decomposition(src)?;
    let b = support_decomposition(tgt)?;
    let (da, db) = (a.degrees(), b.degrees());
    if da != db || da.len() == 1 {
        return whole_submodule_obstruction(src, tgt);
    }
    let mut blocked_pairs: HashMap<(usize, usize), Option<serde_json::Value>> = HashMap::new();
    for i in 0..a.pieces.len() {
        for j in 0..b.pieces.len() {
            if a.pieces[i].local_dim() == b.pieces[j].local_dim() {
                let e = whole_submodule_obstruction(&a.pieces[i].local, &b.pieces[j].local)?;
                blocked_pairs.insert((i, j), e);
            }
        }
    }
    let mut witnesses = Vec::new();
    for perm in crate::module::permutations(b.pieces.len()) {
        let hit = perm
            .iter()
            .enumerate()
            .find_map(|(i, &j)| match blocked_pairs.get(&(i, j)) {
                None => Some(
                    json!({"piece_degrees": [a.pieces[i].local_dim(), b.pieces[j].local_dim()]}),
                ),
                Some(Some(e)) => {
                    Some(json!({"piece_degree": a.pieces[i].local_dim(), "evidence": e}))
                }
                Some(None) => None,
            });
        match hit {
            Some(h) => witnesses.push(h),
            None => return Ok(None),
        }
    }
    witnesses.dedup();
    Ok(Some(
        json!({"test": "piecewise-submodule-profile", "matchings": witnesses}),
    ))
}

/// Nilpotent elements of the span of the identity and the actions.
fn radical_basis(m: &FiniteModule) -> Result<Vec<QMat>> {
    let n = m.dim();
    let mut span: Vec<QMat> = vec![QMat::identity(n)];
    span.extend(m.actions().iter().cloned());
    let sd = support_decomposition(m)?;
    // e is nilpotent iff its trace on every generalized eigenspace vanishes
    let rows: Vec<Vec<Q>> = sd
        .pieces
        .iter()
        .map(|pc| {
            span.iter()
                .map(|x| crate::module::restrict_to(x, &pc.subspace).trace())
                .collect()
        })
        .collect();
    let cond = QMat::from_rows(rows);
    let mut basis = Vec::new();
    let indep = Subspace::span(span.len(), &cond.kernel());
    for v in indep.basis() {
        let mut e = QMat::zeros(n, n);
        for (c, x) in v.iter().zip(&span) {
            e = &e + &x.scale(c);
        }
        basis.push(e);
    }
    Ok(basis)
}

/// Largest `k` with a `k`-dimensional `V ⊆ rad(E)` such that `V·V = 0`, over `F_p`.
pub fn max_zero_product_subspace(m: &FiniteModule, p: u64) -> Result<usize> {
    let rad = radical_basis(m)?;
    let rad_fp: Vec<FpMat> = rad
        .iter()
        .map(|x| FpMat::from_qmat(x, p))
        .collect::<Result<_>>()?;
    let k = rad_fp.len();
    // products of basis elements, flattened
    let mut prod: Vec<Vec<Vec<u64>>> = vec![vec![vec![]; k]; k];
    for i in 0..k {
        for j in 0..k {
            let pm = rad_fp[i].mul(&rad_fp[j])?;
            prod[i][j] = (0..pm.rows()).flat_map(|a| pm.row(a)).collect();
        }
    }
    let zero_square = |coeffs: &[Vec<u64>]| -> bool {
        for u in coeffs {
            for v in coeffs {
                let len = prod[0][0].len();
                let mut acc = vec![0u64; len];
                for i in 0..k {
                    if u[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        if v[j] == 0 {
                            continue;
                        }
                        let c = u[i] * v[j] % p;
                        for (a, x) in acc.iter_mut().zip(&prod[i][j]) {
                            *a = (*a + c * x) % p;
                        }
                    }
                }
                if acc.iter().any(|&x| x != 0) {
                    return false;
                }
            }
        }
        true
    };
    let ambient = FiniteModule::new(k, vec![])?;
    let mut best = 0;
    for d in 1..=k {
        let found = if d == k {
            zero_square(
                &(0..k)
                    .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
                    .collect::<Vec<_>>(),
            )
        } else {
            submodules_of_degree(&ambient, p, d)?
                .iter()
                .any(|s| zero_square(&s.basis))
        };
        if found {
            best = d;
        }
    }
    Ok(best)
}

fn zero_product_obstruction(
    src: &FiniteModule,
    tgt: &FiniteModule,
) -> Result<Option<serde_json::Value>> {
    for p in SUBMODULE_PRIMES {
        let a = max_zero_product_subspace(src, p)?;
        let b = max_zero_product_subspace(tgt, p)?;
        if b < a {
            return Ok(Some(
                json!({"test": "zero-product-subspace", "prime": p, "source": a, "target": b}),
            ));
        }
    }
    Ok(None)
}

/// Any module-level obstruction to `src ⊵ tgt`, strongest evidence first.
pub fn module_obstruction(
    src: &FiniteModule,
    tgt: &FiniteModule,
) -> Result<Option<serde_json::Value>> {
    let da = support_decomposition(src)?.degrees();
    let db = support_decomposition(tgt)?.degrees();
    if !is_coarsening(&da, &db) {
        return Ok(Some(
            json!({"test": "part-count", "source": da, "target": db}),
        ));
    }
    let ea = end_and_hom(src, src)?.len();
    let eb = end_and_hom(tgt, tgt)?.len();
    if eb < ea {
        return Ok(Some(
            json!({"test": "end-dimension", "source": ea, "target": eb}),
        ));
    }
    let sa = stabilizer_dimension(&multiplication_tensor(src)?);
    let sb = stabilizer_dimension(&multiplication_tensor(tgt)?);
    if sb < sa {
        return Ok(Some(
            json!({"test": "module-stabilizer", "source": sa, "target": sb}),
        ));
    }
    if let Some(e) = min_generator_obstruction(src, tgt)? {
        return Ok(Some(json!({"test": "min-generators", "detail": e})));
    }
    if let Some(e) = min_generator_obstruction(&src.dual(), &tgt.dual())? {
        return Ok(Some(json!({"test": "min-generators-dual", "detail": e})));
    }
    submodule_obstruction(src, tgt)
}

// ---------------------------------------------------------------- stages

struct Pair<'a> {
    cat: &'a Catalog,
    source: &'a str,
    target: &'a str,
    s: &'a Tensor3,
    t: &'a Tensor3,
}

impl Pair<'_> {
    fn cert(&self, kind: ObstructionKind, evidence: serde_json::Value) -> NonEdgeCertificate {
        NonEdgeCertificate {
            source: self.source.into(),
            target: self.target.into(),
            kind,
            evidence,
        }
    }
}

fn stage_stabilizer(p: &Pair) -> Result<Option<NonEdgeCertificate>> {
    let a = stabilizer_dimension(p.s);
    let b = stabilizer_dimension(p.t);
    Ok((b <= a).then(|| {
        p.cert(
            ObstructionKind::Stabilizer,
            json!({"source": a, "target": b}),
        )
    }))
}

fn stage_genericity(p: &Pair) -> Result<Option<NonEdgeCertificate>> {
    let a = genericity_pattern(p.s)?;
    let b = genericity_pattern(p.t)?;
    let blocked = Perm::all()
        .iter()
        .all(|&s| !pattern_leq(&b, &a.permuted(s)));
    Ok(blocked.then(|| {
        p.cert(
            ObstructionKind::GenericityPattern,
            json!({"source": a.one_generic, "target": b.one_generic}),
        )
    }))
}

fn degrees_of(t: &Tensor3) -> Result<Option<Vec<usize>>> {
    match rotate_generic(t)? {
        Some(u) => Ok(Some(support_decomposition(&tensor_module(&u)?)?.degrees())),
        None => Ok(None),
    }
}

fn stage_part_count(p: &Pair) -> Result<Option<NonEdgeCertificate>> {
    let (Some(a), Some(b)) = (degrees_of(p.s)?, degrees_of(p.t)?) else {
        return Ok(None);
    };
    Ok((!is_coarsening(&a, &b)).then(|| {
        p.cert(
            ObstructionKind::PartCount,
            json!({"source": a, "target": b}),
        )
    }))
}

/// Runs `test` on every case module against the target module; applies
/// when every case is blocked.
fn all_cases(
    p: &Pair,
    test: impl Fn(&FiniteModule, &FiniteModule) -> Result<Option<serde_json::Value>>,
) -> Result<Option<serde_json::Value>> {
    let Some(tt) = rotate_generic(p.t)? else {
        return Ok(None);
    };
    let target = tensor_module(&tt)?;
    let cases = case_modules(p.s)?;
    if cases.is_empty() {
        return Ok(None);
    }
    let mut evidence = Vec::new();
    for (sigma, m) in &cases {
        match test(m, &target)? {
            Some(e) => evidence.push(json!({"sigma": sigma.to_string(), "evidence": e})),
            None => return Ok(None),
        }
    }
    Ok(Some(json!({"cases": evidence})))
}

fn stage_min_generators(p: &Pair) -> Result<Option<NonEdgeCertificate>> {
    let test = |a: &FiniteModule, b: &FiniteModule| -> Result<Option<serde_json::Value>> {
        if let Some(e) = min_generator_obstruction(a, b)? {
            return Ok(Some(e));
        }
        min_generator_obstruction(&a.dual(), &b.dual())
    };
    Ok(all_cases(p, test)?.map(|e| p.cert(ObstructionKind::MinGenerators, e)))
}

fn stage_submodule(p: &Pair) -> Result<Option<NonEdgeCertificate>> {
    let test = |a: &FiniteModule, b: &FiniteModule| -> Result<Option<serde_json::Value>> {
        if let Some(e) = submodule_obstruction(a, b)? {
            return Ok(Some(e));
        }
        zero_product_obstruction(a, b)
    };
    Ok(all_cases(p, test)?.map(|e| p.cert(ObstructionKind::Submodule, e)))
}

/// `d[dir][r]` for `r = 1..m-1`; `None` where the fit is unstable.
fn d_table(t: &Tensor3) -> Vec<Vec<Option<usize>>> {
    Dir::ALL
        .iter()
        .map(|&d| {
            (0..t.m())
                .map(|r| {
                    if r == 0 {
                        None
                    } else {
                        d_invariant(t, d, r).ok().map(|x| x.dimension)
                    }
                })
                .collect()
        })
        .collect()
}

fn stage_d_invariant(p: &Pair) -> Result<Option<NonEdgeCertificate>> {
    let a = d_table(p.s);
    let b = d_table(p.t);
    let mut per_sigma = Vec::new();
    for s in Perm::all() {
        let mut hit = None;
        'search: for r in 1..p.s.m() {
            for k in 0..3 {
                if let (Some(x), Some(y)) = (a[s.0[k]][r], b[k][r]) {
                    if y < x {
                        hit = Some(
                            json!({"sigma": s.to_string(), "direction": Dir::from_index(k), "rank_at_most": r, "source": x, "target": y}),
                        );
                        break 'search;
                    }
                }
            }
        }
        match hit {
            Some(h) => per_sigma.push(h),
            None => return Ok(None),
        }
    }
    Ok(Some(p.cert(
        ObstructionKind::DInvariant,
        json!({"cases": per_sigma}),
    )))
}

/// Whether `(src, tgt)` matches, up to fingerprint and duality, the modules
/// of a graded fixture pair `(G, H)`. A module degeneration `src ⊵ tgt`
/// would give `μ_src ⊵ μ_tgt`, i.e. `G ⊵ H` up to a factor permutation.
fn graded_module_pair(
    cat: &Catalog,
    src: &FiniteModule,
    tgt: &FiniteModule,
) -> Result<Option<(&'static str, &'static str)>> {
    let fa = fingerprint_core(src)?;
    let fb = fingerprint_core(tgt)?;
    for (g, h) in GRADED_FIXTURE_PAIRS {
        let mg = cat.get(g)?.module()?;
        let mh = cat.get(h)?.module()?;
        let src_ok = fa == fingerprint_core(&mg)? || fa == fingerprint_core(&mg.dual())?;
        let tgt_ok = fb == fingerprint_core(&mh)? || fb == fingerprint_core(&mh.dual())?;
        if src_ok && tgt_ok {
            return Ok(Some((g, h)));
        }
    }
    Ok(None)
}

fn stage_coordinate_modules(p: &Pair) -> Result<Option<NonEdgeCertificate>> {
    if !genericity_pattern(p.t)?.is_one_degenerate() {
        return Ok(None);
    }
    let tgt = coordinate_modules(p.t)?;
    let mut per_sigma = Vec::new();
    let mut seen: BTreeMap<Vec<Vec<Vec<String>>>, serde_json::Value> = BTreeMap::new();
    for s in Perm::all() {
        let src = coordinate_modules(&p.s.permute(s))?;
        let key: Vec<_> = src.iter().map(module_key).collect();
        if let Some(e) = seen.get(&key) {
            per_sigma.push(json!({"sigma": s.to_string(), "same_as": e}));
            continue;
        }
        let mut hit = None;
        for k in 0..3 {
            if let Some(e) = module_obstruction(&src[k], &tgt[k])? {
                hit = Some(json!({"factor": Dir::from_index(k), "evidence": e}));
                break;
            }
        }
        if hit.is_none() {
            for k in 0..3 {
                if let Some((g, h)) = graded_module_pair(p.cat, &src[k], &tgt[k])? {
                    let fx = graded_fixture(p.cat, g, h)?;
                    hit = Some(
                        json!({"factor": Dir::from_index(k), "evidence": {"test": "graded-fixture", "fixture": fx}}),
                    );
                    break;
                }
            }
        }
        match hit {
            Some(h) => {
                seen.insert(key, json!(s.to_string()));
                per_sigma.push(json!({"sigma": s.to_string(), "obstruction": h}));
            }
            None => return Ok(None),
        }
    }
    Ok(Some(p.cert(
        ObstructionKind::CoordinateModules,
        json!({"cases": per_sigma}),
    )))
}

/// Evidence for the associated-graded argument on `(source, target)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedFixture {
    pub source: String,
    pub target: String,
    /// Hilbert function of the target module.
    pub target_hilbert: Vec<usize>,
    /// Number of degree-two submodules of the dual source module, per prime.
    pub degree_two_submodules: Vec<(u64, usize)>,
    /// Number of those containing `m·M`, i.e. giving a filtration with
    /// Hilbert function `(3, 2)`.
    pub admissible: Vec<(u64, usize)>,
    /// The count the argument relies on.
    pub claimed_submodules: usize,
    pub consistent: bool,
}

pub fn graded_fixture(cat: &Catalog, source: &str, target: &str) -> Result<GradedFixture> {
    let src = cat.get(source)?.module()?.dual();
    let tgt = cat.get(target)?.module()?;
    let target_hilbert = local_invariants(&tgt)?.hilbert;
    let mm = src.max_ideal_times(&src.whole());
    let mut counts = Vec::new();
    let mut admissible = Vec::new();
    for p in SUBMODULE_PRIMES {
        let subs = submodules_of_degree(&src, p, 2)?;
        counts.push((p, subs.len()));
        let mm_fp: Vec<Vec<u64>> = mm
            .basis()
            .iter()
            .map(|v| v.iter().map(|x| reduce_q(x, p)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let adm = subs
            .iter()
            .filter(|s| {
                let mut rows = s.basis.clone();
                rows.extend(mm_fp.iter().cloned());
                FpMat::from_rows(p, &rows).rank() == s.basis.len()
            })
            .count();
        admissible.push((p, adm));
    }
    let claimed = 2;
    let consistent = counts.iter().all(|&(_, c)| c == claimed);
    Ok(GradedFixture {
        source: source.into(),
        target: target.into(),
        target_hilbert,
        degree_two_submodules: counts,
        admissible,
        claimed_submodules: claimed,
        consistent,
    })
}

fn stage_graded(p: &Pair) -> Result<Option<NonEdgeCertificate>> {
    if !GRADED_FIXTURE_PAIRS
        .iter()
        .any(|(a, b)| *a == p.source && *b == p.target)
    {
        return Ok(None);
    }
    let fx = graded_fixture(p.cat, p.source, p.target)?;
    Ok(Some(p.cert(
        ObstructionKind::GradedLimitFixture,
        serde_json::to_value(fx).unwrap(),
    )))
}

type Stage = fn(&Pair) -> Result<Option<NonEdgeCertificate>>;

fn stage_for(kind: ObstructionKind) -> Stage {
    match kind {
        ObstructionKind::Stabilizer => stage_stabilizer,
        ObstructionKind::GenericityPattern => stage_genericity,
        ObstructionKind::PartCount => stage_part_count,
        ObstructionKind::MinGenerators => stage_min_generators,
        ObstructionKind::Submodule => stage_submodule,
        ObstructionKind::DInvariant => stage_d_invariant,
        ObstructionKind::CoordinateModules => stage_coordinate_modules,
        ObstructionKind::GradedLimitFixture => stage_graded,
    }
}

/// Stage order of [`certify_non_edge`].
pub const STAGE_ORDER: [ObstructionKind; 8] = [
    ObstructionKind::Stabilizer,
    ObstructionKind::GenericityPattern,
    ObstructionKind::PartCount,
    ObstructionKind::MinGenerators,
    ObstructionKind::Submodule,
    ObstructionKind::DInvariant,
    ObstructionKind::CoordinateModules,
    ObstructionKind::GradedLimitFixture,
];

/// Tries the stages in order and returns the first certificate, or `None`
/// when no implemented obstruction applies.
pub fn certify_non_edge(
    cat: &Catalog,
    source: &str,
    target: &str,
) -> Result<Option<NonEdgeCertificate>> {
    certify_with(cat, source, target, &STAGE_ORDER)
}

/// Runs only the stage of the given kind.
pub fn certify_as(
    cat: &Catalog,
    source: &str,
    target: &str,
    kind: ObstructionKind,
) -> Result<Option<NonEdgeCertificate>> {
    certify_with(cat, source, target, &[kind])
}

/// Cheap stages only: stabilizer, genericity pattern and part count.
pub fn quick_obstruction(
    cat: &Catalog,
    source: &str,
    target: &str,
) -> Result<Option<NonEdgeCertificate>> {
    certify_with(
        cat,
        source,
        target,
        &[
            ObstructionKind::Stabilizer,
            ObstructionKind::GenericityPattern,
            ObstructionKind::PartCount,
        ],
    )
}

fn certify_with(
    cat: &Catalog,
    source: &str,
    target: &str,
    kinds: &[ObstructionKind],
) -> Result<Option<NonEdgeCertificate>> {
    let s = &cat.get(source)?.tensor;
    let t = &cat.get(target)?.tensor;
    let p = Pair {
        cat,
        source,
        target,
        s,
        t,
    };
    for &k in kinds {
        if let Some(c) = stage_for(k)(&p)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
