use proptest::prelude::*;

use mbr_workbench::catalog::{tensor_fingerprint, Catalog};
use mbr_workbench::degengraph::collision::collision_family;
use mbr_workbench::degengraph::diagram::COLLISIONS;
use mbr_workbench::degengraph::dinv::rank_counts;
use mbr_workbench::degengraph::family::family_files;
use mbr_workbench::degengraph::{verify_family, DegenerationFamily};
use mbr_workbench::exact::{q, qf, reduce_mod_p, symbolic_det, QMat, Q};
use mbr_workbench::module::{fingerprint_core, FiniteModule};
use mbr_workbench::tensor::{stabilizer_dimension, Dir, Perm, Tensor3};

fn small_matrix(n: usize) -> impl Strategy<Value = QMat> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| QMat::from_fn(n, n, |i, j| q(v[i * n + j])))
}

fn invertible(n: usize) -> impl Strategy<Value = QMat> {
    small_matrix(n).prop_filter("singular", |g| g.det() != q(0))
}

/// Strictly lower triangular nilpotent `x` and the module generated by its powers.
fn cyclic_module(n: usize) -> impl Strategy<Value = FiniteModule> {
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        let x = QMat::from_fn(n, n, |i, j| if i > j { q(v[i * n + j]) } else { q(0) });
        let x2 = &x * &x;
        FiniteModule::new(n, vec![x, x2]).unwrap()
    })
}

fn conjugate(m: &FiniteModule, g: &QMat) -> FiniteModule {
    let gi = g.inverse().unwrap();
    FiniteModule::new(
        m.dim(),
        m.actions().iter().map(|x| &(g * x) * &gi).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dual_is_an_involution(m in cyclic_module(4)) {
        prop_assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn module_fingerprint_is_a_conjugation_invariant(idx in 0usize..37, g in invertible(5)) {
        let cat = Catalog::builtin();
        let m = cat.get(&cat.mbr_names(5)[idx]).unwrap().module();
        prop_assume!(m.is_ok());
        let m = m.unwrap();
        prop_assert_eq!(fingerprint_core(&m).unwrap(), fingerprint_core(&conjugate(&m, &g)).unwrap());
    }

    #[test]
    fn symbolic_det_matches_numeric(
        coeffs in prop::collection::vec(-3i64..=3, 27),
        pt in prop::collection::vec(-5i64..=5, 3),
    ) {
        let terms: Vec<_> = coeffs.iter().enumerate().map(|(i, &c)| (i / 9, (i / 3) % 3, i % 3, q(c))).collect();
        let t = Tensor3::from_terms(3, &terms);
        let det = symbolic_det(&t.slices(Dir::A), 3).unwrap();
        let pt: Vec<Q> = pt.into_iter().map(q).collect();
        prop_assert_eq!(det.eval(&pt), t.contract(Dir::A, &pt).det());
    }

    #[test]
    fn rank_drops_only_modulo_p(a in small_matrix(5), p in prop::sample::select(vec![5u64, 7, 11])) {
        prop_assert!(reduce_mod_p(&a, p).unwrap().rank() <= a.rank());
    }

    #[test]
    fn tensor_json_round_trip(
        coeffs in prop::collection::vec((-4i64..=4, 1i64..=3), 8),
    ) {
        let terms: Vec<_> = coeffs.iter().enumerate().map(|(i, &(n, d))| (i / 4, (i / 2) % 2, i % 2, qf(n, d))).collect();
        let t = Tensor3::from_terms(2, &terms);
        prop_assert_eq!(Tensor3::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn stabilizer_is_a_permutation_invariant(idx in 0usize..37, s in 0usize..6) {
        let cat = Catalog::builtin();
        let name = &cat.mbr_names(5)[idx];
        let t = &cat.get(name).unwrap().tensor;
        prop_assert_eq!(stabilizer_dimension(t), stabilizer_dimension(&t.permute(Perm::all()[s])));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tensor_fingerprint_invariance(idx in 0usize..37, ga in invertible(5), gb in invertible(5), gc in invertible(5)) {
        let cat = Catalog::builtin();
        let name = &cat.mbr_names(5)[idx];
        let t = &cat.get(name).unwrap().tensor;
        prop_assert_eq!(tensor_fingerprint(t).unwrap(), tensor_fingerprint(&t.act(&ga, &gb, &gc)).unwrap());
    }

    #[test]
    fn reparametrized_collisions_still_verify(k in 0usize..10, c in (1i64..=9, 1i64..=9, any::<bool>())) {
        let cat = Catalog::builtin();
        let (s, t, merge) = COLLISIONS[k];
        let merge: Vec<Vec<usize>> = merge.iter().map(|g| g.to_vec()).collect();
        let f = collision_family(s, &cat.get(s).unwrap().tensor, t, &cat.get(t).unwrap().tensor, &merge).unwrap();
        let c = if c.2 { qf(c.0, c.1) } else { -qf(c.0, c.1) };
        prop_assert!(verify_family(&f.reparametrize(&c), cat).unwrap().pass);
    }
}

fn shipped() -> Vec<DegenerationFamily> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    family_files(&dir)
        .unwrap()
        .iter()
        .map(|p| DegenerationFamily::read(p).unwrap())
        .collect()
}

#[test]
fn counts_nondecreasing_in_p_and_r() {
    let cat = Catalog::builtin();
    for name in ["T_{1,8}", "T_{O55}", "T_{2,6}"] {
        let (good, _) = rank_counts(&cat.get(name).unwrap().tensor, Dir::A);
        for w in good.windows(2) {
            assert!(w[0].1.iter().zip(&w[1].1).all(|(a, b)| a <= b));
        }
        for (_, c) in &good {
            assert!(c.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn verified_edges_respect_semicontinuity() {
    use mbr_workbench::tensor::genericity_pattern;
    let cat = Catalog::builtin();
    for f in shipped() {
        if f.source == f.target {
            continue;
        }
        let s = &cat.get(&f.source).unwrap().tensor;
        let t = &cat.get(&f.target).unwrap().tensor;
        assert!(
            stabilizer_dimension(t) > stabilizer_dimension(s),
            "{} -> {}",
            f.source,
            f.target
        );
        let ps = genericity_pattern(&s.permute(f.sigma)).unwrap();
        let pt = genericity_pattern(t).unwrap();
        for k in 0..3 {
            assert!(
                !pt.one_generic[k] || ps.one_generic[k],
                "{} -> {}",
                f.source,
                f.target
            );
        }
    }
}
