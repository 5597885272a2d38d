use super::certify::*;
use super::collision::{collision_family, slice_blocks};
use super::dinv::{d_invariant, rank_counts, DINV_PRIMES};
use super::family::*;
use super::torus::{find_torus_weights, torus_family, TorusWeights};
use crate::catalog::Catalog;
use crate::error::Error;
use crate::exact::{q, TPoly};
use crate::tensor::{Dir, Perm, Tensor3};

fn scalar(m: usize, p: TPoly) -> TMat {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { p.clone() } else { TPoly::zero() })
                .collect()
        })
        .collect()
}

#[test]
fn identity_passes() {
    let cat = Catalog::builtin();
    let f = DegenerationFamily::identity("T_{1,1}", 5);
    assert!(verify_family(&f, cat).unwrap().pass);
}

#[test]
fn scaled_family_fails_at_the_limit() {
    let cat = Catalog::builtin();
    let mut f = DegenerationFamily::identity("T_{1,1}", 5);
    f.target = "T_{1,2}".into();
    f.gc = scalar(5, TPoly::monomial(q(1), 1));
    let r = verify_family(&f, cat).unwrap();
    assert!(matches!(r.failure, Some(FamilyFailure::Limit { ref limit, .. }) if limit == "0"));
}

#[test]
fn singular_and_polar_families_fail() {
    let cat = Catalog::builtin();
    let mut f = DegenerationFamily::identity("T_{1,1}", 5);
    f.gb = scalar(5, TPoly::zero());
    assert!(matches!(
        verify_family(&f, cat).unwrap().failure,
        Some(FamilyFailure::Determinant { .. })
    ));
    let mut f = DegenerationFamily::identity("T_{1,1}", 5);
    f.ga = scalar(5, TPoly::monomial(q(1), -1));
    assert!(matches!(
        verify_family(&f, cat).unwrap().failure,
        Some(FamilyFailure::Valuation { .. })
    ));
    let mut f = DegenerationFamily::identity("T_{1,1}", 5);
    f.ga.pop();
    assert!(matches!(
        verify_family(&f, cat).unwrap().failure,
        Some(FamilyFailure::Shape { .. })
    ));
}

#[test]
fn family_json_round_trip() {
    let cat = Catalog::builtin();
    let f = collision_family(
        "T_{5,1}",
        &cat.get("T_{5,1}").unwrap().tensor,
        "T_{4,1}",
        &cat.get("T_{4,1}").unwrap().tensor,
        &[vec![0, 1], vec![2], vec![3], vec![4]],
    )
    .unwrap();
    let back = DegenerationFamily::from_json(&f.to_json()).unwrap();
    assert_eq!(back, f);
    assert!(DegenerationFamily::from_json(&serde_json::json!({"source": "T_{1,1}"})).is_err());
}

#[test]
fn reparametrization_keeps_the_verdict() {
    let cat = Catalog::builtin();
    for (s, t, merge) in [
        ("T_{4,1}", "T_{3,3}", vec![vec![0], vec![1, 2], vec![3]]),
        ("T_{2,3}", "T_{1,1}", vec![vec![0, 1]]),
    ] {
        let f = collision_family(
            s,
            &cat.get(s).unwrap().tensor,
            t,
            &cat.get(t).unwrap().tensor,
            &merge,
        )
        .unwrap();
        for c in [q(2), q(-3), crate::exact::qf(1, 7)] {
            assert!(verify_family(&f.reparametrize(&c), cat).unwrap().pass);
        }
    }
}

#[test]
fn blocks_of_split_tensors() {
    let cat = Catalog::builtin();
    assert_eq!(slice_blocks(&cat.get("T_{5,1}").unwrap().tensor).len(), 5);
    assert_eq!(
        slice_blocks(&cat.get("T_{1,1}").unwrap().tensor),
        vec![vec![0, 1, 2, 3, 4]]
    );
    let b = slice_blocks(&cat.get("T_{3,3}").unwrap().tensor);
    assert_eq!(b.iter().map(|x| x.len()).collect::<Vec<_>>(), vec![2, 2, 1]);
}

#[test]
fn bad_merges_rejected() {
    let cat = Catalog::builtin();
    let s = &cat.get("T_{5,1}").unwrap().tensor;
    let t = &cat.get("T_{4,1}").unwrap().tensor;
    let e = collision_family(
        "T_{5,1}",
        s,
        "T_{4,1}",
        t,
        &[vec![0, 1, 2], vec![3], vec![4]],
    );
    assert!(matches!(e, Err(Error::UnsupportedMerge(_))));
    let e = collision_family(
        "T_{5,1}",
        s,
        "T_{4,1}",
        t,
        &[vec![0], vec![1, 2], vec![3], vec![4]],
    );
    assert!(matches!(e, Err(Error::UnsupportedMerge(_))));
    // T_{1,2} is not a polynomial in a single shift
    let u = &cat.get("T_{1,2}").unwrap().tensor;
    assert!(matches!(
        collision_family("T_{5,1}", s, "T_{1,2}", u, &[vec![0, 1, 2, 3, 4]]),
        Err(Error::UnsupportedMerge(_))
    ));
}

#[test]
fn torus_family_on_a_subtensor() {
    let cat = Catalog::builtin();
    let s = &cat.get("T_{O58}").unwrap().tensor;
    let t = &cat.get("T_{O57}").unwrap().tensor;
    let w = find_torus_weights(s, t).unwrap();
    assert!(verify_family_tensors(&torus_family("T_{O58}", "T_{O57}", Perm::ID, &w), s, t).pass);
    assert!(find_torus_weights(t, s).is_none());
    let zero = TorusWeights {
        a: vec![0; 5],
        b: vec![0; 5],
        c: vec![0; 5],
    };
    assert!(
        !verify_family_tensors(&torus_family("T_{O58}", "T_{O57}", Perm::ID, &zero), s, t).pass
    );
}

#[test]
fn unit_tensor_rank_loci() {
    // rank of sum a_i E_ii is the number of nonzero a_i
    let u = Tensor3::unit(3);
    let (good, bad) = rank_counts(&u, Dir::A);
    assert!(bad.is_empty());
    for (p, cum) in good {
        assert_eq!(cum[0], 1);
        assert_eq!(cum[1], 1 + 3 * (p - 1));
        assert_eq!(cum[2], p.pow(3) - (p - 1).pow(3));
        assert_eq!(cum[3], p.pow(3));
    }
    for r in 0..=3 {
        assert_eq!(d_invariant(&u, Dir::B, r).unwrap().dimension, r);
    }
    assert!(matches!(
        d_invariant(&u, Dir::A, 4),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn bad_primes_are_skipped() {
    let mut t = Tensor3::unit(2);
    t.set(0, 1, 1, crate::exact::qf(1, 5));
    let rep = d_invariant(&t, Dir::A, 2).unwrap();
    assert_eq!(rep.skipped_primes, vec![5]);
    assert_eq!(rep.counts.len(), DINV_PRIMES.len() - 1);
    assert_eq!(rep.dimension, 2);
}

#[test]
fn first_certificates() {
    let cat = Catalog::builtin();
    let kind = |s: &str, t: &str| certify_non_edge(cat, s, t).unwrap().map(|c| c.kind);
    assert_eq!(kind("T_{2,3}", "T_{2,2}"), Some(ObstructionKind::PartCount));
    assert_eq!(
        kind("T_{1,1}", "T_{5,1}"),
        Some(ObstructionKind::Stabilizer)
    );
    let c = certify_as(cat, "T_{1,8}", "T_{O55}", ObstructionKind::DInvariant)
        .unwrap()
        .unwrap();
    assert_eq!(c.kind, ObstructionKind::DInvariant);
    let c = certify_as(cat, "T_{2,2}", "T_{1,4}", ObstructionKind::Submodule)
        .unwrap()
        .unwrap();
    assert!(c.evidence.to_string().contains("zero-product-subspace"));
}

#[test]
fn coarsening() {
    assert!(is_coarsening(&[3, 1, 1], &[4, 1]));
    assert!(is_coarsening(&[2, 2, 1], &[5]));
    assert!(!is_coarsening(&[4, 1], &[3, 2]));
    assert!(!is_coarsening(&[3, 2], &[3, 1, 1]));
}

#[test]
fn graded_fixture_recount() {
    let cat = Catalog::builtin();
    let g = graded_fixture(cat, "T_{1,4}", "T_{1,12}").unwrap();
    assert_eq!(g.target_hilbert, vec![3, 2]);
    assert_eq!(g.degree_two_submodules, vec![(5, 6), (7, 8)]);
    assert!(!g.consistent);
}
