use super::*;

#[test]
fn class_numbers_per_size() {
    let cat = Catalog::builtin();
    let counts: Vec<usize> = [2, 3, 4, 5]
        .iter()
        .map(|&m| cat.mbr_names(m).len())
        .collect();
    assert_eq!(counts, vec![2, 4, 11, 37]);
}

#[test]
fn names_unique_and_references_resolve() {
    let cat = Catalog::builtin();
    let names: BTreeSet<&str> = cat.entries().iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names.len(), cat.entries().len());
    for m in [4, 5] {
        for (a, b) in cat.edges(m) {
            assert!(cat.get(a).is_ok() && cat.get(b).is_ok(), "{a} -> {b}");
        }
    }
    for n in &cat.non_edges {
        assert!(cat.get(&n.source).is_ok() && cat.get(&n.target).is_ok());
    }
    for r in &cat.coordinate_table {
        assert!(cat.get(&r.tensor).is_ok());
    }
    assert!(matches!(cat.get("T_{9,9}"), Err(Error::UnknownEntry(_))));
}

#[test]
fn edges_and_non_edges_disjoint() {
    let cat = Catalog::builtin();
    let edges: BTreeSet<_> = cat.edges(5).iter().cloned().collect();
    assert_eq!(edges.len(), 66);
    for n in &cat.non_edges {
        assert!(!edges.contains(&(n.source.clone(), n.target.clone())));
    }
    assert!(is_acyclic(cat.edges(5)) && is_acyclic(cat.edges(4)));
}

#[test]
fn acyclicity_detects_cycles() {
    let e = |a: &str, b: &str| (a.to_string(), b.to_string());
    assert!(is_acyclic(&[e("a", "b"), e("b", "c"), e("a", "c")]));
    assert!(!is_acyclic(&[e("a", "b"), e("b", "c"), e("c", "a")]));
}

#[test]
fn json_reload_matches_embedded() {
    let cat = Catalog::from_json_str(EMBEDDED).unwrap();
    let builtin = Catalog::builtin();
    assert_eq!(cat.entries().len(), builtin.entries().len());
    for (a, b) in cat.entries().iter().zip(builtin.entries()) {
        assert_eq!(a.tensor, b.tensor);
        assert_eq!(a.expect, b.expect);
    }
    assert!(Catalog::from_json_str("{").is_err());
}

#[test]
fn filters() {
    let cat = Catalog::builtin();
    assert!(Filter::parse("nonsense").is_err());
    let not_closed: Vec<String> = cat
        .list(5, Filter::parse("not-end-closed").unwrap())
        .iter()
        .map(|e| e.name.clone())
        .collect();
    assert_eq!(not_closed, vec!["T_{1,20}", "T_{2,9}"]);
    let degenerate = cat.list(5, Filter::OneDegenerate).len();
    assert_eq!(degenerate, 5);
}

#[test]
fn stored_expectations_hold() {
    let cat = Catalog::builtin();
    let bad: Vec<CheckLine> = self_check(cat, false)
        .unwrap()
        .into_iter()
        .filter(|l| !l.ok)
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn transpose_form_is_involution() {
    for e in Catalog::builtin().entries() {
        assert_eq!(
            transpose_form(&transpose_form(&e.form)),
            e.form,
            "{}",
            e.name
        );
    }
}
