use super::*;
use crate::exact::{q, QMat};

fn o56() -> MatrixForm {
    MatrixForm::parse_rows(
        5,
        &[
            &["x0", "0", "x1", "x2", "x4"],
            &["0", "x0", "0", "x3", "x4"],
            &["0", "0", "x0", "0", "0"],
            &["0", "0", "0", "x0", "0"],
            &["0", "0", "0", "x4", "0"],
        ],
    )
    .unwrap()
}

fn example_four() -> Tensor3 {
    // a1(b1c1+..+b4c4) + a2b1c2 + a3(b1c3 + b3c4) + a4b1c4, 0-based
    let mut terms: Vec<(usize, usize, usize, Q)> = (0..4).map(|i| (0, i, i, q(1))).collect();
    terms.extend([
        (1, 0, 1, q(1)),
        (2, 0, 2, q(1)),
        (2, 2, 3, q(1)),
        (3, 0, 3, q(1)),
    ]);
    Tensor3::from_terms(4, &terms)
}

#[test]
fn matrix_form_expansion() {
    let t = o56().to_tensor();
    assert_eq!(
        t.terms_string(),
        "a1b1c1 + a1b2c2 + a1b3c3 + a1b4c4 + a2b1c3 + a3b1c4 + a4b2c4 + a5b1c5 + a5b2c5 + a5b5c4"
    );
    assert_eq!(t.terms().len(), 10);
    assert!(MatrixForm::parse_rows(3, &[&[], &[], &[]])
        .unwrap()
        .to_tensor()
        .is_zero());
}

#[test]
fn example_four_matrix_form() {
    let f = MatrixForm::parse_rows(
        4,
        &[
            &["x0", "x1", "x2", "x3"],
            &["0", "x0"],
            &["0", "0", "x0", "x2"],
            &["0", "0", "0", "x0"],
        ],
    )
    .unwrap();
    assert_eq!(f.to_tensor(), example_four());
    assert_eq!(MatrixForm::from_tensor(&example_four()), f);
}

#[test]
fn json_round_trip() {
    let f = MatrixForm::parse_rows(2, &[&["x0 - 1/2*x1", "0"], &["3*x1", "x0"]]).unwrap();
    let back = MatrixForm::from_json(&f.to_json()).unwrap();
    assert_eq!(back, f);
    let t = f.to_tensor();
    assert_eq!(Tensor3::from_json(&t.to_json()).unwrap(), t);
    assert_eq!(
        t.to_json().to_string(),
        Tensor3::from_json(&t.to_json())
            .unwrap()
            .to_json()
            .to_string()
    );
}

#[test]
fn slices_of_unit_and_single_term() {
    let u = Tensor3::unit(3);
    for (i, s) in u.slices(Dir::A).iter().enumerate() {
        assert_eq!(s, &QMat::unit(3, 3, i, i));
    }
    let t = Tensor3::from_terms(3, &[(0, 1, 2, q(1))]);
    assert_eq!(t.slices(Dir::B)[1], QMat::unit(3, 3, 0, 2));
    for d in Dir::ALL {
        assert_eq!(Tensor3::from_slices(d, &t.slices(d)), t);
    }
}

#[test]
fn unit_tensor_pattern() {
    let g = genericity_pattern(&Tensor3::unit(4)).unwrap();
    assert_eq!(g.concise, [true; 3]);
    assert_eq!(g.one_generic, [true; 3]);
}

#[test]
fn o56_is_one_degenerate() {
    let g = genericity_pattern(&o56().to_tensor()).unwrap();
    assert!(g.is_concise());
    assert!(g.is_one_degenerate());
    assert!(matches!(
        choose_alpha(&o56().to_tensor()),
        Err(Error::NoAlpha)
    ));
}

#[test]
fn perm_group_law() {
    let t = example_four();
    for s in Perm::all() {
        for r in Perm::all() {
            assert_eq!(t.permute(s).permute(r), t.permute(s.then(r)));
        }
        assert_eq!(t.permute(s).permute(s.inverse()), t);
    }
    let acb = Perm::parse("ACB").unwrap();
    assert_eq!(acb.to_string(), "ACB");
    assert_eq!(t.permute(acb).permute(acb), t);
    assert!(Perm::parse("AAB").is_err());
}

#[test]
fn transform_identity_is_noop_and_rejects_singular() {
    let t = example_four();
    let i = QMat::identity(4);
    assert_eq!(transform_tensor(&t, &i, &i, &i, Perm::ID).unwrap(), t);
    let z = QMat::zeros(4, 4);
    assert!(matches!(
        transform_tensor(&t, &z, &i, &i, Perm::ID),
        Err(Error::Singular(_))
    ));
}

#[test]
fn example_four_espace() {
    let t = example_four();
    let alpha = choose_alpha(&t).unwrap();
    assert_eq!(alpha, vec![q(1), q(0), q(0), q(0)]);
    let e = e_space(&t, &alpha).unwrap();
    // with (b, c) slices the matrices are the transposes of the row-c/column-b picture
    let expect = [
        QMat::identity(4),
        QMat::unit(4, 4, 0, 1),
        &QMat::unit(4, 4, 0, 2) + &QMat::unit(4, 4, 2, 3),
        QMat::unit(4, 4, 0, 3),
    ];
    assert_eq!(e.basis, expect.to_vec());
    assert_eq!(strassen_and_end_closed(&e), (true, true));
    let g = genericity_pattern(&t).unwrap();
    assert_eq!(g.one_generic, [true, true, false]);
}

#[test]
fn espace_rebases_identity_first() {
    // T_A(a_1^*) singular, T_A(a_2^*) = identity
    let t = Tensor3::from_slices(Dir::A, &[QMat::unit(2, 2, 1, 0), QMat::identity(2)]);
    let a = choose_alpha(&t).unwrap();
    assert_eq!(a, vec![q(0), q(1)]);
    let e = e_space(&t, &a).unwrap();
    assert_eq!(e.basis, vec![QMat::identity(2), QMat::unit(2, 2, 1, 0)]);
}

#[test]
fn espace_span_independent_of_alpha() {
    let t = example_four();
    let e1 = e_space(&t, &[q(1), q(0), q(0), q(0)]).unwrap();
    let e2 = e_space(&t, &[q(1), q(2), q(-1), q(3)]).unwrap();
    assert!(e1.span().equals(&e2.span()));
}

#[test]
fn stabilizer_of_unit_tensor() {
    assert_eq!(stabilizer_dimension(&Tensor3::unit(2)), 4);
    assert_eq!(stabilizer_dimension(&Tensor3::unit(3)), 6);
}

#[test]
fn linear_form_parsing() {
    let f = LinearForm::parse("x0 + x4 - 1/2*x3", 5).unwrap();
    assert_eq!(f.0, vec![q(1), q(0), q(0), crate::exact::qf(-1, 2), q(1)]);
    assert_eq!(f.to_string(), "x0 - 1/2*x3 + x4");
    assert_eq!(LinearForm::parse("-x1", 2).unwrap().0, vec![q(0), q(-1)]);
    assert!(LinearForm::parse("x7", 5).is_err());
}
