//! A tensor from its matrix form, its genericity pattern, E-space and module.
use mbr_workbench::module::{from_espace, module_flags};
use mbr_workbench::tensor::{
    choose_alpha, e_space, genericity_pattern, stabilizer_dimension, MatrixForm, Tensor3,
};

fn main() -> mbr_workbench::Result<()> {
    let form = MatrixForm::parse_rows(
        4,
        &[
            &["x0", "x1", "x2", "x3"],
            &["0", "x0"],
            &["0", "0", "x0", "x2"],
            &["0", "0", "0", "x0"],
        ],
    )?;
    let t: Tensor3 = form.to_tensor();
    println!("{form}");
    println!("terms: {}", t.terms_string());
    let pat = genericity_pattern(&t)?;
    println!("concise {:?}, 1-generic {:?}", pat.concise, pat.one_generic);
    println!("stabilizer dimension: {}", stabilizer_dimension(&t));
    let es = e_space(&t, &choose_alpha(&t)?)?;
    for x in &es.basis {
        println!("{x}");
    }
    let module = from_espace(&es)?;
    println!("concise, End-closed: {:?}", module_flags(&module));
    Ok(())
}
