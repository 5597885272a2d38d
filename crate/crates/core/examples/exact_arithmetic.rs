//! Rational and F_p linear algebra, and the symbolic determinant of a pencil.
use mbr_workbench::catalog::Catalog;
use mbr_workbench::exact::rational::fmt_q;
use mbr_workbench::exact::{q, reduce_mod_p, symbolic_det, QMat};
use mbr_workbench::tensor::Dir;

fn main() -> mbr_workbench::Result<()> {
    let a = QMat::from_i64(&[&[2, 4, 1], &[1, 2, 0], &[3, 6, 1]]);
    println!("rank over Q: {}", a.rank());
    let kernel: Vec<Vec<String>> = a
        .kernel()
        .iter()
        .map(|v| v.iter().map(fmt_q).collect())
        .collect();
    println!("kernel: {kernel:?}");
    for p in [5, 7] {
        println!("rank over F_{p}: {}", reduce_mod_p(&a, p)?.rank());
    }
    let t = &Catalog::builtin().get("T_{1,1}")?.tensor;
    let det = symbolic_det(&t.slices(Dir::A), 5)?;
    println!("det of the T_{{1,1}} pencil: {det}");
    println!(
        "at (1,2,0,0,0): {}",
        det.eval(&[q(1), q(2), q(0), q(0), q(0)])
    );
    Ok(())
}
