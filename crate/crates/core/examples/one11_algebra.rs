//! The 111-algebra of every class at m = 5, and coordinate modules of a
//! 1-degenerate tensor.
use mbr_workbench::catalog::Catalog;
use mbr_workbench::module::fingerprint_core;
use mbr_workbench::triplealg::{coordinate_modules, one_one_one_algebra};

fn main() -> mbr_workbench::Result<()> {
    let cat = Catalog::builtin();
    for name in cat.mbr_names(5) {
        let a = one_one_one_algebra(&cat.get(&name)?.tensor);
        println!(
            "{name}: dim {} sharp {} commutative {}",
            a.dim(),
            a.is_sharp(),
            a.is_commutative()
        );
    }
    for (d, m) in ["A", "B", "C"]
        .iter()
        .zip(coordinate_modules(&cat.get("T_{O57}")?.tensor)?)
    {
        let fp = fingerprint_core(&m)?;
        println!(
            "T_{{O57}} coordinate module {d}: degrees {:?} End dim {}",
            fp.degrees, fp.end_dim
        );
    }
    Ok(())
}
