//! Module fingerprints, self-duality and submodule enumeration.
use mbr_workbench::catalog::Catalog;
use mbr_workbench::module::{equivalent_to_dual, fingerprint, submodules_of_degree};

fn main() -> mbr_workbench::Result<()> {
    let cat = Catalog::builtin();
    for name in ["T_{1,4}", "T_{1,11}", "T_{2,3}"] {
        let m = cat.get(name)?.module()?;
        let fp = fingerprint(&m)?;
        println!(
            "{name}: degrees {:?}, End dim {}, self-dual {:?}",
            fp.degrees, fp.end_dim, fp.self_dual
        );
        println!("  witness: {:?}", equivalent_to_dual(&m, 0)?);
    }
    let dual = cat.get("T_{1,4}")?.module()?.dual();
    for p in [5, 7] {
        let subs = submodules_of_degree(&dual, p, 2)?;
        println!(
            "degree-2 submodules of the dual module of T_{{1,4}} over F_{p}: {}",
            subs.len()
        );
    }
    Ok(())
}
