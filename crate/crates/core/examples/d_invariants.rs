//! Rank-locus dimensions from point counts.
use mbr_workbench::catalog::Catalog;
use mbr_workbench::degengraph::dinv::d_invariant;
use mbr_workbench::tensor::Dir;

fn main() -> mbr_workbench::Result<()> {
    let cat = Catalog::builtin();
    for name in ["T_{1,8}", "T_{O55}"] {
        let t = &cat.get(name)?.tensor;
        for r in 1..5 {
            let mut dims = Vec::new();
            for d in Dir::ALL {
                let rep = d_invariant(t, d, r)?;
                dims.push(rep.dimension);
            }
            println!("{name} rank <= {r}: {dims:?}");
        }
    }
    Ok(())
}
