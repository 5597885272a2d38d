//! Class counts for m = 2..5 with per-class contributions at m = 4.
use mbr_workbench::catalog::Catalog;
use mbr_workbench::degengraph::count::class_contributions;
use mbr_workbench::degengraph::count_classes;

fn main() -> mbr_workbench::Result<()> {
    let cat = Catalog::builtin();
    for m in 2..=5 {
        let c = count_classes(cat, m)?;
        println!(
            "m = {m}: {} / {} / {}",
            c.up_to_permutation, c.up_to_isomorphism, c.subspaces
        );
    }
    for c in class_contributions(cat, 4)? {
        println!(
            "{}: {} isomorphism classes, {} subspaces",
            c.name, c.isomorphism_classes, c.subspaces
        );
    }
    Ok(())
}
