//! Lists the catalog and recomputes its stored expectations.
use mbr_workbench::catalog::{self_check, Catalog, Filter};

fn main() -> mbr_workbench::Result<()> {
    let cat = Catalog::builtin();
    for m in 2..=5 {
        println!("m = {m}: {}", cat.mbr_names(m).join(" "));
    }
    let odd: Vec<_> = cat
        .list(5, Filter::NotEndClosed)
        .iter()
        .map(|e| e.name.clone())
        .collect();
    println!("Strassen-commuting but not End-closed: {odd:?}");
    let lines = self_check(cat, false)?;
    let bad = lines.iter().filter(|l| !l.ok).count();
    println!("{} checks, {bad} failures", lines.len());
    Ok(())
}
