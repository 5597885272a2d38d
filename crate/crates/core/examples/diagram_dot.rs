//! Checks the whole diagram against the shipped fixtures and prints DOT.
use mbr_workbench::catalog::Catalog;
use mbr_workbench::degengraph::{check_diagram, to_dot};

fn main() -> mbr_workbench::Result<()> {
    let cat = Catalog::builtin();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let report = check_diagram(cat, &dir)?;
    eprintln!(
        "pass: {}, pending edges: {}",
        report.pass,
        report.todo_edges().len()
    );
    print!("{}", to_dot(cat, &report, 5)?);
    Ok(())
}
