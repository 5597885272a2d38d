//! Builds the shipped families and verifies them. With `--write <dir>` the
//! fixture files are (re)written there.
use mbr_workbench::catalog::Catalog;
use mbr_workbench::degengraph::diagram::{builtin_families, fixture_stem, write_fixtures};
use mbr_workbench::degengraph::verify_family;

fn main() -> mbr_workbench::Result<()> {
    let cat = Catalog::builtin();
    let args: Vec<String> = std::env::args().collect();
    if let Some(i) = args.iter().position(|a| a == "--write") {
        let dir = args.get(i + 1).map(String::as_str).unwrap_or("fixtures");
        let names = write_fixtures(cat, std::path::Path::new(dir))?;
        println!("wrote {} files to {dir}", names.len());
    }
    for f in builtin_families(cat)? {
        let r = verify_family(&f, cat)?;
        println!(
            "{:40} {}",
            fixture_stem(&f),
            if r.pass {
                "pass".into()
            } else {
                format!("{:?}", r.failure)
            }
        );
    }
    Ok(())
}
