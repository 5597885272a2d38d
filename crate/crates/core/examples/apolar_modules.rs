//! Modules presented by dual generators.
use mbr_workbench::apolar::{module_from_dual_generators, DualElement};
use mbr_workbench::module::{local_invariants, module_flags};

fn main() -> mbr_workbench::Result<()> {
    let gens = [
        DualElement::parse(&["y1^2 + y2", "y4"], 4)?,
        DualElement::parse(&["y3", "0"], 4)?,
    ];
    let m = module_from_dual_generators(&gens, 4)?;
    let li = local_invariants(&m)?;
    println!("degree {}", m.dim());
    println!("concise, End-closed: {:?}", module_flags(&m));
    println!(
        "Hilbert function {:?}, generators {}, socle {}",
        li.hilbert, li.min_generators, li.socle_dim
    );
    Ok(())
}
