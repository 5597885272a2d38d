//! Canonical pencils, their classification and the modules they induce.
use mbr_workbench::module::fingerprint_core;
use mbr_workbench::pencils::{canonical_pencil, classify_pencil, pencil_module, PencilLabel};

fn main() {
    for label in PencilLabel::PENCILS {
        let p = canonical_pencil(label);
        let c = classify_pencil(&p);
        print!("{label:?}: classified {:?}", c.label);
        match pencil_module(&p).and_then(|m| fingerprint_core(&m)) {
            Ok(fp) => println!(", module degrees {:?} End dim {}", fp.degrees, fp.end_dim),
            Err(e) => println!(", no module ({e})"),
        }
    }
}
