//! Certificates for the annotated non-edges, first in fixed stage order.
use mbr_workbench::catalog::Catalog;
use mbr_workbench::degengraph::certify_non_edge;

fn main() -> mbr_workbench::Result<()> {
    let cat = Catalog::builtin();
    for n in &cat.non_edges {
        let kind = certify_non_edge(cat, &n.source, &n.target)?
            .map_or("unresolved".to_string(), |c| c.kind.to_string());
        println!(
            "{} -/-> {}: annotated {:?}, first certificate {kind}",
            n.source, n.target, n.annotation
        );
    }
    Ok(())
}
