//! Essential-algebra invariants across the catalog: which groups carry a
//! nonzero essential algebra, with witness pairs and dimensions.
//!
//! Run with: cargo run -p pperm --example essential

use pperm::catalog;
use pperm::functor::essential_report;

fn main() -> pperm::Result<()> {
    for p in [2u64, 3] {
        println!("essential algebras at p = {}:", p);
        for (name, g) in catalog::catalog_with_names(24) {
            let rep = essential_report(&g, p)?;
            if rep.nonzero {
                let w = rep.witness.as_ref().unwrap();
                println!(
                    "  {:6} nonzero: witness |P| = {:>2}, ord(s) = {}, dim = phi({}) * |Out| = {}",
                    name,
                    w.p_subgroup().order(),
                    w.elem_order(),
                    rep.n,
                    rep.dimension
                );
            } else {
                println!("  {:6} zero", name);
            }
        }
        println!();
    }
    Ok(())
}
