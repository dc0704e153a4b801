//! Block decomposition by reduced-pair labels, and the dimension table of
//! simple evaluations across the catalog.
//!
//! Run with: cargo run -p pperm --example decompose

use pperm::catalog;
use pperm::functor::{functor_decomposition, simple_dim, SimpleLabel};
use pperm::ppring::TRing;

fn main() -> pperm::Result<()> {
    let p = 2u64;
    let names = ["C1", "C2", "C3", "C4", "C2xC2", "S3", "D8", "Q8", "A4", "S4"];
    let rings: Vec<_> = names
        .iter()
        .map(|n| TRing::new(&catalog::by_name(n).unwrap(), p).unwrap())
        .collect();

    // collect the labels arising anywhere in this universe
    let mut labels: Vec<SimpleLabel> = Vec::new();
    for ring in &rings {
        for (label, _) in functor_decomposition(ring)?.blocks {
            let mut known = false;
            for l in &labels {
                if l.matches(&label)? {
                    known = true;
                    break;
                }
            }
            if !known {
                labels.push(label);
            }
        }
    }
    labels.sort_by_key(|l| l.span_order());

    println!("dim of each simple evaluation at p = {}:", p);
    print!("{:<26}", "label \\ group");
    for n in names {
        print!("{:>6}", n);
    }
    println!();
    for label in &labels {
        print!("{:<26}", label.to_string());
        for ring in &rings {
            print!("{:>6}", simple_dim(label, ring)?);
        }
        println!();
    }

    // column sums recover the pair class counts
    println!("\npair class counts per group:");
    for (n, ring) in names.iter().zip(&rings) {
        let dec = functor_decomposition(ring)?;
        let total: usize = dec.blocks.iter().map(|(_, b)| b.len()).sum();
        println!("  {:<6} {:>2} (= dim FT(G))", n, total);
    }
    Ok(())
}
