//! Composing a twisted diagonal idempotent of H x G with an idempotent of
//! FT(G): the support conditions and two fully evaluated cases.
//!
//! Run with: cargo run -p pperm --example compose

use pperm::catalog;
use pperm::functor::{compose_idempotents, ComposeSupport};
use pperm::pairs::{enumerate_diagonal_pairs, enumerate_pairs};
use pperm::ppring::TRing;

fn run_product(name: &str, p: u64) -> pperm::Result<()> {
    let g = catalog::by_name(name)?;
    let dps = enumerate_diagonal_pairs(&g, &g, p)?;
    let product = dps[0].product().clone();
    let h_ring = TRing::new(&product.left, p)?;
    let full_span: Vec<_> = enumerate_pairs(&product.right, p)?
        .into_iter()
        .filter(|a| a.span().order() == product.right.order())
        .collect();
    println!(
        "{} x {} at p = {}: {} diagonal pairs, {} full-span pairs of G",
        name,
        name,
        p,
        dps.len(),
        full_span.len()
    );
    for (i, dq) in dps.iter().enumerate() {
        for a in &full_span {
            let out = compose_idempotents(dq, a, &h_ring)?;
            match out.support {
                ComposeSupport::Evaluated { j } => {
                    let row: Vec<String> = out
                        .element
                        .species()
                        .values
                        .iter()
                        .map(|v| v.to_string())
                        .collect();
                    println!(
                        "  dq[{}] (|Q|={}) * F at {}: t = (u, s^{}), species [{}]",
                        i,
                        dq.pair().p_subgroup().order(),
                        a,
                        j,
                        row.join(", ")
                    );
                }
                ComposeSupport::SecondProjectionNotFull { order } => {
                    println!(
                        "  dq[{}] (|Q|={}) * F at {}: 0 (p_2 span has order {})",
                        i,
                        dq.pair().p_subgroup().order(),
                        a,
                        order
                    );
                }
                ComposeSupport::NoNormalForm => {
                    println!("  dq[{}]: 0 (no normal form)", i);
                }
            }
        }
    }
    println!();
    Ok(())
}

fn main() -> pperm::Result<()> {
    run_product("C2", 2)?;
    run_product("S3", 3)?;
    Ok(())
}
