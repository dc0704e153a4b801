//! Pair classes (P, s) of a group at a prime: enumeration up to conjugacy,
//! D-Delta recognition, reductions, and twisted diagonal pairs in products.
//!
//! Run with: cargo run -p pperm --example enumerate_pairs

use pperm::catalog;
use pperm::pairs::{
    enumerate_diagonal_pairs, enumerate_pairs, is_ddelta, pairs_isomorphic, reduce_pair,
};

fn main() -> pperm::Result<()> {
    for (name, p) in [("S3", 3u64), ("S4", 2), ("C3:C4", 3)] {
        let g = catalog::by_name(name)?;
        let pairs = enumerate_pairs(&g, p)?;
        println!("{} at p = {}: {} pair classes", name, p, pairs.len());
        for (i, a) in pairs.iter().enumerate() {
            let red = reduce_pair(a)?;
            println!(
                "  [{:>2}] |P|={:>2} ord(s)={:>2} |<Ps>|={:>3} ddelta={:<5} reduces to |span|={}",
                i,
                a.p_subgroup().order(),
                a.elem_order(),
                a.span().order(),
                is_ddelta(a),
                red.span().order()
            );
        }
    }

    // pair isomorphism across different ambient groups
    let s3 = catalog::by_name("S3")?;
    let c6 = catalog::by_name("C6")?;
    let a = enumerate_pairs(&s3, 3)?
        .into_iter()
        .find(|a| a.p_subgroup().is_trivial() && a.elem_order() == 2)
        .unwrap();
    let b = enumerate_pairs(&c6, 3)?
        .into_iter()
        .find(|b| b.p_subgroup().is_trivial() && b.elem_order() == 2)
        .unwrap();
    println!(
        "\n(1, order-2) in S3 isomorphic to (1, order-2) in C6: {}",
        pairs_isomorphic(&a, &b)?
    );

    // twisted diagonal pairs of S3 x S3
    let dps = enumerate_diagonal_pairs(&s3, &s3, 3)?;
    println!("\nS3 x S3 at p = 3: {} diagonal pair classes", dps.len());
    for (i, dp) in dps.iter().enumerate() {
        println!(
            "  [{}] |Q| = {}, t = ({}, {}), |<Qt>| = {}",
            i,
            dp.pair().p_subgroup().order(),
            dp.t_left(),
            dp.t_right(),
            dp.pair().span().order()
        );
    }
    Ok(())
}
