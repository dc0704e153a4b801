//! Primitive idempotents of FT(G): both formulas, the species table, and
//! the ring identities they satisfy.
//!
//! Run with: cargo run -p pperm --example idempotents

use pperm::catalog;
use pperm::ppring::TRing;

fn main() -> pperm::Result<()> {
    let g = catalog::by_name("S3")?;
    let ring = TRing::new(&g, 3)?;
    println!(
        "FT(S3) at p = 3: {} pair classes, working modulus {}",
        ring.pairs().len(),
        ring.modulus()
    );

    // the symbol expansion of one idempotent
    let c3t = ring
        .pairs()
        .iter()
        .find(|a| a.p_subgroup().order() == 3 && a.elem_order() == 2)
        .unwrap()
        .clone();
    let f = ring.idempotent(&c3t)?;
    println!("\nF at (C3, t) expands into {} monomial symbols:", f.terms().unwrap().len());
    println!("  {}", f);

    // species table: rows are idempotents, columns the pair classes
    println!("\nspecies table (delta-duality):");
    for a in ring.pairs() {
        let f = ring.idempotent(a)?;
        let row: Vec<String> = f.species().values.iter().map(|v| v.to_string()).collect();
        println!("  F(|P|={}, ord s={}) -> [{}]", a.p_subgroup().order(), a.elem_order(), row.join(", "));
    }

    // the two displayed formulas produce the same elements
    for a in ring.pairs() {
        assert_eq!(ring.idempotent(a)?, ring.idempotent_v2(a)?);
    }
    println!("\nboth idempotent formulas agree on all pair classes");

    // completeness and orthogonality
    let mut total = ring.zero();
    for a in ring.pairs() {
        total = total.add(&ring.idempotent(a)?);
    }
    assert_eq!(total, ring.trivial_module());
    println!("sum of all idempotents = [k] (all-ones species)");

    let f0 = ring.idempotent(&ring.pairs()[0].clone())?;
    let f1 = ring.idempotent(&ring.pairs()[1].clone())?;
    assert!(f0.mul(&f1).is_zero());
    println!("orthogonality: F_0 * F_1 = 0");
    Ok(())
}
