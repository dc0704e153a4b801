//! Exact cyclotomic arithmetic: power-basis numbers, cross-modulus lifting,
//! and cyclotomic polynomials.
//!
//! Run with: cargo run -p pperm --example cyclotomic

use pperm::cyclo::{cyclotomic_polynomial, rat, CycloNum};

fn main() -> pperm::Result<()> {
    let z3 = CycloNum::root_of_unity(3, 1);
    let z3sq = CycloNum::root_of_unity(3, 2);
    println!("zeta_3 + zeta_3^2 = {}", z3.add(&z3sq));

    let z4 = CycloNum::root_of_unity(4, 1);
    println!("zeta_4 * zeta_4 = {}", z4.mul(&z4));

    // values of mixed moduli lift to the lcm before operating
    let z6 = CycloNum::root_of_unity(6, 1);
    let mixed = z4.mul(&z6);
    println!("zeta_4 * zeta_6 = {}", mixed);
    println!("zeta_6^2 == zeta_3: {}", CycloNum::root_of_unity(6, 2) == z3);

    // exact division in the field
    let x = z6.add(&CycloNum::from_int(2));
    let y = x.inv()?;
    println!("(2 + zeta_6)^-1 = {}", y);
    println!("product check: {}", x.mul(&y));

    // rational scalar arithmetic stays exact
    let half = x.scale(&rat(1, 2));
    println!("(2 + zeta_6)/2 = {}", half);

    // cyclotomic polynomials by iterated exact division
    for m in [1u64, 6, 8, 12, 105] {
        let phi = cyclotomic_polynomial(m)?;
        let coeffs: Vec<String> = phi.iter().map(|c| c.to_string()).collect();
        println!("Phi_{}(X): degree {}, coeffs [{}]", m, phi.len() - 1, coeffs.join(", "));
    }
    Ok(())
}
