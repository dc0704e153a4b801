//! Restriction, induction, inflation and deflation of idempotents, checked
//! against their predicted right-hand sides.
//!
//! Run with: cargo run -p pperm --example biset_ops

use pperm::catalog;
use pperm::group::Subgroup;
use pperm::pairs::Pair;
use pperm::ppring::{deflation_constant, op_def, op_ind, op_inf, op_res, TRing};

fn species_row(el: &pperm::ppring::TElement) -> String {
    let parts: Vec<String> = el.species().values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn main() -> pperm::Result<()> {
    let s3 = catalog::by_name("S3")?;
    let ring = TRing::new(&s3, 3)?;
    let c3 = s3.sylow(3);
    let c3_grp = c3.as_group()?;
    let c3_ring = TRing::new(&c3_grp, 3)?;

    // restriction to the Sylow 3-subgroup
    let a = ring
        .pairs()
        .iter()
        .find(|a| a.p_subgroup().order() == 3 && a.elem_order() == 1)
        .unwrap()
        .clone();
    let f = ring.idempotent(&a)?;
    let res = op_res(&c3_ring, &c3, &f)?;
    println!("Res^S3_C3 F(C3,1) has species {}", species_row(&res));

    // induction back up picks up the index of the normalizers
    let b = c3_ring
        .pairs()
        .iter()
        .find(|b| b.p_subgroup().order() == 3)
        .unwrap()
        .clone();
    let ind = op_ind(&ring, &c3, &c3_ring.idempotent(&b)?)?;
    println!("Ind_C3^S3 F(C3,1) has species {}", species_row(&ind));

    // inflation along S3 -> S3/C3
    let qp = s3.quotient(&c3)?;
    let q_ring = TRing::new(&qp.quotient, 3)?;
    let f_quot = q_ring.idempotent(&q_ring.pairs()[1].clone())?;
    let inf = op_inf(&ring, &qp, &f_quot)?;
    println!("Inf of F along S3 -> S3/C3 has species {}", species_row(&inf));

    // deflation of a full-span idempotent along a p'-kernel: the constant
    // is 1/|N|
    let c6 = catalog::by_name("C6")?;
    let r6 = TRing::new(&c6, 3)?;
    let span_pair = r6
        .pairs()
        .iter()
        .find(|a| a.span().order() == 6)
        .unwrap()
        .clone();
    let n = Subgroup::generated(&c6, &[(0..6).find(|&x| c6.elem_order(x) == 2).unwrap()]);
    let m = deflation_constant(&span_pair, &n)?;
    println!("\nm_(P,s,N) for C6 = <C3, s>, |N| = 2: {}", m);
    let qp6 = c6.quotient(&n)?;
    let q6_ring = TRing::new(&qp6.quotient, 3)?;
    let def = op_def(&q6_ring, &qp6, &r6.idempotent(&span_pair)?)?;
    println!("Def F along C6 -> C6/N has species {}", species_row(&def));

    // a non-p' kernel: the constant comes from the displayed subgroup sum
    let c2 = catalog::by_name("C2")?;
    let full = Pair::new(c2.clone(), 2, Subgroup::full(&c2), 0)?;
    let mc2 = deflation_constant(&full, &Subgroup::full(&c2))?;
    println!("m_(C2,1,C2) at p = 2: {}", mc2);
    Ok(())
}
