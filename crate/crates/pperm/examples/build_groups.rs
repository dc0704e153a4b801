//! Constructing groups: catalog lookups, permutation generators, structured
//! text ingestion, and the basic subgroup machinery.
//!
//! Run with: cargo run -p pperm --example build_groups

use pperm::catalog;
use pperm::group::{Group, Subgroup};

fn main() -> pperm::Result<()> {
    // catalog constructors
    for name in ["S3", "Q8", "A4", "C7:C3"] {
        let g = catalog::by_name(name)?;
        let classes = g.conjugacy_classes();
        println!(
            "{:6} order {:>2}, {} conjugacy classes, center of order {}",
            name,
            g.order(),
            classes.len(),
            g.center().order()
        );
    }

    // from permutation generators, in cycle notation
    let perms = [
        catalog::parse_cycle_notation(4, "(1 2 3 4)")?,
        catalog::parse_cycle_notation(4, "(1 2)")?,
    ];
    let s4 = Group::from_permutation_generators("S4", 4, &perms)?;
    println!("\nS4 from generators: order {}", s4.order());

    // from a structured text source
    let klein = catalog::group_from_json(
        "klein",
        r#"{"table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}"#,
    )?;
    println!("table-backed group: order {}", klein.order());

    // subgroups of S4, enumerated by cyclic extension
    let subs = s4.all_subgroups()?;
    println!("\nS4 has {} subgroups; orders:", subs.len());
    let mut orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
    orders.dedup();
    println!("  {:?}", orders);

    // quotient: S4 / V4 has order 6
    let v4 = subs
        .iter()
        .find(|s| s.order() == 4 && s.is_normal_in(&Subgroup::full(&s4)))
        .expect("normal V4");
    let qp = s4.quotient(v4)?;
    println!("S4 / V4 has order {}", qp.quotient.order());

    // element decompositions into commuting p- and p'-parts
    let c6 = catalog::by_name("C6")?;
    let g = (0..6).find(|&x| c6.elem_order(x) == 6).unwrap();
    println!(
        "\nin C6: ord(g) = 6, ord(g_2) = {}, ord(g_2') = {}",
        c6.elem_order(c6.p_part(g, 2)),
        c6.elem_order(c6.pprime_part(g, 2))
    );
    Ok(())
}
