//! Verification suites over the built-in catalog.
//!
//! Each suite recomputes an identity along two routes and logs a [`Failure`]
//! for every divergence; the command line `verify` subcommand drains these
//! and exits nonzero iff any failure is logged.

use std::str::FromStr;
use std::sync::Arc;

use crate::catalog;
use crate::cyclo::{cyclotomic_polynomial, divisors, euler_phi, rat, CycloNum, Rational};
use crate::functor::{
    essential_report, functor_decomposition, lattice_check, s11_dim, simple_dim,
    SimpleLabel, SubfunctorDescriptor,
};
use crate::group::{outer_automorphism_order, Elem, GroupRef, ProductGroup, Subgroup};
use crate::pairs::{is_ddelta, pairs_conjugate, pairs_isomorphic, Pair};
use crate::ppring::{deflation_constant, op_def, op_ind, op_inf, op_res, SpeciesVector, TElement, TRing};
use crate::Result;

pub const VERIFY_PRIMES: [u64; 2] = [2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Idempotents,
    Biset,
    Functor,
    Essential,
    Cyclo,
    All,
}

impl FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "idempotents" => Ok(Suite::Idempotents),
            "biset" => Ok(Suite::Biset),
            "functor" => Ok(Suite::Functor),
            "essential" => Ok(Suite::Essential),
            "cyclo" => Ok(Suite::Cyclo),
            "all" => Ok(Suite::All),
            other => Err(crate::Error::Format {
                msg: format!(
                    "unknown suite '{}'; expected idempotents|biset|functor|essential|cyclo|all",
                    other
                ),
            }),
        }
    }
}

/// One failed identity: both computed sides plus enough context to rerun it.
#[derive(Clone, Debug)]
pub struct Failure {
    pub suite: &'static str,
    pub group: String,
    pub p: u64,
    pub context: String,
    pub lhs: String,
    pub rhs: String,
}

fn species_string(v: &SpeciesVector) -> String {
    let parts: Vec<String> = v.values.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn check_species_eq(
    failures: &mut Vec<Failure>,
    suite: &'static str,
    group: &str,
    p: u64,
    context: String,
    lhs: &TElement,
    rhs: &TElement,
) {
    if lhs != rhs {
        failures.push(Failure {
            suite,
            group: group.to_string(),
            p,
            context,
            lhs: species_string(lhs.species()),
            rhs: species_string(rhs.species()),
        });
    }
}

pub fn run_suite(suite: Suite, max_order: usize) -> Result<Vec<Failure>> {
    let mut failures = Vec::new();
    match suite {
        Suite::Idempotents => idempotents_suite(max_order, &mut failures)?,
        Suite::Biset => biset_suite(max_order, &mut failures)?,
        Suite::Functor => functor_suite(max_order, &mut failures)?,
        Suite::Essential => essential_suite(max_order, &mut failures)?,
        Suite::Cyclo => cyclo_suite(&mut failures)?,
        Suite::All => {
            cyclo_suite(&mut failures)?;
            idempotents_suite(max_order, &mut failures)?;
            biset_suite(max_order, &mut failures)?;
            functor_suite(max_order, &mut failures)?;
            essential_suite(max_order, &mut failures)?;
        }
    }
    Ok(failures)
}

fn catalog_rings(max_order: usize) -> Result<Vec<(String, Arc<TRing>)>> {
    let mut out = Vec::new();
    for (name, g) in catalog::catalog_with_names(max_order) {
        for p in VERIFY_PRIMES {
            out.push((name.clone(), TRing::new(&g, p)?));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

fn cyclo_suite(failures: &mut Vec<Failure>) -> Result<()> {
    let fail = |failures: &mut Vec<Failure>, context: String, lhs: String, rhs: String| {
        failures.push(Failure {
            suite: "cyclo",
            group: "-".into(),
            p: 0,
            context,
            lhs,
            rhs,
        });
    };
    // vanishing sums
    for m in 2..=24u64 {
        let mut acc = CycloNum::zero();
        for e in 0..m {
            acc = acc.add(&CycloNum::root_of_unity(m, e as i64));
        }
        if !acc.is_zero() {
            fail(
                failures,
                format!("sum of all zeta_{}^e", m),
                acc.to_string(),
                "0".into(),
            );
        }
    }
    // Phi_m(zeta_m) = 0 and the degree identity sum_{d|m} deg Phi_d = m
    for m in 1..=32u64 {
        let phi = cyclotomic_polynomial(m)?;
        let mut value = CycloNum::zero();
        for (i, c) in phi.iter().enumerate() {
            let term = CycloNum::root_of_unity(m, i as i64)
                .scale(&Rational::from(c.clone()));
            value = value.add(&term);
        }
        if !value.is_zero() {
            fail(
                failures,
                format!("Phi_{}(zeta_{})", m, m),
                value.to_string(),
                "0".into(),
            );
        }
        let degree_sum: u64 = divisors(m).iter().map(|&d| euler_phi(d)).sum();
        if degree_sum != m {
            fail(
                failures,
                format!("sum of deg Phi_d over d | {}", m),
                degree_sum.to_string(),
                m.to_string(),
            );
        }
    }
    // field axioms on deterministic pseudorandom triples
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for m in 1..=24u64 {
        let deg = euler_phi(m);
        let mut sample = || {
            let mut acc = CycloNum::zero();
            for i in 0..deg.min(3) {
                let num = (next() % 13) as i64 - 6;
                let den = (next() % 4) as i64 + 1;
                acc = acc.add(&CycloNum::root_of_unity(m, i as i64).scale(&rat(num, den)));
            }
            acc
        };
        let (a, b, c) = (sample(), sample(), sample());
        let cases = [
            ("a(b+c) = ab+ac", a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c))),
            ("(ab)c = a(bc)", a.mul(&b).mul(&c), a.mul(&b.mul(&c))),
            ("(a+b)+c = a+(b+c)", a.add(&b).add(&c), a.add(&b.add(&c))),
        ];
        for (what, lhs, rhs) in cases {
            if lhs != rhs {
                fail(failures, format!("{} at m={}", what, m), lhs.to_string(), rhs.to_string());
            }
        }
        if !a.is_zero() {
            let prod = a.mul(&a.inv()?);
            if prod != CycloNum::one() {
                fail(failures, format!("a * a^-1 at m={}", m), prod.to_string(), "1".into());
            }
        }
        // lifting commutes with multiplication
        let lifted = a.mul(&b).lift_to(m * 2);
        let lifted2 = a.lift_to(m * 2).mul(&b.lift_to(m * 2));
        if lifted != lifted2 {
            fail(
                failures,
                format!("lift of product at m={}", m),
                lifted.to_string(),
                lifted2.to_string(),
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn idempotents_suite(max_order: usize, failures: &mut Vec<Failure>) -> Result<()> {
    for (name, ring) in catalog_rings(max_order)? {
        let p = ring.prime();
        let pairs = ring.pairs().to_vec();
        let mut total = ring.zero();
        for (i, a) in pairs.iter().enumerate() {
            let f1 = ring.idempotent(a)?;
            // delta-duality against the indicator
            check_species_eq(
                failures,
                "idempotents",
                &name,
                p,
                format!("delta-duality of F at pair {}", a),
                &f1,
                &ring.idempotent_species(a),
            );
            let f2 = ring.idempotent_v2(a)?;
            check_species_eq(
                failures,
                "idempotents",
                &name,
                p,
                format!("formula agreement at pair {}", a),
                &f1,
                &f2,
            );
            total = total.add(&f1);
            let _ = i;
        }
        check_species_eq(
            failures,
            "idempotents",
            &name,
            p,
            "completeness: sum of idempotents = [k]".into(),
            &total,
            &ring.trivial_module(),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Biset suite: predicted images of idempotents recomputed symbol-level.

/// Maps a pair of G with P <= H, s in H into the coordinates of the
/// materialized subgroup group.
fn pair_into_subgroup(
    pair: &Pair,
    h_sub: &Subgroup,
    h_grp: &GroupRef,
) -> Option<Pair> {
    let mut elems = Vec::with_capacity(pair.p_subgroup().order());
    for &x in pair.p_subgroup().elements() {
        elems.push(h_sub.position_of(x)? as Elem);
    }
    let s = h_sub.position_of(pair.elem())? as Elem;
    let sub = Subgroup::new(h_grp.clone(), elems).ok()?;
    Pair::new(h_grp.clone(), pair.prime(), sub, s).ok()
}

/// Predicted restriction: the sum of indicators over H-classes of
/// G-conjugates of the pair contained in H.
fn res_prediction(
    g: &GroupRef,
    a: &Pair,
    h_sub: &Subgroup,
    h_ring: &Arc<TRing>,
) -> TElement {
    let mut values = vec![CycloNum::zero(); h_ring.pairs().len()];
    let mut reps: Vec<Pair> = Vec::new();
    for x in 0..g.order() as Elem {
        let conj = a.conjugate_by(x);
        if !conj.p_subgroup().elements().iter().all(|&y| h_sub.contains(y))
            || !h_sub.contains(conj.elem())
        {
            continue;
        }
        let mapped = pair_into_subgroup(&conj, h_sub, h_ring.group())
            .expect("contained conjugate maps into H");
        if reps.iter().any(|r| pairs_conjugate(r, &mapped)) {
            continue;
        }
        let idx = h_ring.pair_index(&mapped).expect("pair class of H");
        values[idx] = CycloNum::one();
        reps.push(mapped);
    }
    h_ring.from_species(values)
}

/// Predicted induction: |N_G(Q,t) : N_H(Q,t)| times the indicator of the
/// G-class of (Q, t).
fn ind_prediction(
    g_ring: &Arc<TRing>,
    h_sub: &Subgroup,
    b: &Pair,
) -> TElement {
    let g = g_ring.group();
    let in_g = {
        let elems: Vec<Elem> = b
            .p_subgroup()
            .elements()
            .iter()
            .map(|&i| h_sub.elements()[i as usize])
            .collect();
        let sub = Subgroup::new(g.clone(), elems).expect("subgroup transport");
        Pair::new(g.clone(), b.prime(), sub, h_sub.elements()[b.elem() as usize])
            .expect("pair transport")
    };
    let stab = |ambient: &[Elem]| -> usize {
        ambient
            .iter()
            .filter(|&&x| {
                g.conjugate(in_g.elem(), x) == in_g.elem()
                    && in_g.p_subgroup().conjugate_by(x) == *in_g.p_subgroup()
            })
            .count()
    };
    let all: Vec<Elem> = (0..g.order() as Elem).collect();
    let mult = stab(&all) / stab(h_sub.elements());
    let idx = g_ring.pair_index(&in_g).expect("pair class of G");
    let mut values = vec![CycloNum::zero(); g_ring.pairs().len()];
    values[idx] = CycloNum::from_int(mult as i64);
    g_ring.from_species(values)
}

/// (group, subgroup order) instances exercising restriction and induction.
pub const RES_IND_INSTANCES: &[(&str, usize)] = &[
    ("S3", 3),
    ("S3", 2),
    ("S4", 12),
    ("S4", 8),
    ("S4", 6),
    ("A4", 4),
    ("D8", 4),
    ("Q8", 4),
    ("C6", 3),
    ("C6", 2),
    ("C7:C3", 7),
    ("C3:C4", 4),
    ("C3:C4", 6),
];

fn biset_suite(max_order: usize, failures: &mut Vec<Failure>) -> Result<()> {
    for &(name, h_order) in RES_IND_INSTANCES {
        let g = catalog::by_name(name)?;
        if g.order() > max_order {
            continue;
        }
        let h_sub = g
            .all_subgroups()?
            .into_iter()
            .find(|s| s.order() == h_order)
            .expect("instance subgroup exists");
        let h_grp = h_sub.as_group()?;
        for p in VERIFY_PRIMES {
            let g_ring = TRing::new(&g, p)?;
            let h_ring = TRing::new(&h_grp, p)?;
            for a in g_ring.pairs().to_vec() {
                let lhs = op_res(&h_ring, &h_sub, &g_ring.idempotent(&a)?)?;
                let rhs = res_prediction(&g, &a, &h_sub, &h_ring);
                check_species_eq(
                    failures,
                    "biset",
                    name,
                    p,
                    format!("Res to |H|={} of F at {}", h_order, a),
                    &lhs,
                    &rhs,
                );
            }
            for b in h_ring.pairs().to_vec() {
                let lhs = op_ind(&g_ring, &h_sub, &h_ring.idempotent(&b)?)?;
                let rhs = ind_prediction(&g_ring, &h_sub, &b);
                check_species_eq(
                    failures,
                    "biset",
                    name,
                    p,
                    format!("Ind from |H|={} of F at {}", h_order, b),
                    &lhs,
                    &rhs,
                );
            }
        }
    }
    // inflation instances: every normal subgroup of each catalog group
    for (name, g) in catalog::catalog_with_names(max_order.min(24)) {
        let full = Subgroup::full(&g);
        for n in g.all_subgroups()? {
            if n.order() == 1 || !n.is_normal_in(&full) {
                continue;
            }
            let qp = g.quotient(&n)?;
            for p in VERIFY_PRIMES {
                let g_ring = TRing::new(&g, p)?;
                let q_ring = TRing::new(&qp.quotient, p)?;
                for a in q_ring.pairs().to_vec() {
                    let lhs = op_inf(&g_ring, &qp, &q_ring.idempotent(&a)?)?;
                    // prediction: sum of indicators of classes whose image is
                    // conjugate to a
                    let mut values = vec![CycloNum::zero(); g_ring.pairs().len()];
                    for (i, qt) in g_ring.pairs().iter().enumerate() {
                        let mut img_p: Vec<Elem> = qt
                            .p_subgroup()
                            .elements()
                            .iter()
                            .map(|&x| qp.projection.apply(x))
                            .collect();
                        img_p.sort_unstable();
                        img_p.dedup();
                        let sub = Subgroup::new(qp.quotient.clone(), img_p)?;
                        let image =
                            Pair::new(qp.quotient.clone(), p, sub, qp.projection.apply(qt.elem()))?;
                        if pairs_conjugate(&image, &a) {
                            values[i] = CycloNum::one();
                        }
                    }
                    let rhs = g_ring.from_species(values);
                    check_species_eq(
                        failures,
                        "biset",
                        &name,
                        p,
                        format!("Inf from G/{} of F at {}", n.order(), a),
                        &lhs,
                        &rhs,
                    );
                }
            }
        }
    }
    // deflation: on every span group <Ps>, against the displayed constant,
    // and the 1/|N| law for p'-kernels
    for (name, g) in catalog::catalog_with_names(max_order) {
        for p in VERIFY_PRIMES {
            let g_ring = TRing::new(&g, p)?;
            for a in g_ring.pairs().to_vec() {
                let span = a.span();
                let span_grp = span.as_group()?;
                let span_ring = TRing::new(&span_grp, p)?;
                let a_in_span =
                    pair_into_subgroup(&a, &span, &span_grp).expect("pair inside its span");
                let f = span_ring.idempotent(&a_in_span)?;
                let full = Subgroup::full(&span_grp);
                for n in span_grp.all_subgroups()? {
                    if !n.is_normal_in(&full) {
                        continue;
                    }
                    let qp = span_grp.quotient(&n)?;
                    let q_ring = TRing::new(&qp.quotient, p)?;
                    let lhs = op_def(&q_ring, &qp, &f)?;
                    let m = deflation_constant(&a_in_span, &n)?;
                    // image pair (PN/N, sN)
                    let mut img_p: Vec<Elem> = a_in_span
                        .p_subgroup()
                        .elements()
                        .iter()
                        .map(|&x| qp.projection.apply(x))
                        .collect();
                    img_p.sort_unstable();
                    img_p.dedup();
                    let sub = Subgroup::new(qp.quotient.clone(), img_p)?;
                    let image = Pair::new(
                        qp.quotient.clone(),
                        p,
                        sub,
                        qp.projection.apply(a_in_span.elem()),
                    )?;
                    let rhs = q_ring.idempotent_species(&image).scale(&m);
                    check_species_eq(
                        failures,
                        "biset",
                        &name,
                        p,
                        format!(
                            "Def of F at {} along |N|={} vs m_P,s,N = {}",
                            a_in_span,
                            n.order(),
                            m
                        ),
                        &lhs,
                        &rhs,
                    );
                    if n.is_pprime_group(p) {
                        let expect =
                            CycloNum::from_rational(rat(1, n.order() as i64));
                        if m != expect {
                            failures.push(Failure {
                                suite: "biset",
                                group: name.clone(),
                                p,
                                context: format!(
                                    "m_P,s,N = 1/|N| for p'-kernel at {}",
                                    a_in_span
                                ),
                                lhs: m.to_string(),
                                rhs: expect.to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    // vertex criterion for Def/Inf membership in the diagonal subring
    vertex_criterion(max_order.min(8), failures)?;
    Ok(())
}

/// Vertex computation for the deflation/inflation bimodules: the maximal
/// p-subgroup of (G/N) x G (resp. G x (G/N)) fixing a point of kG/N is a
/// Sylow p-subgroup of the coset stabilizer, and it is twisted diagonal iff
/// N is a p'-group.
fn vertex_criterion(max_order: usize, failures: &mut Vec<Failure>) -> Result<()> {
    for (name, g) in catalog::catalog_with_names(max_order) {
        let full = Subgroup::full(&g);
        for n in g.all_subgroups()? {
            if !n.is_normal_in(&full) {
                continue;
            }
            let qp = g.quotient(&n)?;
            for p in VERIFY_PRIMES {
                for (side, product) in [
                    ("Def", ProductGroup::new(&qp.quotient, &g)?),
                    ("Inf", ProductGroup::new(&g, &qp.quotient)?),
                ] {
                    let stab: Vec<Elem> = (0..product.group.order() as Elem)
                        .filter(|&x| {
                            let (q_part, g_part) = if side == "Def" {
                                (product.left_of(x), product.right_of(x))
                            } else {
                                (product.right_of(x), product.left_of(x))
                            };
                            qp.projection.apply(g_part) == q_part
                        })
                        .collect();
                    let sylow = product.group.sylow_within(&stab, p);
                    let twisted = sylow.elements().iter().all(|&x| {
                        x == 0
                            || (product.left_of(x) != 0 && product.right_of(x) != 0)
                    });
                    let pprime = !(n.order() as u64).is_multiple_of(p);
                    if twisted != pprime {
                        failures.push(Failure {
                            suite: "biset",
                            group: name.clone(),
                            p,
                            context: format!(
                                "{} vertex criterion along |N|={}",
                                side,
                                n.order()
                            ),
                            lhs: format!("twisted diagonal = {}", twisted),
                            rhs: format!("N is p'-group = {}", pprime),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn functor_suite(max_order: usize, failures: &mut Vec<Failure>) -> Result<()> {
    let rings = catalog_rings(max_order)?;
    for (name, ring) in &rings {
        let p = ring.prime();
        // enumerated representatives are pairwise non-conjugate
        for (i, a) in ring.pairs().iter().enumerate() {
            for b in ring.pairs().iter().skip(i + 1) {
                if pairs_conjugate(a, b) {
                    failures.push(Failure {
                        suite: "functor",
                        group: name.clone(),
                        p,
                        context: format!("conjugate representatives {} and {}", a, b),
                        lhs: "conjugate".into(),
                        rhs: "distinct classes".into(),
                    });
                }
            }
        }
        let dec = functor_decomposition(ring)?;
        // partition identity
        let total: usize = dec.blocks.iter().map(|(_, b)| b.len()).sum();
        if total != ring.pairs().len() {
            failures.push(Failure {
                suite: "functor",
                group: name.clone(),
                p,
                context: "partition identity".into(),
                lhs: total.to_string(),
                rhs: ring.pairs().len().to_string(),
            });
        }
        // S_{1,F} dimension = number of p'-classes
        let trivial = dec
            .blocks
            .iter()
            .find(|(l, _)| l.is_trivial())
            .map_or(0, |(_, b)| b.len());
        let classes = s11_dim(ring.group(), p);
        if trivial != classes {
            failures.push(Failure {
                suite: "functor",
                group: name.clone(),
                p,
                context: "dim S_{1,F} = #p'-classes".into(),
                lhs: trivial.to_string(),
                rhs: classes.to_string(),
            });
        }
        // Prop 5.15 route equals the block route
        for (label, block) in &dec.blocks {
            let via_eval =
                crate::functor::subfunctor_eval(label.representative(), ring)?;
            if via_eval != *block {
                failures.push(Failure {
                    suite: "functor",
                    group: name.clone(),
                    p,
                    context: format!("evaluation route for label {}", label),
                    lhs: format!("{:?}", via_eval),
                    rhs: format!("{:?}", block),
                });
            }
        }
        // reduction stability under p'-quotients of spans
        for a in ring.pairs() {
            let label = SimpleLabel::from_pair(a)?;
            let span = a.span();
            let span_grp = span.as_group()?;
            let a_in_span = pair_into_subgroup(a, &span, &span_grp).expect("pair in span");
            let full = Subgroup::full(&span_grp);
            for n in span_grp.all_subgroups()? {
                if !n.is_pprime_group(p) || !n.is_normal_in(&full) {
                    continue;
                }
                let qp = span_grp.quotient(&n)?;
                let mut img_p: Vec<Elem> = a_in_span
                    .p_subgroup()
                    .elements()
                    .iter()
                    .map(|&x| qp.projection.apply(x))
                    .collect();
                img_p.sort_unstable();
                img_p.dedup();
                let sub = Subgroup::new(qp.quotient.clone(), img_p)?;
                let image = Pair::new(
                    qp.quotient.clone(),
                    p,
                    sub,
                    qp.projection.apply(a_in_span.elem()),
                )?;
                let image_label = SimpleLabel::from_pair(&image)?;
                if !label.matches(&image_label)? {
                    failures.push(Failure {
                        suite: "functor",
                        group: name.clone(),
                        p,
                        context: format!(
                            "reduction stability at {} along |N|={}",
                            a,
                            n.order()
                        ),
                        lhs: label.to_string(),
                        rhs: image_label.to_string(),
                    });
                }
            }
        }
    }
    // minimal-group law over the whole universe, one prime at a time
    for p in VERIFY_PRIMES {
        let prime_rings: Vec<(String, Arc<TRing>)> = rings
            .iter()
            .filter(|(_, r)| r.prime() == p)
            .cloned()
            .collect();
        let mut universe_labels = SubfunctorDescriptor::new();
        for (_, ring) in &prime_rings {
            for (label, _) in functor_decomposition(ring)?.blocks {
                universe_labels.insert(label)?;
            }
        }
        for label in universe_labels.labels() {
            let mut smallest: Option<(&str, usize)> = None;
            for (name, ring) in &prime_rings {
                if simple_dim(label, ring)? > 0 {
                    let ord = ring.group().order();
                    if smallest.is_none_or(|(_, o)| ord < o) {
                        smallest = Some((name, ord));
                    }
                }
            }
            let (min_name, min_order) = smallest.expect("label arose in the universe");
            if min_order != label.span_order() {
                failures.push(Failure {
                    suite: "functor",
                    group: min_name.to_string(),
                    p,
                    context: format!("minimal group order for label {}", label),
                    lhs: min_order.to_string(),
                    rhs: label.span_order().to_string(),
                });
                continue;
            }
            // at the minimal group the block members are isomorphic to the label
            for (name, ring) in &prime_rings {
                if ring.group().order() != min_order {
                    continue;
                }
                let dec = functor_decomposition(ring)?;
                if let Some(block) = dec.block_of_label(label)? {
                    for &i in block {
                        if !pairs_isomorphic(&ring.pairs()[i], label.representative())? {
                            failures.push(Failure {
                                suite: "functor",
                                group: name.clone(),
                                p,
                                context: format!(
                                    "minimal evaluation block member {} vs label {}",
                                    ring.pairs()[i],
                                    label
                                ),
                                lhs: "not isomorphic".into(),
                                rhs: "isomorphic".into(),
                            });
                        }
                    }
                }
            }
        }
        // lattice picture on a bounded sub-universe
        let small: Vec<Arc<TRing>> = prime_rings
            .iter()
            .filter(|(_, r)| r.group().order() <= 12)
            .map(|(_, r)| r.clone())
            .collect();
        let mut small_labels = SubfunctorDescriptor::new();
        for ring in &small {
            for (label, _) in functor_decomposition(ring)?.blocks {
                small_labels.insert(label)?;
            }
        }
        let report = lattice_check(&small, small_labels.labels())?;
        for f in report.failures {
            failures.push(Failure {
                suite: "functor",
                group: "universe".into(),
                p,
                context: "lattice check".into(),
                lhs: f,
                rhs: String::new(),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn essential_suite(max_order: usize, failures: &mut Vec<Failure>) -> Result<()> {
    for (name, g) in catalog::catalog_with_names(max_order) {
        for p in VERIFY_PRIMES {
            let rep = essential_report(&g, p)?;
            // independent witness search: raw scan of (subgroup, element)
            let mut witness_exists = false;
            'outer: for sub in g.all_subgroups()? {
                if !sub.is_p_group(p) {
                    continue;
                }
                for s in 0..g.order() as Elem {
                    if !g.is_pprime_element(s, p) {
                        continue;
                    }
                    let gens = sub.minimal_generators();
                    if !gens.iter().all(|&x| sub.contains(g.conjugate(x, s))) {
                        continue;
                    }
                    let pair = Pair::new(g.clone(), p, sub.clone(), s)?;
                    if pair.span().order() == g.order() && is_ddelta(&pair) {
                        witness_exists = true;
                        break 'outer;
                    }
                }
            }
            if rep.nonzero != witness_exists {
                failures.push(Failure {
                    suite: "essential",
                    group: name.clone(),
                    p,
                    context: "nonzeroness vs raw witness scan".into(),
                    lhs: rep.nonzero.to_string(),
                    rhs: witness_exists.to_string(),
                });
            }
            if let Some(w) = &rep.witness {
                if w.span().order() != g.order() || !is_ddelta(w) {
                    failures.push(Failure {
                        suite: "essential",
                        group: name.clone(),
                        p,
                        context: "witness validity".into(),
                        lhs: format!("{}", w),
                        rhs: "G = <Ps> with trivial C_<s>(P)".into(),
                    });
                }
                let expect = euler_phi(rep.n) * outer_automorphism_order(&g)?;
                if rep.dimension != expect {
                    failures.push(Failure {
                        suite: "essential",
                        group: name.clone(),
                        p,
                        context: "dimension = phi(n) |Out(G)|".into(),
                        lhs: rep.dimension.to_string(),
                        rhs: expect.to_string(),
                    });
                }
            }
        }
    }
    // hand-checked cases
    let hand: &[(&str, u64, bool, u64)] = &[
        ("S3", 3, true, 1),
        ("C6", 3, false, 0),
        ("C2", 2, true, 1),
        ("C2xC2", 2, true, 6),
    ];
    for &(name, p, nonzero, dim) in hand {
        let g = catalog::by_name(name)?;
        if g.order() > max_order {
            continue;
        }
        let rep = essential_report(&g, p)?;
        if rep.nonzero != nonzero || rep.dimension != dim {
            failures.push(Failure {
                suite: "essential",
                group: name.into(),
                p,
                context: "hand-checked case".into(),
                lhs: format!("nonzero={}, dim={}", rep.nonzero, rep.dimension),
                rhs: format!("nonzero={}, dim={}", nonzero, dim),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclo_suite_clean() {
        let failures = run_suite(Suite::Cyclo, 0).unwrap();
        assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn idempotents_suite_clean_small() {
        let failures = run_suite(Suite::Idempotents, 8).unwrap();
        assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn essential_suite_clean_small() {
        let failures = run_suite(Suite::Essential, 8).unwrap();
        assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn functor_suite_clean_small() {
        let failures = run_suite(Suite::Functor, 8).unwrap();
        assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn biset_suite_clean_small() {
        let failures = run_suite(Suite::Biset, 8).unwrap();
        assert!(failures.is_empty(), "{:?}", failures);
    }
}
