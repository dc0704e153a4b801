//! Block decomposition of the ring of p-permutation modules, dimensions of
//! simple evaluations, essential-algebra invariants, and the cross-group
//! composition of idempotents.
//!
//! Every pair class (Q, t) of a group H reduces to a D-Delta pair; grouping
//! the classes of H by the isomorphism type of their reductions partitions
//! the species coordinates into blocks, and the block sizes are exactly the
//! dimensions of the simple evaluations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclo::{euler_phi, rat_int, CycloNum, RootOfUnity};
use crate::group::{
    outer_automorphism_order, same_group, Elem, GroupRef, Subgroup,
};
use crate::pairs::{
    enumerate_pairs, is_ddelta, is_pprime_quotient, pairs_isomorphic, reduce_pair, DiagonalPair,
    Pair, PairGroup,
};
use crate::ppring::{moebius_table, s_stable_subgroups, MonomialSymbol, TElement, TRing};
use crate::{Error, Result};

/// The isomorphism class of a D-Delta pair, stored through a reduced
/// representative; two labels are equal exactly when their representatives
/// are isomorphic as pairs.
#[derive(Clone)]
pub struct SimpleLabel {
    representative: Pair,
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[|P|={}, ord(s)={}, |span|={}]",
            self.representative.p_subgroup().order(),
            self.representative.elem_order(),
            self.representative.span().order()
        )
    }
}

impl fmt::Debug for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleLabel{}", self)
    }
}

impl SimpleLabel {
    /// The label of an arbitrary pair: its reduction (P~, s~).
    pub fn from_pair(pair: &Pair) -> Result<SimpleLabel> {
        let representative = reduce_pair(pair)?;
        debug_assert!(is_ddelta(&representative));
        Ok(SimpleLabel { representative })
    }

    pub fn representative(&self) -> &Pair {
        &self.representative
    }

    pub fn matches(&self, other: &SimpleLabel) -> Result<bool> {
        pairs_isomorphic(&self.representative, &other.representative)
    }

    pub fn span_order(&self) -> usize {
        self.representative.span().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.representative.span().order() == 1
    }
}

/// A set of simple labels, with membership taken up to pair isomorphism;
/// the extensional description of a subfunctor.
#[derive(Clone, Default)]
pub struct SubfunctorDescriptor {
    labels: Vec<SimpleLabel>,
}

impl SubfunctorDescriptor {
    pub fn new() -> SubfunctorDescriptor {
        SubfunctorDescriptor { labels: Vec::new() }
    }

    pub fn labels(&self) -> &[SimpleLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: &SimpleLabel) -> Result<bool> {
        for l in &self.labels {
            if l.matches(label)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Inserts up to isomorphism; reports whether the label was new.
    pub fn insert(&mut self, label: SimpleLabel) -> Result<bool> {
        if self.contains(&label)? {
            return Ok(false);
        }
        self.labels.push(label);
        Ok(true)
    }

    /// The span of this label set at one evaluation: the sorted indices of
    /// the pair classes whose reduction lies in the set.
    pub fn evaluation(&self, ring: &Arc<TRing>) -> Result<Vec<usize>> {
        let dec = functor_decomposition(ring)?;
        let mut out = Vec::new();
        for (label, block) in &dec.blocks {
            if self.contains(label)? {
                out.extend_from_slice(block);
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// The partition of a group's pair classes by the labels of their
/// reductions.
pub struct Decomposition {
    pub ring: Arc<TRing>,
    /// Blocks in first-occurrence order; indices refer to `ring.pairs()`.
    pub blocks: Vec<(SimpleLabel, Vec<usize>)>,
}

impl Decomposition {
    pub fn block_of_label(&self, label: &SimpleLabel) -> Result<Option<&[usize]>> {
        for (l, idxs) in &self.blocks {
            if l.matches(label)? {
                return Ok(Some(idxs));
            }
        }
        Ok(None)
    }
}

pub fn functor_decomposition(ring: &Arc<TRing>) -> Result<Decomposition> {
    let mut blocks: Vec<(SimpleLabel, Vec<usize>)> = Vec::new();
    for (idx, pair) in ring.pairs().iter().enumerate() {
        let label = SimpleLabel::from_pair(pair)?;
        let mut placed = false;
        for (known, idxs) in blocks.iter_mut() {
            if known.matches(&label)? {
                idxs.push(idx);
                placed = true;
                break;
            }
        }
        if !placed {
            blocks.push((label, vec![idx]));
        }
    }
    Ok(Decomposition {
        ring: ring.clone(),
        blocks,
    })
}

/// dim of the simple evaluation at the ring's group: the size of the
/// label's block, 0 when absent.
pub fn simple_dim(label: &SimpleLabel, ring: &Arc<TRing>) -> Result<usize> {
    let dec = functor_decomposition(ring)?;
    Ok(dec.block_of_label(label)?.map_or(0, |b| b.len()))
}

/// Number of conjugacy classes of p'-elements, which must equal the
/// dimension of the block of the trivial label.
pub fn s11_dim(g: &GroupRef, p: u64) -> usize {
    g.conjugacy_classes()
        .iter()
        .filter(|c| g.is_pprime_element(c[0], p))
        .count()
}

/// The pair classes of the target group whose idempotents span the
/// evaluation of the subfunctor generated by `a`: the classes (Q, t) with
/// the reduction of `a` isomorphic to a p'-quotient of (Q, t).
pub fn subfunctor_eval(a: &Pair, ring: &Arc<TRing>) -> Result<Vec<usize>> {
    let target = reduce_pair(a)?;
    let mut out = Vec::new();
    for (idx, qt) in ring.pairs().iter().enumerate() {
        if is_pprime_quotient(&target, qt)? {
            out.push(idx);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Essential algebra.

const ESSENTIAL_BOUND: usize = 64;

/// Nonzeroness and dimension of the essential algebra of G: nonzero exactly
/// when some pair has G = `<Ps>` and trivial C_{`<s>`}(P), with dimension
/// phi(ord s) * |Out(G)| in that case.
#[derive(Clone, Debug)]
pub struct EssentialReport {
    pub group: GroupRef,
    pub p: u64,
    pub nonzero: bool,
    pub witness: Option<Pair>,
    /// ord(s) of the witness (the cyclotomic index n of the algebra).
    pub n: u64,
    /// phi(n) * |Out(G)| when nonzero, else 0.
    pub dimension: u64,
}

pub fn essential_report(g: &GroupRef, p: u64) -> Result<EssentialReport> {
    if g.order() > ESSENTIAL_BOUND {
        return Err(Error::TooLarge {
            what: format!("essential report of {}", g.name()),
            size: g.order(),
            bound: ESSENTIAL_BOUND,
        });
    }
    let witness = enumerate_pairs(g, p)?
        .into_iter()
        .find(|a| a.span().order() == g.order() && is_ddelta(a));
    match witness {
        Some(w) => {
            let n = w.elem_order() as u64;
            let dimension = euler_phi(n) * outer_automorphism_order(g)?;
            Ok(EssentialReport {
                group: g.clone(),
                p,
                nonzero: true,
                witness: Some(w),
                n,
                dimension,
            })
        }
        None => Ok(EssentialReport {
            group: g.clone(),
            p,
            nonzero: false,
            witness: None,
            n: 0,
            dimension: 0,
        }),
    }
}

// ---------------------------------------------------------------------------
// Subfunctor lattice checks.

#[derive(Debug, Default)]
pub struct LatticeReport {
    pub rings: usize,
    pub labels: usize,
    pub subsets_checked: usize,
    pub failures: Vec<String>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Validates the lattice picture on a finite universe of evaluations: the
/// span of a label set determines and is determined by the set (among
/// labels realized in the universe), and membership of a label's block in a
/// union of blocks forces membership in a single block.
pub fn lattice_check(universe: &[Arc<TRing>], labels: &[SimpleLabel]) -> Result<LatticeReport> {
    let mut report = LatticeReport {
        rings: universe.len(),
        labels: labels.len(),
        ..Default::default()
    };
    // block of each label at each ring, as sorted index sets
    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new(); // [ring][label] -> indices
    for ring in universe {
        let dec = functor_decomposition(ring)?;
        let mut per_label = Vec::new();
        for label in labels {
            per_label.push(dec.block_of_label(label)?.map_or(Vec::new(), |b| b.to_vec()));
        }
        blocks.push(per_label);
    }
    let realized: Vec<usize> = (0..labels.len())
        .filter(|&i| blocks.iter().any(|ring_blocks| !ring_blocks[i].is_empty()))
        .collect();
    // when the label list covers a ring's whole decomposition, the spans of
    // all labels together must exhaust its pair classes
    for (r, ring) in universe.iter().enumerate() {
        let dec = functor_decomposition(ring)?;
        let mut covered = true;
        for (label, _) in &dec.blocks {
            let mut hit = false;
            for l in labels {
                if l.matches(label)? {
                    hit = true;
                    break;
                }
            }
            if !hit {
                covered = false;
                break;
            }
        }
        if covered {
            let total: usize = blocks[r].iter().map(|b| b.len()).sum();
            if total != ring.pairs().len() {
                report.failures.push(format!(
                    "all labels together span {} of {} classes at evaluation {}",
                    total,
                    ring.pairs().len(),
                    ring.group().name()
                ));
            }
        }
    }
    let span = |ring_idx: usize, set: &[usize]| -> Vec<usize> {
        let mut s: Vec<usize> = set
            .iter()
            .flat_map(|&i| blocks[ring_idx][i].iter().copied())
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    // subset family: everything when small, else singletons, pairs and full
    let subsets: Vec<Vec<usize>> = if realized.len() <= 12 {
        (0..(1u32 << realized.len()))
            .map(|mask| {
                realized
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect()
            })
            .collect()
    } else {
        let mut fam: Vec<Vec<usize>> = vec![Vec::new(), realized.clone()];
        for (i, &a) in realized.iter().enumerate() {
            fam.push(vec![a]);
            for &b in &realized[i + 1..] {
                fam.push(vec![a, b]);
            }
        }
        fam
    };
    report.subsets_checked = subsets.len();
    // spans agree at every evaluation iff the label sets agree
    for (i, sa) in subsets.iter().enumerate() {
        for sb in subsets.iter().skip(i + 1) {
            let equal_everywhere =
                (0..universe.len()).all(|r| span(r, sa) == span(r, sb));
            if equal_everywhere {
                report.failures.push(format!(
                    "distinct label sets {:?} and {:?} have identical spans at every evaluation",
                    sa, sb
                ));
            }
        }
    }
    // membership in a sum implies membership in a single summand
    for &l in &realized {
        for set in &subsets {
            let contained =
                (0..universe.len()).all(|r| {
                    let lhs = span(r, &[l]);
                    let rhs = span(r, set);
                    lhs.iter().all(|x| rhs.binary_search(x).is_ok())
                });
            if contained {
                let mut hit = false;
                for &a in set {
                    if labels[l].matches(&labels[a])? {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    report.failures.push(format!(
                        "label {} lies in the span of {:?} but in no single summand",
                        l, set
                    ));
                }
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Cross-group composition of idempotents.

/// Why a composition evaluated to zero before the main formula ran.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComposeSupport {
    /// The formula was evaluated; t was normalized to (u, s^j).
    Evaluated { j: u64 },
    /// p_2(`<Qt>`) is a proper subgroup of G, so the product is zero.
    SecondProjectionNotFull { order: usize },
    /// No conjugate of t has second coordinate inside `<s>`.
    NoNormalForm,
}

#[derive(Debug)]
pub struct ComposeOutcome {
    pub element: TElement,
    pub support: ComposeSupport,
}

/// Composes the idempotent of a twisted diagonal pair (Q, t) of H x G with
/// the idempotent of a pair (P, s) with G = `<Ps>`, landing in FT(H).
///
/// The pair is first conjugated so that t = (u, s^j); if p_2(`<Qt>`) is not
/// all of G the product is zero. Otherwise the result is the double
/// character sum over (phi, psi) with phi^{|u|} psi^{j|u|} = 1 of monomial
/// symbols Ind^H_{`<Ju>`} weighted by sigma(J) = |C_L(s)| mu((L,P)^s) at
/// L = eta(J).
pub fn compose_idempotents(
    dq: &DiagonalPair,
    a: &Pair,
    h_ring: &Arc<TRing>,
) -> Result<ComposeOutcome> {
    let product = dq.product();
    let h = &product.left;
    let g = &product.right;
    if !same_group(a.ambient(), g) {
        return Err(Error::Mismatch {
            msg: "pair ambient differs from the product's right factor".into(),
        });
    }
    if !same_group(h_ring.group(), h) {
        return Err(Error::Mismatch {
            msg: "target ring differs from the product's left factor".into(),
        });
    }
    if dq.pair().prime() != a.prime() || h_ring.prime() != a.prime() {
        return Err(Error::Mismatch {
            msg: "primes differ".into(),
        });
    }
    if a.span().order() != g.order() {
        return Err(Error::InvalidPair {
            msg: "composition needs G = <Ps>".into(),
        });
    }
    // support: p_2(<Qt>) must be all of G
    let qt_span = dq.pair().span();
    let p2_span = product.project_right(qt_span.elements());
    if p2_span.len() != g.order() {
        return Ok(ComposeOutcome {
            element: h_ring.zero(),
            support: ComposeSupport::SecondProjectionNotFull {
                order: p2_span.len(),
            },
        });
    }
    // normalize t = (u, s^j) by conjugating the G coordinate
    let s = a.elem();
    let ord_s = a.elem_order() as u64;
    let s_powers: Vec<Elem> = (0..ord_s).map(|i| g.pow(s, i as i64)).collect();
    let v = dq.t_right();
    let normalizer = (0..g.order() as Elem)
        .find(|&x| s_powers.contains(&g.conjugate(v, x)));
    let x = match normalizer {
        Some(x) => x,
        None => {
            return Ok(ComposeOutcome {
                element: h_ring.zero(),
                support: ComposeSupport::NoNormalForm,
            })
        }
    };
    let dq = dq.conjugate_by(product.pair(0, x));
    let t = dq.pair().elem();
    let u = dq.t_left();
    let j = s_powers
        .iter()
        .position(|&w| w == dq.t_right())
        .expect("normalized second coordinate") as u64;

    // constants
    let prod_grp = &product.group;
    let q_sub = dq.pair().p_subgroup();
    let n_q = prod_grp.normalizer(q_sub);
    let c1 = n_q
        .elements()
        .iter()
        .filter(|&&y| prod_grp.commutes(y, t))
        .count() as i64;
    let c2 = g.centralizer(s).order() as i64;
    let c_q_t = q_sub
        .elements()
        .iter()
        .filter(|&&y| prod_grp.commutes(y, t))
        .count() as i64;
    let p1q = dq.p1_subgroup();
    debug_assert_eq!(dq.p2_subgroup(), *a.p_subgroup(), "p_2(Q) must be P");
    let eta = dq.eta();

    // sigma through the s-stable Moebius data of P
    let stable = s_stable_subgroups(a);
    let mu = moebius_table(&stable, a.p_subgroup());
    let sigma = |l: &Subgroup| -> i64 {
        match mu.get(l.elements()) {
            Some(&m) => {
                let c_l_s = l.elements().iter().filter(|&&y| g.commutes(y, s)).count() as i64;
                c_l_s * m
            }
            None => 0,
        }
    };

    let ord_t = prod_grp.elem_order(t) as u64;
    let ord_u = h.elem_order(u) as u64;
    let m_lcm = num_integer::lcm(ord_t, ord_s);
    let denom = rat_int(c1 * c2);

    // u-stable subgroups of p_1(Q), with their symbol data
    let mut j_data: Vec<(Subgroup, i64, PairGroup)> = Vec::new();
    for j_sub in h.subgroups_within(p1q.elements()) {
        if j_sub.conjugate_by(u) != j_sub {
            continue;
        }
        let l = eta.image_of(&j_sub);
        let sig = sigma(&l);
        if sig == 0 {
            continue;
        }
        let ju_pair = Pair::new(h.clone(), a.prime(), j_sub.clone(), u)?;
        j_data.push((j_sub, sig, PairGroup::new(ju_pair)));
    }

    let mut terms: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
    for phi_e in 0..ord_t {
        for psi_e in 0..ord_s {
            // phi^{|u|} psi^{j|u|} = 1 inside mu_lcm
            let phi_part = phi_e * ord_u % ord_t;
            let psi_part = (psi_e * j % ord_s) * (ord_u % ord_s) % ord_s;
            let combined = phi_part as u128 * (m_lcm / ord_t) as u128
                + psi_part as u128 * (m_lcm / ord_s) as u128;
            if !combined.is_multiple_of(m_lcm as u128) {
                continue;
            }
            let root = RootOfUnity::new(ord_t, -(phi_e as i64))
                .mul(&RootOfUnity::new(ord_s, -(psi_e as i64)))
                .to_cyclo();
            // phi(u) := phi(t) psi(s)^j, a character value of order dividing |u|
            let phi_u = RootOfUnity::new(ord_t, phi_e as i64)
                .mul(&RootOfUnity::new(ord_s, (psi_e * j % ord_s) as i64));
            let c_exp = phi_u
                .reduce_to_order(ord_u)
                .expect("character constraint guarantees order divides |u|");
            for (_, sig, ju) in &j_data {
                let weight = rat_int(c_q_t * sig) / &denom;
                let coeff = root.scale(&weight);
                let scale = h_ring.modulus() / ord_u;
                let exps: Vec<u64> = ju
                    .span()
                    .elements()
                    .iter()
                    .map(|&y| {
                        let i = ju.s_exponent(y).expect("element of <Ju>") as u64;
                        (i * c_exp % ord_u) * scale
                    })
                    .collect();
                let sym = h_ring.monomial(ju.span(), exps)?;
                match terms.entry(sym) {
                    std::collections::btree_map::Entry::Vacant(vac) => {
                        if !coeff.is_zero() {
                            vac.insert(coeff);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut occ) => {
                        let sum = occ.get().add(&coeff);
                        if sum.is_zero() {
                            occ.remove();
                        } else {
                            *occ.get_mut() = sum;
                        }
                    }
                }
            }
        }
    }
    Ok(ComposeOutcome {
        element: h_ring.from_terms(terms),
        support: ComposeSupport::Evaluated { j },
    })
}
