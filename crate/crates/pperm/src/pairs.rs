//! Pairs (P, s) of a p-subgroup with a normalizing p'-element: enumeration
//! up to conjugacy, isomorphism testing, p'-quotient reduction, and twisted
//! diagonal pairs in direct products.

use std::collections::BTreeSet;
use std::fmt;

use crate::group::{
    any_isomorphism, isomorphisms, same_group, Elem, GroupMap, GroupRef, ProductGroup, Subgroup,
    SUBGROUP_ENUM_BOUND,
};
use crate::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A p-subgroup P together with a p'-element s of N_G(P).
#[derive(Clone)]
pub struct Pair {
    ambient: GroupRef,
    p: u64,
    subgroup: Subgroup,
    elem: Elem,
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(P={:?}, s={})", self.subgroup.elements(), self.elem)
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Pair(P={:?}, s={}, p={}, in {})",
            self.subgroup.elements(),
            self.elem,
            self.p,
            self.ambient.name()
        )
    }
}

impl Pair {
    pub fn new(ambient: GroupRef, p: u64, subgroup: Subgroup, elem: Elem) -> Result<Pair> {
        if !is_prime(p) {
            return Err(Error::InvalidPair {
                msg: format!("{} is not prime", p),
            });
        }
        if !same_group(&ambient, subgroup.parent()) {
            return Err(Error::InvalidPair {
                msg: "subgroup belongs to a different ambient group".into(),
            });
        }
        if !subgroup.is_p_group(p) {
            return Err(Error::InvalidPair {
                msg: format!("subgroup of order {} is not a {}-group", subgroup.order(), p),
            });
        }
        if !ambient.is_pprime_element(elem, p) {
            return Err(Error::InvalidPair {
                msg: format!("element {} does not have {}'-order", elem, p),
            });
        }
        let gens = subgroup.minimal_generators();
        if !gens
            .iter()
            .all(|&g| subgroup.contains(ambient.conjugate(g, elem)))
        {
            return Err(Error::InvalidPair {
                msg: format!("element {} does not normalize the subgroup", elem),
            });
        }
        Ok(Pair {
            ambient,
            p,
            subgroup,
            elem,
        })
    }

    pub fn trivial(ambient: &GroupRef, p: u64) -> Result<Pair> {
        Pair::new(ambient.clone(), p, Subgroup::trivial(ambient), 0)
    }

    pub fn ambient(&self) -> &GroupRef {
        &self.ambient
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn p_subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn elem_order(&self) -> u32 {
        self.ambient.elem_order(self.elem)
    }

    /// The subgroup `<Ps>` = P x| `<s>` realized inside the ambient group.
    pub fn span(&self) -> Subgroup {
        let mut seed = self.subgroup.elements().to_vec();
        seed.push(self.elem);
        Subgroup::generated(&self.ambient, &seed)
    }

    pub fn conjugate_by(&self, x: Elem) -> Pair {
        Pair {
            ambient: self.ambient.clone(),
            p: self.p,
            subgroup: self.subgroup.conjugate_by(x),
            elem: self.ambient.conjugate(self.elem, x),
        }
    }

    /// C_{`<s>`}(P): the powers of s centralizing all of P.
    pub fn s_centralizer_of_p(&self) -> Vec<Elem> {
        let g = &self.ambient;
        let ord = g.elem_order(self.elem) as i64;
        (0..ord)
            .map(|i| g.pow(self.elem, i))
            .filter(|&si| self.subgroup.elements().iter().all(|&x| g.commutes(si, x)))
            .collect()
    }
}

/// A pair together with its materialized span subgroup.
#[derive(Clone)]
pub struct PairGroup {
    pair: Pair,
    span: Subgroup,
}

impl PairGroup {
    pub fn new(pair: Pair) -> PairGroup {
        let span = pair.span();
        debug_assert_eq!(
            span.order(),
            pair.p_subgroup().order() * pair.elem_order() as usize,
            "span must split as P x| <s>"
        );
        PairGroup { pair, span }
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn span(&self) -> &Subgroup {
        &self.span
    }

    /// Writes g = x * s^i with x in P and returns i (mod ord(s)); every
    /// element of the span has exactly one such expression.
    pub fn s_exponent(&self, g: Elem) -> Option<u32> {
        let grp = &self.pair.ambient;
        let ord = grp.elem_order(self.pair.elem);
        let inv_s = grp.inv(self.pair.elem);
        let mut cur = g;
        for i in 0..ord {
            if self.pair.subgroup.contains(cur) {
                return Some(i);
            }
            cur = grp.mul(cur, inv_s);
        }
        None
    }
}

// ---------------------------------------------------------------------------
// Enumeration up to conjugacy.

/// Conjugacy-class representatives of p-subgroups: subgroups of one Sylow
/// p-subgroup, fused under the whole group; each class is represented by its
/// lexicographically least conjugate.
pub fn p_subgroup_classes(g: &GroupRef, p: u64) -> Result<Vec<Subgroup>> {
    if g.order() > SUBGROUP_ENUM_BOUND {
        return Err(Error::TooLarge {
            what: format!("p-subgroup enumeration of {}", g.name()),
            size: g.order(),
            bound: SUBGROUP_ENUM_BOUND,
        });
    }
    let sylow = g.sylow(p);
    let subs = g.subgroups_within(sylow.elements());
    let mut reps: BTreeSet<Vec<Elem>> = BTreeSet::new();
    for sub in subs {
        let mut best = sub.elements().to_vec();
        for x in 0..g.order() as Elem {
            let cand = sub.conjugate_by(x);
            if cand.elements() < best.as_slice() {
                best = cand.elements().to_vec();
            }
        }
        reps.insert(best);
    }
    let mut out: Vec<Subgroup> = reps
        .into_iter()
        .map(|e| Subgroup::new(g.clone(), e).expect("conjugate of a subgroup"))
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    Ok(out)
}

/// Representatives of the G-conjugacy classes of pairs, ordered by
/// (|P| ascending, P element list, s identifier).
pub fn enumerate_pairs(g: &GroupRef, p: u64) -> Result<Vec<Pair>> {
    let mut out = Vec::new();
    for sub in p_subgroup_classes(g, p)? {
        let normalizer = g.normalizer(&sub);
        let mut seen = vec![false; g.order()];
        for &s in normalizer.elements() {
            if seen[s as usize] || !g.is_pprime_element(s, p) {
                continue;
            }
            // N-conjugacy class of s; the scan order makes s its least member
            for &x in normalizer.elements() {
                seen[g.conjugate(s, x) as usize] = true;
            }
            out.push(Pair::new(g.clone(), p, sub.clone(), s)?);
        }
    }
    Ok(out)
}

/// Simultaneous conjugacy of two pairs in a shared ambient group.
pub fn pairs_conjugate(a: &Pair, b: &Pair) -> bool {
    if !same_group(&a.ambient, &b.ambient) || a.p != b.p {
        return false;
    }
    if a.subgroup.order() != b.subgroup.order() || a.elem_order() != b.elem_order() {
        return false;
    }
    (0..a.ambient.order() as Elem).any(|x| {
        a.ambient.conjugate(a.elem, x) == b.elem && a.subgroup.conjugate_by(x) == b.subgroup
    })
}

/// Isomorphism of pairs: an isomorphism f: `<Ps>` -> `<Qt>` with f(s) conjugate
/// to t. The ambient groups may differ.
pub fn pairs_isomorphic(a: &Pair, b: &Pair) -> Result<bool> {
    if a.p != b.p {
        return Ok(false);
    }
    if a.subgroup.order() != b.subgroup.order() || a.elem_order() != b.elem_order() {
        return Ok(false);
    }
    let span_a = a.span();
    let span_b = b.span();
    if span_a.order() != span_b.order() {
        return Ok(false);
    }
    let gb = &b.ambient;
    let mut targets: BTreeSet<Elem> = BTreeSet::new();
    for &x in span_b.elements() {
        targets.insert(gb.conjugate(b.elem, x));
    }
    for t in targets {
        if any_isomorphism(&span_a, &span_b, Some((a.elem, t)))?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Reduction to D-Delta pairs.

/// True when C_{`<s>`}(P) = 1, i.e. `<Ps>` has no nontrivial normal p'-subgroup.
pub fn is_ddelta(a: &Pair) -> bool {
    a.s_centralizer_of_p().len() == 1
}

/// The image pair of (P, s) in `<Ps>`/C_{`<s>`}(P), in a freshly materialized
/// quotient group. Idempotent under repetition, and the output is always a
/// D-Delta pair.
pub fn reduce_pair(a: &Pair) -> Result<Pair> {
    let span = a.span();
    let span_group = span.as_group()?;
    let to_span = |g: Elem| span.position_of(g).expect("span element") as Elem;
    let kernel_elems: Vec<Elem> = a.s_centralizer_of_p().iter().map(|&x| to_span(x)).collect();
    let kernel = Subgroup::new(span_group.clone(), kernel_elems)?;
    let qp = span_group.quotient(&kernel)?;
    let p_image: Vec<Elem> = a
        .subgroup
        .elements()
        .iter()
        .map(|&x| qp.projection.apply(to_span(x)))
        .collect();
    let mut p_image: Vec<Elem> = p_image;
    p_image.sort_unstable();
    p_image.dedup();
    let p_sub = Subgroup::new(qp.quotient.clone(), p_image)?;
    let s_image = qp.projection.apply(to_span(a.elem));
    Pair::new(qp.quotient.clone(), a.p, p_sub, s_image)
}

/// Whether `target` is isomorphic to a p'-quotient of `source`: some normal
/// p'-subgroup K of `<Ps>` has (PK/K, sK) isomorphic to the target.
pub fn is_pprime_quotient(target: &Pair, source: &Pair) -> Result<bool> {
    if target.p != source.p {
        return Ok(false);
    }
    if target.p_subgroup().order() != source.p_subgroup().order() {
        return Ok(false);
    }
    let span = source.span();
    let span_group = span.as_group()?;
    let to_span = |g: Elem| span.position_of(g).expect("span element") as Elem;
    let full = Subgroup::full(&span_group);
    for k in span_group.all_subgroups()? {
        if !k.is_pprime_group(source.p) || !k.is_normal_in(&full) {
            continue;
        }
        let qp = span_group.quotient(&k)?;
        let mut p_image: Vec<Elem> = source
            .subgroup
            .elements()
            .iter()
            .map(|&x| qp.projection.apply(to_span(x)))
            .collect();
        p_image.sort_unstable();
        p_image.dedup();
        let p_sub = Subgroup::new(qp.quotient.clone(), p_image)?;
        let s_image = qp.projection.apply(to_span(source.elem));
        let image = Pair::new(qp.quotient.clone(), source.p, p_sub, s_image)?;
        if pairs_isomorphic(target, &image)? {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Twisted diagonal pairs in a direct product.

const DIAGONAL_FACTOR_BOUND: usize = 32;

/// A pair (Q, t) in H x G whose p-subgroup is twisted diagonal.
#[derive(Clone)]
pub struct DiagonalPair {
    product: ProductGroup,
    pair: Pair,
}

impl fmt::Debug for DiagonalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DiagonalPair(Q={:?}, t=({},{}), in {})",
            self.pair.p_subgroup().elements(),
            self.t_left(),
            self.t_right(),
            self.product.group.name()
        )
    }
}

impl DiagonalPair {
    pub fn new(product: ProductGroup, pair: Pair) -> Result<DiagonalPair> {
        if !same_group(&product.group, pair.ambient()) {
            return Err(Error::InvalidPair {
                msg: "pair does not live in the stated product".into(),
            });
        }
        let dp = DiagonalPair { product, pair };
        if !dp.is_twisted_diagonal() {
            return Err(Error::InvalidPair {
                msg: "p-subgroup has a nontrivial projection kernel".into(),
            });
        }
        Ok(dp)
    }

    fn is_twisted_diagonal(&self) -> bool {
        // k_1 = 1 and k_2 = 1: no nonidentity element with a trivial coordinate
        self.pair.p_subgroup().elements().iter().all(|&x| {
            x == 0 || (self.product.left_of(x) != 0 && self.product.right_of(x) != 0)
        })
    }

    pub fn product(&self) -> &ProductGroup {
        &self.product
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn t_left(&self) -> Elem {
        self.product.left_of(self.pair.elem())
    }

    pub fn t_right(&self) -> Elem {
        self.product.right_of(self.pair.elem())
    }

    /// p_1(Q) as a subgroup of the left factor.
    pub fn p1_subgroup(&self) -> Subgroup {
        let elems = self.product.project_left(self.pair.p_subgroup().elements());
        Subgroup::new(self.product.left.clone(), elems).expect("projection of a subgroup")
    }

    /// p_2(Q) as a subgroup of the right factor.
    pub fn p2_subgroup(&self) -> Subgroup {
        let elems = self.product.project_right(self.pair.p_subgroup().elements());
        Subgroup::new(self.product.right.clone(), elems).expect("projection of a subgroup")
    }

    /// The canonical isomorphism eta: p_1(Q) -> p_2(Q) matching each left
    /// coordinate with its unique partner.
    pub fn eta(&self) -> GroupMap {
        let p1 = self.p1_subgroup();
        let p2 = self.p2_subgroup();
        let images: Vec<Elem> = p1
            .elements()
            .iter()
            .map(|&h| {
                let q = self
                    .pair
                    .p_subgroup()
                    .elements()
                    .iter()
                    .copied()
                    .find(|&x| self.product.left_of(x) == h)
                    .expect("left coordinate realized");
                self.product.right_of(q)
            })
            .collect();
        GroupMap::new(p1, p2, images).expect("eta is an isomorphism")
    }

    pub fn conjugate_by(&self, x: Elem) -> DiagonalPair {
        DiagonalPair {
            product: self.product.clone(),
            pair: self.pair.conjugate_by(x),
        }
    }
}

/// Twisted diagonal pairs of H x G up to conjugacy, enumerated from triples
/// (p-subgroup class of H, p-subgroup class of G, isomorphism up to fusion)
/// rather than from subgroups of the product.
pub fn enumerate_diagonal_pairs(
    h: &GroupRef,
    g: &GroupRef,
    p: u64,
) -> Result<Vec<DiagonalPair>> {
    for (name, size) in [(h.name(), h.order()), (g.name(), g.order())] {
        if size > DIAGONAL_FACTOR_BOUND {
            return Err(Error::TooLarge {
                what: format!("diagonal pair factor {}", name),
                size,
                bound: DIAGONAL_FACTOR_BOUND,
            });
        }
    }
    let product = ProductGroup::new(h, g)?;
    let h_classes = p_subgroup_classes(h, p)?;
    let g_classes = p_subgroup_classes(g, p)?;
    let mut found: Vec<DiagonalPair> = Vec::new();
    for pg in &g_classes {
        for ph in &h_classes {
            if pg.order() != ph.order() {
                continue;
            }
            let isos = isomorphisms(pg, ph, None)?;
            if isos.is_empty() {
                continue;
            }
            let orbit_reps = fuse_isomorphisms(h, g, ph, pg, &isos);
            for phi in orbit_reps {
                let d_elems: Vec<Elem> = pg
                    .elements()
                    .iter()
                    .map(|&x| product.pair(phi.apply(x), x))
                    .collect();
                let d_sub = Subgroup::new(product.group.clone(), d_elems)?;
                let normalizer = product.group.normalizer(&d_sub);
                let mut seen = vec![false; product.group.order()];
                for &t in normalizer.elements() {
                    if seen[t as usize] || !product.group.is_pprime_element(t, p) {
                        continue;
                    }
                    for &x in normalizer.elements() {
                        seen[product.group.conjugate(t, x) as usize] = true;
                    }
                    let pair = Pair::new(product.group.clone(), p, d_sub.clone(), t)?;
                    found.push(DiagonalPair::new(product.clone(), pair)?);
                }
            }
        }
    }
    // safety fusion pass under full product conjugacy
    let mut out: Vec<DiagonalPair> = Vec::new();
    for cand in found {
        if !out.iter().any(|k| pairs_conjugate(k.pair(), cand.pair())) {
            out.push(cand);
        }
    }
    out.sort_by(|a, b| {
        let ka = (a.pair.p_subgroup().order(), a.pair.p_subgroup().elements().to_vec(), a.pair.elem());
        let kb = (b.pair.p_subgroup().order(), b.pair.p_subgroup().elements().to_vec(), b.pair.elem());
        ka.cmp(&kb)
    });
    Ok(out)
}

/// Orbit representatives of isomorphisms phi: P -> P' under
/// phi ~ c_u . phi . c_v for u in N_H(P'), v in N_G(P).
fn fuse_isomorphisms(
    h: &GroupRef,
    g: &GroupRef,
    ph: &Subgroup,
    pg: &Subgroup,
    isos: &[GroupMap],
) -> Vec<GroupMap> {
    let images = |m: &GroupMap| -> Vec<Elem> { pg.elements().iter().map(|&x| m.apply(x)).collect() };
    let nh = h.normalizer(ph);
    let ng = g.normalizer(pg);
    let mut remaining: BTreeSet<Vec<Elem>> = isos.iter().map(&images).collect();
    let by_images: std::collections::HashMap<Vec<Elem>, GroupMap> = isos
        .iter()
        .map(|m| (images(m), m.clone()))
        .collect();
    let mut reps = Vec::new();
    while let Some(first) = remaining.iter().next().cloned() {
        reps.push(by_images[&first].clone());
        // close the orbit of `first` under both one-sided actions
        let mut orbit: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let mut stack = vec![first];
        while let Some(cur) = stack.pop() {
            if !orbit.insert(cur.clone()) {
                continue;
            }
            for &u in nh.elements() {
                let next: Vec<Elem> = cur.iter().map(|&y| h.conjugate(y, u)).collect();
                if !orbit.contains(&next) {
                    stack.push(next);
                }
            }
            for &v in ng.elements() {
                // precompose with conjugation by v: x -> phi(v^{-1} x v)
                let next: Vec<Elem> = pg
                    .elements()
                    .iter()
                    .map(|&x| {
                        let xv = g.conjugate(x, g.inv(v));
                        let idx = pg.position_of(xv).expect("normalizer fixes P");
                        cur[idx]
                    })
                    .collect();
                if !orbit.contains(&next) {
                    stack.push(next);
                }
            }
        }
        for o in orbit {
            remaining.remove(&o);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn s3() -> GroupRef {
        catalog::by_name("S3").unwrap()
    }

    #[test]
    fn enumerate_pairs_s3_p3() {
        let pairs = enumerate_pairs(&s3(), 3).unwrap();
        // brute-force oracle expectation: (1,1), (1,t), (C3,1), (C3,t)
        assert_eq!(pairs.len(), 4);
        let summary: Vec<(usize, u32)> = pairs
            .iter()
            .map(|a| (a.p_subgroup().order(), a.elem_order()))
            .collect();
        assert_eq!(summary, vec![(1, 1), (1, 2), (3, 1), (3, 2)]);
        // distinct representatives are pairwise non-conjugate
        for i in 0..pairs.len() {
            for j in 0..pairs.len() {
                assert_eq!(pairs_conjugate(&pairs[i], &pairs[j]), i == j);
            }
        }
    }

    #[test]
    fn enumerate_pairs_small() {
        let c1 = catalog::by_name("C1").unwrap();
        assert_eq!(enumerate_pairs(&c1, 2).unwrap().len(), 1);
        let c2 = catalog::by_name("C2").unwrap();
        let pairs = enumerate_pairs(&c2, 2).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].p_subgroup().order(), 1);
        assert_eq!(pairs[1].p_subgroup().order(), 2);
    }

    #[test]
    fn pair_validation() {
        let g = s3();
        let c3 = g.sylow(3);
        let t = (1..6 as Elem).find(|&x| g.elem_order(x) == 2).unwrap();
        assert!(Pair::new(g.clone(), 3, c3.clone(), t).is_ok());
        // a 3-element is not a 3'-element
        let r = (1..6 as Elem).find(|&x| g.elem_order(x) == 3).unwrap();
        assert!(Pair::new(g.clone(), 3, c3.clone(), r).is_err());
        // C2 is not a 3-group
        let c2 = Subgroup::generated(&g, &[t]);
        assert!(Pair::new(g.clone(), 3, c2, 0).is_err());
        assert!(Pair::new(g, 4, c3, 0).is_err());
    }

    #[test]
    fn span_and_exponent() {
        let g = s3();
        let c3 = g.sylow(3);
        let t = (1..6 as Elem).find(|&x| g.elem_order(x) == 2).unwrap();
        let pair = Pair::new(g.clone(), 3, c3, t).unwrap();
        let pg = PairGroup::new(pair);
        assert_eq!(pg.span().order(), 6);
        for &x in pg.span().elements() {
            let i = pg.s_exponent(x).unwrap();
            // consistency: x * s^{-i} lies in P
            let back = g.mul(x, g.pow(g.inv(t), i as i64));
            assert!(pg.pair().p_subgroup().contains(back));
        }
    }

    #[test]
    fn isomorphic_pairs_examples() {
        let g = s3();
        let pairs3 = enumerate_pairs(&g, 3).unwrap();
        let (triv_t, c3_1, c3_t) = (&pairs3[1], &pairs3[2], &pairs3[3]);
        // (1, s) vs (1, t) with equal orders in different groups
        let c6 = catalog::by_name("C6").unwrap();
        let c6_pairs = enumerate_pairs(&c6, 3).unwrap();
        let other = c6_pairs
            .iter()
            .find(|a| a.p_subgroup().is_trivial() && a.elem_order() == 2)
            .unwrap();
        assert!(pairs_isomorphic(triv_t, other).unwrap());
        // span orders 6 vs 3 differ
        assert!(!pairs_isomorphic(c3_t, c3_1).unwrap());
        // (C3, s)-pair of S3 vs the order-4 action pair in C3:C4
        let dic = catalog::by_name("C3:C4").unwrap();
        let dic_pairs = enumerate_pairs(&dic, 3).unwrap();
        let four = dic_pairs
            .iter()
            .find(|a| a.p_subgroup().order() == 3 && a.elem_order() == 4)
            .unwrap();
        assert!(!pairs_isomorphic(c3_t, four).unwrap());
        // reflexivity and symmetry spot checks
        for a in &pairs3 {
            assert!(pairs_isomorphic(a, a).unwrap());
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence_on_a_pooled_list() {
        // pairs pooled from several ambient groups
        let mut pool: Vec<Pair> = Vec::new();
        for (name, p) in [("S3", 3u64), ("C6", 3), ("C3:C4", 3), ("C3", 3)] {
            let g = catalog::by_name(name).unwrap();
            pool.extend(enumerate_pairs(&g, p).unwrap());
        }
        let n = pool.len();
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                rel[i][j] = pairs_isomorphic(&pool[i], &pool[j]).unwrap();
            }
        }
        for i in 0..n {
            assert!(rel[i][i], "reflexive at {}", i);
            for j in 0..n {
                assert_eq!(rel[i][j], rel[j][i], "symmetric at ({}, {})", i, j);
                for k in 0..n {
                    if rel[i][j] && rel[j][k] {
                        assert!(rel[i][k], "transitive at ({}, {}, {})", i, j, k);
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let g = s3();
        let pairs = enumerate_pairs(&g, 3).unwrap();
        // (1, t) reduces to (1, 1)
        let red = reduce_pair(&pairs[1]).unwrap();
        assert_eq!(red.ambient().order(), 1);
        assert!(red.p_subgroup().is_trivial());
        // (C3, t) has trivial centralizer: reduces to itself
        let c3t = &pairs[3];
        assert!(is_ddelta(c3t));
        let red = reduce_pair(c3t).unwrap();
        assert_eq!(red.ambient().order(), 6);
        assert!(pairs_isomorphic(&red, c3t).unwrap());
        // (C5, s) with s of order 6 acting through its order-2 quotient:
        // the kernel <s^2> of the action has order 3
        let c5c6 = {
            let c5 = catalog::cyclic(5).unwrap();
            let full = Subgroup::full(&c5);
            let inv = GroupMap::new(full.clone(), full, vec![0, 4, 3, 2, 1]).unwrap();
            catalog::semidirect(&c5, 6, &inv, "C5:C6").unwrap()
        };
        let pairs6 = enumerate_pairs(&c5c6, 5).unwrap();
        let a = pairs6
            .iter()
            .find(|a| a.p_subgroup().order() == 5 && a.elem_order() == 6)
            .unwrap();
        assert_eq!(a.s_centralizer_of_p().len(), 3);
        let red = reduce_pair(a).unwrap();
        assert_eq!(red.ambient().order(), 10);
        assert_eq!(red.elem_order(), 2);
        assert!(is_ddelta(&red));
        // idempotent under repetition
        let red2 = reduce_pair(&red).unwrap();
        assert!(pairs_isomorphic(&red, &red2).unwrap());
    }

    #[test]
    fn ddelta_examples() {
        let g = s3();
        let pairs = enumerate_pairs(&g, 3).unwrap();
        assert!(is_ddelta(&pairs[0])); // (1,1)
        assert!(!is_ddelta(&pairs[1])); // (1,t): C_<t>(1) = <t>
        assert!(is_ddelta(&pairs[3])); // (C3,t)
    }

    #[test]
    fn pprime_quotient_examples() {
        let g = s3();
        let pairs = enumerate_pairs(&g, 3).unwrap();
        for a in &pairs {
            let red = reduce_pair(a).unwrap();
            assert!(is_pprime_quotient(&red, a).unwrap());
        }
        // (1,1) is a p'-quotient of (1, s)
        let triv = reduce_pair(&pairs[1]).unwrap();
        assert!(is_pprime_quotient(&triv, &pairs[1]).unwrap());
        // no p'-quotient changes P
        let c2amb = catalog::by_name("C2").unwrap();
        let c2pair = enumerate_pairs(&c2amb, 2).unwrap()[1].clone();
        let c3amb = catalog::by_name("C3").unwrap();
        let c3pair = enumerate_pairs(&c3amb, 3).unwrap()[1].clone();
        assert!(!is_pprime_quotient(&c2pair, &c3pair).unwrap());
    }

    #[test]
    fn diagonal_pairs_c2() {
        let c2 = catalog::by_name("C2").unwrap();
        let dps = enumerate_diagonal_pairs(&c2, &c2, 2).unwrap();
        // (1,(1,1)) and (Delta(C2),(1,1))
        assert_eq!(dps.len(), 2);
        assert_eq!(dps[0].pair().p_subgroup().order(), 1);
        assert_eq!(dps[1].pair().p_subgroup().order(), 2);
        let eta = dps[1].eta();
        assert!(eta.is_bijective());
        for dp in &dps {
            assert_eq!(dp.p1_subgroup().order(), dp.p2_subgroup().order());
        }
    }

    #[test]
    fn diagonal_pairs_trivial_left() {
        let c1 = catalog::by_name("C1").unwrap();
        let g = s3();
        let dps = enumerate_diagonal_pairs(&c1, &g, 2).unwrap();
        // pairs are (1, (1, v)) with v an odd-order class of S3: {1, 3-cycles}
        assert_eq!(dps.len(), 2);
        for dp in &dps {
            assert!(dp.pair().p_subgroup().is_trivial());
            assert_eq!(dp.t_left(), 0);
        }
    }

    #[test]
    fn diagonal_pairs_s3_brute_force_oracle() {
        let g = s3();
        let dps = enumerate_diagonal_pairs(&g, &g, 3).unwrap();
        // independent oracle over the order-36 product: enumerate all
        // twisted diagonal p-subgroups directly and fuse
        let product = ProductGroup::new(&g, &g).unwrap();
        let k = &product.group;
        let sylow = k.sylow(3);
        let subs = k.subgroups_within(sylow.elements());
        let mut diag_classes: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for sub in subs {
            let twisted = sub.elements().iter().all(|&x| {
                x == 0 || (product.left_of(x) != 0 && product.right_of(x) != 0)
            });
            if !twisted {
                continue;
            }
            let mut best = sub.elements().to_vec();
            for x in 0..k.order() as Elem {
                let cand = sub.conjugate_by(x);
                if cand.elements() < best.as_slice() {
                    best = cand.elements().to_vec();
                }
            }
            diag_classes.insert(best);
        }
        // trivial and one Delta(C3) class
        assert_eq!(diag_classes.len(), 2);
        let from_enum: BTreeSet<usize> =
            dps.iter().map(|d| d.pair().p_subgroup().order()).collect();
        assert_eq!(from_enum, BTreeSet::from([1, 3]));
        // full list: 4 pairs over the trivial subgroup, 2 over Delta(C3)
        assert_eq!(dps.len(), 6);
        let over_delta = dps
            .iter()
            .filter(|d| d.pair().p_subgroup().order() == 3)
            .count();
        assert_eq!(over_delta, 2);
    }
}
