//! The ring FT(G) of p-permutation modules in exact coordinates.
//!
//! Elements are cyclotomic-linear combinations of monomial-module symbols
//! Ind_L^G k_lambda. Equality is equality of species vectors: the species
//! tau_{P,s} sends a symbol to the Brauer character of its Brauer quotient
//! at P evaluated at s, which for a monomial symbol is a coset sum
//!
//!   sum over xL in G/L with x^{-1}Px <= L and x^{-1}sx in L of
//!   lift(lambda(x^{-1}sx)).
//!
//! The two primitive idempotent formulas, the deflation constant, and the
//! four biset operations all live here.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::cyclo::{rat_int, CycloNum, Rational, RootOfUnity};
use crate::group::{same_group, Elem, GroupMap, GroupRef, QuotientPresentation, Subgroup};
use crate::pairs::{enumerate_pairs, pairs_conjugate, Pair, PairGroup};
use crate::{Error, Result};

/// Per-(group, prime) context: the ordered pair classes indexing species
/// coordinates and the working cyclotomic modulus (the lcm of the orders of
/// p'-elements).
pub struct TRing {
    group: GroupRef,
    p: u64,
    pairs: Vec<Pair>,
    pair_gens: Vec<Vec<Elem>>,
    modulus: u64,
}

impl fmt::Debug for TRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TRing({}, p={}, {} pair classes, modulus {})",
            self.group.name(),
            self.p,
            self.pairs.len(),
            self.modulus
        )
    }
}

impl TRing {
    pub fn new(group: &GroupRef, p: u64) -> Result<Arc<TRing>> {
        let pairs = enumerate_pairs(group, p)?;
        let pair_gens = pairs
            .iter()
            .map(|a| a.p_subgroup().minimal_generators())
            .collect();
        let mut modulus = 1u64;
        for g in 0..group.order() as Elem {
            if group.is_pprime_element(g, p) {
                modulus = num_integer::lcm(modulus, group.elem_order(g) as u64);
            }
        }
        Ok(Arc::new(TRing {
            group: group.clone(),
            p,
            pairs,
            pair_gens,
            modulus,
        }))
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Index of the conjugacy class of a pair of this ring's group.
    pub fn pair_index(&self, pair: &Pair) -> Option<usize> {
        self.pairs.iter().position(|q| pairs_conjugate(q, pair))
    }

    /// A validated monomial symbol: lambda must be a homomorphism with
    /// p'-order image whose kernel absorbs the p-elements of L.
    pub fn monomial(&self, sub: &Subgroup, exps: Vec<u64>) -> Result<MonomialSymbol> {
        if !same_group(sub.parent(), &self.group) {
            return Err(Error::Mismatch {
                msg: "monomial subgroup from a different group".into(),
            });
        }
        if exps.len() != sub.order() {
            return Err(Error::Mismatch {
                msg: "character exponent list length differs from subgroup order".into(),
            });
        }
        let m = self.modulus;
        if exps.iter().any(|&e| e >= m) {
            return Err(Error::Mismatch {
                msg: "character exponent outside the working modulus".into(),
            });
        }
        let els = sub.elements();
        let pos = |g: Elem| els.binary_search(&g).expect("closed subgroup");
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                let ab = self.group.mul(a, b);
                if (exps[i] + exps[j]) % m != exps[pos(ab)] {
                    return Err(Error::Mismatch {
                        msg: "exponent map is not a homomorphism".into(),
                    });
                }
            }
        }
        let g_all = exps.iter().fold(m, |acc, &e| num_integer::gcd(acc, e));
        let image_order = m / num_integer::gcd(m, g_all);
        if image_order.is_multiple_of(self.p) {
            return Err(Error::Mismatch {
                msg: "character image order is divisible by p".into(),
            });
        }
        for (i, &a) in els.iter().enumerate() {
            if self.group.is_p_element(a, self.p) && a != 0 && exps[i] != 0 {
                return Err(Error::Mismatch {
                    msg: "character kernel must contain all p-elements".into(),
                });
            }
        }
        Ok(MonomialSymbol {
            elements: els.to_vec(),
            exps,
        })
    }

    /// `[k]`: the trivial module Ind_G^G k.
    pub fn trivial_module(self: &Arc<Self>) -> TElement {
        let full = Subgroup::full(&self.group);
        let exps = vec![0u64; full.order()];
        let sym = self.monomial(&full, exps).expect("trivial symbol");
        self.from_terms([(sym, CycloNum::one())])
    }

    /// `[kG]`: the regular module Ind_1^G k.
    pub fn regular_module(self: &Arc<Self>) -> TElement {
        let sym = self
            .monomial(&Subgroup::trivial(&self.group), vec![0])
            .expect("regular symbol");
        self.from_terms([(sym, CycloNum::one())])
    }

    pub fn zero(self: &Arc<Self>) -> TElement {
        self.from_terms([])
    }

    pub fn from_terms(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (MonomialSymbol, CycloNum)>,
    ) -> TElement {
        let mut map: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
        for (sym, c) in terms {
            accumulate(&mut map, sym, c);
        }
        TElement {
            ring: self.clone(),
            terms: Some(map),
            species: OnceLock::new(),
        }
    }

    pub fn from_species(self: &Arc<Self>, values: Vec<CycloNum>) -> TElement {
        assert_eq!(values.len(), self.pairs.len());
        let el = TElement {
            ring: self.clone(),
            terms: None,
            species: OnceLock::new(),
        };
        el.species.set(SpeciesVector { values }).ok();
        el
    }

    /// tau_{P,s} of a single monomial symbol, by the coset scan.
    pub fn species_of_monomial(&self, sym: &MonomialSymbol, pair_idx: usize) -> CycloNum {
        let pair = &self.pairs[pair_idx];
        let gens = &self.pair_gens[pair_idx];
        self.species_at(sym, gens, pair.elem())
    }

    /// tau of a symbol at an explicit (generators-of-P, s); used both for the
    /// ring's own pair classes and for foreign pairs of the same group.
    pub fn species_at(&self, sym: &MonomialSymbol, p_gens: &[Elem], s: Elem) -> CycloNum {
        let g = &self.group;
        let n = g.order();
        let in_l = |x: Elem| sym.elements.binary_search(&x).is_ok();
        let mut covered = vec![false; n];
        let mut acc = CycloNum::zero();
        for x in 0..n as Elem {
            if covered[x as usize] {
                continue;
            }
            for &l in &sym.elements {
                covered[g.mul(x, l) as usize] = true;
            }
            let xi = g.inv(x);
            if !p_gens.iter().all(|&q| in_l(g.conjugate(q, xi))) {
                continue;
            }
            let sx = g.conjugate(s, xi);
            if let Ok(pos) = sym.elements.binary_search(&sx) {
                acc = acc.add(&RootOfUnity::new(self.modulus, sym.exps[pos] as i64).to_cyclo());
            }
        }
        acc
    }
}

fn accumulate(map: &mut BTreeMap<MonomialSymbol, CycloNum>, sym: MonomialSymbol, c: CycloNum) {
    if c.is_zero() {
        return;
    }
    match map.entry(sym) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get().add(&c);
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// The symbol Ind_L^G k_lambda, with lambda stored as exponents (mod the
/// ring's working modulus) aligned with the sorted element list of L.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MonomialSymbol {
    elements: Vec<Elem>,
    exps: Vec<u64>,
}

impl MonomialSymbol {
    pub fn subgroup_elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }
}

/// Species coordinates of an element, indexed exactly like the ring's pair
/// class list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpeciesVector {
    pub values: Vec<CycloNum>,
}

impl SpeciesVector {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycloNum::is_zero)
    }
}

/// An element of FT(G): a formal combination of monomial symbols with a
/// cached species vector. Products are species-level only; the symbol
/// expansion of a product is never reconstructed.
#[derive(Clone)]
pub struct TElement {
    ring: Arc<TRing>,
    terms: Option<BTreeMap<MonomialSymbol, CycloNum>>,
    species: OnceLock<SpeciesVector>,
}

impl fmt::Debug for TElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.terms {
            Some(t) => write!(f, "TElement({} terms over {})", t.len(), self.ring.group.name()),
            None => write!(f, "TElement(species-level over {})", self.ring.group.name()),
        }
    }
}

impl TElement {
    pub fn ring(&self) -> &Arc<TRing> {
        &self.ring
    }

    /// The monomial expansion, when this element still carries one.
    pub fn terms(&self) -> Option<&BTreeMap<MonomialSymbol, CycloNum>> {
        self.terms.as_ref()
    }

    pub fn species(&self) -> &SpeciesVector {
        self.species.get_or_init(|| {
            let terms = self
                .terms
                .as_ref()
                .expect("species-only elements are cached at construction");
            let values = (0..self.ring.pairs.len())
                .map(|i| {
                    let mut acc = CycloNum::zero();
                    for (sym, c) in terms {
                        let v = self.ring.species_of_monomial(sym, i);
                        if !v.is_zero() {
                            acc = acc.add(&c.mul(&v));
                        }
                    }
                    acc
                })
                .collect();
            SpeciesVector { values }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.species().is_zero()
    }

    pub fn add(&self, other: &TElement) -> TElement {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring),
            "mismatched rings in TElement::add"
        );
        match (&self.terms, &other.terms) {
            (Some(a), Some(b)) => {
                let mut map = a.clone();
                for (sym, c) in b {
                    accumulate(&mut map, sym.clone(), c.clone());
                }
                TElement {
                    ring: self.ring.clone(),
                    terms: Some(map),
                    species: OnceLock::new(),
                }
            }
            _ => {
                let values = self
                    .species()
                    .values
                    .iter()
                    .zip(other.species().values.iter())
                    .map(|(x, y)| x.add(y))
                    .collect();
                self.ring.from_species(values)
            }
        }
    }

    pub fn neg(&self) -> TElement {
        self.scale(&CycloNum::from_int(-1))
    }

    pub fn sub(&self, other: &TElement) -> TElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycloNum) -> TElement {
        match &self.terms {
            Some(t) => {
                let map: BTreeMap<MonomialSymbol, CycloNum> = t
                    .iter()
                    .filter_map(|(sym, v)| {
                        let w = v.mul(c);
                        (!w.is_zero()).then(|| (sym.clone(), w))
                    })
                    .collect();
                TElement {
                    ring: self.ring.clone(),
                    terms: Some(map),
                    species: OnceLock::new(),
                }
            }
            None => {
                let values = self.species().values.iter().map(|v| v.mul(c)).collect();
                self.ring.from_species(values)
            }
        }
    }

    pub fn scale_rat(&self, q: &Rational) -> TElement {
        self.scale(&CycloNum::from_rational(q.clone()))
    }

    /// Tensor product, computed pointwise on species coordinates; the result
    /// carries no symbol certificate.
    pub fn mul(&self, other: &TElement) -> TElement {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring),
            "mismatched rings in TElement::mul"
        );
        let values = self
            .species()
            .values
            .iter()
            .zip(other.species().values.iter())
            .map(|(x, y)| x.mul(y))
            .collect();
        self.ring.from_species(values)
    }
}

impl PartialEq for TElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.species() == other.species()
    }
}

impl Eq for TElement {}

// ---------------------------------------------------------------------------
// Moebius functions.

/// mu(L, top) over an explicit list of subgroups, by the downward recursion
/// sum_{L <= M <= top} mu(M, top) = delta_{L, top}. Keys are element lists;
/// subgroups not below `top` get no entry.
pub fn moebius_table(subs: &[Subgroup], top: &Subgroup) -> HashMap<Vec<Elem>, i64> {
    let mut below: Vec<&Subgroup> = subs.iter().filter(|s| s.is_subset_of(top)).collect();
    below.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.elements().cmp(b.elements())));
    let mut mu: HashMap<Vec<Elem>, i64> = HashMap::new();
    for (i, sub) in below.iter().enumerate() {
        if sub.order() == top.order() {
            mu.insert(sub.elements().to_vec(), 1);
            continue;
        }
        let mut acc = 0i64;
        for upper in below.iter().take(i) {
            if sub.is_subset_of(upper) {
                acc += mu[upper.elements()];
            }
        }
        mu.insert(sub.elements().to_vec(), -acc);
    }
    mu
}

/// The s-stable subgroups of P (as subgroups of the ambient group).
pub fn s_stable_subgroups(pair: &Pair) -> Vec<Subgroup> {
    let g = pair.ambient();
    g.subgroups_within(pair.p_subgroup().elements())
        .into_iter()
        .filter(|l| l.conjugate_by(pair.elem()) == *l)
        .collect()
}

// ---------------------------------------------------------------------------
// Idempotent formulas.

impl TRing {
    fn phi_tilde_inverse(&self, ord_s: u64, e: u64) -> CycloNum {
        RootOfUnity::new(ord_s, -(e as i64)).to_cyclo()
    }

    /// Character exponents of the inflated character phi_e on a subgroup of
    /// the span: lambda(g) = e * i(g) scaled into the working modulus, where
    /// g = x s^{i(g)} with x in P.
    fn inflated_exps(&self, pg: &PairGroup, sub: &Subgroup, e: u64) -> Vec<u64> {
        let ord_s = pg.pair().elem_order() as u64;
        let scale = self.modulus / ord_s;
        sub.elements()
            .iter()
            .map(|&x| {
                let i = pg.s_exponent(x).expect("element of <Ps>") as u64;
                (e * i % ord_s) * scale
            })
            .collect()
    }

    /// |C_{N_G(P)/P}(sP)|, the denominator factor of the first formula.
    fn centralizer_in_bar_normalizer(&self, pair: &Pair) -> Result<usize> {
        let g = &self.group;
        let n_sub = g.normalizer(pair.p_subgroup());
        let n_grp = n_sub.as_group()?;
        let to_n = |x: Elem| n_sub.position_of(x).expect("normalizer element") as Elem;
        let p_in_n: Vec<Elem> = pair.p_subgroup().elements().iter().map(|&x| to_n(x)).collect();
        let kernel = Subgroup::new(n_grp.clone(), p_in_n)?;
        let qp = n_grp.quotient(&kernel)?;
        let s_bar = qp.projection.apply(to_n(pair.elem()));
        Ok(qp.quotient.centralizer(s_bar).order())
    }

    /// First idempotent formula: a sum over subgroups L of `<Ps>` with
    /// PL = `<Ps>`, weighted by |L| mu(L, `<Ps>`) phi~(s^{-1}).
    pub fn idempotent(self: &Arc<Self>, pair: &Pair) -> Result<TElement> {
        let g = &self.group;
        let pg = PairGroup::new(pair.clone());
        let span = pg.span();
        let p_sub = pair.p_subgroup();
        let ord_s = pair.elem_order() as u64;
        let denom = rat_int(
            (p_sub.order() as i64)
                * (ord_s as i64)
                * (self.centralizer_in_bar_normalizer(pair)? as i64),
        );
        let subs = g.subgroups_within(span.elements());
        let mu = moebius_table(&subs, span);
        let mut terms: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
        for l in &subs {
            // PL = <Ps> as product set
            let cap = l.elements().iter().filter(|&&x| p_sub.contains(x)).count();
            if p_sub.order() * l.order() / cap != span.order() {
                continue;
            }
            let m = mu[l.elements()];
            if m == 0 {
                continue;
            }
            let weight = rat_int(l.order() as i64 * m) / &denom;
            for e in 0..ord_s {
                let coeff = self.phi_tilde_inverse(ord_s, e).scale(&weight);
                let sym = self.monomial(l, self.inflated_exps(&pg, l, e))?;
                accumulate(&mut terms, sym, coeff);
            }
        }
        Ok(TElement {
            ring: self.clone(),
            terms: Some(terms),
            species: OnceLock::new(),
        })
    }

    /// Second idempotent formula: a sum over s-stable subgroups L of P,
    /// weighted by |C_L(s)| mu((L,P)^s) on symbols over `<Ls>`.
    pub fn idempotent_v2(self: &Arc<Self>, pair: &Pair) -> Result<TElement> {
        let g = &self.group;
        let pg = PairGroup::new(pair.clone());
        let p_sub = pair.p_subgroup();
        let s = pair.elem();
        let ord_s = pair.elem_order() as u64;
        let n_sub = g.normalizer(p_sub);
        let denom = rat_int(
            n_sub
                .elements()
                .iter()
                .filter(|&&x| g.commutes(x, s))
                .count() as i64,
        );
        let stable = s_stable_subgroups(pair);
        let mu = moebius_table(&stable, p_sub);
        let mut terms: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
        for l in &stable {
            let m = mu[l.elements()];
            if m == 0 {
                continue;
            }
            let c_l_s = l.elements().iter().filter(|&&x| g.commutes(x, s)).count();
            let weight = rat_int(c_l_s as i64 * m) / &denom;
            let mut seed = l.elements().to_vec();
            seed.push(s);
            let ls_span = Subgroup::generated(g, &seed);
            for e in 0..ord_s {
                let coeff = self.phi_tilde_inverse(ord_s, e).scale(&weight);
                let sym = self.monomial(&ls_span, self.inflated_exps(&pg, &ls_span, e))?;
                accumulate(&mut terms, sym, coeff);
            }
        }
        Ok(TElement {
            ring: self.clone(),
            terms: Some(terms),
            species: OnceLock::new(),
        })
    }

    /// The indicator species vector of a pair's class, i.e. the idempotent
    /// as a species-level element.
    pub fn idempotent_species(self: &Arc<Self>, pair: &Pair) -> TElement {
        let idx = self.pair_index(pair).expect("pair of this ring's group");
        let values = (0..self.pairs.len())
            .map(|i| if i == idx { CycloNum::one() } else { CycloNum::zero() })
            .collect();
        self.from_species(values)
    }
}

/// The deflation constant m_{P,s,N} for G = `<Ps>` and N normal in G:
/// |s| / (|N meet `<s>`| |C_G(s)|) * sum over s-stable Q <= P with `<Qs>`N = G
/// of |C_Q(s)| mu((Q,P)^s).
pub fn deflation_constant(pair: &Pair, n: &Subgroup) -> Result<CycloNum> {
    let g = pair.ambient();
    let span = pair.span();
    if span.order() != g.order() {
        return Err(Error::InvalidPair {
            msg: "deflation constant needs G = <Ps>".into(),
        });
    }
    if !same_group(n.parent(), g) || !n.is_normal_in(&Subgroup::full(g)) {
        return Err(Error::NotNormal);
    }
    let s = pair.elem();
    let ord_s = pair.elem_order() as i64;
    let n_cap_s = (0..ord_s).filter(|&i| n.contains(g.pow(s, i))).count() as i64;
    let c_g_s = g.centralizer(s).order() as i64;
    let stable = s_stable_subgroups(pair);
    let mu = moebius_table(&stable, pair.p_subgroup());
    let mut sum = 0i64;
    for q in &stable {
        let mut seed = q.elements().to_vec();
        seed.push(s);
        let qs = Subgroup::generated(g, &seed);
        let cap = qs.elements().iter().filter(|&&x| n.contains(x)).count();
        if qs.order() * n.order() / cap != g.order() {
            continue;
        }
        let c_q_s = q.elements().iter().filter(|&&x| g.commutes(x, s)).count() as i64;
        sum += c_q_s * mu[q.elements()];
    }
    let value = rat_int(ord_s * sum) / rat_int(n_cap_s * c_g_s);
    Ok(CycloNum::from_rational(value))
}

// ---------------------------------------------------------------------------
// Biset operations on monomial symbols.
//
// The target ring's group must be the materialization of the relevant
// subgroup or quotient: `sub.as_group()` numbers elements by their position
// in the sorted element list, and quotient groups number cosets by least
// representative, so positions are the coordinate change.

fn rescale_exp(exp: u64, from_modulus: u64, to_modulus: u64) -> u64 {
    if from_modulus == to_modulus {
        return exp;
    }
    let prod = exp as u128 * to_modulus as u128;
    assert!(
        prod.is_multiple_of(from_modulus as u128),
        "character value of order not dividing the target modulus"
    );
    ((prod / from_modulus as u128) % to_modulus as u128) as u64
}

/// Restriction along H <= G by Mackey decomposition over H\G/L double
/// cosets with least-identifier representatives.
pub fn op_res(h_ring: &Arc<TRing>, h_sub: &Subgroup, x: &TElement) -> Result<TElement> {
    let g_ring = x.ring();
    let g = g_ring.group();
    if !same_group(h_sub.parent(), g) || h_ring.group().order() != h_sub.order() {
        return Err(Error::Mismatch {
            msg: "restriction target does not materialize the subgroup".into(),
        });
    }
    let terms = x.terms().ok_or_else(|| Error::Mismatch {
        msg: "restriction needs a symbol-level element".into(),
    })?;
    let mut out: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
    for (sym, c) in terms {
        let l_elems = sym.subgroup_elements();
        let mut covered = vec![false; g.order()];
        for rep in 0..g.order() as Elem {
            if covered[rep as usize] {
                continue;
            }
            for &h in h_sub.elements() {
                for &l in l_elems {
                    covered[g.mul(g.mul(h, rep), l) as usize] = true;
                }
            }
            // K = H meet rep L rep^{-1}, with transported character
            let ri = g.inv(rep);
            let mut k_positions: Vec<Elem> = Vec::new();
            let mut k_exps: Vec<u64> = Vec::new();
            for (hi, &h) in h_sub.elements().iter().enumerate() {
                let conj = g.conjugate(h, ri);
                if let Ok(pos) = l_elems.binary_search(&conj) {
                    k_positions.push(hi as Elem);
                    k_exps.push(rescale_exp(
                        sym.exponents()[pos],
                        g_ring.modulus(),
                        h_ring.modulus(),
                    ));
                }
            }
            let k_sub = Subgroup::new(h_ring.group().clone(), k_positions)?;
            let new_sym = h_ring.monomial(&k_sub, k_exps)?;
            accumulate(&mut out, new_sym, c.clone());
        }
    }
    Ok(h_ring.from_terms(out))
}

/// Induction along H <= G by transitivity: Ind_H^G Ind_L^H = Ind_L^G.
pub fn op_ind(g_ring: &Arc<TRing>, h_sub: &Subgroup, x: &TElement) -> Result<TElement> {
    let h_ring = x.ring();
    let g = g_ring.group();
    if !same_group(h_sub.parent(), g) || h_ring.group().order() != h_sub.order() {
        return Err(Error::Mismatch {
            msg: "induction source does not materialize the subgroup".into(),
        });
    }
    let terms = x.terms().ok_or_else(|| Error::Mismatch {
        msg: "induction needs a symbol-level element".into(),
    })?;
    let mut out: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
    for (sym, c) in terms {
        let elements: Vec<Elem> = sym
            .subgroup_elements()
            .iter()
            .map(|&i| h_sub.elements()[i as usize])
            .collect();
        let exps: Vec<u64> = sym
            .exponents()
            .iter()
            .map(|&e| rescale_exp(e, h_ring.modulus(), g_ring.modulus()))
            .collect();
        let l_sub = Subgroup::new(g.clone(), elements)?;
        // parent element order matches subgroup order, so exponents stay aligned
        let new_sym = g_ring.monomial(&l_sub, exps)?;
        accumulate(&mut out, new_sym, c.clone());
    }
    Ok(g_ring.from_terms(out))
}

/// Inflation along G -> G/N: Inf Ind_X^{G/N} k_phi = Ind_{Xbar}^G k_{phi o proj}.
pub fn op_inf(g_ring: &Arc<TRing>, qp: &QuotientPresentation, x: &TElement) -> Result<TElement> {
    let q_ring = x.ring();
    if !same_group(&qp.parent, g_ring.group()) || !same_group(&qp.quotient, q_ring.group()) {
        return Err(Error::Mismatch {
            msg: "inflation presentation does not match the rings".into(),
        });
    }
    let terms = x.terms().ok_or_else(|| Error::Mismatch {
        msg: "inflation needs a symbol-level element".into(),
    })?;
    let g = g_ring.group();
    let mut out: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
    for (sym, c) in terms {
        let mut elements: Vec<Elem> = Vec::new();
        let mut exps: Vec<u64> = Vec::new();
        for e in 0..g.order() as Elem {
            let img = qp.projection.apply(e);
            if let Ok(pos) = sym.subgroup_elements().binary_search(&img) {
                elements.push(e);
                exps.push(rescale_exp(
                    sym.exponents()[pos],
                    q_ring.modulus(),
                    g_ring.modulus(),
                ));
            }
        }
        let lifted = Subgroup::new(g.clone(), elements)?;
        let new_sym = g_ring.monomial(&lifted, exps)?;
        accumulate(&mut out, new_sym, c.clone());
    }
    Ok(g_ring.from_terms(out))
}

/// Deflation along G -> G/N: a symbol survives exactly when its character is
/// trivial on L meet N, and then maps to Ind_{LN/N}^{G/N} k_{lambda bar}.
pub fn op_def(q_ring: &Arc<TRing>, qp: &QuotientPresentation, x: &TElement) -> Result<TElement> {
    let g_ring = x.ring();
    if !same_group(&qp.parent, g_ring.group()) || !same_group(&qp.quotient, q_ring.group()) {
        return Err(Error::Mismatch {
            msg: "deflation presentation does not match the rings".into(),
        });
    }
    let terms = x.terms().ok_or_else(|| Error::Mismatch {
        msg: "deflation needs a symbol-level element".into(),
    })?;
    let mut out: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
    for (sym, c) in terms {
        let mut image: BTreeMap<Elem, u64> = BTreeMap::new();
        let mut alive = true;
        for (i, &l) in sym.subgroup_elements().iter().enumerate() {
            let img = qp.projection.apply(l);
            let e = sym.exponents()[i];
            if img == 0 && e != 0 {
                // lambda restricted to L meet N is nontrivial: term dies
                alive = false;
                break;
            }
            match image.entry(img) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(e);
                }
                std::collections::btree_map::Entry::Occupied(o) => {
                    // well-definedness of lambda bar on cosets
                    if *o.get() != e {
                        alive = false;
                        break;
                    }
                }
            }
        }
        if !alive {
            continue;
        }
        let elements: Vec<Elem> = image.keys().copied().collect();
        let exps: Vec<u64> = image
            .values()
            .map(|&e| rescale_exp(e, g_ring.modulus(), q_ring.modulus()))
            .collect();
        let l_bar = Subgroup::new(q_ring.group().clone(), elements)?;
        let new_sym = q_ring.monomial(&l_bar, exps)?;
        accumulate(&mut out, new_sym, c.clone());
    }
    Ok(q_ring.from_terms(out))
}

/// Transport along a group isomorphism.
pub fn op_iso(target_ring: &Arc<TRing>, f: &GroupMap, x: &TElement) -> Result<TElement> {
    let src_ring = x.ring();
    if !same_group(src_ring.group(), f.source().parent())
        || !same_group(target_ring.group(), f.target().parent())
        || !f.is_bijective()
        || f.source().order() != src_ring.group().order()
        || f.target().order() != target_ring.group().order()
    {
        return Err(Error::Mismatch {
            msg: "transport needs a bijective map between the full groups".into(),
        });
    }
    let terms = x.terms().ok_or_else(|| Error::Mismatch {
        msg: "transport needs a symbol-level element".into(),
    })?;
    let mut out: BTreeMap<MonomialSymbol, CycloNum> = BTreeMap::new();
    for (sym, c) in terms {
        let mut moved: Vec<(Elem, u64)> = sym
            .subgroup_elements()
            .iter()
            .zip(sym.exponents())
            .map(|(&l, &e)| {
                (
                    f.apply(l),
                    rescale_exp(e, src_ring.modulus(), target_ring.modulus()),
                )
            })
            .collect();
        moved.sort_unstable();
        let elements: Vec<Elem> = moved.iter().map(|&(l, _)| l).collect();
        let exps: Vec<u64> = moved.iter().map(|&(_, e)| e).collect();
        let sub = Subgroup::new(target_ring.group().clone(), elements)?;
        let new_sym = target_ring.monomial(&sub, exps)?;
        accumulate(&mut out, new_sym, c.clone());
    }
    Ok(target_ring.from_terms(out))
}

// ---------------------------------------------------------------------------

impl fmt::Display for TElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.terms {
            None => write!(f, "<species-level element>"),
            Some(terms) if terms.is_empty() => write!(f, "0"),
            Some(terms) => {
                for (i, (sym, c)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({}) * Ind[L={:?}, chi={:?}]", c, sym.elements, sym.exps)?;
                }
                Ok(())
            }
        }
    }
}
