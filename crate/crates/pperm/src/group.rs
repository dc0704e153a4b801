//! Finite groups as explicit multiplication tables, with the subgroup,
//! conjugacy and homomorphism machinery the rest of the crate consumes.
//!
//! Element identifiers are indices into the table; 0 is always the identity.
//! Groups are immutable after construction and shared through [`GroupRef`].

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::{Error, Result};

pub type Elem = u16;
pub type GroupRef = Arc<Group>;

/// Largest order for which the (cubic) associativity check runs at
/// construction time. Larger tables are validated as Latin squares only.
const ASSOC_CHECK_BOUND: usize = 128;
/// Hard bound for table-backed groups (direct products of two order-32
/// groups are the largest ambient objects ever built).
const TABLE_BOUND: usize = 1024;
/// Bound for closures generated from permutations.
pub const PERM_CLOSURE_BOUND: usize = 512;
/// Bound for exhaustive subgroup enumeration.
pub const SUBGROUP_ENUM_BOUND: usize = 128;
/// Bound for exhaustive isomorphism search.
pub const ISO_SEARCH_BOUND: usize = 64;

pub struct Group {
    name: String,
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    elem_order: Vec<u32>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order)
    }
}

pub fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b)
}

impl Group {
    /// Validates and wraps a full multiplication table. Row/column 0 must be
    /// the identity, every row and column a permutation, and (for orders up
    /// to 128) all triples associative.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<GroupRef> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Format {
                msg: "empty multiplication table".into(),
            });
        }
        if n > TABLE_BOUND {
            return Err(Error::TooLarge {
                what: "multiplication table".into(),
                size: n,
                bound: TABLE_BOUND,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::Format {
                    msg: format!("table row of length {} in a table of order {}", row.len(), n),
                });
            }
            for &v in row {
                if v >= n {
                    return Err(Error::Format {
                        msg: format!("table entry {} out of range 0..{}", v, n),
                    });
                }
                flat.push(v as Elem);
            }
        }
        Self::validated(name.into(), n, flat)
    }

    fn validated(name: String, n: usize, flat: Vec<Elem>) -> Result<GroupRef> {
        for g in 0..n {
            if flat[g] as usize != g || flat[g * n] as usize != g {
                return Err(Error::IdentityViolation);
            }
        }
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..n {
                let v = flat[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::NotLatinSquare {
                        detail: format!("row {} repeats element {}", r, v),
                    });
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let v = flat[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::NotLatinSquare {
                        detail: format!("column {} repeats element {}", c, v),
                    });
                }
                seen[v] = true;
            }
        }
        if n <= ASSOC_CHECK_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = flat[a * n + b] as usize;
                    for c in 0..n {
                        let bc = flat[b * n + c] as usize;
                        if flat[ab * n + c] != flat[a * n + bc] {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        let mut inverse = vec![0 as Elem; n];
        for g in 0..n {
            for h in 0..n {
                if flat[g * n + h] == 0 {
                    inverse[g] = h as Elem;
                    break;
                }
            }
        }
        let mut elem_order = vec![0u32; n];
        for g in 0..n {
            let mut x = g as Elem;
            let mut k = 1u32;
            while x != 0 {
                x = flat[x as usize * n + g];
                k += 1;
            }
            elem_order[g] = k;
        }
        Ok(Arc::new(Group {
            name,
            order: n,
            table: flat,
            inverse,
            elem_order,
        }))
    }

    /// Closure of permutations of {1..degree} under composition, numbered
    /// breadth-first from the identity in the given generator order.
    pub fn from_permutation_generators(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<GroupRef> {
        for g in generators {
            if g.len() != degree {
                return Err(Error::Format {
                    msg: format!("permutation on {} points in degree {}", g.len(), degree),
                });
            }
            let mut seen = vec![false; degree];
            for &img in g {
                if img >= degree || seen[img] {
                    return Err(Error::Format {
                        msg: format!("not a permutation of 1..{}", degree),
                    });
                }
                seen[img] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head].clone();
            head += 1;
            for g in generators {
                // right multiplication: (cur * g)(x) = cur(g(x))
                let next: Vec<usize> = (0..degree).map(|x| cur[g[x]]).collect();
                if !index.contains_key(&next) {
                    if elems.len() >= PERM_CLOSURE_BOUND {
                        return Err(Error::TooLarge {
                            what: "generated permutation group".into(),
                            size: elems.len() + 1,
                            bound: PERM_CLOSURE_BOUND,
                        });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
        }
        let n = elems.len();
        let mut flat = vec![0 as Elem; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let prod: Vec<usize> = (0..degree).map(|x| a[b[x]]).collect();
                flat[i * n + j] = index[&prod] as Elem;
            }
        }
        Self::validated(name.into(), n, flat)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    pub fn elem_order(&self, a: Elem) -> u32 {
        self.elem_order[a as usize]
    }

    pub fn pow(&self, g: Elem, k: i64) -> Elem {
        let ord = self.elem_order(g) as i64;
        let mut k = k.rem_euclid(ord);
        let mut acc = 0 as Elem;
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// x g x^{-1}
    #[inline]
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Orbits of the conjugation action, sorted by least member; each class
    /// is sorted and led by its representative.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let n = self.order;
        let mut visited = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n as Elem {
            if visited[g as usize] {
                continue;
            }
            let mut class = BTreeSet::new();
            for x in 0..n as Elem {
                class.insert(self.conjugate(g, x));
            }
            for &h in &class {
                visited[h as usize] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Sorted element list of the subgroup generated by `seed`.
    pub fn closure(&self, seed: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut list: Vec<Elem> = vec![0];
        let mut head = 0;
        for &g in seed {
            if !member[g as usize] {
                member[g as usize] = true;
                list.push(g);
            }
        }
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in seed {
                for prod in [self.mul(x, g), self.mul(g, x)] {
                    if !member[prod as usize] {
                        member[prod as usize] = true;
                        list.push(prod);
                    }
                }
            }
        }
        list.sort_unstable();
        list
    }

    pub fn is_p_element(&self, g: Elem, p: u64) -> bool {
        let mut ord = self.elem_order(g) as u64;
        while ord.is_multiple_of(p) {
            ord /= p;
        }
        ord == 1
    }

    pub fn is_pprime_element(&self, g: Elem, p: u64) -> bool {
        !(self.elem_order(g) as u64).is_multiple_of(p)
    }

    /// The p'-factor of g in the decomposition g = g_p * g_{p'} into
    /// commuting parts of p-power and p'-order.
    pub fn pprime_part(&self, g: Elem, p: u64) -> Elem {
        let ord = self.elem_order(g) as u64;
        let mut pk = 1u64;
        let mut rest = ord;
        while rest.is_multiple_of(p) {
            rest /= p;
            pk *= p;
        }
        if rest == 1 {
            return 0;
        }
        // a * pk = 1 (mod rest)
        let a = mod_inverse(pk % rest, rest);
        self.pow(g, ((a * pk) % ord) as i64)
    }

    /// The p-factor of g; see [`Group::pprime_part`].
    pub fn p_part(&self, g: Elem, p: u64) -> Elem {
        let ord = self.elem_order(g) as u64;
        let mut pk = 1u64;
        let mut rest = ord;
        while rest.is_multiple_of(p) {
            rest /= p;
            pk *= p;
        }
        if pk == 1 {
            return 0;
        }
        let b = mod_inverse(rest % pk, pk);
        self.pow(g, ((b * rest) % ord) as i64)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // extended Euclid; gcd(a, m) = 1 by construction
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        old_r -= q * r;
        std::mem::swap(&mut old_r, &mut r);
        old_s -= q * s;
        std::mem::swap(&mut old_s, &mut s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

// ---------------------------------------------------------------------------

/// A subgroup of a table-backed group, stored as its sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupRef,
    elements: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?} of {}", self.elements, self.parent.name())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.parent, &other.parent) && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Checks closure, identity, inverses and the Lagrange divisibility.
    pub fn new(parent: GroupRef, mut elements: Vec<Elem>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::Format {
                msg: "subgroup must contain the identity".into(),
            });
        }
        if !parent.order().is_multiple_of(elements.len()) {
            return Err(Error::Format {
                msg: format!(
                    "subset of size {} cannot be a subgroup of a group of order {}",
                    elements.len(),
                    parent.order()
                ),
            });
        }
        for &a in &elements {
            if elements.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::Format {
                    msg: format!("subset not closed under inversion at {}", a),
                });
            }
            for &b in &elements {
                if elements.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::Format {
                        msg: format!("subset not closed under multiplication at {}*{}", a, b),
                    });
                }
            }
        }
        Ok(Subgroup { parent, elements })
    }

    fn from_sorted_unchecked(parent: GroupRef, elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent, elements }
    }

    pub fn generated(parent: &GroupRef, seed: &[Elem]) -> Self {
        let elements = parent.closure(seed);
        Subgroup::from_sorted_unchecked(parent.clone(), elements)
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Subgroup::from_sorted_unchecked(parent.clone(), vec![0])
    }

    pub fn full(parent: &GroupRef) -> Self {
        let elements = (0..parent.order() as Elem).collect();
        Subgroup::from_sorted_unchecked(parent.clone(), elements)
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn conjugate_by(&self, x: Elem) -> Subgroup {
        let mut elements: Vec<Elem> = self
            .elements
            .iter()
            .map(|&g| self.parent.conjugate(g, x))
            .collect();
        elements.sort_unstable();
        Subgroup::from_sorted_unchecked(self.parent.clone(), elements)
    }

    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        let gens = self.minimal_generators();
        ambient
            .elements
            .iter()
            .all(|&x| gens.iter().all(|&g| self.contains(self.parent.conjugate(g, x))))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    pub fn is_pprime_group(&self, p: u64) -> bool {
        !(self.order() as u64).is_multiple_of(p)
    }

    /// Greedy minimal generating sequence: repeatedly adjoin the least
    /// element outside the running span.
    pub fn minimal_generators(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut span = vec![0 as Elem];
        for &g in &self.elements {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.parent.closure(&gens);
                if span.len() == self.elements.len() {
                    break;
                }
            }
        }
        gens
    }

    /// Materializes the subgroup as a standalone group. The i-th element of
    /// the new table corresponds to `self.elements()[i]`, so the sorted
    /// element list is the index map back to the parent.
    pub fn as_group(&self) -> Result<GroupRef> {
        let n = self.elements.len();
        let pos = |g: Elem| self.elements.binary_search(&g).unwrap();
        let mut flat = vec![0 as Elem; n * n];
        for i in 0..n {
            for j in 0..n {
                flat[i * n + j] = pos(self.parent.mul(self.elements[i], self.elements[j])) as Elem;
            }
        }
        Group::validated(format!("{}|sub{}", self.parent.name(), n), n, flat)
    }

    /// Position of a parent element inside this subgroup's numbering.
    pub fn position_of(&self, g: Elem) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }
}

// ---------------------------------------------------------------------------

/// Subgroup-level operations that scan the whole parent table.
impl Group {
    pub fn centralizer_of_set(self: &GroupRef, set: &[Elem]) -> Subgroup {
        let elements: Vec<Elem> = (0..self.order() as Elem)
            .filter(|&g| set.iter().all(|&s| self.commutes(g, s)))
            .collect();
        Subgroup::from_sorted_unchecked(self.clone(), elements)
    }

    pub fn centralizer(self: &GroupRef, g: Elem) -> Subgroup {
        self.centralizer_of_set(&[g])
    }

    pub fn center(self: &GroupRef) -> Subgroup {
        let all: Vec<Elem> = (0..self.order() as Elem).collect();
        self.centralizer_of_set(&all)
    }

    pub fn normalizer(self: &GroupRef, sub: &Subgroup) -> Subgroup {
        let gens = sub.minimal_generators();
        let elements: Vec<Elem> = (0..self.order() as Elem)
            .filter(|&x| gens.iter().all(|&g| sub.contains(self.conjugate(g, x))))
            .collect();
        Subgroup::from_sorted_unchecked(self.clone(), elements)
    }

    /// All subgroups whose elements lie in `ambient` (a subgroup's element
    /// list), by cyclic extension: repeatedly close a known subgroup with
    /// one further element until no new subgroups appear. Sorted by
    /// (order, element list).
    pub fn subgroups_within(self: &GroupRef, ambient: &[Elem]) -> Vec<Subgroup> {
        let mut known: BTreeSet<Vec<Elem>> = BTreeSet::new();
        known.insert(vec![0]);
        let mut frontier: Vec<Vec<Elem>> = vec![vec![0]];
        while let Some(base) = frontier.pop() {
            for &g in ambient {
                if base.binary_search(&g).is_ok() {
                    continue;
                }
                let mut seed = base.clone();
                seed.push(g);
                let ext = self.closure(&seed);
                if !known.contains(&ext) {
                    known.insert(ext.clone());
                    frontier.push(ext);
                }
            }
        }
        let mut subs: Vec<Vec<Elem>> = known.into_iter().collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subs.into_iter()
            .map(|e| Subgroup::from_sorted_unchecked(self.clone(), e))
            .collect()
    }

    /// Complete subgroup list; bounded at order 128.
    pub fn all_subgroups(self: &GroupRef) -> Result<Vec<Subgroup>> {
        if self.order() > SUBGROUP_ENUM_BOUND {
            return Err(Error::TooLarge {
                what: format!("subgroup enumeration of {}", self.name()),
                size: self.order(),
                bound: SUBGROUP_ENUM_BOUND,
            });
        }
        let all: Vec<Elem> = (0..self.order() as Elem).collect();
        Ok(self.subgroups_within(&all))
    }

    /// A Sylow p-subgroup of the subgroup spanned by `ambient`, grown by
    /// adjoining normalizing p-elements until the full p-part is reached.
    pub fn sylow_within(self: &GroupRef, ambient: &[Elem], p: u64) -> Subgroup {
        let mut target = ambient.len() as u64;
        let mut p_part = 1u64;
        while target.is_multiple_of(p) {
            target /= p;
            p_part *= p;
        }
        let mut current = Subgroup::from_sorted_unchecked(self.clone(), vec![0]);
        while (current.order() as u64) < p_part {
            let gens = current.minimal_generators();
            let next = ambient
                .iter()
                .copied()
                .find(|&g| {
                    self.is_p_element(g, p)
                        && !current.contains(g)
                        && gens.iter().all(|&h| current.contains(self.conjugate(h, g)))
                })
                .expect("Sylow growth step must find a normalizing p-element");
            let mut seed = current.elements().to_vec();
            seed.push(next);
            current = Subgroup::from_sorted_unchecked(self.clone(), self.closure(&seed));
        }
        current
    }

    pub fn sylow(self: &GroupRef, p: u64) -> Subgroup {
        let all: Vec<Elem> = (0..self.order() as Elem).collect();
        self.sylow_within(&all, p)
    }

    /// Quotient by a normal subgroup, on least-identifier coset
    /// representatives.
    pub fn quotient(self: &GroupRef, kernel: &Subgroup) -> Result<QuotientPresentation> {
        if !same_group(self, kernel.parent()) {
            return Err(Error::Mismatch {
                msg: "kernel belongs to a different parent".into(),
            });
        }
        if !kernel.is_normal_in(&Subgroup::full(self)) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<Elem> = Vec::new();
        for g in 0..n as Elem {
            if coset_of[g as usize] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &k in kernel.elements() {
                coset_of[self.mul(g, k) as usize] = idx;
            }
        }
        let q = reps.len();
        let mut flat = vec![0 as Elem; q * q];
        for i in 0..q {
            for j in 0..q {
                flat[i * q + j] = coset_of[self.mul(reps[i], reps[j]) as usize] as Elem;
            }
        }
        let quotient = Group::validated(
            format!("{}/{}", self.name(), kernel.order()),
            q,
            flat,
        )?;
        let images: Vec<Elem> = (0..n).map(|g| coset_of[g] as Elem).collect();
        let projection = GroupMap {
            source: Subgroup::full(self),
            target: Subgroup::full(&quotient),
            images,
        };
        Ok(QuotientPresentation {
            parent: self.clone(),
            kernel: kernel.clone(),
            quotient,
            projection,
        })
    }
}

/// A quotient G/N together with the projection map.
#[derive(Clone)]
pub struct QuotientPresentation {
    pub parent: GroupRef,
    pub kernel: Subgroup,
    pub quotient: GroupRef,
    pub projection: GroupMap,
}

// ---------------------------------------------------------------------------

/// A homomorphism between subgroups (possibly of different parents), stored
/// as the image of every source element.
#[derive(Clone)]
pub struct GroupMap {
    source: Subgroup,
    target: Subgroup,
    /// Aligned with `source.elements()`.
    images: Vec<Elem>,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupMap({} -> {}, {:?})",
            self.source.parent().name(),
            self.target.parent().name(),
            self.images
        )
    }
}

impl GroupMap {
    pub fn new(source: Subgroup, target: Subgroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::Mismatch {
                msg: "image list length differs from source order".into(),
            });
        }
        if images.iter().any(|&h| !target.contains(h)) {
            return Err(Error::Mismatch {
                msg: "image outside the stated target".into(),
            });
        }
        let map = GroupMap {
            source,
            target,
            images,
        };
        if map.apply(0) != 0 {
            return Err(Error::Mismatch {
                msg: "identity must map to identity".into(),
            });
        }
        let sg = map.source.parent().clone();
        let tg = map.target.parent().clone();
        for &a in map.source.elements() {
            for &b in map.source.elements() {
                if map.apply(sg.mul(a, b)) != tg.mul(map.apply(a), map.apply(b)) {
                    return Err(Error::Mismatch {
                        msg: format!("not a homomorphism at ({}, {})", a, b),
                    });
                }
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn apply(&self, g: Elem) -> Elem {
        let pos = self
            .source
            .position_of(g)
            .expect("element outside the source of a GroupMap");
        self.images[pos]
    }

    pub fn is_bijective(&self) -> bool {
        let set: HashSet<Elem> = self.images.iter().copied().collect();
        set.len() == self.source.order() && self.source.order() == self.target.order()
    }

    pub fn inverse(&self) -> Result<GroupMap> {
        if !self.is_bijective() {
            return Err(Error::Mismatch {
                msg: "inverse of a non-bijective map".into(),
            });
        }
        let mut pairs: Vec<(Elem, Elem)> = self
            .source
            .elements()
            .iter()
            .copied()
            .zip(self.images.iter().copied())
            .map(|(a, b)| (b, a))
            .collect();
        pairs.sort_unstable();
        let images = pairs.iter().map(|&(_, a)| a).collect();
        GroupMap::new(self.target.clone(), self.source.clone(), images)
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let mut elements: Vec<Elem> = sub.elements().iter().map(|&g| self.apply(g)).collect();
        elements.sort_unstable();
        elements.dedup();
        Subgroup::from_sorted_unchecked(self.target.parent().clone(), elements)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage_of(&self, sub: &Subgroup) -> Subgroup {
        let elements: Vec<Elem> = self
            .source
            .elements()
            .iter()
            .copied()
            .filter(|&g| sub.contains(self.apply(g)))
            .collect();
        Subgroup::from_sorted_unchecked(self.source.parent().clone(), elements)
    }
}

// ---------------------------------------------------------------------------
// Exhaustive isomorphism search by backtracking over generator images.

struct IsoSearch<'a> {
    a: &'a Subgroup,
    b: &'a Subgroup,
    gens: Vec<Elem>,
    forced: Option<(Elem, Elem)>,
}

impl<'a> IsoSearch<'a> {
    /// Extends the partial map by the products of all currently known
    /// elements until stable; reports false on any homomorphism or
    /// injectivity conflict.
    fn complete(
        &self,
        span: &mut Vec<Elem>,
        map: &mut HashMap<Elem, Elem>,
        image: &mut HashSet<Elem>,
    ) -> bool {
        let ga = self.a.parent();
        let gb = self.b.parent();
        loop {
            let mut added = false;
            let snapshot = span.clone();
            for &x in &snapshot {
                for &y in &snapshot {
                    let z = ga.mul(x, y);
                    let fz = gb.mul(map[&x], map[&y]);
                    match map.get(&z) {
                        Some(&w) => {
                            if w != fz {
                                return false;
                            }
                        }
                        None => {
                            if !image.insert(fz) {
                                return false;
                            }
                            map.insert(z, fz);
                            span.push(z);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                return true;
            }
        }
    }

    fn recurse(
        &self,
        level: usize,
        span: &[Elem],
        map: &HashMap<Elem, Elem>,
        image: &HashSet<Elem>,
        visit: &mut dyn FnMut(GroupMap) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if level == self.gens.len() {
            if span.len() == self.a.order() {
                let images: Vec<Elem> = self.a.elements().iter().map(|&g| map[&g]).collect();
                let gm = GroupMap {
                    source: self.a.clone(),
                    target: self.b.clone(),
                    images,
                };
                return visit(gm);
            }
            return ControlFlow::Continue(());
        }
        let g = self.gens[level];
        let ord = self.a.parent().elem_order(g);
        let candidates: Vec<Elem> = match (level, self.forced) {
            (0, Some((_, tgt))) => vec![tgt],
            _ => self
                .b
                .elements()
                .iter()
                .copied()
                .filter(|&h| self.b.parent().elem_order(h) == ord && !image.contains(&h))
                .collect(),
        };
        for h in candidates {
            if image.contains(&h) {
                continue;
            }
            let mut span2 = span.to_vec();
            let mut map2 = map.clone();
            let mut image2 = image.clone();
            span2.push(g);
            map2.insert(g, h);
            image2.insert(h);
            if self.complete(&mut span2, &mut map2, &mut image2) {
                self.recurse(level + 1, &span2, &map2, &image2, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn run(&self, visit: &mut dyn FnMut(GroupMap) -> ControlFlow<()>) {
        let span = vec![0 as Elem];
        let mut map = HashMap::new();
        map.insert(0, 0);
        let mut image = HashSet::new();
        image.insert(0 as Elem);
        let _ = self.recurse(0, &span, &map, &image, visit);
    }
}

fn iso_precheck(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    if a.order() > ISO_SEARCH_BOUND {
        return Err(Error::TooLarge {
            what: "isomorphism search".into(),
            size: a.order(),
            bound: ISO_SEARCH_BOUND,
        });
    }
    // element-order statistics must agree
    let stats = |s: &Subgroup| {
        let mut m: HashMap<u32, usize> = HashMap::new();
        for &g in s.elements() {
            *m.entry(s.parent().elem_order(g)).or_default() += 1;
        }
        m
    };
    Ok(stats(a) == stats(b))
}

/// Visits every isomorphism a -> b; the optional constraint pins the image
/// of one source element (which is then used as the first generator).
pub fn for_each_isomorphism(
    a: &Subgroup,
    b: &Subgroup,
    constraint: Option<(Elem, Elem)>,
    visit: &mut dyn FnMut(GroupMap) -> ControlFlow<()>,
) -> Result<()> {
    if !iso_precheck(a, b)? {
        return Ok(());
    }
    let mut constraint = constraint;
    if let Some((src, tgt)) = constraint {
        if a.parent().elem_order(src) != b.parent().elem_order(tgt) {
            return Ok(());
        }
        if !a.contains(src) || !b.contains(tgt) {
            return Ok(());
        }
        if src == 0 {
            // identity -> identity holds for every homomorphism
            constraint = None;
        }
    }
    let mut gens: Vec<Elem> = Vec::new();
    let mut span = vec![0 as Elem];
    if let Some((src, _)) = constraint {
        gens.push(src);
        span = a.parent().closure(&gens);
    }
    for &g in a.elements() {
        if span.binary_search(&g).is_err() {
            gens.push(g);
            span = a.parent().closure(&gens);
            if span.len() == a.order() {
                break;
            }
        }
    }
    let search = IsoSearch {
        a,
        b,
        gens,
        forced: constraint,
    };
    search.run(visit);
    Ok(())
}

/// Every isomorphism a -> b satisfying the constraint, in deterministic
/// backtracking order.
pub fn isomorphisms(
    a: &Subgroup,
    b: &Subgroup,
    constraint: Option<(Elem, Elem)>,
) -> Result<Vec<GroupMap>> {
    let mut out = Vec::new();
    for_each_isomorphism(a, b, constraint, &mut |m| {
        out.push(m);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn any_isomorphism(
    a: &Subgroup,
    b: &Subgroup,
    constraint: Option<(Elem, Elem)>,
) -> Result<Option<GroupMap>> {
    let mut found = None;
    for_each_isomorphism(a, b, constraint, &mut |m| {
        found = Some(m);
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn are_isomorphic(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    Ok(any_isomorphism(a, b, None)?.is_some())
}

/// |Aut(G)| / |Inn(G)| with Inn(G) = G/Z(G) and Aut by exhaustive search.
pub fn outer_automorphism_order(g: &GroupRef) -> Result<u64> {
    if g.order() > ISO_SEARCH_BOUND {
        return Err(Error::TooLarge {
            what: format!("automorphism search of {}", g.name()),
            size: g.order(),
            bound: ISO_SEARCH_BOUND,
        });
    }
    let full = Subgroup::full(g);
    let aut = isomorphisms(&full, &full, None)?.len() as u64;
    let inn = (g.order() / g.center().order()) as u64;
    debug_assert_eq!(aut % inn, 0);
    Ok(aut / inn)
}

// ---------------------------------------------------------------------------

/// A direct product H x G with coordinate access; element (h, g) has
/// identifier h * |G| + g.
#[derive(Clone)]
pub struct ProductGroup {
    pub group: GroupRef,
    pub left: GroupRef,
    pub right: GroupRef,
}

impl ProductGroup {
    pub fn new(left: &GroupRef, right: &GroupRef) -> Result<ProductGroup> {
        let (ln, rn) = (left.order(), right.order());
        let n = ln * rn;
        if n > TABLE_BOUND {
            return Err(Error::TooLarge {
                what: format!("direct product {} x {}", left.name(), right.name()),
                size: n,
                bound: TABLE_BOUND,
            });
        }
        let mut flat = vec![0 as Elem; n * n];
        for a in 0..ln {
            for b in 0..rn {
                let x = a * rn + b;
                for c in 0..ln {
                    for d in 0..rn {
                        let y = c * rn + d;
                        let prod = left.mul(a as Elem, c as Elem) as usize * rn
                            + right.mul(b as Elem, d as Elem) as usize;
                        flat[x * n + y] = prod as Elem;
                    }
                }
            }
        }
        let group = Group::validated(format!("{} x {}", left.name(), right.name()), n, flat)?;
        Ok(ProductGroup {
            group,
            left: left.clone(),
            right: right.clone(),
        })
    }

    pub fn pair(&self, h: Elem, g: Elem) -> Elem {
        h * self.right.order() as Elem + g
    }

    pub fn left_of(&self, x: Elem) -> Elem {
        x / self.right.order() as Elem
    }

    pub fn right_of(&self, x: Elem) -> Elem {
        x % self.right.order() as Elem
    }

    /// First-coordinate projection of a set of product elements, as a sorted
    /// deduplicated list.
    pub fn project_left(&self, set: &[Elem]) -> Vec<Elem> {
        let mut out: Vec<Elem> = set.iter().map(|&x| self.left_of(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn project_right(&self, set: &[Elem]) -> Vec<Elem> {
        let mut out: Vec<Elem> = set.iter().map(|&x| self.right_of(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn s3() -> GroupRef {
        catalog::by_name("S3").unwrap()
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let classes = g.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        // brute-force oracle: conjugation orbits of S3 have sizes 1, 2, 3
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(classes[0], vec![0]);
    }

    #[test]
    fn cyclic_classes_and_subgroups() {
        let c3 = catalog::by_name("C3").unwrap();
        assert_eq!(c3.conjugacy_classes().len(), 3);
        let subs = c3.all_subgroups().unwrap();
        assert_eq!(subs.len(), 2);
        let c4 = catalog::by_name("C4").unwrap();
        let sizes: Vec<usize> = c4.all_subgroups().unwrap().iter().map(|s| s.order()).collect();
        assert_eq!(sizes, vec![1, 2, 4]);
        let c1 = catalog::by_name("C1").unwrap();
        assert_eq!(c1.all_subgroups().unwrap().len(), 1);
        assert_eq!(c1.conjugacy_classes().len(), 1);
    }

    #[test]
    fn s3_subgroups_brute_force_oracle() {
        let g = s3();
        // oracle: closures of all subsets with at most 2 generators
        let mut oracle: BTreeSet<Vec<Elem>> = BTreeSet::new();
        oracle.insert(vec![0]);
        for a in 0..6 as Elem {
            oracle.insert(g.closure(&[a]));
            for b in 0..6 as Elem {
                oracle.insert(g.closure(&[a, b]));
            }
        }
        let subs = g.all_subgroups().unwrap();
        let got: BTreeSet<Vec<Elem>> = subs.iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(got, oracle);
        assert_eq!(subs.len(), 6);
    }

    #[test]
    fn cyclic_subgroup_counts_match_divisors() {
        for n in 1..=16usize {
            let g = catalog::cyclic(n).unwrap();
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(g.all_subgroups().unwrap().len(), divisors, "C{}", n);
        }
    }

    #[test]
    fn centralizer_normalizer() {
        let g = s3();
        assert_eq!(g.centralizer(0).order(), 6);
        let c3 = g.sylow(3);
        assert_eq!(g.normalizer(&c3).order(), 6);
        let t = (0..6 as Elem).find(|&x| g.elem_order(x) == 2).unwrap();
        let cent = g.centralizer(t);
        assert_eq!(cent.order(), 2);
        assert!(cent.contains(t));
    }

    #[test]
    fn part_decomposition() {
        let c6 = catalog::by_name("C6").unwrap();
        let g = (0..6 as Elem).find(|&x| c6.elem_order(x) == 6).unwrap();
        let gp = c6.pprime_part(g, 2);
        assert_eq!(gp, c6.pow(g, 4));
        assert_eq!(c6.elem_order(gp), 3);
        let c5 = catalog::by_name("C5").unwrap();
        let h = 1 as Elem;
        assert_eq!(c5.pprime_part(h, 2), h);
        assert_eq!(c6.pprime_part(0, 2), 0);
        // ord(p_part) * ord(pprime_part) = ord, and the parts commute
        for grp in [c6.clone(), s3()] {
            for p in [2u64, 3] {
                for e in 0..grp.order() as Elem {
                    let a = grp.p_part(e, p);
                    let b = grp.pprime_part(e, p);
                    assert_eq!(
                        grp.elem_order(a) * grp.elem_order(b),
                        grp.elem_order(e)
                    );
                    assert!(grp.commutes(a, b));
                    assert_eq!(grp.mul(a, b), e);
                }
            }
        }
    }

    #[test]
    fn quotient_s3_by_c3() {
        let g = s3();
        let c3 = g.sylow(3);
        let qp = g.quotient(&c3).unwrap();
        assert_eq!(qp.quotient.order(), 2);
        // projection is a homomorphism on all pairs
        for a in 0..6 as Elem {
            for b in 0..6 as Elem {
                assert_eq!(
                    qp.projection.apply(g.mul(a, b)),
                    qp.quotient.mul(qp.projection.apply(a), qp.projection.apply(b))
                );
            }
        }
        let full = g.quotient(&Subgroup::full(&g)).unwrap();
        assert_eq!(full.quotient.order(), 1);
        let triv = g.quotient(&Subgroup::trivial(&g)).unwrap();
        assert_eq!(triv.quotient.order(), 6);
        // non-normal kernel is rejected
        let t = (0..6 as Elem).find(|&x| g.elem_order(x) == 2).unwrap();
        let c2 = Subgroup::generated(&g, &[t]);
        assert!(matches!(g.quotient(&c2), Err(Error::NotNormal)));
    }

    #[test]
    fn isomorphism_counts() {
        let c3 = catalog::by_name("C3").unwrap();
        let full = Subgroup::full(&c3);
        assert_eq!(isomorphisms(&full, &full, None).unwrap().len(), 2);

        let c4 = catalog::by_name("C4").unwrap();
        let v4 = catalog::by_name("C2xC2").unwrap();
        assert!(!are_isomorphic(&Subgroup::full(&c4), &Subgroup::full(&v4)).unwrap());

        let g = s3();
        let fs3 = Subgroup::full(&g);
        let autos = isomorphisms(&fs3, &fs3, None).unwrap();
        assert_eq!(autos.len(), 6);
        // composing two automorphisms lands back in the yielded set
        let images: BTreeSet<Vec<Elem>> = autos.iter().map(|m| m.images.clone()).collect();
        for m1 in &autos {
            for m2 in &autos {
                let comp: Vec<Elem> = fs3.elements().iter().map(|&x| m2.apply(m1.apply(x))).collect();
                assert!(images.contains(&comp));
            }
        }
    }

    #[test]
    fn outer_automorphisms() {
        assert_eq!(outer_automorphism_order(&s3()).unwrap(), 1);
        assert_eq!(outer_automorphism_order(&catalog::by_name("C2").unwrap()).unwrap(), 1);
        assert_eq!(
            outer_automorphism_order(&catalog::by_name("C2xC2").unwrap()).unwrap(),
            6
        );
    }

    #[test]
    fn from_permutation_generators_examples() {
        let s3 = Group::from_permutation_generators("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]])
            .unwrap();
        assert_eq!(s3.order(), 6);
        let c2 = Group::from_permutation_generators("C2", 2, &[vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        let c4 = Group::from_permutation_generators("C4", 4, &[vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.elem_order(1), 4);
        assert!(Group::from_permutation_generators("bad", 3, &[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn product_group_coordinates() {
        let c2 = catalog::by_name("C2").unwrap();
        let prod = ProductGroup::new(&c2, &s3()).unwrap();
        assert_eq!(prod.group.order(), 12);
        for x in 0..12 as Elem {
            for y in 0..12 as Elem {
                let z = prod.group.mul(x, y);
                assert_eq!(prod.left_of(z), c2.mul(prod.left_of(x), prod.left_of(y)));
                assert_eq!(
                    prod.right_of(z),
                    s3().mul(prod.right_of(x), prod.right_of(y))
                );
            }
        }
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(degree: usize) -> impl Strategy<Value = Vec<usize>> {
            Just((0..degree).collect::<Vec<_>>()).prop_shuffle()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            // closures of random degree-4 permutations always validate as
            // groups, satisfy Lagrange against S4, and their conjugacy
            // classes partition the elements
            #[test]
            fn random_permutation_closures(a in arb_perm(4), b in arb_perm(4)) {
                let g = Group::from_permutation_generators("rand", 4, &[a, b]).unwrap();
                prop_assert_eq!(24 % g.order(), 0);
                let classes = g.conjugacy_classes();
                let total: usize = classes.iter().map(|c| c.len()).sum();
                prop_assert_eq!(total, g.order());
                for sub in g.all_subgroups().unwrap() {
                    prop_assert_eq!(g.order() % sub.order(), 0);
                    prop_assert!(Subgroup::new(g.clone(), sub.elements().to_vec()).is_ok());
                }
            }
        }
    }

    #[test]
    fn bad_tables_rejected() {
        // 0 not identity
        let t = vec![vec![1, 0], vec![0, 1]];
        assert!(Group::from_table("bad", &t).is_err());
        // valid C2
        let t = vec![vec![0, 1], vec![1, 0]];
        assert!(Group::from_table("C2", &t).is_ok());
        // Latin square violation
        let t = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 0, 1]];
        assert!(Group::from_table("bad", &t).is_err());
    }
}
