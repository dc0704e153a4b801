//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! All comparisons are exact (zero tolerance); the deep oracle in the `gf`
//! module recomputes species by honest characteristic-2 linear algebra,
//! independently of the coset-scan implementation it checks.

use std::sync::Arc;

use pperm::catalog;
use pperm::cyclo::CycloNum;
use pperm::functor::{
    compose_idempotents, essential_report, functor_decomposition, s11_dim, ComposeSupport,
    SimpleLabel,
};
use pperm::group::{are_isomorphic, GroupRef, Subgroup};
use pperm::pairs::{
    enumerate_diagonal_pairs, enumerate_pairs, is_ddelta, is_pprime_quotient, pairs_isomorphic,
    reduce_pair, Pair,
};
use pperm::ppring::TRing;
use pperm::verify::{run_suite, Suite, RES_IND_INSTANCES, VERIFY_PRIMES};

fn catalog_24() -> Vec<(String, GroupRef)> {
    catalog::catalog_with_names(24)
}

fn rings_24() -> Vec<(String, Arc<TRing>)> {
    let mut out = Vec::new();
    for (name, g) in catalog_24() {
        for p in VERIFY_PRIMES {
            out.push((name.clone(), TRing::new(&g, p).unwrap()));
        }
    }
    out
}

fn report(number: usize, name: &str, failures: &[String]) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {:>2} ({}): {}", number, name, verdict);
    assert!(
        failures.is_empty(),
        "criterion {} failed:\n{}",
        number,
        failures.join("\n")
    );
}

#[test]
fn criterion_01_idempotent_delta_duality() {
    let start = std::time::Instant::now();
    let mut failures = Vec::new();
    for (name, ring) in rings_24() {
        for (i, a) in ring.pairs().iter().enumerate() {
            let f = ring.idempotent(a).unwrap();
            for (j, v) in f.species().values.iter().enumerate() {
                let expect = if i == j { CycloNum::one() } else { CycloNum::zero() };
                if *v != expect {
                    failures.push(format!(
                        "{} p={} tau_{}(F_{}) = {}",
                        name,
                        ring.prime(),
                        j,
                        i,
                        v
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs() >= 60 {
        failures.push(format!("runtime {:?} exceeds one minute", elapsed));
    }
    report(1, "idempotent delta-duality, catalog <= 24, p in {2,3}", &failures);
}

#[test]
fn criterion_02_formula_agreement() {
    let mut failures = Vec::new();
    for (name, ring) in rings_24() {
        for a in ring.pairs() {
            let v1 = ring.idempotent(a).unwrap();
            let v2 = ring.idempotent_v2(a).unwrap();
            if v1 != v2 {
                failures.push(format!("{} p={} pair {}", name, ring.prime(), a));
            }
        }
    }
    report(2, "both idempotent formulas agree", &failures);
}

#[test]
fn criterion_03_completeness() {
    let mut failures = Vec::new();
    for (name, ring) in rings_24() {
        let mut total = ring.zero();
        for a in ring.pairs() {
            total = total.add(&ring.idempotent(a).unwrap());
        }
        if total != ring.trivial_module() {
            failures.push(format!("{} p={}", name, ring.prime()));
        }
    }
    report(3, "sum of idempotents is [k]", &failures);
}

#[test]
fn criterion_04_biset_operations() {
    let mut failures: Vec<String> = run_suite(Suite::Biset, 24)
        .unwrap()
        .into_iter()
        .map(|f| format!("{} p={} {}: {} vs {}", f.group, f.p, f.context, f.lhs, f.rhs))
        .collect();
    if RES_IND_INSTANCES.len() < 10 {
        failures.push(format!(
            "only {} res/ind instances declared",
            RES_IND_INSTANCES.len()
        ));
    }
    report(
        4,
        "res/ind/inf/def of idempotents match the predicted right-hand sides",
        &failures,
    );
}

#[test]
fn criterion_05_reduction_laws() {
    let mut failures = Vec::new();
    for (name, g) in catalog_24() {
        for p in VERIFY_PRIMES {
            for a in enumerate_pairs(&g, p).unwrap() {
                let red = reduce_pair(&a).unwrap();
                if !is_ddelta(&red) {
                    failures.push(format!("{} p={} reduction of {} is not DDelta", name, p, a));
                }
                let red2 = reduce_pair(&red).unwrap();
                if !pairs_isomorphic(&red, &red2).unwrap()
                    || red.ambient().order() != red2.ambient().order()
                {
                    failures.push(format!("{} p={} reduction not idempotent at {}", name, p, a));
                }
                if !is_pprime_quotient(&red, &a).unwrap() {
                    failures.push(format!(
                        "{} p={} reduction of {} is not a p'-quotient of it",
                        name, p, a
                    ));
                }
                // uniqueness: every DDelta p'-quotient is isomorphic to the
                // reduction, exhaustively over normal p'-subgroups of <Ps>
                let span = a.span();
                let span_grp = span.as_group().unwrap();
                let to_span =
                    |x| span.position_of(x).expect("span element") as pperm::group::Elem;
                let full = Subgroup::full(&span_grp);
                for k in span_grp.all_subgroups().unwrap() {
                    if !k.is_pprime_group(p) || !k.is_normal_in(&full) {
                        continue;
                    }
                    let qp = span_grp.quotient(&k).unwrap();
                    let mut img_p: Vec<pperm::group::Elem> = a
                        .p_subgroup()
                        .elements()
                        .iter()
                        .map(|&x| qp.projection.apply(to_span(x)))
                        .collect();
                    img_p.sort_unstable();
                    img_p.dedup();
                    let sub = Subgroup::new(qp.quotient.clone(), img_p).unwrap();
                    let image = Pair::new(
                        qp.quotient.clone(),
                        p,
                        sub,
                        qp.projection.apply(to_span(a.elem())),
                    )
                    .unwrap();
                    if is_ddelta(&image) && !pairs_isomorphic(&image, &red).unwrap() {
                        failures.push(format!(
                            "{} p={} non-unique DDelta quotient at {} along |K|={}",
                            name,
                            p,
                            a,
                            k.order()
                        ));
                    }
                }
            }
        }
    }
    report(5, "reduction idempotent, DDelta, and unique up to isomorphism", &failures);
}

#[test]
fn criterion_06_decomposition_identity() {
    let mut failures = Vec::new();
    for (name, ring) in rings_24() {
        let dec = functor_decomposition(&ring).unwrap();
        let total: usize = dec.blocks.iter().map(|(_, b)| b.len()).sum();
        if total != ring.pairs().len() {
            failures.push(format!(
                "{} p={}: {} != {}",
                name,
                ring.prime(),
                total,
                ring.pairs().len()
            ));
        }
    }
    report(6, "sum of simple dims equals the pair class count", &failures);
}

#[test]
fn criterion_07_s11_dimension() {
    let mut failures = Vec::new();
    for (name, ring) in rings_24() {
        let dec = functor_decomposition(&ring).unwrap();
        let trivial_dim = dec
            .blocks
            .iter()
            .find(|(l, _)| l.is_trivial())
            .map_or(0, |(_, b)| b.len());
        let classes = s11_dim(ring.group(), ring.prime());
        if trivial_dim != classes {
            failures.push(format!(
                "{} p={}: block {} vs p'-classes {}",
                name,
                ring.prime(),
                trivial_dim,
                classes
            ));
        }
    }
    // S3 at both primes has exactly 2 simple modules
    for p in [2u64, 3] {
        let s3 = catalog::by_name("S3").unwrap();
        if s11_dim(&s3, p) != 2 {
            failures.push(format!("S3 p={} expected dim 2", p));
        }
    }
    report(7, "dim S_(1,1) equals the number of p'-classes", &failures);
}

#[test]
fn criterion_08_essential_algebra() {
    let mut failures = Vec::new();
    let cases: &[(&str, u64, bool, u64)] = &[
        ("S3", 3, true, 1),
        ("C6", 3, false, 0),
        ("C2", 2, true, 1),
        ("C2xC2", 2, true, 6),
    ];
    for &(name, p, nonzero, dim) in cases {
        let g = catalog::by_name(name).unwrap();
        let rep = essential_report(&g, p).unwrap();
        if rep.nonzero != nonzero || rep.dimension != dim {
            failures.push(format!(
                "{} p={}: nonzero={} dim={}, expected nonzero={} dim={}",
                name, p, rep.nonzero, rep.dimension, nonzero, dim
            ));
        }
    }
    report(8, "essential algebra hand cases", &failures);
}

#[test]
fn criterion_09_composition_support() {
    let mut failures = Vec::new();
    let products: &[(&str, &str, u64)] = &[("S3", "S3", 3), ("S3", "S3", 2), ("C2", "C2", 2)];
    for &(hn, gn, p) in products {
        let h = catalog::by_name(hn).unwrap();
        let g = catalog::by_name(gn).unwrap();
        let dps = enumerate_diagonal_pairs(&h, &g, p).unwrap();
        if dps.is_empty() {
            failures.push(format!("{}x{} p={}: no diagonal pairs", hn, gn, p));
            continue;
        }
        let product = dps[0].product().clone();
        let h_ring = TRing::new(&product.left, p).unwrap();
        let full_span_pairs: Vec<Pair> = enumerate_pairs(&product.right, p)
            .unwrap()
            .into_iter()
            .filter(|a| a.span().order() == product.right.order())
            .collect();
        for dq in &dps {
            // independent support data
            let p2_span = product.project_right(dq.pair().span().elements());
            for a in &full_span_pairs {
                let out = compose_idempotents(dq, a, &h_ring).unwrap();
                if p2_span.len() != product.right.order() {
                    let zero_support = matches!(
                        out.support,
                        ComposeSupport::SecondProjectionNotFull { .. }
                            | ComposeSupport::NoNormalForm
                    );
                    if !zero_support || !out.element.is_zero() {
                        failures.push(format!(
                            "{}x{} p={}: expected zero product at {:?} with {}",
                            hn, gn, p, dq, a
                        ));
                    }
                    continue;
                }
                if !matches!(out.support, ComposeSupport::Evaluated { .. }) {
                    failures.push(format!(
                        "{}x{} p={}: full projection but support {:?}",
                        hn, gn, p, out.support
                    ));
                    continue;
                }
                let u = dq.t_left();
                let u_order = product.left.elem_order(u);
                let p1q = dq.p1_subgroup();
                let a_label = SimpleLabel::from_pair(a).unwrap();
                for (k, v) in out.element.species().values.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let b = &h_ring.pairs()[k];
                    if b.elem_order() != u_order {
                        failures.push(format!(
                            "{}x{} p={}: support at {} but |u| = {}",
                            hn, gn, p, b, u_order
                        ));
                    }
                    if !are_isomorphic(&p1q, b.p_subgroup()).unwrap() {
                        failures.push(format!(
                            "{}x{} p={}: support at {} but p_1(Q) has order {}",
                            hn,
                            gn,
                            p,
                            b,
                            p1q.order()
                        ));
                    }
                    // the product must land in the span of the classes whose
                    // reduction matches the label of (P, s)
                    let b_label = SimpleLabel::from_pair(b).unwrap();
                    if !a_label.matches(&b_label).unwrap() {
                        failures.push(format!(
                            "{}x{} p={}: support at {} outside the expected span {}",
                            hn, gn, p, b, a_label
                        ));
                    }
                }
            }
        }
    }
    report(
        9,
        "composition is zero off-support and supported only at matching pairs",
        &failures,
    );
}

#[test]
fn criterion_10_characteristic_p_oracle() {
    let mut failures = Vec::new();
    for (name, g) in catalog::catalog_with_names(8) {
        let ring = TRing::new(&g, 2).unwrap();
        let m = ring.modulus();
        assert_eq!(m % 2, 1, "working modulus at p=2 is odd");
        let field = gf::Field::for_root_order(m as u32);
        let omega = field.primitive_root_of_order(m as u32);
        // all symbols occurring in the idempotents, plus [k] and [kG]
        let mut symbols = Vec::new();
        for a in ring.pairs() {
            let f = ring.idempotent(a).unwrap();
            for sym in f.terms().unwrap().keys() {
                if !symbols.contains(sym) {
                    symbols.push(sym.clone());
                }
            }
        }
        for el in [ring.trivial_module(), ring.regular_module()] {
            for sym in el.terms().unwrap().keys() {
                if !symbols.contains(sym) {
                    symbols.push(sym.clone());
                }
            }
        }
        for sym in &symbols {
            let module = gf::MonomialModule::new(&g, sym, field, omega, m as u32);
            for (idx, pair) in ring.pairs().iter().enumerate() {
                let expected = module.brauer_species(pair);
                let got = ring.species_of_monomial(sym, idx);
                if got != expected {
                    failures.push(format!(
                        "{}: symbol |L|={} at pair {}: coset scan {} vs oracle {}",
                        name,
                        sym.subgroup_elements().len(),
                        pair,
                        got,
                        expected
                    ));
                }
            }
        }
    }
    report(
        10,
        "species agree with the characteristic-2 Brauer quotient oracle",
        &failures,
    );
}

// ---------------------------------------------------------------------------
// Deep oracle: monomial modules over GF(2^k), Brauer quotients by explicit
// fixed points and relative traces, species as lifted eigenvalue traces.

mod gf {
    use pperm::cyclo::CycloNum;
    use pperm::group::{Elem, GroupRef};
    use pperm::pairs::Pair;
    use pperm::ppring::MonomialSymbol;

    /// GF(2^k) for k <= 4, elements as bitmasks of polynomial coefficients.
    #[derive(Clone, Copy, Debug)]
    pub struct Field {
        k: u32,
        reduction: u32,
    }

    impl Field {
        pub fn new(k: u32) -> Field {
            let reduction = match k {
                1 => 0b10,
                2 => 0b111,
                3 => 0b1011,
                4 => 0b10011,
                _ => panic!("field degree {} out of range", k),
            };
            Field { k, reduction }
        }

        /// The smallest GF(2^k) whose multiplicative group has an element of
        /// order d (d odd).
        pub fn for_root_order(d: u32) -> Field {
            for k in 1..=4u32 {
                if ((1u32 << k) - 1).is_multiple_of(d) {
                    return Field::new(k);
                }
            }
            panic!("no field of degree <= 4 contains a root of order {}", d);
        }

        pub fn order(&self) -> u32 {
            1 << self.k
        }

        pub fn add(&self, a: u32, b: u32) -> u32 {
            a ^ b
        }

        pub fn mul(&self, a: u32, b: u32) -> u32 {
            let mut acc = 0u32;
            let mut a = a;
            let mut b = b;
            while b != 0 {
                if b & 1 == 1 {
                    acc ^= a;
                }
                a <<= 1;
                if a >> self.k & 1 == 1 {
                    a ^= self.reduction;
                }
                b >>= 1;
            }
            acc
        }

        pub fn pow(&self, a: u32, e: u32) -> u32 {
            let mut acc = 1u32;
            let mut base = a;
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul(acc, base);
                }
                base = self.mul(base, base);
                e >>= 1;
            }
            acc
        }

        pub fn inv(&self, a: u32) -> u32 {
            assert_ne!(a, 0);
            self.pow(a, self.order() - 2)
        }

        fn element_order(&self, a: u32) -> u32 {
            let mut x = a;
            let mut ord = 1;
            while x != 1 {
                x = self.mul(x, a);
                ord += 1;
            }
            ord
        }

        /// A fixed element of exact multiplicative order d: the power of the
        /// least generator of the unit group.
        pub fn primitive_root_of_order(&self, d: u32) -> u32 {
            let q1 = self.order() - 1;
            assert_eq!(q1 % d, 0);
            let gen = (2..self.order())
                .find(|&a| self.element_order(a) == q1)
                .unwrap_or(1);
            self.pow(gen, q1 / d)
        }
    }

    /// Solves a linear system over the field by Gaussian elimination;
    /// columns of `a` are the spanning vectors, `rhs` the target. Returns
    /// the coefficient vector when consistent.
    fn solve(field: Field, a: &[Vec<u32>], rhs: &[u32]) -> Option<Vec<u32>> {
        let rows = rhs.len();
        let cols = a.len();
        // augmented matrix, row major
        let mut m: Vec<Vec<u32>> = (0..rows)
            .map(|r| {
                let mut row: Vec<u32> = a.iter().map(|col| col[r]).collect();
                row.push(rhs[r]);
                row
            })
            .collect();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = field.inv(m[rank][c]);
            for x in m[rank].iter_mut() {
                *x = field.mul(*x, inv);
            }
            for r in 0..rows {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c];
                    for x in 0..=cols {
                        let v = field.mul(f, m[rank][x]);
                        m[r][x] = field.add(m[r][x], v);
                    }
                }
            }
            pivot_of_col[c] = Some(rank);
            rank += 1;
        }
        // inconsistent when a nonzero rhs entry remains below the rank
        if (rank..rows).any(|r| m[r][cols] != 0) {
            return None;
        }
        let mut coeffs = vec![0u32; cols];
        for (c, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pivot {
                coeffs[c] = m[*r][cols];
            }
        }
        Some(coeffs)
    }

    /// Basis of the joint kernel of (mat_i - I), i.e. common fixed vectors.
    fn fixed_space(field: Field, mats: &[Vec<Vec<u32>>], dim: usize) -> Vec<Vec<u32>> {
        // stack (M - I) for all matrices; kernel by elimination on columns
        let rows = mats.len().max(1) * dim;
        let col = |j: usize| -> Vec<u32> {
            let mut v = vec![0u32; rows];
            for (mi, mat) in mats.iter().enumerate() {
                for r in 0..dim {
                    let mut x = mat[r][j];
                    if r == j {
                        x = field.add(x, 1);
                    }
                    v[mi * dim + r] = x;
                }
            }
            v
        };
        if mats.is_empty() {
            return (0..dim)
                .map(|i| {
                    let mut e = vec![0u32; dim];
                    e[i] = 1;
                    e
                })
                .collect();
        }
        // kernel of the stacked matrix
        let mut m: Vec<Vec<u32>> = (0..rows).map(|_| vec![0u32; dim]).collect();
        for j in 0..dim {
            let cj = col(j);
            for r in 0..rows {
                m[r][j] = cj[r];
            }
        }
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for c in 0..dim {
            let Some(pr) = (rank..rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = field.inv(m[rank][c]);
            for x in m[rank].iter_mut() {
                *x = field.mul(*x, inv);
            }
            for r in 0..rows {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c];
                    for x in 0..dim {
                        let v = field.mul(f, m[rank][x]);
                        m[r][x] = field.add(m[r][x], v);
                    }
                }
            }
            pivot_cols.push(c);
            rank += 1;
        }
        let mut basis = Vec::new();
        for free in 0..dim {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; dim];
            v[free] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m[r][free];
            }
            basis.push(v);
        }
        basis
    }

    fn mat_vec(field: Field, mat: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
        (0..mat.len())
            .map(|r| {
                let mut acc = 0u32;
                for (c, &x) in v.iter().enumerate() {
                    acc = field.add(acc, field.mul(mat[r][c], x));
                }
                acc
            })
            .collect()
    }

    /// Ind_L^G k_lambda over GF(2^k), with lambda(g) realized as
    /// omega^{exponent(g) mod d} for the fixed root omega of order d.
    pub struct MonomialModule {
        group: GroupRef,
        field: Field,
        dim: usize,
        coset_reps: Vec<Elem>,
        l_elements: Vec<Elem>,
        scalar_of: Vec<u32>,
        omega: u32,
        root_order: u32,
    }

    impl MonomialModule {
        pub fn new(
            group: &GroupRef,
            sym: &MonomialSymbol,
            field: Field,
            omega: u32,
            root_order: u32,
        ) -> MonomialModule {
            let l_elements = sym.subgroup_elements().to_vec();
            let mut covered = vec![false; group.order()];
            let mut coset_reps = Vec::new();
            for x in 0..group.order() as Elem {
                if covered[x as usize] {
                    continue;
                }
                coset_reps.push(x);
                for &l in &l_elements {
                    covered[group.mul(x, l) as usize] = true;
                }
            }
            // scalar of each element of L
            let scalar_of = sym
                .exponents()
                .iter()
                .map(|&e| field.pow(omega, (e % root_order as u64) as u32))
                .collect();
            MonomialModule {
                group: group.clone(),
                field,
                dim: coset_reps.len(),
                coset_reps,
                l_elements,
                scalar_of,
                omega,
                root_order,
            }
        }

        fn action_matrix(&self, g: Elem) -> Vec<Vec<u32>> {
            let grp = &self.group;
            let mut mat = vec![vec![0u32; self.dim]; self.dim];
            for (i, &rep) in self.coset_reps.iter().enumerate() {
                let y = grp.mul(g, rep);
                let j = self
                    .coset_reps
                    .iter()
                    .position(|&r| {
                        let l = grp.mul(grp.inv(r), y);
                        self.l_elements.binary_search(&l).is_ok()
                    })
                    .expect("coset decomposition");
                let l = grp.mul(grp.inv(self.coset_reps[j]), y);
                let pos = self.l_elements.binary_search(&l).unwrap();
                mat[j][i] = self.scalar_of[pos];
            }
            mat
        }

        /// The Brauer character of M[P] at s, read from the eigenvalue
        /// multiplicities of the induced action on fixed points modulo
        /// relative traces from the maximal subgroups of P.
        pub fn brauer_species(&self, pair: &Pair) -> CycloNum {
            let field = self.field;
            let grp = &self.group;
            let p_sub = pair.p_subgroup();
            let gen_mats: Vec<Vec<Vec<u32>>> = p_sub
                .minimal_generators()
                .iter()
                .map(|&g| self.action_matrix(g))
                .collect();
            let fixed = fixed_space(field, &gen_mats, self.dim);
            // relative trace images from all proper subgroups; the maximal
            // ones suffice but enumerating all is just as exact
            let mut trace_vectors: Vec<Vec<u32>> = Vec::new();
            for q in grp.subgroups_within(p_sub.elements()) {
                if q.order() == p_sub.order() {
                    continue;
                }
                let q_mats: Vec<Vec<Vec<u32>>> = q
                    .minimal_generators()
                    .iter()
                    .map(|&g| self.action_matrix(g))
                    .collect();
                let q_fixed = fixed_space(field, &q_mats, self.dim);
                // transversal of Q in P
                let mut reps: Vec<Elem> = Vec::new();
                let mut seen = vec![false; grp.order()];
                for &x in p_sub.elements() {
                    if seen[x as usize] {
                        continue;
                    }
                    reps.push(x);
                    for &qe in q.elements() {
                        seen[grp.mul(x, qe) as usize] = true;
                    }
                }
                let rep_mats: Vec<Vec<Vec<u32>>> =
                    reps.iter().map(|&x| self.action_matrix(x)).collect();
                for v in &q_fixed {
                    let mut acc = vec![0u32; self.dim];
                    for mat in &rep_mats {
                        let w = mat_vec(field, mat, v);
                        for (a, b) in acc.iter_mut().zip(w) {
                            *a = field.add(*a, b);
                        }
                    }
                    trace_vectors.push(acc);
                }
            }
            // quotient basis: extend a basis of the trace span inside fixed
            let mut span: Vec<Vec<u32>> = Vec::new();
            for v in &trace_vectors {
                if solve(field, &span, v).is_none() {
                    span.push(v.clone());
                }
            }
            let w_rank = span.len();
            let mut reps: Vec<Vec<u32>> = Vec::new();
            for v in &fixed {
                if solve(field, &span, v).is_none() {
                    span.push(v.clone());
                    reps.push(v.clone());
                }
            }
            let d = reps.len();
            if d == 0 {
                return CycloNum::zero();
            }
            // induced action of s on the quotient
            let s_mat = self.action_matrix(pair.elem());
            let mut induced = vec![vec![0u32; d]; d];
            for (i, rep) in reps.iter().enumerate() {
                let image = mat_vec(field, &s_mat, rep);
                let coeffs = solve(field, &span, &image)
                    .expect("s-stable Brauer quotient");
                for r in 0..d {
                    induced[r][i] = coeffs[w_rank + r];
                }
            }
            // eigenvalue multiplicities through the fixed Brauer lift
            let mut value = CycloNum::zero();
            let mut total = 0;
            for e in 0..self.root_order {
                let ev = field.pow(self.omega, e);
                // kernel dimension of (induced - ev I)
                let shifted: Vec<Vec<u32>> = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|c| {
                                let mut x = induced[r][c];
                                if r == c {
                                    x = field.add(x, ev);
                                }
                                x
                            })
                            .collect()
                    })
                    .collect();
                let mult = fixed_space(
                    field,
                    &[add_identity(field, &shifted)],
                    d,
                )
                .len();
                if mult > 0 {
                    let root = CycloNum::root_of_unity(self.root_order as u64, e as i64);
                    value = value.add(&root.scale(&pperm::cyclo::rat_int(mult as i64)));
                    total += mult;
                }
            }
            assert_eq!(total, d, "p'-action must be diagonalizable");
            value
        }
    }

    /// fixed_space solves (M - I)v = 0; to get the kernel of A we hand it
    /// A + I so that (A + I) - I = A.
    fn add_identity(field: Field, a: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut out = a.to_vec();
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = field.add(row[i], 1);
        }
        out
    }
}
