//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! A [`CycloNum`] is stored as rational coordinates in the power basis
//! `{zeta_m^i : 0 <= i < phi(m)}` modulo the m-th cyclotomic polynomial, so
//! equal values always have identical coefficient arrays at equal modulus.
//! Mixed-modulus operands are lifted to the lcm before operating.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Euler totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            phi -= phi / d;
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Divisors of m in increasing order.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    ds.sort_unstable();
    ds
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers for cyclotomic polynomials. Coefficient index =
// degree, trailing zeros trimmed, vec![] encodes the zero polynomial.

fn int_poly_trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division by a monic divisor; remainder is asserted zero.
fn int_poly_div_exact(mut num: Vec<BigInt>, den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().is_some_and(|c| c.is_one()), "divisor must be monic");
    let dd = den.len() - 1;
    if num.len() <= dd {
        int_poly_trim(&mut num);
        assert!(num.is_empty(), "inexact cyclotomic division");
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = num[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            num[i + j] -= &c * dc;
        }
    }
    int_poly_trim(&mut num);
    assert!(num.is_empty(), "inexact cyclotomic division");
    quot
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial as integer coefficients (index = degree),
/// computed by dividing X^m - 1 by Phi_d for all proper divisors d.
pub fn cyclotomic_polynomial(m: u64) -> Result<Vec<BigInt>> {
    if m == 0 || m > 512 {
        return Err(Error::TooLarge {
            what: "cyclotomic polynomial index".into(),
            size: m as usize,
            bound: 512,
        });
    }
    if let Some(hit) = cyclo_cache().lock().unwrap().get(&m) {
        return Ok(hit.clone());
    }
    // X^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut phi_m = num;
    for d in divisors(m) {
        if d < m {
            let phi_d = cyclotomic_polynomial(d)?;
            phi_m = int_poly_div_exact(phi_m, &phi_d);
        }
    }
    debug_assert_eq!(phi_m.len() as u64 - 1, euler_phi(m));
    cyclo_cache().lock().unwrap().insert(m, phi_m.clone());
    Ok(phi_m)
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers used for reduction and inversion mod Phi_m.

fn rat_poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rat_poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    rat_poly_trim(&mut out);
    out
}

/// Remainder of num modulo den (den need not be monic).
fn rat_poly_rem(mut num: Vec<Rational>, den: &[Rational]) -> Vec<Rational> {
    let dd = den.len() - 1;
    let lead = den.last().expect("nonzero divisor");
    while num.len() > dd {
        let c = num.last().unwrap() / lead;
        let shift = num.len() - 1 - dd;
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                let v = &c * dc;
                num[shift + j] -= v;
            }
        }
        num.pop();
        rat_poly_trim(&mut num);
    }
    num
}

fn rat_poly_divrem(mut num: Vec<Rational>, den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = den.len() - 1;
    let lead = den.last().expect("nonzero divisor");
    let mut quot = vec![Rational::zero(); num.len().saturating_sub(dd)];
    while num.len() > dd {
        let c = num.last().unwrap() / lead;
        let shift = num.len() - 1 - dd;
        quot[shift] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let v = &c * dc;
            num[shift + j] -= v;
        }
        num.pop();
        rat_poly_trim(&mut num);
    }
    rat_poly_trim(&mut quot);
    (quot, num)
}

fn phi_rational(m: u64) -> Vec<Rational> {
    cyclotomic_polynomial(m)
        .expect("modulus within bound")
        .into_iter()
        .map(Rational::from)
        .collect()
}

// ---------------------------------------------------------------------------

/// An exact element of Q(zeta_m) in the power basis modulo Phi_m.
#[derive(Clone, Debug)]
pub struct CycloNum {
    modulus: u64,
    /// Always of length phi(modulus).
    coeffs: Vec<Rational>,
}

impl CycloNum {
    fn from_poly(modulus: u64, mut poly: Vec<Rational>) -> Self {
        let deg = euler_phi(modulus) as usize;
        if poly.len() > deg {
            poly = rat_poly_rem(poly, &phi_rational(modulus));
        }
        poly.resize(deg, Rational::zero());
        CycloNum {
            modulus,
            coeffs: poly,
        }
    }

    pub fn zero() -> Self {
        CycloNum::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        CycloNum::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        CycloNum {
            modulus: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        CycloNum::from_rational(rat_int(n))
    }

    /// zeta_m^e.
    pub fn root_of_unity(m: u64, e: i64) -> Self {
        let e = e.rem_euclid(m as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        CycloNum::from_poly(m, poly)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Q(zeta_target); target must be a multiple of the modulus.
    pub fn lift_to(&self, target: u64) -> Self {
        assert_eq!(target % self.modulus, 0, "incompatible modulus lift");
        if target == self.modulus {
            return self.clone();
        }
        let k = (target / self.modulus) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * k] = c.clone();
            }
        }
        CycloNum::from_poly(target, poly)
    }

    fn lift_pair(a: &CycloNum, b: &CycloNum) -> (CycloNum, CycloNum, u64) {
        if a.modulus == b.modulus {
            return (a.clone(), b.clone(), a.modulus);
        }
        let m = a.modulus.lcm(&b.modulus);
        (a.lift_to(m), b.lift_to(m), m)
    }

    pub fn add(&self, other: &CycloNum) -> CycloNum {
        let (mut a, b, _) = CycloNum::lift_pair(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycloNum) -> CycloNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloNum {
        CycloNum {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycloNum) -> CycloNum {
        let (a, b, m) = CycloNum::lift_pair(self, other);
        CycloNum::from_poly(m, rat_poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn scale(&self, q: &Rational) -> CycloNum {
        CycloNum {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_m, which is irreducible over Q.
    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.modulus;
        let mut f: Vec<Rational> = self.coeffs.clone();
        rat_poly_trim(&mut f);
        // Invariant: r0 = s0 * f (mod Phi_m), r1 = s1 * f (mod Phi_m).
        let mut r0 = phi_rational(m);
        let mut r1 = f;
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = rat_poly_divrem(r0.clone(), &r1);
            let qs1 = rat_poly_mul(&q, &s1);
            let mut s_next = s0.clone();
            s_next.resize(s_next.len().max(qs1.len()), Rational::zero());
            for (i, c) in qs1.iter().enumerate() {
                s_next[i] -= c;
            }
            rat_poly_trim(&mut s_next);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s_next);
        }
        // r0 is now a nonzero constant gcd (Phi_m irreducible, f nonzero).
        assert_eq!(r0.len(), 1, "cyclotomic gcd must be constant");
        let c = r0[0].clone();
        let inv_poly: Vec<Rational> = s0.into_iter().map(|x| x / &c).collect();
        Ok(CycloNum::from_poly(m, inv_poly))
    }

    pub fn div(&self, other: &CycloNum) -> Result<CycloNum> {
        Ok(self.mul(&other.inv()?))
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus == other.modulus {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = CycloNum::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", i)?;
                    }
                }
            }
        }
        if self.modulus > 1 {
            write!(f, " (z = zeta_{})", self.modulus)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

/// zeta_m^e with exponent bookkeeping; multiplication adds exponents.
#[derive(Clone, Copy, Debug)]
pub struct RootOfUnity {
    modulus: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(modulus: u64, exponent: i64) -> Self {
        assert!(modulus > 0);
        RootOfUnity {
            modulus,
            exponent: exponent.rem_euclid(modulus as i64) as u64,
        }
    }

    pub fn one() -> Self {
        RootOfUnity::new(1, 0)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    /// Multiplicative order of the value.
    pub fn order(&self) -> u64 {
        self.modulus / self.modulus.gcd(&self.exponent)
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let m = self.modulus.lcm(&other.modulus);
        let e = self.exponent * (m / self.modulus) + other.exponent * (m / other.modulus);
        RootOfUnity::new(m, (e % m) as i64)
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let e = (self.exponent as i128 * k as i128).rem_euclid(self.modulus as i128);
        RootOfUnity::new(self.modulus, e as i64)
    }

    pub fn inverse(&self) -> RootOfUnity {
        self.pow(-1)
    }

    /// Express the same value as a power of zeta_d, when it lies in mu_d.
    pub fn reduce_to_order(&self, d: u64) -> Option<u64> {
        let prod = self.exponent as u128 * d as u128;
        if prod.is_multiple_of(self.modulus as u128) {
            Some(((prod / self.modulus as u128) % d as u128) as u64)
        } else {
            None
        }
    }

    pub fn to_cyclo(&self) -> CycloNum {
        CycloNum::root_of_unity(self.modulus, self.exponent as i64)
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        let d = self.order();
        other.order() == d && self.reduce_to_order(d) == other.reduce_to_order(d)
    }
}

impl Eq for RootOfUnity {}

/// Value of the linear character with the given generator exponent at the
/// power g = generator^elem_exp, inside mu_m.
pub fn character_value(chi_exponent: u64, m: u64, elem_exp: u64) -> RootOfUnity {
    RootOfUnity::new(m, ((chi_exponent as u128 * elem_exp as u128) % m as u128) as i64)
}
