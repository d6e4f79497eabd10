//! Table-driven arithmetic in F_q, q = p^a.
//!
//! Elements are encoded as integers `sum c_i p^i` where `c_i` is the
//! coefficient of `t^i` in the polynomial basis over F_p. The defining
//! polynomial is the lowest-lexicographic monic irreducible of degree `a`,
//! so the encoding is reproducible across runs.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// An element of F_q in the base-p digit encoding.
pub type Fq = u32;

const MAX_FIELD_SIZE: u64 = 1 << 24;
const ADD_TABLE_LIMIT: u64 = 1024;

type FieldCache = HashMap<(u64, u32), Arc<FqField>>;

#[derive(Clone)]
pub struct FqField {
    p: u64,
    a: u32,
    q: u64,
    /// Monic modulus, low degree first (length a + 1).
    modulus: Vec<u64>,
    exp: Vec<Fq>,
    log: Vec<u32>,
    add_table: Option<Vec<Fq>>,
    neg: Vec<Fq>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.a, self.modulus)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.a == other.a && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

// Dense polynomials over F_p, low degree first, used only for the modulus search.
fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = crate::arith::pow_mod(m[dm], p - 2, p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - c * m[i] % p) % p;
        }
        trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Irreducibility over F_p: gcd(x^{p^i} - x, m) = 1 for 1 <= i < deg m, and
/// m | x^{p^deg} - x.
pub fn is_irreducible_fp(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for i in 1..=d {
        // xp <- xp^p mod m
        let mut acc = vec![1u64];
        for _ in 0..p {
            acc = poly_mulmod(&acc, &xp, m, p);
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if i < d {
            let g = poly_gcd(m, &diff, p);
            if g.len() > 1 {
                return false;
            }
        } else {
            let r = poly_rem(&diff, m, p);
            return r.len() == 1 && r[0] == 0;
        }
    }
    unreachable!()
}

/// Lowest-lexicographic monic irreducible polynomial of degree `a` over F_p
/// (candidates ordered by the integer `sum c_i p^i` of their lower coefficients).
pub fn lowest_irreducible(p: u64, a: u32) -> Vec<u64> {
    let count = p.pow(a);
    for code in 0..count {
        let mut m = Vec::with_capacity(a as usize + 1);
        let mut c = code;
        for _ in 0..a {
            m.push(c % p);
            c /= p;
        }
        m.push(1);
        if is_irreducible_fp(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FqField {
    /// F_{p^a} with the lowest-lexicographic modulus.
    pub fn new(p: u64, a: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let modulus = lowest_irreducible(p, a);
        Self::with_modulus(p, modulus)
    }

    /// Process-wide shared instance of `new(p, a)`.
    pub fn shared(p: u64, a: u32) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<FieldCache>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().expect("field cache").get(&(p, a)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Self::new(p, a)?);
        cache.lock().expect("field cache").insert((p, a), f.clone());
        Ok(f)
    }

    /// F_p[t]/(modulus); the modulus must be monic irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let a = (modulus.len() - 1) as u32;
        if modulus.last() != Some(&1) || !is_irreducible_fp(&modulus, p) {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus:?} is not monic irreducible over F_{p}"
            )));
        }
        let q = (p as u128).pow(a);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::Unsupported(format!("field of size {q} is too large for tables")));
        }
        let q = q as u64;
        let mut field = FqField {
            p,
            a,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
            neg: Vec::new(),
        };
        field.neg = (0..q as Fq).map(|x| field.neg_digits(x)).collect();
        field.build_tables();
        if q <= ADD_TABLE_LIMIT {
            let mut t = vec![0; (q * q) as usize];
            for x in 0..q as Fq {
                for y in 0..q as Fq {
                    t[(x as u64 * q + y as u64) as usize] = field.add_digits(x, y);
                }
            }
            field.add_table = Some(t);
        }
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        let factors = prime_factors(order);
        let mut generator = None;
        for g in 1..q as Fq {
            let gv = self.to_coeffs(g);
            let is_primitive = order == 1
                || factors.iter().all(|&l| {
                    let r = self.slow_pow(&gv, order / l);
                    !(r[0] == 1 && r[1..].iter().all(|&c| c == 0))
                });
            if is_primitive {
                generator = Some(gv);
                break;
            }
        }
        let g = generator.expect("F_q^* is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![0u64; self.a as usize];
        cur[0] = 1;
        for i in 0..order {
            let code = self.from_coeffs(&cur);
            exp.push(code);
            log[code as usize] = i as u32;
            cur = self.slow_mul(&cur, &g);
        }
        self.exp = exp;
        self.log = log;
    }

    fn slow_mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut r = poly_mulmod(x, y, &self.modulus, self.p);
        r.resize(self.a as usize, 0);
        r
    }

    fn slow_pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = vec![0u64; self.a as usize];
        r[0] = 1;
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.slow_mul(&r, &b);
            }
            b = self.slow_mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn add_digits(&self, mut x: Fq, mut y: Fq) -> Fq {
        if self.p == 2 {
            return x ^ y;
        }
        let p = self.p as u32;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.a {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    fn neg_digits(&self, mut x: Fq) -> Fq {
        let p = self.p as u32;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.a {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.a
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of `t`.
    pub fn generator(&self) -> Fq {
        if self.a == 1 {
            // t is the root of the linear modulus x + m_0.
            self.neg[self.modulus[0] as usize]
        } else {
            self.p as Fq
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Fq {
        let mut code: u64 = 0;
        for &ci in c.iter().take(self.a as usize).rev() {
            code = code * self.p + ci % self.p;
        }
        code as Fq
    }

    pub fn to_coeffs(&self, x: Fq) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.a as usize);
        let mut c = x as u64;
        for _ in 0..self.a {
            v.push(c % self.p);
            c /= self.p;
        }
        v
    }

    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as Fq
    }

    #[inline]
    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        match &self.add_table {
            Some(t) => t[(x as u64 * self.q + y as u64) as usize],
            None => self.add_digits(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Fq) -> Fq {
        self.neg[x as usize]
    }

    #[inline]
    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        if x == 0 || y == 0 {
            return 0;
        }
        let order = self.q - 1;
        let e = (self.log[x as usize] as u64 + self.log[y as usize] as u64) % order;
        self.exp[e as usize]
    }

    pub fn inv(&self, x: Fq) -> Option<Fq> {
        if x == 0 {
            return None;
        }
        let order = self.q - 1;
        let e = (order - self.log[x as usize] as u64) % order;
        Some(self.exp[e as usize])
    }

    pub fn pow(&self, x: Fq, e: u64) -> Fq {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let order = self.q - 1;
        let l = (self.log[x as usize] as u128 * e as u128 % order as u128) as u64;
        self.exp[l as usize]
    }

    /// x^{p^k} for any integer k (negative k gives inverse Frobenius powers).
    pub fn frobenius(&self, x: Fq, k: i64) -> Fq {
        let k = k.rem_euclid(self.a as i64) as u32;
        self.pow(x, self.p.pow(k))
    }

    /// Evaluate a polynomial with F_q coefficients (low degree first).
    pub fn eval_poly(&self, coeffs: &[Fq], x: Fq) -> Fq {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Whether `x` lies in the prime field F_p.
    pub fn is_prime_field_element(&self, x: Fq) -> bool {
        (x as u64) < self.p
    }

    /// Display as a polynomial in t, e.g. "t + 1".
    pub fn format(&self, x: Fq) -> String {
        crate::galois::format_coeffs(&self.to_coeffs(x))
    }
}

/// A field embedding F_q -> F_{q'} sending the generator to a chosen root of
/// the source modulus.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    table: Vec<Fq>,
}

impl FieldEmbedding {
    pub fn new(src: &FqField, dst: &FqField) -> Result<Self> {
        if src.p != dst.p || !dst.a.is_multiple_of(src.a) {
            return Err(Error::RingMismatch(format!(
                "cannot embed F_{}^{} into F_{}^{}",
                src.p, src.a, dst.p, dst.a
            )));
        }
        let m: Vec<Fq> = src.modulus.iter().map(|&c| c as Fq).collect();
        let root = dst
            .elements()
            .find(|&x| dst.eval_poly(&m, x) == 0)
            .ok_or_else(|| Error::RingMismatch("modulus has no root in target".into()))?;
        let table = src
            .elements()
            .map(|x| {
                let c: Vec<Fq> = src.to_coeffs(x).iter().map(|&c| c as Fq).collect();
                dst.eval_poly(&c, root)
            })
            .collect();
        Ok(FieldEmbedding { table })
    }

    #[inline]
    pub fn map(&self, x: Fq) -> Fq {
        self.table[x as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_moduli() {
        assert_eq!(lowest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(lowest_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(lowest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(lowest_irreducible(5, 1), vec![0, 1]);
    }

    #[test]
    fn irreducibility() {
        assert!(!is_irreducible_fp(&[1, 0, 1], 2)); // (x+1)^2
        assert!(!is_irreducible_fp(&[2, 0, 1], 3)); // x^2 + 2 = (x+1)(x+2)
        assert!(is_irreducible_fp(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn field_axioms_exhaustive_f9() {
        let f = FqField::new(3, 2).unwrap();
        for x in f.elements() {
            assert_eq!(f.add(x, f.neg(x)), 0);
            if x != 0 {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
            }
            assert_eq!(f.pow(x, 9), x);
            for y in f.elements() {
                for z in [0, 1, 5, 8] {
                    let lhs = f.mul(x, f.add(y, z));
                    let rhs = f.add(f.mul(x, y), f.mul(x, z));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn generator_satisfies_modulus() {
        for (p, a) in [(2, 2), (2, 3), (3, 2), (5, 1), (3, 1)] {
            let f = FqField::new(p, a).unwrap();
            let m: Vec<Fq> = f.modulus().iter().map(|&c| c as Fq).collect();
            assert_eq!(f.eval_poly(&m, f.generator()), 0);
        }
    }

    #[test]
    fn embedding_is_ring_hom() {
        let f4 = FqField::new(2, 2).unwrap();
        let f16 = FqField::new(2, 4).unwrap();
        let e = FieldEmbedding::new(&f4, &f16).unwrap();
        for x in f4.elements() {
            for y in f4.elements() {
                assert_eq!(e.map(f4.mul(x, y)), f16.mul(e.map(x), e.map(y)));
                assert_eq!(e.map(f4.add(x, y)), f16.add(e.map(x), e.map(y)));
            }
        }
        assert!(FieldEmbedding::new(&f4, &FqField::new(2, 3).unwrap()).is_err());
    }

    #[test]
    fn rejects_non_prime() {
        assert_eq!(FqField::new(4, 1).unwrap_err(), Error::NotPrime(4));
    }
}
