//! The Galois ring GR(p^n, a) = Z/p^n[t]/(lifted modulus), realizing W_n(F_{p^a}).
//!
//! Elements are coefficient vectors in the power basis `1, t, ..., t^{a-1}`
//! with canonical representatives in `[0, p^n)`. The Frobenius lift `sigma`
//! is fixed once at construction as the image of `t`, obtained by Hensel
//! lifting the seed `t^p` to a root of the lifted modulus.

use std::fmt;
use std::sync::Arc;

use crate::arith::{add_mod, checked_prime_power, mul_mod, sub_mod, valuation_mod};
use crate::error::{Error, Result};
use crate::field::{Fq, FqField};

/// An element of a [`GaloisRing`]; arithmetic goes through the ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GrElem(pub Vec<u64>);

impl GrElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

pub struct GaloisRing {
    p: u64,
    n: u32,
    a: u32,
    pn: u64,
    field: Arc<FqField>,
    lifted_modulus: Vec<u64>,
    sigma_image: GrElem,
    /// `sigma_mats[j]` is the matrix of sigma^j (column k = coords of sigma^j(t^k)).
    sigma_mats: Vec<Vec<Vec<u64>>>,
}

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.p, self.n, self.a)
    }
}

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.a == other.a
            && self.lifted_modulus == other.lifted_modulus
    }
}

impl Eq for GaloisRing {}

/// Format a coefficient vector (low degree first) as "3*t + 3".
pub fn format_coeffs(c: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &ck) in c.iter().enumerate().rev() {
        if ck == 0 {
            continue;
        }
        let term = match (k, ck) {
            (0, _) => format!("{ck}"),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{ck}*t"),
            (_, 1) => format!("t^{k}"),
            _ => format!("{ck}*t^{k}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

impl GaloisRing {
    /// GR(p^n, a) with the lowest-lexicographic residue modulus.
    pub fn new(p: u64, n: u32, a: u32) -> Result<Arc<Self>> {
        let field = Arc::new(FqField::new(p, a)?);
        Self::over_field(field, n)
    }

    /// GR(p^n, a) over a given residue field.
    pub fn over_field(field: Arc<FqField>, n: u32) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidParameter("Witt length n must be >= 1".into()));
        }
        let p = field.p();
        let a = field.degree();
        let pn = checked_prime_power(p, n)?;
        let lifted_modulus = field.modulus().to_vec();
        let mut ring = GaloisRing {
            p,
            n,
            a,
            pn,
            field,
            lifted_modulus,
            sigma_image: GrElem(vec![0; a as usize]),
            sigma_mats: Vec::new(),
        };
        // sigma(t): root of the lifted modulus congruent to t^p.
        let t = ring.generator();
        let seed = ring.pow(&t, p);
        let f: Vec<GrElem> = ring.lifted_modulus.iter().map(|&c| ring.from_u64(c)).collect();
        let sig = ring.hensel_root(&f, &seed)?;
        ring.sigma_image = sig;
        ring.sigma_mats = vec![ring.identity_matrix()];
        let mut cols = Vec::with_capacity(a as usize);
        let mut power = ring.one();
        for _ in 0..a {
            cols.push(power.0.clone());
            power = ring.mul(&power, &ring.sigma_image);
        }
        let s1 = transpose(&cols);
        for j in 1..a {
            let prev = &ring.sigma_mats[j as usize - 1];
            let next = mat_mul_mod(&s1, prev, pn);
            ring.sigma_mats.push(next);
        }
        debug_assert!({
            let mut x = ring.generator();
            for _ in 0..a {
                x = ring.sigma(&x);
            }
            x == ring.generator()
        });
        Ok(Arc::new(ring))
    }

    fn identity_matrix(&self) -> Vec<Vec<u64>> {
        let a = self.a as usize;
        (0..a)
            .map(|i| (0..a).map(|j| u64::from(i == j)).collect())
            .collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Witt length n.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Residue degree a.
    pub fn a(&self) -> u32 {
        self.a
    }

    /// p^n.
    pub fn modulus_int(&self) -> u64 {
        self.pn
    }

    pub fn residue_field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn lifted_modulus(&self) -> &[u64] {
        &self.lifted_modulus
    }

    pub fn sigma_image(&self) -> &GrElem {
        &self.sigma_image
    }

    pub fn zero(&self) -> GrElem {
        GrElem(vec![0; self.a as usize])
    }

    pub fn one(&self) -> GrElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> GrElem {
        let mut v = vec![0; self.a as usize];
        v[0] = c % self.pn;
        GrElem(v)
    }

    pub fn from_int(&self, c: i64) -> GrElem {
        self.from_u64(crate::arith::reduce_i128(c as i128, self.pn))
    }

    pub fn from_coords(&self, c: &[u64]) -> GrElem {
        let mut v: Vec<u64> = c.iter().map(|x| x % self.pn).collect();
        v.resize(self.a as usize, 0);
        GrElem(v)
    }

    /// The class of t (for a = 1 this is the root of the linear modulus).
    pub fn generator(&self) -> GrElem {
        if self.a == 1 {
            self.from_u64(sub_mod(0, self.lifted_modulus[0] % self.pn, self.pn))
        } else {
            let mut v = vec![0; self.a as usize];
            v[1] = 1;
            GrElem(v)
        }
    }

    pub fn is_zero(&self, x: &GrElem) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &GrElem, y: &GrElem) -> GrElem {
        GrElem(x.0.iter().zip(&y.0).map(|(&u, &v)| add_mod(u, v, self.pn)).collect())
    }

    pub fn sub(&self, x: &GrElem, y: &GrElem) -> GrElem {
        GrElem(x.0.iter().zip(&y.0).map(|(&u, &v)| sub_mod(u, v, self.pn)).collect())
    }

    pub fn neg(&self, x: &GrElem) -> GrElem {
        GrElem(x.0.iter().map(|&u| sub_mod(0, u, self.pn)).collect())
    }

    pub fn scale(&self, x: &GrElem, c: u64) -> GrElem {
        let c = c % self.pn;
        GrElem(x.0.iter().map(|&u| mul_mod(u, c, self.pn)).collect())
    }

    pub fn mul(&self, x: &GrElem, y: &GrElem) -> GrElem {
        let a = self.a as usize;
        if a == 1 {
            return GrElem(vec![mul_mod(x.0[0], y.0[0], self.pn)]);
        }
        let m = self.pn as u128;
        let mut prod = vec![0u128; 2 * a - 1];
        for (i, &u) in x.0.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u128 * v as u128) % m;
            }
        }
        // Reduce with the monic lifted modulus.
        for k in (a..2 * a - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..a {
                let sub = c * self.lifted_modulus[i] as u128 % m;
                let idx = k - a + i;
                prod[idx] = (prod[idx] + m - sub) % m;
            }
        }
        GrElem(prod[..a].iter().map(|&c| c as u64).collect())
    }

    pub fn pow(&self, x: &GrElem, mut e: u64) -> GrElem {
        let mut r = self.one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// p-adic valuation; `valuation(0) = n`.
    pub fn valuation(&self, x: &GrElem) -> u32 {
        x.0.iter().map(|&c| valuation_mod(c, self.p, self.n)).min().unwrap_or(self.n)
    }

    pub fn is_unit(&self, x: &GrElem) -> bool {
        self.valuation(x) == 0
    }

    /// Reduction mod p into the residue field.
    pub fn residue(&self, x: &GrElem) -> Fq {
        let c: Vec<u64> = x.0.iter().map(|&c| c % self.p).collect();
        self.field.from_coeffs(&c)
    }

    /// The digit lift of a residue element (coordinates in `[0, p)`).
    pub fn lift(&self, x: Fq) -> GrElem {
        GrElem(self.field.to_coeffs(x))
    }

    pub fn inv(&self, x: &GrElem) -> Option<GrElem> {
        let r = self.field.inv(self.residue(x))?;
        let mut y = self.lift(r);
        let two = self.from_u64(2);
        for _ in 0..=self.n.ilog2() + 2 {
            let xy = self.mul(x, &y);
            if xy == self.one() {
                return Some(y);
            }
            y = self.mul(&y, &self.sub(&two, &xy));
        }
        debug_assert_eq!(self.mul(x, &y), self.one());
        Some(y)
    }

    /// Exact division by p^v; valid when `valuation(x) >= v`. The quotient is
    /// defined modulo p^{n-v}; the representative `coord / p^v` is returned.
    pub fn div_p_pow(&self, x: &GrElem, v: u32) -> GrElem {
        let d = self.p.pow(v);
        debug_assert!(x.0.iter().all(|&c| c % d == 0));
        GrElem(x.0.iter().map(|&c| c / d).collect())
    }

    pub fn p_pow(&self, v: u32) -> GrElem {
        if v >= self.n {
            self.zero()
        } else {
            self.from_u64(self.p.pow(v))
        }
    }

    /// Reduce coordinates modulo p^m (m <= n), staying in this ring.
    pub fn reduce_mod_p_pow(&self, x: &GrElem, m: u32) -> GrElem {
        if m >= self.n {
            return x.clone();
        }
        let d = self.p.pow(m);
        GrElem(x.0.iter().map(|&c| c % d).collect())
    }

    /// Matrix of σ^k on the power basis over Z/p^n (column j = coordinates of σ^k(t^j)).
    pub fn sigma_matrix(&self, k: i64) -> &[Vec<u64>] {
        &self.sigma_mats[k.rem_euclid(self.a as i64) as usize]
    }

    /// Matrix of multiplication by `x` on the power basis over Z/p^n.
    pub fn mul_matrix(&self, x: &GrElem) -> Vec<Vec<u64>> {
        let a = self.a as usize;
        let mut cols = Vec::with_capacity(a);
        let mut basis = self.one();
        let t = self.generator();
        for _ in 0..a {
            cols.push(self.mul(x, &basis).0);
            basis = self.mul(&basis, &t);
        }
        transpose(&cols)
    }

    pub fn sigma(&self, x: &GrElem) -> GrElem {
        self.sigma_pow(x, 1)
    }

    /// sigma^k for any integer k.
    pub fn sigma_pow(&self, x: &GrElem, k: i64) -> GrElem {
        let j = k.rem_euclid(self.a as i64) as usize;
        if j == 0 {
            return x.clone();
        }
        let m = &self.sigma_mats[j];
        let a = self.a as usize;
        let pn = self.pn as u128;
        let mut out = vec![0u64; a];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc: u128 = 0;
            for c in 0..a {
                acc = (acc + m[r][c] as u128 * x.0[c] as u128) % pn;
            }
            *o = acc as u64;
        }
        GrElem(out)
    }

    /// Teichmüller lift of a residue element: the unique root of X^q - X
    /// reducing to it.
    pub fn teichmuller(&self, x0: Fq) -> GrElem {
        let q = self.field.size();
        let mut y = self.lift(x0);
        loop {
            let next = self.pow(&y, q);
            if next == y {
                return y;
            }
            y = next;
        }
    }

    pub fn eval_poly(&self, f: &[GrElem], x: &GrElem) -> GrElem {
        f.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// Newton iteration for a root of `f` (coefficients low degree first)
    /// congruent to `seed` mod p. Requires `f(seed) = 0 mod p` and `f'(seed)` a unit.
    pub fn hensel_root(&self, f: &[GrElem], seed: &GrElem) -> Result<GrElem> {
        let df: Vec<GrElem> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.scale(c, i as u64))
            .collect();
        let d0 = self.eval_poly(&df, seed);
        if !self.is_unit(&d0) {
            return Err(Error::NotSimpleRoot);
        }
        if self.residue(&self.eval_poly(f, seed)) != 0 {
            return Err(Error::InvalidParameter("seed is not a root mod p".into()));
        }
        let mut x = seed.clone();
        for _ in 0..=self.n + 1 {
            let fx = self.eval_poly(f, &x);
            if self.is_zero(&fx) {
                return Ok(x);
            }
            let dx = self.eval_poly(&df, &x);
            let inv = self.inv(&dx).ok_or(Error::NotSimpleRoot)?;
            x = self.sub(&x, &self.mul(&fx, &inv));
        }
        if self.is_zero(&self.eval_poly(f, &x)) {
            Ok(x)
        } else {
            Err(Error::NotSimpleRoot)
        }
    }

    /// The same ring with Witt length m <= n.
    pub fn truncated(&self, m: u32) -> Result<Arc<GaloisRing>> {
        if m == 0 || m > self.n {
            return Err(Error::InvalidParameter(format!("cannot truncate length {} to {m}", self.n)));
        }
        GaloisRing::over_field(self.field.clone(), m)
    }

    /// Elements whose coordinates are all zero except the constant one lie in Z/p^n.
    pub fn is_in_prime_subring(&self, x: &GrElem) -> bool {
        x.0[1..].iter().all(|&c| c == 0)
    }

    pub fn format(&self, x: &GrElem) -> String {
        format_coeffs(&x.0)
    }

    /// Parse the textual form produced by [`GaloisRing::format`].
    pub fn parse(&self, s: &str) -> Result<GrElem> {
        let mut coords = vec![0u64; self.a as usize];
        let s = s.trim();
        if s == "0" {
            return Ok(self.zero());
        }
        for term in s.split('+') {
            let term = term.trim();
            let (coef, deg) = match term.split_once('t') {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let c = c.trim_end_matches('*').trim();
                    let c = if c.is_empty() { "1" } else { c };
                    let deg = match rest.strip_prefix('^') {
                        Some(d) => d.trim().parse().map_err(|_| Error::Parse(term.into()))?,
                        None if rest.is_empty() => 1,
                        None => return Err(Error::Parse(term.into())),
                    };
                    (c, deg)
                }
            };
            let c: u64 = coef.parse().map_err(|_| Error::Parse(term.into()))?;
            if deg >= self.a as usize {
                return Err(Error::Parse(format!("degree {deg} too large in '{term}'")));
            }
            coords[deg] = add_mod(coords[deg], c % self.pn, self.pn);
        }
        Ok(GrElem(coords))
    }

    /// All elements (for exhaustive checks on tiny rings).
    pub fn elements(&self) -> Vec<GrElem> {
        let a = self.a as usize;
        let total = (self.pn as u128).pow(a as u32);
        assert!(total <= 1 << 20, "ring too large to enumerate");
        (0..total as u64)
            .map(|mut code| {
                let mut v = Vec::with_capacity(a);
                for _ in 0..a {
                    v.push(code % self.pn);
                    code /= self.pn;
                }
                GrElem(v)
            })
            .collect()
    }
}

fn transpose(cols: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let a = cols.len();
    (0..a).map(|r| (0..a).map(|c| cols[c][r]).collect()).collect()
}

fn mat_mul_mod(x: &[Vec<u64>], y: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    let a = x.len();
    (0..a)
        .map(|r| {
            (0..a)
                .map(|c| {
                    (0..a).fold(0u64, |acc, k| add_mod(acc, mul_mod(x[r][k], y[k][c], m), m))
                })
                .collect()
        })
        .collect()
}

/// A Frobenius-compatible embedding GR(p^n, a) -> GR(p^n, a*s).
#[derive(Clone, Debug)]
pub struct RingEmbedding {
    pub source: Arc<GaloisRing>,
    pub target: Arc<GaloisRing>,
    image_powers: Vec<GrElem>,
}

impl RingEmbedding {
    pub fn new(source: &Arc<GaloisRing>, target: &Arc<GaloisRing>) -> Result<Self> {
        if source.p != target.p || source.n != target.n || !target.a.is_multiple_of(source.a) {
            return Err(Error::RingMismatch(format!("{source:?} does not embed in {target:?}")));
        }
        let f: Vec<GrElem> =
            source.lifted_modulus.iter().map(|&c| target.from_u64(c)).collect();
        let tf = target.residue_field();
        let m: Vec<Fq> = source.lifted_modulus.iter().map(|&c| (c % source.p) as Fq).collect();
        let root0 = tf
            .elements()
            .find(|&x| tf.eval_poly(&m, x) == 0)
            .ok_or_else(|| Error::RingMismatch("no residue root".into()))?;
        let root = target.hensel_root(&f, &target.lift(root0))?;
        let mut image_powers = Vec::with_capacity(source.a as usize);
        let mut pw = target.one();
        for _ in 0..source.a {
            image_powers.push(pw.clone());
            pw = target.mul(&pw, &root);
        }
        Ok(RingEmbedding { source: source.clone(), target: target.clone(), image_powers })
    }

    pub fn map(&self, x: &GrElem) -> GrElem {
        let t = &self.target;
        x.0.iter()
            .zip(&self.image_powers)
            .fold(t.zero(), |acc, (&c, pw)| t.add(&acc, &t.scale(pw, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_elem(r: &GaloisRing, rng: &mut ChaCha8Rng) -> GrElem {
        GrElem((0..r.a()).map(|_| rng.gen_range(0..r.modulus_int())).collect())
    }

    #[test]
    fn construct_prime_field() {
        let r = GaloisRing::new(2, 1, 1).unwrap();
        assert_eq!(r.modulus_int(), 2);
        let x = r.from_u64(1);
        assert_eq!(r.sigma(&x), x);
        let r = GaloisRing::new(3, 2, 1).unwrap();
        for x in r.elements() {
            assert_eq!(r.sigma(&x), x);
        }
    }

    #[test]
    fn construct_gr4_2() {
        let r = GaloisRing::new(2, 2, 2).unwrap();
        assert_eq!(r.lifted_modulus(), &[1, 1, 1]);
        // sigma(t) = 3t + 3
        assert_eq!(r.sigma_image(), &GrElem(vec![3, 3]));
        assert_eq!(r.format(r.sigma_image()), "3*t + 3");
        let s = r.sigma_image().clone();
        let f = [r.one(), r.one(), r.one()];
        assert!(r.is_zero(&r.eval_poly(&f, &s)));
        assert_eq!(r.sigma(&s), r.generator());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(GaloisRing::new(6, 1, 1).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(GaloisRing::new(2, 64, 1).unwrap_err(), Error::ModulusTooLarge { .. }));
    }

    #[test]
    fn teichmuller_examples() {
        let r = GaloisRing::new(2, 2, 2).unwrap();
        assert_eq!(r.teichmuller(0), r.zero());
        assert_eq!(r.teichmuller(1), r.one());
        let tbar = r.residue_field().generator();
        assert_eq!(r.teichmuller(tbar), r.generator());
    }

    #[test]
    fn teichmuller_multiplicative() {
        let r = GaloisRing::new(3, 3, 2).unwrap();
        let f = r.residue_field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = rng.gen_range(0..f.size()) as Fq;
            let y = rng.gen_range(0..f.size()) as Fq;
            let lhs = r.teichmuller(f.mul(x, y));
            let rhs = r.mul(&r.teichmuller(x), &r.teichmuller(y));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hensel_examples() {
        let z8 = GaloisRing::new(2, 3, 1).unwrap();
        let f = [z8.from_u64(2), z8.from_u64(1), z8.from_u64(1)];
        assert_eq!(z8.hensel_root(&f, &z8.from_u64(1)).unwrap(), z8.from_u64(5));
        let lin = [z8.from_int(-3), z8.one()];
        assert_eq!(z8.hensel_root(&lin, &z8.from_u64(1)).unwrap(), z8.from_u64(3));
        // T^2 has a double root at 0.
        let sq = [z8.zero(), z8.zero(), z8.one()];
        assert_eq!(z8.hensel_root(&sq, &z8.zero()).unwrap_err(), Error::NotSimpleRoot);
    }

    #[test]
    fn valuation_examples() {
        let r = GaloisRing::new(3, 2, 2).unwrap();
        assert_eq!(r.valuation(&r.from_u64(3)), 1);
        assert_eq!(r.valuation(&r.zero()), 2);
        assert_eq!(r.valuation(&r.generator()), 0);
        assert!(r.is_unit(&r.generator()));
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        let r = GaloisRing::new(2, 2, 2).unwrap();
        let els = r.elements();
        for x in &els {
            for y in &els {
                assert_eq!(r.mul(x, y), r.mul(y, x));
                assert_eq!(r.sigma(&r.mul(x, y)), r.mul(&r.sigma(x), &r.sigma(y)));
                assert_eq!(r.sigma(&r.add(x, y)), r.add(&r.sigma(x), &r.sigma(y)));
                for z in els.iter().step_by(3) {
                    assert_eq!(r.mul(&r.mul(x, y), z), r.mul(x, &r.mul(y, z)));
                    assert_eq!(r.mul(x, &r.add(y, z)), r.add(&r.mul(x, y), &r.mul(x, z)));
                }
            }
        }
    }

    #[test]
    fn units_are_valuation_zero() {
        let r = GaloisRing::new(3, 2, 2).unwrap();
        for x in r.elements() {
            match r.inv(&x) {
                Some(y) => {
                    assert_eq!(r.valuation(&x), 0);
                    assert_eq!(r.mul(&x, &y), r.one());
                }
                None => assert!(r.valuation(&x) > 0),
            }
        }
    }

    #[test]
    fn sigma_properties_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n, a) in [(2, 4, 3), (3, 3, 2), (5, 2, 3), (2, 3, 4)] {
            let r = GaloisRing::new(p, n, a).unwrap();
            for _ in 0..20 {
                let x = random_elem(&r, &mut rng);
                let mut y = x.clone();
                for _ in 0..a {
                    y = r.sigma(&y);
                }
                assert_eq!(y, x);
                assert_eq!(r.residue(&r.sigma(&x)), r.residue(&r.pow(&x, p)));
                assert_eq!(r.sigma_pow(&r.sigma_pow(&x, -1), 1), x);
                let c = r.from_u64(rng.gen_range(0..r.modulus_int()));
                assert_eq!(r.sigma(&c), c);
            }
        }
    }

    #[test]
    fn reduction_is_sigma_equivariant_hom() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let big = GaloisRing::new(3, 3, 2).unwrap();
        for m in 1..=3 {
            let small = big.truncated(m).unwrap();
            let red = |x: &GrElem| small.from_coords(&x.0);
            for _ in 0..20 {
                let x = random_elem(&big, &mut rng);
                let y = random_elem(&big, &mut rng);
                assert_eq!(red(&big.mul(&x, &y)), small.mul(&red(&x), &red(&y)));
                assert_eq!(red(&big.add(&x, &y)), small.add(&red(&x), &red(&y)));
                assert_eq!(red(&big.sigma(&x)), small.sigma(&red(&x)));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let r = GaloisRing::new(2, 3, 3).unwrap();
        for x in r.elements().into_iter().step_by(7) {
            assert_eq!(r.parse(&r.format(&x)).unwrap(), x);
        }
        assert_eq!(r.format(&r.from_coords(&[3, 0, 1])), "t^2 + 3");
    }

    #[test]
    fn embedding_commutes_with_sigma() {
        let small = GaloisRing::new(2, 3, 2).unwrap();
        let big = GaloisRing::new(2, 3, 4).unwrap();
        let e = RingEmbedding::new(&small, &big).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = random_elem(&small, &mut rng);
            let y = random_elem(&small, &mut rng);
            assert_eq!(e.map(&small.mul(&x, &y)), big.mul(&e.map(&x), &e.map(&y)));
            assert_eq!(e.map(&small.sigma(&x)), big.sigma(&e.map(&x)));
        }
    }
}
