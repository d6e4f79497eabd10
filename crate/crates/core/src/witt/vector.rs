//! Truncated Witt vectors over a coefficient ring.

use std::sync::Arc;

use num_bigint::BigInt;

use super::laws::{eval_polys, ghost_poly, WittLaws};
use super::ring::CoeffRing;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct WittVector<E> {
    pub coords: Vec<E>,
}

impl<E> WittVector<E> {
    pub fn new(coords: Vec<E>) -> Self {
        WittVector { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Witt arithmetic of length up to `laws.n()` over a ring.
pub struct WittOps<'r, R: CoeffRing> {
    ring: &'r R,
    laws: Arc<WittLaws>,
}

impl<'r, R: CoeffRing> WittOps<'r, R> {
    pub fn new(ring: &'r R, p: u64, n: usize) -> Result<Self> {
        if let Some(q) = ring.char_p() {
            if q != p {
                return Err(Error::RingMismatch(format!("ring has characteristic {q}, laws are for p = {p}")));
            }
        }
        Ok(WittOps { ring, laws: WittLaws::get(p, n)? })
    }

    pub fn with_laws(ring: &'r R, laws: Arc<WittLaws>) -> Self {
        WittOps { ring, laws }
    }

    pub fn ring(&self) -> &R {
        self.ring
    }

    pub fn p(&self) -> u64 {
        self.laws.p()
    }

    pub fn n(&self) -> usize {
        self.laws.n()
    }

    fn opt(&self, x: &R::Elem) -> Option<R::Elem> {
        (!self.ring.is_zero(x)).then(|| x.clone())
    }

    fn check_len(&self, u: &WittVector<R::Elem>) -> Result<usize> {
        if u.is_empty() || u.len() > self.n() {
            return Err(Error::LengthMismatch(u.len(), self.n()));
        }
        Ok(u.len())
    }

    fn binary_vals(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<Vec<Option<R::Elem>>> {
        let m = self.check_len(u)?;
        if v.len() != m {
            return Err(Error::LengthMismatch(m, v.len()));
        }
        let n = self.n();
        let mut vals = vec![None; 2 * n];
        for i in 0..m {
            vals[i] = self.opt(&u.coords[i]);
            vals[n + i] = self.opt(&v.coords[i]);
        }
        Ok(vals)
    }

    pub fn zero(&self, m: usize) -> WittVector<R::Elem> {
        WittVector::new(vec![self.ring.zero(); m])
    }

    pub fn one(&self, m: usize) -> WittVector<R::Elem> {
        self.teichmuller(&self.ring.one(), m)
    }

    /// [x] = (x, 0, ..., 0).
    pub fn teichmuller(&self, x: &R::Elem, m: usize) -> WittVector<R::Elem> {
        let mut c = vec![self.ring.zero(); m];
        c[0] = x.clone();
        WittVector::new(c)
    }

    pub fn add(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        let vals = self.binary_vals(u, v)?;
        Ok(WittVector::new(eval_polys(self.ring, &self.laws.sum()[..u.len()], &vals)))
    }

    pub fn mul(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        let vals = self.binary_vals(u, v)?;
        Ok(WittVector::new(eval_polys(self.ring, &self.laws.prod()[..u.len()], &vals)))
    }

    pub fn neg(&self, u: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        let m = self.check_len(u)?;
        if self.p() != 2 && self.ring.char_p().is_some() {
            return Ok(WittVector::new(u.coords.iter().map(|x| self.ring.neg(x)).collect()));
        }
        let mut vals = vec![None; self.n()];
        for i in 0..m {
            vals[i] = self.opt(&u.coords[i]);
        }
        Ok(WittVector::new(eval_polys(self.ring, &self.laws.neg()[..m], &vals)))
    }

    pub fn sub(&self, u: &WittVector<R::Elem>, v: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        self.add(u, &self.neg(v)?)
    }

    /// k·1 for an integer k.
    pub fn from_integer(&self, k: i64, m: usize) -> Result<WittVector<R::Elem>> {
        let mut acc = self.zero(m);
        let mut base = self.one(m);
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base)?;
            }
        }
        if k < 0 {
            acc = self.neg(&acc)?;
        }
        Ok(acc)
    }

    /// Frobenius. Over an F_p-algebra this is the coordinatewise p-th power
    /// (length preserved); otherwise the generic law W_m -> W_{m-1}.
    pub fn frobenius(&self, u: &WittVector<R::Elem>) -> Result<WittVector<R::Elem>> {
        let m = self.check_len(u)?;
        if self.ring.char_p().is_some() {
            let coords = u
                .coords
                .iter()
                .map(|x| match self.ring.pth_power(x) {
                    Some(y) => Ok(y),
                    None => Err(Error::NoPthPower),
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(WittVector::new(coords));
        }
        let mut vals = vec![None; self.n()];
        for i in 0..m {
            vals[i] = self.opt(&u.coords[i]);
        }
        Ok(WittVector::new(eval_polys(self.ring, &self.laws.frob()[..m - 1], &vals)))
    }

    /// Fixed-length Verschiebung: (a_0, ..., a_{m-1}) -> (0, a_0, ..., a_{m-2}).
    pub fn verschiebung(&self, u: &WittVector<R::Elem>) -> WittVector<R::Elem> {
        let mut c = Vec::with_capacity(u.len());
        c.push(self.ring.zero());
        c.extend(u.coords[..u.len() - 1].iter().cloned());
        WittVector::new(c)
    }

    /// Length-raising Verschiebung W_m -> W_{m+1}.
    pub fn verschiebung_raise(&self, u: &WittVector<R::Elem>) -> WittVector<R::Elem> {
        let mut c = Vec::with_capacity(u.len() + 1);
        c.push(self.ring.zero());
        c.extend(u.coords.iter().cloned());
        WittVector::new(c)
    }

    /// Restriction to the first `m` coordinates.
    pub fn restrict(&self, u: &WittVector<R::Elem>, m: usize) -> WittVector<R::Elem> {
        WittVector::new(u.coords[..m].to_vec())
    }

    pub fn ghost(&self, u: &WittVector<R::Elem>) -> Result<Vec<R::Elem>> {
        if !self.ring.p_torsion_free() {
            return Err(Error::GhostUndefined);
        }
        let m = self.check_len(u)?;
        let polys: Vec<_> = (0..m).map(|k| ghost_poly(self.p(), k, m, 0)).collect();
        let vals: Vec<Option<R::Elem>> = u.coords.iter().map(|x| self.opt(x)).collect();
        Ok(eval_polys(self.ring, &polys, &vals))
    }

    pub fn is_zero(&self, u: &WittVector<R::Elem>) -> bool {
        u.coords.iter().all(|x| self.ring.is_zero(x))
    }

    /// Multiply by an integer constant embedded as k·[1].
    pub fn scale_int(&self, u: &WittVector<R::Elem>, k: i64) -> Result<WittVector<R::Elem>> {
        let c = self.from_integer(k, u.len())?;
        self.mul(&c, u)
    }
}

/// Convert integers into ring elements coordinatewise.
pub fn int_vector<R: CoeffRing>(ring: &R, v: &[i64]) -> WittVector<R::Elem> {
    WittVector::new(v.iter().map(|&x| ring.from_bigint(&BigInt::from(x))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;
    use crate::mpoly::MPoly;
    use crate::witt::ring::{FqPolyRing, Integers};
    use proptest::prelude::*;
    use std::sync::Arc;

    #[test]
    fn w2_f2_one_plus_one() {
        let k = FqField::new(2, 1).unwrap();
        let ops = WittOps::new(&k, 2, 2).unwrap();
        let one = ops.one(2);
        assert_eq!(ops.add(&one, &one).unwrap().coords, vec![0, 1]);
    }

    #[test]
    fn additive_identity_over_z() {
        let ops = WittOps::new(&Integers, 2, 2).unwrap();
        let u = int_vector(&Integers, &[2, 3]);
        assert_eq!(ops.add(&u, &ops.zero(2)).unwrap(), u);
    }

    #[test]
    fn ghost_examples() {
        let ops = WittOps::new(&Integers, 2, 3).unwrap();
        let g = ops.ghost(&int_vector(&Integers, &[2, 3])).unwrap();
        assert_eq!(g, vec![BigInt::from(2), BigInt::from(10)]);
        let t = ops.teichmuller(&BigInt::from(3), 3);
        assert_eq!(ops.ghost(&t).unwrap(), vec![BigInt::from(3), BigInt::from(9), BigInt::from(81)]);
        let k = FqField::new(2, 1).unwrap();
        let fops = WittOps::new(&k, 2, 2).unwrap();
        assert_eq!(fops.ghost(&fops.one(2)).unwrap_err(), Error::GhostUndefined);
    }

    #[test]
    fn teichmuller_multiplicative_polys() {
        let k = Arc::new(FqField::new(2, 2).unwrap());
        let r = FqPolyRing::new(&k, 2);
        let ops = WittOps::new(&r, 2, 3).unwrap();
        let x = MPoly::var(&k, 2, 0);
        let y = MPoly::var(&k, 2, 1);
        let lhs = ops.mul(&ops.teichmuller(&x, 3), &ops.teichmuller(&y, 3)).unwrap();
        assert_eq!(lhs, ops.teichmuller(&x.mul(&y), 3));
    }

    #[test]
    fn frobenius_on_polys() {
        let k = Arc::new(FqField::new(2, 1).unwrap());
        let r = FqPolyRing::new(&k, 2);
        let ops = WittOps::new(&r, 2, 2).unwrap();
        let x = MPoly::var(&k, 2, 0);
        let y = MPoly::var(&k, 2, 1);
        let u = WittVector::new(vec![x.clone(), y.clone()]);
        assert_eq!(ops.frobenius(&u).unwrap().coords, vec![x.pow(2), y.pow(2)]);
    }

    #[test]
    fn negation_p2_in_f2() {
        let k = FqField::new(2, 1).unwrap();
        let ops = WittOps::new(&k, 2, 3).unwrap();
        let m1 = ops.neg(&ops.one(3)).unwrap();
        assert_eq!(m1.coords, vec![1, 1, 1]);
        assert!(ops.is_zero(&ops.add(&m1, &ops.one(3)).unwrap()));
    }

    #[test]
    fn verschiebung_examples() {
        let k = FqField::new(2, 1).unwrap();
        let ops = WittOps::new(&k, 2, 3).unwrap();
        let u = WittVector::new(vec![1, 1]);
        assert_eq!(ops.verschiebung_raise(&u).coords, vec![0, 1, 1]);
        assert_eq!(ops.restrict(&u, 1).coords, vec![1]);
        let w = WittVector::new(vec![1, 0, 1]);
        assert_eq!(ops.verschiebung(&w).coords, vec![0, 1, 0]);
    }

    fn exhaustive_vectors(q: u32, n: usize) -> Vec<WittVector<u32>> {
        let total = (q as usize).pow(n as u32);
        (0..total)
            .map(|mut c| {
                let mut v = Vec::with_capacity(n);
                for _ in 0..n {
                    v.push((c % q as usize) as u32);
                    c /= q as usize;
                }
                WittVector::new(v)
            })
            .collect()
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for (p, a, n) in [(2u64, 1u32, 2usize), (2, 2, 2), (2, 1, 3)] {
            let k = FqField::new(p, a).unwrap();
            let ops = WittOps::new(&k, p, n).unwrap();
            let els = exhaustive_vectors(k.size() as u32, n);
            let one = ops.one(n);
            for u in &els {
                assert_eq!(ops.mul(u, &one).unwrap(), *u);
                assert!(ops.is_zero(&ops.add(u, &ops.neg(u).unwrap()).unwrap()));
                for v in &els {
                    let s = ops.add(u, v).unwrap();
                    assert_eq!(s, ops.add(v, u).unwrap());
                    assert_eq!(ops.mul(u, v).unwrap(), ops.mul(v, u).unwrap());
                    for w in els.iter().step_by(5) {
                        assert_eq!(ops.add(&s, w).unwrap(), ops.add(u, &ops.add(v, w).unwrap()).unwrap());
                        let lhs = ops.mul(u, &ops.add(v, w).unwrap()).unwrap();
                        let rhs = ops.add(&ops.mul(u, v).unwrap(), &ops.mul(u, w).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn fv_equals_p_over_f8() {
        let k = FqField::new(2, 3).unwrap();
        let ops = WittOps::new(&k, 2, 3).unwrap();
        let mut rng = 12345u64;
        for _ in 0..50 {
            let u = WittVector::new(
                (0..3)
                    .map(|_| {
                        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((rng >> 33) % 8) as u32
                    })
                    .collect(),
            );
            let pu = ops.scale_int(&u, 2).unwrap();
            assert_eq!(ops.frobenius(&ops.verschiebung(&u)).unwrap(), pu);
            assert_eq!(ops.verschiebung(&ops.frobenius(&u).unwrap()), pu);
        }
    }

    #[test]
    fn fv_equals_p_over_f4_length2() {
        let k = FqField::new(2, 2).unwrap();
        let ops = WittOps::new(&k, 2, 2).unwrap();
        for u in exhaustive_vectors(4, 2) {
            let pu = ops.add(&u, &u).unwrap();
            assert_eq!(ops.frobenius(&ops.verschiebung(&u)).unwrap(), pu);
        }
    }

    proptest! {
        #[test]
        fn ghost_is_ring_hom(a in proptest::collection::vec(-50i64..50, 3),
                             b in proptest::collection::vec(-50i64..50, 3),
                             p in prop::sample::select(vec![2u64, 3, 5])) {
            let ops = WittOps::new(&Integers, p, 3).unwrap();
            let u = int_vector(&Integers, &a);
            let v = int_vector(&Integers, &b);
            let gu = ops.ghost(&u).unwrap();
            let gv = ops.ghost(&v).unwrap();
            let gs = ops.ghost(&ops.add(&u, &v).unwrap()).unwrap();
            let gm = ops.ghost(&ops.mul(&u, &v).unwrap()).unwrap();
            for k in 0..3 {
                prop_assert_eq!(&gs[k], &(&gu[k] + &gv[k]));
                prop_assert_eq!(&gm[k], &(&gu[k] * &gv[k]));
            }
            // generic Frobenius shifts ghost components
            let gf = ops.ghost(&ops.frobenius(&u).unwrap()).unwrap();
            prop_assert_eq!(&gf[..], &gu[1..]);
        }

        #[test]
        fn v_is_additive_and_projection(a in proptest::collection::vec(0u32..9, 3),
                                        b in proptest::collection::vec(0u32..9, 3)) {
            let k = FqField::new(3, 2).unwrap();
            let ops = WittOps::new(&k, 3, 3).unwrap();
            let u = WittVector::new(a);
            let v = WittVector::new(b);
            let lhs = ops.verschiebung(&ops.add(&u, &v).unwrap());
            let rhs = ops.add(&ops.verschiebung(&u), &ops.verschiebung(&v)).unwrap();
            prop_assert_eq!(lhs, rhs);
            // V(u) v = V(u F(v))
            let lhs = ops.mul(&ops.verschiebung(&u), &v).unwrap();
            let rhs = ops.verschiebung(&ops.mul(&u, &ops.frobenius(&v).unwrap()).unwrap());
            prop_assert_eq!(lhs, rhs);
            // F is a ring endomorphism
            let fm = ops.frobenius(&ops.mul(&u, &v).unwrap()).unwrap();
            prop_assert_eq!(fm, ops.mul(&ops.frobenius(&u).unwrap(), &ops.frobenius(&v).unwrap()).unwrap());
        }
    }
}
