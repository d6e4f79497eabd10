//! Coefficient rings for Witt vectors.

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::intpoly::IntPoly;
use crate::field::{Fq, FqField};
use crate::galois::{GaloisRing, GrElem};
use crate::mpoly::MPoly;

/// Operation bundle for a commutative ring.
pub trait CoeffRing {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_bigint(&self, c: &BigInt) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `Some(p)` when the ring is an F_p-algebra.
    fn char_p(&self) -> Option<u64> {
        None
    }

    /// The p-th power map, for rings that supply one.
    fn pth_power(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn p_torsion_free(&self) -> bool {
        false
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::from(1)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, c: &BigInt) -> BigInt {
        c.clone()
    }
    fn p_torsion_free(&self) -> bool {
        true
    }
}

/// Z[x_0, ..., x_{k-1}].
#[derive(Clone, Copy, Debug)]
pub struct IntPolyRing {
    pub nvars: usize,
}

impl CoeffRing for IntPolyRing {
    type Elem = IntPoly;

    fn zero(&self) -> IntPoly {
        IntPoly::zero(self.nvars)
    }
    fn one(&self) -> IntPoly {
        IntPoly::constant(self.nvars, BigInt::from(1))
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a.add(b)
    }
    fn neg(&self, a: &IntPoly) -> IntPoly {
        a.neg()
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &IntPoly) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, c: &BigInt) -> IntPoly {
        IntPoly::constant(self.nvars, c.clone())
    }
    fn p_torsion_free(&self) -> bool {
        true
    }
}

fn bigint_mod(c: &BigInt, m: u64) -> u64 {
    c.mod_floor(&BigInt::from(m)).to_u64().expect("reduced value fits")
}

impl CoeffRing for FqField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        0
    }
    fn one(&self) -> Fq {
        1
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        FqField::add(self, *a, *b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        FqField::neg(self, *a)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        FqField::sub(self, *a, *b)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        FqField::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &Fq) -> bool {
        *a == 0
    }
    fn from_bigint(&self, c: &BigInt) -> Fq {
        bigint_mod(c, self.p()) as Fq
    }
    fn char_p(&self) -> Option<u64> {
        Some(self.p())
    }
    fn pth_power(&self, a: &Fq) -> Option<Fq> {
        Some(self.frobenius(*a, 1))
    }
    fn pow(&self, a: &Fq, e: u64) -> Fq {
        FqField::pow(self, *a, e)
    }
}

/// F_q[x_0, ..., x_{k-1}].
#[derive(Clone, Debug)]
pub struct FqPolyRing {
    pub field: Arc<FqField>,
    pub nvars: usize,
}

impl FqPolyRing {
    pub fn new(field: &Arc<FqField>, nvars: usize) -> Self {
        FqPolyRing { field: field.clone(), nvars }
    }
}

impl CoeffRing for FqPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::zero(&self.field, self.nvars)
    }
    fn one(&self) -> MPoly {
        MPoly::constant(&self.field, self.nvars, 1)
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &MPoly) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, c: &BigInt) -> MPoly {
        MPoly::constant(&self.field, self.nvars, bigint_mod(c, self.field.p()) as Fq)
    }
    fn char_p(&self) -> Option<u64> {
        Some(self.field.p())
    }
    fn pth_power(&self, a: &MPoly) -> Option<MPoly> {
        let p = self.field.p() as u32;
        Some(MPoly::from_terms(
            &self.field,
            self.nvars,
            a.terms().map(|(e, &c)| (e.iter().map(|k| k * p).collect(), self.field.frobenius(c, 1))),
        ))
    }
}

impl CoeffRing for GaloisRing {
    type Elem = GrElem;

    fn zero(&self) -> GrElem {
        GaloisRing::zero(self)
    }
    fn one(&self) -> GrElem {
        GaloisRing::one(self)
    }
    fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        GaloisRing::add(self, a, b)
    }
    fn neg(&self, a: &GrElem) -> GrElem {
        GaloisRing::neg(self, a)
    }
    fn sub(&self, a: &GrElem, b: &GrElem) -> GrElem {
        GaloisRing::sub(self, a, b)
    }
    fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        GaloisRing::mul(self, a, b)
    }
    fn is_zero(&self, a: &GrElem) -> bool {
        GaloisRing::is_zero(self, a)
    }
    fn from_bigint(&self, c: &BigInt) -> GrElem {
        self.from_u64(bigint_mod(c, self.modulus_int()))
    }
    fn char_p(&self) -> Option<u64> {
        (self.n() == 1).then_some(self.p())
    }
    fn pth_power(&self, a: &GrElem) -> Option<GrElem> {
        (self.n() == 1).then(|| GaloisRing::pow(self, a, self.p()))
    }
}
