//! Test varieties: plane curves enumerated or sampled over small fields.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::field::{Fq, FqField};
use crate::mpoly::MPoly;
use crate::par::{map_vec, ExecMode};
use crate::pointcount::{elliptic_aq, is_smooth_plane_curve};

pub const PLANE_VARS: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Debug)]
pub struct NamedCurve {
    pub name: String,
    pub poly: MPoly,
}

impl NamedCurve {
    pub fn new(poly: MPoly) -> Self {
        let k = poly.field();
        let name = format!("F{}: {}", k.size(), poly.format_with(&PLANE_VARS));
        NamedCurve { name, poly }
    }
}

/// Exponent vectors of degree-d monomials in x, y, z.
pub fn plane_monomials(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push(vec![i, j, d - i - j]);
        }
    }
    out
}

pub fn plane_form(field: &Arc<FqField>, d: u32, coeffs: &[Fq]) -> MPoly {
    MPoly::from_terms(field, 3, plane_monomials(d).into_iter().zip(coeffs.iter().copied()))
}

/// Digits of `index` in base q, least significant first.
fn digits(mut index: u64, q: u64, len: usize) -> Vec<Fq> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((index % q) as Fq);
        index /= q;
    }
    out
}

/// Every smooth plane curve of degree d over the field, one per nonzero
/// coefficient vector (scalar multiples are kept).
pub fn smooth_plane_curves(field: &Arc<FqField>, d: u32, budget: u128, mode: ExecMode) -> Result<Vec<MPoly>> {
    let len = plane_monomials(d).len();
    let q = field.size();
    let total = q.pow(len as u32);
    let indices: Vec<u64> = (1..total).collect();
    let inner = ExecMode::Sequential;
    let found = map_vec(mode, &indices, |&i| {
        let f = plane_form(field, d, &digits(i, q, len));
        match is_smooth_plane_curve(&f, budget, inner) {
            Ok(true) => Ok(Some(f)),
            Ok(false) => Ok(None),
            Err(e) => Err(e),
        }
    });
    found.into_iter().filter_map(|r| r.transpose()).collect()
}

/// `count` smooth plane curves of degree d with uniformly random coefficients.
pub fn random_smooth_plane_curves<R: Rng>(
    field: &Arc<FqField>,
    d: u32,
    count: usize,
    budget: u128,
    rng: &mut R,
) -> Result<Vec<MPoly>> {
    let len = plane_monomials(d).len();
    let q = field.size();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c: Vec<Fq> = (0..len).map(|_| rng.gen_range(0..q) as Fq).collect();
        let f = plane_form(field, d, &c);
        if !f.is_zero() && is_smooth_plane_curve(&f, budget, ExecMode::Parallel)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// y^2 z + a1 xyz + a3 yz^2 - (x^3 + a2 x^2 z + a4 xz^2 + a6 z^3).
pub fn weierstrass(field: &Arc<FqField>, a: [Fq; 5]) -> MPoly {
    let k = field;
    let [a1, a2, a3, a4, a6] = a;
    let terms = vec![
        (vec![0, 2, 1], k.from_int(1)),
        (vec![1, 1, 1], a1),
        (vec![0, 1, 2], a3),
        (vec![3, 0, 0], k.from_int(-1)),
        (vec![2, 0, 1], k.neg(a2)),
        (vec![1, 0, 2], k.neg(a4)),
        (vec![0, 0, 3], k.neg(a6)),
    ];
    MPoly::from_terms(k, 3, terms)
}

#[derive(Clone, Debug, Default)]
pub struct EllipticCorpus {
    pub ordinary: Vec<NamedCurve>,
    pub supersingular: Vec<NamedCurve>,
}

/// Smooth Weierstrass cubics over F_q in coefficient order, split by a_q mod p
/// and truncated to the given number per class.
pub fn weierstrass_curves(
    field: &Arc<FqField>,
    max_ordinary: usize,
    max_supersingular: usize,
    budget: u128,
) -> Result<EllipticCorpus> {
    let q = field.size();
    let p = field.p() as i64;
    let mut out = EllipticCorpus::default();
    for i in 0..q.pow(5) {
        if out.ordinary.len() >= max_ordinary && out.supersingular.len() >= max_supersingular {
            break;
        }
        let d = digits(i, q, 5);
        let f = weierstrass(field, [d[0], d[1], d[2], d[3], d[4]]);
        if !is_smooth_plane_curve(&f, budget, ExecMode::Parallel)? {
            continue;
        }
        let aq = elliptic_aq(&f, budget)?;
        let (list, cap) = if aq.rem_euclid(p) != 0 {
            (&mut out.ordinary, max_ordinary)
        } else {
            (&mut out.supersingular, max_supersingular)
        };
        if list.len() < cap {
            list.push(NamedCurve::new(f));
        }
    }
    Ok(out)
}

/// Ordinary and supersingular Weierstrass curves over F_2, F_3 and F_4.
pub fn elliptic_corpus(budget: u128) -> Result<EllipticCorpus> {
    let mut out = EllipticCorpus::default();
    for (p, a, ord, ss) in [(2, 1, 8, 2), (3, 1, 6, 2), (2, 2, 6, 2)] {
        let c = weierstrass_curves(&FqField::shared(p, a)?, ord, ss, budget)?;
        out.ordinary.extend(c.ordinary);
        out.supersingular.extend(c.supersingular);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::DEFAULT_BUDGET;

    #[test]
    fn monomial_counts() {
        assert_eq!(plane_monomials(1).len(), 3);
        assert_eq!(plane_monomials(3).len(), 10);
        assert_eq!(plane_monomials(4).len(), 15);
        assert_eq!(plane_monomials(2)[0], vec![2, 0, 0]);
    }

    #[test]
    fn smooth_conics_over_f2() {
        // PGL_3(F_2) has order 168 and a smooth conic has stabilizer PGL_2(F_2) of order 6
        let k = FqField::shared(2, 1).unwrap();
        let c = smooth_plane_curves(&k, 2, DEFAULT_BUDGET, ExecMode::Parallel).unwrap();
        assert_eq!(c.len(), 28);
        // every line is smooth
        assert_eq!(smooth_plane_curves(&k, 1, DEFAULT_BUDGET, ExecMode::Parallel).unwrap().len(), 7);
    }

    #[test]
    fn elliptic_corpus_is_split_correctly() {
        let c = elliptic_corpus(DEFAULT_BUDGET).unwrap();
        assert!(c.ordinary.len() >= 10);
        assert!(!c.supersingular.is_empty());
        for e in &c.ordinary {
            let p = e.poly.field().p() as i64;
            assert_ne!(elliptic_aq(&e.poly, DEFAULT_BUDGET).unwrap().rem_euclid(p), 0, "{}", e.name);
        }
    }
}
