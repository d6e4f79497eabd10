//! W_n(F_q) in Witt coordinates versus GR(p^n, a).

use super::vector::WittVector;
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::galois::{GaloisRing, GrElem};

fn check(u_len: usize, r: &GaloisRing) -> Result<()> {
    if u_len != r.n() as usize {
        return Err(Error::LengthMismatch(u_len, r.n() as usize));
    }
    Ok(())
}

/// (u_0, u_1, ...) -> Σ p^i ω(u_i^{p^{-i}}).
pub fn witt_to_galois(u: &WittVector<Fq>, r: &GaloisRing) -> Result<GrElem> {
    check(u.len(), r)?;
    let k = r.residue_field();
    let mut acc = r.zero();
    for (i, &ui) in u.coords.iter().enumerate() {
        if ui == 0 {
            continue;
        }
        let digit = r.teichmuller(k.frobenius(ui, -(i as i64)));
        acc = r.add(&acc, &r.mul(&r.p_pow(i as u32), &digit));
    }
    Ok(acc)
}

/// Inverse of [`witt_to_galois`] via the Teichmüller digit expansion.
pub fn galois_to_witt(x: &GrElem, r: &GaloisRing) -> WittVector<Fq> {
    let k = r.residue_field();
    let n = r.n() as usize;
    let mut coords = Vec::with_capacity(n);
    let mut rest = x.clone();
    for i in 0..n {
        let y = r.residue(&rest);
        coords.push(k.frobenius(y, i as i64));
        let diff = r.sub(&rest, &r.teichmuller(y));
        rest = r.div_p_pow(&diff, 1);
    }
    WittVector::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;
    use crate::witt::vector::WittOps;

    #[test]
    fn small_values() {
        let r = GaloisRing::new(2, 2, 1).unwrap();
        assert_eq!(witt_to_galois(&WittVector::new(vec![1, 0]), &r).unwrap(), r.one());
        assert_eq!(witt_to_galois(&WittVector::new(vec![0, 1]), &r).unwrap(), r.from_u64(2));
        assert!(witt_to_galois(&WittVector::new(vec![1]), &r).is_err());
    }

    #[test]
    fn exhaustive_isomorphism_w2_f4() {
        let r = GaloisRing::new(2, 2, 2).unwrap();
        let k: &FqField = r.residue_field();
        let ops = WittOps::new(k, 2, 2).unwrap();
        let els: Vec<WittVector<Fq>> =
            (0..4).flat_map(|a| (0..4).map(move |b| WittVector::new(vec![a, b]))).collect();
        for u in &els {
            let x = witt_to_galois(u, &r).unwrap();
            assert_eq!(&galois_to_witt(&x, &r), u);
            let fu = ops.frobenius(u).unwrap();
            assert_eq!(witt_to_galois(&fu, &r).unwrap(), r.sigma(&x));
            let vu = ops.verschiebung(u);
            // V = p σ^{-1}
            assert_eq!(witt_to_galois(&vu, &r).unwrap(), r.mul(&r.from_u64(2), &r.sigma_pow(&x, -1)));
            for v in &els {
                let y = witt_to_galois(v, &r).unwrap();
                assert_eq!(witt_to_galois(&ops.add(u, v).unwrap(), &r).unwrap(), r.add(&x, &y));
                assert_eq!(witt_to_galois(&ops.mul(u, v).unwrap(), &r).unwrap(), r.mul(&x, &y));
            }
        }
    }

    #[test]
    fn round_trip_larger() {
        let r = GaloisRing::new(3, 3, 2).unwrap();
        for x in r.elements().into_iter().step_by(37) {
            let u = galois_to_witt(&x, &r);
            assert_eq!(witt_to_galois(&u, &r).unwrap(), x);
        }
    }
}
