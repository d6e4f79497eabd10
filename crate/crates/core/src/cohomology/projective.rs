//! Cohomology of twisting sheaves on P^N in the graded Čech model.
//!
//! H^N(P^N, O(-m)) has the basis x^{-b} with all b_i >= 1 and Σ b_i = m.
//! Frobenius on the cohomology of the ideal sheaf of V(g), or on H^{N-1}
//! of the hypersurface V(f), is "p-th power, then multiply by w" with
//! w = g^{p-1} or f^{p-1}.

use std::sync::Arc;

use super::CohomologyWithFrobenius;
use crate::error::{Error, Result};
use crate::field::FqField;
use crate::galois::GaloisRing;
use crate::linalg::Mat;
use crate::mpoly::MPoly;
use crate::semilinear::{direct_sum, stable_nil_decompose, FiniteWnModule, SemilinearMap};

/// Exponent vectors b of the dual monomials x^{-b}, in descending lex order.
pub fn serre_basis(n_amb: usize, m: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        let max_here = total.saturating_sub(parts as u32 - 1);
        for b in (1..=max_here).rev() {
            prefix.push(b);
            rec(parts - 1, total - b, prefix, out);
            prefix.pop();
        }
    }
    let parts = n_amb + 1;
    let mut out = Vec::new();
    if m as usize >= parts {
        rec(parts, m, &mut Vec::new(), &mut out);
    }
    out
}

/// e_b ↦ Σ_c coeff(w, p·b − c) e_c on H^N(P^N, O(-m)), as a σ-linear map.
pub fn twisted_frobenius_matrix(ring: &Arc<GaloisRing>, n_amb: usize, m: u32, w: &MPoly) -> Result<SemilinearMap> {
    let p = ring.p();
    if w.nvars() != n_amb + 1 {
        return Err(Error::LengthMismatch(w.nvars(), n_amb + 1));
    }
    if !w.is_zero() && w.homogeneous_degree() != Some(m * (p as u32 - 1)) {
        return Err(Error::InvalidParameter(format!(
            "w must be homogeneous of degree m(p-1) = {}",
            m * (p as u32 - 1)
        )));
    }
    let basis = serre_basis(n_amb, m);
    let k = basis.len();
    let mut a = Mat::zeros(ring, k, k);
    for (j, b) in basis.iter().enumerate() {
        for (i, c) in basis.iter().enumerate() {
            let e: Vec<i64> = b.iter().zip(c).map(|(&bb, &cc)| p as i64 * bb as i64 - cc as i64).collect();
            let coeff = w.coeff_signed(&e);
            if coeff != 0 {
                a.set(i, j, ring.lift(coeff));
            }
        }
    }
    let module = FiniteWnModule::free(ring, k);
    SemilinearMap::endo(&module, a, 1)
}

fn zero_degree(ring: &Arc<GaloisRing>) -> SemilinearMap {
    let z = FiniteWnModule::zero_module(ring);
    SemilinearMap::zero(&z, &z, 1)
}

fn structure_sheaf_h0(ring: &Arc<GaloisRing>) -> SemilinearMap {
    SemilinearMap::sigma(&FiniteWnModule::free(ring, 1))
}

fn residue_ring(field: &Arc<FqField>) -> Result<Arc<GaloisRing>> {
    GaloisRing::over_field(field.clone(), 1)
}

#[derive(Clone, Debug)]
pub struct ProjectiveHypersurface {
    pub f: MPoly,
    pub n_amb: usize,
    pub degree: u32,
}

impl ProjectiveHypersurface {
    pub fn new(f: &MPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidParameter("hypersurface equation is zero".into()));
        }
        let degree = f
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidParameter(format!("{f} is not homogeneous")))?;
        if degree == 0 {
            return Err(Error::InvalidParameter("hypersurface equation is a nonzero constant".into()));
        }
        if f.nvars() < 2 {
            return Err(Error::InvalidParameter("ambient space must have dimension >= 1".into()));
        }
        Ok(ProjectiveHypersurface { f: f.clone(), n_amb: f.nvars() - 1, degree })
    }

    pub fn field(&self) -> &Arc<FqField> {
        self.f.field()
    }
}

/// H^*(X, O_X) with Frobenius, for a hypersurface in P^N with N >= 2.
pub fn hypersurface_coherent(x: &ProjectiveHypersurface) -> Result<CohomologyWithFrobenius> {
    if x.n_amb < 2 {
        return Err(Error::Unsupported("hypersurfaces in P^1 (finite point sets)".into()));
    }
    let ring = residue_ring(x.field())?;
    let p = ring.p();
    let w = x.f.pow(p - 1);
    let top = twisted_frobenius_matrix(&ring, x.n_amb, x.degree, &w)?;
    if x.n_amb == 2 {
        let d = x.degree as usize;
        assert_eq!(top.source.rank(), (d - 1) * d.saturating_sub(2) / 2, "genus formula");
    }
    let mut degrees = vec![structure_sheaf_h0(&ring)];
    for _ in 1..x.n_amb - 1 {
        degrees.push(zero_degree(&ring));
    }
    degrees.push(top);
    Ok(CohomologyWithFrobenius::new(&ring, degrees, "hypersurface-coherent"))
}

/// X = P^N ∖ V(g).
#[derive(Clone, Debug)]
pub struct ComplementDatum {
    pub g: MPoly,
    pub n_amb: usize,
}

impl ComplementDatum {
    pub fn new(g: &MPoly) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidParameter("boundary equation is zero".into()));
        }
        g.homogeneous_degree().ok_or_else(|| Error::InvalidParameter(format!("{g} is not homogeneous")))?;
        if g.nvars() < 2 {
            return Err(Error::InvalidParameter("ambient space must have dimension >= 1".into()));
        }
        Ok(ComplementDatum { g: g.clone(), n_amb: g.nvars() - 1 })
    }

    /// A^N as the complement of the hyperplane x_N = 0.
    pub fn affine_space(field: &Arc<FqField>, n_amb: usize) -> Self {
        let g = MPoly::var(field, n_amb + 1, n_amb);
        ComplementDatum { g, n_amb }
    }

    pub fn field(&self) -> &Arc<FqField> {
        self.g.field()
    }

    pub fn boundary_degree(&self) -> u32 {
        self.g.homogeneous_degree().expect("checked homogeneous")
    }
}

/// H^i(P^N, I^e) with Frobenius, I the ideal sheaf of V(g).
pub fn compact_support(datum: &ComplementDatum, e: u32) -> Result<CohomologyWithFrobenius> {
    if e == 0 {
        return Err(Error::InvalidParameter("ideal power must be >= 1".into()));
    }
    let ring = residue_ring(datum.field())?;
    let m = e * datum.boundary_degree();
    let mut degrees = Vec::with_capacity(datum.n_amb + 1);
    if m == 0 {
        degrees.push(structure_sheaf_h0(&ring));
        for _ in 0..datum.n_amb {
            degrees.push(zero_degree(&ring));
        }
    } else {
        for _ in 0..datum.n_amb {
            degrees.push(zero_degree(&ring));
        }
        let w = datum.g.pow(e as u64 * (ring.p() - 1));
        degrees.push(twisted_frobenius_matrix(&ring, datum.n_amb, m, &w)?);
    }
    let mut c = CohomologyWithFrobenius::new(&ring, degrees, "complement");
    c.bounds.push(("ideal_power".into(), e as i64));
    Ok(c)
}

/// H^i_c(X, O_X)_s for X = P^N ∖ V(g).
pub fn compact_support_stable(datum: &ComplementDatum) -> Result<CohomologyWithFrobenius> {
    compact_support(datum, 1)?.stable()
}

/// Multiplication by g^{e-1}: H^N(P^N, I^e) → H^N(P^N, I).
pub fn intertwiner(datum: &ComplementDatum, e: u32) -> Result<SemilinearMap> {
    let ring = residue_ring(datum.field())?;
    let m = datum.boundary_degree();
    let src_basis = serre_basis(datum.n_amb, e * m);
    let tgt_basis = serre_basis(datum.n_amb, m);
    let h = datum.g.pow(e as u64 - 1);
    let mut t = Mat::zeros(&ring, tgt_basis.len(), src_basis.len());
    for (j, b) in src_basis.iter().enumerate() {
        for (i, c) in tgt_basis.iter().enumerate() {
            let ex: Vec<i64> = b.iter().zip(c).map(|(&bb, &cc)| bb as i64 - cc as i64).collect();
            let coeff = h.coeff_signed(&ex);
            if coeff != 0 {
                t.set(i, j, ring.lift(coeff));
            }
        }
    }
    SemilinearMap::new(&FiniteWnModule::free(&ring, src_basis.len()), &FiniteWnModule::free(&ring, tgt_basis.len()), t, 0)
}

/// Whether the inclusion I^e ⊂ I induces an isomorphism of stable parts
/// commuting with Frobenius.
pub fn ideal_power_independent(datum: &ComplementDatum, e: u32) -> Result<bool> {
    let fe = compact_support(datum, e)?;
    let f1 = compact_support(datum, 1)?;
    let top = datum.n_amb;
    let (fe, f1) = (&fe.degrees[top], &f1.degrees[top]);
    if datum.boundary_degree() == 0 {
        return Ok(true);
    }
    let t = intertwiner(datum, e)?;
    if !t.compose(fe).same_map(&f1.compose(&t)) {
        return Ok(false);
    }
    let se = stable_nil_decompose(fe)?.stable;
    let s1 = stable_nil_decompose(f1)?.stable;
    if se.module.factors() != s1.module.factors() {
        return Ok(false);
    }
    let ring = t.ring();
    let img = t.matrix.mul(ring, &se.basis);
    let target = &t.target;
    let img_sub = target.submodule(&img);
    Ok(target.span_contained(&img, &s1.basis) && img_sub.module.factors() == s1.module.factors())
}

/// The glued pair of projective planes Y = P^2 ∪_pt P^2 with I^e, I the
/// ideal of the two lines at infinity, computed from the sequence
/// 0 → I_Y → I_1 ⊕ I_2 → k(pt) → 0.
pub fn glued_planes(p: u64, a: u32, e: u32) -> Result<CohomologyWithFrobenius> {
    let field = FqField::shared(p, a)?;
    let ring = residue_ring(&field)?;
    let plane = ComplementDatum::affine_space(&field, 2);
    let piece = compact_support(&plane, e)?;
    let h0_pair = direct_sum(&piece.degrees[0], &piece.degrees[0])?;
    let h1_pair = direct_sum(&piece.degrees[1], &piece.degrees[1])?;
    let h2_pair = direct_sum(&piece.degrees[2], &piece.degrees[2])?;
    if !h0_pair.source.is_zero() || !h1_pair.source.is_zero() {
        return Err(Error::Unsupported("twisting sheaves with sections or H^1".into()));
    }
    // evaluation at the glued point (0:0:1), from the (zero) global sections
    let point = structure_sheaf_h0(&ring);
    let delta = Mat::zeros(&ring, 1, h0_pair.source.rank());
    let h0 = h0_pair.kernel_of_linear(&delta)?;
    let coker = point.source.quotient(&delta);
    let h1 = point.induced_on_quotient(&coker);
    let mut c = CohomologyWithFrobenius::new(&ring, vec![h0, h1, h2_pair], "glued-planes");
    c.bounds.push(("ideal_power".into(), e as i64));
    Ok(c)
}

pub fn glued_planes_stable(p: u64, a: u32) -> Result<CohomologyWithFrobenius> {
    glued_planes(p, a, 1)?.stable()
}

impl SemilinearMap {
    /// F restricted to the kernel of a linear map `m` out of its source.
    fn kernel_of_linear(&self, m: &Mat) -> Result<SemilinearMap> {
        let ring = self.ring();
        let target = FiniteWnModule::free(ring, m.rows());
        let lin = SemilinearMap::new(&self.source, &target, m.clone(), 0)?;
        self.restrict(&lin.kernel())
    }
}
