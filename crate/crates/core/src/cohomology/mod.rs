//! Čech cohomology with Frobenius action.

pub mod curve;
pub mod projective;

use std::sync::Arc;

use crate::error::Result;
use crate::galois::GaloisRing;
use crate::semilinear::{stable_colimit, stable_nil_decompose, FiniteWnModule, SemilinearMap, StableNil};

pub use curve::{default_pole_bound, witt_cech_curve, witt_cech_curve_unchecked, CurveRing};
pub use projective::{
    compact_support, compact_support_stable, glued_planes, glued_planes_stable, hypersurface_coherent,
    ideal_power_independent, intertwiner, serre_basis, twisted_frobenius_matrix, ComplementDatum,
    ProjectiveHypersurface,
};

/// H^i with a σ-linear Frobenius in each degree.
#[derive(Clone, Debug)]
pub struct CohomologyWithFrobenius {
    pub ring: Arc<GaloisRing>,
    /// Entry i is F on H^i.
    pub degrees: Vec<SemilinearMap>,
    pub construction: String,
    pub bounds: Vec<(String, i64)>,
}

impl CohomologyWithFrobenius {
    pub fn new(ring: &Arc<GaloisRing>, degrees: Vec<SemilinearMap>, construction: &str) -> Self {
        CohomologyWithFrobenius { ring: ring.clone(), degrees, construction: construction.to_string(), bounds: Vec::new() }
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }

    pub fn module(&self, i: usize) -> FiniteWnModule {
        match self.degrees.get(i) {
            Some(f) => f.source.clone(),
            None => FiniteWnModule::zero_module(&self.ring),
        }
    }

    pub fn frobenius(&self, i: usize) -> Option<&SemilinearMap> {
        self.degrees.get(i)
    }

    pub fn decompositions(&self) -> Result<Vec<StableNil>> {
        self.degrees.iter().map(stable_nil_decompose).collect()
    }

    /// The stable parts with their bijective Frobenius.
    pub fn stable(&self) -> Result<CohomologyWithFrobenius> {
        let degrees = self.decompositions()?.into_iter().map(|d| d.f_stable).collect();
        Ok(CohomologyWithFrobenius {
            ring: self.ring.clone(),
            degrees,
            construction: format!("{} (stable part)", self.construction),
            bounds: self.bounds.clone(),
        })
    }

    /// Number of cyclic summands of each stable part.
    pub fn stable_ranks(&self) -> Result<Vec<usize>> {
        Ok(self.decompositions()?.iter().map(|d| d.stable.module.rank()).collect())
    }

    /// Whether the direct-limit model of every degree has the same invariant
    /// factors as the stable part.
    pub fn colimits_agree(&self) -> Result<bool> {
        for f in &self.degrees {
            let c = stable_colimit(f)?;
            let s = stable_nil_decompose(f)?;
            if c.source.factors() != s.stable.module.factors() || !c.is_bijective() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn report(&self) -> Result<String> {
        let mut out = String::new();
        out.push_str(&format!("construction: {}\n", self.construction));
        for (k, v) in &self.bounds {
            out.push_str(&format!("bound.{k}: {v}\n"));
        }
        let dec = self.decompositions()?;
        for (i, (f, d)) in self.degrees.iter().zip(&dec).enumerate() {
            out.push_str(&format!("H{i}.factors: {:?}\n", f.source.factors()));
            out.push_str(&format!("H{i}.frobenius: {}\n", format_matrix_inline(f)));
            out.push_str(&format!("H{i}.stable_factors: {:?}\n", d.stable.module.factors()));
        }
        Ok(out)
    }
}

/// Row-major `[[a, b], [c, d]]` in the Galois-ring text form.
pub fn format_matrix_inline(f: &SemilinearMap) -> String {
    let r = f.ring();
    let m = &f.matrix;
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> = (0..m.cols()).map(|j| r.format(m.get(i, j))).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}
