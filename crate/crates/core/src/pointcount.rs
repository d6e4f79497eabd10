//! Exhaustive point counting over F_{q^r}, elliptic traces and unit roots.

use std::sync::Arc;

use crate::arith::checked_prime_power;
use crate::error::{Error, Result};
use crate::field::{Fq, FqField};
use crate::galois::GaloisRing;
use crate::mpoly::{Evaluator, MPoly};
use crate::par::{any_range, sum_range, ExecMode};

/// Default cap on candidate points.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

const CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Affine,
    Projective,
    /// Two affine planes sharing one point; equations are ignored.
    GluedPlanes,
}

#[derive(Clone, Debug)]
pub struct VarietySystem {
    pub field: Arc<FqField>,
    pub mode: CountMode,
    pub nvars: usize,
    pub polys: Vec<MPoly>,
}

impl VarietySystem {
    pub fn new(field: &Arc<FqField>, mode: CountMode, nvars: usize, polys: Vec<MPoly>) -> Result<Self> {
        for f in &polys {
            if f.nvars() != nvars {
                return Err(Error::LengthMismatch(f.nvars(), nvars));
            }
            if *f.field() != *field {
                return Err(Error::RingMismatch("polynomial over a different field".into()));
            }
            if mode == CountMode::Projective && f.homogeneous_degree().is_none() && !f.is_zero() {
                return Err(Error::InvalidParameter(format!("{f} is not homogeneous")));
            }
        }
        if mode == CountMode::Projective && nvars == 0 {
            return Err(Error::InvalidParameter("projective space needs at least one coordinate".into()));
        }
        Ok(VarietySystem { field: field.clone(), mode, nvars, polys })
    }

    pub fn projective(f: &MPoly) -> Result<Self> {
        Self::new(f.field(), CountMode::Projective, f.nvars(), vec![f.clone()])
    }

    pub fn glued_planes(field: &Arc<FqField>) -> Self {
        VarietySystem { field: field.clone(), mode: CountMode::GluedPlanes, nvars: 2, polys: Vec::new() }
    }

    /// Number of candidate points examined over F_{q^r}.
    pub fn candidates(&self, r: u32) -> u128 {
        let big_q = (self.field.size() as u128).saturating_pow(r);
        match self.mode {
            CountMode::Affine => big_q.saturating_pow(self.nvars as u32),
            CountMode::Projective => projective_size(big_q, self.nvars),
            CountMode::GluedPlanes => 0,
        }
    }
}

fn projective_size(big_q: u128, nvars: usize) -> u128 {
    (0..nvars as u32).map(|i| big_q.saturating_pow(i)).fold(0u128, |a, b| a.saturating_add(b))
}

/// Decode the `idx`-th point of A^nvars(F_Q) into `out`.
fn affine_point(idx: u64, big_q: u64, out: &mut [Fq]) {
    let mut i = idx;
    for c in out.iter_mut() {
        *c = (i % big_q) as Fq;
        i /= big_q;
    }
}

/// Decode the `idx`-th normalized representative of P^{nvars-1}(F_Q):
/// first nonzero coordinate equal to 1.
fn projective_point(idx: u64, big_q: u64, out: &mut [Fq]) {
    let n = out.len();
    let mut i = idx;
    for lead in 0..n {
        let block = big_q.pow((n - 1 - lead) as u32);
        if i < block {
            for c in out[..lead].iter_mut() {
                *c = 0;
            }
            out[lead] = 1;
            affine_point(i, big_q, &mut out[lead + 1..]);
            return;
        }
        i -= block;
    }
    unreachable!("point index out of range");
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Count the common zeros of `evals` among the first `total` points.
fn count_zeros(evals: &[Evaluator], nvars: usize, big_q: u64, total: u64, projective: bool, mode: ExecMode) -> u64 {
    let chunks = total.div_ceil(CHUNK);
    sum_range(mode, 0..chunks, |c| {
        let mut pt = vec![0 as Fq; nvars];
        let mut buf = Vec::new();
        let mut hits = 0;
        for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
            if projective {
                projective_point(idx, big_q, &mut pt);
            } else {
                affine_point(idx, big_q, &mut pt);
            }
            if evals.iter().all(|e| e.eval_with(&pt, &mut buf) == 0) {
                hits += 1;
            }
        }
        hits
    })
}

/// #X(F_{q^r}).
pub fn count_points(v: &VarietySystem, r: u32, budget: u128) -> Result<u64> {
    count_points_with(v, r, budget, ExecMode::default())
}

pub fn count_points_with(v: &VarietySystem, r: u32, budget: u128, mode: ExecMode) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    let required = v.candidates(r);
    check_budget(required, budget)?;
    let big = FqField::shared(v.field.p(), v.field.degree() * r)?;
    let big_q = big.size();
    if v.mode == CountMode::GluedPlanes {
        return Ok(2 * big_q * big_q - 1);
    }
    let evals = v.polys.iter().map(|f| f.evaluator(&big)).collect::<Result<Vec<_>>>()?;
    let total = u64::try_from(required).map_err(|_| Error::BudgetExceeded { required, budget })?;
    Ok(count_zeros(&evals, v.nvars, big_q, total, v.mode == CountMode::Projective, mode))
}

/// Whether f = ∂f/∂x_i = 0 has a projective solution over F_{q^k}.
pub fn has_singular_point_over(f: &MPoly, k: u32, budget: u128, mode: ExecMode) -> Result<bool> {
    let nv = f.nvars();
    let mut polys = vec![f.clone()];
    polys.extend((0..nv).map(|i| f.partial(i)));
    let big = FqField::shared(f.field().p(), f.field().degree() * k)?;
    let big_q = big.size();
    let required = projective_size(big_q as u128, nv);
    check_budget(required, budget)?;
    let evals = polys.iter().map(|g| g.evaluator(&big)).collect::<Result<Vec<_>>>()?;
    let total = required as u64;
    let chunks = total.div_ceil(CHUNK);
    Ok(any_range(mode, 0..chunks, |c| {
        let mut pt = vec![0 as Fq; nv];
        let mut buf = Vec::new();
        (c * CHUNK..((c + 1) * CHUNK).min(total)).any(|idx| {
            projective_point(idx, big_q, &mut pt);
            evals.iter().all(|e| e.eval_with(&pt, &mut buf) == 0)
        })
    }))
}

/// Smoothness of a projective plane curve.
///
/// A reduced plane curve of degree d has at most K = d(d-1)/2 singular
/// points, so every Galois orbit of singular points has size at most K and
/// contributes a point over F_{q^k} for some k in (K/2, K]. For d <= 4 a
/// non-reduced curve also has singular points over one of these fields.
pub fn is_smooth_plane_curve(f: &MPoly, budget: u128, mode: ExecMode) -> Result<bool> {
    if f.nvars() != 3 {
        return Err(Error::InvalidParameter("plane curves have three homogeneous coordinates".into()));
    }
    let d = f
        .homogeneous_degree()
        .filter(|&d| d >= 1 && !f.is_zero())
        .ok_or_else(|| Error::InvalidParameter(format!("{f} is not a nonzero homogeneous form")))?;
    let big_k = d * (d - 1) / 2;
    for k in (big_k / 2 + 1)..=big_k {
        if has_singular_point_over(f, k, budget, mode)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// a_q = q + 1 - #E(F_q) for a smooth plane cubic.
pub fn elliptic_aq(e: &MPoly, budget: u128) -> Result<i64> {
    if e.homogeneous_degree() != Some(3) || e.nvars() != 3 {
        return Err(Error::InvalidParameter("expected a plane cubic".into()));
    }
    let q = e.field().size();
    let n = count_points(&VarietySystem::projective(e)?, 1, budget)?;
    let aq = q as i64 + 1 - n as i64;
    if (aq as i128) * (aq as i128) > 4 * q as i128 {
        return Err(Error::HasseBoundViolation { a_q: aq.abs(), q });
    }
    Ok(aq)
}

/// The root α ≡ a_q mod p of T^2 - a_q T + q in Z/p^n, or None if p | a_q.
pub fn unit_root(a_q: i64, p: u64, a: u32, n: u32) -> Result<Option<u64>> {
    if a_q.rem_euclid(p as i64) == 0 {
        return Ok(None);
    }
    let q = checked_prime_power(p, a)?;
    let r = GaloisRing::new(p, n, 1)?;
    let f = [r.from_int(q as i64), r.from_int(-a_q), r.one()];
    let root = r.hensel_root(&f, &r.from_int(a_q))?;
    Ok(Some(root.0[0]))
}
