//! Traces of Frobenius on cohomology against point counts.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::cohomology::{hypersurface_coherent, witt_cech_curve, CohomologyWithFrobenius, ProjectiveHypersurface};
use crate::error::{Error, Result};
use crate::galois::GaloisRing;
use crate::linalg::Mat;
use crate::mpoly::MPoly;
use crate::pointcount::{count_points, VarietySystem};
use crate::semilinear::{asw_fixed_points, kclass_trace, semilinear_power, stable_nil_decompose, FiniteWnModule, KClass, SemilinearMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisFails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisFails => "hypothesis-fails",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub subject: String,
    pub check: String,
    pub p: u64,
    /// Canonical representative in Z/p^{trace_exp}.
    pub trace: Option<u64>,
    pub trace_exp: u32,
    pub count: Option<u64>,
    /// The congruence is tested modulo p^{modulus_exp}.
    pub modulus_exp: u32,
    pub verdict: Verdict,
    pub provenance: String,
    pub extra: Vec<(String, String)>,
}

impl CongruenceReport {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.modulus_exp)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |x: Option<u64>| x.map_or("n/a".to_string(), |v| v.to_string());
        writeln!(s, "subject: {}", self.subject).unwrap();
        writeln!(s, "check: {}", self.check).unwrap();
        writeln!(s, "trace: {}", opt(self.trace)).unwrap();
        writeln!(s, "trace_ring: Z/{}^{}", self.p, self.trace_exp).unwrap();
        writeln!(s, "count: {}", opt(self.count)).unwrap();
        writeln!(s, "modulus: {}^{} = {}", self.p, self.modulus_exp, self.modulus()).unwrap();
        writeln!(s, "verdict: {}", self.verdict.as_str()).unwrap();
        writeln!(s, "provenance: {}", self.provenance).unwrap();
        for (k, v) in &self.extra {
            writeln!(s, "{k}: {v}").unwrap();
        }
        s
    }
}

fn congruent(x: u64, y: u64, m: u64) -> bool {
    x % m == y % m
}

/// Σ_i (-1)^i Tr(F^{ar} | H^i) for linear powers, reduced into Z/p^n.
fn alternating_trace(ring: &Arc<GaloisRing>, degrees: &[SemilinearMap], r: usize) -> Result<u64> {
    let a = ring.a() as usize;
    let mut acc = ring.zero();
    for (i, f) in degrees.iter().enumerate() {
        let t = semilinear_power(f, a * r).trace()?;
        acc = if i % 2 == 0 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
    }
    if !ring.is_in_prime_subring(&acc) {
        return Err(Error::InvalidParameter(format!("trace {} is not in the prime subring", ring.format(&acc))));
    }
    Ok(acc.0[0])
}

/// Σ_i (-1)^i Tr(F^{ar} | H^i(X, O_X)) against #X(F_{q^r}) mod p.
pub fn verify_katz(subject: &str, x: &ProjectiveHypersurface, r: u32, budget: u128) -> Result<CongruenceReport> {
    let h = hypersurface_coherent(x)?;
    let trace = alternating_trace(&h.ring, &h.degrees, r as usize)?;
    let count = count_points(&VarietySystem::projective(&x.f)?, r, budget)?;
    let p = h.ring.p();
    Ok(CongruenceReport {
        subject: subject.to_string(),
        check: format!("katz r={r}"),
        p,
        trace: Some(trace),
        trace_exp: 1,
        count: Some(count),
        modulus_exp: 1,
        verdict: Verdict::from_bool(congruent(trace, count, p)),
        provenance: format!("{}; brute-force count over F_{}^{}", h.construction, x.field().size(), r),
        extra: Vec::new(),
    })
}

/// The Euler class Σ_i (-1)^i [H^i(X, W_nO)_s] of a curve, after checking
/// freeness of every stable part.
pub fn euler_class(h: &CohomologyWithFrobenius) -> Result<KClass> {
    let mut c = KClass::new(&h.ring);
    for (i, f) in h.degrees.iter().enumerate() {
        let d = stable_nil_decompose(f)?;
        if !d.stable.module.is_free() {
            return Err(Error::NotFree { degree: i, factors: d.stable.module.factors().to_vec() });
        }
        c.push(if i % 2 == 0 { 1 } else { -1 }, d.f_stable);
    }
    Ok(c)
}

/// Tr^r of the Euler class of H^*(C, W_nO)_s, in Z/p^n.
pub fn formal_euler_trace(f: &MPoly, n: u32, r: u32, pole_bound: Option<i64>) -> Result<u64> {
    let h = witt_cech_curve(f, n, pole_bound)?;
    kclass_trace(&euler_class(&h)?, r as usize)
}

/// Degrees where Frobenius on H^i(X, O_X) is not bijective.
pub fn frobenius_defects(x: &ProjectiveHypersurface) -> Result<Vec<usize>> {
    let h = hypersurface_coherent(x)?;
    Ok(h.degrees.iter().enumerate().filter(|(_, f)| !f.is_bijective()).map(|(i, _)| i).collect())
}

/// Tr^r(e(H^*(C, W_nO)_s)) ≡ #C(F_{q^r}) mod p^{min(ra, n)}.
pub fn verify_curve_congruence(
    subject: &str,
    f: &MPoly,
    n: u32,
    r: u32,
    budget: u128,
    pole_bound: Option<i64>,
) -> Result<CongruenceReport> {
    Ok(curve_congruence_reports(subject, f, n, &[r], budget, pole_bound)?.remove(0))
}

/// One report per r, sharing a single Witt–Čech computation.
pub fn curve_congruence_reports(
    subject: &str,
    f: &MPoly,
    n: u32,
    rs: &[u32],
    budget: u128,
    pole_bound: Option<i64>,
) -> Result<Vec<CongruenceReport>> {
    let x = ProjectiveHypersurface::new(f)?;
    let p = f.field().p();
    let a = f.field().degree();
    let h = witt_cech_curve(f, n, pole_bound)?;
    let bound = h.bounds.iter().find(|b| b.0 == "pole_bound").map_or(0, |b| b.1);
    let defects = frobenius_defects(&x)?;
    let class = if defects.is_empty() { Some(euler_class(&h)?) } else { None };
    let v = VarietySystem::projective(f)?;
    let mut out = Vec::with_capacity(rs.len());
    for &r in rs {
        let e = (r * a).min(n);
        let count = count_points(&v, r, budget)?;
        let provenance = format!(
            "{}; pole bound {}; brute-force count over F_{}^{}",
            h.construction,
            bound,
            f.field().size(),
            r
        );
        let mut rep = CongruenceReport {
            subject: subject.to_string(),
            check: format!("curve-congruence n={n} r={r}"),
            p,
            trace: None,
            trace_exp: n,
            count: Some(count),
            modulus_exp: e,
            verdict: Verdict::HypothesisFails,
            provenance,
            extra: Vec::new(),
        };
        match (&class, defects.first()) {
            (Some(c), _) => {
                let t = kclass_trace(c, r as usize)?;
                rep.trace = Some(t);
                rep.verdict = Verdict::from_bool(congruent(t, count, p.pow(e)));
            }
            (None, Some(&deg)) => {
                let st = stable_nil_decompose(&h.degrees[deg])?.stable.module;
                rep.extra = vec![
                    ("obstruction_degree".into(), deg.to_string()),
                    ("module_factors".into(), format!("{:?}", h.degrees[deg].source.factors())),
                    ("stable_factors".into(), format!("{:?}", st.factors())),
                ];
            }
            (None, None) => unreachable!("no class only when a defect exists"),
        }
        out.push(rep);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R0Report {
    pub subject: String,
    pub n: u32,
    /// passes[r-1] for r = 1..=r_max.
    pub passes: Vec<bool>,
    pub r0: Option<u32>,
}

impl R0Report {
    pub fn to_text(&self) -> String {
        let v: Vec<&str> = self.passes.iter().map(|&b| if b { "pass" } else { "fail" }).collect();
        let mut s = String::new();
        writeln!(s, "subject: {}", self.subject).unwrap();
        writeln!(s, "check: r0 n={}", self.n).unwrap();
        writeln!(s, "passes: [{}]", v.join(", ")).unwrap();
        match self.r0 {
            Some(r) => writeln!(s, "r0: {r}").unwrap(),
            None => writeln!(s, "r0: none up to r_max = {}", self.passes.len()).unwrap(),
        }
        writeln!(s, "verdict: {}", if self.r0.is_some() { "pass" } else { "fail" }).unwrap();
        s
    }
}

/// Smallest r0 <= r_max with Tr^r ≡ #C(F_{q^r}) mod p^n for every tested r >= r0.
pub fn find_r0(subject: &str, f: &MPoly, n: u32, r_max: u32, budget: u128, pole_bound: Option<i64>) -> Result<R0Report> {
    if n == 0 {
        return Ok(R0Report { subject: subject.to_string(), n, passes: vec![true; r_max as usize], r0: Some(1) });
    }
    let p = f.field().p();
    let h = witt_cech_curve(f, n, pole_bound)?;
    let class = euler_class(&h)?;
    let v = VarietySystem::projective(f)?;
    let mut passes = Vec::with_capacity(r_max as usize);
    for r in 1..=r_max {
        let t = kclass_trace(&class, r as usize)?;
        let c = count_points(&v, r, budget)?;
        passes.push(congruent(t, c, p.pow(n)));
    }
    let r0 = match passes.iter().rposition(|&b| !b) {
        None => Some(1),
        Some(last_fail) if last_fail + 1 < passes.len() => Some(last_fail as u32 + 2),
        Some(_) => None,
    };
    Ok(R0Report { subject: subject.to_string(), n, passes, r0 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakLefschetzReport {
    pub subject: String,
    pub dimension: usize,
    pub cohen_macaulay: bool,
    pub stable_ranks: Vec<usize>,
    pub verdict: Verdict,
}

impl WeakLefschetzReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "subject: {}", self.subject).unwrap();
        writeln!(s, "check: weak-lefschetz").unwrap();
        writeln!(s, "dimension: {}", self.dimension).unwrap();
        writeln!(s, "cohen_macaulay: {}", self.cohen_macaulay).unwrap();
        for (i, r) in self.stable_ranks.iter().enumerate() {
            writeln!(s, "H{i}_c.stable_rank: {r}").unwrap();
        }
        let expect = if self.cohen_macaulay { "vanishing outside degree d" } else { "rank 1 in degree 1" };
        writeln!(s, "expected: {expect}").unwrap();
        writeln!(s, "verdict: {}", self.verdict.as_str()).unwrap();
        s
    }
}

/// Stable compactly supported ranks; with `cohen_macaulay` they must vanish
/// outside degree d, otherwise (the glued planes) degree 1 must have rank 1.
pub fn weak_lefschetz_report(
    subject: &str,
    h: &CohomologyWithFrobenius,
    dimension: usize,
    cohen_macaulay: bool,
) -> Result<WeakLefschetzReport> {
    let ranks = h.stable_ranks()?;
    let outside_zero = |skip: &[usize]| ranks.iter().enumerate().all(|(i, &r)| skip.contains(&i) || r == 0);
    let ok = if cohen_macaulay {
        outside_zero(&[dimension])
    } else {
        ranks.get(1) == Some(&1) && outside_zero(&[1, dimension])
    };
    Ok(WeakLefschetzReport {
        subject: subject.to_string(),
        dimension,
        cohen_macaulay,
        stable_ranks: ranks,
        verdict: Verdict::from_bool(ok),
    })
}

/// Z/p^n-rank of the Frobenius fixed points of H^i_s over an extension of k.
pub fn etale_rank(h: &CohomologyWithFrobenius, i: usize, s_max: u32) -> Result<usize> {
    let f = match h.frobenius(i) {
        Some(f) => f,
        None => return Ok(0),
    };
    let d = stable_nil_decompose(f)?;
    if !d.stable.module.is_free() {
        return Err(Error::NotFree { degree: i, factors: d.stable.module.factors().to_vec() });
    }
    let fx = asw_fixed_points(&d.f_stable, s_max)?;
    assert_eq!(fx.rank, d.stable.module.free_rank(), "fixed points have the rank of the stable part");
    Ok(fx.rank)
}

/// H^i(Z/p^m, W_n(k)) from multiplication by p^m on W_n(k) = GR(p^n, a).
pub fn cyclic_group_cohomology(p: u64, a: u32, m: u32, n: u32, i: u32) -> Result<FiniteWnModule> {
    let ring = GaloisRing::new(p, n, a)?;
    let w = FiniteWnModule::free(&ring, 1);
    if i == 0 {
        return Ok(w);
    }
    let mult = Mat::from_rows(vec![vec![ring.p_pow(m)]], 1);
    if i % 2 == 1 {
        let f = SemilinearMap::new(&w, &w, mult, 0)?;
        Ok(f.kernel().module)
    } else {
        Ok(w.quotient(&mult).module)
    }
}
