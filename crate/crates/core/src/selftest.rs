//! Property suites over the built-in corpus.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{
    compact_support_stable, glued_planes_stable, ideal_power_independent, witt_cech_curve, ComplementDatum,
    ProjectiveHypersurface,
};
use crate::congruence::{
    cyclic_group_cohomology, etale_rank, curve_congruence_reports, verify_katz, weak_lefschetz_report, Verdict,
};
use crate::corpus::{elliptic_corpus, random_smooth_plane_curves, smooth_plane_curves, NamedCurve, PLANE_VARS};
use crate::error::Result;
use crate::field::FqField;
use crate::galois::GaloisRing;
use crate::mpoly::MPoly;
use crate::par::{map_vec, ExecMode};
use crate::pointcount::{elliptic_aq, unit_root};
use crate::semilinear::{random_endo, random_module, random_short_exact, semilinear_power, stable_nil_decompose};
use crate::witt::{galois_to_witt, witt_to_galois, WittLaws, WittOps, WittVector};

pub const SUITES: [&str; 10] = [
    "witt",
    "stable-nil",
    "stable-exact",
    "katz",
    "curve-congruence",
    "slope-zero",
    "weak-lefschetz",
    "etale",
    "ideal-power",
    "groupcoh",
];

const MAX_LISTED: usize = 10;

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub budget: u128,
    /// Use deliberately wrong Witt addition laws.
    pub corrupt_laws: bool,
    /// Add F_3 quartics, F_5 cubics, lines and conics to the Katz corpus.
    pub extended: bool,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult { name: name.to_string(), cases: 0, failures: Vec::new(), elapsed: Duration::ZERO }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    pub fn summary_line(&self) -> String {
        format!(
            "suite {}: {} cases, {} failures: {}",
            self.name,
            self.cases,
            self.failures.len(),
            if self.passed() { "pass" } else { "fail" }
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = self.summary_line();
        s.push('\n');
        for f in self.failures.iter().take(MAX_LISTED) {
            writeln!(s, "  failure: {}", f.trim_end().replace('\n', "; ")).unwrap();
        }
        if self.failures.len() > MAX_LISTED {
            writeln!(s, "  ... {} more failures", self.failures.len() - MAX_LISTED).unwrap();
        }
        s
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut res = match name {
        "witt" => witt_suite(cfg.corrupt_laws)?,
        "stable-nil" => stable_nil_suite(500, cfg.seed)?,
        "stable-exact" => stable_exact_suite(200, cfg.seed)?,
        "katz" => katz_suite(cfg)?,
        "curve-congruence" => curve_congruence_suite(cfg.budget)?,
        "slope-zero" => slope_zero_suite(cfg.budget)?,
        "weak-lefschetz" => weak_lefschetz_suite()?,
        "etale" => etale_suite(cfg.budget)?,
        "ideal-power" => ideal_power_suite()?,
        "groupcoh" => group_cohomology_suite()?,
        other => return Err(crate::Error::InvalidParameter(format!("unknown suite {other}"))),
    };
    res.elapsed = start.elapsed();
    Ok(res)
}

/// Ghost identities for the cached laws and the W_2(F_4) = GR(4, 2) model.
pub fn witt_suite(corrupt: bool) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("witt");
    let get = |p, n| if corrupt { WittLaws::corrupted(p, n) } else { WittLaws::get(p, n) };
    for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
        let laws = get(p, n)?;
        let v = laws.verify_ghost_identities();
        res.check(v.is_ok(), || format!("ghost identities p={p} n={n}: {}", v.clone().unwrap_err()));
    }
    let r = GaloisRing::new(2, 2, 2)?;
    let k: &FqField = r.residue_field();
    let ops = WittOps::with_laws(k, get(2, 2)?);
    let els: Vec<WittVector<u32>> = (0..4).flat_map(|a| (0..4).map(move |b| WittVector::new(vec![a, b]))).collect();
    for u in &els {
        let x = witt_to_galois(u, &r)?;
        res.check(&galois_to_witt(&x, &r) == u, || format!("round trip {:?}", u.coords));
        for v in &els {
            let y = witt_to_galois(v, &r)?;
            let s = witt_to_galois(&ops.add(u, v)?, &r)?;
            res.check(s == r.add(&x, &y), || format!("{:?} + {:?}", u.coords, v.coords));
            let m = witt_to_galois(&ops.mul(u, v)?, &r)?;
            res.check(m == r.mul(&x, &y), || format!("{:?} * {:?}", u.coords, v.coords));
        }
    }
    Ok(res)
}

/// (p, n, a) with p^n a <= 81 and a <= 4.
pub fn small_rings() -> Vec<(u64, u32, u32)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for n in 1..=6u32 {
            for a in 1..=4u32 {
                if p.pow(n) * a as u64 <= 81 {
                    out.push((p, n, a));
                }
            }
        }
    }
    out
}

/// Random σ-linear endomorphisms: direct sum, F bijective on M_s, nilpotent
/// on M_nil, and M_s = F^N(M) = F^{N+1}(M).
pub fn stable_nil_suite(count: usize, seed: u64) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("stable-nil");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = small_rings();
    for case in 0..count {
        let (p, n, a) = rings[rng.gen_range(0..rings.len())];
        let r = GaloisRing::new(p, n, a)?;
        let m = random_module(&r, 3, &mut rng);
        let twist = rng.gen_range(-1..=2);
        let f = random_endo(&m, twist, &mut rng);
        let d = stable_nil_decompose(&f)?;
        let img_next = semilinear_power(&f, d.exponent + 1).image();
        let stable_eq = m.span_contained(&d.stable.basis, &img_next.basis)
            && m.span_contained(&img_next.basis, &d.stable.basis);
        let fnn = semilinear_power(&f, d.exponent);
        let killed = d.nil.basis.columns().iter().all(|c| m.is_zero_vec(&fnn.apply(c)));
        let ok = d.is_direct_sum(&m) && d.f_stable.is_bijective() && d.f_nil.is_nilpotent() && stable_eq && killed;
        res.check(ok, || format!("case {case} over GR({}^{n}, {a}): {}", p, f.format()));
    }
    Ok(res)
}

/// Stable parts of random short exact sequences 0 -> M' -> M -> M'' -> 0.
pub fn stable_exact_suite(count: usize, seed: u64) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("stable-exact");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e5);
    let rings = small_rings();
    for case in 0..count {
        let (p, n, a) = rings[rng.gen_range(0..rings.len())];
        let r = GaloisRing::new(p, n, a)?;
        let ses = random_short_exact(&r, 3, &mut rng)?;
        let lengths = ses.sub.module.length() + ses.quotient.module.length() == ses.f.source.length();
        let ok = lengths && ses.stable_parts_exact()?;
        res.check(ok, || format!("case {case} over GR({p}^{n}, {a})"));
    }
    Ok(res)
}

/// The curves checked by the Katz suite.
pub fn katz_corpus(cfg: &SuiteConfig) -> Result<Vec<MPoly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x4a7);
    let f2 = FqField::shared(2, 1)?;
    let f3 = FqField::shared(3, 1)?;
    let mut out = smooth_plane_curves(&f2, 3, cfg.budget, ExecMode::Parallel)?;
    out.extend(smooth_plane_curves(&f3, 3, cfg.budget, ExecMode::Parallel)?);
    out.extend(random_smooth_plane_curves(&f2, 4, 50, cfg.budget, &mut rng)?);
    if cfg.extended {
        let f5 = FqField::shared(5, 1)?;
        for k in [&f2, &f3] {
            out.extend(smooth_plane_curves(k, 1, cfg.budget, ExecMode::Parallel)?);
            out.extend(smooth_plane_curves(k, 2, cfg.budget, ExecMode::Parallel)?);
        }
        out.extend(random_smooth_plane_curves(&f3, 4, 10, cfg.budget, &mut rng)?);
        out.extend(random_smooth_plane_curves(&f5, 3, 30, cfg.budget, &mut rng)?);
    }
    Ok(out)
}

pub fn katz_suite(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("katz");
    let curves = katz_corpus(cfg)?;
    let outcomes = map_vec(ExecMode::Parallel, &curves, |f| -> Result<(bool, String)> {
        let name = format!("F{}: {}", f.field().size(), f.format_with(&PLANE_VARS));
        let x = ProjectiveHypersurface::new(f)?;
        let rep = verify_katz(&name, &x, 1, cfg.budget)?;
        Ok((rep.passed(), rep.to_text()))
    });
    for o in outcomes {
        let (ok, text) = o?;
        res.check(ok, || text);
    }
    Ok(res)
}

fn curve_congruence_case(c: &NamedCurve, budget: u128) -> Result<Vec<(bool, String)>> {
    let a = c.poly.field().degree();
    let rs: Vec<u32> = (1..=4 / a).collect();
    let mut out = Vec::new();
    for n in 1..=4 {
        for rep in curve_congruence_reports(&c.name, &c.poly, n, &rs, budget, None)? {
            out.push((rep.passed(), rep.to_text()));
        }
    }
    Ok(out)
}

/// Ordinary corpus curves pass for all n <= 4 and r a <= 4; supersingular
/// ones report the failed hypothesis.
pub fn curve_congruence_suite(budget: u128) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("curve-congruence");
    let corpus = elliptic_corpus(budget)?;
    for o in map_vec(ExecMode::Parallel, &corpus.ordinary, |c| curve_congruence_case(c, budget)) {
        for (ok, text) in o? {
            res.check(ok, || text);
        }
    }
    for c in &corpus.supersingular {
        for rep in curve_congruence_reports(&c.name, &c.poly, 2, &[1], budget, None)? {
            let ok = rep.verdict == Verdict::HypothesisFails && rep.extra.iter().any(|e| e.0 == "obstruction_degree");
            res.check(ok, || rep.to_text());
        }
    }
    Ok(res)
}

/// Frobenius^a on H^1(E, W_nO)_s against the unit root of T^2 - a_q T + q.
pub fn slope_zero_suite(budget: u128) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("slope-zero");
    let corpus = elliptic_corpus(budget)?;
    let outcomes = map_vec(ExecMode::Parallel, &corpus.ordinary, |c| -> Result<Vec<(bool, String)>> {
        let k = c.poly.field();
        let aq = elliptic_aq(&c.poly, budget)?;
        let mut out = Vec::new();
        for n in 1..=4 {
            let h = witt_cech_curve(&c.poly, n, None)?;
            let d = stable_nil_decompose(&h.degrees[1])?;
            let unit = if d.stable.module.factors() == [n] {
                let t = semilinear_power(&d.f_stable, k.degree() as usize).trace()?;
                Some(t.0[0])
            } else {
                None
            };
            let expect = unit_root(aq, k.p(), k.degree(), n)?;
            out.push((unit.is_some() && unit == expect, format!("{} n={n}: {unit:?} vs {expect:?}", c.name)));
        }
        Ok(out)
    });
    for o in outcomes {
        for (ok, text) in o? {
            res.check(ok, || text);
        }
    }
    Ok(res)
}

fn conic(k: &Arc<FqField>) -> Result<MPoly> {
    MPoly::parse(k, &PLANE_VARS, "x*z + y^2 + x*y")
}

/// Vanishing outside degree d for affine spaces and P^2 minus a conic; the
/// glued planes have stable H^1_c of rank 1.
pub fn weak_lefschetz_suite() -> Result<SuiteResult> {
    let mut res = SuiteResult::new("weak-lefschetz");
    for p in [2, 3] {
        let k = FqField::shared(p, 1)?;
        for d in 1..=3 {
            let h = compact_support_stable(&ComplementDatum::affine_space(&k, d))?;
            let rep = weak_lefschetz_report(&format!("A^{d}/F_{p}"), &h, d, true)?;
            res.check(rep.verdict == Verdict::Pass, || rep.to_text());
        }
        let h = compact_support_stable(&ComplementDatum::new(&conic(&k)?)?)?;
        let rep = weak_lefschetz_report(&format!("P^2 - conic/F_{p}"), &h, 2, true)?;
        res.check(rep.verdict == Verdict::Pass, || rep.to_text());
        let h = glued_planes_stable(p, 1)?;
        let rep = weak_lefschetz_report(&format!("glued planes/F_{p}"), &h, 2, false)?;
        res.check(rep.verdict == Verdict::Pass && rep.stable_ranks.get(1) == Some(&1), || rep.to_text());
    }
    Ok(res)
}

/// ASW fixed-point ranks against stable free ranks.
pub fn etale_suite(budget: u128) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("etale");
    let corpus = elliptic_corpus(budget)?;
    let cases = corpus.ordinary.iter().map(|c| (c, 1)).chain(corpus.supersingular.iter().map(|c| (c, 0)));
    for (c, expect) in cases {
        for n in 1..=2 {
            let h = witt_cech_curve(&c.poly, n, None)?;
            let r = etale_rank(&h, 1, 8)?;
            res.check(r == expect, || format!("{} n={n}: etale rank {r}, expected {expect}", c.name));
        }
    }
    for p in [2, 3] {
        let h = compact_support_stable(&ComplementDatum::affine_space(&FqField::shared(p, 1)?, 2))?;
        for i in 0..=2 {
            let r = etale_rank(&h, i, 8)?;
            res.check(r == 0, || format!("A^2/F_{p} degree {i}: etale rank {r}"));
        }
    }
    Ok(res)
}

/// Ten boundary hypersurfaces.
pub fn complement_data() -> Result<Vec<(String, ComplementDatum)>> {
    let mut out = Vec::new();
    let specs: [(u64, &[&str], &str); 10] = [
        (2, &["x", "y"], "x"),
        (3, &["x", "y"], "x*y"),
        (2, &PLANE_VARS, "x"),
        (3, &PLANE_VARS, "x"),
        (2, &PLANE_VARS, "x*z + y^2 + x*y"),
        (3, &PLANE_VARS, "x*z + y^2"),
        (2, &PLANE_VARS, "y^2*z + x*y*z + x^3 + z^3"),
        (3, &PLANE_VARS, "x*y*z"),
        (2, &["x", "y", "z", "w"], "w"),
        (3, &["x", "y", "z", "w"], "x*w + y*z"),
    ];
    for (p, vars, g) in specs {
        let k = FqField::shared(p, 1)?;
        let poly = MPoly::parse(&k, vars, g)?;
        out.push((format!("P^{} - V({g})/F_{p}", vars.len() - 1), ComplementDatum::new(&poly)?));
    }
    Ok(out)
}

/// Stable parts for I, I^2, I^3 agree through an F-compatible isomorphism.
pub fn ideal_power_suite() -> Result<SuiteResult> {
    let mut res = SuiteResult::new("ideal-power");
    for (name, datum) in complement_data()? {
        for e in [2, 3] {
            let ok = ideal_power_independent(&datum, e)?;
            res.check(ok, || format!("{name}: I vs I^{e}"));
        }
    }
    Ok(res)
}

/// H^i(Z/p^m, W_n(k)) against W_n(k) for i = 0 and W_min(m,n)(k) otherwise.
pub fn group_cohomology_suite() -> Result<SuiteResult> {
    let mut res = SuiteResult::new("groupcoh");
    for (p, n, a) in small_rings().into_iter().filter(|&(_, _, a)| a <= 2) {
        for m in 1..=3 {
            for i in 0..=4 {
                let got = cyclic_group_cohomology(p, a, m, n, i)?;
                let expect = if i == 0 { vec![n] } else { vec![m.min(n)] };
                res.check(got.factors() == expect.as_slice(), || {
                    format!("p={p} a={a} m={m} n={n} i={i}: {:?}", got.factors())
                });
            }
        }
    }
    Ok(res)
}
