//! Universal p-typical Witt polynomials.
//!
//! Tables are built from the ghost components
//! `w_k(x) = Σ_{j<=k} p^j x_j^{p^{k-j}}` by solving the ghost identity for the
//! top coordinate, dividing exactly by `p^k` at every step. Variables are
//! `a_0..a_{n-1}` (indices `0..n`) and `b_0..b_{n-1}` (indices `n..2n`).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::intpoly::IntPoly;
use super::ring::CoeffRing;
use crate::arith::is_prime;
use crate::error::{Error, Result};

pub struct WittLaws {
    p: u64,
    n: usize,
    sum: OnceLock<Vec<IntPoly>>,
    prod: OnceLock<Vec<IntPoly>>,
    neg: OnceLock<Vec<IntPoly>>,
    frob: OnceLock<Vec<IntPoly>>,
    corrupted: bool,
}

type Cache = Mutex<HashMap<(u64, usize), Arc<WittLaws>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Ghost component w_k in the variables `offset..offset+k+1`.
pub fn ghost_poly(p: u64, k: usize, nvars: usize, offset: usize) -> IntPoly {
    let mut w = IntPoly::zero(nvars);
    let pb = BigInt::from(p);
    for j in 0..=k {
        let term = IntPoly::var(nvars, offset + j)
            .pow(p.pow((k - j) as u32))
            .scale(&num_traits::pow(pb.clone(), j));
        w = w.add(&term);
    }
    w
}

/// Solve `Σ_{j<=k} p^j T_j^{p^{k-j}} = target(k)` for `T_0, ..., T_{count-1}`.
fn solve_ghost(
    p: u64,
    count: usize,
    target: impl Fn(usize) -> IntPoly,
    label: &str,
) -> Result<Vec<IntPoly>> {
    let pb = BigInt::from(p);
    let mut polys: Vec<IntPoly> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = target(k);
        for (j, t) in polys.iter().enumerate() {
            let term = t.pow(p.pow((k - j) as u32)).scale(&num_traits::pow(pb.clone(), j));
            acc = acc.sub(&term);
        }
        let d = num_traits::pow(pb.clone(), k);
        let q = acc.div_exact(&d).map_err(|(e, c)| {
            Error::Integrality(format!("{label}_{k}: coefficient {c} of monomial {e:?} not divisible by {d}"))
        })?;
        polys.push(q);
    }
    Ok(polys)
}

/// Recompute `Σ_{j<=k} p^j T_j^{p^{k-j}}`.
fn ghost_of(p: u64, polys: &[IntPoly], k: usize) -> IntPoly {
    let pb = BigInt::from(p);
    let mut acc = IntPoly::zero(polys[0].nvars());
    for (j, t) in polys.iter().enumerate().take(k + 1) {
        acc = acc.add(&t.pow(p.pow((k - j) as u32)).scale(&num_traits::pow(pb.clone(), j)));
    }
    acc
}

impl WittLaws {
    fn fresh(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("Witt length must be >= 1".into()));
        }
        Ok(WittLaws {
            p,
            n,
            sum: OnceLock::new(),
            prod: OnceLock::new(),
            neg: OnceLock::new(),
            frob: OnceLock::new(),
            corrupted: false,
        })
    }

    /// Shared tables for `(p, n)`.
    pub fn get(p: u64, n: usize) -> Result<Arc<WittLaws>> {
        let mut guard = cache().lock().expect("law cache poisoned");
        if let Some(t) = guard.get(&(p, n)) {
            return Ok(t.clone());
        }
        let t = Arc::new(Self::fresh(p, n)?);
        guard.insert((p, n), t.clone());
        Ok(t)
    }

    /// A deliberately wrong table (extra `a_0 b_0` in the top sum coordinate),
    /// used as a negative control. Never cached.
    pub fn corrupted(p: u64, n: usize) -> Result<Arc<WittLaws>> {
        let t = Self::fresh(p, n)?;
        let mut sum = Self::build_sum(p, n)?;
        let nv = 2 * n;
        let extra = IntPoly::var(nv, 0).mul(&IntPoly::var(nv, n));
        sum[n - 1] = sum[n - 1].add(&extra);
        let _ = t.sum.set(sum);
        Ok(Arc::new(WittLaws { corrupted: true, ..t }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_corrupted(&self) -> bool {
        self.corrupted
    }

    fn build_sum(p: u64, n: usize) -> Result<Vec<IntPoly>> {
        let nv = 2 * n;
        solve_ghost(p, n, |k| ghost_poly(p, k, nv, 0).add(&ghost_poly(p, k, nv, n)), "S")
    }

    fn unwrap_table(r: Result<Vec<IntPoly>>) -> Vec<IntPoly> {
        // Integrality cannot fail for the correct recursion; a failure is a bug.
        r.unwrap_or_else(|e| panic!("{e}"))
    }

    /// S_0, ..., S_{n-1}.
    pub fn sum(&self) -> &[IntPoly] {
        self.sum.get_or_init(|| Self::unwrap_table(Self::build_sum(self.p, self.n)))
    }

    /// P_0, ..., P_{n-1}.
    pub fn prod(&self) -> &[IntPoly] {
        self.prod.get_or_init(|| {
            let (p, n) = (self.p, self.n);
            let nv = 2 * n;
            Self::unwrap_table(solve_ghost(
                p,
                n,
                |k| ghost_poly(p, k, nv, 0).mul(&ghost_poly(p, k, nv, n)),
                "P",
            ))
        })
    }

    /// N_0, ..., N_{n-1} in the variables a: coordinates of -a.
    pub fn neg(&self) -> &[IntPoly] {
        self.neg.get_or_init(|| {
            let (p, n) = (self.p, self.n);
            Self::unwrap_table(solve_ghost(p, n, |k| ghost_poly(p, k, n, 0).neg(), "N"))
        })
    }

    /// F_0, ..., F_{n-2} in the variables a: the generic Frobenius W_n -> W_{n-1}.
    pub fn frob(&self) -> &[IntPoly] {
        self.frob.get_or_init(|| {
            let (p, n) = (self.p, self.n);
            Self::unwrap_table(solve_ghost(p, n - 1, |k| ghost_poly(p, k + 1, n, 0), "F"))
        })
    }

    /// Check the ghost identities for every table symbolically.
    pub fn verify_ghost_identities(&self) -> std::result::Result<(), String> {
        let (p, n) = (self.p, self.n);
        let nv = 2 * n;
        for k in 0..n {
            let wa = ghost_poly(p, k, nv, 0);
            let wb = ghost_poly(p, k, nv, n);
            if ghost_of(p, self.sum(), k) != wa.add(&wb) {
                return Err(format!("sum law fails ghost identity in degree {k} (p = {p}, n = {n})"));
            }
            if ghost_of(p, self.prod(), k) != wa.mul(&wb) {
                return Err(format!("product law fails ghost identity in degree {k} (p = {p}, n = {n})"));
            }
            if ghost_of(p, self.neg(), k) != ghost_poly(p, k, n, 0).neg() {
                return Err(format!("negation law fails ghost identity in degree {k} (p = {p}, n = {n})"));
            }
            if k + 1 < n && ghost_of(p, self.frob(), k) != ghost_poly(p, k + 1, n, 0) {
                return Err(format!("Frobenius law fails ghost identity in degree {k} (p = {p}, n = {n})"));
            }
        }
        Ok(())
    }

    fn names(&self, with_b: bool) -> Vec<String> {
        let mut v: Vec<String> = (0..self.n).map(|i| format!("a_{i}")).collect();
        if with_b {
            v.extend((0..self.n).map(|i| format!("b_{i}")));
        }
        v
    }

    /// Deterministic textual form of all tables.
    pub fn to_text(&self) -> String {
        let ab = self.names(true);
        let a = self.names(false);
        let mut out = format!("witt-laws p = {} n = {}\n", self.p, self.n);
        for (k, s) in self.sum().iter().enumerate() {
            out.push_str(&format!("S_{k} = {}\n", s.format_with(&ab)));
        }
        for (k, s) in self.prod().iter().enumerate() {
            out.push_str(&format!("P_{k} = {}\n", s.format_with(&ab)));
        }
        for (k, s) in self.neg().iter().enumerate() {
            out.push_str(&format!("N_{k} = {}\n", s.format_with(&a)));
        }
        for (k, s) in self.frob().iter().enumerate() {
            out.push_str(&format!("F_{k} = {}\n", s.format_with(&a)));
        }
        out
    }
}

/// Cache of powers of the evaluation variables.
struct Powers<'r, R: CoeffRing> {
    ring: &'r R,
    vals: &'r [Option<R::Elem>],
    cache: HashMap<(usize, u64), R::Elem>,
}

impl<'r, R: CoeffRing> Powers<'r, R> {
    fn get(&mut self, var: usize, e: u64) -> R::Elem {
        if e == 1 {
            return self.vals[var].clone().expect("zero variables are skipped");
        }
        if let Some(x) = self.cache.get(&(var, e)) {
            return x.clone();
        }
        let r = match self.ring.char_p() {
            Some(p) if e.is_multiple_of(p) => {
                let base = self.get(var, e / p);
                match self.ring.pth_power(&base) {
                    Some(x) => x,
                    None => self.ring.pow(&base, p),
                }
            }
            Some(p) if e > p => {
                let hi = self.get(var, e - e % p);
                let lo = self.get(var, e % p);
                self.ring.mul(&hi, &lo)
            }
            _ => {
                let half = self.get(var, e / 2);
                let sq = self.ring.mul(&half, &half);
                if e % 2 == 1 {
                    self.ring.mul(&sq, &self.get(var, 1))
                } else {
                    sq
                }
            }
        };
        self.cache.insert((var, e), r.clone());
        r
    }
}

/// Evaluate integer polynomials at ring values; `None` marks a zero variable.
/// Monomials involving a zero variable are skipped and powers are shared
/// across all outputs.
pub fn eval_polys<R: CoeffRing>(ring: &R, polys: &[IntPoly], vals: &[Option<R::Elem>]) -> Vec<R::Elem> {
    let mut powers = Powers { ring, vals, cache: HashMap::new() };
    polys
        .iter()
        .map(|poly| {
            let mut acc = ring.zero();
            'terms: for (e, c) in poly.terms() {
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 && vals[i].is_none() {
                        continue 'terms;
                    }
                }
                let coeff = ring.from_bigint(c);
                if ring.is_zero(&coeff) {
                    continue;
                }
                let mut m: Option<R::Elem> = None;
                for (i, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    let pw = powers.get(i, k as u64);
                    m = Some(match m {
                        None => pw,
                        Some(x) => ring.mul(&x, &pw),
                    });
                }
                let term = match m {
                    None => coeff,
                    Some(x) if c.is_one() => x,
                    Some(x) => ring.mul(&coeff, &x),
                };
                acc = ring.add(&acc, &term);
            }
            acc
        })
        .collect()
}
