//! H^1(C, W_nO_C) for a smooth plane curve, by Witt-valued Čech cocycles.
//!
//! With an x^d term in f, C is covered by U_z = {z != 0} and U_y = {y != 0}.
//! In X = x/z, Y = y/z the ring of U_y ∩ U_z is R = ⊕_{i<d} X^i F_q[Y, 1/Y],
//! O(U_z) is spanned by X^i Y^e with e >= 0 and O(U_y) by X^i Y^e with
//! e <= -i. The remaining monomials X^i Y^e, -i < e < 0, span H^1(C, O).
//!
//! A Witt vector w over R is classified by peeling: split w_0 into the two
//! chart parts plus a gap part h, subtract the Teichmüller lifts, and recurse
//! on the remaining vector V(w'). This writes every class in terms of the
//! generators V^t[c_j], c_j the gap monomials; the relations
//! p·V^t[c_j] = V^{t+1}[c_j^p] give a complete presentation.

use std::sync::atomic::{AtomicI64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::CohomologyWithFrobenius;
use crate::error::{Error, Result};
use crate::field::{Fq, FqField};
use crate::galois::GaloisRing;
use crate::linalg::Mat;
use crate::mpoly::MPoly;
use crate::pointcount::{is_smooth_plane_curve, DEFAULT_BUDGET};
use crate::par::ExecMode;
use crate::semilinear::{FiniteWnModule, SemilinearMap};
use crate::witt::{CoeffRing, WittOps, WittVector};

/// Laurent polynomial in Y: `c[k]` is the coefficient of Y^{lo + k}.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    lo: i64,
    c: Vec<Fq>,
}

impl Laurent {
    fn monomial(e: i64, c: Fq) -> Self {
        if c == 0 {
            return Laurent::default();
        }
        Laurent { lo: e, c: vec![c] }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn hi(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }

    fn trim(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&x| x == 0).count();
        if lead == self.c.len() {
            return Laurent::default();
        }
        self.c.drain(..lead);
        self.lo += lead as i64;
        self
    }

    pub fn coeff(&self, e: i64) -> Fq {
        if self.is_zero() || e < self.lo || e > self.hi() {
            return 0;
        }
        self.c[(e - self.lo) as usize]
    }

    /// (exponent, coefficient) pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fq)> + '_ {
        self.c.iter().enumerate().filter(|(_, &x)| x != 0).map(move |(k, &x)| (self.lo + k as i64, x))
    }

    fn add(&self, o: &Laurent, f: &FqField) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let mut c = vec![0; (hi - lo + 1) as usize];
        for (k, &x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + k] = x;
        }
        for (k, &x) in o.c.iter().enumerate() {
            let slot = &mut c[(o.lo - lo) as usize + k];
            *slot = f.add(*slot, x);
        }
        Laurent { lo, c }.trim()
    }

    fn neg(&self, f: &FqField) -> Laurent {
        Laurent { lo: self.lo, c: self.c.iter().map(|&x| f.neg(x)).collect() }
    }

    fn mul(&self, o: &Laurent, f: &FqField) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::default();
        }
        let mut c = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                if y != 0 {
                    c[i + j] = f.add(c[i + j], f.mul(x, y));
                }
            }
        }
        Laurent { lo: self.lo + o.lo, c }.trim()
    }

    /// Σ c^p Y^{p e}.
    fn frobenius_spread(&self, f: &FqField) -> Laurent {
        if self.is_zero() {
            return Laurent::default();
        }
        let p = f.p() as usize;
        let mut c = vec![0; (self.c.len() - 1) * p + 1];
        for (k, &x) in self.c.iter().enumerate() {
            c[k * p] = f.frobenius(x, 1);
        }
        Laurent { lo: self.lo * p as i64, c }
    }
}

/// An element Σ_{i<d} X^i r_i(Y) of R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveElem(pub Vec<Laurent>);

impl CurveElem {
    pub fn component(&self, i: usize) -> &Laurent {
        &self.0[i]
    }
}

/// The coordinate ring of U_y ∩ U_z in the power basis of X.
pub struct CurveRing {
    field: Arc<FqField>,
    d: usize,
    /// X^d = Σ_{i<d} red[i] X^i.
    red: Vec<Laurent>,
    /// X^{ip} for i < d.
    x_pth: Vec<CurveElem>,
    bound: i64,
    max_seen: AtomicI64,
}

impl std::fmt::Debug for CurveRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CurveRing(d = {}, bound = {})", self.d, self.bound)
    }
}

impl CurveRing {
    /// `f` homogeneous of degree d >= 1 in x, y, z with a nonzero x^d coefficient.
    pub fn new(f: &MPoly, bound: i64) -> Result<Self> {
        let field = f.field().clone();
        let d = f.homogeneous_degree().filter(|&d| d >= 1).ok_or_else(|| {
            Error::InvalidParameter("curve equation must be homogeneous of positive degree".into())
        })? as usize;
        let cd = f.coeff(&[d as u32, 0, 0]);
        let cd_inv = field
            .inv(cd)
            .ok_or_else(|| Error::InvalidParameter("curve equation needs an x^d term".into()))?;
        let scale = field.neg(cd_inv);
        let mut red = vec![Laurent::default(); d];
        for (e, &c) in f.terms() {
            let i = e[0] as usize;
            if i < d {
                let t = Laurent::monomial(e[1] as i64, field.mul(scale, c));
                red[i] = red[i].add(&t, &field);
            }
        }
        let mut ring = CurveRing { field, d, red, x_pth: Vec::new(), bound, max_seen: AtomicI64::new(0) };
        let p = ring.field.p() as usize;
        let x = ring.monomial(1.min(d - 1), 0, 1);
        let x = if d == 1 { ring.reduce(vec![Laurent::default(), Laurent::monomial(0, 1)]) } else { x };
        let mut pw = ring.one();
        let mut x_pth = Vec::with_capacity(d);
        for k in 0..d * p {
            if k % p == 0 {
                x_pth.push(pw.clone());
            }
            pw = ring.mul(&pw, &x);
        }
        ring.x_pth = x_pth;
        ring.max_seen.store(0, Ordering::Relaxed);
        Ok(ring)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    /// c X^i Y^e.
    pub fn monomial(&self, i: usize, e: i64, c: Fq) -> CurveElem {
        let mut v = vec![Laurent::default(); self.d];
        v[i] = Laurent::monomial(e, c);
        self.observe(&v);
        CurveElem(v)
    }

    /// Largest |Y-exponent| produced so far.
    pub fn max_pole_order(&self) -> i64 {
        self.max_seen.load(Ordering::Relaxed)
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    fn observe(&self, v: &[Laurent]) {
        let m = v.iter().filter(|l| !l.is_zero()).map(|l| l.lo.abs().max(l.hi().abs())).max().unwrap_or(0);
        self.max_seen.fetch_max(m, Ordering::Relaxed);
    }

    fn reduce(&self, mut prod: Vec<Laurent>) -> CurveElem {
        let d = self.d;
        for k in (d..prod.len()).rev() {
            let t = std::mem::take(&mut prod[k]);
            if t.is_zero() {
                continue;
            }
            for i in 0..d {
                if !self.red[i].is_zero() {
                    let add = t.mul(&self.red[i], &self.field);
                    prod[k - d + i] = prod[k - d + i].add(&add, &self.field);
                }
            }
        }
        prod.truncate(d);
        prod.resize(d, Laurent::default());
        self.observe(&prod);
        CurveElem(prod)
    }
}

impl CoeffRing for CurveRing {
    type Elem = CurveElem;

    fn zero(&self) -> CurveElem {
        CurveElem(vec![Laurent::default(); self.d])
    }

    fn one(&self) -> CurveElem {
        let mut v = vec![Laurent::default(); self.d];
        v[0] = Laurent::monomial(0, 1);
        CurveElem(v)
    }

    fn add(&self, a: &CurveElem, b: &CurveElem) -> CurveElem {
        let v: Vec<Laurent> = a.0.iter().zip(&b.0).map(|(x, y)| x.add(y, &self.field)).collect();
        self.observe(&v);
        CurveElem(v)
    }

    fn neg(&self, a: &CurveElem) -> CurveElem {
        CurveElem(a.0.iter().map(|x| x.neg(&self.field)).collect())
    }

    fn mul(&self, a: &CurveElem, b: &CurveElem) -> CurveElem {
        let mut prod = vec![Laurent::default(); 2 * self.d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    let t = x.mul(y, &self.field);
                    prod[i + j] = prod[i + j].add(&t, &self.field);
                }
            }
        }
        self.reduce(prod)
    }

    fn is_zero(&self, a: &CurveElem) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    fn from_bigint(&self, c: &BigInt) -> CurveElem {
        let v = c.mod_floor(&BigInt::from(self.field.p())).to_u64().expect("reduced") as Fq;
        let mut out = vec![Laurent::default(); self.d];
        out[0] = Laurent::monomial(0, v);
        CurveElem(out)
    }

    fn char_p(&self) -> Option<u64> {
        Some(self.field.p())
    }

    fn pth_power(&self, a: &CurveElem) -> Option<CurveElem> {
        let mut acc = self.zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let s = x.frobenius_spread(&self.field);
            let term = CurveElem(self.x_pth[i].0.iter().map(|y| y.mul(&s, &self.field)).collect());
            acc = CoeffRing::add(self, &acc, &term);
        }
        Some(acc)
    }
}

/// Gap monomials X^i Y^e, 2 <= i < d, -i < e < 0.
pub fn gap_basis(d: usize) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for i in 2..d {
        for e in (-(i as i64) + 1..=-1).rev() {
            out.push((i, e));
        }
    }
    out
}

/// Default cap on |Y-exponents|. Coordinate t of a Witt vector has degree
/// p^t in the inputs, and the inputs [c_j^p] have pole order below (d - 2)p.
pub fn default_pole_bound(d: u32, p: u64, n: u32) -> i64 {
    (3 * d as i64).max(d as i64 * (p as i64).pow(n))
}

/// Move a point off the curve to (1:0:0) so that f gains an x^d term.
fn with_x_power(f: &MPoly) -> Result<MPoly> {
    let d = f.homogeneous_degree().unwrap_or(0);
    if f.coeff(&[d, 0, 0]) != 0 {
        return Ok(f.clone());
    }
    let k = f.field();
    let q = k.size() as Fq;
    for lead in 0..3 {
        for u in 0..q {
            for v in 0..q {
                let mut pt = [0 as Fq; 3];
                pt[lead] = 1;
                let rest: Vec<usize> = (lead + 1..3).collect();
                if rest.len() < 2 && v > 0 || rest.is_empty() && u > 0 {
                    continue;
                }
                if let Some(&r0) = rest.first() {
                    pt[r0] = u;
                }
                if let Some(&r1) = rest.get(1) {
                    pt[r1] = v;
                }
                if f.eval(&pt) == 0 {
                    continue;
                }
                let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
                let mut m = vec![vec![0 as Fq; 3]; 3];
                for i in 0..3 {
                    m[i][0] = pt[i];
                }
                m[others[0]][1] = 1;
                m[others[1]][2] = 1;
                return Ok(f.linear_substitute(&m));
            }
        }
    }
    Err(Error::Unsupported("every rational point of P^2 lies on the curve; base change the field first".into()))
}

struct Classifier<'r> {
    ring: &'r CurveRing,
    ops: WittOps<'r, CurveRing>,
    gaps: Vec<(usize, i64)>,
}

impl Classifier<'_> {
    /// (O(U_z) part, O(U_y) part, gap coordinates).
    fn split(&self, w0: &CurveElem) -> (CurveElem, CurveElem, Vec<Fq>) {
        let d = self.ring.d;
        let mut a = vec![Laurent::default(); d];
        let mut b = vec![Laurent::default(); d];
        let mut h = vec![0; self.gaps.len()];
        for (i, comp) in w0.0.iter().enumerate() {
            for (e, c) in comp.terms() {
                if e >= 0 {
                    a[i] = a[i].add(&Laurent::monomial(e, c), &self.ring.field);
                } else if e <= -(i as i64) {
                    b[i] = b[i].add(&Laurent::monomial(e, c), &self.ring.field);
                } else {
                    let j = self.gaps.iter().position(|&g| g == (i, e)).expect("gap monomial");
                    h[j] = c;
                }
            }
        }
        (CurveElem(a), CurveElem(b), h)
    }

    /// Gap digits h^{(t)} with w ≡ Σ_t V^t(Σ_j [h^{(t)}_j c_j]).
    fn classify(&self, w: WittVector<CurveElem>) -> Result<Vec<Vec<Fq>>> {
        let mut w = w;
        let mut digits = Vec::with_capacity(w.len());
        while !w.is_empty() {
            let len = w.len();
            let (a, b, h) = self.split(&w.coords[0]);
            let mut u = self.ops.teichmuller(&a, len);
            if !self.ring.is_zero(&b) {
                u = self.ops.add(&u, &self.ops.teichmuller(&b, len))?;
            }
            for (j, &hj) in h.iter().enumerate() {
                if hj != 0 {
                    let (i, e) = self.gaps[j];
                    let t = self.ops.teichmuller(&self.ring.monomial(i, e, hj), len);
                    u = self.ops.add(&u, &t)?;
                }
            }
            digits.push(h);
            let rest = self.ops.sub(&w, &u)?;
            debug_assert!(self.ring.is_zero(&rest.coords[0]));
            w = WittVector::new(rest.coords[1..].to_vec());
        }
        Ok(digits)
    }
}

/// One run at pole bound `bound`, without the stabilization rerun.
pub fn witt_cech_curve_unchecked(f: &MPoly, n: u32, bound: i64) -> Result<CohomologyWithFrobenius> {
    let fx = with_x_power(f)?;
    let ring = CurveRing::new(&fx, bound)?;
    let field = ring.field.clone();
    let p = field.p();
    let gr = GaloisRing::over_field(field.clone(), n)?;
    let gaps = gap_basis(ring.d);
    let g = gaps.len();
    let nn = n as usize;
    let h0 = SemilinearMap::sigma(&FiniteWnModule::free(&gr, 1));
    let mut out = CohomologyWithFrobenius::new(&gr, vec![h0], "witt-cech");
    out.bounds.push(("pole_bound".into(), bound));
    if g == 0 {
        let z = FiniteWnModule::zero_module(&gr);
        out.degrees.push(SemilinearMap::zero(&z, &z, 1));
        return Ok(out);
    }
    let cls = Classifier { ring: &ring, ops: WittOps::new(&ring, p, nn)?, gaps: gaps.clone() };
    let digits: Vec<Vec<Vec<Fq>>> = gaps
        .iter()
        .map(|&(i, e)| {
            let c = ring.monomial(i, e, 1);
            let cp = ring.pth_power(&c).expect("char p");
            cls.classify(cls.ops.teichmuller(&cp, nn))
        })
        .collect::<Result<_>>()?;
    let needed = ring.max_pole_order();
    if needed > bound {
        return Err(Error::RaisePoleBound { bound, needed });
    }
    let total = nn * g;
    let idx = |t: usize, j: usize| t * g + j;
    let scalar = |h: Fq, level: usize| gr.teichmuller(field.frobenius(h, -(level as i64)));
    let mut phi = Mat::zeros(&gr, total, total);
    let mut rel = Mat::zeros(&gr, total, total);
    for t in 0..nn {
        for j in 0..g {
            let col = idx(t, j);
            rel.set(col, col, gr.from_u64(p));
            for (s, level_digits) in digits[j].iter().enumerate() {
                for (k, &h) in level_digits.iter().enumerate() {
                    if h == 0 {
                        continue;
                    }
                    // F(V^t[c_j]) = V^t[c_j^p]
                    if t + s < nn {
                        phi.set(idx(t + s, k), col, scalar(h, t + s));
                    }
                    // p V^t[c_j] = V^{t+1}[c_j^p]
                    if t + 1 + s < nn {
                        let row = idx(t + 1 + s, k);
                        let v = gr.sub(rel.get(row, col), &scalar(h, t + 1 + s));
                        rel.set(row, col, v);
                    }
                }
            }
        }
    }
    let free = FiniteWnModule::free(&gr, total);
    let f_free = SemilinearMap::endo(&free, phi, 1)?;
    let q = free.quotient(&rel);
    if q.module.length() != n * g as u32 {
        return Err(Error::InvalidParameter(format!(
            "presentation has length {} but H^1(W_nO) has length {}",
            q.module.length(),
            n * g as u32
        )));
    }
    out.degrees.push(f_free.induced_on_quotient(&q));
    Ok(out)
}

/// H^0 and H^1 of W_nO_C with Frobenius; reruns at B + d and compares.
pub fn witt_cech_curve(f: &MPoly, n: u32, bound: Option<i64>) -> Result<CohomologyWithFrobenius> {
    if f.nvars() != 3 {
        return Err(Error::InvalidParameter("plane curves have three homogeneous coordinates".into()));
    }
    let d = f
        .homogeneous_degree()
        .filter(|&d| d >= 1 && !f.is_zero())
        .ok_or_else(|| Error::InvalidParameter(format!("{f} is not a nonzero homogeneous form")))?;
    if n == 0 {
        return Err(Error::InvalidParameter("Witt length n must be >= 1".into()));
    }
    if !is_smooth_plane_curve(f, DEFAULT_BUDGET, ExecMode::default())? {
        return Err(Error::NonSmooth(f.to_string()));
    }
    let b = bound.unwrap_or_else(|| default_pole_bound(d, f.field().p(), n)).max(3 * d as i64);
    let first = witt_cech_curve_unchecked(f, n, b)?;
    let second = witt_cech_curve_unchecked(f, n, b + d as i64)?;
    let same = first.degrees.len() == second.degrees.len()
        && first
            .degrees
            .iter()
            .zip(&second.degrees)
            .all(|(x, y)| x.source.factors() == y.source.factors() && x.matrix == y.matrix);
    if !same {
        return Err(Error::StabilizationFailed(b, b + d as i64));
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{hypersurface_coherent, ProjectiveHypersurface};
    use crate::pointcount::{elliptic_aq, unit_root};
    use crate::semilinear::{semilinear_power, stable_nil_decompose};

    fn curve(p: u64, a: u32, s: &str) -> MPoly {
        let k = FqField::shared(p, a).unwrap();
        MPoly::parse(&k, &["x", "y", "z"], s).unwrap()
    }

    #[test]
    fn curve_ring_arithmetic() {
        // y^2 z + x y z + x^3 + z^3: X^3 = -(Y^2 + XY + 1)
        let f = curve(2, 1, "y^2*z + x*y*z + x^3 + z^3");
        let r = CurveRing::new(&f, 1000).unwrap();
        let x = r.monomial(1, 0, 1);
        let x3 = r.mul(&r.mul(&x, &x), &x);
        assert_eq!(x3.0[0].coeff(2), 1);
        assert_eq!(x3.0[0].coeff(0), 1);
        assert_eq!(x3.0[1].coeff(1), 1);
        let z = r.add(&r.monomial(2, -1, 1), &r.monomial(0, 3, 1));
        assert_eq!(r.pth_power(&z).unwrap(), r.mul(&z, &z));
        let y = r.add(&x, &r.monomial(2, 5, 1));
        assert_eq!(r.pth_power(&y).unwrap(), r.mul(&y, &y));
    }

    #[test]
    fn pth_power_odd_characteristic() {
        let f = curve(3, 1, "x^4 + y^4 + z^4 + x*y*z^2");
        let r = CurveRing::new(&f, 1000).unwrap();
        let a = r.add(&r.monomial(3, -2, 2), &r.add(&r.monomial(1, 1, 1), &r.monomial(2, -1, 1)));
        assert_eq!(r.pth_power(&a).unwrap(), r.pow(&a, 3));
    }

    #[test]
    fn gap_counts() {
        for d in 1..7 {
            assert_eq!(gap_basis(d).len(), (d - 1) * (d.max(2) - 2) / 2);
        }
    }

    #[test]
    fn ordinary_elliptic_over_f2() {
        let f = curve(2, 1, "y^2*z + x*y*z + x^3 + z^3");
        for n in 1..=3 {
            let h = witt_cech_curve(&f, n, None).unwrap();
            let h1 = &h.degrees[1];
            assert_eq!(h1.source.factors(), &vec![n; 1][..]);
            let alpha = unit_root(-1, 2, 1, n).unwrap().unwrap();
            assert_eq!(h1.matrix.get(0, 0).0[0], alpha);
        }
    }

    #[test]
    fn supersingular_elliptic_over_f2() {
        let f = curve(2, 1, "y^2*z + y*z^2 + x^3");
        let h = witt_cech_curve(&f, 2, None).unwrap();
        assert_eq!(h.degrees[1].source.length(), 2);
        assert!(stable_nil_decompose(&h.degrees[1]).unwrap().stable.module.is_zero());
    }

    #[test]
    fn base_layer_matches_hasse_witt() {
        for (p, s) in [
            (2, "x^3*y + y^3*z + z^3*x"),
            (3, "x^3*y + y^3*z + z^3*x"),
            (3, "x^4 + y^4 + z^4"),
            (3, "y^2*z - x^3 - x*z^2 - z^3"),
            (2, "y^2*z + y*z^2 + x^3"),
        ] {
            let f = curve(p, 1, s);
            assert!(is_smooth_plane_curve(&f, DEFAULT_BUDGET, ExecMode::Sequential).unwrap(), "{s}");
            let wc = witt_cech_curve(&f, 1, None).unwrap();
            let hw = hypersurface_coherent(&ProjectiveHypersurface::new(&f).unwrap()).unwrap();
            let (a, b) = (&wc.degrees[1], &hw.degrees[1]);
            assert_eq!(a.source.rank(), b.source.rank());
            for r in 1..=a.source.rank().max(1) {
                let ta = semilinear_power(a, r).matrix.trace(&wc.ring);
                let tb = semilinear_power(b, r).matrix.trace(&hw.ring);
                assert_eq!(ta, tb, "{s}, r = {r}");
            }
            assert_eq!(
                stable_nil_decompose(a).unwrap().stable.module.rank(),
                stable_nil_decompose(b).unwrap().stable.module.rank()
            );
        }
    }

    #[test]
    fn coordinate_change_when_x_cubed_is_missing() {
        // no x^3 term; the point (1:0:0) lies on the curve
        let f = curve(3, 1, "y^2*z - x^2*y - x*z^2 - z^3");
        if is_smooth_plane_curve(&f, DEFAULT_BUDGET, ExecMode::Sequential).unwrap() {
            let g = with_x_power(&f).unwrap();
            assert_ne!(g.coeff(&[3, 0, 0]), 0);
            let h = witt_cech_curve(&f, 2, None).unwrap();
            let aq = elliptic_aq(&f, DEFAULT_BUDGET).unwrap();
            match unit_root(aq, 3, 1, 2).unwrap() {
                Some(alpha) => assert_eq!(h.degrees[1].matrix.get(0, 0).0[0], alpha),
                None => assert!(stable_nil_decompose(&h.degrees[1]).unwrap().stable.module.is_zero()),
            }
        }
    }

    #[test]
    fn small_bound_is_reported() {
        let f = curve(2, 1, "y^2*z + x*y*z + x^3 + z^3");
        assert!(matches!(witt_cech_curve_unchecked(&f, 3, 2), Err(Error::RaisePoleBound { .. })));
    }
}
