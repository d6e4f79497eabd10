//! Finite W_n(k)-modules with σ^t-linear endomorphisms.
//!
//! A module is `⊕_i W_n(k)/p^{n_i}` with factors stored in descending
//! order; elements are coordinate vectors reduced mod `p^{n_i}`. A
//! semilinear map acts by `x ↦ A·σ^t(x)`.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::galois::{GaloisRing, GrElem, RingEmbedding};
use crate::linalg::{kernel_free, smith_normal_form, solve_free, Mat};

pub use crate::linalg::{smith_normal_form as snf, Snf};

#[derive(Clone, Debug)]
pub struct FiniteWnModule {
    ring: Arc<GaloisRing>,
    factors: Vec<u32>,
}

impl PartialEq for FiniteWnModule {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.factors == other.factors
    }
}

impl FiniteWnModule {
    /// Factors may be given in any order; zeros are dropped.
    pub fn new(ring: &Arc<GaloisRing>, factors: &[u32]) -> Result<Self> {
        let n = ring.n();
        if let Some(&bad) = factors.iter().find(|&&f| f > n) {
            return Err(Error::InvalidParameter(format!("invariant factor {bad} exceeds n = {n}")));
        }
        let mut f: Vec<u32> = factors.iter().copied().filter(|&x| x > 0).collect();
        f.sort_unstable_by(|a, b| b.cmp(a));
        Ok(FiniteWnModule { ring: ring.clone(), factors: f })
    }

    pub fn free(ring: &Arc<GaloisRing>, rank: usize) -> Self {
        FiniteWnModule { ring: ring.clone(), factors: vec![ring.n(); rank] }
    }

    pub fn zero_module(ring: &Arc<GaloisRing>) -> Self {
        FiniteWnModule { ring: ring.clone(), factors: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    /// Number of cyclic summands.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Length as a W(k)-module, Σ n_i.
    pub fn length(&self) -> u32 {
        self.factors.iter().sum()
    }

    pub fn is_free(&self) -> bool {
        self.factors.iter().all(|&f| f == self.ring.n())
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of free summands W_n(k).
    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&f| f == self.ring.n()).count()
    }

    pub fn reduce(&self, x: &[GrElem]) -> Vec<GrElem> {
        x.iter().zip(&self.factors).map(|(c, &f)| self.ring.reduce_mod_p_pow(c, f)).collect()
    }

    pub fn reduce_mat(&self, m: &Mat) -> Mat {
        let mut out = m.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, self.ring.reduce_mod_p_pow(m.get(i, j), self.factors[i]));
            }
        }
        out
    }

    pub fn zero_vec(&self) -> Vec<GrElem> {
        vec![self.ring.zero(); self.rank()]
    }

    pub fn basis_vec(&self, j: usize) -> Vec<GrElem> {
        let mut v = self.zero_vec();
        v[j] = self.ring.one();
        v
    }

    pub fn is_zero_vec(&self, x: &[GrElem]) -> bool {
        self.reduce(x).iter().all(|c| self.ring.is_zero(c))
    }

    pub fn add(&self, x: &[GrElem], y: &[GrElem]) -> Vec<GrElem> {
        self.reduce(&x.iter().zip(y).map(|(a, b)| self.ring.add(a, b)).collect::<Vec<_>>())
    }

    pub fn scalar_mul(&self, c: &GrElem, x: &[GrElem]) -> Vec<GrElem> {
        self.reduce(&x.iter().map(|a| self.ring.mul(c, a)).collect::<Vec<_>>())
    }

    /// Number of elements, as a power of q: q^{length}.
    pub fn log_q_size(&self) -> u32 {
        self.length()
    }

    /// All elements (small modules only).
    pub fn elements(&self) -> Vec<Vec<GrElem>> {
        let r = &self.ring;
        let a = r.a() as usize;
        let mut out = vec![Vec::new()];
        for &f in &self.factors {
            let m = r.p().pow(f);
            let count = m.pow(a as u32);
            assert!(count * out.len() as u64 <= 1 << 20, "module too large to enumerate");
            let mut next = Vec::with_capacity(out.len() * count as usize);
            for prefix in &out {
                for mut code in 0..count {
                    let coords: Vec<u64> = (0..a)
                        .map(|_| {
                            let c = code % m;
                            code /= m;
                            c
                        })
                        .collect();
                    let mut v = prefix.clone();
                    v.push(GrElem(coords));
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Solve `B c = x` in this module for generators given as the columns of `B`.
    pub fn solve(&self, gens: &Mat, x: &[GrElem]) -> Result<Vec<GrElem>> {
        let r = &self.ring;
        let k = self.rank();
        let rel = diag_p_powers(r, &self.factors);
        let big = rel.hcat(gens);
        let z = solve_free(r, &big, x)?;
        Ok(z[k..].to_vec())
    }

    pub fn contains(&self, gens: &Mat, x: &[GrElem]) -> bool {
        if self.is_zero_vec(x) {
            return true;
        }
        if gens.cols() == 0 {
            return false;
        }
        self.solve(gens, x).is_ok()
    }

    /// Whether the span of `a` lies in the span of `b`.
    pub fn span_contained(&self, a: &Mat, b: &Mat) -> bool {
        a.columns().iter().all(|c| self.contains(b, c))
    }

    /// Structure of the submodule generated by the columns of `gens`.
    pub fn submodule(&self, gens: &Mat) -> SubStructure {
        let r = &self.ring;
        let n = r.n();
        let g = gens.cols();
        if g == 0 {
            return SubStructure {
                module: FiniteWnModule::zero_module(r),
                basis: Mat::zeros(r, self.rank(), 0),
            };
        }
        // x ↦ G x lands in ⊕ p^{n_i} W exactly on the kernel of diag(p^{n-n_i}) G.
        let shifts: Vec<u32> = self.factors.iter().map(|&f| n - f).collect();
        let scaled = gens.scale_rows_by_p_powers(r, &shifts);
        let k = kernel_free(r, &scaled);
        let snf = smith_normal_form(r, &k);
        let mut factors = Vec::new();
        let mut cols = Vec::new();
        for i in 0..g {
            let v = if k.cols() == 0 { 0 } else { snf.diag_valuations.get(i).copied().unwrap_or(n) };
            let order = if k.cols() == 0 || v == n { n } else { v };
            if order == 0 {
                continue;
            }
            let e = snf.u_inv.column(i);
            cols.push((order, self.reduce(&gens.mul_vec(r, &e))));
        }
        cols.sort_by_key(|c| std::cmp::Reverse(c.0));
        for (o, _) in &cols {
            factors.push(*o);
        }
        let basis = Mat::from_columns(r, self.rank(), &cols.into_iter().map(|(_, c)| c).collect::<Vec<_>>());
        SubStructure { module: FiniteWnModule { ring: r.clone(), factors }, basis }
    }

    /// The quotient by the submodule generated by the columns of `gens`.
    pub fn quotient(&self, gens: &Mat) -> QuotientStructure {
        let r = &self.ring;
        let n = r.n();
        let k = self.rank();
        let rel = diag_p_powers(r, &self.factors).hcat(gens);
        let snf = smith_normal_form(r, &rel);
        let mut keep = Vec::new();
        for i in 0..k {
            let v = snf.diag_valuations.get(i).copied().unwrap_or(n);
            if v > 0 {
                keep.push((i, v));
            }
        }
        keep.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let idx: Vec<usize> = keep.iter().map(|x| x.0).collect();
        let factors: Vec<u32> = keep.iter().map(|x| x.1).collect();
        let module = FiniteWnModule { ring: r.clone(), factors };
        let all_cols: Vec<usize> = (0..k).collect();
        let proj = module.reduce_mat(&snf.u.submatrix(&idx, &all_cols));
        let lift = snf.u_inv.submatrix(&all_cols, &idx);
        QuotientStructure { module, proj, lift }
    }
}

/// diag(p^{f_i}) as a square matrix.
fn diag_p_powers(r: &GaloisRing, f: &[u32]) -> Mat {
    let mut m = Mat::zeros(r, f.len(), f.len());
    for (i, &e) in f.iter().enumerate() {
        m.set(i, i, r.p_pow(e));
    }
    m
}

/// A submodule in invariant-factor form: column i of `basis` generates a
/// summand of order p^{factors[i]}.
#[derive(Clone, Debug)]
pub struct SubStructure {
    pub module: FiniteWnModule,
    pub basis: Mat,
}

#[derive(Clone, Debug)]
pub struct QuotientStructure {
    pub module: FiniteWnModule,
    /// Projection M -> Q (linear).
    pub proj: Mat,
    /// Lift of the basis of Q to representatives in M.
    pub lift: Mat,
}

#[derive(Clone, Debug)]
pub struct SemilinearMap {
    pub source: FiniteWnModule,
    pub target: FiniteWnModule,
    pub matrix: Mat,
    pub twist: i64,
}

impl SemilinearMap {
    pub fn new(source: &FiniteWnModule, target: &FiniteWnModule, matrix: Mat, twist: i64) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::LengthMismatch(matrix.rows() * matrix.cols(), target.rank() * source.rank()));
        }
        let r = source.ring();
        for i in 0..target.rank() {
            for j in 0..source.rank() {
                let need = target.factors[i].saturating_sub(source.factors[j]);
                let x = r.reduce_mod_p_pow(matrix.get(i, j), target.factors[i]);
                if r.valuation(&x) < need {
                    return Err(Error::InvalidParameter(format!(
                        "matrix entry ({i},{j}) is not divisible by p^{need}; map not well defined"
                    )));
                }
            }
        }
        let matrix = target.reduce_mat(&matrix);
        Ok(SemilinearMap { source: source.clone(), target: target.clone(), matrix, twist })
    }

    pub fn endo(m: &FiniteWnModule, matrix: Mat, twist: i64) -> Result<Self> {
        Self::new(m, m, matrix, twist)
    }

    pub fn identity(m: &FiniteWnModule) -> Self {
        SemilinearMap { source: m.clone(), target: m.clone(), matrix: Mat::identity(m.ring(), m.rank()), twist: 0 }
    }

    /// The map x ↦ σ(x) on a module.
    pub fn sigma(m: &FiniteWnModule) -> Self {
        SemilinearMap { source: m.clone(), target: m.clone(), matrix: Mat::identity(m.ring(), m.rank()), twist: 1 }
    }

    pub fn zero(source: &FiniteWnModule, target: &FiniteWnModule, twist: i64) -> Self {
        SemilinearMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Mat::zeros(source.ring(), target.rank(), source.rank()),
            twist,
        }
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        self.source.ring()
    }

    pub fn apply(&self, x: &[GrElem]) -> Vec<GrElem> {
        let r = self.ring();
        let sx: Vec<GrElem> = x.iter().map(|c| r.sigma_pow(c, self.twist)).collect();
        self.target.reduce(&self.matrix.mul_vec(r, &sx))
    }

    /// self ∘ other
    pub fn compose(&self, other: &SemilinearMap) -> SemilinearMap {
        let r = self.ring();
        let m = self.matrix.mul(r, &other.matrix.sigma(r, self.twist));
        SemilinearMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.target.reduce_mat(&m),
            twist: self.twist + other.twist,
        }
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// Equality as maps (same modules and twist, same values on generators).
    pub fn same_map(&self, other: &SemilinearMap) -> bool {
        let a = self.ring().a() as i64;
        if self.source != other.source || self.target != other.target {
            return false;
        }
        if (self.twist - other.twist).rem_euclid(a) != 0 {
            return false;
        }
        (0..self.source.rank()).all(|j| {
            let e = self.source.basis_vec(j);
            self.apply(&e) == other.apply(&e)
        })
    }

    /// The matrix of a map whose twist is a multiple of a.
    pub fn linear_matrix(&self) -> Result<&Mat> {
        if self.twist.rem_euclid(self.ring().a() as i64) != 0 {
            return Err(Error::NotLinear(self.twist));
        }
        Ok(&self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero(self.ring())
    }

    /// Image, in invariant-factor form.
    pub fn image(&self) -> SubStructure {
        self.target.submodule(&self.matrix)
    }

    /// Kernel, in invariant-factor form: σ^{-t}(ker A).
    pub fn kernel(&self) -> SubStructure {
        let r = self.ring();
        let n = r.n();
        let src = &self.source;
        // y with A y = 0 in the target, y a representative in W^k.
        let shifts: Vec<u32> = self.target.factors().iter().map(|&f| n - f).collect();
        let scaled = self.matrix.scale_rows_by_p_powers(r, &shifts);
        let k = kernel_free(r, &scaled);
        let gens = k.sigma(r, -self.twist);
        src.submodule(&gens)
    }

    pub fn is_bijective(&self) -> bool {
        self.source == self.target && self.kernel().module.is_zero()
    }

    /// Whether some power is zero.
    pub fn is_nilpotent(&self) -> bool {
        semilinear_power(self, self.source.length().max(1) as usize).is_zero()
    }

    /// Restriction to an invariant submodule (given in invariant-factor form).
    pub fn restrict(&self, sub: &SubStructure) -> Result<SemilinearMap> {
        let r = self.ring();
        let mut cols = Vec::with_capacity(sub.basis.cols());
        for b in sub.basis.columns() {
            let img = self.apply(&b);
            let c = self.source.solve(&sub.basis, &img)?;
            cols.push(sub.module.reduce(&c));
        }
        let m = Mat::from_columns(r, sub.module.rank(), &cols);
        Ok(SemilinearMap { source: sub.module.clone(), target: sub.module.clone(), matrix: m, twist: self.twist })
    }

    /// The induced map on a quotient by an invariant submodule.
    pub fn induced_on_quotient(&self, q: &QuotientStructure) -> SemilinearMap {
        let r = self.ring();
        // y ↦ P A σ^t(L y)
        let m = q.proj.mul(r, &self.matrix).mul(r, &q.lift.sigma(r, self.twist));
        SemilinearMap {
            source: q.module.clone(),
            target: q.module.clone(),
            matrix: q.module.reduce_mat(&m),
            twist: self.twist,
        }
    }

    /// Twisted trace of a linear map (twist ≡ 0 mod a).
    pub fn trace(&self) -> Result<GrElem> {
        Ok(self.linear_matrix()?.trace(self.ring()))
    }

    pub fn format(&self) -> String {
        format!(
            "factors: {:?}\ntwist: {}\nmatrix:\n{}",
            self.target.factors(),
            self.twist,
            self.matrix.format(self.ring())
        )
    }
}

/// Block-diagonal sum of two endomorphisms with the same twist.
pub fn direct_sum(f: &SemilinearMap, g: &SemilinearMap) -> Result<SemilinearMap> {
    if f.twist != g.twist || !f.is_endo() || !g.is_endo() {
        return Err(Error::InvalidParameter("direct sum needs endomorphisms with equal twist".into()));
    }
    let r = f.ring();
    let k1 = f.source.rank();
    let mut tagged: Vec<(u32, usize)> = f.source.factors().iter().copied().zip(0..).collect();
    tagged.extend(g.source.factors().iter().copied().zip(k1..));
    tagged.sort_by_key(|t| std::cmp::Reverse(t.0));
    let all: Vec<u32> = tagged.iter().map(|t| t.0).collect();
    let m = FiniteWnModule::new(r, &all)?;
    let entry = |i: usize, j: usize| -> GrElem {
        match (i < k1, j < k1) {
            (true, true) => f.matrix.get(i, j).clone(),
            (false, false) => g.matrix.get(i - k1, j - k1).clone(),
            _ => r.zero(),
        }
    };
    let mut a = Mat::zeros(r, m.rank(), m.rank());
    for (i, ti) in tagged.iter().enumerate() {
        for (j, tj) in tagged.iter().enumerate() {
            a.set(i, j, entry(ti.1, tj.1));
        }
    }
    Ok(SemilinearMap { source: m.clone(), target: m, matrix: a, twist: f.twist })
}

/// F^r = A σ^t(A) ... σ^{(r-1)t}(A), twist r t.
pub fn semilinear_power(f: &SemilinearMap, r: usize) -> SemilinearMap {
    assert!(f.is_endo(), "power of a non-endomorphism");
    let mut acc = SemilinearMap::identity(&f.source);
    for _ in 0..r {
        acc = f.compose(&acc);
    }
    acc
}

/// The decomposition M = M_s ⊕ M_nil.
#[derive(Clone, Debug)]
pub struct StableNil {
    pub exponent: usize,
    pub stable: SubStructure,
    pub f_stable: SemilinearMap,
    pub v_stable: SemilinearMap,
    pub nil: SubStructure,
    pub f_nil: SemilinearMap,
}

impl StableNil {
    /// M_s + M_nil = M with lengths adding up, so the sum is direct.
    pub fn is_direct_sum(&self, m: &FiniteWnModule) -> bool {
        let both = self.stable.basis.hcat(&self.nil.basis);
        self.stable.module.length() + self.nil.module.length() == m.length() && m.quotient(&both).module.is_zero()
    }
}

pub fn stable_nil_decompose(f: &SemilinearMap) -> Result<StableNil> {
    if !f.is_endo() {
        return Err(Error::InvalidParameter("stable part needs an endomorphism".into()));
    }
    let big_n = f.source.length() as usize;
    let fnn = semilinear_power(f, big_n);
    let stable = fnn.image();
    let nil = fnn.kernel();
    let f_stable = f.restrict(&stable)?;
    let f_nil = f.restrict(&nil)?;
    let v_stable = verschiebung_on_stable(&f_stable)?;
    Ok(StableNil { exponent: big_n, stable, f_stable, v_stable, nil, f_nil })
}

/// p·F^{-1} for a bijective F, as a σ^{-t}-linear map.
pub fn verschiebung_on_stable(f: &SemilinearMap) -> Result<SemilinearMap> {
    let r = f.ring();
    let m = &f.source;
    let p = r.from_u64(r.p());
    let mut cols = Vec::with_capacity(m.rank());
    for j in 0..m.rank() {
        // A y = e_j, x = σ^{-t}(y)
        let y = m.solve(&f.matrix, &m.basis_vec(j)).map_err(|_| Error::NotStable)?;
        let x: Vec<GrElem> = y.iter().map(|c| r.mul(&p, &r.sigma_pow(c, -f.twist))).collect();
        cols.push(m.reduce(&x));
    }
    let matrix = Mat::from_columns(r, m.rank(), &cols);
    Ok(SemilinearMap { source: m.clone(), target: m.clone(), matrix, twist: -f.twist })
}

/// σ_* applied k times: same coordinates, matrix σ^k entrywise.
pub fn sigma_twist(f: &SemilinearMap, k: i64) -> SemilinearMap {
    let r = f.ring();
    SemilinearMap {
        source: f.source.clone(),
        target: f.target.clone(),
        matrix: f.matrix.sigma(r, k),
        twist: f.twist,
    }
}

/// Extension of scalars to W_n(F_{q^s}).
pub fn base_change(f: &SemilinearMap, s: u32) -> Result<SemilinearMap> {
    let r = f.ring();
    if s == 1 {
        return Ok(f.clone());
    }
    let big = GaloisRing::new(r.p(), r.n(), r.a() * s)?;
    let emb = RingEmbedding::new(r, &big)?;
    base_change_with(f, &emb)
}

pub fn base_change_with(f: &SemilinearMap, emb: &RingEmbedding) -> Result<SemilinearMap> {
    let big = &emb.target;
    let src = FiniteWnModule::new(big, f.source.factors())?;
    let tgt = FiniteWnModule::new(big, f.target.factors())?;
    let rows: Vec<Vec<GrElem>> = (0..f.matrix.rows())
        .map(|i| (0..f.matrix.cols()).map(|j| emb.map(f.matrix.get(i, j))).collect())
        .collect();
    let m = Mat::from_rows(rows, f.matrix.cols());
    Ok(SemilinearMap { source: src, target: tgt, matrix: m, twist: f.twist })
}

/// The fixed points of F on a stable free module, over W_n(F_{q^s}).
#[derive(Clone, Debug)]
pub struct AswFixedPoints {
    /// Rank over Z/p^n.
    pub rank: usize,
    pub generators: Vec<Vec<GrElem>>,
    pub s_used: u32,
    pub ring: Arc<GaloisRing>,
}

pub fn asw_fixed_points(f: &SemilinearMap, s_max: u32) -> Result<AswFixedPoints> {
    let r = f.ring();
    if !f.is_endo() {
        return Err(Error::InvalidParameter("fixed points need an endomorphism".into()));
    }
    if !f.source.is_free() || !f.is_bijective() {
        return Err(Error::NotStable);
    }
    let rank = f.source.rank();
    if rank == 0 {
        return Ok(AswFixedPoints { rank: 0, generators: Vec::new(), s_used: 1, ring: r.clone() });
    }
    let zpn = GaloisRing::new(r.p(), r.n(), 1)?;
    for s in 1..=s_max {
        let g = base_change(f, s)?;
        let big = g.ring().clone();
        let a = big.a() as usize;
        let dim = rank * a;
        let sig = big.sigma_matrix(g.twist);
        let mut l = Mat::zeros(&zpn, dim, dim);
        for i in 0..rank {
            for j in 0..rank {
                let mm = big.mul_matrix(g.matrix.get(i, j));
                for u in 0..a {
                    for v in 0..a {
                        // (Mul(A_ij) S_σ)[u][v]
                        let mut acc = 0u64;
                        for w in 0..a {
                            acc = crate::arith::add_mod(
                                acc,
                                crate::arith::mul_mod(mm[u][w], sig[w][v], big.modulus_int()),
                                big.modulus_int(),
                            );
                        }
                        let delta = u64::from(i == j && u == v);
                        let val = crate::arith::sub_mod(delta, acc, big.modulus_int());
                        l.set(i * a + u, j * a + v, zpn.from_u64(val));
                    }
                }
            }
        }
        let snf = smith_normal_form(&zpn, &l);
        let n = zpn.n();
        let orders: Vec<u32> = (0..dim)
            .map(|i| snf.diag_valuations.get(i).copied().unwrap_or(n))
            .filter(|&v| v > 0)
            .collect();
        if orders.len() == rank && orders.iter().all(|&v| v == n) {
            let generators = (0..dim)
                .filter(|&i| snf.diag_valuations.get(i).copied().unwrap_or(n) == n)
                .map(|i| {
                    let col = snf.v.column(i);
                    (0..rank)
                        .map(|blk| big.from_coords(&col[blk * a..(blk + 1) * a].iter().map(|e| e.0[0]).collect::<Vec<_>>()))
                        .collect()
                })
                .collect();
            return Ok(AswFixedPoints { rank, generators, s_used: s, ring: big });
        }
    }
    Err(Error::SmaxExhausted(s_max))
}

#[derive(Clone, Debug)]
pub struct DieudonneModule {
    pub module: FiniteWnModule,
    pub f: SemilinearMap,
    pub v: SemilinearMap,
}

impl DieudonneModule {
    /// From a bijective F, with V = p F^{-1}.
    pub fn from_stable(f: &SemilinearMap) -> Result<Self> {
        let v = verschiebung_on_stable(f)?;
        Ok(DieudonneModule { module: f.source.clone(), f: f.clone(), v })
    }

    pub fn new(f: SemilinearMap, v: SemilinearMap) -> Self {
        DieudonneModule { module: f.source.clone(), f, v }
    }

    /// FV = VF = p.
    pub fn check_relations(&self) -> bool {
        let r = self.module.ring();
        let p = r.from_u64(r.p());
        let fv = self.f.compose(&self.v);
        let vf = self.v.compose(&self.f);
        (0..self.module.rank()).all(|j| {
            let e = self.module.basis_vec(j);
            let pe = self.module.scalar_mul(&p, &e);
            fv.apply(&e) == pe && vf.apply(&e) == pe
        })
    }
}

/// A formal combination Σ ±[M] of stable free modules.
#[derive(Clone, Debug)]
pub struct KClass {
    pub ring: Arc<GaloisRing>,
    pub terms: Vec<(i8, SemilinearMap)>,
}

impl KClass {
    pub fn new(ring: &Arc<GaloisRing>) -> Self {
        KClass { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn push(&mut self, sign: i8, f: SemilinearMap) {
        self.terms.push((sign, f));
    }
}

/// Σ sign · Tr(F^{ar} | M), an element of Z/p^n.
pub fn kclass_trace(c: &KClass, r: usize) -> Result<u64> {
    let ring = &c.ring;
    let a = ring.a() as usize;
    let mut acc = ring.zero();
    for (deg, (sign, f)) in c.terms.iter().enumerate() {
        if !f.source.is_free() {
            return Err(Error::NotFree { degree: deg, factors: f.source.factors().to_vec() });
        }
        if !f.is_bijective() {
            return Err(Error::NotStable);
        }
        let g = semilinear_power(f, a * r);
        let t = g.trace()?;
        acc = if *sign >= 0 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
    }
    if !ring.is_in_prime_subring(&acc) {
        return Err(Error::InvalidParameter(format!("trace {} is not fixed by σ", ring.format(&acc))));
    }
    Ok(acc.0[0])
}

/// The direct-limit model colim(M -F-> M -F-> ...) = M / ker F^N with the induced map.
pub fn stable_colimit(f: &SemilinearMap) -> Result<SemilinearMap> {
    let big_n = f.source.length() as usize;
    let nil = semilinear_power(f, big_n).kernel();
    let q = f.source.quotient(&nil.basis);
    Ok(f.induced_on_quotient(&q))
}

/// Random module with factors in [1, n] and rank in [0, max_rank].
pub fn random_module<R: Rng>(ring: &Arc<GaloisRing>, max_rank: usize, rng: &mut R) -> FiniteWnModule {
    let rank = rng.gen_range(0..=max_rank);
    let f: Vec<u32> = (0..rank).map(|_| rng.gen_range(1..=ring.n())).collect();
    FiniteWnModule::new(ring, &f).expect("factors in range")
}

pub fn random_elem<R: Rng>(ring: &GaloisRing, rng: &mut R) -> GrElem {
    let c: Vec<u64> = (0..ring.a()).map(|_| rng.gen_range(0..ring.modulus_int())).collect();
    ring.from_coords(&c)
}

/// Random well-defined matrix from `src` to `tgt`, with a bias towards non-units.
pub fn random_matrix<R: Rng>(src: &FiniteWnModule, tgt: &FiniteWnModule, rng: &mut R) -> Mat {
    let r = src.ring();
    let mut m = Mat::zeros(r, tgt.rank(), src.rank());
    for i in 0..tgt.rank() {
        for j in 0..src.rank() {
            let need = tgt.factors()[i].saturating_sub(src.factors()[j]);
            let extra = if rng.gen_bool(0.4) { 1 } else { 0 };
            let x = r.mul(&random_elem(r, rng), &r.p_pow(need + extra));
            m.set(i, j, x);
        }
    }
    tgt.reduce_mat(&m)
}

pub fn random_endo<R: Rng>(m: &FiniteWnModule, twist: i64, rng: &mut R) -> SemilinearMap {
    SemilinearMap { source: m.clone(), target: m.clone(), matrix: random_matrix(m, m, rng), twist }
}

/// Short exact sequence 0 → M′ → M → M″ → 0 of modules with F, given by
/// an F-stable submodule of M.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub f: SemilinearMap,
    pub sub: SubStructure,
    pub f_sub: SemilinearMap,
    pub quotient: QuotientStructure,
    pub f_quot: SemilinearMap,
}

impl ShortExact {
    pub fn new(f: &SemilinearMap, sub_gens: &Mat) -> Result<Self> {
        let sub = f.source.submodule(sub_gens);
        let f_sub = f.restrict(&sub)?;
        let quotient = f.source.quotient(&sub.basis);
        let f_quot = f.induced_on_quotient(&quotient);
        Ok(ShortExact { f: f.clone(), sub, f_sub, quotient, f_quot })
    }

    /// Whether 0 → M′_s → M_s → M″_s → 0 is exact.
    pub fn stable_parts_exact(&self) -> Result<bool> {
        let r = self.f.ring();
        let m = &self.f.source;
        let s = stable_nil_decompose(&self.f)?.stable;
        let s1 = stable_nil_decompose(&self.f_sub)?.stable;
        let s2 = stable_nil_decompose(&self.f_quot)?.stable;
        let q = &self.quotient.module;
        // i(M′_s) ⊂ M_s
        let inc = m.reduce_mat(&self.sub.basis.mul(r, &s1.basis));
        if !m.span_contained(&inc, &s.basis) {
            return Ok(false);
        }
        // π(M_s) = M″_s
        let proj = q.reduce_mat(&self.quotient.proj.mul(r, &s.basis));
        if !q.span_contained(&proj, &s2.basis) || !q.span_contained(&s2.basis, &proj) {
            return Ok(false);
        }
        // with the above, exactness in the middle is length additivity
        Ok(s.module.length() == s1.module.length() + s2.module.length())
    }
}

/// A random short exact sequence with F: either an extension with a block
/// upper-triangular F, or one of the F-stable submodules F^j(M), ker F^j, p^e M.
pub fn random_short_exact<R: Rng>(ring: &Arc<GaloisRing>, max_rank: usize, rng: &mut R) -> Result<ShortExact> {
    let n = ring.n();
    match rng.gen_range(0..4) {
        0 => {
            let m1 = random_module(ring, max_rank, rng);
            let m2 = random_module(ring, max_rank, rng);
            let mut tagged: Vec<(u32, bool)> = m1.factors().iter().map(|&f| (f, true)).collect();
            tagged.extend(m2.factors().iter().map(|&f| (f, false)));
            tagged.sort_by_key(|t| std::cmp::Reverse(t.0));
            let all: Vec<u32> = tagged.iter().map(|t| t.0).collect();
            let m = FiniteWnModule::new(ring, &all)?;
            let mut a = random_matrix(&m, &m, rng);
            // no map from M′ into the M″ coordinates
            for i in 0..m.rank() {
                for j in 0..m.rank() {
                    if !tagged[i].1 && tagged[j].1 {
                        a.set(i, j, ring.zero());
                    }
                }
            }
            let f = SemilinearMap::endo(&m, a, 1)?;
            let cols: Vec<Vec<GrElem>> =
                (0..m.rank()).filter(|&j| tagged[j].1).map(|j| m.basis_vec(j)).collect();
            ShortExact::new(&f, &Mat::from_columns(ring, m.rank(), &cols))
        }
        k => {
            let m = random_module(ring, max_rank, rng);
            let f = random_endo(&m, 1, rng);
            let gens = match k {
                1 => semilinear_power(&f, rng.gen_range(1..=2)).image().basis,
                2 => semilinear_power(&f, rng.gen_range(1..=2)).kernel().basis,
                _ => {
                    let e = rng.gen_range(0..=n);
                    Mat::identity(ring, m.rank()).scale(ring, &ring.p_pow(e))
                }
            };
            ShortExact::new(&f, &gens)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn span_set(m: &FiniteWnModule, sub: &SubStructure) -> HashSet<Vec<GrElem>> {
        let coeffs = sub.module.elements();
        coeffs.iter().map(|c| m.reduce(&sub.basis.mul_vec(m.ring(), c))).collect()
    }

    #[test]
    fn power_example_gr4_2() {
        let r = GaloisRing::new(2, 2, 2).unwrap();
        let m = FiniteWnModule::free(&r, 1);
        let f = SemilinearMap::endo(&m, Mat::from_rows(vec![vec![r.generator()]], 1), 1).unwrap();
        let g = semilinear_power(&f, 2);
        assert_eq!(g.twist, 2);
        assert_eq!(*g.matrix.get(0, 0), r.one());
        assert_eq!(semilinear_power(&f, 1).matrix, f.matrix);
        let z = SemilinearMap::zero(&m, &m, 1);
        assert!(semilinear_power(&z, 3).is_zero());
    }

    #[test]
    fn stable_nil_example() {
        let r = GaloisRing::new(2, 2, 1).unwrap();
        let m = FiniteWnModule::free(&r, 2);
        let f = SemilinearMap::endo(&m, Mat::from_ints(&r, &[vec![1, 1], vec![0, 2]]), 1).unwrap();
        let d = stable_nil_decompose(&f).unwrap();
        assert_eq!(d.stable.module.factors(), &[2]);
        assert_eq!(d.nil.module.factors(), &[2]);
        let s = span_set(&m, &d.stable);
        let expect: HashSet<_> = (0..4).map(|c| vec![r.from_u64(c), r.zero()]).collect();
        assert_eq!(s, expect);
        let nil = span_set(&m, &d.nil);
        let expect: HashSet<_> = (0..4).map(|c| vec![r.from_u64(c), r.from_u64(c)]).collect();
        // ker F^2 = span{(1, 1)} up to sign: (c, c) for c in Z/4 vs (c, -c)
        let alt: HashSet<_> = (0..4).map(|c| vec![r.from_u64(c), r.from_int(-(c as i64))]).collect();
        assert!(nil == expect || nil == alt, "{nil:?}");
        // F on M_s is 1, and F is nilpotent on M_nil
        assert_eq!(*d.f_stable.matrix.get(0, 0), r.one());
        assert!(d.f_nil.is_nilpotent());
    }

    #[test]
    fn nil_kernel_matches_brute_force() {
        let r = GaloisRing::new(2, 2, 1).unwrap();
        let m = FiniteWnModule::free(&r, 2);
        let f = SemilinearMap::endo(&m, Mat::from_ints(&r, &[vec![1, 1], vec![0, 2]]), 1).unwrap();
        let d = stable_nil_decompose(&f).unwrap();
        let f2 = semilinear_power(&f, 2);
        let brute: HashSet<_> = m.elements().into_iter().filter(|x| m.is_zero_vec(&f2.apply(x))).collect();
        assert_eq!(span_set(&m, &d.nil), brute);
        assert!(brute.contains(&vec![r.from_u64(1), r.from_u64(1)]));
    }

    #[test]
    fn trivial_decompositions() {
        let r = GaloisRing::new(3, 2, 2).unwrap();
        let m = FiniteWnModule::new(&r, &[2, 1]).unwrap();
        let id = SemilinearMap::endo(&m, Mat::identity(&r, 2), 1).unwrap();
        let d = stable_nil_decompose(&id).unwrap();
        assert_eq!(d.stable.module.factors(), &[2, 1]);
        assert!(d.nil.module.is_zero());
        let z = SemilinearMap::zero(&m, &m, 1);
        let d = stable_nil_decompose(&z).unwrap();
        assert!(d.stable.module.is_zero());
        assert_eq!(d.nil.module.factors(), &[2, 1]);
    }

    #[test]
    fn well_definedness_enforced() {
        let r = GaloisRing::new(2, 2, 1).unwrap();
        let m = FiniteWnModule::new(&r, &[2, 1]).unwrap();
        // entry (0, 1) maps Z/2 into Z/4 and must be divisible by 2
        assert!(SemilinearMap::endo(&m, Mat::from_ints(&r, &[vec![1, 1], vec![0, 1]]), 1).is_err());
        assert!(SemilinearMap::endo(&m, Mat::from_ints(&r, &[vec![1, 2], vec![1, 1]]), 1).is_ok());
    }

    #[test]
    fn stable_nil_against_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for (p, n, a) in [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1), (3, 1, 2)] {
            let r = GaloisRing::new(p, n, a).unwrap();
            for _ in 0..15 {
                let m = random_module(&r, 2, &mut rng);
                let f = random_endo(&m, 1, &mut rng);
                let d = stable_nil_decompose(&f).unwrap();
                let els = m.elements();
                // F^j(M) by iterated images of sets
                let mut img: HashSet<Vec<GrElem>> = els.iter().cloned().collect();
                for _ in 0..=m.length() {
                    img = img.iter().map(|x| f.apply(x)).collect();
                }
                assert_eq!(span_set(&m, &d.stable), img);
                let fnn = semilinear_power(&f, m.length() as usize);
                let ker: HashSet<_> = els.iter().filter(|x| m.is_zero_vec(&fnn.apply(x))).cloned().collect();
                assert_eq!(span_set(&m, &d.nil), ker);
                assert!(d.is_direct_sum(&m));
                assert!(d.f_stable.is_bijective());
                assert!(d.f_nil.is_nilpotent());
            }
        }
    }

    #[test]
    fn dieudonne_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let r = GaloisRing::new(2, 3, 2).unwrap();
        for _ in 0..20 {
            let m = random_module(&r, 3, &mut rng);
            let f = random_endo(&m, 1, &mut rng);
            let d = stable_nil_decompose(&f).unwrap();
            let dm = DieudonneModule::new(d.f_stable.clone(), d.v_stable.clone());
            assert!(dm.check_relations());
        }
    }

    #[test]
    fn sigma_twist_commutes_with_stable_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let r = GaloisRing::new(2, 2, 2).unwrap();
        for _ in 0..30 {
            let m = random_module(&r, 3, &mut rng);
            let f = random_endo(&m, 1, &mut rng);
            let tw = sigma_twist(&f, 1);
            let lhs = stable_nil_decompose(&tw).unwrap();
            let rhs = sigma_twist(&stable_nil_decompose(&f).unwrap().f_stable, 1);
            assert_eq!(lhs.stable.module.factors(), rhs.source.factors());
            let twice = sigma_twist(&sigma_twist(&f, 1), 1);
            assert_eq!(twice.matrix, f.matrix.sigma(&r, 2));
        }
        let r1 = GaloisRing::new(3, 2, 1).unwrap();
        let m = FiniteWnModule::free(&r1, 2);
        let f = random_endo(&m, 1, &mut rng);
        assert_eq!(sigma_twist(&f, 1).matrix, f.matrix);
    }

    #[test]
    fn base_change_preserves_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = GaloisRing::new(2, 2, 1).unwrap();
        for _ in 0..20 {
            let m = random_module(&r, 3, &mut rng);
            let f = random_endo(&m, 1, &mut rng);
            assert_eq!(base_change(&f, 1).unwrap().matrix, f.matrix);
            for s in [2, 3] {
                let g = base_change(&f, s).unwrap();
                assert_eq!(g.source.factors(), f.source.factors());
                let lhs = stable_nil_decompose(&g).unwrap().stable.module;
                let rhs = stable_nil_decompose(&f).unwrap().stable.module;
                assert_eq!(lhs.factors(), rhs.factors());
            }
        }
    }

    #[test]
    fn asw_examples() {
        let r = GaloisRing::new(2, 1, 1).unwrap();
        let m = FiniteWnModule::free(&r, 1);
        let f = SemilinearMap::sigma(&m);
        let fx = asw_fixed_points(&f, 4).unwrap();
        assert_eq!((fx.rank, fx.s_used), (1, 1));
        let zero = FiniteWnModule::zero_module(&r);
        assert_eq!(asw_fixed_points(&SemilinearMap::sigma(&zero), 4).unwrap().rank, 0);
        // x = 3 σ(x) over Z/4 needs F_4: the norm 3^2 = 1
        let r4 = GaloisRing::new(2, 2, 1).unwrap();
        let m = FiniteWnModule::free(&r4, 1);
        let f = SemilinearMap::endo(&m, Mat::from_ints(&r4, &[vec![3]]), 1).unwrap();
        let fx = asw_fixed_points(&f, 4).unwrap();
        assert_eq!((fx.rank, fx.s_used), (1, 2));
        for g in &fx.generators {
            let big = &fx.ring;
            assert_eq!(big.mul(&big.from_u64(3), &big.sigma(&g[0])), g[0]);
        }
        assert_eq!(asw_fixed_points(&f, 1).unwrap_err(), Error::SmaxExhausted(1));
    }

    #[test]
    fn kclass_examples() {
        let r = GaloisRing::new(3, 2, 2).unwrap();
        let m = FiniteWnModule::free(&r, 1);
        let mut c = KClass::new(&r);
        c.push(1, SemilinearMap::sigma(&m));
        for k in 1..4 {
            assert_eq!(kclass_trace(&c, k).unwrap(), 1);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mf = FiniteWnModule::free(&r, 2);
        let mut f = random_endo(&mf, 1, &mut rng);
        while !f.is_bijective() {
            f = random_endo(&mf, 1, &mut rng);
        }
        let mut c = KClass::new(&r);
        c.push(1, f.clone());
        c.push(-1, f);
        assert_eq!(kclass_trace(&c, 2).unwrap(), 0);
        let z = GaloisRing::new(5, 2, 1).unwrap();
        let m = FiniteWnModule::free(&z, 1);
        let mut c = KClass::new(&z);
        c.push(1, SemilinearMap::endo(&m, Mat::from_ints(&z, &[vec![7]]), 1).unwrap());
        assert_eq!(kclass_trace(&c, 1).unwrap(), 7);
        let bad = FiniteWnModule::new(&z, &[1]).unwrap();
        let mut c = KClass::new(&z);
        c.push(1, SemilinearMap::sigma(&bad));
        assert!(matches!(kclass_trace(&c, 1), Err(Error::NotFree { .. })));
    }

    #[test]
    fn traces_lie_in_prime_subring() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let r = GaloisRing::new(2, 3, 3).unwrap();
        for _ in 0..20 {
            let m = FiniteWnModule::free(&r, 2);
            let f = random_endo(&m, 1, &mut rng);
            let d = stable_nil_decompose(&f).unwrap();
            if !d.stable.module.is_free() {
                continue;
            }
            let mut c = KClass::new(&r);
            c.push(1, d.f_stable.clone());
            kclass_trace(&c, 1).unwrap();
        }
    }

    #[test]
    fn colimit_agrees_with_stable_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        let r = GaloisRing::new(2, 2, 2).unwrap();
        for _ in 0..30 {
            let m = random_module(&r, 3, &mut rng);
            let f = random_endo(&m, 1, &mut rng);
            let col = stable_colimit(&f).unwrap();
            let d = stable_nil_decompose(&f).unwrap();
            assert_eq!(col.source.factors(), d.stable.module.factors());
            assert!(col.is_bijective());
        }
        let m = FiniteWnModule::free(&r, 2);
        let id = SemilinearMap::endo(&m, Mat::identity(&r, 2), 1).unwrap();
        assert_eq!(stable_colimit(&id).unwrap().source, m);
        let z = SemilinearMap::zero(&m, &m, 1);
        assert!(stable_colimit(&z).unwrap().source.is_zero());
    }

    #[test]
    fn quotient_and_submodule_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = GaloisRing::new(2, 3, 1).unwrap();
        for _ in 0..30 {
            let m = random_module(&r, 3, &mut rng);
            let g = random_matrix(&m, &m, &mut rng);
            let sub = m.submodule(&g);
            let q = m.quotient(&g);
            assert_eq!(sub.module.length() + q.module.length(), m.length());
            let brute: HashSet<_> = m
                .elements()
                .iter()
                .map(|x| m.reduce(&g.mul_vec(&r, x)))
                .collect();
            assert_eq!(span_set(&m, &sub), brute);
        }
    }

    #[test]
    fn stable_parts_of_short_exact_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n, a) in [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1)] {
            let r = GaloisRing::new(p, n, a).unwrap();
            for _ in 0..25 {
                let ses = random_short_exact(&r, 3, &mut rng).unwrap();
                assert_eq!(
                    ses.sub.module.length() + ses.quotient.module.length(),
                    ses.f.source.length()
                );
                assert!(ses.stable_parts_exact().unwrap());
            }
        }
    }

    #[test]
    fn exactness_check_detects_a_wrong_map() {
        // M = (Z/4)^2 with F = diag(1, 0); the sequence with the nil summand as M″ is exact,
        // but the induced map on a quotient from the wrong F is not
        let r = GaloisRing::new(2, 2, 1).unwrap();
        let m = FiniteWnModule::free(&r, 2);
        let f = SemilinearMap::endo(&m, Mat::from_ints(&r, &[vec![1, 0], vec![0, 0]]), 1).unwrap();
        let sub = Mat::from_ints(&r, &[vec![1], vec![0]]);
        let mut ses = ShortExact::new(&f, &sub).unwrap();
        assert!(ses.stable_parts_exact().unwrap());
        ses.f_quot = SemilinearMap::identity(&ses.quotient.module);
        assert!(!ses.stable_parts_exact().unwrap());
    }
}
