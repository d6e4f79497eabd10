//! Matrices over GR(p^n, a) and Smith normal form over the chain ring.

use crate::error::{Error, Result};
use crate::galois::{GaloisRing, GrElem};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<GrElem>,
}

impl Mat {
    pub fn zeros(r: &GaloisRing, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![r.zero(); rows * cols] }
    }

    pub fn identity(r: &GaloisRing, k: usize) -> Mat {
        let mut m = Mat::zeros(r, k, k);
        for i in 0..k {
            m.set(i, i, r.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GrElem>>, cols: usize) -> Mat {
        let nrows = rows.len();
        let data: Vec<GrElem> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), nrows * cols);
        Mat { rows: nrows, cols, data }
    }

    /// Build from integer entries (constants in Z/p^n).
    pub fn from_ints(r: &GaloisRing, rows: &[Vec<i64>]) -> Mat {
        let cols = rows.first().map_or(0, |x| x.len());
        Mat::from_rows(rows.iter().map(|row| row.iter().map(|&c| r.from_int(c)).collect()).collect(), cols)
    }

    pub fn from_columns(r: &GaloisRing, rows: usize, cols: &[Vec<GrElem>]) -> Mat {
        let mut m = Mat::zeros(r, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &GrElem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: GrElem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<GrElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<GrElem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<GrElem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self, r: &GaloisRing) -> bool {
        self.data.iter().all(|x| r.is_zero(x))
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, r: &GaloisRing, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let v = r.add(cur, &r.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, r: &GaloisRing, v: &[GrElem]) -> Vec<GrElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(self.get(i, k), &v[k])))
            })
            .collect()
    }

    pub fn add(&self, r: &GaloisRing, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| r.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, r: &GaloisRing, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| r.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, r: &GaloisRing, c: &GrElem) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| r.mul(a, c)).collect() }
    }

    /// Entrywise σ^k.
    pub fn sigma(&self, r: &GaloisRing, k: i64) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| r.sigma_pow(a, k)).collect() }
    }

    /// Multiply row i by p^{e_i} (entries of `e` may be >= n, giving zero).
    pub fn scale_rows_by_p_powers(&self, r: &GaloisRing, e: &[u32]) -> Mat {
        let mut m = self.clone();
        for i in 0..self.rows {
            let c = r.p_pow(e[i]);
            for j in 0..self.cols {
                let v = r.mul(m.get(i, j), &c);
                m.set(i, j, v);
            }
        }
        m
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = self.row(i);
            row.extend(other.row(i));
            rows.push(row);
        }
        Mat::from_rows(rows, self.cols + other.cols)
    }

    /// Rows `rs` and columns `cs`.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Mat {
        Mat::from_rows(
            rs.iter().map(|&i| cs.iter().map(|&j| self.get(i, j).clone()).collect()).collect(),
            cs.len(),
        )
    }

    pub fn trace(&self, r: &GaloisRing) -> GrElem {
        (0..self.rows.min(self.cols)).fold(r.zero(), |acc, i| r.add(&acc, self.get(i, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: &GaloisRing, i: usize, c: &GrElem) {
        for j in 0..self.cols {
            let v = r.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    fn scale_col(&mut self, r: &GaloisRing, j: usize, c: &GrElem) {
        for i in 0..self.rows {
            let v = r.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    /// row_i += c * row_k
    fn add_row_multiple(&mut self, r: &GaloisRing, i: usize, k: usize, c: &GrElem) {
        for j in 0..self.cols {
            let v = r.add(self.get(i, j), &r.mul(c, self.get(k, j)));
            self.set(i, j, v);
        }
    }

    /// col_j += c * col_k
    fn add_col_multiple(&mut self, r: &GaloisRing, j: usize, k: usize, c: &GrElem) {
        for i in 0..self.rows {
            let v = r.add(self.get(i, j), &r.mul(c, self.get(i, k)));
            self.set(i, j, v);
        }
    }

    pub fn format(&self, r: &GaloisRing) -> String {
        (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols).map(|j| r.format(self.get(i, j))).collect();
                format!("[{}]", row.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// D = U A V with D diagonal (entries p^{e_i}, then zeros).
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    /// Valuations of the diagonal entries, non-decreasing; `n` marks a zero entry.
    pub diag_valuations: Vec<u32>,
}

pub fn smith_normal_form(r: &GaloisRing, a: &Mat) -> Snf {
    let (m, k) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Mat::identity(r, m);
    let mut u_inv = Mat::identity(r, m);
    let mut v = Mat::identity(r, k);
    let mut v_inv = Mat::identity(r, k);
    let n = r.n();
    let mut diag = Vec::with_capacity(m.min(k));
    for s in 0..m.min(k) {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in s..m {
            for j in s..k {
                let val = r.valuation(d.get(i, j));
                if val < n && best.is_none_or(|(bv, _, _)| val < bv) {
                    best = Some((val, i, j));
                }
            }
        }
        let Some((val, pi, pj)) = best else {
            diag.extend(std::iter::repeat_n(n, m.min(k) - s));
            break;
        };
        d.swap_rows(s, pi);
        u.swap_rows(s, pi);
        u_inv.swap_cols(s, pi);
        d.swap_cols(s, pj);
        v.swap_cols(s, pj);
        v_inv.swap_rows(s, pj);
        // Fold the unit part of the pivot into U.
        let unit = r.div_p_pow(d.get(s, s), val);
        let unit_inv = r.inv(&unit).expect("pivot unit part is invertible");
        d.scale_row(r, s, &unit_inv);
        u.scale_row(r, s, &unit_inv);
        u_inv.scale_col(r, s, &unit);
        for i in s + 1..m {
            if r.is_zero(d.get(i, s)) {
                continue;
            }
            let c = r.div_p_pow(d.get(i, s), val);
            let neg_c = r.neg(&c);
            d.add_row_multiple(r, i, s, &neg_c);
            u.add_row_multiple(r, i, s, &neg_c);
            u_inv.add_col_multiple(r, s, i, &c);
        }
        for j in s + 1..k {
            if r.is_zero(d.get(s, j)) {
                continue;
            }
            let c = r.div_p_pow(d.get(s, j), val);
            let neg_c = r.neg(&c);
            d.add_col_multiple(r, j, s, &neg_c);
            v.add_col_multiple(r, j, s, &neg_c);
            v_inv.add_row_multiple(r, s, j, &c);
        }
        diag.push(val);
    }
    Snf { d, u, u_inv, v, v_inv, diag_valuations: diag }
}

/// Generators of the kernel of A: W^k -> W^m (as columns of a k x g matrix).
pub fn kernel_free(r: &GaloisRing, a: &Mat) -> Mat {
    let snf = smith_normal_form(r, a);
    let n = r.n();
    let k = a.cols;
    let mut gens = Vec::new();
    for i in 0..k {
        let val = snf.diag_valuations.get(i).copied().unwrap_or(n);
        if val == 0 {
            continue;
        }
        // y_i in p^{n - val} W
        let c = r.p_pow(n - val);
        let col: Vec<GrElem> = snf.v.column(i).iter().map(|x| r.mul(x, &c)).collect();
        gens.push(col);
    }
    Mat::from_columns(r, k, &gens)
}

/// Solve A z = b over W^m; returns some solution.
pub fn solve_free(r: &GaloisRing, a: &Mat, b: &[GrElem]) -> Result<Vec<GrElem>> {
    let snf = smith_normal_form(r, a);
    let ub = snf.u.mul_vec(r, b);
    let n = r.n();
    let mut y = vec![r.zero(); a.cols];
    for (i, rhs) in ub.iter().enumerate() {
        let val = snf.diag_valuations.get(i).copied().unwrap_or(n);
        if val == n {
            if !r.is_zero(rhs) {
                return Err(Error::NoSolution);
            }
            continue;
        }
        if r.valuation(rhs) < val {
            return Err(Error::NoSolution);
        }
        y[i] = r.div_p_pow(rhs, val);
    }
    Ok(snf.v.mul_vec(r, &y))
}

/// Invariant factors (exponents, descending) of W^k / (columns of A).
pub fn cokernel_factors(r: &GaloisRing, a: &Mat) -> Vec<u32> {
    let snf = smith_normal_form(r, a);
    let n = r.n();
    let mut f: Vec<u32> = (0..a.rows)
        .map(|i| snf.diag_valuations.get(i).copied().unwrap_or(n))
        .filter(|&v| v > 0)
        .collect();
    f.sort_unstable_by(|x, y| y.cmp(x));
    f
}

/// Determinant is not available over a general ring here; invertibility
/// is tested via SNF.
pub fn is_invertible(r: &GaloisRing, a: &Mat) -> bool {
    a.rows == a.cols && smith_normal_form(r, a).diag_valuations.iter().all(|&v| v == 0)
}

/// Inverse of a square invertible matrix.
pub fn inverse(r: &GaloisRing, a: &Mat) -> Option<Mat> {
    if a.rows != a.cols {
        return None;
    }
    let snf = smith_normal_form(r, a);
    if !snf.diag_valuations.iter().all(|&v| v == 0) {
        return None;
    }
    // D = U A V = I  =>  A^{-1} = V U
    Some(snf.v.mul(r, &snf.u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn random_mat(r: &GaloisRing, rows: usize, cols: usize, seed: &mut u64) -> Mat {
        let mut m = Mat::zeros(r, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let coords: Vec<u64> = (0..r.a())
                    .map(|_| {
                        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (*seed >> 33) % r.modulus_int()
                    })
                    .collect();
                // bias towards non-units
                let x = r.from_coords(&coords);
                let x = if (*seed >> 20).is_multiple_of(3) { r.mul(&x, &r.from_u64(r.p())) } else { x };
                m.set(i, j, x);
            }
        }
        m
    }

    #[test]
    fn snf_examples() {
        let z9 = GaloisRing::new(3, 2, 1).unwrap();
        let s = smith_normal_form(&z9, &Mat::from_ints(&z9, &[vec![3]]));
        assert_eq!(s.d, Mat::from_ints(&z9, &[vec![3]]));
        let z4 = GaloisRing::new(2, 2, 1).unwrap();
        let a = Mat::from_ints(&z4, &[vec![1, 1], vec![0, 2]]);
        let s = smith_normal_form(&z4, &a);
        assert_eq!(s.d, Mat::from_ints(&z4, &[vec![1, 0], vec![0, 2]]));
        let zero = Mat::zeros(&z4, 2, 2);
        assert_eq!(smith_normal_form(&z4, &zero).d, zero);
    }

    fn check_snf(r: &GaloisRing, a: &Mat) {
        let s = smith_normal_form(r, a);
        assert_eq!(s.u.mul(r, a).mul(r, &s.v), s.d);
        assert_eq!(s.u.mul(r, &s.u_inv), Mat::identity(r, a.rows()));
        assert_eq!(s.v.mul(r, &s.v_inv), Mat::identity(r, a.cols()));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(r.is_zero(s.d.get(i, j)));
                }
            }
        }
        for (i, &v) in s.diag_valuations.iter().enumerate() {
            assert_eq!(*s.d.get(i, i), r.p_pow(v));
        }
        assert!(s.diag_valuations.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn snf_random() {
        let mut seed = 99;
        for (p, n, a) in [(2, 3, 1), (2, 2, 2), (3, 2, 2), (5, 2, 1), (2, 4, 1)] {
            let r = GaloisRing::new(p, n, a).unwrap();
            for (rows, cols) in [(3, 3), (2, 4), (4, 2), (1, 3), (5, 5)] {
                let m = random_mat(&r, rows, cols, &mut seed);
                check_snf(&r, &m);
            }
        }
    }

    #[test]
    fn kernel_and_solve() {
        let z8 = GaloisRing::new(2, 3, 1).unwrap();
        let a = Mat::from_ints(&z8, &[vec![2, 4], vec![0, 4]]);
        let k = kernel_free(&z8, &a);
        // kernel generators lie in the kernel
        assert!(a.mul(&z8, &k).is_zero(&z8));
        // size of kernel: |{x : Ax = 0}| counted by brute force
        let mut count = 0;
        for x in 0..8 {
            for y in 0..8 {
                if a.mul_vec(&z8, &[z8.from_u64(x), z8.from_u64(y)]).iter().all(|e| z8.is_zero(e)) {
                    count += 1;
                }
            }
        }
        let mut span = std::collections::HashSet::new();
        for c0 in 0..8 {
            for c1 in 0..8 {
                let cs: Vec<GrElem> =
                    (0..k.cols()).map(|j| z8.from_u64(if j == 0 { c0 } else { c1 })).collect();
                span.insert(k.mul_vec(&z8, &cs));
            }
        }
        assert_eq!(span.len(), count);
        let b = vec![z8.from_u64(6), z8.from_u64(4)];
        let x = solve_free(&z8, &a, &b).unwrap();
        assert_eq!(a.mul_vec(&z8, &x), b);
        assert_eq!(solve_free(&z8, &a, &[z8.from_u64(1), z8.zero()]).unwrap_err(), Error::NoSolution);
    }

    #[test]
    fn cokernel_example() {
        let z4 = GaloisRing::new(2, 2, 1).unwrap();
        let a = Mat::from_ints(&z4, &[vec![1, 1], vec![0, 2]]);
        assert_eq!(cokernel_factors(&z4, &a), vec![1]);
        assert_eq!(cokernel_factors(&z4, &Mat::zeros(&z4, 2, 1)), vec![2, 2]);
    }

    proptest! {
        #[test]
        fn inverse_round_trip(seed in 0u64..10_000) {
            let r: Arc<GaloisRing> = GaloisRing::new(3, 2, 2).unwrap();
            let mut s = seed;
            let m = random_mat(&r, 3, 3, &mut s);
            match inverse(&r, &m) {
                Some(inv) => prop_assert_eq!(m.mul(&r, &inv), Mat::identity(&r, 3)),
                None => prop_assert!(!is_invertible(&r, &m)),
            }
        }
    }
}
