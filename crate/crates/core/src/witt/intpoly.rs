//! Integer polynomials with arbitrary-precision coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut r = IntPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, mut e: u64) -> IntPoly {
        let mut r = IntPoly::constant(self.nvars, BigInt::one());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Exact division by `d`; returns the first coefficient that is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Result<IntPoly, (Vec<u32>, BigInt)> {
        let mut r = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let (q, rem) = num_integer::Integer::div_rem(c, d);
            if !rem.is_zero() {
                return Err((e.clone(), c.clone()));
            }
            r.terms.insert(e.clone(), q);
        }
        Ok(r)
    }

    /// Rename variables: variable i becomes variable `map[i]` in a ring of `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> IntPoly {
        let mut r = IntPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            r.add_term(ne, c.clone());
        }
        r
    }

    /// Terms in descending graded-lex order (variable 0 most significant).
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !mag.is_one() || is_const {
                factors.push(mag.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{k}", names[i])),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    pub fn eval_bigint(&self, vals: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m *= num_traits::pow(vals[i].clone(), k as usize);
                }
            }
            acc += m;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial() {
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        let f = x.add(&y).pow(3);
        assert_eq!(f.coeff(&[2, 1]), BigInt::from(3));
        assert_eq!(f.num_terms(), 4);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(f.format_with(&names), "x^3 + 3*x^2*y + 3*x*y^2 + y^3");
    }

    #[test]
    fn exact_division() {
        let x = IntPoly::var(1, 0);
        let f = x.scale(&BigInt::from(6)).add(&IntPoly::constant(1, BigInt::from(4)));
        assert!(f.div_exact(&BigInt::from(2)).is_ok());
        assert!(f.div_exact(&BigInt::from(3)).is_err());
    }
}
