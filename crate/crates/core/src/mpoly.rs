//! Sparse multivariate polynomials over F_q.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldEmbedding, Fq, FqField};

pub const DEFAULT_VARS: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Clone)]
pub struct MPoly {
    field: Arc<FqField>,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Fq>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms && *self.field == *other.field
    }
}

impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl MPoly {
    pub fn zero(field: &Arc<FqField>, nvars: usize) -> Self {
        MPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Arc<FqField>, nvars: usize, c: Fq) -> Self {
        Self::monomial(field, vec![0; nvars], c)
    }

    pub fn var(field: &Arc<FqField>, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, 1)
    }

    pub fn monomial(field: &Arc<FqField>, exps: Vec<u32>, c: Fq) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        MPoly { field: field.clone(), nvars, terms }
    }

    pub fn from_terms(field: &Arc<FqField>, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Fq)>) -> Self {
        let mut p = MPoly::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Fq)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Fq {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Coefficient of a monomial given by possibly negative exponents (zero if any is negative).
    pub fn coeff_signed(&self, exps: &[i64]) -> Fq {
        if exps.iter().any(|&e| e < 0) {
            return 0;
        }
        let e: Vec<u32> = exps.iter().map(|&e| e as u32).collect();
        self.coeff(&e)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Fq) {
        if c == 0 {
            return;
        }
        let f = self.field.clone();
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, &c) in &other.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        let terms = self.terms.iter().map(|(e, &c)| (e.clone(), self.field.neg(c))).collect();
        MPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> MPoly {
        let mut r = MPoly::zero(&self.field, self.nvars);
        for (e, &x) in &self.terms {
            r.add_term(e.clone(), self.field.mul(x, c));
        }
        r
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut r = MPoly::zero(&self.field, self.nvars.max(other.nvars));
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, self.field.mul(c1, c2));
            }
        }
        r
    }

    pub fn pow(&self, mut e: u64) -> MPoly {
        let mut r = MPoly::constant(&self.field, self.nvars, 1);
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

    pub fn partial(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(&self.field, self.nvars);
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let k = self.field.from_int((e[i] as u64 % self.field.p()) as i64);
            let mut ne = e.clone();
            ne[i] -= 1;
            r.add_term(ne, self.field.mul(c, k));
        }
        r
    }

    /// Substitute linear forms: variable i becomes `Σ_j m[i][j] x_j`.
    pub fn linear_substitute(&self, m: &[Vec<Fq>]) -> MPoly {
        let forms: Vec<MPoly> = m
            .iter()
            .map(|row| {
                let mut f = MPoly::zero(&self.field, self.nvars);
                for (j, &c) in row.iter().enumerate() {
                    f = f.add(&MPoly::var(&self.field, self.nvars, j).scale(c));
                }
                f
            })
            .collect();
        let mut r = MPoly::zero(&self.field, self.nvars);
        for (e, &c) in &self.terms {
            let mut t = MPoly::constant(&self.field, self.nvars, c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&forms[i].pow(k as u64));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Evaluate at a point of F_q.
    pub fn eval(&self, point: &[Fq]) -> Fq {
        let f = &self.field;
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let m = e.iter().zip(point).fold(c, |m, (&k, &x)| f.mul(m, f.pow(x, k as u64)));
            f.add(acc, m)
        })
    }

    /// Compile for evaluation over an extension field.
    pub fn evaluator(&self, target: &Arc<FqField>) -> Result<Evaluator> {
        let emb = FieldEmbedding::new(&self.field, target)?;
        let max_exp = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        Ok(Evaluator {
            field: target.clone(),
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), emb.map(c))).collect(),
            nvars: self.nvars,
            max_exp,
        })
    }

    pub fn parse(field: &Arc<FqField>, vars: &[&str], s: &str) -> Result<MPoly> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { field, vars, tokens, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("unexpected trailing input in '{s}'")));
        }
        Ok(p)
    }

    /// Terms in descending graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, Fq)> {
        let mut v: Vec<(Vec<u32>, Fq)> = self.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn format_with(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (e, c) in self.sorted_terms() {
            let mut factors = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if c != 1 || is_const {
                let s = self.field.format(c);
                if s.contains('+') || (s.contains('t') && s.contains('*')) {
                    factors.push(format!("({s})"));
                } else {
                    factors.push(s);
                }
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(vars[i].to_string()),
                    _ => factors.push(format!("{}^{k}", vars[i])),
                }
            }
            out.push(factors.join("*"));
        }
        out.join(" + ")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars)
            .map(|i| DEFAULT_VARS.get(i).map(|s| s.to_string()).unwrap_or(format!("x{i}")))
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.format_with(&refs))
    }
}

/// A polynomial with coefficients mapped into an extension field.
pub struct Evaluator {
    field: Arc<FqField>,
    terms: Vec<(Vec<u32>, Fq)>,
    nvars: usize,
    max_exp: u32,
}

impl Evaluator {
    pub fn eval(&self, point: &[Fq]) -> Fq {
        let f = &self.field;
        let mut powers = vec![vec![1 as Fq; self.max_exp as usize + 1]; self.nvars];
        for (v, pw) in powers.iter_mut().enumerate() {
            for k in 1..pw.len() {
                pw[k] = f.mul(pw[k - 1], point[v]);
            }
        }
        self.eval_with_powers(&powers)
    }

    /// Evaluate reusing `buf` for the power table.
    pub fn eval_with(&self, point: &[Fq], buf: &mut Vec<Fq>) -> Fq {
        let f = &self.field;
        let w = self.max_exp as usize + 1;
        buf.clear();
        buf.resize(w * self.nvars, 1);
        for v in 0..self.nvars {
            for k in 1..w {
                buf[v * w + k] = f.mul(buf[v * w + k - 1], point[v]);
            }
        }
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut m = *c;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = f.mul(m, buf[v * w + k as usize]);
                    if m == 0 {
                        break;
                    }
                }
            }
            acc = f.add(acc, m);
        }
        acc
    }

    fn eval_with_powers(&self, powers: &[Vec<Fq>]) -> Fq {
        let f = &self.field;
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut m = *c;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = f.mul(m, powers[v][k as usize]);
                    if m == 0 {
                        break;
                    }
                }
            }
            acc = f.add(acc, m);
        }
        acc
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Num(v)) => format!("'{v}'"),
        Some(Tok::Ident(x)) => format!("'{x}'"),
        Some(Tok::Plus) => "'+'".into(),
        Some(Tok::Minus) => "'-'".into(),
        Some(Tok::Star) => "'*'".into(),
        Some(Tok::Caret) => "'^'".into(),
        Some(Tok::LParen) => "'('".into(),
        Some(Tok::RParen) => "')'".into(),
    }
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..i].iter().collect();
                let v = t.parse().map_err(|_| Error::Parse(format!("integer too large: {t}")))?;
                out.push(Tok::Num(v));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character '{c}' in '{s}'"))),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Arc<FqField>,
    vars: &'a [&'a str],
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) => Ok(base.pow(e)),
                other => Err(Error::Parse(format!("expected exponent after '^', found {}", describe(other.as_ref())))),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<MPoly> {
        let n = self.nvars();
        match self.next() {
            Some(Tok::Num(v)) => {
                let c = self.field.from_int((v % self.field.p()) as i64);
                Ok(MPoly::constant(self.field, n, c))
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(MPoly::var(self.field, n, i))
                } else if name == "t" && self.field.degree() > 1 {
                    Ok(MPoly::constant(self.field, n, self.field.generator()))
                } else {
                    Err(Error::Parse(format!("unknown symbol '{name}'")))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {}", describe(other.as_ref())))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FqField> {
        Arc::new(FqField::new(2, 1).unwrap())
    }

    #[test]
    fn parse_and_display() {
        let k = f2();
        let f = MPoly::parse(&k, &["x", "y", "z"], "y^2*z + x*y*z + x^3 + z^3").unwrap();
        assert_eq!(f.homogeneous_degree(), Some(3));
        assert_eq!(f.coeff(&[1, 1, 1]), 1);
        assert_eq!(f.to_string(), "x^3 + x*y*z + y^2*z + z^3");
        let g = MPoly::parse(&k, &["x", "y", "z"], &f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parse_errors() {
        let k = f2();
        assert!(MPoly::parse(&k, &["x", "y"], "x^^2").is_err());
        assert!(MPoly::parse(&k, &["x", "y"], "x + q").is_err());
        assert!(MPoly::parse(&k, &["x", "y"], "(x + y").is_err());
        assert!(MPoly::parse(&k, &["x", "y"], "").is_err());
        // t is only a field symbol for a > 1
        assert!(MPoly::parse(&k, &["x", "y"], "t*x").is_err());
    }

    #[test]
    fn extension_coefficients() {
        let k = Arc::new(FqField::new(2, 2).unwrap());
        let vars = ["x", "y", "z"];
        let f = MPoly::parse(&k, &vars, "t*x^2 + (t + 1)*y*z - x*y").unwrap();
        let g = MPoly::parse(&k, &vars, &f.to_string()).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.coeff(&[2, 0, 0]), k.generator());
    }

    #[test]
    fn arithmetic() {
        let k = Arc::new(FqField::new(3, 1).unwrap());
        let v = ["x", "y"];
        let f = MPoly::parse(&k, &v, "x + y").unwrap();
        // (x + y)^3 = x^3 + y^3 in characteristic 3
        assert_eq!(f.pow(3), MPoly::parse(&k, &v, "x^3 + y^3").unwrap());
        assert_eq!(f.pow(2).coeff(&[1, 1]), 2);
        let g = MPoly::parse(&k, &v, "x^3*y + 2*x*y").unwrap();
        assert_eq!(g.partial(0), MPoly::parse(&k, &v, "2*y").unwrap());
        assert_eq!(g.partial(1), MPoly::parse(&k, &v, "x^3 + 2*x").unwrap());
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn evaluation_matches_extension() {
        let k = f2();
        let big = Arc::new(FqField::new(2, 3).unwrap());
        let v = ["x", "y", "z"];
        let f = MPoly::parse(&k, &v, "y^2*z + y*z^2 + x^3").unwrap();
        let ev = f.evaluator(&big).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(ev.eval(&[x, y, 1]), f.eval(&[x, y, 1]));
            }
        }
    }

    #[test]
    fn linear_substitution() {
        let k = Arc::new(FqField::new(3, 1).unwrap());
        let v = ["x", "y", "z"];
        let f = MPoly::parse(&k, &v, "x^2 + y*z").unwrap();
        // swap x and z
        let m = vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]];
        assert_eq!(f.linear_substitute(&m), MPoly::parse(&k, &v, "z^2 + x*y").unwrap());
    }
}
