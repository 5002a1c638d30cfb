//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded reverse lexicographic with `x0 > x1 > …`. Printing walks the map
//! from the largest term down, which reproduces the way Macaulay2-style
//! listings write binomials such as `z7^2 - z6*z8`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::algebra::field::{Field, FieldElement};
use crate::error::{Error, Result};

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Variables with nonzero exponent, each repeated by its exponent.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                out.push(i);
            }
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable is larger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Indexed variable names such as `z0 … z9`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> MultiPoly {
        MultiPoly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(c.field(), nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(field, nvars);
        p.add_term(Monomial::var(nvars, i), field.one());
        p
    }

    pub fn monomial(field: Field, m: Monomial, c: FieldElement) -> MultiPoly {
        let mut p = MultiPoly::zero(field, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-&self.field.one())
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(old) => *old = &*old + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            field: self.field,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.field.one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * &self.field.from_i64(e as i64));
        }
        out
    }

    /// Evaluates at a point of the base field.
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes polynomial `images[i]` for variable `i`.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = MultiPoly::zero(self.field, target_vars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target_vars);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Reinterprets the coefficients in another field.
    pub fn to_field(&self, field: Field) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), field.convert(c)?);
        }
        Ok(out)
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let is_const = m.degree() == 0;
            if is_const {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&m.display(names));
            } else {
                let _ = write!(s, "{abs}*{}", m.display(names));
            }
        }
        s
    }

    /// Parses the text syntax `2*z0*z1 - z7^2 + 1/3*z2`.
    pub fn parse(text: &str, names: &[String], field: Field) -> Result<MultiPoly> {
        Parser::new(text, names, field).parse()
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    index: HashMap<&'a str, usize>,
    nvars: usize,
    field: Field,
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a [String], field: Field) -> Parser<'a> {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            index: names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect(),
            nvars: names.len(),
            field,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn parse(mut self) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.field, self.nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return self.err(&format!("unexpected `{c}`")),
            };
            first = false;
            let (m, c) = self.term()?;
            let c = if sign < 0 { -&c } else { c };
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, FieldElement)> {
        let mut m = Monomial::one(self.nvars);
        let mut c = self.field.one();
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => {
                    let num = self.number()?;
                    c = &c * &num;
                }
                Some(ch) if ch.is_alphabetic() || ch == '_' => {
                    let (v, e) = self.power()?;
                    m.0[v] += e;
                }
                Some(ch) => return self.err(&format!("unexpected `{ch}`")),
                None => return self.err("dangling operator"),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((m, c))
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<FieldElement> {
        let n = self.digits();
        if self.peek() == Some('/') {
            self.pos += 1;
            let d = self.digits();
            if d.is_empty() {
                return self.err("missing denominator");
            }
            self.field.parse_scalar(&format!("{n}/{d}"))
        } else {
            self.field.parse_scalar(&n)
        }
    }

    fn power(&mut self) -> Result<(usize, u16)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let v = match self.index.get(name.as_str()) {
            Some(&v) => v,
            None => return Err(Error::Parse(format!("unknown variable `{name}`"))),
        };
        let mut e = 1u16;
        if self.peek() == Some('^') {
            self.pos += 1;
            let d = self.digits();
            e = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent after `{name}`")))?;
        }
        Ok((v, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Vec<String> {
        indexed_names("z", n)
    }

    #[test]
    fn grevlex_order_matches_printed_binomials() {
        let names = z(9);
        let p = MultiPoly::parse("z6*z8 - z7^2", &names, Field::Rational).unwrap();
        assert_eq!(p.display(&names), "-z7^2 + z6*z8");
        let q = MultiPoly::parse("z7^2 - z6*z8", &names, Field::Rational).unwrap();
        assert_eq!(q.display(&names), "z7^2 - z6*z8");
        let r = MultiPoly::parse("z1^2 - z0*z3", &names, Field::Rational).unwrap();
        assert_eq!(r.display(&names), "z1^2 - z0*z3");
    }

    #[test]
    fn parses_rational_coefficients() {
        let names = z(3);
        let p = MultiPoly::parse("1/2*z0^2 - 3*z1*z2 + z2", &names, Field::Rational).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.display(&names), "1/2*z0^2 - 3*z1*z2 + z2");
        assert!(MultiPoly::parse("z0 + w", &names, Field::Rational).is_err());
        assert!(MultiPoly::parse("z0 +", &names, Field::Rational).is_err());
        assert!(MultiPoly::parse("", &names, Field::Rational).is_err());
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let names = z(2);
        let f = Field::Rational;
        let a = MultiPoly::parse("z0 + z1", &names, f).unwrap();
        let b = MultiPoly::parse("z0 - z1", &names, f).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.display(&names), "z0^2 - z1^2");
        assert!(prod.sub(&prod).is_zero());
        assert_eq!(a.pow(2).display(&names), "z0^2 + 2*z0*z1 + z1^2");
        assert_eq!(a.pow(2).derivative(0).display(&names), "2*z0 + 2*z1");
    }

    #[test]
    fn modular_printing_uses_symmetric_residues() {
        let names = z(3);
        let f = Field::prime(5).unwrap();
        let p = MultiPoly::parse("z0*z2 - z1^2", &names, f).unwrap();
        assert_eq!(p.display(&names), "-z1^2 + z0*z2");
        let back = MultiPoly::parse(&p.display(&names), &names, f).unwrap();
        assert_eq!(back, p);
    }
}
