//! Linear forms, quadratic forms and their symmetric matrices.

use std::collections::BTreeMap;

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::linalg;
use crate::algebra::poly::{Monomial, MultiPoly};
use crate::error::{Error, Result};

/// A linear form `Σ c_i v_i`; the zero form is allowed and reported by `is_zero`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinForm {
    pub coeffs: Vec<FieldElement>,
}

impl LinForm {
    pub fn zero(field: Field, n: usize) -> LinForm {
        LinForm { coeffs: vec![field.zero(); n] }
    }

    pub fn var(field: Field, n: usize, i: usize) -> LinForm {
        let mut l = LinForm::zero(field, n);
        l.coeffs[i] = field.one();
        l
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> LinForm {
        LinForm { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn field(&self) -> Field {
        self.coeffs.first().map(FieldElement::field).unwrap_or(Field::Rational)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        LinForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &FieldElement) -> LinForm {
        LinForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Splits off the first nonzero coefficient: returns `(c, l)` with `self = c·l`
    /// and the first nonzero coefficient of `l` equal to one.
    pub fn normalized(&self) -> Option<(FieldElement, LinForm)> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?.clone();
        let inv = lead.inv().expect("nonzero");
        Some((lead, self.scale(&inv)))
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        self.coeffs
            .iter()
            .zip(point)
            .fold(self.field().zero(), |acc, (a, x)| &acc + &(a * x))
    }

    pub fn to_poly(&self) -> MultiPoly {
        let n = self.coeffs.len();
        let mut p = MultiPoly::zero(self.field(), n);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_poly(p: &MultiPoly) -> Result<LinForm> {
        if !p.is_homogeneous_of(1) {
            return Err(Error::Parse("expected a linear form".into()));
        }
        let mut l = LinForm::zero(p.field(), p.nvars());
        for (m, c) in p.terms() {
            let i = m.0.iter().position(|&e| e == 1).expect("degree one");
            l.coeffs[i] = c.clone();
        }
        Ok(l)
    }

    pub fn display(&self, names: &[String]) -> String {
        self.to_poly().display(names)
    }

    pub fn to_field(&self, field: Field) -> Result<LinForm> {
        Ok(LinForm { coeffs: self.coeffs.iter().map(|c| field.convert(c)).collect::<Result<_>>()? })
    }
}

/// A homogeneous quadric `Σ_{i≤j} α_{ij} z_i z_j` in `n` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    n: usize,
    field: Field,
    coeffs: BTreeMap<(usize, usize), FieldElement>,
}

impl QuadForm {
    pub fn zero(field: Field, n: usize) -> QuadForm {
        QuadForm { n, field, coeffs: BTreeMap::new() }
    }

    /// Number of coordinates, i.e. `r + 1` for a quadric in `P^r`.
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.coeffs.get(&key).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &FieldElement)> {
        self.coeffs.iter()
    }

    /// Adds `c · z_i z_j`.
    pub fn add_term(&mut self, i: usize, j: usize, c: FieldElement) {
        let key = if i <= j { (i, j) } else { (j, i) };
        let v = &self.coeff(key.0, key.1) + &c;
        if v.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, v);
        }
    }

    /// Convenience constructor from `(coefficient, i, j)` triples with integer coefficients.
    pub fn from_terms(field: Field, n: usize, terms: &[(i64, usize, usize)]) -> QuadForm {
        let mut q = QuadForm::zero(field, n);
        for &(c, i, j) in terms {
            q.add_term(i, j, field.from_i64(c));
        }
        q
    }

    pub fn product(a: &LinForm, b: &LinForm) -> QuadForm {
        let n = a.len();
        let field = a.field();
        let mut q = QuadForm::zero(field, n);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    q.add_term(i, j, x * y);
                }
            }
        }
        q
    }

    pub fn add(&self, other: &QuadForm) -> QuadForm {
        let mut q = self.clone();
        for (&(i, j), c) in &other.coeffs {
            q.add_term(i, j, c.clone());
        }
        q
    }

    pub fn sub(&self, other: &QuadForm) -> QuadForm {
        self.add(&other.scale(&-&self.field.one()))
    }

    pub fn scale(&self, c: &FieldElement) -> QuadForm {
        let mut q = QuadForm::zero(self.field, self.n);
        if c.is_zero() {
            return q;
        }
        q.coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect();
        q
    }

    /// Coefficient vector indexed by the pairs `i ≤ j` in lexicographic order.
    pub fn coeff_vector(&self) -> Vec<FieldElement> {
        let mut v = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in i..self.n {
                v.push(self.coeff(i, j));
            }
        }
        v
    }

    pub fn from_coeff_vector(field: Field, n: usize, v: &[FieldElement]) -> QuadForm {
        let mut q = QuadForm::zero(field, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                q.add_term(i, j, v[k].clone());
                k += 1;
            }
        }
        q
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(self.field, self.n);
        for (&(i, j), c) in &self.coeffs {
            let mut m = Monomial::one(self.n);
            m.0[i] += 1;
            m.0[j] += 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn from_poly(p: &MultiPoly) -> Result<QuadForm> {
        if !p.is_homogeneous_of(2) {
            return Err(Error::Parse("expected a homogeneous quadric".into()));
        }
        let mut q = QuadForm::zero(p.field(), p.nvars());
        for (m, c) in p.terms() {
            let f = m.factors();
            q.add_term(f[0], f[1], c.clone());
        }
        Ok(q)
    }

    pub fn parse(text: &str, names: &[String], field: Field) -> Result<QuadForm> {
        QuadForm::from_poly(&MultiPoly::parse(text, names, field)?)
    }

    pub fn display(&self, names: &[String]) -> String {
        self.to_poly().display(names)
    }

    /// Substitutes `z_i ↦ images[i]`, a linear form in the new coordinates.
    pub fn substitute(&self, images: &[LinForm]) -> QuadForm {
        assert_eq!(images.len(), self.n);
        let m = images.first().map(LinForm::len).unwrap_or(0);
        let mut out = QuadForm::zero(self.field, m);
        for (&(i, j), c) in &self.coeffs {
            out = out.add(&QuadForm::product(&images[i], &images[j]).scale(c));
        }
        out
    }

    pub fn to_field(&self, field: Field) -> Result<QuadForm> {
        let mut q = QuadForm::zero(field, self.n);
        for (&(i, j), c) in &self.coeffs {
            q.add_term(i, j, field.convert(c)?);
        }
        Ok(q)
    }

    /// Variables occurring in some monomial.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.coeffs.keys().flat_map(|&(i, j)| [i, j]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn rank(&self) -> usize {
        sym_rank(&quad_to_sym(self))
    }
}

/// Symmetric matrix stored as its upper triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    field: Field,
    upper: Vec<FieldElement>,
}

impl SymMatrix {
    pub fn zero(field: Field, n: usize) -> SymMatrix {
        SymMatrix { n, field, upper: vec![field.zero(); n * (n + 1) / 2] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * (2 * self.n - i + 1) / 2 + (j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.upper[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        let k = self.idx(i, j);
        self.upper[k] = v;
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElement>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Builds from a dense matrix, rejecting asymmetric input.
    pub fn from_dense(field: Field, m: &[Vec<FieldElement>]) -> Result<SymMatrix> {
        let n = m.len();
        let mut s = SymMatrix::zero(field, n);
        for i in 0..n {
            for j in i..n {
                if m[i][j] != m[j][i] {
                    return Err(Error::Degenerate(format!("matrix not symmetric at ({i},{j})")));
                }
                s.set(i, j, m[i][j].clone());
            }
        }
        Ok(s)
    }

    pub fn add_scaled(&self, other: &SymMatrix, c: &FieldElement) -> SymMatrix {
        SymMatrix {
            n: self.n,
            field: self.field,
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a + &(b * c)).collect(),
        }
    }

    /// `Pᵀ M P`.
    pub fn congruence(&self, p: &[Vec<FieldElement>]) -> SymMatrix {
        let m = self.to_dense();
        let n = self.n;
        let mut mp = vec![vec![self.field.zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    acc = &acc + &(&m[i][k] * &p[k][j]);
                }
                mp[i][j] = acc;
            }
        }
        let mut out = SymMatrix::zero(self.field, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    acc = &acc + &(&p[k][i] * &mp[k][j]);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// The quadric `zᵀ M z / 2`.
    pub fn to_quad(&self) -> QuadForm {
        let half = self.field.from_i64(2).inv().expect("char != 2");
        let mut q = QuadForm::zero(self.field, self.n);
        for i in 0..self.n {
            q.add_term(i, i, self.get(i, i) * &half);
            for j in i + 1..self.n {
                q.add_term(i, j, self.get(i, j).clone());
            }
        }
        q
    }
}

/// Off-diagonal entry `(i, j)` is the coefficient of `z_i z_j`; the diagonal
/// entry `(i, i)` is twice the coefficient of `z_i²`, so `zᵀ M z = 2 q`.
/// Characteristic 2 never reaches here: `Field::prime(2)` is rejected.
pub fn quad_to_sym(q: &QuadForm) -> SymMatrix {
    let two = q.field().from_i64(2);
    let mut m = SymMatrix::zero(q.field(), q.nvars());
    for (&(i, j), c) in q.terms() {
        if i == j {
            m.set(i, i, c * &two);
        } else {
            m.set(i, j, c.clone());
        }
    }
    m
}

pub fn sym_rank(m: &SymMatrix) -> usize {
    linalg::rank(&m.to_dense())
}
