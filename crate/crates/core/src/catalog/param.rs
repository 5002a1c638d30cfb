//! Parametrizations of catalog varieties and the quadric-kernel oracle.

use std::collections::HashMap;

use crate::algebra::field::Field;
use crate::algebra::linalg;
use crate::algebra::poly::{indexed_names, Monomial, MultiPoly};
use crate::algebra::quad::QuadForm;
use crate::error::{Error, Result};

/// A map `z_i ↦ m_i` whose images are monomials in the parameter variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub param_vars: Vec<String>,
    pub images: Vec<Monomial>,
}

impl MonomialMap {
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Position of each image monomial, for lifting sections to coordinates.
    pub fn index(&self) -> HashMap<&Monomial, usize> {
        self.images.iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    pub fn to_parametrization(&self) -> Parametrization {
        let f = Field::Rational;
        Parametrization {
            param_vars: self.param_vars.clone(),
            images: self
                .images
                .iter()
                .map(|m| MultiPoly::monomial(f, m.clone(), f.one()))
                .collect(),
        }
    }
}

/// A map `z_i ↦ f_i` whose images are arbitrary polynomials of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub param_vars: Vec<String>,
    pub images: Vec<MultiPoly>,
}

impl Parametrization {
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Pulls a quadric back along the parametrization.
    pub fn pullback(&self, q: &QuadForm) -> Result<MultiPoly> {
        if q.nvars() != self.images.len() {
            return Err(Error::AmbientMismatch { expected: self.images.len(), found: q.nvars() });
        }
        let images = self
            .images
            .iter()
            .map(|p| p.to_field(q.field()))
            .collect::<Result<Vec<_>>>()?;
        Ok(q.to_poly().compose(&images))
    }

    pub fn keep(&self, positions: &[usize]) -> Parametrization {
        Parametrization {
            param_vars: self.param_vars.clone(),
            images: positions.iter().map(|&i| self.images[i].clone()).collect(),
        }
    }
}

/// All degree-`d` monomials in `x0 … xn`, ordered with `x0` dominant:
/// `x0^d, x0^(d-1) x1, …, xn^d`.
pub fn veronese_map(n: usize, d: u32) -> MonomialMap {
    let mut images = Vec::new();
    let mut exps = vec![0u16; n + 1];
    fill_exponents(&mut exps, 0, d as u16, &mut images);
    MonomialMap { param_vars: indexed_names("x", n + 1), images }
}

fn fill_exponents(exps: &mut Vec<u16>, pos: usize, left: u16, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        out.push(Monomial(exps.clone()));
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        fill_exponents(exps, pos + 1, left - e, out);
    }
    exps[pos] = 0;
}

/// Removes image `index`: the inner projection from the corresponding coordinate point.
pub fn param_drop(map: &MonomialMap, index: usize) -> Result<MonomialMap> {
    if index >= map.images.len() {
        return Err(Error::OutOfRange(format!(
            "index {index} for a map with {} images",
            map.images.len()
        )));
    }
    let mut images = map.images.clone();
    images.remove(index);
    Ok(MonomialMap { param_vars: map.param_vars.clone(), images })
}

/// Basis of the quadrics vanishing on the image of `param`, as the nullspace
/// of `z_i z_j ↦ f_i f_j` into the polynomials of doubled degree.
pub fn kernel_quadrics(param: &Parametrization) -> Vec<QuadForm> {
    let f = Field::Rational;
    let n = param.images.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            pairs.push((i, j));
        }
    }
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, _)>> = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        let prod = param.images[i].mul(&param.images[j]);
        let mut col = Vec::new();
        for (m, c) in prod.terms() {
            let next = row_of.len();
            let r = *row_of.entry(m.clone()).or_insert(next);
            col.push((r, c.clone()));
        }
        columns.push(col);
    }
    let mut rows = vec![vec![f.zero(); pairs.len()]; row_of.len()];
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            rows[r][c] = v;
        }
    }
    linalg::nullspace(&rows, pairs.len(), f)
        .into_iter()
        .map(|v| {
            let mut q = QuadForm::zero(f, n);
            for (k, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    q.add_term(pairs[k].0, pairs[k].1, c);
                }
            }
            q
        })
        .collect()
}
