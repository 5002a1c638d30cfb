//! Symbolic determinants and the pure-power test used by determinant certificates.

use std::collections::HashMap;

use num_integer::binomial;

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::poly::{Monomial, MultiPoly};
use crate::algebra::quad::LinForm;
use crate::error::{Error, Result};

/// Largest matrix accepted by [`det_poly`].
pub const MAX_DET_SIZE: usize = 8;

/// Exact determinant of a square matrix of polynomials, by Laplace expansion
/// along rows with memoization on the set of remaining columns.
pub fn det_poly(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    if n > MAX_DET_SIZE {
        return Err(Error::DeterminantBudget(n));
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Degenerate("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Err(Error::Degenerate("determinant of an empty matrix".into()));
    }
    let field = m[0][0].field();
    let nvars = m[0][0].nvars();
    let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
    Ok(expand(m, 0, (1u32 << n) - 1, field, nvars, &mut memo))
}

fn expand(
    m: &[Vec<MultiPoly>],
    row: usize,
    cols: u32,
    field: Field,
    nvars: usize,
    memo: &mut HashMap<u32, MultiPoly>,
) -> MultiPoly {
    if cols == 0 {
        return MultiPoly::constant(field.one(), nvars);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = MultiPoly::zero(field, nvars);
    let mut position = 0;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let minor = expand(m, row + 1, cols & !(1 << c), field, nvars, memo);
            if !minor.is_zero() {
                let term = entry.mul(&minor);
                acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Decides whether `p = c·λ^s` for a scalar `c` and a linear form `λ`.
///
/// On success `λ` is normalized so its first nonzero coefficient is one. The
/// candidate is read off from the coefficients of `x_i^s` and `x_i^{s-m} x_j`
/// (with `i` the first variable of `p`) and then confirmed by expanding
/// `c·λ^s`, so a returned pair always satisfies the identity exactly.
pub fn is_scaled_power_of_linear(p: &MultiPoly, s: u32) -> Option<(FieldElement, LinForm)> {
    if s == 0 || p.is_zero() || !p.is_homogeneous_of(s) {
        return None;
    }
    let field = p.field();
    let n = p.nvars();
    let lead_var = (0..n).find(|&i| p.terms().any(|(m, _)| m.0[i] > 0))?;
    let mut pure = Monomial::one(n);
    pure.0[lead_var] = s as u16;
    let c = p.coeff(&pure);
    if c.is_zero() {
        return None;
    }
    let c_inv = c.inv().expect("nonzero");
    let mut lambda = LinForm::zero(field, n);
    lambda.coeffs[lead_var] = field.one();
    for j in lead_var + 1..n {
        lambda.coeffs[j] = solve_coefficient(p, &c_inv, lead_var, j, s, field)?;
    }
    let candidate = lambda.to_poly().pow(s).scale(&c);
    (candidate == *p).then_some((c, lambda))
}

/// Finds `λ_j` from `coeff(x_i^{s-m} x_j^m) = c·C(s,m)·λ_j^m`, using the smallest
/// `m` whose binomial coefficient is invertible in the field.
fn solve_coefficient(
    p: &MultiPoly,
    c_inv: &FieldElement,
    i: usize,
    j: usize,
    s: u32,
    field: Field,
) -> Option<FieldElement> {
    let n = p.nvars();
    for m in 1..=s {
        let b = field.from_i64(binomial(s as i64, m as i64));
        if b.is_zero() {
            continue;
        }
        let mut mono = Monomial::one(n);
        mono.0[i] = (s - m) as u16;
        mono.0[j] = m as u16;
        let target = &(&p.coeff(&mono) * c_inv) * &b.inv().expect("nonzero");
        if m == 1 {
            return Some(target);
        }
        // over GF(p) with p | s: search for an m-th root
        return field
            .elements()?
            .into_iter()
            .find(|v| v.pow(m) == target);
    }
    None
}
