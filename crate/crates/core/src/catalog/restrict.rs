//! Hyperplane sections of generator sets.

use crate::algebra::quad::{LinForm, QuadForm};
use crate::catalog::{GeneratorSet, Provenance};
use crate::error::{Error, Result};

/// Substitutes `pivot = -(1/ℓ_pivot) Σ_{i≠pivot} ℓ_i z_i` into every generator and
/// deletes the pivot coordinate. All nonzero images are kept in order; no
/// basis reduction.
pub fn substitute_hyperplane(g: &GeneratorSet, l: &LinForm, pivot: usize) -> Result<GeneratorSet> {
    if l.len() != g.nvars() {
        return Err(Error::AmbientMismatch { expected: g.nvars(), found: l.len() });
    }
    let field = g.field;
    let l = l.to_field(field)?;
    let lead = &l.coeffs[pivot];
    let Some(inv) = lead.inv() else {
        return Err(Error::PivotAbsent(g.vars[pivot].clone()));
    };
    let m = g.nvars() - 1;
    let shifted = |i: usize| if i < pivot { i } else { i - 1 };
    let mut images = Vec::with_capacity(g.nvars());
    for i in 0..g.nvars() {
        if i == pivot {
            let mut img = LinForm::zero(field, m);
            for (j, c) in l.coeffs.iter().enumerate() {
                if j != pivot && !c.is_zero() {
                    img.coeffs[shifted(j)] = -&(c * &inv);
                }
            }
            images.push(img);
        } else {
            images.push(LinForm::var(field, m, shifted(i)));
        }
    }
    let gens: Vec<QuadForm> = g
        .gens
        .iter()
        .map(|q| q.substitute(&images))
        .filter(|q| !q.is_zero())
        .collect();
    let mut vars = g.vars.clone();
    vars.remove(pivot);
    let provenance = Provenance::Section {
        base: Box::new(g.provenance.clone()),
        hyperplane: l.display(&g.vars),
        pivot: g.vars[pivot].clone(),
    };
    let mut out = GeneratorSet::new(vars, gens, provenance);
    out.field = field;
    Ok(out)
}

/// The section by `ℓ = 0`, reduced to a basis of the restricted span.
pub fn restrict_hyperplane(g: &GeneratorSet, l: &LinForm, pivot: usize) -> Result<GeneratorSet> {
    Ok(substitute_hyperplane(g, l, pivot)?.basis())
}
