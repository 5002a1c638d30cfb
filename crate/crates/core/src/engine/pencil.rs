//! The generic symmetric matrix `M(x) = Σ x_k M_k` of a quadric system.

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::poly::{indexed_names, MultiPoly};
use crate::algebra::quad::{quad_to_sym, LinForm, QuadForm, SymMatrix};
use crate::catalog::GeneratorSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Pencil {
    pub basis: GeneratorSet,
    pub matrices: Vec<SymMatrix>,
    /// Set when [`Pencil::assemble_reduced`] had to drop dependent generators.
    pub reduced_from: Option<usize>,
}

impl Pencil {
    /// Fails on a dependent generator list.
    pub fn assemble(g: &GeneratorSet) -> Result<Pencil> {
        if !g.independent {
            return Err(Error::DependentGenerators { rank: g.span_dim(), len: g.len() });
        }
        if g.is_empty() {
            return Err(Error::Degenerate("empty generator set".into()));
        }
        Ok(Pencil {
            basis: g.clone(),
            matrices: g.gens.iter().map(quad_to_sym).collect(),
            reduced_from: None,
        })
    }

    /// Reduces to a greedy basis first, recording the original length if it changed.
    pub fn assemble_reduced(g: &GeneratorSet) -> Result<Pencil> {
        if g.independent {
            return Pencil::assemble(g);
        }
        let mut p = Pencil::assemble(&g.basis())?;
        p.reduced_from = Some(g.len());
        Ok(p)
    }

    pub fn field(&self) -> Field {
        self.basis.field
    }

    /// `r + 1`, the side of `M(x)`.
    pub fn size(&self) -> usize {
        self.basis.nvars()
    }

    /// `t + 1`, the number of pencil parameters.
    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    pub fn param_names(&self) -> Vec<String> {
        indexed_names("x", self.dim())
    }

    pub fn entry(&self, i: usize, j: usize) -> LinForm {
        LinForm::from_coeffs(self.matrices.iter().map(|m| m.get(i, j).clone()).collect())
    }

    pub fn symbolic(&self) -> Vec<Vec<LinForm>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<MultiPoly>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.entry(i, j).to_poly()).collect())
            .collect()
    }

    pub fn eval(&self, x: &[FieldElement]) -> SymMatrix {
        let mut m = SymMatrix::zero(self.field(), self.size());
        for (mk, c) in self.matrices.iter().zip(x) {
            if !c.is_zero() {
                m = m.add_scaled(mk, c);
            }
        }
        m
    }

    /// The member `Σ x_k Q_k`.
    pub fn quadric(&self, x: &[FieldElement]) -> QuadForm {
        let mut q = QuadForm::zero(self.field(), self.size());
        for (g, c) in self.basis.gens.iter().zip(x) {
            if !c.is_zero() {
                q = q.add(&g.scale(c));
            }
        }
        q
    }

    pub fn to_field(&self, field: Field) -> Result<Pencil> {
        let g = self.basis.to_field(field)?;
        if !g.independent {
            return Err(Error::DependentGenerators { rank: g.span_dim(), len: g.len() });
        }
        let mut p = Pencil::assemble(&g)?;
        p.reduced_from = self.reduced_from;
        Ok(p)
    }

    /// Dense row-major residues of every `M_k` modulo `q`.
    pub fn residues(&self, q: u64) -> Result<Vec<Vec<u64>>> {
        let f = Field::prime(q)?;
        let n = self.size();
        self.matrices
            .iter()
            .map(|m| {
                let mut out = vec![0u64; n * n];
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = f.convert(m.get(i, j))?.residue().expect("prime field");
                    }
                }
                Ok(out)
            })
            .collect()
    }
}
