//! Quadric generator sets for the catalog varieties.

pub mod families;
pub mod param;
pub mod restrict;
pub mod spec;

use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::linalg::{self, EchelonBasis};
use crate::algebra::quad::QuadForm;
use crate::error::{Error, Result};

pub use families::{
    delpezzo_surface, grassmann_section, nonnormal_delpezzo, plucker_generators, scroll_generators,
    segre_generators, veronese_generators, veronese_projection, NonNormalKind,
};
pub use param::{kernel_quadrics, param_drop, veronese_map, MonomialMap, Parametrization};
pub use restrict::{restrict_hyperplane, substitute_hyperplane};
pub use spec::{Hyperplane, VarietySpec};

/// Where a generator set came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    Scroll { degrees: Vec<u32> },
    Veronese { n: usize, d: u32 },
    VeroneseProjection { n: usize, d: u32 },
    Segre { dims: Vec<u32> },
    Plucker { n: usize },
    DelPezzo { t: u8 },
    NonNormal { kind: NonNormalKind, e: usize },
    GrassmannSection { k: u8 },
    Section { base: Box<Provenance>, hyperplane: String, pivot: String },
    Kernel { map: String },
    Qmap { family: String },
    Witness { description: String },
}

/// An ordered list of quadrics presenting (part of) `I(X)_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    /// Coordinate labels; the ambient space is `P^(vars.len() - 1)`.
    pub vars: Vec<String>,
    pub gens: Vec<QuadForm>,
    pub provenance: Provenance,
    pub independent: bool,
    pub field: Field,
    pub parametrization: Option<Parametrization>,
}

impl GeneratorSet {
    /// Builds a set and records whether the generators are linearly independent.
    pub fn new(vars: Vec<String>, gens: Vec<QuadForm>, provenance: Provenance) -> GeneratorSet {
        let field = gens.first().map(QuadForm::field).unwrap_or(Field::Rational);
        let mut g = GeneratorSet {
            vars,
            gens,
            provenance,
            independent: false,
            field,
            parametrization: None,
        };
        g.independent = g.span_dim() == g.gens.len();
        g
    }

    pub fn with_parametrization(mut self, p: Parametrization) -> GeneratorSet {
        self.parametrization = Some(p);
        self
    }

    pub fn ambient(&self) -> usize {
        self.vars.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn coefficient_rows(&self) -> Vec<Vec<FieldElement>> {
        self.gens.iter().map(QuadForm::coeff_vector).collect()
    }

    pub fn span_dim(&self) -> usize {
        linalg::rank(&self.coefficient_rows())
    }

    /// Greedy independent subset, keeping the first occurrence in list order.
    pub fn basis(&self) -> GeneratorSet {
        let mut eb = EchelonBasis::new();
        let gens: Vec<QuadForm> = self
            .gens
            .iter()
            .filter(|q| eb.insert(&q.coeff_vector()))
            .cloned()
            .collect();
        GeneratorSet {
            vars: self.vars.clone(),
            gens,
            provenance: self.provenance.clone(),
            independent: true,
            field: self.field,
            parametrization: self.parametrization.clone(),
        }
    }

    pub fn echelon(&self) -> EchelonBasis {
        let mut eb = EchelonBasis::new();
        for q in &self.gens {
            eb.insert(&q.coeff_vector());
        }
        eb
    }

    pub fn contains(&self, q: &QuadForm) -> bool {
        self.echelon().contains(&q.coeff_vector())
    }

    pub fn same_span(&self, other: &GeneratorSet) -> bool {
        let a = self.echelon();
        let b = other.echelon();
        a.dim() == b.dim() && other.gens.iter().all(|q| a.contains(&q.coeff_vector()))
    }

    pub fn to_field(&self, field: Field) -> Result<GeneratorSet> {
        let gens = self.gens.iter().map(|q| q.to_field(field)).collect::<Result<Vec<_>>>()?;
        let mut g = GeneratorSet::new(self.vars.clone(), gens, self.provenance.clone());
        g.field = field;
        g.parametrization = self.parametrization.clone();
        Ok(g)
    }

    pub fn max_rank(&self) -> usize {
        self.gens.iter().map(QuadForm::rank).max().unwrap_or(0)
    }

    pub fn display_gens(&self) -> Vec<String> {
        self.gens.iter().map(|q| q.display(&self.vars)).collect()
    }

    /// Hash of the labels and the generator list in order; certificates refer to it.
    pub fn order_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.vars.join(",").as_bytes());
        for g in self.display_gens() {
            h.update(b"\n");
            h.update(g.as_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ambient": self.ambient(),
            "field": self.field.to_string(),
            "gens": self.display_gens(),
            "provenance": self.provenance,
            "vars": self.vars,
            "independent": self.independent,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GeneratorSet> {
        let bad = |what: &str| Error::Parse(format!("generator set JSON: missing or malformed `{what}`"));
        let vars: Vec<String> = serde_json::from_value(v["vars"].clone()).map_err(|_| bad("vars"))?;
        let field: Field = v["field"].as_str().ok_or_else(|| bad("field"))?.parse()?;
        let provenance: Provenance =
            serde_json::from_value(v["provenance"].clone()).map_err(|_| bad("provenance"))?;
        let texts: Vec<String> = serde_json::from_value(v["gens"].clone()).map_err(|_| bad("gens"))?;
        if let Some(a) = v["ambient"].as_u64() {
            if a as usize + 1 != vars.len() {
                return Err(Error::AmbientMismatch { expected: a as usize + 1, found: vars.len() });
            }
        }
        let gens = texts
            .iter()
            .map(|t| QuadForm::parse(t, &vars, field))
            .collect::<Result<Vec<_>>>()?;
        let mut g = GeneratorSet::new(vars, gens, provenance);
        g.field = field;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = plucker_generators(4).unwrap();
        let back = GeneratorSet::from_json(&g.to_json()).unwrap();
        assert_eq!(back.gens, g.gens);
        assert_eq!(back.vars, g.vars);
        assert_eq!(back.provenance, g.provenance);
        assert_eq!(back.order_hash(), g.order_hash());
    }

    #[test]
    fn basis_keeps_first_occurrences() {
        let mut g = scroll_generators(&[3]).unwrap();
        let first = g.gens[0].clone();
        g.gens.push(first.scale(&Field::Rational.from_i64(3)));
        let b = g.basis();
        assert_eq!(b.len(), 3);
        assert!(b.same_span(&g));
    }
}
