//! Rank-3 quadrics `Q(s,t,h) = f(s²h) f(t²h) - f(sth)²` for monomially
//! parametrized varieties, and the Γ families built from them.

use crate::algebra::field::Field;
use crate::algebra::linalg::EchelonBasis;
use crate::algebra::poly::{indexed_names, MultiPoly};
use crate::algebra::quad::{LinForm, QuadForm};
use crate::catalog::param::{veronese_map, MonomialMap};
use crate::catalog::restrict::substitute_hyperplane;
use crate::catalog::{GeneratorSet, Provenance};
use crate::error::{Error, Result};

/// A section of a line bundle, written as a polynomial in the parameter variables.
pub type SectionExpr = MultiPoly;

/// The linear form `Σ c_i z_i` with `p = Σ c_i m_i`.
pub fn lift_to_coords(p: &MultiPoly, map: &MonomialMap) -> Result<LinForm> {
    let index = map.index();
    let mut l = LinForm::zero(p.field(), map.len());
    for (m, c) in p.terms() {
        let i = index
            .get(m)
            .ok_or_else(|| Error::NotLiftable(m.display(&map.param_vars)))?;
        l.coeffs[*i] = c.clone();
    }
    Ok(l)
}

pub fn qab(s: &SectionExpr, t: &SectionExpr, h: &SectionExpr, map: &MonomialMap) -> Result<QuadForm> {
    let ssh = lift_to_coords(&s.mul(s).mul(h), map)?;
    let tth = lift_to_coords(&t.mul(t).mul(h), map)?;
    let sth = lift_to_coords(&s.mul(t).mul(h), map)?;
    Ok(QuadForm::product(&ssh, &tth).sub(&QuadForm::product(&sth, &sth)))
}

/// One printed Γ family: how many index tuples it ranges over and its distinct members.
#[derive(Clone, Debug)]
pub struct GammaFamily {
    pub name: String,
    pub tuples: usize,
    pub members: Vec<QuadForm>,
}

fn normalized(q: &QuadForm) -> QuadForm {
    match q.terms().next() {
        Some((_, c)) => q.scale(&c.inv().expect("nonzero")),
        None => q.clone(),
    }
}

fn collect(name: &str, raw: Vec<QuadForm>) -> GammaFamily {
    let tuples = raw.len();
    let mut members: Vec<QuadForm> = Vec::new();
    let mut seen = Vec::new();
    for q in raw {
        if q.is_zero() {
            continue;
        }
        let key = normalized(&q);
        if !seen.contains(&key) {
            seen.push(key);
            members.push(q);
        }
    }
    GammaFamily { name: name.into(), tuples, members }
}

fn xs(n: usize) -> Vec<MultiPoly> {
    (0..=n).map(|i| MultiPoly::var(Field::Rational, n + 1, i)).collect()
}

fn one(n: usize) -> MultiPoly {
    MultiPoly::constant(Field::Rational.one(), n + 1)
}

/// Γ11, Γ12, Γ22 over `ν_2(P^3)`.
pub fn gamma_v2p3_families() -> Vec<GammaFamily> {
    let map = veronese_map(3, 2);
    let x = xs(3);
    let h = one(3);
    let q = |s: &MultiPoly, t: &MultiPoly| qab(s, t, &h, &map).expect("liftable");
    let mut g11 = Vec::new();
    let mut g12 = Vec::new();
    let mut g22 = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            g11.push(q(&x[i], &x[j]));
            for k in (0..4).filter(|&k| k != i && k != j) {
                g12.push(q(&x[i].add(&x[j]), &x[k]));
            }
        }
    }
    // {i,j,k,l} = {0,1,2,3}, read over all orderings
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let mut set = [i, j, k, l];
                    set.sort_unstable();
                    if set == [0, 1, 2, 3] {
                        g22.push(q(&x[i].add(&x[j]), &x[k].add(&x[l])));
                    }
                }
            }
        }
    }
    vec![collect("G11", g11), collect("G12", g12), collect("G22", g22)]
}

fn flatten(families: &[GammaFamily], nvars: usize, family: &str) -> GeneratorSet {
    let gens = families.iter().flat_map(|f| f.members.iter().cloned()).collect();
    GeneratorSet::new(indexed_names("z", nvars), gens, Provenance::Qmap { family: family.into() })
}

pub fn gamma_v2p3() -> GeneratorSet {
    flatten(&gamma_v2p3_families(), 10, "gamma:veronese:3,2")
}

/// Γ111, Γ112, Γ121 over `ν_3(P^2)`.
pub fn gamma_v3p2_families() -> Vec<GammaFamily> {
    let map = veronese_map(2, 3);
    let x = xs(2);
    let q = |s: &MultiPoly, t: &MultiPoly, h: &MultiPoly| qab(s, t, h, &map).expect("liftable");
    let mut g111 = Vec::new();
    let mut g112 = Vec::new();
    let mut g121 = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for k in 0..3 {
                g111.push(q(&x[i], &x[j], &x[k]));
            }
            for k in 0..3 {
                for l in k + 1..3 {
                    g112.push(q(&x[i], &x[j], &x[k].add(&x[l])));
                }
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            for k in j + 1..3 {
                if j == i || k == i {
                    continue;
                }
                for l in 0..3 {
                    g121.push(q(&x[i], &x[j].add(&x[k]), &x[l]));
                }
            }
        }
    }
    vec![collect("G111", g111), collect("G112", g112), collect("G121", g121)]
}

pub fn gamma_v3p2() -> GeneratorSet {
    flatten(&gamma_v3p2_families(), 10, "gamma:veronese:2,3")
}

/// Γ restricted to `z3 = z5`, together with the restriction of `z3 z5 - z2 z6`.
pub fn s5_witness() -> Result<GeneratorSet> {
    let gamma = gamma_v2p3();
    let f = Field::Rational;
    let l = LinForm::from_poly(&MultiPoly::parse("z3 - z5", &gamma.vars, f)?)?;
    let mut restricted = substitute_hyperplane(&gamma, &l, 3)?;
    let extra = GeneratorSet::new(
        gamma.vars.clone(),
        vec![QuadForm::parse("z3*z5 - z2*z6", &gamma.vars, f)?],
        Provenance::Qmap { family: "s5".into() },
    );
    let extra = substitute_hyperplane(&extra, &l, 3)?;
    restricted.gens.extend(extra.gens);
    Ok(GeneratorSet::new(restricted.vars, restricted.gens, Provenance::Qmap { family: "gamma':s5".into() }))
}

/// Rank-3 quadrics on `ν_d(P^n)` from `O(d) = O(1)^2 ⊗ O(d-2)`, greedily chosen
/// to be independent, stopping once `target` of them are found.
pub fn veronese_qmap_witness(n: usize, d: u32, target: usize) -> GeneratorSet {
    let map = veronese_map(n, d);
    let x = xs(n);
    let mut sections = x.clone();
    for i in 0..=n {
        for j in i + 1..=n {
            sections.push(x[i].add(&x[j]));
        }
    }
    let hs: Vec<MultiPoly> = if d >= 2 {
        let bmap = veronese_map(n, d - 2);
        let monos: Vec<MultiPoly> = bmap
            .images
            .iter()
            .map(|m| MultiPoly::monomial(Field::Rational, m.clone(), Field::Rational.one()))
            .collect();
        let mut out = monos.clone();
        for a in 0..monos.len() {
            for b in a + 1..monos.len() {
                out.push(monos[a].add(&monos[b]));
            }
        }
        out
    } else {
        Vec::new()
    };
    let mut eb = EchelonBasis::new();
    let mut gens = Vec::new();
    'outer: for h in &hs {
        for a in 0..sections.len() {
            for b in a + 1..sections.len() {
                if eb.dim() >= target {
                    break 'outer;
                }
                let q = qab(&sections[a], &sections[b], h, &map).expect("liftable");
                if !q.is_zero() && eb.insert(&q.coeff_vector()) {
                    gens.push(q);
                }
            }
        }
    }
    GeneratorSet::new(
        indexed_names("z", map.len()),
        gens,
        Provenance::Qmap { family: format!("qmap:veronese:{n},{d}") },
    )
}
