//! Upper bounds: spanning sets of low-rank members of `I_2`.

use crate::algebra::field::Field;
use crate::algebra::linalg::EchelonBasis;
use crate::algebra::quad::QuadForm;
use crate::catalog::{GeneratorSet, NonNormalKind, Provenance, VarietySpec};
use crate::engine::pencil::Pencil;
use crate::engine::phi::PhiSample;
use crate::error::{Error, Result};
use crate::qmap;

/// Whether `witness` certifies rank index `≤ k` over the pencil's field:
/// members lie in `I_2`, have rank `≤ k`, and span it.
pub fn certify_upper(p: &Pencil, witness: &GeneratorSet, k: usize) -> Result<bool> {
    if witness.nvars() != p.size() {
        return Err(Error::AmbientMismatch { expected: p.size(), found: witness.nvars() });
    }
    let w = witness.to_field(p.field())?;
    let ideal = p.basis.echelon();
    let mut span = EchelonBasis::new();
    for q in &w.gens {
        let v = q.coeff_vector();
        if !ideal.contains(&v) || q.rank() > k {
            return Ok(false);
        }
        span.insert(&v);
    }
    Ok(span.dim() == p.dim())
}

/// Lifts sample points to integers and keeps those whose members still have
/// rank `≤ k` over ℚ, until they span. `None` if the lifted points cannot span.
pub fn lift_witness(sample: &PhiSample, p: &Pencil) -> Option<GeneratorSet> {
    if sample.span_dim < p.dim() || p.field() != Field::Rational {
        return None;
    }
    let f = Field::Rational;
    let mut span = EchelonBasis::new();
    let mut gens = Vec::new();
    for x in sample.points.iter().chain(&sample.alternates) {
        if span.dim() == p.dim() {
            break;
        }
        let xq: Vec<_> = PhiSample::lifted(x, sample.q).into_iter().map(|v| f.from_i64(v)).collect();
        let q = p.quadric(&xq);
        if q.rank() > sample.k {
            continue;
        }
        if span.insert(&q.coeff_vector()) {
            gens.push(q);
        }
    }
    let w = GeneratorSet::new(
        p.basis.vars.clone(),
        gens,
        Provenance::Witness { description: format!("lift of GF({}) rank-{} points", sample.q, sample.k) },
    );
    match certify_upper(p, &w, sample.k) {
        Ok(true) => Some(w),
        _ => None,
    }
}

/// `A ∪ {F_3} ∪ {Q_j}` for the first non-normal surface, where
/// `Q_j = (z3+z_j)(z1-z_{j-2}) - z0(z4+z_{j+1}) + (z2+z_{j-1})²` has rank 5
/// and replaces the rank-6 member `F_j`.
pub fn nonnormal_s1_witness(e: usize) -> Result<GeneratorSet> {
    let g = crate::catalog::nonnormal_delpezzo(NonNormalKind::S1, e)?;
    let f = Field::Rational;
    let n = g.nvars();
    let mut gens: Vec<QuadForm> = g.gens.iter().filter(|q| q.rank() <= 5).cloned().collect();
    let z = |i: usize| crate::algebra::quad::LinForm::var(f, n, i);
    for j in 4..=e + 1 {
        let a = QuadForm::product(&z(3).add(&z(j)), &z(1).add(&z(j - 2).scale(&f.from_i64(-1))));
        let b = QuadForm::product(&z(0), &z(4).add(&z(j + 1)));
        let c = QuadForm::product(&z(2).add(&z(j - 1)), &z(2).add(&z(j - 1)));
        gens.push(a.sub(&b).add(&c));
    }
    Ok(GeneratorSet::new(
        g.vars,
        gens,
        Provenance::Witness { description: format!("rank-5 replacements for nonnormal:S1,e={e}") },
    ))
}

/// Catalog-specific low-rank spanning sets beyond the generators themselves.
pub fn known_witness(spec: &VarietySpec) -> Option<GeneratorSet> {
    match spec {
        VarietySpec::Veronese { n: 3, d: 2 } => Some(qmap::gamma_v2p3()),
        VarietySpec::Veronese { n: 2, d: 3 } | VarietySpec::DelPezzo(0) => Some(qmap::gamma_v3p2()),
        VarietySpec::Veronese { n, d } if *d >= 3 || (*n >= 2 && *d == 2) => {
            let target = spec.build().ok()?.len();
            Some(qmap::veronese_qmap_witness(*n, *d, target))
        }
        VarietySpec::DelPezzo(5) => qmap::s5_witness().ok(),
        VarietySpec::NonNormal { kind: NonNormalKind::S1, e } => nonnormal_s1_witness(*e).ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{plucker_generators, veronese_generators};
    use crate::engine::phi::{phi_scan, DEFAULT_BUDGET};

    #[test]
    fn generators_witness_themselves() {
        let g = plucker_generators(4).unwrap();
        let p = Pencil::assemble(&g).unwrap();
        assert!(certify_upper(&p, &g, 6).unwrap());
        assert!(!certify_upper(&p, &g, 5).unwrap());
    }

    #[test]
    fn gamma_depends_on_characteristic() {
        let p = Pencil::assemble(&veronese_generators(3, 2).unwrap()).unwrap();
        let gamma = qmap::gamma_v2p3();
        assert!(certify_upper(&p, &gamma, 3).unwrap());
        let p3 = p.to_field(Field::prime(3).unwrap()).unwrap();
        assert!(!certify_upper(&p3, &gamma, 3).unwrap());
    }

    #[test]
    fn ambient_must_match() {
        let p = Pencil::assemble(&plucker_generators(4).unwrap()).unwrap();
        let other = plucker_generators(3).unwrap();
        assert!(matches!(certify_upper(&p, &other, 6), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn nonnormal_s1_has_rank_five_spanning_set() {
        for e in 3..=6 {
            let g = crate::catalog::nonnormal_delpezzo(NonNormalKind::S1, e).unwrap();
            let p = Pencil::assemble(&g).unwrap();
            let w = nonnormal_s1_witness(e).unwrap();
            assert!(certify_upper(&p, &w, 5).unwrap(), "e={e}");
        }
    }

    #[test]
    fn lifted_witness_for_twisted_cubic() {
        let p = Pencil::assemble(&veronese_generators(1, 3).unwrap()).unwrap();
        let scan = phi_scan(&p, 5, DEFAULT_BUDGET).unwrap();
        let w = lift_witness(&scan.sample(3), &p).expect("lift");
        assert_eq!(w.len(), 3);
        assert!(w.gens.iter().all(|q| q.rank() <= 3));
    }

    #[test]
    fn lift_skips_points_whose_rank_grows() {
        // z0^2 + 5 z1^2 + 5 z2^2 has rank 1 mod 5 and rank 3 over ℚ
        let f = Field::Rational;
        let vars = crate::algebra::poly::indexed_names("z", 3);
        let q = QuadForm::parse("z0^2 + 5*z1^2 + 5*z2^2", &vars, f).unwrap();
        let g = GeneratorSet::new(vars, vec![q], Provenance::Witness { description: "test".into() });
        let p = Pencil::assemble(&g).unwrap();
        let scan = phi_scan(&p, 5, DEFAULT_BUDGET).unwrap();
        let sample = scan.sample(1);
        assert_eq!(sample.span_dim, 1);
        assert!(lift_witness(&sample, &p).is_none());
        assert!(lift_witness(&scan.sample(3), &p).is_some());
    }
}
