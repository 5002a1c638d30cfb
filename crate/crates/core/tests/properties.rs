mod common;

use common::{det_mod, i2_dim_oracle, md, residue_matrix, PARAMETRIZED};
use proptest::prelude::*;
use quadrank::algebra::{is_scaled_power_of_linear, sym_rank, Field, FieldElement, LinForm, MultiPoly, Monomial, SymMatrix};
use quadrank::catalog::{kernel_quadrics, restrict_hyperplane, veronese_generators, veronese_map, GeneratorSet, Provenance, VarietySpec};
use quadrank::engine::{phi_scan, Pencil};
use quadrank::engine::phi::{projective_count, DEFAULT_BUDGET};
use quadrank::qmap::qab;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn build(s: &str) -> GeneratorSet {
    s.parse::<VarietySpec>().unwrap().build().unwrap()
}

#[test]
fn generators_pull_back_to_zero() {
    for s in PARAMETRIZED {
        let g = build(s);
        let param = g.parametrization.as_ref().unwrap();
        for q in &g.gens {
            assert!(param.pullback(q).unwrap().is_zero(), "{s}: {}", q.display(&g.vars));
        }
    }
}

#[test]
fn catalog_span_equals_kernel_span() {
    for (i, s) in PARAMETRIZED.iter().enumerate() {
        let g = build(s);
        let param = g.parametrization.clone().unwrap();
        let kernel = GeneratorSet::new(g.vars.clone(), kernel_quadrics(&param), Provenance::Kernel { map: s.to_string() });
        assert!(g.same_span(&kernel), "{s}");
        assert_eq!(kernel.span_dim(), i2_dim_oracle(&param, 7 + i as u64), "{s}");
    }
}

fn random_invertible(n: usize, p: i64, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        if det_mod(&m, p) != 0 {
            return m;
        }
    }
}

#[test]
fn rank_is_a_congruence_invariant() {
    const PRIME: i64 = 10_007;
    let f = Field::prime(PRIME as u64).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let specs = PARAMETRIZED.iter().copied().chain(["grassec:3", "grassec:4", "grassec:5"]);
    for s in specs {
        for q in &build(s).gens {
            let m = residue_matrix(q, PRIME);
            let n = m.len();
            let to_sym = |m: &[Vec<i64>]| {
                let dense: Vec<Vec<FieldElement>> = m.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
                SymMatrix::from_dense(f, &dense).unwrap()
            };
            let r = sym_rank(&to_sym(&m));
            for _ in 0..100 {
                let c = random_invertible(n, PRIME, &mut rng);
                // cᵀ m c
                let mc: Vec<Vec<i64>> = (0..n)
                    .map(|i| (0..n).map(|j| (0..n).fold(0, |a, k| md(a + m[i][k] * c[k][j], PRIME))).collect())
                    .collect();
                let ctmc: Vec<Vec<i64>> = (0..n)
                    .map(|i| (0..n).map(|j| (0..n).fold(0, |a, k| md(a + c[k][i] * mc[k][j], PRIME))).collect())
                    .collect();
                assert_eq!(sym_rank(&to_sym(&ctmc)), r, "{s}");
            }
        }
    }
}

#[test]
fn span_of_phi_grows_with_k() {
    for s in PARAMETRIZED.iter().copied().chain(["grassec:3", "grassec:4", "grassec:5", "grassec:3|random:73"]) {
        let p = Pencil::assemble_reduced(&build(s)).unwrap();
        for q in [5u64, 7] {
            if projective_count(q, p.dim()).map_or(true, |c| c > 2_000_000) {
                continue;
            }
            let dims = phi_scan(&p, q, DEFAULT_BUDGET).unwrap().span_dims();
            assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{s} GF{q}: {dims:?}");
            assert_eq!(dims[p.size()], p.dim(), "{s} GF{q}");
            assert!(dims[2] < p.dim(), "{s} GF{q}: rank-2 members span");
        }
    }
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(7).unwrap()), Just(Field::prime(101).unwrap())]
}

fn power_case() -> impl Strategy<Value = (Field, i64, Vec<i64>, u32)> {
    (field_strategy(), prop_oneof![-9i64..=-1, 1i64..=9], prop::collection::vec(-3i64..=3, 1..5), 1u32..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pure_powers_round_trip((f, c, coeffs, s) in power_case()) {
        let n = coeffs.len();
        let lambda = LinForm::from_coeffs(coeffs.iter().map(|&v| f.from_i64(v)).collect());
        prop_assume!(!lambda.is_zero());
        let c = f.from_i64(c);
        prop_assume!(!c.is_zero());
        let p = lambda.to_poly().pow(s).scale(&c);
        let (c2, l2) = is_scaled_power_of_linear(&p, s).expect("a pure power is detected");
        prop_assert_eq!(l2.to_poly().pow(s).scale(&c2), p.clone());
        // λ' is proportional to λ
        let (_, a) = lambda.normalized().unwrap();
        let (_, b) = l2.normalized().unwrap();
        if f == Field::Rational || s == 1 {
            prop_assert_eq!(a, b);
        }
        prop_assert_eq!(l2.len(), n);
        if n >= 2 && s >= 2 {
            let mut other = vec![f.zero(); n];
            other[n - 1] = f.one();
            let mu = LinForm::from_coeffs(other);
            let q = lambda.to_poly().pow(s - 1).mul(&mu.to_poly());
            if mu.normalized().map(|x| x.1) != lambda.normalized().map(|x| x.1) {
                prop_assert!(is_scaled_power_of_linear(&q, s).is_none());
            }
        }
    }

    #[test]
    fn qab_is_symmetric_rank_three_and_in_the_ideal(
        s in prop::collection::vec(-2i64..=2, 3),
        t in prop::collection::vec(-2i64..=2, 3),
        h in 0usize..3,
    ) {
        let f = Field::Rational;
        let map = veronese_map(2, 3);
        let lin = |c: &[i64]| LinForm::from_coeffs(c.iter().map(|&v| f.from_i64(v)).collect()).to_poly();
        let hm = MultiPoly::monomial(f, Monomial::var(3, h), f.one());
        let a = qab(&lin(&s), &lin(&t), &hm, &map).unwrap();
        let b = qab(&lin(&t), &lin(&s), &hm, &map).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.is_zero() || a.rank() == 3, "rank {}", a.rank());
        prop_assert!(veronese_generators(2, 3).unwrap().contains(&a));
    }

    #[test]
    fn restriction_preserves_membership(coeffs in prop::collection::vec(-3i64..=3, 5), pick in prop::collection::vec(-2i64..=2, 5)) {
        let f = Field::Rational;
        let g = build("plucker:4");
        let mut c: Vec<FieldElement> = coeffs.iter().map(|&v| f.from_i64(v)).collect();
        c.extend((5..10).map(|_| f.zero()));
        c[9] = f.one();
        let l = LinForm::from_coeffs(c);
        let member = g.gens.iter().zip(&pick).fold(quadrank::algebra::QuadForm::zero(f, 10), |acc, (q, &k)| acc.add(&q.scale(&f.from_i64(k))));
        let r = restrict_hyperplane(&g, &l, 9).unwrap();
        let single = GeneratorSet::new(g.vars.clone(), vec![member], Provenance::Witness { description: "member".into() });
        let restricted = restrict_hyperplane(&single, &l, 9).unwrap();
        for q in &restricted.gens {
            prop_assert!(r.contains(q));
        }
    }
}
