mod common;

use common::{binomial, i2_dim_oracle, vanishes_on, PARAMETRIZED};
use quadrank::algebra::Field;
use quadrank::catalog::{GeneratorSet, VarietySpec};

fn build(s: &str) -> GeneratorSet {
    s.parse::<VarietySpec>().unwrap().build().unwrap()
}

#[test]
fn generators_vanish_and_span_the_degree_two_part() {
    for (i, s) in PARAMETRIZED.iter().enumerate() {
        let g = build(s);
        let param = g.parametrization.as_ref().unwrap_or_else(|| panic!("{s} has no parametrization"));
        for q in &g.gens {
            assert!(vanishes_on(q, param, i as u64), "{s}: {}", q.display(&g.vars));
        }
        assert_eq!(g.span_dim(), i2_dim_oracle(param, 100 + i as u64), "{s}");
    }
}

#[test]
fn scroll_generator_counts() {
    for (d, m) in [("1,2", 3u64), ("2,2", 4), ("1,4", 5), ("1,1,2", 4), ("2,3", 5)] {
        assert_eq!(build(&format!("scroll:{d}")).span_dim() as u64, binomial(m, 2), "scroll:{d}");
    }
}

#[test]
fn plucker_relations_count() {
    for n in 3..=5u64 {
        let g = build(&format!("plucker:{n}"));
        assert_eq!(g.nvars() as u64, binomial(n + 1, 2));
        assert_eq!(g.span_dim() as u64, binomial(n + 1, 4));
        assert_eq!(g.max_rank(), 6);
    }
}

#[test]
fn veronese_degree_two_part() {
    // dim Sym^2(S_d) - dim S_{2d} in n+1 variables
    for (n, d) in [(1u64, 3u64), (1, 5), (2, 2), (2, 3), (3, 2)] {
        let m = binomial(n + d, n);
        let expected = binomial(m + 1, 2) - binomial(n + 2 * d, n);
        assert_eq!(build(&format!("veronese:{n},{d}")).span_dim() as u64, expected);
    }
}

#[test]
fn grassmann_sections_cut_the_ambient() {
    let base = build("plucker:4");
    for k in 3..=5 {
        let g = build(&format!("grassec:{k}"));
        // a k-fold in P^(k+3)
        assert_eq!(g.nvars(), k as usize + 4, "grassec:{k}");
        assert_eq!(g.span_dim(), 5);
    }
    let x2 = build("grassec:3|random:73");
    let x1 = build("grassec:3|random:73|random:74");
    assert_eq!((x2.nvars(), x2.span_dim()), (6, 5));
    assert_eq!((x1.nvars(), x1.span_dim()), (5, 5));
    assert_eq!(base.span_dim(), 5);
}

#[test]
fn first_del_pezzo_matches_the_printed_list() {
    let g = build("delpezzo:S1");
    assert_eq!(g.nvars(), 9);
    assert_eq!(g.len(), 20);
    assert!(g.independent);
}

#[test]
fn specs_round_trip_through_text() {
    for s in PARAMETRIZED.iter().copied().chain(["grassec:4", "segre:2,2|z0+z4+z8", "grassec:3|random:73|random:74"]) {
        let spec: VarietySpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
    }
}

#[test]
fn malformed_specs_are_rejected() {
    for s in ["", "scroll", "veronese:1", "delpezzo:7", "nonnormal:S1", "nonnormal:X,e=3", "plucker:x", "torus:2", "grassec:4|"] {
        let built = s.parse::<VarietySpec>().and_then(|v| v.build());
        assert!(built.is_err(), "{s:?} should fail");
    }
}

#[test]
fn generator_json_round_trip_preserves_order() {
    let g = build("delpezzo:S2");
    let back = GeneratorSet::from_json(&g.to_json()).unwrap();
    assert_eq!(back.display_gens(), g.display_gens());
    assert_eq!(back.order_hash(), g.order_hash());
}

#[test]
fn reduction_mod_p_keeps_the_span() {
    for s in ["scroll:2,2", "plucker:4", "delpezzo:S3"] {
        let g = build(s);
        assert_eq!(g.to_field(Field::prime(7).unwrap()).unwrap().span_dim(), g.span_dim(), "{s}");
    }
}
