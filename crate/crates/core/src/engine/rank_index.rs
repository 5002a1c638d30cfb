//! Orchestration: combine certificates, witnesses and finite-field scans into
//! a rank-index value or an interval with evidence on both sides.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::field::Field;
use crate::catalog::{GeneratorSet, VarietySpec};
use crate::engine::certificate::{search_certificate, verify_certificate, Certificate, SearchMode};
use crate::engine::pencil::Pencil;
use crate::engine::phi::{default_budget, phi_scan, projective_count, PhiScan};
use crate::engine::witness::{certify_upper, known_witness, lift_witness};
use crate::error::Result;

/// Every irreducible nondegenerate variety has rank index at least 3: a quadric
/// of rank at most 2 is a product of linear forms.
pub const STRUCTURAL_LOWER_BOUND: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    BruteForce(u64),
    Certificates,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Primes tried, in order, when brute force is needed.
    pub primes: Vec<u64>,
    /// Cap on rank evaluations per finite-field scan.
    pub budget: u64,
    /// Cap on submatrices examined per certificate search.
    pub search_budget: u64,
    /// Also search non-principal submatrices.
    pub exhaustive: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { primes: vec![5, 7], budget: default_budget(), search_budget: 50_000, exhaustive: false }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Rank at most 2 means reducible.
    Structural,
    Certificate { certificate: Certificate },
    /// `Φ_k(GF(q))` is empty, so no rational member has rank `≤ k` either.
    EmptyLocus { q: u64, k: usize },
    /// `Φ_k(GF(q))` spans only `span_dim` of `dim` dimensions.
    NonSpanning { q: u64, k: usize, span_dim: usize, dim: usize },
    /// `Φ_k(GF(q))` spans.
    Spanning { q: u64, k: usize },
    /// A verified spanning set of members of rank `≤ k`.
    Witness { description: String, k: usize, gens: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct Bound {
    pub value: usize,
    pub field: String,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteFieldRun {
    pub q: u64,
    pub value: usize,
    /// `span_dims[k]` = dimension spanned by `Φ_k(GF(q))`.
    pub span_dims: Vec<usize>,
    pub counts: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankIndexResult {
    pub spec: String,
    /// Set only when the bounds meet.
    pub value: Option<usize>,
    /// Field over which `lower`, `upper` and `value` hold.
    pub field: String,
    pub lower: Bound,
    pub upper: Bound,
    /// Best bounds over ℚ, whatever `field` is.
    pub rational: [usize; 2],
    pub finite_field: Vec<FiniteFieldRun>,
    pub timings: BTreeMap<String, f64>,
}

impl RankIndexResult {
    pub fn interval(&self) -> [usize; 2] {
        [self.lower.value, self.upper.value]
    }
}

fn witness_bound(w: &GeneratorSet, k: usize, field: Field) -> Bound {
    let description = match &w.provenance {
        crate::catalog::Provenance::Witness { description } => description.clone(),
        crate::catalog::Provenance::Qmap { family } => family.clone(),
        _ => "generators".to_string(),
    };
    Bound {
        value: k,
        field: field.to_string(),
        evidence: Evidence::Witness { description, k, gens: w.display_gens() },
    }
}

fn run_of(scan: &PhiScan) -> FiniteFieldRun {
    FiniteFieldRun { q: scan.q, value: scan.rank_index(), span_dims: scan.span_dims(), counts: scan.counts.clone() }
}

/// Bounds over GF(q) read off a complete scan; both are exact over that field.
fn scan_bounds(scan: &PhiScan) -> (Bound, Bound) {
    let v = scan.rank_index();
    let field = Field::Prime(scan.q).to_string();
    let below = scan.sample(v - 1);
    let evidence = if below.count == 0 {
        Evidence::EmptyLocus { q: scan.q, k: v - 1 }
    } else {
        Evidence::NonSpanning { q: scan.q, k: v - 1, span_dim: below.span_dim, dim: scan.dim }
    };
    (
        Bound { value: v, field: field.clone(), evidence },
        Bound { value: v, field, evidence: Evidence::Spanning { q: scan.q, k: v } },
    )
}

struct Timer(BTreeMap<String, f64>);

impl Timer {
    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.0.entry(label.to_string()).or_default() += start.elapsed().as_secs_f64();
        out
    }
}

pub fn rank_index(spec: &VarietySpec, strategy: Strategy, config: &EngineConfig) -> Result<RankIndexResult> {
    let mut timer = Timer(BTreeMap::new());
    let g = timer.time("build", || spec.build())?;
    let p = Pencil::assemble_reduced(&g)?;
    let name = spec.to_string();

    if let Strategy::BruteForce(q) = strategy {
        let scan = timer.time("enumerate", || phi_scan(&p, q, config.budget))?;
        let (lower, upper) = scan_bounds(&scan);
        let mut rational = [STRUCTURAL_LOWER_BOUND, p.basis.max_rank()];
        if let Evidence::EmptyLocus { k, .. } = lower.evidence {
            rational[0] = rational[0].max(k + 1);
        }
        if timer.time("lift", || lift_witness(&scan.sample(upper.value), &p)).is_some() {
            rational[1] = rational[1].min(upper.value);
        }
        return Ok(RankIndexResult {
            spec: name,
            value: Some(upper.value),
            field: Field::Prime(q).to_string(),
            lower,
            upper,
            rational,
            finite_field: vec![run_of(&scan)],
            timings: timer.0,
        });
    }

    let q_field = Field::Rational.to_string();
    let mut lower = Bound { value: STRUCTURAL_LOWER_BOUND, field: q_field.clone(), evidence: Evidence::Structural };
    let k0 = p.basis.max_rank();
    let mut upper = witness_bound(&p.basis, k0, Field::Rational);
    if let Some(w) = timer.time("witness", || known_witness(spec)) {
        let k = w.max_rank();
        if k < upper.value && timer.time("witness", || certify_upper(&p, &w, k))? {
            upper = witness_bound(&w, k, Field::Rational);
        }
    }

    let modes: &[SearchMode] =
        if config.exhaustive { &[SearchMode::Principal, SearchMode::Exhaustive] } else { &[SearchMode::Principal] };
    'search: for s in (lower.value + 1..=upper.value.min(crate::algebra::det::MAX_DET_SIZE)).rev() {
        for &mode in modes {
            let out = timer.time("certificate", || search_certificate(&p, s, mode, config.search_budget))?;
            if let Some(cert) = out.certificate() {
                let bound = timer.time("certificate", || verify_certificate(&p, cert))?;
                lower = Bound {
                    value: bound as usize,
                    field: q_field.clone(),
                    evidence: Evidence::Certificate { certificate: cert.clone() },
                };
                break 'search;
            }
        }
    }

    let mut runs = Vec::new();
    let mut gf = None;
    if lower.value < upper.value && strategy == Strategy::Auto {
        for &q in &config.primes {
            if projective_count(q, p.dim()).map_or(true, |c| c > config.budget) {
                continue;
            }
            let scan = timer.time("enumerate", || phi_scan(&p, q, config.budget))?;
            let (gl, gu) = scan_bounds(&scan);
            if let Evidence::EmptyLocus { k, .. } = gl.evidence {
                if k + 1 > lower.value {
                    lower = Bound { value: k + 1, field: q_field.clone(), evidence: gl.evidence.clone() };
                }
            }
            if gu.value < upper.value {
                if let Some(w) = timer.time("lift", || lift_witness(&scan.sample(gu.value), &p)) {
                    upper = witness_bound(&w, gu.value, Field::Rational);
                }
            }
            runs.push(run_of(&scan));
            if gf.is_none() {
                gf = Some((q, gl, gu));
            }
            if lower.value == upper.value {
                break;
            }
        }
    }

    let rational = [lower.value, upper.value];
    let (value, field, lower, upper) = if lower.value == upper.value {
        (Some(lower.value), q_field, lower, upper)
    } else if let Some((q, gl, gu)) = gf {
        (Some(gu.value), Field::Prime(q).to_string(), gl, gu)
    } else {
        (None, q_field, lower, upper)
    };
    Ok(RankIndexResult { spec: name, value, field, lower, upper, rational, finite_field: runs, timings: timer.0 })
}
