//! Determinant certificates `det N = c·λ^s` for `s×s` submatrices `N` of `M(x)`.
//! A verified certificate puts `λ` in the radical of the `s`-minor ideal, so
//! rank-`(s-1)` members cannot span and the rank index is at least `s`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::det::{det_poly, is_scaled_power_of_linear, MAX_DET_SIZE};
use crate::algebra::field::Field;
use crate::algebra::poly::MultiPoly;
use crate::engine::modp;
use crate::engine::pencil::Pencil;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `λ` in the pencil parameters `x0 … xt`.
    pub lambda: String,
    pub exponent: u32,
    pub scalar: String,
    /// [`GeneratorSet::order_hash`](crate::catalog::GeneratorSet::order_hash) of the pencil basis.
    pub generator_order: String,
}

/// Recomputes the determinant and returns the lower bound `s` it proves.
pub fn verify_certificate(p: &Pencil, cert: &Certificate) -> Result<u32> {
    let reject = |why: String| Err(Error::CertificateRejected(why));
    let s = cert.rows.len();
    if s != cert.cols.len() || s as u32 != cert.exponent || s == 0 {
        return reject(format!("shape {}x{} with exponent {}", s, cert.cols.len(), cert.exponent));
    }
    if s > MAX_DET_SIZE {
        return Err(Error::DeterminantBudget(s));
    }
    if cert.rows.iter().chain(&cert.cols).any(|&i| i >= p.size()) {
        return reject("index outside the matrix".into());
    }
    if cert.generator_order != p.basis.order_hash() {
        return reject("generator order does not match the pencil".into());
    }
    let field = p.field();
    let names = p.param_names();
    let c = field.parse_scalar(&cert.scalar)?;
    if c.is_zero() {
        return reject(format!("scalar {} vanishes in {field}", cert.scalar));
    }
    let lambda = MultiPoly::parse(&cert.lambda, &names, field)?;
    if lambda.is_zero() || !lambda.is_homogeneous_of(1) {
        return reject(format!("`{}` is not a nonzero linear form", cert.lambda));
    }
    let det = det_poly(&p.submatrix(&cert.rows, &cert.cols))?;
    if det != lambda.pow(cert.exponent).scale(&c) {
        return reject(format!("determinant is {}", det.display(&names)));
    }
    Ok(cert.exponent)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// `rows = cols`.
    Principal,
    /// All pairs with `rows ≤ cols` lexicographically (transposes give the same determinant).
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    /// Every candidate was examined and none qualifies.
    Exhausted { examined: u64 },
    /// The budget ran out first.
    BudgetExhausted { examined: u64 },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Lexicographically ordered `k`-subsets of `0..n`.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

const FILTER_PRIME: u64 = 2_147_483_647;

/// `M(a)` and `M(b)` modulo a large prime along a fixed random line, used to
/// discard submatrices whose determinant cannot be a pure power.
struct LineFilter {
    a: Vec<u64>,
    b: Vec<u64>,
    n: usize,
}

impl LineFilter {
    fn new(p: &Pencil) -> Option<LineFilter> {
        if p.field() != Field::Rational {
            return None;
        }
        let mats = p.residues(FILTER_PRIME).ok()?;
        let n = p.size();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut line = || {
            let coeffs: Vec<u64> = (0..mats.len()).map(|_| rng.gen_range(1..FILTER_PRIME)).collect();
            let mut m = vec![0u64; n * n];
            for (mk, c) in mats.iter().zip(&coeffs) {
                for (x, y) in m.iter_mut().zip(mk) {
                    *x = modp::add(*x, modp::mul(*y, *c, FILTER_PRIME), FILTER_PRIME);
                }
            }
            m
        };
        let a = line();
        let b = line();
        Some(LineFilter { a, b, n })
    }

    /// Whether `u ↦ det(N(a + u b))` is a scalar times an `s`-th power of a linear polynomial.
    fn passes(&self, rows: &[usize], cols: &[usize]) -> bool {
        let q = FILTER_PRIME;
        let s = rows.len();
        let values: Vec<u64> = (0..=s as u64)
            .map(|u| {
                let mut m = Vec::with_capacity(s * s);
                for &i in rows {
                    for &j in cols {
                        let (x, y) = (self.a[i * self.n + j], self.b[i * self.n + j]);
                        m.push(modp::add(x, modp::mul(u, y, q), q));
                    }
                }
                modp::det_in_place(&mut m, s, q)
            })
            .collect();
        let f = interpolate(&values, q);
        let lead = f[s];
        if lead == 0 {
            return f[0] != 0 && f[1..].iter().all(|&c| c == 0);
        }
        // f = lead·(u + r)^s with r = f_{s-1} / (s·lead)
        let r = modp::mul(f[s - 1], modp::inv(modp::mul(s as u64, lead, q), q), q);
        let mut binom = 1u64;
        for k in 0..=s {
            // coefficient of u^(s-k) is lead·C(s,k)·r^k
            let expected = modp::mul(modp::mul(lead, binom, q), modp::pow(r, k as u64, q), q);
            if f[s - k] != expected {
                return false;
            }
            binom = binom * (s - k) as u64 / (k as u64 + 1);
        }
        true
    }
}

/// Coefficients of the polynomial of degree `< values.len()` through `(u, values[u])`.
fn interpolate(values: &[u64], q: u64) -> Vec<u64> {
    let n = values.len();
    let mut coeffs = vec![0u64; n];
    for (i, &yi) in values.iter().enumerate() {
        if yi == 0 {
            continue;
        }
        // basis polynomial Π_{j≠i} (u - j) / (i - j)
        let mut basis = vec![1u64];
        let mut denom = 1u64;
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![0u64; basis.len() + 1];
            for (k, &c) in basis.iter().enumerate() {
                next[k + 1] = modp::add(next[k + 1], c, q);
                next[k] = modp::add(next[k], q - modp::mul(c, j as u64, q), q);
            }
            basis = next;
            let diff = (i as i64 - j as i64).rem_euclid(q as i64) as u64;
            denom = modp::mul(denom, diff, q);
        }
        let scale = modp::mul(yi, modp::inv(denom, q), q);
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c = modp::add(*c, modp::mul(*b, scale, q), q);
        }
    }
    coeffs
}

/// Returns the first qualifying submatrix in lexicographic order; `budget`
/// bounds the number of candidates examined.
pub fn search_certificate(p: &Pencil, s: usize, mode: SearchMode, budget: u64) -> Result<SearchOutcome> {
    if s > MAX_DET_SIZE {
        return Err(Error::DeterminantBudget(s));
    }
    let n = p.size();
    let sets = subsets(n, s);
    let filter = LineFilter::new(p);
    let mut examined = 0u64;
    let hash = p.basis.order_hash();
    for (ri, rows) in sets.iter().enumerate() {
        let col_sets: &[Vec<usize>] = match mode {
            SearchMode::Principal => std::slice::from_ref(rows),
            SearchMode::Exhaustive => &sets[ri..],
        };
        for cols in col_sets {
            if examined >= budget {
                return Ok(SearchOutcome::BudgetExhausted { examined });
            }
            examined += 1;
            if let Some(f) = &filter {
                if !f.passes(rows, cols) {
                    continue;
                }
            }
            let det = det_poly(&p.submatrix(rows, cols))?;
            if let Some((c, lambda)) = is_scaled_power_of_linear(&det, s as u32) {
                return Ok(SearchOutcome::Found(Certificate {
                    rows: rows.clone(),
                    cols: cols.clone(),
                    lambda: lambda.display(&p.param_names()),
                    exponent: s as u32,
                    scalar: c.to_string(),
                    generator_order: hash,
                }));
            }
        }
    }
    Ok(SearchOutcome::Exhausted { examined })
}
