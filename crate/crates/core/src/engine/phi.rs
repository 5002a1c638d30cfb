//! Exhaustive enumeration of `P(I_2)` over GF(q), stratified by rank.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::field::{symmetric, Field};
use crate::algebra::linalg::nullspace;
use crate::algebra::quad::LinForm;
use crate::engine::modp::{self, ModBasis};
use crate::engine::pencil::Pencil;
use crate::error::{Error, Result};

/// Default cap on rank evaluations per enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "QUADRANK_BUDGET";

/// Small-height points kept per rank as alternates for lifting.
const CANDIDATE_CAP: usize = 512;

const CHUNK: u64 = 1 << 14;

pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().replace('_', "").parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_BUDGET)
}

/// Number of projective points of `P^(dim-1)(GF(q))`, if it fits in a `u64`.
pub fn projective_count(q: u64, dim: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut block: u64 = 1;
    for _ in 0..dim {
        total = total.checked_add(block)?;
        block = block.checked_mul(q)?;
    }
    Some(total)
}

/// Everything one pass over `P^t(GF(q))` learns, for all rank bounds at once.
#[derive(Clone, Debug, Serialize)]
pub struct PhiScan {
    pub q: u64,
    pub dim: usize,
    /// `counts[r]` = number of projective points of rank exactly `r`.
    pub counts: Vec<u64>,
    /// Greedy independent points of rank exactly `r`, in enumeration order.
    #[serde(skip)]
    picks: Vec<Vec<Vec<u64>>>,
    /// First points of rank exactly `r` whose coordinates all lie in `{-1, 0, 1}`.
    #[serde(skip)]
    small: Vec<Vec<Vec<u64>>>,
}

/// The points of `Φ_k` found over GF(q).
#[derive(Clone, Debug, Serialize)]
pub struct PhiSample {
    pub q: u64,
    pub k: usize,
    /// Greedy spanning subset of `Φ_k`, in enumeration order.
    pub points: Vec<Vec<u64>>,
    /// Further small-height points of `Φ_k`, tried as alternates when lifting.
    pub alternates: Vec<Vec<u64>>,
    /// Total number of projective points in `Φ_k`.
    pub count: u64,
    pub span_dim: usize,
    pub dim: usize,
}

struct ChunkResult {
    counts: Vec<u64>,
    picks: Vec<Vec<Vec<u64>>>,
    small: Vec<Vec<Vec<u64>>>,
}

/// One contiguous run of points sharing their leading coordinate.
#[derive(Clone, Copy)]
struct Chunk {
    lead: usize,
    start: u64,
    len: u64,
}

fn chunks(q: u64, dim: usize) -> Vec<Chunk> {
    let mut out = Vec::new();
    for lead in 0..dim {
        let size = q.pow((dim - 1 - lead) as u32);
        let mut start = 0;
        while start < size {
            let len = CHUNK.min(size - start);
            out.push(Chunk { lead, start, len });
            start += len;
        }
    }
    out
}

fn is_small(x: &[u64], q: u64) -> bool {
    x.iter().all(|&v| v <= 1 || v == q - 1)
}

fn scan_chunk(mats: &[Vec<u64>], n: usize, q: u64, c: Chunk) -> ChunkResult {
    let dim = mats.len();
    let mut counts = vec![0u64; n + 1];
    let mut bases = vec![ModBasis::default(); n + 1];
    let mut picks = vec![Vec::new(); n + 1];
    let mut small = vec![Vec::new(); n + 1];
    let mut x = vec![0u64; dim];
    x[c.lead] = 1;
    let mut rest = c.start;
    for j in (c.lead + 1..dim).rev() {
        x[j] = rest % q;
        rest /= q;
    }
    let mut m = vec![0u64; n * n];
    for (mk, &xk) in mats.iter().zip(&x) {
        if xk != 0 {
            for (a, b) in m.iter_mut().zip(mk) {
                *a = modp::add(*a, modp::mul(*b, xk, q), q);
            }
        }
    }
    let mut work = vec![0u64; n * n];
    for step in 0..c.len {
        if step > 0 {
            // odometer, last coordinate fastest; a wrap from q-1 to 0 also adds M_j
            let mut j = dim - 1;
            loop {
                x[j] = if x[j] + 1 == q { 0 } else { x[j] + 1 };
                for (a, b) in m.iter_mut().zip(&mats[j]) {
                    *a = modp::add(*a, *b, q);
                }
                if x[j] != 0 || j == c.lead + 1 {
                    break;
                }
                j -= 1;
            }
        }
        work.copy_from_slice(&m);
        let r = modp::rank_in_place(&mut work, n, q);
        counts[r] += 1;
        if bases[r].dim() < dim && bases[r].insert(&x, q) {
            picks[r].push(x.clone());
        }
        if small[r].len() < CANDIDATE_CAP && is_small(&x, q) {
            small[r].push(x.clone());
        }
    }
    ChunkResult { counts, picks, small }
}

/// Enumerates every projective point of the pencil over GF(q), with the first
/// nonzero coordinate normalized to one. Refuses when the point count exceeds `budget`.
pub fn phi_scan(p: &Pencil, q: u64, budget: u64) -> Result<PhiScan> {
    Field::prime(q)?;
    let dim = p.dim();
    let needed = projective_count(q, dim).unwrap_or(u64::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed: needed as u128, budget });
    }
    let mats = p.residues(q)?;
    let n = p.size();
    let results: Vec<ChunkResult> = chunks(q, dim)
        .into_par_iter()
        .map(|c| scan_chunk(&mats, n, q, c))
        .collect();
    let mut counts = vec![0u64; n + 1];
    let mut picks = vec![Vec::new(); n + 1];
    let mut small = vec![Vec::new(); n + 1];
    let mut bases = vec![ModBasis::default(); n + 1];
    // greedy over the concatenated chunk-local picks equals greedy over all points
    for res in results {
        for r in 0..=n {
            counts[r] += res.counts[r];
            for x in res.picks[r].iter() {
                if bases[r].insert(x, q) {
                    picks[r].push(x.clone());
                }
            }
            for x in res.small[r].iter() {
                if small[r].len() < CANDIDATE_CAP {
                    small[r].push(x.clone());
                }
            }
        }
    }
    Ok(PhiScan { q, dim, counts, picks, small })
}

impl PhiScan {
    /// Points of rank at most `k`.
    pub fn sample(&self, k: usize) -> PhiSample {
        let mut basis = ModBasis::default();
        let mut points = Vec::new();
        let mut alternates = Vec::new();
        let top = k.min(self.counts.len() - 1);
        for r in 0..=top {
            for x in &self.picks[r] {
                if basis.insert(x, self.q) {
                    points.push(x.clone());
                }
            }
        }
        for r in 0..=top {
            alternates.extend(self.small[r].iter().cloned());
        }
        PhiSample {
            q: self.q,
            k,
            span_dim: basis.dim(),
            points,
            alternates,
            count: self.counts[..=top].iter().sum(),
            dim: self.dim,
        }
    }

    pub fn span_dims(&self) -> Vec<usize> {
        (0..self.counts.len()).map(|k| self.sample(k).span_dim).collect()
    }

    /// Least `s` with `Φ_s` spanning.
    pub fn rank_index(&self) -> usize {
        (0..self.counts.len())
            .find(|&k| self.sample(k).span_dim == self.dim)
            .expect("the whole space has rank at most the matrix size")
    }
}

pub fn phi_enumerate(p: &Pencil, k: usize, q: u64, budget: u64) -> Result<PhiSample> {
    Ok(phi_scan(p, q, budget)?.sample(k))
}

pub fn bruteforce_rank_index(p: &Pencil, q: u64, budget: u64) -> Result<usize> {
    Ok(phi_scan(p, q, budget)?.rank_index())
}

impl PhiSample {
    pub fn field(&self) -> Field {
        Field::Prime(self.q)
    }

    /// Symmetric integer representatives in `[-(q-1)/2, (q-1)/2]`.
    pub fn lifted(x: &[u64], q: u64) -> Vec<i64> {
        x.iter().map(|&v| symmetric(v, q)).collect()
    }

    /// Linear forms in `x` vanishing on every sampled point, in reduced echelon form.
    pub fn linear_forms(&self) -> Vec<LinForm> {
        linear_forms_on_phi(self)
    }
}

pub fn linear_forms_on_phi(sample: &PhiSample) -> Vec<LinForm> {
    let f = sample.field();
    let rows: Vec<Vec<_>> = sample
        .points
        .iter()
        .map(|x| x.iter().map(|&v| f.from_i64(v as i64)).collect())
        .collect();
    let kernel = nullspace(&rows, sample.dim, f);
    let reduced = crate::algebra::linalg::rref(&kernel);
    reduced.basis.into_iter().map(LinForm::from_coeffs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldElement;
    use crate::algebra::quad::sym_rank;
    use crate::catalog::{plucker_generators, scroll_generators, segre_generators};

    #[test]
    fn counts_cover_projective_space() {
        let p = Pencil::assemble(&scroll_generators(&[1, 2]).unwrap()).unwrap();
        let scan = phi_scan(&p, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(scan.counts.iter().sum::<u64>(), projective_count(5, 3).unwrap());
        assert_eq!(scan.counts[0], 0);
        assert_eq!(scan.rank_index(), 4);
    }

    #[test]
    fn stored_points_satisfy_their_bound() {
        let p = Pencil::assemble(&scroll_generators(&[1, 2]).unwrap()).unwrap();
        let f = Field::prime(7).unwrap();
        let pf = p.to_field(f).unwrap();
        let scan = phi_scan(&p, 7, DEFAULT_BUDGET).unwrap();
        for k in 0..=5 {
            let s = scan.sample(k);
            for x in s.points.iter().chain(&s.alternates) {
                let xe: Vec<FieldElement> = x.iter().map(|&v| f.from_i64(v as i64)).collect();
                assert!(sym_rank(&pf.eval(&xe)) <= k);
            }
        }
    }

    #[test]
    fn plucker_hypersurface() {
        let p = Pencil::assemble(&plucker_generators(3).unwrap()).unwrap();
        let s5 = phi_enumerate(&p, 5, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!((s5.count, s5.span_dim), (0, 0));
        let s6 = phi_enumerate(&p, 6, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!((s6.count, s6.span_dim), (1, 1));
    }

    #[test]
    fn segre_has_no_rank_three_members() {
        let p = Pencil::assemble(&segre_generators(&[1, 2]).unwrap()).unwrap();
        let s = phi_enumerate(&p, 3, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.count, 0);
        assert_eq!(linear_forms_on_phi(&s).len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let p = Pencil::assemble(&segre_generators(&[1, 2]).unwrap()).unwrap();
        assert!(matches!(phi_scan(&p, 5, 30), Err(Error::BudgetExceeded { needed: 31, budget: 30 })));
    }

    #[test]
    fn chunking_does_not_change_results() {
        // a scan small enough for one chunk agrees with a point-by-point greedy pass
        let p = Pencil::assemble(&scroll_generators(&[1, 3]).unwrap()).unwrap();
        let q = 3;
        let scan = phi_scan(&p, q, DEFAULT_BUDGET).unwrap();
        let mats = p.residues(q).unwrap();
        let dim = p.dim();
        let mut whole = ChunkResult { counts: vec![0; p.size() + 1], picks: vec![Vec::new(); p.size() + 1], small: vec![] };
        for lead in 0..dim {
            let size = q.pow((dim - 1 - lead) as u32);
            for start in 0..size {
                let one = scan_chunk(&mats, p.size(), q, Chunk { lead, start, len: 1 });
                for r in 0..=p.size() {
                    whole.counts[r] += one.counts[r];
                    whole.picks[r].extend(one.picks[r].iter().cloned());
                }
            }
        }
        assert_eq!(whole.counts, scan.counts);
        for r in 0..=p.size() {
            let mut b = ModBasis::default();
            let greedy: Vec<_> = whole.picks[r].iter().filter(|x| b.insert(x, q)).cloned().collect();
            assert_eq!(greedy, scan.picks[r]);
        }
    }
}
