//! Test oracles written against plain integer arithmetic, independent of the
//! library's field and linear-algebra code.
#![allow(dead_code)]

use quadrank::algebra::{FieldElement, MultiPoly, QuadForm};
use quadrank::catalog::Parametrization;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: i64 = 1_000_003;

pub fn md(v: i64, p: i64) -> i64 {
    v.rem_euclid(p)
}

pub fn inv(a: i64, p: i64) -> i64 {
    let (mut r0, mut r1, mut s0, mut s1) = (md(a, p), p, 1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{a} not invertible mod {p}");
    md(s0, p)
}

/// Rank of an integer matrix reduced mod `p`.
pub fn rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| md(v, p)).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let iv = inv(m[rank][c], p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * iv % p;
                for k in c..ncols {
                    m[r][k] = md(m[r][k] - f * m[rank][k], p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn det_mod(rows: &[Vec<i64>], p: i64) -> i64 {
    let n = rows.len();
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&v| md(v, p)).collect()).collect();
    let mut det = 1;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if piv != c {
            m.swap(c, piv);
            det = md(-det, p);
        }
        det = det * m[c][c] % p;
        let iv = inv(m[c][c], p);
        for r in c + 1..n {
            let f = m[r][c] * iv % p;
            for k in c..n {
                m[r][k] = md(m[r][k] - f * m[c][k], p);
            }
        }
    }
    det
}

pub fn int(c: &FieldElement) -> i64 {
    let v = c.to_integer().expect("integer coefficient");
    i64::try_from(v).expect("small coefficient")
}

/// The symmetric matrix with `M_ii = 2 a_ii` and `M_ij = a_ij`.
pub fn int_matrix(q: &QuadForm) -> Vec<Vec<i64>> {
    let n = q.nvars();
    let mut m = vec![vec![0i64; n]; n];
    for (&(i, j), c) in q.terms() {
        if i == j {
            m[i][i] += 2 * int(c);
        } else {
            m[i][j] += int(c);
            m[j][i] += int(c);
        }
    }
    m
}

/// Evaluates a polynomial with integer coefficients at a point mod `p`.
pub fn eval_mod(f: &MultiPoly, x: &[i64], p: i64) -> i64 {
    let mut acc = 0;
    for (m, c) in f.terms() {
        let mut t = md(int(c), p);
        for (e, xi) in m.0.iter().zip(x) {
            for _ in 0..*e {
                t = t * xi % p;
            }
        }
        acc = (acc + t) % p;
    }
    acc
}

/// `dim I(X)_2` for the image of a parametrization: the number of quadratic
/// monomials in `z` minus the rank of their values at random parameter points.
pub fn i2_dim_oracle(param: &Parametrization, seed: u64) -> usize {
    let n = param.images.len();
    let nq = n * (n + 1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<i64>> = (0..nq + 12)
        .map(|_| {
            let t: Vec<i64> = param.param_vars.iter().map(|_| rng.gen_range(1..P)).collect();
            let z: Vec<i64> = param.images.iter().map(|f| eval_mod(f, &t, P)).collect();
            let mut row = Vec::with_capacity(nq);
            for i in 0..n {
                for j in i..n {
                    row.push(z[i] * z[j] % P);
                }
            }
            row
        })
        .collect();
    nq - rank_mod(&rows, P)
}

/// Whether `q` vanishes at random points of the parametrization.
pub fn vanishes_on(q: &QuadForm, param: &Parametrization, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..8).all(|_| {
        let t: Vec<i64> = param.param_vars.iter().map(|_| rng.gen_range(1..P)).collect();
        let z: Vec<i64> = param.images.iter().map(|f| eval_mod(f, &t, P)).collect();
        let mut acc = 0;
        for (&(i, j), c) in q.terms() {
            acc = md(acc + md(int(c), P) * (z[i] * z[j] % P), P);
        }
        acc == 0
    })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Catalog specs that carry a parametrization.
pub const PARAMETRIZED: &[&str] = &[
    "scroll:1,2", "scroll:2,2", "scroll:1,4", "scroll:1,1,2", "scroll:3", "scroll:2,3",
    "veronese:1,3", "veronese:1,5", "veronese:2,2", "veronese:2,3", "veronese:3,2",
    "vproj:3,2", "vproj:2,3",
    "segre:1,1", "segre:1,2", "segre:1,1,1", "segre:2,2", "segre:1,3",
    "plucker:3", "plucker:4", "plucker:5",
    "delpezzo:S0", "delpezzo:S1", "delpezzo:S2", "delpezzo:S3", "delpezzo:S4", "delpezzo:S5",
    "nonnormal:S1,e=3", "nonnormal:S1,e=4", "nonnormal:S1,e=6",
    "nonnormal:S2,e=3", "nonnormal:S2,e=5", "nonnormal:T,e=3", "nonnormal:T,e=5",
];

/// A rational coefficient reduced mod `p`.
pub fn residue(c: &FieldElement, p: i64) -> i64 {
    if let Some(v) = c.residue() {
        return v as i64 % p;
    }
    let r = c.as_rational().expect("rational or modular element");
    let num = md(i64::try_from(r.numer() % p).unwrap(), p);
    let den = md(i64::try_from(r.denom() % p).unwrap(), p);
    num * inv(den, p) % p
}

/// The symmetric matrix of `q` reduced mod `p`.
pub fn residue_matrix(q: &QuadForm, p: i64) -> Vec<Vec<i64>> {
    let n = q.nvars();
    let mut m = vec![vec![0i64; n]; n];
    for (&(i, j), c) in q.terms() {
        let c = residue(c, p);
        if i == j {
            m[i][i] = md(m[i][i] + 2 * c, p);
        } else {
            m[i][j] = md(m[i][j] + c, p);
            m[j][i] = md(m[j][i] + c, p);
        }
    }
    m
}

/// Independent brute force over `P^t(GF(q))`: per-rank point counts and the
/// dimension spanned by the points of rank `≤ k` for each `k`.
pub struct Brute {
    pub counts: Vec<u64>,
    pub span_dims: Vec<usize>,
}

pub fn brute(gens: &[QuadForm], q: i64) -> Brute {
    let mats: Vec<Vec<Vec<i64>>> = gens.iter().map(|g| residue_matrix(g, q)).collect();
    let n = gens[0].nvars();
    let dim = gens.len();
    let mut by_rank: Vec<Vec<Vec<i64>>> = vec![Vec::new(); n + 1];
    let mut x = vec![0i64; dim];
    for lead in (0..dim).rev() {
        // points whose first nonzero coordinate is `lead`
        let free = dim - lead - 1;
        let total = (q as u64).pow(free as u32);
        for code in 0..total {
            x.iter_mut().for_each(|v| *v = 0);
            x[lead] = 1;
            let mut c = code;
            for v in x.iter_mut().skip(lead + 1) {
                *v = (c % q as u64) as i64;
                c /= q as u64;
            }
            let mut m = vec![vec![0i64; n]; n];
            for (k, mk) in mats.iter().enumerate() {
                if x[k] != 0 {
                    for i in 0..n {
                        for j in 0..n {
                            m[i][j] = (m[i][j] + x[k] * mk[i][j]) % q;
                        }
                    }
                }
            }
            by_rank[rank_mod(&m, q)].push(x.clone());
        }
    }
    let counts = by_rank.iter().map(|v| v.len() as u64).collect();
    let mut acc: Vec<Vec<i64>> = Vec::new();
    let mut span_dims = Vec::new();
    for pts in &by_rank {
        acc.extend(pts.iter().cloned());
        if acc.len() > 4 * dim {
            let r = rank_mod(&acc, q);
            acc = basis_rows(&acc, q, r);
        }
        span_dims.push(rank_mod(&acc, q));
    }
    Brute { counts, span_dims }
}

fn basis_rows(rows: &[Vec<i64>], q: i64, target: usize) -> Vec<Vec<i64>> {
    let mut kept: Vec<Vec<i64>> = Vec::new();
    for r in rows {
        kept.push(r.clone());
        if rank_mod(&kept, q) < kept.len() {
            kept.pop();
        }
        if kept.len() == target {
            break;
        }
    }
    kept
}

impl Brute {
    pub fn rank_index(&self) -> usize {
        let dim = *self.span_dims.last().unwrap();
        self.span_dims.iter().position(|&d| d == dim).unwrap()
    }
}
