//! Dense `u64` arithmetic modulo a prime `q < 2^31`, for the hot loops.

#[inline]
pub fn add(a: u64, b: u64, q: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub fn mul(a: u64, b: u64, q: u64) -> u64 {
    a * b % q
}

pub fn pow(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b, q);
        }
        b = mul(b, b, q);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64, q: u64) -> u64 {
    pow(a, q - 2, q)
}

/// Rank of the `n×n` row-major matrix `m`, destroying it.
pub fn rank_in_place(m: &mut [u64], n: usize, q: u64) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        if p != rank {
            for c in col..n {
                m.swap(p * n + c, rank * n + c);
            }
        }
        let pinv = inv(m[rank * n + col], q);
        for r in rank + 1..n {
            let f = m[r * n + col];
            if f == 0 {
                continue;
            }
            let f = mul(f, pinv, q);
            for c in col..n {
                let v = mul(f, m[rank * n + c], q);
                m[r * n + c] = add(m[r * n + c], q - v, q);
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of the `n×n` row-major matrix `m`, destroying it.
pub fn det_in_place(m: &mut [u64], n: usize, q: u64) -> u64 {
    let mut det = 1;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| m[r * n + col] != 0) else {
            return 0;
        };
        if p != col {
            for c in 0..n {
                m.swap(p * n + c, col * n + c);
            }
            det = q - det;
        }
        let pivot = m[col * n + col];
        det = mul(det, pivot, q);
        let pinv = inv(pivot, q);
        for r in col + 1..n {
            let f = m[r * n + col];
            if f == 0 {
                continue;
            }
            let f = mul(f, pinv, q);
            for c in col..n {
                let v = mul(f, m[col * n + c], q);
                m[r * n + c] = add(m[r * n + c], q - v, q);
            }
        }
    }
    det % q
}

/// Echelon basis over GF(q) for greedy independent selection.
#[derive(Clone, Debug, Default)]
pub struct ModBasis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[u64], q: u64) -> bool {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            let f = r[*p];
            if f == 0 {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x = add(*x, q - mul(f, *y, q), q);
            }
        }
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let pinv = inv(r[p], q);
        for x in r.iter_mut() {
            *x = mul(*x, pinv, q);
        }
        self.rows.push((p, r));
        true
    }
}
