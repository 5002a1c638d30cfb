//! Explicit generator sets for scrolls, Veronese and Segre varieties, Plücker
//! embeddings, del Pezzo surfaces and their non-normal relatives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::field::Field;
use crate::algebra::poly::{indexed_names, Monomial, MultiPoly};
use crate::algebra::quad::{LinForm, QuadForm};
use crate::catalog::param::{kernel_quadrics, param_drop, veronese_map, MonomialMap, Parametrization};
use crate::catalog::restrict::restrict_hyperplane;
use crate::catalog::{GeneratorSet, Provenance};
use crate::error::{Error, Result};

const BLOCK_LETTERS: &[&str] = &["x", "y", "w", "u", "v", "r", "q", "m"];

fn poly_var(nvars: usize, i: usize) -> MultiPoly {
    MultiPoly::var(Field::Rational, nvars, i)
}

fn binomial_minor(n: usize, a: usize, b: usize, c: usize, d: usize) -> QuadForm {
    // a*b - c*d
    let f = Field::Rational;
    let mut q = QuadForm::zero(f, n);
    q.add_term(a, b, f.one());
    q.add_term(c, d, f.from_i64(-1));
    q
}

/// 2-minors of the concatenated catalecticant matrix of the scroll `S(a_1, …, a_k)`,
/// listed block by block and then across blocks.
pub fn scroll_generators(degrees: &[u32]) -> Result<GeneratorSet> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidSpec(format!("scroll:{degrees:?}")));
    }
    if degrees.len() > BLOCK_LETTERS.len() {
        return Err(Error::OutOfRange(format!("at most {} scroll blocks", BLOCK_LETTERS.len())));
    }
    let k = degrees.len();
    let mut vars = Vec::new();
    let mut offsets = Vec::new();
    for (b, &a) in degrees.iter().enumerate() {
        offsets.push(vars.len());
        let prefix = if k == 1 { "z" } else { BLOCK_LETTERS[b] };
        vars.extend(indexed_names(prefix, a as usize + 1));
    }
    let n = vars.len();

    // parameters s, t and one fibre coordinate per block
    let np = 2 + k;
    let mut param_vars = vec!["s".to_string(), "t".to_string()];
    param_vars.extend(indexed_names("u", k));
    let mut images = Vec::new();
    for (b, &a) in degrees.iter().enumerate() {
        for i in 0..=a {
            let mut e = vec![0u16; np];
            e[0] = (a - i) as u16;
            e[1] = i as u16;
            e[2 + b] = 1;
            images.push(Monomial(e));
        }
    }

    let column = |b: usize, i: usize| (offsets[b] + i, offsets[b] + i + 1);
    let mut gens = Vec::new();
    for (b, &a) in degrees.iter().enumerate() {
        for i in 0..a as usize {
            for j in i + 1..a as usize {
                let (ti, bi) = column(b, i);
                let (tj, bj) = column(b, j);
                gens.push(binomial_minor(n, ti, bj, bi, tj));
            }
        }
    }
    for b1 in 0..k {
        for b2 in b1 + 1..k {
            for i in 0..degrees[b1] as usize {
                for j in 0..degrees[b2] as usize {
                    let (ti, bi) = column(b1, i);
                    let (tj, bj) = column(b2, j);
                    gens.push(binomial_minor(n, ti, bj, bi, tj));
                }
            }
        }
    }
    let map = MonomialMap { param_vars, images };
    Ok(GeneratorSet::new(vars, gens, Provenance::Scroll { degrees: degrees.to_vec() })
        .with_parametrization(map.to_parametrization()))
}

fn kernel_set(map: &MonomialMap, vars: Vec<String>, provenance: Provenance) -> GeneratorSet {
    let param = map.to_parametrization();
    let gens = kernel_quadrics(&param);
    GeneratorSet::new(vars, gens, provenance).with_parametrization(param)
}

/// `I(ν_d(P^n))_2` from the kernel oracle.
pub fn veronese_generators(n: usize, d: u32) -> Result<GeneratorSet> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidSpec(format!("veronese:{n},{d}")));
    }
    let map = veronese_map(n, d);
    let vars = indexed_names("z", map.len());
    Ok(kernel_set(&map, vars, Provenance::Veronese { n, d }))
}

/// Inner projection of `ν_d(P^n)` from `ν_d([0:…:0:1])`, i.e. dropping `x_n^d`.
pub fn veronese_projection(n: usize, d: u32) -> Result<GeneratorSet> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidSpec(format!("vproj:{n},{d}")));
    }
    let full = veronese_map(n, d);
    let map = param_drop(&full, full.len() - 1)?;
    let vars = indexed_names("z", map.len());
    Ok(kernel_set(&map, vars, Provenance::VeroneseProjection { n, d }))
}

/// Multi-indices of the Segre coordinates in lexicographic order.
fn segre_indices(dims: &[u32]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in dims {
        let mut next = Vec::new();
        for prefix in &out {
            for i in 0..=n as usize {
                let mut v = prefix.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Basis of the 2-minors of the generic hypermatrix, with the Segre parametrization.
pub fn segre_generators(dims: &[u32]) -> Result<GeneratorSet> {
    if dims.len() < 2 || dims.contains(&0) {
        return Err(Error::InvalidSpec(format!("segre:{dims:?}")));
    }
    if dims.len() > BLOCK_LETTERS.len() {
        return Err(Error::OutOfRange(format!("at most {} Segre factors", BLOCK_LETTERS.len())));
    }
    let idx = segre_indices(dims);
    let n = idx.len();
    let position = |v: &[usize]| idx.iter().position(|w| w == v).expect("valid index");
    let mut gens = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for f in 0..dims.len() {
                if idx[a][f] == idx[b][f] {
                    continue;
                }
                let mut c = idx[a].clone();
                let mut d = idx[b].clone();
                std::mem::swap(&mut c[f], &mut d[f]);
                let (c, d) = (position(&c), position(&d));
                if (c, d) == (a, b) || (c, d) == (b, a) {
                    continue;
                }
                gens.push(binomial_minor(n, a, b, c, d));
            }
        }
    }

    let letters = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let mut param_vars = Vec::new();
    let mut offsets = Vec::new();
    for (k, &m) in dims.iter().enumerate() {
        offsets.push(param_vars.len());
        param_vars.extend(indexed_names(letters[k], m as usize + 1));
    }
    let images = idx
        .iter()
        .map(|v| {
            let mut e = vec![0u16; param_vars.len()];
            for (k, &i) in v.iter().enumerate() {
                e[offsets[k] + i] = 1;
            }
            Monomial(e)
        })
        .collect();
    let map = MonomialMap { param_vars, images };
    let g = GeneratorSet::new(indexed_names("z", n), gens, Provenance::Segre { dims: dims.to_vec() });
    Ok(g.basis().with_parametrization(map.to_parametrization()))
}

fn plucker_label(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("p{i}{j}")
    } else {
        format!("p{i}_{j}")
    }
}

/// Plücker coordinates `p_ij`, `i < j`, in lexicographic order.
pub fn plucker_vars(n: usize) -> Vec<String> {
    let mut v = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            v.push(plucker_label(i, j, n));
        }
    }
    v
}

/// The relations `p_ij p_kl - p_ik p_jl + p_jk p_il`, one per quadruple `i<j<k<l`.
pub fn plucker_generators(n: usize) -> Result<GeneratorSet> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("plucker needs n >= 3, got {n}")));
    }
    let vars = plucker_vars(n);
    let nv = vars.len();
    let pos = |i: usize, j: usize| vars.iter().position(|v| *v == plucker_label(i, j, n)).expect("label");
    let f = Field::Rational;
    let mut gens = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let mut q = QuadForm::zero(f, nv);
                    q.add_term(pos(i, j), pos(k, l), f.one());
                    q.add_term(pos(i, k), pos(j, l), f.from_i64(-1));
                    q.add_term(pos(j, k), pos(i, l), f.one());
                    gens.push(q);
                }
            }
        }
    }
    // p_ij = a_i b_j - a_j b_i
    let np = 2 * (n + 1);
    let mut param_vars = indexed_names("a", n + 1);
    param_vars.extend(indexed_names("b", n + 1));
    let mut images = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let ab = poly_var(np, i).mul(&poly_var(np, n + 1 + j));
            let ba = poly_var(np, j).mul(&poly_var(np, n + 1 + i));
            images.push(ab.sub(&ba));
        }
    }
    Ok(GeneratorSet::new(vars, gens, Provenance::Plucker { n })
        .with_parametrization(Parametrization { param_vars, images }))
}

const S1_GENERATORS: [&str; 20] = [
    "z7^2 - z6*z8",
    "z5*z7 - z4*z8",
    "z4*z7 - z3*z8",
    "z2*z7 - z1*z8",
    "z5*z6 - z3*z8",
    "z4*z6 - z3*z7",
    "z2*z6 - z1*z7",
    "z4*z5 - z2*z8",
    "z3*z5 - z1*z8",
    "z1*z5 - z0*z8",
    "z4^2 - z1*z8",
    "z3*z4 - z1*z7",
    "z2*z4 - z0*z8",
    "z1*z4 - z0*z7",
    "z3^2 - z1*z6",
    "z2*z3 - z0*z7",
    "z1*z3 - z0*z6",
    "z2^2 - z0*z5",
    "z1*z2 - z0*z4",
    "z1^2 - z0*z3",
];

const S3_EXTRA: [&str; 2] = ["z2*z4 - z1*z5", "z2*z3 - z1*z4"];

/// The five quadrics of the quintic del Pezzo surface. The fourth reads
/// `(z4-z7)*z2 - (z1-z7)*z5`; with `(z1-z5)*z7` in its place it would not
/// vanish on the surface.
const S4_GENERATORS: [&str; 5] = [
    "(z3-z4)*z5 - (z2-z4)*z7",
    "(z4-z5)*z4 - (z2-z5)*z7",
    "(z3-z5)*z4 - (z1+z2-z4-z5)*z7",
    "(z4-z7)*z2 - (z1-z7)*z5",
    "(z3-z7)*z2 - (z1-z7)*z4",
];

fn parse_products(text: &str, vars: &[String]) -> Result<QuadForm> {
    // `(l1)*(l2) - (l3)*(l4)` or `(l1)*z - (l2)*z'`
    let (lhs, rhs) = text
        .split_once(" - (")
        .ok_or_else(|| Error::Parse(format!("unexpected generator layout `{text}`")))?;
    let term = |t: &str| -> Result<QuadForm> {
        let t = t.trim().trim_start_matches('(');
        let (a, b) = t
            .split_once(")*")
            .ok_or_else(|| Error::Parse(format!("unexpected product `{t}`")))?;
        let la = LinForm::from_poly(&MultiPoly::parse(a, vars, Field::Rational)?)?;
        let lb = LinForm::from_poly(&MultiPoly::parse(b, vars, Field::Rational)?)?;
        Ok(QuadForm::product(&la, &lb))
    };
    Ok(term(lhs)?.sub(&term(rhs)?))
}

/// Smooth del Pezzo surfaces `S_0 … S_5`.
pub fn delpezzo_surface(t: u8) -> Result<GeneratorSet> {
    let v23 = veronese_map(2, 3);
    let labels = |keep: &[usize]| keep.iter().map(|i| format!("z{i}")).collect::<Vec<_>>();
    let provenance = Provenance::DelPezzo { t };
    match t {
        0 => Ok(kernel_set(&v23, indexed_names("z", 10), provenance)),
        1..=3 => {
            let keep: Vec<usize> = match t {
                1 => (0..9).collect(),
                2 => (0..9).filter(|&i| i != 6).collect(),
                _ => (0..9).filter(|&i| i != 6 && i != 0).collect(),
            };
            let vars = labels(&keep);
            let full = indexed_names("z", 9);
            let mut gens = Vec::new();
            for text in S1_GENERATORS {
                let q = QuadForm::parse(text, &full, Field::Rational)?;
                if q.support().iter().all(|i| keep.contains(i)) {
                    gens.push(QuadForm::parse(text, &vars, Field::Rational)?);
                }
            }
            if t == 3 {
                // only seven list members avoid z0 and z6; these differences of
                // list members complete the nine
                for text in S3_EXTRA {
                    gens.push(QuadForm::parse(text, &vars, Field::Rational)?);
                }
            }
            let param = v23.to_parametrization().keep(&keep);
            Ok(GeneratorSet::new(vars, gens, provenance).with_parametrization(param))
        }
        4 => {
            let keep = [1, 2, 3, 4, 5, 7];
            let vars = labels(&keep);
            let gens = S4_GENERATORS
                .iter()
                .map(|t| parse_products(t, &vars))
                .collect::<Result<Vec<_>>>()?;
            // cubics through the three coordinate points and [1:1:1]
            let base = v23.to_parametrization();
            let images = keep.iter().map(|&i| base.images[i].sub(&base.images[8])).collect();
            let param = Parametrization { param_vars: base.param_vars, images };
            Ok(GeneratorSet::new(vars, gens, provenance).with_parametrization(param))
        }
        5 => {
            let y = veronese_generators(3, 2)?;
            let l = LinForm::from_poly(&MultiPoly::parse("z3 - z5", &y.vars, Field::Rational)?)?;
            let mut s5 = restrict_hyperplane(&y, &l, 3)?;
            s5.provenance = provenance;
            s5.parametrization = Some(quadric_surface_param());
            Ok(s5)
        }
        _ => Err(Error::OutOfRange(format!("del Pezzo index {t} not in 0..=5"))),
    }
}

/// `ν_2` of the quadric `x0 x3 = x1 x2` through `P^1 × P^1`, on the coordinates
/// left after eliminating `z3`.
fn quadric_surface_param() -> Parametrization {
    let np = 4; // s0 s1 t0 t1
    let v = |i| poly_var(np, i);
    let xs = [v(0).mul(&v(2)), v(0).mul(&v(3)), v(1).mul(&v(2)), v(1).mul(&v(3))];
    let mut images = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            if (i, j) != (0, 3) {
                images.push(xs[i].mul(&xs[j]));
            }
        }
    }
    Parametrization { param_vars: vec!["s0".into(), "s1".into(), "t0".into(), "t1".into()], images }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NonNormalKind {
    S1,
    S2,
    T,
}

impl fmt::Display for NonNormalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonNormalKind::S1 => "S1",
            NonNormalKind::S2 => "S2",
            NonNormalKind::T => "T",
        })
    }
}

impl FromStr for NonNormalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S1" => Ok(NonNormalKind::S1),
            "S2" => Ok(NonNormalKind::S2),
            "T" => Ok(NonNormalKind::T),
            _ => Err(Error::InvalidSpec(format!("nonnormal kind `{s}`"))),
        }
    }
}

/// Non-normal del Pezzo surfaces `A1 ∪ B1`, `A1 ∪ B2` in `P^(e+2)` and the
/// threefold `A2 ∪ C` in `P^(e+3)`.
pub fn nonnormal_delpezzo(kind: NonNormalKind, e: usize) -> Result<GeneratorSet> {
    if e < 3 {
        return Err(Error::OutOfRange(format!("nonnormal needs e >= 3, got {e}")));
    }
    let f = Field::Rational;
    let n = match kind {
        NonNormalKind::T => e + 4,
        _ => e + 3,
    };
    let lo = if kind == NonNormalKind::T { 3 } else { 2 };
    let mut gens = Vec::new();
    for i in lo..=n - 2 {
        for j in i + 1..=n - 2 {
            gens.push(binomial_minor(n, i, j + 1, i + 1, j));
        }
    }
    let three = |terms: [(i64, usize, usize); 3]| QuadForm::from_terms(f, n, &terms);
    match kind {
        NonNormalKind::S1 => {
            for i in 3..=e + 1 {
                gens.push(three([(1, 2, i - 1), (1, 1, i), (-1, 0, i + 1)]));
            }
        }
        NonNormalKind::S2 => {
            for i in 3..=e + 1 {
                let mut q = QuadForm::zero(f, n);
                q.add_term(1, i - 1, f.one());
                q.add_term(0, i + 1, f.from_i64(-1));
                gens.push(q);
            }
        }
        NonNormalKind::T => {
            for i in 4..=e + 2 {
                gens.push(three([(1, 1, i - 1), (1, 0, i), (-1, 2, i + 1)]));
            }
        }
    }
    let param = nonnormal_param(kind, e);
    Ok(GeneratorSet::new(indexed_names("z", n), gens, Provenance::NonNormal { kind, e })
        .with_parametrization(param))
}

fn nonnormal_param(kind: NonNormalKind, e: usize) -> Parametrization {
    let mono = |np: usize, exps: &[(usize, u16)]| {
        let mut m = vec![0u16; np];
        for &(i, k) in exps {
            m[i] += k;
        }
        MultiPoly::monomial(Field::Rational, Monomial(m), Field::Rational.one())
    };
    match kind {
        NonNormalKind::S1 | NonNormalKind::S2 => {
            // s t x y
            let np = 4;
            let mut images = Vec::new();
            if kind == NonNormalKind::S1 {
                images.push(mono(np, &[(0, 1), (2, 1)]));
                images.push(mono(np, &[(1, 1), (2, 1)]).sub(&mono(np, &[(0, e as u16 + 1), (3, 1)])));
                for j in 2..=e + 2 {
                    images.push(mono(np, &[(0, (e + 2 - j) as u16), (1, (j - 1) as u16), (3, 1)]));
                }
            } else {
                images.push(mono(np, &[(0, 2), (2, 1)]));
                images.push(mono(np, &[(1, 2), (2, 1)]));
                for j in 2..=e + 2 {
                    images.push(mono(np, &[(0, (e + 2 - j) as u16), (1, (j - 2) as u16), (3, 1)]));
                }
            }
            Parametrization { param_vars: ["s", "t", "x", "y"].map(String::from).to_vec(), images }
        }
        NonNormalKind::T => {
            // a b s t w
            let np = 5;
            let mut images = vec![
                mono(np, &[(0, 1), (2, 1)]).add(&mono(np, &[(1, 1), (3, 1)])),
                mono(np, &[(0, 1), (3, 1)]).neg(),
                mono(np, &[(1, 1), (2, 1)]),
            ];
            for j in 3..=e + 3 {
                images.push(mono(np, &[(2, (e + 3 - j) as u16), (3, (j - 3) as u16), (4, 1)]));
            }
            Parametrization { param_vars: ["a", "b", "s", "t", "w"].map(String::from).to_vec(), images }
        }
    }
}

/// The hyperplanes cutting `G(1,P^4)` down to `X_5`, `X_4`, `X_3`, with the
/// coordinate each one eliminates.
pub const GRASSMANN_HYPERPLANES: [(&str, &str); 3] = [
    ("p34 - p01 - p02", "p34"),
    ("p24 - p03 - p04", "p24"),
    ("p23 - p12 - p13 - p14", "p23"),
];

/// Linear sections `X_k ⊂ P^(k+3)` of `G(1,P^4)`, `k ∈ {3,4,5}`.
pub fn grassmann_section(k: u8) -> Result<GeneratorSet> {
    if !(3..=5).contains(&k) {
        return Err(Error::OutOfRange(format!("grassmann section dimension {k} not in 3..=5")));
    }
    let mut g = plucker_generators(4)?;
    for (form, pivot) in GRASSMANN_HYPERPLANES.iter().take(6 - k as usize) {
        let l = LinForm::from_poly(&MultiPoly::parse(form, &g.vars, Field::Rational)?)?;
        let p = g.vars.iter().position(|v| v == pivot).expect("pivot label");
        g = restrict_hyperplane(&g, &l, p)?;
    }
    g.provenance = Provenance::GrassmannSection { k };
    g.parametrization = None;
    Ok(g)
}
