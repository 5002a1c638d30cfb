//! Variety spec strings such as `scroll:1,2`, `nonnormal:S1,e=3` or
//! `segre:2,2|z0+z4+z8`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::Field;
use crate::algebra::poly::MultiPoly;
use crate::algebra::quad::LinForm;
use crate::catalog::families::{
    delpezzo_surface, grassmann_section, nonnormal_delpezzo, plucker_generators, scroll_generators,
    segre_generators, veronese_generators, veronese_projection, NonNormalKind,
};
use crate::catalog::restrict::restrict_hyperplane;
use crate::catalog::GeneratorSet;
use crate::error::{Error, Result};

/// A hyperplane used to cut a catalog variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Hyperplane {
    /// A linear form in the base variety's coordinate labels.
    Form(String),
    /// Integer coefficients in `[-3, 3]` drawn from a seeded generator; the
    /// last coordinate is the pivot with coefficient 1.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarietySpec {
    Scroll(Vec<u32>),
    Veronese { n: usize, d: u32 },
    VeroneseProjection { n: usize, d: u32 },
    Segre(Vec<u32>),
    Plucker(usize),
    DelPezzo(u8),
    NonNormal { kind: NonNormalKind, e: usize },
    GrassmannSection(u8),
    Section { base: Box<VarietySpec>, hyperplane: Hyperplane },
}

fn parse_list(s: &str, whole: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| Error::InvalidSpec(whole.to_string())))
        .collect()
}

impl FromStr for VarietySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let invalid = || Error::InvalidSpec(text.to_string());
        if let Some((base, plane)) = text.rsplit_once('|') {
            let base: VarietySpec = base.parse()?;
            let plane = plane.trim();
            let hyperplane = match plane.strip_prefix("random:") {
                Some(seed) => Hyperplane::Random(seed.trim().parse().map_err(|_| invalid())?),
                None if plane.is_empty() => return Err(invalid()),
                None => Hyperplane::Form(plane.to_string()),
            };
            return Ok(VarietySpec::Section { base: Box::new(base), hyperplane });
        }
        let (family, args) = text.trim().split_once(':').ok_or_else(invalid)?;
        let args = args.trim();
        let spec = match family {
            "scroll" => VarietySpec::Scroll(parse_list(args, text)?),
            "veronese" | "vproj" => {
                let v = parse_list(args, text)?;
                let [n, d] = v[..] else { return Err(invalid()) };
                if family == "veronese" {
                    VarietySpec::Veronese { n: n as usize, d }
                } else {
                    VarietySpec::VeroneseProjection { n: n as usize, d }
                }
            }
            "segre" => VarietySpec::Segre(parse_list(args, text)?),
            "plucker" => VarietySpec::Plucker(args.parse().map_err(|_| invalid())?),
            "delpezzo" => {
                let t = args.strip_prefix('S').ok_or_else(invalid)?;
                VarietySpec::DelPezzo(t.parse().map_err(|_| invalid())?)
            }
            "nonnormal" => {
                let (kind, e) = args.split_once(',').ok_or_else(invalid)?;
                let e = e.trim().strip_prefix("e=").ok_or_else(invalid)?;
                VarietySpec::NonNormal {
                    kind: kind.trim().parse()?,
                    e: e.parse().map_err(|_| invalid())?,
                }
            }
            "grassec" => VarietySpec::GrassmannSection(args.parse().map_err(|_| invalid())?),
            _ => return Err(invalid()),
        };
        Ok(spec)
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Scroll(d) => write!(f, "scroll:{}", join(d)),
            VarietySpec::Veronese { n, d } => write!(f, "veronese:{n},{d}"),
            VarietySpec::VeroneseProjection { n, d } => write!(f, "vproj:{n},{d}"),
            VarietySpec::Segre(d) => write!(f, "segre:{}", join(d)),
            VarietySpec::Plucker(n) => write!(f, "plucker:{n}"),
            VarietySpec::DelPezzo(t) => write!(f, "delpezzo:S{t}"),
            VarietySpec::NonNormal { kind, e } => write!(f, "nonnormal:{kind},e={e}"),
            VarietySpec::GrassmannSection(k) => write!(f, "grassec:{k}"),
            VarietySpec::Section { base, hyperplane } => match hyperplane {
                Hyperplane::Form(l) => write!(f, "{base}|{l}"),
                Hyperplane::Random(seed) => write!(f, "{base}|random:{seed}"),
            },
        }
    }
}

impl VarietySpec {
    /// The generator set over ℚ.
    pub fn build(&self) -> Result<GeneratorSet> {
        match self {
            VarietySpec::Scroll(d) => scroll_generators(d),
            VarietySpec::Veronese { n, d } => veronese_generators(*n, *d),
            VarietySpec::VeroneseProjection { n, d } => veronese_projection(*n, *d),
            VarietySpec::Segre(d) => segre_generators(d),
            VarietySpec::Plucker(n) => plucker_generators(*n),
            VarietySpec::DelPezzo(t) => delpezzo_surface(*t),
            VarietySpec::NonNormal { kind, e } => nonnormal_delpezzo(*kind, *e),
            VarietySpec::GrassmannSection(k) => grassmann_section(*k),
            VarietySpec::Section { base, hyperplane } => {
                let g = base.build()?;
                let (l, pivot) = hyperplane.resolve(&g.vars)?;
                restrict_hyperplane(&g, &l, pivot)
            }
        }
    }
}

impl Hyperplane {
    /// The linear form and its pivot: the last coordinate with nonzero coefficient.
    pub fn resolve(&self, vars: &[String]) -> Result<(LinForm, usize)> {
        let f = Field::Rational;
        let l = match self {
            Hyperplane::Form(text) => LinForm::from_poly(&MultiPoly::parse(text, vars, f)?)?,
            Hyperplane::Random(seed) => random_hyperplane(vars.len(), *seed),
        };
        let pivot = l
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::Degenerate("zero hyperplane".into()))?;
        Ok((l, pivot))
    }
}

pub fn random_hyperplane(n: usize, seed: u64) -> LinForm {
    let f = Field::Rational;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs: Vec<_> = (0..n).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
    coeffs[n - 1] = f.one();
    LinForm::from_coeffs(coeffs)
}
