//! Exact scalars over the rationals or a prime field GF(p), p odd.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for `Field::Prime`; keeps products inside `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// GF(p) for an odd prime `p < 2^31`. Characteristic 2 is rejected: the
    /// diagonal doubling in the symmetric-matrix convention degenerates there.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElement::Mod {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElement::Mod {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// Maps a rational into this field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, v: &BigRational) -> Result<FieldElement> {
        match *self {
            Field::Rational => Ok(FieldElement::Rational(v.clone())),
            Field::Prime(p) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                let inv = den.inv().ok_or(Error::DenominatorVanishes {
                    value: v.to_string(),
                    prime: p,
                })?;
                Ok(&num * &inv)
            }
        }
    }

    /// Reduces an element of any field into this one. Rational → GF(p) goes
    /// through `from_rational`; GF(p) → GF(p) is the identity.
    pub fn convert(&self, x: &FieldElement) -> Result<FieldElement> {
        match (self, x) {
            (_, FieldElement::Rational(r)) => self.from_rational(r),
            (Field::Prime(p), FieldElement::Mod { modulus, .. }) if p == modulus => Ok(x.clone()),
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Parses `a`, `-a` or `a/b`.
    pub fn parse_scalar(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
        };
        let r = match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                BigRational::new(parse_int(n)?, d)
            }
            None => BigRational::from_integer(parse_int(s)?),
        };
        self.from_rational(&r)
    }

    /// All elements of a prime field in the order 0, 1, …, p−1.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| FieldElement::Mod { value: v, modulus: p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `GF5`, `GF(5)`, `F5`.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(Field::Rational);
        }
        let upper = t.to_ascii_uppercase();
        let digits = upper
            .strip_prefix("GF")
            .or_else(|| upper.strip_prefix('F'))
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
        let p = digits
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// An exact scalar. Mixing elements of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Mod { value, modulus } => FieldElement::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer representative: the integer itself over Q (None for
    /// non-integers), the symmetric residue in (−p/2, p/2] over GF(p).
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            FieldElement::Rational(r) => r.is_integer().then(|| r.to_integer()),
            FieldElement::Mod { value, modulus } => Some(BigInt::from(symmetric(*value, *modulus))),
        }
    }

    /// `true` when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Mod { value, modulus } => symmetric(*value, *modulus) < 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Mod { value, .. } => Some(*value),
            _ => None,
        }
    }
}

pub(crate) fn symmetric(value: u64, modulus: u64) -> i64 {
    if value > modulus / 2 {
        value as i64 - modulus as i64
    } else {
        value as i64
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Mod { value, modulus } => write!(f, "{}", symmetric(*value, *modulus)),
        }
    }
}

fn check_same(a: &FieldElement, b: &FieldElement) -> u64 {
    match (a, b) {
        (FieldElement::Mod { modulus: p, .. }, FieldElement::Mod { modulus: q, .. }) if p == q => *p,
        _ => panic!("arithmetic between elements of different fields: {a:?} and {b:?}"),
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Mod { value: a, .. }, FieldElement::Mod { value: b, .. }) => {
                let p = check_same(self, rhs);
                FieldElement::Mod { value: (a + b) % p, modulus: p }
            }
            _ => panic!("arithmetic between elements of different fields"),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Mod { value: a, .. }, FieldElement::Mod { value: b, .. }) => {
                let p = check_same(self, rhs);
                FieldElement::Mod { value: (a + p - b) % p, modulus: p }
            }
            _ => panic!("arithmetic between elements of different fields"),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Mod { value: a, .. }, FieldElement::Mod { value: b, .. }) => {
                let p = check_same(self, rhs);
                FieldElement::Mod { value: a * b % p, modulus: p }
            }
            _ => panic!("arithmetic between elements of different fields"),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Mod { value, modulus } => FieldElement::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_characteristic_two_and_composites() {
        assert!(matches!(Field::prime(2), Err(Error::CharacteristicTwo)));
        assert!(matches!(Field::prime(9), Err(Error::NotAnOddPrime(9))));
        assert!(matches!(Field::prime(1), Err(Error::NotAnOddPrime(1))));
        assert!(Field::prime(3).is_ok());
        assert!(Field::prime(65537).is_ok());
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(&a + &b, f.from_i64(1));
        assert_eq!(&a - &b, f.from_i64(-2));
        assert_eq!(&a * &b, f.from_i64(1));
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(f.from_i64(-1).to_string(), "-1");
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rational_reduction() {
        let f = Field::prime(5).unwrap();
        let half = Field::Rational.parse_scalar("1/2").unwrap();
        assert_eq!(f.convert(&half).unwrap(), f.from_i64(3));
        let fifth = Field::Rational.parse_scalar("-3/5").unwrap();
        assert!(matches!(f.convert(&fifth), Err(Error::DenominatorVanishes { .. })));
    }

    #[test]
    fn parses_field_names() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("GF5".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!("GF(7)".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("GF2".parse::<Field>().is_err());
    }
}
