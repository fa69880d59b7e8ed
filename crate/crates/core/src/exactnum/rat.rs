//! Rational scalars and the string forms used in every file format.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// A dense rational vector.
pub type RVec = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rvec(xs: &[i64]) -> RVec {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn zeros(n: usize) -> RVec {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> RVec {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty rational".into(),
        });
    }
    if let Some((int_part, frac)) = t.split_once('.') {
        if t.contains('/') {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("bad rational '{t}'"),
            });
        }
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("bad decimal '{t}'"),
        })?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rat::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    Rat::from_str(t).map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("bad rational '{t}'"),
    })
}

pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerator/denominator pairs: fall back to a scaled division.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], s: &Rat) -> RVec {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rat]) -> RVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn norm2(a: &[Rat]) -> Rat {
    dot(a, a)
}

pub fn to_f64_vec(a: &[Rat]) -> Vec<f64> {
    a.iter().map(to_f64).collect()
}

/// Positive rescaling of a nonzero vector to a primitive integer vector.
/// The zero vector is returned unchanged.
pub fn primitive(a: &[Rat]) -> RVec {
    use num_integer::Integer;
    if is_zero(a) {
        return a.to_vec();
    }
    let lcm = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Nonzero vector scaled so that its first nonzero entry is `1`.
pub fn normalize_leading(a: &[Rat]) -> RVec {
    match a.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            scale(a, &inv)
        }
        None => a.to_vec(),
    }
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = StrOrNum::deserialize(d)?;
        s.into_rat().map_err(serde::de::Error::custom)
    }

    /// A rational given as `"p/q"`, an integer, or a float (taken exactly).
    #[derive(Clone, Debug, serde::Deserialize)]
    #[serde(untagged)]
    pub enum StrOrNum {
        Str(String),
        Int(i64),
        Float(f64),
    }

    impl StrOrNum {
        pub fn into_rat(self) -> Result<Rat> {
            match self {
                StrOrNum::Str(s) => parse_rat(&s),
                StrOrNum::Int(i) => Ok(int(i)),
                StrOrNum::Float(f) => Rat::from_float(f).ok_or_else(|| Error::Invalid(format!("not a finite number: {f}"))),
            }
        }
    }
}

/// Serde adapter for `Vec<Rat>` as an array of strings.
pub mod serde_rat_vec {
    use super::serde_rat::StrOrNum;
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RVec, D::Error> {
        let raw: Vec<StrOrNum> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(StrOrNum::into_rat)
            .collect::<Result<RVec>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Vec<Rat>>` as nested arrays of strings.
pub mod serde_rat_rows {
    use super::serde_rat::StrOrNum;
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rows: &[RVec], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let strs: Vec<String> = row.iter().map(fmt_rat).collect();
            seq.serialize_element(&strs)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<RVec>, D::Error> {
        let raw: Vec<Vec<StrOrNum>> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|row| row.into_iter().map(StrOrNum::into_rat).collect::<Result<RVec>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}
