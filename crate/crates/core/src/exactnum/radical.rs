//! Exact numbers of the form `c·√s` and finite sums of them.
//!
//! Intrinsic volumes of faces that are not axis aligned carry a square root of a
//! Gram determinant; everything stays exact up to that root.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::rat::{fmt_rat, to_f64, Rat};

const TRIAL_LIMIT: u32 = 1 << 14;

/// `coeff · √radicand` with `radicand` a positive integer whose small square
/// factors have been pulled out.
#[derive(Clone, Debug)]
pub struct Radical {
    coeff: Rat,
    radicand: BigInt,
}

fn pull_squares(mut n: BigInt) -> (BigInt, BigInt) {
    // returns (outside, inside) with n = outside² · inside
    let mut outside = BigInt::one();
    let r = n.sqrt();
    if &r * &r == n {
        return (r, BigInt::one());
    }
    let mut p: u32 = 2;
    while p < TRIAL_LIMIT {
        let pp = BigInt::from(p) * BigInt::from(p);
        if pp > n {
            break;
        }
        while (&n % &pp).is_zero() {
            n /= &pp;
            outside *= BigInt::from(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = n.sqrt();
    if &r * &r == n {
        outside *= r;
        n = BigInt::one();
    }
    (outside, n)
}

impl Radical {
    pub fn rational(c: Rat) -> Self {
        Radical {
            coeff: c,
            radicand: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rat::zero())
    }

    /// `c · √s` for a nonnegative rational `s`.
    pub fn new(c: Rat, s: &Rat) -> Self {
        assert!(!s.is_negative(), "negative radicand");
        if c.is_zero() || s.is_zero() {
            return Self::zero();
        }
        // √(p/q) = √(p·q) / q
        let n = s.numer() * s.denom();
        let (out, inside) = pull_squares(n);
        Radical {
            coeff: c * Rat::new(out, s.denom().clone()),
            radicand: inside,
        }
    }

    pub fn sqrt(s: &Rat) -> Self {
        Self::new(Rat::one(), s)
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        (self.radicand.is_one() || self.coeff.is_zero()).then(|| self.coeff.clone())
    }

    /// The exact square `c²·s`.
    pub fn square(&self) -> Rat {
        &self.coeff * &self.coeff * Rat::from_integer(self.radicand.clone())
    }

    pub fn mul(&self, other: &Radical) -> Radical {
        let s = Rat::from_integer(&self.radicand * &other.radicand);
        Radical::new(&self.coeff * &other.coeff, &s)
    }

    pub fn mul_rat(&self, r: &Rat) -> Radical {
        if r.is_zero() {
            return Radical::zero();
        }
        Radical {
            coeff: &self.coeff * r,
            radicand: self.radicand.clone(),
        }
    }

    pub fn div_rat(&self, r: &Rat) -> Radical {
        self.mul_rat(&r.recip())
    }

    pub fn neg(&self) -> Radical {
        self.mul_rat(&-Rat::one())
    }

    pub fn abs(&self) -> Radical {
        Radical {
            coeff: self.coeff.abs(),
            radicand: self.radicand.clone(),
        }
    }

    /// Sum when both terms share a radicand (or one is zero).
    pub fn checked_add(&self, other: &Radical) -> Option<Radical> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.radicand == other.radicand).then(|| {
            let c = &self.coeff + &other.coeff;
            if c.is_zero() {
                Radical::zero()
            } else {
                Radical {
                    coeff: c,
                    radicand: self.radicand.clone(),
                }
            }
        })
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.radicand.to_f64().unwrap_or(f64::INFINITY).sqrt();
        to_f64(&self.coeff) * r
    }

    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl PartialEq for Radical {
    fn eq(&self, other: &Self) -> bool {
        self.signum() == other.signum() && self.square() == other.square()
    }
}

impl Eq for Radical {}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() || self.coeff.is_zero() {
            write!(f, "{}", fmt_rat(&self.coeff))
        } else if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", fmt_rat(&self.coeff), self.radicand)
        }
    }
}

impl Serialize for Radical {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Finite sum `Σ cᵢ·√sᵢ` over distinct radicands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum {
    terms: BTreeMap<BigInt, Rat>,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_radical(r: &Radical) -> Self {
        let mut s = Self::zero();
        s.add_radical(r);
        s
    }

    pub fn add_radical(&mut self, r: &Radical) {
        if r.is_zero() {
            return;
        }
        let e = self.terms.entry(r.radicand.clone()).or_insert_with(Rat::zero);
        *e += &r.coeff;
        if e.is_zero() {
            self.terms.remove(&r.radicand);
        }
    }

    pub fn add(&mut self, other: &SurdSum) {
        for (k, c) in &other.terms {
            self.add_radical(&Radical {
                coeff: c.clone(),
                radicand: k.clone(),
            });
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> SurdSum {
        let mut out = SurdSum::zero();
        for (k, c) in &self.terms {
            out.add_radical(&Radical {
                coeff: c * r,
                radicand: k.clone(),
            });
        }
        out
    }

    pub fn mul_radical(&self, r: &Radical) -> SurdSum {
        let mut out = SurdSum::zero();
        for (k, c) in &self.terms {
            out.add_radical(
                &Radical {
                    coeff: c.clone(),
                    radicand: k.clone(),
                }
                .mul(r),
            );
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_radical(&self) -> Option<Radical> {
        match self.terms.len() {
            0 => Some(Radical::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                Some(Radical {
                    coeff: c.clone(),
                    radicand: k.clone(),
                })
            }
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.as_radical().and_then(|r| r.as_rational())
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| to_f64(c) * k.to_f64().unwrap_or(f64::INFINITY).sqrt())
            .sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = Radical> + '_ {
        self.terms.iter().map(|(k, c)| Radical {
            coeff: c.clone(),
            radicand: k.clone(),
        })
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
