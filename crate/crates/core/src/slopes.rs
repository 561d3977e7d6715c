//! Reduced rational surgery slopes, negative continued fractions and the
//! integer labelling of Spin^c structures on surgeries.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A surgery coefficient `p/q` in lowest terms.
///
/// The denominator is never negative; the sign lives on the numerator. The
/// infinity slope is stored as `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

fn narrow(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    /// Reduces `p/q`. `(0, 0)` is rejected; any `(p, 0)` with `p != 0` is the
    /// infinity slope.
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        reduce(p, q)
    }

    pub fn integer(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }

    pub fn is_positive(&self) -> bool {
        self.q != 0 && self.p > 0
    }

    pub fn is_negative(&self) -> bool {
        self.p < 0
    }

    /// The absolute value `|p|/q`.
    pub fn abs(&self) -> Slope {
        Slope { p: self.p.abs(), q: self.q }
    }

    pub fn neg(&self) -> Result<Slope> {
        if self.is_infinite() {
            return Ok(*self);
        }
        Ok(Slope { p: self.p.checked_neg().ok_or(Error::Overflow("slope negation"))?, q: self.q })
    }

    /// Number of Spin^c structures on surgery along this slope, `|p|`.
    pub fn spinc_count(&self) -> Result<u64> {
        if self.is_infinite() {
            return Err(Error::InfiniteSlope("S^3 has a single spin^c structure, not a surgery label set".into()));
        }
        Ok(self.p.unsigned_abs())
    }

    pub fn to_ratio(&self) -> Result<BigRational> {
        if self.is_infinite() {
            return Err(Error::InfiniteSlope("no rational value".into()));
        }
        Ok(BigRational::new(BigInt::from(self.p), BigInt::from(self.q)))
    }

    pub fn from_ratio(r: &BigRational) -> Result<Slope> {
        let p = r.numer().to_i64().ok_or(Error::Overflow("slope numerator"))?;
        let q = r.denom().to_i64().ok_or(Error::Overflow("slope denominator"))?;
        reduce(p, q)
    }

    /// `self + n` for an integer `n`.
    pub fn add_integer(&self, n: i64) -> Result<Slope> {
        if self.is_infinite() {
            return Ok(*self);
        }
        let p = self.p as i128 + n as i128 * self.q as i128;
        Ok(Slope { p: narrow(p, "slope addition")?, q: self.q })
    }

    /// Whether the finite slope lies in the closed interval `[lo, hi]`.
    pub fn in_closed_interval(&self, lo: i64, hi: i64) -> bool {
        if self.is_infinite() {
            return false;
        }
        let (p, q) = (self.p as i128, self.q as i128);
        lo as i128 * q <= p && p <= hi as i128 * q
    }
}

/// Reduces `p/q` to lowest terms with a nonnegative denominator.
pub fn reduce(p: i64, q: i64) -> Result<Slope> {
    if p == 0 && q == 0 {
        return Err(Error::InvalidSlope("0/0 is not a slope".into()));
    }
    if q == 0 {
        return Ok(Slope::INFINITY);
    }
    let g = p.gcd(&q);
    let (mut p, mut q) = (p as i128 / g as i128, q as i128 / g as i128);
    if q < 0 {
        p = -p;
        q = -q;
    }
    Ok(Slope { p: narrow(p, "slope reduction")?, q: narrow(q, "slope reduction")? })
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Slope::INFINITY);
        }
        let bad = || Error::InvalidSlope(format!("cannot parse {s:?}; expected p/q, an integer, or inf"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(Error::InvalidSlope(format!("{s:?} has zero denominator; write inf")));
                }
                reduce(p, q)
            }
            None => Ok(Slope::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Slope, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Expands a finite slope as `a0 - 1/(a1 - 1/(a2 - ...))`.
///
/// Each coefficient is the ceiling of the current remainder, so every
/// coefficient after the first is at least 2.
pub fn neg_continued_fraction(s: Slope) -> Result<Vec<i64>> {
    if s.is_infinite() {
        return Err(Error::InfiniteSlope("no continued fraction for inf".into()));
    }
    let (mut p, mut q) = (s.p as i128, s.q as i128);
    let mut out = Vec::new();
    loop {
        let a = Integer::div_ceil(&p, &q);
        out.push(narrow(a, "continued fraction")?);
        let rem = a * q - p;
        if rem == 0 {
            return Ok(out);
        }
        (p, q) = (q, rem);
    }
}

/// Evaluates `a0 - 1/(a1 - 1/(...))` exactly.
pub fn eval_neg_continued_fraction(coeffs: &[i64]) -> Result<Slope> {
    let (last, rest) = coeffs
        .split_last()
        .ok_or_else(|| Error::Contract("empty continued fraction".into()))?;
    let mut x = BigRational::from_integer(BigInt::from(*last));
    for &a in rest.iter().rev() {
        if x.is_zero() {
            return Err(Error::InfiniteSlope("continued fraction passes through 1/0".into()));
        }
        x = BigRational::from_integer(BigInt::from(a)) - x.recip();
    }
    Slope::from_ratio(&x)
}

/// Floor of `i / q`, rounding toward negative infinity.
pub fn floor_index(i: i64, q: i64) -> Result<i64> {
    if q <= 0 {
        return Err(Error::Contract(format!("floor_index needs a positive divisor, got {q}")));
    }
    Ok(i.div_euclid(q))
}

/// Canonical label `i mod p` of a Spin^c structure on a surgery with
/// numerator `±p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinCLabel {
    i: u64,
    modulus: u64,
}

impl SpinCLabel {
    pub fn new(i: u64, modulus: u64) -> Result<SpinCLabel> {
        if modulus == 0 || i >= modulus {
            return Err(Error::LabelOutOfRange { label: i as i64, modulus: modulus as i64 });
        }
        Ok(SpinCLabel { i, modulus })
    }

    /// Reduces an arbitrary integer representative modulo `modulus`.
    pub fn from_integer(i: i64, modulus: u64) -> Result<SpinCLabel> {
        if modulus == 0 {
            return Err(Error::LabelOutOfRange { label: i, modulus: 0 });
        }
        let r = (i as i128).rem_euclid(modulus as i128) as u64;
        Ok(SpinCLabel { i: r, modulus })
    }

    pub fn index(&self) -> u64 {
        self.i
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn all(modulus: u64) -> impl Iterator<Item = SpinCLabel> {
        (0..modulus).map(move |i| SpinCLabel { i, modulus })
    }
}

impl fmt::Display for SpinCLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.i)
    }
}

/// Renders an exact rational as `a/b` (or `a` for integers).
pub fn fmt_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a/b` or `a` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Contract(format!("cannot parse rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter writing an exact rational as the string `a/b`.
pub mod rational_serde {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&super::fmt_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals written as strings.
pub mod rational_vec_serde {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(super::fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts.iter().map(|t| super::parse_rational(t).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(6, 4).unwrap(), s(3, 2));
        assert_eq!(reduce(-6, 4).unwrap().to_string(), "-3/2");
        assert_eq!(reduce(6, -4).unwrap().to_string(), "-3/2");
        assert_eq!(reduce(5, 0).unwrap(), Slope::INFINITY);
        assert!(reduce(0, 0).is_err());
        assert_eq!(reduce(0, 7).unwrap().to_string(), "0/1");
    }

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(neg_continued_fraction(s(5, 2)).unwrap(), vec![3, 2]);
        assert_eq!(neg_continued_fraction(s(7, 1)).unwrap(), vec![7]);
        // 3 - 1/(2 - 1/2) = 3 - 2/3 = 7/3
        assert_eq!(neg_continued_fraction(s(7, 3)).unwrap(), vec![3, 2, 2]);
        assert_eq!(neg_continued_fraction(s(-5, 2)).unwrap(), vec![-2, 2]);
        assert!(neg_continued_fraction(Slope::INFINITY).is_err());
    }

    #[test]
    fn floor_index_examples() {
        assert_eq!(floor_index(5, 2).unwrap(), 2);
        assert_eq!(floor_index(-8, 2).unwrap(), -4);
        // floor, not truncation toward zero (-7/2 = -3.5)
        assert_eq!(floor_index(-7, 2).unwrap(), -4);
        assert!(floor_index(3, 0).is_err());
        assert!(floor_index(3, -1).is_err());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("7/2".parse::<Slope>().unwrap(), s(7, 2));
        assert_eq!(" -3 ".parse::<Slope>().unwrap(), s(-3, 1));
        assert_eq!("inf".parse::<Slope>().unwrap(), Slope::INFINITY);
        assert!("1/0".parse::<Slope>().is_err());
        assert!("x/2".parse::<Slope>().is_err());
        let j = serde_json::to_string(&s(-3, 2)).unwrap();
        assert_eq!(j, "\"-3/2\"");
        assert_eq!(serde_json::from_str::<Slope>(&j).unwrap(), s(-3, 2));
    }

    #[test]
    fn labels() {
        assert_eq!(SpinCLabel::from_integer(-1, 5).unwrap().index(), 4);
        assert!(SpinCLabel::new(5, 5).is_err());
        assert_eq!(SpinCLabel::all(3).count(), 3);
    }

    #[test]
    fn rationals_roundtrip() {
        let x = parse_rational("-6/8").unwrap();
        assert_eq!(fmt_rational(&x), "-3/4");
        assert_eq!(fmt_rational(&parse_rational("4").unwrap()), "4");
    }

    proptest! {
        #[test]
        fn continued_fraction_reconstructs(p in -5000i64..5000, q in 1i64..500) {
            let slope = s(p, q);
            let cf = neg_continued_fraction(slope).unwrap();
            prop_assert!(cf.iter().skip(1).all(|&a| a >= 2));
            prop_assert_eq!(eval_neg_continued_fraction(&cf).unwrap(), slope);
        }

        #[test]
        fn reduce_is_scale_invariant(p in -1000i64..1000, q in 1i64..1000, k in 1i64..50) {
            prop_assume!(p != 0 || q != 0);
            let r = reduce(p, q).unwrap();
            prop_assert_eq!(reduce(k * p, k * q).unwrap(), r);
            prop_assert_eq!(reduce(r.numer(), r.denom()).unwrap(), r);
        }

        #[test]
        fn floor_index_brackets(i in -10_000i64..10_000, q in 1i64..100) {
            let f = floor_index(i, q).unwrap();
            prop_assert!(f * q <= i && i < (f + 1) * q);
        }
    }
}
