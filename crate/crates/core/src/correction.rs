//! Correction terms of rational surgeries.
//!
//! For `p/q > 0`, `d(S^3_{p/q}(K), i) = d(S^3_{p/q}(O), i) - 2 max(V_{⌊i/q⌋}, H_{⌊(i-p)/q⌋})`.
//! Negative surgeries go through `S^3_{-p/q}(K) = -S^3_{p/q}(mirror K)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cfk::VHProfile;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::slopes::{floor_index, fmt_rational, parse_rational, Slope, SpinCLabel};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check_label(label: SpinCLabel, p: i64) -> Result<()> {
    if label.modulus() != p as u64 {
        return Err(Error::LabelOutOfRange { label: label.index() as i64, modulus: p });
    }
    Ok(())
}

/// `d(S^3_{p/q}(O), i)` for `p, q > 0` coprime, by the lens space recursion
///
/// `d(p, q, i) = -1/4 + (p + q - 1 - 2i)^2 / (4pq) - d(q, p mod q, i mod q)`
///
/// with `d(1, ·, 0) = 0`. The label `i` is read modulo `p`; `q` is first
/// reduced modulo `p`, which leaves every value unchanged.
pub fn lens_d(p: i64, q: i64, label: SpinCLabel) -> Result<BigRational> {
    if p <= 0 || q <= 0 {
        return Err(Error::Contract(format!("lens_d needs p, q > 0, got {p}/{q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Contract(format!("lens_d needs coprime p, q, got {p}/{q}")));
    }
    check_label(label, p)?;
    let (mut p, mut q, mut i) = (p as i128, q as i128, label.index() as i128);
    let mut acc = BigRational::zero();
    let mut positive = true;
    while p > 1 {
        q = q.rem_euclid(p);
        let t = p + q - 1 - 2 * i;
        let term = BigRational::new(BigInt::from(t * t), BigInt::from(4 * p * q)) - ratio(1, 4);
        if positive {
            acc += term;
        } else {
            acc -= term;
        }
        positive = !positive;
        (p, q, i) = (q, p.rem_euclid(q), i.rem_euclid(q));
    }
    Ok(acc)
}

/// Label correspondence under `S^3_{-p/q}(K) = -S^3_{p/q}(mirror K)`:
/// `i ↦ (p - 1 - i) mod p`.
pub fn reversal_label(label: SpinCLabel) -> SpinCLabel {
    let p = label.modulus();
    SpinCLabel::new(p - 1 - label.index(), p).expect("index below modulus")
}

/// `d(S^3_s(O), i)` for any finite nonzero slope.
pub fn unknot_d(s: Slope, label: SpinCLabel) -> Result<BigRational> {
    surgery_guard(s)?;
    let (p, q) = (s.numer(), s.denom());
    if p > 0 {
        lens_d(p, q, label)
    } else {
        check_label(label, -p)?;
        Ok(-lens_d(-p, q, reversal_label(label))?)
    }
}

fn surgery_guard(s: Slope) -> Result<()> {
    if s.is_infinite() {
        return Err(Error::InfiniteSlope("surgery along inf returns S^3".into()));
    }
    if s.is_zero() {
        return Err(Error::ZeroSurgery);
    }
    Ok(())
}

/// `-2 max(V_{⌊i/q⌋}, H_{⌊(i-p)/q⌋})` for `p, q > 0`.
pub fn niwu_dnorm(profile: &VHProfile, p: i64, q: i64, label: SpinCLabel) -> Result<BigRational> {
    if p <= 0 || q <= 0 {
        return Err(Error::Contract(format!("the surgery formula needs p, q > 0, got {p}/{q}")));
    }
    check_label(label, p)?;
    let i = label.index() as i64;
    let v = profile.v(floor_index(i, q)?);
    let h = profile.h(floor_index(i - p, q)?);
    Ok(BigRational::from_integer(BigInt::from(-2 * v.max(h) as i64)))
}

/// An exact correction term together with its normalization against the
/// unknot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryD {
    pub d: BigRational,
    pub dnorm: BigRational,
}

/// `d(S^3_s(K), i)` from the profiles of `K` and of its mirror. Only the
/// mirror profile is read for negative slopes.
pub fn d_from_profiles(profile: &VHProfile, mirror: &VHProfile, s: Slope, label: SpinCLabel) -> Result<SurgeryD> {
    surgery_guard(s)?;
    let (p, q) = (s.numer(), s.denom());
    if p > 0 {
        let dnorm = niwu_dnorm(profile, p, q, label)?;
        let d = &dnorm + lens_d(p, q, label)?;
        Ok(SurgeryD { d, dnorm })
    } else {
        check_label(label, -p)?;
        let j = reversal_label(label);
        let dnorm = -niwu_dnorm(mirror, -p, q, j)?;
        let d = &dnorm - lens_d(-p, q, j)?;
        Ok(SurgeryD { d, dnorm })
    }
}

/// All correction terms of one surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DInvariantTable {
    pub knot: String,
    pub slope: Slope,
    pub d: BTreeMap<u64, BigRational>,
    pub dnorm: BTreeMap<u64, BigRational>,
}

impl DInvariantTable {
    pub fn from_profiles(
        knot: impl Into<String>,
        profile: &VHProfile,
        mirror: &VHProfile,
        s: Slope,
        exec: Execution,
    ) -> Result<DInvariantTable> {
        surgery_guard(s)?;
        let labels: Vec<SpinCLabel> = SpinCLabel::all(s.spinc_count()?).collect();
        let values = par::try_map(exec, &labels, |&l| d_from_profiles(profile, mirror, s, l))?;
        let mut d = BTreeMap::new();
        let mut dnorm = BTreeMap::new();
        for (l, v) in labels.iter().zip(values) {
            d.insert(l.index(), v.d);
            dnorm.insert(l.index(), v.dnorm);
        }
        let table = DInvariantTable { knot: knot.into(), slope: s, d, dnorm };
        table.validate()?;
        Ok(table)
    }

    /// Checks entry count and that denominators divide `4|p|q`.
    pub fn validate(&self) -> Result<()> {
        let p = self.slope.numer().unsigned_abs();
        let bound = BigInt::from(4) * BigInt::from(p) * BigInt::from(self.slope.denom());
        if self.d.len() as u64 != p || self.dnorm.len() as u64 != p {
            return Err(Error::Contract(format!("table for {} must have {p} entries", self.slope)));
        }
        for v in self.d.values().chain(self.dnorm.values()) {
            if !(&bound % v.denom()).is_zero() {
                return Err(Error::Contract(format!("denominator of {} does not divide {bound}", fmt_rational(v))));
            }
        }
        Ok(())
    }

    pub fn max_abs_d(&self) -> BigRational {
        self.d.values().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    knot: String,
    slope: Slope,
    d: BTreeMap<String, String>,
    dnorm: BTreeMap<String, String>,
}

impl Serialize for DInvariantTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let conv = |m: &BTreeMap<u64, BigRational>| m.iter().map(|(k, v)| (k.to_string(), fmt_rational(v))).collect();
        RawTable { knot: self.knot.clone(), slope: self.slope, d: conv(&self.d), dnorm: conv(&self.dnorm) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DInvariantTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<DInvariantTable, D::Error> {
        use serde::de::Error as _;
        let raw = RawTable::deserialize(deserializer)?;
        let conv = |m: BTreeMap<String, String>| -> std::result::Result<BTreeMap<u64, BigRational>, D::Error> {
            m.into_iter()
                .map(|(k, v)| Ok((k.parse().map_err(D::Error::custom)?, parse_rational(&v).map_err(D::Error::custom)?)))
                .collect()
        };
        let t = DInvariantTable { knot: raw.knot, slope: raw.slope, d: conv(raw.d)?, dnorm: conv(raw.dnorm)? };
        t.validate().map_err(D::Error::custom)?;
        Ok(t)
    }
}

/// Recovers the profile from `dnorm(S^3_n(K), i)`, `0 <= i < n`, when
/// `n >= 2g - 1`.
///
/// In that range at most one of `V_i`, `H_{i-n}` is nonzero: labels
/// `i < g` give `V_i` and labels `i >= g` give `H_{i-n}`. `H_{-g}` is not
/// seen when `n = 2g - 1` and is zero anyway.
pub fn recover_profile(dnorm_values: &[BigRational], n: i64, g: u32) -> Result<VHProfile> {
    let gi = g as i64;
    if n < 1 || n < 2 * gi - 1 {
        return Err(Error::Contract(format!("recovery needs n >= max(1, 2g - 1) = {}, got {n}", (2 * gi - 1).max(1))));
    }
    if dnorm_values.len() as i64 != n {
        return Err(Error::Contract(format!("expected {n} values, got {}", dnorm_values.len())));
    }
    let halves: Vec<u64> = dnorm_values
        .iter()
        .map(|x| {
            let h = -x / BigRational::from_integer(BigInt::from(2));
            if !h.is_integer() || h.is_negative() {
                return Err(Error::NotRealizable(format!("{} is not -2 times a nonnegative integer", fmt_rational(x))));
            }
            u64::try_from(h.to_integer()).map_err(|_| Error::NotRealizable("value too large".into()))
        })
        .collect::<Result<_>>()?;
    let mut v = vec![0u64; g as usize + 1];
    let mut h = vec![0u64; g as usize + 1];
    for (i, &x) in halves.iter().enumerate() {
        let i = i as i64;
        if i < gi {
            v[i as usize] = x;
        } else {
            let k = i - n;
            if k >= -gi {
                h[(k + gi) as usize] = x;
            } else if x != 0 {
                return Err(Error::NotRealizable(format!("label {i} would need H_{k} > 0 below -g")));
            }
        }
    }
    h[g as usize] = v[0];
    let profile = VHProfile::new(g, v, h).map_err(|e| Error::NotRealizable(e.to_string()))?;
    for (i, x) in dnorm_values.iter().enumerate() {
        let back = niwu_dnorm(&profile, n, 1, SpinCLabel::new(i as u64, n as u64)?)?;
        if &back != x {
            return Err(Error::NotRealizable(format!("label {i}: recovered profile gives {}", fmt_rational(&back))));
        }
    }
    Ok(profile)
}

/// Whether `dnorm(S^3_1(K)) = 0`, i.e. `V_0 = 0`; then every positive
/// surgery has vanishing normalized correction terms.
pub fn check_vanishing_propagation(profile: &VHProfile) -> bool {
    profile.v0() == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(i: u64, p: u64) -> SpinCLabel {
        SpinCLabel::new(i, p).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    /// `((2i - p)^2 - p) / (4p)` for integer surgery on the unknot.
    fn integer_oracle(p: i64, i: i64) -> BigRational {
        r((2 * i - p) * (2 * i - p) - p, 4 * p)
    }

    #[test]
    fn lens_examples() {
        assert_eq!(lens_d(1, 1, label(0, 1)).unwrap(), r(0, 1));
        assert_eq!(lens_d(2, 1, label(0, 2)).unwrap(), r(1, 4));
        assert_eq!(lens_d(2, 1, label(1, 2)).unwrap(), r(-1, 4));
        assert_eq!(lens_d(1, 2, label(0, 1)).unwrap(), r(0, 1));
        assert!(lens_d(2, 2, label(0, 2)).is_err());
        assert!(lens_d(3, 1, label(0, 2)).is_err());
        assert!(lens_d(0, 1, label(0, 1)).is_err());
    }

    #[test]
    fn lens_matches_integer_closed_form() {
        for p in 1..=40 {
            for i in 0..p {
                assert_eq!(lens_d(p, 1, label(i as u64, p as u64)).unwrap(), integer_oracle(p, i), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn lens_periodicity_in_q() {
        for p in 1..=20i64 {
            for q in 1..=6i64 {
                if p.gcd(&q) != 1 {
                    continue;
                }
                for qp in 1..=3 {
                    for i in 0..p as u64 {
                        let l = label(i, p as u64);
                        assert_eq!(lens_d(p, q, l).unwrap(), lens_d(p, q + qp * p, l).unwrap());
                    }
                }
            }
        }
    }

    /// `S^3_{-p/q}(O)` is also `S^3_{p/(p - q)}(O)` as an oriented manifold
    /// (for `0 < q < p`); the reversal label map must match this per label.
    #[test]
    fn reversal_label_matches_orientation_reversal() {
        for p in 2..=20i64 {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let s = Slope::new(-p, q).unwrap();
                for i in 0..p as u64 {
                    let l = label(i, p as u64);
                    assert_eq!(unknot_d(s, l).unwrap(), lens_d(p, p - q, l).unwrap(), "p={p} q={q} i={i}");
                }
            }
        }
    }

    #[test]
    fn reversal_offset_is_unique() {
        // among all maps i -> (c - i) mod p only c = p - 1 works for every (p, q)
        for p in 2..=12i64 {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let ok: Vec<i64> = (0..p)
                    .filter(|c| {
                        (0..p).all(|i| {
                            let j = SpinCLabel::from_integer(c - i, p as u64).unwrap();
                            -lens_d(p, q, j).unwrap() == lens_d(p, p - q, label(i as u64, p as u64)).unwrap()
                        })
                    })
                    .collect();
                assert_eq!(ok, vec![p - 1], "p={p} q={q}");
            }
        }
    }

    fn trefoil() -> VHProfile {
        VHProfile::new(1, vec![1, 0], vec![0, 1]).unwrap()
    }

    fn t27() -> VHProfile {
        VHProfile::new(3, vec![2, 1, 1, 0], vec![0, 1, 1, 2]).unwrap()
    }

    #[test]
    fn niwu_examples() {
        for (p, q) in [(1, 1), (5, 2), (7, 3)] {
            for i in 0..p as u64 {
                assert!(niwu_dnorm(&VHProfile::zero(), p, q, label(i, p as u64)).unwrap().is_zero());
            }
        }
        assert_eq!(niwu_dnorm(&trefoil(), 1, 1, label(0, 1)).unwrap(), r(-2, 1));
        // V_{⌊5/2⌋} = V_2 = 1, H_{⌊-8/2⌋} = H_{-4} = 0
        assert_eq!(niwu_dnorm(&t27(), 13, 2, label(5, 13)).unwrap(), r(-2, 1));
        assert!(niwu_dnorm(&trefoil(), -1, 1, label(0, 1)).is_err());
        assert!(niwu_dnorm(&trefoil(), 1, 0, label(0, 1)).is_err());
    }

    #[test]
    fn surgery_values() {
        let z = VHProfile::zero();
        let s = Slope::new(7, 2).unwrap();
        for i in 0..7 {
            let v = d_from_profiles(&z, &z, s, label(i, 7)).unwrap();
            assert!(v.dnorm.is_zero());
        }
        let t = trefoil();
        let one = d_from_profiles(&t, &z, Slope::integer(1), label(0, 1)).unwrap();
        let half = d_from_profiles(&t, &z, Slope::new(1, 2).unwrap(), label(0, 1)).unwrap();
        assert_eq!(one.d, r(-2, 1));
        assert_eq!(one, half);
        // -1 surgery on the right-handed trefoil is minus +1 surgery on the left-handed one
        let neg = d_from_profiles(&t, &z, Slope::integer(-1), label(0, 1)).unwrap();
        assert!(neg.d.is_zero());
        let neg_left = d_from_profiles(&z, &t, Slope::integer(-1), label(0, 1)).unwrap();
        assert_eq!(neg_left.d, r(2, 1));
        assert_eq!(d_from_profiles(&t, &z, Slope::new(0, 1).unwrap(), label(0, 1)), Err(Error::ZeroSurgery));
    }

    #[test]
    fn recovery() {
        assert_eq!(recover_profile(&[r(0, 1)], 1, 0).unwrap(), VHProfile::zero());
        assert_eq!(recover_profile(&vec![r(0, 1); 5], 5, 2).unwrap(), VHProfile::new(2, vec![0; 3], vec![0; 3]).unwrap());
        assert_eq!(recover_profile(&[r(-2, 1)], 1, 1).unwrap().v_values(), &[1, 0]);
        let p = t27();
        let vals: Vec<_> = (0..5).map(|i| niwu_dnorm(&p, 5, 1, label(i, 5)).unwrap()).collect();
        assert_eq!(recover_profile(&vals, 5, 3).unwrap(), p);
        assert!(recover_profile(&vals, 4, 3).is_err());
        assert!(matches!(recover_profile(&[r(-1, 1)], 1, 1), Err(Error::NotRealizable(_))));
        assert!(matches!(recover_profile(&[r(0, 1), r(-2, 1), r(0, 1)], 3, 1), Err(Error::NotRealizable(_))));
    }

    #[test]
    fn vanishing_propagation() {
        assert!(check_vanishing_propagation(&VHProfile::zero()));
        assert!(!check_vanishing_propagation(&trefoil()));
        // V_0 = 0 with a nonzero later V cannot even be built
        assert!(VHProfile::new(3, vec![0, 0, 1, 0], vec![0, 0, 0, 0]).is_err());
    }

    #[test]
    fn table_json() {
        let t = DInvariantTable::from_profiles("U", &VHProfile::zero(), &VHProfile::zero(), Slope::integer(2), Execution::Sequential).unwrap();
        let j = serde_json::to_value(&t).unwrap();
        assert_eq!(j["slope"], "2/1");
        assert_eq!(j["d"]["0"], "1/4");
        assert_eq!(j["d"]["1"], "-1/4");
        assert_eq!(j["dnorm"]["1"], "0");
        let back: DInvariantTable = serde_json::from_value(j).unwrap();
        assert_eq!(back, t);
    }
}
