//! Moves on rational surgery descriptions, chain-plumbing linking matrices
//! and branched double covers of the supported link shapes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knot::KnotExpr;
use crate::matrix::IntMatrix;
use crate::slopes::{eval_neg_continued_fraction, neg_continued_fraction, reduce, Slope};

pub use crate::matrix::is_negative_definite;

fn slope_from_i128(p: i128, q: i128, what: &'static str) -> Result<Slope> {
    if q == 0 {
        return Err(Error::InfiniteSlope(format!("{what} produced the slope inf")));
    }
    let r = BigRational::new(BigInt::from(p), BigInt::from(q));
    Slope::from_ratio(&r)
}

fn finite(s: Slope, what: &str) -> Result<()> {
    if s.is_infinite() {
        return Err(Error::InfiniteSlope(format!("{what} needs a finite slope")));
    }
    Ok(())
}

/// Slam-dunk: an `n`-framed knot with an `r`-framed meridian becomes the knot
/// with slope `n - 1/r`.
pub fn slam_dunk(n: i64, r: Slope) -> Result<Slope> {
    finite(r, "slam-dunk")?;
    if r.is_zero() {
        return Err(Error::Contract("slam-dunk needs r != 0 since 1/r is undefined".into()));
    }
    let (p, q) = (r.numer() as i128, r.denom() as i128);
    // n - q/p = (n p - q) / p
    slope_from_i128(n as i128 * p - q, p, "slam-dunk")
}

/// Inverse of [`slam_dunk`]: the meridian coefficient `r` with
/// `n - 1/r = result`.
pub fn slam_dunk_solve(n: i64, result: Slope) -> Result<Slope> {
    finite(result, "slam-dunk inverse")?;
    let (p, q) = (result.numer() as i128, result.denom() as i128);
    // 1/r = n - p/q = (n q - p)/q
    let den = n as i128 * q - p;
    if den == 0 {
        return Err(Error::InfiniteSlope(format!("slam-dunk result {result} equals n = {n}")));
    }
    slope_from_i128(q, den, "slam-dunk inverse")
}

/// Slap-shot: `ℓ + p/(q + q'p)`, the single slope equivalent to `p/q` and
/// `ℓ + 1/q'` surgery on the two components of `P_ℓ(K)`.
pub fn slap_shot(ell: i64, pq: Slope, qprime: i64) -> Result<Slope> {
    finite(pq, "slap-shot")?;
    let (p, q) = (pq.numer() as i128, pq.denom() as i128);
    let den = q + qprime as i128 * p;
    if den == 0 {
        return Err(Error::InfiniteSlope(format!("q + q'p = 0 for p/q = {pq}, q' = {qprime}")));
    }
    slope_from_i128(ell as i128 * den + p, den, "slap-shot")
}

/// A linear chain of framed unknots whose integral surgery presents a rational
/// surgery; the head is the first component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDiagram {
    pub framings: Vec<i64>,
    pub head: Option<Slope>,
}

impl ChainDiagram {
    /// Chain presenting `r` surgery: the negative continued fraction of `r`
    /// for `r > 0`, and the negated expansion of `-r` for `r < 0`.
    pub fn from_slope(r: Slope) -> Result<ChainDiagram> {
        finite(r, "a chain diagram")?;
        if r.is_zero() {
            return Err(Error::ZeroSurgery);
        }
        let framings = if r.is_positive() {
            neg_continued_fraction(r)?
        } else {
            neg_continued_fraction(r.neg()?)?.into_iter().map(|a| -a).collect()
        };
        Ok(ChainDiagram { framings, head: Some(r) })
    }

    /// The slope presented by the chain.
    pub fn slope(&self) -> Result<Slope> {
        if self.framings.first().is_some_and(|&a| a < 0) {
            let pos: Vec<i64> = self.framings.iter().map(|a| -a).collect();
            eval_neg_continued_fraction(&pos)?.neg()
        } else {
            eval_neg_continued_fraction(&self.framings)
        }
    }

    pub fn len(&self) -> usize {
        self.framings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.framings.is_empty()
    }
}

/// Tridiagonal linking matrix: framings on the diagonal, `1` between
/// neighbours.
pub fn chain_linking_matrix(c: &ChainDiagram) -> Result<IntMatrix> {
    if c.is_empty() {
        return Err(Error::Contract("empty chain".into()));
    }
    let mut m = IntMatrix::diagonal(&c.framings);
    for k in 1..c.len() {
        m.set(k - 1, k, 1);
        m.set(k, k - 1, 1);
    }
    Ok(m)
}

/// Determinants of a chain matrix `A` and of the minor `B` obtained by
/// deleting the head, as absolute values with their signs reported apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDeterminants {
    pub det_a: BigInt,
    pub det_b: BigInt,
    pub sign_a: i8,
    pub sign_b: i8,
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn chain_determinants(c: &ChainDiagram) -> Result<ChainDeterminants> {
    let a = chain_linking_matrix(c)?;
    let da = a.determinant();
    let db = a.minor(0).determinant();
    Ok(ChainDeterminants { sign_a: sign_of(&da), sign_b: sign_of(&db), det_a: da.abs(), det_b: db.abs() })
}

/// Sign of the crossing changed by the `-1`-framed unknot `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    /// Linking number of `J` with the head of the chain.
    fn linking(self) -> i64 {
        match self {
            CrossingSign::Negative => 2,
            CrossingSign::Positive => 0,
        }
    }
}

/// The chain matrix of `r` bordered by a `-1`-framed unknot around one
/// crossing of the knot.
pub fn crossing_cobordism_matrix(r: Slope, sign: CrossingSign) -> Result<IntMatrix> {
    let a = chain_linking_matrix(&ChainDiagram::from_slope(r)?)?;
    let n = a.dim();
    let mut m = IntMatrix::zeros(n + 1);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a.get(i, j));
        }
    }
    m.set(n, n, -1);
    m.set(0, n, sign.linking());
    m.set(n, 0, sign.linking());
    Ok(m)
}

/// Determinant of [`crossing_cobordism_matrix`]. For a negative crossing this
/// is `-a - 4b = -b(r + 4)` when `r = a/b > 0`, and `(-1)^k b(r + 4)` when
/// `-r = a/b` has a chain of length `k`.
pub fn crossing_cobordism_det(r: Slope, sign: CrossingSign) -> Result<BigInt> {
    Ok(crossing_cobordism_matrix(r, sign)?.determinant())
}

/// `-1 - 4/r`, the square of the class generating the cobordism's second
/// homology relative to its boundary; negative exactly when `r` lies outside
/// `[-4, 0]`.
pub fn generator_self_intersection(r: Slope) -> Result<BigRational> {
    finite(r, "the generator self-intersection")?;
    if r.is_zero() {
        return Err(Error::Contract("generator self-intersection needs r != 0".into()));
    }
    let four = BigRational::from_integer(BigInt::from(4));
    Ok(-BigRational::one() - four / r.to_ratio()?)
}

/// A knot together with a surgery slope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryDescription {
    pub knot: KnotExpr,
    pub slope: Slope,
}

/// Surgery presentation of the branched double cover.
///
/// * `P_ℓ(K)` gives `S^3_{2ℓ}(K # rev K)`; `ℓ = 0` is 0-surgery and rejected.
/// * `wh+(J)` gives `S^3_{1/2}(J # rev J)`.
/// * The unknot gives `S^3 = S^3_1(U)`.
/// * `rev` does not change the cover and `mirror` reverses its orientation,
///   which is surgery on the mirror with the opposite slope.
pub fn branched_double_cover(k: &KnotExpr) -> Result<SurgeryDescription> {
    match k {
        KnotExpr::Unknot => Ok(SurgeryDescription { knot: KnotExpr::Unknot, slope: Slope::integer(1) }),
        KnotExpr::Cable(ell, j) => {
            if *ell == 0 {
                return Err(Error::ZeroSurgery);
            }
            let slope = ell.checked_mul(2).ok_or(Error::Overflow("cable slope"))?;
            Ok(SurgeryDescription { knot: KnotExpr::sum((**j).clone(), KnotExpr::rev((**j).clone())), slope: Slope::integer(slope) })
        }
        KnotExpr::WhiteheadPos(j) => {
            Ok(SurgeryDescription { knot: KnotExpr::sum((**j).clone(), KnotExpr::rev((**j).clone())), slope: reduce(1, 2)? })
        }
        KnotExpr::Reverse(j) => branched_double_cover(j),
        KnotExpr::Mirror(j) => {
            let d = branched_double_cover(j)?;
            Ok(SurgeryDescription { knot: KnotExpr::mirror(d.knot), slope: d.slope.neg()? })
        }
        _ => Err(Error::NoSurgeryPresentation(k.to_string())),
    }
}

/// The chain diagram of `r` with its linking matrix.
pub fn chain_for(r: Slope) -> Result<(ChainDiagram, IntMatrix)> {
    let c = ChainDiagram::from_slope(r)?;
    let m = chain_linking_matrix(&c)?;
    Ok((c, m))
}
