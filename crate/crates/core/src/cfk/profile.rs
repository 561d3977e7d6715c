//! Extraction of the integers `V_k`, `H_k` from a knot Floer complex.
//!
//! Work in the minus flavour. `A_k = C{i <= 0, j <= k}` is a subcomplex of
//! both `B = C{i <= 0}` and `C{j <= k}`; each has homology a single tower
//! plus torsion. The tower of `B` has top grading 0 and the tower of
//! `C{j <= k}` has top grading `2k`. Inclusion sends the tower of `A_k` onto
//! `U^{V_k}` (resp. `U^{H_k}`) times the target tower, so
//!
//! * `V_k` is the least `n >= 0` such that some cycle of `A_k` in grading
//!   `-2n` is not a boundary in `B`, and
//! * `H_k` is the least `n >= 0` such that some cycle of `A_k` in grading
//!   `2k - 2n` is not a boundary in `C{j <= k}`.
//!
//! Each grading level of these complexes is finite-dimensional, so both
//! searches are exact linear algebra over `F2`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::complex::CfkComplex;
use super::gf2::{kernel, BitVec, EchelonBasis};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// The integers `V_0..V_g` and `H_{-g}..H_0` of a knot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct VHProfile {
    genus: u32,
    v: Vec<u64>,
    h: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    g: u32,
    #[serde(rename = "V")]
    v: Vec<u64>,
    #[serde(rename = "H")]
    h: Vec<u64>,
}

impl TryFrom<RawProfile> for VHProfile {
    type Error = Error;
    fn try_from(r: RawProfile) -> Result<VHProfile> {
        VHProfile::new(r.g, r.v, r.h)
    }
}

impl From<VHProfile> for RawProfile {
    fn from(p: VHProfile) -> RawProfile {
        RawProfile { g: p.genus, v: p.v, h: p.h }
    }
}

impl VHProfile {
    /// `v = [V_0, ..., V_g]`, `h = [H_{-g}, ..., H_0]`.
    pub fn new(genus: u32, v: Vec<u64>, h: Vec<u64>) -> Result<VHProfile> {
        let n = genus as usize + 1;
        if v.len() != n || h.len() != n {
            return Err(Error::InvalidProfile(format!("genus {genus} needs {n} entries of V and H")));
        }
        if v.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidProfile(format!("V is not non-increasing: {v:?}")));
        }
        if h.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidProfile(format!("H is not non-decreasing: {h:?}")));
        }
        if v[n - 1] != 0 || h[0] != 0 {
            return Err(Error::InvalidProfile("V_g and H_{-g} must vanish".into()));
        }
        if v[0] != h[n - 1] {
            return Err(Error::InvalidProfile(format!("V_0 = {} differs from H_0 = {}", v[0], h[n - 1])));
        }
        Ok(VHProfile { genus, v, h })
    }

    pub fn zero() -> VHProfile {
        VHProfile { genus: 0, v: vec![0], h: vec![0] }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn v_values(&self) -> &[u64] {
        &self.v
    }

    pub fn h_values(&self) -> &[u64] {
        &self.h
    }

    /// `V_k` for any integer `k`: zero for `k >= g`. Negative indices never
    /// arise from valid surgery formulas and clamp to `V_0`.
    pub fn v(&self, k: i64) -> u64 {
        if k < 0 {
            log::debug!("V_{k} requested; clamping to V_0");
            return self.v[0];
        }
        self.v.get(k as usize).copied().unwrap_or(0)
    }

    /// `H_k` for any integer `k`: zero for `k <= -g`; positive indices clamp
    /// to `H_0`.
    pub fn h(&self, k: i64) -> u64 {
        let g = self.genus as i64;
        if k > 0 {
            log::debug!("H_{k} requested; clamping to H_0");
            return self.h[g as usize];
        }
        if k < -g {
            return 0;
        }
        self.h[(k + g) as usize]
    }

    pub fn v0(&self) -> u64 {
        self.v[0]
    }

    /// `H_{-k} = V_k` for `0 <= k <= g`.
    pub fn is_symmetric(&self) -> bool {
        (0..=self.genus as i64).all(|k| self.h(-k) == self.v(k))
    }
}

/// Search depth used when none is given: `2g + max(t) + 2` where `g` is the
/// sum of the factor genera and `t` ranges over the factors' torsion
/// coefficients.
pub fn default_truncation(genus_sum: u32, max_torsion: u64) -> u32 {
    2 * genus_sum + max_torsion as u32 + 2
}

/// Which target complex the tower of `A_k` is compared against.
#[derive(Clone, Copy)]
enum Side {
    /// `C{i <= 0}`
    Vertical,
    /// `C{j <= k}`
    Horizontal,
}

/// Grading level of a filtered piece: elements `U^e x` with
/// `M(x) - 2e = grading`, restricted by the given predicate on `(x, e)`.
fn level(c: &CfkComplex, grading: i32, keep: impl Fn(usize, i32) -> bool) -> Vec<(usize, i32)> {
    c.generators()
        .iter()
        .enumerate()
        .filter_map(|(x, g)| {
            let diff = g.maslov - grading;
            if diff % 2 != 0 {
                return None;
            }
            let e = diff / 2;
            keep(x, e).then_some((x, e))
        })
        .collect()
}

fn boundary(c: &CfkComplex, x: usize, e: i32, index: &HashMap<(usize, i32), usize>, len: usize) -> BitVec {
    let mut v = BitVec::zeros(len);
    for a in &c.differential()[x] {
        let key = (a.target, e + a.power as i32);
        // filtration guarantees the term stays inside the subcomplex
        let &pos = index.get(&key).expect("differential leaves the filtered piece");
        v.flip(pos);
    }
    v
}

/// Whether `A_k` has a cycle in `grading` that is not a boundary in the
/// target complex.
fn tower_hits(c: &CfkComplex, k: i32, grading: i32, side: Side) -> bool {
    let gens = c.generators();
    let in_a = |x: usize, e: i32| e >= 0 && gens[x].alexander - e <= k;
    let in_target = |x: usize, e: i32| match side {
        Side::Vertical => e >= 0,
        Side::Horizontal => gens[x].alexander - e <= k,
    };
    let target_here = level(c, grading, in_target);
    let index: HashMap<(usize, i32), usize> = target_here.iter().enumerate().map(|(i, &xe)| (xe, i)).collect();
    let n = target_here.len();

    let mut boundaries = EchelonBasis::new();
    for (x, e) in level(c, grading + 1, in_target) {
        boundaries.insert(boundary(c, x, e, &index, n));
    }

    let a_here: Vec<(usize, i32)> = target_here.iter().copied().filter(|&(x, e)| in_a(x, e)).collect();
    let below = level(c, grading - 1, in_a);
    let below_index: HashMap<(usize, i32), usize> = below.iter().enumerate().map(|(i, &xe)| (xe, i)).collect();
    let images: Vec<BitVec> = a_here.iter().map(|&(x, e)| boundary(c, x, e, &below_index, below.len())).collect();
    kernel(&images).into_iter().any(|combo| {
        let mut cycle = BitVec::zeros(n);
        for (j, xe) in a_here.iter().enumerate() {
            if combo.get(j) {
                cycle.flip(index[xe]);
            }
        }
        !boundaries.contains(&cycle)
    })
}

fn search(c: &CfkComplex, k: i32, side: Side, truncation: u32) -> Result<u64> {
    for n in 0..=truncation {
        let grading = match side {
            Side::Vertical => -2 * n as i32,
            Side::Horizontal => 2 * k - 2 * n as i32,
        };
        if tower_hits(c, k, grading, side) {
            return Ok(n as u64);
        }
    }
    Err(Error::Unstable(truncation))
}

fn profile_at(c: &CfkComplex, truncation: u32, exec: Execution) -> Result<VHProfile> {
    let g = c.genus() as i32;
    let ks: Vec<i32> = (0..=g).collect();
    let v = par::try_map(exec, &ks, |&k| search(c, k, Side::Vertical, truncation))?;
    let hk: Vec<i32> = (-g..=0).collect();
    let h = par::try_map(exec, &hk, |&k| search(c, k, Side::Horizontal, truncation))?;
    VHProfile::new(g as u32, v, h).map_err(|e| Error::Complex(format!("complex produced an invalid profile: {e}")))
}

/// Computes the `V`/`H` profile, searching tower positions up to
/// `truncation` and confirming the result is unchanged at `truncation + 1`.
pub fn vh_profile(c: &CfkComplex, truncation: u32) -> Result<VHProfile> {
    vh_profile_with(c, truncation, Execution::default())
}

pub fn vh_profile_with(c: &CfkComplex, truncation: u32, exec: Execution) -> Result<VHProfile> {
    let p = profile_at(c, truncation, exec)?;
    let q = profile_at(c, truncation + 1, exec)?;
    if p != q {
        return Err(Error::Unstable(truncation));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::alexander::AlexanderPolynomial;

    fn stair(p: u32, q: u32) -> CfkComplex {
        CfkComplex::staircase(&AlexanderPolynomial::torus(p, q).unwrap()).unwrap()
    }

    #[test]
    fn unknot_and_trefoil() {
        let u = vh_profile(&CfkComplex::unknot(), 2).unwrap();
        assert_eq!(u, VHProfile::zero());
        let t = vh_profile(&stair(2, 3), 4).unwrap();
        assert_eq!(t.v_values(), &[1, 0]);
        assert_eq!(t.h_values(), &[0, 1]);
    }

    #[test]
    fn left_trefoil() {
        // dual of the right-handed trefoil
        let t = vh_profile(&stair(2, 3).dual(), 4).unwrap();
        assert_eq!(t.v_values(), &[0, 0]);
        assert_eq!(t.h_values(), &[0, 0]);
    }

    #[test]
    fn truncation_too_small_is_reported() {
        let c = stair(2, 7);
        assert_eq!(vh_profile(&c, 1), Err(Error::Unstable(1)));
        assert!(vh_profile(&c, 3).is_ok());
    }

    #[test]
    fn profile_invariants_enforced() {
        assert!(VHProfile::new(2, vec![0, 1, 0], vec![0, 0, 0]).is_err());
        assert!(VHProfile::new(1, vec![1, 0], vec![0, 2]).is_err());
        assert!(VHProfile::new(1, vec![1, 1], vec![0, 1]).is_err());
        assert!(VHProfile::new(1, vec![1, 0], vec![0, 1]).is_ok());
        let j = serde_json::to_string(&VHProfile::new(1, vec![1, 0], vec![0, 1]).unwrap()).unwrap();
        assert_eq!(j, r#"{"g":1,"V":[1,0],"H":[0,1]}"#);
        assert!(serde_json::from_str::<VHProfile>(r#"{"g":1,"V":[0,1],"H":[0,0]}"#).is_err());
    }

    #[test]
    fn index_clamping() {
        let p = VHProfile::new(2, vec![1, 1, 0], vec![0, 1, 1]).unwrap();
        assert_eq!(p.v(5), 0);
        assert_eq!(p.h(-7), 0);
        assert_eq!(p.h(-1), 1);
        assert_eq!(p.v(-1), 1);
        assert!(p.is_symmetric());
    }
}
