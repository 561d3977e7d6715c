//! Knot expressions to profiles and correction terms.
//!
//! Connected sums of torus knots and their mirrors are modelled by tensor
//! products of staircases and their duals. Whitehead doubles have no model
//! here; their profiles are available only when supplied by the user.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::RwLock;

use num_rational::BigRational;

use crate::cache::{ProfileCache, ProfileCacheEntry, Provenance};
use crate::cfk::{default_truncation, tau_symbolic, vh_profile_with, AlexanderPolynomial, CfkComplex, VHProfile};
use crate::correction::{d_from_profiles, DInvariantTable, SurgeryD};
use crate::error::{Error, Result};
use crate::knot::KnotExpr;
use crate::par::Execution;
use crate::slopes::{Slope, SpinCLabel};
use crate::surgery::branched_double_cover;

/// A finite complex for a knot along with the data fixing its default
/// truncation.
#[derive(Clone, Debug)]
pub struct KnotModel {
    pub complex: CfkComplex,
    pub genus_sum: u32,
    pub max_torsion: u64,
}

impl KnotModel {
    pub fn default_truncation(&self) -> u32 {
        default_truncation(self.genus_sum, self.max_torsion)
    }
}

/// The complex of a knot built from torus knots, mirrors, reversals and
/// connected sums.
pub fn knot_model(k: &KnotExpr) -> Result<KnotModel> {
    if k.is_link() {
        return Err(Error::ProfileUnavailable(format!("{k}: two-component links have no knot Floer profile")));
    }
    let canon = k.canonical();
    let mut complex = CfkComplex::unknot();
    let mut genus_sum = 0;
    let mut max_torsion = 0u64;
    for leaf in canon.summands() {
        let (t, mirrored) = match leaf {
            KnotExpr::Unknot => continue,
            KnotExpr::Torus(p, q) => ((*p, *q), false),
            KnotExpr::Mirror(inner) => match **inner {
                KnotExpr::Torus(p, q) => ((p, q), true),
                _ => return Err(unavailable(leaf)),
            },
            _ => return Err(unavailable(leaf)),
        };
        let alex = AlexanderPolynomial::torus(t.0, t.1)?;
        let mut stair = CfkComplex::staircase(&alex)?;
        if mirrored {
            stair = stair.dual();
        }
        genus_sum += alex.genus();
        let tmax = alex.torsion_coefficients().into_iter().max().unwrap_or(0);
        max_torsion = max_torsion.max(tmax.max(0) as u64);
        complex = complex.tensor(&stair);
    }
    Ok(KnotModel { complex, genus_sum, max_torsion })
}

fn unavailable(leaf: &KnotExpr) -> Error {
    Error::ProfileUnavailable(format!("{leaf}: no knot Floer model for Whitehead doubles; supply a profile"))
}

/// Profile computations with an in-memory memo and an optional persistent
/// cache. Safe to share between threads.
#[derive(Debug, Default)]
pub struct Engine {
    truncation: Option<u32>,
    exec: Execution,
    cache: Option<ProfileCache>,
    memo: RwLock<HashMap<String, (VHProfile, Provenance)>>,
}

impl Engine {
    pub fn new() -> Engine {
        Engine::default()
    }

    /// Fixes the search depth instead of the per-knot default.
    pub fn with_truncation(mut self, n: Option<u32>) -> Engine {
        self.truncation = n;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Engine {
        self.exec = exec;
        self
    }

    pub fn with_cache(mut self, path: impl Into<PathBuf>) -> Engine {
        self.cache = Some(ProfileCache::open(path));
        self
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    /// Registers a user-supplied profile for `k`; it takes precedence over
    /// any computed one.
    pub fn supply_profile(&self, k: &KnotExpr, p: VHProfile) {
        let key = k.cache_key();
        if let Some(c) = &self.cache {
            c.store_or_warn(ProfileCacheEntry::new(key.clone(), &p, Provenance::User));
        }
        self.memo.write().expect("memo lock").insert(key, (p, Provenance::User));
    }

    pub fn profile(&self, k: &KnotExpr) -> Result<VHProfile> {
        Ok(self.profile_with_provenance(k)?.0)
    }

    pub fn profile_with_provenance(&self, k: &KnotExpr) -> Result<(VHProfile, Provenance)> {
        let key = k.cache_key();
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(hit.clone());
        }
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            self.memo.write().expect("memo lock").insert(key, hit.clone());
            return Ok(hit);
        }
        let model = knot_model(k)?;
        let n = self.truncation.unwrap_or_else(|| model.default_truncation());
        let p = vh_profile_with(&model.complex, n, self.exec)?;
        log::debug!("computed profile of {key} with truncation {n}");
        if let Some(c) = &self.cache {
            c.store_or_warn(ProfileCacheEntry::new(key.clone(), &p, Provenance::Computed));
        }
        self.memo.write().expect("memo lock").insert(key, (p.clone(), Provenance::Computed));
        Ok((p, Provenance::Computed))
    }

    /// The profile read by the surgery formula at slope `s`: that of `k` for
    /// positive slopes and that of its mirror for negative ones.
    fn surgery_profile(&self, k: &KnotExpr, s: Slope) -> Result<VHProfile> {
        if s.is_zero() {
            return Err(Error::ZeroSurgery);
        }
        if s.is_negative() {
            self.profile(&KnotExpr::mirror(k.clone()))
        } else {
            self.profile(k)
        }
    }

    pub fn d_surgery(&self, k: &KnotExpr, s: Slope, label: SpinCLabel) -> Result<SurgeryD> {
        let p = self.surgery_profile(k, s)?;
        d_from_profiles(&p, &p, s, label)
    }

    pub fn d_table(&self, k: &KnotExpr, s: Slope) -> Result<DInvariantTable> {
        let p = self.surgery_profile(k, s)?;
        DInvariantTable::from_profiles(k.to_string(), &p, &p, s, self.exec)
    }

    pub fn tau(&self, k: &KnotExpr) -> Result<i64> {
        tau_symbolic(k)
    }

    /// `δ_2`: the correction term of the double branched cover in its unique
    /// spin^c structure, through the surgery presentation of the cover.
    pub fn delta_2(&self, k: &KnotExpr) -> Result<BigRational> {
        let bdc = branched_double_cover(k)?;
        if bdc.slope.spinc_count()? != 1 {
            return Err(Error::Contract(format!("{k}: the branched double cover is not an integer homology sphere")));
        }
        Ok(self.d_surgery(&bdc.knot, bdc.slope, SpinCLabel::new(0, 1)?)?.d)
    }
}
