//! Obstruction verdicts built from concordance invariants.
//!
//! Every verdict is one-directional: a nonzero available invariant proves the
//! link is not concordant to the model link, while `NoObstructionFound`
//! certifies nothing.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cache::Provenance;
use crate::cfk::VHProfile;
use crate::correction::unknot_d;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::knot::KnotExpr;
use crate::par;
use crate::slopes::{fmt_rational, rational_serde, rational_vec_serde, Slope, SpinCLabel};

/// A value with the place it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sourced<T> {
    pub value: T,
    pub provenance: Provenance,
}

impl<T> Sourced<T> {
    pub fn computed(value: T) -> Sourced<T> {
        Sourced { value, provenance: Provenance::Computed }
    }

    pub fn user(value: T) -> Sourced<T> {
        Sourced { value, provenance: Provenance::User }
    }
}

/// Crossing changes that turn a knot into the unknot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unknotting {
    pub positive: u64,
    pub negative: u64,
}

impl Unknotting {
    /// Crossing changes bound τ: `-negative <= τ <= positive`.
    pub fn tau_consistent(&self, tau: i64) -> bool {
        -(self.negative as i128) <= tau as i128 && tau as i128 <= self.positive as i128
    }
}

/// Invariants of a knot gathered for the verdicts. Missing entries are
/// unavailable, never assumed zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotInvariantRecord {
    pub knot: KnotExpr,
    pub tau: Option<Sourced<i64>>,
    /// Rasmussen's `s`; only ever supplied by the user.
    pub s: Option<i64>,
    /// `δ_{2^k}` keyed by `k`.
    pub delta_covers: BTreeMap<u32, Sourced<BigRational>>,
    pub profile: Option<Sourced<VHProfile>>,
    pub mirror_profile: Option<Sourced<VHProfile>>,
    pub unknotting: Option<Unknotting>,
}

impl KnotInvariantRecord {
    pub fn new(knot: KnotExpr) -> KnotInvariantRecord {
        KnotInvariantRecord {
            knot,
            tau: None,
            s: None,
            delta_covers: BTreeMap::new(),
            profile: None,
            mirror_profile: None,
            unknotting: None,
        }
    }

    /// Everything the engine can compute for `knot`.
    pub fn gather(engine: &Engine, knot: &KnotExpr) -> KnotInvariantRecord {
        let mut rec = KnotInvariantRecord::new(knot.clone());
        match engine.tau(knot) {
            Ok(t) => rec.tau = Some(Sourced::computed(t)),
            Err(e) => log::debug!("tau of {knot}: {e}"),
        }
        match engine.profile_with_provenance(knot) {
            Ok((p, prov)) => rec.profile = Some(Sourced { value: p, provenance: prov }),
            Err(e) => log::debug!("profile of {knot}: {e}"),
        }
        let mirror = KnotExpr::mirror(knot.clone());
        match engine.profile_with_provenance(&mirror) {
            Ok((p, prov)) => rec.mirror_profile = Some(Sourced { value: p, provenance: prov }),
            Err(e) => log::debug!("profile of {mirror}: {e}"),
        }
        match engine.delta_2(knot) {
            Ok(d) => {
                rec.delta_covers.insert(1, Sourced::computed(d));
            }
            Err(e) => log::debug!("delta_2 of {knot}: {e}"),
        }
        rec
    }

    pub fn with_s(mut self, s: i64) -> KnotInvariantRecord {
        self.s = Some(s);
        self
    }

    pub fn with_tau(mut self, tau: i64) -> KnotInvariantRecord {
        self.tau = Some(Sourced::user(tau));
        self
    }

    pub fn with_delta(mut self, k: u32, value: BigRational) -> KnotInvariantRecord {
        self.delta_covers.insert(k, Sourced::user(value));
        self
    }

    pub fn with_profile(mut self, p: VHProfile) -> KnotInvariantRecord {
        self.profile = Some(Sourced::user(p));
        self
    }

    pub fn with_mirror_profile(mut self, p: VHProfile) -> KnotInvariantRecord {
        self.mirror_profile = Some(Sourced::user(p));
        self
    }

    pub fn with_unknotting(mut self, u: Unknotting) -> KnotInvariantRecord {
        self.unknotting = Some(u);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Obstructed,
    NoObstructionFound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "Obstructed",
            Verdict::NoObstructionFound => "NoObstructionFound",
        })
    }
}

/// Status of one invariant in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: Option<String>,
    pub vanishes: Option<bool>,
    pub available: bool,
    pub provenance: Option<Provenance>,
}

impl Check {
    fn unavailable(name: impl Into<String>) -> Check {
        Check { name: name.into(), value: None, vanishes: None, available: false, provenance: None }
    }

    fn of_rational(name: impl Into<String>, x: &BigRational, provenance: Provenance) -> Check {
        Check { name: name.into(), value: Some(fmt_rational(x)), vanishes: Some(x.is_zero()), available: true, provenance: Some(provenance) }
    }

    fn of_int(name: impl Into<String>, x: i64, provenance: Provenance) -> Check {
        Check::of_rational(name, &BigRational::from_integer(BigInt::from(x)), provenance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Witness>,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    /// Obstructed iff some available check does not vanish; inconclusive when
    /// nothing is available.
    fn assemble(checks: Vec<Check>, citations: &[&str], mut notes: Vec<String>) -> Result<ObstructionReport> {
        if !checks.iter().any(|c| c.available) {
            return Err(Error::Inconclusive("no invariants computable".into()));
        }
        let witnesses: Vec<Witness> = checks
            .iter()
            .filter(|c| c.vanishes == Some(false))
            .map(|c| Witness { name: c.name.clone(), value: c.value.clone().unwrap_or_default() })
            .collect();
        let verdict = if witnesses.is_empty() { Verdict::NoObstructionFound } else { Verdict::Obstructed };
        if verdict == Verdict::NoObstructionFound {
            notes.push("no available invariant obstructs; this is not a certificate of concordance".into());
        }
        Ok(ObstructionReport { verdict, checks, witnesses, citations: citations.iter().map(|s| s.to_string()).collect(), notes })
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn tau_check(rec: &KnotInvariantRecord) -> Check {
    match &rec.tau {
        Some(t) => Check::of_int("tau", t.value, t.provenance),
        None => Check::unavailable("tau"),
    }
}

fn s_check(rec: &KnotInvariantRecord) -> Check {
    match rec.s {
        Some(s) => Check::of_int("s", s, Provenance::User),
        None => Check::unavailable("s"),
    }
}

fn delta_checks(rec: &KnotInvariantRecord) -> Vec<Check> {
    let mut out: Vec<Check> = rec
        .delta_covers
        .iter()
        .map(|(k, d)| Check::of_rational(format!("delta_{}", 1u128 << k.min(&127)), &d.value, d.provenance))
        .collect();
    if !rec.delta_covers.contains_key(&1) {
        out.insert(0, Check::unavailable("delta_2"));
    }
    out
}

/// `dnorm(S^3_1(K)) = -2 V_0(K)` and `dnorm(S^3_{-1}(K)) = 2 V_0(mirror K)`.
fn unit_surgery_checks(rec: &KnotInvariantRecord) -> Vec<Check> {
    let two = |v: u64| BigRational::from_integer(BigInt::from(2 * v as i128));
    let plus = match &rec.profile {
        Some(p) => Check::of_rational("dnorm(S^3_1)", &-two(p.value.v0()), p.provenance),
        None => Check::unavailable("dnorm(S^3_1)"),
    };
    let minus = match &rec.mirror_profile {
        Some(p) => Check::of_rational("dnorm(S^3_-1)", &two(p.value.v0()), p.provenance),
        None => Check::unavailable("dnorm(S^3_-1)"),
    };
    vec![plus, minus]
}

const SPLIT_CITATION: &str =
    "if P(K) is smoothly concordant to a split link then tau(K), s(K), every delta_{2^k}(K) and d(S^3_{±1}(K)) vanish";
const VANISHING_CITATION: &str = "if dnorm(S^3_1(K)) = 0 then V_0 = 0 and dnorm(S^3_{p/q}(K), i) = 0 for all p/q > 0";
const BING_CITATION: &str = "if B(K) is smoothly slice then dnorm(S^3_{p/q}(K), i) = 0 for every p/q and i";
const BING_EXTRA: &str = "tau(K) and delta(K) also vanish when B(K) is slice; it is not known whether s(K) must";
const LOCAL_CITATION: &str = "if P_l(K) is concordant to a locally knotted P_l(U) then tau(K) and s(K) vanish";
const FAMILY_CITATION: &str =
    "for l < 0 the d-invariants of S^3_{2l}(K # K^r) are bounded below in terms of the unknotting data of K # K^r; \
     a locally knotted cover L(2l,1) # 2 M_2(K) whose d-invariants all lie below that bound obstructs";

/// Obstructions to `P(K)` being concordant to a split link.
pub fn split_verdict(rec: &KnotInvariantRecord) -> Result<ObstructionReport> {
    let mut checks = vec![tau_check(rec), s_check(rec)];
    checks.extend(delta_checks(rec));
    checks.extend(unit_surgery_checks(rec));
    let mut notes = Vec::new();
    if let Some(c) = checks.iter().find(|c| c.name == "dnorm(S^3_1)") {
        if c.vanishes == Some(true) {
            notes.push("dnorm(S^3_1) = 0, hence every positive surgery has vanishing dnorm".into());
        }
    }
    ObstructionReport::assemble(checks, &[SPLIT_CITATION, VANISHING_CITATION], notes)
}

/// Obstructions to the Bing double `B(K)` being slice, from `dnorm` of
/// `±1` surgery.
pub fn bing_verdict(rec: &KnotInvariantRecord) -> Result<ObstructionReport> {
    if rec.profile.is_none() && rec.mirror_profile.is_none() {
        return Err(Error::Inconclusive(format!("no profile available for {}", rec.knot)));
    }
    let checks = unit_surgery_checks(rec);
    let mut notes = Vec::new();
    if let Some(t) = rec.tau.as_ref().filter(|t| t.value != 0) {
        notes.push(format!("tau = {} is nonzero and would obstruct as well", t.value));
    }
    if let Some(d) = rec.delta_covers.get(&1).filter(|d| !d.value.is_zero()) {
        notes.push(format!("delta_2 = {} is nonzero and would obstruct as well", fmt_rational(&d.value)));
    }
    ObstructionReport::assemble(checks, &[BING_CITATION, BING_EXTRA], notes)
}

/// Obstructions to `P_ℓ(K)` being concordant to a locally knotted `P_ℓ(U)`.
///
/// For `ℓ < 0` and `K = wh+(T(2,2n+1))`, with an engine at hand, the family
/// comparison of [`linking_family_check`] for that `n` is added.
pub fn local_knot_verdict(rec: &KnotInvariantRecord, ell: i64, engine: Option<&Engine>) -> Result<ObstructionReport> {
    let mut checks = vec![tau_check(rec), s_check(rec)];
    let mut notes = Vec::new();
    if ell < 0 {
        match (family_member(&rec.knot), engine) {
            (Some(n), Some(e)) => {
                let row = family_row(e, ell, n, &family_constant(ell)?, &unknot_values(Slope::integer(2 * ell))?)?;
                checks.push(Check {
                    name: "family gap max d(M2') + C".into(),
                    value: Some(fmt_rational(&row.gap)),
                    vanishes: Some(!row.obstructed),
                    available: true,
                    provenance: Some(Provenance::Computed),
                });
                notes.push("the family gap obstructs when negative; a nonnegative gap is reported as vanishing".into());
            }
            (Some(_), None) => notes.push("family comparison skipped: no engine".into()),
            (None, _) => {}
        }
    }
    ObstructionReport::assemble(checks, &[LOCAL_CITATION, FAMILY_CITATION], notes)
}

/// `n` when `k` is `wh+(T(2,2n+1))` up to reversal.
fn family_member(k: &KnotExpr) -> Option<u32> {
    match k.canonical() {
        KnotExpr::WhiteheadPos(inner) => match *inner {
            KnotExpr::Torus(2, q) if q >= 3 => Some((q - 1) / 2),
            _ => None,
        },
        _ => None,
    }
}

/// Which inequality of the crossing-change bound is requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    /// `d(S^3_r(K)) <= C`, asserted for `r` outside `[-4n, 0]`.
    Upper,
    /// `d(S^3_r(K)) >= -C`, asserted for `r` outside `[0, 4p]`.
    Lower,
}

fn unknot_values(s: Slope) -> Result<Vec<BigRational>> {
    SpinCLabel::all(s.spinc_count()?).map(|l| unknot_d(s, l)).collect()
}

fn max_abs(xs: &[BigRational]) -> BigRational {
    xs.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero)
}

/// `C(n, p, r) = max_i |d(S^3_{r+4n}(U), i)| + max_i |d(S^3_{r-4p}(U), i)| + n + p`,
/// a valid (not sharp) constant for knots unknotted by `p` positive and `n`
/// negative crossing changes.
pub fn d_bound_constant(n_neg: u64, p_pos: u64, r: Slope, side: BoundSide) -> Result<BigRational> {
    if r.is_infinite() {
        return Err(Error::InfiniteSlope("the bound needs a finite slope".into()));
    }
    let n = i64::try_from(n_neg).map_err(|_| Error::Overflow("crossing count"))?;
    let p = i64::try_from(p_pos).map_err(|_| Error::Overflow("crossing count"))?;
    let four_n = n.checked_mul(4).ok_or(Error::Overflow("crossing count"))?;
    let four_p = p.checked_mul(4).ok_or(Error::Overflow("crossing count"))?;
    let excluded = match side {
        BoundSide::Upper => (-four_n, 0),
        BoundSide::Lower => (0, four_p),
    };
    if r.in_closed_interval(excluded.0, excluded.1) {
        return Err(Error::BoundNotAsserted(format!(
            "r = {r} lies in [{}, {}], where the {side:?} bound is not asserted",
            excluded.0, excluded.1
        )));
    }
    let up = r.add_integer(four_n)?;
    let down = r.add_integer(-four_p)?;
    if up.is_zero() || down.is_zero() {
        return Err(Error::BoundNotAsserted(format!("r + 4n or r - 4p vanishes for r = {r}")));
    }
    let c = max_abs(&unknot_values(up)?) + max_abs(&unknot_values(down)?);
    Ok(c + BigRational::from_integer(BigInt::from(n + p)))
}

/// One side of [`check_bound`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCheck {
    pub side: BoundSide,
    #[serde(with = "rational_serde")]
    pub constant: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub knot: KnotExpr,
    pub slope: Slope,
    pub unknotting: Unknotting,
    #[serde(with = "rational_serde")]
    pub min_d: BigRational,
    #[serde(with = "rational_serde")]
    pub max_d: BigRational,
    pub sides: Vec<SideCheck>,
    /// Whether τ lies in `[-negative, positive]`; `None` when τ is unknown.
    pub tau_consistent: Option<bool>,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.sides.iter().all(|s| s.holds)
    }
}

/// Evaluates every asserted side of the crossing-change bound against the
/// engine's correction terms of `S^3_r(K)`.
pub fn check_bound(engine: &Engine, knot: &KnotExpr, u: Unknotting, r: Slope) -> Result<BoundCheck> {
    let mut sides = Vec::new();
    let table = engine.d_table(knot, r)?;
    let min_d = table.d.values().min().cloned().unwrap_or_else(BigRational::zero);
    let max_d = table.d.values().max().cloned().unwrap_or_else(BigRational::zero);
    for side in [BoundSide::Lower, BoundSide::Upper] {
        match d_bound_constant(u.negative, u.positive, r, side) {
            Ok(c) => {
                let holds = match side {
                    BoundSide::Lower => min_d >= -c.clone(),
                    BoundSide::Upper => max_d <= c,
                };
                sides.push(SideCheck { side, constant: c, holds });
            }
            Err(Error::BoundNotAsserted(m)) => log::debug!("{m}"),
            Err(e) => return Err(e),
        }
    }
    if sides.is_empty() {
        return Err(Error::BoundNotAsserted(format!("neither side is asserted at r = {r}")));
    }
    let tau_consistent = engine.tau(knot).ok().map(|t| u.tau_consistent(t));
    if tau_consistent == Some(false) {
        log::warn!("unknotting data {u:?} contradicts tau of {knot}");
    }
    Ok(BoundCheck { knot: knot.clone(), slope: r, unknotting: u, min_d, max_d, sides, tau_consistent })
}

/// Unknotting data of `K(n) # K(n)^r` for `K(n) = wh+(T(2,2n+1))`: each
/// double is unknotted by changing one positive crossing of its clasp.
pub const FAMILY_UNKNOTTING: Unknotting = Unknotting { positive: 2, negative: 0 };

fn family_constant(ell: i64) -> Result<BigRational> {
    let slope = Slope::integer(ell.checked_mul(2).ok_or(Error::Overflow("family slope"))?);
    d_bound_constant(FAMILY_UNKNOTTING.negative, FAMILY_UNKNOTTING.positive, slope, BoundSide::Lower)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub n: u32,
    /// `δ_2(K(n)) = d(S^3_{1/2}(J # J^r))`.
    #[serde(with = "rational_serde")]
    pub delta_2: BigRational,
    /// Column (a): lower bound for every `d(M_2(n), s)`.
    #[serde(with = "rational_serde")]
    pub lower_bound: BigRational,
    /// Column (b): `d(L(2l,1), i) + 2 δ_2` for each label `i`.
    #[serde(with = "rational_vec_serde")]
    pub cover_values: Vec<BigRational>,
    /// `max_i (b)_i - (a)`.
    #[serde(with = "rational_serde")]
    pub gap: BigRational,
    pub obstructed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub ell: i64,
    pub unknotting: Unknotting,
    #[serde(with = "rational_serde")]
    pub constant: BigRational,
    #[serde(with = "rational_vec_serde")]
    pub lens_values: Vec<BigRational>,
    pub rows: Vec<FamilyRow>,
    /// Least `N_0` with every row `n >= N_0` obstructed.
    pub threshold: Option<u32>,
    /// `⌈(C + max lens value)/4⌉ + 1`, the threshold predicted from `δ_2 = -2n`.
    pub predicted_threshold: i64,
    pub verdict: Verdict,
}

fn family_row(engine: &Engine, ell: i64, n: u32, constant: &BigRational, lens: &[BigRational]) -> Result<FamilyRow> {
    let q = 2 * n + 1;
    let knot = KnotExpr::wh(KnotExpr::torus(2, q)?);
    let delta_2 = engine.delta_2(&knot)?;
    let shift = &delta_2 * BigInt::from(2);
    let cover_values: Vec<BigRational> = lens.iter().map(|x| x + &shift).collect();
    let lower_bound = -constant.clone();
    let top = cover_values.iter().max().cloned().ok_or_else(|| Error::Contract(format!("no labels for l = {ell}")))?;
    let gap = &top - &lower_bound;
    Ok(FamilyRow { n, delta_2, lower_bound, obstructed: gap.is_negative(), cover_values, gap })
}

/// Compares, for `n = 1..=n_max`, the lower bound on `d(M_2(n))` with the
/// correction terms of the cover of the locally knotted link.
pub fn linking_family_check(ell: i64, n_max: u32, engine: &Engine) -> Result<FamilyCheck> {
    if ell >= 0 {
        return Err(Error::Contract("the family check needs l < 0; reflect the link for l > 0".into()));
    }
    if n_max < 1 {
        return Err(Error::Contract("n_max must be at least 1".into()));
    }
    let slope = Slope::integer(ell.checked_mul(2).ok_or(Error::Overflow("family slope"))?);
    let constant = family_constant(ell)?;
    let lens = unknot_values(slope)?;
    let ns: Vec<u32> = (1..=n_max).collect();
    let rows = par::try_map(engine.execution(), &ns, |&n| family_row(engine, ell, n, &constant, &lens))?;
    let threshold = match rows.iter().rposition(|r| !r.obstructed) {
        None => Some(1),
        Some(i) if i + 1 < rows.len() => Some(rows[i + 1].n),
        Some(_) => None,
    };
    let lens_top = lens.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let predicted = ((&constant + lens_top) / BigRational::from_integer(BigInt::from(4))).ceil().to_integer();
    let predicted_threshold = i64::try_from(predicted).map_err(|_| Error::Overflow("threshold"))? + 1;
    let verdict = if threshold.is_some() { Verdict::Obstructed } else { Verdict::NoObstructionFound };
    Ok(FamilyCheck { ell, unknotting: FAMILY_UNKNOTTING, constant, lens_values: lens, rows, threshold, predicted_threshold, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KnotExpr {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn split_examples() {
        let e = Engine::new();
        let u = split_verdict(&KnotInvariantRecord::gather(&e, &k("U"))).unwrap();
        assert_eq!(u.verdict, Verdict::NoObstructionFound);
        assert!(u.checks.iter().filter(|c| c.available).all(|c| c.vanishes == Some(true)));
        let w = split_verdict(&KnotInvariantRecord::gather(&e, &k("wh+(T(2,3))"))).unwrap();
        assert_eq!(w.verdict, Verdict::Obstructed);
        assert_eq!(w.check("delta_2").unwrap().value.as_deref(), Some("-2"));
        let t = split_verdict(&KnotInvariantRecord::gather(&e, &k("T(2,3)"))).unwrap();
        assert_eq!(t.verdict, Verdict::Obstructed);
        assert_eq!(t.check("tau").unwrap().value.as_deref(), Some("1"));
        assert!(matches!(split_verdict(&KnotInvariantRecord::new(k("U"))), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn bing_examples() {
        let e = Engine::new();
        assert_eq!(bing_verdict(&KnotInvariantRecord::gather(&e, &k("U"))).unwrap().verdict, Verdict::NoObstructionFound);
        let t = bing_verdict(&KnotInvariantRecord::gather(&e, &k("T(2,3)"))).unwrap();
        assert_eq!(t.verdict, Verdict::Obstructed);
        assert_eq!(t.witnesses[0].value, "-2");
        let rec = KnotInvariantRecord::new(k("wh+(T(2,3))")).with_profile(VHProfile::new(1, vec![1, 0], vec![0, 1]).unwrap());
        let w = bing_verdict(&rec).unwrap();
        assert_eq!(w.verdict, Verdict::Obstructed);
        assert_eq!(w.check("dnorm(S^3_1)").unwrap().provenance, Some(Provenance::User));
        assert!(bing_verdict(&KnotInvariantRecord::new(k("wh+(T(2,3))"))).is_err());
    }

    #[test]
    fn local_knot_examples() {
        let e = Engine::new();
        for ell in [-2, 0, 3] {
            let u = local_knot_verdict(&KnotInvariantRecord::gather(&e, &k("U")), ell, Some(&e)).unwrap();
            assert_eq!(u.verdict, Verdict::NoObstructionFound);
        }
        let t = local_knot_verdict(&KnotInvariantRecord::gather(&e, &k("T(2,3)")), 2, Some(&e)).unwrap();
        assert_eq!(t.verdict, Verdict::Obstructed);
        let w = local_knot_verdict(&KnotInvariantRecord::gather(&e, &k("wh+(T(2,5))")), 0, Some(&e)).unwrap();
        assert_eq!(w.verdict, Verdict::Obstructed);
        assert_eq!(w.check("tau").unwrap().value.as_deref(), Some("1"));
        // without tau the family comparison alone decides for n = 5
        let rec = KnotInvariantRecord::new(k("wh+(T(2,11))"));
        let f = local_knot_verdict(&rec, -1, Some(&e)).unwrap();
        assert_eq!(f.verdict, Verdict::Obstructed);
        assert!(local_knot_verdict(&KnotInvariantRecord::new(k("U")), 1, None).is_err());
    }

    #[test]
    fn bound_constants() {
        // no crossing changes: twice the largest |d| of the lens space
        let c = d_bound_constant(0, 0, Slope::integer(5), BoundSide::Lower).unwrap();
        assert_eq!(c, r(2, 1));
        assert_eq!(d_bound_constant(0, 1, Slope::integer(-2), BoundSide::Lower).unwrap(), r(1, 4) + r(5, 4) + r(1, 1));
        assert!(matches!(d_bound_constant(0, 1, Slope::integer(3), BoundSide::Lower), Err(Error::BoundNotAsserted(_))));
        assert!(matches!(d_bound_constant(1, 0, Slope::integer(-3), BoundSide::Upper), Err(Error::BoundNotAsserted(_))));
        assert!(matches!(d_bound_constant(1, 0, Slope::integer(-4), BoundSide::Lower), Err(Error::BoundNotAsserted(_))));
        assert_eq!(family_constant(-1).unwrap(), r(9, 2));
    }

    #[test]
    fn bound_for_trefoil_at_minus_two() {
        let e = Engine::new();
        let b = check_bound(&e, &k("T(2,3)"), Unknotting { positive: 1, negative: 0 }, Slope::integer(-2)).unwrap();
        assert!(b.holds());
        assert_eq!(b.tau_consistent, Some(true));
        let u = check_bound(&e, &k("U"), Unknotting { positive: 0, negative: 0 }, Slope::integer(5)).unwrap();
        assert!(u.holds());
    }

    #[test]
    fn family_small() {
        let e = Engine::new();
        let f = linking_family_check(-1, 3, &e).unwrap();
        assert_eq!(f.constant, r(9, 2));
        assert_eq!(f.rows[0].delta_2, r(-2, 1));
        assert_eq!(f.threshold, Some(2));
        assert!(f.threshold.unwrap() as i64 <= f.predicted_threshold);
        assert_eq!(f.verdict, Verdict::Obstructed);
        assert!(linking_family_check(0, 3, &e).is_err());
    }
}
