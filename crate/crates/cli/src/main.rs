//! `dsurg`: correction terms of surgeries, surgery calculus and concordance
//! obstructions from the command line.
//!
//! Exit codes: 0 on success, 2 on domain or usage errors, 3 when a verdict is
//! inconclusive for lack of invariants.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dsurg::correction::unknot_d;
use dsurg::obstructions::{
    bing_verdict, check_bound, linking_family_check, local_knot_verdict, split_verdict, KnotInvariantRecord, Unknotting,
};
use dsurg::slopes::{fmt_rational, parse_rational};
use dsurg::surgery::{branched_double_cover, chain_for, chain_determinants, slam_dunk, slap_shot};
use dsurg::{Engine, Error, Execution, KnotExpr, Slope, SpinCLabel, VHProfile};
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "dsurg", version, about = "Exact correction terms of Dehn surgeries and concordance obstructions")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Tower search depth for profile extraction (default: per knot).
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<u32>,
    /// Line-delimited JSON profile cache.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<std::path::PathBuf>,
    /// Run every sweep on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct Labels {
    /// A single spin^c label `i`, read modulo `|p|`.
    #[arg(long, value_name = "I", allow_hyphen_values = true)]
    spinc: Option<i64>,
    /// Every label `0..|p|` (the default).
    #[arg(long)]
    all_spinc: bool,
}

#[derive(Args, Debug)]
struct Supplied {
    /// Rasmussen's s, which is never computed.
    #[arg(long, value_name = "VALUE", allow_hyphen_values = true)]
    supply_s: Option<i64>,
    /// `δ_{2^k}` as `k=a/b`; repeatable.
    #[arg(long, value_name = "K=VALUE")]
    supply_delta: Vec<String>,
    /// A profile for the knot as `{"g":..,"V":[..],"H":[..]}`.
    #[arg(long, value_name = "JSON")]
    supply_profile: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Correction terms of surgery on the unknot (lens spaces).
    LensD {
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
        #[command(flatten)]
        labels: Labels,
    },
    /// Normalized correction terms of surgery on a knot.
    Dnorm {
        #[arg(long)]
        knot: KnotExpr,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
        #[command(flatten)]
        labels: Labels,
        #[arg(long, value_name = "JSON")]
        supply_profile: Option<String>,
    },
    /// Correction terms of surgery on a knot.
    D {
        #[arg(long)]
        knot: KnotExpr,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
        #[command(flatten)]
        labels: Labels,
        #[arg(long, value_name = "JSON")]
        supply_profile: Option<String>,
    },
    /// The V/H profile of a knot.
    Vh {
        #[arg(long)]
        knot: KnotExpr,
    },
    /// Surgery diagram moves.
    #[command(subcommand)]
    Calc(Calc),
    /// Surgery presentation of the branched double cover.
    Bdc {
        #[arg(long)]
        knot: KnotExpr,
    },
    /// Obstruction verdicts.
    #[command(subcommand)]
    Obstruct(Obstruct),
    /// Crossing-change bound on the correction terms of `S^3_r(K)`.
    Bound {
        #[arg(long)]
        knot: KnotExpr,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
        /// Crossing changes `P,N`: `P` positive and `N` negative.
        #[arg(long, value_name = "P,N")]
        unknotting: String,
    },
    /// Compare the family `P_l(wh+(T(2,2n+1)))` against locally knotted links.
    FamilyCheck {
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
}

#[derive(Subcommand, Debug)]
enum Calc {
    /// `n - 1/r`.
    SlamDunk {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
    },
    /// `l + p/(q + q'p)`.
    SlapShot {
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
        #[arg(long, allow_hyphen_values = true)]
        qprime: i64,
    },
}

#[derive(Subcommand, Debug)]
enum Obstruct {
    /// P(K) concordant to a split link.
    Split {
        #[arg(long)]
        knot: KnotExpr,
        #[command(flatten)]
        supplied: Supplied,
    },
    /// The Bing double B(K) slice.
    Bing {
        #[arg(long)]
        knot: KnotExpr,
        #[command(flatten)]
        supplied: Supplied,
    },
    /// P_l(K) concordant to a locally knotted P_l(U).
    LocalKnot {
        #[arg(long)]
        knot: KnotExpr,
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
        #[command(flatten)]
        supplied: Supplied,
    },
}

/// Result of a command: text for people and JSON for programs.
struct Output {
    text: String,
    json: Value,
}

fn labels_for(s: Slope, l: &Labels) -> Result<Vec<SpinCLabel>, Error> {
    let p = s.spinc_count()?;
    match l.spinc {
        Some(i) if !l.all_spinc => {
            if i < 0 || i as u64 >= p {
                return Err(Error::LabelOutOfRange { label: i, modulus: p as i64 });
            }
            Ok(vec![SpinCLabel::new(i as u64, p)?])
        }
        _ => Ok(SpinCLabel::all(p).collect()),
    }
}

fn rational_map(values: &[(SpinCLabel, BigRational)]) -> BTreeMap<String, String> {
    values.iter().map(|(l, v)| (l.index().to_string(), fmt_rational(v))).collect()
}

fn value_lines(values: &[(SpinCLabel, BigRational)]) -> String {
    if let [(_, v)] = values {
        return fmt_rational(v);
    }
    values.iter().map(|(l, v)| format!("{l}: {}", fmt_rational(v))).collect::<Vec<_>>().join("\n")
}

fn parse_profile(text: &str) -> Result<VHProfile, Error> {
    serde_json::from_str(text).map_err(|e| Error::InvalidProfile(e.to_string()))
}

fn parse_unknotting(text: &str) -> Result<Unknotting, Error> {
    let bad = || Error::Contract(format!("--unknotting expects P,N with nonnegative integers, got {text:?}"));
    let (p, n) = text.split_once(',').ok_or_else(bad)?;
    Ok(Unknotting { positive: p.trim().parse().map_err(|_| bad())?, negative: n.trim().parse().map_err(|_| bad())? })
}

fn record(engine: &Engine, knot: &KnotExpr, s: &Supplied) -> Result<KnotInvariantRecord, Error> {
    if let Some(p) = &s.supply_profile {
        engine.supply_profile(knot, parse_profile(p)?);
    }
    let mut rec = KnotInvariantRecord::gather(engine, knot);
    if let Some(v) = s.supply_s {
        rec = rec.with_s(v);
    }
    for entry in &s.supply_delta {
        let (k, v) = entry
            .split_once('=')
            .ok_or_else(|| Error::Contract(format!("--supply-delta expects K=VALUE, got {entry:?}")))?;
        let k: u32 = k.trim().parse().map_err(|_| Error::Contract(format!("bad cover index {k:?}")))?;
        rec = rec.with_delta(k, parse_rational(v)?);
    }
    Ok(rec)
}

fn surgery_values(
    engine: &Engine,
    knot: &KnotExpr,
    slope: Slope,
    labels: &Labels,
    profile: &Option<String>,
) -> Result<(Vec<(SpinCLabel, BigRational)>, Vec<(SpinCLabel, BigRational)>), Error> {
    if let Some(p) = profile {
        engine.supply_profile(knot, parse_profile(p)?);
    }
    let table = engine.d_table(knot, slope)?;
    let chosen = labels_for(slope, labels)?;
    let pick = |m: &BTreeMap<u64, BigRational>| chosen.iter().map(|l| (*l, m[&l.index()].clone())).collect::<Vec<_>>();
    Ok((pick(&table.d), pick(&table.dnorm)))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let mut engine = Engine::new().with_truncation(cli.truncation);
    if cli.sequential {
        engine = engine.with_execution(Execution::Sequential);
    }
    if let Some(path) = &cli.cache {
        engine = engine.with_cache(path);
    }
    match &cli.command {
        Command::LensD { slope, labels } => {
            let values: Vec<_> = labels_for(*slope, labels)?
                .into_iter()
                .map(|l| Ok((l, unknot_d(*slope, l)?)))
                .collect::<Result<_, Error>>()?;
            Ok(Output { text: value_lines(&values), json: json!({ "slope": slope, "d": rational_map(&values) }) })
        }
        Command::Dnorm { knot, slope, labels, supply_profile } => {
            let (d, dnorm) = surgery_values(&engine, knot, *slope, labels, supply_profile)?;
            Ok(Output {
                text: value_lines(&dnorm),
                json: json!({ "knot": knot, "slope": slope, "d": rational_map(&d), "dnorm": rational_map(&dnorm) }),
            })
        }
        Command::D { knot, slope, labels, supply_profile } => {
            let (d, dnorm) = surgery_values(&engine, knot, *slope, labels, supply_profile)?;
            Ok(Output {
                text: value_lines(&d),
                json: json!({ "knot": knot, "slope": slope, "d": rational_map(&d), "dnorm": rational_map(&dnorm) }),
            })
        }
        Command::Vh { knot } => {
            let (p, prov) = engine.profile_with_provenance(knot)?;
            let text = format!("g = {}\nV = {:?}\nH = {:?}", p.genus(), p.v_values(), p.h_values());
            let mut json = serde_json::to_value(&p).expect("profile serializes");
            json["knot"] = json!(knot);
            json["key"] = json!(knot.cache_key());
            json["provenance"] = json!(prov);
            Ok(Output { text, json })
        }
        Command::Calc(Calc::SlamDunk { n, slope }) => {
            let r = slam_dunk(*n, *slope)?;
            Ok(Output { text: r.to_string(), json: json!({ "move": "slam-dunk", "n": n, "slope": slope, "result": r }) })
        }
        Command::Calc(Calc::SlapShot { ell, slope, qprime }) => {
            let r = slap_shot(*ell, *slope, *qprime)?;
            Ok(Output {
                text: r.to_string(),
                json: json!({ "move": "slap-shot", "ell": ell, "slope": slope, "qprime": qprime, "result": r }),
            })
        }
        Command::Bdc { knot } => {
            let d = branched_double_cover(knot)?;
            let (chain, matrix) = chain_for(d.slope)?;
            let dets = chain_determinants(&chain)?;
            Ok(Output {
                text: format!("S^3_{}({})", d.slope, d.knot),
                json: json!({
                    "input": knot,
                    "knot": d.knot,
                    "slope": d.slope,
                    "chain": chain.framings,
                    "linking_matrix": matrix,
                    "det_a": dets.det_a.to_string(),
                    "det_b": dets.det_b.to_string(),
                }),
            })
        }
        Command::Obstruct(o) => {
            let report = match o {
                Obstruct::Split { knot, supplied } => split_verdict(&record(&engine, knot, supplied)?)?,
                Obstruct::Bing { knot, supplied } => bing_verdict(&record(&engine, knot, supplied)?)?,
                Obstruct::LocalKnot { knot, ell, supplied } => {
                    local_knot_verdict(&record(&engine, knot, supplied)?, *ell, Some(&engine))?
                }
            };
            let mut text = vec![report.verdict.to_string()];
            for c in &report.checks {
                let v = c.value.as_deref().unwrap_or("unavailable");
                let prov = c.provenance.map(|p| format!(" ({p})")).unwrap_or_default();
                text.push(format!("  {}: {v}{prov}", c.name));
            }
            text.extend(report.notes.iter().map(|n| format!("  note: {n}")));
            Ok(Output { text: text.join("\n"), json: serde_json::to_value(&report).expect("report serializes") })
        }
        Command::Bound { knot, slope, unknotting } => {
            let b = check_bound(&engine, knot, parse_unknotting(unknotting)?, *slope)?;
            let mut text = vec![format!("d(S^3_{slope}({knot})) in [{}, {}]", fmt_rational(&b.min_d), fmt_rational(&b.max_d))];
            for s in &b.sides {
                text.push(format!("  {:?} bound C = {}: {}", s.side, fmt_rational(&s.constant), if s.holds { "holds" } else { "violated" }));
            }
            if b.tau_consistent == Some(false) {
                text.push("  warning: the unknotting data contradicts tau".into());
            }
            Ok(Output { text: text.join("\n"), json: serde_json::to_value(&b).expect("bound serializes") })
        }
        Command::FamilyCheck { ell, n_max } => {
            let f = linking_family_check(*ell, *n_max, &engine)?;
            let mut text = vec![format!("C = {}, lens values {:?}", fmt_rational(&f.constant), f.lens_values.iter().map(fmt_rational).collect::<Vec<_>>())];
            for r in &f.rows {
                let b: Vec<String> = r.cover_values.iter().map(fmt_rational).collect();
                text.push(format!(
                    "n = {:>3}  delta_2 = {:>5}  (a) = {}  (b) = [{}]  {}",
                    r.n,
                    fmt_rational(&r.delta_2),
                    fmt_rational(&r.lower_bound),
                    b.join(", "),
                    if r.obstructed { "obstructed" } else { "-" }
                ));
            }
            match f.threshold {
                Some(n0) => text.push(format!("N_0 = {n0}: {} for all n >= N_0", f.verdict)),
                None => text.push(format!("no threshold up to n = {n_max}")),
            }
            Ok(Output { text: text.join("\n"), json: serde_json::to_value(&f).expect("family serializes") })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json renders"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (kind, code) = if e.is_inconclusive() { ("inconclusive", 3) } else { ("domain", 2) };
            if cli.json {
                println!("{}", json!({ "error": e.to_string(), "kind": kind }));
            }
            eprintln!("dsurg: {e}");
            ExitCode::from(code)
        }
    }
}
