//! Exact Heegaard Floer correction terms of Dehn surgeries on knots, rational
//! surgery calculus, and concordance obstructions for two-component cable
//! links.
//!
//! All arithmetic is exact. Work that fans out over labels, knots or family
//! members goes through [`par`], which uses rayon when the `parallel` feature
//! is enabled and runs sequentially otherwise.

pub mod cache;
pub mod cfk;
pub mod correction;
pub mod engine;
pub mod error;
pub mod knot;
pub mod matrix;
pub mod obstructions;
pub mod par;
pub mod slopes;
pub mod surgery;

pub use cache::{ProfileCache, ProfileCacheEntry, Provenance, ENGINE_VERSION};
pub use cfk::{AlexanderPolynomial, CfkComplex, VHProfile};
pub use correction::{lens_d, niwu_dnorm, DInvariantTable, SurgeryD};
pub use engine::Engine;
pub use error::{Error, Result};
pub use knot::{parse_knot_expr, KnotExpr};
pub use matrix::IntMatrix;
pub use obstructions::{KnotInvariantRecord, ObstructionReport, Verdict};
pub use par::Execution;
pub use slopes::{Slope, SpinCLabel};
