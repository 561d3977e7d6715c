//! Finite models of knot Floer complexes and the invariants read off them.

mod alexander;
mod complex;
pub mod gf2;
mod profile;
mod tau;

pub use alexander::AlexanderPolynomial;
pub use complex::{Arrow, CfkComplex, Generator};
pub use profile::{default_truncation, vh_profile, vh_profile_with, VHProfile};
pub use tau::tau_symbolic;

/// `t_k` of an Alexander polynomial; see [`AlexanderPolynomial::torsion_coefficients`].
pub fn torsion_coefficients(a: &AlexanderPolynomial) -> Vec<i64> {
    a.torsion_coefficients()
}

/// The staircase of an L-space knot.
pub fn staircase_from_alexander(a: &AlexanderPolynomial) -> crate::Result<CfkComplex> {
    CfkComplex::staircase(a)
}
