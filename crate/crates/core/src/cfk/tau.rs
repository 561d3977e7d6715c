use crate::error::{Error, Result};
use crate::knot::KnotExpr;

/// τ from the structure of the expression alone.
///
/// `τ(T(p,q)) = (p-1)(q-1)/2`, additive under `#`, negated by mirroring,
/// unchanged by reversal, and `τ(wh+(J)) = 1` if `τ(J) > 0`, else `0`.
pub fn tau_symbolic(k: &KnotExpr) -> Result<i64> {
    match k {
        KnotExpr::Unknot => Ok(0),
        KnotExpr::Torus(p, q) => Ok((*p as i64 - 1) * (*q as i64 - 1) / 2),
        KnotExpr::Mirror(j) => Ok(-tau_symbolic(j)?),
        KnotExpr::Reverse(j) => tau_symbolic(j),
        KnotExpr::Sum(a, b) => Ok(tau_symbolic(a)? + tau_symbolic(b)?),
        KnotExpr::WhiteheadPos(j) => Ok(if tau_symbolic(j)? > 0 { 1 } else { 0 }),
        KnotExpr::Cable(..) => Err(Error::TauUnavailable(format!("{k} is a two-component link"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::{AlexanderPolynomial, CfkComplex};
    use crate::knot::parse_knot_expr;

    fn tau(s: &str) -> i64 {
        tau_symbolic(&parse_knot_expr(s).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(tau("U"), 0);
        assert_eq!(tau("T(2,3) # mirror(T(2,3))"), 0);
        assert_eq!(tau("T(2,7)"), 3);
        assert_eq!(tau("rev(T(3,4))"), 3);
        assert_eq!(tau("wh+(T(2,5))"), 1);
        assert_eq!(tau("wh+(mirror(T(2,3)))"), 0);
        assert_eq!(tau("mirror(wh+(T(2,3)))"), -1);
        assert!(tau_symbolic(&parse_knot_expr("P[1](U)").unwrap()).is_err());
    }

    #[test]
    fn torus_tau_matches_staircase_genus() {
        for (p, q) in [(2, 3), (2, 5), (2, 7), (2, 9), (2, 11), (3, 4), (3, 5)] {
            let c = CfkComplex::staircase(&AlexanderPolynomial::torus(p, q).unwrap()).unwrap();
            assert_eq!(tau_symbolic(&KnotExpr::Torus(p, q)).unwrap(), c.genus() as i64);
        }
    }
}
