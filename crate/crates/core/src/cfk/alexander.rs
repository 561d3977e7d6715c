use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symmetrized Alexander polynomial `sum a_k t^k`, `-g <= k <= g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderPolynomial {
    genus: u32,
    /// `a_{-g}, ..., a_g`
    coeffs: Vec<i64>,
}

impl AlexanderPolynomial {
    /// Builds from `a_{-g}..a_g`; checks symmetry, `Δ(1) = 1` and a nonzero
    /// top coefficient.
    pub fn new(coeffs: Vec<i64>) -> Result<AlexanderPolynomial> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::Alexander(format!("need an odd number of coefficients, got {}", coeffs.len())));
        }
        let genus = (coeffs.len() / 2) as u32;
        if coeffs.iter().ne(coeffs.iter().rev()) {
            return Err(Error::Alexander("coefficients are not symmetric".into()));
        }
        if coeffs.iter().sum::<i64>() != 1 {
            return Err(Error::Alexander("polynomial does not evaluate to 1 at t = 1".into()));
        }
        if coeffs[0] == 0 {
            return Err(Error::Alexander("leading coefficient is zero".into()));
        }
        Ok(AlexanderPolynomial { genus, coeffs })
    }

    pub fn unknot() -> AlexanderPolynomial {
        AlexanderPolynomial { genus: 0, coeffs: vec![1] }
    }

    /// `Δ_{T(p,q)} = t^{-(p-1)(q-1)/2} (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`.
    pub fn torus(p: u32, q: u32) -> Result<AlexanderPolynomial> {
        let (p, q) = (p as usize, q as usize);
        let mut num = poly_mul(&binomial(p * q), &binomial(1));
        num = poly_div_exact(&num, &binomial(p))?;
        num = poly_div_exact(&num, &binomial(q))?;
        AlexanderPolynomial::new(num)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// `a_k`, zero outside `[-g, g]`.
    pub fn coeff(&self, k: i64) -> i64 {
        let g = self.genus as i64;
        if k < -g || k > g {
            0
        } else {
            self.coeffs[(k + g) as usize]
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `t_k = sum_{j >= 1} j a_{k+j}` for `k = 0..=g`.
    pub fn torsion_coefficients(&self) -> Vec<i64> {
        let g = self.genus as i64;
        (0..=g).map(|k| (1..=g).map(|j| j * self.coeff(k + j)).sum()).collect()
    }

    /// Exponents of the nonzero terms from the top down, provided the shape is
    /// that of an L-space knot: all nonzero coefficients are `±1` and they
    /// alternate in sign starting with `+1`.
    pub fn lspace_exponents(&self) -> Result<Vec<i64>> {
        let g = self.genus as i64;
        let terms: Vec<(i64, i64)> = (-g..=g).rev().map(|k| (k, self.coeff(k))).filter(|(_, a)| *a != 0).collect();
        for (idx, (k, a)) in terms.iter().enumerate() {
            let expected = if idx % 2 == 0 { 1 } else { -1 };
            if *a != expected {
                return Err(Error::Alexander(format!(
                    "coefficient {a} of t^{k} breaks the alternating ±1 pattern of an L-space knot"
                )));
            }
        }
        Ok(terms.into_iter().map(|(k, _)| k).collect())
    }
}

/// `t^n - 1` as a coefficient vector from the constant term up.
fn binomial(n: usize) -> Vec<i64> {
    let mut v = vec![0; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials with a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Result<Vec<i64>> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = den[dl - 1];
    if num.len() < dl {
        return Err(Error::Alexander("division degree mismatch".into()));
    }
    let mut quot = vec![0; num.len() - dl + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1] / lead;
        quot[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    if rem.iter().any(|&x| x != 0) {
        return Err(Error::Alexander("polynomial division left a remainder".into()));
    }
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_polynomials() {
        assert_eq!(AlexanderPolynomial::torus(2, 3).unwrap().coeffs(), &[1, -1, 1]);
        assert_eq!(AlexanderPolynomial::torus(3, 4).unwrap().coeffs(), &[1, -1, 0, 1, 0, -1, 1]);
        assert_eq!(AlexanderPolynomial::torus(2, 7).unwrap().coeffs(), &[1, -1, 1, -1, 1, -1, 1]);
        let t35 = AlexanderPolynomial::torus(3, 5).unwrap();
        assert_eq!(t35.genus(), 4);
        assert_eq!(t35.coeffs(), &[1, -1, 0, 1, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn torsion_examples() {
        // T(2,3): t_0 = 1 * a_1
        assert_eq!(AlexanderPolynomial::torus(2, 3).unwrap().torsion_coefficients(), vec![1, 0]);
        assert_eq!(AlexanderPolynomial::unknot().torsion_coefficients(), vec![0]);
        // T(2,7): t_0 = a_1 + 2 a_2 + 3 a_3 = 1 - 2 + 3, t_1 = a_2 + 2 a_3, t_2 = a_3
        assert_eq!(AlexanderPolynomial::torus(2, 7).unwrap().torsion_coefficients(), vec![2, 1, 1, 0]);
    }

    #[test]
    fn validation() {
        assert!(AlexanderPolynomial::new(vec![1, -1]).is_err());
        assert!(AlexanderPolynomial::new(vec![1, 0, 2]).is_err());
        assert!(AlexanderPolynomial::new(vec![2, -3, 2]).is_ok());
        assert!(AlexanderPolynomial::new(vec![0, 1, 0]).is_err());
        // figure eight: -t + 3 - 1/t is a valid polynomial but not L-space shaped
        let fig8 = AlexanderPolynomial::new(vec![-1, 3, -1]).unwrap();
        assert!(fig8.lspace_exponents().is_err());
        assert_eq!(AlexanderPolynomial::torus(3, 4).unwrap().lspace_exponents().unwrap(), vec![3, 2, 0, -2, -3]);
    }
}
