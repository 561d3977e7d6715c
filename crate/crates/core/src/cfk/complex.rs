use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::alexander::AlexanderPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub maslov: i32,
    pub alexander: i32,
}

/// One term `U^power · target` of a differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub target: usize,
    pub power: u32,
}

/// A finitely generated model of `CFK^∞` over `F2[U, U^{-1}]`.
///
/// The generator `x` sits at filtration level `(0, A(x))`; `U^n x` sits at
/// `(-n, A(x) - n)` with Maslov grading `M(x) - 2n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfkComplex {
    gens: Vec<Generator>,
    diff: Vec<Vec<Arrow>>,
}

impl CfkComplex {
    /// Checks gradings, filtration and `∂² = 0`.
    pub fn new(gens: Vec<Generator>, diff: Vec<Vec<Arrow>>) -> Result<CfkComplex> {
        if gens.len() != diff.len() {
            return Err(Error::Complex("differential length differs from generator count".into()));
        }
        let c = CfkComplex { gens, diff };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        for (x, arrows) in self.diff.iter().enumerate() {
            let gx = self.gens[x];
            for a in arrows {
                let gy = *self
                    .gens
                    .get(a.target)
                    .ok_or_else(|| Error::Complex(format!("arrow from {x} to missing generator {}", a.target)))?;
                if gy.maslov - 2 * a.power as i32 != gx.maslov - 1 {
                    return Err(Error::Complex(format!("arrow {x} -> {} does not lower the Maslov grading by one", a.target)));
                }
                if gy.alexander - (a.power as i32) > gx.alexander {
                    return Err(Error::Complex(format!("arrow {x} -> {} raises the Alexander filtration", a.target)));
                }
            }
        }
        if !self.d_squared_is_zero() {
            return Err(Error::Complex("differential does not square to zero".into()));
        }
        Ok(())
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.diff.iter().all(|arrows| {
            let mut count: HashMap<(usize, u32), u32> = HashMap::new();
            for a in arrows {
                for b in &self.diff[a.target] {
                    *count.entry((b.target, a.power + b.power)).or_default() += 1;
                }
            }
            count.values().all(|c| c % 2 == 0)
        })
    }

    /// The complex of the unknot: one generator in bigrading `(0, 0)`.
    pub fn unknot() -> CfkComplex {
        CfkComplex { gens: vec![Generator { maslov: 0, alexander: 0 }], diff: vec![vec![]] }
    }

    /// Staircase complex of an L-space knot with Alexander polynomial `alex`.
    ///
    /// With exponents `n_0 > n_1 > ... > n_{2m}`, odd generators have a
    /// horizontal arrow of length `n_{2j} - n_{2j+1}` to `x_{2j}` and a
    /// vertical arrow of length `n_{2j+1} - n_{2j+2}` to `x_{2j+2}`.
    pub fn staircase(alex: &AlexanderPolynomial) -> Result<CfkComplex> {
        let exps = alex.lspace_exponents()?;
        let mut gens = Vec::with_capacity(exps.len());
        let mut diff = Vec::with_capacity(exps.len());
        let mut maslov = 0i32;
        for (k, &n) in exps.iter().enumerate() {
            if k % 2 == 0 {
                if k > 0 {
                    maslov -= 2 * (exps[k - 2] - exps[k - 1]) as i32;
                }
                gens.push(Generator { maslov, alexander: n as i32 });
                diff.push(vec![]);
            } else {
                let horizontal = (exps[k - 1] - n) as u32;
                gens.push(Generator { maslov: maslov - 2 * horizontal as i32 + 1, alexander: n as i32 });
                diff.push(vec![Arrow { target: k - 1, power: horizontal }, Arrow { target: k + 1, power: 0 }]);
            }
        }
        CfkComplex::new(gens, diff)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn differential(&self) -> &[Vec<Arrow>] {
        &self.diff
    }

    /// Largest `|A|` over generators; the knot genus for reduced models.
    pub fn genus(&self) -> u32 {
        self.gens.iter().map(|g| g.alexander.unsigned_abs()).max().unwrap_or(0)
    }

    /// Tensor product: bigradings add and `∂(x ⊗ y) = ∂x ⊗ y + x ⊗ ∂y`.
    pub fn tensor(&self, other: &CfkComplex) -> CfkComplex {
        let m = other.len();
        let mut gens = Vec::with_capacity(self.len() * m);
        let mut diff = Vec::with_capacity(self.len() * m);
        for (x, gx) in self.gens.iter().enumerate() {
            for (y, gy) in other.gens.iter().enumerate() {
                gens.push(Generator { maslov: gx.maslov + gy.maslov, alexander: gx.alexander + gy.alexander });
                let mut arrows: Vec<Arrow> = self.diff[x].iter().map(|a| Arrow { target: a.target * m + y, power: a.power }).collect();
                arrows.extend(other.diff[y].iter().map(|a| Arrow { target: x * m + a.target, power: a.power }));
                diff.push(arrows);
            }
        }
        CfkComplex { gens, diff }
    }

    /// Dual complex (the mirror): gradings negated, arrows reversed.
    pub fn dual(&self) -> CfkComplex {
        let gens = self.gens.iter().map(|g| Generator { maslov: -g.maslov, alexander: -g.alexander }).collect();
        let mut diff = vec![Vec::new(); self.len()];
        for (x, arrows) in self.diff.iter().enumerate() {
            for a in arrows {
                diff[a.target].push(Arrow { target: x, power: a.power });
            }
        }
        CfkComplex { gens, diff }
    }

    /// Orientation reversal; the model is reversal invariant.
    pub fn reverse(&self) -> CfkComplex {
        self.clone()
    }

    /// Isomorphism up to reordering generators (matches bigraded generators
    /// and arrow multisets after sorting; sufficient for the reduced models
    /// built here).
    pub fn same_shape(&self, other: &CfkComplex) -> bool {
        type Key = (i32, i32);
        fn signature(c: &CfkComplex) -> Vec<(Key, Vec<(Key, u32)>)> {
            let key = |g: &Generator| (g.maslov, g.alexander);
            let mut v: Vec<_> = c
                .gens
                .iter()
                .zip(&c.diff)
                .map(|(g, arrows)| {
                    let mut t: Vec<_> = arrows.iter().map(|a| (key(&c.gens[a.target]), a.power)).collect();
                    t.sort();
                    (key(g), t)
                })
                .collect();
            v.sort();
            v
        }
        self.len() == other.len() && signature(self) == signature(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stair(p: u32, q: u32) -> CfkComplex {
        CfkComplex::staircase(&AlexanderPolynomial::torus(p, q).unwrap()).unwrap()
    }

    #[test]
    fn staircase_shapes() {
        let u = CfkComplex::staircase(&AlexanderPolynomial::unknot()).unwrap();
        assert_eq!(u, CfkComplex::unknot());
        let t23 = stair(2, 3);
        assert_eq!(t23.len(), 3);
        assert_eq!(
            t23.generators(),
            &[
                Generator { maslov: 0, alexander: 1 },
                Generator { maslov: -1, alexander: 0 },
                Generator { maslov: -2, alexander: -1 }
            ]
        );
        assert_eq!(t23.differential()[1], vec![Arrow { target: 0, power: 1 }, Arrow { target: 2, power: 0 }]);
        let t34 = stair(3, 4);
        assert_eq!(t34.len(), 5);
        // steps 1,2,2,1 from exponents 3,2,0,-2,-3
        let m: Vec<i32> = t34.generators().iter().map(|g| g.maslov).collect();
        assert_eq!(m, vec![0, -1, -2, -5, -6]);
        assert_eq!(t34.genus(), 3);
    }

    #[test]
    fn tensor_and_dual() {
        let t = stair(2, 3);
        let tt = t.tensor(&t);
        assert_eq!(tt.len(), 9);
        assert!(tt.d_squared_is_zero());
        assert!(CfkComplex::unknot().tensor(&t).same_shape(&t));
        assert!(t.dual().dual().same_shape(&t));
        assert_eq!(t.dual().dual(), t);
        assert!(CfkComplex::unknot().dual().same_shape(&CfkComplex::unknot()));
        assert!(t.dual().d_squared_is_zero());
        assert!(!t.dual().same_shape(&t));
        assert_eq!(t.reverse(), t);
        assert_eq!(t.reverse().reverse(), t);
        // rebuilding through the checked constructor validates filtration and gradings
        assert!(CfkComplex::new(tt.generators().to_vec(), tt.differential().to_vec()).is_ok());
        let d = t.dual();
        assert!(CfkComplex::new(d.generators().to_vec(), d.differential().to_vec()).is_ok());
    }

    #[test]
    fn rejects_bad_differentials() {
        let gens = vec![Generator { maslov: 0, alexander: 0 }, Generator { maslov: 0, alexander: 0 }];
        assert!(CfkComplex::new(gens.clone(), vec![vec![Arrow { target: 1, power: 0 }], vec![]]).is_err());
        let gens = vec![
            Generator { maslov: 1, alexander: 0 },
            Generator { maslov: 0, alexander: 1 },
        ];
        assert!(CfkComplex::new(gens, vec![vec![Arrow { target: 1, power: 0 }], vec![]]).is_err());
    }
}
