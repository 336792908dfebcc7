//! Zariski decomposition `D = P + Σ aᵢNᵢ` of a pseudoeffective class.
//!
//! On a del Pezzo surface every negative curve is a (-1)-curve, so the
//! support is a set of (-1)-curves. Starting from an empty support we solve
//! `P·Nⱼ = 0` for the coefficients, add every (-1)-curve that `P` meets
//! negatively, and repeat until `P` is nef.

use crate::enumeration::neg_curve_classes;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, RationalDivisorClass};
use crate::positivity::{is_nef, is_pseudoeffective_rational};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub curve: DivisorClass,
    #[serde(with = "crate::rational::serde_rational")]
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiDecomposition {
    pub positive_part: RationalDivisorClass,
    /// Sorted by curve.
    pub negative_part: Vec<Component>,
}

/// Outcome of checking the defining conditions of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub positive_part_nef: bool,
    pub negative_definite: bool,
    pub orthogonal: bool,
    pub reconstructs: bool,
}

impl Verification {
    pub fn all(&self) -> bool {
        self.positive_part_nef && self.negative_definite && self.orthogonal && self.reconstructs
    }
}

impl ZariskiDecomposition {
    pub fn support(&self) -> Vec<&DivisorClass> {
        self.negative_part.iter().map(|c| &c.curve).collect()
    }

    pub fn negative_class(&self) -> RationalDivisorClass {
        let mut n = DivisorClass::zero(self.positive_part.surface()).to_rational();
        for c in &self.negative_part {
            n = n.combine(&c.coefficient, &c.curve.to_rational());
        }
        n
    }

    pub fn verify(&self, d: &RationalDivisorClass) -> Verification {
        let p = &self.positive_part;
        let curves: Vec<DivisorClass> = self.negative_part.iter().map(|c| c.curve.clone()).collect();
        let nd = is_negative_definite(&gram(&curves)).unwrap_or(false)
            && self.negative_part.iter().all(|c| c.coefficient.is_positive());
        Verification {
            positive_part_nef: is_nef(p),
            negative_definite: nd,
            orthogonal: curves.iter().all(|n| p.dot_int(n).is_zero()),
            reconstructs: p.combine(&rational::int(1), &self.negative_class()) == *d,
        }
    }
}

pub fn gram(curves: &[DivisorClass]) -> Vec<Vec<Rational>> {
    curves.iter().map(|x| curves.iter().map(|y| rational::int(x.dot(y))).collect()).collect()
}

/// Leading principal minors alternate in sign, starting negative.
#[allow(clippy::needless_range_loop)]
pub fn is_negative_definite(m: &[Vec<Rational>]) -> Result<bool> {
    let k = m.len();
    if m.iter().any(|row| row.len() != k) {
        return Err(Error::NotSymmetric);
    }
    for i in 0..k {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    for size in 1..=k {
        let minor = determinant(&m[..size].iter().map(|r| r[..size].to_vec()).collect::<Vec<_>>());
        let want_negative = size % 2 == 1;
        if minor.is_zero() || minor.is_negative() != want_negative {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact determinant by fraction-free (Bareiss) elimination after clearing
/// denominators.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let k = m.len();
    if k == 0 {
        return rational::int(1);
    }
    let mut scale = Rational::from_integer(BigInt::from(1));
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for row in m {
        let lcm = row.iter().fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        scale *= Rational::from_integer(lcm.clone());
        a.push(row.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect());
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for i in 0..k {
        if a[i][i].is_zero() {
            match (i + 1..k).find(|&r| !a[r][i].is_zero()) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return rational::int(0),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                a[r][c] = (&a[r][c] * &a[i][i] - &a[r][i] * &a[i][c]) / &prev;
            }
            a[r][i] = BigInt::zero();
        }
        prev = a[i][i].clone();
    }
    Rational::from_integer(&a[k - 1][k - 1] * BigInt::from(sign)) / scale
}

/// Solves `G x = rhs` exactly; `None` if `G` is singular.
#[allow(clippy::needless_range_loop)]
pub fn solve(g: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let k = g.len();
    let mut a: Vec<Vec<Rational>> =
        g.iter().zip(rhs).map(|(row, r)| row.iter().cloned().chain(std::iter::once(r.clone())).collect()).collect();
    for i in 0..k {
        let p = (i..k).find(|&r| !a[r][i].is_zero())?;
        a.swap(i, p);
        let pivot = a[i][i].clone();
        for c in i..=k {
            a[i][c] = &a[i][c] / &pivot;
        }
        for r in 0..k {
            if r != i && !a[r][i].is_zero() {
                let f = a[r][i].clone();
                for c in i..=k {
                    let t = &f * &a[i][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[k].clone()).collect())
}

pub fn zariski_decompose(d: &DivisorClass) -> Result<ZariskiDecomposition> {
    zariski_decompose_rational(&d.to_rational())
}

pub fn zariski_decompose_rational(d: &RationalDivisorClass) -> Result<ZariskiDecomposition> {
    if !is_pseudoeffective_rational(d) {
        return Err(Error::NotPseudoeffective);
    }
    let curves = neg_curve_classes(d.surface());
    let mut support: Vec<DivisorClass> = Vec::new();
    let max_rounds = curves.len() + 1;
    for _ in 0..max_rounds {
        let coeffs = if support.is_empty() {
            Vec::new()
        } else {
            let rhs: Vec<Rational> = support.iter().map(|n| d.dot_int(n)).collect();
            solve(&gram(&support), &rhs)
                .ok_or_else(|| Error::Invariant("singular support intersection matrix".into()))?
        };
        let mut p = d.clone();
        for (a, n) in coeffs.iter().zip(&support) {
            p = p.combine(&-a.clone(), &n.to_rational());
        }
        let negative: Vec<&DivisorClass> = match p.integral_multiple() {
            Some(pi) => curves.iter().filter(|e| pi.dot(e) < 0).collect(),
            None => curves.iter().filter(|e| p.dot_int(e).is_negative()).collect(),
        };
        if negative.is_empty() {
            let mut negative_part: Vec<Component> = support
                .into_iter()
                .zip(coeffs)
                .filter(|(_, a)| !a.is_zero())
                .map(|(curve, coefficient)| Component { curve, coefficient })
                .collect();
            negative_part.sort_by(|x, y| x.curve.cmp(&y.curve));
            let z = ZariskiDecomposition { positive_part: p, negative_part };
            let v = z.verify(d);
            if !v.all() {
                return Err(Error::Invariant(format!("decomposition fails its own checks: {v:?}")));
            }
            return Ok(z);
        }
        for e in negative {
            if !support.contains(e) {
                support.push(e.clone());
            }
        }
    }
    Err(Error::Invariant("support growth did not terminate".into()))
}
