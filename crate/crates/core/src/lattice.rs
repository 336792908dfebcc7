//! The Picard lattice of a degree `d` del Pezzo surface, realised as the
//! blow-up of the plane in `9 - d` general points.
//!
//! A class `aH - Σ bᵢEᵢ` is stored as `(a; b₁, …, b₉₋d)`. The exceptional curve
//! `Eᵢ` therefore carries `bᵢ = -1`. The intersection form is
//! `diag(1, -1, …, -1)`.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct SurfaceModel {
    degree: u8,
}

impl SurfaceModel {
    pub fn new(degree: i64) -> Result<Self> {
        match degree {
            1..=7 => Ok(SurfaceModel { degree: degree as u8 }),
            8 | 9 => Err(Error::UnsupportedDegree(degree)),
            _ => Err(Error::InvalidDegree(degree)),
        }
    }

    pub fn degree(self) -> i64 {
        self.degree as i64
    }

    pub fn blowup_points(self) -> usize {
        9 - self.degree as usize
    }

    pub fn rank(self) -> usize {
        self.blowup_points() + 1
    }
}

impl TryFrom<i64> for SurfaceModel {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        SurfaceModel::new(d)
    }
}

impl From<SurfaceModel> for i64 {
    fn from(s: SurfaceModel) -> i64 {
        s.degree()
    }
}

fn check_same(x: SurfaceModel, y: SurfaceModel) -> Result<()> {
    if x == y {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(x.degree, y.degree))
    }
}

fn mul(x: i64, y: i64) -> i64 {
    x.checked_mul(y).expect("lattice arithmetic overflow")
}

fn add(x: i64, y: i64) -> i64 {
    x.checked_add(y).expect("lattice arithmetic overflow")
}

/// An integral class `aH - Σ bᵢEᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    surface: SurfaceModel,
    a: i64,
    b: Vec<i64>,
}

impl DivisorClass {
    pub fn new(surface: SurfaceModel, a: i64, b: Vec<i64>) -> Result<Self> {
        if b.len() != surface.blowup_points() {
            return Err(Error::Length { expected: surface.blowup_points(), got: b.len() });
        }
        Ok(DivisorClass { surface, a, b })
    }

    /// Parses `a,b1,...,bk` as used on the command line.
    pub fn parse(surface: SurfaceModel, text: &str) -> Result<Self> {
        let coords: std::result::Result<Vec<i64>, _> = text.split(',').map(|t| t.trim().parse::<i64>()).collect();
        let coords = coords.map_err(|_| Error::Parse(text.to_string()))?;
        if coords.len() != surface.rank() {
            return Err(Error::Length { expected: surface.rank(), got: coords.len() });
        }
        DivisorClass::new(surface, coords[0], coords[1..].to_vec())
    }

    pub fn zero(surface: SurfaceModel) -> Self {
        DivisorClass { surface, a: 0, b: vec![0; surface.blowup_points()] }
    }

    pub fn hyperplane(surface: SurfaceModel) -> Self {
        DivisorClass { surface, a: 1, b: vec![0; surface.blowup_points()] }
    }

    /// `Eᵢ` for a zero-based slot `i`.
    pub fn exceptional(surface: SurfaceModel, i: usize) -> Self {
        let mut b = vec![0; surface.blowup_points()];
        b[i] = -1;
        DivisorClass { surface, a: 0, b }
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    /// `(a, b₁, …)` as one vector.
    pub fn coords(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.b.len() + 1);
        v.push(self.a);
        v.extend_from_slice(&self.b);
        v
    }

    /// The intersection number. Panics when the surfaces differ; use
    /// [`intersect`] for the checked form.
    pub fn dot(&self, other: &DivisorClass) -> i64 {
        assert_eq!(self.surface, other.surface, "classes on different surfaces");
        let mut s = mul(self.a, other.a);
        for (x, y) in self.b.iter().zip(&other.b) {
            s = add(s, -mul(*x, *y));
        }
        s
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    pub fn plus(&self, other: &DivisorClass) -> DivisorClass {
        self.combine(1, other)
    }

    pub fn minus(&self, other: &DivisorClass) -> DivisorClass {
        self.combine(-1, other)
    }

    /// `self + k·other`.
    pub fn combine(&self, k: i64, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.surface, other.surface, "classes on different surfaces");
        DivisorClass {
            surface: self.surface,
            a: add(self.a, mul(k, other.a)),
            b: self.b.iter().zip(&other.b).map(|(x, y)| add(*x, mul(k, *y))).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass { surface: self.surface, a: mul(k, self.a), b: self.b.iter().map(|x| mul(k, *x)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b.iter().all(|&x| x == 0)
    }

    /// Applies a permutation of the blow-up slots: slot `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> DivisorClass {
        let mut b = vec![0; self.b.len()];
        for (i, &p) in perm.iter().enumerate() {
            b[p] = self.b[i];
        }
        DivisorClass { surface: self.surface, a: self.a, b }
    }

    pub fn to_rational(&self) -> RationalDivisorClass {
        RationalDivisorClass {
            surface: self.surface,
            a: rational::int(self.a),
            b: self.b.iter().map(|&x| rational::int(x)).collect(),
        }
    }
}

/// Explicit rendering with numbered exceptional classes, e.g. `H - E1 + E2`.
impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = std::iter::once((rational::int(self.a), "H".to_string()))
            .chain(self.b.iter().enumerate().map(|(i, &x)| (rational::int(-x), format!("E{}", i + 1))))
            .collect();
        write_terms(f, &terms)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Rational, String)]) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        let coeff = if mag.is_one() { String::new() } else { rational::format(&mag) };
        let coeff = if coeff.contains('/') { format!("({coeff})") } else { coeff };
        match (first, neg) {
            (true, true) => write!(f, "-{coeff}{name}")?,
            (true, false) => write!(f, "{coeff}{name}")?,
            (false, true) => write!(f, " - {coeff}{name}")?,
            (false, false) => write!(f, " + {coeff}{name}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A class with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalDivisorClass {
    surface: SurfaceModel,
    #[serde(with = "crate::rational::serde_rational")]
    a: Rational,
    #[serde(with = "crate::rational::serde_rational_vec")]
    b: Vec<Rational>,
}

impl RationalDivisorClass {
    pub fn new(surface: SurfaceModel, a: Rational, b: Vec<Rational>) -> Result<Self> {
        if b.len() != surface.blowup_points() {
            return Err(Error::Length { expected: surface.blowup_points(), got: b.len() });
        }
        Ok(RationalDivisorClass { surface, a, b })
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn dot(&self, other: &RationalDivisorClass) -> Rational {
        assert_eq!(self.surface, other.surface, "classes on different surfaces");
        let mut s = &self.a * &other.a;
        for (x, y) in self.b.iter().zip(&other.b) {
            s -= x * y;
        }
        s
    }

    /// The smallest positive integral multiple `L·self`, when its
    /// coordinates stay below `2^40` in absolute value.
    pub fn integral_multiple(&self) -> Option<DivisorClass> {
        use num_integer::Integer;
        let l = self.b.iter().fold(self.a.denom().clone(), |acc, x| acc.lcm(x.denom()));
        let bound = num_bigint::BigInt::from(1i64 << 40);
        let scale = |x: &Rational| -> Option<i64> {
            let v = x.numer() * (&l / x.denom());
            if v.magnitude() >= bound.magnitude() {
                return None;
            }
            i64::try_from(v).ok()
        };
        let a = scale(&self.a)?;
        let b = self.b.iter().map(scale).collect::<Option<Vec<_>>>()?;
        Some(DivisorClass { surface: self.surface, a, b })
    }

    /// Pairing with an integral class.
    pub fn dot_int(&self, other: &DivisorClass) -> Rational {
        assert_eq!(self.surface, other.surface, "classes on different surfaces");
        let mut s = &self.a * rational::int(other.a);
        for (x, &y) in self.b.iter().zip(&other.b) {
            s -= x * rational::int(y);
        }
        s
    }

    pub fn square(&self) -> Rational {
        self.dot(self)
    }

    /// `self + k·other`.
    pub fn combine(&self, k: &Rational, other: &RationalDivisorClass) -> RationalDivisorClass {
        assert_eq!(self.surface, other.surface, "classes on different surfaces");
        RationalDivisorClass {
            surface: self.surface,
            a: &self.a + k * &other.a,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + k * y).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> RationalDivisorClass {
        RationalDivisorClass { surface: self.surface, a: k * &self.a, b: self.b.iter().map(|x| k * x).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.iter().all(Zero::is_zero)
    }

    pub fn to_integral(&self) -> Option<DivisorClass> {
        let a = rational::to_i64(&self.a)?;
        let b = self.b.iter().map(rational::to_i64).collect::<Option<Vec<_>>>()?;
        Some(DivisorClass { surface: self.surface, a, b })
    }
}

impl fmt::Display for RationalDivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = std::iter::once((self.a.clone(), "H".to_string()))
            .chain(self.b.iter().enumerate().map(|(i, x)| (-x.clone(), format!("E{}", i + 1))))
            .collect();
        write_terms(f, &terms)
    }
}

/// Checked pairing of two integral classes.
pub fn intersect(x: &DivisorClass, y: &DivisorClass) -> Result<i64> {
    check_same(x.surface, y.surface)?;
    Ok(x.dot(y))
}

/// Checked pairing of two rational classes.
pub fn intersect_rational(x: &RationalDivisorClass, y: &RationalDivisorClass) -> Result<Rational> {
    check_same(x.surface, y.surface)?;
    Ok(x.dot(y))
}

pub fn canonical_class(s: SurfaceModel) -> DivisorClass {
    DivisorClass { surface: s, a: -3, b: vec![-1; s.blowup_points()] }
}

/// `m = -K·C = 3a - Σbᵢ`.
pub fn anticanonical_degree(c: &DivisorClass) -> i64 {
    -canonical_class(c.surface).dot(c)
}

/// `p_a = 1 + (C² + K·C)/2`, exact and possibly a half-integer.
pub fn arithmetic_genus(c: &DivisorClass) -> Rational {
    let k = canonical_class(c.surface);
    rational::int(1) + rational::ratio(c.square() + k.dot(c), 2)
}

/// Riemann–Roch: `χ(D) = 1 + (D² - D·K)/2`.
pub fn euler_characteristic(d: &DivisorClass) -> i64 {
    let k = canonical_class(d.surface);
    let twice = d.square() - d.dot(&k);
    // D² ≡ D·K (mod 2) on any surface, so the division is exact.
    debug_assert_eq!(twice.rem_euclid(2), 0);
    1 + twice / 2
}

/// Riemann–Roch for a rational class; non-integral classes are rejected.
pub fn euler_characteristic_rational(d: &RationalDivisorClass) -> Result<i64> {
    d.to_integral().map(|c| euler_characteristic(&c)).ok_or(Error::NonIntegral)
}

/// Returns `k > 0` when `C = -kK`.
pub fn proportional_to_canonical(c: &DivisorClass) -> Option<i64> {
    let k = c.b.first().copied().unwrap_or(c.a / 3);
    if k > 0 && c.a == 3 * k && c.b.iter().all(|&x| x == k) {
        Some(k)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: i64) -> SurfaceModel {
        SurfaceModel::new(d).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(SurfaceModel::new(8), Err(Error::UnsupportedDegree(8)));
        assert_eq!(SurfaceModel::new(9), Err(Error::UnsupportedDegree(9)));
        assert_eq!(SurfaceModel::new(0), Err(Error::InvalidDegree(0)));
        assert_eq!(s(3).rank(), 7);
        assert_eq!(s(3).blowup_points(), 6);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(DivisorClass::hyperplane(s(3)).square(), 1);
        let l = DivisorClass::new(s(5), 1, vec![1, 1, 0, 0]).unwrap();
        assert_eq!(DivisorClass::exceptional(s(5), 0).dot(&l), 1);
        for d in 1..=7 {
            assert_eq!(canonical_class(s(d)).square(), d);
        }
        let bad = intersect(&DivisorClass::zero(s(2)), &DivisorClass::zero(s(3)));
        assert_eq!(bad, Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn degree_and_genus() {
        let h = DivisorClass::hyperplane(s(4));
        assert_eq!(anticanonical_degree(&h), 3);
        assert_eq!(anticanonical_degree(&DivisorClass::exceptional(s(4), 2)), 1);
        let k1 = canonical_class(s(1));
        assert_eq!(anticanonical_degree(&k1.scale(-2)), 2);
        assert_eq!(arithmetic_genus(&DivisorClass::exceptional(s(2), 0)), rational::int(0));
        assert_eq!(arithmetic_genus(&k1.scale(-1)), rational::int(1));
        assert_eq!(arithmetic_genus(&canonical_class(s(2)).scale(-1)), rational::int(1));
        // a class with odd C² + K·C
        assert_eq!(arithmetic_genus(&DivisorClass::new(s(3), 1, vec![1, 0, 0, 0, 0, 0]).unwrap()), rational::int(0));
        assert_eq!(
            arithmetic_genus(&DivisorClass::new(s(3), 1, vec![2, 0, 0, 0, 0, 0]).unwrap()),
            rational::ratio(-1, 1)
        );
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&DivisorClass::zero(s(5))), 1);
        // d = 2, C = H: χ(3C + K) = χ(0) = 1
        let s2 = s(2);
        let c = DivisorClass::hyperplane(s2);
        assert_eq!(euler_characteristic(&c.scale(3).plus(&canonical_class(s2))), 1);
        // d = 4, C = 4H - 2E1 - E2 - E3 - E4: C² = 9, m = 7
        let s4 = s(4);
        let c = DivisorClass::new(s4, 4, vec![2, 1, 1, 1, 0]).unwrap();
        assert_eq!((c.square(), anticanonical_degree(&c)), (9, 7));
        assert_eq!(euler_characteristic(&c.plus(&canonical_class(s4))), 2);
        for d in 1..=7 {
            assert_eq!(euler_characteristic(&canonical_class(s(d)).scale(-1)), d + 1);
        }
        let half = RationalDivisorClass::new(s4, rational::half(), vec![rational::int(0); 5]).unwrap();
        assert_eq!(euler_characteristic_rational(&half), Err(Error::NonIntegral));
    }

    #[test]
    fn canonical_multiples() {
        assert_eq!(proportional_to_canonical(&canonical_class(s(3)).scale(-1)), Some(1));
        assert_eq!(proportional_to_canonical(&DivisorClass::new(s(1), 6, vec![2; 8]).unwrap()), Some(2));
        assert_eq!(proportional_to_canonical(&DivisorClass::hyperplane(s(3))), None);
        assert_eq!(proportional_to_canonical(&DivisorClass::zero(s(3))), None);
        assert_eq!(proportional_to_canonical(&canonical_class(s(3))), None);
    }

    #[test]
    fn parsing_and_display() {
        let c = DivisorClass::parse(s(3), "1,-1,1,1,1,1,1").unwrap();
        assert_eq!(c.to_string(), "H + E1 - E2 - E3 - E4 - E5 - E6");
        assert!(DivisorClass::parse(s(3), "1,2").is_err());
        assert!(DivisorClass::parse(s(3), "1,x,0,0,0,0,0").is_err());
        assert_eq!(DivisorClass::zero(s(5)).to_string(), "0");
        let r = RationalDivisorClass::new(s(7), rational::ratio(3, 2), vec![rational::ratio(-1, 2), rational::int(2)])
            .unwrap();
        assert_eq!(r.to_string(), "(3/2)H + (1/2)E1 - 2E2");
    }
}
