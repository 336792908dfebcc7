//! Positivity of rational classes and the classification of `-(K + εD)`.
//!
//! On a del Pezzo surface of degree at most 7 the effective cone is spanned by
//! (-1)-curves, so `L` is nef (ample) iff `L·E ≥ 0` (`> 0`) for every
//! (-1)-curve `E`. For a boundary `D` we have `-(K + εD)·E = 1 - ε(D·E)`, hence
//! the nef threshold is `1/μ` with `μ = max_E D·E`.

use crate::enumeration::{nef_cone_generators, neg_curve_classes};
use crate::error::{Error, Result};
use crate::lattice::{canonical_class, DivisorClass, RationalDivisorClass};
use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A Campana weight `ε = 1 - 1/m`, with `m = ∞` giving `ε = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampanaWeight {
    pub multiplicity: Option<u64>,
    #[serde(with = "crate::rational::serde_rational")]
    pub epsilon: Rational,
}

impl CampanaWeight {
    pub fn finite(m: u64) -> Option<Self> {
        (m >= 2).then(|| CampanaWeight { multiplicity: Some(m), epsilon: rational::ratio(m as i64 - 1, m as i64) })
    }

    pub fn infinite() -> Self {
        CampanaWeight { multiplicity: None, epsilon: rational::int(1) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    AmpleAllEps,
    NefBigAtHalf,
    NefNotBigAtHalf,
    NeverNef,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::AmpleAllEps => "AmpleAllEps",
            Verdict::NefBigAtHalf => "NefBigAtHalf",
            Verdict::NefNotBigAtHalf => "NefNotBigAtHalf",
            Verdict::NeverNef => "NeverNef",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Verdict {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "AmpleAllEps" => Ok(Verdict::AmpleAllEps),
            "NefBigAtHalf" => Ok(Verdict::NefBigAtHalf),
            "NefNotBigAtHalf" => Ok(Verdict::NefNotBigAtHalf),
            "NeverNef" => Ok(Verdict::NeverNef),
            _ => Err(format!("unknown verdict {s:?}")),
        }
    }
}

/// Either `1/μ` or `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Threshold {
    Finite(Rational),
    Infinite,
}

impl Threshold {
    pub fn admits(&self, eps: &Rational) -> bool {
        match self {
            Threshold::Finite(t) => eps <= t,
            Threshold::Infinite => true,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(t) => f.write_str(&rational::format(t)),
            Threshold::Infinite => f.write_str("inf"),
        }
    }
}

impl From<Threshold> for String {
    fn from(t: Threshold) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for Threshold {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        if s == "inf" {
            Ok(Threshold::Infinite)
        } else {
            rational::parse(&s).map(Threshold::Finite).ok_or_else(|| format!("bad threshold {s:?}"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityVerdict {
    pub mu: i64,
    pub nef_threshold: Threshold,
    pub verdict: Verdict,
    #[serde(with = "crate::rational::serde_rational")]
    pub adjoint_self_intersection_at_half: Rational,
}

/// Whether `l·c` has a sign accepted by `ok` for every `c` in `classes`.
fn pairings_all(l: &RationalDivisorClass, classes: &[DivisorClass], ok: impl Fn(Ordering) -> bool) -> bool {
    match l.integral_multiple() {
        Some(li) => classes.iter().all(|c| ok(li.dot(c).cmp(&0))),
        None => classes.iter().all(|c| ok(l.dot_int(c).cmp(&Rational::zero()))),
    }
}

pub fn is_nef(l: &RationalDivisorClass) -> bool {
    pairings_all(l, neg_curve_classes(l.surface()), Ordering::is_ge)
}

pub fn is_ample(l: &RationalDivisorClass) -> bool {
    pairings_all(l, neg_curve_classes(l.surface()), Ordering::is_gt)
}

/// A nef class is big iff its square is positive.
pub fn is_big_given_nef(l: &RationalDivisorClass) -> Result<bool> {
    if !is_nef(l) {
        return Err(Error::NotNef);
    }
    Ok(l.square().is_positive())
}

pub fn max_neg_intersection(d: &DivisorClass) -> i64 {
    neg_curve_classes(d.surface()).iter().map(|e| d.dot(e)).max().expect("at least one (-1)-curve")
}

pub fn nef_threshold(d: &DivisorClass) -> Threshold {
    threshold_from_mu(max_neg_intersection(d))
}

fn threshold_from_mu(mu: i64) -> Threshold {
    if mu >= 1 {
        Threshold::Finite(rational::ratio(1, mu))
    } else {
        Threshold::Infinite
    }
}

/// `-(K + εD)`.
pub fn adjoint_class(d: &DivisorClass, eps: &Rational) -> RationalDivisorClass {
    let k = canonical_class(d.surface()).to_rational();
    k.combine(eps, &d.to_rational()).scale(&-Rational::one())
}

/// `(-(K + εD))² = K² + 2ε K·D + ε² D²`.
pub fn adjoint_self_intersection(d: &DivisorClass, eps: &Rational) -> Rational {
    let k = canonical_class(d.surface());
    rational::int(k.square()) + rational::int(2 * k.dot(d)) * eps + eps * eps * rational::int(d.square())
}

/// The Campana classification of `-(K + εD)` over `ε ∈ {1 - 1/m : m ≥ 2}`.
pub fn classify_boundary(d: &DivisorClass) -> Result<PositivityVerdict> {
    let mu = max_neg_intersection(d);
    if mu <= 0 {
        return Err(Error::DegenerateBoundary(mu));
    }
    let at_half = adjoint_self_intersection(d, &rational::half());
    let verdict = match mu {
        1 => Verdict::AmpleAllEps,
        2 if at_half.is_positive() => Verdict::NefBigAtHalf,
        2 => Verdict::NefNotBigAtHalf,
        _ => Verdict::NeverNef,
    };
    Ok(PositivityVerdict {
        mu,
        nef_threshold: threshold_from_mu(mu),
        verdict,
        adjoint_self_intersection_at_half: at_half,
    })
}

/// Dual-cone membership against the nef cone generators.
pub fn is_pseudoeffective(d: &DivisorClass) -> bool {
    nef_cone_generators(d.surface()).iter().all(|g| d.dot(g) >= 0)
}

pub fn is_pseudoeffective_rational(d: &RationalDivisorClass) -> bool {
    pairings_all(d, nef_cone_generators(d.surface()), Ordering::is_ge)
}

/// Checks `-(K + εD)` directly against every (-1)-curve.
pub fn adjoint_is_nef(d: &DivisorClass, eps: &Rational) -> bool {
    is_nef(&adjoint_class(d, eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceModel;
    use crate::rational::{half, int, ratio};

    fn s(d: i64) -> SurfaceModel {
        SurfaceModel::new(d).unwrap()
    }

    fn class(d: i64, a: i64, b: &[i64]) -> DivisorClass {
        DivisorClass::new(s(d), a, b.to_vec()).unwrap()
    }

    fn minus_k(d: i64) -> DivisorClass {
        canonical_class(s(d)).scale(-1)
    }

    #[test]
    fn weights() {
        assert_eq!(CampanaWeight::finite(2).unwrap().epsilon, half());
        assert!(CampanaWeight::finite(1).is_none());
        assert_eq!(CampanaWeight::finite(3).unwrap().epsilon, ratio(2, 3));
        assert_eq!(CampanaWeight::infinite().epsilon, int(1));
    }

    #[test]
    fn nef_and_ample() {
        assert!(is_nef(&DivisorClass::zero(s(3)).to_rational()));
        let conic2 = class(2, 1, &[1, 0, 0, 0, 0, 0, 0]);
        assert!(is_nef(&adjoint_class(&conic2, &half())));
        let conic1 = class(1, 1, &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert!(!is_nef(&adjoint_class(&conic1, &half())));
        assert!(is_ample(&minus_k(3).to_rational()));
        assert!(is_ample(&adjoint_class(&minus_k(2), &half())));
        let e = DivisorClass::exceptional(s(2), 0);
        let l = adjoint_class(&e, &half());
        assert!(is_nef(&l) && !is_ample(&l));
    }

    #[test]
    fn bigness() {
        let h = DivisorClass::hyperplane(s(3));
        let l = adjoint_class(&h, &half());
        assert_eq!(is_big_given_nef(&l), Ok(true));
        assert_eq!(l.square(), ratio(1, 4));
        let l = adjoint_class(&minus_k(3).scale(2), &half());
        assert!(l.is_zero());
        assert_eq!(is_big_given_nef(&l), Ok(false));
        // -K + F on d = 4
        let c = minus_k(4).plus(&class(4, 1, &[1, 0, 0, 0, 0]));
        let l = adjoint_class(&c, &half());
        assert_eq!((is_big_given_nef(&l), l.square()), (Ok(false), int(0)));
        let conic1 = class(1, 1, &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(is_big_given_nef(&adjoint_class(&conic1, &half())), Err(Error::NotNef));
    }

    #[test]
    fn mu_and_threshold() {
        for d in 1..=7 {
            assert_eq!(max_neg_intersection(&minus_k(d)), 1);
            assert_eq!(nef_threshold(&minus_k(d)), Threshold::Finite(int(1)));
        }
        let conic2 = class(2, 1, &[1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(max_neg_intersection(&conic2), 2);
        assert_eq!(nef_threshold(&conic2), Threshold::Finite(half()));
        assert_eq!(max_neg_intersection(&DivisorClass::exceptional(s(1), 0)), 3);
        assert_eq!(nef_threshold(&class(1, 1, &[1, 0, 0, 0, 0, 0, 0, 0])), Threshold::Finite(ratio(1, 4)));
        assert_eq!(nef_threshold(&DivisorClass::zero(s(4))), Threshold::Infinite);
    }

    #[test]
    fn classification_examples() {
        let v = classify_boundary(&DivisorClass::exceptional(s(3), 0)).unwrap();
        assert_eq!(v.verdict, Verdict::AmpleAllEps);
        let v = classify_boundary(&class(3, 3, &[1, 1, 1, 1, 1, 0])).unwrap();
        assert_eq!(v.verdict, Verdict::NefNotBigAtHalf);
        let v = classify_boundary(&class(5, 3, &[0, 0, 0, 0])).unwrap();
        assert_eq!((v.mu, v.verdict), (3, Verdict::NeverNef));
        assert_eq!(classify_boundary(&DivisorClass::zero(s(5))), Err(Error::DegenerateBoundary(0)));
    }

    #[test]
    fn pseudoeffective_examples() {
        assert!(is_pseudoeffective(&DivisorClass::exceptional(s(4), 1)));
        assert!(!is_pseudoeffective(&DivisorClass::hyperplane(s(4)).scale(-1)));
        let c = class(3, 2, &[1, 0, 0, 0, 0, 0]);
        let d = c.scale(2).plus(&canonical_class(s(3)));
        assert_eq!(d.coords(), vec![1, 1, -1, -1, -1, -1, -1]);
        assert!(is_pseudoeffective(&d));
    }
}
