//! Structural description of curve families: which contraction `π: X → X'`
//! a class comes from and what its image is.
//!
//! Contractions are recognised by invariants only. For a nef class `C`, the
//! (-1)-curves orthogonal to `C` are pairwise disjoint when `C² > 0` (Hodge
//! index), and contracting them gives the model on which the image of `C`
//! is ample. Its degree and surviving (-1)-curves identify the target.

use crate::enumeration::{conic_classes, irreducible_families, neg_curve_classes, CurveFamily, EnumerationQuery};
use crate::error::{Error, Result};
use crate::lattice::{anticanonical_degree, canonical_class, proportional_to_canonical, DivisorClass, SurfaceModel};
use crate::positivity::is_pseudoeffective;
use crate::zariski::zariski_decompose;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum StructuralTag {
    NegCurve,
    Conic,
    AntiCanonicalMultiple {
        k: i64,
    },
    AntiCanonicalPullback {
        target_degree: i64,
    },
    HyperplanePullback,
    /// Pullback of a curve of bidegree `(p, q)`, `p ≥ q`, on `P¹ × P¹`.
    QuadricClassPullback {
        p: i64,
        q: i64,
    },
    /// Pullback of `cH' - eE` on the plane blown up at one point.
    BlowupClassPullback {
        c: i64,
        e: i64,
    },
    MinusKPlusConic,
    MinusKPlus2Conic,
    MinusKPlusHyperplane,
    /// `-K` plus the pullback of a `(1,1)` class from `P¹ × P¹`.
    MinusKPlusQuadric,
    MinusKPlusBlowupClass {
        c: i64,
        e: i64,
    },
    /// Pullback of a plane conic.
    PlaneConicPullback,
    /// `C + K = kF + ΣNᵢ` with `F` a conic and `Nᵢ` disjoint (-1)-curves.
    AdjointConicPullback {
        target_degree: i64,
        conic_multiple: i64,
    },
    /// `C + K = π*H' + ΣNᵢ`.
    AdjointHyperplanePullback {
        target_degree: i64,
    },
    NoCurve,
    Unclassified,
}

impl StructuralTag {
    /// Smaller wins when several families share a cell.
    pub fn precedence(&self) -> (u8, i64) {
        use StructuralTag::*;
        match *self {
            NegCurve => (0, 0),
            AntiCanonicalMultiple { .. } => (1, 0),
            Conic => (2, 0),
            AntiCanonicalPullback { .. } => (3, 0),
            MinusKPlusConic => (4, 0),
            MinusKPlus2Conic => (5, 0),
            MinusKPlusHyperplane => (6, 0),
            MinusKPlusQuadric => (7, 0),
            MinusKPlusBlowupClass { .. } => (8, 0),
            HyperplanePullback => (9, 0),
            BlowupClassPullback { .. } => (10, 0),
            QuadricClassPullback { .. } => (11, 0),
            PlaneConicPullback => (12, 0),
            AdjointConicPullback { conic_multiple, .. } => (13, -conic_multiple),
            AdjointHyperplanePullback { .. } => (14, 0),
            NoCurve => (15, 0),
            Unclassified => (16, 0),
        }
    }

    /// The class in the usual notation, `π` the contraction and `F` a conic.
    pub fn description(&self) -> String {
        use StructuralTag::*;
        match *self {
            NegCurve => "(-1)-curve".into(),
            Conic => "smooth conic F".into(),
            AntiCanonicalMultiple { k: 1 } => "-K".into(),
            AntiCanonicalMultiple { k } => format!("-{k}K"),
            AntiCanonicalPullback { target_degree } => format!("-pi^*K' (degree {target_degree})"),
            HyperplanePullback => "pi^*H'".into(),
            QuadricClassPullback { p, q } => format!("pi^*O({p},{q}) on P1xP1"),
            BlowupClassPullback { c, e } => format!("{} - {}", coeff(c, "pi^*H'"), coeff(e, "pi^*E")),
            MinusKPlusConic => "-K + F".into(),
            MinusKPlus2Conic => "-K + 2F".into(),
            MinusKPlusHyperplane => "-K + pi^*H'".into(),
            MinusKPlusQuadric => "-K + pi^*O(1,1)".into(),
            MinusKPlusBlowupClass { c, e } => format!("-K + {} - {}", coeff(c, "pi^*H'"), coeff(e, "pi^*E")),
            PlaneConicPullback => "pi^*(2H')".into(),
            AdjointConicPullback { target_degree, conic_multiple } => {
                format!("C + K = {} + N (degree {target_degree})", coeff(conic_multiple, "F"))
            }
            AdjointHyperplanePullback { target_degree } => format!("C + K = pi^*H' + N (degree {target_degree})"),
            NoCurve => "no curve".into(),
            Unclassified => "unclassified".into(),
        }
    }
}

fn coeff(k: i64, s: &str) -> String {
    if k == 1 {
        s.to_string()
    } else {
        format!("{k}{s}")
    }
}

impl fmt::Display for StructuralTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StructuralTag::*;
        match *self {
            NegCurve => f.write_str("NegCurve"),
            Conic => f.write_str("Conic"),
            AntiCanonicalMultiple { k } => write!(f, "AntiCanonicalMultiple({k})"),
            AntiCanonicalPullback { target_degree } => write!(f, "AntiCanonicalPullback({target_degree})"),
            HyperplanePullback => f.write_str("HyperplanePullback"),
            QuadricClassPullback { p, q } => write!(f, "QuadricClassPullback({p},{q})"),
            BlowupClassPullback { c, e } => write!(f, "BlowupClassPullback({c},{e})"),
            MinusKPlusConic => f.write_str("MinusKPlusConic"),
            MinusKPlus2Conic => f.write_str("MinusKPlus2Conic"),
            MinusKPlusHyperplane => f.write_str("MinusKPlusHyperplane"),
            MinusKPlusQuadric => f.write_str("MinusKPlusQuadric"),
            MinusKPlusBlowupClass { c, e } => write!(f, "MinusKPlusBlowupClass({c},{e})"),
            PlaneConicPullback => f.write_str("PlaneConicPullback"),
            AdjointConicPullback { target_degree, conic_multiple } => {
                write!(f, "AdjointConicPullback({target_degree},{conic_multiple})")
            }
            AdjointHyperplanePullback { target_degree } => write!(f, "AdjointHyperplanePullback({target_degree})"),
            NoCurve => f.write_str("NoCurve"),
            Unclassified => f.write_str("Unclassified"),
        }
    }
}

impl std::str::FromStr for StructuralTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use StructuralTag::*;
        let bad = || Error::Parse(format!("unknown structural tag {s:?}"));
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => {
                let inner = &s[i + 1..s.len() - 1];
                let args: std::result::Result<Vec<i64>, _> = inner.split(',').map(|x| x.trim().parse()).collect();
                (&s[..i], args.map_err(|_| bad())?)
            }
            Some(_) => return Err(bad()),
            None => (s, Vec::new()),
        };
        let tag = match (name, args.as_slice()) {
            ("NegCurve", []) => NegCurve,
            ("Conic", []) => Conic,
            ("AntiCanonicalMultiple", &[k]) => AntiCanonicalMultiple { k },
            ("AntiCanonicalPullback", &[target_degree]) => AntiCanonicalPullback { target_degree },
            ("HyperplanePullback", []) => HyperplanePullback,
            ("QuadricClassPullback", &[p, q]) => QuadricClassPullback { p, q },
            ("BlowupClassPullback", &[c, e]) => BlowupClassPullback { c, e },
            ("MinusKPlusConic", []) => MinusKPlusConic,
            ("MinusKPlus2Conic", []) => MinusKPlus2Conic,
            ("MinusKPlusHyperplane", []) => MinusKPlusHyperplane,
            ("MinusKPlusQuadric", []) => MinusKPlusQuadric,
            ("MinusKPlusBlowupClass", &[c, e]) => MinusKPlusBlowupClass { c, e },
            ("PlaneConicPullback", []) => PlaneConicPullback,
            ("AdjointConicPullback", &[target_degree, conic_multiple]) => {
                AdjointConicPullback { target_degree, conic_multiple }
            }
            ("AdjointHyperplanePullback", &[target_degree]) => AdjointHyperplanePullback { target_degree },
            ("NoCurve", []) => NoCurve,
            ("Unclassified", []) => Unclassified,
            _ => return Err(bad()),
        };
        Ok(tag)
    }
}

impl From<StructuralTag> for String {
    fn from(t: StructuralTag) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for StructuralTag {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionInvariants {
    pub contracted_count: usize,
    pub target_degree: i64,
    pub m: i64,
    pub n: i64,
}

fn is_neg_curve_class(e: &DivisorClass) -> bool {
    e.square() == -1 && anticanonical_degree(e) == 1
}

/// Writes `D` as a sum of pairwise-disjoint (-1)-curves if possible.
///
/// In such a sum each summand meets `D` in `-1` and every other (-1)-curve
/// meets `D` non-negatively, so the summands are exactly the (-1)-curves with
/// `D·E < 0` and no search is needed.
pub fn disjoint_neg_decomposition(d: &DivisorClass) -> Option<Vec<DivisorClass>> {
    let s = d.surface();
    let support: Vec<DivisorClass> = neg_curve_classes(s).iter().filter(|e| d.dot(e) < 0).cloned().collect();
    let disjoint = support.iter().enumerate().all(|(i, x)| support[i + 1..].iter().all(|y| x.dot(y) == 0));
    let total = support.iter().fold(DivisorClass::zero(s), |acc, e| acc.plus(e));
    (disjoint && total == *d).then_some(support)
}

/// Degree, anticanonical degree and square of the image of `C` after
/// contracting the disjoint (-1)-curves `S`.
pub fn contracted_invariants(c: &DivisorClass, contracted: &[DivisorClass]) -> Result<ContractionInvariants> {
    if contracted.iter().any(|e| e.surface() != c.surface() || !is_neg_curve_class(e)) {
        return Err(Error::NotDisjoint);
    }
    for (i, x) in contracted.iter().enumerate() {
        if contracted[i + 1..].iter().any(|y| x.dot(y) != 0) {
            return Err(Error::NotDisjoint);
        }
    }
    let cs: Vec<i64> = contracted.iter().map(|e| c.dot(e)).collect();
    Ok(ContractionInvariants {
        contracted_count: contracted.len(),
        target_degree: c.surface().degree() + contracted.len() as i64,
        m: anticanonical_degree(c) + cs.iter().sum::<i64>(),
        n: c.square() + cs.iter().map(|x| x * x).sum::<i64>(),
    })
}

/// The contraction of every (-1)-curve orthogonal to a nef class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpleModel {
    pub contracted: Vec<DivisorClass>,
    pub invariants: ContractionInvariants,
    /// (-1)-curves disjoint from everything contracted.
    pub survivors: Vec<DivisorClass>,
}

pub fn ample_model(c: &DivisorClass) -> Option<AmpleModel> {
    let curves = neg_curve_classes(c.surface());
    let contracted: Vec<DivisorClass> = curves.iter().filter(|e| c.dot(e) == 0).cloned().collect();
    let invariants = contracted_invariants(c, &contracted).ok()?;
    let survivors = curves.iter().filter(|e| contracted.iter().all(|s| e.dot(s) == 0)).cloned().collect();
    Some(AmpleModel { contracted, invariants, survivors })
}

/// `(c, e)` with `C = π*(cH' - eE)` for a contraction onto the one-point
/// blow-up of the plane.
fn blowup_class(c: &DivisorClass) -> Option<(i64, i64)> {
    let model = ample_model(c)?;
    let inv = model.invariants;
    if inv.target_degree != 8 || model.survivors.len() != 1 {
        return None;
    }
    let e = c.dot(&model.survivors[0]);
    let (cc, rem) = (inv.m + e).div_rem(&3);
    (rem == 0 && cc * cc - e * e == inv.n).then_some((cc, e))
}

/// `(p, q)` with `C = π*O(p, q)`, `p ≥ q`, for a contraction onto `P¹ × P¹`.
fn quadric_class(c: &DivisorClass) -> Option<(i64, i64)> {
    let model = ample_model(c)?;
    let inv = model.invariants;
    if inv.target_degree != 8 || !model.survivors.is_empty() {
        return None;
    }
    let rulings: Vec<DivisorClass> =
        conic_classes(c.surface()).into_iter().filter(|f| model.contracted.iter().all(|s| f.dot(s) == 0)).collect();
    if rulings.len() != 2 || rulings[0].dot(&rulings[1]) != 1 {
        return None;
    }
    let (x, y) = (c.dot(&rulings[0]), c.dot(&rulings[1]));
    let (p, q) = (x.max(y), x.min(y));
    (inv.m == 2 * (p + q) && inv.n == 2 * p * q).then_some((p, q))
}

fn is_conic_class(c: &DivisorClass) -> bool {
    anticanonical_degree(c) == 2 && c.square() == 0 && crate::enumeration::is_nef_class(c)
}

fn is_nef_of_type(c: &DivisorClass, m: i64, n: i64) -> bool {
    anticanonical_degree(c) == m && c.square() == n && crate::enumeration::is_nef_class(c)
}

/// `D = kP` with `P` integral.
fn divide(d: &DivisorClass, k: i64) -> Option<DivisorClass> {
    if k == 0 || d.a() % k != 0 || d.b().iter().any(|x| x % k != 0) {
        return None;
    }
    DivisorClass::new(d.surface(), d.a() / k, d.b().iter().map(|x| x / k).collect()).ok()
}

fn content(d: &DivisorClass) -> i64 {
    d.coords().iter().fold(0, |g, x| g.gcd(x))
}

/// Structural tag of a single irreducible class; the first matching rule
/// wins.
pub fn classify_class(c: &DivisorClass) -> StructuralTag {
    use StructuralTag::*;
    let s = c.surface();
    let d = s.degree();
    let m = anticanonical_degree(c);
    let n = c.square();
    if m == 1 && n == -1 {
        return NegCurve;
    }
    if let Some(k) = proportional_to_canonical(c) {
        return AntiCanonicalMultiple { k };
    }
    if m == 2 && n == 0 {
        return Conic;
    }

    let adj = c.plus(&canonical_class(s));
    if let Some(sum) = disjoint_neg_decomposition(&adj) {
        if !sum.is_empty() {
            return AntiCanonicalPullback { target_degree: d + sum.len() as i64 };
        }
    }
    if is_conic_class(&adj) {
        return MinusKPlusConic;
    }
    if divide(&adj, 2).is_some_and(|f| is_conic_class(&f)) {
        return MinusKPlus2Conic;
    }
    if is_nef_of_type(&adj, 3, 1) {
        return MinusKPlusHyperplane;
    }
    if is_nef_of_type(&adj, 4, 2) && quadric_class(&adj) == Some((1, 1)) {
        return MinusKPlusQuadric;
    }
    if is_nef_of_type(&adj, 5, 3) {
        if let Some((cc, e)) = blowup_class(&adj) {
            return MinusKPlusBlowupClass { c: cc, e };
        }
    }

    if let Some(model) = ample_model(c) {
        let inv = model.invariants;
        match (inv.target_degree, inv.m, inv.n) {
            (9, 3, 1) => return HyperplanePullback,
            (9, 6, 4) => return PlaneConicPullback,
            _ => {}
        }
        if let Some((cc, e)) = blowup_class(c) {
            return BlowupClassPullback { c: cc, e };
        }
        if let Some((p, q)) = quadric_class(c) {
            return QuadricClassPullback { p, q };
        }
    }

    if is_pseudoeffective(&adj) {
        if let Ok(z) = zariski_decompose(&adj) {
            if let (Some(p), false) = (z.positive_part.to_integral(), z.negative_part.is_empty()) {
                let target_degree = d + z.negative_part.len() as i64;
                let k = content(&p);
                if k > 0 && divide(&p, k).is_some_and(|f| is_conic_class(&f)) {
                    return AdjointConicPullback { target_degree, conic_multiple: k };
                }
                if is_nef_of_type(&p, 3, 1) {
                    return AdjointHyperplanePullback { target_degree };
                }
            }
        }
    }
    Unclassified
}

pub fn structural_tag(family: &CurveFamily) -> StructuralTag {
    classify_class(&family.representative)
}

/// The tag reported for a whole `(d, m, n)` cell: the family of highest
/// precedence, or `NoCurve` when there is none.
pub fn cell_tag(families: &[CurveFamily]) -> StructuralTag {
    families.iter().map(structural_tag).min_by_key(StructuralTag::precedence).unwrap_or(StructuralTag::NoCurve)
}

pub fn cell_tag_for(s: SurfaceModel, m: i64, n: i64) -> StructuralTag {
    cell_tag(&irreducible_families(&EnumerationQuery::new(s, m, n)))
}

/// Squares allowed by the Hodge index bound `n ≤ m²/d`, parity and
/// non-negative arithmetic genus.
pub fn feasible_self_intersections(d: i64, m: i64) -> Vec<i64> {
    if d < 1 || m < 1 {
        return Vec::new();
    }
    let lo = (m - 2).max(-1);
    let hi = Integer::div_floor(&(m * m), &d);
    (lo..=hi).filter(|n| (n - m).rem_euclid(2) == 0).collect()
}
