//! Integer classes with prescribed anticanonical degree and self-intersection.
//!
//! For a query `(d, m, n)` we need all `(a; b)` with `3a - Σbᵢ = m` and
//! `a² - Σbᵢ² = n`. Cauchy–Schwarz on the `9 - d` entries of `b` gives
//! `(3a - m)² ≤ (9 - d)(a² - n)`, a quadratic in `a` with finitely many
//! integer solutions.

use crate::lattice::{self, DivisorClass, SurfaceModel};
use num_integer::Roots;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationQuery {
    pub surface: SurfaceModel,
    pub m: i64,
    pub n: i64,
}

impl EnumerationQuery {
    pub fn new(surface: SurfaceModel, m: i64, n: i64) -> Self {
        EnumerationQuery { surface, m, n }
    }

    /// Hodge index: a curve of positive degree has `m² ≥ d·n`.
    pub fn hodge_feasible(&self) -> bool {
        self.m * self.m >= self.surface.degree() * self.n
    }
}

/// A canonical representative (b sorted non-increasing) and the size of its
/// orbit under permutations of the blow-up points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveFamily {
    pub representative: DivisorClass,
    pub orbit_size: u64,
    pub m: i64,
    pub n: i64,
}

impl CurveFamily {
    pub fn surface(&self) -> SurfaceModel {
        self.representative.surface()
    }

    /// Every class in the orbit, in lexicographic order.
    pub fn members(&self) -> Vec<DivisorClass> {
        distinct_permutations(&self.representative)
    }
}

fn in_bounds(k: i64, m: i64, n: i64, a: i64) -> bool {
    let lhs = (3 * a - m) * (3 * a - m);
    let rhs = k * (a * a - n);
    lhs <= rhs
}

/// All integers `a` with `(3a - m)² ≤ (9 - d)(a² - n)`, as an inclusive range
/// that may be empty.
pub fn coefficient_bounds(q: &EnumerationQuery) -> std::ops::RangeInclusive<i64> {
    let d = q.surface.degree();
    let k = q.surface.blowup_points() as i64;
    // d·a² - 6m·a + m² + k·n ≤ 0, with quarter-discriminant k(m² - d·n).
    let disc = k * (q.m * q.m - d * q.n);
    if disc < 0 {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    let r = disc.sqrt();
    let mut lo = (3 * q.m - r - 1).div_euclid(d);
    let mut hi = (3 * q.m + r + 1).div_euclid(d) + 1;
    while lo <= hi && !in_bounds(k, q.m, q.n, lo) {
        lo += 1;
    }
    while hi >= lo && !in_bounds(k, q.m, q.n, hi) {
        hi -= 1;
    }
    lo..=hi
}

/// Non-increasing `b` vectors of length `len` with the given sum and sum of
/// squares, each entry at most `cap`.
fn sorted_solutions(len: usize, sum: i64, sumsq: i64, cap: i64, out: &mut Vec<Vec<i64>>) {
    fn rec(left: usize, sum: i64, sumsq: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            if sum == 0 && sumsq == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if sumsq < 0 {
            return;
        }
        let l = left as i64;
        // Cauchy–Schwarz on what is left, and the cap on every remaining entry.
        if sum * sum > l * sumsq || sum > l * cap {
            return;
        }
        let bound = sumsq.sqrt();
        let mut b = cap.min(bound);
        while b >= -bound {
            let rs = sum - b;
            let rq = sumsq - b * b;
            // the remaining entries are all ≤ b
            if rs > (l - 1) * b {
                break;
            }
            cur.push(b);
            rec(left - 1, rs, rq, b, cur, out);
            cur.pop();
            b -= 1;
        }
    }
    let mut cur = Vec::with_capacity(len);
    rec(len, sum, sumsq, cap, &mut cur, out);
}

/// All distinct rearrangements of the blow-up coefficients of `c`.
pub fn distinct_permutations(c: &DivisorClass) -> Vec<DivisorClass> {
    let mut b = c.b().to_vec();
    b.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(DivisorClass::new(c.surface(), c.a(), b.clone()).expect("same length"));
        if !next_permutation(&mut b) {
            break;
        }
    }
    out.sort();
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Canonical representatives (b non-increasing) of every solution, sorted.
fn sorted_representatives(q: &EnumerationQuery) -> Vec<DivisorClass> {
    let k = q.surface.blowup_points();
    let mut reps = Vec::new();
    for a in coefficient_bounds(q) {
        let sumsq = a * a - q.n;
        if sumsq < 0 {
            continue;
        }
        let mut sols = Vec::new();
        sorted_solutions(k, 3 * a - q.m, sumsq, sumsq.sqrt(), &mut sols);
        reps.extend(sols.into_iter().map(|b| DivisorClass::new(q.surface, a, b).expect("length")));
    }
    reps.sort();
    reps
}

/// Every integral class with `-K·C = m` and `C² = n`, deduplicated and in
/// lexicographic order.
pub fn enumerate_raw(q: &EnumerationQuery) -> Vec<DivisorClass> {
    let set: BTreeSet<DivisorClass> = sorted_representatives(q).iter().flat_map(distinct_permutations).collect();
    set.into_iter().collect()
}

static NEG_CURVES: [OnceLock<Vec<DivisorClass>>; 7] = [const { OnceLock::new() }; 7];
static GENERATORS: [OnceLock<Vec<DivisorClass>>; 7] = [const { OnceLock::new() }; 7];

/// The (-1)-curves: all classes with `m = 1`, `n = -1`.
pub fn neg_curve_classes(s: SurfaceModel) -> &'static [DivisorClass] {
    NEG_CURVES[s.degree() as usize - 1].get_or_init(|| enumerate_raw(&EnumerationQuery::new(s, 1, -1)))
}

/// Nef means non-negative against every (-1)-curve.
pub fn is_nef_class(c: &DivisorClass) -> bool {
    neg_curve_classes(c.surface()).iter().all(|e| c.dot(e) >= 0)
}

/// Classes that can carry an irreducible curve: (-1)-curves, or nef classes
/// of integral non-negative arithmetic genus.
pub fn is_irreducible_candidate(c: &DivisorClass) -> bool {
    let m = lattice::anticanonical_degree(c);
    let n = c.square();
    if m == 1 && n == -1 {
        return true;
    }
    let genus = lattice::arithmetic_genus(c);
    genus.is_integer() && genus >= crate::rational::int(0) && is_nef_class(c)
}

/// Canonical forms of the irreducible classes of the query, each with its
/// orbit size. Nefness is invariant under index permutations, so testing the
/// representative decides the whole orbit.
pub fn irreducible_families(q: &EnumerationQuery) -> Vec<CurveFamily> {
    sorted_representatives(q)
        .into_iter()
        .filter(is_irreducible_candidate)
        .map(|rep| {
            let (representative, orbit_size) = canonical_form(&rep);
            CurveFamily { representative, orbit_size, m: q.m, n: q.n }
        })
        .collect()
}

/// Every smooth conic class (`m = 2`, `n = 0`, nef).
pub fn conic_classes(s: SurfaceModel) -> Vec<DivisorClass> {
    let mut v: Vec<DivisorClass> =
        irreducible_families(&EnumerationQuery::new(s, 2, 0)).iter().flat_map(CurveFamily::members).collect();
    v.sort();
    v
}

/// Conics together with the nef classes of degree 3 and square 1 (pullbacks
/// of a line under a contraction to the plane).
pub fn nef_cone_generators(s: SurfaceModel) -> &'static [DivisorClass] {
    GENERATORS[s.degree() as usize - 1].get_or_init(|| {
        let mut v = conic_classes(s);
        v.extend(irreducible_families(&EnumerationQuery::new(s, 3, 1)).iter().flat_map(CurveFamily::members));
        v.sort();
        v.dedup();
        v
    })
}

/// Sorts `b` non-increasing and counts the distinct permutations.
pub fn canonical_form(c: &DivisorClass) -> (DivisorClass, u64) {
    let mut b = c.b().to_vec();
    b.sort_unstable_by(|x, y| y.cmp(x));
    let orbit = multinomial(&b);
    (DivisorClass::new(c.surface(), c.a(), b).expect("same length"), orbit)
}

fn multinomial(sorted: &[i64]) -> u64 {
    let mut total: u64 = 1;
    let mut seen: u64 = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        // multiply by C(seen + run, run), one factor at a time to stay exact
        for t in 1..=(j - i) as u64 {
            seen += 1;
            total = total * seen / t;
        }
        i = j;
    }
    total
}
