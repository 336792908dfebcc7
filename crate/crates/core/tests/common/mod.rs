//! Independent oracles shared by the integration tests and the acceptance
//! target. None of them call the routines they check.
#![allow(dead_code)]

use dpcurves::enumeration::{nef_cone_generators, neg_curve_classes};
use dpcurves::{DivisorClass, SurfaceModel};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use std::collections::BTreeSet;

/// Range of integers `x` with `|x - center| ≤ radius`.
fn window(center: f64, radius: f64) -> std::ops::RangeInclusive<i64> {
    let eps = 1e-9;
    ((center - radius - eps).ceil() as i64)..=((center + radius + eps).floor() as i64)
}

/// Every `(a; b)` with `3a - Σb = m` and `a² - Σb² = n`, found by looping
/// over `a` and over all `b` in a box.
///
/// Box: write `x = (x·K/K²)K + x₀`. Then `x₀` lies in `K^⊥`, which is
/// negative definite, so Cauchy–Schwarz there bounds `C·H` and each `C·Eᵢ`
/// around `(m/d)(−K·H)` and `(m/d)(−K·Eᵢ)`.
pub fn naive_enumerate(s: SurfaceModel, m: i64, n: i64) -> BTreeSet<DivisorClass> {
    let d = s.degree() as f64;
    let (mf, nf) = (m as f64, n as f64);
    let c0 = mf * mf / d - nf;
    let mut out = BTreeSet::new();
    if c0 < -1e-9 {
        return out;
    }
    let a_range = window(3.0 * mf / d, (c0 * (9.0 / d - 1.0)).max(0.0).sqrt());
    let b_range = window(mf / d, (c0 * (1.0 + 1.0 / d)).sqrt());
    let k = s.blowup_points();
    let mut b = vec![0i64; k];
    fn rec(
        i: usize,
        b: &mut Vec<i64>,
        ranges: (&std::ops::RangeInclusive<i64>, &std::ops::RangeInclusive<i64>),
        target: (i64, i64),
        s: SurfaceModel,
        out: &mut BTreeSet<DivisorClass>,
    ) {
        if i == b.len() {
            let sum: i64 = b.iter().sum();
            let sq: i64 = b.iter().map(|x| x * x).sum();
            for a in ranges.0.clone() {
                if 3 * a - sum == target.0 && a * a - sq == target.1 {
                    out.insert(DivisorClass::new(s, a, b.clone()).unwrap());
                }
            }
            return;
        }
        for v in ranges.1.clone() {
            b[i] = v;
            rec(i + 1, b, ranges, target, s, out);
        }
    }
    rec(0, &mut b, (&a_range, &b_range), (m, n), s, &mut out);
    out
}

/// Every pairwise-disjoint set `S` of (-1)-curves with `|S| ≤ 9 - d` for
/// which `P = D - Σ (-D·E) E` is nef. For disjoint supports the
/// coefficients are forced to be `-D·E` and must be positive, so the search
/// runs over subsets of `{E : D·E < 0}`. Zariski uniqueness predicts exactly
/// one answer.
pub fn brute_force_zariski(dclass: &DivisorClass) -> Vec<(DivisorClass, Vec<(DivisorClass, i64)>)> {
    let s = dclass.surface();
    let curves = neg_curve_classes(s);
    let pool: Vec<&DivisorClass> = curves.iter().filter(|e| dclass.dot(e) < 0).collect();
    let max = (9 - s.degree()) as usize;
    let mut answers = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        pool: &[&DivisorClass],
        chosen: &mut Vec<usize>,
        max: usize,
        dclass: &DivisorClass,
        curves: &[DivisorClass],
        answers: &mut Vec<(DivisorClass, Vec<(DivisorClass, i64)>)>,
    ) {
        let mut p = dclass.clone();
        let mut parts = Vec::new();
        for &i in chosen.iter() {
            let a = -dclass.dot(pool[i]);
            p = p.combine(-a, pool[i]);
            parts.push((pool[i].clone(), a));
        }
        if curves.iter().all(|e| p.dot(e) >= 0) {
            parts.sort();
            answers.push((p, parts));
        }
        if chosen.len() == max {
            return;
        }
        for j in start..pool.len() {
            if chosen.iter().all(|&i| pool[i].dot(pool[j]) == 0) {
                chosen.push(j);
                rec(j + 1, pool, chosen, max, dclass, curves, answers);
                chosen.pop();
            }
        }
    }
    rec(0, &pool, &mut chosen, max, dclass, curves, &mut answers);
    answers
}

pub fn in_box(c: &DivisorClass, bound: i64) -> bool {
    c.coords().iter().all(|x| x.abs() <= bound)
}

/// `count` pseudoeffective classes with coordinates bounded by `bound`:
/// a few (-1)-curves plus at most two nef cone generators, each drawn from
/// the classes that already fit in the box.
pub fn random_pseudoeffective(s: SurfaceModel, count: usize, bound: i64, seed: u8) -> Vec<DivisorClass> {
    let neg: Vec<DivisorClass> = neg_curve_classes(s).iter().filter(|c| in_box(c, bound)).cloned().collect();
    let nef: Vec<DivisorClass> = nef_cone_generators(s).iter().filter(|c| in_box(c, bound / 2)).cloned().collect();
    let strat = (
        prop::collection::vec((0..neg.len(), 1i64..=3), 0..=4),
        prop::collection::vec((0..nef.len(), 1i64..=2), 0..=2),
    );
    let mut seed_bytes = [0u8; 32];
    seed_bytes[0] = seed;
    seed_bytes[1] = s.degree() as u8;
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &seed_bytes);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    let mut out = Vec::new();
    while out.len() < count {
        let (a, b) = strat.new_tree(&mut runner).unwrap().current();
        let c = a.iter().fold(DivisorClass::zero(s), |acc, (i, k)| acc.combine(*k, &neg[*i]));
        let c = b.iter().fold(c, |acc, (i, k)| acc.combine(*k, &nef[*i]));
        if !c.is_zero() && in_box(&c, bound) {
            out.push(c);
        }
    }
    out
}

/// Proof steps with a stated number of Zariski support curves:
/// `(d, C, k, count)` for the decomposition of `kC + K`.
pub fn stated_support_instances() -> Vec<(i64, DivisorClass, i64, usize)> {
    let c = |d: i64, a: i64, b: &[i64]| {
        let s = SurfaceModel::new(d).unwrap();
        let mut b = b.to_vec();
        b.resize(s.blowup_points(), 0);
        DivisorClass::new(s, a, b).unwrap()
    };
    vec![
        (3, c(3, 2, &[1]), 2, 5),
        (4, c(4, 3, &[2]), 2, 4),
        (4, c(4, 4, &[2, 1, 1, 1]), 1, 1),
        (4, c(4, 4, &[2, 1, 1]), 1, 2),
        (5, c(5, 4, &[3]), 2, 3),
    ]
}
