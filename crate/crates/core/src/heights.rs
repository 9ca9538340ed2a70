//! The height function
//! `h_p(a) = min_{1 <= k <= p-1} sum_i (k a_i mod p)` on `P^(d-1)(F_p)`,
//! closed-form values on the projective line, and exhaustive spectra.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{
    scalar_class_candidates, scalar_classes, PrimeModulus, ProjectivePoint, Residue, ResidueSet,
};

/// Default cap on the number of points whose height an exhaustive scan may evaluate.
pub const DEFAULT_BUDGET: u128 = 5_000_000;

/// Closed-form rules that give the exact height of `<1, a>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineRule {
    /// `a = 1`: height 2.
    One,
    /// `a = 2` or `a = (p+1)/2`: height 3.
    Three,
    /// `a < sqrt(p)`: height `1 + a`.
    BelowSqrt,
    /// `a = p-1`: height `p`.
    MinusOne,
    /// `a = (p-1)/2` or `a = p-2`: height `(p+1)/2`.
    HalfHeight,
}

impl LineRule {
    pub fn label(self) -> &'static str {
        match self {
            LineRule::One => "a=1",
            LineRule::Three => "a in {2,(p+1)/2}",
            LineRule::BelowSqrt => "a<sqrt(p)",
            LineRule::MinusOne => "a=p-1",
            LineRule::HalfHeight => "a in {(p-1)/2,p-2}",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "rule")]
pub enum Method {
    Brute,
    Formula(LineRule),
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Formula(_) => "formula",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightRecord {
    pub point: ProjectivePoint,
    pub height: u64,
    /// Smallest multiplier attaining the minimum.
    pub argmin_k: u32,
    pub method: Method,
}

impl HeightRecord {
    pub fn modulus(&self) -> PrimeModulus {
        self.point.modulus()
    }
}

/// `sum_i (k a_i mod p)` for a single multiplier.
pub fn weight_at(coords: &[Residue], k: u32, p: PrimeModulus) -> u64 {
    coords.iter().map(|&a| p.mul(a, p.reduce_u64(k as u64)).value() as u64).sum()
}

/// Minimum weight and its smallest minimizer, by scanning every `k`.
///
/// The residues `k a_i mod p` are advanced additively, so a scan costs
/// `O(d p)` additions and no divisions.
pub(crate) fn min_weight(coords: &[Residue], p: PrimeModulus) -> (u64, u32) {
    let modulus = p.get();
    let steps: Vec<u32> = coords.iter().map(|r| r.value()).collect();
    let mut current = steps.clone();
    let mut best = (u64::MAX, 0u32);
    for k in 1..modulus {
        let sum: u64 = current.iter().map(|&v| v as u64).sum();
        if sum < best.0 {
            best = (sum, k);
        }
        for (v, &s) in current.iter_mut().zip(&steps) {
            *v += s;
            if *v >= modulus {
                *v -= modulus;
            }
        }
    }
    best
}

/// Height by exhaustive scan over `k = 1..p-1`.
pub fn height(a: &ProjectivePoint) -> HeightRecord {
    let (height, argmin_k) = min_weight(a.coords(), a.modulus());
    HeightRecord { point: a.clone(), height, argmin_k, method: Method::Brute }
}

/// `floor(d*(a) p / 2)`.
pub fn height_upper_bound(a: &ProjectivePoint) -> u64 {
    a.d_star() as u64 * a.modulus().as_u64() / 2
}

/// Exact height and smallest minimizer of `<1, a>` from a closed form, when one applies.
pub fn line_rule(a: Residue, p: PrimeModulus) -> Option<(LineRule, u64, u32)> {
    let a = a.value() as u64;
    let q = p.as_u64();
    let half_above = (q + 1) / 2;
    let half_below = (q - 1) / 2;
    if a == 0 {
        return None;
    }
    if a == 1 {
        return Some((LineRule::One, 2, 1));
    }
    if a == 2 {
        return Some((LineRule::Three, 3, 1));
    }
    if a == half_above {
        return Some((LineRule::Three, 3, 2));
    }
    if a * a < q {
        return Some((LineRule::BelowSqrt, 1 + a, 1));
    }
    if a == q - 1 {
        return Some((LineRule::MinusOne, q, 1));
    }
    if a == half_below {
        return Some((LineRule::HalfHeight, half_above, 1));
    }
    if a == q - 2 {
        return Some((LineRule::HalfHeight, half_above, half_below as u32));
    }
    None
}

/// Height of `<1, a>`, using a closed form when one applies and a scan otherwise.
pub fn line_height_fast(a: Residue, p: PrimeModulus) -> Result<HeightRecord> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    let point = ProjectivePoint::line(a, p);
    Ok(match line_rule(a, p) {
        Some((rule, height, argmin_k)) => {
            HeightRecord { point, height, argmin_k, method: Method::Formula(rule) }
        }
        None => height(&point),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineBoundKind {
    /// `1 + a`
    OnePlusA,
    /// `(p + (b-1)^2) / b` with `b = p - a`
    Reflected,
}

impl LineBoundKind {
    pub fn label(self) -> &'static str {
        match self {
            LineBoundKind::OnePlusA => "1+a",
            LineBoundKind::Reflected => "(p+(b-1)^2)/b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineBound {
    pub kind: LineBoundKind,
    /// Integer upper bound on the height (floor of the rational bound).
    pub bound: u64,
}

/// Every upper bound on the height of `<1, a>` that holds for all odd primes.
pub fn line_bound_certificates(a: Residue, p: PrimeModulus) -> Result<Vec<LineBound>> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    let a = a.value() as u64;
    let q = p.as_u64();
    let b = q - a;
    Ok(vec![
        LineBound { kind: LineBoundKind::OnePlusA, bound: 1 + a },
        LineBound { kind: LineBoundKind::Reflected, bound: (q + (b - 1) * (b - 1)) / b },
    ])
}

/// Open interval `(below, above)` of integers containing no achieved height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub below: u64,
    pub above: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightSpectrum {
    pub p: PrimeModulus,
    pub d: usize,
    pub point_count: u128,
    pub values: Vec<u64>,
    pub max_height: u64,
    pub count_per_value: BTreeMap<u64, u64>,
    pub gaps: Vec<Gap>,
    /// First point, in enumeration order, attaining `max_height`.
    pub max_witness: ProjectivePoint,
}

impl HeightSpectrum {
    pub fn contains(&self, h: u64) -> bool {
        self.count_per_value.contains_key(&h)
    }
}

/// `(p^d - 1)/(p - 1)`, or `None` on overflow.
pub fn point_count(p: PrimeModulus, d: usize) -> Option<u128> {
    let q = p.as_u64() as u128;
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..d {
        total = total.checked_add(power)?;
        power = power.checked_mul(q)?;
    }
    Some(total)
}

#[derive(Default)]
struct Tally {
    counts: BTreeMap<u64, u64>,
    // (height, enumeration index) of the first maximum
    max: Option<(u64, u128)>,
}

impl Tally {
    fn record(&mut self, h: u64, index: u128) {
        *self.counts.entry(h).or_default() += 1;
        match self.max {
            Some((m, i)) if m > h || (m == h && i < index) => {}
            _ => self.max = Some((h, index)),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (h, c) in other.counts {
            *self.counts.entry(h).or_default() += c;
        }
        if let Some((h, i)) = other.max {
            match self.max {
                Some((m, j)) if m > h || (m == h && j < i) => {}
                _ => self.max = Some((h, i)),
            }
        }
        self
    }
}

/// Canonical point number `index` in the enumeration order: leading-1 position
/// ascending, then the trailing coordinates as base-`p` digits (last varies fastest).
fn nth_point(p: PrimeModulus, d: usize, mut index: u128) -> Vec<Residue> {
    let q = p.as_u64() as u128;
    let mut lead = 0;
    loop {
        let block = q.pow((d - 1 - lead) as u32);
        if index < block {
            break;
        }
        index -= block;
        lead += 1;
    }
    let mut coords = vec![Residue::ZERO; d];
    coords[lead] = Residue::ONE;
    for slot in coords[lead + 1..].iter_mut().rev() {
        *slot = p.reduce_u64((index % q) as u64);
        index /= q;
    }
    coords
}

/// Heights of every point of `P^(d-1)(F_p)`, aggregated.
pub fn spectrum(p: PrimeModulus, d: usize, budget: u128) -> Result<HeightSpectrum> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension d = {d} must be at least 2")));
    }
    let count = point_count(p, d)
        .filter(|&c| c <= budget)
        .ok_or(Error::BudgetExceeded { required: point_count(p, d).unwrap_or(u128::MAX), budget })?;

    const CHUNK: u128 = 4096;
    let chunks = count.div_ceil(CHUNK);
    let tally = (0..chunks as u64)
        .into_par_iter()
        .map(|chunk| {
            let mut t = Tally::default();
            let start = chunk as u128 * CHUNK;
            let end = (start + CHUNK).min(count);
            for index in start..end {
                let coords = nth_point(p, d, index);
                t.record(min_weight(&coords, p).0, index);
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    let (max_height, max_index) = tally.max.expect("projective space is nonempty");
    let values: Vec<u64> = tally.counts.keys().copied().collect();
    let gaps = values
        .windows(2)
        .filter(|w| w[1] > w[0] + 1)
        .map(|w| Gap { below: w[0], above: w[1] })
        .collect();
    Ok(HeightSpectrum {
        p,
        d,
        point_count: count,
        values,
        max_height,
        count_per_value: tally.counts,
        gaps,
        max_witness: ProjectivePoint::from_canonical_unchecked(nth_point(p, d, max_index), p),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub p: PrimeModulus,
    pub d: usize,
    pub max_height: u64,
    pub lower: u64,
    pub upper: u64,
    pub holds: bool,
}

/// Bounds on `max H_p(P^(d-1))`: exactly `dp/2` for even `d`,
/// `[(d-1)p/2 + 1, (dp-1)/2]` for odd `d`.
pub fn max_height_bounds(p: PrimeModulus, d: usize) -> (u64, u64) {
    let q = p.as_u64();
    let d = d as u64;
    if d % 2 == 0 {
        (d * q / 2, d * q / 2)
    } else {
        ((d - 1) * q / 2 + 1, (d * q - 1) / 2)
    }
}

pub fn spectrum_bounds_check(p: PrimeModulus, d: usize, budget: u128) -> Result<BoundsReport> {
    let s = spectrum(p, d, budget)?;
    Ok(bounds_report(&s))
}

pub fn bounds_report(s: &HeightSpectrum) -> BoundsReport {
    let (lower, upper) = max_height_bounds(s.p, s.d);
    BoundsReport {
        p: s.p,
        d: s.d,
        max_height: s.max_height,
        lower,
        upper,
        holds: lower <= s.max_height && s.max_height <= upper,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub p: PrimeModulus,
    pub r: u64,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub c: Ratio<i64>,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub lower: Ratio<i64>,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub upper: Ratio<i64>,
    /// Achieved line heights strictly inside `(lower, upper)`.
    pub inside: Vec<u64>,
    pub empty: bool,
}

/// Is `H_p(P^1) ∩ (p/(r+1) + c, p/r - c)` empty? Comparisons are exact.
pub fn gap_scan(p: PrimeModulus, r: u64, c: Ratio<i64>, budget: u128) -> Result<GapReport> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if c < Ratio::from_integer(0) {
        return Err(Error::InvalidParameter("c must be nonnegative".into()));
    }
    let s = spectrum(p, 2, budget)?;
    Ok(gap_report(&s, r, c))
}

pub fn gap_report(line: &HeightSpectrum, r: u64, c: Ratio<i64>) -> GapReport {
    let q = line.p.as_u64() as i64;
    let lower = Ratio::new(q, r as i64 + 1) + c;
    let upper = Ratio::new(q, r as i64) - c;
    let inside: Vec<u64> = line
        .values
        .iter()
        .copied()
        .filter(|&h| {
            let h = Ratio::from_integer(h as i64);
            lower < h && h < upper
        })
        .collect();
    GapReport { p: line.p, r, c, lower, upper, empty: inside.is_empty(), inside }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumWitness {
    /// Number of terms.
    pub length: usize,
    /// The terms, ascending; repetition allowed.
    pub terms: Vec<Residue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumFreeCertificate {
    pub set: ResidueSet,
    pub k: usize,
    pub ok: bool,
    pub witness: Option<SumWitness>,
}

/// Checks that no sum of `l` elements of `set` (with repetition) vanishes, for
/// `l = 1..=k`. The witness is the shortest vanishing sum, and among those the
/// lexicographically least ascending term list.
pub fn is_k_sum_free(set: &ResidueSet, k: usize) -> SumFreeCertificate {
    let p = set.modulus();
    let modulus = p.get() as usize;
    let elems = set.elements();

    // reach[j][s]: s is a sum of exactly j elements
    let mut reach: Vec<Vec<bool>> = vec![vec![false; modulus]];
    reach[0][0] = true;
    let mut length = None;
    for j in 1..=k {
        let prev = &reach[j - 1];
        let mut next = vec![false; modulus];
        for (s, _) in prev.iter().enumerate().filter(|(_, &r)| r) {
            for a in elems {
                next[(s + a.value() as usize) % modulus] = true;
            }
        }
        let hit = next[0];
        reach.push(next);
        if hit {
            length = Some(j);
            break;
        }
    }

    let witness = length.map(|l| {
        let mut terms = Vec::with_capacity(l);
        let found = first_zero_sum(p, elems, &reach, 0, l, 0, &mut terms);
        debug_assert!(found);
        SumWitness { length: l, terms }
    });
    SumFreeCertificate { set: set.clone(), k, ok: witness.is_none(), witness }
}

fn first_zero_sum(
    p: PrimeModulus,
    elems: &[Residue],
    reach: &[Vec<bool>],
    start: usize,
    remaining: usize,
    sum: u32,
    terms: &mut Vec<Residue>,
) -> bool {
    let need = p.neg(p.reduce_u64(sum as u64));
    if remaining == 0 {
        return need.is_zero();
    }
    if !reach[remaining][need.value() as usize] {
        return false;
    }
    for (i, &a) in elems.iter().enumerate().skip(start) {
        terms.push(a);
        let next = p.add(p.reduce_u64(sum as u64), a).value();
        if first_zero_sum(p, elems, reach, i, remaining - 1, next, terms) {
            return true;
        }
        terms.pop();
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KFreeBest {
    pub set: ResidueSet,
    pub height: u64,
    pub argmin_k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KFreeReport {
    pub p: PrimeModulus,
    pub d: usize,
    pub k: usize,
    pub classes: usize,
    pub qualifying: usize,
    /// `None` when no class qualifies.
    pub best: Option<KFreeBest>,
}

/// Maximum height of `<a_1, ..., a_d>` over `d`-sets of distinct nonzero
/// residues that are `k`-sum-free, one set per scalar class.
pub fn max_height_k_free(p: PrimeModulus, d: usize, k: usize, budget: u128) -> Result<KFreeReport> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let candidates = scalar_class_candidates(p, d);
    if candidates > budget {
        return Err(Error::BudgetExceeded { required: candidates, budget });
    }
    let classes = scalar_classes(p, d);
    let qualifying: Vec<(ResidueSet, u64, u32)> = classes
        .par_iter()
        .filter(|set| is_k_sum_free(set, k).ok)
        .map(|set| {
            let (h, arg) = min_weight(set.elements(), p);
            (set.clone(), h, arg)
        })
        .collect();
    // first class (lexicographic) among those of maximal height
    let best = qualifying
        .iter()
        .rev()
        .max_by_key(|(_, h, _)| *h)
        .map(|(set, height, argmin_k)| KFreeBest { set: set.clone(), height: *height, argmin_k: *argmin_k });
    Ok(KFreeReport { p, d, k, classes: classes.len(), qualifying: qualifying.len(), best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{canonicalize, odd_primes};

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    // Direct transcription of the definition; shares nothing with `min_weight`.
    fn oracle(coords: &[u64], p: u64) -> (u64, u64) {
        let mut best = (u64::MAX, 0);
        for k in 1..p {
            let s: u64 = coords.iter().map(|a| (k * a) % p).sum();
            if s < best.0 {
                best = (s, k);
            }
        }
        best
    }

    fn line(a: u64, p: u64) -> HeightRecord {
        height(&canonicalize(&[1, a as i64], pm(p)).unwrap())
    }

    #[test]
    fn height_examples() {
        assert_eq!(line(2, 11).height, 3);
        for p in [3, 5, 101] {
            assert_eq!(height(&canonicalize(&[1, 0], pm(p)).unwrap()).height, 1);
        }
        assert_eq!(line(10, 11).height, 11);
        let r = height(&canonicalize(&[1, 2, 3], pm(7)).unwrap());
        assert_eq!((r.height, r.argmin_k), (6, 1));
        assert_eq!(oracle(&[1, 2, 3], 7), (6, 1));
    }

    #[test]
    fn height_matches_oracle() {
        for p in [3u64, 5, 7, 11, 13] {
            let m = pm(p);
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        let Ok(pt) = canonicalize(&[a as i64, b as i64, c as i64], m) else { continue };
                        let r = height(&pt);
                        let raw: Vec<u64> = pt.coords().iter().map(|x| x.value() as u64).collect();
                        assert_eq!((r.height, r.argmin_k as u64), oracle(&raw, p));
                        assert_eq!(weight_at(pt.coords(), r.argmin_k, m), r.height);
                    }
                }
            }
        }
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(height_upper_bound(&canonicalize(&[1, 3], pm(11)).unwrap()), 11);
        assert_eq!(height_upper_bound(&canonicalize(&[0, 1], pm(13)).unwrap()), 6);
        assert_eq!(height_upper_bound(&canonicalize(&[1, 2, 3], pm(7)).unwrap()), 10);
    }

    #[test]
    fn fast_path_examples() {
        let r = line_height_fast(Residue::ONE, pm(101)).unwrap();
        assert_eq!((r.height, r.method), (2, Method::Formula(LineRule::One)));
        let r = line_height_fast(pm(11).reduce(6), pm(11)).unwrap();
        assert_eq!((r.height, r.argmin_k, r.method), (3, 2, Method::Formula(LineRule::Three)));
        let r = line_height_fast(pm(11).reduce(9), pm(11)).unwrap();
        assert_eq!((r.height, r.method), (6, Method::Formula(LineRule::HalfHeight)));
        let r = line_height_fast(pm(23).reduce(7), pm(23)).unwrap();
        assert_eq!((r.height, r.method), (8, Method::Brute));
        assert!(line_height_fast(Residue::ZERO, pm(7)).is_err());
    }

    #[test]
    fn fast_path_agrees_with_scan() {
        for p in odd_primes(3, 400) {
            let m = pm(p);
            for a in m.units() {
                let fast = line_height_fast(a, m).unwrap();
                let raw = oracle(&[1, a.value() as u64], p);
                assert_eq!((fast.height, fast.argmin_k as u64), raw, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let c = line_bound_certificates(pm(11).reduce(5), pm(11)).unwrap();
        assert_eq!(c[0], LineBound { kind: LineBoundKind::OnePlusA, bound: 6 });
        let c = line_bound_certificates(pm(23).reduce(20), pm(23)).unwrap();
        assert_eq!(c[1], LineBound { kind: LineBoundKind::Reflected, bound: 9 });
        assert_eq!(line(20, 23).height, 9);
        for p in [3, 7, 97] {
            let c = line_bound_certificates(pm(p).reduce(-1), pm(p)).unwrap();
            assert_eq!(c[1].bound, p);
        }
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(pm(5), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.values, vec![1, 2, 3, 5]);
        assert_eq!(s.max_height, 5);
        assert_eq!(s.point_count, 6);
        assert_eq!(s.count_per_value, BTreeMap::from([(1, 2), (2, 1), (3, 2), (5, 1)]));
        assert_eq!(s.gaps, vec![Gap { below: 3, above: 5 }]);
        assert_eq!(s.max_witness.to_string(), "<1,4>");

        let s = spectrum(pm(11), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.max_height, 11);
        assert!(s.values.iter().all(|&h| !(6 < h && h < 11)));

        let s = spectrum(pm(3), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.max_height, 4);
        assert_eq!(s.point_count, 13);
    }

    #[test]
    fn spectrum_budget() {
        let err = spectrum(pm(101), 4, 1000).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { required: 1_040_604, budget: 1000 });
        assert!(spectrum(pm(5), 1, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn spectrum_enumerates_each_class_once() {
        let p = pm(5);
        let d = 3;
        let n = point_count(p, d).unwrap();
        let mut seen = std::collections::HashSet::new();
        for i in 0..n {
            let pt = ProjectivePoint::from_residues(nth_point(p, d, i), p).unwrap();
            assert_eq!(pt.coords(), nth_point(p, d, i).as_slice());
            assert!(seen.insert(pt));
        }
        assert_eq!(seen.len(), 31);
    }

    #[test]
    fn bounds_check_examples() {
        let r = spectrum_bounds_check(pm(7), 2, DEFAULT_BUDGET).unwrap();
        assert!(r.holds);
        assert_eq!((r.max_height, r.lower, r.upper), (7, 7, 7));
        let r = spectrum_bounds_check(pm(5), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.max_height, r.holds), (10, true));
        let r = spectrum_bounds_check(pm(7), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.lower, r.upper), (8, 10));
        assert!(r.holds, "max {}", r.max_height);
    }

    #[test]
    fn gap_scan_examples() {
        let r = gap_scan(pm(29), 1, Ratio::new(1, 2), DEFAULT_BUDGET).unwrap();
        assert!(r.empty);
        assert_eq!((r.lower, r.upper), (Ratio::from_integer(15), Ratio::new(57, 2)));
        // (5.5, 11) contains the height 6 of <1,5> and <1,9>
        let r = gap_scan(pm(11), 1, Ratio::from_integer(0), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.inside, vec![6]);
        assert!(!r.empty);
        let r = gap_scan(pm(11), 1, Ratio::new(1, 2), DEFAULT_BUDGET).unwrap();
        assert!(r.empty);
        assert!(gap_scan(pm(11), 0, Ratio::from_integer(0), DEFAULT_BUDGET).is_err());
        assert!(gap_scan(pm(11), 1, Ratio::from_integer(-1), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn gap_scan_r2_p13() {
        // window (13/3, 13/2); line heights at p = 13 are {1,2,3,4,5,7,13}
        let s = spectrum(pm(13), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.values, vec![1, 2, 3, 4, 5, 7, 13]);
        let r = gap_report(&s, 2, Ratio::from_integer(0));
        assert_eq!(r.inside, vec![5]);
    }

    #[test]
    fn sum_free_examples() {
        let p = pm(7);
        let c = is_k_sum_free(&ResidueSet::new(&[1, 2], p).unwrap(), 3);
        assert!(c.ok);
        assert_eq!(c.witness, None);
        for q in [5u64, 7, 11, 101] {
            let m = pm(q);
            let c = is_k_sum_free(&ResidueSet::new(&[1, q as i64 - 1], m).unwrap(), 2);
            let w = c.witness.unwrap();
            assert_eq!(w.length, 2);
            assert_eq!(w.terms, vec![Residue::ONE, m.reduce(-1)]);

            let half = (q as i64 - 1) / 2;
            let c = is_k_sum_free(&ResidueSet::new(&[1, half], m).unwrap(), 3);
            let w = c.witness.unwrap();
            assert_eq!(w.length, 3);
            assert_eq!(w.terms, vec![Residue::ONE, m.reduce(half), m.reduce(half)]);
        }
        let c = is_k_sum_free(&ResidueSet::new(&[1, 2], pm(5)).unwrap(), 3);
        assert_eq!(c.witness.unwrap().terms, vec![Residue::ONE, pm(5).reduce(2), pm(5).reduce(2)]);
    }

    #[test]
    fn sum_free_matches_enumeration() {
        use itertools::Itertools;
        for p in [5u64, 7, 11, 13] {
            let m = pm(p);
            for set in crate::modular::scalar_classes(m, 2).into_iter().chain(crate::modular::scalar_classes(m, 3)) {
                for k in 1..=4 {
                    let brute = (1..=k).find_map(|l| {
                        set.elements()
                            .iter()
                            .combinations_with_replacement(l)
                            .find(|ms| ms.iter().map(|r| r.value() as u64).sum::<u64>() % p == 0)
                            .map(|ms| ms.into_iter().copied().collect::<Vec<_>>())
                    });
                    let cert = is_k_sum_free(&set, k);
                    assert_eq!(cert.ok, brute.is_none());
                    assert_eq!(cert.witness.map(|w| w.terms), brute, "p={p} set={set} k={k}");
                }
            }
        }
    }

    #[test]
    fn k_free_examples() {
        let r = max_height_k_free(pm(7), 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.best.as_ref().map(|b| b.height), Some(3));
        let r = max_height_k_free(pm(11), 2, 3, DEFAULT_BUDGET).unwrap();
        let best = r.best.unwrap();
        assert_eq!(best.height, 5);
        assert!(is_k_sum_free(&best.set, 3).ok);
        // every 2-set mod 5 has a vanishing sum of at most 3 terms
        let r = max_height_k_free(pm(5), 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.qualifying, r.best), (0, None));
        assert!(max_height_k_free(pm(101), 4, 3, 10).is_err());
    }
}
