//! Residue arithmetic over `F_p` and canonical projective points.
//!
//! Moduli are odd primes below `2^31`, so every product of two residues fits
//! in a `u64` without overflow.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

/// Exclusive upper bound on supported moduli.
pub const MODULUS_LIMIT: u64 = 1 << 31;

/// Deterministic primality by trial division. Returns `false` for `n < 2`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut f = 5u64;
    while f.saturating_mul(f) <= n {
        if n % f == 0 || n % (f + 2) == 0 {
            return false;
        }
        f += 6;
    }
    true
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| n % 2 == 1 && is_prime(n)).collect()
}

/// A verified odd prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }

    /// Least nonnegative representative of `x mod p`; correct for negative `x`.
    #[inline]
    pub fn reduce(self, x: i64) -> Residue {
        Residue(x.rem_euclid(self.0 as i64) as u32)
    }

    #[inline]
    pub fn reduce_u64(self, x: u64) -> Residue {
        Residue((x % self.as_u64()) as u32)
    }

    #[inline]
    pub fn add(self, a: Residue, b: Residue) -> Residue {
        let s = a.0 as u64 + b.0 as u64;
        Residue(if s >= self.as_u64() { s - self.as_u64() } else { s } as u32)
    }

    #[inline]
    pub fn neg(self, a: Residue) -> Residue {
        if a.0 == 0 {
            a
        } else {
            Residue(self.0 - a.0)
        }
    }

    #[inline]
    pub fn mul(self, a: Residue, b: Residue) -> Residue {
        Residue(((a.0 as u64 * b.0 as u64) % self.as_u64()) as u32)
    }

    /// Multiplicative inverse in `[1, p-1]`, via the extended Euclidean algorithm.
    pub fn inverse(self, a: Residue) -> Result<Residue> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse(self.0));
        }
        let (mut r0, mut r1) = (self.0 as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce(t0))
    }

    /// Nonzero residues `1..p-1`.
    pub fn units(self) -> impl Iterator<Item = Residue> {
        (1..self.0).map(Residue)
    }

    /// `(p-1)/2`
    pub fn half_below(self) -> u32 {
        (self.0 - 1) / 2
    }

    /// `(p+1)/2`
    pub fn half_above(self) -> u32 {
        (self.0 + 1) / 2
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `F_p`, stored as its least nonnegative representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Residue(u32);

impl Residue {
    pub const ZERO: Residue = Residue(0);
    pub const ONE: Residue = Residue(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn mod_reduce(x: i64, p: PrimeModulus) -> Residue {
    p.reduce(x)
}

pub fn mod_inverse(a: Residue, p: PrimeModulus) -> Result<Residue> {
    p.inverse(a)
}

/// A point of `P^(d-1)(F_p)` in canonical form: the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectivePoint {
    p: PrimeModulus,
    coords: Vec<Residue>,
}

impl ProjectivePoint {
    /// Reduces `raw` modulo `p` and rescales to the canonical representative.
    pub fn canonicalize(raw: &[i64], p: PrimeModulus) -> Result<Self> {
        let reduced: Vec<Residue> = raw.iter().map(|&x| p.reduce(x)).collect();
        Self::from_residues(reduced, p)
    }

    pub fn from_residues(mut coords: Vec<Residue>, p: PrimeModulus) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        let lead = *coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        if lead != Residue::ONE {
            let scale = p.inverse(lead)?;
            for c in coords.iter_mut() {
                *c = p.mul(*c, scale);
            }
        }
        Ok(ProjectivePoint { p, coords })
    }

    /// The point `<1, a>` on the projective line.
    pub fn line(a: Residue, p: PrimeModulus) -> Self {
        ProjectivePoint { p, coords: vec![Residue::ONE, p.reduce_u64(a.0 as u64)] }
    }

    pub(crate) fn from_canonical_unchecked(coords: Vec<Residue>, p: PrimeModulus) -> Self {
        debug_assert_eq!(coords.iter().find(|c| !c.is_zero()), Some(&Residue::ONE));
        ProjectivePoint { p, coords }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn coords(&self) -> &[Residue] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// Number of nonzero coordinates.
    pub fn d_star(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }

    /// Canonical form of the class of `c * self`, for a unit `c`.
    pub fn scaled(&self, c: Residue) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroVector);
        }
        let coords = self.coords.iter().map(|&x| self.p.mul(x, c)).collect();
        Self::from_residues(coords, self.p)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.coords.iter().join(","))
    }
}

pub fn canonicalize(raw: &[i64], p: PrimeModulus) -> Result<ProjectivePoint> {
    ProjectivePoint::canonicalize(raw, p)
}

pub fn d_star(a: &ProjectivePoint) -> usize {
    a.d_star()
}

/// A nonempty, sorted set of distinct nonzero residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueSet {
    p: PrimeModulus,
    elements: Vec<Residue>,
}

impl ResidueSet {
    /// Builds a set from raw integers. Duplicates and zero (after reduction) are rejected.
    pub fn new(raw: &[i64], p: PrimeModulus) -> Result<Self> {
        let elements: Vec<Residue> = raw.iter().map(|&x| p.reduce(x)).collect();
        Self::from_residues(elements, p)
    }

    pub fn from_residues(mut elements: Vec<Residue>, p: PrimeModulus) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidSet("set is empty".into()));
        }
        if elements.iter().any(|e| e.is_zero()) {
            return Err(Error::InvalidSet("0 is not allowed".into()));
        }
        if elements.iter().any(|e| e.value() >= p.get()) {
            return Err(Error::InvalidSet("element not reduced modulo p".into()));
        }
        elements.sort_unstable();
        let len = elements.len();
        elements.dedup();
        if elements.len() != len {
            return Err(Error::InvalidSet("elements must be distinct".into()));
        }
        Ok(ResidueSet { p, elements })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn elements(&self) -> &[Residue] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, r: Residue) -> bool {
        self.elements.binary_search(&r).is_ok()
    }

    /// `cA`, re-sorted.
    pub fn scaled(&self, c: Residue) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidSet("scaling by 0".into()));
        }
        let mut elements: Vec<Residue> = self.elements.iter().map(|&a| self.p.mul(a, c)).collect();
        elements.sort_unstable();
        Ok(ResidueSet { p: self.p, elements })
    }

    /// The point `<a_1, ..., a_d>` with coordinates in ascending order.
    pub fn point(&self) -> ProjectivePoint {
        ProjectivePoint::from_residues(self.elements.clone(), self.p)
            .expect("nonempty set of units")
    }

    /// Lexicographically least member of the scalar orbit `{cA : c in F_p*}`.
    pub fn canonical(&self) -> Self {
        let mut best = self.clone();
        for &a in &self.elements {
            let inv = self.p.inverse(a).expect("unit");
            let cand = self.scaled(inv).expect("unit");
            if cand.elements.cmp(&best.elements) == Ordering::Less {
                best = cand;
            }
        }
        best
    }

    /// Number of distinct sets in the scalar orbit of `self`.
    pub fn orbit_size(&self) -> u32 {
        let stabilizer = self
            .elements
            .iter()
            .filter(|&&c| self.scaled(c).expect("unit").elements == self.elements)
            .count() as u32;
        (self.p.get() - 1) / stabilizer
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.iter().join(","))
    }
}

/// `C(n, k)`, saturating.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of candidate sets examined by [`scalar_classes`]: `C(p-2, d-1)`.
pub fn scalar_class_candidates(p: PrimeModulus, d: usize) -> u128 {
    if d == 0 || d as u64 > p.as_u64() - 1 {
        return 0;
    }
    binomial(p.as_u64() - 2, d as u64 - 1)
}

/// One representative per scalar-equivalence class of `d`-subsets of `F_p*`,
/// in ascending lexicographic order. Every representative contains 1 and is
/// the least member of its orbit.
pub fn scalar_classes(p: PrimeModulus, d: usize) -> Vec<ResidueSet> {
    if d == 0 || d as u64 > p.as_u64() - 1 {
        return Vec::new();
    }
    (2..p.get())
        .map(Residue)
        .combinations(d - 1)
        .filter_map(|rest| {
            let mut elements = Vec::with_capacity(d);
            elements.push(Residue::ONE);
            elements.extend(rest);
            let set = ResidueSet { p, elements };
            (set.canonical() == set).then_some(set)
        })
        .collect()
}
