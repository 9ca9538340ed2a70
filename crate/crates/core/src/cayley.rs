//! Cayley digraphs `(F_p, E_A)` with `E_A = {(x, x + a) : x in F_p, a in A}`.
//!
//! The multiplication-by-`k` orders `σ_k(i) = k i mod p` give deletion sets
//! whose sizes are the weights `sum_j (k^{-1} a_j mod p)`, so the height of
//! `<a_1, ..., a_d>` bounds the minimum feedback arc set `β(G)`.

use std::collections::VecDeque;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{self, DEFAULT_EXACT_CAP};
use crate::error::{Error, Result};
use crate::heights::{self, SumWitness};
use crate::modular::{odd_primes, scalar_class_candidates, scalar_classes, PrimeModulus, Residue, ResidueSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CayleyGraph {
    set: ResidueSet,
}

impl CayleyGraph {
    pub fn new(set: ResidueSet) -> Self {
        CayleyGraph { set }
    }

    pub fn from_raw(raw: &[i64], p: PrimeModulus) -> Result<Self> {
        ResidueSet::new(raw, p).map(Self::new)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.set.modulus()
    }

    pub fn connection_set(&self) -> &ResidueSet {
        &self.set
    }

    pub fn degree(&self) -> usize {
        self.set.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.modulus().get() as usize
    }

    pub fn has_edge(&self, u: Residue, v: Residue) -> bool {
        let p = self.modulus();
        self.set.contains(p.add(v, p.neg(u)))
    }

    /// All `d p` edges, ordered by source then connection element.
    pub fn edges(&self) -> Vec<(Residue, Residue)> {
        let p = self.modulus();
        (0..p.get() as i64)
            .flat_map(|x| {
                let x = p.reduce(x);
                self.set.elements().iter().map(move |&a| (x, p.add(x, a)))
            })
            .collect()
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (u.value() as usize, v.value() as usize))
            .collect()
    }

    /// Triangle-free means no directed cycle of length 1, 2 or 3; for a
    /// Cayley digraph that is exactly 3-sum-freeness of `A`.
    pub fn triangle_check(&self) -> TriangleCheck {
        let cert = heights::is_k_sum_free(&self.set, 3);
        TriangleCheck { triangle_free: cert.ok, witness: cert.witness }
    }

    pub fn is_triangle_free(&self) -> bool {
        self.triangle_check().triangle_free
    }

    pub fn has_digon(&self) -> bool {
        let p = self.modulus();
        self.set.elements().iter().any(|&a| self.set.contains(p.neg(a)))
    }

    /// `γ = p (p - 1 - 2d) / 2` when `G` has no digon (loops cannot occur).
    pub fn gamma_formula(&self) -> Option<u64> {
        if self.has_digon() {
            return None;
        }
        let p = self.modulus().as_u64();
        let d = self.degree() as u64;
        Some(p * (p - 1 - 2 * d) / 2)
    }

    /// Unordered vertex pairs joined by no edge in either direction.
    pub fn gamma_direct(&self) -> u64 {
        let p = self.modulus();
        let mut count = 0;
        for u in 0..p.get() as i64 {
            for v in u + 1..p.get() as i64 {
                let (u, v) = (p.reduce(u), p.reduce(v));
                if !self.has_edge(u, v) && !self.has_edge(v, u) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn gamma(&self) -> u64 {
        self.gamma_formula().unwrap_or_else(|| self.gamma_direct())
    }

    /// `σ_k(i) = k i mod p`, as a vertex order.
    pub fn sigma_order(&self, k: u32) -> Vec<usize> {
        let p = self.modulus();
        (0..p.as_u64()).map(|i| (i * k as u64 % p.as_u64()) as usize).collect()
    }

    /// Edges going backward in the order `σ_k`, generated from the residues
    /// `r_j = k^{-1} a_j`: the edge out of position `i` along `a_j` wraps
    /// around exactly when `p - r_j <= i <= p - 1`.
    pub fn deletion_set(&self, k: u64) -> Result<DeletionSet> {
        let p = self.modulus();
        if k == 0 || k >= p.as_u64() {
            return Err(Error::MultiplierOutOfRange { k, max: p.get() - 1 });
        }
        let k_res = p.reduce_u64(k);
        let inv = p.inverse(k_res)?;
        let mut edges = Vec::new();
        let mut closed_form_size = 0u64;
        for &a in self.set.elements() {
            let r = p.mul(inv, a).value() as u64;
            closed_form_size += r;
            for i in p.as_u64() - r..p.as_u64() {
                let source = p.mul(k_res, p.reduce_u64(i));
                edges.push((source, p.add(source, a)));
            }
        }
        edges.sort_unstable();
        Ok(DeletionSet { k: k as u32, edges, closed_form_size })
    }

    /// Number of edges of `E_A` going backward in `σ_k`, counted over the
    /// explicit edge list.
    pub fn backward_count(&self, k: u32) -> usize {
        digraph::backward_edges(&self.edge_list(), &self.sigma_order(k)).len()
    }

    /// `min_k |B_{σ_k}|` counted structurally, with the smallest minimizing `k`.
    pub fn beta_upper(&self) -> (u64, u32) {
        let edges = self.edge_list();
        (1..self.modulus().get())
            .map(|k| (digraph::backward_edges(&edges, &self.sigma_order(k)).len() as u64, k))
            .min()
            .expect("p >= 3")
    }

    pub fn beta_exact(&self, cap: usize) -> Result<u64> {
        digraph::beta_exact(self.vertex_count(), &self.edge_list(), cap)
    }

    /// Length of the shortest directed cycle: breadth-first search from 0 back to 0.
    /// Vertex-transitivity makes one source enough.
    pub fn shortest_cycle(&self) -> u64 {
        let p = self.modulus();
        let n = self.vertex_count();
        let mut dist = vec![u64::MAX; n];
        let mut queue = VecDeque::new();
        for &a in self.set.elements() {
            if dist[a.value() as usize] == u64::MAX {
                dist[a.value() as usize] = 1;
                queue.push_back(a);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u.value() as usize];
            if u.is_zero() {
                return du;
            }
            for &a in self.set.elements() {
                let v = p.add(u, a);
                if dist[v.value() as usize] == u64::MAX {
                    dist[v.value() as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        unreachable!("every nonzero element generates F_p")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleCheck {
    pub triangle_free: bool,
    pub witness: Option<SumWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionSet {
    pub k: u32,
    /// Sorted `(source, target)` pairs.
    pub edges: Vec<(Residue, Residue)>,
    /// `sum_j (k^{-1} a_j mod p)`
    pub closed_form_size: u64,
}

impl DeletionSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CssOptions {
    pub exact: bool,
    pub cap: usize,
}

impl Default for CssOptions {
    fn default() -> Self {
        CssOptions { exact: false, cap: DEFAULT_EXACT_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaReport {
    pub p: PrimeModulus,
    pub set: ResidueSet,
    pub d: usize,
    pub gamma: u64,
    pub beta_upper: u64,
    pub witness_k: u32,
    pub height: u64,
    pub beta_exact: Option<u64>,
    pub triangle_free: bool,
    pub triangle_witness: Option<SumWitness>,
    pub shortest_cycle: u64,
    pub tournament: bool,
    /// `γ/2 - min(beta_upper, beta_exact)`
    #[serde(serialize_with = "crate::ser::ratio")]
    pub css_margin: Ratio<i64>,
    /// Failed checks; empty when every applicable assertion holds.
    pub violations: Vec<String>,
}

impl BetaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Computes γ, the height bound and (optionally) the exact β, then checks
/// every relation that must hold for this instance.
pub fn css_check(g: &CayleyGraph, opts: CssOptions) -> Result<BetaReport> {
    let p = g.modulus();
    let q = p.as_u64();
    let d = g.degree();
    if opts.exact && g.vertex_count() > opts.cap {
        return Err(Error::CapExceeded { vertices: g.vertex_count(), cap: opts.cap });
    }

    let gamma = g.gamma();
    let (beta_upper, witness_k) = g.beta_upper();
    let point = g.set.point();
    let height = heights::height(&point).height;
    let beta_exact = if opts.exact { Some(g.beta_exact(opts.cap)?) } else { None };
    let tri = g.triangle_check();
    let shortest_cycle = g.shortest_cycle();
    let tournament = gamma == 0 && !g.has_digon();

    let mut violations = Vec::new();
    if beta_upper != height {
        violations.push(format!("min_k |B_k| = {beta_upper} differs from height {height}"));
    }
    if beta_upper > heights::height_upper_bound(&point) {
        violations.push(format!("beta_upper = {beta_upper} exceeds floor(dp/2)"));
    }
    if let Some(exact) = beta_exact {
        if exact > beta_upper {
            violations.push(format!("beta_exact = {exact} exceeds beta_upper = {beta_upper}"));
        }
        if tri.triangle_free && 2 * exact > gamma {
            violations.push(format!("triangle-free but beta_exact = {exact} > gamma/2 = {gamma}/2"));
        }
        if tri.triangle_free && tournament && exact != 0 {
            violations.push(format!("triangle-free tournament with beta_exact = {exact}"));
        }
    }
    if tri.triangle_free && d == 2 && q >= 7 {
        if 2 * beta_upper > q - 1 {
            violations.push(format!("beta_upper = {beta_upper} > (p-1)/2"));
        }
        if q - 1 > gamma {
            violations.push(format!("(p-1)/2 > gamma/2 = {gamma}/2"));
        }
    }
    for r in 1..=4u64 {
        if d as u64 * r >= q && shortest_cycle > r {
            violations.push(format!("d >= p/{r} but shortest cycle = {shortest_cycle}"));
        }
    }

    let best = beta_exact.map_or(beta_upper, |e| e.min(beta_upper));
    let css_margin = Ratio::new(gamma as i64, 2) - Ratio::from_integer(best as i64);

    Ok(BetaReport {
        p,
        set: g.set.clone(),
        d,
        gamma,
        beta_upper,
        witness_k,
        height,
        beta_exact,
        triangle_free: tri.triangle_free,
        triangle_witness: tri.witness,
        shortest_cycle,
        tournament,
        css_margin,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSummary {
    pub p: PrimeModulus,
    pub classes: usize,
    pub triangle_free: usize,
    /// `d > p/4`: the height bound `dp/2` no longer implies `β ≤ γ/2`.
    pub above_quarter: bool,
    /// `d < p/3`: triangle-free sets are possible.
    pub below_third: bool,
    /// Triangle-free classes with `d >= p/3`; always 0 if short cycles are forced.
    pub triangle_free_at_or_above_third: usize,
    pub max_height: u64,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub orbit_size: u32,
    pub report: BetaReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub p_max: u64,
    pub d: usize,
    pub exact: bool,
    pub primes: Vec<PrimeSummary>,
    pub records: Vec<ScanRecord>,
    pub instances: usize,
    pub triangle_free: usize,
    pub violations: usize,
}

/// Number of candidate sets [`scan_css`] would examine.
pub fn scan_candidates(p_max: u64, d: usize) -> u128 {
    odd_primes(3, p_max)
        .into_iter()
        .map(|p| scalar_class_candidates(PrimeModulus::new(p).expect("odd prime"), d))
        .sum()
}

/// Runs [`css_check`] on one connection set per scalar class, for every odd
/// prime `p <= p_max`. `A` and `cA` give isomorphic digraphs via `x -> cx`.
pub fn scan_css(p_max: u64, d: usize, opts: CssOptions, budget: u128) -> Result<ScanReport> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let candidates = scan_candidates(p_max, d);
    if candidates > budget {
        return Err(Error::BudgetExceeded { required: candidates, budget });
    }
    let primes: Vec<PrimeModulus> = odd_primes(3, p_max)
        .into_iter()
        .map(|p| PrimeModulus::new(p).expect("odd prime"))
        .filter(|p| d < p.get() as usize)
        .collect();
    if opts.exact {
        if let Some(p) = primes.iter().rev().find(|p| p.get() as usize > opts.cap) {
            return Err(Error::CapExceeded { vertices: p.get() as usize, cap: opts.cap });
        }
    }

    let instances: Vec<ResidueSet> = primes.iter().flat_map(|&p| scalar_classes(p, d)).collect();
    let records = instances
        .par_iter()
        .map(|set| {
            let report = css_check(&CayleyGraph::new(set.clone()), opts)?;
            Ok(ScanRecord { orbit_size: set.orbit_size(), report })
        })
        .collect::<Result<Vec<_>>>()?;

    let summaries = primes
        .iter()
        .map(|&p| {
            let q = p.as_u64();
            let rows: Vec<&BetaReport> = records.iter().map(|r| &r.report).filter(|r| r.p == p).collect();
            PrimeSummary {
                p,
                classes: rows.len(),
                triangle_free: rows.iter().filter(|r| r.triangle_free).count(),
                above_quarter: 4 * d as u64 > q,
                below_third: 3 * (d as u64) < q,
                triangle_free_at_or_above_third: rows
                    .iter()
                    .filter(|r| r.triangle_free && 3 * d as u64 >= q)
                    .count(),
                max_height: rows.iter().map(|r| r.height).max().unwrap_or(0),
                violations: rows.iter().filter(|r| !r.passed()).count(),
            }
        })
        .collect();

    Ok(ScanReport {
        p_max,
        d,
        exact: opts.exact,
        primes: summaries,
        instances: records.len(),
        triangle_free: records.iter().filter(|r| r.report.triangle_free).count(),
        violations: records.iter().filter(|r| !r.report.passed()).count(),
        records,
    })
}
