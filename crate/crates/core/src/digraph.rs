//! Plain digraphs on vertices `0..m`, given as edge lists.

use crate::error::{Error, Result};

/// Default vertex cap for [`min_feedback_arc_set`].
pub const DEFAULT_EXACT_CAP: usize = 24;

/// Largest cap the subset table can address.
pub const MAX_EXACT_CAP: usize = 30;

fn check_edges(m: usize, edges: &[(usize, usize)]) -> Result<()> {
    match edges.iter().find(|&&(u, v)| u >= m || v >= m) {
        Some(&(u, v)) => Err(Error::InvalidParameter(format!("edge ({u}, {v}) leaves vertex range 0..{m}"))),
        None => Ok(()),
    }
}

/// True iff the digraph has no directed cycle.
///
/// Repeatedly strips vertices of outdegree 0; a cycle is exactly what
/// survives.
pub fn is_acyclic(m: usize, edges: &[(usize, usize)]) -> bool {
    assert!(check_edges(m, edges).is_ok(), "edge endpoint out of range");
    let mut outdeg = vec![0usize; m];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(u, v) in edges {
        outdeg[u] += 1;
        preds[v].push(u);
    }
    let mut sinks: Vec<usize> = (0..m).filter(|&v| outdeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = sinks.pop() {
        removed += 1;
        for &u in &preds[v] {
            outdeg[u] -= 1;
            if outdeg[u] == 0 {
                sinks.push(u);
            }
        }
    }
    removed == m
}

/// Edges that point backward (or are loops) relative to `order`: `(order[r], order[s])`
/// with `r >= s`. Deleting them leaves an acyclic digraph.
pub fn backward_edges(edges: &[(usize, usize)], order: &[usize]) -> Vec<(usize, usize)> {
    let mut position = vec![usize::MAX; order.len()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    edges.iter().copied().filter(|&(u, v)| position[u] >= position[v]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeedbackArcSet {
    pub size: u64,
    /// A vertex order whose backward edges form a minimum feedback arc set.
    pub order: Vec<usize>,
    pub removed: Vec<(usize, usize)>,
}

/// Exact minimum feedback arc set by dynamic programming over vertex subsets.
///
/// `best(S)` is the largest number of edges inside `S` that point forward in
/// some ordering of `S`; the last vertex `v` of that ordering collects every
/// edge from `S \ {v}`. Time `O(2^m m)`, space `O(2^m)`.
pub fn min_feedback_arc_set(m: usize, edges: &[(usize, usize)], cap: usize) -> Result<FeedbackArcSet> {
    let cap = cap.min(MAX_EXACT_CAP);
    if m > cap {
        return Err(Error::CapExceeded { vertices: m, cap });
    }
    check_edges(m, edges)?;
    if m == 0 {
        return Ok(FeedbackArcSet { size: 0, order: Vec::new(), removed: Vec::new() });
    }

    // pred[v]: vertices u != v with an edge u -> v
    let mut pred = vec![0u32; m];
    for &(u, v) in edges {
        if u != v {
            pred[v] |= 1 << u;
        }
    }

    let full: u32 = (1u32 << m) - 1;
    let mut best = vec![0u16; full as usize + 1];
    for s in 1..=full {
        let mut top = 0u16;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            let val = best[without as usize] + (pred[v] & without).count_ones() as u16;
            if val > top {
                top = val;
            }
        }
        best[s as usize] = top;
    }

    let mut order = Vec::with_capacity(m);
    let mut s = full;
    while s != 0 {
        let mut rest = s;
        let v = loop {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            if best[without as usize] + (pred[v] & without).count_ones() as u16 == best[s as usize] {
                break v;
            }
        };
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();

    let removed = backward_edges(edges, &order);
    Ok(FeedbackArcSet { size: removed.len() as u64, order, removed })
}

/// Size of a minimum feedback arc set.
pub fn beta_exact(m: usize, edges: &[(usize, usize)], cap: usize) -> Result<u64> {
    min_feedback_arc_set(m, edges, cap).map(|f| f.size)
}
