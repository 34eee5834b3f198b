//! Brute-force reference evaluations. Works on plain vectors of labels and
//! shares no code with the crate's depth walk or closed-form tail.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rps_conflict::OrderedFocalSet;

/// Materialises a sequence to `len` positions. Open tails become the shared
/// run of fresh labels 1000, 1001, ...
pub fn materialize(seq: &OrderedFocalSet, len: usize) -> Vec<usize> {
    let mut out: Vec<usize> = seq.elements().to_vec();
    if seq.is_open() {
        let mut fresh = 1000;
        while out.len() < len {
            out.push(fresh);
            fresh += 1;
        }
    }
    out
}

fn prefix(list: &[usize], d: usize) -> BTreeSet<usize> {
    list.iter().take(d).copied().collect()
}

pub fn inc(a: &[usize], b: &[usize], d: usize) -> f64 {
    let pa = prefix(a, d);
    let pb = prefix(b, d);
    let common = pa.intersection(&pb).count();
    (pa.len().max(pb.len()) - common) as f64 / d as f64
}

pub fn agreement(a: &[usize], b: &[usize], d: usize) -> f64 {
    prefix(a, d).intersection(&prefix(b, d)).count() as f64 / d as f64
}

pub fn k_uniform(a: &[usize], b: &[usize], n: usize) -> f64 {
    (1..=n).map(|d| inc(a, b, d)).sum::<f64>() / n as f64
}

pub fn k_weighted(a: &[usize], b: &[usize], weights: &[f64]) -> f64 {
    weights
        .iter()
        .enumerate()
        .map(|(k, w)| w * inc(a, b, k + 1))
        .sum()
}

pub fn geometric_weights(p: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|d| (1.0 - p) * p.powi(d as i32 - 1)).collect()
}

/// Partial sum of the geometric series to a depth whose neglected tail is below `eps`.
pub fn k_geometric_partial(a: &OrderedFocalSet, b: &OrderedFocalSet, p: f64, eps: f64) -> f64 {
    // The neglected tail is at most sum_{d > D} (1 - p) p^(d-1) = p^D.
    let mut depth = a.len().max(b.len()).max(1);
    while p.powi(depth as i32) > eps {
        depth += 1;
    }
    let la = materialize(a, depth);
    let lb = materialize(b, depth);
    k_weighted(&la, &lb, &geometric_weights(p, depth))
}

/// All arrangements of `items`, in no particular order.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every ordered focal set on a frame of `n` elements, the empty one included.
pub fn all_sequences(n: usize) -> Vec<OrderedFocalSet> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let items: Vec<usize> = (0..n).filter(|t| mask & (1 << t) != 0).collect();
        for p in permutations(&items) {
            out.push(OrderedFocalSet::new(p).unwrap());
        }
    }
    out
}
