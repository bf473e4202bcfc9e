//! Brute-force reference implementations. Nothing here touches the library's
//! bitvector or prefix-parity machinery: vertices are explicit 0/1 vectors and
//! every quantity is recomputed from its definition.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vertices(labels: &[u32], d: usize) -> Vec<Vec<u8>> {
    let mut x = vec![0u8; d];
    let mut out = Vec::new();
    for &l in labels {
        out.push(x.clone());
        x[l as usize - 1] ^= 1;
    }
    out
}

pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Definition-level spread check: closer than `k` in the cube implies equally
/// close along the cycle.
pub fn spread_holds(labels: &[u32], d: usize, k: usize) -> bool {
    let xs = vertices(labels, d);
    let n = xs.len();
    for i in 0..n {
        for j in 0..n {
            let h = hamming(&xs[i], &xs[j]);
            let along = {
                let p = if i > j { i - j } else { j - i };
                p.min(n - p)
            };
            if h < k && along != h {
                return false;
            }
        }
    }
    true
}

/// Largest `k <= N/2` for which the definition holds, and whether it holds
/// for every `k`.
pub fn spread(labels: &[u32], d: usize) -> (usize, bool) {
    let n = labels.len();
    if spread_holds(labels, d, n + 1) {
        return (n / 2, true);
    }
    let best = (1..=n / 2).rev().find(|&k| spread_holds(labels, d, k)).unwrap_or(0);
    (best, false)
}

pub fn odd_count(window: &[u32]) -> usize {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &l in window {
        *counts.entry(l).or_default() += 1;
    }
    counts.values().filter(|&&c| c % 2 == 1).count()
}

fn cyclic_window(labels: &[u32], start: usize, len: usize) -> Vec<u32> {
    (0..len).map(|o| labels[(start + o) % labels.len()]).collect()
}

fn all_distinct(window: &[u32]) -> bool {
    window.iter().collect::<HashSet<_>>().len() == window.len()
}

/// `(phi, xi)` by trying every window.
pub fn bit_runs(labels: &[u32]) -> (usize, usize) {
    let n = labels.len();
    let ok = |len: usize| (0..n).map(|s| all_distinct(&cyclic_window(labels, s, len))).collect::<Vec<_>>();
    let phi = (1..=n).rev().find(|&len| ok(len).iter().any(|&b| b)).unwrap_or(0);
    let xi = (1..=n).rev().find(|&len| ok(len).iter().all(|&b| b)).unwrap_or(0);
    (phi, xi)
}

pub fn is_closed_simple(labels: &[u32], d: usize) -> bool {
    let xs = vertices(labels, d);
    let mut last = xs.last().cloned().unwrap_or_default();
    if let Some(&l) = labels.last() {
        last[l as usize - 1] ^= 1;
    }
    labels.len() >= 4
        && last.iter().all(|&b| b == 0)
        && xs.iter().collect::<HashSet<_>>().len() == xs.len()
}

pub const EXAMPLE1: [u32; 44] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 2, 4, 6, 14, 8, 15, 10, 16, 12, //
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 2, 4, 6, 14, 8, 15, 10, 16, 12,
];

pub const REMARK1: [u32; 44] = [
    1, 11, 2, 12, 3, 13, 4, 14, 5, 16, 15, 6, 11, 7, 12, 8, 13, 9, 14, 16, 10, 15, //
    1, 11, 2, 12, 3, 13, 4, 14, 5, 16, 15, 6, 11, 7, 12, 8, 13, 9, 14, 16, 10, 15,
];
