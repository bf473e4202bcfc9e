//! Random circuits and small perturbations of codes, for property tests and
//! cross-validation of the verifiers.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::search::admit_vertex;
use crate::sequence::{label_mask, TransitionSequence};

/// A random simple cycle in the `d`-cube with at most `max_len` edges, built
/// as a self-avoiding walk from zero that closes with probability
/// `close_prob` whenever it touches a neighbor of zero. `None` if every
/// attempt got stuck.
pub fn random_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    max_len: usize,
    close_prob: f64,
) -> Option<TransitionSequence> {
    random_walk_code(rng, d, 1, max_len, close_prob)
}

/// Like [`random_circuit`], but every step keeps the walk extendable to a
/// code of spread `k`, so the result (if any) has spread at least `k`.
pub fn random_code<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    k: usize,
    max_len: usize,
    close_prob: f64,
) -> Option<TransitionSequence> {
    random_walk_code(rng, d, k.max(1), max_len, close_prob)
}

fn random_walk_code<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    k: usize,
    max_len: usize,
    close_prob: f64,
) -> Option<TransitionSequence> {
    let min_len = 4.max(2 * k);
    let all: Vec<u32> = (1..=d as u32).collect();
    for _ in 0..64 {
        let mut verts = vec![0u64];
        let mut labels = Vec::new();
        let mut forced: Option<usize> = None;
        loop {
            let here = *verts.last().unwrap();
            let m = verts.len();
            let closable = here.count_ones() == 1
                && m >= min_len
                && forced.map_or(true, |f| f == m);
            if closable && (rng.gen_bool(close_prob) || forced == Some(m)) {
                labels.push(here.trailing_zeros() + 1);
                return TransitionSequence::new(labels, d).ok();
            }
            if m >= max_len || forced.is_some_and(|f| f <= m) {
                break;
            }
            let mut order = all.clone();
            order.shuffle(rng);
            let step = order.into_iter().find_map(|l| {
                let next = here ^ label_mask(l);
                admit_vertex(&verts, next, k, forced)
                    .filter(|f| f.map_or(true, |n| n >= min_len && n <= max_len))
                    .map(|f| (l, next, f))
            });
            match step {
                Some((l, next, f)) => {
                    labels.push(l);
                    verts.push(next);
                    forced = f;
                }
                None => break,
            }
        }
    }
    None
}

/// Every circuit obtained by swapping two cyclically adjacent transitions.
pub fn adjacent_swaps(t: &TransitionSequence) -> Vec<TransitionSequence> {
    let n = t.len();
    (0..n)
        .filter_map(|i| {
            let mut labels = t.labels().to_vec();
            labels.swap(i, (i + 1) % n);
            TransitionSequence::new(labels, t.dimension())
                .ok()
                .filter(|m| m.is_circuit() && m != t)
        })
        .collect()
}

/// Replaces transition `i` and the transition `N/2` further on by `label`.
/// Both copies change, so the walk still closes; `None` if the result is
/// not a circuit.
pub fn paired_substitution(t: &TransitionSequence, i: usize, label: u32) -> Option<TransitionSequence> {
    let n = t.len();
    if n == 0 || n % 2 == 1 {
        return None;
    }
    let mut labels = t.labels().to_vec();
    labels[i % n] = label;
    labels[(i + n / 2) % n] = label;
    TransitionSequence::new(labels, t.dimension())
        .ok()
        .filter(|m| m.is_circuit() && m != t)
}
