//! Spread verification, bit runs, symmetry and the aggregated [`CodeReport`].
//!
//! Two spread verifiers are provided. [`is_spread_at_least`] checks the
//! defining condition directly over all vertex pairs and is the ground
//! truth; [`is_spread_at_least_klee`] checks Klee's segment condition and is
//! kept as an independent cross-check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{label_mask, TransitionSequence, Vertex};

/// Hamming distance, i.e. the distance in the hypercube graph.
pub fn cube_distance(x: &Vertex, y: &Vertex) -> Result<usize> {
    if x.dimension() != y.dimension() {
        return Err(Error::DimensionMismatch(x.dimension(), y.dimension()));
    }
    Ok((x.bits() ^ y.bits()).count_ones() as usize)
}

/// Distance along a cycle of `n` vertices between 1-based positions `i`, `j`.
pub fn code_distance(i: usize, j: usize, n: usize) -> Result<usize> {
    for index in [i, j] {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
    }
    let p = i.abs_diff(j);
    Ok(p.min(n - p))
}

/// Smallest cube distance over pairs whose cycle distance exceeds their cube
/// distance. Stops early once a pair below `stop_below` is seen.
fn min_shortcut(verts: &[u64], stop_below: usize) -> Option<usize> {
    let n = verts.len();
    let mut best: Option<usize> = None;
    for i in 0..n {
        let xi = verts[i];
        for (off, &xj) in verts[i + 1..].iter().enumerate() {
            let p = off + 1;
            let along = p.min(n - p);
            let h = (xi ^ xj).count_ones() as usize;
            if along > h && best.map_or(true, |b| h < b) {
                best = Some(h);
                if h < stop_below {
                    return best;
                }
            }
        }
    }
    best
}

fn require_circuit(t: &TransitionSequence) -> Result<()> {
    if t.is_circuit() {
        Ok(())
    } else {
        Err(Error::NotACircuit)
    }
}

/// Every pair of vertices closer than `k` in the cube must be exactly that
/// close along the circuit.
pub fn is_spread_at_least(t: &TransitionSequence, k: usize) -> Result<bool> {
    require_circuit(t)?;
    Ok(match min_shortcut(&t.vertex_bits(), k) {
        Some(h) => h >= k,
        None => true,
    })
}

/// Klee's condition: every segment of length `k..=N/2` flips at least `k`
/// coordinates an odd number of times. Requires `N >= 2k`.
pub fn is_spread_at_least_klee(t: &TransitionSequence, k: usize) -> Result<bool> {
    require_circuit(t)?;
    let n = t.len();
    if n < 2 * k {
        return Err(Error::TooShortForKlee { length: n, k });
    }
    let labels = t.labels();
    let half = n / 2;
    for start in 0..n {
        let mut parity = 0u64;
        for len in 1..=half {
            parity ^= label_mask(labels[(start + len - 1) % n]);
            if len >= k && (parity.count_ones() as usize) < k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest verified spread of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Spread {
    pub value: usize,
    /// No pair of vertices takes a shortcut through the cube, so every `k`
    /// holds; `value` is then reported as `N / 2`.
    pub capped: bool,
}

pub fn compute_spread(t: &TransitionSequence) -> Result<Spread> {
    require_circuit(t)?;
    Ok(match min_shortcut(&t.vertex_bits(), 0) {
        Some(value) => Spread {
            value,
            capped: false,
        },
        None => Spread {
            value: t.len() / 2,
            capped: true,
        },
    })
}

/// Length of the longest repeat-free run starting at each position, cyclic,
/// capped at `N`.
fn runs_from_each_start(labels: &[u32]) -> Vec<usize> {
    let n = labels.len();
    let mut window = 0u64;
    let mut end = 0usize;
    let mut runs = Vec::with_capacity(n);
    for start in 0..n {
        while end - start < n && window & label_mask(labels[end % n]) == 0 {
            window |= label_mask(labels[end % n]);
            end += 1;
        }
        runs.push(end - start);
        window &= !label_mask(labels[start]);
    }
    runs
}

/// `phi`: the longest cyclic window without a repeated label.
pub fn max_bit_run(t: &TransitionSequence) -> Result<usize> {
    runs_from_each_start(t.labels())
        .into_iter()
        .max()
        .ok_or(Error::EmptySequence)
}

/// `xi`: the largest `m` such that every cyclic window of length `m` is
/// repeat-free.
pub fn min_bit_run(t: &TransitionSequence) -> Result<usize> {
    runs_from_each_start(t.labels())
        .into_iter()
        .min()
        .ok_or(Error::EmptySequence)
}

/// `tau_i == tau_{i + N/2}` for every `i`.
pub fn is_symmetric(t: &TransitionSequence) -> bool {
    let labels = t.labels();
    labels.len() % 2 == 0 && {
        let (a, b) = labels.split_at(labels.len() / 2);
        a == b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub dimension_declared: usize,
    pub dimension: usize,
    pub length: usize,
    pub is_circuit: bool,
    /// `None` for anything that is not a circuit.
    pub spread: Option<usize>,
    pub spread_capped: bool,
    pub phi: Option<usize>,
    pub xi: Option<usize>,
    pub symmetric: bool,
}

pub fn analyze(t: &TransitionSequence) -> CodeReport {
    let is_circuit = t.is_circuit();
    let spread = if is_circuit { compute_spread(t).ok() } else { None };
    CodeReport {
        dimension_declared: t.dimension(),
        dimension: t.dimension_used(),
        length: t.len(),
        is_circuit,
        spread: spread.map(|s| s.value),
        spread_capped: spread.map_or(false, |s| s.capped),
        phi: max_bit_run(t).ok(),
        xi: min_bit_run(t).ok(),
        symmetric: is_symmetric(t),
    }
}
