//! Subcircuit codes: deleting every occurrence of one coordinate from a
//! transition sequence, and the spread characterization built on them.
//!
//! A circuit of length `N > 4(k-1)` in dimension `d >= k` has spread `k`
//! exactly when each of its `d` projections is a `(d-1, k-1)` circuit code.
//! The per-label checks are independent and run on the rayon pool; the
//! aggregate is a conjunction and does not depend on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::is_spread_at_least;
use crate::error::{Error, Result};
use crate::sequence::TransitionSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub source: TransitionSequence,
    /// Label removed, as numbered in `source`.
    pub removed_label: u32,
    /// How many times `removed_label` occurred (`n_i`).
    pub occurrences: usize,
    /// Remaining labels renumbered to `1..=d-1`, order preserved.
    pub result: TransitionSequence,
}

pub fn deimer_project(t: &TransitionSequence, label: u32) -> Result<Projection> {
    let d = t.dimension();
    if label == 0 || label as usize > d {
        return Err(Error::LabelOutOfRange {
            label,
            dimension: d,
        });
    }
    let occurrences = t.occurrences(label);
    if occurrences == 0 {
        return Err(Error::LabelAbsent(label));
    }
    let labels = t
        .labels()
        .iter()
        .filter(|&&l| l != label)
        .map(|&l| if l > label { l - 1 } else { l })
        .collect();
    Ok(Projection {
        source: t.clone(),
        removed_label: label,
        occurrences,
        result: TransitionSequence::new(labels, d - 1)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum LabelCheck {
    /// The projection is a circuit code of spread `k - 1`.
    Holds,
    Fails,
    /// The projection is shorter than `2(k - 1)`, so nothing is claimed.
    Inapplicable { projected_length: usize },
}

fn check_label(t: &TransitionSequence, label: u32, k: usize) -> Result<LabelCheck> {
    let proj = deimer_project(t, label)?.result;
    if proj.len() < 2 * (k - 1) {
        return Ok(LabelCheck::Inapplicable {
            projected_length: proj.len(),
        });
    }
    // Spread 0 constrains nothing beyond the walk closing up.
    let holds = if k == 1 {
        proj.closure() == 0
    } else {
        proj.is_circuit() && is_spread_at_least(&proj, k - 1)?
    };
    Ok(if holds {
        LabelCheck::Holds
    } else {
        LabelCheck::Fails
    })
}

/// For every label present in `t`, whether its projection is a circuit code
/// of spread `k - 1`.
pub fn deimer_check(t: &TransitionSequence, k: usize) -> Result<BTreeMap<u32, LabelCheck>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if !t.is_circuit() {
        return Err(Error::NotACircuit);
    }
    let present: Vec<u32> = (1..=t.dimension() as u32)
        .filter(|&l| t.occurrences(l) > 0)
        .collect();
    present
        .into_par_iter()
        .map(|l| check_label(t, l, k).map(|c| (l, c)))
        .collect()
}

/// Spread test through the projections alone.
///
/// Requires `k >= 2`, a circuit with `N > 4(k-1)`, and at least `k`
/// coordinates in use.
pub fn spread_via_characterization(t: &TransitionSequence, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must be at least 2")));
    }
    if !t.is_circuit() {
        return Err(Error::NotACircuit);
    }
    if t.len() <= 4 * (k - 1) {
        return Err(Error::Precondition(format!(
            "length {} must exceed 4(k-1) = {}",
            t.len(),
            4 * (k - 1)
        )));
    }
    if t.dimension_used() < k {
        return Err(Error::Precondition(format!(
            "{} coordinates in use, need at least k = {k}",
            t.dimension_used()
        )));
    }
    let checks = deimer_check(t, k)?;
    let mut all = true;
    for (label, check) in checks {
        match check {
            LabelCheck::Holds => {}
            LabelCheck::Fails => all = false,
            LabelCheck::Inapplicable { projected_length } => {
                return Err(Error::Precondition(format!(
                    "projection without label {label} has length {projected_length} < 2(k-1)"
                )))
            }
        }
    }
    Ok(all)
}
