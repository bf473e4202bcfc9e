//! Explicit codes: the symmetric long-bit-run family, the two published
//! length-44 codes in dimension 16, and the even-spread projection.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequence::TransitionSequence;
use crate::subcircuit::deimer_project;

/// Parameters of the symmetric family: `k` odd, `l` even with `l >= 2` and
/// `k >= 2l + 1`. The family lives in dimension `d = (3k + l + 1) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    k: u32,
    l: u32,
}

impl FamilyParams {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k % 2 == 0 || l % 2 == 1 || l < 2 || k < 2 * l + 1 {
            return Err(Error::InvalidParameters(format!(
                "family needs k odd, l even >= 2 and k >= 2l+1; got k={k}, l={l}"
            )));
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn dimension(&self) -> u32 {
        (3 * self.k + self.l + 1) / 2
    }

    /// `4k + 2l`.
    pub fn length(&self) -> usize {
        (4 * self.k + 2 * self.l) as usize
    }
}

/// First half of a family member:
/// `1..=k+l`, then `2, 4, ..., 2l-2`, then `gamma_1, beta_1, gamma_2, beta_2, ...`
/// with `beta = 2l, 2l+2, ..., k+l-1` and `gamma = k+l+1, ..., d`.
pub fn family_half(p: FamilyParams) -> Vec<u32> {
    let (k, l, d) = (p.k, p.l, p.dimension());
    let mut half: Vec<u32> = (1..=k + l).collect();
    half.extend((2..=2 * l - 2).step_by(2));
    for s in 0..d - (k + l) {
        half.push(k + l + 1 + s);
        half.push(2 * l + 2 * s);
    }
    half
}

/// The symmetric code of length `4k + 2l` with spread `k` and a bit run of
/// length `k + l`.
pub fn construct_form(p: FamilyParams) -> TransitionSequence {
    let mut labels = family_half(p);
    labels.extend_from_within(..);
    TransitionSequence::new(labels, p.dimension() as usize)
        .expect("family labels lie in 1..=d")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// The (16, 9) code of length 44 with a bit run of 13.
    Example1,
    /// A second (16, 9) code of length 44 whose longest bit run is 12.
    Remark1Prime,
}

impl Builtin {
    pub const ALL: [Builtin; 2] = [Builtin::Example1, Builtin::Remark1Prime];

    pub fn name(&self) -> &'static str {
        match self {
            Builtin::Example1 => "example1",
            Builtin::Remark1Prime => "remark1_Tprime",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

const EXAMPLE1_HALF: [u32; 22] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 2, 4, 6, 14, 8, 15, 10, 16, 12,
];

const REMARK1_HALF: [u32; 22] = [
    1, 11, 2, 12, 3, 13, 4, 14, 5, 16, 15, 6, 11, 7, 12, 8, 13, 9, 14, 16, 10, 15,
];

pub fn builtin_code(which: Builtin) -> TransitionSequence {
    let half: &[u32] = match which {
        Builtin::Example1 => &EXAMPLE1_HALF,
        Builtin::Remark1Prime => &REMARK1_HALF,
    };
    TransitionSequence::new([half, half].concat(), 16).expect("published codes are in I(16)")
}

/// Looks a built-in code up by name (`example1`, `remark1_Tprime`).
pub fn builtin_by_name(name: &str) -> Result<TransitionSequence> {
    name.parse().map(builtin_code)
}

/// Even-spread code from the family: take the member at `(k + 1, l - 1)`
/// and delete its top coordinate, which occurs exactly twice. The result has
/// dimension `3k/2 + (l+1)/2`, length `4k + 2l` and spread at least `k`.
///
/// Requires `k` even, `l` odd `>= 3` and `k >= 2l - 2`.
pub fn corollary_projection(k: u32, l: u32) -> Result<TransitionSequence> {
    if k % 2 == 1 || l % 2 == 0 || l < 3 || k + 2 < 2 * l {
        return Err(Error::InvalidParameters(format!(
            "projection needs k even, l odd >= 3 and k >= 2l-2; got k={k}, l={l}"
        )));
    }
    let parent = FamilyParams::new(k + 1, l - 1)?;
    let top = parent.dimension();
    let projected = deimer_project(&construct_form(parent), top)?;
    Ok(projected.result.normalize().0)
}
