//! Circuit codes of spread `k` in the `d`-dimensional hypercube.
//!
//! A circuit is handled through its [`TransitionSequence`], the cyclic list
//! of coordinates flipped along it. On top of that the crate provides
//!
//! * [`analysis`]: spread (two independent verifiers), bit runs, symmetry;
//! * [`construct`]: the symmetric long-bit-run family and published codes;
//! * [`subcircuit`]: coordinate-deletion projections and the spread test
//!   built on them;
//! * [`bounds`]: closed-form bounds on maximum code length;
//! * [`search`]: exhaustive canonical search for maximum-length codes.
//!
//! Lengths in [`bounds`] are generic over the integer type; [`Length`] and
//! [`BigLength`] are the two instantiations used in practice.

pub mod analysis;
pub mod bounds;
pub mod construct;
mod error;
pub mod sample;
pub mod search;
pub mod sequence;
pub mod subcircuit;

pub use analysis::{analyze, compute_spread, CodeReport, Spread};
pub use construct::{builtin_by_name, builtin_code, construct_form, corollary_projection, Builtin, FamilyParams};
pub use error::{Error, Result};
pub use search::{search_max, search_max_symmetric, SearchProblem, SearchResult};
pub use sequence::{Segment, TransitionSequence, Vertex, MAX_DIMENSION};
pub use subcircuit::{deimer_check, deimer_project, spread_via_characterization, Projection};

/// Machine-width code length.
pub type Length = u64;
/// Arbitrary-precision code length, for bounds that outgrow [`Length`].
pub type BigLength = num_bigint::BigUint;

pub type Bounds = bounds::BoundsReport<Length>;
pub type BigBounds = bounds::BoundsReport<BigLength>;
