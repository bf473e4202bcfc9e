//! Transition sequences, the vertices they trace out in the hypercube, and
//! cyclic segments.
//!
//! A circuit `x_1, ..., x_N` in the `d`-cube is stored as the list of
//! coordinates flipped between consecutive vertices. Labels are 1-based on
//! every public surface; vertex `x_1` is always the all-zeros vector.

use std::fmt;

use crate::error::{Error, Result};

/// Widest hypercube a [`Vertex`] can represent.
pub const MAX_DIMENSION: usize = 64;

#[inline]
pub(crate) fn label_mask(label: u32) -> u64 {
    1u64 << (label - 1)
}

/// A vertex of the `d`-cube as a bitvector; bit `i - 1` holds coordinate `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    bits: u64,
    dimension: usize,
}

impl Vertex {
    pub fn new(bits: u64, dimension: usize) -> Result<Self> {
        if dimension > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge(dimension));
        }
        if dimension < MAX_DIMENSION && bits >> dimension != 0 {
            return Err(Error::Precondition(format!(
                "bits {bits:#x} do not fit in dimension {dimension}"
            )));
        }
        Ok(Self { bits, dimension })
    }

    pub fn zero(dimension: usize) -> Self {
        Self { bits: 0, dimension }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of coordinates set to one.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Flips coordinate `label` (1-based).
    pub fn flip(self, label: u32) -> Self {
        Self {
            bits: self.bits ^ label_mask(label),
            dimension: self.dimension,
        }
    }
}

impl fmt::Display for Vertex {
    /// Coordinate 1 first, so `10` is the vertex with only coordinate 1 set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dimension {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The cyclic sequence of coordinate labels flipped along a closed walk.
///
/// Any label list within `1..=dimension` is representable, including odd
/// lengths and walks that do not close; [`is_circuit`](Self::is_circuit)
/// tells the two apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionSequence {
    labels: Vec<u32>,
    dimension: usize,
}

impl TransitionSequence {
    pub fn new(labels: Vec<u32>, dimension: usize) -> Result<Self> {
        if dimension > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge(dimension));
        }
        if let Some(&label) = labels
            .iter()
            .find(|&&l| l == 0 || l as usize > dimension)
        {
            return Err(Error::LabelOutOfRange { label, dimension });
        }
        Ok(Self { labels, dimension })
    }

    /// Builds a sequence whose declared dimension is its largest label.
    pub fn from_labels(labels: Vec<u32>) -> Result<Self> {
        let dimension = labels.iter().copied().max().unwrap_or(0) as usize;
        Self::new(labels, dimension)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Declared dimension `d`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of distinct labels actually present.
    pub fn dimension_used(&self) -> usize {
        self.used_mask().count_ones() as usize
    }

    pub(crate) fn used_mask(&self) -> u64 {
        self.labels.iter().fold(0, |m, &l| m | label_mask(l))
    }

    pub fn occurrences(&self, label: u32) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Bit patterns of `x_1, ..., x_N`, starting from zero.
    pub(crate) fn vertex_bits(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.labels.len());
        let mut v = 0u64;
        for &l in &self.labels {
            out.push(v);
            v ^= label_mask(l);
        }
        out
    }

    /// The `N` vertices of the walk; `x_{i+1}` differs from `x_i` exactly in
    /// coordinate `tau_i`.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.vertex_bits()
            .into_iter()
            .map(|bits| Vertex {
                bits,
                dimension: self.dimension,
            })
            .collect()
    }

    /// XOR of every transition; zero iff the walk closes.
    pub fn closure(&self) -> u64 {
        self.labels.iter().fold(0, |v, &l| v ^ label_mask(l))
    }

    /// True for a simple cycle of length at least four.
    pub fn is_circuit(&self) -> bool {
        if self.labels.len() < 4 || self.closure() != 0 {
            return false;
        }
        let mut bits = self.vertex_bits();
        bits.sort_unstable();
        bits.windows(2).all(|w| w[0] != w[1])
    }

    pub fn segment(&self, start: usize, len: usize) -> Result<Segment<'_>> {
        Segment::new(self, start, len)
    }

    pub fn whole(&self) -> Segment<'_> {
        Segment {
            parent: self,
            start: 0,
            len: self.labels.len(),
        }
    }

    /// Relabels the distinct labels to `1..=m` in order of first occurrence.
    /// Returns the relabeled sequence (declared dimension `m`) and `m`.
    pub fn normalize(&self) -> (Self, usize) {
        let mut map = [0u32; MAX_DIMENSION + 1];
        let mut next = 0u32;
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                let slot = &mut map[l as usize];
                if *slot == 0 {
                    next += 1;
                    *slot = next;
                }
                *slot
            })
            .collect();
        let m = next as usize;
        (
            Self {
                labels,
                dimension: m,
            },
            m,
        )
    }

    /// Same cycle read from position `shift`.
    pub fn rotated(&self, shift: usize) -> Self {
        let mut labels = self.labels.clone();
        if !labels.is_empty() {
            let n = labels.len();
            labels.rotate_left(shift % n);
        }
        Self {
            labels,
            dimension: self.dimension,
        }
    }

    /// Same cycle traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut labels = self.labels.clone();
        labels.reverse();
        Self {
            labels,
            dimension: self.dimension,
        }
    }

    /// Applies a coordinate permutation; `perm[l - 1]` is the new label of `l`.
    pub fn relabeled(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.dimension {
            return Err(Error::Precondition(format!(
                "permutation has {} entries for dimension {}",
                perm.len(),
                self.dimension
            )));
        }
        let mut seen = vec![false; self.dimension];
        for &p in perm {
            if p == 0 || p as usize > self.dimension || seen[p as usize - 1] {
                return Err(Error::Precondition("not a permutation".into()));
            }
            seen[p as usize - 1] = true;
        }
        Ok(Self {
            labels: self.labels.iter().map(|&l| perm[l as usize - 1]).collect(),
            dimension: self.dimension,
        })
    }
}

impl fmt::Display for TransitionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A cyclic window `start, start + 1, ..., start + len - 1 (mod N)` of a
/// transition sequence.
///
/// The path from `x_i` to `x_j` (`i < j`) uses the segment
/// `(tau_i, ..., tau_{j-1})`, i.e. `start = i - 1` and `len = j - i`.
#[derive(Debug, Clone, Copy)]
pub struct Segment<'a> {
    parent: &'a TransitionSequence,
    start: usize,
    len: usize,
}

impl<'a> Segment<'a> {
    pub fn new(parent: &'a TransitionSequence, start: usize, len: usize) -> Result<Self> {
        let n = parent.len();
        if len > n {
            return Err(Error::Precondition(format!(
                "segment length {len} exceeds sequence length {n}"
            )));
        }
        if start >= n.max(1) {
            return Err(Error::IndexOutOfRange {
                index: start,
                len: n,
            });
        }
        Ok(Self { parent, start, len })
    }

    pub fn parent(&self) -> &'a TransitionSequence {
        self.parent
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> + 'a {
        let seq = self.parent.labels();
        let n = seq.len();
        let start = self.start;
        (0..self.len).map(move |o| seq[(start + o) % n])
    }

    /// Parity vector of the segment: bit `l - 1` is set iff label `l` occurs
    /// an odd number of times.
    pub fn parity(&self) -> u64 {
        self.labels().fold(0, |p, l| p ^ label_mask(l))
    }

    /// Number of labels with odd multiplicity, which is the Hamming distance
    /// between the segment's endpoint vertices.
    pub fn delta(&self) -> usize {
        self.parity().count_ones() as usize
    }

    /// The rest of the cycle; the two segments partition the parent.
    pub fn complement(&self) -> Segment<'a> {
        let n = self.parent.len();
        let start = if n == 0 { 0 } else { (self.start + self.len) % n };
        Segment {
            parent: self.parent,
            start,
            len: n - self.len,
        }
    }

    /// Vertices at the two ends of the segment (`x_start` and
    /// `x_{start+len}`, indices mod `N`).
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        let d = self.parent.dimension();
        let n = self.parent.len();
        if n == 0 {
            return (Vertex::zero(d), Vertex::zero(d));
        }
        let verts = self.parent.vertex_bits();
        let from = verts[self.start];
        let to = verts[(self.start + self.len) % n];
        // A full lap on a walk that does not close ends at the closure point.
        let to = if self.len == n { from ^ self.parent.closure() } else { to };
        (
            Vertex {
                bits: from,
                dimension: d,
            },
            Vertex {
                bits: to,
                dimension: d,
            },
        )
    }
}

impl PartialEq for Segment<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent)
            && self.len == other.len
            && (self.start == other.start || self.len == 0 && self.parent.is_empty())
    }
}
