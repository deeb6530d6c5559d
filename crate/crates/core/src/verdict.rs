//! Three-valued verdicts with machine-checkable certificates.

use std::fmt;

use crate::ca::{LocalRule, Pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Yes,
    No,
    /// The search bound was exhausted without a decision.
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Unknown => "unknown",
        })
    }
}

impl Status {
    pub fn from_bool(b: bool) -> Status {
        if b {
            Status::Yes
        } else {
            Status::No
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "yes" => Some(Status::Yes),
            "no" => Some(Status::No),
            "unknown" => Some(Status::Unknown),
            _ => None,
        }
    }
}

/// Preimage count of a pattern on `E` over a window `M` with `E·N ⊆ M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageCount {
    pub pattern: Pattern,
    pub window_size: usize,
    pub count: u128,
    /// `s^{|M| - |E|}`.
    pub expected: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCount {
    pub n: usize,
    pub pattern_cells: usize,
    pub window_cells: usize,
    pub expected: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A word of `Z` with no preimage.
    Orphan { word: Vec<u8> },
    /// `left·middle·right` and `left·alternate·right` have equal images on
    /// every context; `middle != alternate`.
    ErasableWords {
        left: Vec<u8>,
        middle: Vec<u8>,
        alternate: Vec<u8>,
        right: Vec<u8>,
    },
    /// Two distinct periodic configurations of equal period with equal images.
    PeriodicPair { first: Vec<u8>, second: Vec<u8> },
    /// Nonempty de Bruijn node sets containing the full set and closed under
    /// every output symbol: no word drives the full set to the empty set.
    SubsetClosure { subsets: Vec<Vec<usize>> },
    /// Node pairs reachable after two paths split, none of them diagonal:
    /// split paths never merge again.
    PairClosure { pairs: Vec<(usize, usize)> },
    /// A local rule inverting the automaton.
    Inverse { rule: LocalRule },
    /// A pattern whose preimage count differs from the balanced value, and
    /// optionally a second pattern at the same level with a different count.
    Deviation {
        first: PreimageCount,
        second: Option<PreimageCount>,
    },
    /// Every pattern at each listed level had exactly the expected count.
    Balanced { levels: Vec<LevelCount> },
    /// Two patterns on `D_{m+2R}` that differ only inside `D_m` and can be
    /// swapped without changing the image.
    ErasablePatterns { m: usize, first: Pattern, second: Pattern },
    /// Every tested single-site change was corrected by a preimage change
    /// inside `D_radius`.
    Correction { radius: usize, instances: usize },
    /// A vertex whose ball differs from the Cayley ball.
    BallMismatch { vertex: usize },
    /// Sizes of a verified approximation: members and all vertices.
    Approximation { passing: usize, vertices: usize },
    /// Preimage `e` on a window around `1_G`: changing the image at `1_G` to
    /// `state` has no preimage differing from `e` only inside `D_radius`.
    Uncorrectable {
        e: Pattern,
        state: u8,
        radius: usize,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Orphan { .. } => "orphan",
            Certificate::ErasableWords { .. } => "erasable-words",
            Certificate::PeriodicPair { .. } => "periodic-pair",
            Certificate::SubsetClosure { .. } => "subset-closure",
            Certificate::PairClosure { .. } => "pair-closure",
            Certificate::Inverse { .. } => "inverse",
            Certificate::Deviation { .. } => "deviation",
            Certificate::Balanced { .. } => "balanced",
            Certificate::ErasablePatterns { .. } => "erasable-patterns",
            Certificate::Correction { .. } => "correction",
            Certificate::Uncorrectable { .. } => "uncorrectable",
            Certificate::BallMismatch { .. } => "ball-mismatch",
            Certificate::Approximation { .. } => "approximation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    /// Search bound used, when the verdict came from a bounded search.
    pub bound: Option<usize>,
    /// How the status was reached, e.g. exhaustive search or an exact oracle.
    pub basis: String,
}

impl Verdict {
    pub fn yes(certificate: Certificate, basis: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::Yes,
            certificate: Some(certificate),
            bound: None,
            basis: basis.into(),
        }
    }

    pub fn no(certificate: Certificate, basis: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::No,
            certificate: Some(certificate),
            bound: None,
            basis: basis.into(),
        }
    }

    pub fn unknown(bound: usize, basis: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::Unknown,
            certificate: None,
            bound: Some(bound),
            basis: basis.into(),
        }
    }

    pub fn with_bound(mut self, bound: usize) -> Verdict {
        self.bound = Some(bound);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.status == Status::Yes
    }

    pub fn is_no(&self) -> bool {
        self.status == Status::No
    }
}

/// A word over states below 36 as a digit string.
pub fn word_string(w: &[u8]) -> String {
    w.iter()
        .map(|&x| char::from_digit(x as u32, 36).unwrap_or('?'))
        .collect()
}

/// Inverse of [`word_string`].
pub fn parse_word(s: &str) -> Option<Vec<u8>> {
    s.chars().map(|c| c.to_digit(36).map(|d| d as u8)).collect()
}
