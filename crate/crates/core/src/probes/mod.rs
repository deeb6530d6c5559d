//! Bounded, certificate-producing probes for rules on any supported group.

pub mod balance;
pub mod bijection;
pub mod erasable;
pub mod inverse;
pub mod postsurj;

pub use balance::{check_balanced, count_preimages, preimage_histogram};
pub use bijection::{balancedness_bijection, BijectionReport};
pub use erasable::{check_erasable_patterns, find_mutually_erasable};
pub use inverse::{synthesize_inverse_patch, InverseOptions, InverseSynthesis};
pub use postsurj::{post_surjectivity_probe, WitnessSet};
