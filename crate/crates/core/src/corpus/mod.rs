//! Ready-made objects from the worked examples, the named-example registry
//! and the demo reports built on it.

pub mod cut_paste;
pub mod examples;
pub mod fixtures;

pub use cut_paste::{cut_and_paste_demo, PastedWindow};
pub use examples::{demo, named_example, named_examples, Assertion, NamedExample, Observation, Outcome, Subject, EXAMPLE_IDS};
pub use fixtures::{
    agreement_counts, critical_preimage, golden_mean, has_mixed_children, is_critical_preimage, majority_f2,
    non_postsurj_witness_f2, xor_rule102, NonPostSurjectiveWitness,
};
