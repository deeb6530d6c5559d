//! Exact decisions on `Z` and tools for one-dimensional shifts of finite type.

pub mod debruijn;
pub mod sft;

pub use debruijn::{
    check_erasable_words, check_orphan, check_pair_closure, check_periodic_pair, check_subset_closure, decide_balanced_1d,
    decide_injective_periodic, decide_postsurjective_1d, decide_preinjective, decide_reversible,
    decide_surjective, DeBruijnGraph,
};
pub use sft::{sft_enumerate, sft_language_count, strong_irreducibility_constant, Sft};
