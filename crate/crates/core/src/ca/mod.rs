//! States, neighborhoods, local rules, patterns and asymptotic configurations.

mod config;
mod io;
mod pattern;
mod restrict;
mod rule;

pub use config::{Background, PatchedConfiguration};
pub use io::{RuleFile, TableSpec};
pub use pattern::{apply_pattern, Pattern};
pub use restrict::{induce_rule, restrict_rule, Embedding, Restriction};
pub use rule::{Alphabet, LocalRule, Neighborhood};

pub(crate) use rule::decode;
