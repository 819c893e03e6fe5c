//! Monoids with dihedral-type permutation relations.
//!
//! A presentation `(n, k)` with `n > 3`, `1 < k < n` and `k^2 ≡ 1 (mod n)`
//! defines a monoid on generators `a_1, …, a_n` in which all `2n` words
//! `a_i a_{i+1} ⋯ a_{i-1}` (cyclic runs) and `a_i a_{i+k} ⋯ a_{i-k}`
//! (skip-`k` runs) are identified with `a_1 a_2 ⋯ a_n`.
//!
//! The crate provides, for any valid `(n, k)`:
//!
//! * [`presentation`] — index arithmetic, relation words, blocks and the
//!   permutation group behind the relations;
//! * [`rewrite`] — the seven length-preserving transformation families,
//!   deterministic reduction to the unique normal form, and the
//!   `a_1^i (a_2⋯a_n)^j b` decomposition of normal words;
//! * [`oracle`] — exact ground truth: congruence classes computed by
//!   breadth-first closure under the defining relations only;
//! * [`lang`] — the normal-word language as a minimal DFA (built two
//!   independent ways), language equivalence with witnesses, exact word
//!   counts and the rational growth series;
//! * [`verify`] — property suites that cross-validate the three layers.
//!
//! Everything is exact; no floating point is used anywhere.

pub mod lang;
pub mod oracle;
pub mod presentation;
pub mod rewrite;
mod util;
pub mod verify;

pub use presentation::{Presentation, Residue, Word};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `n` must exceed 3 for the relation family to make sense.
    #[error("invalid n={0}: need n > 3")]
    InvalidN(i64),

    /// `k` must satisfy `1 < k < n` and `k^2 ≡ 1 mod n`.
    #[error("invalid k={k} for n={n}: need 1 < k < n and k^2 ≡ 1 mod n")]
    InvalidK { n: i64, k: i64 },

    /// A letter outside `1..=n` was used in a word.
    #[error("letter {letter} out of range 1..={n}")]
    InvalidLetter { letter: i64, n: usize },

    /// A rule was applied at a position where its left-hand side does not match.
    #[error("rule left-hand side does not match the host word at position {at}")]
    RuleMismatch { at: usize },

    /// A rewrite step failed to decrease the length-lexicographic order.
    /// This signals an implementation bug, never bad input.
    #[error("rewrite step did not decrease the length-lex order (rule {rule})")]
    NonDecreasingStep { rule: String },

    /// `decompose` was called on a reducible word.
    #[error("word is not in normal form")]
    NotNormalForm,

    /// A congruence-class search hit its cap before reaching a decision.
    #[error("congruence class exceeded cap {cap} before a decision was reached")]
    Inconclusive { cap: usize },

    /// An exhaustive enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: {n}^{len} words > {limit}")]
    BudgetExceeded { n: usize, len: usize, limit: u64 },

    /// The verified group structure behind the relations does not hold.
    /// This signals an implementation bug, never bad input.
    #[error("group structure violated: {0}")]
    StructureViolation(String),

    /// Determinization grew past the configured state limit.
    #[error("automaton construction exceeded {0} states")]
    StateLimit(usize),

    /// A verification suite name was not recognized.
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}
