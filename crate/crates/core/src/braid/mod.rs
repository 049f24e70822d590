//! Braid words and an exact word-problem solver.

mod garside;
mod word;

pub use garside::{is_left_weighted, left_normal_form, words_equal, GarsideNormalForm, PermutationFactor};
pub use word::{closure_stats, torus_braid, BraidError, BraidLetter, BraidWord, ClosureStats};
