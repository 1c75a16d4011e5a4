//! Words and finitely presented groups.

pub mod format;
mod presentation;
mod tietze;
mod word;

pub use presentation::{FreeProductInjections, Presentation};
pub use tietze::{add_defined_generator, add_relator, eliminate, simplify, tietze_move, Rewritten, TietzeMove};
pub use word::{Letter, Word, MAX_WORD_LEN};
