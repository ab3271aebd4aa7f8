//! Repetition-free binary words.
//!
//! Exact fractional-power checking, uniform morphisms (Thue–Morse and the
//! 21-uniform morphism `h`), the `u·μ(y)·v` structure theorem for
//! `α`-power-free words with `2 < α ≤ 7/3`, exhaustive counting, the
//! exponential family of `7/3⁺`-power-free words, forbidden-factor automata
//! for growth-rate upper bounds, and a set of exhaustive certificate checks.

pub mod construct;
pub mod decompose;
pub mod enumerate;
mod error;
pub mod exponent;
pub mod growth;
pub mod morphism;
pub mod repetition;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use exponent::{ExponentBound, Ratio};
pub use morphism::{Substitution, UniformMorphism};
pub use repetition::{extension_safe, find_violation, minimal_period, word_exponent, Violation};
pub use word::Word;
