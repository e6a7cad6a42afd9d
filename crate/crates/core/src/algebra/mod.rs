//! Majorana strings, their products, and sparse Majorana polynomials.

pub mod format;
mod polynomial;
mod string;

pub use polynomial::{rotate_string, MajoranaPolynomial, TermMap};
pub use string::{
    hermitian_exponent, rotation_image, string_multiply, strings_anticommute, MajoranaString, Modes, Phase,
    MASK_WORDS, MAX_MODES,
};
