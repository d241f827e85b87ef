//! Quadratic polynomials, Jordan splittings, classification of unimodular
//! forms and reduction to standard form.

mod class;
mod jordan;
mod poly;
mod reduce;

pub use class::{
    add_forms, all_classes, alpha, canonical_unit, class_precision, ell_matrix, three_squares, unit_classes, xi, Norm,
    UnimodularClass,
};
pub use jordan::{classify_piece, classify_unimodular, jordan_decompose, jordan_split, Piece, Splitting};
pub use poly::QuadPoly;
pub use reduce::{reduce_standard, JordanForm, Reduction};
