//! Generating functions `G_f(z) = sum_A vol(f^-1(A)) z^A` over the additive
//! group ring of the integers. Elements are kept either as finite sums of
//! coset and point terms, or as dense level-`k` images.

mod assemble;
mod coset;
mod heads;
mod modular;

pub use assemble::{assemble_gf, i_term, AssembledGf};
pub use coset::{CosetCombination, CosetTerm};
pub use heads::{
    four_divides, gf_truncated, head_closed_form, head_mass, head_odd, head_one_square, head_planes, head_sq_dyadic,
    head_sq_odd, head_two_squares, head_unimodular, hensel_head, sigma, HEAD_GUARD,
};
pub use modular::{ig_truncated, modular_family, modular_gf, ModularGF, MODULAR_GUARD};
