//! Exact arithmetic in the braid group B_n.
//!
//! Words in signed Artin generators, left Garside normal form with the
//! half twist Delta as Garside element, equality (plain and modulo the
//! central Delta^2), the prefix order, the index-shift monomorphism, and
//! the length functions used by the attack algorithms.

mod error;
mod nf;
mod perm;
pub mod sampling;
mod word;

pub use error::BraidError;
pub use nf::{
    conjugate_nf_by_simple, conjugate_nf_by_simple_inv, equal, equal_mod_delta_sq, normal_form,
    normal_form_cached, normal_form_of_factors, prefix_leq, word_length, GarsideNormalForm,
};
pub use perm::{is_left_weighted, make_left_weighted, Permutation};
pub use word::{free_reduce, BraidWord, LengthKind};
