//! Finite-level models of the building side: submodules of `(Z/p^n)^{d+1}`,
//! the posets `T` and `T_free`, tubes of lines over an unramified quadratic
//! extension, order-complex homology, Quillen's criterion, and the complex
//! of parabolic coset spaces of `GL_{d+1}(F_q)`.

mod extension;
mod module;
mod poset;
mod stalk;
mod steinberg;

pub use extension::{tube_member, ExtensionRing, Line, RingElement};
pub use module::{enumerate_submodules, for_each_submodule, howell_form, module_ranks, FiniteModule, SubmoduleFilter, AMBIENT_LIMIT};
pub use poset::{
    order_complex_homology, order_complex_homology_full, quillen_check, quillen_check_indices, FlagPoset, Poset, ReducedHomology, CHAIN_LIMIT,
};
pub use stalk::{free_covers, stalk_complex_homology, Stalk, StalkContext, StalkVariant};
pub use steinberg::{
    generalized_steinberg_dimension, parabolic_coset_count, steinberg_complex, steinberg_complex_homology, SteinbergComplex, SteinbergHomology,
    FLAG_LIMIT,
};
