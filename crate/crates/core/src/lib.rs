//! Computations around homogeneous vector bundles `F_λ` on projective space
//! and the filtration of their sections over the complement of all rational
//! hyperplanes: Bott cohomology, the weight sets of the subquotients, torus
//! characters of local cohomology, and finite buildings over `Z/p^n`.

pub mod bott;
pub mod building;
pub mod error;
pub mod filtration;
pub mod linalg;
pub mod localcoh;
pub mod pieri;
pub mod report;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use weights::Weight;
