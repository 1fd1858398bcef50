//! Planted unicellular and bicellular maps and the bijection
//!
//! ```text
//! U_{g+1,n+1}  <->  (disjoint union over g1, j of U_{g1,j} x U_{g+1-g1,n-j})  +  B_{g,n}
//! ```
//!
//! given by gluing plants into vertices and cutting them back out, with
//! exhaustive enumerators that check the induced counting recursion and an
//! RNA diagram front end that rewires two-backbone interaction structures
//! into one-backbone diagrams.

pub mod bijections;
pub mod enumerate;
pub mod maps;
pub mod perm;
pub mod record;
pub mod rna;

pub use bijections::{beta_forward, beta_inverse, eta, psi, theta, varsigma, BijectionError, Decomposition};
pub use maps::{AnyMap, BicellularMap, MapClass, MapError, UnicellularMap};
pub use perm::{Label, LabelSet, Permutation};
pub use rna::{Diagram, RnaError};
