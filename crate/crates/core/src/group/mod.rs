//! Enumerated permutation groups and the finite combinatorics built on them.

mod conj;
mod finite;
mod gset;
mod hom;
mod perm;
mod skeleton;

pub use conj::*;
pub use finite::*;
pub use gset::*;
pub use hom::*;
pub use perm::*;
pub use skeleton::*;
