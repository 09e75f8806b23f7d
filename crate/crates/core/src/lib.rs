//! Exact quasi-elliptic cohomology `QEll_G(X)` for a finite group `G` acting
//! on a finite set `X`.
//!
//! For finite `G` the theory splits over conjugacy classes:
//!
//! ```text
//! QEll_G(X) = prod_{[g]} K_{Lambda_G(g)}(X^g),   Lambda_G(g) = C_G(g) x R / <(g, -1)>
//! ```
//!
//! and each factor is a product, over `C_G(g)`-orbits of `X^g`, of representation
//! rings `R Lambda_S(g)` of stabilizers `S`. Those rings are free over `Z[q^±]`
//! with a basis indexed by irreducible characters of `S` (each paired with its
//! central angle at `g`), so everything reduces to exact character theory of
//! finite permutation groups plus Laurent polynomials in `q` with rational
//! exponents.
//!
//! Layout:
//! - [`group`]: permutations, enumerated groups, conjugacy classes, homomorphisms,
//!   finite G-sets and the inertia skeleton.
//! - [`charmod`]: character tables over a prime field (Dixon–Schneider) and the
//!   operations on class functions.
//! - [`qlaurent`]: the coefficient ring `Z[q^Q]`.
//! - [`lambda`]: the rings `R Lambda_C(g)` with their canonical basis.
//! - [`qell`]: the functor `QEll` and its structural maps.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod charmod;
mod error;
pub mod group;
pub mod lambda;
pub mod qell;
pub mod qlaurent;

pub use error::{Error, Result};

/// Rational numbers used for exponents of `q` and central angles.
pub type Rat = num_rational::Ratio<i64>;

/// Default cap on the order of any enumerated group.
pub const DEFAULT_ORDER_CAP: usize = 20160;
