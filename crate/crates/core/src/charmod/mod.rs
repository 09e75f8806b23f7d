//! Character theory over a prime field.
//!
//! Character values live in `F_p` with `p ≡ 1 (mod N)` for `N` a common
//! exponent of every group in use, so roots of unity of order dividing `N`
//! are represented faithfully by powers of a fixed `ζ ∈ F_p`. Inner products
//! of characters are small integers, recovered exactly by a symmetric lift.

mod poly;
mod scalar;
mod table;

pub use scalar::{is_prime, ScalarContext};
pub use table::{induce_cf, pull_back_cf, restrict_cf, CharacterTable, ClassFunction};
