//! Seeded random elements, shared by `element --random` and the property suite.

use std::sync::Arc;

use qell::lambda::LambdaElt;
use qell::qell::{QEllElt, QEllStructure};
use qell::qlaurent::QLaurent;
use qell::Rat;
use rand::Rng;

/// Up to two terms with exponents in `-2..=2` and coefficients in `-3..=3`.
pub fn random_laurent<R: Rng>(rng: &mut R) -> QLaurent {
    let mut f = QLaurent::zero();
    for _ in 0..rng.gen_range(0..3) {
        f.add_term(Rat::from_integer(rng.gen_range(-2..=2)), rng.gen_range(-3..=3).into());
    }
    f
}

pub fn random_element<R: Rng>(s: &Arc<QEllStructure>, rng: &mut R) -> QEllElt {
    let comps = s
        .classes()
        .iter()
        .map(|c| {
            c.orbits
                .iter()
                .map(|o| {
                    let coeffs = (0..o.ctx.rank()).map(|_| random_laurent(rng)).collect();
                    LambdaElt::from_coeffs(&o.ctx, coeffs).expect("rank-sized coefficient vector")
                })
                .collect()
        })
        .collect();
    QEllElt::from_components(s, comps).expect("components follow the structure")
}
