//! Free quotients and the `x^N = q^m` presentations of `QEll_{ℤ/N}(pt)`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{QEllElt, QEllStructure};
use crate::charmod::ScalarContext;
use crate::group::{builtin, Family};
use crate::lambda::LambdaElt;
use crate::qlaurent::QLaurent;
use crate::{Error, Rat, Result};

/// For a free action, `QEll_G(X) ≅ K(X/G) ⊗ ℤ[q^±]`: one Laurent polynomial
/// per orbit, keyed by the orbit's least point.
pub fn free_quotient(a: &QEllElt) -> Result<Vec<(usize, QLaurent)>> {
    let s = a.structure();
    if !s.gset().is_free() {
        return Err(Error::ActionNotFree);
    }
    let e = s.conj().class_of(s.group().identity());
    for (c, row) in a.components().iter().enumerate() {
        if c != e && row.iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal("free action with a nonzero twisted component".into()));
        }
    }
    Ok(s.class(e)
        .orbits
        .iter()
        .zip(&a.components()[e])
        .map(|(o, x)| {
            debug_assert_eq!(o.ctx.rank(), 1);
            (o.orbit.rep, x.coeff(0).clone())
        })
        .collect())
}

/// Checks on the component of `QEll_{ℤ/N}(pt)` at `g^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateComponent {
    pub m: u64,
    pub rank: usize,
    /// Basis index of the generator `x_m`.
    pub generator: Option<usize>,
    pub rank_ok: bool,
    /// `x_m^N = q^m`.
    pub relation_ok: bool,
    /// `x_m^j = q^{⌊jm/N⌋} e_{μ_j}` for `j < N`, with the `μ_j` running over the basis.
    pub powers_ok: bool,
}

impl TateComponent {
    pub fn pass(&self) -> bool {
        self.generator.is_some() && self.rank_ok && self.relation_ok && self.powers_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateReport {
    pub n: u64,
    pub components: Vec<TateComponent>,
    pub pass: bool,
}

/// Verifies `RΛ_{ℤ/N}(g^m) ≅ ℤ[q^±][x]/(x^N − q^m)` for every `m`.
pub fn verify_tate_presentation(n: u64) -> Result<TateReport> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("N must be at least 1".into()));
    }
    let group = Arc::new(builtin(&Family::Cyclic(n as usize), crate::DEFAULT_ORDER_CAP)?);
    let scalars = Arc::new(ScalarContext::for_groups(&[&group])?);
    let s = QEllStructure::point(group.clone(), scalars)?;
    let gen = group.generator_ids().first().copied().unwrap_or(0);
    let step = Rat::new(1, n as i64);
    let mut components = Vec::with_capacity(n as usize);
    for m in 0..n {
        let gm = group.pow(gen, m);
        let class = s.conj().class_of(gm);
        let ctx = &s.class(class).orbits[0].ctx;
        let table = ctx.table();
        let local_gen = ctx.local(gen).ok_or_else(|| Error::Internal("generator outside C(g)".into()))?;
        let target_angle = step.fract();
        let mut generator = None;
        for i in 0..ctx.rank() {
            if ctx.degree(i) == 1 && table.central_angle(table.row(i), local_gen)? == target_angle {
                generator = Some(i);
                break;
            }
        }
        let rank = ctx.rank();
        let rank_ok = rank == n as usize;
        let (mut relation_ok, mut powers_ok) = (false, false);
        if let Some(xi) = generator {
            let x = LambdaElt::basis(ctx, xi);
            let top = x.pow(n as u32)?;
            relation_ok = top == LambdaElt::scalar(ctx, QLaurent::q_pow(m as i64));
            let mut seen = alloc::vec![false; rank];
            powers_ok = true;
            let mut power = LambdaElt::unit(ctx);
            for j in 0..n {
                let expected = QLaurent::q_pow((j * m / n) as i64);
                let support: Vec<usize> = (0..rank).filter(|&i| !power.coeff(i).is_zero()).collect();
                match support.as_slice() {
                    [mu] if *power.coeff(*mu) == expected && !seen[*mu] => seen[*mu] = true,
                    _ => powers_ok = false,
                }
                power = power.mul(&x)?;
            }
            powers_ok &= seen.iter().all(|&b| b);
        }
        components.push(TateComponent {
            m,
            rank,
            generator,
            rank_ok,
            relation_ok,
            powers_ok,
        });
    }
    let pass = components.iter().all(TateComponent::pass);
    Ok(TateReport { n, components, pass })
}
