//! Pullbacks, `μⁿ`, pushforward along coverings, change of group and transfer.
//!
//! Every contravariant map is an instance of [`pull`]: for each stored pair
//! `(τ, y)` of the target, a locator names a pair `(σ, x)` of the source, a
//! group map from the target's ambient group into the source's with
//! `map(τ)ⁿ = σ`, and `n`. The target fiber is the source fiber at `(σ, x)`
//! pulled back along that map.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{CtxCache, QEllElt, QEllStructure};
use crate::charmod::ScalarContext;
use crate::group::{
    induced_gset, orbits_with_stabilizers, ElemId, FiniteGSet, FiniteGroup, GroupHom, InducedGSet,
    Subgroup,
};
use crate::lambda::LambdaElt;
use crate::{Error, Result};

struct Source<'a> {
    sigma: ElemId,
    x: usize,
    map: Box<dyn Fn(ElemId) -> ElemId + 'a>,
    n: u64,
}

fn pull<'a>(
    a: &QEllElt,
    target: &Arc<QEllStructure>,
    locate: impl Fn(ElemId, usize) -> Result<Source<'a>>,
) -> Result<QEllElt> {
    let mut comps = Vec::with_capacity(target.num_classes());
    for class in target.classes() {
        let mut row = Vec::with_capacity(class.orbits.len());
        for o in &class.orbits {
            let src = locate(class.rep, o.orbit.rep)?;
            row.push(a.fiber_along(src.sigma, src.x, &o.ctx, |s| (src.map)(s), src.n)?);
        }
        comps.push(row);
    }
    QEllElt::from_components(target, comps)
}

pub(crate) fn check_scalars(a: &ScalarContext, b: &ScalarContext) -> Result<()> {
    if (a.n(), a.p(), a.zeta()) == (b.n(), b.p(), b.zeta()) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// `φ*: QEll_H(X) → QEll_G(φ*X)`; `target` must be built on the restricted set.
pub fn pullback_hom(hom: &GroupHom, a: &QEllElt, target: &Arc<QEllStructure>) -> Result<QEllElt> {
    let src = a.structure();
    if !hom.codomain().same_as(src.group()) || !hom.domain().same_as(target.group()) {
        return Err(Error::GroupMismatch);
    }
    check_scalars(src.scalars(), target.scalars())?;
    let (x, y) = (src.gset(), target.gset());
    let restricted = x.len() == y.len()
        && target.group().generator_ids().into_iter().all(|s| {
            let t = hom.apply(s);
            (0..y.len()).all(|p| y.act(s, p) == x.act(t, p))
        });
    if !restricted {
        return Err(Error::NotEquivariant);
    }
    pull(a, target, |tau, p| {
        Ok(Source {
            sigma: hom.apply(tau),
            x: p,
            map: Box::new(|s| hom.apply(s)),
            n: 1,
        })
    })
}

/// `f*: QEll_G(Y) → QEll_G(X)` for an equivariant point map `f: X → Y`.
pub fn pullback_map(f: &[usize], a: &QEllElt, target: &Arc<QEllStructure>) -> Result<QEllElt> {
    let src = a.structure();
    if !src.group().same_as(target.group()) {
        return Err(Error::GroupMismatch);
    }
    check_scalars(src.scalars(), target.scalars())?;
    if !target.gset().is_equivariant_map(src.gset(), f) {
        return Err(Error::NotEquivariant);
    }
    pull(a, target, |tau, p| {
        Ok(Source {
            sigma: tau,
            x: f[p],
            map: Box::new(|s| s),
            n: 1,
        })
    })
}

/// `μⁿ`: the component at `g` is read off the component at `gⁿ`, restricted
/// along `X^g ⊆ X^{gⁿ}` and transported with `q ↦ q^{1/n}`.
pub fn mu(n: u64, a: &QEllElt) -> Result<QEllElt> {
    if n == 0 {
        return Err(Error::Precondition("μⁿ needs n ≥ 1".into()));
    }
    let structure = a.structure();
    let g = structure.group();
    pull(a, structure, |tau, p| {
        Ok(Source {
            sigma: g.pow(tau, n),
            x: p,
            map: Box::new(|s| s),
            n,
        })
    })
}

/// `f_!: QEll_G(Z) → QEll_G(X)` along an equivariant finite covering `f: Z → X`.
///
/// The fiber at `(σ, x)` is the sum over the `Stab(x)`-orbits of preimages in
/// `Z^σ` of the induced fibers.
pub fn pushforward(f: &[usize], a: &QEllElt, target: &Arc<QEllStructure>) -> Result<QEllElt> {
    let src = a.structure();
    if !src.group().same_as(target.group()) {
        return Err(Error::GroupMismatch);
    }
    check_scalars(src.scalars(), target.scalars())?;
    let z = src.gset();
    if !z.is_equivariant_map(target.gset(), f) {
        return Err(Error::NotEquivariant);
    }
    let mut cache = CtxCache::new(target.group().clone(), target.scalars().clone());
    let mut comps = Vec::with_capacity(target.num_classes());
    for class in target.classes() {
        let sigma = class.rep;
        let mut row = Vec::with_capacity(class.orbits.len());
        for o in &class.orbits {
            let x = o.orbit.rep;
            let over: Vec<usize> = (0..z.len())
                .filter(|&p| f[p] == x && z.act(sigma, p) == p)
                .collect();
            let mut acc = LambdaElt::zero(&o.ctx);
            for piece in orbits_with_stabilizers(z, &o.orbit.stabilizer, &over) {
                let ctx = cache.get(&piece.stabilizer, sigma)?;
                let fiber = a.fiber(sigma, piece.rep, &ctx)?;
                acc = acc.add(&fiber.induce(&o.ctx)?)?;
            }
            row.push(acc);
        }
        comps.push(row);
    }
    QEllElt::from_components(target, comps)
}

/// `QEll_G(G ×_H X) ≅ QEll_H(X)` for `H ≤ G` and an `H`-set `X`.
pub struct ChangeOfGroup {
    sub: Subgroup,
    induced: InducedGSet,
    /// `(ambient id, H id)`, sorted by ambient id.
    lookup: Vec<(ElemId, ElemId)>,
    big: Arc<QEllStructure>,
    small: Arc<QEllStructure>,
}

impl ChangeOfGroup {
    pub fn new(
        ambient: &Arc<FiniteGroup>,
        sub: Subgroup,
        x: Arc<FiniteGSet>,
        scalars: Arc<ScalarContext>,
    ) -> Result<Self> {
        let induced = induced_gset(ambient, &sub, &x)?;
        let big = QEllStructure::new(Arc::new(induced.gset.clone()), scalars.clone())?;
        let small = QEllStructure::new(x, scalars)?;
        let mut lookup: Vec<(ElemId, ElemId)> =
            sub.embedding.iter().enumerate().map(|(h, &a)| (a, h)).collect();
        lookup.sort_unstable();
        Ok(Self {
            sub,
            induced,
            lookup,
            big,
            small,
        })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn induced(&self) -> &InducedGSet {
        &self.induced
    }

    /// `QEll_G(G ×_H X)`.
    pub fn big(&self) -> &Arc<QEllStructure> {
        &self.big
    }

    /// `QEll_H(X)`.
    pub fn small(&self) -> &Arc<QEllStructure> {
        &self.small
    }

    /// The `H` id of an ambient element of `H`.
    fn local(&self, g: ElemId) -> Option<ElemId> {
        self.lookup
            .binary_search_by_key(&g, |&(a, _)| a)
            .ok()
            .map(|i| self.lookup[i].1)
    }

    /// Restriction to `H` followed by pullback along `x ↦ [e, x]`.
    pub fn forward(&self, a: &QEllElt) -> Result<QEllElt> {
        if !a.structure().same_as(&self.big) {
            return Err(Error::ContextMismatch);
        }
        let emb = &self.sub.embedding;
        pull(a, &self.small, |tau, y| {
            Ok(Source {
                sigma: emb[tau],
                x: self.induced.embed(y),
                map: Box::new(move |s| emb[s]),
                n: 1,
            })
        })
    }

    /// The fiber at `(σ, [a, x])` is the fiber at `(a⁻¹σa, x)` conjugated by `a`.
    pub fn inverse(&self, b: &QEllElt) -> Result<QEllElt> {
        if !b.structure().same_as(&self.small) {
            return Err(Error::ContextMismatch);
        }
        let g = self.big.group();
        pull(b, &self.big, |sigma, z| {
            let (a, x) = self.induced.reps[z];
            let ainv = g.inv(a);
            let inner = move |s: ElemId| g.mul(g.mul(ainv, s), a);
            let h = self
                .local(inner(sigma))
                .ok_or_else(|| Error::Internal("a⁻¹σa is not in H".into()))?;
            Ok(Source {
                sigma: h,
                x,
                map: Box::new(move |s| self.local(inner(s)).expect("stabilizer conjugates into H")),
                n: 1,
            })
        })
    }
}

/// The transfer `I^G_H: QEll_H(X) → QEll_G(X)` for a `G`-set `X`.
pub struct Transfer {
    cog: ChangeOfGroup,
    target: Arc<QEllStructure>,
    /// `[a, x] ↦ a x`.
    covering: Vec<usize>,
}

impl Transfer {
    pub fn new(target: Arc<QEllStructure>, sub: Subgroup) -> Result<Self> {
        let g = target.group().clone();
        let inclusion = GroupHom::inclusion(g.clone(), &sub);
        let restricted = Arc::new(target.gset().restrict(&inclusion)?);
        let cog = ChangeOfGroup::new(&g, sub, restricted, target.scalars().clone())?;
        let x = target.gset();
        let covering = cog.induced.reps.iter().map(|&(a, p)| x.act(a, p)).collect();
        Ok(Self {
            cog,
            target,
            covering,
        })
    }

    /// `QEll_H(X)`.
    pub fn source(&self) -> &Arc<QEllStructure> {
        &self.cog.small
    }

    pub fn target(&self) -> &Arc<QEllStructure> {
        &self.target
    }

    pub fn change_of_group(&self) -> &ChangeOfGroup {
        &self.cog
    }

    /// Inverse change of group, then pushforward along `G ×_H X → X`.
    pub fn algorithm_a(&self, b: &QEllElt) -> Result<QEllElt> {
        let lifted = self.cog.inverse(b)?;
        pushforward(&self.covering, &lifted, &self.target)
    }

    /// The explicit sum over `H`-classes meeting `[g]`; only for `X = pt`.
    pub fn algorithm_b(&self, b: &QEllElt) -> Result<QEllElt> {
        if !self.target.is_point() {
            return Err(Error::Precondition(
                "the explicit transfer sum is only available for X = pt".into(),
            ));
        }
        let small = &self.cog.small;
        if !b.structure().same_as(small) {
            return Err(Error::ContextMismatch);
        }
        let g = self.target.group();
        let conj = self.target.conj();
        let emb = &self.cog.sub.embedding;
        let mut cache = CtxCache::new(g.clone(), self.target.scalars().clone());
        let mut comps = Vec::with_capacity(self.target.num_classes());
        for (i, class) in self.target.classes().iter().enumerate() {
            let rep = class.rep;
            let out_ctx = &class.orbits[0].ctx;
            let mut acc = LambdaElt::zero(out_ctx);
            for (j, hclass) in small.classes().iter().enumerate() {
                let h0 = emb[hclass.rep];
                if conj.class_of(h0) != i {
                    continue;
                }
                // k rep k⁻¹ = h0, so k⁻¹ C_H(h0) k ≤ C_G(rep).
                let k = conj.conjugator(h0);
                let kinv = g.inv(k);
                let src = b.component(j, 0);
                let mut members: Vec<ElemId> = src
                    .ctx()
                    .embedding()
                    .iter()
                    .map(|&c| g.mul(g.mul(kinv, emb[c]), k))
                    .collect();
                members.sort_unstable();
                let ctx = cache.get(&members, rep)?;
                let moved = src.transport(
                    &ctx,
                    |s| {
                        self.cog
                            .local(g.mul(g.mul(k, s), kinv))
                            .expect("conjugate lies in H")
                    },
                    1,
                )?;
                acc = acc.add(&moved.induce(out_ctx)?)?;
            }
            comps.push(alloc::vec![acc]);
        }
        QEllElt::from_components(&self.target, comps)
    }
}
