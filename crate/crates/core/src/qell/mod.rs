//! `QEll_G(X)` for a finite group `G` acting on a finite set `X`.
//!
//! The ring is `∏_{[g]} K_{Λ_G(g)}(X^g)`. An equivariant bundle over the
//! finite `C_G(g)`-set `X^g` is determined by its fiber at one point per
//! orbit, a representation of `Λ_S(g)` for the stabilizer `S`; so a component
//! is stored as one [`LambdaElt`] per `C_G(g)`-orbit, kept at the orbit's
//! least point.
//!
//! Evaluating an element at an arbitrary pair `(σ, x)` with `σx = x` goes
//! through [`QEllStructure::locate`]: it finds `u` with `σ = u σ₀ u⁻¹` and
//! `x = u x₀` for the stored pair `(σ₀, x₀)`, and the fiber at `(σ, x)` is the
//! stored fiber transported along conjugation by `u`. All structural maps are
//! built on that single evaluation step.

mod kunneth;
mod maps;
mod verify;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::charmod::ScalarContext;
use crate::group::{ConjugacyData, ElemId, FiniteGSet, FiniteGroup, InertiaSkeleton, Orbit};
use crate::lambda::{LambdaCtx, LambdaElt};
use crate::qlaurent::QLaurent;
use crate::{Error, Result};

pub use kunneth::{Kunneth, QEllTensor};
pub use maps::{mu, pullback_hom, pullback_map, pushforward, ChangeOfGroup, Transfer};
pub use verify::{free_quotient, verify_tate_presentation, TateComponent, TateReport};

/// One `C_G(g)`-orbit of `X^g` with the representation data of its stabilizer.
#[derive(Clone, Debug)]
pub struct OrbitComponent {
    pub orbit: Orbit,
    pub ctx: Arc<LambdaCtx>,
}

#[derive(Clone, Debug)]
pub struct ClassComponent {
    pub rep: ElemId,
    pub order: u32,
    pub centralizer_order: usize,
    pub orbits: Vec<OrbitComponent>,
    /// Orbit index of each point of `X^g`, `usize::MAX` elsewhere.
    orbit_of: Vec<usize>,
}

impl ClassComponent {
    pub fn rank(&self) -> usize {
        self.orbits.iter().map(|o| o.ctx.rank()).sum()
    }
}

/// The skeleton of `Λ(X//G)` together with a `Λ`-context per orbit.
#[derive(Debug)]
pub struct QEllStructure {
    skeleton: InertiaSkeleton,
    scalars: Arc<ScalarContext>,
    classes: Vec<ClassComponent>,
}

/// Where a pair `(σ, x)` sits relative to the stored representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Located {
    pub class: usize,
    pub orbit: usize,
    /// `σ = u σ₀ u⁻¹` and `x = u x₀`.
    pub u: ElemId,
}

/// Builds `Λ`-contexts, sharing one per (stabilizer, central element) pair.
pub(crate) struct CtxCache {
    group: Arc<FiniteGroup>,
    scalars: Arc<ScalarContext>,
    cache: BTreeMap<(Vec<ElemId>, ElemId), Arc<LambdaCtx>>,
}

impl CtxCache {
    pub(crate) fn new(group: Arc<FiniteGroup>, scalars: Arc<ScalarContext>) -> Self {
        Self {
            group,
            scalars,
            cache: BTreeMap::new(),
        }
    }

    pub(crate) fn get(&mut self, members: &[ElemId], central: ElemId) -> Result<Arc<LambdaCtx>> {
        let key = (members.to_vec(), central);
        if let Some(c) = self.cache.get(&key) {
            return Ok(c.clone());
        }
        let ctx = Arc::new(LambdaCtx::new(
            self.group.clone(),
            members,
            central,
            self.scalars.clone(),
        )?);
        self.cache.insert(key, ctx.clone());
        Ok(ctx)
    }
}

impl QEllStructure {
    pub fn new(gset: Arc<FiniteGSet>, scalars: Arc<ScalarContext>) -> Result<Arc<Self>> {
        let group = gset.group().clone();
        scalars.covers(&group)?;
        let conj = Arc::new(ConjugacyData::new(group.clone()));
        let skeleton = InertiaSkeleton::new(conj, gset);
        let mut cache = CtxCache::new(group, scalars.clone());
        let mut classes = Vec::with_capacity(skeleton.entries.len());
        for entry in &skeleton.entries {
            let mut orbits = Vec::with_capacity(entry.orbits.len());
            for orbit in &entry.orbits {
                let ctx = cache.get(&orbit.stabilizer, entry.rep)?;
                orbits.push(OrbitComponent {
                    orbit: orbit.clone(),
                    ctx,
                });
            }
            classes.push(ClassComponent {
                rep: entry.rep,
                order: entry.order,
                centralizer_order: entry.centralizer.len(),
                orbits,
                orbit_of: entry.orbit_of.clone(),
            });
        }
        Ok(Arc::new(Self {
            skeleton,
            scalars,
            classes,
        }))
    }

    /// `QEll_G(pt)`.
    pub fn point(group: Arc<FiniteGroup>, scalars: Arc<ScalarContext>) -> Result<Arc<Self>> {
        Self::new(Arc::new(FiniteGSet::point(group)), scalars)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.skeleton.group()
    }

    pub fn gset(&self) -> &Arc<FiniteGSet> {
        &self.skeleton.gset
    }

    pub fn conj(&self) -> &Arc<ConjugacyData> {
        &self.skeleton.conj
    }

    pub fn skeleton(&self) -> &InertiaSkeleton {
        &self.skeleton
    }

    pub fn scalars(&self) -> &Arc<ScalarContext> {
        &self.scalars
    }

    pub fn classes(&self) -> &[ClassComponent] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ClassComponent {
        &self.classes[i]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Total `ℤ[q^±]`-rank.
    pub fn rank(&self) -> usize {
        self.classes.iter().map(ClassComponent::rank).sum()
    }

    pub fn is_point(&self) -> bool {
        self.gset().len() == 1
    }

    pub fn same_as(&self, other: &Self) -> bool {
        core::ptr::eq(self, other) || self.gset().same_as(other.gset())
    }

    /// Finds the stored pair `(σ₀, x₀)` and a `u` with `σ = u σ₀ u⁻¹`, `x = u x₀`.
    pub fn locate(&self, sigma: ElemId, x: usize) -> Result<Located> {
        let g = self.group();
        let gset = self.gset();
        if gset.act(sigma, x) != x {
            return Err(Error::Internal(format!(
                "point {x} is not fixed by {}",
                g.element(sigma)
            )));
        }
        let conj = self.conj();
        let class = conj.class_of(sigma);
        let k = conj.conjugator(sigma);
        let y = gset.act(g.inv(k), x);
        let comp = &self.classes[class];
        let orbit = comp.orbit_of[y];
        let o = &comp.orbits[orbit].orbit;
        let t = o.transversal[o.position(y).expect("point lies in its orbit")];
        Ok(Located {
            class,
            orbit,
            u: g.mul(k, t),
        })
    }
}

/// An element of `QEll_G(X)`: a [`LambdaElt`] per class and per orbit.
#[derive(Clone)]
pub struct QEllElt {
    structure: Arc<QEllStructure>,
    comps: Vec<Vec<LambdaElt>>,
}

impl PartialEq for QEllElt {
    fn eq(&self, other: &Self) -> bool {
        self.structure.same_as(&other.structure) && self.comps == other.comps
    }
}

impl Eq for QEllElt {}

impl QEllElt {
    fn build(structure: &Arc<QEllStructure>, f: impl Fn(&OrbitComponent) -> LambdaElt) -> Self {
        let comps = structure
            .classes
            .iter()
            .map(|c| c.orbits.iter().map(&f).collect())
            .collect();
        Self {
            structure: structure.clone(),
            comps,
        }
    }

    pub fn zero(structure: &Arc<QEllStructure>) -> Self {
        Self::build(structure, |o| LambdaElt::zero(&o.ctx))
    }

    pub fn unit(structure: &Arc<QEllStructure>) -> Self {
        Self::build(structure, |o| LambdaElt::unit(&o.ctx))
    }

    /// `f · 1`; for `f = q` this is the image of `q` under `X → pt`.
    pub fn scalar(structure: &Arc<QEllStructure>, f: &QLaurent) -> Self {
        Self::build(structure, |o| LambdaElt::scalar(&o.ctx, f.clone()))
    }

    pub fn from_components(structure: &Arc<QEllStructure>, comps: Vec<Vec<LambdaElt>>) -> Result<Self> {
        if comps.len() != structure.num_classes() {
            return Err(Error::ContextMismatch);
        }
        for (c, row) in structure.classes.iter().zip(&comps) {
            if row.len() != c.orbits.len()
                || row.iter().zip(&c.orbits).any(|(e, o)| !e.ctx().same_as(&o.ctx))
            {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(Self {
            structure: structure.clone(),
            comps,
        })
    }

    pub fn structure(&self) -> &Arc<QEllStructure> {
        &self.structure
    }

    pub fn components(&self) -> &[Vec<LambdaElt>] {
        &self.comps
    }

    pub fn component(&self, class: usize, orbit: usize) -> &LambdaElt {
        &self.comps[class][orbit]
    }

    pub fn set_component(&mut self, class: usize, orbit: usize, value: LambdaElt) -> Result<()> {
        if !value.ctx().same_as(&self.structure.classes[class].orbits[orbit].ctx) {
            return Err(Error::ContextMismatch);
        }
        self.comps[class][orbit] = value;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(LambdaElt::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(&LambdaElt, &LambdaElt) -> Result<LambdaElt>) -> Result<Self> {
        if !self.structure.same_as(&other.structure) {
            return Err(Error::ContextMismatch);
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            structure: self.structure.clone(),
            comps,
        })
    }

    fn map(&self, f: impl Fn(&LambdaElt) -> Result<LambdaElt>) -> Result<Self> {
        let comps = self
            .comps
            .iter()
            .map(|a| a.iter().map(&f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            structure: self.structure.clone(),
            comps,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, LambdaElt::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, LambdaElt::sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, LambdaElt::mul)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| Ok(a.neg())).expect("negation cannot fail")
    }

    pub fn scale(&self, f: &QLaurent) -> Self {
        self.map(|a| Ok(a.scale(f))).expect("scaling cannot fail")
    }

    pub fn adams(&self, m: u64) -> Result<Self> {
        self.map(|a| a.adams(m))
    }

    pub fn exterior(&self, k: u32) -> Result<Self> {
        self.map(|a| a.exterior(k))
    }

    /// The fiber at an arbitrary pair `(σ, x)` with `σx = x`, as an element over
    /// the given context (which must be `Λ_{Stab}(σ)` for a subgroup of the
    /// stabilizer of `x` in `C_G(σ)`).
    pub fn fiber(&self, sigma: ElemId, x: usize, target: &Arc<LambdaCtx>) -> Result<LambdaElt> {
        self.fiber_along(sigma, x, target, |s| s, 1)
    }

    /// The fiber at `(σ, x)` pulled back to `target` along `map` (target ambient
    /// ids to ids of this group) with `map(target central)ⁿ = σ`.
    pub(crate) fn fiber_along(
        &self,
        sigma: ElemId,
        x: usize,
        target: &Arc<LambdaCtx>,
        map: impl Fn(ElemId) -> ElemId,
        n: u64,
    ) -> Result<LambdaElt> {
        let loc = self.structure.locate(sigma, x)?;
        let g = self.structure.group();
        let (u, uinv) = (loc.u, g.inv(loc.u));
        self.comps[loc.class][loc.orbit].transport(target, |s| g.mul(g.mul(uinv, map(s)), u), n)
    }
}

impl fmt::Display for QEllElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.structure.group();
        let mut first = true;
        for (c, row) in self.structure.classes.iter().zip(&self.comps) {
            for (o, e) in c.orbits.iter().zip(row) {
                if e.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str("; ")?;
                }
                first = false;
                write!(f, "{} @ x{}: {e}", g.element(c.rep), o.orbit.rep)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QEllElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests;
