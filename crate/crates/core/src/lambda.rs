//! The rings `RΛ_C(g)` for a finite group `C` and a central element `g`.
//!
//! `Λ_C(g) = C × ℝ / ⟨(g, -1)⟩`. An irreducible representation of it is an
//! irreducible `ρ` of `C` together with a character `e^{2πi(c+k)t}` of the
//! `ℝ` factor, where `ρ(g) = e^{2πic}` fixes `c ∈ [0, 1)` and `k ∈ ℤ`; the
//! factor `q^k` accounts for the integer shift. So `RΛ_C(g)` is free over
//! `ℤ[q^±]` on the pairs `(ρ, c_ρ)`.
//!
//! Structure constants, all in this basis:
//!
//! * product: `(ρ,c)(ρ',c') = q^{⌊c+c'⌋} Σ_μ ⟨χ_ρ χ_ρ', χ_μ⟩ (μ, {c+c'})`. Every
//!   constituent `μ` of `ρ⊗ρ'` has `μ(g) = e^{2πi(c+c')}`, so its angle is the
//!   fractional part `{c+c'}`; since `c, c' < 1` the carry `⌊c+c'⌋` is 0 or 1.
//! * Adams: `ψ^m(ρ,c) = q^{⌊mc⌋} Σ_λ ⟨ψ^m χ_ρ, χ_λ⟩ (λ, {mc})`, with `q ↦ q^m`
//!   on coefficients, for the same reason.
//! * transport along `φ: C' → C` with `φ(g')^n = g`: a basis element `(ρ, c)`
//!   pulls back to `Σ_λ ⟨χ_ρ∘φ, χ_λ⟩ q^{(c - n d_λ)/n} (λ, d_λ)` and `q ↦ q^{1/n}`.
//!   Here `ρ∘φ(g') = e^{2πic/n'}` for some `n'`-th root, and each constituent
//!   `λ` has `λ(g')^n = e^{2πic}`, so `c - n d_λ ∈ ℤ`. With `n = 1` this is
//!   ordinary restriction and conjugation; with `n > 1` it is the map
//!   `RΛ_C(gⁿ) → RΛ_C(g)[q^{±1/n}]` used by `μⁿ`.
//!
//! Every one of these integrality and angle facts is asserted at run time.

use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use once_cell::race::OnceBox;

use crate::charmod::{induce_cf, CharacterTable, ClassFunction, ScalarContext};
use crate::group::{ConjugacyData, ElemId, FiniteGroup};
use crate::qlaurent::QLaurent;
use crate::{Error, Rat, Result};

/// One product constituent: `(μ, multiplicity, carry)`.
type Constituent = (usize, i64, i64);

/// Representation data of `Λ_C(g)` for a subgroup `C` of an ambient group.
pub struct LambdaCtx {
    ambient: Arc<FiniteGroup>,
    /// Sorted ambient ids of the elements of `C`; local id `i` is `embedding[i]`.
    embedding: Vec<ElemId>,
    central: ElemId,
    table: CharacterTable,
    angles: Vec<Rat>,
    products: OnceBox<Vec<Vec<Constituent>>>,
}

impl fmt::Debug for LambdaCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LambdaCtx")
            .field("order", &self.embedding.len())
            .field("central", &self.ambient.element(self.central))
            .field("angles", &self.angles)
            .finish()
    }
}

impl LambdaCtx {
    /// `Λ_C(g)` for the subgroup `C` of `ambient` with the given members, `g ∈ Z(C)`.
    pub fn new(
        ambient: Arc<FiniteGroup>,
        members: &[ElemId],
        central: ElemId,
        scalars: Arc<ScalarContext>,
    ) -> Result<Self> {
        let sub = ambient.subgroup_from_members(members);
        let local = sub
            .embedding
            .binary_search(&central)
            .map_err(|_| Error::Precondition("the element does not lie in the group".into()))?;
        if sub.embedding.iter().any(|&x| !ambient.commutes(x, central)) {
            return Err(Error::Precondition("the element is not central".into()));
        }
        let conj = Arc::new(ConjugacyData::new(sub.group.clone()));
        let table = CharacterTable::new(conj, scalars)?;
        let angles = (0..table.num_irr())
            .map(|i| table.angle_of_row(i, local))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ambient,
            embedding: sub.embedding,
            central,
            table,
            angles,
            products: OnceBox::new(),
        })
    }

    /// `Λ_G(g)` with `C = C_G(g)`.
    pub fn for_centralizer(group: Arc<FiniteGroup>, g: ElemId, scalars: Arc<ScalarContext>) -> Result<Self> {
        let members: Vec<ElemId> = (0..group.order()).filter(|&h| group.commutes(g, h)).collect();
        Self::new(group, &members, g, scalars)
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn embedding(&self) -> &[ElemId] {
        &self.embedding
    }

    /// Ambient id of `g`.
    pub fn central(&self) -> ElemId {
        self.central
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.conj().group()
    }

    pub fn order(&self) -> usize {
        self.embedding.len()
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn scalars(&self) -> &Arc<ScalarContext> {
        self.table.scalars()
    }

    pub fn rank(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[Rat] {
        &self.angles
    }

    pub fn angle(&self, i: usize) -> Rat {
        self.angles[i]
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.table.degree(i)
    }

    pub fn contains(&self, ambient_id: ElemId) -> bool {
        self.embedding.binary_search(&ambient_id).is_ok()
    }

    pub fn local(&self, ambient_id: ElemId) -> Option<ElemId> {
        self.embedding.binary_search(&ambient_id).ok()
    }

    pub fn same_as(&self, other: &Self) -> bool {
        core::ptr::eq(self, other)
            || (self.central == other.central
                && self.embedding == other.embedding
                && self.ambient.same_as(&other.ambient))
    }

    /// Decomposes a class function on `C`, checking every constituent has the given angle.
    fn decompose_at_angle(&self, f: &ClassFunction, angle: Rat) -> Result<Vec<(usize, i64)>> {
        let mults = self.table.decompose(f)?;
        let out: Vec<(usize, i64)> = mults
            .into_iter()
            .enumerate()
            .filter(|&(_, m)| m != 0)
            .collect();
        for &(mu, _) in &out {
            if self.angles[mu] != angle {
                return Err(Error::Internal(format!(
                    "constituent {mu} has angle {} where {angle} is forced",
                    self.angles[mu]
                )));
            }
        }
        Ok(out)
    }

    fn products(&self) -> Result<&Vec<Vec<Constituent>>> {
        self.products.get_or_try_init(|| {
            let r = self.rank();
            let mut out = Vec::with_capacity(r * r);
            for i in 0..r {
                for j in 0..r {
                    let s = self.angles[i] + self.angles[j];
                    let carry = s.to_integer();
                    let chi = self.table.tensor(self.table.row(i), self.table.row(j))?;
                    let parts = self.decompose_at_angle(&chi, s.fract())?;
                    out.push(parts.into_iter().map(|(mu, m)| (mu, m, carry)).collect());
                }
            }
            Ok(Box::new(out))
        })
    }

    /// `(μ, multiplicity, carry)` with `e_i e_j = Σ multiplicity · q^carry · e_μ`.
    pub fn product_constituents(&self, i: usize, j: usize) -> Result<&[Constituent]> {
        Ok(&self.products()?[i * self.rank() + j])
    }
}

/// An element of `RΛ_C(g)`: one coefficient in `ℤ[q^Q]` per basis element.
#[derive(Clone)]
pub struct LambdaElt {
    ctx: Arc<LambdaCtx>,
    coeffs: Vec<QLaurent>,
}

impl PartialEq for LambdaElt {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx.same_as(&other.ctx)
    }
}

impl Eq for LambdaElt {}

impl LambdaElt {
    pub fn zero(ctx: &Arc<LambdaCtx>) -> Self {
        Self {
            ctx: ctx.clone(),
            coeffs: vec![QLaurent::zero(); ctx.rank()],
        }
    }

    pub fn unit(ctx: &Arc<LambdaCtx>) -> Self {
        Self::basis(ctx, 0)
    }

    pub fn basis(ctx: &Arc<LambdaCtx>, i: usize) -> Self {
        Self::monomial(ctx, i, QLaurent::one())
    }

    pub fn monomial(ctx: &Arc<LambdaCtx>, i: usize, f: QLaurent) -> Self {
        let mut out = Self::zero(ctx);
        out.coeffs[i] = f;
        out
    }

    /// `f · 1`.
    pub fn scalar(ctx: &Arc<LambdaCtx>, f: QLaurent) -> Self {
        Self::monomial(ctx, 0, f)
    }

    pub fn from_coeffs(ctx: &Arc<LambdaCtx>, coeffs: Vec<QLaurent>) -> Result<Self> {
        if coeffs.len() != ctx.rank() {
            return Err(Error::Precondition(format!(
                "expected {} coefficients, got {}",
                ctx.rank(),
                coeffs.len()
            )));
        }
        Ok(Self {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn ctx(&self) -> &Arc<LambdaCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[QLaurent] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &QLaurent {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QLaurent::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&QLaurent, &QLaurent) -> QLaurent) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, f: &QLaurent) -> Self {
        Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a * f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for &(mu, m, carry) in self.ctx.product_constituents(i, j)? {
                    out.coeffs[mu] += &ab.scale(&BigInt::from(m)).shift(Rat::from_integer(carry));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::unit(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The bilinear `ℤ[q^Q]`-valued pairing making the basis orthonormal.
    pub fn pairing(&self, other: &Self) -> Result<QLaurent> {
        self.check(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum())
    }

    /// Image under `χ ↦ χ(1)` and `q ↦ 1`: the virtual dimension.
    pub fn dimension(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, f)| f.eval_at_one() * BigInt::from(self.ctx.degree(i)))
            .sum()
    }

    /// Pulls back along `φ: C_target → C_source` (given on ambient ids) with
    /// `φ(g_target)^n = g_source`; see the module documentation.
    pub fn transport(
        &self,
        target: &Arc<LambdaCtx>,
        map: impl Fn(ElemId) -> ElemId,
        n: u64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        let src = &self.ctx;
        let src_group = src.ambient();
        let image = map(target.central);
        if src_group.pow(image, n) != src.central {
            return Err(Error::Precondition(
                "the map does not send the central element to an n-th root of the source's".into(),
            ));
        }
        let tconj = target.table.conj();
        let rep_images = tconj
            .reps()
            .iter()
            .map(|&r| {
                src.local(map(target.embedding[r]))
                    .ok_or_else(|| Error::Precondition("the map leaves the source group".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let nr = Rat::from_integer(n as i64);
        let mut out = Self::zero(target);
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let row = src.table.row(i);
            let pulled = ClassFunction::new(
                tconj.clone(),
                rep_images.iter().map(|&x| row.at(x)).collect(),
            );
            let mults = target.table.decompose(&pulled)?;
            let f = f.rescale(nr.recip())?;
            let c = src.angle(i);
            for (lambda, m) in mults.into_iter().enumerate().filter(|&(_, m)| m != 0) {
                let shift = c - nr * target.angle(lambda);
                if !shift.is_integer() {
                    return Err(Error::Internal(format!(
                        "non-integral shift {shift} in transport of basis element {i}"
                    )));
                }
                out.coeffs[lambda] += &f.scale(&BigInt::from(m)).shift(shift / nr);
            }
        }
        Ok(out)
    }

    /// Conjugation transport `RΛ_C(g) → RΛ_{hCh⁻¹}(hgh⁻¹)`; `target` must be that context.
    pub fn conjugate(&self, h: ElemId, target: &Arc<LambdaCtx>) -> Result<Self> {
        let g = self.ctx.ambient().clone();
        if !g.same_as(target.ambient()) || target.central != g.conj(h, self.ctx.central) {
            return Err(Error::ContextMismatch);
        }
        let hinv = g.inv(h);
        self.transport(target, |x| g.conj(hinv, x), 1)
    }

    /// `RΛ_C(gⁿ) → RΛ_C(g)[q^{±1/n}]`, where `target` is a context at `g`.
    pub fn mu_transport(&self, target: &Arc<LambdaCtx>, n: u64) -> Result<Self> {
        self.transport(target, |x| x, n)
    }

    /// Induction to a larger subgroup of the same ambient group with the same central element.
    pub fn induce(&self, target: &Arc<LambdaCtx>) -> Result<Self> {
        let src = &self.ctx;
        if !src.ambient.same_as(&target.ambient) || src.central != target.central {
            return Err(Error::ContextMismatch);
        }
        let embedding = src
            .embedding
            .iter()
            .map(|&x| target.local(x).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        let index = (target.order() / src.order()) as i64;
        let scalars = src.scalars().clone();
        let mut out = Self::zero(target);
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let ind = induce_cf(&embedding, target.table.conj(), src.table.row(i), &scalars)?;
            let parts = target.decompose_at_angle(&ind, src.angle(i))?;
            let deg: i64 = parts.iter().map(|&(mu, m)| m * target.degree(mu) as i64).sum();
            if deg != index * src.degree(i) as i64 {
                return Err(Error::Internal("induced degree is not index times degree".into()));
            }
            for (mu, m) in parts {
                out.coeffs[mu] += &f.scale(&BigInt::from(m));
            }
        }
        Ok(out)
    }

    pub fn adams(&self, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("Adams operations need m ≥ 1".into()));
        }
        let ctx = &self.ctx;
        let mr = Rat::from_integer(m as i64);
        let mut out = Self::zero(ctx);
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let mc = mr * ctx.angle(i);
            let psi = ctx.table.adams(ctx.table.row(i), m);
            let f = f.rescale(mr)?.shift(Rat::from_integer(mc.floor().to_integer()));
            for (lambda, mult) in ctx.decompose_at_angle(&psi, mc.fract())? {
                out.coeffs[lambda] += &f.scale(&BigInt::from(mult));
            }
        }
        Ok(out)
    }

    /// `λ^k` by the Newton recurrence `k λ^k = Σ_{i=1..k} (-1)^{i-1} ψ^i λ^{k-i}`.
    pub fn exterior(&self, k: u32) -> Result<Self> {
        Ok(self.exterior_powers(k)?.pop().expect("at least λ⁰"))
    }

    /// `[λ^0, ..., λ^k]`.
    pub fn exterior_powers(&self, k: u32) -> Result<Vec<Self>> {
        let mut lambdas = vec![Self::unit(&self.ctx)];
        let adams = (1..=k as u64).map(|i| self.adams(i)).collect::<Result<Vec<_>>>()?;
        for j in 1..=k as usize {
            let mut acc = Self::zero(&self.ctx);
            for i in 1..=j {
                let term = adams[i - 1].mul(&lambdas[j - i])?;
                acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            let jj = BigInt::from(j);
            let coeffs = acc
                .coeffs
                .iter()
                .map(|f| {
                    f.div_exact(&jj).ok_or_else(|| {
                        Error::Internal(format!("Newton recurrence is not integral at k = {j}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            lambdas.push(Self::from_coeffs(&self.ctx, coeffs)?);
        }
        Ok(lambdas)
    }
}

impl fmt::Display for LambdaElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let a = self.ctx.angle(i);
            if c.is_one() {
                write!(f, "e{i}@{a}")?;
            } else {
                write!(f, "({c})e{i}@{a}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests;
