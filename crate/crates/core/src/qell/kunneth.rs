//! The Künneth map `QEll_G(X) ⊗ QEll_H(Y) → QEll_{G×H}(X × Y)`.
//!
//! Centralizers and stabilizers in `G × H` are products, so each pair of
//! stored orbits `(x, y)` corresponds to exactly one stored orbit of the
//! product. On basis elements the map is `(ρ, c) ⊗ (ρ′, c′) ↦
//! q^{⌊c+c′⌋} (ρ ⊠ ρ′, frac(c + c′))`; the outer product of irreducibles of
//! `S` and `T` is irreducible for `S × T`, and every irreducible of `S × T`
//! arises exactly once, so on each orbit pair the basis map is a bijection.
//! This is checked while the map is built.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use super::{QEllElt, QEllStructure};
use crate::charmod::{ClassFunction, ScalarContext};
use crate::group::{make_hom, DirectProduct, FiniteGSet};
use crate::lambda::LambdaElt;
use crate::qlaurent::QLaurent;
use crate::{Error, Rat, Result};

/// Where one pair of stored orbits lands in the product, and the basis map.
#[derive(Clone, Debug)]
struct Block {
    class: usize,
    orbit: usize,
    /// `images[α · r_b + β] = (μ, ⌊c_α + c_β⌋)`.
    images: Vec<(usize, i64)>,
}

/// Precomputed Künneth data for `G` on `X` and `H` on `Y`.
pub struct Kunneth {
    dp: DirectProduct,
    left: Arc<QEllStructure>,
    right: Arc<QEllStructure>,
    product: Arc<QEllStructure>,
    /// Flattened `(class, orbit)` slots of each factor.
    left_slots: Vec<(usize, usize)>,
    right_slots: Vec<(usize, usize)>,
    blocks: Vec<Block>,
    /// For each product `(class, orbit)`, its block index.
    block_of: Vec<Vec<usize>>,
}

/// An element of `QEll_G(X) ⊗_{ℤ[q^±]} QEll_H(Y)` in the tensor basis.
#[derive(Clone, PartialEq, Eq)]
pub struct QEllTensor {
    left_rank: Vec<usize>,
    right_rank: Vec<usize>,
    /// `blocks[a · n_b + b][α][β]`.
    blocks: Vec<Vec<Vec<QLaurent>>>,
}

fn slots(s: &QEllStructure) -> Vec<(usize, usize)> {
    s.classes()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| (0..comp.orbits.len()).map(move |o| (c, o)))
        .collect()
}

impl Kunneth {
    /// Builds all three structures over one scalar context.
    pub fn new(
        dp: DirectProduct,
        x: Arc<FiniteGSet>,
        y: Arc<FiniteGSet>,
        scalars: Arc<ScalarContext>,
    ) -> Result<Self> {
        let xy = Arc::new(FiniteGSet::product(&dp, &x, &y)?);
        let left = QEllStructure::new(x, scalars.clone())?;
        let right = QEllStructure::new(y, scalars.clone())?;
        let product = QEllStructure::new(xy, scalars)?;
        Self::from_structures(dp, left, right, product)
    }

    /// The splitting of `QEll_{G×H}(X)` when `H` acts trivially on `X`:
    /// the left factor is `X` as a `G`-set and the right factor is `QEll_H(pt)`.
    pub fn for_trivial_action(input: &Arc<QEllStructure>, dp: DirectProduct) -> Result<Self> {
        if !input.group().same_as(&dp.group) {
            return Err(Error::GroupMismatch);
        }
        let z = input.gset();
        for h in dp.right_inclusion() {
            if (0..z.len()).any(|p| z.act(h, p) != p) {
                return Err(Error::ActionNotTrivial);
            }
        }
        let images: Vec<usize> = dp
            .left
            .generator_ids()
            .into_iter()
            .map(|g| dp.pair(g, 0))
            .collect();
        let inclusion = make_hom(dp.left.clone(), dp.group.clone(), &images)?;
        let x = Arc::new(z.restrict(&inclusion)?);
        let pt = Arc::new(FiniteGSet::point(dp.right.clone()));
        if !FiniteGSet::product(&dp, &x, &pt)?.same_as(z) {
            return Err(Error::Internal("X × pt does not reproduce the input set".into()));
        }
        let scalars = input.scalars().clone();
        let left = QEllStructure::new(x, scalars.clone())?;
        let right = QEllStructure::new(pt, scalars)?;
        Self::from_structures(dp, left, right, input.clone())
    }

    fn from_structures(
        dp: DirectProduct,
        left: Arc<QEllStructure>,
        right: Arc<QEllStructure>,
        product: Arc<QEllStructure>,
    ) -> Result<Self> {
        if !left.group().same_as(&dp.left) || !right.group().same_as(&dp.right) {
            return Err(Error::GroupMismatch);
        }
        super::maps::check_scalars(left.scalars(), product.scalars())?;
        super::maps::check_scalars(right.scalars(), product.scalars())?;
        let scalars = product.scalars().clone();
        let pg = product.group().clone();
        let ny = right.gset().len();
        let left_slots = slots(&left);
        let right_slots = slots(&right);
        let mut block_of: Vec<Vec<usize>> = product
            .classes()
            .iter()
            .map(|c| alloc::vec![usize::MAX; c.orbits.len()])
            .collect();
        let mut blocks = Vec::with_capacity(left_slots.len() * right_slots.len());
        for &(ci, oi) in &left_slots {
            let lc = left.class(ci);
            let lctx = &lc.orbits[oi].ctx;
            for &(cj, oj) in &right_slots {
                let rc = right.class(cj);
                let rctx = &rc.orbits[oj].ctx;
                let sigma = dp.pair(lc.rep, rc.rep);
                let point = lc.orbits[oi].orbit.rep * ny + rc.orbits[oj].orbit.rep;
                let loc = product.locate(sigma, point)?;
                if block_of[loc.class][loc.orbit] != usize::MAX {
                    return Err(Error::Internal("two orbit pairs share a product orbit".into()));
                }
                block_of[loc.class][loc.orbit] = blocks.len();
                let pctx = &product.class(loc.class).orbits[loc.orbit].ctx;
                let (u, uinv) = (loc.u, pg.inv(loc.u));
                // Stored stabilizer element s corresponds to u s u⁻¹ ∈ S × T.
                let split_reps: Vec<(usize, usize)> = pctx
                    .table()
                    .conj()
                    .reps()
                    .iter()
                    .map(|&r| {
                        let s = pg.mul(pg.mul(u, pctx.embedding()[r]), uinv);
                        let (a, b) = dp.split(s);
                        match (lctx.local(a), rctx.local(b)) {
                            (Some(a), Some(b)) => Ok((a, b)),
                            _ => Err(Error::Internal("product stabilizer does not split".into())),
                        }
                    })
                    .collect::<Result<_>>()?;
                let (ra, rb) = (lctx.rank(), rctx.rank());
                let mut images = Vec::with_capacity(ra * rb);
                let mut seen = alloc::vec![false; pctx.rank()];
                for alpha in 0..ra {
                    let chi = lctx.table().row(alpha);
                    for beta in 0..rb {
                        let psi = rctx.table().row(beta);
                        let values = split_reps
                            .iter()
                            .map(|&(a, b)| scalars.mul(chi.at(a), psi.at(b)))
                            .collect();
                        let cf = ClassFunction::new(pctx.table().conj().clone(), values);
                        let mults = pctx.table().decompose(&cf)?;
                        let mut nonzero = mults.iter().enumerate().filter(|&(_, &m)| m != 0);
                        let mu = match (nonzero.next(), nonzero.next()) {
                            (Some((mu, &1)), None) => mu,
                            _ => {
                                return Err(Error::Internal(format!(
                                    "outer product of rows {alpha}, {beta} is not irreducible"
                                )))
                            }
                        };
                        let c = lctx.angle(alpha) + rctx.angle(beta);
                        if pctx.angle(mu) != c.fract() {
                            return Err(Error::Internal("outer product has the wrong angle".into()));
                        }
                        if core::mem::replace(&mut seen[mu], true) {
                            return Err(Error::Internal("basis map is not injective".into()));
                        }
                        images.push((mu, c.floor().to_integer()));
                    }
                }
                if images.len() != pctx.rank() {
                    return Err(Error::Internal("basis map is not surjective".into()));
                }
                blocks.push(Block {
                    class: loc.class,
                    orbit: loc.orbit,
                    images,
                });
            }
        }
        if block_of.iter().flatten().any(|&b| b == usize::MAX) {
            return Err(Error::Internal("a product orbit comes from no orbit pair".into()));
        }
        Ok(Self {
            dp,
            left,
            right,
            product,
            left_slots,
            right_slots,
            blocks,
            block_of,
        })
    }

    pub fn direct_product(&self) -> &DirectProduct {
        &self.dp
    }

    pub fn left(&self) -> &Arc<QEllStructure> {
        &self.left
    }

    pub fn right(&self) -> &Arc<QEllStructure> {
        &self.right
    }

    pub fn product(&self) -> &Arc<QEllStructure> {
        &self.product
    }

    fn slot_rank(s: &QEllStructure, slots: &[(usize, usize)]) -> Vec<usize> {
        slots.iter().map(|&(c, o)| s.class(c).orbits[o].ctx.rank()).collect()
    }

    /// `a ⊗ b`.
    pub fn tensor(&self, a: &QEllElt, b: &QEllElt) -> Result<QEllTensor> {
        if !a.structure().same_as(&self.left) || !b.structure().same_as(&self.right) {
            return Err(Error::ContextMismatch);
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for &(ci, oi) in &self.left_slots {
            let x = a.component(ci, oi);
            for &(cj, oj) in &self.right_slots {
                let y = b.component(cj, oj);
                blocks.push(
                    x.coeffs()
                        .iter()
                        .map(|f| y.coeffs().iter().map(|g| f * g).collect())
                        .collect(),
                );
            }
        }
        Ok(QEllTensor {
            left_rank: Self::slot_rank(&self.left, &self.left_slots),
            right_rank: Self::slot_rank(&self.right, &self.right_slots),
            blocks,
        })
    }

    /// The Künneth map on the tensor basis.
    pub fn apply(&self, t: &QEllTensor) -> Result<QEllElt> {
        if t.blocks.len() != self.blocks.len() {
            return Err(Error::ContextMismatch);
        }
        let mut comps: Vec<Vec<Vec<QLaurent>>> = self
            .product
            .classes()
            .iter()
            .map(|c| c.orbits.iter().map(|o| alloc::vec![QLaurent::zero(); o.ctx.rank()]).collect())
            .collect();
        for (block, m) in self.blocks.iter().zip(&t.blocks) {
            let out = &mut comps[block.class][block.orbit];
            let rb = m.first().map_or(0, Vec::len);
            for (alpha, row) in m.iter().enumerate() {
                for (beta, f) in row.iter().enumerate() {
                    let (mu, carry) = block.images[alpha * rb + beta];
                    out[mu] += &f.shift(Rat::from_integer(carry));
                }
            }
        }
        self.assemble(comps)
    }

    /// `a ⊗ b ↦ a ⊠ b`.
    pub fn kunneth(&self, a: &QEllElt, b: &QEllElt) -> Result<QEllElt> {
        self.apply(&self.tensor(a, b)?)
    }

    /// The inverse of [`Kunneth::apply`].
    pub fn split(&self, c: &QEllElt) -> Result<QEllTensor> {
        if !c.structure().same_as(&self.product) {
            return Err(Error::ContextMismatch);
        }
        let left_rank = Self::slot_rank(&self.left, &self.left_slots);
        let right_rank = Self::slot_rank(&self.right, &self.right_slots);
        let nb = right_rank.len();
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (i, block) in self.blocks.iter().enumerate() {
            let (ra, rb) = (left_rank[i / nb], right_rank[i % nb]);
            let src = c.component(block.class, block.orbit);
            let m = (0..ra)
                .map(|alpha| {
                    (0..rb)
                        .map(|beta| {
                            let (mu, carry) = block.images[alpha * rb + beta];
                            src.coeff(mu).shift(Rat::from_integer(-carry))
                        })
                        .collect()
                })
                .collect();
            blocks.push(m);
        }
        debug_assert!(self.block_of.iter().flatten().all(|&b| b < self.blocks.len()));
        Ok(QEllTensor {
            left_rank,
            right_rank,
            blocks,
        })
    }

    /// Splitting for a trivially acting right factor; see [`Kunneth::for_trivial_action`].
    pub fn trivial_split(&self, c: &QEllElt) -> Result<QEllTensor> {
        self.split(c)
    }

    /// Recomputes the image of every basis pair and checks that together they
    /// are exactly the product basis up to unit `q`-powers.
    pub fn verify_basis_bijection(&self) -> Result<()> {
        let mut hit: Vec<Vec<Vec<bool>>> = self
            .product
            .classes()
            .iter()
            .map(|c| c.orbits.iter().map(|o| alloc::vec![false; o.ctx.rank()]).collect())
            .collect();
        for (ia, &(ci, oi)) in self.left_slots.iter().enumerate() {
            let lctx = &self.left.class(ci).orbits[oi].ctx;
            for alpha in 0..lctx.rank() {
                let a = self.unit_at(&self.left, ia, &self.left_slots, LambdaElt::basis(lctx, alpha))?;
                for (ib, &(cj, oj)) in self.right_slots.iter().enumerate() {
                    let rctx = &self.right.class(cj).orbits[oj].ctx;
                    for beta in 0..rctx.rank() {
                        let b = self.unit_at(
                            &self.right,
                            ib,
                            &self.right_slots,
                            LambdaElt::basis(rctx, beta),
                        )?;
                        let img = self.kunneth(&a, &b)?;
                        let mut terms = Vec::new();
                        for (c, row) in img.components().iter().enumerate() {
                            for (o, e) in row.iter().enumerate() {
                                for (mu, f) in e.coeffs().iter().enumerate() {
                                    if !f.is_zero() {
                                        terms.push((c, o, mu, f.clone()));
                                    }
                                }
                            }
                        }
                        match terms.as_slice() {
                            [(c, o, mu, f)] if f.num_terms() == 1 && is_unit_power(f) => {
                                if core::mem::replace(&mut hit[*c][*o][*mu], true) {
                                    return Err(Error::Internal("basis image repeated".into()));
                                }
                            }
                            _ => return Err(Error::Internal("basis pair maps to a non-basis element".into())),
                        }
                    }
                }
            }
        }
        if hit.iter().flatten().flatten().all(|&h| h) {
            Ok(())
        } else {
            Err(Error::Internal("product basis element not hit".into()))
        }
    }

    fn unit_at(
        &self,
        s: &Arc<QEllStructure>,
        slot: usize,
        slots: &[(usize, usize)],
        value: LambdaElt,
    ) -> Result<QEllElt> {
        let mut e = QEllElt::zero(s);
        let (c, o) = slots[slot];
        e.set_component(c, o, value)?;
        Ok(e)
    }

    fn assemble(&self, comps: Vec<Vec<Vec<QLaurent>>>) -> Result<QEllElt> {
        let elts = self
            .product
            .classes()
            .iter()
            .zip(comps)
            .map(|(c, row)| {
                c.orbits
                    .iter()
                    .zip(row)
                    .map(|(o, coeffs)| LambdaElt::from_coeffs(&o.ctx, coeffs))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        QEllElt::from_components(&self.product, elts)
    }
}

fn is_unit_power(f: &QLaurent) -> bool {
    f.terms()
        .all(|(e, c)| e.is_integer() && (*c == BigInt::from(1) || *c == BigInt::from(-1)))
}

impl QEllTensor {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(QLaurent::is_zero)
    }

    /// Coefficient matrix of the orbit pair `(a, b)` (flattened slot indices).
    pub fn block(&self, a: usize, b: usize) -> &[Vec<QLaurent>] {
        &self.blocks[a * self.right_rank.len() + b]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.left_rank != other.left_rank || self.right_rank != other.right_rank {
            return Err(Error::ContextMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| {
                x.iter()
                    .zip(y)
                    .map(|(r, s)| r.iter().zip(s).map(|(f, g)| f + g).collect())
                    .collect()
            })
            .collect();
        Ok(Self {
            left_rank: self.left_rank.clone(),
            right_rank: self.right_rank.clone(),
            blocks,
        })
    }
}

impl fmt::Debug for QEllTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nb = self.right_rank.len();
        let mut first = true;
        for (i, m) in self.blocks.iter().enumerate() {
            for (alpha, row) in m.iter().enumerate() {
                for (beta, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    write!(f, "({c})[{}:{alpha} ⊗ {}:{beta}]", i / nb, i % nb)?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
