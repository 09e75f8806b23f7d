use alloc::collections::VecDeque;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{ElemId, FiniteGroup, Subgroup};
use crate::{Error, Result};

/// A verified homomorphism between enumerated groups.
#[derive(Clone, Debug)]
pub struct GroupHom {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    image_of: Vec<ElemId>,
}

/// Extends `generator_images` (one codomain element per domain generator) to
/// the whole domain and checks the result is a homomorphism.
///
/// The extension walks the Cayley graph; the check `φ(s·x) = φ(s)·φ(x)` for
/// every generator `s` and every `x` proves multiplicativity on all pairs.
pub fn make_hom(
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    generator_images: &[ElemId],
) -> Result<GroupHom> {
    let gens = domain.generator_ids();
    if gens.len() != generator_images.len() {
        return Err(Error::ImageUndefined(format!(
            "{} generators but {} images",
            gens.len(),
            generator_images.len()
        )));
    }
    if generator_images.iter().any(|&y| y >= codomain.order()) {
        return Err(Error::ImageUndefined("image outside codomain".into()));
    }
    let mut image_of = alloc::vec![usize::MAX; domain.order()];
    image_of[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(generator_images) {
            let sx = domain.mul(s, x);
            let img = codomain.mul(t, image_of[x]);
            if image_of[sx] == usize::MAX {
                image_of[sx] = img;
                queue.push_back(sx);
            } else if image_of[sx] != img {
                return Err(Error::NotHomomorphism(format!(
                    "generator images are inconsistent at {}",
                    domain.element(sx)
                )));
            }
        }
    }
    Ok(GroupHom {
        domain,
        codomain,
        image_of,
    })
}

impl GroupHom {
    /// Builds a homomorphism from a full element map, verifying it on all pairs.
    pub fn from_map(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        image_of: Vec<ElemId>,
    ) -> Result<Self> {
        if image_of.len() != domain.order() {
            return Err(Error::ImageUndefined("map is not total".into()));
        }
        let n = domain.order();
        for a in 0..n {
            for b in 0..n {
                if image_of[domain.mul(a, b)] != codomain.mul(image_of[a], image_of[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "fails on ({}, {})",
                        domain.element(a),
                        domain.element(b)
                    )));
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            image_of,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let image_of = (0..group.order()).collect();
        Self {
            domain: group.clone(),
            codomain: group,
            image_of,
        }
    }

    pub fn inclusion(ambient: Arc<FiniteGroup>, sub: &Subgroup) -> Self {
        Self {
            domain: sub.group.clone(),
            codomain: ambient,
            image_of: sub.embedding.clone(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !self.codomain.same_as(&other.domain) {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            image_of: self.image_of.iter().map(|&y| other.image_of[y]).collect(),
        })
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    pub fn apply(&self, x: ElemId) -> ElemId {
        self.image_of[x]
    }

    pub fn images(&self) -> &[ElemId] {
        &self.image_of
    }

    pub fn kernel(&self) -> Vec<ElemId> {
        (0..self.domain.order())
            .filter(|&x| self.image_of[x] == 0)
            .collect()
    }
}
