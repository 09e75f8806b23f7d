use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{ElemId, FiniteGroup, Subgroup};

/// Conjugacy classes of a group with canonical (least) representatives.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    group: Arc<FiniteGroup>,
    reps: Vec<ElemId>,
    class_of: Vec<usize>,
    sizes: Vec<usize>,
    /// `conjugator[x]` is some `k` with `k · rep · k⁻¹ = x`.
    conjugator: Vec<ElemId>,
    centralizers: Vec<Vec<ElemId>>,
    centralizer_gens: Vec<Vec<ElemId>>,
    inverse_class: Vec<usize>,
}

impl ConjugacyData {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let gens = group.generator_ids();
        let mut class_of = alloc::vec![usize::MAX; n];
        let mut conjugator = alloc::vec![0; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            class_of[x] = class;
            conjugator[x] = 0;
            let mut size = 1;
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &s in &gens {
                    let z = group.conj(s, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = class;
                        conjugator[z] = group.mul(s, conjugator[y]);
                        size += 1;
                        queue.push_back(z);
                    }
                }
            }
            sizes.push(size);
        }
        let centralizers: Vec<Vec<ElemId>> = reps
            .iter()
            .map(|&g| (0..n).filter(|&h| group.commutes(g, h)).collect())
            .collect();
        let centralizer_gens = centralizers
            .iter()
            .map(|members| greedy_generators(&group, members))
            .collect();
        let inverse_class = reps.iter().map(|&g| class_of[group.inv(g)]).collect();
        Self {
            group,
            reps,
            class_of,
            sizes,
            conjugator,
            centralizers,
            centralizer_gens,
            inverse_class,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }

    pub fn rep(&self, class: usize) -> ElemId {
        self.reps[class]
    }

    pub fn class_of(&self, x: ElemId) -> usize {
        self.class_of[x]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, class: usize) -> usize {
        self.sizes[class]
    }

    /// Some `k` with `k · rep(class_of(x)) · k⁻¹ = x`.
    pub fn conjugator(&self, x: ElemId) -> ElemId {
        self.conjugator[x]
    }

    pub fn centralizer(&self, class: usize) -> &[ElemId] {
        &self.centralizers[class]
    }

    pub fn centralizer_gens(&self, class: usize) -> &[ElemId] {
        &self.centralizer_gens[class]
    }

    pub fn centralizer_order(&self, class: usize) -> usize {
        self.centralizers[class].len()
    }

    pub fn centralizer_subgroup(&self, class: usize) -> Subgroup {
        self.group.subgroup_from_members(&self.centralizers[class])
    }

    /// Class of `g⁻¹` for `g` in the given class.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }

    /// Class of `g^m` for `g` in the given class.
    pub fn power_class(&self, class: usize, m: u64) -> usize {
        self.class_of[self.group.pow(self.reps[class], m)]
    }

    pub fn are_conjugate(&self, a: ElemId, b: ElemId) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

fn greedy_generators(group: &FiniteGroup, members: &[ElemId]) -> Vec<ElemId> {
    let mut gens = Vec::new();
    let mut span = alloc::collections::BTreeSet::from([0]);
    for &m in members {
        if !span.contains(&m) {
            gens.push(m);
            span = group.closure_ids(&gens);
        }
    }
    gens
}

/// The transporter `{x ∈ G : g x = x g'}`; empty iff `g` and `g'` are not conjugate.
pub fn transporter(group: &FiniteGroup, g: ElemId, g_prime: ElemId) -> Vec<ElemId> {
    (0..group.order())
        .filter(|&x| group.mul(g, x) == group.mul(x, g_prime))
        .collect()
}
