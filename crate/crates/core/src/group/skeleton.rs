use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{orbits_with_stabilizers, ConjugacyData, ElemId, FiniteGSet, FiniteGroup, Orbit};

/// Combinatorial model of the constant-loop groupoid of `X//G`: for each class
/// representative `g`, the fixed set `X^g` split into `C_G(g)`-orbits.
#[derive(Clone, Debug)]
pub struct InertiaSkeleton {
    pub conj: Arc<ConjugacyData>,
    pub gset: Arc<FiniteGSet>,
    pub entries: Vec<SkeletonEntry>,
}

#[derive(Clone, Debug)]
pub struct SkeletonEntry {
    pub rep: ElemId,
    pub order: u32,
    pub centralizer: Vec<ElemId>,
    pub fixed: Vec<usize>,
    pub orbits: Vec<Orbit>,
    /// `orbit_of[x]` is the orbit index of `x ∈ X^g`, or `usize::MAX` off `X^g`.
    pub orbit_of: Vec<usize>,
}

impl InertiaSkeleton {
    pub fn new(conj: Arc<ConjugacyData>, gset: Arc<FiniteGSet>) -> Self {
        let group = conj.group().clone();
        let entries = (0..conj.num_classes())
            .map(|k| {
                let rep = conj.rep(k);
                let centralizer = conj.centralizer(k).to_vec();
                let fixed = gset.fixed_points(rep);
                let orbits = orbits_with_stabilizers(&gset, &centralizer, &fixed);
                let mut orbit_of = alloc::vec![usize::MAX; gset.len()];
                for (i, o) in orbits.iter().enumerate() {
                    for &p in &o.points {
                        orbit_of[p] = i;
                    }
                }
                SkeletonEntry {
                    rep,
                    order: group.elem_order(rep),
                    centralizer,
                    fixed,
                    orbits,
                    orbit_of,
                }
            })
            .collect();
        Self {
            conj,
            gset,
            entries,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.conj.group()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, induced_gset, Family, Permutation};
    use crate::DEFAULT_ORDER_CAP as CAP;
    use alloc::vec;

    fn skeleton(g: Arc<FiniteGroup>, x: FiniteGSet) -> InertiaSkeleton {
        InertiaSkeleton::new(Arc::new(ConjugacyData::new(g)), Arc::new(x))
    }

    #[test]
    fn s3_on_a_point() {
        let s3 = Arc::new(builtin(&Family::Symmetric(3), CAP).unwrap());
        let sk = skeleton(s3.clone(), FiniteGSet::point(s3));
        let orders: Vec<usize> = sk.entries.iter().map(|e| e.centralizer.len()).collect();
        assert_eq!(orders, vec![6, 2, 3]);
        for e in &sk.entries {
            assert_eq!(e.orbits.len(), 1);
            assert_eq!(e.orbits[0].stabilizer, e.centralizer);
        }
    }

    #[test]
    fn c2_regular_is_free() {
        let c2 = Arc::new(builtin(&Family::Cyclic(2), CAP).unwrap());
        let sk = skeleton(c2.clone(), FiniteGSet::regular(c2));
        assert_eq!(sk.entries[0].orbits.len(), 1);
        assert_eq!(sk.entries[0].orbits[0].stabilizer, vec![0]);
        assert!(sk.entries[1].fixed.is_empty());
    }

    #[test]
    fn s3_on_cosets_of_c2() {
        let s3 = Arc::new(builtin(&Family::Symmetric(3), CAP).unwrap());
        let t = s3
            .index_of(&Permutation::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let h = s3.subgroup_generated(&[t]);
        let x = induced_gset(&s3, &h, &FiniteGSet::point(h.group.clone())).unwrap().gset;
        let sk = skeleton(s3.clone(), x.clone());
        // Oracle: brute-force fixed sets.
        for e in &sk.entries {
            let brute: Vec<usize> = (0..3).filter(|&p| x.act(e.rep, p) == p).collect();
            assert_eq!(e.fixed, brute);
            for o in &e.orbits {
                assert_eq!(o.points.len() * o.stabilizer.len(), e.centralizer.len());
                assert!(o.stabilizer.contains(&e.rep));
            }
        }
        let shape: Vec<(usize, Vec<usize>)> = sk
            .entries
            .iter()
            .map(|e| (e.fixed.len(), e.orbits.iter().map(|o| o.stabilizer.len()).collect()))
            .collect();
        assert_eq!(shape, vec![(3, vec![2]), (1, vec![2]), (0, vec![])]);
    }
}
