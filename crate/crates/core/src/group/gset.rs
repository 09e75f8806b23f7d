use alloc::collections::VecDeque;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{DirectProduct, ElemId, FiniteGroup, GroupHom, Permutation, Subgroup};
use crate::{Error, Result};

/// A finite set `{0, .., n-1}` with a verified left action of a group.
#[derive(Clone, Debug)]
pub struct FiniteGSet {
    group: Arc<FiniteGroup>,
    points: usize,
    /// `act[g * points + x] = g · x`.
    act: Vec<u32>,
}

impl FiniteGSet {
    /// Builds the action table from `f` and verifies the action axioms.
    ///
    /// It suffices to check `e·x = x` and `(s·h)·x = s·(h·x)` for generators `s`.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        points: usize,
        f: impl Fn(ElemId, usize) -> usize,
    ) -> Result<Self> {
        let mut act = Vec::with_capacity(group.order() * points);
        for g in 0..group.order() {
            for x in 0..points {
                let y = f(g, x);
                if y >= points {
                    return Err(Error::InvalidAction(format!("{y} is not a point")));
                }
                act.push(y as u32);
            }
        }
        let set = Self { group, points, act };
        set.verify()?;
        Ok(set)
    }

    fn verify(&self) -> Result<()> {
        let g = &self.group;
        for x in 0..self.points {
            if self.act(0, x) != x {
                return Err(Error::InvalidAction("identity moves a point".into()));
            }
        }
        for s in g.generator_ids() {
            for h in 0..g.order() {
                let sh = g.mul(s, h);
                for x in 0..self.points {
                    if self.act(sh, x) != self.act(s, self.act(h, x)) {
                        return Err(Error::InvalidAction(format!(
                            "(g h)·x ≠ g·(h·x) for g = {}, h = {}, x = {x}",
                            g.element(s),
                            g.element(h)
                        )));
                    }
                }
            }
        }
        for g in 0..g.order() {
            let mut seen = alloc::vec![false; self.points];
            for x in 0..self.points {
                let y = self.act(g, x);
                if seen[y] {
                    return Err(Error::InvalidAction("an element acts non-bijectively".into()));
                }
                seen[y] = true;
            }
        }
        Ok(())
    }

    /// Action determined by the permutation each group generator induces on the points.
    pub fn from_generator_perms(
        group: Arc<FiniteGroup>,
        points: usize,
        generator_perms: &[Permutation],
    ) -> Result<Self> {
        let gens = group.generator_ids();
        if gens.len() != generator_perms.len() || generator_perms.iter().any(|p| p.degree() != points) {
            return Err(Error::InvalidAction(
                "need one permutation of the point set per generator".into(),
            ));
        }
        let mut perm_of: Vec<Option<Permutation>> = alloc::vec![None; group.order()];
        perm_of[0] = Some(Permutation::identity(points));
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            let px = perm_of[x].clone().expect("visited");
            for (&s, ps) in gens.iter().zip(generator_perms) {
                let sx = group.mul(s, x);
                let img = ps.compose(&px);
                match &perm_of[sx] {
                    None => {
                        perm_of[sx] = Some(img);
                        queue.push_back(sx);
                    }
                    Some(existing) if *existing != img => {
                        return Err(Error::InvalidAction(
                            "generator permutations do not define an action".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
        let perms: Vec<Permutation> = perm_of.into_iter().map(|p| p.expect("connected")).collect();
        Self::from_fn(group, points, |g, x| perms[g].apply(x))
    }

    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let act = alloc::vec![0; group.order()];
        Self {
            group,
            points: 1,
            act,
        }
    }

    /// Left multiplication on the group's own elements.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut act = Vec::with_capacity(n * n);
        for g in 0..n {
            for x in 0..n {
                act.push(group.mul(g, x) as u32);
            }
        }
        Self {
            group,
            points: n,
            act,
        }
    }

    /// The defining permutation action on `degree` points.
    pub fn natural(group: Arc<FiniteGroup>) -> Self {
        let n = group.degree();
        let act = group
            .elements()
            .iter()
            .flat_map(|p| p.images().iter().copied())
            .collect();
        Self {
            group,
            points: n,
            act,
        }
    }

    /// `φ*X`: the `G`-set with `g · x = φ(g) · x`.
    pub fn restrict(&self, hom: &GroupHom) -> Result<Self> {
        if !hom.codomain().same_as(&self.group) {
            return Err(Error::GroupMismatch);
        }
        let group = hom.domain().clone();
        let mut act = Vec::with_capacity(group.order() * self.points);
        for g in 0..group.order() {
            let h = hom.apply(g);
            act.extend_from_slice(&self.act[h * self.points..(h + 1) * self.points]);
        }
        Ok(Self {
            group,
            points: self.points,
            act,
        })
    }

    /// `X × Y` as a `G × H`-set; the pair `(x, y)` is point `x·|Y| + y`.
    pub fn product(dp: &DirectProduct, x: &FiniteGSet, y: &FiniteGSet) -> Result<Self> {
        if !x.group.same_as(&dp.left) || !y.group.same_as(&dp.right) {
            return Err(Error::GroupMismatch);
        }
        let ny = y.points;
        let points = x.points * ny;
        let group = dp.group.clone();
        let mut act = Vec::with_capacity(group.order() * points);
        for g in 0..group.order() {
            let (a, b) = dp.split(g);
            for p in 0..points {
                act.push((x.act(a, p / ny) * ny + y.act(b, p % ny)) as u32);
            }
        }
        Ok(Self { group, points, act })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    pub fn act(&self, g: ElemId, x: usize) -> usize {
        self.act[g * self.points + x] as usize
    }

    /// The permutation of the points induced by each group generator.
    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.group
            .generator_ids()
            .into_iter()
            .map(|s| {
                Permutation::new((0..self.points).map(|x| self.act(s, x) as u32).collect())
                    .expect("action is bijective")
            })
            .collect()
    }

    pub fn same_as(&self, other: &Self) -> bool {
        core::ptr::eq(self, other)
            || (self.group.same_as(&other.group) && self.points == other.points && self.act == other.act)
    }

    pub fn fixed_points(&self, g: ElemId) -> Vec<usize> {
        (0..self.points).filter(|&x| self.act(g, x) == x).collect()
    }

    pub fn is_free(&self) -> bool {
        (1..self.group.order()).all(|g| self.fixed_points(g).is_empty())
    }

    /// Checks that `f` (point map `self → other`, same group) is equivariant.
    pub fn is_equivariant_map(&self, other: &Self, f: &[usize]) -> bool {
        f.len() == self.points
            && self.group.same_as(&other.group)
            && f.iter().all(|&y| y < other.points)
            && self.group.generator_ids().into_iter().all(|s| {
                (0..self.points).all(|x| f[self.act(s, x)] == other.act(s, f[x]))
            })
    }
}

/// An orbit of a subgroup `A` acting on a subset of a G-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Least point of the orbit.
    pub rep: usize,
    pub points: Vec<usize>,
    /// `transversal[i] · rep = points[i]`, as ids of the ambient group.
    pub transversal: Vec<ElemId>,
    /// Stabilizer of `rep` in `A`, as sorted ids of the ambient group.
    pub stabilizer: Vec<ElemId>,
}

impl Orbit {
    pub fn position(&self, x: usize) -> Option<usize> {
        self.points.binary_search(&x).ok()
    }
}

/// Orbits of the group with ambient ids `acting` on the invariant subset `points`.
pub fn orbits_with_stabilizers(x: &FiniteGSet, acting: &[ElemId], points: &[usize]) -> Vec<Orbit> {
    let mut done = alloc::vec![false; x.len()];
    let mut out = Vec::new();
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    for &p in &sorted {
        if done[p] {
            continue;
        }
        let mut pts: Vec<(usize, ElemId)> = Vec::new();
        let mut stabilizer = Vec::new();
        for &a in acting {
            let y = x.act(a, p);
            if y == p {
                stabilizer.push(a);
            }
            if !done[y] {
                done[y] = true;
                pts.push((y, a));
            }
        }
        pts.sort_unstable();
        stabilizer.sort_unstable();
        out.push(Orbit {
            rep: p,
            points: pts.iter().map(|&(y, _)| y).collect(),
            transversal: pts.iter().map(|&(_, a)| a).collect(),
            stabilizer,
        });
    }
    out
}

/// Orbit representatives of `G` on `X` and the orbit index of every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSet {
    pub reps: Vec<usize>,
    pub orbit_of: Vec<usize>,
}

pub fn quotient_set(x: &FiniteGSet) -> QuotientSet {
    let all: Vec<ElemId> = (0..x.group().order()).collect();
    let pts: Vec<usize> = (0..x.len()).collect();
    let orbits = orbits_with_stabilizers(x, &all, &pts);
    let mut orbit_of = alloc::vec![0; x.len()];
    for (i, o) in orbits.iter().enumerate() {
        for &p in &o.points {
            orbit_of[p] = i;
        }
    }
    QuotientSet {
        reps: orbits.iter().map(|o| o.rep).collect(),
        orbit_of,
    }
}

/// `G ×_H X` for a subgroup `H ≤ G` and an `H`-set `X`, with canonical
/// representative pairs.
#[derive(Clone, Debug)]
pub struct InducedGSet {
    pub gset: FiniteGSet,
    /// Least pair `(g, x)` (ambient id of `g`, point of `X`) in each class.
    pub reps: Vec<(ElemId, usize)>,
    /// Class of the pair `(g, x)`, indexed by `g · |X| + x`.
    class_of_pair: Vec<usize>,
    base_points: usize,
}

impl InducedGSet {
    pub fn point_of(&self, g: ElemId, x: usize) -> usize {
        self.class_of_pair[g * self.base_points + x]
    }

    /// `i(x) = [e, x]`.
    pub fn embed(&self, x: usize) -> usize {
        self.point_of(0, x)
    }
}

/// `G ×_H X`, realised as the classes of `G × X` under `(g h, x) ~ (g, h x)`.
pub fn induced_gset(ambient: &Arc<FiniteGroup>, sub: &Subgroup, x: &FiniteGSet) -> Result<InducedGSet> {
    if !x.group().same_as(&sub.group) {
        return Err(Error::GroupMismatch);
    }
    for (i, &a) in sub.embedding.iter().enumerate() {
        if ambient.element(a) != sub.group.element(i) {
            return Err(Error::NotSubgroup);
        }
    }
    let nx = x.len();
    let mut class_of_pair = alloc::vec![usize::MAX; ambient.order() * nx];
    let mut reps = Vec::new();
    for g in 0..ambient.order() {
        for p in 0..nx {
            if class_of_pair[g * nx + p] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push((g, p));
            // (g, p) ~ (g h, h⁻¹ p) for h ∈ H.
            for (hi, &h) in sub.embedding.iter().enumerate() {
                let gh = ambient.mul(g, h);
                let q = x.act(sub.group.inv(hi), p);
                class_of_pair[gh * nx + q] = class;
            }
        }
    }
    let n = reps.len();
    let mut act = Vec::with_capacity(ambient.order() * n);
    for k in 0..ambient.order() {
        for &(g, p) in &reps {
            act.push(class_of_pair[ambient.mul(k, g) * nx + p] as u32);
        }
    }
    let gset = FiniteGSet {
        group: ambient.clone(),
        points: n,
        act,
    };
    debug_assert!(gset.verify().is_ok());
    Ok(InducedGSet {
        gset,
        reps,
        class_of_pair,
        base_points: nx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, Family};
    use crate::DEFAULT_ORDER_CAP as CAP;
    use alloc::vec;

    fn group(f: Family) -> Arc<FiniteGroup> {
        Arc::new(builtin(&f, CAP).unwrap())
    }

    fn transposition_subgroup(s3: &FiniteGroup) -> Subgroup {
        let t = s3
            .index_of(&Permutation::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        s3.subgroup_generated(&[t])
    }

    #[test]
    fn coset_space_of_c2_in_s3() {
        let s3 = group(Family::Symmetric(3));
        let h = transposition_subgroup(&s3);
        let pt = FiniteGSet::point(h.group.clone());
        let ind = induced_gset(&s3, &h, &pt).unwrap();
        assert_eq!(ind.gset.len(), 3);
        let q = quotient_set(&ind.gset);
        assert_eq!(q.reps.len(), 1);
        assert_eq!(ind.embed(0), 0);
        // Stabilizer of [e, pt] is H itself.
        let all: Vec<usize> = (0..6).collect();
        let o = orbits_with_stabilizers(&ind.gset, &all, &[0, 1, 2]);
        assert_eq!(o[0].stabilizer, h.embedding);
    }

    #[test]
    fn induced_set_size_formula() {
        let s3 = group(Family::Symmetric(3));
        let h = transposition_subgroup(&s3);
        let reg = FiniteGSet::regular(h.group.clone());
        let ind = induced_gset(&s3, &h, &reg).unwrap();
        assert_eq!(ind.gset.len(), 6 * 2 / 2);
        assert!(ind.gset.is_free());
        // i is H-equivariant: [e, h x] = h [e, x].
        for (hi, &ha) in h.embedding.iter().enumerate() {
            for x in 0..reg.len() {
                assert_eq!(ind.embed(reg.act(hi, x)), ind.gset.act(ha, ind.embed(x)));
            }
        }
    }

    #[test]
    fn natural_action_fixed_points() {
        let s3 = group(Family::Symmetric(3));
        let x = FiniteGSet::natural(s3.clone());
        let t = s3
            .index_of(&Permutation::from_cycles(3, &[vec![1, 2]]).unwrap())
            .unwrap();
        assert_eq!(x.fixed_points(t), vec![0]);
        assert!(!x.is_free());
    }

    #[test]
    fn regular_quotient_is_a_point() {
        let c2 = group(Family::Cyclic(2));
        let reg = FiniteGSet::regular(c2);
        assert!(reg.is_free());
        assert_eq!(quotient_set(&reg).reps, vec![0]);
    }

    #[test]
    fn orbit_stabilizer_on_products() {
        let c2 = group(Family::Cyclic(2));
        let s3 = group(Family::Symmetric(3));
        let dp = DirectProduct::new(s3.clone(), c2.clone(), CAP).unwrap();
        let x = FiniteGSet::natural(s3);
        let y = FiniteGSet::regular(c2);
        let xy = FiniteGSet::product(&dp, &x, &y).unwrap();
        assert_eq!(xy.len(), 6);
        let all: Vec<usize> = (0..dp.group.order()).collect();
        let pts: Vec<usize> = (0..6).collect();
        for o in orbits_with_stabilizers(&xy, &all, &pts) {
            assert_eq!(o.points.len() * o.stabilizer.len(), 12);
            for (p, &t) in o.points.iter().zip(&o.transversal) {
                assert_eq!(xy.act(t, o.rep), *p);
            }
        }
    }

    #[test]
    fn bad_actions_are_rejected() {
        let c2 = group(Family::Cyclic(2));
        assert!(FiniteGSet::from_fn(c2.clone(), 2, |_, _| 0).is_err());
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert!(FiniteGSet::from_generator_perms(c2.clone(), 2, &[swap]).is_ok());
        let c3 = Permutation::new(vec![1, 2, 0]).unwrap();
        assert!(FiniteGSet::from_generator_perms(c2, 3, &[c3]).is_err());
    }

    #[test]
    fn restriction_along_sign() {
        let s3 = group(Family::Symmetric(3));
        let c2 = group(Family::Cyclic(2));
        let sign = crate::group::make_hom(s3.clone(), c2.clone(), &[1, 0]).unwrap();
        let r = FiniteGSet::regular(c2).restrict(&sign).unwrap();
        assert_eq!(r.group().order(), 6);
        assert_eq!(quotient_set(&r).reps.len(), 1);
    }
}
