use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_integer::Integer;

use super::Permutation;
use crate::{Error, Result};

/// Index of an element in the canonical (lexicographic) element list of a group.
pub type ElemId = usize;

/// Groups of order at most this keep a full multiplication table.
const TABLE_LIMIT: usize = 1024;

/// A permutation group stored fully enumerated.
///
/// Elements are sorted lexicographically by image array, so the identity is
/// always element `0`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: BTreeMap<Permutation, ElemId>,
    inverses: Vec<ElemId>,
    orders: Vec<u32>,
    table: Option<Vec<u32>>,
}

/// Closure of `generators` under composition, with deterministic ordering.
pub fn make_group(degree: usize, generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::InvalidGenerator(format!(
                "{g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
    }
    let id = Permutation::identity(degree);
    let mut seen = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in generators {
            let y = s.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let elements: Vec<Permutation> = seen.into_iter().collect();
    Ok(FiniteGroup::from_sorted(
        String::new(),
        degree,
        generators.to_vec(),
        elements,
    ))
}

impl FiniteGroup {
    fn from_sorted(
        name: String,
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        let index: BTreeMap<Permutation, ElemId> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        let mut group = Self {
            name,
            degree,
            generators,
            elements,
            index,
            inverses,
            orders: Vec::new(),
            table,
        };
        group.orders = (0..n).map(|a| group.compute_order(a)).collect();
        group
    }

    fn compute_order(&self, a: ElemId) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Builds a group directly from a closed, sorted-by-id element set of
    /// `self`, choosing a small generating set greedily.
    pub fn subgroup_from_members(&self, members: &[ElemId]) -> Subgroup {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut gens: Vec<ElemId> = Vec::new();
        let mut span: BTreeSet<ElemId> = BTreeSet::from([0]);
        for &m in &members {
            if !span.contains(&m) {
                gens.push(m);
                span = self.closure_ids(&gens);
            }
        }
        debug_assert_eq!(span.len(), members.len(), "member set not closed");
        let elements = members.iter().map(|&m| self.elements[m].clone()).collect();
        let generators = gens.iter().map(|&m| self.elements[m].clone()).collect();
        let group = Self::from_sorted(String::new(), self.degree, generators, elements);
        Subgroup {
            group: Arc::new(group),
            embedding: members,
        }
    }

    /// Element ids of the subgroup generated by `gens`.
    pub fn closure_ids(&self, gens: &[ElemId]) -> BTreeSet<ElemId> {
        let mut seen = BTreeSet::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(s, x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Subgroup generated by the given elements of `self`.
    pub fn subgroup_generated(&self, gens: &[ElemId]) -> Subgroup {
        let members: Vec<ElemId> = self.closure_ids(gens).into_iter().collect();
        self.subgroup_from_members(&members)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> Vec<ElemId> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, a: ElemId) -> &Permutation {
        &self.elements[a]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<ElemId> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inverses[a]
    }

    /// `h a h⁻¹`.
    pub fn conj(&self, h: ElemId, a: ElemId) -> ElemId {
        self.mul(self.mul(h, a), self.inv(h))
    }

    pub fn pow(&self, a: ElemId, m: u64) -> ElemId {
        let m = m % self.orders[a] as u64;
        (0..m).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn elem_order(&self, a: ElemId) -> u32 {
        self.orders[a]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_ids();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes(&self, a: ElemId, b: ElemId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Structural equality: same degree and same element set.
    pub fn same_as(&self, other: &Self) -> bool {
        core::ptr::eq(self, other) || (self.degree == other.degree && self.elements == other.elements)
    }
}

/// A subgroup realised as its own [`FiniteGroup`] together with the ids of its
/// elements in the ambient group (`embedding[i]` is the ambient id of element `i`).
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: Arc<FiniteGroup>,
    pub embedding: Vec<ElemId>,
}

impl Subgroup {
    /// Checks that every element of `sub` lies in `ambient`.
    pub fn new(ambient: &FiniteGroup, sub: Arc<FiniteGroup>) -> Result<Self> {
        if sub.degree() != ambient.degree() {
            return Err(Error::NotSubgroup);
        }
        let embedding = sub
            .elements()
            .iter()
            .map(|p| ambient.index_of(p).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            group: sub,
            embedding,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// `G × H` acting on the disjoint union of the factors' point sets.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
    pub group: Arc<FiniteGroup>,
}

impl DirectProduct {
    pub fn new(left: Arc<FiniteGroup>, right: Arc<FiniteGroup>, cap: usize) -> Result<Self> {
        if left.order().saturating_mul(right.order()) > cap {
            return Err(Error::GroupTooLarge { cap });
        }
        let idl = Permutation::identity(left.degree());
        let idr = Permutation::identity(right.degree());
        let mut gens: Vec<Permutation> = left.generators().iter().map(|g| g.direct_sum(&idr)).collect();
        gens.extend(right.generators().iter().map(|g| idl.direct_sum(g)));
        let mut elements = Vec::with_capacity(left.order() * right.order());
        // Lexicographic order on concatenated images is the product order.
        for a in left.elements() {
            for b in right.elements() {
                elements.push(a.direct_sum(b));
            }
        }
        let name = product_name(left.name(), right.name());
        let group = FiniteGroup::from_sorted(name, left.degree() + right.degree(), gens, elements);
        Ok(Self {
            left,
            right,
            group: Arc::new(group),
        })
    }

    pub fn pair(&self, a: ElemId, b: ElemId) -> ElemId {
        a * self.right.order() + b
    }

    pub fn split(&self, x: ElemId) -> (ElemId, ElemId) {
        (x / self.right.order(), x % self.right.order())
    }

    /// Splits a permutation of the product's degree into its two factors.
    pub fn split_perm(&self, p: &Permutation) -> (Permutation, Permutation) {
        let dl = self.left.degree();
        let shift = dl as u32;
        let l = Permutation::new(p.images()[..dl].to_vec()).expect("left block");
        let r = Permutation::new(p.images()[dl..].iter().map(|&x| x - shift).collect())
            .expect("right block");
        (l, r)
    }

    pub fn left_inclusion(&self) -> Vec<ElemId> {
        (0..self.left.order()).map(|a| self.pair(a, 0)).collect()
    }

    pub fn right_inclusion(&self) -> Vec<ElemId> {
        (0..self.right.order()).map(|b| self.pair(0, b)).collect()
    }
}

fn product_name(a: &str, b: &str) -> String {
    if a.is_empty() || b.is_empty() {
        String::new()
    } else {
        format!("{a}x{b}")
    }
}

/// The group families available by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
}

impl Family {
    pub fn parse(letter: &str, n: usize) -> Result<Self> {
        match letter {
            "C" => Ok(Self::Cyclic(n)),
            "S" => Ok(Self::Symmetric(n)),
            "A" => Ok(Self::Alternating(n)),
            "D" => Ok(Self::Dihedral(n)),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    /// The group order, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match *self {
            Self::Cyclic(n) => Some(n),
            Self::Symmetric(n) => (2..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)),
            Self::Alternating(n) => {
                let full = (2..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))?;
                Some(if n >= 2 { full / 2 } else { full })
            }
            Self::Dihedral(n) => n.checked_mul(2),
        }
    }
}

fn cycle(degree: usize, pts: &[u32]) -> Permutation {
    Permutation::from_cycles(degree, &[pts.to_vec()]).expect("builtin cycle")
}

/// Standard permutation realisations of the builtin families.
pub fn builtin(family: &Family, cap: usize) -> Result<FiniteGroup> {
    // Refuse before enumerating: the closure would materialize up to `cap` large permutations.
    if family.order().is_none_or(|o| o > cap) {
        return Err(Error::GroupTooLarge { cap });
    }
    let (name, degree, gens) = match *family {
        Family::Cyclic(n) => {
            check_param("C", n)?;
            let all: Vec<u32> = (0..n as u32).collect();
            let gens = if n > 1 { alloc::vec![cycle(n, &all)] } else { Vec::new() };
            (format!("C{n}"), n, gens)
        }
        Family::Symmetric(n) => {
            check_param("S", n)?;
            let all: Vec<u32> = (0..n as u32).collect();
            let gens = if n > 1 {
                alloc::vec![cycle(n, &[0, 1]), cycle(n, &all)]
            } else {
                Vec::new()
            };
            (format!("S{n}"), n, gens)
        }
        Family::Alternating(n) => {
            check_param("A", n)?;
            let gens = (2..n as u32).map(|k| cycle(n, &[0, 1, k])).collect();
            (format!("A{n}"), n, gens)
        }
        Family::Dihedral(n) => {
            check_param("D", n)?;
            match n {
                1 => (format!("D{n}"), 2, alloc::vec![cycle(2, &[0, 1])]),
                2 => {
                    let a = Permutation::from_cycles(4, &[alloc::vec![0, 1], alloc::vec![2, 3]])?;
                    let b = Permutation::from_cycles(4, &[alloc::vec![0, 2], alloc::vec![1, 3]])?;
                    (format!("D{n}"), 4, alloc::vec![a, b])
                }
                _ => {
                    let all: Vec<u32> = (0..n as u32).collect();
                    let reflection =
                        Permutation::new((0..n).map(|i| ((n - i) % n) as u32).collect())?;
                    (format!("D{n}"), n, alloc::vec![cycle(n, &all), reflection])
                }
            }
        }
    };
    Ok(make_group(degree, &gens, cap)?.with_name(name))
}

fn check_param(family: &str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange(format!("{family}{n}: n must be at least 1")));
    }
    Ok(())
}
