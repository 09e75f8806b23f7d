use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::poly::{charpoly, distinct_roots, nullspace, rref};
use super::ScalarContext;
use crate::group::{ConjugacyData, ElemId, GroupHom};
use crate::{Error, Rat, Result};

/// A class function with values in `F_p`, one per conjugacy class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    conj: Arc<ConjugacyData>,
    values: Vec<u64>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.conj.group().same_as(other.conj.group())
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(conj: Arc<ConjugacyData>, values: Vec<u64>) -> Self {
        assert_eq!(values.len(), conj.num_classes());
        Self { conj, values }
    }

    /// Evaluates `f` on each class representative.
    pub fn from_fn(conj: Arc<ConjugacyData>, f: impl Fn(ElemId) -> u64) -> Self {
        let values = conj.reps().iter().map(|&g| f(g)).collect();
        Self { conj, values }
    }

    pub fn conj(&self) -> &Arc<ConjugacyData> {
        &self.conj
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Value at an arbitrary group element.
    pub fn at(&self, g: ElemId) -> u64 {
        self.values[self.conj.class_of(g)]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.conj.group().same_as(other.conj.group()) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }
}

/// Irreducible characters of a finite group, computed by Dixon–Schneider over `F_p`.
///
/// Rows are sorted by degree and then by the (descending) multiset of
/// eigenvalue angles of `ρ(g)` at every class, which does not depend on the
/// prime or on the choice of `ζ`; the trivial character is always row 0.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    conj: Arc<ConjugacyData>,
    scalars: Arc<ScalarContext>,
    rows: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn new(conj: Arc<ConjugacyData>, scalars: Arc<ScalarContext>) -> Result<Self> {
        scalars.covers(conj.group())?;
        let k = &*scalars;
        let raw = dixon_schneider(&conj, k)?;
        let mut keyed: Vec<_> = raw
            .into_iter()
            .map(|(d, vals)| {
                let key = eigen_key(&conj, k, &vals);
                ((d, Reverse(key)), vals)
            })
            .collect();
        keyed.sort();
        let degrees = keyed.iter().map(|((d, _), _)| *d).collect();
        let rows = keyed
            .into_iter()
            .map(|(_, values)| ClassFunction::new(conj.clone(), values))
            .collect();
        let table = Self {
            conj,
            scalars,
            rows,
            degrees,
        };
        table.check_orthogonality()?;
        Ok(table)
    }

    fn check_orthogonality(&self) -> Result<()> {
        let n = self.conj.group().order() as u64;
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != n {
            return Err(Error::Internal("sum of squared degrees is not |G|".into()));
        }
        for i in 0..self.rows.len() {
            for j in 0..=i {
                let ip = self.inner_product(&self.rows[i], &self.rows[j])?;
                if ip != i64::from(i == j) {
                    return Err(Error::Internal(format!("rows {i} and {j} are not orthonormal")));
                }
            }
        }
        Ok(())
    }

    pub fn conj(&self) -> &Arc<ConjugacyData> {
        &self.conj
    }

    pub fn scalars(&self) -> &Arc<ScalarContext> {
        &self.scalars
    }

    pub fn num_irr(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn trivial(&self) -> ClassFunction {
        ClassFunction::new(self.conj.clone(), vec![1; self.conj.num_classes()])
    }

    /// `(1/|G|) Σ χ(g) ψ(g⁻¹)`, lifted to `(-p/2, p/2]`.
    pub fn inner_product(&self, chi: &ClassFunction, psi: &ClassFunction) -> Result<i64> {
        chi.check_same(psi)?;
        if !chi.conj.group().same_as(self.conj.group()) {
            return Err(Error::GroupMismatch);
        }
        let k = &*self.scalars;
        let mut s = 0;
        for l in 0..self.conj.num_classes() {
            let term = k.mul(chi.values[l], psi.values[self.conj.inverse_class(l)]);
            s = k.add(s, k.mul(term, self.conj.size(l) as u64));
        }
        Ok(k.lift(k.mul(s, k.inv(self.conj.group().order() as u64))))
    }

    /// Multiplicities of each irreducible; fails unless they reconstruct `f`.
    ///
    /// Multiplicities must be below `p / (2|G|)` in absolute value (at least
    /// `|G|`), which rules out class functions that are only rational
    /// combinations of characters.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<i64>> {
        let mults = self
            .rows
            .iter()
            .map(|chi| self.inner_product(f, chi))
            .collect::<Result<Vec<_>>>()?;
        let bound = (self.scalars.p() / (2 * self.conj.group().order() as u64)) as i64;
        if mults.iter().any(|m| m.abs() >= bound) || self.recombine(&mults) != *f {
            return Err(Error::NotCharacterCombination);
        }
        Ok(mults)
    }

    pub fn recombine(&self, mults: &[i64]) -> ClassFunction {
        let k = &*self.scalars;
        let mut values = vec![0; self.conj.num_classes()];
        for (m, chi) in mults.iter().zip(&self.rows) {
            if *m == 0 {
                continue;
            }
            let m = k.from_i64(*m);
            for (v, &x) in values.iter_mut().zip(&chi.values) {
                *v = k.add(*v, k.mul(m, x));
            }
        }
        ClassFunction::new(self.conj.clone(), values)
    }

    pub fn tensor(&self, a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
        a.check_same(b)?;
        let k = &*self.scalars;
        let values = a.values.iter().zip(&b.values).map(|(&x, &y)| k.mul(x, y)).collect();
        Ok(ClassFunction::new(a.conj.clone(), values))
    }

    /// `ψ^m(χ)(g) = χ(g^m)`.
    pub fn adams(&self, chi: &ClassFunction, m: u64) -> ClassFunction {
        let values = (0..self.conj.num_classes())
            .map(|l| chi.values[self.conj.power_class(l, m)])
            .collect();
        ClassFunction::new(chi.conj.clone(), values)
    }

    /// The `c = k/ord(g)` with `χ(g) = χ(1)·ζ_{ord(g)}^k`, for `g` central.
    pub fn central_angle(&self, chi: &ClassFunction, g: ElemId) -> Result<Rat> {
        let group = self.conj.group();
        if self.conj.size(self.conj.class_of(g)) != 1 {
            return Err(Error::Precondition(format!("{} is not central", group.element(g))));
        }
        let k = &*self.scalars;
        let o = group.elem_order(g) as u64;
        let deg = chi.values[0];
        let val = chi.at(g);
        (0..o)
            .find(|&j| k.mul(deg, k.root_of_unity(o, j)) == val)
            .map(|j| Rat::new(j as i64, o as i64))
            .ok_or_else(|| Error::Internal("value is not a root of unity times the degree".into()))
    }

    pub fn angle_of_row(&self, i: usize, g: ElemId) -> Result<Rat> {
        self.central_angle(&self.rows[i], g)
    }

    /// Eigenvalue multiplicities of row `i` on `class`: entry `j` counts `ζ_o^j`,
    /// `o` being the order of the class. These determine the exact character value.
    pub fn eigenvalue_multiplicities(&self, i: usize, class: usize) -> Result<Vec<u64>> {
        multiplicities(&self.conj, &self.scalars, &self.rows[i].values, class)
            .into_iter()
            .map(|m| {
                u64::try_from(m).map_err(|_| Error::Internal("negative eigenvalue multiplicity".into()))
            })
            .collect()
    }
}

/// `χ ∘ φ` for `φ: G → H`; `domain` must describe `G`.
pub fn restrict_cf(hom: &GroupHom, domain: &Arc<ConjugacyData>, psi: &ClassFunction) -> Result<ClassFunction> {
    if !domain.group().same_as(hom.domain()) || !psi.conj.group().same_as(hom.codomain()) {
        return Err(Error::GroupMismatch);
    }
    Ok(pull_back_cf(domain, |g| hom.apply(g), psi))
}

/// `g ↦ ψ(f(g))` for any class-preserving element map `f` into `ψ`'s group.
pub fn pull_back_cf(
    domain: &Arc<ConjugacyData>,
    f: impl Fn(ElemId) -> ElemId,
    psi: &ClassFunction,
) -> ClassFunction {
    ClassFunction::from_fn(domain.clone(), |g| psi.at(f(g)))
}

/// Induces `χ` from `K` to `L`, where `embedding[i]` is the `L`-id of element `i` of `K`.
///
/// Uses `Ind χ(g) = |C_L(g)|/|K| · Σ_{y ∈ K ∩ g^L} χ(y)`.
pub fn induce_cf(
    embedding: &[ElemId],
    target: &Arc<ConjugacyData>,
    chi: &ClassFunction,
    k: &ScalarContext,
) -> Result<ClassFunction> {
    let sub = chi.conj.group();
    if embedding.len() != sub.order() {
        return Err(Error::NotSubgroup);
    }
    let big = target.group();
    for (i, &e) in embedding.iter().enumerate() {
        if e >= big.order() || big.element(e) != sub.element(i) {
            return Err(Error::NotSubgroup);
        }
    }
    let mut buckets = vec![0u64; target.num_classes()];
    for (y, &e) in embedding.iter().enumerate() {
        let l = target.class_of(e);
        buckets[l] = k.add(buckets[l], chi.at(y));
    }
    let inv_k = k.inv(sub.order() as u64);
    let values = buckets
        .iter()
        .enumerate()
        .map(|(l, &b)| k.mul(k.mul(b, target.centralizer_order(l) as u64), inv_k))
        .collect();
    Ok(ClassFunction::new(target.clone(), values))
}

/// Multiplicities of the eigenvalue angles `j/o` of `ρ(g)` at each class.
fn eigen_key(conj: &ConjugacyData, k: &ScalarContext, values: &[u64]) -> Vec<Vec<i64>> {
    (0..conj.num_classes())
        .map(|l| multiplicities(conj, k, values, l))
        .collect()
}

/// Multiplicity of `ζ_o^j` (`j < o`) as an eigenvalue of `ρ(g)` for `g` in
/// `class`, where `o` is the order of `g` and `values` is the character of `ρ`.
fn multiplicities(conj: &ConjugacyData, k: &ScalarContext, values: &[u64], class: usize) -> Vec<i64> {
    let o = conj.group().elem_order(conj.rep(class)) as u64;
    let pow_vals: Vec<u64> = (0..o).map(|i| values[conj.power_class(class, i)]).collect();
    let inv_o = k.inv(o);
    (0..o)
        .map(|j| {
            let s = (0..o).fold(0, |acc, i| {
                let z = k.root_of_unity(o, (o - (i * j) % o) % o);
                k.add(acc, k.mul(pow_vals[i as usize], z))
            });
            k.lift(k.mul(s, inv_o))
        })
        .collect()
}

/// Returns `(degree, values)` for every irreducible character, unsorted.
fn dixon_schneider(conj: &ConjugacyData, k: &ScalarContext) -> Result<Vec<(u64, Vec<u64>)>> {
    let group = conj.group();
    let n = group.order();
    let r = conj.num_classes();
    // mats[j][a][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_a}, the class-multiplication coefficients.
    let mut mats = vec![vec![vec![0u64; r]; r]; r];
    for l in 0..r {
        let z = conj.rep(l);
        for x in 0..n {
            let j = conj.class_of(x);
            let a = conj.class_of(group.mul(group.inv(x), z));
            mats[j][a][l] += 1;
        }
    }
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(k, m, space));
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Internal("class matrices did not separate the characters".into()));
    }
    let mut out = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::Internal("eigenvector vanishes at the identity class".into()));
        }
        let v0 = k.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| k.mul(x, v0)).collect();
        let s = (0..r).fold(0, |acc, l| {
            let t = k.mul(omega[l], omega[conj.inverse_class(l)]);
            k.add(acc, k.mul(t, k.inv(conj.size(l) as u64)))
        });
        let d2 = k.mul(n as u64, k.inv(s));
        let d = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % k.p() == d2)
            .ok_or_else(|| Error::Internal("no integral degree".into()))?;
        let values = (0..r)
            .map(|l| k.mul(k.mul(d, omega[l]), k.inv(conj.size(l) as u64)))
            .collect();
        out.push((d, values));
    }
    Ok(out)
}

/// Splits an invariant subspace (rows in reduced echelon form) into eigenspaces of `m`.
fn split_space(k: &ScalarContext, m: &[Vec<u64>], space: Vec<Vec<u64>>) -> Vec<Vec<Vec<u64>>> {
    let r = m.len();
    let pivots: Vec<usize> = space
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("non-zero basis row"))
        .collect();
    let images: Vec<Vec<u64>> = space
        .iter()
        .map(|row| {
            (0..r)
                .map(|a| (0..r).fold(0, |acc, l| k.add(acc, k.mul(m[a][l], row[l]))))
                .collect()
        })
        .collect();
    let d = space.len();
    // Restricted operator: column t holds the coordinates of m·row_t.
    let a: Vec<Vec<u64>> = (0..d)
        .map(|s| (0..d).map(|t| images[t][pivots[s]]).collect())
        .collect();
    let roots = distinct_roots(k, &charpoly(k, &a));
    if roots.len() <= 1 {
        return vec![space];
    }
    roots
        .into_iter()
        .map(|lambda| {
            let shifted: Vec<Vec<u64>> = (0..d)
                .map(|s| {
                    (0..d)
                        .map(|t| if s == t { k.sub(a[s][t], lambda) } else { a[s][t] })
                        .collect()
                })
                .collect();
            let mut rows: Vec<Vec<u64>> = nullspace(k, &shifted)
                .into_iter()
                .map(|c| {
                    (0..r)
                        .map(|i| (0..d).fold(0, |acc, t| k.add(acc, k.mul(c[t], space[t][i]))))
                        .collect()
                })
                .collect();
            rref(k, &mut rows);
            rows
        })
        .collect()
}
