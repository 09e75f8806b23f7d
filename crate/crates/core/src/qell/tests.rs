use super::*;
use crate::group::{builtin, make_hom, DirectProduct, Family, GroupHom, Permutation, Subgroup};
use crate::{Rat, DEFAULT_ORDER_CAP as CAP};
use alloc::collections::BTreeSet;
use alloc::vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group(f: Family) -> Arc<FiniteGroup> {
    Arc::new(builtin(&f, CAP).unwrap())
}

fn scalars(gs: &[&Arc<FiniteGroup>]) -> Arc<ScalarContext> {
    let refs: Vec<&FiniteGroup> = gs.iter().map(|g| &***g).collect();
    Arc::new(ScalarContext::for_groups(&refs).unwrap())
}

fn point(g: &Arc<FiniteGroup>, k: &Arc<ScalarContext>) -> Arc<QEllStructure> {
    QEllStructure::point(g.clone(), k.clone()).unwrap()
}

fn elem(g: &FiniteGroup, cycles: &[Vec<u32>]) -> ElemId {
    g.index_of(&Permutation::from_cycles(g.degree(), cycles).unwrap()).unwrap()
}

fn q(e: Rat) -> QLaurent {
    QLaurent::monomial(1, e)
}

fn ints(xs: &[i64]) -> Vec<QLaurent> {
    xs.iter().map(|&c| QLaurent::constant(c)).collect()
}

fn class_of_order(s: &QEllStructure, order: u32) -> usize {
    s.classes().iter().position(|c| c.order == order).unwrap()
}

fn random_laurent(rng: &mut ChaCha8Rng) -> QLaurent {
    let mut f = QLaurent::zero();
    for _ in 0..rng.gen_range(0..3) {
        f.add_term(Rat::from_integer(rng.gen_range(-2..=2)), rng.gen_range(-3..=3).into());
    }
    f
}

fn random_elt(s: &Arc<QEllStructure>, rng: &mut ChaCha8Rng) -> QEllElt {
    let comps = s
        .classes()
        .iter()
        .map(|c| {
            c.orbits
                .iter()
                .map(|o| {
                    let coeffs = (0..o.ctx.rank()).map(|_| random_laurent(rng)).collect();
                    LambdaElt::from_coeffs(&o.ctx, coeffs).unwrap()
                })
                .collect()
        })
        .collect();
    QEllElt::from_components(s, comps).unwrap()
}

fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let sub = g.subgroup_generated(&[a, b]);
            if seen.insert(sub.embedding.clone()) {
                out.push(sub);
            }
        }
    }
    out
}

#[test]
fn s3_point_has_ranks_three_two_three() {
    let s3 = group(Family::Symmetric(3));
    let s = point(&s3, &scalars(&[&s3]));
    let ranks: Vec<usize> = [1, 2, 3].iter().map(|&o| s.class(class_of_order(&s, o)).rank()).collect();
    // Centralizers S₃, ⟨(12)⟩, ⟨(123)⟩ have 3, 2 and 3 classes.
    assert_eq!(ranks, vec![3, 2, 3]);
    assert_eq!(s.rank(), 8);
}

#[test]
fn rank_is_sum_of_centralizer_class_numbers() {
    for f in [Family::Symmetric(4), Family::Dihedral(4), Family::Alternating(4), Family::Cyclic(6)] {
        let g = group(f);
        let k = scalars(&[&g]);
        let s = point(&g, &k);
        let conj = ConjugacyData::new(g.clone());
        let expected: usize = (0..conj.num_classes())
            .map(|c| ConjugacyData::new(conj.centralizer_subgroup(c).group).num_classes())
            .sum();
        assert_eq!(s.rank(), expected);
    }
}

#[test]
fn z2_generator_squares_to_q() {
    let c2 = group(Family::Cyclic(2));
    let s = point(&c2, &scalars(&[&c2]));
    assert_eq!(s.class(0).rank(), 2);
    assert_eq!(s.class(1).rank(), 2);
    let ctx = &s.class(1).orbits[0].ctx;
    let x = (0..2).find(|&i| ctx.angle(i) == Rat::new(1, 2)).unwrap();
    let x = LambdaElt::basis(ctx, x);
    assert_eq!(x.mul(&x).unwrap(), LambdaElt::scalar(ctx, QLaurent::q()));
}

#[test]
fn regular_c2_set_leaves_only_identity_component() {
    let c2 = group(Family::Cyclic(2));
    let s = QEllStructure::new(Arc::new(FiniteGSet::regular(c2.clone())), scalars(&[&c2])).unwrap();
    let e = s.conj().class_of(0);
    for (i, c) in s.classes().iter().enumerate() {
        if i == e {
            assert_eq!(c.orbits.len(), 1);
            assert_eq!(c.rank(), 1);
        } else {
            assert!(c.orbits.is_empty());
        }
    }
    let quotient = free_quotient(&QEllElt::unit(&s)).unwrap();
    assert_eq!(quotient, vec![(0, QLaurent::one())]);
}

#[test]
fn regular_s3_set_is_a_single_free_orbit() {
    let s3 = group(Family::Symmetric(3));
    let s = QEllStructure::new(Arc::new(FiniteGSet::regular(s3.clone())), scalars(&[&s3])).unwrap();
    assert_eq!(s.rank(), 1);
    let a = QEllElt::scalar(&s, &QLaurent::from_terms([(Rat::from_integer(-1), 2.into())]));
    assert_eq!(
        free_quotient(&a).unwrap(),
        vec![(0, QLaurent::monomial(2, Rat::from_integer(-1)))]
    );
}

#[test]
fn free_quotient_rejects_fixed_points() {
    let c2 = group(Family::Cyclic(2));
    let s = point(&c2, &scalars(&[&c2]));
    assert_eq!(free_quotient(&QEllElt::unit(&s)), Err(Error::ActionNotFree));
}

#[test]
fn ring_axioms_on_s3_natural_set() {
    let s3 = group(Family::Symmetric(3));
    let s = QEllStructure::new(Arc::new(FiniteGSet::natural(s3.clone())), scalars(&[&s3])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let one = QEllElt::unit(&s);
    for _ in 0..10 {
        let (a, b, c) = (random_elt(&s, &mut rng), random_elt(&s, &mut rng), random_elt(&s, &mut rng));
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        assert_eq!(a.mul(&one).unwrap(), a);
        assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}

#[test]
fn inclusion_pullback_restricts_characters() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let big = point(&s3, &k);
    let t = elem(&s3, &[vec![0, 1]]);
    let sub = s3.subgroup_generated(&[t]);
    let hom = GroupHom::inclusion(s3.clone(), &sub);
    let small = point(&sub.group, &k);
    assert_eq!(pullback_hom(&hom, &QEllElt::unit(&big), &small).unwrap(), QEllElt::unit(&small));

    let e = big.conj().class_of(0);
    let ctx = &big.class(e).orbits[0].ctx;
    let std = (0..3).find(|&i| ctx.degree(i) == 2).unwrap();
    let sign = (1..3).find(|&i| ctx.degree(i) == 1).unwrap();
    let mut a = QEllElt::zero(&big);
    a.set_component(e, 0, LambdaElt::basis(ctx, std)).unwrap();
    let pulled = pullback_hom(&hom, &a, &small).unwrap();
    // The standard representation restricts to trivial + sign on a transposition.
    let se = small.conj().class_of(0);
    assert_eq!(pulled.component(se, 0).coeffs(), ints(&[1, 1]).as_slice());
    let mut b = QEllElt::zero(&big);
    b.set_component(e, 0, LambdaElt::basis(ctx, sign)).unwrap();
    let pulled = pullback_hom(&hom, &b, &small).unwrap();
    assert_eq!(pulled.component(se, 0).coeffs(), ints(&[0, 1]).as_slice());
}

fn parity(p: &Permutation) -> usize {
    p.cycles().iter().map(|c| c.len().saturating_sub(1)).sum::<usize>() % 2
}

#[test]
fn pullback_is_contravariant_and_multiplicative() {
    let s3 = group(Family::Symmetric(3));
    let c2 = group(Family::Cyclic(2));
    let k = scalars(&[&s3, &c2]);
    let sign_images: Vec<ElemId> = s3.elements().iter().map(parity).collect();
    let phi = GroupHom::from_map(s3.clone(), c2.clone(), sign_images).unwrap();
    let t = elem(&s3, &[vec![1, 2]]);
    let sub = s3.subgroup_generated(&[t]);
    let psi = GroupHom::inclusion(s3.clone(), &sub);
    let composite = psi.then(&phi).unwrap();
    let (pc2, ps3, psub) = (point(&c2, &k), point(&s3, &k), point(&sub.group, &k));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let a = random_elt(&pc2, &mut rng);
        let b = random_elt(&pc2, &mut rng);
        let direct = pullback_hom(&composite, &a, &psub).unwrap();
        let stepwise = pullback_hom(&psi, &pullback_hom(&phi, &a, &ps3).unwrap(), &psub).unwrap();
        assert_eq!(direct, stepwise);
        assert_eq!(
            pullback_hom(&phi, &a.mul(&b).unwrap(), &ps3).unwrap(),
            pullback_hom(&phi, &a, &ps3)
                .unwrap()
                .mul(&pullback_hom(&phi, &b, &ps3).unwrap())
                .unwrap()
        );
    }
}

#[test]
fn identity_pullbacks_are_identities() {
    let d4 = group(Family::Dihedral(4));
    let k = scalars(&[&d4]);
    let x = QEllStructure::new(Arc::new(FiniteGSet::natural(d4.clone())), k).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = random_elt(&x, &mut rng);
    let id = GroupHom::identity(d4.clone());
    assert_eq!(pullback_hom(&id, &a, &x).unwrap(), a);
    let f: Vec<usize> = (0..4).collect();
    assert_eq!(pullback_map(&f, &a, &x).unwrap(), a);
}

#[test]
fn collapse_pullback_of_q_is_q() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let pt = point(&s3, &k);
    let x = QEllStructure::new(Arc::new(FiniteGSet::natural(s3.clone())), k).unwrap();
    let collapse = vec![0; 3];
    let qq = QEllElt::scalar(&pt, &QLaurent::q());
    assert_eq!(pullback_map(&collapse, &qq, &x).unwrap(), QEllElt::scalar(&x, &QLaurent::q()));
    assert_eq!(pullback_map(&collapse, &QEllElt::unit(&pt), &x).unwrap(), QEllElt::unit(&x));
}

#[test]
fn non_equivariant_maps_are_rejected() {
    let c3 = group(Family::Cyclic(3));
    let k = scalars(&[&c3]);
    let x = QEllStructure::new(Arc::new(FiniteGSet::regular(c3.clone())), k).unwrap();
    let f = vec![0, 0, 1];
    assert_eq!(pullback_map(&f, &QEllElt::unit(&x), &x), Err(Error::NotEquivariant));
    assert_eq!(pushforward(&f, &QEllElt::unit(&x), &x), Err(Error::NotEquivariant));
}

fn transposition(s3: &Arc<FiniteGroup>) -> Subgroup {
    s3.subgroup_generated(&[elem(s3, &[vec![0, 1]])])
}

fn three_cycle(s3: &Arc<FiniteGroup>) -> Subgroup {
    s3.subgroup_generated(&[elem(s3, &[vec![0, 1, 2]])])
}

#[test]
fn change_of_group_ranks_for_s3_over_c2() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let sub = transposition(&s3);
    let pt = Arc::new(FiniteGSet::point(sub.group.clone()));
    let cog = ChangeOfGroup::new(&s3, sub, pt, k).unwrap();
    let big = cog.big();
    let ranks: Vec<usize> = [1, 2, 3].iter().map(|&o| big.class(class_of_order(big, o)).rank()).collect();
    assert_eq!(ranks, vec![2, 2, 0]);
    let small = cog.small();
    let ranks: Vec<usize> = [1, 2].iter().map(|&o| small.class(class_of_order(small, o)).rank()).collect();
    assert_eq!(ranks, vec![2, 2]);
}

#[test]
fn change_of_group_free_case_is_rank_one() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let sub = three_cycle(&s3);
    let reg = Arc::new(FiniteGSet::regular(sub.group.clone()));
    let cog = ChangeOfGroup::new(&s3, sub, reg, k).unwrap();
    assert_eq!(cog.big().rank(), 1);
    assert_eq!(cog.small().rank(), 1);
}

#[test]
fn change_of_group_round_trips() {
    let s3 = group(Family::Symmetric(3));
    let c4 = group(Family::Cyclic(4));
    let k = scalars(&[&s3, &c4]);
    let c4_half = c4.subgroup_generated(&[c4.pow(c4.generator_ids()[0], 2)]);
    let cases = [(s3.clone(), transposition(&s3)), (s3.clone(), three_cycle(&s3)), (c4.clone(), c4_half)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (g, sub) in cases {
        for regular in [false, true] {
            let x = if regular {
                FiniteGSet::regular(sub.group.clone())
            } else {
                FiniteGSet::point(sub.group.clone())
            };
            let cog = ChangeOfGroup::new(&g, sub.clone(), Arc::new(x), k.clone()).unwrap();
            assert_eq!(cog.big().rank(), cog.small().rank());
            for _ in 0..5 {
                let b = random_elt(cog.small(), &mut rng);
                assert_eq!(cog.forward(&cog.inverse(&b).unwrap()).unwrap(), b);
                let a = random_elt(cog.big(), &mut rng);
                assert_eq!(cog.inverse(&cog.forward(&a).unwrap()).unwrap(), a);
            }
        }
    }
}

#[test]
fn change_of_group_for_the_whole_group_is_identity() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let whole = s3.subgroup_generated(&s3.generator_ids());
    let cog = ChangeOfGroup::new(&s3, whole, Arc::new(FiniteGSet::point(s3.clone())), k).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let b = random_elt(cog.small(), &mut rng);
    let lifted = cog.inverse(&b).unwrap();
    assert_eq!(lifted.components(), b.components());
}

fn transfer_of_unit(sub: Subgroup, s3: &Arc<FiniteGroup>) -> (Arc<QEllStructure>, QEllElt, QEllElt) {
    let k = scalars(&[s3]);
    let t = Transfer::new(point(s3, &k), sub).unwrap();
    let one = QEllElt::unit(t.source());
    let a = t.algorithm_a(&one).unwrap();
    let b = t.algorithm_b(&one).unwrap();
    (t.target().clone(), a, b)
}

/// Indices `(trivial, sign, standard)` of the basis of `R(S₃)`.
fn s3_basis(ctx: &LambdaCtx) -> (usize, usize, usize) {
    let std = (0..3).find(|&i| ctx.degree(i) == 2).unwrap();
    let sign = (1..3).find(|&i| ctx.degree(i) == 1).unwrap();
    (0, sign, std)
}

#[test]
fn transfer_of_one_from_c3() {
    let s3 = group(Family::Symmetric(3));
    let (s, a, b) = transfer_of_unit(three_cycle(&s3), &s3);
    assert_eq!(a, b);
    let e = class_of_order(&s, 1);
    let (triv, sign, std) = s3_basis(&s.class(e).orbits[0].ctx);
    let comp = a.component(e, 0);
    assert_eq!(comp.coeff(triv), &QLaurent::one());
    assert_eq!(comp.coeff(sign), &QLaurent::one());
    assert!(comp.coeff(std).is_zero());
    assert!(a.component(class_of_order(&s, 2), 0).is_zero());
    let c = class_of_order(&s, 3);
    let ctx = &s.class(c).orbits[0].ctx;
    assert_eq!(a.component(c, 0), &LambdaElt::scalar(ctx, QLaurent::constant(2)));
}

#[test]
fn transfer_of_one_from_c2() {
    let s3 = group(Family::Symmetric(3));
    let (s, a, b) = transfer_of_unit(transposition(&s3), &s3);
    assert_eq!(a, b);
    let e = class_of_order(&s, 1);
    let (triv, sign, std) = s3_basis(&s.class(e).orbits[0].ctx);
    let comp = a.component(e, 0);
    assert_eq!(comp.coeff(triv), &QLaurent::one());
    assert!(comp.coeff(sign).is_zero());
    assert_eq!(comp.coeff(std), &QLaurent::one());
    let t = class_of_order(&s, 2);
    assert_eq!(a.component(t, 0), &LambdaElt::unit(&s.class(t).orbits[0].ctx));
    assert!(a.component(class_of_order(&s, 3), 0).is_zero());
}

#[test]
fn transfer_from_whole_group_is_identity() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let whole = s3.subgroup_generated(&s3.generator_ids());
    let t = Transfer::new(point(&s3, &k), whole).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let b = random_elt(t.source(), &mut rng);
    assert_eq!(t.algorithm_a(&b).unwrap().components(), b.components());
}

#[test]
fn transfer_algorithms_agree_on_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for f in [Family::Symmetric(3), Family::Dihedral(4)] {
        let g = group(f);
        let k = scalars(&[&g]);
        let target = point(&g, &k);
        for sub in all_subgroups(&g) {
            let t = Transfer::new(target.clone(), sub).unwrap();
            for _ in 0..3 {
                let b = random_elt(t.source(), &mut rng);
                assert_eq!(t.algorithm_a(&b).unwrap(), t.algorithm_b(&b).unwrap());
            }
        }
    }
}

#[test]
fn algorithm_b_needs_a_point() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let x = QEllStructure::new(Arc::new(FiniteGSet::natural(s3.clone())), k).unwrap();
    let t = Transfer::new(x, three_cycle(&s3)).unwrap();
    let one = QEllElt::unit(t.source());
    assert!(matches!(t.algorithm_b(&one), Err(Error::Precondition(_))));
    // Transfer of 1 along a free covering still makes sense.
    let a = t.algorithm_a(&one).unwrap();
    assert!(!a.is_zero());
}

#[test]
fn transfer_is_degree_preserving_at_identity() {
    // At the identity the transfer of 1 is the permutation module on G/H ×_? X.
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let x = QEllStructure::new(Arc::new(FiniteGSet::natural(s3.clone())), k).unwrap();
    let t = Transfer::new(x.clone(), transposition(&s3)).unwrap();
    let a = t.algorithm_a(&QEllElt::unit(t.source())).unwrap();
    let e = class_of_order(&x, 1);
    // One orbit (the whole set) with stabilizer of order 2; the fiber has dimension [G:H] = 3.
    assert_eq!(a.component(e, 0).dimension(), 3.into());
}

#[test]
fn mu_on_z2_example() {
    let c2 = group(Family::Cyclic(2));
    let s = point(&c2, &scalars(&[&c2]));
    let e = s.conj().class_of(0);
    let g = 1 - e;
    let ectx = &s.class(e).orbits[0].ctx;
    let sgn = 1;
    assert_eq!(ectx.degree(sgn), 1);
    let mut a = QEllElt::zero(&s);
    a.set_component(e, 0, LambdaElt::basis(ectx, sgn)).unwrap();
    let m = mu(2, &a).unwrap();
    let gctx = &s.class(g).orbits[0].ctx;
    let x1 = (0..2).find(|&i| gctx.angle(i) == Rat::new(1, 2)).unwrap();
    assert_eq!(m.component(g, 0), &LambdaElt::monomial(gctx, x1, q(Rat::new(-1, 2))));
    assert_eq!(mu(2, &a.mul(&a).unwrap()).unwrap(), m.mul(&m).unwrap());
}

#[test]
fn mu_on_trivial_group_substitutes_q() {
    let c1 = group(Family::Cyclic(1));
    let s = point(&c1, &scalars(&[&c1]));
    let f = QLaurent::from_terms([(Rat::from_integer(1), 2.into()), (Rat::from_integer(-3), (-1).into())]);
    let a = QEllElt::scalar(&s, &f);
    let expected = QLaurent::from_terms([(Rat::new(1, 3), 2.into()), (Rat::from_integer(-1), (-1).into())]);
    assert_eq!(mu(3, &a).unwrap(), QEllElt::scalar(&s, &expected));
}

#[test]
fn mu_is_a_lambda_ring_homomorphism() {
    let s3 = group(Family::Symmetric(3));
    let c4 = group(Family::Cyclic(4));
    let k = scalars(&[&s3, &c4]);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for s in [point(&s3, &k), point(&c4, &k)] {
        for _ in 0..4 {
            let a = random_elt(&s, &mut rng);
            let b = random_elt(&s, &mut rng);
            assert_eq!(mu(1, &a).unwrap(), a);
            for n in 1..=3 {
                let ma = mu(n, &a).unwrap();
                assert_eq!(mu(n, &a.mul(&b).unwrap()).unwrap(), ma.mul(&mu(n, &b).unwrap()).unwrap());
                for kk in 0..=2 {
                    assert_eq!(mu(n, &a.exterior(kk).unwrap()).unwrap(), ma.exterior(kk).unwrap());
                }
            }
        }
    }
}

#[test]
fn mu_on_a_nontrivial_set_is_multiplicative() {
    let d4 = group(Family::Dihedral(4));
    let k = scalars(&[&d4]);
    let s = QEllStructure::new(Arc::new(FiniteGSet::natural(d4.clone())), k).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=4 {
        let a = random_elt(&s, &mut rng);
        let b = random_elt(&s, &mut rng);
        assert_eq!(
            mu(n, &a.mul(&b).unwrap()).unwrap(),
            mu(n, &a).unwrap().mul(&mu(n, &b).unwrap()).unwrap()
        );
    }
}

#[test]
fn mu_denominators_divide_n_times_exponent() {
    let s3 = group(Family::Symmetric(3));
    let s = point(&s3, &scalars(&[&s3]));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=5i64 {
        let a = random_elt(&s, &mut rng);
        let m = mu(n as u64, &a).unwrap();
        for e in m.components().iter().flatten() {
            for f in e.coeffs() {
                assert_eq!((n * 6) % f.max_denominator(), 0);
            }
        }
    }
}

fn product(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
) -> (DirectProduct, Arc<ScalarContext>) {
    let dp = DirectProduct::new(a.clone(), b.clone(), CAP).unwrap();
    let k = scalars(&[&dp.group]);
    (dp, k)
}

fn kunneth_on_points(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Kunneth {
    let (dp, k) = product(a, b);
    let x = Arc::new(FiniteGSet::point(a.clone()));
    let y = Arc::new(FiniteGSet::point(b.clone()));
    Kunneth::new(dp, x, y, k).unwrap()
}

#[test]
fn kunneth_of_generators_of_z2() {
    let c2 = group(Family::Cyclic(2));
    let kn = kunneth_on_points(&c2, &c2);
    let (l, r) = (kn.left(), kn.right());
    let g = 1 - l.conj().class_of(0);
    let lctx = &l.class(g).orbits[0].ctx;
    let x1 = (0..2).find(|&i| lctx.angle(i) == Rat::new(1, 2)).unwrap();
    let mut a = QEllElt::zero(l);
    a.set_component(g, 0, LambdaElt::basis(lctx, x1)).unwrap();
    let mut b = QEllElt::zero(r);
    b.set_component(g, 0, LambdaElt::basis(&r.class(g).orbits[0].ctx, x1)).unwrap();
    let image = kn.kunneth(&a, &b).unwrap();
    let p = kn.product();
    let dp = kn.direct_product();
    let pc = p.conj().class_of(dp.pair(1, 1));
    let pctx = &p.class(pc).orbits[0].ctx;
    let support: Vec<usize> = (0..pctx.rank()).filter(|&i| !image.component(pc, 0).coeff(i).is_zero()).collect();
    assert_eq!(support.len(), 1);
    let mu = support[0];
    assert_eq!(pctx.angle(mu), Rat::from_integer(0));
    assert_eq!(pctx.degree(mu), 1);
    assert_eq!(image.component(pc, 0).coeff(mu), &QLaurent::q());
    let mut nonzero = 0;
    for row in image.components() {
        nonzero += row.iter().filter(|e| !e.is_zero()).count();
    }
    assert_eq!(nonzero, 1);
}

#[test]
fn kunneth_on_points_is_a_basis_bijection() {
    let c2 = group(Family::Cyclic(2));
    let c3 = group(Family::Cyclic(3));
    let s3 = group(Family::Symmetric(3));
    for (a, b) in [(&c2, &c3), (&c2, &c2), (&s3, &c2)] {
        let kn = kunneth_on_points(a, b);
        kn.verify_basis_bijection().unwrap();
        assert_eq!(kn.product().rank(), kn.left().rank() * kn.right().rank());
        let one = kn.kunneth(&QEllElt::unit(kn.left()), &QEllElt::unit(kn.right())).unwrap();
        assert_eq!(one, QEllElt::unit(kn.product()));
        let ql = QEllElt::scalar(kn.left(), &QLaurent::q());
        let qr = QEllElt::scalar(kn.right(), &QLaurent::q());
        let lhs = kn.kunneth(&ql, &QEllElt::unit(kn.right())).unwrap();
        let rhs = kn.kunneth(&QEllElt::unit(kn.left()), &qr).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, QEllElt::scalar(kn.product(), &QLaurent::q()));
    }
}

#[test]
fn kunneth_is_multiplicative_and_split_inverts_it() {
    let s3 = group(Family::Symmetric(3));
    let c2 = group(Family::Cyclic(2));
    let (dp, k) = product(&s3, &c2);
    let x = Arc::new(FiniteGSet::natural(s3.clone()));
    let y = Arc::new(FiniteGSet::regular(c2.clone()));
    let kn = Kunneth::new(dp, x, y, k).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..5 {
        let (a, a2) = (random_elt(kn.left(), &mut rng), random_elt(kn.left(), &mut rng));
        let (b, b2) = (random_elt(kn.right(), &mut rng), random_elt(kn.right(), &mut rng));
        let ab = kn.kunneth(&a, &b).unwrap();
        assert_eq!(
            kn.kunneth(&a.mul(&a2).unwrap(), &b.mul(&b2).unwrap()).unwrap(),
            ab.mul(&kn.kunneth(&a2, &b2).unwrap()).unwrap()
        );
        assert_eq!(kn.split(&ab).unwrap(), kn.tensor(&a, &b).unwrap());
        let c = random_elt(kn.product(), &mut rng);
        assert_eq!(kn.apply(&kn.split(&c).unwrap()).unwrap(), c);
    }
}

#[test]
fn trivial_split_of_e_times_z2() {
    let c1 = group(Family::Cyclic(1));
    let c2 = group(Family::Cyclic(2));
    let (dp, k) = product(&c1, &c2);
    let input = point(&dp.group, &k);
    let kn = Kunneth::for_trivial_action(&input, dp).unwrap();
    let one = QEllElt::unit(&input);
    let split = kn.trivial_split(&one).unwrap();
    assert_eq!(split, kn.tensor(&QEllElt::unit(kn.left()), &QEllElt::unit(kn.right())).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let c = random_elt(&input, &mut rng);
    assert_eq!(kn.apply(&kn.trivial_split(&c).unwrap()).unwrap(), c);
}

#[test]
fn trivial_split_with_nontrivial_left_action() {
    let s3 = group(Family::Symmetric(3));
    let c2 = group(Family::Cyclic(2));
    let (dp, k) = product(&s3, &c2);
    let natural = FiniteGSet::natural(s3.clone());
    let z = FiniteGSet::from_fn(dp.group.clone(), 3, |g, p| natural.act(dp.split(g).0, p)).unwrap();
    let input = QEllStructure::new(Arc::new(z), k).unwrap();
    let kn = Kunneth::for_trivial_action(&input, dp).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..5 {
        let c = random_elt(&input, &mut rng);
        assert_eq!(kn.apply(&kn.trivial_split(&c).unwrap()).unwrap(), c);
    }
}

#[test]
fn trivial_split_rejects_nontrivial_right_action() {
    let c2 = group(Family::Cyclic(2));
    let (dp, k) = product(&c2, &c2);
    let reg = FiniteGSet::regular(dp.group.clone());
    let input = QEllStructure::new(Arc::new(reg), k).unwrap();
    assert!(matches!(Kunneth::for_trivial_action(&input, dp), Err(Error::ActionNotTrivial)));
}

#[test]
fn tate_presentations_hold_up_to_eight() {
    for n in 1..=8 {
        let report = verify_tate_presentation(n).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.components.len(), n as usize);
    }
    let six = verify_tate_presentation(6).unwrap();
    let c = &six.components[4];
    assert_eq!((c.m, c.rank), (4, 6));
    assert!(c.relation_ok);
}

#[test]
fn locate_returns_a_valid_conjugator() {
    let s4 = group(Family::Symmetric(4));
    let k = scalars(&[&s4]);
    let s = QEllStructure::new(Arc::new(FiniteGSet::natural(s4.clone())), k).unwrap();
    for sigma in 0..s4.order() {
        for x in s.gset().fixed_points(sigma) {
            let loc = s.locate(sigma, x).unwrap();
            let c = s.class(loc.class);
            let rep_point = c.orbits[loc.orbit].orbit.rep;
            assert_eq!(s4.conj(loc.u, c.rep), sigma);
            assert_eq!(s.gset().act(loc.u, rep_point), x);
        }
    }
}

#[test]
fn make_hom_pullback_matches_inclusion() {
    let s3 = group(Family::Symmetric(3));
    let c3 = group(Family::Cyclic(3));
    let k = scalars(&[&s3]);
    let r = elem(&s3, &[vec![0, 1, 2]]);
    let hom = make_hom(c3.clone(), s3.clone(), &[r]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = random_elt(&point(&s3, &k), &mut rng);
    let pulled = pullback_hom(&hom, &a, &point(&c3, &k)).unwrap();
    assert_eq!(pulled.structure().rank(), 9);
}
