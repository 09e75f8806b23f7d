use super::*;
use crate::group::{builtin, make_hom, Family, Permutation};
use crate::DEFAULT_ORDER_CAP as CAP;
use alloc::vec;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use num_traits::Zero;

fn group(f: Family) -> Arc<FiniteGroup> {
    Arc::new(builtin(&f, CAP).unwrap())
}

fn scalars(gs: &[&Arc<FiniteGroup>]) -> Arc<ScalarContext> {
    let refs: Vec<&FiniteGroup> = gs.iter().map(|g| &***g).collect();
    Arc::new(ScalarContext::for_groups(&refs).unwrap())
}

fn ctx(g: &Arc<FiniteGroup>, x: ElemId, k: &Arc<ScalarContext>) -> Arc<LambdaCtx> {
    Arc::new(LambdaCtx::for_centralizer(g.clone(), x, k.clone()).unwrap())
}

fn elem(g: &FiniteGroup, cycles: &[Vec<u32>]) -> ElemId {
    g.index_of(&Permutation::from_cycles(g.degree(), cycles).unwrap()).unwrap()
}

fn r(a: i64, b: i64) -> Rat {
    Rat::new(a, b)
}

fn q(e: Rat) -> QLaurent {
    QLaurent::monomial(1, e)
}

/// Index of the basis element with the given angle among degree-1 characters.
fn linear_with_angle(c: &LambdaCtx, angle: Rat) -> usize {
    (0..c.rank())
        .find(|&i| c.degree(i) == 1 && c.angle(i) == angle)
        .unwrap()
}

#[test]
fn s3_contexts() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let e = ctx(&s3, 0, &k);
    assert_eq!(e.rank(), 3);
    assert!(e.angles().iter().all(|a| a.is_zero()));
    let t = ctx(&s3, elem(&s3, &[vec![0, 1]]), &k);
    assert_eq!(t.angles(), &[r(0, 1), r(1, 2)]);
    let c = ctx(&s3, elem(&s3, &[vec![0, 1, 2]]), &k);
    let mut a = c.angles().to_vec();
    a.sort();
    assert_eq!(a, vec![r(0, 1), r(1, 3), r(2, 3)]);
}

#[test]
fn cyclic_angles() {
    for n in 1..=8i64 {
        let g = group(Family::Cyclic(n as usize));
        let k = scalars(&[&g]);
        let gen = if n == 1 { 0 } else { g.generator_ids()[0] };
        for m in 0..n {
            let x = g.pow(gen, m as u64);
            let c = ctx(&g, x, &k);
            assert_eq!(c.rank(), n as usize);
            let mut got = c.angles().to_vec();
            got.sort();
            let mut want: Vec<Rat> = (0..n).map(|j| r(j * m, n).fract()).collect();
            want.sort();
            assert_eq!(got, want, "N = {n}, m = {m}");
        }
    }
}

#[test]
fn products_in_examples() {
    let c2 = group(Family::Cyclic(2));
    let k = scalars(&[&c2]);
    let c = ctx(&c2, 1, &k);
    let x1 = LambdaElt::basis(&c, linear_with_angle(&c, r(1, 2)));
    assert_eq!(x1.mul(&x1).unwrap(), LambdaElt::scalar(&c, QLaurent::q()));

    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let e = ctx(&s3, 0, &k);
    let (one, x, y) = (LambdaElt::basis(&e, 0), LambdaElt::basis(&e, 1), LambdaElt::basis(&e, 2));
    let sum = one.add(&x).unwrap().add(&y).unwrap();
    assert_eq!(y.mul(&y).unwrap(), sum);
    assert_eq!(x.mul(&y).unwrap(), y);
    assert_eq!(x.mul(&x).unwrap(), one);

    let c = ctx(&s3, elem(&s3, &[vec![0, 1, 2]]), &k);
    let x = LambdaElt::basis(&c, linear_with_angle(&c, r(1, 3)));
    assert_eq!(x.pow(3).unwrap(), LambdaElt::scalar(&c, QLaurent::q()));
}

#[test]
fn restriction_along_homs() {
    let s3 = group(Family::Symmetric(3));
    let c2 = group(Family::Cyclic(2));
    let k = scalars(&[&s3]);
    let e_s3 = ctx(&s3, 0, &k);
    let e_c2 = ctx(&c2, 0, &k);
    let sign = make_hom(s3.clone(), c2.clone(), &[1, 0]).unwrap();
    let sgn = LambdaElt::basis(&e_c2, 1);
    let pulled = sgn.transport(&e_s3, |x| sign.apply(x), 1).unwrap();
    assert_eq!(pulled, LambdaElt::basis(&e_s3, 1));

    // C2 = <(0 1)> inside S3 at τ = (0 1): both centralizers are C2.
    let t = elem(&s3, &[vec![0, 1]]);
    let h = s3.subgroup_generated(&[t]);
    let at_t = ctx(&s3, t, &k);
    let h_ctx = Arc::new(LambdaCtx::new(s3.clone(), &h.embedding, t, k.clone()).unwrap());
    for i in 0..2 {
        let b = LambdaElt::basis(&at_t, i);
        let res = b.transport(&h_ctx, |x| x, 1).unwrap();
        assert_eq!(res.coeffs(), LambdaElt::basis(&h_ctx, i).coeffs());
    }
}

#[test]
fn induction_from_c3() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let c = elem(&s3, &[vec![0, 1, 2]]);
    let c3 = s3.subgroup_generated(&[c]);
    let h_e = Arc::new(LambdaCtx::new(s3.clone(), &c3.embedding, 0, k.clone()).unwrap());
    let g_e = ctx(&s3, 0, &k);
    let ind = LambdaElt::unit(&h_e).induce(&g_e).unwrap();
    let want = LambdaElt::basis(&g_e, 0).add(&LambdaElt::basis(&g_e, 1)).unwrap();
    assert_eq!(ind, want);

    let h_c = Arc::new(LambdaCtx::new(s3.clone(), &c3.embedding, c, k.clone()).unwrap());
    let g_c = ctx(&s3, c, &k);
    for i in 0..3 {
        let b = LambdaElt::basis(&h_c, i).induce(&g_c).unwrap();
        assert_eq!(b.coeffs(), LambdaElt::basis(&g_c, i).coeffs());
    }
    // The same subgroup is the identity.
    let b = LambdaElt::basis(&g_e, 2);
    assert_eq!(b.induce(&g_e).unwrap(), b);
}

#[test]
fn conjugation_in_s3() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let c = elem(&s3, &[vec![0, 1, 2]]);
    let t = elem(&s3, &[vec![0, 1]]);
    let c_inv = s3.inv(c);
    let at_c = ctx(&s3, c, &k);
    let at_cinv = ctx(&s3, c_inv, &k);
    assert_eq!(s3.conj(t, c), c_inv);
    let i = linear_with_angle(&at_c, r(1, 3));
    let moved = LambdaElt::basis(&at_c, i).conjugate(t, &at_cinv).unwrap();
    // Oracle: the image is the character x ↦ χ(t⁻¹ x t), read off the table directly.
    let chi = at_c.table().row(i);
    let want = (0..3)
        .find(|&j| {
            at_cinv.table().row(j).values().iter().enumerate().all(|(cl, &v)| {
                let rep = at_cinv.embedding()[at_cinv.table().conj().rep(cl)];
                let back = s3.conj(s3.inv(t), rep);
                let local = at_c.embedding().binary_search(&back).unwrap();
                chi.at(local) == v
            })
        })
        .unwrap();
    assert_eq!(moved, LambdaElt::basis(&at_cinv, want));
    assert_eq!(at_cinv.angle(want), r(1, 3));
    // Conjugating by a centralizing element is the identity.
    let x = LambdaElt::basis(&at_c, i).add(&LambdaElt::basis(&at_c, 0)).unwrap();
    assert_eq!(x.conjugate(c, &at_c).unwrap(), x);
    assert_eq!(x.conjugate(0, &at_c).unwrap(), x);
}

#[test]
fn mu_transport_examples() {
    let c2 = group(Family::Cyclic(2));
    let k = scalars(&[&c2]);
    let at_e = ctx(&c2, 0, &k);
    let at_g = ctx(&c2, 1, &k);
    let sgn = LambdaElt::basis(&at_e, 1);
    let m = sgn.mu_transport(&at_g, 2).unwrap();
    let x1 = linear_with_angle(&at_g, r(1, 2));
    assert_eq!(m, LambdaElt::monomial(&at_g, x1, q(r(-1, 2))));
    assert_eq!(m.mul(&m).unwrap(), LambdaElt::unit(&at_g));
    // n = 1 is the identity.
    let a = sgn.add(&LambdaElt::scalar(&at_e, QLaurent::q())).unwrap();
    assert_eq!(a.mu_transport(&at_e, 1).unwrap(), a);

    let triv = group(Family::Cyclic(1));
    let k = scalars(&[&triv]);
    let t = ctx(&triv, 0, &k);
    let f = QLaurent::q_pow(2) + QLaurent::q_pow(-1);
    for n in 1..4 {
        let got = LambdaElt::scalar(&t, f.clone()).mu_transport(&t, n).unwrap();
        assert_eq!(got.coeff(0), &f.rescale(r(1, n as i64)).unwrap());
    }
}

#[test]
fn adams_and_exterior() {
    let c2 = group(Family::Cyclic(2));
    let k = scalars(&[&c2]);
    let c = ctx(&c2, 1, &k);
    let x1 = LambdaElt::basis(&c, linear_with_angle(&c, r(1, 2)));
    assert_eq!(x1.adams(2).unwrap(), LambdaElt::scalar(&c, QLaurent::q()));
    assert_eq!(x1.adams(2).unwrap(), x1.mul(&x1).unwrap());

    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let e = ctx(&s3, 0, &k);
    let y = LambdaElt::basis(&e, 2);
    assert_eq!(y.exterior(0).unwrap(), LambdaElt::unit(&e));
    assert_eq!(y.exterior(1).unwrap(), y);
    // Oracle: χ_{Λ²}(g) = (χ(g)² − χ(g²)) / 2 evaluated per class, then decomposed.
    let tab = e.table();
    let chi = tab.row(2);
    let sk = tab.scalars();
    let conj = tab.conj();
    let vals = (0..conj.num_classes())
        .map(|l| {
            let v = chi.values()[l];
            let sq = chi.values()[conj.power_class(l, 2)];
            sk.mul(sk.sub(sk.mul(v, v), sq), sk.inv(2))
        })
        .collect();
    let oracle = tab.decompose(&ClassFunction::new(conj.clone(), vals)).unwrap();
    assert_eq!(oracle, vec![0, 1, 0]);
    assert_eq!(y.exterior(2).unwrap(), LambdaElt::basis(&e, 1));
    assert!(y.exterior(3).unwrap().is_zero());
}

#[test]
fn unit_is_angle_zero_trivial() {
    let d4 = group(Family::Dihedral(4));
    let k = scalars(&[&d4]);
    for x in 0..d4.order() {
        let c = ctx(&d4, x, &k);
        assert_eq!(c.angle(0), Rat::zero());
        assert_eq!(c.degree(0), 1);
        let u = LambdaElt::unit(&c);
        for i in 0..c.rank() {
            let b = LambdaElt::basis(&c, i);
            assert_eq!(u.mul(&b).unwrap(), b);
            assert_eq!(d4.elem_order(x) as i64 % c.angle(i).denom(), 0);
        }
    }
}

#[test]
fn context_mismatch_is_reported() {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let a = LambdaElt::unit(&ctx(&s3, 0, &k));
    let b = LambdaElt::unit(&ctx(&s3, elem(&s3, &[vec![0, 1]]), &k));
    assert_eq!(a.mul(&b), Err(Error::ContextMismatch));
    assert_eq!(a.add(&b), Err(Error::ContextMismatch));
}

// Randomized properties.

fn arb_coeff() -> impl Strategy<Value = QLaurent> {
    proptest::collection::vec((-3i64..4, -2i64..3), 0..3).prop_map(|ts| {
        QLaurent::from_terms(ts.into_iter().map(|(e, c)| (Rat::from_integer(e), BigInt::from(c))))
    })
}

fn arb_elt(c: &Arc<LambdaCtx>) -> impl Strategy<Value = LambdaElt> {
    let c = c.clone();
    proptest::collection::vec(arb_coeff(), c.rank())
        .prop_map(move |v| LambdaElt::from_coeffs(&c, v).unwrap())
}

struct Fixture {
    s3: Arc<FiniteGroup>,
    at_e: Arc<LambdaCtx>,
    at_t: Arc<LambdaCtx>,
    at_c: Arc<LambdaCtx>,
    at_cinv: Arc<LambdaCtx>,
    c: ElemId,
    t: ElemId,
}

fn fixture() -> Fixture {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3]);
    let c = elem(&s3, &[vec![0, 1, 2]]);
    let t = elem(&s3, &[vec![0, 1]]);
    Fixture {
        at_e: ctx(&s3, 0, &k),
        at_t: ctx(&s3, t, &k),
        at_c: ctx(&s3, c, &k),
        at_cinv: ctx(&s3, s3.inv(c), &k),
        s3,
        c,
        t,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_axioms_at_each_class(seed in 0usize..3, a in arb_coeff(), b in arb_coeff()) {
        let f = fixture();
        let c = [&f.at_e, &f.at_t, &f.at_c][seed].clone();
        let x = LambdaElt::from_coeffs(&c, (0..c.rank()).map(|i| if i % 2 == 0 { a.clone() } else { b.clone() }).collect()).unwrap();
        let y = LambdaElt::from_coeffs(&c, (0..c.rank()).map(|i| if i == 0 { b.clone() } else { a.clone() }).collect()).unwrap();
        let z = LambdaElt::basis(&c, c.rank() - 1);
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&LambdaElt::unit(&c)).unwrap(), x.clone());
        let qq = LambdaElt::scalar(&c, QLaurent::q());
        let qinv = LambdaElt::scalar(&c, QLaurent::q_pow(-1));
        prop_assert_eq!(qq.mul(&qinv).unwrap(), LambdaElt::unit(&c));
        prop_assert_eq!(qq.mul(&x).unwrap(), x.mul(&qq).unwrap());
    }
}

#[test]
fn homomorphism_properties() {
    let f = fixture();
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strat = (arb_elt(&f.at_e), arb_elt(&f.at_e), arb_elt(&f.at_c), arb_elt(&f.at_c));
    for _ in 0..24 {
        let (a, b, x, y) = strat.new_tree(&mut runner).unwrap().current();

        // Restriction to the centralizer of (0 1) at e is a ring map.
        let h = f.s3.subgroup_generated(&[f.t]);
        let k = f.at_e.scalars().clone();
        let h_e = Arc::new(LambdaCtx::new(f.s3.clone(), &h.embedding, 0, k.clone()).unwrap());
        let res = |v: &LambdaElt| v.transport(&h_e, |z| z, 1).unwrap();
        assert_eq!(res(&a.mul(&b).unwrap()), res(&a).mul(&res(&b)).unwrap());
        assert_eq!(res(&LambdaElt::unit(&f.at_e)), LambdaElt::unit(&h_e));

        // Frobenius reciprocity for the pairing.
        let hb = res(&b);
        let ind = hb.induce(&f.at_e).unwrap();
        assert_eq!(ind.pairing(&a).unwrap(), hb.pairing(&res(&a)).unwrap());

        // μ² from (123)² = (132) back to (123), and μ³ from e to (123).
        let c = f.c;
        let cinv_elt = x.conjugate(c, &f.at_c).unwrap();
        assert_eq!(cinv_elt, x);
        let src = x.conjugate(f.t, &f.at_cinv).unwrap();
        let src_y = y.conjugate(f.t, &f.at_cinv).unwrap();
        let mu = |v: &LambdaElt| v.mu_transport(&f.at_c, 2).unwrap();
        assert_eq!(mu(&src.mul(&src_y).unwrap()), mu(&src).mul(&mu(&src_y)).unwrap());
        for kk in 0..=3 {
            assert_eq!(mu(&src.exterior(kk).unwrap()), mu(&src).exterior(kk).unwrap());
        }
        let e_c = Arc::new(LambdaCtx::new(f.s3.clone(), f.at_c.embedding(), 0, k.clone()).unwrap());
        let a3 = res_to(&a, &e_c);
        let mu3 = |v: &LambdaElt| v.mu_transport(&f.at_c, 3).unwrap();
        assert_eq!(mu3(&a3.mul(&a3).unwrap()), mu3(&a3).mul(&mu3(&a3)).unwrap());
        for kk in 0..=3 {
            assert_eq!(mu3(&a3.exterior(kk).unwrap()), mu3(&a3).exterior(kk).unwrap());
        }

        // Conjugation composes.
        let t = f.t;
        let tc = f.s3.mul(t, c);
        let via = x.conjugate(c, &f.at_c).unwrap().conjugate(t, &f.at_cinv).unwrap();
        assert_eq!(x.conjugate(tc, &f.at_cinv).unwrap(), via);

        // Adams operations compose.
        for (m1, m2) in [(2u64, 3u64), (3, 2), (2, 2)] {
            assert_eq!(x.adams(m1).unwrap().adams(m2).unwrap(), x.adams(m1 * m2).unwrap());
            assert_eq!(a.adams(m1).unwrap().adams(m2).unwrap(), a.adams(m1 * m2).unwrap());
        }
    }
}

fn res_to(a: &LambdaElt, target: &Arc<LambdaCtx>) -> LambdaElt {
    a.transport(target, |z| z, 1).unwrap()
}
