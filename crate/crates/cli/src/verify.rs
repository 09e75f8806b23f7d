//! The `verify` suites: deterministic reproductions of worked examples and
//! seeded property checks. Each check reports a short name and the claim it
//! tests, so a failure says which statement broke.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use qell::charmod::{induce_cf, restrict_cf, CharacterTable, ScalarContext};
use qell::group::{builtin, ConjugacyData, DirectProduct, Family, FiniteGSet, FiniteGroup, GroupHom, Subgroup};
use qell::lambda::LambdaElt;
use qell::qell::{
    free_quotient, mu, pullback_hom, verify_tate_presentation, ChangeOfGroup, Kunneth, QEllElt, QEllStructure,
    Transfer,
};
use qell::qlaurent::QLaurent;
use qell::{Rat, DEFAULT_ORDER_CAP as CAP};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commands::element_of;
use crate::json::{self, CheckDesc, ReportDesc};
use crate::random::random_element;
use crate::spec::GroupSpec;

/// Seeded samples per randomized property.
pub const SAMPLES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Deterministic worked examples.
    Paper,
    /// Seeded randomized properties.
    Props,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Paper => "paper",
            Suite::Props => "props",
            Suite::All => "all",
        }
    }
}

/// Why a check failed.
#[derive(Debug)]
pub struct Fail(pub String);

impl From<qell::Error> for Fail {
    fn from(e: qell::Error) -> Self {
        Fail(e.to_string())
    }
}

type Outcome = Result<String, Fail>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Fail> {
    if cond {
        Ok(())
    } else {
        Err(Fail(msg()))
    }
}

pub struct Check {
    pub name: &'static str,
    pub claim: &'static str,
    run: fn(u64) -> Outcome,
}

impl Check {
    /// Runs the check; panics inside the library count as failures.
    pub fn run(&self, seed: u64) -> CheckDesc {
        let outcome = catch_unwind(AssertUnwindSafe(|| (self.run)(seed)))
            .unwrap_or_else(|_| Err(Fail("panicked".into())));
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(Fail(d)) => (false, d),
        };
        CheckDesc {
            name: self.name.into(),
            claim: self.claim.into(),
            pass,
            detail,
        }
    }
}

pub fn paper_checks() -> Vec<Check> {
    vec![
        Check {
            name: "cyclic-relations",
            claim: "x_k^N = q^k for N ≤ 8, every component of rank N",
            run: cyclic_relations,
        },
        Check {
            name: "cyclic-tate-presentation",
            claim: "each cyclic component is Z[q^±][x]/(x^N - q^k) with the powers of x as basis",
            run: cyclic_tate,
        },
        Check {
            name: "s3-identity-relations",
            claim: "Σ₃ relations XY=Y, X²=1, Y²=1+X+Y",
            run: s3_identity,
        },
        Check {
            name: "s3-transposition-component",
            claim: "the component at a transposition has rank 2 and x² = q",
            run: s3_transposition,
        },
        Check {
            name: "s3-three-cycle-component",
            claim: "the component at a 3-cycle has rank 3 and x³ = q",
            run: s3_three_cycle,
        },
        Check {
            name: "kunneth-points",
            claim: "the exterior product on points is a basis bijection",
            run: kunneth_points,
        },
        Check {
            name: "change-of-group-ranks",
            claim: "QEll over S₃ ×_{C₂} pt has ranks 2, 2, 0 and matches QEll_{C₂}(pt)",
            run: change_of_group_ranks,
        },
        Check {
            name: "free-action",
            claim: "a free action gives QEll_G(X) ≅ QEll(X/G)",
            run: free_action,
        },
        Check {
            name: "trivial-action-split",
            claim: "QEll_{G×H}(X) splits when H acts trivially",
            run: trivial_split,
        },
        Check {
            name: "transfer-worked-values",
            claim: "the transfer of 1 from C₃ and from C₂ into S₃",
            run: transfer_values,
        },
        Check {
            name: "power-map-example",
            claim: "μ² sends the sign of C₂ to q^(-1/2) x at the generator",
            run: mu_example,
        },
    ]
}

pub fn props_checks() -> Vec<Check> {
    vec![
        Check {
            name: "change-of-group-round-trip",
            claim: "change of group is an isomorphism",
            run: cog_round_trip,
        },
        Check {
            name: "transfer-algorithms-agree",
            claim: "both transfer formulas agree on points for every subgroup of S₃ and D₄",
            run: transfer_agree,
        },
        Check {
            name: "power-maps-lambda-homomorphism",
            claim: "μⁿ is a Λ-ring homomorphism with μ¹ = id",
            run: mu_lambda,
        },
        Check {
            name: "power-map-denominators",
            claim: "exponents of μⁿ have denominators dividing n·exp(G)",
            run: mu_denominators,
        },
        Check {
            name: "character-tables",
            claim: "orthogonality, Σd² = |G| and Frobenius reciprocity for builtin groups of order ≤ 48",
            run: character_suite,
        },
        Check {
            name: "kunneth-multiplicative",
            claim: "the exterior product is multiplicative and split inverts it",
            run: kunneth_props,
        },
        Check {
            name: "pullback-contravariant",
            claim: "pullback along homomorphisms is a contravariant ring map",
            run: contravariance,
        },
        Check {
            name: "ring-axioms",
            claim: "QEll_G(X) is a commutative unital ring",
            run: ring_axioms,
        },
        Check {
            name: "json-round-trip",
            claim: "element documents round trip bit-exactly",
            run: json_round_trip,
        },
    ]
}

pub fn checks(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Paper => paper_checks(),
        Suite::Props => props_checks(),
        Suite::All => paper_checks().into_iter().chain(props_checks()).collect(),
    }
}

pub fn find(name: &str) -> Option<Check> {
    checks(Suite::All).into_iter().find(|c| c.name == name)
}

pub fn run_suite(suite: Suite, seed: u64) -> ReportDesc {
    let checks: Vec<CheckDesc> = checks(suite).iter().map(|c| c.run(seed)).collect();
    ReportDesc {
        suite: suite.name().into(),
        seed,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

pub fn format_report(r: &ReportDesc) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict} {}: {} [{}]\n", c.name, c.claim, c.detail));
    }
    let failed = r.checks.iter().filter(|c| !c.pass).count();
    out.push_str(&format!(
        "suite {} (seed {}): {} checks, {failed} failed\n",
        r.suite,
        r.seed,
        r.checks.len()
    ));
    out
}

pub fn report_document(r: &ReportDesc) -> json::Document {
    json::Document {
        schema_version: json::SCHEMA_VERSION.into(),
        kind: json::Kind::Report,
        group: None,
        space: None,
        classes: None,
        table: None,
        report: Some(r.clone()),
    }
}

fn group(f: Family) -> Arc<FiniteGroup> {
    Arc::new(builtin(&f, CAP).expect("builtin group within the cap"))
}

fn scalars(gs: &[&Arc<FiniteGroup>]) -> Result<Arc<ScalarContext>, Fail> {
    let refs: Vec<&FiniteGroup> = gs.iter().map(|g| &***g).collect();
    Ok(Arc::new(ScalarContext::for_groups(&refs)?))
}

fn point(g: &Arc<FiniteGroup>, k: &Arc<ScalarContext>) -> Result<Arc<QEllStructure>, Fail> {
    Ok(QEllStructure::point(g.clone(), k.clone())?)
}

/// A generator stream per check, so checks do not perturb each other.
fn rng(seed: u64, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn class_of_order(s: &QEllStructure, order: u32) -> Result<usize, Fail> {
    s.classes()
        .iter()
        .position(|c| c.order == order)
        .ok_or_else(|| Fail(format!("no class of order {order}")))
}

fn elem(g: &FiniteGroup, cycles: &[Vec<u32>]) -> usize {
    element_of(g, cycles).expect("element of the builtin group")
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

fn cyclic_relations(_: u64) -> Outcome {
    for n in 1..=8 {
        let r = verify_tate_presentation(n)?;
        ensure(r.components.len() == n as usize, || format!("N = {n}: wrong number of components"))?;
        for c in &r.components {
            ensure(c.rank_ok && c.relation_ok && c.generator.is_some(), || {
                format!("N = {n}, k = {}: rank {}, relation {}", c.m, c.rank, c.relation_ok)
            })?;
        }
    }
    Ok("N = 1..8".into())
}

fn cyclic_tate(_: u64) -> Outcome {
    for n in 1..=8 {
        let r = verify_tate_presentation(n)?;
        ensure(r.pass, || format!("N = {n}: {r:?}"))?;
    }
    Ok("N = 1..8".into())
}

fn s3_identity(_: u64) -> Outcome {
    let s3 = group(Family::Symmetric(3));
    let s = point(&s3, &scalars(&[&s3])?)?;
    let ctx = &s.class(class_of_order(&s, 1)?).orbits[0].ctx;
    let x = (1..ctx.rank()).find(|&i| ctx.degree(i) == 1).ok_or_else(|| Fail("no sign".into()))?;
    let y = (0..ctx.rank()).find(|&i| ctx.degree(i) == 2).ok_or_else(|| Fail("no standard".into()))?;
    let (one, xx, yy) = (LambdaElt::unit(ctx), LambdaElt::basis(ctx, x), LambdaElt::basis(ctx, y));
    ensure(xx.mul(&yy)? == yy, || "XY ≠ Y".into())?;
    ensure(xx.mul(&xx)? == one, || "X² ≠ 1".into())?;
    ensure(yy.mul(&yy)? == one.add(&xx)?.add(&yy)?, || "Y² ≠ 1 + X + Y".into())?;
    Ok("rank 3".into())
}

/// The component at the class of order `order` has rank `order` and its
/// basis element of angle `1/order` satisfies `x^order = q`.
fn s3_cyclic_component(order: u32) -> Outcome {
    let s3 = group(Family::Symmetric(3));
    let s = point(&s3, &scalars(&[&s3])?)?;
    let ctx = &s.class(class_of_order(&s, order)?).orbits[0].ctx;
    ensure(ctx.rank() == order as usize, || format!("rank {}", ctx.rank()))?;
    let x = (0..ctx.rank())
        .find(|&i| ctx.angle(i) == Rat::new(1, order as i64))
        .ok_or_else(|| Fail("no basis element of angle 1/order".into()))?;
    let p = LambdaElt::basis(ctx, x).pow(order)?;
    ensure(p == LambdaElt::scalar(ctx, QLaurent::q()), || format!("x^{order} = {p}"))?;
    Ok(format!("rank {order}"))
}

fn s3_transposition(_: u64) -> Outcome {
    s3_cyclic_component(2)
}

fn s3_three_cycle(_: u64) -> Outcome {
    s3_cyclic_component(3)
}

fn kunneth_on_points(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<Kunneth, Fail> {
    let dp = DirectProduct::new(a.clone(), b.clone(), CAP)?;
    let k = scalars(&[&dp.group])?;
    let x = Arc::new(FiniteGSet::point(a.clone()));
    let y = Arc::new(FiniteGSet::point(b.clone()));
    Ok(Kunneth::new(dp, x, y, k)?)
}

fn kunneth_points(_: u64) -> Outcome {
    let (c2, c3, s3) = (group(Family::Cyclic(2)), group(Family::Cyclic(3)), group(Family::Symmetric(3)));
    for (a, b) in [(&c2, &c3), (&c2, &c2), (&s3, &c2)] {
        let kn = kunneth_on_points(a, b)?;
        kn.verify_basis_bijection()?;
        ensure(kn.product().rank() == kn.left().rank() * kn.right().rank(), || {
            format!("{} x {}: ranks do not multiply", a.name(), b.name())
        })?;
        let one = kn.kunneth(&QEllElt::unit(kn.left()), &QEllElt::unit(kn.right()))?;
        ensure(one == QEllElt::unit(kn.product()), || "1 ⊠ 1 ≠ 1".into())?;
    }
    Ok("C2xC3, C2xC2, S3xC2".into())
}

fn change_of_group_ranks(_: u64) -> Outcome {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3])?;
    let sub = s3.subgroup_generated(&[elem(&s3, &[vec![0, 1]])]);
    let pt = Arc::new(FiniteGSet::point(sub.group.clone()));
    let cog = ChangeOfGroup::new(&s3, sub, pt, k)?;
    let big = cog.big();
    let ranks = [1, 2, 3]
        .iter()
        .map(|&o| Ok(big.class(class_of_order(big, o)?).rank()))
        .collect::<Result<Vec<_>, Fail>>()?;
    ensure(ranks == [2, 2, 0], || format!("ranks {ranks:?}"))?;
    let small = cog.small();
    let ranks = [1, 2]
        .iter()
        .map(|&o| Ok(small.class(class_of_order(small, o)?).rank()))
        .collect::<Result<Vec<_>, Fail>>()?;
    ensure(ranks == [2, 2], || format!("subgroup ranks {ranks:?}"))?;
    let one = QEllElt::unit(small);
    ensure(cog.forward(&cog.inverse(&one)?)? == one, || "round trip of 1".into())?;
    Ok("ranks 2, 2, 0".into())
}

fn free_action(_: u64) -> Outcome {
    for g in [group(Family::Cyclic(2)), group(Family::Symmetric(3))] {
        let s = QEllStructure::new(Arc::new(FiniteGSet::regular(g.clone())), scalars(&[&g])?)?;
        ensure(s.rank() == 1, || format!("{}: rank {}", g.name(), s.rank()))?;
        let f = QLaurent::from_terms([(Rat::from_integer(-1), 2.into()), (Rat::new(1, 1), 1.into())]);
        let q = free_quotient(&QEllElt::scalar(&s, &f))?;
        ensure(q == vec![(0, f.clone())], || format!("{}: quotient {q:?}", g.name()))?;
    }
    Ok("C2, S3 regular".into())
}

fn trivial_split(_: u64) -> Outcome {
    let (c2, c3) = (group(Family::Cyclic(2)), group(Family::Cyclic(3)));
    let dp = DirectProduct::new(c2.clone(), c3.clone(), CAP)?;
    let k = scalars(&[&dp.group])?;
    let natural = FiniteGSet::natural(c2.clone());
    let z = FiniteGSet::from_fn(dp.group.clone(), 2, |g, p| natural.act(dp.split(g).0, p))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for x in [FiniteGSet::point(dp.group.clone()), z] {
        let input = QEllStructure::new(Arc::new(x), k.clone())?;
        let kn = Kunneth::for_trivial_action(&input, dp.clone())?;
        let one = QEllElt::unit(&input);
        ensure(
            kn.trivial_split(&one)? == kn.tensor(&QEllElt::unit(kn.left()), &QEllElt::unit(kn.right()))?,
            || "1 does not split as 1 ⊗ 1".into(),
        )?;
        for _ in 0..5 {
            let c = random_element(&input, &mut rng);
            ensure(kn.apply(&kn.trivial_split(&c)?)? == c, || "split round trip".into())?;
        }
    }
    Ok("C2xC3 on pt and on two points".into())
}

fn transfer_values(_: u64) -> Outcome {
    let s3 = group(Family::Symmetric(3));
    let k = scalars(&[&s3])?;
    let target = point(&s3, &k)?;
    let e = class_of_order(&target, 1)?;
    let t2 = class_of_order(&target, 2)?;
    let t3 = class_of_order(&target, 3)?;
    let ectx = &target.class(e).orbits[0].ctx;
    let sign = (1..3).find(|&i| ectx.degree(i) == 1).ok_or_else(|| Fail("no sign".into()))?;
    let std = (0..3).find(|&i| ectx.degree(i) == 2).ok_or_else(|| Fail("no standard".into()))?;
    let unit_at = |c: usize| LambdaElt::unit(&target.class(c).orbits[0].ctx);
    let scalar_at = |c: usize, n: i64| LambdaElt::scalar(&target.class(c).orbits[0].ctx, QLaurent::constant(n));
    let zero_at = |c: usize| LambdaElt::zero(&target.class(c).orbits[0].ctx);

    // From C₃: 1 + sign at e, 0 at (12), 2 at (123).
    let c3 = s3.subgroup_generated(&[elem(&s3, &[vec![0, 1, 2]])]);
    let mut want = QEllElt::zero(&target);
    want.set_component(e, 0, LambdaElt::unit(ectx).add(&LambdaElt::basis(ectx, sign))?)?;
    want.set_component(t2, 0, zero_at(t2))?;
    want.set_component(t3, 0, scalar_at(t3, 2))?;
    check_transfer(&target, c3, &want, "C3")?;

    // From C₂: 1 + standard at e, 1 at (12), 0 at (123).
    let c2 = s3.subgroup_generated(&[elem(&s3, &[vec![0, 1]])]);
    let mut want = QEllElt::zero(&target);
    want.set_component(e, 0, LambdaElt::unit(ectx).add(&LambdaElt::basis(ectx, std))?)?;
    want.set_component(t2, 0, unit_at(t2))?;
    check_transfer(&target, c2, &want, "C2")?;
    Ok("C3 and C2 into S3".into())
}

fn check_transfer(target: &Arc<QEllStructure>, sub: Subgroup, want: &QEllElt, name: &str) -> Result<(), Fail> {
    let t = Transfer::new(target.clone(), sub)?;
    let one = QEllElt::unit(t.source());
    let a = t.algorithm_a(&one)?;
    let b = t.algorithm_b(&one)?;
    ensure(&a == want, || format!("from {name}: got {a}"))?;
    ensure(&b == want, || format!("from {name}, second formula: got {b}"))
}

fn mu_example(_: u64) -> Outcome {
    let c2 = group(Family::Cyclic(2));
    let s = point(&c2, &scalars(&[&c2])?)?;
    let e = class_of_order(&s, 1)?;
    let g = class_of_order(&s, 2)?;
    let ectx = &s.class(e).orbits[0].ctx;
    let gctx = &s.class(g).orbits[0].ctx;
    let mut a = QEllElt::zero(&s);
    a.set_component(e, 0, LambdaElt::basis(ectx, 1))?;
    let m = mu(2, &a)?;
    let x = (0..2)
        .find(|&i| gctx.angle(i) == Rat::new(1, 2))
        .ok_or_else(|| Fail("no basis element of angle 1/2".into()))?;
    let want = LambdaElt::monomial(gctx, x, QLaurent::monomial(1, Rat::new(-1, 2)));
    ensure(m.component(g, 0) == &want, || format!("got {m}"))?;
    Ok("q^(-1/2) x".into())
}

fn cog_round_trip(seed: u64) -> Outcome {
    let (s3, c4) = (group(Family::Symmetric(3)), group(Family::Cyclic(4)));
    let k = scalars(&[&s3, &c4])?;
    let cases = [
        (s3.clone(), s3.subgroup_generated(&[elem(&s3, &[vec![0, 1]])])),
        (s3.clone(), s3.subgroup_generated(&[elem(&s3, &[vec![0, 1, 2]])])),
        (c4.clone(), c4.subgroup_generated(&[c4.pow(c4.generator_ids()[0], 2)])),
    ];
    let mut rng = rng(seed, "change-of-group-round-trip");
    let mut count = 0;
    for (g, sub) in cases {
        for regular in [false, true] {
            let x = if regular { FiniteGSet::regular(sub.group.clone()) } else { FiniteGSet::point(sub.group.clone()) };
            let cog = ChangeOfGroup::new(&g, sub.clone(), Arc::new(x), k.clone())?;
            for _ in 0..SAMPLES {
                let b = random_element(cog.small(), &mut rng);
                ensure(cog.forward(&cog.inverse(&b)?)? == b, || format!("{}: forward ∘ inverse ≠ id", g.name()))?;
                let a = random_element(cog.big(), &mut rng);
                ensure(cog.inverse(&cog.forward(&a)?)? == a, || format!("{}: inverse ∘ forward ≠ id", g.name()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs"))
}

fn transfer_agree(seed: u64) -> Outcome {
    let mut rng = rng(seed, "transfer-algorithms-agree");
    let mut subgroups = 0;
    for f in [Family::Symmetric(3), Family::Dihedral(4)] {
        let g = group(f);
        let target = point(&g, &scalars(&[&g])?)?;
        for sub in all_subgroups(&g) {
            let order = sub.order();
            let t = Transfer::new(target.clone(), sub)?;
            for _ in 0..SAMPLES {
                let b = random_element(t.source(), &mut rng);
                ensure(t.algorithm_a(&b)? == t.algorithm_b(&b)?, || {
                    format!("{}: subgroup of order {order} disagrees on {b}", g.name())
                })?;
            }
            subgroups += 1;
        }
    }
    Ok(format!("{subgroups} subgroups"))
}

fn mu_lambda(seed: u64) -> Outcome {
    let (s3, c4) = (group(Family::Symmetric(3)), group(Family::Cyclic(4)));
    let k = scalars(&[&s3, &c4])?;
    let mut rng = rng(seed, "power-maps-lambda-homomorphism");
    for s in [point(&s3, &k)?, point(&c4, &k)?] {
        let name = s.group().name().to_string();
        for _ in 0..SAMPLES {
            let a = random_element(&s, &mut rng);
            let b = random_element(&s, &mut rng);
            ensure(mu(1, &a)? == a, || format!("{name}: μ¹ ≠ id"))?;
            for n in 1..=3 {
                let ma = mu(n, &a)?;
                ensure(mu(n, &a.mul(&b)?)? == ma.mul(&mu(n, &b)?)?, || format!("{name}: μ^{n} not multiplicative"))?;
                for kk in 0..=2 {
                    ensure(mu(n, &a.exterior(kk)?)? == ma.exterior(kk)?, || {
                        format!("{name}: μ^{n} does not commute with λ^{kk}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{SAMPLES} pairs per group, n = 1..3"))
}

fn mu_denominators(seed: u64) -> Outcome {
    let mut rng = rng(seed, "power-map-denominators");
    for f in [Family::Symmetric(3), Family::Dihedral(4), Family::Cyclic(6)] {
        let g = group(f);
        let s = point(&g, &scalars(&[&g])?)?;
        let exp = g.exponent() as i64;
        for n in 1..=5i64 {
            let m = mu(n as u64, &random_element(&s, &mut rng))?;
            for e in m.components().iter().flatten() {
                for c in e.coeffs() {
                    ensure((n * exp) % c.max_denominator() == 0, || {
                        format!("{}: denominator {} for n = {n}", g.name(), c.max_denominator())
                    })?;
                }
            }
        }
    }
    Ok("S3, D4, C6 with n = 1..5".into())
}

/// Every builtin family member of order at most 48.
pub fn small_builtin_groups() -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=48 {
        out.push(Family::Cyclic(n));
    }
    for n in 1..=24 {
        out.push(Family::Dihedral(n));
    }
    for n in 1..=4 {
        out.push(Family::Symmetric(n));
    }
    for n in 1..=5 {
        if Family::Alternating(n).order().is_some_and(|o| o <= 48) {
            out.push(Family::Alternating(n));
        }
    }
    out
}

/// Checks one character table against the class equation alone: row and
/// column orthogonality, `Σ d² = |G|`, and reciprocity for every cyclic
/// subgroup and every centralizer.
pub fn check_character_table(f: &Family) -> Result<(), Fail> {
    let g = group(f.clone());
    let k = scalars(&[&g])?;
    let conj = Arc::new(ConjugacyData::new(g.clone()));
    let t = CharacterTable::new(conj.clone(), k.clone())?;
    let name = g.name().to_string();
    let r = conj.num_classes();
    ensure(t.num_irr() == r, || format!("{name}: {} characters for {r} classes", t.num_irr()))?;
    let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
    ensure(sum == g.order() as u64, || format!("{name}: Σd² = {sum}"))?;

    // Row orthogonality: Σ_g χ(g) ψ(g⁻¹) = |G| δ.
    for i in 0..r {
        for j in 0..r {
            let s = (0..g.order()).fold(0, |acc, x| k.add(acc, k.mul(t.row(i).at(x), t.row(j).at(g.inv(x)))));
            let want = if i == j { k.from_i64(g.order() as i64) } else { 0 };
            ensure(s == want, || format!("{name}: rows {i}, {j} not orthogonal"))?;
        }
    }
    // Column orthogonality: Σ_χ χ(a) χ(b⁻¹) = |C(a)| δ.
    for a in 0..r {
        for b in 0..r {
            let (x, y) = (conj.rep(a), g.inv(conj.rep(b)));
            let s = (0..r).fold(0, |acc, i| k.add(acc, k.mul(t.row(i).at(x), t.row(i).at(y))));
            let want = if a == b { k.from_i64(conj.centralizer_order(a) as i64) } else { 0 };
            ensure(s == want, || format!("{name}: columns {a}, {b} not orthogonal"))?;
        }
    }
    let mut subgroups: Vec<Subgroup> = (0..r).map(|c| g.subgroup_generated(&[conj.rep(c)])).collect();
    subgroups.extend((0..r).map(|c| conj.centralizer_subgroup(c)));
    let mut seen = BTreeSet::new();
    for h in subgroups {
        if !seen.insert(h.embedding.clone()) {
            continue;
        }
        let hconj = Arc::new(ConjugacyData::new(h.group.clone()));
        let ht = CharacterTable::new(hconj.clone(), k.clone())?;
        let incl = GroupHom::inclusion(g.clone(), &h);
        for chi in ht.rows() {
            let ind = induce_cf(&h.embedding, &conj, chi, &k)?;
            for psi in t.rows() {
                let res = restrict_cf(&incl, &hconj, psi)?;
                ensure(t.inner_product(&ind, psi)? == ht.inner_product(chi, &res)?, || {
                    format!("{name}: reciprocity fails for a subgroup of order {}", h.order())
                })?;
            }
        }
    }
    Ok(())
}

fn character_suite(_: u64) -> Outcome {
    let groups = small_builtin_groups();
    for f in &groups {
        check_character_table(f)?;
    }
    Ok(format!("{} groups", groups.len()))
}

fn kunneth_props(seed: u64) -> Outcome {
    let (s3, c2) = (group(Family::Symmetric(3)), group(Family::Cyclic(2)));
    let dp = DirectProduct::new(s3.clone(), c2.clone(), CAP)?;
    let k = scalars(&[&dp.group])?;
    let x = Arc::new(FiniteGSet::natural(s3));
    let y = Arc::new(FiniteGSet::regular(c2));
    let kn = Kunneth::new(dp, x, y, k)?;
    let mut rng = rng(seed, "kunneth-multiplicative");
    for _ in 0..10 {
        let (a, a2) = (random_element(kn.left(), &mut rng), random_element(kn.left(), &mut rng));
        let (b, b2) = (random_element(kn.right(), &mut rng), random_element(kn.right(), &mut rng));
        let ab = kn.kunneth(&a, &b)?;
        ensure(kn.kunneth(&a.mul(&a2)?, &b.mul(&b2)?)? == ab.mul(&kn.kunneth(&a2, &b2)?)?, || {
            "not multiplicative".into()
        })?;
        ensure(kn.split(&ab)? == kn.tensor(&a, &b)?, || "split(a ⊠ b) ≠ a ⊗ b".into())?;
        let c = random_element(kn.product(), &mut rng);
        ensure(kn.apply(&kn.split(&c)?)? == c, || "apply ∘ split ≠ id".into())?;
    }
    Ok("S3 natural x C2 regular".into())
}

fn parity(p: &qell::group::Permutation) -> usize {
    p.cycles().iter().map(|c| c.len().saturating_sub(1)).sum::<usize>() % 2
}

fn contravariance(seed: u64) -> Outcome {
    let (s3, c2) = (group(Family::Symmetric(3)), group(Family::Cyclic(2)));
    let k = scalars(&[&s3, &c2])?;
    let phi = GroupHom::from_map(s3.clone(), c2.clone(), s3.elements().iter().map(parity).collect())?;
    let sub = s3.subgroup_generated(&[elem(&s3, &[vec![1, 2]])]);
    let psi = GroupHom::inclusion(s3.clone(), &sub);
    let composite = psi.then(&phi)?;
    let (pc2, ps3, psub) = (point(&c2, &k)?, point(&s3, &k)?, point(&sub.group, &k)?);
    let mut rng = rng(seed, "pullback-contravariant");
    for _ in 0..SAMPLES {
        let a = random_element(&pc2, &mut rng);
        let b = random_element(&pc2, &mut rng);
        let direct = pullback_hom(&composite, &a, &psub)?;
        let stepwise = pullback_hom(&psi, &pullback_hom(&phi, &a, &ps3)?, &psub)?;
        ensure(direct == stepwise, || "(φψ)* ≠ ψ*φ*".into())?;
        ensure(
            pullback_hom(&phi, &a.mul(&b)?, &ps3)? == pullback_hom(&phi, &a, &ps3)?.mul(&pullback_hom(&phi, &b, &ps3)?)?,
            || "pullback not multiplicative".into(),
        )?;
    }
    Ok(format!("{SAMPLES} pairs"))
}

fn ring_axioms(seed: u64) -> Outcome {
    let mut rng = rng(seed, "ring-axioms");
    for f in [Family::Symmetric(3), Family::Dihedral(4)] {
        let g = group(f);
        let s = QEllStructure::new(Arc::new(FiniteGSet::natural(g.clone())), scalars(&[&g])?)?;
        let one = QEllElt::unit(&s);
        for _ in 0..10 {
            let (a, b, c) = (random_element(&s, &mut rng), random_element(&s, &mut rng), random_element(&s, &mut rng));
            ensure(a.mul(&b)? == b.mul(&a)?, || "not commutative".into())?;
            ensure(a.mul(&one)? == a, || "1 is not a unit".into())?;
            ensure(a.mul(&b.add(&c)?)? == a.mul(&b)?.add(&a.mul(&c)?)?, || "not distributive".into())?;
            ensure(a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?, || "not associative".into())?;
        }
    }
    Ok("S3, D4 natural".into())
}

fn json_round_trip(seed: u64) -> Outcome {
    let mut rng = rng(seed, "json-round-trip");
    for text in ["S3", "D4", "C2xC3"] {
        let spec: GroupSpec = text.parse().map_err(|e: crate::spec::ParseError| Fail(e.to_string()))?;
        let g = spec.build(CAP).map_err(|e| Fail(e.to_string()))?;
        let k = scalars(&[&g])?;
        let s = QEllStructure::new(Arc::new(FiniteGSet::natural(g)), k)?;
        for _ in 0..SAMPLES {
            let e = random_element(&s, &mut rng);
            let out = json::to_string(&json::element_document(&spec, &e));
            let doc = json::from_str(&out).map_err(|e| Fail(e.to_string()))?;
            let back = json::decode_element(&doc, &spec, &s).map_err(|e| Fail(e.to_string()))?;
            ensure(back == e, || format!("{text}: decoded element differs"))?;
            ensure(json::to_string(&json::element_document(&spec, &back)) == out, || {
                format!("{text}: re-encoding differs")
            })?;
        }
    }
    Ok(format!("{SAMPLES} elements per group"))
}
