//! The subcommands. Each returns the text destined for stdout so the binary
//! and the tests share one code path.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use qell::charmod::CharacterTable;
use qell::group::{FiniteGSet, FiniteGroup, GroupHom, Permutation, Subgroup};
use qell::lambda::{LambdaCtx, LambdaElt};
use qell::qell::{mu, pullback_hom, ChangeOfGroup, Kunneth, QEllElt, QEllStructure, Transfer};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::json::{self, Document, Kind};
use crate::random::random_element;
use crate::session::Session;
use crate::spec::GroupSpec;

/// Largest rank whose multiplication table is printed as text.
pub const MAX_PRINTED_RANK: usize = 8;

/// The finite set a structure is built over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Space {
    #[default]
    Point,
    /// The defining permutation action.
    Natural,
    /// Left multiplication on the group.
    Regular,
}

impl Space {
    pub fn build(self, g: Arc<FiniteGroup>) -> FiniteGSet {
        match self {
            Space::Point => FiniteGSet::point(g),
            Space::Natural => FiniteGSet::natural(g),
            Space::Regular => FiniteGSet::regular(g),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    /// Inverse change of group followed by pushforward.
    A,
    /// Explicit sum over subgroup classes; points only.
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Direction {
    /// `QEll_H(X) → QEll_G(G ×_H X)`.
    Up,
    /// `QEll_G(G ×_H X) → QEll_H(X)`.
    Down,
}

/// Which element `element` emits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pick {
    Unit,
    Random(u64),
    Basis { class: usize, orbit: usize, index: usize },
}

impl std::str::FromStr for Pick {
    type Err = CliError;

    /// Parses `CLASS:ORBIT:INDEX`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CliError::Usage(format!("expected CLASS:ORBIT:INDEX, got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let n = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        Ok(Pick::Basis {
            class: n(parts[0])?,
            orbit: n(parts[1])?,
            index: n(parts[2])?,
        })
    }
}

fn structure_over(session: &mut Session, spec: &GroupSpec, space: Space) -> Result<Arc<QEllStructure>, CliError> {
    let g = session.group(spec)?;
    let k = session.seal()?;
    Ok(QEllStructure::new(Arc::new(space.build(g)), k)?)
}

/// Renders `Σ c_i e_i` compactly, e.g. `e0 + q e2 + (1 - q^-1) e1`.
pub fn format_elt(e: &LambdaElt) -> String {
    let mut out = String::new();
    for (i, c) in e.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if c.is_one() {
            let _ = write!(out, "e{i}");
        } else if c.num_terms() == 1 {
            let _ = write!(out, "{c} e{i}");
        } else {
            let _ = write!(out, "({c}) e{i}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn basis_line(ctx: &LambdaCtx) -> String {
    (0..ctx.rank())
        .map(|i| format!("e{i}(deg {}, c {})", ctx.degree(i), ctx.angle(i)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `point`: the structure of `QEll_G(pt)`, optionally exported as JSON.
pub fn point(session: &mut Session, spec: &GroupSpec, json_path: Option<&Path>) -> Result<String, CliError> {
    let s = structure_over(session, spec, Space::Point)?;
    if let Some(path) = json_path {
        std::fs::write(path, json::to_string(&json::structure_document(spec, &s)?))?;
    }
    let g = s.group();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "QEll of a point for {spec}: order {}, classes {}, total rank {}",
        g.order(),
        s.num_classes(),
        s.rank()
    );
    for (ci, c) in s.classes().iter().enumerate() {
        let ctx = &c.orbits[0].ctx;
        let _ = writeln!(
            out,
            "class {ci}: rep {}, order {}, centralizer order {}, rank {}",
            g.element(c.rep),
            c.order,
            c.centralizer_order,
            ctx.rank()
        );
        let _ = writeln!(out, "  basis: {}", basis_line(ctx));
        if ctx.rank() <= MAX_PRINTED_RANK {
            for i in 0..ctx.rank() {
                for j in i..ctx.rank() {
                    let p = LambdaElt::basis(ctx, i).mul(&LambdaElt::basis(ctx, j))?;
                    let _ = writeln!(out, "  e{i} * e{j} = {}", format_elt(&p));
                }
            }
        } else {
            let _ = writeln!(out, "  (multiplication table omitted; see the JSON export)");
        }
    }
    Ok(out)
}

/// `table`: the character table as a JSON document.
pub fn table(session: &mut Session, spec: &GroupSpec) -> Result<String, CliError> {
    let s = structure_over(session, spec, Space::Point)?;
    let conj = s.conj();
    let g = s.group();
    let t = CharacterTable::new(conj.clone(), s.scalars().clone())?;
    let classes = (0..conj.num_classes())
        .map(|c| json::TableClassDesc {
            rep: g.element(conj.rep(c)).images().to_vec(),
            rep_order: g.elem_order(conj.rep(c)),
            size: conj.size(c),
            centralizer_order: conj.centralizer_order(c),
        })
        .collect();
    let characters = (0..t.num_irr())
        .map(|i| {
            let values = (0..conj.num_classes())
                .map(|c| {
                    let o = g.elem_order(conj.rep(c)) as u64;
                    Ok(character_value(o, &t.eigenvalue_multiplicities(i, c)?))
                })
                .collect::<Result<_, CliError>>()?;
            Ok(json::CharacterDesc {
                degree: t.degree(i),
                values,
            })
        })
        .collect::<Result<_, CliError>>()?;
    let doc = Document {
        schema_version: json::SCHEMA_VERSION.into(),
        kind: Kind::Table,
        group: Some(json::group_desc(spec, g)),
        space: None,
        classes: None,
        table: Some(json::TableDesc { classes, characters }),
        report: None,
    };
    Ok(json::to_string(&doc))
}

/// Writes `Σ m_j ζ_o^j` as a sum of `E(o)^j`, with `E(o)` a primitive `o`-th
/// root of unity; terms with `j = 0` are plain integers.
pub fn character_value(o: u64, mults: &[u64]) -> String {
    let mut parts = Vec::new();
    for (j, &m) in mults.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let root = match j {
            0 => None,
            1 => Some(format!("E({o})")),
            _ => Some(format!("E({o})^{j}")),
        };
        parts.push(match (root, m) {
            (None, m) => m.to_string(),
            (Some(r), 1) => r,
            (Some(r), m) => format!("{m}*{r}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `element`: a unit, basis or seeded random element as a JSON document.
pub fn element(session: &mut Session, spec: &GroupSpec, space: Space, pick: Pick) -> Result<String, CliError> {
    let s = structure_over(session, spec, space)?;
    let e = match pick {
        Pick::Unit => QEllElt::unit(&s),
        Pick::Random(seed) => random_element(&s, &mut ChaCha8Rng::seed_from_u64(seed)),
        Pick::Basis { class, orbit, index } => {
            let ctx = s
                .classes()
                .get(class)
                .and_then(|c| c.orbits.get(orbit))
                .map(|o| &o.ctx)
                .filter(|ctx| index < ctx.rank())
                .ok_or_else(|| CliError::Usage(format!("no basis element {class}:{orbit}:{index}")))?;
            let mut e = QEllElt::zero(&s);
            e.set_component(class, orbit, LambdaElt::basis(ctx, index))?;
            e
        }
    };
    Ok(json::to_string(&json::element_document(spec, &e)))
}

/// An element document read from disk, with its group spec.
pub struct Input {
    pub doc: Document,
    pub spec: GroupSpec,
}

pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    let doc = json::from_str(&text)?;
    let spec = json::element_spec(&doc)?;
    Ok(Input { doc, spec })
}

fn expect_spec(input: &Input, spec: &GroupSpec, role: &str) -> Result<(), CliError> {
    if input.spec.text() != spec.text() {
        return Err(CliError::Schema(format!(
            "the input lives over `{}` but the {role} is `{spec}`",
            input.spec
        )));
    }
    Ok(())
}

/// `op mu`.
pub fn op_mu(session: &mut Session, n: u64, input: &Input) -> Result<String, CliError> {
    let g = session.group(&input.spec)?;
    let k = session.seal()?;
    let x = json::element_space(&input.doc, &g)?;
    let s = QEllStructure::new(Arc::new(x), k)?;
    let a = json::decode_element(&input.doc, &input.spec, &s)?;
    Ok(json::to_string(&json::element_document(&input.spec, &mu(n, &a)?)))
}

/// `H ≤ G` from a spec of the same degree; anything else is not a subgroup.
fn subgroup(g: &FiniteGroup, h: Arc<FiniteGroup>) -> Result<Subgroup, CliError> {
    Ok(Subgroup::new(g, h)?)
}

/// `op transfer`: `QEll_H(X) → QEll_G(X)` for the `G`-set `X` given by `space`.
pub fn op_transfer(
    session: &mut Session,
    group: &GroupSpec,
    sub: &GroupSpec,
    space: Space,
    algorithm: Algorithm,
    input: &Input,
) -> Result<String, CliError> {
    expect_spec(input, sub, "subgroup")?;
    let g = session.group(group)?;
    let h = session.group(sub)?;
    let k = session.seal()?;
    let sub = subgroup(&g, h)?;
    let target = QEllStructure::new(Arc::new(space.build(g)), k)?;
    let t = Transfer::new(target, sub)?;
    let b = json::decode_element(&input.doc, &input.spec, t.source())?;
    let a = match algorithm {
        Algorithm::A => t.algorithm_a(&b)?,
        Algorithm::B => t.algorithm_b(&b)?,
    };
    Ok(json::to_string(&json::element_document(group, &a)))
}

/// `op cog`: the change-of-group isomorphism for the `H`-set given by `space`.
pub fn op_cog(
    session: &mut Session,
    group: &GroupSpec,
    sub: &GroupSpec,
    space: Space,
    direction: Direction,
    input: &Input,
) -> Result<String, CliError> {
    let g = session.group(group)?;
    let h = session.group(sub)?;
    let k = session.seal()?;
    let sub_group = subgroup(&g, h.clone())?;
    let cog = ChangeOfGroup::new(&g, sub_group, Arc::new(space.build(h)), k)?;
    match direction {
        Direction::Up => {
            expect_spec(input, sub, "subgroup")?;
            let b = json::decode_element(&input.doc, &input.spec, cog.small())?;
            Ok(json::to_string(&json::element_document(group, &cog.inverse(&b)?)))
        }
        Direction::Down => {
            expect_spec(input, group, "group")?;
            let a = json::decode_element(&input.doc, &input.spec, cog.big())?;
            Ok(json::to_string(&json::element_document(sub, &cog.forward(&a)?)))
        }
    }
}

/// `op pullback`: restriction along `H ↪ G`; the input fixes `G` and `X`.
pub fn op_pullback(session: &mut Session, sub: &GroupSpec, input: &Input) -> Result<String, CliError> {
    let g = session.group(&input.spec)?;
    let h = session.group(sub)?;
    let k = session.seal()?;
    let x = json::element_space(&input.doc, &g)?;
    let source = QEllStructure::new(Arc::new(x), k.clone())?;
    let a = json::decode_element(&input.doc, &input.spec, &source)?;
    let incl = GroupHom::inclusion(g.clone(), &subgroup(&g, h)?);
    let target = QEllStructure::new(Arc::new(source.gset().restrict(&incl)?), k)?;
    Ok(json::to_string(&json::element_document(sub, &pullback_hom(&incl, &a, &target)?)))
}

/// `op kunneth`: the exterior product of two elements.
pub fn op_kunneth(session: &mut Session, left: &Input, right: &Input) -> Result<String, CliError> {
    let gl = session.group(&left.spec)?;
    let gr = session.group(&right.spec)?;
    let dp = session.product(gl.clone(), gr.clone())?;
    let k = session.seal()?;
    let x = json::element_space(&left.doc, &gl)?;
    let y = json::element_space(&right.doc, &gr)?;
    let kn = Kunneth::new(dp, Arc::new(x), Arc::new(y), k)?;
    let a = json::decode_element(&left.doc, &left.spec, kn.left())?;
    let b = json::decode_element(&right.doc, &right.spec, kn.right())?;
    let spec = left.spec.times(&right.spec);
    Ok(json::to_string(&json::element_document(&spec, &kn.kunneth(&a, &b)?)))
}

/// The permutation with the given cycles, as an id of `g`.
pub fn element_of(g: &FiniteGroup, cycles: &[Vec<u32>]) -> Option<usize> {
    Permutation::from_cycles(g.degree(), cycles).ok().and_then(|p| g.index_of(&p))
}
