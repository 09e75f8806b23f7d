//! The version 1 JSON schema.
//!
//! Every document carries `schema_version`, a `kind` and, except for reports,
//! the group. Elements additionally carry the finite set they live over
//! (`space`: the permutation each group generator induces on the points) so a
//! document can be decoded on its own. Rationals are reduced `"a/b"` strings;
//! integer coefficients are JSON integers of arbitrary size.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use qell::group::{FiniteGSet, FiniteGroup, Permutation};
use qell::lambda::{LambdaCtx, LambdaElt};
use qell::qell::{QEllElt, QEllStructure};
use qell::qlaurent::QLaurent;
use qell::Rat;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::spec::GroupSpec;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Structure,
    Element,
    Table,
    Report,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassDesc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDesc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDesc {
    pub spec: String,
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDesc {
    pub points: usize,
    /// Image array of each group generator acting on the points.
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDesc {
    pub rep: Vec<u32>,
    pub rep_order: u32,
    pub centralizer_order: usize,
    pub orbits: Vec<OrbitDesc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDesc {
    pub orbit_rep: usize,
    pub stabilizer_order: usize,
    pub rank: usize,
    pub basis: Vec<BasisDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<Vec<TermDesc>>>,
    /// `mult_table[i][j]` is the coefficient vector of `e_i · e_j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult_table: Option<Vec<Vec<Vec<Vec<TermDesc>>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDesc {
    pub irr: usize,
    pub degree: u64,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDesc {
    pub exp: String,
    pub coef: serde_json::Number,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDesc {
    pub classes: Vec<TableClassDesc>,
    pub characters: Vec<CharacterDesc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableClassDesc {
    pub rep: Vec<u32>,
    pub rep_order: u32,
    pub size: usize,
    pub centralizer_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterDesc {
    pub degree: u64,
    /// Exact values, one per class; see [`crate::commands::character_value`].
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDesc {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckDesc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDesc {
    pub name: String,
    pub claim: String,
    pub pass: bool,
    pub detail: String,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Strict inverse of [`rat_to_string`]: only reduced `a/b` with `b > 0`.
pub fn rat_from_str(s: &str) -> Result<Rat, CliError> {
    let bad = || schema(format!("`{s}` is not a reduced rational `a/b`"));
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if b <= 0 {
        return Err(bad());
    }
    let r = Rat::new(a, b);
    if rat_to_string(&r) != s {
        return Err(bad());
    }
    Ok(r)
}

pub fn laurent_to_terms(f: &QLaurent) -> Vec<TermDesc> {
    f.terms()
        .map(|(e, c)| TermDesc {
            exp: rat_to_string(e),
            coef: serde_json::Number::from_str(&c.to_string()).expect("integer literal"),
        })
        .collect()
}

pub fn laurent_from_terms(terms: &[TermDesc]) -> Result<QLaurent, CliError> {
    let mut out = QLaurent::zero();
    let mut last: Option<Rat> = None;
    for t in terms {
        let e = rat_from_str(&t.exp)?;
        if last.is_some_and(|l| l >= e) {
            return Err(schema("terms must have strictly increasing exponents"));
        }
        last = Some(e);
        let text = t.coef.to_string();
        let c = BigInt::from_str(&text).map_err(|_| schema(format!("coefficient `{text}` is not an integer")))?;
        if c == BigInt::from(0) {
            return Err(schema("zero coefficients are not stored"));
        }
        out.add_term(e, c);
    }
    Ok(out)
}

pub fn group_desc(spec: &GroupSpec, g: &FiniteGroup) -> GroupDesc {
    GroupDesc {
        spec: spec.text().to_string(),
        degree: g.degree(),
        order: g.order(),
        generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
    }
}

pub fn space_desc(x: &FiniteGSet) -> SpaceDesc {
    SpaceDesc {
        points: x.len(),
        generators: x.generator_perms().iter().map(|p| p.images().to_vec()).collect(),
    }
}

/// Checks a group descriptor against a group rebuilt from its spec.
pub fn check_group(desc: &GroupDesc, spec: &GroupSpec, g: &FiniteGroup) -> Result<(), CliError> {
    if *desc != group_desc(spec, g) {
        return Err(schema(format!(
            "group descriptor does not match the group built from `{}`",
            desc.spec
        )));
    }
    Ok(())
}

pub fn space_from_desc(group: &Arc<FiniteGroup>, desc: &SpaceDesc) -> Result<FiniteGSet, CliError> {
    let perms = desc
        .generators
        .iter()
        .map(|images| Permutation::new(images.clone()).map_err(|e| schema(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    FiniteGSet::from_generator_perms(group.clone(), desc.points, &perms).map_err(|e| schema(e.to_string()))
}

fn basis_desc(ctx: &LambdaCtx) -> Vec<BasisDesc> {
    (0..ctx.rank())
        .map(|i| BasisDesc {
            irr: i,
            degree: ctx.degree(i),
            c: rat_to_string(&ctx.angle(i)),
        })
        .collect()
}

fn coeffs_desc(e: &LambdaElt) -> Vec<Vec<TermDesc>> {
    e.coeffs().iter().map(laurent_to_terms).collect()
}

fn mult_table(ctx: &Arc<LambdaCtx>) -> Result<Vec<Vec<Vec<Vec<TermDesc>>>>, CliError> {
    (0..ctx.rank())
        .map(|i| {
            (0..ctx.rank())
                .map(|j| Ok(coeffs_desc(&LambdaElt::basis(ctx, i).mul(&LambdaElt::basis(ctx, j))?)))
                .collect()
        })
        .collect()
}

enum Payload<'a> {
    Structure,
    Element(&'a QEllElt),
}

fn classes_desc(s: &QEllStructure, payload: Payload<'_>) -> Result<Vec<ClassDesc>, CliError> {
    let g = s.group();
    let mut out = Vec::new();
    for (ci, c) in s.classes().iter().enumerate() {
        let mut orbits = Vec::new();
        for (oi, o) in c.orbits.iter().enumerate() {
            let (coeffs, table) = match payload {
                Payload::Structure => (None, Some(mult_table(&o.ctx)?)),
                Payload::Element(e) => {
                    let comp = e.component(ci, oi);
                    if comp.is_zero() {
                        continue;
                    }
                    (Some(coeffs_desc(comp)), None)
                }
            };
            orbits.push(OrbitDesc {
                orbit_rep: o.orbit.rep,
                stabilizer_order: o.orbit.stabilizer.len(),
                rank: o.ctx.rank(),
                basis: basis_desc(&o.ctx),
                coeffs,
                mult_table: table,
            });
        }
        if matches!(payload, Payload::Element(_)) && orbits.is_empty() {
            continue;
        }
        out.push(ClassDesc {
            rep: g.element(c.rep).images().to_vec(),
            rep_order: c.order,
            centralizer_order: c.centralizer_order,
            orbits,
        });
    }
    Ok(out)
}

pub fn structure_document(spec: &GroupSpec, s: &QEllStructure) -> Result<Document, CliError> {
    Ok(Document {
        schema_version: SCHEMA_VERSION.into(),
        kind: Kind::Structure,
        group: Some(group_desc(spec, s.group())),
        space: Some(space_desc(s.gset())),
        classes: Some(classes_desc(s, Payload::Structure)?),
        table: None,
        report: None,
    })
}

pub fn element_document(spec: &GroupSpec, e: &QEllElt) -> Document {
    let s = e.structure();
    Document {
        schema_version: SCHEMA_VERSION.into(),
        kind: Kind::Element,
        group: Some(group_desc(spec, s.group())),
        space: Some(space_desc(s.gset())),
        classes: Some(classes_desc(s, Payload::Element(e)).expect("element payload cannot fail")),
        table: None,
        report: None,
    }
}

pub fn to_string(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_str(text: &str) -> Result<Document, CliError> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(schema(format!(
            "unsupported schema_version `{}` (expected `{SCHEMA_VERSION}`)",
            doc.schema_version
        )));
    }
    Ok(doc)
}

/// The parsed group spec of an element document.
pub fn element_spec(doc: &Document) -> Result<GroupSpec, CliError> {
    if doc.kind != Kind::Element {
        return Err(schema("expected an element document"));
    }
    let g = doc.group.as_ref().ok_or_else(|| schema("missing `group`"))?;
    GroupSpec::parse(&g.spec).map_err(|e| schema(e.to_string()))
}

pub fn element_space(doc: &Document, group: &Arc<FiniteGroup>) -> Result<FiniteGSet, CliError> {
    space_from_desc(group, doc.space.as_ref().ok_or_else(|| schema("missing `space`"))?)
}

/// Decodes an element document over `structure`, whose group must have been
/// built from the document's spec and whose set must equal the document's space.
pub fn decode_element(doc: &Document, spec: &GroupSpec, structure: &Arc<QEllStructure>) -> Result<QEllElt, CliError> {
    let g = structure.group();
    check_group(doc.group.as_ref().ok_or_else(|| schema("missing `group`"))?, spec, g)?;
    let space = doc.space.as_ref().ok_or_else(|| schema("missing `space`"))?;
    if *space != space_desc(structure.gset()) {
        return Err(schema("the element lives over a different finite set"));
    }
    let mut elt = QEllElt::zero(structure);
    let mut seen = BTreeMap::new();
    for c in doc.classes.as_deref().ok_or_else(|| schema("missing `classes`"))? {
        let rep = Permutation::new(c.rep.clone())
            .ok()
            .and_then(|p| g.index_of(&p))
            .ok_or_else(|| schema("class rep is not a group element"))?;
        let ci = structure.conj().class_of(rep);
        let class = structure.class(ci);
        if class.rep != rep {
            return Err(schema("class rep is not the canonical representative"));
        }
        if class.order != c.rep_order || class.centralizer_order != c.centralizer_order {
            return Err(schema("class metadata does not match"));
        }
        for o in &c.orbits {
            let oi = class
                .orbits
                .iter()
                .position(|x| x.orbit.rep == o.orbit_rep)
                .ok_or_else(|| schema(format!("{} is not an orbit representative", o.orbit_rep)))?;
            if seen.insert((ci, oi), ()).is_some() {
                return Err(schema("component listed twice"));
            }
            let oc = &class.orbits[oi];
            if o.stabilizer_order != oc.orbit.stabilizer.len() || o.rank != oc.ctx.rank() || o.basis != basis_desc(&oc.ctx) {
                return Err(schema("orbit metadata does not match"));
            }
            if o.mult_table.is_some() {
                return Err(schema("element documents carry no multiplication tables"));
            }
            let coeffs = o.coeffs.as_ref().ok_or_else(|| schema("missing `coeffs`"))?;
            if coeffs.len() != oc.ctx.rank() {
                return Err(schema("coefficient vector has the wrong length"));
            }
            let coeffs = coeffs.iter().map(|t| laurent_from_terms(t)).collect::<Result<Vec<_>, _>>()?;
            elt.set_component(ci, oi, LambdaElt::from_coeffs(&oc.ctx, coeffs)?)?;
        }
    }
    Ok(elt)
}
