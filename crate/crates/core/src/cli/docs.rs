//! JSON documents: parsing, cross-reference resolution and export.
//!
//! A file holds one document or an array of documents. Every document has
//! a `kind` and an `id`; other documents refer to it by that id.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{AlgebraMorphism, RationalAlgebra, StructureConstant};
use crate::aqft::Aqft;
use crate::exactlin::{Matrix, Rational};
use crate::fincat::{build_circle_model, FinCategory, FinFunctor, ObjId, OrthogonalCategory};
use crate::fredenhagen::{universal_algebra, DescentObject, UniversalAlgebraResult};
use crate::gauging::EquivariantAqft;
use crate::grouprep::{FiniteGroup, GroupAction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("no documents: the input must hold at least one document (an object with \"kind\" and \"id\", or an array of them); see schemas/document.schema.json")]
    Empty,
    #[error("{file}: {message}")]
    Parse { file: String, message: String },
    #[error("duplicate id {0:?}")]
    Duplicate(String),
    #[error("{id}: unresolved reference {reference:?} (expected a {expected})")]
    Unresolved {
        id: String,
        reference: String,
        expected: &'static str,
    },
    #[error("{id}: {message}")]
    Invalid { id: String, message: String },
    #[error("no {kind} document{}", .hint)]
    Missing { kind: &'static str, hint: String },
    #[error("several {kind} documents ({ids}); choose one with --{flag}")]
    Ambiguous {
        kind: &'static str,
        ids: String,
        flag: &'static str,
    },
}

fn invalid(id: &str, message: impl ToString) -> DocError {
    DocError::Invalid {
        id: id.to_string(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawDocument {
    OrthogonalCategory(RawSite),
    Algebra(RawAlgebra),
    Group(RawGroup),
    Action(RawAction),
    Aqft(RawAqft),
    EquivariantAqft(RawEquivariant),
    DescentObject(RawDescent),
}

impl RawDocument {
    fn id(&self) -> &str {
        match self {
            RawDocument::OrthogonalCategory(d) => &d.id,
            RawDocument::Algebra(d) => &d.id,
            RawDocument::Group(d) => &d.id,
            RawDocument::Action(d) => &d.id,
            RawDocument::Aqft(d) => &d.id,
            RawDocument::EquivariantAqft(d) => &d.id,
            RawDocument::DescentObject(d) => &d.id,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSite {
    id: String,
    #[serde(default)]
    circle: Option<RawCircle>,
    #[serde(default)]
    objects: Vec<String>,
    /// `[name, source, target]`.
    #[serde(default)]
    morphisms: Vec<(String, String, String)>,
    /// `[g, f, g∘f]` for non-identity `g`, `f`.
    #[serde(default)]
    composites: Vec<(String, String, String)>,
    /// `[a, b]` for `a ≤ b`; when given, the category is the generated preorder.
    #[serde(default)]
    leq: Option<Vec<(String, String)>>,
    /// Generating orthogonal pairs of morphism names.
    #[serde(default)]
    orthogonal: Vec<(String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCircle {
    n: usize,
    part: CirclePart,
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CirclePart {
    Disks,
    Opens,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    id: String,
    dim: usize,
    unit: Vec<Rational>,
    mult: Vec<StructureConstant>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    id: String,
    order: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    element: usize,
    matrix: Matrix,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    id: String,
    algebra: String,
    group: String,
    generators: Vec<RawGenerator>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAqft {
    id: String,
    site: String,
    /// Object name to algebra id.
    algebras: BTreeMap<String, String>,
    /// Morphism name to matrix; identities may be omitted.
    #[serde(default)]
    maps: BTreeMap<String, Matrix>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEquivariant {
    id: String,
    aqft: String,
    group: String,
    /// Object name to action id.
    actions: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawModule {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDescent {
    id: String,
    aqft: String,
    site: String,
    to: Vec<String>,
    cap: usize,
    degree_bound: usize,
    modules: Vec<RawModule>,
    xi: Vec<Matrix>,
}

/// A resolved descent object with the universal algebra it is indexed by.
#[derive(Debug, Clone)]
pub struct DescentDocument {
    pub universal: UniversalAlgebraResult,
    pub object: DescentObject,
}

#[derive(Debug, Clone, Default)]
pub struct Library {
    pub sites: BTreeMap<String, OrthogonalCategory>,
    pub algebras: BTreeMap<String, Arc<RationalAlgebra>>,
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub actions: BTreeMap<String, Arc<GroupAction>>,
    pub aqfts: BTreeMap<String, Aqft>,
    pub equivariant: BTreeMap<String, EquivariantAqft>,
    pub descent: BTreeMap<String, DescentDocument>,
    /// Site id of every theory.
    pub aqft_site: BTreeMap<String, String>,
}

pub fn parse_file(path: &Path) -> Result<Vec<Value>, DocError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| DocError::Parse {
        file: file.clone(),
        message: e.to_string(),
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| DocError::Parse {
        file: file.clone(),
        message: e.to_string(),
    })?;
    Ok(match value {
        Value::Array(items) => items,
        other => vec![other],
    })
}

pub fn load_files<P: AsRef<Path>>(paths: &[P]) -> Result<Library, DocError> {
    let mut values = Vec::new();
    for p in paths {
        values.extend(parse_file(p.as_ref())?);
    }
    load_values(values)
}

pub fn load_values(values: Vec<Value>) -> Result<Library, DocError> {
    if values.is_empty() {
        return Err(DocError::Empty);
    }
    let mut raws = Vec::new();
    for v in values {
        let raw: RawDocument = serde_json::from_value(v.clone()).map_err(|e| DocError::Parse {
            file: v.get("id").and_then(Value::as_str).unwrap_or("<document>").to_string(),
            message: e.to_string(),
        })?;
        if raws.iter().any(|r: &RawDocument| r.id() == raw.id()) {
            return Err(DocError::Duplicate(raw.id().to_string()));
        }
        raws.push(raw);
    }
    let mut lib = Library::default();
    // Resolve in dependency order.
    for raw in &raws {
        match raw {
            RawDocument::OrthogonalCategory(d) => {
                lib.sites.insert(d.id.clone(), build_site(d)?);
            }
            RawDocument::Algebra(d) => {
                if d.unit.len() != d.dim {
                    return Err(invalid(&d.id, "unit length differs from dim"));
                }
                let a = RationalAlgebra::new(d.dim, &d.mult, d.unit.clone()).map_err(|e| invalid(&d.id, e))?;
                lib.algebras.insert(d.id.clone(), Arc::new(a));
            }
            RawDocument::Group(d) => {
                if d.table.len() != d.order {
                    return Err(invalid(&d.id, "table size differs from order"));
                }
                let g = FiniteGroup::new(d.table.clone()).map_err(|e| invalid(&d.id, e))?;
                lib.groups.insert(d.id.clone(), Arc::new(g));
            }
            _ => {}
        }
    }
    for raw in &raws {
        match raw {
            RawDocument::Action(d) => {
                let algebra = lookup(&lib.algebras, &d.id, &d.algebra, "algebra")?;
                let group = lookup(&lib.groups, &d.id, &d.group, "group")?;
                let gens: Vec<(usize, Matrix)> = d.generators.iter().map(|g| (g.element, g.matrix.clone())).collect();
                if gens.iter().any(|(e, _)| *e >= group.order()) {
                    return Err(invalid(&d.id, "generator element out of range"));
                }
                let act = GroupAction::from_generators(group, algebra, &gens).map_err(|e| invalid(&d.id, e))?;
                lib.actions.insert(d.id.clone(), Arc::new(act));
            }
            RawDocument::Aqft(d) => {
                let site = lookup(&lib.sites, &d.id, &d.site, "orthogonal_category")?;
                let a = build_aqft(&lib, d, site)?;
                lib.aqfts.insert(d.id.clone(), a);
                lib.aqft_site.insert(d.id.clone(), d.site.clone());
            }
            _ => {}
        }
    }
    for raw in &raws {
        if let RawDocument::EquivariantAqft(d) = raw {
            let theory = lookup(&lib.aqfts, &d.id, &d.aqft, "aqft")?;
            let group = lookup(&lib.groups, &d.id, &d.group, "group")?;
            let base = theory.site.base();
            let mut actions = Vec::new();
            for c in base.objects() {
                let name = base.object_name(c);
                let aid = d
                    .actions
                    .get(name)
                    .ok_or_else(|| invalid(&d.id, format!("no action for object {name}")))?;
                actions.push(lookup(&lib.actions, &d.id, aid, "action")?);
            }
            if d.actions.len() != base.num_objects() {
                return Err(invalid(&d.id, "actions name unknown objects"));
            }
            let e = EquivariantAqft::new(theory, group, actions).map_err(|e| invalid(&d.id, e))?;
            lib.equivariant.insert(d.id.clone(), e);
        }
    }
    for raw in &raws {
        if let RawDocument::DescentObject(d) = raw {
            let doc = build_descent(&lib, d)?;
            lib.descent.insert(d.id.clone(), doc);
        }
    }
    Ok(lib)
}

fn lookup<T: Clone>(
    map: &BTreeMap<String, T>,
    id: &str,
    reference: &str,
    expected: &'static str,
) -> Result<T, DocError> {
    map.get(reference).cloned().ok_or_else(|| DocError::Unresolved {
        id: id.to_string(),
        reference: reference.to_string(),
        expected,
    })
}

fn build_site(d: &RawSite) -> Result<OrthogonalCategory, DocError> {
    if let Some(c) = &d.circle {
        let model = build_circle_model(c.n).map_err(|e| invalid(&d.id, e))?;
        return Ok(match c.part {
            CirclePart::Disks => model.disks,
            CirclePart::Opens => model.opens,
        });
    }
    let base = if let Some(leq) = &d.leq {
        let index = |name: &String| {
            d.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| invalid(&d.id, format!("unknown object {name}")))
        };
        let n = d.objects.len();
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in leq {
            rel[index(a)?][index(b)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && rel[i][j] && rel[j][i] {
                    return Err(invalid(&d.id, "leq is not antisymmetric"));
                }
            }
        }
        FinCategory::poset(d.objects.clone(), |a, b| rel[a][b])
    } else {
        FinCategory::with_implicit_identities(d.objects.clone(), d.morphisms.clone(), d.composites.clone())
            .map_err(|e| invalid(&d.id, e))?
    };
    let base = Arc::new(base);
    let mut pairs = Vec::new();
    for (f1, f2) in &d.orthogonal {
        let get = |n: &String| {
            base.morphism_by_name(n)
                .ok_or_else(|| invalid(&d.id, format!("unknown morphism {n}")))
        };
        pairs.push((get(f1)?, get(f2)?));
    }
    OrthogonalCategory::from_generators(base, pairs).map_err(|e| invalid(&d.id, e))
}

fn build_aqft(lib: &Library, d: &RawAqft, site: OrthogonalCategory) -> Result<Aqft, DocError> {
    let base = site.base();
    let mut algebras = Vec::new();
    for c in base.objects() {
        let name = base.object_name(c);
        let aid = d
            .algebras
            .get(name)
            .ok_or_else(|| invalid(&d.id, format!("no algebra for object {name}")))?;
        algebras.push(lookup(&lib.algebras, &d.id, aid, "algebra")?);
    }
    if d.algebras.len() != base.num_objects() {
        return Err(invalid(&d.id, "algebras name unknown objects"));
    }
    for name in d.maps.keys() {
        if base.morphism_by_name(name).is_none() {
            return Err(invalid(&d.id, format!("unknown morphism {name}")));
        }
    }
    let mut maps = Vec::new();
    for f in base.morphism_ids() {
        let (s, t) = (base.source(f), base.target(f));
        let matrix = match d.maps.get(base.morphism_name(f)) {
            Some(m) => m.clone(),
            None if base.is_identity(f) => Matrix::identity(algebras[s].dim()),
            None => return Err(invalid(&d.id, format!("no map for morphism {}", base.morphism_name(f)))),
        };
        let m = AlgebraMorphism::new(algebras[s].clone(), algebras[t].clone(), matrix)
            .map_err(|e| invalid(&d.id, format!("{}: {e}", base.morphism_name(f))))?;
        maps.push(m);
    }
    Aqft::new(site, algebras, maps).map_err(|e| invalid(&d.id, e))
}

/// The embedding of `source` into `target` by object name; a morphism
/// goes to the target morphism of the same name, or else to the unique
/// morphism between the images.
pub fn embedding_by_names(source: &OrthogonalCategory, target: &OrthogonalCategory) -> Result<FinFunctor, String> {
    let (s, t) = (source.base(), target.base());
    let objects: Vec<ObjId> = s
        .objects()
        .map(|o| {
            t.object_by_name(s.object_name(o))
                .ok_or_else(|| format!("object {} is missing from the target site", s.object_name(o)))
        })
        .collect::<Result<_, _>>()?;
    let morphisms = s
        .morphism_ids()
        .map(|m| {
            if let Some(tm) = t.morphism_by_name(s.morphism_name(m)) {
                return Ok(tm);
            }
            match t.hom(objects[s.source(m)], objects[s.target(m)]) {
                [only] => Ok(*only),
                _ => Err(format!("morphism {} has no unique image", s.morphism_name(m))),
            }
        })
        .collect::<Result<_, _>>()?;
    FinFunctor::new(source.base_arc().clone(), target.base_arc().clone(), objects, morphisms).map_err(|e| e.to_string())
}

/// Resolves `to` (object names of `target`) and builds the universal algebra.
pub fn extension(
    a: &Aqft,
    target: &OrthogonalCategory,
    to: &[String],
    cap: usize,
    degree_bound: usize,
) -> Result<UniversalAlgebraResult, String> {
    let j = embedding_by_names(&a.site, target)?;
    let d: Vec<ObjId> = to
        .iter()
        .map(|n| {
            target
                .base()
                .object_by_name(n)
                .ok_or_else(|| format!("unknown object {n}"))
        })
        .collect::<Result<_, _>>()?;
    universal_algebra(a, &j, target, &d, cap, degree_bound).map_err(|e| e.to_string())
}

fn build_descent(lib: &Library, d: &RawDescent) -> Result<DescentDocument, DocError> {
    let a = lookup(&lib.aqfts, &d.id, &d.aqft, "aqft")?;
    let target = lookup(&lib.sites, &d.id, &d.site, "orthogonal_category")?;
    let universal = extension(&a, &target, &d.to, d.cap, d.degree_bound).map_err(|e| invalid(&d.id, e))?;
    let n = universal.slice.objects.len();
    if d.modules.len() != n || d.xi.len() != universal.slice.morphisms.len() {
        return Err(invalid(
            &d.id,
            format!(
                "expected {n} modules and {} coherence maps, found {} and {}",
                universal.slice.morphisms.len(),
                d.modules.len(),
                d.xi.len()
            ),
        ));
    }
    let modules = d
        .modules
        .iter()
        .zip(&universal.tuple_algebras)
        .enumerate()
        .map(|(x, (m, alg))| {
            if m.action.len() != alg.dim() || m.action.iter().any(|r| r.shape() != (m.dim, m.dim)) {
                return Err(invalid(&d.id, format!("module {x} has the wrong shape")));
            }
            Ok(crate::algebra::RightModule {
                algebra: alg.clone(),
                dim: m.dim,
                action: m.action.clone(),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(DescentDocument {
        universal,
        object: DescentObject {
            modules,
            xi: d.xi.clone(),
        },
    })
}

impl Library {
    /// The only document of a kind, or the one named by `id`.
    pub fn pick<'a, T>(
        map: &'a BTreeMap<String, T>,
        id: Option<&str>,
        kind: &'static str,
        flag: &'static str,
    ) -> Result<(&'a str, &'a T), DocError> {
        if let Some(id) = id {
            return map
                .get_key_value(id)
                .map(|(k, v)| (k.as_str(), v))
                .ok_or(DocError::Missing {
                    kind,
                    hint: format!(" with id {id:?}"),
                });
        }
        let mut it = map.iter();
        match (it.next(), it.next()) {
            (Some((k, v)), None) => Ok((k.as_str(), v)),
            (None, _) => Err(DocError::Missing {
                kind,
                hint: String::new(),
            }),
            _ => Err(DocError::Ambiguous {
                kind,
                ids: map.keys().cloned().collect::<Vec<_>>().join(", "),
                flag,
            }),
        }
    }

    pub fn count(&self) -> usize {
        self.sites.len()
            + self.algebras.len()
            + self.groups.len()
            + self.actions.len()
            + self.aqfts.len()
            + self.equivariant.len()
            + self.descent.len()
    }
}

pub fn algebra_document(id: &str, a: &RationalAlgebra) -> Value {
    let mut mult = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.product_of_basis(i, j).into_iter().enumerate() {
                if !c.is_zero() {
                    mult.push(StructureConstant(i, j, k, c));
                }
            }
        }
    }
    json!({"kind": "algebra", "id": id, "dim": a.dim(), "unit": a.unit(), "mult": mult})
}

pub fn group_document(id: &str, g: &FiniteGroup) -> Value {
    json!({"kind": "group", "id": id, "order": g.order(), "table": g.table()})
}

pub fn action_document(id: &str, algebra: &str, group: &str, act: &GroupAction) -> Value {
    let generators: Vec<Value> = act
        .group
        .generators()
        .into_iter()
        .map(|g| json!({"element": g, "matrix": act.matrices[g]}))
        .collect();
    json!({"kind": "action", "id": id, "algebra": algebra, "group": group, "generators": generators})
}

pub fn circle_site_document(id: &str, n: usize, part: CirclePart) -> Value {
    json!({"kind": "orthogonal_category", "id": id, "circle": {"n": n, "part": part}})
}

/// `algebra_ids[c]` names the algebra of object `c`; identity maps are omitted.
pub fn aqft_document(id: &str, site: &str, a: &Aqft, algebra_ids: &[String]) -> Value {
    let base = a.site.base();
    let algebras: BTreeMap<&str, &str> = base
        .objects()
        .map(|c| (base.object_name(c), algebra_ids[c].as_str()))
        .collect();
    let maps: BTreeMap<&str, &Matrix> = base
        .morphism_ids()
        .filter(|&f| !base.is_identity(f))
        .map(|f| (base.morphism_name(f), &a.maps[f].matrix))
        .collect();
    json!({"kind": "aqft", "id": id, "site": site, "algebras": algebras, "maps": maps})
}

pub fn equivariant_document(
    id: &str,
    aqft: &str,
    group: &str,
    site: &OrthogonalCategory,
    action_ids: &[String],
) -> Value {
    let base = site.base();
    let actions: BTreeMap<&str, &str> = base
        .objects()
        .map(|c| (base.object_name(c), action_ids[c].as_str()))
        .collect();
    json!({"kind": "equivariant_aqft", "id": id, "aqft": aqft, "group": group, "actions": actions})
}

#[allow(clippy::too_many_arguments)]
pub fn descent_document(
    id: &str,
    aqft: &str,
    site: &str,
    to: &[&str],
    cap: usize,
    degree_bound: usize,
    x: &DescentObject,
) -> Value {
    let modules: Vec<RawModule> = x
        .modules
        .iter()
        .map(|m| RawModule {
            dim: m.dim,
            action: m.action.clone(),
        })
        .collect();
    json!({
        "kind": "descent_object", "id": id, "aqft": aqft, "site": site, "to": to,
        "cap": cap, "degree_bound": degree_bound, "modules": modules, "xi": x.xi,
    })
}

/// Builtin group names accepted where a group reference is expected:
/// `trivial`, `Z<n>` and `S<k>`.
pub fn builtin_group(name: &str) -> Option<FiniteGroup> {
    if name == "trivial" {
        return Some(FiniteGroup::trivial());
    }
    let head = name.get(..1)?;
    let tail = &name[1..];
    let k: usize = tail.parse().ok()?;
    match head {
        "Z" if (1..=64).contains(&k) => Some(FiniteGroup::cyclic(k)),
        "S" if (1..=5).contains(&k) => Some(FiniteGroup::symmetric(k)),
        _ => None,
    }
}
