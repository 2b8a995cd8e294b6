use std::collections::HashMap;
use std::sync::Arc;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
}

/// A finite category with an explicit composition table.
///
/// Objects and morphisms are addressed by dense integer ids fixed at
/// construction. `compose(g, f)` is `g ∘ f` and is defined exactly when
/// `target(f) == source(g)`.
#[derive(Debug, Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    composition: HashMap<(MorId, MorId), MorId>,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
    into: Vec<Vec<MorId>>,
    out_of: Vec<Vec<MorId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("morphism {morphism} refers to unknown object id {object}")]
    UnknownObject { morphism: String, object: ObjId },
    #[error("unknown morphism id {0} in the composition table")]
    UnknownMorphism(MorId),
    #[error("identity of {object} is {morphism}, which is not an endomorphism of it")]
    BadIdentity { object: String, morphism: String },
    #[error("composite {g} ∘ {f} is missing from the table")]
    MissingComposite { g: String, f: String },
    #[error("table entry {g} ∘ {f} is given but the morphisms are not composable")]
    NotComposable { g: String, f: String },
    #[error("table entry {g} ∘ {f} = {result} has the wrong source or target")]
    CompositeEndpoints { g: String, f: String, result: String },
    #[error("identity law fails for {morphism}")]
    NotUnital { morphism: String },
    #[error("({h} ∘ {g}) ∘ {f} differs from {h} ∘ ({g} ∘ {f})")]
    NotAssociative { h: String, g: String, f: String },
    #[error("duplicate name {0}")]
    DuplicateName(String),
}

impl FinCategory {
    /// Builds and fully validates a category.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        composition: impl IntoIterator<Item = ((MorId, MorId), MorId)>,
    ) -> Result<Self, CategoryError> {
        let cat = Self::new_unchecked(objects, morphisms, identities, composition)?;
        cat.validate()?;
        Ok(cat)
    }

    /// Builds the tables without checking the category axioms. Only index
    /// ranges are checked. Used to inject defects in tests.
    pub fn new_unchecked(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        composition: impl IntoIterator<Item = ((MorId, MorId), MorId)>,
    ) -> Result<Self, CategoryError> {
        let n = objects.len();
        for m in &morphisms {
            for o in [m.source, m.target] {
                if o >= n {
                    return Err(CategoryError::UnknownObject {
                        morphism: m.name.clone(),
                        object: o,
                    });
                }
            }
        }
        if identities.len() != n {
            return Err(CategoryError::BadIdentity {
                object: objects.get(identities.len()).cloned().unwrap_or_else(|| "?".into()),
                morphism: "<missing>".into(),
            });
        }
        let composition: HashMap<_, _> = composition.into_iter().collect();
        for (&(g, f), &r) in &composition {
            for m in [g, f, r] {
                if m >= morphisms.len() {
                    return Err(CategoryError::UnknownMorphism(m));
                }
            }
        }
        for &i in &identities {
            if i >= morphisms.len() {
                return Err(CategoryError::UnknownMorphism(i));
            }
        }
        let mut hom: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        let mut into = vec![Vec::new(); n];
        let mut out_of = vec![Vec::new(); n];
        for (id, m) in morphisms.iter().enumerate() {
            hom.entry((m.source, m.target)).or_default().push(id);
            into[m.target].push(id);
            out_of[m.source].push(id);
        }
        Ok(FinCategory {
            objects,
            morphisms,
            identities,
            composition,
            hom,
            into,
            out_of,
        })
    }

    /// Convenience constructor: identities are generated (named `id:<obj>`)
    /// and composites involving an identity are filled in, so `composites`
    /// only lists composites of non-identity morphisms, by name.
    pub fn with_implicit_identities(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        composites: Vec<(String, String, String)>,
    ) -> Result<Self, CategoryError> {
        let mut seen = std::collections::HashSet::new();
        for o in &objects {
            if !seen.insert(o.clone()) {
                return Err(CategoryError::DuplicateName(o.clone()));
            }
        }
        let obj_index: HashMap<&str, ObjId> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mut all: Vec<Morphism> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism {
                name: format!("id:{o}"),
                source: i,
                target: i,
            })
            .collect();
        let identities: Vec<MorId> = (0..objects.len()).collect();
        for (name, s, t) in &morphisms {
            let lookup = |o: &String| {
                obj_index.get(o.as_str()).copied().ok_or(CategoryError::UnknownObject {
                    morphism: name.clone(),
                    object: usize::MAX,
                })
            };
            all.push(Morphism {
                name: name.clone(),
                source: lookup(s)?,
                target: lookup(t)?,
            });
        }
        let mut mor_index = HashMap::new();
        for (i, m) in all.iter().enumerate() {
            if mor_index.insert(m.name.clone(), i).is_some() {
                return Err(CategoryError::DuplicateName(m.name.clone()));
            }
        }
        let mut table = Vec::new();
        for (f, m) in all.iter().enumerate() {
            table.push(((identities[m.target], f), f));
            table.push(((f, identities[m.source]), f));
        }
        for (g, f, r) in &composites {
            let get = |n: &String| {
                mor_index
                    .get(n)
                    .copied()
                    .ok_or_else(|| CategoryError::MissingComposite {
                        g: g.clone(),
                        f: f.clone(),
                    })
            };
            table.push(((get(g)?, get(f)?), get(r)?));
        }
        FinCategory::new(objects, all, identities, table)
    }

    /// The category of a finite preorder given by `leq(a, b)`; one morphism
    /// `a -> b` whenever `leq(a, b)`. `leq` must be reflexive and transitive.
    pub fn poset(objects: Vec<String>, leq: impl Fn(ObjId, ObjId) -> bool) -> Self {
        let n = objects.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut identities = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    let name = if a == b {
                        identities[a] = morphisms.len();
                        format!("id:{}", objects[a])
                    } else {
                        format!("{}->{}", objects[a], objects[b])
                    };
                    index.insert((a, b), morphisms.len());
                    morphisms.push(Morphism {
                        name,
                        source: a,
                        target: b,
                    });
                }
            }
        }
        let mut table = Vec::new();
        for (f, mf) in morphisms.iter().enumerate() {
            for (g, mg) in morphisms.iter().enumerate() {
                if mf.target == mg.source {
                    let r = index[&(mf.source, mg.target)];
                    table.push(((g, f), r));
                }
            }
        }
        FinCategory::new_unchecked(objects, morphisms, identities, table).expect("poset tables are in range")
    }

    /// Category with only identity morphisms.
    pub fn discrete(objects: Vec<String>) -> Self {
        FinCategory::poset(objects, |a, b| a == b)
    }

    /// Exhaustive check of the category axioms.
    pub fn validate(&self) -> Result<(), CategoryError> {
        let name = |m: MorId| self.morphisms[m].name.clone();
        for (o, &i) in self.identities.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.source != o || m.target != o {
                return Err(CategoryError::BadIdentity {
                    object: self.objects[o].clone(),
                    morphism: m.name.clone(),
                });
            }
        }
        for (&(g, f), &r) in &self.composition {
            let (mg, mf, mr) = (&self.morphisms[g], &self.morphisms[f], &self.morphisms[r]);
            if mf.target != mg.source {
                return Err(CategoryError::NotComposable { g: name(g), f: name(f) });
            }
            if mr.source != mf.source || mr.target != mg.target {
                return Err(CategoryError::CompositeEndpoints {
                    g: name(g),
                    f: name(f),
                    result: name(r),
                });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.out_of[self.morphisms[f].target] {
                if !self.composition.contains_key(&(g, f)) {
                    return Err(CategoryError::MissingComposite { g: name(g), f: name(f) });
                }
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.composition[&(self.identities[m.target], f)] != f
                || self.composition[&(f, self.identities[m.source])] != f
            {
                return Err(CategoryError::NotUnital { morphism: name(f) });
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.out_of[self.morphisms[f].target] {
                let gf = self.composition[&(g, f)];
                for &h in &self.out_of[self.morphisms[g].target] {
                    let hg = self.composition[&(h, g)];
                    if self.composition[&(h, gf)] != self.composition[&(hg, f)] {
                        return Err(CategoryError::NotAssociative {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn morphism_ids(&self) -> std::ops::Range<MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m].name
    }

    pub fn source(&self, m: MorId) -> ObjId {
        self.morphisms[m].source
    }

    pub fn target(&self, m: MorId) -> ObjId {
        self.morphisms[m].target
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        let mm = &self.morphisms[m];
        mm.source == mm.target && self.identities[mm.source] == m
    }

    /// `g ∘ f`, or `None` when not composable or missing from the table.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.composition.get(&(g, f)).copied()
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.hom.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn morphisms_into(&self, t: ObjId) -> &[MorId] {
        &self.into[t]
    }

    pub fn morphisms_from(&self, s: ObjId) -> &[MorId] {
        &self.out_of[s]
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn composition_table(&self) -> impl Iterator<Item = ((MorId, MorId), MorId)> + '_ {
        self.composition.iter().map(|(&k, &v)| (k, v))
    }
}

/// A functor between finite categories, given on ids.
#[derive(Debug, Clone)]
pub struct FinFunctor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("object or morphism map has the wrong length")]
    WrongLength,
    #[error("image of {0} has the wrong source or target")]
    Endpoints(String),
    #[error("image of the identity of {0} is not an identity")]
    Identity(String),
    #[error("F({g} ∘ {f}) differs from F({g}) ∘ F({f})")]
    Composition { g: String, f: String },
}

impl FinFunctor {
    pub fn identity(cat: Arc<FinCategory>) -> Self {
        FinFunctor {
            object_map: cat.objects().collect(),
            morphism_map: cat.morphism_ids().collect(),
            source: cat.clone(),
            target: cat,
        }
    }

    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Result<Self, FunctorError> {
        let f = FinFunctor {
            source,
            target,
            object_map,
            morphism_map,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), FunctorError> {
        let (s, t) = (&*self.source, &*self.target);
        if self.object_map.len() != s.num_objects() || self.morphism_map.len() != s.num_morphisms() {
            return Err(FunctorError::WrongLength);
        }
        if self.object_map.iter().any(|&o| o >= t.num_objects())
            || self.morphism_map.iter().any(|&m| m >= t.num_morphisms())
        {
            return Err(FunctorError::WrongLength);
        }
        for m in s.morphism_ids() {
            let fm = self.morphism_map[m];
            if t.source(fm) != self.object_map[s.source(m)] || t.target(fm) != self.object_map[s.target(m)] {
                return Err(FunctorError::Endpoints(s.morphism_name(m).into()));
            }
        }
        for o in s.objects() {
            if self.morphism_map[s.identity(o)] != t.identity(self.object_map[o]) {
                return Err(FunctorError::Identity(s.object_name(o).into()));
            }
        }
        for ((g, f), gf) in s.composition_table() {
            if t.compose(self.morphism_map[g], self.morphism_map[f]) != Some(self.morphism_map[gf]) {
                return Err(FunctorError::Composition {
                    g: s.morphism_name(g).into(),
                    f: s.morphism_name(f).into(),
                });
            }
        }
        Ok(())
    }

    pub fn map_object(&self, o: ObjId) -> ObjId {
        self.object_map[o]
    }

    pub fn map_morphism(&self, m: MorId) -> MorId {
        self.morphism_map[m]
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.object_map.iter().all(|o| seen.insert(*o))
    }

    /// Fully faithful: bijective on every hom-set.
    pub fn is_fully_faithful(&self) -> bool {
        let (s, t) = (&*self.source, &*self.target);
        s.objects().all(|a| {
            s.objects().all(|b| {
                let mut image: Vec<MorId> = s.hom(a, b).iter().map(|&m| self.morphism_map[m]).collect();
                image.sort_unstable();
                image.dedup();
                let mut expected = t.hom(self.object_map[a], self.object_map[b]).to_vec();
                expected.sort_unstable();
                image.len() == s.hom(a, b).len() && image == expected
            })
        })
    }
}

/// The slice category `F/d`: objects `(c, h: F(c) -> d)`, morphisms
/// `u: c -> c'` with `h' ∘ F(u) = h`.
#[derive(Debug, Clone)]
pub struct Slice {
    pub category: Arc<FinCategory>,
    /// `(c, h)` for each slice object, in id order.
    pub objects: Vec<(ObjId, MorId)>,
    /// The underlying source morphism of each slice morphism.
    pub underlying: Vec<MorId>,
    pub projection: FinFunctor,
}

pub fn slice_category(f: &FinFunctor, d: ObjId) -> Slice {
    let (s, t) = (&*f.source, &*f.target);
    let mut objects = Vec::new();
    for c in s.objects() {
        for &h in t.hom(f.map_object(c), d) {
            objects.push((c, h));
        }
    }
    let names: Vec<String> = objects
        .iter()
        .map(|&(c, h)| format!("({}, {})", s.object_name(c), t.morphism_name(h)))
        .collect();
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut index = HashMap::new();
    let mut identities = vec![0; objects.len()];
    for (x, &(c, h)) in objects.iter().enumerate() {
        for (y, &(c2, h2)) in objects.iter().enumerate() {
            for &u in s.hom(c, c2) {
                if t.compose(h2, f.map_morphism(u)) == Some(h) {
                    if u == s.identity(c) && x == y {
                        identities[x] = morphisms.len();
                    }
                    index.insert((x, y, u), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("{}:{}=>{}", s.morphism_name(u), names[x], names[y]),
                        source: x,
                        target: y,
                    });
                    underlying.push(u);
                }
            }
        }
    }
    let mut table = Vec::new();
    for (a, ma) in morphisms.iter().enumerate() {
        for (b, mb) in morphisms.iter().enumerate() {
            if ma.target == mb.source {
                let u = s
                    .compose(underlying[b], underlying[a])
                    .expect("source category is closed under composition");
                table.push(((b, a), index[&(ma.source, mb.target, u)]));
            }
        }
    }
    let category =
        Arc::new(FinCategory::new_unchecked(names, morphisms, identities, table).expect("slice tables are in range"));
    let projection = FinFunctor {
        source: category.clone(),
        target: f.source.clone(),
        object_map: objects.iter().map(|&(c, _)| c).collect(),
        morphism_map: underlying.clone(),
    };
    Slice {
        category,
        objects,
        underlying,
        projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinCategory {
        FinCategory::poset(vec!["a".into(), "b".into(), "c".into()], |x, y| x <= y)
    }

    #[test]
    fn poset_is_a_category() {
        let c = chain3();
        c.validate().unwrap();
        assert_eq!(c.num_morphisms(), 6);
        assert_eq!(c.hom(0, 2).len(), 1);
        assert!(c.hom(2, 0).is_empty());
    }

    #[test]
    fn detects_non_associative_table() {
        // One object, morphisms 1, a, b with a∘a = b, b∘a = 1, a∘b = a.
        let morphisms = ["1", "a", "b"]
            .iter()
            .map(|n| Morphism {
                name: n.to_string(),
                source: 0,
                target: 0,
            })
            .collect();
        let mut table = vec![];
        for m in 0..3 {
            table.push(((0, m), m));
            table.push(((m, 0), m));
        }
        table.extend([((1, 1), 2), ((2, 1), 0), ((1, 2), 1), ((2, 2), 2)]);
        let err = FinCategory::new(vec!["x".into()], morphisms, vec![0], table).unwrap_err();
        assert!(matches!(err, CategoryError::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn implicit_identities() {
        let c = FinCategory::with_implicit_identities(
            vec!["x".into(), "y".into()],
            vec![("f".into(), "x".into(), "y".into())],
            vec![],
        )
        .unwrap();
        assert_eq!(c.num_morphisms(), 3);
        let f = c.morphism_by_name("f").unwrap();
        assert_eq!(c.compose(c.identity(1), f), Some(f));
    }

    #[test]
    fn slice_of_identity_has_terminal_object() {
        let c = Arc::new(chain3());
        let s = slice_category(&FinFunctor::identity(c.clone()), 1);
        // (a, a->b), (b, id)
        assert_eq!(s.objects.len(), 2);
        s.category.validate().unwrap();
        s.projection.validate().unwrap();
        let term = s
            .objects
            .iter()
            .position(|&(o, h)| o == 1 && h == c.identity(1))
            .unwrap();
        for x in s.category.objects() {
            assert_eq!(s.category.hom(x, term).len(), 1);
        }
    }

    #[test]
    fn slice_of_discrete_functor() {
        let c = Arc::new(FinCategory::discrete(vec!["p".into(), "q".into()]));
        let s = slice_category(&FinFunctor::identity(c.clone()), 0);
        assert_eq!(s.objects, vec![(0, c.identity(0))]);
    }
}
