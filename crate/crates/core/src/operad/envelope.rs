//! The monoidal envelope of the prefactorization operad: tuples of objects,
//! with morphisms `(α, f̱)` given by a map of index sets and one morphism per
//! source slot, pairwise orthogonal within each fiber of `α`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::operation::{OperadError, PFOperation};
use crate::fincat::{FinCategory, FinFunctor, MorId, Morphism, ObjId, OrthogonalCategory};

pub type Tuple = Vec<ObjId>;

/// A morphism `source -> target` of the envelope. Slot `i` of the source
/// goes to slot `alpha[i]` of the target along `components[i]`.
///
/// This stores the same data as a family of operations, one per target
/// slot: block `j` is the operation formed by the components whose index
/// lies in the fiber over `j`, in increasing index order (see
/// [`EnvelopeMorphism::blocks`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EnvelopeMorphism {
    pub source: Tuple,
    pub target: Tuple,
    pub alpha: Vec<usize>,
    pub components: Vec<MorId>,
}

impl EnvelopeMorphism {
    pub fn identity(c: &FinCategory, t: &[ObjId]) -> Self {
        EnvelopeMorphism {
            source: t.to_vec(),
            target: t.to_vec(),
            alpha: (0..t.len()).collect(),
            components: t.iter().map(|&o| c.identity(o)).collect(),
        }
    }

    pub fn is_identity(&self, c: &FinCategory) -> bool {
        *self == Self::identity(c, &self.source)
    }

    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (0..self.alpha.len()).filter(|&i| self.alpha[i] == j).collect()
    }

    pub fn blocks(&self) -> Vec<PFOperation> {
        (0..self.target.len())
            .map(|j| {
                let fib = self.fiber(j);
                PFOperation {
                    target: self.target[j],
                    sources: fib.iter().map(|&i| self.source[i]).collect(),
                    morphisms: fib.iter().map(|&i| self.components[i]).collect(),
                }
            })
            .collect()
    }

    pub fn validate(&self, c: &OrthogonalCategory) -> Result<(), OperadError> {
        let base = c.base();
        if self.alpha.len() != self.source.len() || self.components.len() != self.source.len() {
            return Err(OperadError::NotComposable);
        }
        for (i, (&a, &f)) in self.alpha.iter().zip(&self.components).enumerate() {
            if a >= self.target.len() || base.source(f) != self.source[i] || base.target(f) != self.target[a] {
                return Err(OperadError::BadMorphism {
                    index: i,
                    morphism: f,
                    from: self.source[i],
                    to: self.target.get(a).copied().unwrap_or(usize::MAX),
                });
            }
        }
        for b in self.blocks() {
            super::operation::check_pairwise(c, &b.morphisms)?;
        }
        Ok(())
    }

    /// Monoidal product: concatenation of sources and targets.
    pub fn tensor(&self, other: &EnvelopeMorphism) -> EnvelopeMorphism {
        let shift = self.target.len();
        EnvelopeMorphism {
            source: [self.source.clone(), other.source.clone()].concat(),
            target: [self.target.clone(), other.target.clone()].concat(),
            alpha: self
                .alpha
                .iter()
                .copied()
                .chain(other.alpha.iter().map(|a| a + shift))
                .collect(),
            components: [self.components.clone(), other.components.clone()].concat(),
        }
    }
}

/// The symmetry `x ⊗ y -> y ⊗ x`.
pub fn braiding(c: &FinCategory, x: &[ObjId], y: &[ObjId]) -> EnvelopeMorphism {
    let source = [x, y].concat();
    let alpha = (0..x.len()).map(|i| y.len() + i).chain(0..y.len()).collect();
    EnvelopeMorphism {
        components: source.iter().map(|&o| c.identity(o)).collect(),
        target: [y, x].concat(),
        source,
        alpha,
    }
}

/// `g ∘ f`: indices compose as `β ∘ α`, components as `g_{α(i)} ∘ f_i`.
pub fn compose_envelope(
    c: &OrthogonalCategory,
    g: &EnvelopeMorphism,
    f: &EnvelopeMorphism,
) -> Result<EnvelopeMorphism, OperadError> {
    if f.target != g.source {
        return Err(OperadError::NotComposable);
    }
    let base = c.base();
    let mut components = Vec::with_capacity(f.source.len());
    for (i, &fi) in f.components.iter().enumerate() {
        let gj = g.components[f.alpha[i]];
        components.push(
            base.compose(gj, fi)
                .ok_or(OperadError::MissingComposite { g: gj, f: fi })?,
        );
    }
    let h = EnvelopeMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        alpha: f.alpha.iter().map(|&a| g.alpha[a]).collect(),
        components,
    };
    for b in h.blocks() {
        super::operation::check_pairwise(c, &b.morphisms)?;
    }
    Ok(h)
}

/// All envelope morphisms `s -> t`, in lexicographic order of
/// `(alpha, components)`.
pub fn envelope_hom(c: &OrthogonalCategory, s: &[ObjId], t: &[ObjId]) -> Vec<EnvelopeMorphism> {
    let base = c.base();
    let homs: Vec<Vec<Vec<MorId>>> = s
        .iter()
        .map(|&si| {
            t.iter()
                .map(|&tj| {
                    let mut h = base.hom(si, tj).to_vec();
                    h.sort_unstable();
                    h
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut alpha = Vec::new();
    let mut comps = Vec::new();
    fn go(
        c: &OrthogonalCategory,
        homs: &[Vec<Vec<MorId>>],
        s: &[ObjId],
        t: &[ObjId],
        alpha: &mut Vec<usize>,
        comps: &mut Vec<MorId>,
        out: &mut Vec<EnvelopeMorphism>,
    ) {
        let i = alpha.len();
        if i == s.len() {
            out.push(EnvelopeMorphism {
                source: s.to_vec(),
                target: t.to_vec(),
                alpha: alpha.clone(),
                components: comps.clone(),
            });
            return;
        }
        for j in 0..t.len() {
            for &f in &homs[i][j] {
                let ok =
                    (0..i).all(|k| alpha[k] != j || (c.is_orthogonal(comps[k], f) && c.is_orthogonal(f, comps[k])));
                if ok {
                    alpha.push(j);
                    comps.push(f);
                    go(c, homs, s, t, alpha, comps, out);
                    alpha.pop();
                    comps.pop();
                }
            }
        }
    }
    go(c, &homs, s, t, &mut alpha, &mut comps, &mut out);
    out
}

/// All tuples of objects of length at most `cap`, by length and then
/// lexicographically.
pub fn tuples_up_to(num_objects: usize, cap: usize) -> Vec<Tuple> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Tuple> = vec![vec![]];
    for _ in 0..cap {
        let mut next = Vec::new();
        for t in &layer {
            for o in 0..num_objects {
                let mut u = t.clone();
                u.push(o);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn tuple_name(c: &FinCategory, t: &[ObjId]) -> String {
    let names: Vec<&str> = t.iter().map(|&o| c.object_name(o)).collect();
    format!("({})", names.join(","))
}

/// The envelope restricted to tuples of length at most `cap`, materialized
/// as a finite category.
#[derive(Debug, Clone)]
pub struct MonoidalEnvelope {
    pub cap: usize,
    pub objects: Vec<Tuple>,
    pub morphisms: Vec<EnvelopeMorphism>,
    pub category: Arc<FinCategory>,
    object_index: HashMap<Tuple, ObjId>,
    morphism_index: HashMap<EnvelopeMorphism, MorId>,
}

impl MonoidalEnvelope {
    pub fn object_id(&self, t: &[ObjId]) -> Option<ObjId> {
        self.object_index.get(t).copied()
    }

    pub fn morphism_id(&self, m: &EnvelopeMorphism) -> Option<MorId> {
        self.morphism_index.get(m).copied()
    }
}

pub fn monoidal_envelope(c: &OrthogonalCategory, cap: usize) -> MonoidalEnvelope {
    let base = c.base();
    let objects = tuples_up_to(base.num_objects(), cap);
    let object_index: HashMap<Tuple, ObjId> = objects.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut morphisms = Vec::new();
    let mut records = Vec::new();
    for (si, s) in objects.iter().enumerate() {
        for (ti, t) in objects.iter().enumerate() {
            for m in envelope_hom(c, s, t) {
                records.push(Morphism {
                    name: format!("{:?}{:?}", m.alpha, m.components),
                    source: si,
                    target: ti,
                });
                morphisms.push(m);
            }
        }
    }
    let morphism_index: HashMap<EnvelopeMorphism, MorId> =
        morphisms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let identities = objects
        .iter()
        .map(|t| morphism_index[&EnvelopeMorphism::identity(base, t)])
        .collect();
    let mut by_source: HashMap<ObjId, Vec<MorId>> = HashMap::new();
    for (i, r) in records.iter().enumerate() {
        by_source.entry(r.source).or_default().push(i);
    }
    let mut table = Vec::new();
    for (fi, f) in morphisms.iter().enumerate() {
        for &gi in by_source.get(&records[fi].target).into_iter().flatten() {
            let gf = compose_envelope(c, &morphisms[gi], f).expect("envelope composition stays in the envelope");
            table.push(((gi, fi), morphism_index[&gf]));
        }
    }
    let names = objects.iter().map(|t| tuple_name(base, t)).collect();
    let category =
        Arc::new(FinCategory::new_unchecked(names, records, identities, table).expect("envelope tables are in range"));
    MonoidalEnvelope {
        cap,
        objects,
        morphisms,
        category,
        object_index,
        morphism_index,
    }
}

/// The extension `J⊗` of an orthogonality-preserving functor to envelopes.
#[derive(Debug, Clone)]
pub struct EnvelopeFunctor {
    pub j: FinFunctor,
    pub source: OrthogonalCategory,
    pub target: OrthogonalCategory,
}

pub fn envelope_functor(
    j: &FinFunctor,
    source: &OrthogonalCategory,
    target: &OrthogonalCategory,
) -> Result<EnvelopeFunctor, OperadError> {
    for (f1, f2) in source.pairs() {
        if !target.is_orthogonal(j.map_morphism(f1), j.map_morphism(f2)) {
            return Err(OperadError::NotPreserved(f1, f2));
        }
    }
    Ok(EnvelopeFunctor {
        j: j.clone(),
        source: source.clone(),
        target: target.clone(),
    })
}

impl EnvelopeFunctor {
    pub fn map_object(&self, t: &[ObjId]) -> Tuple {
        t.iter().map(|&o| self.j.map_object(o)).collect()
    }

    pub fn map_morphism(&self, m: &EnvelopeMorphism) -> EnvelopeMorphism {
        EnvelopeMorphism {
            source: self.map_object(&m.source),
            target: self.map_object(&m.target),
            alpha: m.alpha.clone(),
            components: m.components.iter().map(|&f| self.j.map_morphism(f)).collect(),
        }
    }

    /// `J⊗` as a functor between materialized envelopes of equal cap.
    pub fn materialize(&self, src: &MonoidalEnvelope, tgt: &MonoidalEnvelope) -> FinFunctor {
        FinFunctor {
            source: src.category.clone(),
            target: tgt.category.clone(),
            object_map: src
                .objects
                .iter()
                .map(|t| tgt.object_id(&self.map_object(t)).expect("target cap too small"))
                .collect(),
            morphism_map: src
                .morphisms
                .iter()
                .map(|m| tgt.morphism_id(&self.map_morphism(m)).expect("target cap too small"))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceObject {
    pub tuple: Tuple,
    /// A morphism `J⊗(tuple) -> d` of the target envelope.
    pub h: EnvelopeMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceMorphism {
    pub source: usize,
    pub target: usize,
    /// A morphism of the source envelope with `h_target ∘ J⊗(u) = h_source`.
    pub u: EnvelopeMorphism,
}

/// The slice `J⊗/d`, with source tuples bounded by `cap`.
#[derive(Debug, Clone)]
pub struct EnvelopeSlice {
    pub d: Tuple,
    pub cap: usize,
    pub objects: Vec<SliceObject>,
    pub morphisms: Vec<SliceMorphism>,
    pub category: Arc<FinCategory>,
}

impl EnvelopeSlice {
    pub fn object_name(&self, x: usize) -> &str {
        self.category.object_name(x)
    }

    /// Ids of slice objects whose tuple has length one.
    pub fn singletons(&self) -> Vec<usize> {
        (0..self.objects.len())
            .filter(|&x| self.objects[x].tuple.len() == 1)
            .collect()
    }
}

pub fn envelope_slice(ef: &EnvelopeFunctor, d: &[ObjId], cap: usize) -> EnvelopeSlice {
    let src = ef.source.base();
    let tgt = &ef.target;
    let mut objects = Vec::new();
    let mut tuple = Vec::new();
    let mut alpha = Vec::new();
    let mut comps = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        ef: &EnvelopeFunctor,
        tgt: &OrthogonalCategory,
        d: &[ObjId],
        cap: usize,
        tuple: &mut Vec<ObjId>,
        alpha: &mut Vec<usize>,
        comps: &mut Vec<MorId>,
        out: &mut Vec<SliceObject>,
    ) {
        out.push(SliceObject {
            tuple: tuple.clone(),
            h: EnvelopeMorphism {
                source: ef.map_object(tuple),
                target: d.to_vec(),
                alpha: alpha.clone(),
                components: comps.clone(),
            },
        });
        if tuple.len() == cap {
            return;
        }
        let i = tuple.len();
        for c in ef.source.base().objects() {
            let jc = ef.j.map_object(c);
            for (j, &dj) in d.iter().enumerate() {
                let mut hs = tgt.base().hom(jc, dj).to_vec();
                hs.sort_unstable();
                for f in hs {
                    let ok = (0..i)
                        .all(|k| alpha[k] != j || (tgt.is_orthogonal(comps[k], f) && tgt.is_orthogonal(f, comps[k])));
                    if ok {
                        tuple.push(c);
                        alpha.push(j);
                        comps.push(f);
                        go(ef, tgt, d, cap, tuple, alpha, comps, out);
                        tuple.pop();
                        alpha.pop();
                        comps.pop();
                    }
                }
            }
        }
    }
    go(ef, tgt, d, cap, &mut tuple, &mut alpha, &mut comps, &mut objects);
    objects.sort_by(|a, b| {
        (a.tuple.len(), &a.tuple, &a.h.alpha, &a.h.components).cmp(&(
            b.tuple.len(),
            &b.tuple,
            &b.h.alpha,
            &b.h.components,
        ))
    });

    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    let mut identities = vec![0; objects.len()];
    for (x, ox) in objects.iter().enumerate() {
        for (y, oy) in objects.iter().enumerate() {
            for u in envelope_hom(&ef.source, &ox.tuple, &oy.tuple) {
                let ju = ef.map_morphism(&u);
                if compose_envelope(tgt, &oy.h, &ju).as_ref() == Ok(&ox.h) {
                    if x == y && u.is_identity(src) {
                        identities[x] = morphisms.len();
                    }
                    index.insert((x, y, u.clone()), morphisms.len());
                    morphisms.push(SliceMorphism {
                        source: x,
                        target: y,
                        u,
                    });
                }
            }
        }
    }
    let mut by_source: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, m) in morphisms.iter().enumerate() {
        by_source.entry(m.source).or_default().push(i);
    }
    let mut table = Vec::new();
    for (a, ma) in morphisms.iter().enumerate() {
        for &b in by_source.get(&ma.target).into_iter().flatten() {
            let mb = &morphisms[b];
            let u = compose_envelope(&ef.source, &mb.u, &ma.u).expect("slice composition stays in the envelope");
            table.push(((b, a), index[&(ma.source, mb.target, u)]));
        }
    }

    let mut names: Vec<String> = objects.iter().map(|o| tuple_name(src, &o.tuple)).collect();
    let mut counts: HashMap<String, usize> = HashMap::new();
    for n in &names {
        *counts.entry(n.clone()).or_default() += 1;
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    for n in names.iter_mut() {
        if counts[n] > 1 {
            let k = seen.entry(n.clone()).or_default();
            *k += 1;
            *n = format!("{n}#{k}");
        }
    }
    let records = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| Morphism {
            name: format!("u{i}:{}=>{}", names[m.source], names[m.target]),
            source: m.source,
            target: m.target,
        })
        .collect();
    let category =
        Arc::new(FinCategory::new_unchecked(names, records, identities, table).expect("slice tables are in range"));
    EnvelopeSlice {
        d: d.to_vec(),
        cap,
        objects,
        morphisms,
        category,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build_circle_model;

    #[test]
    fn no_binary_operation_without_orthogonality() {
        let base = Arc::new(FinCategory::discrete(vec!["c".into()]));
        let c = OrthogonalCategory::empty(base);
        assert!(envelope_hom(&c, &[0, 0], &[0]).is_empty());
        assert_eq!(envelope_hom(&c, &[0, 0], &[0, 0]).len(), 2);
    }

    #[test]
    fn identities_and_braiding() {
        let m = build_circle_model(2).unwrap();
        let env = monoidal_envelope(&m.opens, 2);
        env.category.validate().unwrap();
        for t in &env.objects {
            assert!(env
                .morphism_id(&EnvelopeMorphism::identity(m.opens.base(), t))
                .is_some());
        }
        let (x, y) = (vec![0], vec![1, 2]);
        let b = braiding(m.opens.base(), &x, &y);
        let b_inv = braiding(m.opens.base(), &y, &x);
        let round = compose_envelope(&m.opens, &b_inv, &b).unwrap();
        assert!(round.is_identity(m.opens.base()));
    }

    #[test]
    fn n2_slice_over_circle_has_five_objects() {
        let m = build_circle_model(2).unwrap();
        let ef = envelope_functor(&m.j, &m.disks, &m.opens).unwrap();
        let s = envelope_slice(&ef, &[m.circle()], 4);
        let names: Vec<&str> = (0..s.objects.len()).map(|x| s.object_name(x)).collect();
        assert_eq!(names, ["()", "({0})", "({1})", "({0},{1})", "({1},{0})"]);
        s.category.validate().unwrap();
    }

    #[test]
    fn envelope_functor_is_injective_on_objects() {
        let m = build_circle_model(2).unwrap();
        let ef = envelope_functor(&m.j, &m.disks, &m.opens).unwrap();
        let src = monoidal_envelope(&m.disks, 2);
        let tgt = monoidal_envelope(&m.opens, 2);
        let jf = ef.materialize(&src, &tgt);
        jf.validate().unwrap();
        assert!(jf.is_injective_on_objects());
    }

    #[test]
    fn identity_envelope_functor() {
        let m = build_circle_model(2).unwrap();
        let id = FinFunctor::identity(m.disks.base_arc().clone());
        let ef = envelope_functor(&id, &m.disks, &m.disks).unwrap();
        let env = monoidal_envelope(&m.disks, 2);
        let jf = ef.materialize(&env, &env);
        assert_eq!(jf.object_map, (0..env.objects.len()).collect::<Vec<_>>());
        assert_eq!(jf.morphism_map, (0..env.morphisms.len()).collect::<Vec<_>>());
    }
}
