//! A combinatorial model of disks in the circle: proper cyclic arcs of
//! `Z_n` ordered by inclusion, with disjointness as orthogonality.

use std::sync::Arc;

use super::category::{FinCategory, FinFunctor, ObjId};
use super::orthogonal::OrthogonalCategory;

/// `Arc(start, len) = {start, ..., start + len - 1} mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicArc {
    pub start: usize,
    pub len: usize,
}

impl CyclicArc {
    pub fn points(&self, n: usize) -> Vec<usize> {
        (0..self.len).map(|i| (self.start + i) % n).collect()
    }

    pub fn mask(&self, n: usize) -> u64 {
        self.points(n).iter().fold(0, |m, p| m | (1 << p))
    }

    pub fn name(&self, n: usize) -> String {
        let pts: Vec<String> = self.points(n).iter().map(usize::to_string).collect();
        format!("{{{}}}", pts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct CircleModel {
    pub n: usize,
    /// Arcs in object order of `disks` (by length, then start).
    pub arcs: Vec<CyclicArc>,
    pub disks: OrthogonalCategory,
    /// `disks` plus a last object `S1` for the whole circle.
    pub opens: OrthogonalCategory,
    pub j: FinFunctor,
}

impl CircleModel {
    /// Object id of the whole circle in `opens`.
    pub fn circle(&self) -> ObjId {
        self.arcs.len()
    }

    pub fn arc_id(&self, arc: CyclicArc) -> Option<ObjId> {
        self.arcs.iter().position(|a| *a == arc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("the circle model needs n >= 2 (got {0})")]
pub struct CircleSizeError(pub usize);

pub fn build_circle_model(n: usize) -> Result<CircleModel, CircleSizeError> {
    if !(2..=63).contains(&n) {
        return Err(CircleSizeError(n));
    }
    let arcs: Vec<CyclicArc> = (1..n)
        .flat_map(|len| (0..n).map(move |start| CyclicArc { start, len }))
        .collect();
    let mut masks: Vec<u64> = arcs.iter().map(|a| a.mask(n)).collect();
    masks.push((1u64 << n) - 1);
    let mut names: Vec<String> = arcs.iter().map(|a| a.name(n)).collect();
    names.push("S1".into());

    let subset = |a: u64, b: u64| a & !b == 0;
    let opens_base = Arc::new(FinCategory::poset(names.clone(), |x, y| subset(masks[x], masks[y])));
    let k = arcs.len();
    let disks_base = Arc::new(FinCategory::poset(names[..k].to_vec(), |x, y| {
        subset(masks[x], masks[y])
    }));

    let disjoint_pairs = |base: &FinCategory| {
        let mut pairs = Vec::new();
        for t in base.objects() {
            for &f1 in base.morphisms_into(t) {
                for &f2 in base.morphisms_into(t) {
                    if masks[base.source(f1)] & masks[base.source(f2)] == 0 {
                        pairs.push((f1, f2));
                    }
                }
            }
        }
        pairs
    };
    let disks = OrthogonalCategory::from_relation_unchecked(disks_base.clone(), disjoint_pairs(&disks_base));
    let opens = OrthogonalCategory::from_relation_unchecked(opens_base.clone(), disjoint_pairs(&opens_base));

    let morphism_map = disks_base
        .morphism_ids()
        .map(|m| opens_base.hom(disks_base.source(m), disks_base.target(m))[0])
        .collect();
    let j = FinFunctor::new(disks_base, opens_base, (0..k).collect(), morphism_map)
        .expect("inclusion of arcs is a functor");
    Ok(CircleModel {
        n,
        arcs,
        disks,
        opens,
        j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::orthogonal::{closure, validate_orthogonal_category};
    use std::collections::HashSet;

    #[test]
    fn n2_has_two_disks_orthogonal_in_circle() {
        let m = build_circle_model(2).unwrap();
        assert_eq!(m.disks.base().num_objects(), 2);
        let o = m.opens.base();
        let s1 = m.circle();
        let f0 = o.hom(0, s1)[0];
        let f1 = o.hom(1, s1)[0];
        assert!(m.opens.is_orthogonal(f0, f1));
        assert!(m.opens.is_orthogonal(f1, f0));
        assert!(!m.opens.is_orthogonal(f0, f0));
    }

    #[test]
    fn object_count_is_n_times_n_minus_one() {
        for n in 2..=6 {
            let m = build_circle_model(n).unwrap();
            assert_eq!(m.disks.base().num_objects(), n * (n - 1));
            assert_eq!(m.opens.base().num_objects(), n * (n - 1) + 1);
        }
    }

    #[test]
    fn singletons_in_an_arc_of_length_two() {
        let m = build_circle_model(3).unwrap();
        let c = m.disks.base();
        let p0 = m.arc_id(CyclicArc { start: 0, len: 1 }).unwrap();
        let p1 = m.arc_id(CyclicArc { start: 1, len: 1 }).unwrap();
        let t = m.arc_id(CyclicArc { start: 0, len: 2 }).unwrap();
        assert!(m.disks.is_orthogonal(c.hom(p0, t)[0], c.hom(p1, t)[0]));
    }

    #[test]
    fn circle_models_validate_and_are_closed() {
        for n in 2..=6 {
            let m = build_circle_model(n).unwrap();
            for oc in [&m.disks, &m.opens] {
                assert!(validate_orthogonal_category(oc).unwrap().is_valid(), "n={n}");
                let closed: HashSet<_> = closure(oc.base(), &oc.pairs());
                let own: HashSet<_> = oc.pairs().into_iter().collect();
                assert_eq!(closed, own, "n={n}");
            }
            assert!(m.j.is_fully_faithful());
            assert!(m.j.is_injective_on_objects());
        }
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(build_circle_model(1).unwrap_err(), CircleSizeError(1));
    }
}
