use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::category::{CategoryError, FinCategory, MorId};

/// A finite category with an orthogonality relation on pairs of morphisms
/// sharing a target. The relation is stored as ordered pairs.
#[derive(Debug, Clone)]
pub struct OrthogonalCategory {
    base: Arc<FinCategory>,
    relation: HashSet<(MorId, MorId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrthogonalityError {
    #[error("pair ({f1}, {f2}) does not share a target")]
    DifferentTargets { f1: String, f2: String },
    #[error("unknown morphism id {0}")]
    UnknownMorphism(MorId),
}

/// One failed instance of the orthogonality axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthogonalityViolation {
    /// `(f1, f2)` is related but `(f2, f1)` is not.
    NotSymmetric {
        pair: (MorId, MorId),
    },
    /// `(f1, f2)` is related but `(g f1 h1, g f2 h2)` is not.
    NotStable {
        pair: (MorId, MorId),
        g: MorId,
        h1: MorId,
        h2: MorId,
        missing: (MorId, MorId),
    },
    DifferentTargets {
        pair: (MorId, MorId),
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub pairs_checked: usize,
    pub violations: Vec<OrthogonalityViolation>,
}

impl OrthogonalityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl OrthogonalCategory {
    /// Closes the generating pairs under symmetry and pre/post-composition.
    pub fn from_generators(
        base: Arc<FinCategory>,
        generators: impl IntoIterator<Item = (MorId, MorId)>,
    ) -> Result<Self, OrthogonalityError> {
        let gens: Vec<_> = generators.into_iter().collect();
        for &(f1, f2) in &gens {
            check_pair(&base, f1, f2)?;
        }
        let relation = closure(&base, &gens);
        Ok(OrthogonalCategory { base, relation })
    }

    /// Keeps the relation exactly as given (no closure). Use
    /// [`validate_orthogonal_category`] to find violations.
    pub fn from_relation_unchecked(base: Arc<FinCategory>, pairs: impl IntoIterator<Item = (MorId, MorId)>) -> Self {
        OrthogonalCategory {
            base,
            relation: pairs.into_iter().collect(),
        }
    }

    pub fn empty(base: Arc<FinCategory>) -> Self {
        OrthogonalCategory {
            base,
            relation: HashSet::new(),
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn is_orthogonal(&self, f1: MorId, f2: MorId) -> bool {
        self.relation.contains(&(f1, f2))
    }

    /// All related ordered pairs, sorted.
    pub fn pairs(&self) -> Vec<(MorId, MorId)> {
        let sorted: BTreeSet<_> = self.relation.iter().copied().collect();
        sorted.into_iter().collect()
    }

    pub fn relation_len(&self) -> usize {
        self.relation.len()
    }
}

fn check_pair(base: &FinCategory, f1: MorId, f2: MorId) -> Result<(), OrthogonalityError> {
    for f in [f1, f2] {
        if f >= base.num_morphisms() {
            return Err(OrthogonalityError::UnknownMorphism(f));
        }
    }
    if base.target(f1) != base.target(f2) {
        return Err(OrthogonalityError::DifferentTargets {
            f1: base.morphism_name(f1).into(),
            f2: base.morphism_name(f2).into(),
        });
    }
    Ok(())
}

/// Smallest symmetric, composition-stable relation containing `pairs`.
/// A single pass suffices because composites of composites are composites.
pub fn closure(base: &FinCategory, pairs: &[(MorId, MorId)]) -> HashSet<(MorId, MorId)> {
    let mut out = HashSet::new();
    for &(a, b) in pairs {
        for (f1, f2) in [(a, b), (b, a)] {
            for &g in base.morphisms_from(base.target(f1)) {
                for &h1 in base.morphisms_into(base.source(f1)) {
                    let gf1h1 = comp3(base, g, f1, h1);
                    for &h2 in base.morphisms_into(base.source(f2)) {
                        out.insert((gf1h1, comp3(base, g, f2, h2)));
                    }
                }
            }
        }
    }
    out
}

fn comp3(base: &FinCategory, g: MorId, f: MorId, h: MorId) -> MorId {
    let fh = base.compose(f, h).expect("composable");
    base.compose(g, fh).expect("composable")
}

/// Exhaustively checks symmetry and stability under pre/post-composition.
pub fn validate_orthogonal_category(c: &OrthogonalCategory) -> Result<OrthogonalityReport, CategoryError> {
    let base = c.base();
    base.validate()?;
    let mut violations = Vec::new();
    let pairs = c.pairs();
    for &(f1, f2) in &pairs {
        if f1 >= base.num_morphisms() || f2 >= base.num_morphisms() {
            return Err(CategoryError::UnknownMorphism(f1.max(f2)));
        }
        if base.target(f1) != base.target(f2) {
            violations.push(OrthogonalityViolation::DifferentTargets { pair: (f1, f2) });
            continue;
        }
        if !c.is_orthogonal(f2, f1) {
            violations.push(OrthogonalityViolation::NotSymmetric { pair: (f1, f2) });
        }
        for &g in base.morphisms_from(base.target(f1)) {
            for &h1 in base.morphisms_into(base.source(f1)) {
                let m1 = comp3(base, g, f1, h1);
                for &h2 in base.morphisms_into(base.source(f2)) {
                    let m2 = comp3(base, g, f2, h2);
                    if !c.is_orthogonal(m1, m2) {
                        violations.push(OrthogonalityViolation::NotStable {
                            pair: (f1, f2),
                            g,
                            h1,
                            h2,
                            missing: (m1, m2),
                        });
                    }
                }
            }
        }
    }
    Ok(OrthogonalityReport {
        pairs_checked: pairs.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// a, b ≤ m ≤ t
    fn diamond() -> Arc<FinCategory> {
        let names = ["a", "b", "m", "t"].map(String::from).to_vec();
        let below = |x: usize, y: usize| x == y || y == 3 || (y == 2 && x < 2);
        Arc::new(FinCategory::poset(names, below))
    }

    #[test]
    fn empty_relation_is_valid() {
        let c = OrthogonalCategory::empty(diamond());
        assert!(validate_orthogonal_category(&c).unwrap().is_valid());
    }

    #[test]
    fn missing_composite_pair_is_reported() {
        let base = diamond();
        let am = base.hom(0, 2)[0];
        let bm = base.hom(1, 2)[0];
        let c = OrthogonalCategory::from_relation_unchecked(base.clone(), [(am, bm), (bm, am)]);
        let report = validate_orthogonal_category(&c).unwrap();
        let at = base.hom(0, 3)[0];
        let bt = base.hom(1, 3)[0];
        assert!(report.violations.iter().any(|v| matches!(
            v,
            OrthogonalityViolation::NotStable { missing, .. } if *missing == (at, bt)
        )));
    }

    #[test]
    fn closure_is_idempotent_and_valid() {
        let base = diamond();
        let am = base.hom(0, 2)[0];
        let bm = base.hom(1, 2)[0];
        let c = OrthogonalCategory::from_generators(base.clone(), [(am, bm)]).unwrap();
        assert!(validate_orthogonal_category(&c).unwrap().is_valid());
        let again = closure(&base, &c.pairs());
        assert_eq!(again, c.relation);
    }

    #[test]
    fn rejects_pairs_without_common_target() {
        let base = diamond();
        let am = base.hom(0, 2)[0];
        let bt = base.hom(1, 3)[0];
        assert!(OrthogonalCategory::from_generators(base, [(am, bt)]).is_err());
    }
}
