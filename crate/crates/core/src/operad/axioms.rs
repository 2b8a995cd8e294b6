use serde::Serialize;

use super::operation::{all_permutations, compose, compose_permutations, operations_into, permute, PFOperation};
use crate::fincat::{ObjId, OrthogonalCategory};

const STORED_VIOLATIONS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Unitality,
    Associativity,
    PermutationAction,
    Equivariance,
    Closure,
}

/// A failed axiom instance. Fields not relevant to the axiom are empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperadViolation {
    pub axiom: Axiom,
    pub operation: PFOperation,
    pub inners: Vec<PFOperation>,
    pub innermost: Vec<PFOperation>,
    pub permutations: Vec<Vec<usize>>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OperadReport {
    pub max_arity: usize,
    pub operations: usize,
    pub instances_checked: usize,
    pub violation_count: usize,
    /// The first few violations, in enumeration order.
    pub violations: Vec<OperadViolation>,
}

impl OperadReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

struct Checker<'a> {
    c: &'a OrthogonalCategory,
    max_arity: usize,
    ops: Vec<Vec<PFOperation>>,
    instances: usize,
    count: usize,
    stored: Vec<OperadViolation>,
}

impl Checker<'_> {
    fn fail(&mut self, v: OperadViolation) {
        self.count += 1;
        if self.stored.len() < STORED_VIOLATIONS {
            self.stored.push(v);
        }
    }

    fn violation(axiom: Axiom, op: &PFOperation, detail: impl Into<String>) -> OperadViolation {
        OperadViolation {
            axiom,
            operation: op.clone(),
            inners: vec![],
            innermost: vec![],
            permutations: vec![],
            detail: detail.into(),
        }
    }

    fn check_unitality(&mut self, f: &PFOperation) {
        self.instances += 2;
        let ids: Vec<_> = f.sources.iter().map(|&s| PFOperation::identity(self.c, s)).collect();
        match compose(self.c, f, &ids) {
            Ok(r) if r == *f => {}
            other => {
                let mut v = Self::violation(Axiom::Unitality, f, format!("right unit: {other:?}"));
                v.inners = ids;
                self.fail(v);
            }
        }
        let id_t = PFOperation::identity(self.c, f.target);
        match compose(self.c, &id_t, std::slice::from_ref(f)) {
            Ok(r) if r == *f => {}
            other => self.fail(Self::violation(Axiom::Unitality, f, format!("left unit: {other:?}"))),
        }
    }

    fn check_permutation_action(&mut self, f: &PFOperation) {
        let perms = all_permutations(f.arity());
        for sigma in &perms {
            for tau in &perms {
                self.instances += 1;
                let lhs = permute(f, sigma).and_then(|fs| permute(&fs, tau));
                let rhs = permute(f, &compose_permutations(sigma, tau));
                let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
                if !ok {
                    let mut v =
                        Self::violation(Axiom::PermutationAction, f, format!("(fσ)τ = {lhs:?}, f(στ) = {rhs:?}"));
                    v.permutations = vec![sigma.clone(), tau.clone()];
                    self.fail(v);
                }
            }
            if let Ok(fs) = permute(f, sigma) {
                if let Err(e) = super::operation::check_pairwise(self.c, &fs.morphisms) {
                    let mut v = Self::violation(Axiom::Closure, f, e.to_string());
                    v.permutations = vec![sigma.clone()];
                    self.fail(v);
                }
            }
        }
    }

    /// Calls `visit` with every tuple of operations into `sources` whose
    /// arities sum to at most `budget`.
    fn for_each_choice(&self, sources: &[ObjId], budget: usize, visit: &mut dyn FnMut(&[PFOperation])) {
        fn go(
            ops: &[Vec<PFOperation>],
            sources: &[ObjId],
            budget: usize,
            cur: &mut Vec<PFOperation>,
            visit: &mut dyn FnMut(&[PFOperation]),
        ) {
            let i = cur.len();
            if i == sources.len() {
                visit(cur);
                return;
            }
            for g in &ops[sources[i]] {
                if g.arity() <= budget {
                    cur.push(g.clone());
                    go(ops, sources, budget - g.arity(), cur, visit);
                    cur.pop();
                }
            }
        }
        go(&self.ops, sources, budget, &mut Vec::new(), visit);
    }

    fn check_with_inners(&mut self, f: &PFOperation, gs: &[PFOperation]) {
        self.instances += 1;
        let fg = match compose(self.c, f, gs) {
            Ok(fg) => fg,
            Err(e) => {
                let mut v = Self::violation(Axiom::Closure, f, e.to_string());
                v.inners = gs.to_vec();
                self.fail(v);
                return;
            }
        };
        let arities: Vec<usize> = gs.iter().map(PFOperation::arity).collect();
        let offsets: Vec<usize> = arities
            .iter()
            .scan(0, |acc, &k| {
                let o = *acc;
                *acc += k;
                Some(o)
            })
            .collect();

        for sigma in all_permutations(f.arity()) {
            self.instances += 1;
            let permuted_inners: Vec<_> = sigma.iter().map(|&i| gs[i].clone()).collect();
            let lhs = permute(f, &sigma).and_then(|fs| compose(self.c, &fs, &permuted_inners));
            let block: Vec<usize> = sigma
                .iter()
                .flat_map(|&i| offsets[i]..offsets[i] + arities[i])
                .collect();
            let rhs = permute(&fg, &block);
            if !matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b) {
                let mut v = Self::violation(Axiom::Equivariance, f, format!("outer permutation: {lhs:?} vs {rhs:?}"));
                v.inners = gs.to_vec();
                v.permutations = vec![sigma.clone()];
                self.fail(v);
            }
        }

        let inner_perms: Vec<Vec<Vec<usize>>> = arities.iter().map(|&k| all_permutations(k)).collect();
        let mut idx = vec![0usize; gs.len()];
        loop {
            self.instances += 1;
            let sigmas: Vec<&Vec<usize>> = idx.iter().zip(&inner_perms).map(|(&i, ps)| &ps[i]).collect();
            let permuted: Result<Vec<_>, _> = gs.iter().zip(&sigmas).map(|(g, s)| permute(g, s)).collect();
            let lhs = permuted.and_then(|p| compose(self.c, f, &p));
            let sum: Vec<usize> = sigmas
                .iter()
                .zip(&offsets)
                .flat_map(|(s, &o)| s.iter().map(move |&j| o + j))
                .collect();
            let rhs = permute(&fg, &sum);
            if !matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b) {
                let mut v = Self::violation(
                    Axiom::Equivariance,
                    f,
                    format!("inner permutations: {lhs:?} vs {rhs:?}"),
                );
                v.inners = gs.to_vec();
                v.permutations = sigmas.into_iter().cloned().collect();
                self.fail(v);
            }
            // advance the mixed-radix counter
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < inner_perms[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }

        let budget = self.max_arity;
        let mut hs_list = Vec::new();
        self.for_each_choice(&fg.sources, budget, &mut |hs| hs_list.push(hs.to_vec()));
        for hs in hs_list {
            self.instances += 1;
            let left = compose(self.c, &fg, &hs);
            let right: Result<Vec<_>, _> = gs
                .iter()
                .zip(&offsets)
                .map(|(g, &o)| compose(self.c, g, &hs[o..o + g.arity()]))
                .collect();
            let right = right.and_then(|gh| compose(self.c, f, &gh));
            match (&left, &right) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => {
                    let mut v = Self::violation(
                        Axiom::Associativity,
                        f,
                        format!("(f·g)·h = {left:?}, f·(g·h) = {right:?}"),
                    );
                    v.inners = gs.to_vec();
                    v.innermost = hs;
                    self.fail(v);
                }
            }
        }
    }
}

/// Exhaustively checks unitality, associativity, the permutation action and
/// equivariance for every operation of arity at most `max_arity`. Every
/// operation involved, including composites, has arity at most `max_arity`.
pub fn check_operad_axioms(c: &OrthogonalCategory, max_arity: usize) -> OperadReport {
    let max_arity = max_arity.max(1);
    let ops: Vec<Vec<PFOperation>> = c.base().objects().map(|t| operations_into(c, t, max_arity)).collect();
    let mut ch = Checker {
        c,
        max_arity,
        ops,
        instances: 0,
        count: 0,
        stored: Vec::new(),
    };
    let all: Vec<PFOperation> = ch.ops.iter().flatten().cloned().collect();
    for f in &all {
        ch.check_unitality(f);
        ch.check_permutation_action(f);
        let mut inner_list = Vec::new();
        ch.for_each_choice(&f.sources, max_arity, &mut |gs| inner_list.push(gs.to_vec()));
        for gs in inner_list {
            ch.check_with_inners(f, &gs);
        }
    }
    OperadReport {
        max_arity,
        operations: all.len(),
        instances_checked: ch.instances,
        violation_count: ch.count,
        violations: ch.stored,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{build_circle_model, FinCategory, Morphism};
    use std::sync::Arc;

    #[test]
    fn circle_model_n3_passes() {
        let m = build_circle_model(3).unwrap();
        let r = check_operad_axioms(&m.disks, 3);
        assert!(r.passed(), "{:?}", r.violations.first());
        assert!(r.instances_checked > 0);
    }

    #[test]
    fn discrete_category_passes() {
        let base = Arc::new(FinCategory::discrete(vec!["a".into(), "b".into()]));
        let r = check_operad_axioms(&OrthogonalCategory::empty(base), 3);
        assert!(r.passed());
        // per object: *_t and (id_t)
        assert_eq!(r.operations, 4);
    }

    #[test]
    fn corrupted_composition_is_caught() {
        // One object, morphisms 1, a, b with a∘a = b, b∘a = 1, a∘b = a,
        // b∘b = b: not associative.
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
        let base = Arc::new(FinCategory::new_unchecked(vec!["x".into()], morphisms, vec![0], table).unwrap());
        let r = check_operad_axioms(&OrthogonalCategory::empty(base), 3);
        assert!(!r.passed());
        let w = r
            .violations
            .iter()
            .find(|v| v.axiom == Axiom::Associativity)
            .expect("associativity witness");
        assert_eq!(w.operation.arity(), 1);
    }
}
